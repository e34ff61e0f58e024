//! Brute-force ground truth on finite words.
//!
//! Products with exponents in the ω-fragment (`ω^0 + 1` and ω) are
//! determined by the finite words they contain, so symbolic decisions
//! over that fragment can be checked against exhaustive enumeration. The
//! matcher here is deliberately separate from the algebraic inclusion
//! procedure: it segments a concrete word against the factor sequence by
//! dynamic programming and shares no code path with [`crate::algebra`].

use std::sync::Arc;

use crate::algebra::{Product, ProductUnion};
use crate::error::Error;
use crate::ordinal::Bound;
use crate::space::{Point, Space};

/// A concrete finite word over a base space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteWord {
    space: Arc<Space>,
    letters: Vec<Point>,
}

/// Shortlex order; only meaningful between words of one space.
impl Ord for FiniteWord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        debug_assert!(self.same_space(other), "ordering words across spaces");
        (self.letters.len(), &self.letters).cmp(&(other.letters.len(), &other.letters))
    }
}

impl PartialOrd for FiniteWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl FiniteWord {
    pub fn new(space: &Arc<Space>, letters: Vec<Point>) -> Result<Self, Error> {
        for &p in &letters {
            // Resolving the printed name round-trips exactly when the
            // point exists in the space.
            space.point_named(&space.point_name(p)).map_err(|_| {
                Error::UnknownPoint(format!("#{}", p.0))
            })?;
        }
        Ok(FiniteWord {
            space: Arc::clone(space),
            letters,
        })
    }

    pub fn epsilon(space: &Arc<Space>) -> Self {
        FiniteWord {
            space: Arc::clone(space),
            letters: Vec::new(),
        }
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn letters(&self) -> &[Point] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn same_space(&self, other: &FiniteWord) -> bool {
        Arc::ptr_eq(&self.space, &other.space) || self.space == other.space
    }
}

/// Whether the word can be cut into one segment per factor, each segment
/// drawing its letters from the factor's support and respecting its
/// exponent: the unit bound `ω^0 + 1` caps a segment at one letter, and
/// any proper bound admits every finite segment. Segments may be empty.
pub fn matches(word: &FiniteWord, product: &Product) -> bool {
    assert!(
        Arc::ptr_eq(word.space(), product.space()) || **word.space() == **product.space(),
        "word and product must share a space"
    );
    let letters = word.letters();
    let n = letters.len();
    // reach[pos]: the prefix of length pos can be split across the
    // factors consumed so far.
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for atom in product.atoms() {
        let cap = if *atom.exponent() == Bound::two() {
            Some(1)
        } else {
            None
        };
        let mut next = vec![false; n + 1];
        for pos in 0..=n {
            if !reach[pos] {
                continue;
            }
            next[pos] = true;
            for (offset, &letter) in letters[pos..].iter().enumerate() {
                if cap.is_some_and(|c| offset + 1 > c) || !atom.support().member(letter) {
                    break;
                }
                next[pos + offset + 1] = true;
            }
        }
        reach = next;
    }
    reach[n]
}

/// All words over a finite alphabet up to the given length, in shortlex
/// order (by length, then lexicographically by point order). Infinite
/// alphabets are rejected.
pub fn enumerate(
    space: &Arc<Space>,
    max_len: usize,
) -> Result<impl Iterator<Item = FiniteWord>, Error> {
    let alphabet = space.finite_points().ok_or(Error::InfiniteAlphabet)?;
    Ok(Enumerate {
        space: Arc::clone(space),
        alphabet,
        max_len,
        next_word: Some(Vec::new()),
    })
}

struct Enumerate {
    space: Arc<Space>,
    alphabet: Vec<Point>,
    max_len: usize,
    /// Letter indices of the word to yield next; `None` when exhausted.
    next_word: Option<Vec<usize>>,
}

impl Iterator for Enumerate {
    type Item = FiniteWord;

    fn next(&mut self) -> Option<FiniteWord> {
        let current = self.next_word.take()?;
        let word = FiniteWord {
            space: Arc::clone(&self.space),
            letters: current.iter().map(|&i| self.alphabet[i]).collect(),
        };
        // Shortlex successor: odometer step, growing on wrap-around.
        let mut digits = current;
        let base = self.alphabet.len();
        let mut pos = digits.len();
        loop {
            if pos == 0 {
                if digits.len() < self.max_len && base > 0 {
                    self.next_word = Some(vec![0; digits.len() + 1]);
                }
                break;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < base {
                for d in &mut digits[pos + 1..] {
                    *d = 0;
                }
                self.next_word = Some(digits);
                break;
            }
        }
        Some(word)
    }
}

/// The shortlex-first word lying in `p` but in no member of `q`, up to
/// the length cap; `None` if all words up to the cap agree.
pub fn find_inclusion_counterexample(
    p: &Product,
    q: &ProductUnion,
    max_len: usize,
) -> Result<Option<FiniteWord>, Error> {
    let words = enumerate(p.space(), max_len)?;
    for w in words {
        if matches(&w, p) && !q.members().iter().any(|m| matches(&w, m)) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Letterwise transition tables for matching words against a product.
///
/// State 0 sits before every factor; state i >= 1 sits inside factor i's
/// segment with at least one letter already consumed there. Every state
/// accepts because trailing segments may be empty, so a word matches the
/// product exactly when its reach set stays non-empty.
struct SegmentAutomaton {
    /// trans[letter][state]: bitmask of successor states.
    trans: Vec<Vec<u64>>,
}

impl SegmentAutomaton {
    fn build(product: &Product, alphabet: &[Point]) -> SegmentAutomaton {
        let atoms = product.atoms();
        let n = atoms.len();
        assert!(n < 64, "factor sequence too long for mask states");
        let trans = alphabet
            .iter()
            .map(|&x| {
                // enter[i]: reading x may start or extend factor i's
                // segment (1-based state i).
                let enter: Vec<bool> =
                    atoms.iter().map(|a| a.support().member(x)).collect();
                (0..=n)
                    .map(|state| {
                        let mut mask = 0u64;
                        if state >= 1
                            && enter[state - 1]
                            && *atoms[state - 1].exponent() != Bound::two()
                        {
                            mask |= 1 << state;
                        }
                        for next in state + 1..=n {
                            if enter[next - 1] {
                                mask |= 1 << next;
                            }
                        }
                        mask
                    })
                    .collect()
            })
            .collect();
        SegmentAutomaton { trans }
    }

    fn step(&self, reach: u64, letter: usize) -> u64 {
        let table = &self.trans[letter];
        let mut out = 0;
        let mut bits = reach;
        while bits != 0 {
            let state = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            out |= table[state];
        }
        out
    }
}

/// An exact search for a finite word lying in `p` but in no member of
/// `q`, by breadth-first search over joint reach sets; the result is a
/// shortest witness. `None` means no finite witness exists at any
/// length, which settles inclusion outright whenever every exponent is
/// at most ω (such products contain finite words only).
pub fn refute_inclusion(p: &Product, q: &[Product]) -> Result<Option<FiniteWord>, Error> {
    use std::collections::{HashSet, VecDeque};

    let alphabet = p.space().finite_points().ok_or(Error::InfiniteAlphabet)?;
    let left = SegmentAutomaton::build(p, &alphabet);
    let right: Vec<SegmentAutomaton> = q
        .iter()
        .map(|m| SegmentAutomaton::build(m, &alphabet))
        .collect();

    let start: (u64, Vec<u64>) = (1, vec![1; right.len()]);
    let mut seen = HashSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::new();
    queue.push_back((start, Vec::new()));
    while let Some(((reach_p, reach_q), word)) = queue.pop_front() {
        if reach_p != 0 && reach_q.iter().all(|&r| r == 0) {
            return Ok(Some(FiniteWord {
                space: Arc::clone(p.space()),
                letters: word.iter().map(|&i| alphabet[i]).collect(),
            }));
        }
        for letter in 0..alphabet.len() {
            let next_p = left.step(reach_p, letter);
            if next_p == 0 {
                // Dead on the left side: no extension can re-enter p.
                continue;
            }
            let next_q: Vec<u64> = right
                .iter()
                .zip(&reach_q)
                .map(|(aut, &r)| aut.step(r, letter))
                .collect();
            let key = (next_p, next_q);
            if seen.insert(key.clone()) {
                let mut extended = word.clone();
                extended.push(letter);
                queue.push_back((key, extended));
            }
        }
    }
    Ok(None)
}
