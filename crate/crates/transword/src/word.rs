//! Symbolic transfinite words and their specialization preorder.
//!
//! A symbolic word is a finite sequence of components `(F, λ)`, each
//! standing for a topologically indecomposable word of indecomposable
//! length λ whose letters have closure exactly F: concretely, the word
//! that cycles through a fixed generating sequence of F for λ steps
//! (through the identity enumeration when F is the whole cofinite
//! alphabet, which forces λ ≥ ω). Every transfinite word decomposes this
//! way, and everything the topology can observe about it is captured by
//! the component list.
//!
//! The closure of a component is `F^{<λ+1}`, so closures of symbolic
//! words are products, and the specialization preorder `w ≲ w'` (meaning
//! closure(w) ⊆ closure(w')) has a direct combinatorial description: cut
//! `w` into consecutive blocks, one per component of `w'`, with supports
//! contained in and summed lengths bounded by the matching component.

use std::sync::Arc;

use crate::algebra::{Atom, Product, ProductUnion};
use crate::error::Error;
use crate::oracle::FiniteWord;
use crate::ordinal::{Bound, Ordinal};
use crate::space::{ClosedSet, Space};

/// One topologically indecomposable stretch of a word: a support and an
/// indecomposable ordinal length. Length-1 components are single letters,
/// so their support must be a point closure; an infinite support (the
/// whole cofinite alphabet) cannot be visited by a finite stretch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordComponent {
    support: ClosedSet,
    length: Ordinal,
}

impl WordComponent {
    pub fn new(support: ClosedSet, length: Ordinal) -> Result<Self, Error> {
        if !length.is_indecomposable() {
            return Err(Error::DecomposableLength(length.to_string()));
        }
        if support.is_empty() {
            return Err(Error::EmptySupport);
        }
        if length == Ordinal::finite(1) && !support.is_irreducible() {
            return Err(Error::ReducibleLetterSupport(support.to_string()));
        }
        if support.is_all() && length.as_finite().is_some() {
            return Err(Error::FiniteLengthOverInfiniteSupport);
        }
        Ok(WordComponent { support, length })
    }

    pub fn support(&self) -> &ClosedSet {
        &self.support
    }

    pub fn length(&self) -> &Ordinal {
        &self.length
    }

    /// `F^{<λ+1}`: the closure of the component, as an atom. With
    /// `λ = ω^β` the bound is `ω^β + 1`; at λ = 1 this is the unit bound,
    /// whose support the constructor already forced to be irreducible.
    fn closure_atom(&self) -> Atom {
        let base = self
            .length
            .terms()
            .next()
            .map(|(e, _)| e.clone())
            .expect("indecomposable lengths are non-zero");
        Atom::new(self.support.clone(), Bound::new(base, true))
            .expect("component invariants make the closure atom valid")
    }
}

/// A transfinite word presented as its component decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicWord {
    space: Arc<Space>,
    components: Vec<WordComponent>,
}

impl SymbolicWord {
    pub fn new(space: &Arc<Space>, components: Vec<WordComponent>) -> Result<Self, Error> {
        for c in &components {
            if !(Arc::ptr_eq(c.support.space(), space) || **c.support.space() == **space) {
                return Err(Error::SpaceMismatch);
            }
        }
        Ok(SymbolicWord {
            space: Arc::clone(space),
            components,
        })
    }

    /// The empty word.
    pub fn epsilon(space: &Arc<Space>) -> Self {
        SymbolicWord {
            space: Arc::clone(space),
            components: Vec::new(),
        }
    }

    /// A finite word, one length-1 component per letter.
    pub fn from_letters(space: &Arc<Space>, letters: &[crate::space::Point]) -> Result<Self, Error> {
        let components = letters
            .iter()
            .map(|&p| {
                let support = space.closure_of_points(&[p])?;
                WordComponent::new(support, Ordinal::finite(1))
            })
            .collect::<Result<Vec<_>, _>>()?;
        SymbolicWord::new(space, components)
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn components(&self) -> &[WordComponent] {
        &self.components
    }

    pub fn is_epsilon(&self) -> bool {
        self.components.is_empty()
    }

    pub fn same_space(&self, other: &SymbolicWord) -> bool {
        Arc::ptr_eq(&self.space, &other.space) || self.space == other.space
    }

    /// The closure of the word: the reduced form of
    /// `(supp w₁)^{<|w₁|+1} ⋯ (supp wₙ)^{<|wₙ|+1}`.
    pub fn closure(&self) -> Product {
        let atoms = self.components.iter().map(WordComponent::closure_atom).collect();
        Product::from_atoms(&self.space, atoms)
            .expect("components live in the word's space")
            .reduced()
    }

    /// Specialization: `self ≲ other` iff the components of `self` split
    /// into consecutive (possibly empty) blocks, one per component of
    /// `other`, each block's supports inside and its ordinal length sum
    /// at most the matching component's. Equivalent to inclusion of
    /// closures, and decided here without building them.
    pub fn leq(&self, other: &SymbolicWord) -> Result<bool, Error> {
        if !self.same_space(other) {
            return Err(Error::SpaceMismatch);
        }
        let m = self.components.len();
        // reach[i]: the first i components of self fit into the part of
        // other consumed so far.
        let mut reach = vec![false; m + 1];
        reach[0] = true;
        for target in &other.components {
            let mut next = vec![false; m + 1];
            for start in 0..=m {
                if !reach[start] {
                    continue;
                }
                next[start] = true;
                let mut sum = Ordinal::zero();
                for (i, c) in self.components.iter().enumerate().skip(start) {
                    if !c.support.subset(&target.support)? {
                        break;
                    }
                    sum = sum + c.length.clone();
                    if sum > target.length {
                        break;
                    }
                    next[i + 1] = true;
                }
            }
            reach = next;
        }
        Ok(reach[m])
    }

    /// Whether the word lies in the closed set denoted by the union,
    /// i.e. whether its closure is included in some member.
    pub fn member_of(&self, union: &ProductUnion) -> Result<bool, Error> {
        ProductUnion::singleton(self.closure()).included_in(union)
    }

    /// The explicit finite word, when every component is a single letter.
    pub fn to_finite(&self) -> Result<FiniteWord, Error> {
        let letters = self
            .components
            .iter()
            .map(|c| {
                if c.length != Ordinal::finite(1) {
                    return Err(Error::NotAFiniteWord);
                }
                let maximal = c
                    .support
                    .maximal_points()
                    .expect("letter supports are finite");
                debug_assert_eq!(maximal.len(), 1);
                Ok(maximal[0])
            })
            .collect::<Result<Vec<_>, _>>()?;
        FiniteWord::new(&self.space, letters)
    }
}

/// The subword embedding on finite words: `u ≤ v` iff the letters of `u`
/// appear in order in `v`, each below the matching letter of `v` in the
/// alphabet's specialization order. Greedy matching is complete here.
pub fn higman_leq(u: &FiniteWord, v: &FiniteWord) -> Result<bool, Error> {
    if !u.same_space(v) {
        return Err(Error::SpaceMismatch);
    }
    let space = u.space();
    let mut i = 0;
    for &y in v.letters() {
        if i < u.letters().len() && space.point_leq(u.letters()[i], y) {
            i += 1;
        }
    }
    Ok(i == u.letters().len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::Point;

    fn fin(n: u64) -> Ordinal {
        Ordinal::finite(n)
    }

    fn set(space: &Arc<Space>, names: &[&str]) -> ClosedSet {
        let pts: Vec<_> = names.iter().map(|n| space.point_named(n).unwrap()).collect();
        space.closure_of_points(&pts).unwrap()
    }

    fn comp(space: &Arc<Space>, names: &[&str], length: Ordinal) -> WordComponent {
        WordComponent::new(set(space, names), length).unwrap()
    }

    fn word(space: &Arc<Space>, comps: Vec<WordComponent>) -> SymbolicWord {
        SymbolicWord::new(space, comps).unwrap()
    }

    #[test]
    fn component_validity() {
        let ab = Space::discrete(&["a", "b"]);
        assert!(matches!(
            WordComponent::new(set(&ab, &["a"]), Ordinal::omega() + fin(1)),
            Err(Error::DecomposableLength(_))
        ));
        assert!(matches!(
            WordComponent::new(set(&ab, &["a"]), Ordinal::zero()),
            Err(Error::DecomposableLength(_))
        ));
        assert_eq!(
            WordComponent::new(set(&ab, &[]), Ordinal::omega()),
            Err(Error::EmptySupport)
        );
        assert!(matches!(
            WordComponent::new(set(&ab, &["a", "b"]), fin(1)),
            Err(Error::ReducibleLetterSupport(_))
        ));
        assert!(WordComponent::new(set(&ab, &["a", "b"]), Ordinal::omega()).is_ok());

        let nat = Space::cofinite_nat();
        assert_eq!(
            WordComponent::new(nat.whole_set(), fin(1)),
            Err(Error::FiniteLengthOverInfiniteSupport)
        );
        assert!(WordComponent::new(nat.whole_set(), Ordinal::omega()).is_ok());
        assert!(WordComponent::new(
            nat.closure_of_points(&[Point(0)]).unwrap(),
            Ordinal::omega()
        )
        .is_ok());
    }

    #[test]
    fn closure_builds_and_reduces() {
        let ab = Space::discrete(&["a", "b"]);
        let w = word(
            &ab,
            vec![comp(&ab, &["a"], fin(1)), comp(&ab, &["a"], Ordinal::omega())],
        );
        // a · a^ω is a^ω; the length-1 closure atom is absorbed.
        let c = w.closure();
        assert_eq!(c.atoms().len(), 1);
        assert_eq!(c.atoms()[0].exponent(), &Bound::new(fin(1), true));
        assert!(c.is_reduced());

        let v = word(
            &ab,
            vec![comp(&ab, &["a"], Ordinal::omega()), comp(&ab, &["b"], fin(1))],
        );
        assert_eq!(v.closure().atoms().len(), 2);
    }

    #[test]
    fn leq_blocks_and_lengths() {
        let ab = Space::discrete(&["a", "b"]);
        let eps = SymbolicWord::epsilon(&ab);
        let a_omega = word(&ab, vec![comp(&ab, &["a"], Ordinal::omega())]);
        let aa = word(
            &ab,
            vec![comp(&ab, &["a"], fin(1)), comp(&ab, &["a"], fin(1))],
        );

        assert!(eps.leq(&a_omega).unwrap());
        assert!(eps.leq(&eps).unwrap());
        assert!(!a_omega.leq(&eps).unwrap());

        // Two letters fit into one ω-component; the converse fails.
        assert!(aa.leq(&a_omega).unwrap());
        assert!(!a_omega.leq(&aa).unwrap());

        // Lengths add in order: ω·2 worth of letters does not fit into ω.
        let double = word(
            &ab,
            vec![
                comp(&ab, &["a"], Ordinal::omega()),
                comp(&ab, &["a"], Ordinal::omega()),
            ],
        );
        assert!(a_omega.leq(&double).unwrap());
        assert!(!double.leq(&a_omega).unwrap());

        // Support containment is per block.
        let b_omega = word(&ab, vec![comp(&ab, &["b"], Ordinal::omega())]);
        assert!(!a_omega.leq(&b_omega).unwrap());
        let mixed = word(&ab, vec![comp(&ab, &["a", "b"], Ordinal::omega())]);
        assert!(a_omega.leq(&mixed).unwrap());
        assert!(b_omega.leq(&mixed).unwrap());
        assert!(!mixed.leq(&a_omega).unwrap());
    }

    #[test]
    fn leq_absorbs_finite_prefixes() {
        let ab = Space::discrete(&["a", "b"]);
        // a · a^ω and a^ω denote the same word, and the preorder agrees
        // both ways.
        let one_then_omega = word(
            &ab,
            vec![comp(&ab, &["a"], fin(1)), comp(&ab, &["a"], Ordinal::omega())],
        );
        let a_omega = word(&ab, vec![comp(&ab, &["a"], Ordinal::omega())]);
        assert!(one_then_omega.leq(&a_omega).unwrap());
        assert!(a_omega.leq(&one_then_omega).unwrap());
    }

    #[test]
    fn leq_agrees_with_closure_inclusion_on_samples() {
        let ab = Space::discrete(&["a", "b"]);
        let words = vec![
            SymbolicWord::epsilon(&ab),
            word(&ab, vec![comp(&ab, &["a"], fin(1))]),
            word(&ab, vec![comp(&ab, &["a"], Ordinal::omega())]),
            word(
                &ab,
                vec![comp(&ab, &["a"], Ordinal::omega()), comp(&ab, &["b"], fin(1))],
            ),
            word(&ab, vec![comp(&ab, &["a", "b"], Ordinal::omega())]),
            word(&ab, vec![comp(&ab, &["a", "b"], Ordinal::omega_pow(fin(2)))]),
        ];
        for u in &words {
            for v in &words {
                assert_eq!(
                    u.leq(v).unwrap(),
                    u.closure().included_in(&v.closure()).unwrap(),
                    "{u:?} vs {v:?}"
                );
            }
        }
    }

    #[test]
    fn member_of_unions() {
        let ab = Space::discrete(&["a", "b"]);
        let a_omega = word(&ab, vec![comp(&ab, &["a"], Ordinal::omega())]);
        let u = ProductUnion::new(
            &ab,
            vec![
                a_omega.closure(),
                word(&ab, vec![comp(&ab, &["b"], Ordinal::omega())]).closure(),
            ],
        )
        .unwrap();
        assert!(a_omega.member_of(&u).unwrap());
        let mixed = word(&ab, vec![comp(&ab, &["a", "b"], Ordinal::omega())]);
        assert!(!mixed.member_of(&u).unwrap());
    }

    #[test]
    fn finite_words_and_higman() {
        let chain = Space::chain(&["a", "b"]);
        let to_word = |names: &[&str]| {
            let pts: Vec<Point> = names.iter().map(|n| chain.point_named(n).unwrap()).collect();
            SymbolicWord::from_letters(&chain, &pts).unwrap()
        };
        let ab_word = to_word(&["a", "b"]);
        let fab = ab_word.to_finite().unwrap();
        let fbb = to_word(&["b", "b"]).to_finite().unwrap();
        // a ≤ b letterwise, so "ab" embeds into "bb" but not conversely.
        assert!(higman_leq(&fab, &fbb).unwrap());
        assert!(!higman_leq(&fbb, &fab).unwrap());
        // The empty word embeds everywhere.
        let feps = SymbolicWord::epsilon(&chain).to_finite().unwrap();
        assert!(higman_leq(&feps, &fab).unwrap());
        assert!(!higman_leq(&fab, &feps).unwrap());

        // Specialization and embedding coincide on finite words.
        for u in [&feps, &fab, &fbb] {
            for v in [&feps, &fab, &fbb] {
                let wu = SymbolicWord::from_letters(&chain, u.letters()).unwrap();
                let wv = SymbolicWord::from_letters(&chain, v.letters()).unwrap();
                assert_eq!(higman_leq(u, v).unwrap(), wu.leq(&wv).unwrap());
            }
        }

        let infinite = word(&chain, vec![comp(&chain, &["a"], Ordinal::omega())]);
        assert_eq!(infinite.to_finite(), Err(Error::NotAFiniteWord));
    }

    #[test]
    fn cofinite_unbounded_word_dominates_repetitions() {
        // The identity word 0 1 2 ⋯ has the whole alphabet as support and
        // length ω; constant words sit strictly below it.
        let nat = Space::cofinite_nat();
        let identity = word(
            &nat,
            vec![WordComponent::new(nat.whole_set(), Ordinal::omega()).unwrap()],
        );
        let zeros = word(
            &nat,
            vec![WordComponent::new(
                nat.closure_of_points(&[Point(0)]).unwrap(),
                Ordinal::omega(),
            )
            .unwrap()],
        );
        assert!(zeros.leq(&identity).unwrap());
        assert!(!identity.leq(&zeros).unwrap());
        assert_eq!(identity.closure().atoms()[0].exponent(), &Bound::new(fin(1), true));
    }
}
