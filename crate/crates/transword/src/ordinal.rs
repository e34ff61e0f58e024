//! Ordinals below ε₀ in Cantor normal form, and length bounds.
//!
//! An [`Ordinal`] is a sum `ω^{e₁}·c₁ + ⋯ + ω^{eₖ}·cₖ` with strictly
//! decreasing exponents (themselves ordinals in the same form) and positive
//! integer coefficients; the empty sum is 0. This is exactly the fragment
//! needed for word lengths and ranks: addition, natural (Hessenberg) sum,
//! comparison, and decomposition into indecomposable summands.
//!
//! A [`Bound`] is an ordinal of the shape `ω^β` or `ω^β + 1`. Bounds are the
//! only ordinals that occur as exponents of product factors: a set of words
//! closed under the subword order has all its length cutoffs of this shape.

use crate::error::Error;

/// An ordinal below ε₀ in Cantor normal form.
///
/// The derived comparison on the term list is lexicographic in
/// (exponent, coefficient) pairs with shorter-is-smaller tie-breaking,
/// which coincides with the ordinal order on normal forms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ordinal {
    terms: Vec<Term>,
}

/// One summand `ω^exp · coeff` of a normal form. Field order matters for
/// the derived lexicographic comparison.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Term {
    exp: Ordinal,
    coeff: u64,
}

impl Ordinal {
    /// The ordinal 0 (empty sum).
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    /// The finite ordinal `n`.
    pub fn finite(n: u64) -> Self {
        Self::omega_pow_times(Ordinal::zero(), n)
    }

    /// The first infinite ordinal ω.
    pub fn omega() -> Self {
        Self::omega_pow(Ordinal::finite(1))
    }

    /// `ω^exp`.
    pub fn omega_pow(exp: Ordinal) -> Self {
        Self::omega_pow_times(exp, 1)
    }

    /// `ω^exp · coeff`; zero when `coeff` is 0.
    pub fn omega_pow_times(exp: Ordinal, coeff: u64) -> Self {
        if coeff == 0 {
            Ordinal::zero()
        } else {
            Ordinal {
                terms: vec![Term { exp, coeff }],
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(n)` when the ordinal is the finite value `n`.
    pub fn as_finite(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [t] if t.exp.is_zero() => Some(t.coeff),
            _ => None,
        }
    }

    /// The normal-form terms as (exponent, coefficient) pairs, exponents
    /// strictly decreasing.
    pub fn terms(&self) -> impl Iterator<Item = (&Ordinal, u64)> {
        self.terms.iter().map(|t| (&t.exp, t.coeff))
    }

    /// True for the additively indecomposable ordinals, the powers `ω^e`.
    /// 0 is not indecomposable.
    pub fn is_indecomposable(&self) -> bool {
        matches!(self.terms.as_slice(), [t] if t.coeff == 1)
    }

    /// The weakly decreasing sequence of indecomposable summands whose
    /// ordinal sum is `self`; empty for 0. `ω^e · c` contributes `c`
    /// copies of `ω^e`.
    pub fn summands(&self) -> Vec<Ordinal> {
        let mut out = Vec::new();
        for t in &self.terms {
            for _ in 0..t.coeff {
                out.push(Ordinal::omega_pow(t.exp.clone()));
            }
        }
        out
    }

    /// Natural (Hessenberg) sum: merges the two multisets of normal-form
    /// summands. Unlike `+` it is commutative and strictly monotone in
    /// both arguments.
    pub fn natural_sum(&self, other: &Ordinal) -> Ordinal {
        let mut terms: Vec<Term> = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let take_left = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => {
                    if a.exp == b.exp {
                        terms.push(Term {
                            exp: a.exp.clone(),
                            coeff: a.coeff + b.coeff,
                        });
                        i += 1;
                        j += 1;
                        continue;
                    }
                    a.exp > b.exp
                }
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (None, None) => unreachable!(),
            };
            if take_left {
                terms.push(self.terms[i].clone());
                i += 1;
            } else {
                terms.push(other.terms[j].clone());
                j += 1;
            }
        }
        Ordinal { terms }
    }

    /// Splits off the finite tail: returns `(λ, n)` with `self = λ + n`
    /// and λ either 0 or a limit ordinal.
    pub fn split_finite(&self) -> (Ordinal, u64) {
        match self.terms.as_slice() {
            [rest @ .., last] if last.exp.is_zero() => (
                Ordinal {
                    terms: rest.to_vec(),
                },
                last.coeff,
            ),
            _ => (self.clone(), 0),
        }
    }

    /// The least ordinal `ξ ≥ self` that is not of the form `δ + n` for a
    /// critical ordinal δ (one with `ω^δ = δ`) and `n < ω`; on such forms
    /// the result is `self + 1`. Below ε₀ no critical ordinal is
    /// representable, so this is the identity, but the contract
    /// `self < ω^result` is what rank computations rely on and is checked
    /// here so an extension to larger ordinals can slot in.
    pub fn critical_adjust(&self) -> Ordinal {
        let (limit, _) = self.split_finite();
        let result = if !limit.is_zero() && limit == Ordinal::omega_pow(limit.clone()) {
            self + &Ordinal::finite(1)
        } else {
            self.clone()
        };
        debug_assert!(*self < Ordinal::omega_pow(result.clone()));
        result
    }
}

/// Ordinal addition. Terms of the left operand below the leading exponent
/// of the right operand are absorbed.
impl std::ops::Add<&Ordinal> for &Ordinal {
    type Output = Ordinal;

    fn add(self, rhs: &Ordinal) -> Ordinal {
        let Some(lead) = rhs.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<Term> = self
            .terms
            .iter()
            .take_while(|t| t.exp >= lead.exp)
            .cloned()
            .collect();
        let mut rest = rhs.terms.iter();
        match terms.last_mut() {
            Some(t) if t.exp == lead.exp => {
                t.coeff += lead.coeff;
                rest.next();
            }
            _ => {}
        }
        terms.extend(rest.cloned());
        Ordinal { terms }
    }
}

impl std::ops::Add for Ordinal {
    type Output = Ordinal;

    fn add(self, rhs: Ordinal) -> Ordinal {
        &self + &rhs
    }
}

/// A length bound: `ω^β` (when `plus_one` is false) or `ω^β + 1`.
///
/// The trivial bound is `ω^0 = 1`; a factor `F^{<1}` contains only the
/// empty word. Proper bounds have `β ≥ 1`. The only decomposable bounds
/// are the successors `ω^β + 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bound {
    exponent: Ordinal,
    plus_one: bool,
}

impl Bound {
    pub fn new(exponent: Ordinal, plus_one: bool) -> Self {
        Bound { exponent, plus_one }
    }

    /// The bound ω (exponent 1, no successor).
    pub fn omega() -> Self {
        Bound::new(Ordinal::finite(1), false)
    }

    /// The bound `ω^0 + 1 = 2`; a factor `F^{<2}` holds words of length
    /// at most one.
    pub fn two() -> Self {
        Bound::new(Ordinal::zero(), true)
    }

    /// Reads a bound off an ordinal, if it has the right shape.
    pub fn from_ordinal(o: &Ordinal) -> Option<Bound> {
        match o.terms.as_slice() {
            [t] if t.coeff == 1 => Some(Bound::new(t.exp.clone(), false)),
            [t, u] if t.coeff == 1 && !t.exp.is_zero() && u.exp.is_zero() && u.coeff == 1 => {
                Some(Bound::new(t.exp.clone(), true))
            }
            // 2 = ω^0 + 1 shows up as the single term ω^0·2.
            [t] if t.exp.is_zero() && t.coeff == 2 => Some(Bound::two()),
            _ => None,
        }
    }

    pub fn exponent(&self) -> &Ordinal {
        &self.exponent
    }

    pub fn is_successor(&self) -> bool {
        self.plus_one
    }

    /// `ω^0`, the bound that admits only the empty word.
    pub fn is_trivial(&self) -> bool {
        self.exponent.is_zero() && !self.plus_one
    }

    /// `β ≥ 1`, i.e. the bound is at least ω.
    pub fn is_proper(&self) -> bool {
        !self.exponent.is_zero()
    }

    /// A bound is decomposable exactly when it is a successor `ω^β + 1`.
    pub fn is_decomposable(&self) -> bool {
        self.plus_one
    }

    pub fn as_ordinal(&self) -> Ordinal {
        let pow = Ordinal::omega_pow(self.exponent.clone());
        if self.plus_one {
            pow + Ordinal::finite(1)
        } else {
            pow
        }
    }

    /// Rank of a proper bound in the ordered set of proper bounds:
    /// with `β = λ + n` (λ limit or 0, n < ω),
    /// `ω^β ↦ 2n − 2` and `ω^β + 1 ↦ 2n − 1` when λ = 0, and
    /// `ω^β ↦ λ + 2n`, `ω^β + 1 ↦ λ + 2n + 1` otherwise.
    /// Rejects the trivial bound and `ω^0 + 1`.
    pub fn proper_rank(&self) -> Result<Ordinal, Error> {
        if !self.is_proper() {
            return Err(Error::NotProperBound(self.as_ordinal().to_string()));
        }
        let (limit, n) = self.exponent.split_finite();
        let last = u64::from(self.plus_one);
        Ok(if limit.is_zero() {
            // β = n ≥ 1 here, so 2n − 2 does not underflow.
            Ordinal::finite(2 * n - 2 + last)
        } else {
            limit + Ordinal::finite(2 * n + last)
        })
    }
}
