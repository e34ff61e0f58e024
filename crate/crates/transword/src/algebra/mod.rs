//! Symbolic products of closed sets and their finite unions.
//!
//! A product `F₁^{<γ₁} ⋯ Fₙ^{<γₙ}` denotes the set of words obtained by
//! concatenating, for each factor in order, a word over the closed letter
//! set `Fᵢ` of length strictly below `γᵢ`. With supports non-empty,
//! exponents non-trivial bounds, and the unit bound `ω^0 + 1` restricted
//! to irreducible supports, these are exactly the irreducible closed
//! subsets of the word space, so finite antichains of them
//! ([`ProductUnion`]) represent all closed sets.
//!
//! Every product has a unique *reduced* form reachable by deleting
//! factors that a neighbour absorbs; reduced forms make semantic equality
//! syntactic, which the inclusion and intersection procedures rely on.

mod inclusion;
mod intersect;

use std::sync::Arc;

use crate::error::Error;
use crate::ordinal::{Bound, Ordinal};
use crate::space::{ClosedSet, Space};

/// A factor with an arbitrary ordinal exponent, prior to normalization.
/// Preatoms are the raw material accepted from rewriting steps; only
/// [`normalize`] turns them into valid products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preatom {
    support: ClosedSet,
    exponent: Ordinal,
}

impl Preatom {
    pub fn new(support: ClosedSet, exponent: Ordinal) -> Self {
        Preatom { support, exponent }
    }

    pub fn support(&self) -> &ClosedSet {
        &self.support
    }

    pub fn exponent(&self) -> &Ordinal {
        &self.exponent
    }

    /// Splits `F^{<γ}` along the normal form `γ = γ₁ + ⋯ + γₘ` into the
    /// equal product `F^{<γ₁+1} ⋯ F^{<γₘ₋₁+1} F^{<γₘ}`, every exponent a
    /// bound. A trivial final factor `F^{<1}` is dropped. Indecomposable
    /// exponents split into themselves.
    pub fn split(&self) -> Result<Vec<Preatom>, Error> {
        if self.exponent.is_zero() {
            return Err(Error::ZeroExponent);
        }
        let summands = self.exponent.summands();
        let last = summands.len() - 1;
        let mut out = Vec::with_capacity(summands.len());
        for (i, gamma) in summands.into_iter().enumerate() {
            let base = gamma
                .terms()
                .next()
                .map(|(e, _)| e.clone())
                .expect("summands are non-zero");
            let bound = Bound::new(base, i < last);
            if !bound.is_trivial() {
                out.push(Preatom::new(self.support.clone(), bound.as_ordinal()));
            }
        }
        Ok(out)
    }
}

/// A single valid factor: non-empty support, non-trivial bound exponent,
/// and an irreducible support whenever the exponent is the unit bound
/// `ω^0 + 1` (a one-letter factor denotes an irreducible set only then).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Atom {
    support: ClosedSet,
    exponent: Bound,
}

impl Atom {
    pub fn new(support: ClosedSet, exponent: Bound) -> Result<Self, Error> {
        if exponent.is_trivial() {
            return Err(Error::TrivialExponent);
        }
        if support.is_empty() {
            return Err(Error::EmptySupport);
        }
        if exponent == Bound::two() && !support.is_irreducible() {
            return Err(Error::ReducibleUnitSupport(support.to_string()));
        }
        Ok(Atom { support, exponent })
    }

    pub fn support(&self) -> &ClosedSet {
        &self.support
    }

    pub fn exponent(&self) -> &Bound {
        &self.exponent
    }

    /// Rank of the atom among the irreducible closed subsets of a word
    /// space: the support's lattice rank for unit-bound atoms, otherwise
    /// `ω^(adjust(stature ⊕ bound rank))`.
    fn rank(&self) -> Ordinal {
        if self.exponent == Bound::two() {
            self.support.stature()
        } else {
            let base = self
                .support
                .stature()
                .natural_sum(&self.exponent.proper_rank().expect("non-unit atom bounds are proper"));
            Ordinal::omega_pow(base.critical_adjust())
        }
    }
}

/// Did an adjacent pair trigger an absorption? `first` means the left
/// factor is swallowed by the right one, `second` the converse.
///
/// Left absorption: `F ⊆ F'` and `γ < γ'`, or `γ = γ'` indecomposable.
/// Right absorption: `F' ⊆ F`, `γ` indecomposable, and `γ' ≤ γ`.
pub(crate) fn absorbs_left(left: &Atom, right: &Atom) -> bool {
    (left.exponent < right.exponent
        || (left.exponent == right.exponent && !left.exponent.is_decomposable()))
        && left.support.subset(&right.support).expect("same space")
}

pub(crate) fn absorbs_right(left: &Atom, right: &Atom) -> bool {
    !left.exponent.is_decomposable()
        && right.exponent <= left.exponent
        && right.support.subset(&left.support).expect("same space")
}

/// A finite sequence of atoms over one space; the empty sequence denotes
/// the singleton of the empty word and prints as `eps`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Product {
    space: Arc<Space>,
    atoms: Vec<Atom>,
}

/// Ordering compares atom sequences only and is meaningful within a
/// single space; it fixes the canonical member order of unions.
impl PartialOrd for Product {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Product {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.atoms.cmp(&other.atoms)
    }
}

impl Product {
    /// The empty product ε.
    pub fn epsilon(space: &Arc<Space>) -> Self {
        Product {
            space: Arc::clone(space),
            atoms: Vec::new(),
        }
    }

    pub fn from_atoms(space: &Arc<Space>, atoms: Vec<Atom>) -> Result<Self, Error> {
        for a in &atoms {
            if !(Arc::ptr_eq(a.support.space(), space) || **a.support.space() == **space) {
                return Err(Error::SpaceMismatch);
            }
        }
        Ok(Product {
            space: Arc::clone(space),
            atoms,
        })
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn is_epsilon(&self) -> bool {
        self.atoms.is_empty()
    }

    /// No adjacent pair admits an absorption. Reduced products are the
    /// canonical representatives: two of them denote the same set of
    /// words exactly when they are syntactically equal.
    pub fn is_reduced(&self) -> bool {
        self.atoms
            .windows(2)
            .all(|w| !absorbs_left(&w[0], &w[1]) && !absorbs_right(&w[0], &w[1]))
    }

    /// The reduced form, by running adjacent absorptions to the fixpoint.
    /// The result is independent of the order in which they fire.
    pub fn reduced(&self) -> Product {
        let mut stack: Vec<Atom> = Vec::with_capacity(self.atoms.len());
        'next: for atom in &self.atoms {
            while let Some(top) = stack.last() {
                if absorbs_right(top, atom) {
                    continue 'next;
                }
                if absorbs_left(top, atom) {
                    stack.pop();
                } else {
                    break;
                }
            }
            stack.push(atom.clone());
        }
        Product {
            space: Arc::clone(&self.space),
            atoms: stack,
        }
    }

    /// Builds the reduced product of a factor sequence in which empty
    /// supports are still allowed (they denote ε and are dropped).
    /// Factors with the unit bound must have empty or irreducible
    /// support; reducible ones have no single-product form and belong in
    /// [`normalize`].
    pub fn reduce_factors(
        space: &Arc<Space>,
        factors: Vec<(ClosedSet, Bound)>,
    ) -> Result<Product, Error> {
        let mut atoms = Vec::with_capacity(factors.len());
        for (support, exponent) in factors {
            if support.is_empty() {
                if exponent.is_trivial() {
                    return Err(Error::TrivialExponent);
                }
                continue;
            }
            atoms.push(Atom::new(support, exponent)?);
        }
        Ok(Product::from_atoms(space, atoms)?.reduced())
    }

    /// Whether `self ⊆ other` as sets of words. Neither side needs to be
    /// reduced; the procedure walks both atom sequences once.
    pub fn included_in(&self, other: &Product) -> Result<bool, Error> {
        if !self.same_space(other) {
            return Err(Error::SpaceMismatch);
        }
        Ok(inclusion::sequence_included(&self.atoms, &other.atoms))
    }

    /// The intersection as a finite union of reduced products.
    pub fn intersect(&self, other: &Product) -> Result<ProductUnion, Error> {
        if !self.same_space(other) {
            return Err(Error::SpaceMismatch);
        }
        Ok(intersect::products(self, other))
    }

    /// Ordinal rank of the product among the irreducible closed subsets
    /// of the word space: the natural sum of the atom ranks. Defined on
    /// reduced products; an unreduced argument is rejected rather than
    /// silently reduced.
    pub fn rank(&self) -> Result<Ordinal, Error> {
        if !self.is_reduced() {
            return Err(Error::NotReduced(self.to_string()));
        }
        Ok(self
            .atoms
            .iter()
            .fold(Ordinal::zero(), |acc, a| acc.natural_sum(&a.rank())))
    }

    /// An α-product has every exponent at most α and, when α is
    /// decomposable, reaches α at the final factor only.
    pub fn is_alpha_product(&self, alpha: &Bound) -> bool {
        let below = |a: &Atom| a.exponent <= *alpha;
        match self.atoms.split_last() {
            None => true,
            Some((last, init)) => {
                below(last)
                    && init.iter().all(|a| {
                        below(a) && !(alpha.is_decomposable() && a.exponent == *alpha)
                    })
            }
        }
    }

    /// The factors with exponents clamped to α, as preatoms ready for
    /// [`normalize`]. Clamping to the unit bound can make a support
    /// reducible relative to its exponent, which only the preatom
    /// pipeline knows how to decompose.
    pub fn clamped_preatoms(&self, alpha: &Bound) -> Vec<Preatom> {
        let cap = alpha.as_ordinal();
        self.atoms
            .iter()
            .map(|a| {
                let exp = a.exponent.as_ordinal();
                Preatom::new(a.support.clone(), if exp > cap { cap.clone() } else { exp })
            })
            .collect()
    }

    /// Rewrites a product whose exponents are already at most α into an
    /// equal finite union of α-products. For indecomposable α this is the
    /// product itself; for α = ω^β + 1 every non-final factor at α is
    /// either lowered to ω^β or becomes the final factor of a truncation.
    pub fn to_alpha_products(&self, alpha: &Bound) -> Result<ProductUnion, Error> {
        for a in &self.atoms {
            if a.exponent > *alpha {
                return Err(Error::ExponentAboveAlpha {
                    exponent: a.exponent.as_ordinal().to_string(),
                    alpha: alpha.as_ordinal().to_string(),
                });
            }
        }
        if !alpha.is_decomposable() {
            return ProductUnion::new(&self.space, vec![self.clone()]);
        }
        let lowered = Bound::new(alpha.exponent().clone(), false);
        let at_alpha: Vec<usize> = match self.atoms.split_last() {
            None => Vec::new(),
            Some((_, init)) => init
                .iter()
                .enumerate()
                .filter(|(_, a)| a.exponent == *alpha)
                .map(|(i, _)| i)
                .collect(),
        };
        // The factors before position `pos`, with every earlier α-exponent
        // lowered; a lowered factor with the trivial bound denotes ε.
        let lowered_prefix = |pos: usize| -> Vec<Atom> {
            let mut out = Vec::with_capacity(pos);
            for (i, a) in self.atoms[..pos].iter().enumerate() {
                if at_alpha.contains(&i) {
                    if !lowered.is_trivial() {
                        out.push(Atom::new(a.support.clone(), lowered.clone()).expect(
                            "proper lowered bounds accept any non-empty support",
                        ));
                    }
                } else {
                    out.push(a.clone());
                }
            }
            out
        };
        let mut members = Vec::with_capacity(at_alpha.len() + 1);
        for &pos in &at_alpha {
            let mut atoms = lowered_prefix(pos);
            atoms.push(self.atoms[pos].clone());
            members.push(Product {
                space: Arc::clone(&self.space),
                atoms,
            });
        }
        members.push(Product {
            space: Arc::clone(&self.space),
            atoms: lowered_prefix(self.atoms.len()),
        });
        ProductUnion::new(&self.space, members)
    }

    pub fn same_space(&self, other: &Product) -> bool {
        Arc::ptr_eq(&self.space, &other.space) || self.space == other.space
    }
}

/// Normalizes a preatom sequence into an equal finite union of reduced
/// products. Any zero exponent empties the whole product; empty supports
/// drop out; exponents are split into bounds; unit-bound factors over
/// reducible supports distribute over their irreducible components.
pub fn normalize(space: &Arc<Space>, preatoms: &[Preatom]) -> Result<ProductUnion, Error> {
    if preatoms.iter().any(|p| p.exponent.is_zero()) {
        return ProductUnion::new(space, Vec::new());
    }
    // Per position: the single factor, or one choice per component.
    let mut choices: Vec<Vec<(ClosedSet, Bound)>> = Vec::new();
    for p in preatoms {
        if p.support.is_empty() {
            continue;
        }
        for part in p.split()? {
            let bound = Bound::from_ordinal(part.exponent())
                .expect("split yields bound exponents");
            if bound == Bound::two() && !part.support().is_irreducible() {
                choices.push(
                    part.support()
                        .irreducible_components()
                        .into_iter()
                        .map(|c| (c, bound.clone()))
                        .collect(),
                );
            } else {
                choices.push(vec![(part.support().clone(), bound.clone())]);
            }
        }
    }
    let mut members = vec![Vec::new()];
    for position in &choices {
        let mut grown = Vec::with_capacity(members.len() * position.len());
        for prefix in &members {
            for option in position {
                let mut next: Vec<(ClosedSet, Bound)> = prefix.clone();
                next.push(option.clone());
                grown.push(next);
            }
        }
        members = grown;
    }
    let products = members
        .into_iter()
        .map(|factors| Product::reduce_factors(space, factors))
        .collect::<Result<Vec<_>, _>>()?;
    ProductUnion::new(space, products)
}

/// A closed set of words as a finite union of reduced products. Members
/// form an antichain under inclusion (no member inside another), sorted
/// canonically; the empty union denotes the empty set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductUnion {
    space: Arc<Space>,
    members: Vec<Product>,
}

impl ProductUnion {
    pub fn new(space: &Arc<Space>, members: Vec<Product>) -> Result<Self, Error> {
        for m in &members {
            if !(Arc::ptr_eq(m.space(), space) || **m.space() == **space) {
                return Err(Error::SpaceMismatch);
            }
        }
        let reduced = members.iter().map(Product::reduced).collect();
        Ok(ProductUnion {
            space: Arc::clone(space),
            members: minimize(reduced),
        })
    }

    pub fn empty(space: &Arc<Space>) -> Self {
        ProductUnion {
            space: Arc::clone(space),
            members: Vec::new(),
        }
    }

    pub fn singleton(product: Product) -> Self {
        let space = Arc::clone(&product.space);
        ProductUnion {
            members: minimize(vec![product.reduced()]),
            space,
        }
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn members(&self) -> &[Product] {
        &self.members
    }

    /// Denotes the empty set of words. Note `{ε}` is non-empty: it is the
    /// union whose single member is the empty product.
    pub fn is_empty_set(&self) -> bool {
        self.members.is_empty()
    }

    pub fn same_space(&self, other: &ProductUnion) -> bool {
        Arc::ptr_eq(&self.space, &other.space) || self.space == other.space
    }

    /// Whether `self ⊆ other`. Because members are irreducible closed
    /// sets, a member lies in a finite union exactly when it lies in a
    /// single part, so the check is memberwise.
    pub fn included_in(&self, other: &ProductUnion) -> Result<bool, Error> {
        if !self.same_space(other) {
            return Err(Error::SpaceMismatch);
        }
        for p in &self.members {
            let mut covered = false;
            for q in &other.members {
                if p.included_in(q)? {
                    covered = true;
                    break;
                }
            }
            if !covered {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn union(&self, other: &ProductUnion) -> Result<ProductUnion, Error> {
        if !self.same_space(other) {
            return Err(Error::SpaceMismatch);
        }
        let mut members = self.members.clone();
        members.extend(other.members.iter().cloned());
        Ok(ProductUnion {
            space: Arc::clone(&self.space),
            members: minimize(members),
        })
    }

    pub fn intersect(&self, other: &ProductUnion) -> Result<ProductUnion, Error> {
        if !self.same_space(other) {
            return Err(Error::SpaceMismatch);
        }
        let mut members = Vec::new();
        for p in &self.members {
            for q in &other.members {
                members.extend(p.intersect(q)?.members);
            }
        }
        Ok(ProductUnion {
            space: Arc::clone(&self.space),
            members: minimize(members),
        })
    }
}

/// Antichain normalization of a list of reduced products: sort, drop
/// duplicates, drop members included in another member.
pub(crate) fn minimize(mut members: Vec<Product>) -> Vec<Product> {
    members.sort();
    members.dedup();
    let keep: Vec<bool> = members
        .iter()
        .enumerate()
        .map(|(i, p)| {
            !members.iter().enumerate().any(|(j, q)| {
                i != j
                    && p.included_in(q).expect("union members share a space")
                    && {
                        // Distinct reduced forms cannot include each other
                        // both ways; guard the assumption in debug builds.
                        debug_assert!(!q.included_in(p).unwrap() || p == q);
                        true
                    }
            })
        })
        .collect();
    members
        .into_iter()
        .zip(keep)
        .filter_map(|(p, k)| k.then_some(p))
        .collect()
}
