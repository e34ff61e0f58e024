//! Exhaustive verification sweeps over small instance families.
//!
//! A family collects every reduced product over one finite-alphabet
//! space whose exponents stay in the ω-fragment (the unit bound `ω^0+1`
//! and ω), up to a factor-count cap. Products in that fragment contain
//! finite words only, so symbolic decisions over a family can be checked
//! against ground truth exhaustively: the family precomputes, for each
//! product, a bitmask of the words it contains up to the family depth,
//! which turns the word-level comparisons inside the quadratic and cubic
//! sweeps into a handful of machine operations per pair. Divergences
//! past the depth are settled exactly by [`oracle::refute_inclusion`].
//!
//! The pair and triple loops run on rayon when the `parallel` feature is
//! enabled; the `_seq` variants of each check always run sequentially
//! and are kept for comparison benchmarks.

use std::sync::Arc;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::algebra::{self, Atom, Product};
use crate::error::Error;
use crate::oracle::{self, FiniteWord};
use crate::ordinal::Bound;
use crate::space::{ClosedSet, Space};

/// Every closed set of a finite-alphabet space, the empty set included,
/// in canonical order.
pub fn closed_sets_of(space: &Arc<Space>) -> Result<Vec<ClosedSet>, Error> {
    let points = space.finite_points().ok_or(Error::InfiniteAlphabet)?;
    assert!(points.len() <= 16, "closed-set enumeration is exponential");
    let mut sets = Vec::new();
    for mask in 0u32..1u32 << points.len() {
        let subset: Vec<_> = points
            .iter()
            .enumerate()
            .filter_map(|(i, &p)| (mask >> i & 1 == 1).then_some(p))
            .collect();
        let closure = space.closure_of_points(&subset)?;
        let downward_closed = closure
            .points()
            .expect("finite space")
            .len()
            == subset.len();
        if downward_closed {
            sets.push(closure);
        }
    }
    sets.sort();
    Ok(sets)
}

/// An exhaustive family of reduced products with its word-level ground
/// truth.
pub struct Family {
    space: Arc<Space>,
    products: Vec<Product>,
    words: Vec<FiniteWord>,
    /// masks[i] bit k: word k lies in product i.
    masks: Vec<Vec<u64>>,
}

impl Family {
    /// All reduced products over the space with at most `max_factors`
    /// factors and exponents in {ω^0+1, ω}, together with match masks
    /// over every word up to length `depth`. Adjacent-step pruning
    /// enumerates reduced sequences directly, and reduced forms are
    /// pairwise semantically distinct, so the family is complete and
    /// duplicate-free.
    pub fn omega_fragment(
        space: &Arc<Space>,
        max_factors: usize,
        depth: usize,
    ) -> Result<Family, Error> {
        let mut atoms = Vec::new();
        for set in closed_sets_of(space)? {
            if set.is_empty() {
                continue;
            }
            for bound in [Bound::two(), Bound::omega()] {
                if let Ok(atom) = Atom::new(set.clone(), bound) {
                    atoms.push(atom);
                }
            }
        }
        let mut products = vec![Product::epsilon(space)];
        let mut prefix = Vec::new();
        grow(space, &atoms, &mut prefix, max_factors, &mut products);
        debug_assert!(products.iter().all(Product::is_reduced));

        let words: Vec<FiniteWord> = oracle::enumerate(space, depth)?.collect();
        let masks = word_masks(&products, &words);
        Ok(Family {
            space: Arc::clone(space),
            products,
            words,
            masks,
        })
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn products(&self) -> &[Product] {
        &self.products
    }

    pub fn words(&self) -> &[FiniteWord] {
        &self.words
    }
}

fn grow(
    space: &Arc<Space>,
    atoms: &[Atom],
    prefix: &mut Vec<Atom>,
    max_factors: usize,
    out: &mut Vec<Product>,
) {
    if prefix.len() == max_factors {
        return;
    }
    for atom in atoms {
        let reduced_step = prefix.last().is_none_or(|last| {
            !algebra::absorbs_left(last, atom) && !algebra::absorbs_right(last, atom)
        });
        if !reduced_step {
            continue;
        }
        prefix.push(atom.clone());
        out.push(Product::from_atoms(space, prefix.clone()).expect("atoms share the space"));
        grow(space, atoms, prefix, max_factors, out);
        prefix.pop();
    }
}

fn word_mask(product: &Product, words: &[FiniteWord]) -> Vec<u64> {
    let mut mask = vec![0u64; words.len().div_ceil(64)];
    for (k, w) in words.iter().enumerate() {
        if oracle::matches(w, product) {
            mask[k / 64] |= 1 << (k % 64);
        }
    }
    mask
}

fn word_masks(products: &[Product], words: &[FiniteWord]) -> Vec<Vec<u64>> {
    #[cfg(feature = "parallel")]
    return products
        .par_iter()
        .map(|p| word_mask(p, words))
        .collect();
    #[cfg(not(feature = "parallel"))]
    products.iter().map(|p| word_mask(p, words)).collect()
}

fn mask_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// Index of the first word in `a` missing from `b`.
fn first_outside(a: &[u64], b: &[u64]) -> Option<usize> {
    a.iter()
        .zip(b)
        .enumerate()
        .find_map(|(chunk, (x, y))| {
            let bits = x & !y;
            (bits != 0).then(|| chunk * 64 + bits.trailing_zeros() as usize)
        })
}

/// A disagreement between a symbolic decision and word-level ground
/// truth. The sweeps return these instead of panicking so callers can
/// report every divergence at once.
#[derive(Clone, Debug)]
pub struct Finding {
    pub products: Vec<Product>,
    pub witness: Option<FiniteWord>,
    pub detail: String,
}

fn inclusion_row(family: &Family, i: usize) -> Vec<Finding> {
    let mut findings = Vec::new();
    let p = &family.products[i];
    for (j, q) in family.products.iter().enumerate() {
        let decided = p.included_in(q).expect("family shares one space");
        let covered = mask_subset(&family.masks[i], &family.masks[j]);
        if decided && !covered {
            let k = first_outside(&family.masks[i], &family.masks[j]).expect("not covered");
            findings.push(Finding {
                products: vec![p.clone(), q.clone()],
                witness: Some(family.words[k].clone()),
                detail: "inclusion accepted, yet a word separates the sides".into(),
            });
        }
        if !decided && covered {
            let deep = oracle::refute_inclusion(p, std::slice::from_ref(q))
                .expect("family alphabets are finite");
            if deep.is_none() {
                findings.push(Finding {
                    products: vec![p.clone(), q.clone()],
                    witness: None,
                    detail: "inclusion rejected, yet no finite word separates the sides".into(),
                });
            }
        }
    }
    findings
}

fn intersection_row(family: &Family, i: usize) -> Vec<Finding> {
    let mut findings = Vec::new();
    let p = &family.products[i];
    for j in i..family.products.len() {
        let q = &family.products[j];
        let meet = p.intersect(q).expect("family shares one space");
        let mut combined = vec![0u64; family.masks[i].len()];
        for m in meet.members() {
            let in_both = m.included_in(p).expect("same space")
                && m.included_in(q).expect("same space");
            if !in_both {
                findings.push(Finding {
                    products: vec![p.clone(), q.clone(), m.clone()],
                    witness: None,
                    detail: "intersection member not included in both inputs".into(),
                });
            }
            for (acc, chunk) in combined.iter_mut().zip(word_mask(m, &family.words)) {
                *acc |= chunk;
            }
        }
        let expected: Vec<u64> = family.masks[i]
            .iter()
            .zip(&family.masks[j])
            .map(|(x, y)| x & y)
            .collect();
        if let Some(k) = first_outside(&combined, &expected) {
            findings.push(Finding {
                products: vec![p.clone(), q.clone()],
                witness: Some(family.words[k].clone()),
                detail: "intersection contains a word outside an input".into(),
            });
        }
        if let Some(k) = first_outside(&expected, &combined) {
            findings.push(Finding {
                products: vec![p.clone(), q.clone()],
                witness: Some(family.words[k].clone()),
                detail: "word in both inputs missing from the intersection".into(),
            });
        }
    }
    findings
}

fn irredundancy_row(family: &Family, included: &[Vec<bool>], i: usize) -> Vec<Finding> {
    let mut findings = Vec::new();
    let n = family.products.len();
    let p = &family.products[i];
    // Only pairs where p sits in neither member can yield a finding.
    let outside: Vec<usize> = (0..n).filter(|&j| !included[i][j]).collect();
    for (pos, &j) in outside.iter().enumerate() {
        for &k in &outside[pos..] {
            let covered = family.masks[i]
                .iter()
                .zip(&family.masks[j])
                .zip(&family.masks[k])
                .all(|((x, y), z)| x & !(y | z) == 0);
            if !covered {
                continue;
            }
            // Not included in either member, yet covered by their union
            // on every word up to the depth: settle it exactly.
            let union = [family.products[j].clone(), family.products[k].clone()];
            let deep = oracle::refute_inclusion(p, &union)
                .expect("family alphabets are finite");
            if deep.is_none() {
                findings.push(Finding {
                    products: vec![p.clone(), union[0].clone(), union[1].clone()],
                    witness: None,
                    detail: "covered by a union without being included in a member".into(),
                });
            }
        }
    }
    findings
}

fn flatten_rows<F>(n: usize, row: F) -> Vec<Finding>
where
    F: Fn(usize) -> Vec<Finding> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    return (0..n).into_par_iter().flat_map_iter(row).collect();
    #[cfg(not(feature = "parallel"))]
    (0..n).flat_map(row).collect()
}

/// Cross-checks every ordered pair: symbolic inclusion must match word
/// containment up to the depth, and every rejection must be witnessed by
/// some finite word.
pub fn check_inclusion(family: &Family) -> Vec<Finding> {
    flatten_rows(family.products.len(), |i| inclusion_row(family, i))
}

pub fn check_inclusion_seq(family: &Family) -> Vec<Finding> {
    (0..family.products.len())
        .flat_map(|i| inclusion_row(family, i))
        .collect()
}

/// Cross-checks every unordered pair: the computed intersection must
/// contain exactly the words lying in both sides, and each member must
/// be included in both inputs.
pub fn check_intersection(family: &Family) -> Vec<Finding> {
    flatten_rows(family.products.len(), |i| intersection_row(family, i))
}

pub fn check_intersection_seq(family: &Family) -> Vec<Finding> {
    (0..family.products.len())
        .flat_map(|i| intersection_row(family, i))
        .collect()
}

/// Cross-checks every triple: a product covered by a two-member union
/// must already be included in one member.
pub fn check_irredundancy(family: &Family) -> Vec<Finding> {
    let included = inclusion_matrix(family);
    flatten_rows(family.products.len(), |i| {
        irredundancy_row(family, &included, i)
    })
}

pub fn check_irredundancy_seq(family: &Family) -> Vec<Finding> {
    let included = inclusion_matrix(family);
    (0..family.products.len())
        .flat_map(|i| irredundancy_row(family, &included, i))
        .collect()
}

fn inclusion_matrix(family: &Family) -> Vec<Vec<bool>> {
    let row = |i: usize| -> Vec<bool> {
        let p = &family.products[i];
        family
            .products
            .iter()
            .map(|q| p.included_in(q).expect("family shares one space"))
            .collect()
    };
    #[cfg(feature = "parallel")]
    return (0..family.products.len())
        .into_par_iter()
        .map(row)
        .collect();
    #[cfg(not(feature = "parallel"))]
    (0..family.products.len()).map(row).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_set_enumeration_matches_small_lattices() {
        let discrete = Space::discrete(&["a", "b"]);
        assert_eq!(closed_sets_of(&discrete).unwrap().len(), 4);
        let chain = Space::chain(&["a", "b", "c"]);
        assert_eq!(closed_sets_of(&chain).unwrap().len(), 4);
        let vee = Space::finite_poset(&["a", "b", "c"], &[("a", "b"), ("a", "c")]).unwrap();
        // ∅, {a}, {a,b}, {a,c}, {a,b,c}
        assert_eq!(closed_sets_of(&vee).unwrap().len(), 5);
        assert!(closed_sets_of(&Space::cofinite_nat()).is_err());
    }

    #[test]
    fn family_enumeration_is_complete_and_duplicate_free() {
        let space = Space::discrete(&["a", "b"]);
        let family = Family::omega_fragment(&space, 2, 4).unwrap();

        // Rebuild by brute force: all factor sequences, filtered to the
        // reduced ones.
        let mut atoms = Vec::new();
        for set in closed_sets_of(&space).unwrap() {
            if set.is_empty() {
                continue;
            }
            for bound in [Bound::two(), Bound::omega()] {
                if let Ok(atom) = Atom::new(set.clone(), bound) {
                    atoms.push(atom);
                }
            }
        }
        let mut brute = vec![Product::epsilon(&space)];
        for first in &atoms {
            brute.push(Product::from_atoms(&space, vec![first.clone()]).unwrap());
            for second in &atoms {
                brute.push(
                    Product::from_atoms(&space, vec![first.clone(), second.clone()]).unwrap(),
                );
            }
        }
        let mut brute: Vec<Product> = brute.into_iter().filter(Product::is_reduced).collect();
        brute.sort();
        brute.dedup();

        let mut listed = family.products().to_vec();
        listed.sort();
        assert_eq!(listed, brute);
    }

    #[test]
    fn sweeps_are_clean_on_small_families() {
        let spaces = [
            Space::discrete(&["a", "b"]),
            Space::chain(&["a", "b"]),
            Space::finite_poset(&["a", "b", "c"], &[("a", "b")]).unwrap(),
        ];
        for space in &spaces {
            let family = Family::omega_fragment(space, 2, 4).unwrap();
            assert!(check_inclusion(&family).is_empty());
            assert!(check_intersection(&family).is_empty());
            assert!(check_irredundancy(&family).is_empty());
        }
    }

    #[test]
    fn sequential_variants_agree_with_the_default() {
        let space = Space::discrete(&["a", "b"]);
        let family = Family::omega_fragment(&space, 2, 4).unwrap();
        assert_eq!(
            check_inclusion(&family).len(),
            check_inclusion_seq(&family).len()
        );
        assert_eq!(
            check_intersection(&family).len(),
            check_intersection_seq(&family).len()
        );
        assert_eq!(
            check_irredundancy(&family).len(),
            check_irredundancy_seq(&family).len()
        );
    }

    #[test]
    fn corrupted_masks_surface_as_findings() {
        // Fabricate a family whose ground truth is wrong on purpose: the
        // sweep must notice in both directions.
        let space = Space::discrete(&["a", "b"]);
        let mut family = Family::omega_fragment(&space, 1, 3).unwrap();
        let unit = family
            .products
            .iter()
            .position(|p| p.to_string() == "[a]^{<2}")
            .expect("present in the family");
        family.masks[unit] = vec![u64::MAX >> (64 - family.words.len())];
        let findings = check_inclusion(&family);
        assert!(
            !findings.is_empty(),
            "a unit atom pretending to contain every word must clash"
        );
        assert!(findings.iter().any(|f| f.witness.is_some()));
    }
}
