//! Intersection of products as a finite union of products.
//!
//! A word in both products splits as `u·v` on the left and `u'·v'` on
//! the right; one of the prefixes is a prefix of the other, so the
//! shorter prefix draws its letters from `F ∩ F'`. With `γ ≤ γ'` this
//! gives, writing the left product `F^{<γ} P` and the right `F'^{<γ'} Q`,
//!
//! `(F∩F')^{<γ} (P ∩ F'^{<γ'} Q) ∪ (F∩F')^{<δ} (F^{<γ} P ∩ Q)`,
//!
//! where `δ = γ` if γ is indecomposable and `δ = ω^β` if `γ = ω^β + 1`.
//! The second branch keeps the left head in play, so its new prefix must
//! concatenate into that head without leaving `F^{<γ}`: for a successor
//! bound the prefix length must stay below `ω^β`, hence the lowering;
//! for an indecomposable γ the full bound is closed under addition and
//! `δ = γ` is sound. When `γ = γ' = ω^β + 1`, a word may also consume
//! both heads as one segment of length exactly `ω^β`, so a third,
//! diagonal branch appears and both side branches are lowered:
//!
//! `(F∩F')^{<γ} (P ∩ Q) ∪ (F∩F')^{<ω^β} (P ∩ F'^{<γ'} Q)
//!                      ∪ (F∩F')^{<ω^β} (F^{<γ} P ∩ Q)`.
//!
//! Every recursive call sees a pair of suffixes of the original atom
//! sequences, so results are memoized on the index pair. An intersected
//! support prefixed with the unit bound is decomposed into irreducible
//! components to keep atoms valid; an empty intersected support or a
//! trivial lowered bound (`ω^0`, from `γ = ω^0 + 1`) contributes ε and
//! disappears.

use std::sync::Arc;

use crate::ordinal::Bound;
use crate::space::ClosedSet;

use super::{minimize, Atom, Product, ProductUnion};

pub(super) fn products(p: &Product, q: &Product) -> ProductUnion {
    let mut memo: Vec<Vec<Option<Vec<Product>>>> =
        vec![vec![None; q.atoms().len() + 1]; p.atoms().len() + 1];
    let members = node(p, q, 0, 0, &mut memo);
    ProductUnion {
        space: Arc::clone(p.space()),
        members: minimize(members),
    }
}

type Memo = Vec<Vec<Option<Vec<Product>>>>;

fn node(p: &Product, q: &Product, i: usize, j: usize, memo: &mut Memo) -> Vec<Product> {
    if let Some(cached) = &memo[i][j] {
        return cached.clone();
    }
    let result = if i == p.atoms().len() || j == q.atoms().len() {
        // ε ∩ anything = anything ∩ ε = {ε}.
        vec![Product::epsilon(p.space())]
    } else {
        let (a, b) = (&p.atoms()[i], &q.atoms()[j]);
        let meet = a
            .support()
            .intersect(b.support())
            .expect("operands share a space");
        let (ga, gb) = (a.exponent(), b.exponent());
        let mut out = Vec::new();
        if ga == gb && ga.is_decomposable() {
            let low = Bound::new(ga.exponent().clone(), false);
            attach(&mut out, p, &meet, ga, &node(p, q, i + 1, j + 1, memo));
            attach(&mut out, p, &meet, &low, &node(p, q, i + 1, j, memo));
            attach(&mut out, p, &meet, &low, &node(p, q, i, j + 1, memo));
        } else {
            // Tails of (head consumed, head kept) with δ = min(γ, γ').
            let (consumed, kept) = if ga <= gb {
                (node(p, q, i + 1, j, memo), node(p, q, i, j + 1, memo))
            } else {
                (node(p, q, i, j + 1, memo), node(p, q, i + 1, j, memo))
            };
            let delta = ga.min(gb);
            let lowered = if delta.is_decomposable() {
                Bound::new(delta.exponent().clone(), false)
            } else {
                delta.clone()
            };
            attach(&mut out, p, &meet, delta, &consumed);
            attach(&mut out, p, &meet, &lowered, &kept);
        }
        minimize(out)
    };
    memo[i][j] = Some(result.clone());
    result
}

/// Pushes `meet^{<bound} · tail` for each tail, reduced; splits a
/// unit-bound reducible meet into components first.
fn attach(
    out: &mut Vec<Product>,
    p: &Product,
    meet: &ClosedSet,
    bound: &Bound,
    tails: &[Product],
) {
    if meet.is_empty() || bound.is_trivial() {
        out.extend_from_slice(tails);
        return;
    }
    let supports = if *bound == Bound::two() && !meet.is_irreducible() {
        meet.irreducible_components()
    } else {
        vec![meet.clone()]
    };
    for support in supports {
        let head = Atom::new(support, bound.clone())
            .expect("non-empty component supports with checked bounds are valid");
        for tail in tails {
            let mut atoms = Vec::with_capacity(1 + tail.atoms().len());
            atoms.push(head.clone());
            atoms.extend(tail.atoms().iter().cloned());
            out.push(
                Product {
                    space: Arc::clone(p.space()),
                    atoms,
                }
                .reduced(),
            );
        }
    }
}
