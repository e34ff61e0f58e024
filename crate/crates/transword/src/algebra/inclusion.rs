//! Decision procedure for inclusion of products.
//!
//! Inclusion of `F^{<γ} P` in `F'^{<γ'} Q` reduces to a single smaller
//! question, so the whole check is one walk over the two atom sequences:
//!
//! - `γ < γ'`, or `γ = γ'` indecomposable: if `F ⊆ F'` the head embeds
//!   into the right-hand head and the question becomes `P ⊆ F'^{<γ'} Q`;
//!   otherwise some letter of `F` escapes `F'`, forcing the whole left
//!   side below `Q`.
//! - `γ > γ'`: the left head is too long for the right head regardless of
//!   supports (supports are non-empty), so again `F^{<γ} P ⊆ Q`.
//! - `γ = γ'` decomposable: the heads can only absorb each other whole;
//!   if `F ⊆ F'` both heads drop, otherwise proceed as above.
//!
//! Soundness does not need reduced inputs, only valid atoms.

use std::cmp::Ordering;

use super::Atom;

pub(super) fn sequence_included(mut p: &[Atom], mut q: &[Atom]) -> bool {
    loop {
        let Some(a) = p.first() else {
            // ε belongs to every product.
            return true;
        };
        let Some(b) = q.first() else {
            // A non-empty product contains a one-letter word; {ε} does not.
            return false;
        };
        let order = a.exponent().cmp(b.exponent());
        if order == Ordering::Greater
            || !a.support().subset(b.support()).expect("same space")
        {
            q = &q[1..];
        } else {
            p = &p[1..];
            if order == Ordering::Equal && a.exponent().is_decomposable() {
                q = &q[1..];
            }
        }
    }
}
