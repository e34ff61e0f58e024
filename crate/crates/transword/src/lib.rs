//! Symbolic computation on downward-closed subsets of transfinite-word spaces.
//!
//! Words here are sequences of letters indexed by ordinals below ε₀, drawn
//! from a small Noetherian alphabet (a finite poset, or ℕ with the cofinite
//! topology). Closed sets of such words are represented symbolically as
//! finite unions of *products* `F₁^{<γ₁} ⋯ Fₙ^{<γₙ}`, where each factor
//! collects the words over the closed letter set `Fᵢ` of length below the
//! bound `γᵢ`. The library provides:
//!
//! - ordinal arithmetic in Cantor normal form ([`ordinal`]),
//! - the two base alphabets and their closed-set lattices ([`space`]),
//! - canonical (reduced) product forms with decision procedures for
//!   inclusion and intersection, and ordinal ranks ([`algebra`]),
//! - symbolic words, their closures, and the specialization preorder
//!   ([`word`]),
//! - a brute-force finite-word oracle used to cross-check the symbolic
//!   procedures ([`oracle`]),
//! - exhaustive verification sweeps over small instance families
//!   ([`sweep`]), parallelised under the `parallel` feature.
//!
//! Textual grammars for ordinals, products, and words live in [`text`];
//! the `transword` binary exposes the same operations on the command line.

pub mod algebra;
mod error;
pub mod ordinal;
pub mod oracle;
pub mod space;
pub mod sweep;
pub mod text;
pub mod word;

pub use algebra::{Atom, Preatom, Product, ProductUnion};
pub use error::Error;
pub use ordinal::{Bound, Ordinal};
pub use oracle::FiniteWord;
pub use space::{ClosedSet, Point, Space};
pub use text::{ParseError, TextError};
pub use word::{SymbolicWord, WordComponent};
