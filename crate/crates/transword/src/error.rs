use thiserror::Error;

/// Semantic errors raised by library operations.
///
/// Syntax errors from the textual grammars are reported separately as
/// [`crate::text::ParseError`]; everything that can go wrong after parsing
/// lands here.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("point {0:?} is not an element of the space")]
    UnknownPoint(String),

    #[error("duplicate element {0:?} in space definition")]
    DuplicateElement(String),

    #[error("order relation is not antisymmetric: {0:?} and {1:?} lie on a cycle")]
    OrderCycle(String, String),

    #[error("operands belong to different spaces")]
    SpaceMismatch,

    #[error("bound w^0 + 1 requires an irreducible support, got {0}")]
    ReducibleUnitSupport(String),

    #[error("atom support must be non-empty")]
    EmptySupport,

    #[error("atom exponent must be a non-trivial bound")]
    TrivialExponent,

    #[error("operation requires a proper bound, got {0}")]
    NotProperBound(String),

    #[error("ordinal {0} is not of the form w^b or w^b + 1")]
    NotABound(String),

    #[error("preatom exponent is zero")]
    ZeroExponent,

    #[error("exponent {exponent} exceeds the target bound {alpha}")]
    ExponentAboveAlpha { exponent: String, alpha: String },

    #[error("operation requires a reduced product, got {0}")]
    NotReduced(String),

    #[error("symbolic-word component length {0} is not indecomposable")]
    DecomposableLength(String),

    #[error("component over an infinite support must have length >= w")]
    FiniteLengthOverInfiniteSupport,

    #[error("length-1 component requires an irreducible support, got {0}")]
    ReducibleLetterSupport(String),

    #[error("word has a transfinite component and no finite-word form")]
    NotAFiniteWord,

    #[error("word enumeration requires a finite alphabet")]
    InfiniteAlphabet,
}
