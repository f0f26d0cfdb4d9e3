//! Error type shared by every engine in the crate.

use thiserror::Error;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Domain errors. Annihilation by a crystal operator is *not* an error; it is
/// reported as `None`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("window is empty")]
    EmptyWindow,
    #[error("window entries {0} and {1} are congruent modulo n")]
    NotBijection(i64, i64),
    #[error("residue {residue} is out of range for rank {n}")]
    BadResidue { residue: usize, n: usize },
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("element is not affine Grassmannian (window is not increasing)")]
    NotGrassmannian,
    #[error("partition part {part} is not less than n = {n}")]
    PartNotLessThanN { part: usize, n: usize },
    #[error("index {index} is out of range 1..{n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("element is not a finite permutation of 1..n")]
    NotFinitePermutation,
    #[error("permutation does not have exactly one descent")]
    NotGrassmannianPermutation,
    #[error("shape does not fit in the {rows}x{cols} rectangle")]
    ShapeTooBig { rows: usize, cols: usize },
    #[error("residue {0} belongs to the content")]
    XInContent(usize),
    #[error("residue {0} is not missing from the element")]
    XInvalid(usize),
    #[error("expected exactly two factors, found {0}")]
    NotTwoFactors(usize),
    #[error("element has full residue content; more than two factors need a missing residue")]
    NoMissingResidue,
    #[error("crystal graph carries no string-length decorations")]
    UndecoratedGraph,
    #[error("element does not lie in the parabolic subgroup avoiding residue {0}")]
    NotInSxHat(usize),
    #[error("m = {m} is smaller than the required {required}")]
    MTooSmall { m: usize, required: usize },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("crystal hypotheses are not met: {0}")]
    HypothesisNotMet(String),
    #[error("shape does not fit in the required rectangle")]
    ShapeOutOfRange,
    #[error("{0} is not divisible by {1}")]
    NotDivisible(i64, usize),
    #[error("element is not a bounded affine permutation for (r, n) = ({r}, {n})")]
    NotBounded { r: i64, n: usize },
    #[error("degree {degree} exceeds the enumeration bound {bound}")]
    DegreeTooLarge { degree: usize, bound: usize },
    #[error("parse error: {0}")]
    Parse(String),
}
