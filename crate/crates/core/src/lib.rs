//! Crystal operators on affine factorizations and the coefficient engines
//! built on them: Schur expansions of affine Stanley symmetric functions,
//! affine Littlewood–Richardson coefficients, Gromov–Witten invariants of
//! flag manifolds, fusion coefficients and positroid Schubert decompositions.

pub mod affine_weyl;
pub mod coefficients;
pub mod crystal;
pub mod eg;
pub mod error;
pub mod factorization;
pub mod involution;

pub use affine_weyl::{AffinePermutation, Composition, Partition, ResidueSet, SkewShape};
pub use error::{Error, Result};
pub use factorization::{AffineFactorization, Factorizer, LetterOrder};
