//! Exact computations with centralisers of nilpotent matrices in classical
//! Lie algebras over prime fields.
//!
//! Given a partition describing the Jordan type of a nilpotent matrix, this
//! crate constructs the centraliser as a Lie algebra with an explicit basis,
//! builds the elementary symmetric invariants and their restrictions to the
//! symplectic and orthogonal subalgebras, and machine-checks the structural
//! identities they satisfy: invariance under the centraliser group, sign
//! parity under the form involution, vanishing of restrictions, Jacobian
//! ranks at distinguished dual points, generic stabiliser dimensions and
//! index formulas, graded generation over the p-th power subalgebra, the
//! symmetrisation isomorphism for the truncated enveloping algebra, and the
//! resulting bound on simple-module dimensions.
//!
//! All arithmetic is exact: coefficients live in the rationals or in a prime
//! field, never in floating point.

pub mod centralizer;
pub mod coadjoint;
pub mod combinatorics;
pub mod enveloping;
pub mod field;
pub mod invariants;
pub mod jobs;
pub mod linalg;
pub mod polyring;
pub mod report;

/// Error type shared by all modules.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid case: {0}")]
    InvalidCase(String),
    #[error("no valid involution: {0}")]
    NoValidInvolution(String),
    #[error("characteristic 2 is not supported for symplectic/orthogonal constructions")]
    CharacteristicTwo,
    #[error("field too small: {0}")]
    FieldTooSmall(String),
    #[error("missing image for variable {0}")]
    MissingImage(String),
    #[error("degree cap {cap} exceeded (needed {needed})")]
    CapExceeded { cap: usize, needed: usize },
    #[error("element does not lie in the algebra: {0}")]
    NotInAlgebra(String),
    #[error("projection left the subalgebra: {0}")]
    SaturationViolated(String),
    #[error("non-integral exponent: dim {dim}, index {index}")]
    NonIntegralExponent { dim: usize, index: usize },
    #[error("index mismatch: kernel dimension {computed} vs closed form {expected}")]
    IndexMismatch { computed: usize, expected: usize },
    #[error("resource cap exceeded at degree {degree}: {count} monomials")]
    ResourceCap { degree: usize, count: usize },
    #[error("overflow computing {0}")]
    Overflow(String),
    #[error("usage: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
