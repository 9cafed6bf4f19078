//! Negative multinomial distributions built from affine polynomials.
//!
//! An affine polynomial `P(z) = Σ_{T≠∅} a_T z^T` over the nonempty subsets of
//! `{1,…,n}`, together with an exponent `λ > 0` and a positive shift point
//! `a`, defines a distribution on ℕⁿ through the probability generating
//! function `(A(a₁z₁,…,aₙzₙ)/A(a₁,…,aₙ))^{−λ}` with `A = 1 − P`. This crate
//! decides when the construction yields a distribution for every positive
//! `λ` (the `b_T` partition-sum criterion), expands the kernel power into
//! coefficients, computes the domain of existence of the associated Laplace
//! transform (membership queries, boundary parametrization, boundary point
//! clouds), and evaluates and samples the resulting distributions.
//!
//! Modules:
//! - [`subsetpoly`]: subset-indexed affine polynomials and set partitions
//! - [`divisibility`]: the `b_T` table and the acceptance decision
//! - [`series`]: truncated multivariate power series and `(1−P)^{−λ}`
//! - [`domain`]: directional polynomials, radii, membership, boundary
//! - [`distribution`]: normalized PGFs, pmf tables, moments, sampling

use thiserror::Error as ThisError;

pub mod distribution;
pub mod divisibility;
pub mod domain;
pub mod series;
pub mod subsetpoly;

pub use distribution::{mean, normalized_pgf, pmf, sample, DistributionSpec, NormalizedPgf, PmfTable};
pub use divisibility::{
    bt_table, compute_bt, is_infinitely_divisible, is_infinitely_divisible_with_tol, BTable,
    Divisibility,
};
pub use domain::{
    boundary_grid, boundary_point, boundary_residual, classify, closed_form_boundary_2d,
    log_radius, ps_poly, smallest_positive_root, BoundaryRow, DirectionVector, GridRange,
    Membership, MembershipVerdict, UnivariatePoly, DEFAULT_CLASSIFY_TOL,
};
pub use series::{
    directional_coefficients, expand_neg_power, one_minus_p, rising_factorial, MultiIndex,
    TruncatedSeries,
};
pub use subsetpoly::{partitions_of, AffineModel, Partition, SubsetId};

/// Error type shared by every module of the crate.
#[derive(Debug, ThisError)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} entries, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("dimension n = {0} out of supported range 1..=24")]
    DimensionOutOfRange(usize),

    #[error("dimension n = {0} exceeds the combinatorial guard (max 12)")]
    DimensionGuard(usize),

    #[error("the empty subset is not a valid coefficient index")]
    EmptySubset,

    #[error("subset {{{subset}}} out of range for n = {n}")]
    SubsetOutOfRange { subset: String, n: usize },

    #[error("invalid subset: {0}")]
    InvalidSubset(String),

    #[error("subset of cardinality {0} exceeds the partition guard (max 12)")]
    PartitionGuard(usize),

    #[error("scale entry {index} must be positive and finite (got {value})")]
    NonpositiveScale { index: usize, value: f64 },

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("lambda must be positive and finite (got {0})")]
    NonpositiveLambda(f64),

    #[error("degree cap would require {coefficients} stored coefficients (limit {limit})")]
    SeriesTooLarge { coefficients: u64, limit: u64 },

    #[error("series constant term must be 1 (got {0})")]
    ConstantTermNotOne(f64),

    #[error("series constant term must be 0 (got {0})")]
    ConstantTermNotZero(f64),

    #[error("series shapes differ: (n {n_left}, cap {cap_left}) vs (n {n_right}, cap {cap_right})")]
    ShapeMismatch {
        n_left: usize,
        cap_left: usize,
        n_right: usize,
        cap_right: usize,
    },

    #[error("direction must sum to 0 (sum = {0})")]
    NotInHyperplane(f64),

    #[error("direction entry {index} = {value} outside the overflow guard |s_i| <= 40")]
    DirectionTooLarge { index: usize, value: f64 },

    #[error("no positive real root: unbounded direction or model outside the supported setting")]
    NoPositiveRoot,

    #[error("degenerate model: the directional polynomial is the constant 1")]
    DegenerateModel,

    #[error("grid layouts support n in {{2, 3}} only (model has n = {0})")]
    UnsupportedGridDimension(usize),

    #[error("invalid grid range: {0}")]
    InvalidRange(String),

    #[error("closed-form boundary requires n = 2 with unit singleton coefficients")]
    ClosedFormUnsupported,

    #[error("theta1 must be negative (got {0})")]
    NonnegativeTheta(f64),

    #[error("model is not infinitely divisible: b[{witness}] = {value}")]
    NotInfinitelyDivisible { witness: String, value: f64 },

    #[error("shift entry {index} must be positive and finite (got {value})")]
    NonpositiveShift { index: usize, value: f64 },

    #[error("shift point lies outside the domain of existence (margin = {margin})")]
    OutsideDomain { margin: f64 },

    #[error("truncated tail mass {tail} is not below {limit}; increase the degree cap")]
    ExcessTailMass { tail: f64, limit: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
