//! Tolerance constants used across the crate.
//!
//! Every comparison in the crate is pinned to one of these named values
//! rather than an inline magic number. Equality checks default to an
//! absolute tolerance scaled by the norm of the operands.

/// Default absolute tolerance for matrix equality, scaled by matrix norm.
pub const DEFAULT_EQ: f64 = 1e-10;

/// Self-adjointness check threshold, scaled by matrix norm.
pub const HERMITIAN_CHECK: f64 = 1e-9;

/// Jacobi eigensolver termination: off-diagonal Frobenius mass below this
/// fraction of the matrix norm.
pub const JACOBI_OFFDIAG: f64 = 1e-12;

/// Maximum number of cyclic Jacobi sweeps before reporting failure.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Durand–Kerner convergence: largest per-root update below this value.
pub const ROOT_UPDATE: f64 = 1e-12;

/// Maximum number of Durand–Kerner sweeps before reporting failure.
pub const ROOT_MAX_SWEEPS: usize = 500;

/// Eigenvalue merge width for spectral-resolution thresholds, scaled by norm.
pub const THRESHOLD_MERGE: f64 = 1e-8;

/// Rank cut: singular values below this fraction of the norm count as zero.
pub const NULL_SPACE_CUT: f64 = 1e-10;

/// Residual allowance for reconstruction-style identities, scaled by norm.
pub const RECONSTRUCT: f64 = 1e-9;

/// Residual allowance for the spectral truncation identity, scaled by
/// `(|P| + 1) * (|A| + 1)`.
pub const TRUNCATION_IDENTITY: f64 = 1e-8;

/// Smallest admissible singular value of `I - AB` in the inverse
/// construction, scaled by norm.
pub const INVERTIBILITY_CUT: f64 = 1e-8;
