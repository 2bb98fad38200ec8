//! Desk-scale numerical operator theory.
//!
//! Everything here runs on dense complex matrices and sampled grid
//! functions, small enough to verify on a laptop:
//!
//! - [`numkernel`] — dense complex linear algebra: products, traces,
//!   operator norms, characteristic polynomials, polynomial roots.
//! - [`spectral`] — Hermitian eigendecomposition (cyclic Jacobi),
//!   spectral resolutions, functional calculus, one-parameter unitary
//!   groups, polar decomposition, range/null projections.
//! - [`ccr`] — the commutation-relation obstruction suite: trace
//!   obstruction, spectrum symmetry of `AB` vs `BA`, the inverse
//!   construction for `I - BA`, truncated canonical pairs, spectral
//!   truncation identities, and a non-preclosable-product demonstration.
//! - [`waveline`] — grid discretization of the translation group on a
//!   finite window: generator-domain diagnostics, jump blow-up profiles,
//!   position/momentum pairs, the cumulative-integral operator on
//!   `[0, 1]`, and averaging-operator convergence.
//! - [`bernstein`] — Bernstein polynomial evaluation, derivatives,
//!   moment identities, interval transport, uniform-error measurement.
//! - [`finitevn`] — finite direct sums of full matrix algebras with
//!   center-valued trace, dimension function, projection equivalence,
//!   and lattice operations.
//! - [`quanta`] — early-quantum formula layer in CGS units: Planck and
//!   Rayleigh–Jeans densities, photoelectric equation, de Broglie
//!   wavelength, Bohr orbits, Balmer lines.
//!
//! All values are immutable after construction and all operations are
//! pure functions, so everything is safe to share across threads.

pub mod bernstein;
pub mod ccr;
pub mod finitevn;
pub mod numkernel;
pub mod quanta;
pub mod spectral;
pub mod tol;
pub mod waveline;

use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Clone, Error)]
pub enum OpError {
    /// Operand shapes are incompatible for the requested operation.
    #[error("dimension mismatch: {0}")]
    ShapeMismatch(String),

    /// A square matrix was required.
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    /// Input failed a self-adjointness check.
    #[error("matrix is not hermitian: max |A - A*| entry {deviation:.3e} exceeds {tolerance:.3e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    /// A desk-scale size guard was exceeded.
    #[error("size {size} exceeds the guard {guard} for this operation")]
    SizeGuard { size: usize, guard: usize },

    /// An iteration failed to converge; residuals are carried for diagnosis.
    #[error("no convergence in {context} after {sweeps} sweeps (max residual {max_residual:.3e})")]
    NoConvergence {
        context: String,
        sweeps: usize,
        max_residual: f64,
        residuals: Vec<f64>,
    },

    /// A matrix required to be invertible is numerically singular.
    #[error("numerically singular: smallest singular value {sigma_min:.3e} is below {threshold:.3e}")]
    Singular { sigma_min: f64, threshold: f64 },

    /// A scalar or structural precondition was violated.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Two grid functions live on different grids.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// A translation step was not an integer multiple of the grid spacing.
    #[error("translation {requested} is not a grid multiple; nearest admissible value is {nearest}")]
    OffGridShift { requested: f64, nearest: f64 },

    /// Spectral differentiation was asked for on a function whose periodic
    /// extension is discontinuous at the window seam.
    #[error("boundary support violated in spectral mode: {0}")]
    BoundarySupport(String),

    /// A grid function does not satisfy the support condition of the core.
    #[error("support condition violated: {0}")]
    SupportViolation(String),

    /// Projections with mismatched per-block ranks admit no equivalence witness.
    #[error("rank mismatch in block {block}: {left} vs {right}")]
    RankMismatch {
        block: usize,
        left: usize,
        right: usize,
    },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, OpError>;
