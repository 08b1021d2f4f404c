//! Finite-dimensional momentum-map geometry at desk scale.
//!
//! The crate is organized around the pipeline
//!
//! ```text
//! symplectic linear algebra  ->  linear group actions and momentum maps
//!        |                                |
//!        v                                v
//! constructive normal forms  ->  singular symplectic reduction
//! ```
//!
//! plus two worked model classes: U(1) lattice gauge theory on triangulated
//! closed surfaces ([`gauge2d`]) and the SU(2) representation variety of a
//! surface group ([`repvar`]).
//!
//! Every operation that asserts a geometric identity reports a residual, and
//! the [`report`] module packages those residuals into machine-readable run
//! reports with pinned tolerances.

pub mod action;
pub mod gauge2d;
pub mod intlin;
pub mod linalg;
pub mod normalform;
pub mod reduction;
pub mod report;
pub mod repvar;
pub mod symplin;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent input data.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// An iterative method failed to converge.
    #[error("{method} did not converge: {detail}")]
    NoConvergence { method: &'static str, detail: String },
    /// A verified identity exceeded its tolerance.
    #[error("identity `{identity}` violated: residual {residual:.3e} > tol {tolerance:.3e}")]
    IdentityViolation {
        identity: String,
        residual: f64,
        tolerance: f64,
    },
    /// Rank decision fell inside a singular-value cluster.
    #[error("ill-separated rank: gap ratio {ratio:.3e} across tolerance {tolerance:.3e}")]
    IllSeparatedRank { ratio: f64, tolerance: f64 },
    #[error("JSON: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Default tolerances, one place so the report layer can surface them.
pub mod tol {
    /// Relative factor for rank decisions: singular values below
    /// `max(nrows, ncols) * RANK_EPS * sigma_max` count as zero.
    pub const RANK_EPS: f64 = 1e-12;
    /// Subspace equality measured as Frobenius distance of orthogonal projectors.
    pub const PROJECTOR: f64 = 1e-8;
    /// Exact structural identities (antisymmetry of constructed forms, ...).
    pub const EXACT: f64 = 1e-12;
    /// Group/generator symplecticity checks.
    pub const SYMPLECTIC: f64 = 1e-10;
    /// Sampled smooth-map identities (normal-form charts, MGS momentum identity).
    pub const CHART: f64 = 1e-6;
    /// Newton convergence: `|step| <= NEWTON * (1 + |x|)`.
    pub const NEWTON: f64 = 1e-12;
}
