use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A recurrence step required an exact polynomial division that left a
    /// remainder. Signals an implementation bug, not bad input.
    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("overflow: {0}")]
    Overflow(String),

    /// Evaluation point too close to a zero of the numerator or denominator
    /// polynomial.
    #[error("near pole: {0}")]
    NearPole(String),

    #[error("degenerate determinant: {0}")]
    DegenerateDeterminant(String),

    #[error("no convergence after {iterations} iterations (worst residual {worst_residual:e})")]
    NoConvergence { iterations: usize, worst_residual: f64 },

    #[error("no valid root: {0}")]
    NoValidRoot(String),

    #[error("point within margin of a branch-cut ray: {0}")]
    OnBranchCut(String),

    #[error("branch tracking lost: {0}")]
    TrackingLoss(String),

    #[error("moment condition violated: {0}")]
    MomentViolation(String),

    #[error("branch mismatch: {0}")]
    BranchMismatch(String),

    #[error("singular point: {0}")]
    SingularPoint(String),

    #[error("no sign change of the boundary function on ray (angle {ray_angle} rad)")]
    NoCrossing { ray_angle: f64 },

    #[error("level-line trace did not reach the far endpoint within {steps} steps")]
    TraceDiverged { steps: usize },
}

pub type Result<T> = core::result::Result<T, Error>;
