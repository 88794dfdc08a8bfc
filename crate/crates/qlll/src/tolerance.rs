//! Centralized numerical tolerances.
//!
//! Every floating-point decision in the crate goes through one of these three
//! thresholds so that tests and callers can reason about (and tighten) them in
//! a single place.

/// Tolerances used by the numeric kernels.
///
/// * `rank`: relative rank threshold, applied to the eigenvalues of the
///   Hermitian Gram (or projector) matrix whose nonzero count is the rank:
///   an eigenvalue lambda is treated as zero when
///   `lambda <= rank * lambda_max`. Numerical noise on true zeros sits at
///   machine epsilon times `lambda_max`, far below the default cut, so the
///   decisions are effectively exact; rank decisions are the only place
///   where floating point enters the relative-dimension algebra, and after
///   them all ratios are exact integers.
/// * `ortho`: maximum tolerated deviation when validating that a family of
///   vectors is orthonormal (`|<u,v> - delta_uv|`).
/// * `residual`: maximum norm of `P|psi>` for a state to count as satisfying
///   the projector constraint `P`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    pub rank: f64,
    pub ortho: f64,
    pub residual: f64,
}

impl ToleranceConfig {
    pub const DEFAULT_RANK: f64 = 1e-9;
    pub const DEFAULT_ORTHO: f64 = 1e-8;
    pub const DEFAULT_RESIDUAL: f64 = 1e-8;

    /// Builds a config, rejecting non-positive or non-finite thresholds.
    pub fn new(rank: f64, ortho: f64, residual: f64) -> Option<Self> {
        let ok = |t: f64| t.is_finite() && t > 0.0;
        (ok(rank) && ok(ortho) && ok(residual)).then_some(Self {
            rank,
            ortho,
            residual,
        })
    }
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            rank: Self::DEFAULT_RANK,
            ortho: Self::DEFAULT_ORTHO,
            residual: Self::DEFAULT_RESIDUAL,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_valid() {
        let t = ToleranceConfig::default();
        assert!(ToleranceConfig::new(t.rank, t.ortho, t.residual).is_some());
    }

    #[test]
    fn rejects_bad_thresholds() {
        assert!(ToleranceConfig::new(0.0, 1e-8, 1e-8).is_none());
        assert!(ToleranceConfig::new(1e-9, -1.0, 1e-8).is_none());
        assert!(ToleranceConfig::new(1e-9, 1e-8, f64::NAN).is_none());
    }
}
