//! Centralized numeric tolerances.
//!
//! Every threshold used by the solvers and predicates lives here so that the
//! test suite and the CLI agree on what "equal", "interior", and "converged"
//! mean.

/// Minimum |det E| (generators normalized to unit length) below which a cone
/// is rejected as degenerate.
pub const EPS_RANK: f64 = 1e-10;

/// Admissibility floor on (b, e_i). Values in (0, EPS_ADMISSIBLE] are treated
/// as not admissible to avoid astronomically large intercepts.
pub const EPS_ADMISSIBLE: f64 = 1e-12;

/// Slack for the geometric >=/<= predicates; exact zeros count as non-strict
/// satisfaction.
pub const EPS_PRED: f64 = 1e-10;

/// Default stationarity tolerance. The residual is compared against
/// `TOL_STAT * section diameter`; Newton converges to ~1e-12, so 1e-8
/// separates converged from non-converged robustly.
pub const TOL_STAT: f64 = 1e-8;

/// Scalar root solve target: |f_A(lambda)| below this after Newton polish.
pub const TOL_ROOT: f64 = 1e-13;

/// Relative tolerance for coordinate-equality detection when counting
/// minimal lines. Physical ties are exact in intended inputs; this is
/// user-overridable at the call site that needs it.
pub const TOL_TIE: f64 = 1e-9;

/// Angular distance between unit normals under which two stationary planes
/// are considered the same. Well below typical inter-solution separation,
/// well above Newton convergence noise.
pub const TOL_DEDUP: f64 = 1e-6;

/// Relative eigenvalue cutoff for "degenerate" in stationary point
/// classification: eigenvalues with |ev| <= EPS_EIG_REL * max|ev| are
/// treated as numerically zero.
pub const EPS_EIG_REL: f64 = 1e-6;

/// Relative tolerance for "point lies on the hyperplane" checks.
pub const ON_PLANE_REL: f64 = 1e-9;

/// Angular tolerance (radians) for detecting a point exactly on the boundary
/// of the 2D region T.
pub const EPS_T_BOUNDARY: f64 = 1e-9;

/// Number of generator coordinates above which volume products are computed
/// in the log domain.
pub const LOG_DOMAIN_DIM: usize = 20;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    #[allow(clippy::assertions_on_constants)] // constants sanity check
    fn ordering_is_sane() {
        assert!(EPS_ADMISSIBLE < EPS_PRED);
        assert!(EPS_PRED < TOL_STAT);
        assert!(TOL_ROOT < TOL_STAT);
        assert!(TOL_STAT < TOL_DEDUP);
    }
}
