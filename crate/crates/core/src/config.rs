//! Numerical tolerances shared by every module.
//!
//! The closed forms are exact in real arithmetic; these constants make the
//! floating-point slack explicit and let callers override it.

use serde::{Deserialize, Serialize};

use crate::error::{SttError, SttResult};

/// Scaled residual bound for `‖T x − λ x‖₂`, multiplied by `|δ| + 2|σ| + 1`.
pub const RESIDUAL_RTOL: f64 = 1e-10;
/// Bound on `‖XᵀX − I‖_max`.
pub const ORTHONORMALITY_TOL: f64 = 1e-10;
/// Two ratios (or magnitudes) closer than this, relatively, count as tied.
pub const TIE_RTOL: f64 = 1e-12;
/// Largest `n` for which a dense `n × n` realization is built.
pub const DENSE_CAP: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub residual_rtol: f64,
    pub orthonormality_tol: f64,
    pub tie_rtol: f64,
    pub dense_cap: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            residual_rtol: RESIDUAL_RTOL,
            orthonormality_tol: ORTHONORMALITY_TOL,
            tie_rtol: TIE_RTOL,
            dense_cap: DENSE_CAP,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> SttResult<()> {
        let positive = |x: f64| x.is_finite() && x >= 0.0;
        if !positive(self.residual_rtol) || !positive(self.orthonormality_tol) {
            return Err(SttError::InvalidConfig(
                "tolerances must be finite and non-negative".into(),
            ));
        }
        if !positive(self.tie_rtol) || self.tie_rtol >= 1.0 {
            return Err(SttError::InvalidConfig(format!(
                "tie_rtol must lie in [0, 1), got {}",
                self.tie_rtol
            )));
        }
        if self.dense_cap < 2 {
            return Err(SttError::InvalidConfig(
                "dense_cap must be at least 2".into(),
            ));
        }
        Ok(())
    }

    /// Relative equality used for tie detection.
    pub fn ties(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.tie_rtol * a.abs().max(b.abs())
    }
}
