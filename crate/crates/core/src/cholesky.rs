//! Cholesky factor `T = RᵀR` of a definite STT matrix.
//!
//! `R` is upper bidiagonal and follows from the forward recurrence
//! `r₁₁ = √δ`, `r_{i−1,i} = σ / r_{i−1,i−1}`, `r_ii = √(δ − r_{i−1,i}²)`.

use std::io::Write;

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{SttError, SttResult};
use crate::report::full;
use crate::stt::{index_cosine, SttMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Definiteness {
    Positive,
    /// The factor belongs to `−T`.
    Negative,
}

impl Definiteness {
    pub fn sign(self) -> f64 {
        match self {
            Definiteness::Positive => 1.0,
            Definiteness::Negative => -1.0,
        }
    }
}

/// Upper bidiagonal Cholesky factor of `sign · T`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CholeskyFactor {
    /// `r_{i,i}`, length `n`.
    pub diag: Vec<f64>,
    /// `r_{i,i+1}`, length `n − 1`.
    pub superdiag: Vec<f64>,
    pub definiteness: Definiteness,
}

impl CholeskyFactor {
    pub fn n(&self) -> usize {
        self.diag.len()
    }

    /// Dense `R`.
    pub fn dense(&self) -> DMatrix<f64> {
        let n = self.n();
        let mut r = DMatrix::zeros(n, n);
        for i in 0..n {
            r[(i, i)] = self.diag[i];
            if i + 1 < n {
                r[(i, i + 1)] = self.superdiag[i];
            }
        }
        r
    }

    /// `R⁻¹` by back-substitution on the bidiagonal factor (upper triangular).
    pub fn inverse(&self) -> DMatrix<f64> {
        let n = self.n();
        let mut x = DMatrix::zeros(n, n);
        for j in 0..n {
            x[(j, j)] = 1.0 / self.diag[j];
            for i in (0..j).rev() {
                x[(i, j)] = -self.superdiag[i] * x[(i + 1, j)] / self.diag[i];
            }
        }
        x
    }
}

/// Factor a definite STT matrix; negative definite input is factored as `−T`.
pub fn cholesky_factor(m: &SttMatrix) -> SttResult<CholeskyFactor> {
    let c1 = index_cosine(m.n(), 1);
    let spread = 2.0 * m.sigma().abs() * c1;
    let (lambda_min, lambda_max) = (m.delta() - spread, m.delta() + spread);
    let definiteness = if lambda_min > 0.0 {
        Definiteness::Positive
    } else if lambda_max < 0.0 {
        Definiteness::Negative
    } else {
        let lambda = if m.delta() >= 0.0 {
            lambda_min
        } else {
            lambda_max
        };
        return Err(SttError::NotDefinite { lambda });
    };
    let sign = definiteness.sign();
    let (delta, sigma) = (sign * m.delta(), sign * m.sigma());

    let n = m.n();
    let mut diag = Vec::with_capacity(n);
    let mut superdiag = Vec::with_capacity(n - 1);
    diag.push(delta.sqrt());
    for i in 1..n {
        let u = sigma / diag[i - 1];
        superdiag.push(u);
        diag.push((delta - u * u).sqrt());
    }
    Ok(CholeskyFactor {
        diag,
        superdiag,
        definiteness,
    })
}

/// Outcome of one monotonicity property: whether it holds and the first
/// 1-based row index `i` where it fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Check {
    pub holds: bool,
    pub first_violation: Option<usize>,
}

impl Check {
    fn scan(range: impl IntoIterator<Item = usize>, ok: impl Fn(usize) -> bool) -> Self {
        let first_violation = range.into_iter().find(|&i| !ok(i));
        Check {
            holds: first_violation.is_none(),
            first_violation,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonotonicityReport {
    /// `r_{i−1,i−1} ≥ r_{i,i} > 0`, `i = 2..n`.
    pub diag_nonincreasing: Check,
    /// `sign(r_{i−1,i}) = sign(σ)`, `i = 2..n`.
    pub superdiag_sign: Check,
    /// `|r_{i−1,i}| ≤ |r_{i,i+1}|`, `i = 2..n−1`.
    pub superdiag_nondecreasing: Check,
    /// `r_{i−1,i−1} > |r_{i−1,i}|` and `r_{i,i} > |r_{i−1,i}|`; only evaluated when `δ ≥ 2|σ|`.
    pub dominance: Option<Check>,
}

impl MonotonicityReport {
    pub fn all_hold(&self) -> bool {
        self.diag_nonincreasing.holds
            && self.superdiag_sign.holds
            && self.superdiag_nondecreasing.holds
            && self.dominance.is_none_or(|c| c.holds)
    }
}

// Consecutive entries converge to a fixed point and may then agree to the
// last bit; a few ulps of slack keep "≥" from flagging rounding noise.
fn geq(a: f64, b: f64) -> bool {
    a >= b - 4.0 * f64::EPSILON * a.abs().max(b.abs())
}

/// Check the structural properties of the factor of `m`.
pub fn monotonicity_report(f: &CholeskyFactor, m: &SttMatrix) -> MonotonicityReport {
    let sign = f.definiteness.sign();
    let (delta, sigma) = (sign * m.delta(), sign * m.sigma());
    let n = f.n();
    let r = &f.diag;
    // u[i−2] = r_{i−1,i} for 1-based i
    let u = &f.superdiag;

    let diag_nonincreasing = Check::scan(2..=n, |i| geq(r[i - 2], r[i - 1]) && r[i - 1] > 0.0);
    let superdiag_sign = Check::scan(2..=n, |i| u[i - 2].signum() == sigma.signum());
    let superdiag_nondecreasing = Check::scan(2..n, |i| geq(u[i - 1].abs(), u[i - 2].abs()));
    let dominance = (delta >= 2.0 * sigma.abs()).then(|| {
        Check::scan(2..=n, |i| {
            r[i - 2] > u[i - 2].abs() && r[i - 1] > u[i - 2].abs()
        })
    });
    MonotonicityReport {
        diag_nonincreasing,
        superdiag_sign,
        superdiag_nondecreasing,
        dominance,
    }
}

/// Sign pattern and monotonicity of the structure entries of `R⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InversePatternReport {
    /// Upper-triangular entries are positive (for `σ > 0`, after removing the
    /// alternating sign `(−1)^{j−i}`).
    pub positive: Check,
    /// Along each row, entries decrease with the column index.
    pub rows_decreasing: Check,
    /// Along each superdiagonal, entries increase with the row index.
    pub diagonals_increasing: Check,
}

/// Diagnostics on `R⁻¹`. For `σ > 0` the checks apply to absolute values.
pub fn inverse_pattern_report(f: &CholeskyFactor) -> InversePatternReport {
    let n = f.n();
    let x = f.inverse();
    let alternating = f.superdiag.first().is_some_and(|&u| u > 0.0);
    let v = |i: usize, j: usize| {
        let e = x[(i, j)];
        if alternating && (j - i) % 2 == 1 {
            -e
        } else {
            e
        }
    };
    let positive = Check::scan(0..n, |i| (i..n).all(|j| v(i, j) > 0.0)).one_based();
    let rows_decreasing =
        Check::scan(0..n, |i| (i + 1..n).all(|j| geq(v(i, j - 1), v(i, j)))).one_based();
    let diagonals_increasing =
        Check::scan(1..n, |i| (i..n).all(|j| geq(v(i, j), v(i - 1, j - 1)))).one_based();
    InversePatternReport {
        positive,
        rows_decreasing,
        diagonals_increasing,
    }
}

impl Check {
    fn one_based(self) -> Self {
        Check {
            first_violation: self.first_violation.map(|i| i + 1),
            ..self
        }
    }
}

/// Entry `(i, j)` of the inverse of the discrete Laplacian `(n; 2, −1)`:
/// `i (n − j + 1) / (n + 1)` for `i ≤ j`, extended symmetrically.
pub fn laplacian_inverse_entry(n: usize, i: usize, j: usize) -> SttResult<f64> {
    if n < 2 {
        return Err(SttError::DimensionTooSmall { n });
    }
    for k in [i, j] {
        if k == 0 || k > n {
            return Err(SttError::IndexOutOfRange { index: k, n });
        }
    }
    let (a, b) = (i.min(j), i.max(j));
    Ok(a as f64 * (n - b + 1) as f64 / (n + 1) as f64)
}

/// CSV `i,diag,superdiag` (the last row has an empty superdiagonal cell).
pub fn write_factor_csv<W: Write>(f: &CholeskyFactor, out: W) -> SttResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["i", "diag", "superdiag"])?;
    for (i, d) in f.diag.iter().enumerate() {
        let s = f.superdiag.get(i).map(|&s| full(s)).unwrap_or_default();
        w.write_record([(i + 1).to_string(), full(*d), s])?;
    }
    w.flush()?;
    Ok(())
}

/// CSV `row,col,value` of the upper triangle of `R⁻¹`.
pub fn write_inverse_factor_csv<W: Write>(f: &CholeskyFactor, out: W) -> SttResult<()> {
    let x = f.inverse();
    crate::report::write_grid_csv(
        f.n(),
        f.n(),
        |i, j| (j >= i).then(|| x[(i - 1, j - 1)]),
        out,
    )
}
