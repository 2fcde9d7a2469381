//! The symmetric tridiagonal Toeplitz value type and its closed-form
//! eigendecomposition.
//!
//! Eigenpairs are indexed `h = 1..=n` with `λ_h = δ + 2σ cos(hπ/(n+1))`,
//! so the index order follows the cosine, not the eigenvalue magnitude.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::config::DENSE_CAP;
use crate::error::{SttError, SttResult};

/// `sin(m·π / den)` with the argument reduced exactly in integer arithmetic.
///
/// Reduction to `[0, π/2]` makes `sin(kπ) = 0` exact and keeps the odd
/// symmetry `sin(−x) = −sin(x)` bit-exact.
pub(crate) fn sin_pi_ratio(m: i64, den: u64) -> f64 {
    debug_assert!(den > 0);
    let den = den as i128;
    let mut r = (m as i128).rem_euclid(2 * den);
    let mut sign = 1.0;
    if r >= den {
        r -= den;
        sign = -1.0;
    }
    if 2 * r > den {
        r = den - r;
    }
    if r == 0 {
        return 0.0;
    }
    sign * (r as f64 * PI / den as f64).sin()
}

/// `cos(h·π / (n+1))`, evaluated as `sin((n+1−2h)·π / (2(n+1)))`.
///
/// `c_{n+1−h} = −c_h` holds exactly and the central cosine of odd `n` is 0.
pub fn index_cosine(n: usize, h: usize) -> f64 {
    let big = (n + 1) as i64;
    sin_pi_ratio(big - 2 * h as i64, 2 * big as u64)
}

/// A real symmetric tridiagonal Toeplitz matrix `(n; δ, σ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SttMatrix {
    n: usize,
    delta: f64,
    sigma: f64,
}

impl SttMatrix {
    pub fn new(n: usize, delta: f64, sigma: f64) -> SttResult<Self> {
        if n < 2 {
            return Err(SttError::DimensionTooSmall { n });
        }
        if !delta.is_finite() {
            return Err(SttError::NonFinite("delta"));
        }
        if !sigma.is_finite() {
            return Err(SttError::NonFinite("sigma"));
        }
        Ok(Self { n, delta, sigma })
    }

    /// The discrete Laplacian `(n; 2, −1)`.
    pub fn laplacian(n: usize) -> SttResult<Self> {
        Self::new(n, 2.0, -1.0)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// `|δ| + 2|σ|`, an upper bound on the spectral radius.
    pub fn scale(&self) -> f64 {
        self.delta.abs() + 2.0 * self.sigma.abs()
    }

    /// `(n; αδ, ασ)`.
    pub fn scaled(&self, alpha: f64) -> SttResult<Self> {
        Self::new(self.n, alpha * self.delta, alpha * self.sigma)
    }

    /// `‖T‖_F² = nδ² + 2(n−1)σ²`.
    pub fn fro_norm_sq(&self) -> f64 {
        let n = self.n as f64;
        n * self.delta * self.delta + 2.0 * (n - 1.0) * self.sigma * self.sigma
    }

    pub fn fro_norm(&self) -> f64 {
        self.fro_norm_sq().sqrt()
    }

    fn check_index(&self, h: usize) -> SttResult<()> {
        if h == 0 || h > self.n {
            return Err(SttError::IndexOutOfRange {
                index: h,
                n: self.n,
            });
        }
        Ok(())
    }

    /// The `h`th eigenvalue `δ + 2σ cos(hπ/(n+1))`.
    pub fn eigenvalue(&self, h: usize) -> SttResult<f64> {
        self.check_index(h)?;
        Ok(self.eigenvalue_unchecked(h))
    }

    pub(crate) fn eigenvalue_unchecked(&self, h: usize) -> f64 {
        (2.0 * self.sigma).mul_add(index_cosine(self.n, h), self.delta)
    }

    /// All eigenvalues in index order `h = 1..=n`.
    pub fn eigenvalues(&self) -> Vec<f64> {
        (1..=self.n).map(|h| self.eigenvalue_unchecked(h)).collect()
    }

    /// Unit eigenvector for index `h`; it does not depend on `δ` or `σ`.
    pub fn eigenvector(&self, h: usize) -> SttResult<Vec<f64>> {
        self.check_index(h)?;
        Ok(eigenvector_unchecked(self.n, h))
    }

    pub fn eigenpair(&self, h: usize) -> SttResult<EigenPair> {
        self.check_index(h)?;
        Ok(EigenPair {
            h,
            lambda: self.eigenvalue_unchecked(h),
            x: eigenvector_unchecked(self.n, h),
        })
    }

    pub fn spectrum(&self) -> Spectrum {
        let pairs = (1..=self.n)
            .map(|h| EigenPair {
                h,
                lambda: self.eigenvalue_unchecked(h),
                x: eigenvector_unchecked(self.n, h),
            })
            .collect();
        Spectrum { pairs }
    }

    /// True when `σ = 0`, i.e. `T = δI`. The spectrum then collapses to a
    /// single repeated value and the structured distance theory does not apply.
    pub fn is_diagonal(&self) -> bool {
        self.sigma == 0.0
    }

    pub fn dense(&self) -> SttResult<DMatrix<f64>> {
        self.dense_with_cap(DENSE_CAP)
    }

    pub fn dense_with_cap(&self, cap: usize) -> SttResult<DMatrix<f64>> {
        if self.n > cap {
            return Err(SttError::DenseCapExceeded { n: self.n, cap });
        }
        let n = self.n;
        let mut a = DMatrix::zeros(n, n);
        for i in 0..n {
            a[(i, i)] = self.delta;
            if i + 1 < n {
                a[(i, i + 1)] = self.sigma;
                a[(i + 1, i)] = self.sigma;
            }
        }
        Ok(a)
    }

    /// `T·v` using the three-term stencil.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.n, "vector length must match n");
        let n = self.n;
        (0..n)
            .map(|i| {
                let mut y = self.delta * v[i];
                if i > 0 {
                    y += self.sigma * v[i - 1];
                }
                if i + 1 < n {
                    y += self.sigma * v[i + 1];
                }
                y
            })
            .collect()
    }
}

pub(crate) fn eigenvector_unchecked(n: usize, h: usize) -> Vec<f64> {
    let big = (n + 1) as u64;
    let scale = (2.0 / (n + 1) as f64).sqrt();
    (1..=n)
        .map(|k| scale * sin_pi_ratio((h * k) as i64, big))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenPair {
    pub h: usize,
    pub lambda: f64,
    pub x: Vec<f64>,
}

/// All `n` eigenpairs, stored by index `h` (position `h − 1`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub pairs: Vec<EigenPair>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Pair with index `h` (1-based).
    pub fn get(&self, h: usize) -> Option<&EigenPair> {
        h.checked_sub(1).and_then(|i| self.pairs.get(i))
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.pairs.iter().map(|p| p.lambda).collect()
    }

    /// Indices sorted by increasing `|λ_h|`, ties broken by lower index.
    pub fn magnitude_order(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = self.pairs.iter().map(|p| p.h).collect();
        idx.sort_by(|&a, &b| {
            let (la, lb) = (
                self.pairs[a - 1].lambda.abs(),
                self.pairs[b - 1].lambda.abs(),
            );
            la.total_cmp(&lb).then(a.cmp(&b))
        });
        idx
    }
}
