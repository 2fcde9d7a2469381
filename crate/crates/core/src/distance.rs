//! Distance to singularity, unstructured and within the STT subspace.
//!
//! For `T = (n; δ, σ)` the unstructured Frobenius (and spectral) distance is
//! `min_h |λ_h|` by Eckart–Young. Inside the STT subspace the closest
//! singular matrix with a null `h`th eigenvalue is `(n; δ*, σ*)` with
//!
//! ```text
//! δ* = 2(n c² δ − (n−1) c σ) / (n−1 + 2n c²)
//! σ* = ((n−1) σ − n c δ)     / (n−1 + 2n c²),      c = cos(hπ/(n+1))
//! ```
//!
//! at distance `|λ_h| / κ(λ_h)`; minimizing that ratio over `h` gives the
//! structured distance.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::config::Tolerances;
use crate::error::{SttError, SttResult};
use crate::sensitivity::{kappa_unchecked, project_rank_one, SttProjection};
use crate::stt::{eigenvector_unchecked, index_cosine, SttMatrix};

/// An STT matrix `(n; δ*, σ*)` whose `h`th eigenvalue vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SingularCandidate {
    pub h: usize,
    pub delta_star: f64,
    pub sigma_star: f64,
    /// Frobenius distance to the original matrix.
    pub distance_f: f64,
}

impl SingularCandidate {
    pub fn matrix(&self, n: usize) -> SttResult<SttMatrix> {
        SttMatrix::new(n, self.delta_star, self.sigma_star)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NearestSingularReport {
    pub n: usize,
    pub delta: f64,
    pub sigma: f64,
    pub minimizers: Vec<SingularCandidate>,
    pub structured_distance_f: f64,
    pub unique: bool,
    pub unstructured_distance: f64,
    pub unstructured_minimizer_indices: Vec<usize>,
    pub spectral_lower: f64,
    pub spectral_upper: f64,
    pub definite: bool,
}

impl NearestSingularReport {
    pub fn minimizer_indices(&self) -> Vec<usize> {
        self.minimizers.iter().map(|c| c.h).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnstructuredDistance {
    pub distance: f64,
    /// Every index attaining the minimum magnitude (one or two).
    pub indices: Vec<usize>,
}

/// Indices whose value ties the minimum of `values` (1-based).
fn argmin_set(values: &[f64], tol: &Tolerances) -> (f64, Vec<usize>) {
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let idx = values
        .iter()
        .enumerate()
        .filter(|(_, &v)| tol.ties(v, min))
        .map(|(i, _)| i + 1)
        .collect();
    (min, idx)
}

fn ratios(m: &SttMatrix) -> Vec<f64> {
    (1..=m.n())
        .map(|h| m.eigenvalue_unchecked(h).abs() / kappa_unchecked(m.n(), h))
        .collect()
}

/// `d_F(T) = d_2(T) = min_h |λ_h|` and every index attaining it.
pub fn unstructured_distance(m: &SttMatrix, tol: &Tolerances) -> UnstructuredDistance {
    let mags: Vec<f64> = m.eigenvalues().iter().map(|l| l.abs()).collect();
    let (distance, indices) = argmin_set(&mags, tol);
    UnstructuredDistance { distance, indices }
}

/// Closest STT matrix whose `h`th eigenvalue is zero.
pub fn nearest_singular_fixed_index(m: &SttMatrix, h: usize) -> SttResult<SingularCandidate> {
    let (n, delta, sigma) = (m.n(), m.delta(), m.sigma());
    let lambda = m.eigenvalue(h)?;
    if lambda == 0.0 {
        return Ok(SingularCandidate {
            h,
            delta_star: delta,
            sigma_star: sigma,
            distance_f: 0.0,
        });
    }
    let c = index_cosine(n, h);
    let nf = n as f64;
    let den = nf - 1.0 + 2.0 * nf * c * c;
    let delta_star = 2.0 * (nf * c * c * delta - (nf - 1.0) * c * sigma) / den;
    let sigma_star = ((nf - 1.0) * sigma - nf * c * delta) / den;
    let distance_f = lambda.abs() / (1.0 / nf + 2.0 * c * c / (nf - 1.0)).sqrt();
    Ok(SingularCandidate {
        h,
        delta_star,
        sigma_star,
        distance_f,
    })
}

/// `T − λ_h P / ‖P‖_F²` with `P = (x_h x_hᵀ)|T`: the rank-correction route to
/// the same candidate as [`nearest_singular_fixed_index`].
pub fn rank_correction(m: &SttMatrix, h: usize) -> SttResult<SttProjection> {
    let p = project_rank_one(m, h)?;
    let lambda = m.eigenvalue_unchecked(h);
    let w = lambda / (p.fro_norm * p.fro_norm);
    Ok(SttProjection::new(
        m.n(),
        m.delta() - w * p.d,
        m.sigma() - w * p.s,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralBounds {
    pub lower: f64,
    pub upper: f64,
}

/// Bounds on the structured spectral-norm distance using the candidate at `h`.
///
/// `lower = min_k |λ_k|`,
/// `upper = |λ_h| (n−1 + 2n|c| cos(π/(n+1))) / (n−1 + 2n c²)`.
/// The upper bound is meaningful when `h` minimizes `|λ|/κ`.
pub fn spectral_bounds(m: &SttMatrix, h: usize) -> SttResult<SpectralBounds> {
    let lambda = m.eigenvalue(h)?;
    let n = m.n();
    let nf = n as f64;
    let lower = m
        .eigenvalues()
        .iter()
        .fold(f64::INFINITY, |a, l| a.min(l.abs()));
    let c = index_cosine(n, h);
    let c1 = index_cosine(n, 1);
    let upper = lambda.abs() * (nf - 1.0 + 2.0 * nf * c.abs() * c1) / (nf - 1.0 + 2.0 * nf * c * c);
    Ok(SpectralBounds { lower, upper })
}

/// `‖Λ − Λ*‖₂ = max_j |λ_j(T) − λ_j(S*)|`, the spectral distance to a candidate.
pub fn eigenvalue_shift_norm(m: &SttMatrix, cand: &SingularCandidate) -> SttResult<f64> {
    let s = cand.matrix(m.n())?;
    Ok((1..=m.n())
        .map(|j| (m.eigenvalue_unchecked(j) - s.eigenvalue_unchecked(j)).abs())
        .fold(0.0, f64::max))
}

/// Dense Eckart–Young matrix `T − λ_k x_k x_kᵀ`, the unstructured nearest
/// singular matrix when `|λ_k|` is the unique smallest magnitude.
pub fn eckart_young_singular(m: &SttMatrix, k: usize, cap: usize) -> SttResult<DMatrix<f64>> {
    let lambda = m.eigenvalue(k)?;
    let x = eigenvector_unchecked(m.n(), k);
    let mut a = m.dense_with_cap(cap)?;
    for i in 0..m.n() {
        for j in 0..m.n() {
            a[(i, j)] -= lambda * x[i] * x[j];
        }
    }
    Ok(a)
}

fn is_definite(m: &SttMatrix) -> bool {
    let eig = m.eigenvalues();
    eig.iter().all(|&l| l > 0.0) || eig.iter().all(|&l| l < 0.0)
}

/// Structured Frobenius distance to singularity with all minimizers.
pub fn structured_distance(m: &SttMatrix, tol: &Tolerances) -> SttResult<NearestSingularReport> {
    if m.is_diagonal() {
        return Err(SttError::ZeroOffDiagonal);
    }
    let unstructured = unstructured_distance(m, tol);
    let (structured, indices) = argmin_set(&ratios(m), tol);
    let minimizers = indices
        .iter()
        .map(|&h| nearest_singular_fixed_index(m, h))
        .collect::<SttResult<Vec<_>>>()?;

    let mut spectral_upper = f64::INFINITY;
    for &h in &indices {
        spectral_upper = spectral_upper.min(spectral_bounds(m, h)?.upper);
    }

    Ok(NearestSingularReport {
        n: m.n(),
        delta: m.delta(),
        sigma: m.sigma(),
        unique: minimizers.len() == 1,
        minimizers,
        structured_distance_f: structured,
        unstructured_distance: unstructured.distance,
        unstructured_minimizer_indices: unstructured.indices,
        spectral_lower: unstructured.distance,
        spectral_upper,
        definite: is_definite(m),
    })
}

/// Which of the tie situations of the indefinite case applies.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum TieCase {
    /// `δ = 0`, `n` odd: the central eigenvalue is zero and both distances vanish.
    SingularCentral { index: usize },
    /// `δ = 0`, `n` even: the two central eigenvalues tie in magnitude and in ratio.
    ZeroDiagonalPair {
        indices: [usize; 2],
        opposite_signs: bool,
    },
    General {
        magnitude_minimizers: Vec<usize>,
        ratio_minimizers: Vec<usize>,
        magnitude_unique: bool,
        ratio_unique: bool,
        /// Both minimizers unique and equal.
        coincide: bool,
        /// A magnitude tie (if any) pairs consecutive indices of opposite sign.
        magnitude_tie_consistent: bool,
        /// A ratio tie (if any) pairs consecutive, opposite-sign indices in one half.
        ratio_tie_consistent: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TieReport {
    pub n: usize,
    pub delta: f64,
    pub sigma: f64,
    #[serde(flatten)]
    pub case: TieCase,
}

fn consecutive_opposite(m: &SttMatrix, idx: &[usize]) -> bool {
    match idx {
        [_] => true,
        [a, b] => b - a == 1 && m.eigenvalue_unchecked(*a) * m.eigenvalue_unchecked(*b) < 0.0,
        _ => false,
    }
}

/// Halves within which `1/κ` is monotone: `{1..⌈(n+1)/2⌉}` / `{⌈(n+1)/2⌉..n}`
/// for odd `n`, `{1..n/2}` / `{n/2+1..n}` for even `n`.
fn same_half(n: usize, a: usize, b: usize) -> bool {
    let (lo_end, hi_start) = if n % 2 == 1 {
        (n.div_ceil(2), n.div_ceil(2))
    } else {
        (n / 2, n / 2 + 1)
    };
    (a <= lo_end && b <= lo_end) || (a >= hi_start && b >= hi_start)
}

pub fn tie_analysis(m: &SttMatrix, tol: &Tolerances) -> SttResult<TieReport> {
    if m.is_diagonal() {
        return Err(SttError::ZeroOffDiagonal);
    }
    let n = m.n();
    let case = if m.delta() == 0.0 && n % 2 == 1 {
        TieCase::SingularCentral {
            index: n.div_ceil(2),
        }
    } else if m.delta() == 0.0 {
        let (a, b) = (n / 2, n / 2 + 1);
        TieCase::ZeroDiagonalPair {
            indices: [a, b],
            opposite_signs: m.eigenvalue_unchecked(a) * m.eigenvalue_unchecked(b) < 0.0,
        }
    } else {
        let mag = unstructured_distance(m, tol).indices;
        let (_, rat) = argmin_set(&ratios(m), tol);
        let magnitude_unique = mag.len() == 1;
        let ratio_unique = rat.len() == 1;
        let ratio_tie_consistent =
            ratio_unique || (consecutive_opposite(m, &rat) && same_half(n, rat[0], rat[1]));
        TieCase::General {
            coincide: magnitude_unique && ratio_unique && mag[0] == rat[0],
            magnitude_tie_consistent: consecutive_opposite(m, &mag),
            ratio_tie_consistent,
            magnitude_minimizers: mag,
            ratio_minimizers: rat,
            magnitude_unique,
            ratio_unique,
        }
    };
    Ok(TieReport {
        n,
        delta: m.delta(),
        sigma: m.sigma(),
        case,
    })
}

/// Behaviour of the discrete Laplacian `(n; 2, −1)` as `n` grows.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LaplacianAsymptotics {
    pub n: usize,
    pub lambda1: f64,
    /// `λ₁ n² / π²`, tends to 1.
    pub lambda1_scaled: f64,
    /// `λ₁ / κ(λ₁)`, the structured distance.
    pub ratio: f64,
    /// `ratio · n^{3/2} √3 / π²`, tends to 1.
    pub ratio_scaled: f64,
    /// Tends to 2.
    pub delta_star: f64,
    /// Tends to −1.
    pub sigma_star: f64,
    /// `d_F / d_F^T`.
    pub distance_ratio: f64,
    /// `sqrt(3/n)`.
    pub distance_ratio_estimate: f64,
}

pub fn laplacian_asymptotics(n: usize) -> SttResult<LaplacianAsymptotics> {
    let m = SttMatrix::laplacian(n)?;
    let nf = n as f64;
    let pi2 = std::f64::consts::PI.powi(2);
    let lambda1 = m.eigenvalue_unchecked(1);
    let cand = nearest_singular_fixed_index(&m, 1)?;
    let ratio = cand.distance_f;
    Ok(LaplacianAsymptotics {
        n,
        lambda1,
        lambda1_scaled: lambda1 * nf * nf / pi2,
        ratio,
        ratio_scaled: ratio * nf.powf(1.5) * 3f64.sqrt() / pi2,
        delta_star: cand.delta_star,
        sigma_star: cand.sigma_star,
        distance_ratio: lambda1 / ratio,
        distance_ratio_estimate: (3.0 / nf).sqrt(),
    })
}

/// Behaviour of `(n; 0, σ)` for even `n`, where two structured minimizers exist.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZeroDiagAsymptotics {
    pub n: usize,
    pub sigma: f64,
    /// `2|σ| cos(nπ/(2(n+1)))`, of order `1/n`.
    pub d_f: f64,
    /// Of order `1/sqrt(n)`.
    pub d_f_structured: f64,
    /// `d_F / d_F^T`, close to `sqrt(1/n)`.
    pub distance_ratio: f64,
    /// Candidate at `h = n/2`.
    pub lower: SingularCandidate,
    /// Candidate at `h = n/2 + 1`.
    pub upper: SingularCandidate,
}

pub fn zero_diag_asymptotics(n: usize, sigma: f64) -> SttResult<ZeroDiagAsymptotics> {
    if n % 2 == 1 {
        return Err(SttError::OddDimension { n });
    }
    let m = SttMatrix::new(n, 0.0, sigma)?;
    if m.is_diagonal() {
        return Err(SttError::ZeroOffDiagonal);
    }
    let d_f = 2.0 * sigma.abs() * index_cosine(n, n / 2).abs();
    let lower = nearest_singular_fixed_index(&m, n / 2)?;
    let upper = nearest_singular_fixed_index(&m, n / 2 + 1)?;
    Ok(ZeroDiagAsymptotics {
        n,
        sigma,
        d_f,
        d_f_structured: lower.distance_f,
        distance_ratio: d_f / lower.distance_f,
        lower,
        upper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn table1() -> SttMatrix {
        SttMatrix::new(9, (PI / 20.0).cos(), -(2f64.sqrt()) / 2.0).unwrap()
    }

    #[test]
    fn unstructured_examples() {
        let u = unstructured_distance(&SttMatrix::laplacian(1000).unwrap(), &tol());
        assert_relative_eq!(u.distance, 9.8499e-6, max_relative = 1e-4);
        assert_eq!(u.indices, vec![1]);

        let u = unstructured_distance(&SttMatrix::new(1000, 0.0, 1.0).unwrap(), &tol());
        assert_relative_eq!(u.distance, 3.1385e-3, max_relative = 1e-4);
        assert_eq!(u.indices, vec![500, 501]);

        for n in [3, 7, 51] {
            let u = unstructured_distance(&SttMatrix::new(n, 0.0, -2.5).unwrap(), &tol());
            assert_eq!(u.distance, 0.0);
            assert_eq!(u.indices, vec![n.div_ceil(2)]);
        }
    }

    #[test]
    fn candidate_zeroes_its_eigenvalue() {
        let m = table1();
        let c = nearest_singular_fixed_index(&m, 2).unwrap();
        let s = c.matrix(9).unwrap();
        assert!(s.eigenvalue(2).unwrap().abs() <= 1e-15);
        assert_relative_eq!(s.eigenvalue(5).unwrap(), 1.0510, max_relative = 1e-4);
    }

    #[test]
    fn already_singular_index() {
        let m = SttMatrix::new(7, 0.0, 1.3).unwrap();
        let c = nearest_singular_fixed_index(&m, 4).unwrap();
        assert_eq!((c.delta_star, c.sigma_star, c.distance_f), (0.0, 1.3, 0.0));
    }

    #[test]
    fn table_two_first_ratio() {
        let m = SttMatrix::new(10, 1.8, -1.0).unwrap();
        let c = nearest_singular_fixed_index(&m, 1).unwrap();
        assert_relative_eq!(c.distance_f, 2.1560e-1, max_relative = 1e-4);
    }

    #[test]
    fn rank_correction_matches_closed_form() {
        for (n, d, s) in [(9, 0.98, -0.7), (10, 1.8, -1.0), (31, -0.2, 3.0)] {
            let m = SttMatrix::new(n, d, s).unwrap();
            for h in 1..=n {
                let a = rank_correction(&m, h).unwrap();
                let b = nearest_singular_fixed_index(&m, h).unwrap();
                assert!((a.d - b.delta_star).abs() <= 1e-12);
                assert!((a.s - b.sigma_star).abs() <= 1e-12);
                let diff = SttMatrix::new(n, d - a.d, s - a.s).unwrap();
                assert_relative_eq!(diff.fro_norm(), b.distance_f, max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn report_examples() {
        let r = structured_distance(&SttMatrix::laplacian(1000).unwrap(), &tol()).unwrap();
        assert_relative_eq!(r.structured_distance_f, 1.7977e-4, max_relative = 1e-4);
        assert!(r.unique && r.definite);
        assert_eq!(r.minimizer_indices(), vec![1]);
        assert_relative_eq!(r.spectral_upper, r.spectral_lower, max_relative = 1e-12);

        let r = structured_distance(&SttMatrix::new(1000, 0.0, 1.0).unwrap(), &tol()).unwrap();
        assert_relative_eq!(r.structured_distance_f, 9.9246e-2, max_relative = 1e-4);
        assert_eq!(r.minimizer_indices(), vec![500, 501]);
        assert!(!r.unique && !r.definite);

        let r = structured_distance(&SttMatrix::new(10, 1.8, -1.0).unwrap(), &tol()).unwrap();
        assert_eq!(r.minimizer_indices(), vec![1]);
        assert_eq!(r.unstructured_minimizer_indices, vec![2]);
        assert_relative_eq!(r.structured_distance_f, 2.1560e-1, max_relative = 1e-4);
    }

    #[test]
    fn zero_sigma_rejected() {
        let m = SttMatrix::new(5, 1.0, 0.0).unwrap();
        assert_eq!(
            structured_distance(&m, &tol()),
            Err(SttError::ZeroOffDiagonal)
        );
        assert_eq!(tie_analysis(&m, &tol()), Err(SttError::ZeroOffDiagonal));
        assert_eq!(
            zero_diag_asymptotics(4, 0.0),
            Err(SttError::ZeroOffDiagonal)
        );
    }

    #[test]
    fn singular_input_short_circuits() {
        let m = SttMatrix::new(5, 0.0, 2.0).unwrap();
        let r = structured_distance(&m, &tol()).unwrap();
        assert_eq!(r.structured_distance_f, 0.0);
        assert_eq!(r.unstructured_distance, 0.0);
        assert_eq!(r.minimizer_indices(), vec![3]);
        assert_eq!(r.minimizers[0].delta_star, 0.0);
        assert_eq!(r.minimizers[0].sigma_star, 2.0);
    }

    #[test]
    fn spectral_bound_example_four() {
        let m = SttMatrix::new(10, 1.8, -1.0).unwrap();
        let b = spectral_bounds(&m, 1).unwrap();
        let cand = nearest_singular_fixed_index(&m, 1).unwrap();
        let shift = eigenvalue_shift_norm(&m, &cand).unwrap();
        assert!(b.upper >= shift * (1.0 - 1e-12));
        assert!(b.lower <= b.upper);
        assert_relative_eq!(b.lower, 1.1749e-1, max_relative = 1e-4);
    }

    #[test]
    fn definite_case_bounds_collapse() {
        for (n, d, s) in [(20, 5.0, 1.0), (20, -5.0, 1.0), (7, 3.0, -1.4)] {
            let m = SttMatrix::new(n, d, s).unwrap();
            let r = structured_distance(&m, &tol()).unwrap();
            assert!(r.definite);
            assert_eq!(r.minimizer_indices(), r.unstructured_minimizer_indices);
            assert!([1, n].contains(&r.minimizers[0].h));
            assert_relative_eq!(r.spectral_lower, r.spectral_upper, max_relative = 1e-12);
        }
    }

    #[test]
    fn tie_cases() {
        let t = tie_analysis(&SttMatrix::new(1000, 0.0, 1.0).unwrap(), &tol()).unwrap();
        assert_eq!(
            t.case,
            TieCase::ZeroDiagonalPair {
                indices: [500, 501],
                opposite_signs: true
            }
        );

        let t = tie_analysis(&SttMatrix::new(9, 0.0, 1.0).unwrap(), &tol()).unwrap();
        assert_eq!(t.case, TieCase::SingularCentral { index: 5 });

        let t = tie_analysis(&table1(), &tol()).unwrap();
        match t.case {
            TieCase::General {
                magnitude_minimizers,
                ratio_minimizers,
                magnitude_unique,
                ratio_unique,
                magnitude_tie_consistent,
                ..
            } => {
                assert_eq!(magnitude_minimizers, vec![2, 3]);
                assert!(!magnitude_unique && magnitude_tie_consistent);
                assert_eq!(ratio_minimizers, vec![2]);
                assert!(ratio_unique);
            }
            other => panic!("unexpected {other:?}"),
        }

        let t = tie_analysis(&SttMatrix::new(10, 1.8, -1.0).unwrap(), &tol()).unwrap();
        match t.case {
            TieCase::General {
                magnitude_minimizers,
                ratio_minimizers,
                coincide,
                ..
            } => {
                assert_eq!(magnitude_minimizers, vec![2]);
                assert_eq!(ratio_minimizers, vec![1]);
                assert!(!coincide);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn constructed_ratio_tie_is_consecutive_and_one_sided() {
        // Choose δ so that |λ₁|/κ₁ = |λ₂|/κ₂ with λ₁ < 0 < λ₂, for (10; δ, −1).
        let (n, sigma) = (10usize, -1.0);
        let (c1, c2) = (index_cosine(n, 1), index_cosine(n, 2));
        let (k1, k2) = (kappa_unchecked(n, 1), kappa_unchecked(n, 2));
        let delta = -2.0 * sigma * (c1 / k1 + c2 / k2) / (1.0 / k1 + 1.0 / k2);
        let m = SttMatrix::new(n, delta, sigma).unwrap();
        let r = structured_distance(&m, &tol()).unwrap();
        assert_eq!(r.minimizer_indices(), vec![1, 2]);
        assert!(!r.unique);
        let t = tie_analysis(&m, &tol()).unwrap();
        match t.case {
            TieCase::General {
                ratio_unique,
                ratio_tie_consistent,
                magnitude_unique,
                ..
            } => {
                assert!(!ratio_unique && ratio_tie_consistent && magnitude_unique);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn laplacian_limits() {
        let a = laplacian_asymptotics(1000).unwrap();
        assert!((0.99..=1.01).contains(&a.lambda1_scaled));
        for n in [100, 1000, 10_000] {
            let a = laplacian_asymptotics(n).unwrap();
            assert!((a.delta_star - 2.0).abs() <= 1e-2 * 100.0 / n as f64 + 1e-2);
        }
        // σ*(n) = −1 − 2nc(1−c)/(n−1+2nc²) approaches −1 from below.
        let a = laplacian_asymptotics(1_000_000).unwrap();
        assert!((a.sigma_star + 1.0).abs() <= 1e-3, "{}", a.sigma_star);
        assert!(a.sigma_star < -1.0);
    }

    #[test]
    fn zero_diag_examples() {
        let z = zero_diag_asymptotics(1000, 1.0).unwrap();
        assert_relative_eq!(z.d_f, 3.1385e-3, max_relative = 1e-4);
        assert_relative_eq!(z.d_f_structured, 9.9246e-2, max_relative = 1e-4);
        assert_eq!(z.lower.delta_star, -z.upper.delta_star);
        assert_eq!(z.lower.sigma_star, z.upper.sigma_star);

        let z = zero_diag_asymptotics(2, 1.0).unwrap();
        assert_relative_eq!(z.d_f, 1.0, epsilon = 1e-15);

        let z = zero_diag_asymptotics(10_000, 1.0).unwrap();
        let scaled = z.d_f * 10_000.0 / PI;
        assert!((0.99..=1.01).contains(&scaled));
        assert!(z.d_f_structured * 100.0 < 10.0);

        assert_eq!(
            zero_diag_asymptotics(7, 1.0),
            Err(SttError::OddDimension { n: 7 })
        );
    }

    #[test]
    fn eckart_young_drops_one_component() {
        let m = table1();
        let s = eckart_young_singular(&m, 2, 64).unwrap();
        let x = m.eigenvector(2).unwrap();
        let sx: Vec<f64> = (0..9)
            .map(|i| (0..9).map(|j| s[(i, j)] * x[j]).sum())
            .collect();
        assert!(sx.iter().all(|v| v.abs() < 1e-14));
    }
}
