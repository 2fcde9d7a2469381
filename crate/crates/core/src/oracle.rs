//! Brute-force machinery that checks the closed forms without using them.
//!
//! Nothing here evaluates `δ + 2σ cos(hπ/(n+1))` or the `(δ*, σ*)` formulas.
//! Eigenvalues come from Sturm-sequence bisection (after Householder
//! reduction for dense input), projections from explicit diagonal averaging,
//! and the nearest singular candidate from a 1-D minimization.
//!
//! The sampling experiment counts indefinite matrices whose smallest
//! eigenvalue in magnitude differs from the minimizer of `|λ_h|/κ(λ_h)`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::io::Write;

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Tolerances, DENSE_CAP};
use crate::error::{SttError, SttResult};
use crate::sensitivity::{kappa_unchecked, SttProjection};
use crate::stt::{index_cosine, SttMatrix};

/// Number of eigenvalues strictly below `x` of the symmetric tridiagonal
/// matrix with diagonal `diag` and off-diagonal `off`.
pub fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let n = diag.len();
    if n == 0 {
        return 0;
    }
    let off_max = off.iter().fold(1.0f64, |a, b| a.max(b * b));
    let pivmin = f64::MIN_POSITIVE * off_max;
    let mut count = 0;
    let mut q = diag[0] - x;
    for i in 0..n {
        if i > 0 {
            q = diag[i] - x - off[i - 1] * off[i - 1] / q;
        }
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// All eigenvalues in ascending order, by bisection on Sturm counts.
pub fn tridiagonal_eigenvalues(diag: &[f64], off: &[f64]) -> Vec<f64> {
    let n = diag.len();
    assert_eq!(
        off.len() + 1,
        n.max(1),
        "off-diagonal must have length n − 1"
    );
    if n == 0 {
        return Vec::new();
    }
    // Gershgorin enclosure
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r = if i > 0 { off[i - 1].abs() } else { 0.0 } + off.get(i).map_or(0.0, |b| b.abs());
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    let pad = f64::EPSILON * lo.abs().max(hi.abs()) * n as f64 + f64::MIN_POSITIVE;
    lo -= pad;
    hi += pad;

    (0..n)
        .map(|k| {
            let (mut a, mut b) = (lo, hi);
            for _ in 0..256 {
                let mid = 0.5 * (a + b);
                if mid <= a || mid >= b {
                    break;
                }
                if sturm_count(diag, off, mid) > k {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            0.5 * (a + b)
        })
        .collect()
}

/// Householder reduction of the symmetric part of `a` to tridiagonal form.
/// Returns `(diagonal, off-diagonal)`.
pub fn householder_tridiagonal(a: &DMatrix<f64>) -> SttResult<(Vec<f64>, Vec<f64>)> {
    let (rows, cols) = a.shape();
    if rows != cols {
        return Err(SttError::NotSquare { rows, cols });
    }
    let n = rows;
    let mut m = (a + a.transpose()) * 0.5;
    let mut v = vec![0.0; n];
    let mut p = vec![0.0; n];
    for k in 0..n.saturating_sub(2) {
        let norm = (k + 1..n)
            .map(|i| m[(i, k)] * m[(i, k)])
            .sum::<f64>()
            .sqrt();
        if norm == 0.0 {
            continue;
        }
        let alpha = if m[(k + 1, k)] > 0.0 { -norm } else { norm };
        for i in 0..n {
            v[i] = if i > k { m[(i, k)] } else { 0.0 };
        }
        v[k + 1] -= alpha;
        let vnorm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        v.iter_mut().for_each(|x| *x /= vnorm);
        // M ← H M H with H = I − 2vvᵀ, written as M − w vᵀ − v wᵀ.
        for i in 0..n {
            p[i] = (k + 1..n).map(|j| m[(i, j)] * v[j]).sum::<f64>();
        }
        let vp: f64 = (k + 1..n).map(|i| v[i] * p[i]).sum();
        let w: Vec<f64> = (0..n).map(|i| 2.0 * p[i] - 2.0 * vp * v[i]).collect();
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] -= w[i] * v[j] + v[i] * w[j];
            }
        }
    }
    let diag = (0..n).map(|i| m[(i, i)]).collect();
    let off = (0..n.saturating_sub(1)).map(|i| m[(i + 1, i)]).collect();
    Ok((diag, off))
}

/// Eigenvalues (ascending) of the symmetric part of a dense matrix.
pub fn symmetric_eigenvalues(a: &DMatrix<f64>) -> SttResult<Vec<f64>> {
    let (diag, off) = householder_tridiagonal(a)?;
    Ok(tridiagonal_eigenvalues(&diag, &off))
}

/// Eigenvalues (ascending) of the dense realization of `m`, by bisection.
pub fn dense_eigenvalues(m: &SttMatrix) -> SttResult<Vec<f64>> {
    dense_eigenvalues_with_cap(m, DENSE_CAP)
}

pub fn dense_eigenvalues_with_cap(m: &SttMatrix, cap: usize) -> SttResult<Vec<f64>> {
    let a = m.dense_with_cap(cap)?;
    let n = m.n();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
    let off: Vec<f64> = (0..n - 1).map(|i| a[(i + 1, i)]).collect();
    Ok(tridiagonal_eigenvalues(&diag, &off))
}

/// Nearest STT matrix to `a` in the Frobenius norm: the diagonal mean and the
/// mean of the first sub- and super-diagonal pooled together.
pub fn project_to_stt(a: &DMatrix<f64>) -> SttResult<SttProjection> {
    let (rows, cols) = a.shape();
    if rows != cols {
        return Err(SttError::NotSquare { rows, cols });
    }
    let n = rows;
    if n < 2 {
        return Err(SttError::DimensionTooSmall { n });
    }
    let d = (0..n).map(|i| a[(i, i)]).sum::<f64>() / n as f64;
    let s = (0..n - 1)
        .map(|i| a[(i, i + 1)] + a[(i + 1, i)])
        .sum::<f64>()
        / (2 * (n - 1)) as f64;
    Ok(SttProjection::new(n, d, s))
}

/// Projection of `x xᵀ` by direct summation over its three central
/// diagonals, without forming the outer product.
pub fn project_outer_product(x: &[f64]) -> SttResult<SttProjection> {
    let n = x.len();
    if n < 2 {
        return Err(SttError::DimensionTooSmall { n });
    }
    let d = x.iter().map(|v| v * v).sum::<f64>() / n as f64;
    let s = x.windows(2).map(|w| w[0] * w[1]).sum::<f64>() / (n - 1) as f64;
    Ok(SttProjection::new(n, d, s))
}

/// Thomas algorithm for a tridiagonal system. `sub` and `sup` have length
/// `n − 1`. No pivoting; intended for diagonally dominant or definite input.
pub fn solve_tridiagonal(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    assert!(sub.len() + 1 == n && sup.len() + 1 == n && rhs.len() == n);
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    c[0] = if n > 1 { sup[0] / diag[0] } else { 0.0 };
    d[0] = rhs[0] / diag[0];
    for i in 1..n {
        let denom = diag[i] - sub[i - 1] * c[i - 1];
        if i + 1 < n {
            c[i] = sup[i] / denom;
        }
        d[i] = (rhs[i] - sub[i - 1] * d[i - 1]) / denom;
    }
    let mut x = d;
    for i in (0..n - 1).rev() {
        x[i] -= c[i] * x[i + 1];
    }
    x
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridOptimum {
    pub s_opt: f64,
    pub dist: f64,
}

/// Minimize `‖T − (n; −2cs, s)‖_F` over `s`, with `c = cos(hπ/(n+1))`, by a
/// coarse grid followed by golden-section refinement.
pub fn grid_optimal_singular(m: &SttMatrix, h: usize) -> SttResult<GridOptimum> {
    let n = m.n();
    if h == 0 || h > n {
        return Err(SttError::IndexOutOfRange { index: h, n });
    }
    let (delta, sigma) = (m.delta(), m.sigma());
    let nf = n as f64;
    let c = (h as f64 * PI / (nf + 1.0)).cos();
    let objective = |s: f64| {
        let dd = delta + 2.0 * c * s;
        let ds = sigma - s;
        nf * dd * dd + 2.0 * (nf - 1.0) * ds * ds
    };

    let bound = 2.0 * (sigma.abs() + delta.abs()) + 1.0;
    const GRID: usize = 64;
    let step = 2.0 * bound / GRID as f64;
    let best = (0..=GRID)
        .map(|i| -bound + i as f64 * step)
        .min_by(|a, b| objective(*a).total_cmp(&objective(*b)))
        .expect("grid is non-empty");
    let (mut a, mut b) = (best - step, best + step);

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let (mut f1, mut f2) = (objective(x1), objective(x2));
    for _ in 0..200 {
        if b - a <= 1e-14 * bound {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = objective(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = objective(x2);
        }
    }
    let s_opt = 0.5 * (a + b);
    Ok(GridOptimum {
        s_opt,
        dist: objective(s_opt).sqrt(),
    })
}

/// Description of the discard predicate applied to every draw.
pub const DISCARD_RULES: &str = "discard if delta*sigma == 0 or |delta| >= 2|sigma|cos(pi/(n+1))";

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub samples_per_n: u64,
    pub seed: u64,
    /// Draws per work unit; each unit owns one RNG stream.
    pub block_size: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            n_min: 2,
            n_max: 50,
            samples_per_n: 10_000,
            seed: 42,
            block_size: 4096,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> SttResult<()> {
        if self.n_min < 2 {
            return Err(SttError::InvalidConfig(format!(
                "n_min must be >= 2, got {}",
                self.n_min
            )));
        }
        if self.n_max < self.n_min {
            return Err(SttError::InvalidConfig(format!(
                "empty range {}..={}",
                self.n_min, self.n_max
            )));
        }
        if self.samples_per_n == 0 {
            return Err(SttError::InvalidConfig("samples_per_n must be >= 1".into()));
        }
        if self.block_size == 0 {
            return Err(SttError::InvalidConfig("block_size must be >= 1".into()));
        }
        if self.n_max >= 1 << 31 {
            return Err(SttError::InvalidConfig("n_max too large".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub draws: u64,
    pub tested: u64,
    pub discarded: u64,
    pub ties_skipped: u64,
    pub mismatches: u64,
}

impl Counts {
    fn add(&mut self, o: &Counts) {
        self.draws += o.draws;
        self.tested += o.tested;
        self.discarded += o.discarded;
        self.ties_skipped += o.ties_skipped;
        self.mismatches += o.mismatches;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RngInfo {
    pub generator: &'static str,
    pub normal_transform: &'static str,
    pub stream_layout: &'static str,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub discard_rules: &'static str,
    pub tie_rtol: f64,
    pub rng: RngInfo,
    pub per_n: BTreeMap<usize, Counts>,
    pub totals: Counts,
    /// `100 · mismatches / tested`.
    pub percentage: f64,
}

struct DimensionTables {
    cosines: Vec<f64>,
    kappas: Vec<f64>,
    threshold: f64,
}

impl DimensionTables {
    fn new(n: usize) -> Self {
        Self {
            cosines: (1..=n).map(|h| index_cosine(n, h)).collect(),
            kappas: (1..=n).map(|h| kappa_unchecked(n, h)).collect(),
            threshold: 2.0 * index_cosine(n, 1),
        }
    }
}

/// Smallest value, its index, and the runner-up value.
fn min_two(values: impl Iterator<Item = f64>) -> (f64, usize, f64) {
    let (mut m1, mut i1, mut m2) = (f64::INFINITY, 0, f64::INFINITY);
    for (i, v) in values.enumerate() {
        if v < m1 {
            m2 = m1;
            m1 = v;
            i1 = i;
        } else if v < m2 {
            m2 = v;
        }
    }
    (m1, i1, m2)
}

fn run_block(
    n: usize,
    block: u64,
    draws: u64,
    seed: u64,
    tables: &DimensionTables,
    tol: &Tolerances,
) -> Counts {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((n as u64) << 32) | block);
    let mut counts = Counts {
        draws,
        ..Default::default()
    };
    for _ in 0..draws {
        let delta: f64 = StandardNormal.sample(&mut rng);
        let sigma: f64 = StandardNormal.sample(&mut rng);
        if delta * sigma == 0.0 || delta.abs() >= tables.threshold * sigma.abs() {
            counts.discarded += 1;
            continue;
        }
        let mags = tables
            .cosines
            .iter()
            .map(|c| (delta + 2.0 * sigma * c).abs());
        let (m1, i1, m2) = min_two(mags.clone());
        let (r1, j1, r2) = min_two(mags.zip(&tables.kappas).map(|(l, k)| l / k));
        if tol.ties(m1, m2) || tol.ties(r1, r2) {
            counts.ties_skipped += 1;
            continue;
        }
        counts.tested += 1;
        if i1 != j1 {
            counts.mismatches += 1;
        }
    }
    counts
}

/// Seeded sampling experiment over indefinite `(n; δ, σ)` with standard normal
/// `δ, σ`. Results do not depend on the number of worker threads.
pub fn mismatch_experiment(
    cfg: &ExperimentConfig,
    tol: &Tolerances,
) -> SttResult<ExperimentResult> {
    cfg.validate()?;
    tol.validate()?;
    let blocks_per_n = cfg.samples_per_n.div_ceil(cfg.block_size);
    let tables: BTreeMap<usize, DimensionTables> = (cfg.n_min..=cfg.n_max)
        .map(|n| (n, DimensionTables::new(n)))
        .collect();
    let units: Vec<(usize, u64)> = (cfg.n_min..=cfg.n_max)
        .flat_map(|n| (0..blocks_per_n).map(move |b| (n, b)))
        .collect();

    let partial: Vec<(usize, Counts)> = units
        .par_iter()
        .map(|&(n, b)| {
            let draws = cfg.block_size.min(cfg.samples_per_n - b * cfg.block_size);
            (n, run_block(n, b, draws, cfg.seed, &tables[&n], tol))
        })
        .collect();

    let mut per_n: BTreeMap<usize, Counts> = BTreeMap::new();
    let mut totals = Counts::default();
    for (n, c) in &partial {
        per_n.entry(*n).or_default().add(c);
        totals.add(c);
    }
    let percentage = if totals.tested == 0 {
        0.0
    } else {
        100.0 * totals.mismatches as f64 / totals.tested as f64
    };
    Ok(ExperimentResult {
        config: *cfg,
        discard_rules: DISCARD_RULES,
        tie_rtol: tol.tie_rtol,
        rng: RngInfo {
            generator: "ChaCha8Rng (rand_chacha 0.9), seed_from_u64(seed)",
            normal_transform: "ziggurat (rand_distr::StandardNormal)",
            stream_layout: "stream = (n << 32) | block_index; delta then sigma per draw",
            seed: cfg.seed,
        },
        per_n,
        totals,
        percentage,
    })
}

/// CSV `n,tested,discarded,ties_skipped,mismatches`.
pub fn write_experiment_csv<W: Write>(result: &ExperimentResult, out: W) -> SttResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "tested", "discarded", "ties_skipped", "mismatches"])?;
    for (n, c) in &result.per_n {
        w.write_record([
            n.to_string(),
            c.tested.to_string(),
            c.discarded.to_string(),
            c.ties_skipped.to_string(),
            c.mismatches.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
