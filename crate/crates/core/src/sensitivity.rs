//! Structured eigenvalue sensitivity.
//!
//! Every STT matrix of order `n` shares the eigenvectors `x_h`, so the
//! projection of `x_h x_hᵀ` onto the STT subspace, and with it the
//! structured condition number `κ(λ_h) = ‖(x_h x_hᵀ)|T‖_F`, depends on
//! `(n, h)` alone:
//!
//! ```text
//! (x_h x_hᵀ)|T = (n; 1/n, c/(n−1)),   c = cos(hπ/(n+1))
//! κ(λ_h)       = sqrt(1/n + 2c²/(n−1))
//! ```

use std::io::Write;

use serde::Serialize;

use crate::error::{SttError, SttResult};
use crate::stt::{index_cosine, SttMatrix};

/// An STT triple `(n; d, s)` together with its Frobenius norm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SttProjection {
    pub n: usize,
    pub d: f64,
    pub s: f64,
    pub fro_norm: f64,
}

impl SttProjection {
    pub fn new(n: usize, d: f64, s: f64) -> Self {
        let nf = n as f64;
        let fro_norm = (nf * d * d + 2.0 * (nf - 1.0) * s * s).sqrt();
        Self { n, d, s, fro_norm }
    }

    /// Squared Frobenius mass carried by the three central diagonals.
    pub fn band_weight(&self) -> f64 {
        self.fro_norm * self.fro_norm
    }

    pub fn as_matrix(&self) -> SttResult<SttMatrix> {
        SttMatrix::new(self.n, self.d, self.s)
    }

    pub fn scaled(&self, alpha: f64) -> Self {
        Self::new(self.n, alpha * self.d, alpha * self.s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConditionReport {
    pub h: usize,
    pub kappa_structured: f64,
    /// Always 1: for symmetric matrices the left and right unit eigenvectors coincide.
    pub kappa_unstructured: f64,
    /// `kappa_structured / kappa_unstructured`.
    pub ratio: f64,
}

fn check(n: usize, h: usize) -> SttResult<()> {
    if n < 2 {
        return Err(SttError::DimensionTooSmall { n });
    }
    if h == 0 || h > n {
        return Err(SttError::IndexOutOfRange { index: h, n });
    }
    Ok(())
}

pub(crate) fn kappa_unchecked(n: usize, h: usize) -> f64 {
    let c = index_cosine(n, h);
    let nf = n as f64;
    (1.0 / nf + 2.0 / (nf - 1.0) * c * c).sqrt()
}

/// `κ(λ_h) = sqrt(1/n + 2cos²(hπ/(n+1))/(n−1))`.
pub fn structured_condition_number(n: usize, h: usize) -> SttResult<f64> {
    check(n, h)?;
    Ok(kappa_unchecked(n, h))
}

/// All structured condition numbers for `h = 1..=n`.
pub fn condition_numbers(n: usize) -> SttResult<Vec<f64>> {
    if n < 2 {
        return Err(SttError::DimensionTooSmall { n });
    }
    Ok((1..=n).map(|h| kappa_unchecked(n, h)).collect())
}

pub fn condition_report(n: usize, h: usize) -> SttResult<ConditionReport> {
    let k = structured_condition_number(n, h)?;
    Ok(ConditionReport {
        h,
        kappa_structured: k,
        kappa_unstructured: 1.0,
        ratio: k,
    })
}

/// Projection of `x_h x_hᵀ` onto the STT subspace, in closed form.
pub fn project_rank_one(m: &SttMatrix, h: usize) -> SttResult<SttProjection> {
    let n = m.n();
    check(n, h)?;
    let c = index_cosine(n, h);
    let nf = n as f64;
    Ok(SttProjection::new(n, 1.0 / nf, c / (nf - 1.0)))
}

/// The unit-norm structured perturbation that moves `λ_h` the most to first order.
pub fn worst_case_perturbation(m: &SttMatrix, h: usize) -> SttResult<SttProjection> {
    let p = project_rank_one(m, h)?;
    Ok(p.scaled(1.0 / p.fro_norm))
}

/// A set of indices sharing an extreme condition number.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremeReport {
    pub indices: Vec<usize>,
    pub kappa: f64,
    /// Large-`n` estimate: `sqrt(1/n)` for the minimum, `sqrt(3/n)` for the maximum.
    pub estimate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionExtremes {
    pub n: usize,
    pub min: ExtremeReport,
    pub max: ExtremeReport,
    /// `max.kappa / min.kappa`.
    pub ratio: f64,
}

/// Smallest and largest structured condition numbers of order `n`.
///
/// The minimum sits at the central index (or the central pair when `n` is
/// even) and the maximum at the two extremal indices.
pub fn condition_extremes(n: usize) -> SttResult<ConditionExtremes> {
    if n < 2 {
        return Err(SttError::DimensionTooSmall { n });
    }
    let min_indices = if n % 2 == 1 {
        vec![n.div_ceil(2)]
    } else {
        vec![n / 2, n / 2 + 1]
    };
    let max_indices = vec![1, n];
    let nf = n as f64;
    let min = ExtremeReport {
        kappa: kappa_unchecked(n, min_indices[0]),
        indices: min_indices,
        estimate: (1.0 / nf).sqrt(),
    };
    let max = ExtremeReport {
        indices: max_indices,
        kappa: kappa_unchecked(n, 1),
        estimate: (3.0 / nf).sqrt(),
    };
    let ratio = max.kappa / min.kappa;
    Ok(ConditionExtremes { n, min, max, ratio })
}

/// CSV table `h,kappa` for one dimension.
pub fn write_kappa_csv<W: Write>(n: usize, out: W) -> SttResult<()> {
    let kappas = condition_numbers(n)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["h", "kappa"])?;
    for (i, k) in kappas.iter().enumerate() {
        w.write_record([(i + 1).to_string(), crate::report::full(*k)])?;
    }
    w.flush()?;
    Ok(())
}

/// CSV table `n,parity,kappa_max,kappa_min,ratio` over a range of dimensions.
pub fn write_extremes_csv<W: Write>(n_min: usize, n_max: usize, out: W) -> SttResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "parity", "kappa_max", "kappa_min", "ratio"])?;
    for n in n_min..=n_max {
        let e = condition_extremes(n)?;
        let parity = if n % 2 == 0 { "even" } else { "odd" };
        w.write_record([
            n.to_string(),
            parity.to_string(),
            crate::report::full(e.max.kappa),
            crate::report::full(e.min.kappa),
            crate::report::full(e.ratio),
        ])?;
    }
    w.flush()?;
    Ok(())
}
