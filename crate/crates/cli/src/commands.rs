use std::io::Write;

use serde::Serialize;
use tsl_core::cholesky::{
    cholesky_factor, inverse_pattern_report, monotonicity_report, write_factor_csv,
    write_inverse_factor_csv, Check, CholeskyFactor, InversePatternReport, MonotonicityReport,
};
use tsl_core::distance::{structured_distance, tie_analysis, TieCase, TieReport};
use tsl_core::oracle::{mismatch_experiment, write_experiment_csv, ExperimentResult};
use tsl_core::report::{index_table, short, write_index_table_csv, IndexRow};
use tsl_core::{NearestSingularReport, SttMatrix};

use crate::args::{ExperimentArgs, Format, MatrixArgs};
use crate::{expr, CliError, CliResult, Ctx};

pub fn matrix(a: &MatrixArgs) -> CliResult<SttMatrix> {
    let value = |plain: Option<f64>, text: &Option<String>, name: &str| -> CliResult<f64> {
        match (plain, text) {
            (Some(v), _) => Ok(v),
            (None, Some(src)) => {
                expr::eval(src).map_err(|e| CliError::Usage(format!("--{name}-expr: {e}")))
            }
            (None, None) => Err(CliError::Usage(format!("missing --{name}"))),
        }
    };
    let d = value(a.delta, &a.delta_expr, "delta")?;
    let s = value(a.sigma, &a.sigma_expr, "sigma")?;
    Ok(SttMatrix::new(a.n, d, s)?)
}

fn indices(v: &[usize]) -> String {
    v.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn header(out: &mut dyn Write, m: &SttMatrix) -> std::io::Result<()> {
    writeln!(
        out,
        "T = ({}; {}, {})",
        m.n(),
        short(m.delta()),
        short(m.sigma())
    )
}

fn table(out: &mut dyn Write, rows: &[IndexRow]) -> std::io::Result<()> {
    writeln!(
        out,
        "{:>6}  {:>12}  {:>12}  {:>14}",
        "h", "lambda_h", "kappa", "|lambda|/kappa"
    )?;
    for r in rows {
        writeln!(
            out,
            "{:>6}  {:>12}  {:>12}  {:>14}",
            r.h,
            short(r.lambda),
            short(r.kappa),
            short(r.ratio)
        )?;
    }
    Ok(())
}

pub fn describe_ties(t: &TieReport) -> String {
    match &t.case {
        TieCase::SingularCentral { index } => {
            format!("singular (delta = 0, n odd): lambda_{index} = 0, both distances vanish")
        }
        TieCase::ZeroDiagonalPair {
            indices: [a, b],
            opposite_signs,
        } => format!(
            "zero diagonal, n even: lambda_{a} and lambda_{b} tie in magnitude and ratio{}",
            if *opposite_signs {
                " (opposite signs)"
            } else {
                ""
            }
        ),
        TieCase::General {
            magnitude_minimizers,
            ratio_minimizers,
            coincide,
            ..
        } => {
            let kind = if *coincide {
                "coincide"
            } else if magnitude_minimizers.len() > 1 || ratio_minimizers.len() > 1 {
                "tie"
            } else {
                "differ"
            };
            format!(
                "magnitude minimizers [{}], ratio minimizers [{}]: {kind}",
                indices(magnitude_minimizers),
                indices(ratio_minimizers)
            )
        }
    }
}

#[derive(Serialize)]
struct AnalyzeJson<'a> {
    #[serde(flatten)]
    report: &'a NearestSingularReport,
    minimizer_indices: Vec<usize>,
    ties: &'a TieReport,
    table: Vec<IndexRow>,
}

pub fn analyze(ctx: &mut Ctx, a: &MatrixArgs) -> CliResult {
    let m = matrix(a)?;
    let tol = ctx.settings.tolerances;
    let report = structured_distance(&m, &tol)?;
    let ties = tie_analysis(&m, &tol)?;
    match ctx.format {
        Format::Csv => write_index_table_csv(&m, &mut ctx.out)?,
        Format::Json => {
            let body = AnalyzeJson {
                report: &report,
                minimizer_indices: report.minimizer_indices(),
                ties: &ties,
                table: index_table(&m),
            };
            ctx.emit_json(&body)?;
        }
        Format::Plain => {
            let out = &mut ctx.out;
            header(out, &m)?;
            table(out, &index_table(&m))?;
            writeln!(out)?;
            writeln!(
                out,
                "d_F = {}  (smallest |lambda_h|, h = {})",
                short(report.unstructured_distance),
                indices(&report.unstructured_minimizer_indices)
            )?;
            writeln!(
                out,
                "d_F^T = {}  (h = {}{})",
                short(report.structured_distance_f),
                indices(&report.minimizer_indices()),
                if report.unique { ", unique" } else { ", tied" }
            )?;
            for c in &report.minimizers {
                writeln!(
                    out,
                    "  nearest singular: h = {}, delta* = {}, sigma* = {}",
                    c.h,
                    short(c.delta_star),
                    short(c.sigma_star)
                )?;
            }
            writeln!(out, "d_2 >= {}", short(report.spectral_lower))?;
            writeln!(out, "d_2^T <= {}", short(report.spectral_upper))?;
            writeln!(
                out,
                "definite: {}",
                if report.definite { "yes" } else { "no" }
            )?;
            writeln!(out, "ties: {}", describe_ties(&ties))?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct SpectrumEntry {
    h: usize,
    lambda: f64,
    kappa: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    x: Option<Vec<f64>>,
}

#[derive(Serialize)]
struct SpectrumJson {
    n: usize,
    delta: f64,
    sigma: f64,
    pairs: Vec<SpectrumEntry>,
}

pub fn spectrum(ctx: &mut Ctx, a: &MatrixArgs, vectors: bool) -> CliResult {
    let m = matrix(a)?;
    let rows = index_table(&m);
    match ctx.format {
        Format::Csv if vectors => {
            let grid = m.spectrum();
            tsl_core::report::write_grid_csv(
                m.n(),
                m.n(),
                |h, k| Some(grid.pairs[h - 1].x[k - 1]),
                &mut ctx.out,
            )?;
        }
        Format::Csv => write_index_table_csv(&m, &mut ctx.out)?,
        Format::Json => {
            let pairs = rows
                .iter()
                .map(|r| {
                    let x = vectors.then(|| m.eigenvector(r.h)).transpose()?;
                    Ok(SpectrumEntry {
                        h: r.h,
                        lambda: r.lambda,
                        kappa: r.kappa,
                        x,
                    })
                })
                .collect::<CliResult<Vec<_>>>()?;
            ctx.emit_json(&SpectrumJson {
                n: m.n(),
                delta: m.delta(),
                sigma: m.sigma(),
                pairs,
            })?;
        }
        Format::Plain => {
            header(&mut ctx.out, &m)?;
            table(&mut ctx.out, &rows)?;
            if vectors {
                for r in &rows {
                    let x = m.eigenvector(r.h)?;
                    let xs: Vec<String> = x.iter().map(|&v| short(v)).collect();
                    writeln!(ctx.out, "x_{} = [{}]", r.h, xs.join(", "))?;
                }
            }
        }
    }
    Ok(())
}

fn check_line(c: &Check) -> String {
    match (c.holds, c.first_violation) {
        (true, _) => "holds".into(),
        (false, Some(i)) => format!("fails (first at row {i})"),
        (false, None) => "fails".into(),
    }
}

pub fn write_monotonicity(out: &mut dyn Write, r: &MonotonicityReport) -> std::io::Result<()> {
    writeln!(
        out,
        "diagonal of R non-increasing: {}",
        check_line(&r.diag_nonincreasing)
    )?;
    writeln!(
        out,
        "superdiagonal sign matches sigma: {}",
        check_line(&r.superdiag_sign)
    )?;
    writeln!(
        out,
        "superdiagonal non-decreasing (sign-adjusted): {}",
        check_line(&r.superdiag_nondecreasing)
    )?;
    match &r.dominance {
        Some(c) => writeln!(
            out,
            "r_ii >= |r_i,i+1| (|delta| >= 2|sigma|): {}",
            check_line(c)
        ),
        None => writeln!(
            out,
            "r_ii >= |r_i,i+1|: not applicable (|delta| < 2|sigma|)"
        ),
    }
}

pub fn write_inverse_pattern(out: &mut dyn Write, r: &InversePatternReport) -> std::io::Result<()> {
    writeln!(
        out,
        "R^-1 entries positive (sign-adjusted): {}",
        check_line(&r.positive)
    )?;
    writeln!(
        out,
        "R^-1 rows decreasing: {}",
        check_line(&r.rows_decreasing)
    )?;
    writeln!(
        out,
        "R^-1 diagonals increasing: {}",
        check_line(&r.diagonals_increasing)
    )
}

#[derive(Serialize)]
struct CholeskyJson<'a> {
    n: usize,
    delta: f64,
    sigma: f64,
    factor: &'a CholeskyFactor,
    monotonicity: MonotonicityReport,
    inverse_pattern: Option<InversePatternReport>,
}

pub fn cholesky(ctx: &mut Ctx, a: &MatrixArgs, inverse: bool) -> CliResult {
    let m = matrix(a)?;
    let f = cholesky_factor(&m)?;
    let mono = monotonicity_report(&f, &m);
    let cap = ctx.settings.tolerances.dense_cap;
    if inverse && m.n() > cap {
        return Err(CliError::Domain(format!(
            "R^-1 export needs n <= dense_cap = {cap}"
        )));
    }
    let pattern = (m.n() <= cap).then(|| inverse_pattern_report(&f));
    match ctx.format {
        Format::Csv if inverse => write_inverse_factor_csv(&f, &mut ctx.out)?,
        Format::Csv => write_factor_csv(&f, &mut ctx.out)?,
        Format::Json => {
            let body = CholeskyJson {
                n: m.n(),
                delta: m.delta(),
                sigma: m.sigma(),
                factor: &f,
                monotonicity: mono,
                inverse_pattern: pattern,
            };
            ctx.emit_json(&body)?;
        }
        Format::Plain => {
            let out = &mut ctx.out;
            header(out, &m)?;
            writeln!(out, "definiteness: {:?}", f.definiteness)?;
            writeln!(out, "{:>6}  {:>12}  {:>12}", "i", "r_ii", "r_i,i+1")?;
            for (i, d) in f.diag.iter().enumerate() {
                let s = f.superdiag.get(i).map(|&s| short(s)).unwrap_or_default();
                writeln!(out, "{:>6}  {:>12}  {:>12}", i + 1, short(*d), s)?;
            }
            writeln!(out)?;
            write_monotonicity(out, &mono)?;
            if let Some(p) = &pattern {
                write_inverse_pattern(out, p)?;
            }
            if inverse {
                writeln!(out)?;
                write_inverse_factor_csv(&f, &mut *out)?;
            }
        }
    }
    Ok(())
}

pub fn experiment(ctx: &mut Ctx, a: &ExperimentArgs) -> CliResult {
    let result = run_experiment(ctx, a)?;
    match ctx.format {
        Format::Csv => write_experiment_csv(&result, &mut ctx.out)?,
        Format::Json => ctx.emit_json(&result)?,
        Format::Plain => {
            let out = &mut ctx.out;
            let c = &result.config;
            let t = &result.totals;
            writeln!(
                out,
                "dimensions {}..={}, {} draws each, seed {}",
                c.n_min, c.n_max, c.samples_per_n, c.seed
            )?;
            writeln!(out, "rule: {}", result.discard_rules)?;
            writeln!(
                out,
                "{:>6}  {:>10}  {:>10}  {:>8}  {:>10}",
                "n", "tested", "discarded", "ties", "mismatches"
            )?;
            for (n, k) in &result.per_n {
                writeln!(
                    out,
                    "{n:>6}  {:>10}  {:>10}  {:>8}  {:>10}",
                    k.tested, k.discarded, k.ties_skipped, k.mismatches
                )?;
            }
            writeln!(
                out,
                "{:>6}  {:>10}  {:>10}  {:>8}  {:>10}",
                "total", t.tested, t.discarded, t.ties_skipped, t.mismatches
            )?;
            writeln!(
                out,
                "mismatch percentage: {:.4}% of tested",
                result.percentage
            )?;
        }
    }
    Ok(())
}

pub fn run_experiment(ctx: &mut Ctx, a: &ExperimentArgs) -> CliResult<ExperimentResult> {
    ctx.settings.apply_experiment_args(a)?;
    Ok(mismatch_experiment(
        &ctx.settings.experiment,
        &ctx.settings.tolerances,
    )?)
}
