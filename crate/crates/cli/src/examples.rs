//! The four worked examples with computed-vs-expected checks. Numeric checks
//! compare at 5 significant digits.

use std::f64::consts::PI;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;
use tsl_core::cholesky::{
    cholesky_factor, inverse_pattern_report, monotonicity_report, write_inverse_factor_csv,
    InversePatternReport, MonotonicityReport,
};
use tsl_core::distance::{
    eckart_young_singular, nearest_singular_fixed_index, structured_distance,
};
use tsl_core::oracle::symmetric_eigenvalues;
use tsl_core::report::{full, short};
use tsl_core::sensitivity::structured_condition_number;
use tsl_core::SttMatrix;

use crate::args::Format;
use crate::commands::{write_inverse_pattern, write_monotonicity};
use crate::{CliError, CliResult, Ctx};

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
enum Value {
    Num(f64),
    Text(String),
}

impl Value {
    fn render(&self, precise: bool) -> String {
        match self {
            Value::Num(x) if precise => full(*x),
            Value::Num(x) => short(*x),
            Value::Text(s) => s.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
struct CheckItem {
    name: String,
    computed: Value,
    expected: Value,
    pass: bool,
}

#[derive(Default, Serialize)]
struct Outcome {
    example: u8,
    matrix: String,
    checks: Vec<CheckItem>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    table_columns: Vec<&'static str>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    table: Vec<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    monotonicity: Option<MonotonicityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    inverse_pattern: Option<InversePatternReport>,
}

impl Outcome {
    fn new(example: u8, m: &SttMatrix) -> Self {
        let matrix = format!("({}; {}, {})", m.n(), short(m.delta()), short(m.sigma()));
        Outcome {
            example,
            matrix,
            ..Default::default()
        }
    }

    fn sig5(&mut self, name: impl Into<String>, computed: f64, expected: f64) {
        self.checks.push(CheckItem {
            name: name.into(),
            pass: short(computed) == short(expected),
            computed: Value::Num(computed),
            expected: Value::Num(expected),
        });
    }

    fn zero(&mut self, name: impl Into<String>, computed: f64, atol: f64) {
        self.checks.push(CheckItem {
            name: name.into(),
            pass: computed.abs() <= atol,
            computed: Value::Num(computed),
            expected: Value::Text(format!("|x| <= {atol:e}")),
        });
    }

    fn indices(&mut self, name: impl Into<String>, computed: &[usize], expected: &[usize]) {
        let fmt = |v: &[usize]| format!("{v:?}");
        self.checks.push(CheckItem {
            name: name.into(),
            pass: computed == expected,
            computed: Value::Text(fmt(computed)),
            expected: Value::Text(fmt(expected)),
        });
    }

    fn flag(&mut self, name: impl Into<String>, holds: bool) {
        self.checks.push(CheckItem {
            name: name.into(),
            pass: holds,
            computed: Value::Text(holds.to_string()),
            expected: Value::Text("true".into()),
        });
    }

    fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.pass).count()
    }
}

pub fn run(ctx: &mut Ctx, id: u8, grid_out: Option<&Path>) -> CliResult {
    if grid_out.is_some() && id != 1 {
        return Err(CliError::Usage("--grid-out applies to example 1".into()));
    }
    let tol = ctx.settings.tolerances;
    let outcome = match id {
        1 => example1(&tol, grid_out)?,
        2 => example2(&tol)?,
        3 => example3(&tol)?,
        4 => example4(&tol)?,
        other => {
            return Err(CliError::Usage(format!(
                "unknown example {other}; expected 1-4"
            )))
        }
    };
    render(ctx, &outcome)
}

fn example1(tol: &tsl_core::Tolerances, grid_out: Option<&Path>) -> CliResult<Outcome> {
    let m = SttMatrix::laplacian(1000)?;
    let mut o = Outcome::new(1, &m);
    let r = structured_distance(&m, tol)?;
    let lambda1 = m.eigenvalue(1)?;
    let kappa1 = structured_condition_number(1000, 1)?;
    o.sig5("lambda_1", lambda1, 9.8499e-6);
    o.sig5("d_F", r.unstructured_distance, 9.8499e-6);
    o.sig5("kappa(lambda_1)", kappa1, 5.4790e-2);
    o.sig5("sqrt(3/n)", (3.0f64 / 1000.0).sqrt(), 5.4772e-2);
    o.sig5("d_F^T", r.structured_distance_f, 1.7977e-4);
    o.sig5("d_2", r.spectral_lower, 9.8499e-6);
    o.sig5("d_2^T upper bound", r.spectral_upper, 9.8499e-6);
    o.indices("structured minimizer", &r.minimizer_indices(), &[1]);
    o.flag("positive definite", r.definite);

    let f = cholesky_factor(&m)?;
    let mono = monotonicity_report(&f, &m);
    let pattern = inverse_pattern_report(&f);
    o.flag("R diagonal non-increasing", mono.diag_nonincreasing.holds);
    o.flag(
        "R superdiagonal negative and non-decreasing",
        mono.superdiag_sign.holds && mono.superdiag_nondecreasing.holds,
    );
    o.flag(
        "R diagonal dominates superdiagonal",
        mono.dominance.is_some_and(|d| d.holds),
    );
    o.flag("R^-1 entries positive", pattern.positive.holds);
    o.flag("R^-1 rows decreasing", pattern.rows_decreasing.holds);
    o.flag(
        "R^-1 diagonals increasing",
        pattern.diagonals_increasing.holds,
    );
    o.monotonicity = Some(mono);
    o.inverse_pattern = Some(pattern);

    if let Some(path) = grid_out {
        let file =
            File::create(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        write_inverse_factor_csv(&f, BufWriter::new(file))?;
    }
    Ok(o)
}

fn example2(tol: &tsl_core::Tolerances) -> CliResult<Outcome> {
    let m = SttMatrix::new(1000, 0.0, 1.0)?;
    let mut o = Outcome::new(2, &m);
    let r = structured_distance(&m, tol)?;
    o.sig5("d_F", r.unstructured_distance, 3.1385e-3);
    o.indices(
        "smallest |lambda_h|",
        &r.unstructured_minimizer_indices,
        &[500, 501],
    );
    o.sig5(
        "kappa(lambda_500)",
        structured_condition_number(1000, 500)?,
        3.1623e-2,
    );
    o.sig5(
        "kappa(lambda_501)",
        structured_condition_number(1000, 501)?,
        3.1623e-2,
    );
    o.sig5("d_F^T", r.structured_distance_f, 9.9246e-2);
    o.indices("structured minimizers", &r.minimizer_indices(), &[500, 501]);
    if let [a, b] = r.minimizers[..] {
        o.flag(
            "delta* values opposite",
            a.delta_star == -b.delta_star && a.delta_star != 0.0,
        );
        o.flag("sigma* values equal", a.sigma_star == b.sigma_star);
        for c in [a, b] {
            o.table
                .push(vec![c.h as f64, c.delta_star, c.sigma_star, c.distance_f]);
        }
        o.table_columns = vec!["h", "delta_star", "sigma_star", "distance"];
    }
    Ok(o)
}

fn example3(tol: &tsl_core::Tolerances) -> CliResult<Outcome> {
    let m = SttMatrix::new(9, (PI / 20.0).cos(), -(2f64.sqrt()) / 2.0)?;
    let mut o = Outcome::new(3, &m);
    let expected: [(f64, f64, f64); 9] = [
        (-3.5731e-1, 5.8072e-1, -1.8452e-1),
        (-1.5643e-1, 5.2415e-1, 0.0),
        (1.5643e-1, 4.4439e-1, 2.8739e-1),
        (5.5067e-1, 3.6740e-1, 6.4953e-1),
        (9.8769e-1, 3.3333e-1, 1.0510e0),
        (1.4247e0, 3.6740e-1, 1.4524e0),
        (1.8189e0, 4.4439e-1, 1.8145e0),
        (2.1318e0, 5.2415e-1, 2.1019e0),
        (2.3327e0, 5.8072e-1, 2.2864e0),
    ];
    let r = structured_distance(&m, tol)?;
    o.indices(
        "smallest |lambda_h|",
        &r.unstructured_minimizer_indices,
        &[2, 3],
    );
    o.indices("structured minimizer", &r.minimizer_indices(), &[2]);
    let star = nearest_singular_fixed_index(&m, 2)?.matrix(9)?;
    let ey = symmetric_eigenvalues(&eckart_young_singular(&m, 2, 64)?)?;
    let zero_tol = 1e-10 * m.scale();
    for (h, (lambda, kappa, lambda_star)) in (1..=9).zip(expected) {
        let (l, k, ls, le) = (
            m.eigenvalue(h)?,
            structured_condition_number(9, h)?,
            star.eigenvalue(h)?,
            ey[h - 1],
        );
        o.sig5(format!("lambda_{h}"), l, lambda);
        o.sig5(format!("kappa(lambda_{h})"), k, kappa);
        if h == 2 {
            o.zero(format!("lambda_{h}(S*^T)"), ls, zero_tol);
            o.zero(format!("lambda_{h}(S*)"), le, zero_tol);
        } else {
            o.sig5(format!("lambda_{h}(S*^T)"), ls, lambda_star);
            o.sig5(format!("lambda_{h}(S*)"), le, lambda);
        }
        o.table.push(vec![h as f64, l, k, ls, le]);
    }
    o.table_columns = vec!["h", "lambda", "kappa", "lambda(S*^T)", "lambda(S*)"];
    Ok(o)
}

fn example4(tol: &tsl_core::Tolerances) -> CliResult<Outcome> {
    let m = SttMatrix::new(10, 1.8, -1.0)?;
    let mut o = Outcome::new(4, &m);
    let expected: [(f64, f64); 10] = [
        (-1.1899e-1, 2.1560e-1),
        (1.1749e-1, 2.3164e-1),
        (4.9028e-1, 1.1094e0),
        (9.6917e-1, 2.6056e0),
        (1.5154e0, 4.6877e0),
        (2.0846e0, 6.4487e0),
        (2.6308e0, 7.0730e0),
        (3.1097e0, 7.0368e0),
        (3.4825e0, 6.8659e0),
        (3.7190e0, 6.7386e0),
    ];
    for (h, (lambda, ratio)) in (1..=10).zip(expected) {
        let l = m.eigenvalue(h)?;
        let q = l.abs() / structured_condition_number(10, h)?;
        o.sig5(format!("lambda_{h}"), l, lambda);
        o.sig5(format!("|lambda_{h}|/kappa"), q, ratio);
        o.table.push(vec![h as f64, l, q]);
    }
    o.table_columns = vec!["h", "lambda", "ratio"];
    let r = structured_distance(&m, tol)?;
    o.indices(
        "smallest |lambda_h|",
        &r.unstructured_minimizer_indices,
        &[2],
    );
    o.indices("structured minimizer", &r.minimizer_indices(), &[1]);
    o.sig5("d_F", r.unstructured_distance, 1.1749e-1);
    o.sig5("d_F^T", r.structured_distance_f, 2.1560e-1);
    Ok(o)
}

fn render(ctx: &mut Ctx, o: &Outcome) -> CliResult {
    match ctx.format {
        Format::Json => ctx.emit_json(o)?,
        Format::Csv => {
            let out = &mut ctx.out;
            writeln!(out, "name,computed,expected,pass")?;
            for c in &o.checks {
                writeln!(
                    out,
                    "{},{},{},{}",
                    csv_field(&c.name),
                    csv_field(&c.computed.render(true)),
                    csv_field(&c.expected.render(true)),
                    c.pass
                )?;
            }
        }
        Format::Plain => {
            let out = &mut ctx.out;
            writeln!(out, "Example {}: T = {}", o.example, o.matrix)?;
            if !o.table.is_empty() {
                for col in &o.table_columns {
                    write!(out, "{col:>14}")?;
                }
                writeln!(out)?;
                for row in &o.table {
                    write!(out, "{:>14}", row[0] as usize)?;
                    for v in &row[1..] {
                        write!(out, "{:>14}", short(*v))?;
                    }
                    writeln!(out)?;
                }
                writeln!(out)?;
            }
            for c in &o.checks {
                writeln!(
                    out,
                    "[{}] {}: computed {}, expected {}",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.name,
                    c.computed.render(false),
                    c.expected.render(false)
                )?;
            }
            if let Some(mono) = &o.monotonicity {
                writeln!(out, "\nCholesky factor R:")?;
                write_monotonicity(out, mono)?;
            }
            if let Some(p) = &o.inverse_pattern {
                write_inverse_pattern(out, p)?;
                writeln!(out, "\nR^-1 diagnostics (csv):")?;
                writeln!(out, "check,holds,first_violation")?;
                for (name, c) in [
                    ("positive", p.positive),
                    ("rows_decreasing", p.rows_decreasing),
                    ("diagonals_increasing", p.diagonals_increasing),
                ] {
                    let first = c.first_violation.map(|i| i.to_string()).unwrap_or_default();
                    writeln!(out, "{name},{},{first}", c.holds)?;
                }
            }
            writeln!(out, "\n{}/{} checks passed", o.passed(), o.checks.len())?;
        }
    }
    Ok(())
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
