use tsl_core::cholesky::{cholesky_factor, write_inverse_factor_csv};
use tsl_core::oracle::write_experiment_csv;
use tsl_core::report::write_grid_csv;
use tsl_core::sensitivity::{write_extremes_csv, write_kappa_csv};
use tsl_core::SttMatrix;

use crate::args::{Fig4Matrix, FigureArgs};
use crate::commands::run_experiment;
use crate::{CliError, CliResult, Ctx};

/// Figure data is always CSV, whatever `--format` says.
pub fn run(ctx: &mut Ctx, f: &FigureArgs) -> CliResult {
    let needs_grid = matches!(f.which, 2 | 4);
    if needs_grid && !f.grid {
        return Err(CliError::Usage(format!(
            "figure {} is a dense-grid export; pass --grid",
            f.which
        )));
    }
    if !needs_grid && f.grid {
        return Err(CliError::Usage("--grid applies to figures 2 and 4".into()));
    }
    match f.which {
        1 => write_kappa_csv(f.n.unwrap_or(100), &mut ctx.out)?,
        2 => {
            let n = f.n.unwrap_or(100);
            check_cap(ctx, n)?;
            let x = SttMatrix::new(n, 0.0, 1.0)?.eigenvector(f.h)?;
            write_grid_csv(n, n, |i, j| Some(x[i - 1] * x[j - 1]), &mut ctx.out)?;
        }
        3 => write_extremes_csv(2, f.up_to, &mut ctx.out)?,
        4 => {
            let n = f.n.unwrap_or(1000);
            check_cap(ctx, n)?;
            let factor = cholesky_factor(&SttMatrix::laplacian(n)?)?;
            match f.matrix {
                Fig4Matrix::RInv => write_inverse_factor_csv(&factor, &mut ctx.out)?,
                Fig4Matrix::TInv => {
                    let r_inv = factor.inverse();
                    let t_inv = &r_inv * r_inv.transpose();
                    write_grid_csv(n, n, |i, j| Some(t_inv[(i - 1, j - 1)]), &mut ctx.out)?;
                }
            }
        }
        5 => {
            let result = run_experiment(ctx, &f.experiment)?;
            write_experiment_csv(&result, &mut ctx.out)?;
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown figure {other}; expected 1-5"
            )))
        }
    }
    Ok(())
}

fn check_cap(ctx: &Ctx, n: usize) -> CliResult {
    let cap = ctx.settings.tolerances.dense_cap;
    if n > cap {
        return Err(CliError::Domain(format!(
            "dense export needs n <= dense_cap = {cap}, got {n}"
        )));
    }
    Ok(())
}
