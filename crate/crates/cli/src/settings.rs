//! Effective settings: defaults, then the optional `key=value` config file,
//! then flags / `TSL_*` environment variables.

use std::path::Path;

use serde::Serialize;
use tsl_core::oracle::ExperimentConfig;
use tsl_core::Tolerances;

use crate::args::{ExperimentArgs, Global};
use crate::CliError;

#[derive(Debug, Clone, Serialize)]
pub struct Settings {
    pub tolerances: Tolerances,
    pub experiment: ExperimentConfig,
    pub config_file: Option<String>,
}

impl Settings {
    pub fn resolve(g: &Global) -> Result<Self, CliError> {
        let mut s = Settings {
            tolerances: Tolerances::default(),
            experiment: ExperimentConfig::default(),
            config_file: None,
        };
        if let Some(path) = &g.config {
            s.apply_file(path)?;
            s.config_file = Some(path.display().to_string());
        }
        if let Some(t) = g.tie_rtol {
            s.tolerances.tie_rtol = t;
        }
        if let Some(seed) = g.seed {
            s.experiment.seed = seed;
        }
        s.tolerances
            .validate()
            .map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(s)
    }

    pub fn apply_experiment_args(&mut self, a: &ExperimentArgs) -> Result<(), CliError> {
        let e = &mut self.experiment;
        if let Some(v) = a.n_min {
            e.n_min = v;
        }
        if let Some(v) = a.n_max {
            e.n_max = v;
        }
        if let Some(v) = a.samples {
            e.samples_per_n = v;
        }
        if let Some(v) = a.block_size {
            e.block_size = v;
        }
        e.validate().map_err(|e| CliError::Usage(e.to_string()))
    }

    fn apply_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        self.apply_text(&text)
            .map_err(|msg| CliError::Usage(format!("{}: {msg}", path.display())))
    }

    fn apply_text(&mut self, text: &str) -> Result<(), String> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key=value", lineno + 1))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |e: &dyn std::fmt::Display| format!("line {}: {key}: {e}", lineno + 1);
            let float = || value.parse::<f64>().map_err(|e| bad(&e));
            let int = || value.parse::<u64>().map_err(|e| bad(&e));
            let t = &mut self.tolerances;
            let x = &mut self.experiment;
            match key {
                "tie_rtol" => t.tie_rtol = float()?,
                "residual_rtol" => t.residual_rtol = float()?,
                "orthonormality_tol" => t.orthonormality_tol = float()?,
                "dense_cap" => t.dense_cap = int()? as usize,
                "seed" => x.seed = int()?,
                "n_min" => x.n_min = int()? as usize,
                "n_max" => x.n_max = int()? as usize,
                "samples_per_n" | "samples" => x.samples_per_n = int()?,
                "block_size" => x.block_size = int()?,
                _ => return Err(format!("line {}: unknown key '{key}'", lineno + 1)),
            }
        }
        Ok(())
    }
}
