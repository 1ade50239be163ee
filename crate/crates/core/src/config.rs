//! Bounded-search parameters shared by the intersection machinery.
//!
//! A config can be read from a `key=value` file (one pair per line, `#`
//! starts a comment); unknown keys are rejected.

use std::path::Path;

use crate::error::{GeomError, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    /// Lower bound of the leaf-parameter grid (both `k` and `l`).
    pub k_min: f64,
    pub k_max: f64,
    pub k_step: f64,
    /// Upper end of the scan for the first feasible curve parameter.
    pub t_scan: f64,
    /// Maximum accepted implicit-equation residual for a witness.
    pub residual_tol: f64,
    pub max_bisect: usize,
    /// Samples per curve branch when scanning for crossings.
    pub curve_samples: usize,
    /// Relative normalized height at which curve scans stop.
    pub y_floor: f64,
    /// Skip `(k, l)` cells excluded by the same-sign lemma when the two
    /// hypersurfaces are in betweenness position.
    pub prune_samesign: bool,
    pub max_witnesses_per_cell: usize,
    /// Evaluate grid cells on the rayon pool (needs the `parallel` feature).
    pub parallel: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            k_min: -50.0,
            k_max: 50.0,
            k_step: 0.5,
            t_scan: 20.0,
            residual_tol: 1e-8,
            max_bisect: 80,
            curve_samples: 400,
            y_floor: 1e-7,
            prune_samesign: true,
            max_witnesses_per_cell: 4,
            parallel: true,
        }
    }
}

impl SearchConfig {
    /// Grid `k_min, k_min + k_step, ..., k_max`, with values within rounding
    /// of zero snapped to `0`.
    pub fn k_grid(&self) -> Vec<f64> {
        let n = ((self.k_max - self.k_min) / self.k_step + 1e-9).floor() as usize;
        (0..=n)
            .map(|i| {
                let k = self.k_min + i as f64 * self.k_step;
                if k.abs() < 1e-9 * self.k_step {
                    0.0
                } else {
                    k
                }
            })
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(GeomError::Config(msg.to_string()));
        if !(self.k_step > 0.0) {
            return bad("k_step must be positive");
        }
        if !(self.k_max >= self.k_min) {
            return bad("k_max must be at least k_min");
        }
        if !(self.t_scan > 0.0) {
            return bad("t_scan must be positive");
        }
        if !(self.residual_tol > 0.0) {
            return bad("residual_tol must be positive");
        }
        if self.curve_samples < 2 {
            return bad("curve_samples must be at least 2");
        }
        if !(self.y_floor > 0.0 && self.y_floor < 1.0) {
            return bad("y_floor must lie in (0, 1)");
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
            v.parse()
                .map_err(|_| GeomError::Config(format!("bad value {v:?} for {key}")))
        }
        match key {
            "k_min" => self.k_min = num(key, value)?,
            "k_max" => self.k_max = num(key, value)?,
            "k_step" => self.k_step = num(key, value)?,
            "t_scan" => self.t_scan = num(key, value)?,
            "residual_tol" => self.residual_tol = num(key, value)?,
            "max_bisect" => self.max_bisect = num(key, value)?,
            "curve_samples" => self.curve_samples = num(key, value)?,
            "y_floor" => self.y_floor = num(key, value)?,
            "prune_samesign" => self.prune_samesign = num(key, value)?,
            "max_witnesses_per_cell" => self.max_witnesses_per_cell = num(key, value)?,
            "parallel" => self.parallel = num(key, value)?,
            _ => return Err(GeomError::Config(format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    /// Applies `key=value` lines on top of `self`.
    pub fn merge_str(mut self, text: &str) -> Result<Self> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                GeomError::Config(format!("line {}: expected key=value", lineno + 1))
            })?;
            self.set(k.trim(), v.trim())?;
        }
        self.validate()?;
        Ok(self)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| GeomError::Config(format!("{}: {e}", path.display())))?;
        Self::default().merge_str(&text)
    }
}
