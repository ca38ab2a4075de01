//! Exact Gauss-Chebyshev quadrature, the orthogonality Gram computation, and
//! the consolidated identity suite.
//!
//! The suite is a registry of named checks behind the [`Check`] trait; each
//! check belongs to a family selectable at runtime through
//! [`SuiteConfig::families`]. Checks run in parallel and reports are merged
//! deterministically by (id, params).

mod checks;
mod config;
mod quadrature;

pub use config::SuiteConfig;
pub use quadrature::{gauss_chebyshev2, orthogonality_matrix, QuadratureRule};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Outcome of one named check at one parameter combination.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckReport {
    /// Check identifier, `family.name`.
    pub id: String,
    /// Parameter tuple the residual was taken over.
    pub params: String,
    /// Nonnegative residual; scale-normalized where matrices grow with the grid.
    pub residual: f64,
    /// Tolerance the residual is compared against (from the config).
    pub tolerance: f64,
    /// residual <= tolerance
    pub pass: bool,
    /// Wall-clock run time of the parameter combination batch.
    pub runtime_ms: f64,
}

impl CheckReport {
    fn new(id: &str, params: String, residual: f64, tolerance: f64) -> Self {
        CheckReport {
            id: id.to_string(),
            params,
            residual,
            tolerance,
            pass: residual <= tolerance,
            runtime_ms: 0.0,
        }
    }
}

/// One strategy in the verification registry: a named identity check that
/// sweeps the configured parameter grid and reports residuals.
pub trait Check: Sync + Send {
    /// Unique identifier, `family.name`.
    fn id(&self) -> &'static str;
    /// Family used for selection and for the acceptance criteria grouping.
    fn family(&self) -> &'static str;
    /// Runs the check over the configured grid. Configuration errors are
    /// returned as `Err`; computational failures become failed reports.
    fn run(&self, cfg: &SuiteConfig) -> Result<Vec<CheckReport>>;
}

/// The full registry of checks, in deterministic order.
pub fn registry() -> Vec<Box<dyn Check>> {
    checks::all()
}

/// Families present in the registry, deduplicated, in registry order.
pub fn families() -> Vec<&'static str> {
    let mut out: Vec<&'static str> = Vec::new();
    for c in registry() {
        if !out.contains(&c.family()) {
            out.push(c.family());
        }
    }
    out
}

/// Runs the (family-filtered) registry in parallel and merges the reports,
/// sorted by (id, params).
pub fn run_suite(cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    cfg.validate()?;
    let regs = registry();
    let selected: Vec<&Box<dyn Check>> = regs
        .iter()
        .filter(|c| match &cfg.families {
            Some(fs) => fs.iter().any(|f| f == c.family()),
            None => true,
        })
        .collect();
    if selected.is_empty() {
        return Err(Error::InvalidArgument(
            "family filter selected no checks; known families: ".to_string() + &families().join(", "),
        ));
    }
    let results: Vec<Result<Vec<CheckReport>>> = selected
        .par_iter()
        .map(|c| {
            let t0 = std::time::Instant::now();
            let mut reports = c.run(cfg)?;
            let per = t0.elapsed().as_secs_f64() * 1e3 / reports.len().max(1) as f64;
            for r in &mut reports {
                r.runtime_ms = per;
            }
            Ok(reports)
        })
        .collect();
    let mut merged = Vec::new();
    for r in results {
        merged.extend(r?);
    }
    merged.sort_by(|a, b| (a.id.as_str(), a.params.as_str()).cmp(&(b.id.as_str(), b.params.as_str())));
    Ok(merged)
}
