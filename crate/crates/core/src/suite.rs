//! Batch runs over seeded samples on a worker pool.

use crate::catalog::{judge, Registry};
use crate::contour::QuadOptions;
use crate::error::{Error, Result};
use crate::kernel::Real;
use crate::report::{summarize, CheckResult, Kind, Report, Status, Timings, SCHEMA_VERSION};
use crate::sampling::{rng_for, SAMPLER_VERSION};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PrecisionMode {
    #[default]
    Standard,
    Extended,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub identity_ids: Vec<String>,
    /// Run every registered check; `identity_ids` is ignored.
    pub all: bool,
    /// Samples per numeric identity; each identity's default when absent.
    pub samples_per_identity: Option<usize>,
    pub seed: u64,
    /// Applies to every numeric identity without a per-id override.
    pub tolerance: Option<Real>,
    pub tolerance_overrides: BTreeMap<String, Real>,
    /// Order for series checks; each check's default when absent.
    pub series_order: Option<i64>,
    pub output_path: Option<String>,
    pub precision_mode: PrecisionMode,
    /// Worker threads; 0 lets the pool decide.
    pub threads: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            identity_ids: Vec::new(),
            all: false,
            samples_per_identity: None,
            seed: 0,
            tolerance: None,
            tolerance_overrides: BTreeMap::new(),
            series_order: None,
            output_path: None,
            precision_mode: PrecisionMode::Standard,
            threads: 0,
        }
    }
}

impl RunConfig {
    pub fn for_ids<S: AsRef<str>>(ids: &[S]) -> RunConfig {
        RunConfig {
            identity_ids: ids.iter().map(|s| s.as_ref().to_string()).collect(),
            ..RunConfig::default()
        }
    }

    /// Checks the config against the registry before any work is done and
    /// returns the ids to run.
    pub fn validate(&self, registry: &Registry) -> Result<Vec<String>> {
        if self.precision_mode == PrecisionMode::Extended {
            return Err(Error::Config(
                "extended precision is not available; all arithmetic is binary64".into(),
            ));
        }
        if self.samples_per_identity == Some(0) {
            return Err(Error::Config("samples must be at least 1".into()));
        }
        if let Some(o) = self.series_order {
            if o < 1 {
                return Err(Error::Config("series order must be at least 1".into()));
            }
        }
        for (id, t) in self.tolerance.iter().map(|t| ("*", t)).chain(self.tolerance_overrides.iter().map(|(k, v)| (k.as_str(), v))) {
            if !(*t > 0.0) {
                return Err(Error::Config(format!("tolerance for {id} must be positive")));
            }
        }
        for id in self.tolerance_overrides.keys() {
            if !registry.contains(id) {
                return Err(Error::UnknownId(id.clone()));
            }
        }
        let ids: Vec<String> = if self.all {
            let mut v = registry.numeric_ids();
            v.extend(registry.series_ids());
            v.sort();
            v
        } else {
            if self.identity_ids.is_empty() {
                return Err(Error::Config("no checks selected".into()));
            }
            for id in &self.identity_ids {
                if !registry.contains(id) {
                    return Err(Error::UnknownId(id.clone()));
                }
            }
            let mut v = self.identity_ids.clone();
            v.sort();
            v.dedup();
            v
        };
        Ok(ids)
    }
}

enum Task {
    Numeric { id: String, index: usize },
    Series { id: String },
}

fn panic_text(e: Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = e.downcast_ref::<&str>() {
        s.to_string()
    } else if let Some(s) = e.downcast_ref::<String>() {
        s.clone()
    } else {
        "unknown panic".into()
    }
}

fn blank(id: &str, index: usize, kind: Kind) -> CheckResult {
    CheckResult {
        id: id.to_string(),
        index,
        kind,
        status: Status::Error,
        params: None,
        lhs: None,
        rhs: None,
        abs_error: None,
        rel_error: None,
        quad_error: None,
        rule: None,
        tolerance: None,
        order: None,
        cases: None,
        detail: None,
        error: None,
        seconds: 0.0,
    }
}

fn run_numeric(registry: &Registry, config: &RunConfig, quad: &QuadOptions, id: &str, index: usize) -> CheckResult {
    let identity = registry.numeric(id).expect("validated id");
    let mut out = blank(id, index, Kind::Numeric);
    let tol = config
        .tolerance_overrides
        .get(id)
        .copied()
        .or(config.tolerance)
        .unwrap_or_else(|| identity.tolerance());
    out.tolerance = Some(tol);
    let mut rng = rng_for(config.seed, id, index);
    let params = identity.sample(index, &mut rng);
    out.params = Some(params.clone());
    let start = Instant::now();
    let res = catch_unwind(AssertUnwindSafe(|| identity.evaluate(&params, quad)));
    out.seconds = start.elapsed().as_secs_f64();
    match res {
        Ok(Ok(sides)) => {
            let j = judge(&sides, tol);
            out.lhs = Some(sides.lhs);
            out.rhs = Some(sides.rhs);
            out.abs_error = Some(j.abs_error);
            out.rel_error = j.rel_error.is_finite().then_some(j.rel_error);
            out.quad_error = Some(sides.quad_error);
            out.rule = Some(j.rule);
            out.status = if j.pass { Status::Pass } else { Status::Fail };
        }
        Ok(Err(e)) => out.error = Some(e.to_string()),
        Err(p) => out.error = Some(format!("panic: {}", panic_text(p))),
    }
    out
}

fn run_series(registry: &Registry, config: &RunConfig, id: &str) -> CheckResult {
    let check = registry.series(id).expect("validated id");
    let mut out = blank(id, 0, Kind::Series);
    let order = config.series_order.unwrap_or_else(|| check.default_order());
    out.order = Some(order);
    let start = Instant::now();
    let res = catch_unwind(AssertUnwindSafe(|| check.run(order)));
    out.seconds = start.elapsed().as_secs_f64();
    match res {
        Ok(Ok(o)) => {
            out.status = if o.equal { Status::Pass } else { Status::Fail };
            out.cases = Some(o.cases);
            out.detail = o.detail;
        }
        Ok(Err(e)) => out.error = Some(e.to_string()),
        Err(p) => out.error = Some(format!("panic: {}", panic_text(p))),
    }
    out
}

/// Runs every selected check. Failures are recorded, never fatal; only an
/// invalid config is an error.
pub fn run_suite(registry: &Registry, config: &RunConfig) -> Result<Report> {
    let ids = config.validate(registry)?;
    let quad = QuadOptions::default();
    let mut tasks = Vec::new();
    for id in &ids {
        if let Some(identity) = registry.numeric(id) {
            let n = config.samples_per_identity.unwrap_or_else(|| identity.default_samples());
            tasks.extend((0..n).map(|index| Task::Numeric { id: id.clone(), index }));
        } else {
            tasks.push(Task::Series { id: id.clone() });
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let start = Instant::now();
    let mut results: Vec<CheckResult> = pool.install(|| {
        tasks
            .par_iter()
            .map(|t| match t {
                Task::Numeric { id, index } => run_numeric(registry, config, &quad, id, *index),
                Task::Series { id } => run_series(registry, config, id),
            })
            .collect()
    });
    let wall = start.elapsed().as_secs_f64();
    results.sort_by(|a, b| (a.id.as_str(), a.index).cmp(&(b.id.as_str(), b.index)));
    let check_seconds = results.iter().map(|r| r.seconds).sum();
    Ok(Report {
        schema_version: SCHEMA_VERSION.into(),
        toolkit_version: env!("CARGO_PKG_VERSION").into(),
        arithmetic: "binary64".into(),
        sampler: SAMPLER_VERSION.into(),
        config: config.clone(),
        summary: summarize(&results),
        results,
        timings: Timings {
            wall_seconds: wall,
            check_seconds,
        },
    })
}
