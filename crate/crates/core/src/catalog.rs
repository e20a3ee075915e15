//! Registry of checkable identities, keyed by stable string ids.

use crate::contour::QuadOptions;
use crate::error::{Error, Result};
use crate::kernel::{Real, C64};
use crate::sampling::SampleRng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Int(i64),
    Complex(C64),
}

/// Named sample parameters.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Params(pub BTreeMap<String, Value>);

impl Params {
    pub fn new() -> Self {
        Params::default()
    }

    pub fn with(mut self, name: &str, v: C64) -> Self {
        self.0.insert(name.to_string(), Value::Complex(v));
        self
    }

    pub fn with_int(mut self, name: &str, v: i64) -> Self {
        self.0.insert(name.to_string(), Value::Int(v));
        self
    }

    pub fn c(&self, name: &str) -> Result<C64> {
        match self.0.get(name) {
            Some(Value::Complex(z)) => Ok(*z),
            Some(Value::Int(n)) => Ok(C64::new(*n as Real, 0.0)),
            None => Err(Error::Config(format!("missing parameter {name}"))),
        }
    }

    pub fn int(&self, name: &str) -> Result<i64> {
        match self.0.get(name) {
            Some(Value::Int(n)) => Ok(*n),
            _ => Err(Error::Config(format!("missing integer parameter {name}"))),
        }
    }
}

/// Both sides of one identity instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sides {
    pub lhs: C64,
    pub rhs: C64,
    pub quad_error: Real,
    /// Magnitude used when the right-hand side vanishes.
    pub scale: Real,
}

impl Sides {
    pub fn exact(lhs: C64, rhs: C64) -> Sides {
        Sides {
            lhs,
            rhs,
            quad_error: 0.0,
            scale: lhs.norm().max(rhs.norm()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    Relative,
    Absolute,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Judgement {
    pub abs_error: Real,
    pub rel_error: Real,
    pub rule: Rule,
    pub pass: bool,
}

/// Relative comparison, switching to `|lhs - rhs| <= tol * scale` when the
/// right-hand side is zero up to roundoff of the scale.
pub fn judge(s: &Sides, tol: Real) -> Judgement {
    let abs_error = (s.lhs - s.rhs).norm();
    let r = s.rhs.norm();
    let rel_error = if r > 0.0 { abs_error / r } else { Real::INFINITY };
    let scale = s.scale.max(s.lhs.norm());
    let (rule, pass) = if r <= 1e-12 * scale {
        (Rule::Absolute, abs_error <= tol * scale)
    } else {
        (Rule::Relative, rel_error <= tol)
    };
    Judgement {
        abs_error,
        rel_error,
        rule,
        pass: pass && abs_error.is_finite(),
    }
}

pub trait Identity: Send + Sync {
    fn id(&self) -> &str;
    /// Plain-language statement of what is compared.
    fn statement(&self) -> &str;
    fn domain(&self) -> &str;
    fn tolerance(&self) -> Real;
    fn default_samples(&self) -> usize;
    fn sample(&self, index: usize, rng: &mut SampleRng) -> Params;
    fn evaluate(&self, params: &Params, quad: &QuadOptions) -> Result<Sides>;
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesOutcome {
    pub order: i64,
    pub equal: bool,
    /// First differing term or other detail when not equal.
    pub detail: Option<String>,
    pub cases: usize,
}

pub trait SeriesCheck: Send + Sync {
    fn id(&self) -> &str;
    fn statement(&self) -> &str;
    fn default_order(&self) -> i64;
    fn run(&self, order: i64) -> Result<SeriesOutcome>;
}

/// Numeric identity assembled from plain functions.
pub struct NumericIdentity {
    pub id: &'static str,
    pub statement: &'static str,
    pub domain: &'static str,
    pub tolerance: Real,
    pub samples: usize,
    pub sampler: fn(usize, &mut SampleRng) -> Params,
    pub eval: fn(&Params, &QuadOptions) -> Result<Sides>,
}

impl Identity for NumericIdentity {
    fn id(&self) -> &str {
        self.id
    }
    fn statement(&self) -> &str {
        self.statement
    }
    fn domain(&self) -> &str {
        self.domain
    }
    fn tolerance(&self) -> Real {
        self.tolerance
    }
    fn default_samples(&self) -> usize {
        self.samples
    }
    fn sample(&self, index: usize, rng: &mut SampleRng) -> Params {
        (self.sampler)(index, rng)
    }
    fn evaluate(&self, params: &Params, quad: &QuadOptions) -> Result<Sides> {
        (self.eval)(params, quad)
    }
}

pub struct ExactCheck {
    pub id: &'static str,
    pub statement: &'static str,
    pub order: i64,
    pub run: fn(i64) -> Result<SeriesOutcome>,
}

impl SeriesCheck for ExactCheck {
    fn id(&self) -> &str {
        self.id
    }
    fn statement(&self) -> &str {
        self.statement
    }
    fn default_order(&self) -> i64 {
        self.order
    }
    fn run(&self, order: i64) -> Result<SeriesOutcome> {
        (self.run)(order)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub id: String,
    pub kind: String,
    pub statement: String,
    pub domain: String,
    pub tolerance: Option<Real>,
    pub default_samples: Option<usize>,
    pub default_order: Option<i64>,
}

#[derive(Default, Clone)]
pub struct Registry {
    numeric: BTreeMap<String, Arc<dyn Identity>>,
    series: BTreeMap<String, Arc<dyn SeriesCheck>>,
}

impl Registry {
    pub fn new() -> Self {
        Registry::default()
    }

    /// Every identity and series check shipped with the crate.
    pub fn standard() -> Self {
        let mut r = Registry::new();
        for i in crate::identities::all() {
            r.register(Arc::new(i)).expect("standard ids are unique");
        }
        for s in crate::qseries::checks::all() {
            r.register_series(Arc::new(s)).expect("standard ids are unique");
        }
        r
    }

    fn taken(&self, id: &str) -> bool {
        self.numeric.contains_key(id) || self.series.contains_key(id)
    }

    pub fn register(&mut self, identity: Arc<dyn Identity>) -> Result<()> {
        if self.taken(identity.id()) {
            return Err(Error::DuplicateId(identity.id().to_string()));
        }
        self.numeric.insert(identity.id().to_string(), identity);
        Ok(())
    }

    pub fn register_series(&mut self, check: Arc<dyn SeriesCheck>) -> Result<()> {
        if self.taken(check.id()) {
            return Err(Error::DuplicateId(check.id().to_string()));
        }
        self.series.insert(check.id().to_string(), check);
        Ok(())
    }

    pub fn numeric(&self, id: &str) -> Option<Arc<dyn Identity>> {
        self.numeric.get(id).cloned()
    }

    pub fn series(&self, id: &str) -> Option<Arc<dyn SeriesCheck>> {
        self.series.get(id).cloned()
    }

    pub fn numeric_ids(&self) -> Vec<String> {
        self.numeric.keys().cloned().collect()
    }

    pub fn series_ids(&self) -> Vec<String> {
        self.series.keys().cloned().collect()
    }

    pub fn contains(&self, id: &str) -> bool {
        self.taken(id)
    }

    pub fn manifest(&self) -> Vec<ManifestEntry> {
        let mut out: Vec<ManifestEntry> = self
            .numeric
            .values()
            .map(|i| ManifestEntry {
                id: i.id().to_string(),
                kind: "numeric".into(),
                statement: i.statement().to_string(),
                domain: i.domain().to_string(),
                tolerance: Some(i.tolerance()),
                default_samples: Some(i.default_samples()),
                default_order: None,
            })
            .collect();
        out.extend(self.series.values().map(|s| ManifestEntry {
            id: s.id().to_string(),
            kind: "series".into(),
            statement: s.statement().to_string(),
            domain: "formal power series, exact rational coefficients".into(),
            tolerance: None,
            default_samples: None,
            default_order: Some(s.default_order()),
        }));
        out.sort_by(|a, b| a.id.cmp(&b.id));
        out
    }
}
