//! The structured report. Fields are declared in sorted order and dynamic
//! maps are `BTreeMap`s, so serialization is canonical.

use std::collections::BTreeMap;

use engel_core::pipeline::{Check, InvariantSet, Verdict, Witness};
use engel_core::{ExtScalar, Polynomial};
use serde::Serialize;

use crate::input::InputFile;
use crate::oracle::OracleReport;

#[derive(Clone, Debug, Serialize)]
pub struct InputEcho {
    pub branch: i64,
    pub phi1: String,
    pub phi2: String,
    pub seed: u64,
}

impl From<&InputFile> for InputEcho {
    fn from(f: &InputFile) -> Self {
        Self { branch: f.branch.sign(), phi1: f.phi1.clone(), phi2: f.phi2.clone(), seed: f.seed }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub residual: String,
    pub status: String,
}

impl From<&Check> for CheckEntry {
    fn from(c: &Check) -> Self {
        Self { name: c.name.clone(), residual: c.residual.clone(), status: c.status.as_str().to_string() }
    }
}

/// Canonical strings keyed `I0`..`I5`.
pub type InvariantMap = BTreeMap<String, String>;

pub fn invariant_map(set: &InvariantSet<ExtScalar>) -> InvariantMap {
    set.values.iter().enumerate().map(|(k, v)| (format!("I{k}"), v.to_string())).collect()
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Invariants {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub explicit: Option<InvariantMap>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structural: Option<InvariantMap>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessEntry {
    pub invariant: String,
    pub point: BTreeMap<String, String>,
    pub value: String,
}

impl From<&Witness> for WitnessEntry {
    fn from(w: &Witness) -> Self {
        let point = ["u1", "u2", "x", "y"].iter().zip([2, 3, 0, 1]).map(|(n, i)| (n.to_string(), w.point[i].to_string())).collect();
        Self { invariant: format!("I{}", w.invariant), point, value: w.value_string() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub total_ms: u64,
}

/// Report of `classify`, `invariants` and `verify`.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub checks: Vec<CheckEntry>,
    pub class_ii: bool,
    pub input: InputEcho,
    pub invariants: Invariants,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub singular_locus: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
    pub verdict: String,
    pub witness: Option<WitnessEntry>,
}

impl Report {
    pub fn new(input: &InputFile, verdict: &Verdict) -> Self {
        let (reason, witness) = match verdict {
            Verdict::NotClassII { reason } => (Some(reason.clone()), None),
            Verdict::NonFlat(w) => (None, Some(WitnessEntry::from(w.as_ref()))),
            Verdict::Flat => (None, None),
        };
        Self {
            checks: Vec::new(),
            class_ii: !matches!(verdict, Verdict::NotClassII { .. }),
            input: input.into(),
            invariants: Invariants::default(),
            reason,
            singular_locus: None,
            timing: None,
            verdict: verdict.as_str().to_string(),
            witness,
        }
    }

    pub fn with_locus(mut self, locus: Option<&Polynomial>) -> Self {
        self.singular_locus = locus.map(ToString::to_string);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleEntry {
    pub error: f64,
    pub exact: [f64; 2],
    pub invariant: String,
    pub numeric: [f64; 2],
    pub status: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct OraclePoint {
    pub comparisons: Vec<OracleEntry>,
    pub point: BTreeMap<String, String>,
}

/// Report of `oracle`.
#[derive(Clone, Debug, Serialize)]
pub struct OracleSummary {
    pub agrees: bool,
    pub input: InputEcho,
    pub max_error: f64,
    pub order: u32,
    pub points: Vec<OraclePoint>,
    pub rejected: usize,
    pub tolerance: f64,
}

impl OracleSummary {
    pub fn new(input: &InputFile, r: &OracleReport) -> Self {
        let points = r
            .points
            .iter()
            .map(|p| OraclePoint {
                comparisons: p
                    .invariants
                    .iter()
                    .map(|c| OracleEntry {
                        error: c.error,
                        exact: [c.exact.re, c.exact.im],
                        invariant: format!("I{}", c.invariant),
                        numeric: [c.numeric.re, c.numeric.im],
                        status: if c.agrees { "pass" } else { "fail" }.to_string(),
                    })
                    .collect(),
                point: ["u1", "u2", "x", "y"].iter().zip([2, 3, 0, 1]).map(|(n, i)| (n.to_string(), p.point[i].to_string())).collect(),
            })
            .collect();
        Self {
            agrees: r.agrees(),
            input: input.into(),
            max_error: r.max_error(),
            order: r.config.order,
            points,
            rejected: r.rejected,
            tolerance: r.config.tolerance,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}
