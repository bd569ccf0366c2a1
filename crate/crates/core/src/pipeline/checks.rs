use std::fmt;

use crate::exterior::BundleForm;
use crate::scalar::Scalar;

/// Longest residual rendering kept in a report.
const RESIDUAL_LIMIT: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// A diagnostic comparison that did not match; never fatal.
    Mismatch,
}

impl CheckStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Mismatch => "mismatch",
        }
    }
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One named identity with the rendering of its residual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub residual: String,
}

/// Ordered log of identity checks.
///
/// A disabled log evaluates nothing; numeric runs use one because residuals
/// of truncated jets carry no exact meaning.
#[derive(Clone, Debug, Default)]
pub struct CheckLog {
    enabled: bool,
    items: Vec<Check>,
}

fn render(s: String) -> String {
    if s.len() <= RESIDUAL_LIMIT {
        return s;
    }
    let mut cut = RESIDUAL_LIMIT;
    while !s.is_char_boundary(cut) {
        cut -= 1;
    }
    format!("{} ... [{} chars]", &s[..cut], s.len())
}

impl CheckLog {
    pub fn new(enabled: bool) -> Self {
        Self { enabled, items: Vec::new() }
    }

    pub fn enabled(&self) -> bool {
        self.enabled
    }

    pub fn items(&self) -> &[Check] {
        &self.items
    }

    pub fn into_items(self) -> Vec<Check> {
        self.items
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.items.iter().find(|c| c.status == CheckStatus::Fail)
    }

    fn push(&mut self, name: &str, ok: bool, required: bool, residual: impl FnOnce() -> String) {
        let status = match (ok, required) {
            (true, _) => CheckStatus::Pass,
            (false, true) => CheckStatus::Fail,
            (false, false) => CheckStatus::Mismatch,
        };
        let residual = if ok { "0".to_string() } else { render(residual()) };
        self.items.push(Check { name: name.to_string(), status, residual });
    }

    /// Records a boolean condition.
    pub fn require_that(&mut self, name: &str, ok: impl FnOnce() -> bool, detail: impl FnOnce() -> String) {
        if self.enabled {
            let ok = ok();
            self.push(name, ok, true, detail);
        }
    }

    /// Records that a scalar residual vanishes.
    pub fn require_zero<S: Scalar>(&mut self, name: &str, residual: impl FnOnce() -> S) {
        if self.enabled {
            let r = residual();
            self.push(name, r.is_zero(), true, || r.to_string());
        }
    }

    /// Records that a form residual vanishes.
    pub fn require_zero_form<S: Scalar>(&mut self, name: &str, residual: impl FnOnce() -> BundleForm<S>) {
        if self.enabled {
            let r = residual();
            self.push(name, r.is_zero(), true, || r.to_string());
        }
    }

    /// Records a non-fatal comparison.
    pub fn compare<S: Scalar>(&mut self, name: &str, difference: impl FnOnce() -> S) {
        if self.enabled {
            let r = difference();
            self.push(name, r.is_zero(), false, || r.to_string());
        }
    }
}
