//! Structured residual reports: a flat map of named residuals with the
//! thresholds they were judged against, plus the run configuration echo.
//!
//! The JSON serialization of [`ResidualReport`] is the stable report schema:
//! top-level keys `params`, `form`, `truncation`, `residuals`, `thresholds`,
//! `pass`, with residual names sorted (BTreeMap order) for byte-identical
//! output across runs.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::params::AbcdParams;
use crate::symplectic::FormChoice;
use crate::truncation::TruncationConfig;

#[derive(Debug, Clone, Serialize)]
pub struct ResidualReport {
    pub params: AbcdParams,
    pub form: FormChoice,
    pub truncation: TruncationConfig,
    pub residuals: BTreeMap<String, f64>,
    pub thresholds: BTreeMap<String, f64>,
    pub pass: bool,
}

impl ResidualReport {
    pub fn new(params: AbcdParams, form: FormChoice, truncation: TruncationConfig) -> Self {
        Self {
            params,
            form,
            truncation,
            residuals: BTreeMap::new(),
            thresholds: BTreeMap::new(),
            pass: true,
        }
    }

    /// Records one residual with its threshold and folds it into `pass`.
    ///
    /// Residuals are nonnegative finite numbers by construction; a NaN (which
    /// would silently compare false) or an infinity is mapped to `f64::MAX` so
    /// it fails while staying representable in JSON output, where non-finite
    /// floats would otherwise degrade to `null`.
    pub fn record(&mut self, label: &str, value: f64, threshold: f64) {
        let value = if value.is_finite() { value } else { f64::MAX };
        self.residuals.insert(label.to_owned(), value);
        self.thresholds.insert(label.to_owned(), threshold);
        if value > threshold {
            self.pass = false;
        }
    }

    /// Residuals exceeding their thresholds, in name order.
    pub fn failures(&self) -> Vec<(&str, f64, f64)> {
        self.residuals
            .iter()
            .filter_map(|(name, &value)| {
                let threshold = self.thresholds[name];
                (value > threshold).then_some((name.as_str(), value, threshold))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report() -> ResidualReport {
        ResidualReport::new(
            AbcdParams::identity(),
            FormChoice::Both,
            TruncationConfig::default(),
        )
    }

    #[test]
    fn pass_tracks_thresholds() {
        let mut r = report();
        r.record("alpha", 1e-9, 1e-6);
        assert!(r.pass);
        r.record("beta", 2e-6, 1e-6);
        assert!(!r.pass);
        assert_eq!(r.failures(), vec![("beta", 2e-6, 1e-6)]);
    }

    #[test]
    fn nan_fails_and_stays_json_representable() {
        let mut r = report();
        r.record("gamma", f64::NAN, 1e-6);
        assert!(!r.pass);
        assert_eq!(r.residuals["gamma"], f64::MAX);
        assert!(!serde_json::to_string(&r).unwrap().contains("null"));
    }

    #[test]
    fn json_schema_keys_in_order() {
        let mut r = report();
        r.record("alpha", 0.0, 1.0);
        let json = serde_json::to_string(&r).unwrap();
        let order: Vec<usize> = ["params", "form", "truncation", "residuals", "thresholds", "pass"]
            .iter()
            .map(|k| json.find(&format!("\"{k}\"")).unwrap())
            .collect();
        assert!(order.windows(2).all(|w| w[0] < w[1]), "{json}");
        assert!(json.contains("\"form\":\"both\""));
    }
}
