//! Shared result types for regularized-determinant computations.
//!
//! Every determinant route (spectral sums over exact circle modes, Mellin
//! transforms of heat traces, fits of the resolvent family, closed forms)
//! reports through [`DetValue`] so downstream consumers can compare routes,
//! propagate error estimates, and serialize identical JSON regardless of
//! which method produced the number.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// How a determinant value was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DetMethod {
    /// Coefficient extraction from the zeta-function fit of the resolvent
    /// family in the spectral parameter.
    #[serde(rename = "a2-fit")]
    A2Fit,
    /// Analytic closed form (exact special-function/zeta-value evaluation).
    #[serde(rename = "closed-form")]
    ClosedForm,
    /// Mellin transform of a heat trace with ladder subtraction.
    #[serde(rename = "mellin")]
    Mellin,
    /// Direct zeta-regularized sum over an exact eigenvalue ladder.
    #[serde(rename = "spectral-sum")]
    SpectralSum,
}

/// A single regularized log-determinant with provenance and error estimate.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DetValue {
    /// What operator the value belongs to (e.g. "exterior", "interior",
    /// "jump-circle").
    pub object: String,
    /// Spectral shift μ of the operator family; 0 for the μ = 0 member
    /// (where the determinant is the zero-mode-omitted modification).
    pub mu: f64,
    pub method: DetMethod,
    /// log det (natural logarithm).
    pub value: f64,
    /// Estimated absolute error of `value`.
    pub err: f64,
    /// Cutoff-scale parameter when the value depends on a frequency cutoff
    /// choice; `None` for cutoff-free routes.
    #[serde(skip_serializing_if = "Option::is_none")]
    #[serde(default)]
    pub chi_a: Option<f64>,
    /// Method-specific scalar diagnostics (fit residuals, detected
    /// logarithmic-term coefficients, mode counts, ...). BTreeMap keeps the
    /// serialized ordering deterministic.
    #[serde(default)]
    pub diagnostics: BTreeMap<String, f64>,
}

impl DetValue {
    pub fn new(object: &str, mu: f64, method: DetMethod, value: f64, err: f64) -> Self {
        DetValue {
            object: object.to_string(),
            mu,
            method,
            value,
            err,
            chi_a: None,
            diagnostics: BTreeMap::new(),
        }
    }

    pub fn with_diagnostic(mut self, key: &str, value: f64) -> Self {
        self.diagnostics.insert(key.to_string(), value);
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_and_field_names() {
        let v = DetValue::new("jump-circle", 1.0, DetMethod::SpectralSum, 1.25, 1e-10)
            .with_diagnostic("n_modes", 10_000.0);
        let s = serde_json::to_string(&v).unwrap();
        assert!(s.contains("\"object\":\"jump-circle\""));
        assert!(s.contains("\"method\":\"spectral-sum\""));
        assert!(s.contains("\"n_modes\":10000.0"));
        assert!(!s.contains("chi_a"), "absent cutoff must not serialize");
        let back: DetValue = serde_json::from_str(&s).unwrap();
        assert_eq!(back.method, DetMethod::SpectralSum);
        assert_eq!(back.value, v.value);
    }

    #[test]
    fn method_tags_are_kebab_case() {
        for (m, tag) in [
            (DetMethod::A2Fit, "\"a2-fit\""),
            (DetMethod::ClosedForm, "\"closed-form\""),
            (DetMethod::Mellin, "\"mellin\""),
            (DetMethod::SpectralSum, "\"spectral-sum\""),
        ] {
            assert_eq!(serde_json::to_string(&m).unwrap(), tag);
        }
    }

    #[test]
    fn diagnostics_serialize_in_key_order() {
        let v = DetValue::new("exterior", 0.5, DetMethod::Mellin, -0.3, 1e-6)
            .with_diagnostic("slog_coeff", 0.01)
            .with_diagnostic("fit_residual", 2e-7);
        let s = serde_json::to_string(&v).unwrap();
        let a = s.find("fit_residual").unwrap();
        let b = s.find("slog_coeff").unwrap();
        assert!(a < b, "BTreeMap ordering must be stable: {s}");
    }
}
