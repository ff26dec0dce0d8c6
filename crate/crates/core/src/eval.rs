//! Value-with-error-estimate pair returned by every floating-point evaluation.

/// A real value together with a rigorous-intent bound on its absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    pub error_estimate: f64,
}

impl EvalResult {
    /// Panics on NaN values or non-finite error estimates.
    pub fn new(value: f64, error_estimate: f64) -> Self {
        assert!(!value.is_nan(), "EvalResult value is NaN");
        assert!(
            error_estimate.is_finite() && error_estimate >= 0.0,
            "EvalResult error estimate must be finite and nonnegative, got {error_estimate}"
        );
        Self {
            value,
            error_estimate,
        }
    }

    pub fn exact(value: f64) -> Self {
        Self::new(value, 0.0)
    }

    /// Sum of two results; error estimates add.
    pub fn add(&self, other: &EvalResult) -> EvalResult {
        EvalResult::new(
            self.value + other.value,
            self.error_estimate + other.error_estimate,
        )
    }

    /// Scale by a constant; the error estimate scales by |k|.
    pub fn scale(&self, k: f64) -> EvalResult {
        EvalResult::new(self.value * k, self.error_estimate * k.abs())
    }
}
