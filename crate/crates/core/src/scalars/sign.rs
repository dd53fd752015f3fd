use serde::{Deserialize, Serialize};

use super::Scalar;

/// Outcome of a sign decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Nonnegative,
    Negative,
    Indeterminate,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Nonnegative => "NONNEGATIVE",
            Verdict::Negative => "NEGATIVE",
            Verdict::Indeterminate => "INDETERMINATE",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SignVerdict {
    pub verdict: Verdict,
    /// `|x|`, the distance of the value from zero.
    pub margin: Scalar,
}

/// Controls how float values are classified.
///
/// With `eps = scale * 2^(-prec/2)`:
/// `x >= 0` is NONNEGATIVE, `x < -eps * hysteresis` is NEGATIVE, and
/// anything in between is INDETERMINATE. `prec` is the value's own
/// precision unless `precision_bits` overrides it.
#[derive(Debug, Clone, PartialEq)]
pub struct TolerancePolicy {
    pub scale: f64,
    pub hysteresis: f64,
    pub precision_bits: Option<u32>,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        TolerancePolicy {
            scale: 1.0,
            hysteresis: 1.0,
            precision_bits: None,
        }
    }
}

impl TolerancePolicy {
    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }

    pub fn with_precision(mut self, bits: u32) -> Self {
        self.precision_bits = Some(bits);
        self
    }

    /// log2 of the negative threshold for a value carrying `prec` bits.
    pub fn threshold_log2(&self, prec: u32) -> f64 {
        let p = self.precision_bits.unwrap_or(prec) as f64;
        (self.scale * self.hysteresis).log2() - p / 2.0
    }
}
