//! Outcome of verifying one named identity to a finite truncation order.

use std::time::Duration;

use crate::qseries::json_string;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

/// Pass/fail record for one identity at one truncation order.
/// `first_mismatch` is a doubled exponent (half-integer grid) and is
/// present exactly when the status is `Fail`.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub id: String,
    pub order: i64,
    pub status: Status,
    pub first_mismatch: Option<i64>,
    pub elapsed: Duration,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Report as one JSON object; keys alphabetical for canonical
    /// round-tripping. `first_mismatch` is a doubled exponent or null.
    pub fn render_json(&self) -> String {
        format!(
            "{{\"elapsed_ms\":{},\"first_mismatch\":{},\"id\":{},\"order\":{},\"status\":\"{}\"}}",
            self.elapsed.as_millis(),
            self.first_mismatch
                .map(|e| e.to_string())
                .unwrap_or_else(|| "null".to_string()),
            json_string(&self.id),
            self.order,
            self.status.as_str()
        )
    }

    pub fn render_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.id,
            self.order,
            self.status.as_str(),
            self.first_mismatch
                .map(|e| e.to_string())
                .unwrap_or_default(),
            self.elapsed.as_millis()
        )
    }

    pub fn render_text(&self) -> String {
        match self.first_mismatch {
            Some(e) => format!(
                "{:<14} order {:>3}  {}  (first mismatch at doubled exponent {}, {} ms)",
                self.id,
                self.order,
                self.status.as_str(),
                e,
                self.elapsed.as_millis()
            ),
            None => format!(
                "{:<14} order {:>3}  {}  ({} ms)",
                self.id,
                self.order,
                self.status.as_str(),
                self.elapsed.as_millis()
            ),
        }
    }
}
