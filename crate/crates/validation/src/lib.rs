//! Reporting harness for the acceptance suite.
//!
//! Each criterion collects named checks; the suite prints one line per
//! criterion and the process exits nonzero if any criterion failed.

use std::fmt::Write as _;
use std::time::Instant;

/// Checks gathered while evaluating one criterion.
#[derive(Debug, Default)]
pub struct Criterion {
    checks: Vec<(bool, String)>,
    notes: Vec<String>,
}

impl Criterion {
    fn record(&mut self, ok: bool, text: String) -> bool {
        self.checks.push((ok, text));
        ok
    }

    /// `lo ≤ value ≤ hi`.
    pub fn within(&mut self, label: &str, value: f64, lo: f64, hi: f64) -> bool {
        let ok = value >= lo && value <= hi;
        self.record(ok, format!("{label}={value:.6} in [{lo}, {hi}]"))
    }

    /// `value ≤ max`.
    pub fn at_most(&mut self, label: &str, value: f64, max: f64) -> bool {
        let ok = value <= max;
        self.record(ok, format!("{label}={value:.6e} <= {max:e}"))
    }

    /// `value ≥ min`.
    pub fn at_least(&mut self, label: &str, value: f64, min: f64) -> bool {
        let ok = value >= min;
        self.record(ok, format!("{label}={value:.6e} >= {min:e}"))
    }

    /// Integer count that must be zero.
    pub fn zero(&mut self, label: &str, count: u64) -> bool {
        self.record(count == 0, format!("{label}={count} == 0"))
    }

    pub fn holds(&mut self, label: &str, ok: bool) -> bool {
        self.record(ok, label.to_string())
    }

    /// Diagnostic printed under the criterion; never affects the verdict.
    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.0)
    }
}

/// Ordered list of criterion verdicts.
#[derive(Debug, Default)]
pub struct Suite {
    verdicts: Vec<(String, bool)>,
}

impl Suite {
    pub fn new() -> Self {
        Self::default()
    }

    /// Evaluates and prints one criterion. An `Err` from `body` is a FAIL.
    pub fn run<F>(&mut self, id: &str, title: &str, body: F)
    where
        F: FnOnce(&mut Criterion) -> Result<(), String>,
    {
        let start = Instant::now();
        let mut c = Criterion::default();
        let outcome = body(&mut c);
        let ok = outcome.is_ok() && c.passed();
        let mut line = format!("{} {id} {title}", if ok { "PASS" } else { "FAIL" });
        let parts: Vec<String> = c
            .checks
            .iter()
            .map(|(ok, t)| if *ok { t.clone() } else { format!("{t} [FAILED]") })
            .collect();
        if !parts.is_empty() {
            let _ = write!(line, ": {}", parts.join("; "));
        }
        if let Err(e) = outcome {
            let _ = write!(line, "; error: {e}");
        }
        let _ = write!(line, " ({:.1} s)", start.elapsed().as_secs_f64());
        println!("{line}");
        for n in &c.notes {
            println!("  note {id}: {n}");
        }
        self.verdicts.push((id.to_string(), ok));
    }

    pub fn failed(&self) -> Vec<&str> {
        self.verdicts
            .iter()
            .filter(|v| !v.1)
            .map(|v| v.0.as_str())
            .collect()
    }

    /// Prints the summary and returns the process exit code.
    pub fn finish(&self) -> i32 {
        let failed = self.failed();
        println!(
            "acceptance: {} passed, {} failed{}",
            self.verdicts.len() - failed.len(),
            failed.len(),
            if failed.is_empty() {
                String::new()
            } else {
                format!(" ({})", failed.join(", "))
            }
        );
        i32::from(!failed.is_empty())
    }
}
