//! Validation reports with witnesses.
//!
//! Validators collect every failing basis tuple rather than stopping at the
//! first, so bad structure-constant files can be debugged in one pass.
//! Guarded checks (truncated structures) also count skipped tuples.

use std::fmt;

/// One failed check with a human-readable witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Which condition failed, e.g. "leibniz identity" or "axiom (3)".
    pub check: String,
    /// The witnessing tuple / vector, rendered.
    pub witness: String,
}

impl Violation {
    pub fn new(check: impl Into<String>, witness: impl Into<String>) -> Self {
        Violation {
            check: check.into(),
            witness: witness.into(),
        }
    }
}

/// Outcome of running a family of checks over basis tuples.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Number of tuple checks that ran.
    pub checked: usize,
    /// Number of tuple checks skipped because they exceed the degree guard.
    pub skipped: usize,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn record(&mut self, ok: bool, check: &str, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(Violation::new(check, witness()));
        }
    }

    pub fn skip(&mut self) {
        self.skipped += 1;
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.checked += other.checked;
        self.skipped += other.skipped;
        self.violations.extend(other.violations);
    }

    /// First violation, if any; handy for error messages.
    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            write!(f, "valid ({} checks", self.checked)?;
            if self.skipped > 0 {
                write!(f, ", {} skipped over degree budget", self.skipped)?;
            }
            write!(f, ")")
        } else {
            writeln!(
                f,
                "INVALID: {} violation(s) in {} checks",
                self.violations.len(),
                self.checked
            )?;
            for v in &self.violations {
                writeln!(f, "  {}: {}", v.check, v.witness)?;
            }
            Ok(())
        }
    }
}

/// Error wrapper for contexts where an invalid structure is fatal.
#[derive(Debug, thiserror::Error)]
#[error("{label}: {report}")]
pub struct InvalidStructure {
    pub label: String,
    pub report: ValidationReport,
}

impl InvalidStructure {
    pub fn new(label: impl Into<String>, report: ValidationReport) -> Self {
        InvalidStructure {
            label: label.into(),
            report,
        }
    }
}
