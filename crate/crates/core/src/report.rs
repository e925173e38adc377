//! Violation reports shared by the structural checkers.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Finding {
    /// Short stable identifier of the violated rule, e.g. `"d-squared"`.
    pub code: String,
    /// The generator, tuple, square or pair the violation is about.
    pub subject: String,
    pub detail: String,
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}: {}", self.code, self.subject, self.detail)
    }
}

/// An ordered list of findings. A report with no findings passes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub findings: Vec<Finding>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, code: &str, subject: impl Into<String>, detail: impl Into<String>) {
        self.findings.push(Finding {
            code: code.to_string(),
            subject: subject.into(),
            detail: detail.into(),
        });
    }

    pub fn extend(&mut self, other: Report) {
        self.findings.extend(other.findings);
    }

    /// Prefixes every subject, used when merging per-DGA reports into a system report.
    pub fn extend_scoped(&mut self, scope: &str, other: Report) {
        for mut f in other.findings {
            f.subject = format!("{scope}: {}", f.subject);
            self.findings.push(f);
        }
    }

    pub fn passed(&self) -> bool {
        self.findings.is_empty()
    }

    pub fn has(&self, code: &str) -> bool {
        self.findings.iter().any(|f| f.code == code)
    }

    pub fn sort(&mut self) {
        self.findings.sort();
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return f.write_str("pass");
        }
        for finding in &self.findings {
            writeln!(f, "{finding}")?;
        }
        Ok(())
    }
}
