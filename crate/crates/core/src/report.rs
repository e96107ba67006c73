//! Line-oriented verification reports: `PASS|FAIL <check-name> [detail ...]`.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub lines: Vec<CheckLine>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.lines.push(CheckLine { name: name.into(), passed, detail: detail.into() });
    }

    /// Records a check that passes when `violations` is empty; the first few
    /// violations are listed as its witness.
    pub fn push_violations(&mut self, name: impl Into<String>, checked: usize, mut violations: Vec<String>) {
        violations.sort();
        if violations.is_empty() {
            self.push(name, true, format!("{checked} checked"));
        } else {
            let shown: Vec<_> = violations.iter().take(5).cloned().collect();
            self.push(
                name,
                false,
                format!("{} of {checked} violated: {}", violations.len(), shown.join("; ")),
            );
        }
    }

    pub fn extend(&mut self, other: Report) {
        self.lines.extend(other.lines);
    }

    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.passed)
    }

    pub fn line(&self, name: &str) -> Option<&CheckLine> {
        self.lines.iter().find(|l| l.name == name)
    }
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        if self.detail.is_empty() {
            write!(f, "{tag} {}", self.name)
        } else {
            write!(f, "{tag} {} {}", self.name, self.detail)
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.lines {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}
