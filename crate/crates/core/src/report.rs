//! PASS/FAIL reports shared by the identity checks.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub label: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub title: String,
    pub notes: Vec<String>,
    pub lines: Vec<CheckLine>,
}

impl CheckReport {
    pub fn new(title: impl Into<String>) -> Self {
        CheckReport {
            title: title.into(),
            ..Default::default()
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn push(&mut self, label: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.lines.push(CheckLine {
            label: label.into(),
            pass,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckLine> {
        self.lines.iter().filter(|l| !l.pass)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {} ==", self.title)?;
        for n in &self.notes {
            writeln!(f, "# {n}")?;
        }
        for l in &self.lines {
            let tag = if l.pass { "PASS" } else { "FAIL" };
            if l.detail.is_empty() {
                writeln!(f, "{tag} {}", l.label)?;
            } else {
                writeln!(f, "{tag} {}: {}", l.label, l.detail)?;
            }
        }
        let failed = self.failures().count();
        write!(
            f,
            "{} of {} checks passed",
            self.lines.len() - failed,
            self.lines.len()
        )
    }
}
