//! Run reports with matching JSON and text renderings.

use std::fmt::Write;

use serde::Serialize;
use sha2::{Digest, Sha256};
use twocx_core::chain::{Homology, Report, Violation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyEntry {
    pub degree: String,
    pub rank: String,
    pub torsion: Vec<String>,
    pub group: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyTable {
    pub complex: String,
    pub degrees: Vec<HomologyEntry>,
}

impl HomologyTable {
    pub fn new(complex: &str, table: &[Homology]) -> Self {
        Self::from_degrees(complex, table.iter().enumerate())
    }

    pub fn from_degrees<'a>(complex: &str, table: impl IntoIterator<Item = (usize, &'a Homology)>) -> Self {
        HomologyTable {
            complex: complex.to_string(),
            degrees: table
                .into_iter()
                .map(|(d, h)| HomologyEntry {
                    degree: d.to_string(),
                    rank: h.rank.to_string(),
                    torsion: h.torsion.iter().map(ToString::to_string).collect(),
                    group: h.to_string(),
                })
                .collect(),
        }
    }
}

/// Outcome of one command. Wall-clock timing is kept out of the report so
/// repeated runs render identically; the binary prints it on stderr.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs_digest: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub homology: Vec<HomologyTable>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl RunReport {
    pub fn new(command: &str, inputs_digest: String) -> Self {
        RunReport {
            command: command.to_string(),
            inputs_digest,
            passed: true,
            checks: Vec::new(),
            homology: Vec::new(),
            error: None,
        }
    }

    pub fn check(&mut self, name: &str, passed: bool, detail: Option<String>) {
        self.passed &= passed;
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
        });
    }

    /// Records a check whose failure is described by the first violation.
    pub fn check_violation(&mut self, name: &str, violation: Option<&Violation>) {
        self.check(name, violation.is_none(), violation.map(ToString::to_string));
    }

    /// One check per label, in order, each carrying its first violation.
    pub fn check_labels(&mut self, prefix: &str, report: &Report, labels: &[&str]) {
        for &label in labels {
            let first = report.violations.iter().find(|v| v.check.starts_with(label));
            self.check_violation(&format!("{prefix}{label}"), first);
        }
    }

    pub fn fail(&mut self, error: String) {
        self.passed = false;
        self.error = Some(error);
    }

    pub fn first_failure(&self) -> Option<String> {
        self.checks
            .iter()
            .find(|c| !c.passed)
            .map(|c| match &c.detail {
                Some(d) => format!("{}: {d}", c.name),
                None => c.name.clone(),
            })
            .or_else(|| self.error.clone())
    }

    pub fn to_json(&self) -> String {
        crate::interchange::to_json(self)
    }

    pub fn to_text(&self) -> String {
        let verdict = |p: bool| if p { "pass" } else { "FAIL" };
        let mut s = String::new();
        writeln!(s, "command: {}", self.command).unwrap();
        writeln!(s, "inputs digest: {}", self.inputs_digest).unwrap();
        for c in &self.checks {
            write!(s, "[{}] {}", verdict(c.passed), c.name).unwrap();
            if let Some(d) = &c.detail {
                write!(s, " ({d})").unwrap();
            }
            s.push('\n');
        }
        for t in &self.homology {
            writeln!(s, "homology of {}:", t.complex).unwrap();
            for e in &t.degrees {
                writeln!(s, "  H{} = {}", e.degree, e.group).unwrap();
            }
        }
        if let Some(e) = &self.error {
            writeln!(s, "error: {e}").unwrap();
        }
        writeln!(s, "verdict: {}", verdict(self.passed)).unwrap();
        s
    }
}

/// SHA-256 over the command, its options, and the input file contents, each
/// length-prefixed.
pub fn inputs_digest(command: &str, options: &[(&str, String)], files: &[&str]) -> String {
    let mut h = Sha256::new();
    let mut feed = |bytes: &[u8]| {
        h.update((bytes.len() as u64).to_le_bytes());
        h.update(bytes);
    };
    feed(command.as_bytes());
    for (k, v) in options {
        feed(k.as_bytes());
        feed(v.as_bytes());
    }
    for f in files {
        feed(f.as_bytes());
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}
