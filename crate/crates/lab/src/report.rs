//! Experiment reports: per-check verdicts, witnesses and rendering.

use std::collections::BTreeMap;
use std::fmt::{Display, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::{Deserialize, Serialize};

use promotion_core::{Labeling, Poset};

use crate::error::Result;
use crate::io;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    fn tag(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        }
    }
}

/// Enough to reproduce a failure: the poset and, when relevant, the labeling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub poset: Poset,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labeling: Option<Labeling>,
    pub note: String,
}

impl Witness {
    pub fn new(poset: &Poset, labeling: Option<&Labeling>, note: impl Into<String>) -> Self {
        Witness {
            poset: poset.clone(),
            labeling: labeling.cloned(),
            note: note.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub subject: String,
    pub status: Status,
    /// Number of individual cases examined.
    pub cases: u64,
    pub detail: String,
    /// Computed quantities; counts are decimal strings.
    pub values: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Check {
    pub fn new(name: impl Into<String>, subject: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            subject: subject.into(),
            status: Status::Pass,
            cases: 0,
            detail: String::new(),
            values: BTreeMap::new(),
            witness: None,
        }
    }

    pub fn skipped(
        name: impl Into<String>,
        subject: impl Into<String>,
        reason: impl Into<String>,
    ) -> Self {
        let mut c = Check::new(name, subject);
        c.status = Status::Skipped;
        c.detail = reason.into();
        c
    }

    pub fn value(mut self, key: &str, v: impl Display) -> Self {
        self.values.insert(key.to_owned(), v.to_string());
        self
    }

    pub fn set(&mut self, key: &str, v: impl Display) {
        self.values.insert(key.to_owned(), v.to_string());
    }

    /// Marks the check failed; only the first failure's detail and witness are kept.
    pub fn fail(&mut self, detail: impl Into<String>, witness: Option<Witness>) {
        if self.status != Status::Fail {
            self.status = Status::Fail;
            self.detail = detail.into();
            self.witness = witness;
        }
    }

    pub fn expect(
        &mut self,
        ok: bool,
        detail: impl FnOnce() -> String,
        witness: impl FnOnce() -> Option<Witness>,
    ) {
        self.cases += 1;
        if !ok && self.status != Status::Fail {
            self.fail(detail(), witness());
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub title: String,
    pub params: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub elapsed_ms: u64,
}

impl ExperimentReport {
    pub fn new(title: impl Into<String>) -> Self {
        ExperimentReport {
            title: title.into(),
            params: BTreeMap::new(),
            checks: Vec::new(),
            elapsed_ms: 0,
        }
    }

    pub fn param(mut self, key: &str, v: impl Display) -> Self {
        self.params.insert(key.to_owned(), v.to_string());
        self
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: ExperimentReport) {
        self.checks.extend(other.checks);
    }

    pub fn set_elapsed(&mut self, d: Duration) {
        self.elapsed_ms = d.as_millis() as u64;
    }

    /// No check failed. Skipped checks neither pass nor fail the report.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn find(&self, name: &str) -> impl Iterator<Item = &Check> + '_ {
        let name = name.to_owned();
        self.checks.iter().filter(move |c| c.name == name)
    }

    pub fn exit_code(&self) -> u8 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "== {} ==", self.title).unwrap();
        for (k, v) in &self.params {
            writeln!(out, "param {k} = {v}").unwrap();
        }
        for c in &self.checks {
            write!(out, "{}  {}", c.status.tag(), c.name).unwrap();
            if !c.subject.is_empty() {
                write!(out, " [{}]", c.subject).unwrap();
            }
            if c.cases > 0 {
                write!(out, " ({} cases)", c.cases).unwrap();
            }
            if !c.detail.is_empty() {
                write!(out, ": {}", c.detail).unwrap();
            }
            out.push('\n');
            for (k, v) in &c.values {
                writeln!(out, "    {k} = {v}").unwrap();
            }
            if let Some(w) = &c.witness {
                let poset = serde_json::to_string(&w.poset).unwrap();
                writeln!(out, "    witness poset = {poset}").unwrap();
                if let Some(l) = &w.labeling {
                    writeln!(out, "    witness labeling = {:?}", l.labels()).unwrap();
                }
                if !w.note.is_empty() {
                    writeln!(out, "    witness note = {}", w.note).unwrap();
                }
            }
        }
        writeln!(
            out,
            "summary: {} passed, {} failed, {} skipped",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skipped)
        )
        .unwrap();
        writeln!(out, "elapsed_ms: {}", self.elapsed_ms).unwrap();
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).unwrap() + "\n"
    }

    /// Writes `<prefix>.witness<k>.poset.json` (and `.labeling.json` when a
    /// labeling is attached) for every failing check, in check order.
    pub fn write_witnesses(&self, prefix: &Path) -> Result<Vec<PathBuf>> {
        let mut written = Vec::new();
        for (k, w) in self
            .failures()
            .filter_map(|c| c.witness.as_ref())
            .enumerate()
        {
            let poset_path = with_suffix(prefix, &format!("witness{k}.poset.json"));
            io::write_json(&poset_path, &w.poset)?;
            written.push(poset_path);
            if let Some(l) = &w.labeling {
                let l_path = with_suffix(prefix, &format!("witness{k}.labeling.json"));
                io::write_json(&l_path, l)?;
                written.push(l_path);
            }
        }
        Ok(written)
    }
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(suffix);
    PathBuf::from(s)
}
