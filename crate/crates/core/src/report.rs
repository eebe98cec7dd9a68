//! Structured records of checked identities.

use std::fmt;

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Where an identity breaks: basis indices plus a readable description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub detail: String,
}

impl Witness {
    pub fn new(indices: Vec<usize>, detail: impl Into<String>) -> Self {
        Witness { indices, detail: detail.into() }
    }

    pub fn at(index: usize, detail: impl Into<String>) -> Self {
        Witness { indices: vec![index], detail: detail.into() }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {:?}", self.detail, self.indices)
    }
}

/// `Ok(())` for a passing check, the witness otherwise.
pub type Outcome = Result<(), Witness>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub check_id: String,
    pub statement: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub subject: String,
    pub entries: Vec<Entry>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        VerificationReport { schema: SCHEMA_VERSION, subject: subject.into(), entries: Vec::new(), summary: Summary::default() }
    }

    pub fn record(&mut self, check_id: impl Into<String>, statement: impl Into<String>, outcome: Outcome) {
        let (status, witness) = match outcome {
            Ok(()) => (Status::Pass, None),
            Err(w) => (Status::Fail, Some(w)),
        };
        self.push(Entry { check_id: check_id.into(), statement: statement.into(), status, witness });
    }

    pub fn skip(&mut self, check_id: impl Into<String>, statement: impl Into<String>, reason: impl Into<String>) {
        self.push(Entry {
            check_id: check_id.into(),
            statement: statement.into(),
            status: Status::Skipped,
            witness: Some(Witness::new(vec![], reason)),
        });
    }

    pub fn push(&mut self, entry: Entry) {
        match entry.status {
            Status::Pass => self.summary.passed += 1,
            Status::Fail => self.summary.failed += 1,
            Status::Skipped => self.summary.skipped += 1,
        }
        self.summary.total += 1;
        let pos = self.entries.partition_point(|e| e.check_id <= entry.check_id);
        self.entries.insert(pos, entry);
    }

    /// Appends all entries of `other`, prefixing their ids.
    pub fn merge(&mut self, prefix: &str, other: VerificationReport) {
        for mut e in other.entries {
            if !prefix.is_empty() {
                e.check_id = format!("{prefix}.{}", e.check_id);
            }
            self.push(e);
        }
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn entry(&self, check_id: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.check_id == check_id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| e.status == Status::Fail)
    }

    pub fn status_of(&self, check_id: &str) -> Option<Status> {
        self.entry(check_id).map(|e| e.status)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.subject)?;
        for e in &self.entries {
            let tag = match e.status {
                Status::Pass => "ok  ",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            write!(f, "  [{tag}] {}  {}", e.check_id, e.statement)?;
            if e.status != Status::Pass {
                if let Some(w) = &e.witness {
                    write!(f, "\n         witness: {w}")?;
                }
            }
            writeln!(f)?;
        }
        let s = &self.summary;
        if s.failed == 0 {
            write!(f, "all {} checks passed", s.passed)?;
            if s.skipped > 0 {
                write!(f, " ({} skipped)", s.skipped)?;
            }
            Ok(())
        } else {
            write!(f, "{} of {} checks failed", s.failed, s.total)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_sorted_and_counted() {
        let mut r = VerificationReport::new("x");
        r.record("b.two", "second", Ok(()));
        r.record("a.one", "first", Err(Witness::at(1, "boom")));
        r.skip("c.three", "third", "not applicable");
        let ids: Vec<_> = r.entries.iter().map(|e| e.check_id.as_str()).collect();
        assert_eq!(ids, ["a.one", "b.two", "c.three"]);
        assert_eq!(r.summary, Summary { total: 3, passed: 1, failed: 1, skipped: 1 });
        assert!(!r.passed());
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<VerificationReport>(&json).unwrap(), r);
        assert!(json.contains("\"schema\":1"));
    }
}
