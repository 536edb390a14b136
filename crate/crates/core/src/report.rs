//! Verification reports: named checks with residuals, tolerances and
//! counterexamples, written as newline-delimited JSON.

use std::io::{BufRead, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A printed form disagrees with the value generated from the algebra;
    /// the generated value is used and the discrepancy is recorded, not failed.
    Flagged,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub description: String,
    pub anchor: String,
    pub status: Status,
    pub residual: f64,
    pub tolerance: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

impl Check {
    /// Pass iff `residual <= tolerance` (NaN fails).
    pub fn measured(id: impl Into<String>, description: impl Into<String>, anchor: impl Into<String>, residual: f64, tolerance: f64) -> Check {
        let status = if residual <= tolerance { Status::Pass } else { Status::Fail };
        Check {
            id: id.into(),
            description: description.into(),
            anchor: anchor.into(),
            status,
            residual,
            tolerance,
            counterexample: None,
        }
    }

    /// Boolean check recorded with residual 0 or 1.
    pub fn holds(id: impl Into<String>, description: impl Into<String>, anchor: impl Into<String>, ok: bool) -> Check {
        Check::measured(id, description, anchor, if ok { 0.0 } else { 1.0 }, 0.0)
    }

    /// Turn a failing comparison against a known-bad printed form into a flag.
    pub fn flag_if_failed(mut self) -> Check {
        if self.status == Status::Fail {
            self.status = Status::Flagged;
        }
        self
    }

    pub fn with_counterexample(mut self, v: Value) -> Check {
        if self.status != Status::Pass {
            self.counterexample = Some(v);
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub flagged: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub suite: String,
    pub seed: u64,
    pub fingerprint: String,
    pub checks: Vec<Check>,
}

pub fn fingerprint() -> String {
    format!(
        "octonic-{} {}-{} parallel={}",
        env!("CARGO_PKG_VERSION"),
        std::env::consts::ARCH,
        std::env::consts::OS,
        cfg!(feature = "parallel")
    )
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, seed: u64) -> VerificationReport {
        VerificationReport {
            schema_version: SCHEMA_VERSION,
            suite: suite.into(),
            seed,
            fingerprint: fingerprint(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn sort(&mut self) {
        self.checks.sort_by(|a, b| a.id.cmp(&b.id));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn find(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// Checks whose id starts with `prefix`.
    pub fn with_prefix<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a Check> + 'a {
        self.checks.iter().filter(move |c| c.id.starts_with(prefix))
    }

    pub fn summary(&self) -> Summary {
        let mut s = Summary { total: self.checks.len(), ..Summary::default() };
        for c in &self.checks {
            match c.status {
                Status::Pass => s.passed += 1,
                Status::Fail => s.failed += 1,
                Status::Flagged => s.flagged += 1,
            }
        }
        s
    }

    pub fn write_ndjson<W: Write>(&self, mut w: W) -> Result<()> {
        let header = json!({
            "type": "header",
            "schema_version": self.schema_version,
            "suite": self.suite,
            "seed": self.seed,
            "fingerprint": self.fingerprint,
        });
        writeln!(w, "{header}")?;
        for c in &self.checks {
            let mut v = serde_json::to_value(c)?;
            v["type"] = json!("check");
            writeln!(w, "{v}")?;
        }
        let mut s = serde_json::to_value(self.summary())?;
        s["type"] = json!("summary");
        writeln!(w, "{s}")?;
        Ok(())
    }

    pub fn to_ndjson(&self) -> String {
        let mut buf = Vec::new();
        self.write_ndjson(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("json is utf-8")
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let f = std::fs::File::create(path)?;
        self.write_ndjson(std::io::BufWriter::new(f))
    }

    pub fn read_ndjson<R: BufRead>(r: R) -> Result<VerificationReport> {
        let mut report: Option<VerificationReport> = None;
        for line in r.lines() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let mut v: Value = serde_json::from_str(&line)?;
            let kind = v["type"].as_str().unwrap_or_default().to_string();
            match kind.as_str() {
                "header" => {
                    report = Some(VerificationReport {
                        schema_version: v["schema_version"].as_u64().unwrap_or(0) as u32,
                        suite: v["suite"].as_str().unwrap_or_default().to_string(),
                        seed: v["seed"].as_u64().unwrap_or(0),
                        fingerprint: v["fingerprint"].as_str().unwrap_or_default().to_string(),
                        checks: Vec::new(),
                    })
                }
                "check" => {
                    let r = report.as_mut().ok_or_else(|| Error::Io("check before header".into()))?;
                    v.as_object_mut().map(|o| o.remove("type"));
                    if v["residual"].is_null() {
                        v["residual"] = json!(f64::MAX);
                    }
                    r.checks.push(serde_json::from_value(v)?);
                }
                "summary" => {}
                other => return Err(Error::Io(format!("unknown record type {other:?}"))),
            }
        }
        report.ok_or_else(|| Error::Io("empty report".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_follows_tolerance() {
        assert_eq!(Check::measured("a", "", "", 1e-13, 1e-12).status, Status::Pass);
        assert_eq!(Check::measured("a", "", "", 1e-11, 1e-12).status, Status::Fail);
        assert_eq!(Check::measured("a", "", "", f64::NAN, 1e-12).status, Status::Fail);
        assert_eq!(Check::measured("a", "", "", 1.0, 0.0).flag_if_failed().status, Status::Flagged);
    }

    #[test]
    fn ndjson_round_trip() {
        let mut r = VerificationReport::new("demo", 7);
        r.push(Check::measured("b", "second", "x", 0.0, 1e-12));
        r.push(Check::measured("a", "first", "y", 2.0, 1.0).with_counterexample(json!({"cell": [1, 2]})));
        r.sort();
        let text = r.to_ndjson();
        assert_eq!(text.lines().count(), 4);
        let back = VerificationReport::read_ndjson(text.as_bytes()).unwrap();
        assert_eq!(back, r);
        let s = back.summary();
        assert_eq!((s.total, s.passed, s.failed, s.flagged), (2, 1, 1, 0));
        assert!(!back.passed());
    }
}
