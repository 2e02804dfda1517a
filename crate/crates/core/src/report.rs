//! Line-delimited JSON verification reports.

use std::io::{self, Write};
use std::time::Duration;

use serde_json::{json, Map, Value};

use crate::intertwiner::CheckOutcome;
use crate::logseries::{window_json, TruncationWindow, Witness};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn witness_json(w: &Witness) -> Value {
    json!({
        "k": w.k,
        "log": w.j,
        "exponent": w.exponent.to_string(),
        "difference": w.difference.to_lines(),
    })
}

/// One verification result. A failing record always carries a witness.
#[derive(Clone, Debug, PartialEq)]
pub struct Record {
    pub check: String,
    pub spec: String,
    pub window: Option<TruncationWindow>,
    pub pass: bool,
    pub witness: Option<Value>,
    pub detail: Value,
}

impl Record {
    pub fn new(check: impl Into<String>, spec: impl Into<String>) -> Self {
        Record {
            check: check.into(),
            spec: spec.into(),
            window: None,
            pass: true,
            witness: None,
            detail: Value::Null,
        }
    }

    pub fn window(mut self, w: TruncationWindow) -> Self {
        self.window = Some(w);
        self
    }

    pub fn detail(mut self, d: Value) -> Self {
        self.detail = d;
        self
    }

    /// Passes iff `ok`; otherwise fails with `witness`, computed lazily.
    pub fn expect<F: FnOnce() -> Value>(mut self, ok: bool, witness: F) -> Self {
        self.pass = ok;
        self.witness = if ok { None } else { Some(witness()) };
        self
    }

    pub fn from_outcome(check: impl Into<String>, spec: impl Into<String>, c: &CheckOutcome) -> Self {
        let mut r = Record::new(check, spec).window(c.window);
        r.pass = c.pass;
        r.witness = c.witness.as_ref().map(witness_json);
        if !r.pass && r.witness.is_none() {
            r.witness = Some(json!("check failed without a differing coefficient"));
        }
        r
    }

    pub fn to_json(&self) -> Value {
        json!({
            "record": "check",
            "check": self.check,
            "spec": self.spec,
            "window": self.window.as_ref().map(window_json),
            "result": if self.pass { "pass" } else { "fail" },
            "witness": self.witness,
            "detail": self.detail,
        })
    }
}

/// A command run: config echo, records, timing.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub command: String,
    pub config: Map<String, Value>,
    pub records: Vec<Record>,
    pub wall_time: Duration,
}

impl Report {
    pub fn new(command: impl Into<String>, config: Map<String, Value>) -> Self {
        Report {
            command: command.into(),
            config,
            ..Default::default()
        }
    }

    pub fn push(&mut self, r: Record) {
        self.records.push(r);
    }

    pub fn failures(&self) -> usize {
        self.records.iter().filter(|r| !r.pass).count()
    }

    pub fn all_pass(&self) -> bool {
        self.failures() == 0
    }

    /// Header line, one line per record, summary line. Only `wall_ms` in the
    /// summary depends on anything but the config.
    pub fn to_lines(&self) -> Vec<String> {
        let mut out = vec![json!({
            "record": "header",
            "command": self.command,
            "engine_version": ENGINE_VERSION,
            "config": self.config,
        })
        .to_string()];
        out.extend(self.records.iter().map(|r| r.to_json().to_string()));
        out.push(
            json!({
                "record": "summary",
                "command": self.command,
                "checks": self.records.len(),
                "failed": self.failures(),
                "wall_ms": self.wall_time.as_millis() as u64,
            })
            .to_string(),
        );
        out
    }

    pub fn write_to<W: Write>(&self, mut w: W) -> io::Result<()> {
        for line in self.to_lines() {
            writeln!(w, "{line}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failing_record_has_witness() {
        let r = Record::new("x", "s").expect(false, || json!("bad"));
        assert!(!r.pass);
        assert_eq!(r.to_json()["witness"], json!("bad"));
        let mut rep = Report::new("demo", Map::new());
        rep.push(r);
        rep.push(Record::new("y", "s"));
        let lines = rep.to_lines();
        assert_eq!(lines.len(), 4);
        let last: Value = serde_json::from_str(&lines[3]).unwrap();
        assert_eq!(last["failed"], json!(1));
    }
}
