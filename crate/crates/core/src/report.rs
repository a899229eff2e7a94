//! JSON-lines check reports and the exit-code convention.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{CatError, Result};
use crate::verdict::{Outcome, Verdict, Witness};

/// One line of a run report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportLine {
    pub check: String,
    pub instance: String,
    pub system: Option<String>,
    pub relation: Option<String>,
    #[serde(rename = "sampleSpec")]
    pub sample_spec: String,
    pub verdict: Outcome,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
    /// The command and configuration that produced the line, for replay.
    pub config: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed: Option<f64>,
}

impl ReportLine {
    pub fn verdict(&self) -> Verdict {
        match self.verdict {
            Outcome::Holds => Verdict::Holds,
            Outcome::Fails => Verdict::fails(self.witness.clone().unwrap_or_else(|| Witness::new("unrecorded"))),
            Outcome::Unknown => Verdict::unknown(self.bound.clone().unwrap_or_default()),
        }
    }

    pub fn set_verdict(&mut self, v: &Verdict) {
        self.verdict = v.outcome();
        self.witness = v.witness().cloned();
        self.bound = match v {
            Verdict::Unknown { bound } => Some(bound.clone()),
            _ => None,
        };
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report lines serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{:<48} {:<8}", self.check, format!("{:?}", self.verdict).to_lowercase());
        if let Some(w) = &self.witness {
            out.push_str(&format!(" {w}"));
        }
        if let Some(b) = &self.bound {
            out.push_str(&format!(" ({b})"));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

pub fn write_lines<W: Write>(out: &mut W, lines: &[ReportLine], format: Format) -> io::Result<()> {
    for line in lines {
        match format {
            Format::Json => writeln!(out, "{}", line.to_json())?,
            Format::Text => writeln!(out, "{}", line.to_text())?,
        }
    }
    Ok(())
}

pub fn parse_lines(s: &str) -> Result<Vec<ReportLine>> {
    s.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| CatError::parse(format!("line {}", i + 1), e.to_string())))
        .collect()
}

/// 0 when every check holds, 1 when any fails, 2 when some are unknown and
/// none fail.
pub fn exit_code(lines: &[ReportLine]) -> i32 {
    if lines.iter().any(|l| l.verdict == Outcome::Fails) {
        1
    } else if lines.iter().any(|l| l.verdict == Outcome::Unknown) {
        2
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(v: Verdict) -> ReportLine {
        let mut l = ReportLine {
            check: "c".into(),
            instance: "i".into(),
            system: None,
            relation: None,
            sample_spec: "s".into(),
            verdict: Outcome::Holds,
            witness: None,
            bound: None,
            detail: None,
            config: Value::Null,
            elapsed: None,
        };
        l.set_verdict(&v);
        l
    }

    #[test]
    fn exit_codes() {
        let f = line(Verdict::fails(Witness::new("x")));
        let u = line(Verdict::unknown("b"));
        let h = line(Verdict::Holds);
        assert_eq!(exit_code(&[h.clone()]), 0);
        assert_eq!(exit_code(&[h.clone(), u.clone()]), 2);
        assert_eq!(exit_code(&[u, f, h]), 1);
    }

    #[test]
    fn round_trips_and_uses_sample_spec_key() {
        let l = line(Verdict::fails(Witness::new("eq").text("f", "2>1:0,0")));
        let s = l.to_json();
        assert!(s.contains("\"sampleSpec\":\"s\""));
        assert!(!s.contains("elapsed"));
        assert_eq!(parse_lines(&s).unwrap(), vec![l]);
    }
}
