//! Verification results and their text, JSON and CSV renderings.

use std::fmt;
use std::time::Duration;

use serde::ser::Serializer;
use serde::Serialize;

use crate::arbreal::ArbReal;
use crate::expr::Env;
use crate::seriesdsl::Kind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Digits {
    Exact,
    Value(i64),
}

impl fmt::Display for Digits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Digits::Exact => f.write_str("exact"),
            Digits::Value(d) => write!(f, "{d}"),
        }
    }
}

impl Serialize for Digits {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Digits::Exact => s.serialize_str("exact"),
            Digits::Value(d) => s.serialize_i64(*d),
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerificationResult {
    pub id: String,
    pub binding: Env,
    pub kind: Kind,
    pub status: Status,
    pub abs_diff: Option<ArbReal>,
    /// `None` for exactly checked kinds.
    pub digits_requested: Option<u32>,
    pub digits_achieved: Option<Digits>,
    pub terms_used: u64,
    pub elapsed: Duration,
    pub as_printed: bool,
    pub message: Option<String>,
    pub convergence_failure: bool,
}

impl VerificationResult {
    fn requested_label(&self) -> String {
        self.digits_requested.map(|d| d.to_string()).unwrap_or_else(|| "exact".into())
    }

    fn achieved_label(&self) -> String {
        self.digits_achieved.map(|d| d.to_string()).unwrap_or_else(|| "-".into())
    }

    fn abs_diff_label(&self) -> Option<String> {
        self.abs_diff.as_ref().map(|d| d.to_sci_string(6))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub error: usize,
}

#[derive(Clone, Debug, Default)]
pub struct VerificationReport {
    pub results: Vec<VerificationResult>,
    pub summary: Summary,
}

#[derive(Serialize)]
struct JsonRow<'a> {
    id: &'a str,
    binding: String,
    kind: Kind,
    status: Status,
    as_printed: bool,
    digits_requested: Option<u32>,
    digits_achieved: Option<Digits>,
    abs_diff: Option<String>,
    terms: u64,
    seconds: f64,
    message: Option<&'a str>,
}

impl VerificationReport {
    pub fn new(results: Vec<VerificationResult>) -> Self {
        let mut summary = Summary { total: results.len(), ..Summary::default() };
        for r in &results {
            match r.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Error => summary.error += 1,
            }
        }
        VerificationReport { results, summary }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let idw = self.results.iter().map(|r| r.id.len()).max().unwrap_or(2).max(2);
        for r in &self.results {
            let binding = if r.binding.is_empty() { "-".to_string() } else { r.binding.label() };
            s += &format!(
                "{:<5} {:<idw$}  {:<14} {:<9} digits {:>5}/{:<5} terms {:>6}  {:>8.3}s",
                r.status.to_string().to_uppercase(),
                r.id,
                binding,
                r.kind.name(),
                r.achieved_label(),
                r.requested_label(),
                r.terms_used,
                r.elapsed.as_secs_f64(),
            );
            if r.status != Status::Pass {
                if let Some(d) = r.abs_diff_label() {
                    s += &format!("  |diff| {d}");
                }
            }
            if r.as_printed {
                s += "  [as printed]";
            }
            if let Some(m) = &r.message {
                s += &format!("  ({m})");
            }
            s.push('\n');
        }
        let m = &self.summary;
        s += &format!("{} results: {} pass, {} fail, {} error\n", m.total, m.pass, m.fail, m.error);
        s
    }

    fn rows(&self) -> impl Iterator<Item = JsonRow<'_>> {
        self.results.iter().map(|r| JsonRow {
            id: &r.id,
            binding: r.binding.label(),
            kind: r.kind,
            status: r.status,
            as_printed: r.as_printed,
            digits_requested: r.digits_requested,
            digits_achieved: r.digits_achieved,
            abs_diff: r.abs_diff_label(),
            terms: r.terms_used,
            seconds: r.elapsed.as_secs_f64(),
            message: r.message.as_deref(),
        })
    }

    /// JSON array with one object per result.
    pub fn to_json(&self) -> String {
        let rows: Vec<JsonRow> = self.rows().collect();
        serde_json::to_string_pretty(&rows).expect("report serializes") + "\n"
    }

    /// CSV with header `id,binding,kind,status,digits_requested,digits_achieved,terms,seconds`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["id", "binding", "kind", "status", "digits_requested", "digits_achieved", "terms", "seconds"])
            .expect("in-memory write");
        for r in &self.results {
            w.write_record([
                r.id.clone(),
                r.binding.label(),
                r.kind.name().to_string(),
                r.status.to_string(),
                r.requested_label(),
                r.achieved_label(),
                r.terms_used.to_string(),
                format!("{:.6}", r.elapsed.as_secs_f64()),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }
}
