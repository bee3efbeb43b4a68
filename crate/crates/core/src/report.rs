//! Deterministic JSON, CSV and Markdown renderings of the search reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::classifier::{ClassificationReport, Length4Report, LongReport};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Md,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "md" | "markdown" => Ok(Format::Md),
            other => Err(Error::Parse(format!("unknown format {other:?} (json, csv, md)"))),
        }
    }
}

pub trait Report {
    fn to_json(&self) -> Value;
    fn to_csv(&self) -> String;
    fn to_markdown(&self) -> String;

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.to_json()).expect("json") + "\n",
            Format::Csv => self.to_csv(),
            Format::Md => self.to_markdown(),
        }
    }
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

fn socle_label(weights: &[u32]) -> String {
    weights.iter().map(|a| format!("V({a})")).collect::<Vec<_>>().join(",")
}

fn dashed(weights: &[u32]) -> String {
    weights.iter().map(u32::to_string).collect::<Vec<_>>().join("-")
}

impl Report for ClassificationReport {
    fn to_json(&self) -> Value {
        let found: Vec<Value> = self
            .found
            .iter()
            .map(|f| {
                json!({
                    "socle": f.socle,
                    "dim": f.rep.dim(),
                    "lambda": f.rep.corner_scalar().map(|l| l.to_string()),
                })
            })
            .collect();
        let rejected: Vec<Value> = self
            .rejected
            .iter()
            .map(|(s, reason)| {
                let mut v = serde_json::to_value(reason).expect("reason");
                v["socle"] = serde_json::to_value(s).expect("socle");
                v
            })
            .collect();
        json!({
            "m": self.spec.m(),
            "length": 3,
            "bound": self.bound,
            "matches_expected": self.matches_expected(),
            "found": found,
            "rejected": rejected,
        })
    }

    fn to_csv(&self) -> String {
        let mut rows: Vec<(Vec<u32>, Vec<String>)> = self
            .found
            .iter()
            .map(|f| {
                let w = f.socle.weights();
                let lambda = f.rep.corner_scalar().map(|l| l.to_string()).unwrap_or_default();
                (w.clone(), vec![dashed(&w), "found".into(), String::new(), lambda])
            })
            .chain(self.rejected.iter().map(|(s, r)| {
                let w = s.weights();
                (w.clone(), vec![dashed(&w), "rejected".into(), r.code().into(), String::new()])
            }))
            .collect();
        rows.sort_by(|x, y| x.0.cmp(&y.0));
        csv_string(&["socle", "status", "reason", "lambda"], rows.into_iter().map(|(_, r)| r))
    }

    fn to_markdown(&self) -> String {
        let mut out = String::new();
        let m = self.spec.m();
        let _ = writeln!(out, "## Faithful uniserial modules of length 3, m = {m}, labels ≤ {}\n", self.bound);
        let _ = writeln!(out, "| m | socle factors | dim | λ (canonical scaling) |");
        let _ = writeln!(out, "|---|---|---|---|");
        for f in &self.found {
            let lambda = f.rep.corner_scalar().map(|l| l.to_string()).unwrap_or_default();
            let _ = writeln!(out, "| {m} | {} | {} | {lambda} |", f.socle, f.rep.dim());
        }
        let mut reasons: BTreeMap<&str, usize> = BTreeMap::new();
        for (_, r) in &self.rejected {
            *reasons.entry(r.code()).or_default() += 1;
        }
        let _ = writeln!(out, "\n{} found, {} rejected:", self.found.len(), self.rejected.len());
        for (code, n) in reasons {
            let _ = writeln!(out, "- {code}: {n}");
        }
        let verdict = if self.matches_expected() { "matches" } else { "DOES NOT match" };
        let _ = writeln!(out, "\nFound set {verdict} the expected list.");
        out
    }
}

impl Report for Length4Report {
    fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("length-4 report");
        v["length"] = json!(4);
        v
    }

    fn to_csv(&self) -> String {
        let mut rows: Vec<Vec<String>> = self
            .survivors
            .iter()
            .map(|s| vec![dashed(s), "survivor".into()])
            .chain(self.obstructed.iter().map(|s| vec![dashed(s), "obstructed".into()]))
            .collect();
        rows.sort();
        csv_string(&["socle", "outcome"], rows)
    }

    fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "## Length 4, m = {}, labels ≤ {}\n", self.m, self.bound);
        let _ = writeln!(out, "| outcome | sequences |");
        let _ = writeln!(out, "|---|---|");
        for (k, n) in &self.counts {
            let _ = writeln!(out, "| {k} | {n} |");
        }
        let _ = writeln!(out);
        if self.no_survivors() {
            let _ = writeln!(out, "{} sequences examined: no faithful uniserial modules.", self.examined);
        } else {
            let _ = writeln!(out, "Unexplained survivors:");
            for s in &self.survivors {
                let _ = writeln!(out, "- {}", socle_label(s));
            }
        }
        out
    }
}

impl Report for LongReport {
    fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("long report")
    }

    fn to_csv(&self) -> String {
        let rows = self.admissible.iter().map(|s| {
            let faithful = self.faithful_candidates.contains(s);
            vec![dashed(s), if faithful { "faithful-candidate" } else { "z-acts-trivially" }.into()]
        });
        csv_string(&["socle", "outcome"], rows)
    }

    fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "## Length {}, m = {}, labels ≤ {}\n", self.ell, self.m, self.bound);
        let _ = writeln!(out, "| windows admissible | all progressions of step ±m | faithful candidates |");
        let _ = writeln!(out, "|---|---|---|");
        let _ = writeln!(
            out,
            "| {} | {} | {} |",
            self.admissible.len(),
            self.all_progressions,
            self.faithful_candidates.len()
        );
        let _ = writeln!(out);
        if self.no_faithful_candidates() {
            let _ = writeln!(out, "No faithful uniserial modules.");
        } else {
            for s in &self.faithful_candidates {
                let _ = writeln!(out, "- {}", socle_label(s));
            }
        }
        out
    }
}
