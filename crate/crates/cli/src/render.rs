//! Command output. Every command builds one ordered JSON document; the text
//! format is a direct rendering of that document, so both carry the same
//! information.

use std::fmt::Write;

use clap::ValueEnum;
use kummerlab::clifford::CliffordAlgebra;
use kummerlab::kummer::{Status, SuiteReport};
use kummerlab::quadform::{EmbeddingVerdict, InvariantProfile};
use kummerlab::{BigInt, BigUint};
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

pub struct Document(Value);

impl Document {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Machine => {
                let mut s = serde_json::to_string_pretty(&self.0).expect("JSON values serialize");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut s = String::new();
                text(&self.0, 0, &mut s);
                s
            }
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.is_empty() => Some("none".into()),
        _ => None,
    }
}

fn text(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                match scalar(v) {
                    Some(s) => writeln!(out, "{pad}{k}: {s}").expect("writing to a String"),
                    None => {
                        writeln!(out, "{pad}{k}:").expect("writing to a String");
                        text(v, indent + 2, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => writeln!(out, "{pad}- {s}").expect("writing to a String"),
                    None => {
                        // nested block with its first line marked as a list item
                        let mut inner = String::new();
                        text(item, indent + 2, &mut inner);
                        let marked = inner.replacen(&format!("{pad}  "), &format!("{pad}- "), 1);
                        out.push_str(&marked);
                    }
                }
            }
        }
        other => {
            writeln!(out, "{pad}{}", scalar(other).expect("scalar")).expect("writing to a String");
        }
    }
}

fn int(x: &BigInt) -> Value {
    i64::try_from(x)
        .map(Value::from)
        .unwrap_or_else(|_| Value::String(x.to_string()))
}

fn uint(x: &BigUint) -> Value {
    u64::try_from(x)
        .map(Value::from)
        .unwrap_or_else(|_| Value::String(x.to_string()))
}

fn profile(p: &InvariantProfile) -> Value {
    let hasse: Map<String, Value> = p
        .hasse
        .iter()
        .map(|(place, s)| (place.to_string(), Value::from(*s)))
        .collect();
    json!({
        "dim": p.dim,
        "signature": { "positive": p.signature.0, "negative": p.signature.1 },
        "disc_class": int(&p.disc_class),
        "hasse": hasse,
    })
}

fn with_name(name: &str, rest: Value) -> Value {
    let mut map = Map::new();
    map.insert("lattice".into(), Value::from(name));
    if let Value::Object(rest) = rest {
        map.extend(rest);
    }
    Value::Object(map)
}

pub fn invariants(name: &str, p: &InvariantProfile) -> Document {
    Document(with_name(name, profile(p)))
}

pub fn eligibility(
    name: &str,
    p: &InvariantProfile,
    target: &str,
    verdict: &EmbeddingVerdict,
) -> Document {
    let obstructions: Vec<Value> = verdict
        .obstructions
        .iter()
        .map(|o| {
            json!({
                "place": o.place.as_ref().map(|pl| pl.to_string()),
                "code": o.code.as_str(),
            })
        })
        .collect();
    Document(json!({
        "lattice": name,
        "invariants": profile(p),
        "target": target,
        "verdict": if verdict.embeds { "ELIGIBLE" } else { "NOT ELIGIBLE" },
        "complement": verdict.complement.as_ref().map(profile),
        "obstructions": obstructions,
    }))
}

fn status(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Skipped => "SKIP",
        Status::Info => "INFO",
    }
}

pub fn fixed_locus(level: u32, reports: &[SuiteReport]) -> Document {
    let suites: Vec<Value> = reports
        .iter()
        .map(|r| {
            let checks: Vec<Value> = r
                .checks
                .iter()
                .map(|c| {
                    let mut m = Map::new();
                    m.insert("check".into(), Value::from(c.name.as_str()));
                    m.insert("status".into(), Value::from(status(c.status)));
                    if let Some(e) = c.expected {
                        m.insert("expected".into(), Value::from(e));
                    }
                    if let Some(o) = c.observed {
                        m.insert("observed".into(), Value::from(o));
                    }
                    if let Some(n) = &c.note {
                        m.insert("note".into(), Value::from(n.as_str()));
                    }
                    if let Some(w) = &c.witness {
                        m.insert("witness".into(), Value::from(w.as_str()));
                    }
                    Value::Object(m)
                })
                .collect();
            json!({
                "lemma": r.suite.id(),
                "title": r.title,
                "status": if r.passed() { "PASS" } else { "FAIL" },
                "checks": checks,
            })
        })
        .collect();
    let passed = reports.iter().all(SuiteReport::passed);
    Document(json!({
        "level": level,
        "suites": suites,
        "result": if passed { "PASS" } else { "FAIL" },
    }))
}

pub fn clifford_info(name: &str, a: &CliffordAlgebra, ks: Option<&BigUint>) -> Document {
    let squares: Vec<Value> = a
        .generator_squares()
        .iter()
        .map(|q| Value::from(q.to_string()))
        .collect();
    Document(json!({
        "lattice": name,
        "rank": a.rank(),
        "dimension": uint(&BigUint::from(a.dimension())),
        "even_dimension": uint(&BigUint::from(a.even_dimension())),
        "ks_dimension": ks.map(uint),
        "generator_squares": squares,
    }))
}

pub fn ks_dimension(name: &str, rank: usize, ks: &BigUint) -> Document {
    Document(json!({
        "lattice": name,
        "rank": rank,
        "ks_dimension": uint(ks),
    }))
}
