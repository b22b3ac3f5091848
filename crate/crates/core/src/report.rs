//! Result serialization for the command line: JSON, CSV and TeX.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::canonical::{label_key, BasisTableFile};
use crate::cluster::VerifyReport;
use crate::error::{Error, Result};

/// A named row of scalar results (crystal data, membership counts, ...).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub name: String,
    pub fields: BTreeMap<String, Value>,
}

impl Record {
    pub fn new(name: &str) -> Self {
        Record { name: name.to_string(), fields: BTreeMap::new() }
    }

    pub fn with(mut self, key: &str, v: impl Serialize) -> Self {
        self.fields.insert(key.to_string(), serde_json::to_value(v).unwrap_or(Value::Null));
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReportItem {
    BasisTable(BasisTableFile),
    Verification(VerifyReport),
    Record(Record),
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub items: Vec<ReportItem>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Tex,
}

pub fn emit_report(report: &Report, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(report)?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => emit_csv(report),
        Format::Tex => Ok(emit_tex(report).into_bytes()),
    }
}

pub fn parse_report(bytes: &[u8]) -> Result<Report> {
    Ok(serde_json::from_slice(bytes)?)
}

fn csv_err(e: csv::Error) -> Error {
    Error::InvalidArgument(format!("csv: {e}"))
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Shape of a CSV block: items of equal shape share one header.
fn csv_shape(item: &ReportItem) -> (u8, String, Vec<String>) {
    match item {
        ReportItem::BasisTable(_) => (0, String::new(), Vec::new()),
        ReportItem::Verification(_) => (1, String::new(), Vec::new()),
        ReportItem::Record(r) => (2, r.name.clone(), r.fields.keys().cloned().collect()),
    }
}

/// Consecutive items of one shape form a block under a single header;
/// blocks are separated by an empty line.
fn emit_csv(report: &Report) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    let mut last: Option<(u8, String, Vec<String>)> = None;
    for item in &report.items {
        let shape = csv_shape(item);
        let header = last.as_ref() != Some(&shape);
        if header && last.is_some() {
            out.extend(w.into_inner().map_err(|e| Error::InvalidArgument(e.to_string()))?);
            out.push(b'\n');
            w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
        }
        last = Some(shape);
        match item {
            ReportItem::BasisTable(t) => {
                if header {
                    w.write_record(["type", "word", "weight", "label", "pbw_norm", "transition", "canonical"])
                        .map_err(csv_err)?;
                }
                for (s, c) in t.labels.iter().enumerate() {
                    let row: Vec<String> = t.transition[s].iter().map(|p| p.to_string()).collect();
                    w.write_record([
                        t.type_name.clone(),
                        join(&t.word),
                        join(&t.weight.0),
                        label_key(c),
                        t.pbw_gram[s][s].to_string(),
                        row.join("; "),
                        serde_json::to_string(&t.canonical[s])?,
                    ])
                    .map_err(csv_err)?;
                }
            }
            ReportItem::Verification(r) => {
                if header {
                    w.write_record(["preset", "depth", "exponents", "label", "q_power", "status"]).map_err(csv_err)?;
                }
                for m in &r.monomials {
                    let exps: Vec<String> = m.exponents.iter().map(|(l, e)| format!("{l}:{e}")).collect();
                    w.write_record([
                        r.preset.clone(),
                        r.depth.to_string(),
                        exps.join(" "),
                        m.label.clone().unwrap_or_default(),
                        m.q_power.map(|p| p.to_string()).unwrap_or_default(),
                        m.status.clone(),
                    ])
                    .map_err(csv_err)?;
                }
            }
            ReportItem::Record(r) => {
                if header {
                    let mut head = vec!["name".to_string()];
                    head.extend(r.fields.keys().cloned());
                    w.write_record(&head).map_err(csv_err)?;
                }
                let mut row = vec![r.name.clone()];
                row.extend(r.fields.values().map(scalar));
                w.write_record(&row).map_err(csv_err)?;
            }
        }
    }
    out.extend(w.into_inner().map_err(|e| Error::InvalidArgument(e.to_string()))?);
    Ok(out)
}

/// Braces every exponent of a `q^k` term.
pub fn tex_poly(s: &str) -> String {
    let mut out = String::new();
    let mut chars = s.chars().peekable();
    while let Some(ch) = chars.next() {
        out.push(ch);
        if ch == '^' {
            out.push('{');
            while let Some(&d) = chars.peek() {
                if d == '-' || d.is_ascii_digit() {
                    out.push(d);
                    chars.next();
                } else {
                    break;
                }
            }
            out.push('}');
        }
    }
    out.replace(") / (", ")/(")
}

fn tex_escape(s: &str) -> String {
    s.replace('\\', "\\textbackslash{}").replace('_', "\\_").replace('&', "\\&").replace('%', "\\%").replace('#', "\\#")
}

fn emit_tex(report: &Report) -> String {
    let mut out = String::new();
    for item in &report.items {
        match item {
            ReportItem::BasisTable(t) => {
                let m = t.labels.len();
                let _ = writeln!(
                    out,
                    "% {} weight ({}), word {}",
                    tex_escape(&t.type_name),
                    join(&t.weight.0),
                    join(&t.word)
                );
                let _ = writeln!(out, "\\begin{{tabular}}{{c|{}}}", "c".repeat(m));
                let head: Vec<String> = t.labels.iter().map(|c| format!("$L({})$", label_key(c))).collect();
                let _ = writeln!(out, " & {} \\\\ \\hline", head.join(" & "));
                for (s, c) in t.labels.iter().enumerate() {
                    let row: Vec<String> = t.transition[s].iter().map(|p| format!("${}$", tex_poly(&p.to_string()))).collect();
                    let _ = writeln!(out, "$b({})$ & {} \\\\", label_key(c), row.join(" & "));
                }
                let _ = writeln!(out, "\\end{{tabular}}\n");
            }
            ReportItem::Verification(r) => {
                let _ = writeln!(out, "% {} depth {}", tex_escape(&r.preset), r.depth);
                let _ = writeln!(out, "\\begin{{tabular}}{{llrl}}");
                let _ = writeln!(out, "exponents & label & $q$-power & status \\\\ \\hline");
                for m in &r.monomials {
                    let exps: Vec<String> = m.exponents.iter().map(|(l, e)| format!("({l})^{e}")).collect();
                    let _ = writeln!(
                        out,
                        "${}$ & {} & {} & {} \\\\",
                        exps.join(""),
                        m.label.clone().unwrap_or_default(),
                        m.q_power.map(|p| p.to_string()).unwrap_or_default(),
                        tex_escape(&m.status)
                    );
                }
                let _ = writeln!(out, "\\end{{tabular}}\n");
            }
            ReportItem::Record(r) => {
                let _ = writeln!(out, "% {}", tex_escape(&r.name));
                let _ = writeln!(out, "\\begin{{tabular}}{{ll}}");
                for (k, v) in &r.fields {
                    let _ = writeln!(out, "{} & {} \\\\", tex_escape(k), tex_escape(&scalar(v)));
                }
                let _ = writeln!(out, "\\end{{tabular}}\n");
            }
        }
    }
    out
}
