//! Report serialization (JSON lines, CSV, aligned text), parsing and diffs.
//!
//! Every format starts with the effective run configuration as ordered
//! `key = value` pairs so a report can be reproduced from its header alone.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::record::{Params, ResidualRecord};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            _ => Err(Error::Config(format!(
                "unknown format `{s}` (expected json, csv or text)"
            ))),
        }
    }
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "text",
        }
    }
}

/// A parsed or freshly assembled report.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub header: Vec<(String, String)>,
    pub records: Vec<ResidualRecord>,
}

const COLUMNS: [&str; 21] = [
    "suite",
    "equation",
    "tau_re",
    "tau_im",
    "u_re",
    "u_im",
    "v_re",
    "v_im",
    "m_re",
    "m_im",
    "n",
    "k_re",
    "k_im",
    "a",
    "b",
    "c",
    "residual",
    "tolerance",
    "pass",
    "skipped",
    "reason",
];

/// Flat row shared by the CSV writer and reader.
#[derive(Serialize, Deserialize)]
struct Row {
    suite: String,
    equation: String,
    tau_re: f64,
    tau_im: f64,
    u_re: f64,
    u_im: f64,
    v_re: f64,
    v_im: f64,
    m_re: f64,
    m_im: f64,
    n: i64,
    k_re: f64,
    k_im: f64,
    a: i64,
    b: i64,
    c: i64,
    #[serde(with = "crate::record::lenient_f64")]
    residual: f64,
    tolerance: f64,
    pass: bool,
    skipped: bool,
    reason: Option<String>,
}

impl From<&ResidualRecord> for Row {
    fn from(r: &ResidualRecord) -> Self {
        let p = &r.params;
        Row {
            suite: r.suite.clone(),
            equation: r.equation.clone(),
            tau_re: p.tau_re,
            tau_im: p.tau_im,
            u_re: p.u_re,
            u_im: p.u_im,
            v_re: p.v_re,
            v_im: p.v_im,
            m_re: p.m_re,
            m_im: p.m_im,
            n: p.n,
            k_re: p.k_re,
            k_im: p.k_im,
            a: p.a,
            b: p.b,
            c: p.c,
            residual: r.residual,
            tolerance: r.tolerance,
            pass: r.pass,
            skipped: r.skipped,
            reason: r.reason.clone(),
        }
    }
}

impl From<Row> for ResidualRecord {
    fn from(r: Row) -> Self {
        ResidualRecord {
            suite: r.suite,
            equation: r.equation,
            params: Params {
                tau_re: r.tau_re,
                tau_im: r.tau_im,
                u_re: r.u_re,
                u_im: r.u_im,
                v_re: r.v_re,
                v_im: r.v_im,
                m_re: r.m_re,
                m_im: r.m_im,
                n: r.n,
                k_re: r.k_re,
                k_im: r.k_im,
                a: r.a,
                b: r.b,
                c: r.c,
            },
            residual: r.residual,
            tolerance: r.tolerance,
            pass: r.pass,
            skipped: r.skipped,
            reason: r.reason.filter(|s| !s.is_empty()),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct JsonHeader {
    config: serde_json::Map<String, serde_json::Value>,
}

fn parse_err(what: impl std::fmt::Display) -> Error {
    Error::Parse(what.to_string())
}

impl Report {
    pub fn new(header: Vec<(String, String)>, records: Vec<ResidualRecord>) -> Self {
        Report { header, records }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
            Format::Text => self.to_text(),
        }
    }

    /// First line `{"config":{...}}`, then one record object per line.
    pub fn to_json(&self) -> String {
        let config = self
            .header
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
            .collect();
        let mut out = serde_json::to_string(&JsonHeader { config }).expect("header serializes");
        out.push('\n');
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("record serializes"));
            out.push('\n');
        }
        out
    }

    /// `# key = value` comment lines, then a CSV table with flattened params.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.header {
            let _ = writeln!(out, "# {k} = {v}");
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.records {
            w.serialize(Row::from(r)).expect("row serializes");
        }
        if self.records.is_empty() {
            w.write_record(COLUMNS).expect("header row");
        }
        out.push_str(&String::from_utf8(w.into_inner().expect("flush")).expect("utf8"));
        out
    }

    /// Aligned table; the free-text reason is the last column.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.header {
            let _ = writeln!(out, "# {k} = {v}");
        }
        let rows: Vec<[String; 20]> = self.records.iter().map(text_cells).collect();
        let mut widths = [0usize; 20];
        for (i, h) in COLUMNS[..20].iter().enumerate() {
            widths[i] = h.len();
        }
        for row in &rows {
            for (i, cell) in row.iter().enumerate() {
                widths[i] = widths[i].max(cell.len());
            }
        }
        let line = |cells: &[&str], reason: &str| {
            let mut s = String::new();
            for (i, c) in cells.iter().enumerate() {
                let _ = write!(s, "{:<w$}  ", c, w = widths[i]);
            }
            s.push_str(reason);
            s.trim_end().to_string()
        };
        let head: Vec<&str> = COLUMNS[..20].to_vec();
        out.push_str(&line(&head, "reason"));
        out.push('\n');
        for (row, r) in rows.iter().zip(&self.records) {
            let cells: Vec<&str> = row.iter().map(String::as_str).collect();
            out.push_str(&line(&cells, r.reason.as_deref().unwrap_or("")));
            out.push('\n');
        }
        out
    }

    /// Parses any of the three formats, detected from the content.
    pub fn parse(text: &str) -> Result<Self> {
        let first = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
        if first.trim_start().starts_with('{') {
            return Self::parse_json(text);
        }
        let (header, body) = split_comment_header(text)?;
        let table_head = body.lines().next().unwrap_or("");
        if table_head.starts_with("suite,") {
            Self::parse_csv(header, body)
        } else if table_head.split_whitespace().next() == Some("suite") {
            Self::parse_text(header, body)
        } else {
            Err(parse_err("no report table found"))
        }
    }

    fn parse_json(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let head: JsonHeader = serde_json::from_str(lines.next().unwrap_or(""))
            .map_err(|e| parse_err(format!("line 1: {e}")))?;
        let header = head
            .config
            .into_iter()
            .map(|(k, v)| match v {
                serde_json::Value::String(s) => (k, s),
                other => (k, other.to_string()),
            })
            .collect();
        let records = lines
            .enumerate()
            .map(|(i, l)| {
                serde_json::from_str(l).map_err(|e| parse_err(format!("line {}: {e}", i + 2)))
            })
            .collect::<Result<_>>()?;
        Ok(Report { header, records })
    }

    fn parse_csv(header: Vec<(String, String)>, body: &str) -> Result<Self> {
        let mut rd = csv::Reader::from_reader(body.as_bytes());
        let got: Vec<String> = rd
            .headers()
            .map_err(parse_err)?
            .iter()
            .map(str::to_string)
            .collect();
        if got != COLUMNS {
            return Err(parse_err("unexpected CSV columns"));
        }
        let records = rd
            .deserialize::<Row>()
            .map(|r| r.map(ResidualRecord::from).map_err(parse_err))
            .collect::<Result<_>>()?;
        Ok(Report { header, records })
    }

    fn parse_text(header: Vec<(String, String)>, body: &str) -> Result<Self> {
        let mut lines = body.lines();
        lines.next();
        let records = lines
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| {
                parse_text_row(l).map_err(|e| parse_err(format!("table row {}: {e}", i + 1)))
            })
            .collect::<Result<_>>()?;
        Ok(Report { header, records })
    }
}

fn text_cells(r: &ResidualRecord) -> [String; 20] {
    let p = &r.params;
    [
        text_word(&r.suite),
        text_word(&r.equation),
        p.tau_re.to_string(),
        p.tau_im.to_string(),
        p.u_re.to_string(),
        p.u_im.to_string(),
        p.v_re.to_string(),
        p.v_im.to_string(),
        p.m_re.to_string(),
        p.m_im.to_string(),
        p.n.to_string(),
        p.k_re.to_string(),
        p.k_im.to_string(),
        p.a.to_string(),
        p.b.to_string(),
        p.c.to_string(),
        format!("{:e}", r.residual),
        format!("{:e}", r.tolerance),
        r.pass.to_string(),
        r.skipped.to_string(),
    ]
}

/// Table cells with whitespace or quotes are written as JSON string literals.
fn text_word(s: &str) -> String {
    if s.is_empty() || s.contains(|c: char| c.is_whitespace() || c == '"') {
        serde_json::to_string(s).expect("string serializes")
    } else {
        s.to_string()
    }
}

/// Splits one cell off the front of `rest`, undoing `text_word` quoting.
fn next_cell(rest: &str) -> std::result::Result<(String, &str), String> {
    let rest = rest.trim_start();
    if rest.starts_with('"') {
        let mut escaped = false;
        for (i, ch) in rest.char_indices().skip(1) {
            match ch {
                _ if escaped => escaped = false,
                '\\' => escaped = true,
                '"' => {
                    let cell = serde_json::from_str(&rest[..=i]).map_err(|e| e.to_string())?;
                    return Ok((cell, &rest[i + 1..]));
                }
                _ => {}
            }
        }
        return Err("unterminated quoted cell".into());
    }
    let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
    if end == 0 {
        return Err("too few columns".into());
    }
    Ok((rest[..end].to_string(), &rest[end..]))
}

fn parse_text_row(line: &str) -> std::result::Result<ResidualRecord, String> {
    let mut rest = line;
    let mut cells = Vec::with_capacity(20);
    for _ in 0..20 {
        let (cell, tail) = next_cell(rest)?;
        cells.push(cell);
        rest = tail;
    }
    let reason = rest.trim();
    let f = |i: usize| {
        cells[i]
            .parse::<f64>()
            .map_err(|e| format!("{}: {e}", COLUMNS[i]))
    };
    let int = |i: usize| {
        cells[i]
            .parse::<i64>()
            .map_err(|e| format!("{}: {e}", COLUMNS[i]))
    };
    let flag = |i: usize| {
        cells[i]
            .parse::<bool>()
            .map_err(|e| format!("{}: {e}", COLUMNS[i]))
    };
    Ok(ResidualRecord {
        suite: cells[0].clone(),
        equation: cells[1].clone(),
        params: Params {
            tau_re: f(2)?,
            tau_im: f(3)?,
            u_re: f(4)?,
            u_im: f(5)?,
            v_re: f(6)?,
            v_im: f(7)?,
            m_re: f(8)?,
            m_im: f(9)?,
            n: int(10)?,
            k_re: f(11)?,
            k_im: f(12)?,
            a: int(13)?,
            b: int(14)?,
            c: int(15)?,
        },
        residual: f(16)?,
        tolerance: f(17)?,
        pass: flag(18)?,
        skipped: flag(19)?,
        reason: (!reason.is_empty()).then(|| reason.to_string()),
    })
}

fn split_comment_header(text: &str) -> Result<(Vec<(String, String)>, &str)> {
    let mut header = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let Some(rest) = line.strip_prefix('#') else {
            break;
        };
        let (k, v) = rest
            .split_once('=')
            .ok_or_else(|| parse_err(format!("malformed header line `{}`", line.trim_end())))?;
        header.push((k.trim().to_string(), v.trim().to_string()));
        offset += line.len();
    }
    Ok((header, &text[offset..]))
}

/// Why a record shows up in a diff.
#[derive(Clone, Debug, PartialEq)]
pub enum Change {
    Added,
    Removed,
    Changed(Vec<&'static str>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiffEntry {
    pub change: Change,
    pub old: Option<ResidualRecord>,
    pub new: Option<ResidualRecord>,
}

impl DiffEntry {
    fn record(&self) -> &ResidualRecord {
        self.new
            .as_ref()
            .or(self.old.as_ref())
            .expect("one side present")
    }

    pub fn describe(&self) -> String {
        let r = self.record();
        let p = &r.params;
        let at = format!(
            "{} {} tau=({},{}) m={} n={} k={} abc=({},{},{})",
            r.suite, r.equation, p.tau_re, p.tau_im, p.m_re, p.n, p.k_re, p.a, p.b, p.c
        );
        let state = |r: &ResidualRecord| {
            let status = if r.skipped {
                "skip"
            } else if r.pass {
                "pass"
            } else {
                "FAIL"
            };
            format!("{status} {:.3e}/{:.1e}", r.residual, r.tolerance)
        };
        match (&self.change, &self.old, &self.new) {
            (Change::Added, _, Some(n)) => format!("+ {at}: {}", state(n)),
            (Change::Removed, Some(o), _) => format!("- {at}: {}", state(o)),
            (Change::Changed(what), Some(o), Some(n)) => {
                format!("~ {at} [{}]: {} -> {}", what.join(","), state(o), state(n))
            }
            _ => unreachable!("diff entry sides match its change kind"),
        }
    }
}

/// Decimal exponent of a residual; zero and non-finite values get their own buckets.
fn magnitude(x: f64) -> i64 {
    if x.is_nan() {
        i64::MAX
    } else if x == 0.0 {
        i64::MIN
    } else if x.is_infinite() {
        i64::MAX - 1
    } else {
        x.abs().log10().floor() as i64
    }
}

type Key = (String, String, String, usize);

fn keyed(records: &[ResidualRecord]) -> Vec<(Key, &ResidualRecord)> {
    let mut seen: HashMap<(String, String, String), usize> = HashMap::new();
    records
        .iter()
        .map(|r| {
            let base = (
                r.suite.clone(),
                r.equation.clone(),
                serde_json::to_string(&r.params).expect("params"),
            );
            let occ = seen.entry(base.clone()).or_default();
            let key = (base.0, base.1, base.2, *occ);
            *occ += 1;
            (key, r)
        })
        .collect()
}

/// Records whose pass flag, skip state, tolerance or residual order of
/// magnitude changed, plus records present on one side only.
pub fn diff(old: &Report, new: &Report) -> Vec<DiffEntry> {
    let old_keyed = keyed(&old.records);
    let new_keyed = keyed(&new.records);
    let new_map: HashMap<&Key, &ResidualRecord> = new_keyed.iter().map(|(k, r)| (k, *r)).collect();
    let old_map: HashMap<&Key, &ResidualRecord> = old_keyed.iter().map(|(k, r)| (k, *r)).collect();
    let mut out = Vec::new();
    for (k, o) in &old_keyed {
        match new_map.get(k) {
            None => out.push(DiffEntry {
                change: Change::Removed,
                old: Some((*o).clone()),
                new: None,
            }),
            Some(n) => {
                let mut what = Vec::new();
                if o.pass != n.pass {
                    what.push("pass");
                }
                if o.skipped != n.skipped {
                    what.push("skipped");
                }
                if o.tolerance != n.tolerance {
                    what.push("tolerance");
                }
                if magnitude(o.residual) != magnitude(n.residual) {
                    what.push("magnitude");
                }
                if !what.is_empty() {
                    out.push(DiffEntry {
                        change: Change::Changed(what),
                        old: Some((*o).clone()),
                        new: Some((*n).clone()),
                    });
                }
            }
        }
    }
    for (k, n) in &new_keyed {
        if !old_map.contains_key(k) {
            out.push(DiffEntry {
                change: Change::Added,
                old: None,
                new: Some((*n).clone()),
            });
        }
    }
    out
}
