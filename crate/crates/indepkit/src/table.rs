//! Relation files.
//!
//! A relation is a CSV file whose header names the attributes. A trailing
//! `#count` column holds multiplicities (default 1), a cell `*` is the null
//! marker and a leading backslash escapes a value (`\*` is the string `*`).
//! Cells are trimmed. Domains live in an optional JSON sidecar mapping
//! attribute names to arrays of values; attributes missing from it get
//! inferred domains.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use indepkit_core::{Relation, RelationBuilder};
use serde_json::{Map, Value};

pub const NULL: &str = "*";
pub const COUNT_COLUMN: &str = "#count";

/// Declared domains in attribute order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Domains(pub Vec<(String, Vec<String>)>);

impl Domains {
    pub fn of(r: &Relation) -> Self {
        let s = r.schema();
        Domains(
            s.vocabulary()
                .names()
                .iter()
                .enumerate()
                .map(|(i, n)| (n.clone(), s.domain(i).to_vec()))
                .collect(),
        )
    }

    pub fn parse(text: &str) -> Result<Self> {
        let map: Map<String, Value> = serde_json::from_str(text).context("domain file is not a JSON object")?;
        let mut out = Vec::with_capacity(map.len());
        for (name, v) in map {
            let values = v
                .as_array()
                .ok_or_else(|| anyhow!("domain of `{name}` is not an array"))?
                .iter()
                .map(|x| match x {
                    Value::String(s) => Ok(s.clone()),
                    Value::Number(n) => Ok(n.to_string()),
                    _ => Err(anyhow!("domain of `{name}` holds a value that is not a string")),
                })
                .collect::<Result<Vec<_>>>()?;
            out.push((name, values));
        }
        Ok(Domains(out))
    }

    pub fn to_value(&self) -> Value {
        let map: Map<String, Value> = self
            .0
            .iter()
            .map(|(n, vs)| (n.clone(), Value::from(vs.clone())))
            .collect();
        Value::Object(map)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("domains serialize");
        s.push('\n');
        s
    }
}

pub fn decode_cell(raw: &str) -> Option<String> {
    if raw == NULL {
        None
    } else if let Some(rest) = raw.strip_prefix('\\') {
        Some(rest.to_string())
    } else {
        Some(raw.to_string())
    }
}

pub fn encode_cell(value: Option<&str>) -> String {
    match value {
        None => NULL.to_string(),
        Some(v) if v == NULL || v.starts_with('\\') => format!("\\{v}"),
        Some(v) => v.to_string(),
    }
}

/// Parses relation CSV text. Errors name the offending line.
pub fn read_relation(text: &str, domains: Option<&Domains>) -> Result<Relation> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut records = rdr.records();
    let header = match records.next() {
        Some(h) => h.context("line 1")?,
        None => bail!("missing header row"),
    };
    let mut names: Vec<&str> = header.iter().collect();
    let counted = names.last() == Some(&COUNT_COLUMN);
    if counted {
        names.pop();
    }
    let mut b = RelationBuilder::new(names.iter().copied()).context("line 1")?;
    if let Some(d) = domains {
        for (name, values) in &d.0 {
            b.declare_domain(name, values.iter().cloned())
                .with_context(|| format!("domain file: attribute `{name}`"))?;
        }
    }
    for rec in records {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        let mut cells: Vec<&str> = rec.iter().collect();
        let m = if counted {
            let raw = cells.pop().unwrap_or_default();
            raw.parse::<u64>()
                .ok()
                .filter(|&m| m > 0)
                .ok_or_else(|| anyhow!("line {line}: `{raw}` is not a positive multiplicity"))?
        } else {
            1
        };
        b.row(cells.into_iter().map(decode_cell), m)
            .with_context(|| format!("line {line}"))?;
    }
    Ok(b.build()?)
}

/// Renders `r` as relation CSV; the `#count` column appears only when some
/// multiplicity exceeds 1.
pub fn write_relation(r: &Relation) -> String {
    let s = r.schema();
    let counted = r.rows().iter().any(|(_, m)| *m != 1);
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    let mut header: Vec<String> = s.vocabulary().names().to_vec();
    if counted {
        header.push(COUNT_COLUMN.to_string());
    }
    w.write_record(&header).expect("write to memory");
    for (t, m) in r.rows() {
        let mut rec: Vec<String> = t
            .cells()
            .iter()
            .enumerate()
            .map(|(i, c)| encode_cell(s.value(i, *c)))
            .collect();
        if counted {
            rec.push(m.to_string());
        }
        w.write_record(&rec).expect("write to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv output is UTF-8")
}

/// `table.csv` → `table.domains.json`.
pub fn sidecar_path(path: &Path) -> PathBuf {
    path.with_extension("domains.json")
}

/// Reads a file, or standard input for `-`.
pub fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        return std::io::read_to_string(std::io::stdin()).context("reading standard input");
    }
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub fn load_relation(path: &Path, domains: Option<&Path>) -> Result<Relation> {
    let doms = match domains {
        Some(p) => Some(Domains::parse(&read_input(p)?).with_context(|| p.display().to_string())?),
        None => None,
    };
    read_relation(&read_input(path)?, doms.as_ref()).with_context(|| path.display().to_string())
}

/// Writes the CSV to `path` and the domains to `domains`.
pub fn save_relation(r: &Relation, path: &Path, domains: &Path) -> Result<()> {
    fs::write(path, write_relation(r)).with_context(|| format!("cannot write {}", path.display()))?;
    fs::write(domains, Domains::of(r).to_json()).with_context(|| format!("cannot write {}", domains.display()))
}
