//! Machine-readable reports. Every numeric cell is tagged `exact` or
//! `bounded` (with its bound); rationals render as `p/q`. Decimal
//! renderings appear only on request and only as display-only extras.

use std::collections::BTreeMap;

use hartogs_core::scalar::{format_rat, Rat};
use num::Signed;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Report {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    /// `exact` when every reported value is exact; `exact+bounded` when
    /// truncated values with error bounds appear.
    pub provenance: String,
    pub verdicts: Vec<Verdict>,
    pub tables: Vec<Table>,
    pub witnesses: Vec<Witness>,
    pub exit_code: i32,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Witness {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum CellKind {
    /// An exact rational or integer.
    Exact,
    /// Exact arithmetic on a truncation; `bound` limits the distance to
    /// the untruncated value.
    Bounded,
    /// A cardinality.
    Count,
    Text,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Cell {
    pub value: String,
    pub kind: CellKind,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bound: Option<String>,
    /// Display-only decimal rendering, derived from the exact value.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub decimal: Option<String>,
}

impl Cell {
    pub fn exact_rat(r: &Rat) -> Self {
        Cell {
            value: format_rat(r),
            kind: CellKind::Exact,
            bound: None,
            decimal: None,
        }
    }

    #[allow(dead_code)]
    pub fn exact(value: impl Into<String>) -> Self {
        Cell {
            value: value.into(),
            kind: CellKind::Exact,
            bound: None,
            decimal: None,
        }
    }

    pub fn bounded(r: &Rat, bound: &Rat) -> Self {
        Cell {
            value: format_rat(r),
            kind: CellKind::Bounded,
            bound: Some(format_rat(bound)),
            decimal: None,
        }
    }

    pub fn count(n: usize) -> Self {
        Cell {
            value: n.to_string(),
            kind: CellKind::Count,
            bound: None,
            decimal: None,
        }
    }

    pub fn text(value: impl Into<String>) -> Self {
        Cell {
            value: value.into(),
            kind: CellKind::Text,
            bound: None,
            decimal: None,
        }
    }

    pub fn with_decimal(mut self, r: &Rat, places: usize) -> Self {
        self.decimal = Some(decimal_of_rat(r, places));
        self
    }
}

/// Truncated decimal expansion of a rational, exact long division.
pub fn decimal_of_rat(r: &Rat, places: usize) -> String {
    let sign = if r.is_negative() { "-" } else { "" };
    let n = r.numer().abs();
    let d = r.denom().clone();
    let int = &n / &d;
    let mut rem = &n % &d;
    let mut digits = String::new();
    for _ in 0..places {
        rem *= 10;
        digits.push_str(&(&rem / &d).to_string());
        rem = &rem % &d;
    }
    if places == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{digits}")
    }
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            provenance: "exact".into(),
            verdicts: Vec::new(),
            tables: Vec::new(),
            witnesses: Vec::new(),
            exit_code: 0,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<String>) -> &mut Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn verdict(&mut self, name: &str, passed: bool, detail: impl Into<String>) -> &mut Self {
        self.verdicts.push(Verdict {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
        self
    }

    pub fn witness(&mut self, name: &str, value: impl Into<String>) -> &mut Self {
        self.witnesses.push(Witness {
            name: name.to_string(),
            value: value.into(),
        });
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// First table as comma-separated rows with a header line.
    pub fn to_csv(&self) -> Option<String> {
        let table = self.tables.first()?;
        let mut out = String::new();
        out.push_str(&table.columns.join(","));
        out.push('\n');
        for row in &table.rows {
            let fields: Vec<String> = row.iter().map(|c| csv_field(&cell_text(c))).collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        Some(out)
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        for (k, v) in &self.inputs {
            out.push_str(&format!("  {k}: {v}\n"));
        }
        out.push_str(&format!("provenance: {}\n", self.provenance));
        for table in &self.tables {
            out.push('\n');
            out.push_str(&format!("{}\n", table.title));
            let mut widths: Vec<usize> = table.columns.iter().map(String::len).collect();
            let rows: Vec<Vec<String>> = table
                .rows
                .iter()
                .map(|r| r.iter().map(cell_text).collect())
                .collect();
            for row in &rows {
                for (i, field) in row.iter().enumerate() {
                    if i < widths.len() {
                        widths[i] = widths[i].max(field.len());
                    }
                }
            }
            let header: Vec<String> = table
                .columns
                .iter()
                .enumerate()
                .map(|(i, c)| format!("{:width$}", c, width = widths[i]))
                .collect();
            out.push_str(&format!("  {}\n", header.join("  ")));
            for row in rows {
                let line: Vec<String> = row
                    .iter()
                    .enumerate()
                    .map(|(i, f)| format!("{:width$}", f, width = widths.get(i).copied().unwrap_or(0)))
                    .collect();
                out.push_str(&format!("  {}\n", line.join("  ")));
            }
        }
        if !self.witnesses.is_empty() {
            out.push('\n');
            for w in &self.witnesses {
                out.push_str(&format!("{}: {}\n", w.name, w.value));
            }
        }
        if !self.verdicts.is_empty() {
            out.push('\n');
            for v in &self.verdicts {
                out.push_str(&format!(
                    "[{}] {} - {}\n",
                    if v.passed { "pass" } else { "FAIL" },
                    v.name,
                    v.detail
                ));
            }
        }
        out
    }
}

fn cell_text(c: &Cell) -> String {
    let mut text = c.value.clone();
    if let Some(d) = &c.decimal {
        text.push_str(&format!(" (~{d})"));
    }
    if let Some(b) = &c.bound {
        text.push_str(&format!(" +-{b}"));
    }
    text
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
