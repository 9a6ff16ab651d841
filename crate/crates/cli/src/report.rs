//! Report model and its three renderings.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

/// Significant digits used for numbers unless a cell says otherwise.
pub const DEFAULT_DIGITS: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    /// A real number shown with `digits` significant digits in tables.
    Number { value: f64, digits: usize },
    Integer(i64),
    Text(String),
    Flag(bool),
}

impl Cell {
    pub fn num(value: f64) -> Self {
        Cell::Number {
            value,
            digits: DEFAULT_DIGITS,
        }
    }

    pub fn int(value: usize) -> Self {
        Cell::Integer(value as i64)
    }

    pub fn text(value: impl Into<String>) -> Self {
        Cell::Text(value.into())
    }

    /// Human-readable form.
    pub fn display(&self) -> String {
        match self {
            Cell::Number { value, digits } => format_significant(*value, *digits),
            _ => self.exact(),
        }
    }

    /// Lossless form: shortest representation that round-trips.
    pub fn exact(&self) -> String {
        match self {
            Cell::Number { value, .. } => format!("{value}"),
            Cell::Integer(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Flag(b) => b.to_string(),
        }
    }

    fn is_numeric(&self) -> bool {
        matches!(self, Cell::Number { .. } | Cell::Integer(_))
    }

    fn json(&self) -> Value {
        match self {
            Cell::Number { value, .. } => json!(value),
            Cell::Integer(v) => json!(v),
            Cell::Text(s) => json!(s),
            Cell::Flag(b) => json!(b),
        }
    }
}

/// `value` rounded to `digits` significant digits, switching to scientific
/// notation outside `[1e-4, 1e6)`.
pub fn format_significant(value: f64, digits: usize) -> String {
    let digits = digits.max(1);
    if !value.is_finite() {
        return value.to_string();
    }
    if value == 0.0 {
        return "0".to_string();
    }
    // scientific formatting rounds first, so its exponent already accounts
    // for carries such as 9.9996 -> 10.00
    let sci = format!("{:.*e}", digits - 1, value);
    let exponent: i32 = sci.rsplit('e').next().and_then(|e| e.parse().ok()).unwrap_or(0);
    if !(-4..6).contains(&exponent) {
        return sci;
    }
    let decimals = (digits as i32 - 1 - exponent).max(0) as usize;
    format!("{value:.decimals$}")
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: impl Into<String>, columns: &[&str]) -> Self {
        Self {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Report {
    pub title: String,
    pub summary: Vec<(String, Cell)>,
    pub tables: Vec<Table>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Self {
            title: title.into(),
            ..Self::default()
        }
    }

    pub fn kv(&mut self, key: &str, value: Cell) {
        self.summary.push((key.to_string(), value));
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Jsonl,
}

pub fn render(report: &Report, format: Format) -> Vec<u8> {
    match format {
        Format::Table => render_table(report).into_bytes(),
        Format::Csv => render_csv(report),
        Format::Jsonl => render_jsonl(report).into_bytes(),
    }
}

fn render_table(report: &Report) -> String {
    let mut out = String::new();
    writeln!(out, "{}", report.title).unwrap();
    writeln!(out, "{}", "=".repeat(report.title.chars().count())).unwrap();
    if !report.summary.is_empty() {
        out.push('\n');
        let width = report.summary.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
        for (key, value) in &report.summary {
            writeln!(out, "{key:<width$}  {}", value.display()).unwrap();
        }
    }
    for table in &report.tables {
        out.push('\n');
        writeln!(out, "[{}]", table.name).unwrap();
        let cells: Vec<Vec<String>> = table
            .rows
            .iter()
            .map(|r| r.iter().map(Cell::display).collect())
            .collect();
        let widths: Vec<usize> = table
            .columns
            .iter()
            .enumerate()
            .map(|(j, c)| {
                cells
                    .iter()
                    .map(|r| r[j].chars().count())
                    .chain(std::iter::once(c.chars().count()))
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let header: Vec<String> = table
            .columns
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        writeln!(out, "{}", header.join("  ").trim_end()).unwrap();
        for (row, raw) in cells.iter().zip(&table.rows) {
            let line: Vec<String> = row
                .iter()
                .zip(raw)
                .zip(&widths)
                .map(|((s, cell), &w)| {
                    let pad = w.saturating_sub(s.chars().count());
                    if cell.is_numeric() {
                        format!("{}{s}", " ".repeat(pad))
                    } else {
                        format!("{s}{}", " ".repeat(pad))
                    }
                })
                .collect();
            writeln!(out, "{}", line.join("  ").trim_end()).unwrap();
        }
    }
    if !report.notes.is_empty() {
        out.push('\n');
        for note in &report.notes {
            writeln!(out, "note: {note}").unwrap();
        }
    }
    out
}

/// Summary as a `key,value` block, then one block per table; blocks are
/// separated by an empty line. Notes are not part of the CSV output.
fn render_csv(report: &Report) -> Vec<u8> {
    let mut out = Vec::new();
    let mut first = true;
    let mut block = |out: &mut Vec<u8>, header: Vec<String>, rows: Vec<Vec<String>>| {
        if !std::mem::take(&mut first) {
            out.push(b'\n');
        }
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&header).unwrap();
        for r in rows {
            w.write_record(&r).unwrap();
        }
        out.extend(w.into_inner().unwrap());
    };
    if !report.summary.is_empty() {
        block(
            &mut out,
            vec!["key".into(), "value".into()],
            report
                .summary
                .iter()
                .map(|(k, v)| vec![k.clone(), v.exact()])
                .collect(),
        );
    }
    for table in &report.tables {
        block(
            &mut out,
            table.columns.clone(),
            table
                .rows
                .iter()
                .map(|r| r.iter().map(Cell::exact).collect())
                .collect(),
        );
    }
    out
}

fn render_jsonl(report: &Report) -> String {
    let mut lines = vec![json!({"record": "title", "title": report.title})];
    for (key, value) in &report.summary {
        lines.push(json!({"record": "summary", "key": key, "value": value.json()}));
    }
    for table in &report.tables {
        for row in &table.rows {
            let mut values = Map::new();
            for (c, v) in table.columns.iter().zip(row) {
                values.insert(c.clone(), v.json());
            }
            lines.push(json!({"record": "row", "table": table.name, "values": values}));
        }
    }
    for note in &report.notes {
        lines.push(json!({"record": "note", "text": note}));
    }
    let mut out = String::new();
    for line in lines {
        out.push_str(&line.to_string());
        out.push('\n');
    }
    out
}
