use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use casimir_core::{Bundle, Spec, CONSTANTS_VERSION};
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::args::Format;

pub const SCHEMA_VERSION: u32 = 1;

pub const BUNDLE_COLUMNS: [&str; 12] = [
    "L_m", "eta_F", "eta_F_P", "eta_F_T", "delta_F", "Delta_F", "eta_E", "eta_E_P", "eta_E_T", "delta_E", "Delta_E",
    "ok",
];

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(Option<f64>),
    Text(String),
    Flag(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(Some(v)) => format!("{v:.16e}"),
            Cell::Num(None) => String::new(),
            Cell::Text(s) => s.clone(),
            Cell::Flag(b) => b.to_string(),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Num(v) => v.serialize(s),
            Cell::Text(t) => t.serialize(s),
            Cell::Flag(b) => b.serialize(s),
        }
    }
}

/// Rows sharing one header. Column order is part of the output contract.
#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn all_ok(&self) -> bool {
        let Some(i) = self.columns.iter().position(|c| *c == "ok") else {
            return true;
        };
        self.rows.iter().all(|r| r[i] == Cell::Flag(true))
    }
}

struct Records<'a>(&'a Table);
struct Record<'a>(&'a [&'static str], &'a [Cell]);

impl Serialize for Records<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.rows.len()))?;
        for row in &self.0.rows {
            seq.serialize_element(&Record(&self.0.columns, row))?;
        }
        seq.end()
    }
}

impl Serialize for Record<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0.iter().zip(self.1) {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct SpecMeta {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    pub series_rel_tol: f64,
    pub series_max_terms: usize,
}

impl From<&Spec> for SpecMeta {
    fn from(s: &Spec) -> Self {
        SpecMeta {
            abs_tol: s.abs_tol,
            rel_tol: s.rel_tol,
            max_subdivisions: s.max_subdivisions,
            series_rel_tol: s.series_rel_tol,
            series_max_terms: s.series_max_terms,
        }
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct Metadata {
    pub schema_version: u32,
    pub constants_version: &'static str,
    pub mode: &'static str,
    pub spec: SpecMeta,
    #[serde(rename = "temperature_K")]
    pub temperature: f64,
    /// Absent when the dataset mixes several plasma wavelengths.
    #[serde(rename = "lambda_P_m", skip_serializing_if = "Option::is_none")]
    pub lambda_p: Option<f64>,
}

impl Metadata {
    pub fn new(spec: &Spec, mode: &'static str, temperature: f64, lambda_p: Option<f64>) -> Self {
        Metadata {
            schema_version: SCHEMA_VERSION,
            constants_version: CONSTANTS_VERSION,
            mode,
            spec: spec.into(),
            temperature,
            lambda_p,
        }
    }
}

#[derive(Serialize)]
struct Document<'a> {
    metadata: &'a Metadata,
    records: Records<'a>,
}

pub fn render(table: &Table, meta: &Metadata, format: Format) -> io::Result<Vec<u8>> {
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(Vec::new());
            w.write_record(&table.columns)?;
            for row in &table.rows {
                w.write_record(row.iter().map(Cell::csv))?;
            }
            w.into_inner().map_err(|e| e.into_error())
        }
        Format::Json => {
            let doc = Document {
                metadata: meta,
                records: Records(table),
            };
            let mut out = serde_json::to_vec_pretty(&doc)?;
            out.push(b'\n');
            Ok(out)
        }
    }
}

pub fn emit(bytes: &[u8], path: Option<&Path>) -> io::Result<()> {
    match path {
        Some(p) => File::create(p)?.write_all(bytes),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()
        }
    }
}

/// One row in [`BUNDLE_COLUMNS`] order; a failed bundle leaves every value empty.
pub fn bundle_row(gap: f64, bundle: Option<&Bundle>) -> Vec<Cell> {
    let mut row = vec![Cell::Num(Some(gap))];
    let values = bundle.map(|b| {
        [
            b.eta_f,
            b.eta_f_p,
            b.eta_f_t,
            b.delta_f,
            b.delta_f_rescaled,
            b.eta_e,
            b.eta_e_p,
            b.eta_e_t,
            b.delta_e,
            b.delta_e_rescaled,
        ]
    });
    for i in 0..10 {
        row.push(Cell::Num(values.map(|v| v[i])));
    }
    row.push(Cell::Flag(bundle.is_some()));
    row
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(&["curve", "x", "ok"]);
        t.push(vec![Cell::Text("Al".into()), Cell::Num(Some(0.1)), Cell::Flag(true)]);
        t.push(vec![Cell::Text("Cu".into()), Cell::Num(None), Cell::Flag(false)]);
        t
    }

    #[test]
    fn csv_layout() {
        let meta = Metadata::new(&Spec::default(), "fast", 300.0, None);
        let out = String::from_utf8(render(&sample(), &meta, Format::Csv).unwrap()).unwrap();
        assert_eq!(out, "curve,x,ok\nAl,1.0000000000000001e-1,true\nCu,,false\n");
    }

    #[test]
    fn csv_round_trips() {
        let v = 0.1f64 + 0.2;
        let s = Cell::Num(Some(v)).csv();
        assert_eq!(s.parse::<f64>().unwrap(), v);
    }

    #[test]
    fn json_keeps_column_order() {
        let meta = Metadata::new(&Spec::default(), "fast", 300.0, Some(1.07e-7));
        let out = String::from_utf8(render(&sample(), &meta, Format::Json).unwrap()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["metadata"]["schema_version"], 1);
        assert_eq!(v["metadata"]["lambda_P_m"], 1.07e-7);
        assert_eq!(v["records"][1]["x"], serde_json::Value::Null);
        let a = out.find("\"curve\"").unwrap();
        let b = out.find("\"x\"").unwrap();
        assert!(a < b);
    }

    #[test]
    fn ok_column() {
        let t = sample();
        assert!(!t.all_ok());
        assert!(Table::new(&["a"]).all_ok());
    }
}
