//! CSV and JSON emission. Rows carry a fixed set of columns; `compare` adds
//! difference columns after them in CSV and a `differences` key in JSON.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Map, Value};
use sqrt_coulomb::Entry;

use crate::args::Format;
use crate::failure::Failure;

pub const HEADER: [&str; 9] = ["method", "n", "l", "j", "two_j", "alpha", "binding_energy", "convergence_estimate", "sign"];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Level {
    pub method: &'static str,
    pub n: u32,
    pub l: u32,
    pub j: Option<f64>,
    pub two_j: Option<u32>,
    pub alpha: f64,
    pub binding_energy: f64,
    pub convergence_estimate: f64,
    pub sign: &'static str,
}

impl From<&Entry> for Level {
    fn from(e: &Entry) -> Self {
        Self {
            method: e.method.as_str(),
            n: e.n,
            l: e.l,
            j: e.two_j.map(|t| t as f64 / 2.0),
            two_j: e.two_j,
            alpha: e.alpha,
            binding_energy: e.binding,
            convergence_estimate: e.convergence_estimate,
            sign: e.sign.as_str(),
        }
    }
}

pub fn float(v: f64) -> String {
    format!("{v:.16e}")
}

impl Level {
    fn record(&self) -> Vec<String> {
        vec![
            self.method.to_string(),
            self.n.to_string(),
            self.l.to_string(),
            self.j.map(|j| j.to_string()).unwrap_or_default(),
            self.two_j.map(|t| t.to_string()).unwrap_or_default(),
            float(self.alpha),
            float(self.binding_energy),
            float(self.convergence_estimate),
            self.sign.to_string(),
        ]
    }
}

#[derive(Debug, Default)]
pub struct Table {
    pub params: Map<String, Value>,
    pub levels: Vec<Level>,
    /// Extra CSV columns, one value per level.
    pub columns: Vec<(String, Vec<f64>)>,
    /// Extra top-level JSON keys.
    pub extra: Map<String, Value>,
}

impl Table {
    pub fn new(params: Map<String, Value>, entries: &[Entry]) -> Self {
        Self { params, levels: entries.iter().map(Level::from).collect(), ..Default::default() }
    }

    fn write_csv<W: Write>(&self, out: W) -> Result<(), Failure> {
        let mut w = csv::Writer::from_writer(out);
        let mut header: Vec<String> = HEADER.iter().map(|s| s.to_string()).collect();
        header.extend(self.columns.iter().map(|(name, _)| name.clone()));
        w.write_record(&header).map_err(csv_error)?;
        for (i, level) in self.levels.iter().enumerate() {
            let mut rec = level.record();
            rec.extend(self.columns.iter().map(|(_, vals)| float(vals[i])));
            w.write_record(&rec).map_err(csv_error)?;
        }
        w.flush()?;
        Ok(())
    }

    fn to_json(&self) -> Value {
        let mut root = Map::new();
        root.insert("params".into(), Value::Object(self.params.clone()));
        root.insert("levels".into(), json!(self.levels));
        for (k, v) in &self.extra {
            root.insert(k.clone(), v.clone());
        }
        Value::Object(root)
    }

    pub fn emit(&self, format: Format, path: Option<&Path>) -> Result<(), Failure> {
        match path {
            Some(p) => {
                let file = File::create(p).map_err(|e| Failure::usage(format!("--output {}: {e}", p.display())))?;
                self.write(format, io::BufWriter::new(file))
            }
            None => self.write(format, io::stdout().lock()),
        }
    }

    fn write<W: Write>(&self, format: Format, mut out: W) -> Result<(), Failure> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => {
                serde_json::to_writer_pretty(&mut out, &self.to_json()).map_err(|e| Failure::usage(e.to_string()))?;
                writeln!(out)?;
                out.flush()?;
                Ok(())
            }
        }
    }
}

fn csv_error(e: csv::Error) -> Failure {
    Failure::usage(format!("cannot write CSV: {e}"))
}
