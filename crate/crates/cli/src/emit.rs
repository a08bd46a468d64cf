//! Deterministic CSV/JSON emission. CSV carries '#'-prefixed metadata
//! header lines; JSON mirrors the same schema with numerals kept as
//! strings so the 25-significant-digit decimals survive any parser.

use anyhow::{Context, Result};
use std::io::Write;
use std::path::Path;

pub const SIG_DIGITS: usize = 25;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?} (expected csv or json)")),
        }
    }
}

/// One named block of rows (the main table, or an extra section such as a
/// traced polyline).
pub struct Section {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

pub struct Report {
    pub command: String,
    pub meta: Vec<(String, String)>,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.to_string(), meta: Vec::new(), sections: Vec::new() }
    }

    pub fn meta(&mut self, key: &str, value: impl Into<String>) {
        self.meta.push((key.to_string(), value.into()));
    }

    pub fn section(&mut self, name: &str, columns: &[&str]) -> &mut Section {
        self.sections.push(Section {
            name: name.to_string(),
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        });
        self.sections.last_mut().unwrap()
    }

    pub fn write_csv(&self, w: &mut impl Write) -> Result<()> {
        writeln!(w, "# tool: p4hermite {}", env!("CARGO_PKG_VERSION"))?;
        writeln!(w, "# command: {}", self.command)?;
        for (k, v) in &self.meta {
            writeln!(w, "# {k}: {v}")?;
        }
        for (i, section) in self.sections.iter().enumerate() {
            if i > 0 {
                writeln!(w, "# section: {}", section.name)?;
            }
            writeln!(w, "{}", section.columns.join(","))?;
            for row in &section.rows {
                writeln!(w, "{}", row.join(","))?;
            }
        }
        Ok(())
    }

    pub fn write_json(&self, w: &mut impl Write) -> Result<()> {
        use serde_json::{json, Map, Value};
        let mut meta = Map::new();
        meta.insert("tool".into(), json!(format!("p4hermite {}", env!("CARGO_PKG_VERSION"))));
        meta.insert("command".into(), json!(self.command));
        for (k, v) in &self.meta {
            meta.insert(k.clone(), json!(v));
        }
        let mut sections = Map::new();
        for section in &self.sections {
            sections.insert(
                section.name.clone(),
                json!({
                    "columns": section.columns,
                    "rows": section.rows,
                }),
            );
        }
        let doc = Value::Object(
            [("meta".to_string(), Value::Object(meta)), ("sections".to_string(), Value::Object(sections))]
                .into_iter()
                .collect(),
        );
        serde_json::to_writer_pretty(&mut *w, &doc)?;
        writeln!(w)?;
        Ok(())
    }

    pub fn emit(&self, out: Option<&Path>, format: Format) -> Result<()> {
        let mut buf: Vec<u8> = Vec::new();
        match format {
            Format::Csv => self.write_csv(&mut buf)?,
            Format::Json => self.write_json(&mut buf)?,
        }
        match out {
            Some(path) => std::fs::write(path, &buf)
                .with_context(|| format!("writing {}", path.display()))?,
            None => std::io::stdout().write_all(&buf)?,
        }
        Ok(())
    }
}

pub fn dec(x: &p4hermite::hp::Real) -> String {
    x.to_decimal(SIG_DIGITS)
}

pub fn dec_f64(x: f64, prec: usize) -> String {
    dec(&p4hermite::hp::Real::from_f64(x, prec))
}
