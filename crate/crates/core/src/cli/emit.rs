//! One row model for every tabular output format.

use serde::{Deserialize, Serialize};

use super::report::HSource;
use super::{CliError, OutputFormat, EXIT_VERIFY};
use crate::closedform::HSign;
use crate::lattice::LatticeClass;
use crate::sphere::{SphereStatus, SphereVerdict};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub class: LatticeClass,
    pub square: i64,
    pub reduced: Option<LatticeClass>,
    pub h: Option<i64>,
    pub source: Option<HSource>,
    pub sign: Option<HSign>,
    /// `None` for the zero class.
    pub sphere: Option<SphereVerdict>,
}

impl TableRow {
    pub const HEADERS: [&'static str; 7] =
        ["class", "square", "reduced", "h", "source", "sign", "sphere"];

    pub fn cells(&self) -> Vec<String> {
        let opt = |s: Option<String>| s.unwrap_or_else(|| "-".into());
        vec![
            self.class.to_string(),
            self.square.to_string(),
            opt(self.reduced.as_ref().map(|r| r.to_string())),
            opt(self.h.map(|h| h.to_string())),
            opt(self.source.map(|s| s.to_string())),
            opt(self.sign.map(|s| s.to_string())),
            opt(self.sphere.as_ref().map(sphere_cell)),
        ]
    }
}

pub(crate) fn sphere_cell(v: &SphereVerdict) -> String {
    match &v.status {
        SphereStatus::AdmissiblePattern(p) => format!("admissible({p})"),
        SphereStatus::Obstructed(r) => {
            let name = serde_json::to_value(r)
                .ok()
                .and_then(|v| v.as_str().map(str::to_owned))
                .unwrap_or_default();
            format!("obstructed({name})")
        }
        SphereStatus::Unknown => "unknown".into(),
    }
}

/// Renders a header and rows as aligned text, CSV, or a Markdown table.
pub fn render_rows(
    format: OutputFormat,
    header: &[&str],
    rows: &[Vec<String>],
) -> Result<String, CliError> {
    match format {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let fail = |e: csv::Error| CliError {
                code: EXIT_VERIFY,
                message: format!("csv output failed: {e}"),
            };
            w.write_record(header).map_err(fail)?;
            for r in rows {
                w.write_record(r).map_err(fail)?;
            }
            let bytes = w.into_inner().map_err(|e| CliError {
                code: EXIT_VERIFY,
                message: format!("csv output failed: {e}"),
            })?;
            Ok(String::from_utf8(bytes).expect("csv writes the UTF-8 it is given"))
        }
        OutputFormat::Markdown => {
            let line = |cells: Vec<&str>| format!("| {} |\n", cells.join(" | "));
            let mut out = line(header.to_vec());
            out += &line(header.iter().map(|_| "---").collect());
            for r in rows {
                out += &line(r.iter().map(String::as_str).collect());
            }
            Ok(out)
        }
        OutputFormat::Text | OutputFormat::Json => {
            let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
            for r in rows {
                for (w, c) in widths.iter_mut().zip(r) {
                    *w = (*w).max(c.chars().count());
                }
            }
            let line = |cells: &[&str]| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect();
                padded.join("  ").trim_end().to_string() + "\n"
            };
            let mut out = line(header);
            for r in rows {
                let cells: Vec<&str> = r.iter().map(String::as_str).collect();
                out += &line(&cells);
            }
            Ok(out)
        }
    }
}
