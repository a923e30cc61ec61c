//! Output formatting: JSON / CSV / text payloads, written to a file or
//! stdout. All maps are ordered, so repeated runs are byte-identical.

use std::fs;
use std::path::Path;

use clap::ValueEnum;

use fpa_core::lattice::LatticePoint;
use fpa_core::resolution::Resolution;
use fpa_core::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

pub struct Payload {
    pub json: serde_json::Value,
    /// `None` when the subcommand has no tabular form.
    pub csv: Option<String>,
    pub text: String,
}

pub fn emit(output: Option<&Path>, format: Format, payload: Payload) -> Result<()> {
    let body = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&payload.json)
                .map_err(|e| Error::Contract(format!("json serialization failed: {e}")))?;
            s.push('\n');
            s
        }
        Format::Csv => payload
            .csv
            .ok_or_else(|| Error::InvalidParameter("this subcommand has no csv form".into()))?,
        Format::Text => payload.text,
    };
    match output {
        Some(path) => fs::write(path, body)
            .map_err(|e| Error::Contract(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

/// Multidegree as colon-joined integers.
pub fn colon_join(p: &LatticePoint) -> String {
    p.coords()
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(":")
}

/// Betti table: rows are homological degrees, columns the multidegrees that
/// occur anywhere in the resolution, in their canonical (height, lex) order.
pub fn betti_csv(res: &Resolution) -> String {
    let mut columns: Vec<LatticePoint> = Vec::new();
    let mut rows = Vec::new();
    for i in 0..=res.top_degree() {
        let row = res.betti_row(i);
        for alpha in row.keys() {
            if !columns.contains(alpha) {
                columns.push(alpha.clone());
            }
        }
        rows.push(row);
    }
    columns.sort();
    let mut out = String::from("i");
    for c in &columns {
        out.push(',');
        out.push_str(&colon_join(c));
    }
    out.push('\n');
    for (i, row) in rows.iter().enumerate() {
        out.push_str(&i.to_string());
        for c in &columns {
            out.push(',');
            out.push_str(&row.get(c).copied().unwrap_or(0).to_string());
        }
        out.push('\n');
    }
    out
}
