//! Table-style summaries over many inputs.
//!
//! A manifest lists one input per line. Relative paths resolve against the
//! manifest's directory; a second, tab-separated path puts that row in pair
//! mode. Blank lines and lines starting with `#` are ignored.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use rayon::prelude::*;
use serde::Serialize;

use crate::emit::{cell, Format};
use crate::pipeline::{analyze_files, AnalyzeOptions};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub input: PathBuf,
    pub pair: Option<PathBuf>,
}

pub fn parse_manifest(text: &str, base: &Path) -> Vec<Entry> {
    let resolve = |p: &str| {
        let p = Path::new(p.trim());
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            base.join(p)
        }
    };
    text.lines()
        .map(str::trim_end)
        .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|l| match l.split_once('\t') {
            Some((a, b)) => Entry {
                input: resolve(a),
                pair: Some(resolve(b)),
            },
            None => Entry {
                input: resolve(l),
                pair: None,
            },
        })
        .collect()
}

pub fn read_manifest(path: &Path) -> Result<Vec<Entry>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    Ok(parse_manifest(&text, base))
}

/// One table row; `error` is set instead of the quantities when the input
/// could not be analysed.
#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub input: String,
    pub u_bar: Option<f64>,
    pub u_bar_eq: Option<f64>,
    pub s_thermo: Option<f64>,
    pub s_thermo_eq: Option<f64>,
    pub s_micro_per_bit: Option<f64>,
    pub s_micro_eq_per_bit: Option<f64>,
    pub fit_quality: Option<f64>,
    pub error: Option<String>,
}

fn label(e: &Entry) -> String {
    match &e.pair {
        Some(p) => format!("{} + {}", e.input.display(), p.display()),
        None => e.input.display().to_string(),
    }
}

/// Analyses every entry; rows keep manifest order.
pub fn summarize(entries: &[Entry], opts: &AnalyzeOptions) -> Vec<Row> {
    entries
        .par_iter()
        .map(|e| match analyze_files(&e.input, e.pair.as_deref(), opts) {
            Ok(out) => {
                let t = out.report.thermo;
                Row {
                    input: label(e),
                    u_bar: Some(t.u_bar),
                    u_bar_eq: Some(t.u_bar_eq),
                    s_thermo: Some(t.s_thermo),
                    s_thermo_eq: t.s_thermo_eq,
                    s_micro_per_bit: Some(t.s_micro_per_bit),
                    s_micro_eq_per_bit: t.s_micro_eq_per_bit,
                    fit_quality: t.fit_quality,
                    error: None,
                }
            }
            Err(err) => Row {
                input: label(e),
                u_bar: None,
                u_bar_eq: None,
                s_thermo: None,
                s_thermo_eq: None,
                s_micro_per_bit: None,
                s_micro_eq_per_bit: None,
                fit_quality: None,
                error: Some(format!("{err:#}")),
            },
        })
        .collect()
}

const COLUMNS: [&str; 9] = [
    "input",
    "u_bar",
    "u_bar_eq",
    "s_thermo",
    "s_thermo_eq",
    "s_micro_per_bit",
    "s_micro_eq_per_bit",
    "fit_quality",
    "error",
];

fn quantities(r: &Row) -> [Option<f64>; 7] {
    [
        r.u_bar,
        r.u_bar_eq,
        r.s_thermo,
        r.s_thermo_eq,
        r.s_micro_per_bit,
        r.s_micro_eq_per_bit,
        r.fit_quality,
    ]
}

pub fn write_table<W: Write>(rows: &[Row], format: Format, mut out: W) -> Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, rows)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(COLUMNS)?;
            for r in rows {
                let mut rec = vec![r.input.clone()];
                rec.extend(quantities(r).into_iter().map(cell));
                rec.push(r.error.clone().unwrap_or_default());
                w.write_record(rec)?;
            }
            w.flush()?;
        }
        Format::Human => {
            let width = rows.iter().map(|r| r.input.len()).max().unwrap_or(0).max(5);
            writeln!(
                out,
                "{:<width$}  {:>10}  {:>10}  {:>10}  {:>10}  {:>10}  {:>10}  {:>10}",
                "input", "U", "U_eq", "S_thermo", "S_th_eq", "S_micro/M", "S_mi_eq/M", "fit"
            )?;
            writeln!(
                out,
                "{:<width$}  {:>10}  {:>10}  {:>10}  {:>10}  {:>10}  {:>10}  {:>10}",
                "", "", "", "bits/ptcl", "bits/ptcl", "bits/bit", "bits/bit", ""
            )?;
            for r in rows {
                if let Some(err) = &r.error {
                    writeln!(out, "{:<width$}  error: {err}", r.input)?;
                    continue;
                }
                write!(out, "{:<width$}", r.input)?;
                for q in quantities(r) {
                    match q {
                        Some(v) => write!(out, "  {v:>10.4}")?,
                        None => write!(out, "  {:>10}", "-")?,
                    }
                }
                writeln!(out)?;
            }
        }
    }
    Ok(())
}
