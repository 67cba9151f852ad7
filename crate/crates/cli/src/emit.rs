//! Report, histogram and curve renderers.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use strtherm_core::equilibrium::{curve, EquilibriumModel};
use strtherm_core::Histogram;

use crate::pipeline::FileReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Human,
}

/// Formats an optional quantity for CSV; undefined values are empty cells.
pub(crate) fn cell(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub fn write_report<W: Write>(report: &FileReport, format: Format, out: W) -> Result<()> {
    match format {
        Format::Json => write_json(report, out),
        Format::Csv => write_csv(report, out),
        Format::Human => write_human(report, out),
    }
}

pub fn write_json<W: Write>(report: &FileReport, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, report)?;
    writeln!(out)?;
    Ok(())
}

const CSV_HEADER: [&str; 20] = [
    "input",
    "mode",
    "m",
    "n",
    "c_bar",
    "t",
    "u_bar",
    "u_bar_eq",
    "s_thermo",
    "s_thermo_eq",
    "s_micro",
    "s_micro_per_bit",
    "s_micro_eq_per_bit",
    "z",
    "s_nats",
    "f",
    "p",
    "v",
    "degenerate",
    "fit_quality",
];

/// One header row plus one data row.
pub fn write_csv<W: Write>(report: &FileReport, out: W) -> Result<()> {
    let t = &report.thermo;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    w.write_record([
        report.input.clone(),
        report.mode.to_string(),
        report.m.to_string(),
        report.n.to_string(),
        report.c_bar.to_string(),
        t.t.to_string(),
        t.u_bar.to_string(),
        t.u_bar_eq.to_string(),
        t.s_thermo.to_string(),
        cell(t.s_thermo_eq),
        t.s_micro.to_string(),
        t.s_micro_per_bit.to_string(),
        cell(t.s_micro_eq_per_bit),
        cell(t.z),
        cell(t.s_nats),
        cell(t.f),
        cell(t.p),
        t.v.to_string(),
        t.degenerate.to_string(),
        cell(t.fit_quality),
    ])?;
    w.flush()?;
    Ok(())
}

fn human_opt(x: Option<f64>, unit: &str) -> String {
    match x {
        Some(v) => format!("{v:.6} {unit}").trim_end().to_owned(),
        None => "undefined".to_owned(),
    }
}

pub fn write_human<W: Write>(r: &FileReport, mut out: W) -> Result<()> {
    let t = &r.thermo;
    writeln!(out, "input              {}", r.input)?;
    if let Some(pair) = &r.pair_input {
        writeln!(out, "pair input         {pair}")?;
    }
    writeln!(out, "bit order          {}", r.bit_order)?;
    if let Some(z) = r.zero_shift {
        writeln!(out, "zero shift         {z}")?;
    }
    writeln!(out, "M (mass)           {} bits", r.m)?;
    writeln!(out, "N (observations)   {}", r.n)?;
    writeln!(out, "set bits           {}", r.k)?;
    writeln!(
        out,
        "mean measure       {:.6}{}",
        r.c_bar,
        if r.c_bar_empirical { " (sample mean)" } else { "" }
    )?;
    if let Some(ok) = r.mean_identity {
        writeln!(out, "mean identity      {}", if ok { "holds" } else { "VIOLATED" })?;
    }
    writeln!(out, "K factor           {:.6}", r.k_factor)?;
    writeln!(out, "temperature T      {:.6}", t.t)?;
    writeln!(out, "U  observed        {:.6} per particle", t.u_bar)?;
    writeln!(out, "U  equilibrium     {:.6} per particle", t.u_bar_eq)?;
    writeln!(out, "S_thermo           {:.6} bits/particle", t.s_thermo)?;
    writeln!(out, "S_thermo eq        {}", human_opt(t.s_thermo_eq, "bits/particle"))?;
    writeln!(out, "S_micro            {:.6} bits/particle", t.s_micro)?;
    writeln!(out, "S_micro / M        {:.6} bits/bit", t.s_micro_per_bit)?;
    writeln!(out, "S_micro eq / M     {}", human_opt(t.s_micro_eq_per_bit, "bits/bit"))?;
    writeln!(out, "Z                  {}", human_opt(t.z, ""))?;
    writeln!(out, "S (ensemble)       {}", human_opt(t.s_nats, "nats"))?;
    writeln!(out, "F (free energy)    {}", human_opt(t.f, ""))?;
    writeln!(out, "P (pressure)       {}", human_opt(t.p, ""))?;
    writeln!(out, "V (volume)         {:.6}", t.v)?;
    writeln!(out, "fit quality        {}", human_opt(t.fit_quality, ""))?;
    writeln!(
        out,
        "state              {}",
        if t.degenerate { "degenerate (frozen ensemble)" } else { "fitted" }
    )?;
    Ok(())
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    Ok(BufWriter::new(f))
}

/// Observed occupation numbers: CSV `C,N_count`, or a JSON array of
/// `{c, n}` objects when the path ends in `.json`.
pub fn write_histogram(h: &Histogram, path: &Path) -> Result<()> {
    let mut out = create(path)?;
    if path.extension().is_some_and(|e| e == "json") {
        serde_json::to_writer(&mut out, h.entries())?;
        writeln!(out)?;
    } else {
        write_histogram_csv(h, &mut out)?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_histogram_csv<W: Write>(h: &Histogram, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["C", "N_count"])?;
    for e in h.entries() {
        w.write_record([e.value.to_string(), e.count.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Model curves as CSV `C,N_normal,N_binomial`. A degenerate model has no
/// curve and yields the header only.
pub fn write_curves(h: &Histogram, model: &EquilibriumModel, path: &Path) -> Result<()> {
    let mut out = create(path)?;
    write_curves_csv(h, model, &mut out)?;
    out.flush()?;
    Ok(())
}

pub fn write_curves_csv<W: Write>(h: &Histogram, model: &EquilibriumModel, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["C", "N_normal", "N_binomial"])?;
    if !model.degenerate {
        for p in curve(h, model)? {
            w.write_record([p.c.to_string(), p.normal.to_string(), p.binomial.to_string()])?;
        }
    }
    w.flush()?;
    Ok(())
}
