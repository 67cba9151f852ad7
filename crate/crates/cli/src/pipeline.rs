use std::fs;
use std::io::Read;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Serialize;
use strtherm_core::{
    analyze_pair, analyze_self_with, Analysis, BitOrder, BitString, EnsembleMode, ThermoReport,
    ZeroShift,
};

/// Bumped whenever a field is added, removed or renamed in [`FileReport`].
pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, Default)]
pub struct AnalyzeOptions {
    pub bit_order: BitOrder,
    /// Keep only the first this-many bits of each input.
    pub max_bits: Option<usize>,
    /// Number of observations `N`; `None` takes every available shift.
    pub ensemble: Option<usize>,
    pub zero_shift: ZeroShift,
}

/// The JSON report for one input.
#[derive(Debug, Clone, Serialize)]
pub struct FileReport {
    pub report_version: u32,
    pub input: String,
    pub pair_input: Option<String>,
    pub mode: EnsembleMode,
    pub bit_order: BitOrder,
    /// Self mode only.
    pub zero_shift: Option<ZeroShift>,
    pub m: usize,
    pub n: u64,
    pub k: usize,
    pub c_bar: f64,
    /// True when the ensemble does not cover every shift, so `c_bar` is a
    /// sample mean rather than `2·k·(M−k)/M`-exact.
    pub c_bar_empirical: bool,
    pub mean_identity: Option<bool>,
    pub k_factor: f64,
    pub sigma2: f64,
    #[serde(flatten)]
    pub thermo: ThermoReport,
}

pub struct Outcome {
    pub report: FileReport,
    pub analysis: Analysis,
}

/// Reads a whole file, or standard input for `-`.
pub fn read_input(path: &Path) -> Result<Vec<u8>> {
    let data = if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        std::io::stdin()
            .read_to_end(&mut buf)
            .context("reading standard input")?;
        buf
    } else {
        fs::read(path).with_context(|| format!("reading {}", path.display()))?
    };
    if data.is_empty() {
        bail!("{} is empty", path.display());
    }
    Ok(data)
}

pub fn load_bits(path: &Path, opts: &AnalyzeOptions) -> Result<BitString> {
    let bits = BitString::from_bytes(&read_input(path)?, opts.bit_order)?;
    match opts.max_bits {
        Some(max) => Ok(bits.truncate(max)?),
        None => Ok(bits),
    }
}

/// Runs the full pipeline on one input, or on a pair when `pair` is given.
pub fn analyze_files(input: &Path, pair: Option<&Path>, opts: &AnalyzeOptions) -> Result<Outcome> {
    let a = load_bits(input, opts)?;
    let analysis = match pair {
        None => analyze_self_with(&a, opts.ensemble, opts.zero_shift)?,
        Some(other) => analyze_pair(&a, &load_bits(other, opts)?, opts.ensemble)?,
    };
    let h = &analysis.histogram;
    let m = &analysis.model;
    let report = FileReport {
        report_version: REPORT_VERSION,
        input: input.display().to_string(),
        pair_input: pair.map(|p| p.display().to_string()),
        mode: if pair.is_some() {
            EnsembleMode::Pair
        } else {
            EnsembleMode::SelfShift
        },
        bit_order: opts.bit_order,
        zero_shift: pair.is_none().then_some(opts.zero_shift),
        m: h.bit_len(),
        n: h.total(),
        k: analysis.ones,
        c_bar: m.c_bar,
        c_bar_empirical: !analysis.covers_all_shifts,
        mean_identity: analysis.mean_identity,
        k_factor: m.k_factor,
        sigma2: m.sigma2,
        thermo: analysis.report.clone(),
    };
    Ok(Outcome { report, analysis })
}
