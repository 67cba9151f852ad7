//! End-to-end analysis of one string or a pair of strings.

use serde::Serialize;

use crate::bitstring::BitString;
use crate::ensemble::{
    build_pair_ensemble, build_self_ensemble_with, histogram, Ensemble, Histogram, ZeroShift,
};
use crate::equilibrium::{fit, fit_quality, EquilibriumModel};
use crate::error::Result;
use crate::thermo::{
    ensemble_thermo, entropy, equilibrium_entropy, equilibrium_internal_energy, internal_energy,
    partition_function,
};

/// Observed and equilibrium thermodynamic quantities for one ensemble.
/// Equilibrium fields are `None` when the model is degenerate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThermoReport {
    pub t: f64,
    pub u_bar: f64,
    pub u_bar_eq: f64,
    pub s_thermo: f64,
    pub s_thermo_eq: Option<f64>,
    pub s_micro: f64,
    pub s_micro_per_bit: f64,
    pub s_micro_eq_per_bit: Option<f64>,
    pub z: Option<f64>,
    pub s_nats: Option<f64>,
    pub f: Option<f64>,
    pub p: Option<f64>,
    pub v: f64,
    pub degenerate: bool,
    pub fit_quality: Option<f64>,
}

impl ThermoReport {
    pub fn new(h: &Histogram, model: &EquilibriumModel) -> Result<Self> {
        let m = h.bit_len();
        let t = model.temperature;
        let s = entropy(h);
        let mut report = ThermoReport {
            t,
            u_bar: internal_energy(h, model.c_bar),
            u_bar_eq: equilibrium_internal_energy(t),
            s_thermo: s.thermodynamic,
            s_thermo_eq: None,
            s_micro: s.microstate,
            s_micro_per_bit: s.microstate / m as f64,
            s_micro_eq_per_bit: None,
            z: None,
            s_nats: None,
            f: None,
            p: None,
            v: (m as f64).sqrt(),
            degenerate: model.degenerate,
            fit_quality: None,
        };
        if model.degenerate {
            return Ok(report);
        }
        let (s_thermo_eq, s_micro_eq) = equilibrium_entropy(m, t, model.c_bar)?;
        let whole = ensemble_thermo(h.total(), m, t)?;
        report.s_thermo_eq = Some(s_thermo_eq);
        report.s_micro_eq_per_bit = Some(s_micro_eq);
        report.z = Some(partition_function(m, t)?);
        report.s_nats = Some(whole.entropy);
        report.f = Some(whole.free_energy);
        report.p = Some(whole.pressure);
        report.fit_quality = Some(fit_quality(h, model)?);
        Ok(report)
    }
}

/// Everything computed for one input.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub histogram: Histogram,
    pub model: EquilibriumModel,
    pub report: ThermoReport,
    /// `N·C̄ = 2k(M−k)`, checked only for full self ensembles.
    pub mean_identity: Option<bool>,
    /// Whether every nonzero shift was observed; otherwise `C̄` is a
    /// sample mean.
    pub covers_all_shifts: bool,
    pub ones: usize,
}

pub fn analyze_ensemble(e: &Ensemble) -> Result<Analysis> {
    let histogram = histogram(e);
    let model = fit(&histogram);
    let report = ThermoReport::new(&histogram, &model)?;
    Ok(Analysis {
        histogram,
        model,
        report,
        mean_identity: e.mean_identity(),
        covers_all_shifts: e.covers_all_shifts(),
        ones: e.ones(),
    })
}

/// Self-shift analysis over the nonzero shifts; `n = None` uses all
/// `M − 1` of them.
pub fn analyze_self(b: &BitString, n: Option<usize>) -> Result<Analysis> {
    analyze_self_with(b, n, ZeroShift::Excluded)
}

pub fn analyze_self_with(
    b: &BitString,
    n: Option<usize>,
    zero_shift: ZeroShift,
) -> Result<Analysis> {
    analyze_ensemble(&build_self_ensemble_with(b, n, zero_shift)?)
}

/// Pair analysis; `n = None` uses `N = lcm(M_A, M_B)`.
pub fn analyze_pair(a: &BitString, b: &BitString, n: Option<usize>) -> Result<Analysis> {
    let n = match n {
        Some(n) => n,
        None => {
            let (ma, mb) = (a.len(), b.len());
            // Oversized pairs are rejected by the builder; fall back to 1
            // so that error surfaces instead of an overflow here.
            (ma / num_integer::gcd(ma, mb)).checked_mul(mb).unwrap_or(1)
        }
    };
    analyze_ensemble(&build_pair_ensemble(a, b, n)?)
}
