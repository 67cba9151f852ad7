//! Normal and adjusted-binomial equilibrium models for an observed histogram.
//!
//! Both models are parameterised entirely by the ensemble mean:
//!
//! ```text
//! K  = 1 − √|1 − 2·C̄/M|
//! T  = K·(C̄/M)·(1 − C̄/M)
//! σ² = M·T
//! N₀ = 2N / √(2πσ²)
//! ```
//!
//! The factor 2 in `N₀` reflects that self-shift measures only take every
//! other integer value.

use std::f64::consts::PI;

use serde::Serialize;

use crate::ensemble::{ensemble_mean, Histogram};
use crate::error::{Error, Result};
use crate::special::ln_factorial;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EquilibriumModel {
    pub c_bar: f64,
    /// `C̄ / M`
    pub density: f64,
    pub k_factor: f64,
    pub sigma2: f64,
    pub temperature: f64,
    /// Peak expected count `N₀`; zero for a degenerate model.
    pub peak: f64,
    pub observations: u64,
    pub bit_len: usize,
    /// Set when `σ² = 0`: the ensemble is frozen and there is no curve.
    pub degenerate: bool,
}

/// `K = 1 − √|1 − 2d|` for density `d = C̄/M`.
pub fn k_factor(density: f64) -> f64 {
    1.0 - (1.0 - 2.0 * density).abs().sqrt()
}

/// Equilibrium temperature `K·d·(1 − d)` for density `d = C̄/M`.
pub fn temperature(density: f64) -> f64 {
    k_factor(density) * density * (1.0 - density)
}

pub fn fit(h: &Histogram) -> EquilibriumModel {
    EquilibriumModel::from_mean(ensemble_mean(h), h.total(), h.bit_len())
}

impl EquilibriumModel {
    /// The model implied by a mean measure `c_bar` over `observations`
    /// values of a `bit_len`-bit string.
    pub fn from_mean(c_bar: f64, observations: u64, bit_len: usize) -> Self {
        let density = c_bar / bit_len as f64;
        let k = k_factor(density);
        let t = (k * density * (1.0 - density)).max(0.0);
        let sigma2 = bit_len as f64 * t;
        let degenerate = !(sigma2 > 0.0);
        let peak = if degenerate {
            0.0
        } else {
            2.0 * observations as f64 / (2.0 * PI * sigma2).sqrt()
        };
        EquilibriumModel {
            c_bar,
            density,
            k_factor: k,
            sigma2,
            temperature: t,
            peak,
            observations,
            bit_len,
            degenerate,
        }
    }

    pub fn sigma(&self) -> f64 {
        self.sigma2.sqrt()
    }

    fn require_live(&self) -> Result<()> {
        if self.degenerate {
            Err(Error::DegenerateModel("zero variance"))
        } else {
            Ok(())
        }
    }

    /// Normal-approximation expected count at measure value `c`.
    pub fn normal_counts(&self, c: f64) -> Result<f64> {
        self.require_live()?;
        let d = c - self.c_bar;
        Ok(self.peak * (-d * d / (2.0 * self.sigma2)).exp())
    }

    /// Adjusted-binomial expected count at measure value `c`, with every
    /// factorial argument divided by `K` and evaluated as `ln Γ(x + 1)`.
    pub fn binomial_counts(&self, c: f64) -> Result<f64> {
        self.require_live()?;
        let k = self.k_factor;
        if !(k > 0.0) {
            return Err(Error::DegenerateModel("K = 0"));
        }
        if !(self.density > 0.0 && self.density < 1.0) {
            return Err(Error::DegenerateModel("density outside (0, 1)"));
        }
        let m = self.bit_len as f64;
        if !(0.0..=m).contains(&c) {
            return Ok(0.0);
        }
        let (x, y) = (c / k, (m - c) / k);
        let log_terms = ln_factorial(m / k) - ln_factorial(x) - ln_factorial(y)
            + x * self.density.ln()
            + y * (1.0 - self.density).ln();
        Ok(2.0 * self.observations as f64 / k * log_terms.exp())
    }
}

/// RMS deviation between observed occupation numbers and the normal model,
/// evaluated at the observed values only and scaled by `N₀`.
pub fn fit_quality(h: &Histogram, model: &EquilibriumModel) -> Result<f64> {
    model.require_live()?;
    let mut sum_sq = 0.0;
    for e in h.entries() {
        let resid = e.count as f64 - model.normal_counts(e.value as f64)?;
        sum_sq += resid * resid;
    }
    Ok((sum_sq / h.entries().len() as f64).sqrt() / model.peak)
}

/// One sample of the model curves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub c: u64,
    pub normal: f64,
    pub binomial: f64,
}

/// Both model curves on every attainable value in `C̄ ± 5σ`, clipped to
/// `[0, measure bound]`. Values step by two and keep the parity of the
/// observed measures.
pub fn curve(h: &Histogram, model: &EquilibriumModel) -> Result<Vec<CurvePoint>> {
    model.require_live()?;
    let parity = h.entries().first().map_or(0, |e| e.value % 2);
    let spread = 5.0 * model.sigma();
    let lo = (model.c_bar - spread).ceil().max(0.0) as u64;
    let hi = (model.c_bar + spread).floor().min(h.measure_bound() as f64);
    if hi < 0.0 {
        return Ok(Vec::new());
    }
    let hi = hi as u64;
    let start = if lo % 2 == parity { lo } else { lo + 1 };
    (start..=hi)
        .step_by(2)
        .map(|c| {
            Ok(CurvePoint {
                c,
                normal: model.normal_counts(c as f64)?,
                binomial: model.binomial_counts(c as f64)?,
            })
        })
        .collect()
}
