//! Thermodynamic analysis of finite binary strings.
//!
//! A string `B` of `M` bits is turned into an ensemble of measure values
//! `C_n`, the Hamming distance between `B` and its cyclic rotation by `n`
//! bits. The distribution of `C_n` is compared against a Gaussian
//! equilibrium whose width fixes a temperature, and from there come energy
//! levels, internal energy, a two-part entropy, the partition function,
//! free energy and pressure.
//!
//! ```
//! use strtherm_core::{analyze_self, BitString};
//!
//! let b: BitString = "0101".parse().unwrap();
//! let a = analyze_self(&b, None).unwrap();
//! // shifts 1, 2, 3 give measures 4, 0, 4
//! assert_eq!(a.histogram.total(), 3);
//! assert!(a.report.t > 0.0 && a.report.t < 0.25);
//! ```

pub mod bitstring;
pub mod ensemble;
pub mod equilibrium;
pub mod error;
pub mod report;
pub mod special;
pub mod thermo;

pub use bitstring::{random_bitstring, BitOrder, BitString};
pub use ensemble::{
    build_nonzero_self_ensemble, build_pair_ensemble, build_pair_ensemble_with_cap,
    build_self_ensemble, build_self_ensemble_with, ensemble_mean, histogram, Ensemble,
    EnsembleMode, Histogram, HistogramEntry, ZeroShift, DEFAULT_PAIR_CAP_BITS,
};
pub use equilibrium::{fit, fit_quality, CurvePoint, EquilibriumModel};
pub use error::{Error, Result};
pub use report::{
    analyze_ensemble, analyze_pair, analyze_self, analyze_self_with, Analysis, ThermoReport,
};
pub use thermo::{Entropy, EnsembleThermo};
