//! Log-gamma helpers.
//!
//! Factorials of every size that shows up here (ensemble sizes, bit lengths
//! up to 2^26 and the non-integer `x/K` arguments of the adjusted binomial)
//! are handled as `ln Γ(x + 1)`.

/// Natural log of the gamma function for `x > 0`.
#[inline]
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma_r(x).0
}

/// `ln(x!)` generalised to real `x >= 0`.
#[inline]
pub fn ln_factorial(x: f64) -> f64 {
    ln_gamma(x + 1.0)
}

/// `ln C(n, k)` for real arguments with `0 <= k <= n`.
#[inline]
pub fn ln_binomial(n: f64, k: f64) -> f64 {
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}
