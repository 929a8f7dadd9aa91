//! Special functions and the limit constants of the normalized energies.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const LANCZOS_G: f64 = 7.0;

/// Lanczos coefficients for `g = 7`, `n = 9`.
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(x) for `x > 0`.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("gamma_fn needs a positive finite argument, got {x}")));
    }
    if x < 0.5 {
        // Γ(x) = Γ(x + 1) / x keeps the kernel on its accurate range
        return Ok(lanczos(x + 1.0) / x);
    }
    Ok(lanczos(x))
}

fn lanczos(x: f64) -> f64 {
    let z = x - 1.0;
    let mut sum = LANCZOS_COEFFS[0];
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        sum += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    // t^{z+1/2} split in two halves to delay overflow
    let half = t.powf(0.5 * (z + 0.5));
    (2.0 * PI).sqrt() * half * (-t).exp() * half * sum
}

/// Number of terms in the accelerated alternating series.
const ETA_TERMS: usize = 64;

/// Dirichlet eta `η(s) = Σ (-1)^{k} (k+1)^{-s}` for real `s > 0`, using
/// Borwein's Chebyshev-weighted acceleration of the alternating series.
pub fn dirichlet_eta(s: f64) -> Result<f64> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::Domain(format!("dirichlet_eta needs s > 0, got {s}")));
    }
    let n = ETA_TERMS;
    // d_k = n Σ_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)
    let mut d = Vec::with_capacity(n + 1);
    let mut term = 1.0f64;
    let mut acc = term;
    d.push(acc);
    for i in 1..=n {
        let fi = i as f64;
        let fnn = n as f64;
        term *= 4.0 * (fnn + fi - 1.0) * (fnn - fi + 1.0) / ((2.0 * fi) * (2.0 * fi - 1.0));
        acc += term;
        d.push(acc);
    }
    let dn = d[n];
    let mut sum = 0.0;
    for k in (0..n).rev() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * (dn - d[k]) / ((k + 1) as f64).powf(s);
    }
    Ok(sum / dn)
}

/// Riemann ζ(s) for real `s > 0`, `s ≠ 1`, through `ζ(s) = η(s) / (1 - 2^{1-s})`.
///
/// On `(0, 1)` this is the analytic continuation.
pub fn zeta(s: f64) -> Result<f64> {
    if s == 1.0 {
        return Err(Error::Domain("zeta has a pole at s = 1".into()));
    }
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::Domain(format!("zeta is only provided for s > 0, got {s}")));
    }
    let eta = dirichlet_eta(s)?;
    // 1 - 2^{1-s} = -expm1((1-s) ln 2), accurate near s = 1
    let denom = -((1.0 - s) * std::f64::consts::LN_2).exp_m1();
    Ok(eta / denom)
}

/// `I_s(σ) = 2^{-s} Γ((1-s)/2) / (√π Γ(1-s/2))`, the continuous Riesz energy of arc length, `0 < s < 1`.
pub fn equilibrium_energy(s: f64) -> Result<f64> {
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::Domain(format!("continuous Riesz energy is finite only for 0 < s < 1, got {s}")));
    }
    Ok(2f64.powf(-s) * gamma_fn(0.5 * (1.0 - s))? / (PI.sqrt() * gamma_fn(1.0 - 0.5 * s)?))
}

pub fn euler_gamma() -> f64 {
    EULER_GAMMA
}

/// `2ζ(s) / (2π)^s`, the second-order constant of equally spaced points (`s ≠ 1`).
pub fn riesz_constant(s: f64) -> Result<f64> {
    Ok(2.0 * zeta(s)? / (2.0 * PI).powf(s))
}

/// `(γ - log(π/2)) / π`, the critical-case constant.
pub fn critical_constant() -> f64 {
    (EULER_GAMMA - (PI / 2.0).ln()) / PI
}

/// Asymptotic targets for the normalized energy of a greedy sequence at one `s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitTarget {
    pub s: f64,
    /// Lower limit of the normalized energy.
    pub liminf_value: f64,
    /// Upper limit when it is known in closed form (only the logarithmic case).
    pub limsup_value: Option<f64>,
    /// Whether the upper limit needs an extremal constant (h̲, h̄ or κ).
    pub limsup_factor_required: bool,
}

/// The liminf (and, for `s = 0`, limsup) target of the normalized energy at `s`.
pub fn limit_constant(s: f64) -> Result<LimitTarget> {
    if !(s >= 0.0) || !s.is_finite() {
        return Err(Error::Domain(format!("s must be finite and >= 0, got {s}")));
    }
    let target = if s == 0.0 {
        LimitTarget { s, liminf_value: 0.0, limsup_value: Some((4.0f64 / 3.0).ln()), limsup_factor_required: false }
    } else if s == 1.0 {
        LimitTarget { s, liminf_value: critical_constant(), limsup_value: None, limsup_factor_required: true }
    } else {
        LimitTarget { s, liminf_value: riesz_constant(s)?, limsup_value: None, limsup_factor_required: true }
    };
    Ok(target)
}
