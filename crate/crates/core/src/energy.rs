//! Logarithmic and Riesz energies of circle configurations.
//!
//! Three routes to the same numbers: brute-force pairwise sums, the
//! equally-spaced closed form `L_s(N)`, and the binary-representation formula
//! that assembles `E_s(α_N)` from `L_s` at powers of two.

use std::f64::consts::{LN_2, PI};

use crate::dyadic::{decompose, tau_cumulative_fast, BinaryDecomposition};
use crate::error::{Error, Result};
use crate::leja::CirclePoint;
use crate::specfun::equilibrium_energy;
use crate::sum::CompensatedSum;

/// `-log r` for `s = 0`, `r^{-s}` otherwise.
#[inline]
pub fn kernel(chord: f64, s: f64) -> f64 {
    if s == 0.0 {
        -chord.ln()
    } else {
        chord.powf(-s)
    }
}

fn check_s(s: f64) -> Result<()> {
    if s >= 0.0 && s.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("kernel parameter s = {s} must be finite and >= 0")))
    }
}

/// Which second-order normalization applies at a given `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `s = 0`
    Log,
    /// `0 < s < 1`
    Subcritical,
    /// `s = 1`
    Critical,
    /// `s > 1`
    Supercritical,
}

impl Regime {
    pub fn of(s: f64) -> Result<Regime> {
        check_s(s)?;
        Ok(if s == 0.0 {
            Regime::Log
        } else if s < 1.0 {
            Regime::Subcritical
        } else if s == 1.0 {
            Regime::Critical
        } else {
            Regime::Supercritical
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Regime::Log => "log",
            Regime::Subcritical => "subcritical",
            Regime::Critical => "critical",
            Regime::Supercritical => "supercritical",
        }
    }
}

/// `log N`, exact to the last bit whenever `N` is a power of two.
pub fn log_n(n: u64) -> f64 {
    let top = 63 - n.leading_zeros();
    let base = (1u64 << top) as f64;
    top as f64 * LN_2 + ((n - (1u64 << top)) as f64 / base).ln_1p()
}

/// `N log N` with the same power-of-two exactness as [`log_n`].
pub fn n_log_n(n: u64) -> f64 {
    n as f64 * log_n(n)
}

/// `2 Σ_{i<j} k(x_i, x_j)`.
pub fn pairwise_energy<P: CirclePoint>(points: &[P], s: f64) -> Result<f64> {
    check_s(s)?;
    let mut acc = CompensatedSum::new();
    for (i, x) in points.iter().enumerate() {
        for (j, y) in points[..i].iter().enumerate() {
            let r = x.chord(y);
            if r == 0.0 {
                return Err(Error::CoincidentPoints(j, i));
            }
            acc.add(kernel(r, s));
        }
    }
    Ok(2.0 * acc.value())
}

/// `2 Σ_{x∈A} Σ_{y∈B} k(x, y)`, the interaction term between two disjoint sets.
pub fn cross_energy<P: CirclePoint>(a: &[P], b: &[P], s: f64) -> Result<f64> {
    check_s(s)?;
    let mut acc = CompensatedSum::new();
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            let r = x.chord(y);
            if r == 0.0 {
                return Err(Error::CoincidentPoints(i, a.len() + j));
            }
            acc.add(kernel(r, s));
        }
    }
    Ok(2.0 * acc.value())
}

/// Energies of every prefix: entry `n - 1` is the energy of the first `n` points.
///
/// Incremental, `O(len^2)` in total.
pub fn prefix_energies<P: CirclePoint>(points: &[P], s: f64) -> Result<Vec<f64>> {
    check_s(s)?;
    let mut out = Vec::with_capacity(points.len());
    let mut total = CompensatedSum::new();
    for (i, x) in points.iter().enumerate() {
        let mut row = CompensatedSum::new();
        for (j, y) in points[..i].iter().enumerate() {
            let r = x.chord(y);
            if r == 0.0 {
                return Err(Error::CoincidentPoints(j, i));
            }
            row.add(kernel(r, s));
        }
        total.add(2.0 * row.value());
        out.push(total.value());
    }
    Ok(out)
}

/// `L_s(N)`: energy of `N` equally spaced points, `-N log N` when `s = 0`.
///
/// `2^{-s} N Σ_{k=1}^{N-1} sin(kπ/N)^{-s}`, summed over `k <= N/2` using the
/// `k ↔ N - k` symmetry.
pub fn equally_spaced_energy(n: u64, s: f64) -> Result<f64> {
    check_s(s)?;
    if n == 0 {
        return Err(Error::ZeroN);
    }
    if n == 1 {
        return Ok(0.0);
    }
    if s == 0.0 {
        return Ok(-n_log_n(n));
    }
    let nf = n as f64;
    let mut acc = CompensatedSum::new();
    if n.is_multiple_of(2) {
        acc.add(1.0);
    }
    // smallest terms first
    for k in (1..=(n - 1) / 2).rev() {
        let x = (PI * (k as f64 / nf)).sin();
        acc.add(2.0 * x.powf(-s));
    }
    Ok(2f64.powf(-s) * nf * acc.value())
}

/// `L_s(2^m)` for `m = 0..=max_exponent` at one fixed `s`.
///
/// Filled once up front; lookups afterwards are read-only and can be shared across threads.
#[derive(Debug, Clone)]
pub struct EnergyTable {
    s: f64,
    values: Vec<f64>,
}

impl EnergyTable {
    pub fn new(s: f64, max_exponent: u32) -> Result<Self> {
        check_s(s)?;
        if max_exponent > 62 {
            return Err(Error::Domain(format!("exponent {max_exponent} is out of range")));
        }
        let values = (0..=max_exponent)
            .map(|m| equally_spaced_energy(1u64 << m, s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { s, values })
    }

    /// A table large enough to evaluate [`EnergyTable::fast_energy`] for every `N <= max_n`.
    pub fn for_max_n(s: f64, max_n: u64) -> Result<Self> {
        if max_n == 0 {
            return Err(Error::ZeroN);
        }
        Self::new(s, 64 - max_n.leading_zeros())
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn max_exponent(&self) -> u32 {
        (self.values.len() - 1) as u32
    }

    /// `L_s(2^m)`.
    pub fn power_of_two(&self, m: u32) -> Option<f64> {
        self.values.get(m as usize).copied()
    }

    /// `E_s(α_N)` from the binary representation of `N`.
    pub fn fast_energy(&self, n: u64) -> Result<f64> {
        let dec = decompose(n)?;
        if self.s == 0.0 {
            return Ok(-2.0 * LN_2 * tau_cumulative_fast(n)? as f64);
        }
        self.riesz_from_blocks(&dec)
    }

    /// `Σ_{k<t} c_k L_s(2^{n_k+1}) + Σ_k d_k L_s(2^{n_k})` with
    /// `c_k = Σ_{j>k} 2^{n_j-n_k}` and `d_k = 1 - 2 c_k`.
    fn riesz_from_blocks(&self, dec: &BinaryDecomposition) -> Result<f64> {
        let e = dec.exponents();
        let needed = e[0] + if e.len() > 1 { 1 } else { 0 };
        let table = |m: u32| {
            self.power_of_two(m).ok_or_else(|| {
                Error::Domain(format!("L_s(2^{m}) not cached (table stops at 2^{})", self.max_exponent()))
            })
        };
        table(needed)?;
        let mut acc = CompensatedSum::new();
        for k in 0..e.len() {
            let c: f64 = e[k + 1..].iter().map(|&nj| 2f64.powi(nj as i32 - e[k] as i32)).sum();
            if c != 0.0 {
                acc.add(c * table(e[k] + 1)?);
            }
            acc.add((1.0 - 2.0 * c) * table(e[k])?);
        }
        Ok(acc.value())
    }
}

/// `E_s(α_N)` for a Leja section, via the binary representation of `N`.
pub fn fast_energy(n: u64, s: f64) -> Result<f64> {
    check_s(s)?;
    if s == 0.0 {
        decompose(n)?;
        return Ok(-2.0 * LN_2 * tau_cumulative_fast(n)? as f64);
    }
    EnergyTable::for_max_n(s, n)?.fast_energy(n)
}

/// One energy value together with its regime-dependent second-order normalization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyStat {
    pub n_value: u64,
    pub s: f64,
    pub energy: f64,
    pub regime: Regime,
    pub normalized: f64,
}

/// Normalizes `energy` (computed at the same `N` and `s`):
///
/// | regime        | value                            |
/// |---------------|----------------------------------|
/// | log           | `(E + N log N) / N`              |
/// | subcritical   | `(E - I_s(σ) N^2) / N^{1+s}`     |
/// | critical      | `(E - N^2 log N / π) / N^2`      |
/// | supercritical | `E / N^{1+s}`                    |
pub fn normalized_stat(n: u64, s: f64, energy: f64) -> Result<EnergyStat> {
    let regime = Regime::of(s)?;
    if n < 2 {
        return Err(Error::Domain(format!("normalized statistics need N >= 2, got {n}")));
    }
    let nf = n as f64;
    let normalized = match regime {
        Regime::Log => (energy + n_log_n(n)) / nf,
        Regime::Subcritical => (energy - equilibrium_energy(s)? * nf * nf) / nf.powf(1.0 + s),
        Regime::Critical => (energy - nf * nf * log_n(n) / PI) / (nf * nf),
        Regime::Supercritical => energy / nf.powf(1.0 + s),
    };
    Ok(EnergyStat { n_value: n, s, energy, regime, normalized })
}

/// `(E_0(α_N) + N log N) / N` written through exponent gaps only:
///
/// `log 2 · Σ_{i>=2} (n_1 - n_i + 2 - 2i) 2^{n_i-n_1} / Σ_i 2^{n_i-n_1} + log Σ_i 2^{n_i-n_1}`.
pub fn log_stat_rewrite(n: u64) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain(format!("normalized statistics need N >= 2, got {n}")));
    }
    let dec = decompose(n)?;
    let e = dec.exponents();
    let n1 = e[0] as i64;
    let mut weighted = CompensatedSum::new();
    let mut mass = CompensatedSum::new();
    for (idx, &ni) in e.iter().enumerate() {
        let i = idx as i64 + 1;
        let w = 2f64.powi((ni as i64 - n1) as i32);
        mass.add(w);
        if i >= 2 {
            weighted.add((n1 - ni as i64 + 2 - 2 * i) as f64 * w);
        }
    }
    let mass = mass.value();
    Ok(LN_2 * weighted.value() / mass + mass.ln())
}
