//! Limit vectors of dyadic block proportions and the extremal constants built on them.
//!
//! A vector in `Θ_p` has the form `(2^{t_1}, ..., 2^{t_{r-1}}, 1, 0, ..., 0) / M`
//! with `M = 2^{t_1} + ... + 2^{t_{r-1}} + 1` odd and `r <= p`; it is exactly
//! the vector of block proportions `2^{n_i} / N` of any `N = M 2^k`. The
//! family is countable, so bounded exhaustive search gives one-sided bounds on
//! the extremal constants.

use std::f64::consts::{LN_2, PI};
use std::fmt;

use rayon::prelude::*;

use crate::dyadic::{decompose, odd_part, tau};
use crate::error::{Error, Result};
use crate::specfun::{riesz_constant, EULER_GAMMA};
use crate::sum::CompensatedSum;

/// Largest supported exponent bound; keeps every `M` inside `u64`.
pub const MAX_T: u32 = 62;

/// An exact element of `Θ_p`: numerators over a common odd denominator `M`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ThetaVector {
    numerators: Vec<u64>,
    denominator: u64,
}

impl ThetaVector {
    /// The vector whose nonzero entries are `2^{t_i} / M` for the binary ones of odd `M`,
    /// padded with zeros to `p` entries.
    pub fn from_odd(m: u64, p: usize) -> Result<Self> {
        if m.is_multiple_of(2) {
            return Err(Error::Domain(format!("denominator {m} must be odd")));
        }
        let dec = decompose(m)?;
        if dec.len() > p {
            return Err(Error::Domain(format!("{m} has {} binary ones, more than p = {p}", dec.len())));
        }
        let mut numerators: Vec<u64> = dec.exponents().iter().map(|&e| 1u64 << e).collect();
        numerators.resize(p, 0);
        Ok(Self { numerators, denominator: m })
    }

    /// Odd denominator `M`.
    pub fn m_value(&self) -> u64 {
        self.denominator
    }

    pub fn numerators(&self) -> &[u64] {
        &self.numerators
    }

    /// `p`, counting trailing zeros.
    pub fn len(&self) -> usize {
        self.numerators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numerators.is_empty()
    }

    /// `t_1 > ... > t_{r-1}`; the final `1/M` entry is not listed.
    pub fn block_exponents(&self) -> Vec<u32> {
        self.numerators
            .iter()
            .filter(|&&x| x > 1)
            .map(|x| x.trailing_zeros())
            .collect()
    }

    /// The same vector with `p - len` extra zeros.
    pub fn padded(&self, p: usize) -> Self {
        let mut v = self.clone();
        if p > v.numerators.len() {
            v.numerators.resize(p, 0);
        }
        v
    }

    /// Nonzero part only.
    pub fn trimmed(&self) -> Self {
        let mut v = self.clone();
        while v.numerators.last() == Some(&0) {
            v.numerators.pop();
        }
        v
    }

    pub fn sums_to_one(&self) -> bool {
        self.numerators.iter().sum::<u64>() == self.denominator
    }

    pub fn entries(&self) -> Vec<f64> {
        let m = self.denominator as f64;
        self.numerators.iter().map(|&x| x as f64 / m).collect()
    }

    /// `(θ_k, Σ_{j>k} θ_j)` with both computed from exact integer sums.
    fn with_tails(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let m = self.denominator as f64;
        let mut rest: u64 = self.numerators.iter().sum();
        self.numerators.iter().map(move |&x| {
            rest -= x;
            (x as f64 / m, rest as f64 / m)
        })
    }

    /// Whether `θ_k >= 2 Σ_{j>k} θ_j` for every `k`, the condition under which `H(θ; ·)` is convex.
    pub fn dominates_tails(&self) -> bool {
        let mut rest: u64 = self.numerators.iter().sum();
        self.numerators.iter().all(|&x| {
            rest -= x;
            x == 0 || x >= 2 * rest
        })
    }
}

impl fmt::Display for ThetaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, &x) in self.numerators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if x == 0 {
                write!(f, "0")?;
            } else {
                write!(f, "{}/{}", x, self.denominator)?;
            }
        }
        write!(f, ")")
    }
}

/// Block proportions `2^{n_i} / N` of `N`, reduced to the odd part of `N`.
pub fn theta_of(n: u64) -> Result<ThetaVector> {
    let (m, _) = odd_part(n)?;
    ThetaVector::from_odd(m, tau(m) as usize)
}

fn check_bounds(p_max: usize, t_max: u32) -> Result<()> {
    if p_max == 0 || t_max == 0 {
        return Err(Error::Domain("p_max and t_max must be positive".into()));
    }
    if t_max > MAX_T {
        return Err(Error::Domain(format!("t_max = {t_max} exceeds {MAX_T}")));
    }
    Ok(())
}

/// Odd `M` in the search space: `M < 2^{t_max+1}` with at most `p_max` binary ones.
fn odd_range(p_max: usize, t_max: u32) -> impl Iterator<Item = u64> {
    (0..(1u64 << t_max)).map(|i| 2 * i + 1).filter(move |&m| tau(m) as usize <= p_max)
}

/// Every vector of `Θ_{p_max}` with `t_1 <= t_max`, padded to `p_max` entries, in increasing `M`.
pub fn enumerate_theta(p_max: usize, t_max: u32) -> Result<impl Iterator<Item = ThetaVector>> {
    check_bounds(p_max, t_max)?;
    Ok(odd_range(p_max, t_max).map(move |m| ThetaVector::from_odd(m, p_max).expect("odd M within p_max")))
}

/// `H(θ; s) = Σ_k θ_k^s (2(2^s - 1) Σ_{j>k} θ_j + θ_k)`.
///
/// Zero entries sit at the end and contribute nothing.
pub fn h_function(theta: &ThetaVector, s: f64) -> f64 {
    let c = 2.0 * (2f64.powf(s) - 1.0);
    theta
        .with_tails()
        .filter(|&(x, _)| x > 0.0)
        .map(|(x, tail)| x.powf(s) * (c * tail + x))
        .collect::<CompensatedSum>()
        .value()
}

/// `K(θ) = 2 log 2 + Σ θ_k^2 log(θ_k / 4) + 2 Σ_k (Σ_{j>k} θ_j) θ_k log θ_k`, with `0 log 0 = 0`.
pub fn k_function(theta: &ThetaVector) -> f64 {
    let mut acc = CompensatedSum::new();
    acc.add(2.0 * LN_2);
    for (x, tail) in theta.with_tails().filter(|&(x, _)| x > 0.0) {
        let lx = x.ln();
        acc.add(x * x * (lx - 2.0 * LN_2));
        acc.add(2.0 * tail * x * lx);
    }
    acc.value()
}

/// Which extremal constant a search estimates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtremalKind {
    /// `h̲(s) = inf H(θ; s)`, `0 < s < 1`.
    HLower,
    /// `h̄(s) = sup H(θ; s)`, `s > 1`.
    HUpper,
    /// `κ = sup K(θ)`.
    Kappa,
}

impl ExtremalKind {
    pub fn name(&self) -> &'static str {
        match self {
            ExtremalKind::HLower => "h_lower",
            ExtremalKind::HUpper => "h_upper",
            ExtremalKind::Kappa => "kappa",
        }
    }

    fn minimizes(&self) -> bool {
        matches!(self, ExtremalKind::HLower)
    }

    fn evaluate(&self, theta: &ThetaVector, s: f64) -> f64 {
        match self {
            ExtremalKind::Kappa => k_function(theta),
            _ => h_function(theta, s),
        }
    }
}

/// Best value found by a bounded search and the vector attaining it.
///
/// For `HLower` the value is an upper bound on the true infimum; for `HUpper`
/// and `Kappa` it is a lower bound on the true supremum.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalEstimate {
    pub s: f64,
    pub kind: ExtremalKind,
    pub value: f64,
    pub witness: ThetaVector,
    pub search_bounds: (usize, u32),
}

impl ExtremalEstimate {
    /// Re-evaluates the witness.
    pub fn witness_value(&self) -> f64 {
        self.kind.evaluate(&self.witness, self.s)
    }
}

/// Exhaustive search of `H` (or `K`) over [`enumerate_theta`]`(p_max, t_max)`.
///
/// Ties keep the smallest denominator, so the witness does not depend on thread scheduling.
pub fn extremal_search(s: f64, kind: ExtremalKind, p_max: usize, t_max: u32) -> Result<ExtremalEstimate> {
    check_bounds(p_max, t_max)?;
    match kind {
        ExtremalKind::HLower if !(s > 0.0 && s < 1.0) => {
            return Err(Error::BoundMisuse { kind: kind.name(), expected: "0 < s < 1", s });
        }
        ExtremalKind::HUpper if !(s > 1.0 && s.is_finite()) => {
            return Err(Error::BoundMisuse { kind: kind.name(), expected: "s > 1", s });
        }
        _ => {}
    }
    let minimize = kind.minimizes();
    let better = |a: (f64, u64), b: (f64, u64)| -> (f64, u64) {
        let a_wins = if a.0 == b.0 {
            a.1 < b.1
        } else if minimize {
            a.0 < b.0
        } else {
            a.0 > b.0
        };
        if a_wins {
            a
        } else {
            b
        }
    };
    let identity = if minimize { (f64::INFINITY, u64::MAX) } else { (f64::NEG_INFINITY, u64::MAX) };
    let (value, m) = (0..(1u64 << t_max))
        .into_par_iter()
        .map(|i| 2 * i + 1)
        .filter(|&m| tau(m) as usize <= p_max)
        .map(|m| {
            let theta = ThetaVector::from_odd(m, p_max).expect("odd M within p_max");
            (kind.evaluate(&theta, s), m)
        })
        .reduce(|| identity, better);
    let witness = ThetaVector::from_odd(m, p_max)?;
    Ok(ExtremalEstimate { s, kind, value, witness, search_bounds: (p_max, t_max) })
}

/// Limit of the normalized energy along `N = M 2^k`, `k → ∞`, where `θ = theta_of(N)`:
/// `H(θ; s) 2ζ(s)/(2π)^s` for `s ≠ 1`, `(γ - log(π/2) + K(θ)) / π` for `s = 1`.
pub fn limsup_target(theta: &ThetaVector, s: f64) -> Result<f64> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::Domain(format!("subsequence limits are defined for s > 0, got {s}")));
    }
    if s == 1.0 {
        Ok((EULER_GAMMA - (PI / 2.0).ln() + k_function(theta)) / PI)
    } else {
        Ok(h_function(theta, s) * riesz_constant(s)?)
    }
}
