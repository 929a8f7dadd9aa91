//! Command implementations behind the `leja-energy` binary.
//!
//! Each command is a plain function returning rows or a report so it can be
//! driven from tests; `main.rs` only parses flags, writes files and maps
//! outcomes to exit codes.

use std::f64::consts::PI;
use std::fmt;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::asymptotics::{extremal_search, ExtremalEstimate, ExtremalKind};
use crate::dyadic::{decompose, square_from_blocks, tau, tau_cumulative_fast};
use crate::energy::{
    cross_energy, equally_spaced_energy, log_stat_rewrite, normalized_stat, pairwise_energy, prefix_energies,
    EnergyTable, Regime,
};
use crate::error::{Error, Result};
use crate::leja::{
    canonical_point, canonical_section, chord_from_half_turns, discrete_potential, grow_greedy, randomized_section,
    HalfTurns,
};
use crate::specfun::{limit_constant, riesz_constant, EULER_GAMMA};

pub const SWEEP_HEADER: &str = "N,tau,s,energy,normalized";
pub const CONJECTURE_HEADER: &str = "N,tau,s,energy,normalized,running_max";
pub const ORACLE_HEADER: &str = "k,angle,value,predicted,rel_deviation";

/// Relative tolerance of the formula/brute-force comparison.
pub const ORACLE_EQUIVALENCE_TOL: f64 = 1e-10;
/// Relative tolerance of greedy-oracle products and potentials.
pub const GREEDY_TOL: f64 = 1e-6;

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// One line of a sweep CSV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub n_value: u64,
    pub tau: u32,
    pub s: f64,
    pub energy: f64,
    pub normalized: f64,
}

/// `E_s(α_N)` and its normalization for every `N` in `2..=max_n`, ascending.
pub fn sweep_rows(s: f64, max_n: u64) -> Result<Vec<SweepRow>> {
    if max_n < 2 {
        return Err(Error::Domain(format!("sweep needs max_n >= 2, got {max_n}")));
    }
    let table = EnergyTable::for_max_n(s, max_n)?;
    (2..=max_n)
        .into_par_iter()
        .map(|n| {
            let energy = table.fast_energy(n)?;
            let stat = normalized_stat(n, s, energy)?;
            Ok(SweepRow { n_value: n, tau: tau(n), s, energy, normalized: stat.normalized })
        })
        .collect()
}

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], mut out: W) -> io::Result<()> {
    writeln!(out, "{SWEEP_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            r.n_value,
            r.tau,
            format_f64(r.s),
            format_f64(r.energy),
            format_f64(r.normalized)
        )?;
    }
    out.flush()
}

/// Point sequences compared in the conjecture probe.
#[derive(Debug, Clone, PartialEq)]
pub enum SequenceFamily {
    /// The canonical Leja (greedy) sequence.
    Greedy,
    /// Van der Corput angles `2π φ_2(n)` with `φ_2` the base-2 radical inverse.
    ///
    /// Bit reversal of `n` is exactly the canonical Leja point `a_n`, so this
    /// family reproduces the greedy sequence point for point.
    Vdc,
    /// Independent uniform angles from a seeded generator.
    Random,
    /// Angles in half-turns read from a text file, one per line.
    CustomFile(PathBuf),
}

impl SequenceFamily {
    pub fn parse(name: &str, input: Option<&Path>) -> Result<Self> {
        match name {
            "greedy" => Ok(Self::Greedy),
            "vdc" => Ok(Self::Vdc),
            "random" => Ok(Self::Random),
            "custom-file" | "custom" => input
                .map(|p| Self::CustomFile(p.to_path_buf()))
                .ok_or_else(|| Error::Domain("family custom-file needs --input <path>".into())),
            other => Err(Error::Domain(format!("unknown family {other:?}"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Greedy => "greedy",
            Self::Vdc => "vdc",
            Self::Random => "random",
            Self::CustomFile(_) => "custom-file",
        }
    }

    /// First `max_n` points of the family, checked pairwise distinct.
    pub fn points(&self, max_n: usize, seed: u64) -> Result<Vec<HalfTurns>> {
        let points: Vec<HalfTurns> = match self {
            Self::Greedy => canonical_section(max_n)?.points().iter().map(|&p| HalfTurns::from(p)).collect(),
            Self::Vdc => (0..max_n as u64).map(|n| HalfTurns(2.0 * radical_inverse_base2(n))).collect(),
            Self::Random => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..max_n).map(|_| HalfTurns(rng.gen_range(0.0..2.0))).collect()
            }
            Self::CustomFile(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))?;
                let all = parse_angles(&text)?;
                if all.len() < max_n {
                    return Err(Error::Domain(format!(
                        "{} holds {} points, fewer than max_n = {max_n}",
                        path.display(),
                        all.len()
                    )));
                }
                all.into_iter().take(max_n).collect()
            }
        };
        check_distinct(&points)?;
        Ok(points)
    }
}

/// `φ_2(n)`: the binary digits of `n` mirrored about the radix point.
pub fn radical_inverse_base2(n: u64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let bits = 64 - n.leading_zeros();
    (n.reverse_bits() >> (64 - bits)) as f64 / (1u64 << bits) as f64
}

fn parse_angles(text: &str) -> Result<Vec<HalfTurns>> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .map(|(i, l)| {
            l.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .map(|x| HalfTurns(x).reduced())
                .ok_or_else(|| Error::Domain(format!("line {}: {l:?} is not an angle", i + 1)))
        })
        .collect()
}

fn check_distinct(points: &[HalfTurns]) -> Result<()> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| points[a].0.rem_euclid(2.0).total_cmp(&points[b].0.rem_euclid(2.0)));
    for w in idx.windows(2) {
        if chord_from_half_turns(points[w[0]].0 - points[w[1]].0) == 0.0 {
            return Err(Error::CoincidentPoints(w[0].min(w[1]), w[0].max(w[1])));
        }
    }
    if let (Some(&first), Some(&last)) = (idx.first(), idx.last()) {
        if first != last && chord_from_half_turns(points[first].0 - points[last].0) == 0.0 {
            return Err(Error::CoincidentPoints(first.min(last), first.max(last)));
        }
    }
    Ok(())
}

/// One line of a conjecture-probe CSV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConjectureRow {
    pub n_value: u64,
    pub tau: u32,
    pub s: f64,
    pub energy: f64,
    pub normalized: f64,
    pub running_max: f64,
}

/// Normalized energies of every prefix of `points` (`N >= 2`) with their running maximum.
pub fn conjecture_rows(points: &[HalfTurns], s: f64) -> Result<Vec<ConjectureRow>> {
    let energies = prefix_energies(points, s)?;
    let mut running_max = f64::NEG_INFINITY;
    let mut rows = Vec::with_capacity(points.len().saturating_sub(1));
    for (i, &energy) in energies.iter().enumerate().skip(1) {
        let n = i as u64 + 1;
        let normalized = normalized_stat(n, s, energy)?.normalized;
        running_max = running_max.max(normalized);
        rows.push(ConjectureRow { n_value: n, tau: tau(n), s, energy, normalized, running_max });
    }
    Ok(rows)
}

pub fn write_conjecture_csv<W: Write>(rows: &[ConjectureRow], mut out: W) -> io::Result<()> {
    writeln!(out, "{CONJECTURE_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.n_value,
            r.tau,
            format_f64(r.s),
            format_f64(r.energy),
            format_f64(r.normalized),
            format_f64(r.running_max)
        )?;
    }
    out.flush()
}

/// Outcome of one invariant check.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyCheck {
    pub name: String,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl VerifyCheck {
    fn new(name: impl Into<String>, max_error: f64, tolerance: f64) -> Self {
        let passed = max_error <= tolerance;
        Self { name: name.into(), max_error, tolerance, passed }
    }

    fn exact(name: impl Into<String>, failures: usize) -> Self {
        Self { name: name.into(), max_error: failures as f64, tolerance: 0.0, passed: failures == 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct VerifyReport {
    pub checks: Vec<VerifyCheck>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "[{}] {:<48} max_error = {:.3e} (tolerance {:.1e})",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.max_error,
                c.tolerance
            )?;
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

fn rel_err(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs()
    }
}

/// Runs the module invariants for every `N <= max_n`.
pub fn run_verify(max_n: u64, s_list: &[f64], seeds: u64) -> Result<VerifyReport> {
    if max_n < 4 {
        return Err(Error::Domain(format!("verify needs max_n >= 4, got {max_n}")));
    }
    for &s in s_list {
        Regime::of(s)?;
    }
    let mut checks = Vec::new();
    let len = max_n as usize;

    // integer lemmas
    let mut naive = 0u128;
    let mut tau_failures = 0usize;
    let mut square_failures = 0usize;
    for n in 1..=max_n {
        if tau_cumulative_fast(n)? != naive {
            tau_failures += 1;
        }
        naive += tau(n) as u128;
        if square_from_blocks(&decompose(n)?)? != (n as i128) * (n as i128) {
            square_failures += 1;
        }
    }
    checks.push(VerifyCheck::exact("tau cumulative: closed form = running sum", tau_failures));
    checks.push(VerifyCheck::exact("N^2 block expansion (exact)", square_failures));

    // structure
    let canonical = canonical_section(len)?;
    let randomized = (0..seeds).map(|seed| randomized_section(len, seed)).collect::<Result<Vec<_>>>()?;
    let prefix_failures = std::iter::once(&canonical)
        .chain(randomized.iter())
        .filter(|sec| !sec.has_prefix_property())
        .count();
    checks.push(VerifyCheck::exact("power-of-two prefixes are roots of unity", prefix_failures));

    // formula vs brute force
    for &s in s_list {
        let table = EnergyTable::for_max_n(s, max_n)?;
        let fast = (2..=max_n).map(|n| table.fast_energy(n)).collect::<Result<Vec<_>>>()?;
        let mut worst = 0.0f64;
        let mut dominated = 0usize;
        for sec in std::iter::once(&canonical).chain(randomized.iter()) {
            let brute = prefix_energies(sec.points(), s)?;
            for (i, &f) in fast.iter().enumerate() {
                worst = worst.max(rel_err(f, brute[i + 1]));
            }
        }
        for (i, &f) in fast.iter().enumerate() {
            let n = i as u64 + 2;
            let optimal = equally_spaced_energy(n, s)?;
            if f < optimal - 1e-12 * optimal.abs() {
                dominated += 1;
            }
        }
        checks.push(VerifyCheck::new(
            format!("binary formula = pairwise energy, s = {s}"),
            worst,
            ORACLE_EQUIVALENCE_TOL,
        ));
        checks.push(VerifyCheck::exact(format!("E_s(alpha_N) >= L_s(N), s = {s}"), dominated));
    }

    // logarithmic second-order statistic
    let upper = (4.0f64 / 3.0).ln();
    let mut bound_failures = 0usize;
    let mut rewrite_err = 0.0f64;
    let mut halving_err = 0.0f64;
    let stat = |n: u64| -> Result<f64> { Ok(normalized_stat(n, 0.0, tau_energy(n)?)?.normalized) };
    for n in 2..=max_n {
        let v = stat(n)?;
        let in_range = v >= 0.0 && v < upper && (!n.is_power_of_two() || v == 0.0);
        if !in_range {
            bound_failures += 1;
        }
        rewrite_err = rewrite_err.max((log_stat_rewrite(n)? - v).abs());
        halving_err = halving_err.max((stat(2 * n)? - v).abs());
    }
    checks.push(VerifyCheck::exact("0 <= (E_0 + N log N)/N < log(4/3), = 0 at 2^n", bound_failures));
    checks.push(VerifyCheck::new("gap-form rewrite = direct statistic", rewrite_err, 1e-12));
    checks.push(VerifyCheck::new("statistic at N = statistic at 2N", halving_err, 1e-12));

    // disjoint union
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut union_err = 0.0f64;
    for &s in s_list {
        for _ in 0..20 {
            let a: Vec<HalfTurns> = (0..rng.gen_range(2..40)).map(|_| HalfTurns(rng.gen_range(0.0..2.0))).collect();
            let b: Vec<HalfTurns> = (0..rng.gen_range(2..40)).map(|_| HalfTurns(rng.gen_range(0.0..2.0))).collect();
            let joined: Vec<HalfTurns> = a.iter().chain(b.iter()).copied().collect();
            let lhs = pairwise_energy(&joined, s)?;
            let rhs = pairwise_energy(&a, s)? + pairwise_energy(&b, s)? + cross_energy(&a, &b, s)?;
            union_err = union_err.max((lhs - rhs).abs() / lhs.abs().max(1.0));
        }
    }
    checks.push(VerifyCheck::new("disjoint-union energy decomposition", union_err, 1e-12));

    Ok(VerifyReport { checks })
}

fn tau_energy(n: u64) -> Result<f64> {
    Ok(-2.0 * std::f64::consts::LN_2 * tau_cumulative_fast(n)? as f64)
}

/// Result of the constants command.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantsReport {
    pub s: f64,
    pub regime: Regime,
    pub liminf: f64,
    /// Upper-limit target; for `s > 0` built from the extremal estimate, so it is a certified bound.
    pub limsup_target: f64,
    pub estimate: Option<ExtremalEstimate>,
    /// `(p_max, t_max, value)` for growing bounds.
    pub trajectory: Vec<(usize, u32, f64)>,
    /// `(k, N, statistic)` along `N = (4^{k+1} - 1)/3`, only for `s = 0`.
    pub log_witness: Vec<(u32, u64, f64)>,
}

impl fmt::Display for ConstantsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "s = {} ({} regime)", self.s, self.regime.name())?;
        writeln!(f, "liminf target        = {}", format_f64(self.liminf))?;
        match &self.estimate {
            None => {
                writeln!(f, "limsup target        = log(4/3) = {}", format_f64(self.limsup_target))?;
                writeln!(f, "witness family       N = (4^(k+1) - 1)/3")?;
                for (k, n, v) in &self.log_witness {
                    writeln!(f, "  k = {k:>2}  N = {n:>20}  (E_0 + N log N)/N = {}", format_f64(*v))?;
                }
            }
            Some(est) => {
                let bound = match est.kind {
                    ExtremalKind::HLower => "<=",
                    _ => ">=",
                };
                writeln!(
                    f,
                    "{:<20} {} {}   (p_max = {}, t_max = {})",
                    est.kind.name(),
                    bound,
                    format_f64(est.value),
                    est.search_bounds.0,
                    est.search_bounds.1
                )?;
                writeln!(f, "witness              {}", est.witness.trimmed())?;
                let (lhs, rhs) = match est.kind {
                    ExtremalKind::Kappa => ("(gamma - log(pi/2) + kappa)/pi", ">="),
                    ExtremalKind::HLower => ("h_lower * 2 zeta(s)/(2 pi)^s", ">="),
                    ExtremalKind::HUpper => ("h_upper * 2 zeta(s)/(2 pi)^s", ">="),
                };
                writeln!(f, "limsup target        {lhs} {rhs} {}", format_f64(self.limsup_target))?;
                writeln!(f, "convergence as bounds grow:")?;
                for (p, t, v) in &self.trajectory {
                    writeln!(f, "  p_max = {p:>2}  t_max = {t:>2}  value = {}", format_f64(*v))?;
                }
            }
        }
        Ok(())
    }
}

/// Liminf target, extremal estimate and composite limsup target at `s`.
pub fn run_constants(s: f64, p_max: usize, t_max: u32) -> Result<ConstantsReport> {
    let regime = Regime::of(s)?;
    let target = limit_constant(s)?;
    if regime == Regime::Log {
        let log_witness = (1..=20u32)
            .map(|k| {
                let n = ((1u64 << (2 * k + 2)) - 1) / 3;
                Ok((k, n, log_stat_rewrite(n)?))
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(ConstantsReport {
            s,
            regime,
            liminf: target.liminf_value,
            limsup_target: target.limsup_value.unwrap_or((4.0f64 / 3.0).ln()),
            estimate: None,
            trajectory: Vec::new(),
            log_witness,
        });
    }
    let kind = match regime {
        Regime::Subcritical => ExtremalKind::HLower,
        Regime::Critical => ExtremalKind::Kappa,
        _ => ExtremalKind::HUpper,
    };
    let mut trajectory = Vec::new();
    let mut t = 4.min(t_max);
    loop {
        let est = extremal_search(s, kind, p_max, t)?;
        trajectory.push((p_max, t, est.value));
        if t >= t_max {
            break;
        }
        t = (t + 4).min(t_max);
    }
    let estimate = extremal_search(s, kind, p_max, t_max)?;
    let limsup_target = match kind {
        ExtremalKind::Kappa => (EULER_GAMMA - (PI / 2.0).ln() + estimate.value) / PI,
        _ => estimate.value * riesz_constant(s)?,
    };
    Ok(ConstantsReport {
        s,
        regime,
        liminf: target.liminf_value,
        limsup_target,
        estimate: Some(estimate),
        trajectory,
        log_witness: Vec::new(),
    })
}

/// One greedy step of the oracle command.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleStep {
    pub k: usize,
    pub angle: f64,
    /// `Π |a_k - a_i|` for `s = 0`, the attained potential otherwise.
    pub value: f64,
    /// `2^{τ(k)}` for `s = 0`, the potential of the canonical `a_k` otherwise.
    pub predicted: f64,
    pub rel_deviation: f64,
}

/// Grows a greedy sequence of `steps` new points numerically and compares each step with the structure.
pub fn run_oracle(steps: usize, s: f64, grid: usize) -> Result<Vec<OracleStep>> {
    if steps == 0 || steps > 256 {
        return Err(Error::Domain(format!("oracle runs 1..=256 steps, got {steps}")));
    }
    if grid <= 4 * steps {
        return Err(Error::GridTooCoarse { grid, points: steps, min: 4 * steps + 1 });
    }
    let choices = grow_greedy(steps, s, grid)?;
    let mut grown = vec![0.0];
    let mut out = Vec::with_capacity(steps);
    for (i, c) in choices.iter().enumerate() {
        let k = i + 1;
        let (value, predicted) = if s == 0.0 {
            let product: f64 = grown.iter().map(|&a| chord_from_half_turns(c.angle - a)).product();
            (product, 2f64.powi(tau(k as u64) as i32))
        } else {
            let canonical: Vec<f64> = (0..k as u64).map(|j| canonical_point(j).half_turns()).collect();
            (c.potential, discrete_potential(&canonical, canonical_point(k as u64).half_turns(), s))
        };
        out.push(OracleStep { k, angle: c.angle, value, predicted, rel_deviation: rel_err(value, predicted) });
        grown.push(c.angle);
    }
    Ok(out)
}

pub fn write_oracle_csv<W: Write>(steps: &[OracleStep], mut out: W) -> io::Result<()> {
    writeln!(out, "{ORACLE_HEADER}")?;
    for st in steps {
        writeln!(
            out,
            "{},{},{},{},{}",
            st.k,
            format_f64(st.angle),
            format_f64(st.value),
            format_f64(st.predicted),
            format_f64(st.rel_deviation)
        )?;
    }
    out.flush()
}
