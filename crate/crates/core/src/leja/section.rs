//! Exact construction of N-Leja sections on the unit circle.
//!
//! Every Leja section with `a_0 = 1` doubles as `α_{2^{n+1}} = (α_{2^n}, ρ β_{2^n})`
//! where `ρ` is a `2^n`-th root of `-1` and `β` is another `2^n`-Leja section.
//! The canonical section fixes `ρ = exp(iπ/2^n)` and `β = α`, which makes
//! `a_k` the bit reversal of `k` read as a binary fraction of a half-turn.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::angle::{DyadicAngle, MAX_LEVEL};
use crate::error::{Error, Result};

/// The first `N` points of a Leja sequence, in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LejaSection {
    points: Vec<DyadicAngle>,
}

impl LejaSection {
    pub fn points(&self) -> &[DyadicAngle] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn into_points(self) -> Vec<DyadicAngle> {
        self.points
    }

    /// Checks that every power-of-two prefix is exactly the set of roots of unity of that order.
    pub fn has_prefix_property(&self) -> bool {
        let mut size = 1usize;
        let mut n = 0u32;
        while size <= self.points.len() {
            let prefix = &self.points[..size];
            if !prefix.iter().all(|p| p.is_root_of_unity_of_order(n)) {
                return false;
            }
            let mut sorted = prefix.to_vec();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != size {
                return false;
            }
            size <<= 1;
            n += 1;
        }
        true
    }
}

/// The `k`-th point of the canonical Leja sequence: `Σ_{bits b of k} 2^{-b}` half-turns.
pub fn canonical_point(k: u64) -> DyadicAngle {
    if k == 0 {
        return DyadicAngle::ZERO;
    }
    let top = 63 - k.leading_zeros();
    // reverse the low top+1 bits: bit b maps to weight 2^{top-b}
    let j = k.reverse_bits() >> (63 - top);
    DyadicAngle::new(j, top)
}

fn check_len(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroN);
    }
    if (n as u128) > (1u128 << MAX_LEVEL) {
        return Err(Error::Domain(format!("section length {n} exceeds 2^{MAX_LEVEL}")));
    }
    Ok(())
}

/// The canonical `N`-Leja section starting at `1`.
pub fn canonical_section(n: usize) -> Result<LejaSection> {
    check_len(n)?;
    Ok(LejaSection { points: (0..n as u64).map(canonical_point).collect() })
}

/// Seed for the independent sub-section generated at a given doubling level.
fn child_seed(seed: u64, level: u32) -> u64 {
    // splitmix64 finalizer over (seed, level)
    let mut z = seed ^ (level as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A `2^levels`-Leja section whose level-`n` rotation `ρ_n` is drawn uniformly
/// from the `2^n` roots of `-1` of order `2^n`, with a fresh random `β` at every level.
fn random_pow2(levels: u32, seed: u64) -> Vec<DyadicAngle> {
    let mut points = vec![DyadicAngle::ZERO];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in 0..levels {
        // ρ = exp(iπ (2l+1) / 2^n), l uniform in 0..2^n
        let l: u64 = rng.gen_range(0..(1u64 << n));
        let rho = DyadicAngle::new(2 * l + 1, n);
        let beta = if n == 0 { vec![DyadicAngle::ZERO] } else { random_pow2(n, child_seed(seed, n)) };
        points.extend(beta.iter().map(|b| b.rotate(&rho)));
    }
    points
}

/// A seeded random `N`-Leja section.
///
/// Sections for the same seed are prefixes of one another, so
/// `randomized_section(n, seed)` is the first `n` points of `randomized_section(m, seed)` for `n <= m`.
pub fn randomized_section(n: usize, seed: u64) -> Result<LejaSection> {
    check_len(n)?;
    let levels = (n as u64).next_power_of_two().trailing_zeros();
    let mut points = random_pow2(levels, seed);
    points.truncate(n);
    Ok(LejaSection { points })
}

/// Counts of points in `bins` equal half-open arcs `[2i/bins, 2(i+1)/bins)` half-turns.
pub fn empirical_distribution(section: &LejaSection, bins: usize) -> Result<Vec<usize>> {
    if bins == 0 {
        return Err(Error::Domain("bins must be positive".into()));
    }
    let mut counts = vec![0usize; bins];
    for p in section.points() {
        // floor((j / 2^m) * bins / 2), exact in integers
        let idx = ((p.numerator() as u128 * bins as u128) >> (p.level() + 1)) as usize;
        counts[idx] += 1;
    }
    Ok(counts)
}
