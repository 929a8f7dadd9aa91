//! Numeric greedy selection: minimize the discrete potential of the points chosen so far.

use super::angle::{chord_from_half_turns, DyadicAngle};
use crate::energy::kernel;
use crate::error::{Error, Result};

/// Stopping width, in half-turns, of the golden-section refinement.
pub const ANGLE_TOLERANCE: f64 = 1e-12;

/// Relative gap below which two candidate minima count as tied.
const TIE_TOLERANCE: f64 = 1e-10;

/// A point picked by the greedy rule and the potential it attains.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreedyChoice {
    /// Half-turns in `[0, 2)`.
    pub angle: f64,
    pub potential: f64,
}

/// `Σ_i k(z, a_i)` with all angles in half-turns.
pub fn discrete_potential(points: &[f64], z: f64, s: f64) -> f64 {
    points.iter().map(|&a| kernel(chord_from_half_turns(z - a), s)).sum()
}

/// Golden-section search for a minimum of `f` on `[a, b]`; never evaluates the endpoints.
///
/// Returns `(x_min, f_min)`.
pub fn golden_section_minimize(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    // the bracket shrinks by 1/φ per step, so this bound is never the binding one
    for _ in 0..200 {
        if b - a <= tol {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

fn validate(points: usize, s: f64, grid: usize) -> Result<()> {
    if points == 0 {
        return Err(Error::Domain("greedy extension needs at least one existing point".into()));
    }
    if !(s >= 0.0 && s.is_finite()) {
        return Err(Error::Domain(format!("kernel parameter s = {s} must be finite and >= 0")));
    }
    let min = 4 * points;
    if grid < min {
        return Err(Error::GridTooCoarse { grid, points, min });
    }
    Ok(())
}

/// Greedy extension of a configuration given by real angles (half-turns).
///
/// Samples the potential on `grid` equally spaced angles, refines every sampled
/// local minimum by golden-section search inside the arc between its grid
/// neighbours (clipped at existing points), and returns the best refined point.
/// Ties go to the smallest angle in `[0, 2)`.
pub fn greedy_extend(points: &[f64], s: f64, grid: usize) -> Result<GreedyChoice> {
    validate(points.len(), s, grid)?;
    let pts: Vec<f64> = points.iter().map(|a| a.rem_euclid(2.0)).collect();
    let step = 2.0 / grid as f64;
    let values: Vec<f64> = (0..grid)
        .map(|g| discrete_potential(&pts, g as f64 * step, s))
        .map(|v| if v.is_nan() { f64::INFINITY } else { v })
        .collect();
    if values.iter().all(|v| v.is_infinite()) {
        return Err(Error::DegenerateGrid);
    }

    let mut best: Option<GreedyChoice> = None;
    for g in 0..grid {
        let v = values[g];
        let prev = values[(g + grid - 1) % grid];
        let next = values[(g + 1) % grid];
        if !v.is_finite() || v > prev || v > next {
            continue;
        }
        let centre = g as f64 * step;
        let (mut lo, mut hi) = (centre - step, centre + step);
        for &p in &pts {
            // nearest copy of p to the centre
            let q = centre + (p - centre + 1.0).rem_euclid(2.0) - 1.0;
            if q > lo && q < centre {
                lo = q;
            }
            if q < hi && q > centre {
                hi = q;
            }
        }
        let (x, fx) = golden_section_minimize(|z| discrete_potential(&pts, z, s), lo, hi, ANGLE_TOLERANCE);
        let (x, fx) = if fx <= v { (x, fx) } else { (centre, v) };
        let candidate = GreedyChoice { angle: x.rem_euclid(2.0), potential: fx };
        best = Some(match best {
            None => candidate,
            Some(b) => pick(b, candidate),
        });
    }
    best.ok_or(Error::DegenerateGrid)
}

fn pick(a: GreedyChoice, b: GreedyChoice) -> GreedyChoice {
    let scale = a.potential.abs().max(b.potential.abs()).max(1.0);
    if (a.potential - b.potential).abs() <= TIE_TOLERANCE * scale {
        if a.angle <= b.angle {
            a
        } else {
            b
        }
    } else if a.potential < b.potential {
        a
    } else {
        b
    }
}

/// Greedy next point (half-turns) after an exact configuration.
pub fn greedy_oracle_extend(points: &[DyadicAngle], s: f64, grid: usize) -> Result<f64> {
    greedy_oracle_choice(points, s, grid).map(|c| c.angle)
}

/// Like [`greedy_oracle_extend`], also returning the attained potential.
pub fn greedy_oracle_choice(points: &[DyadicAngle], s: f64, grid: usize) -> Result<GreedyChoice> {
    let angles: Vec<f64> = points.iter().map(|p| p.half_turns()).collect();
    greedy_extend(&angles, s, grid)
}

/// Grows a greedy sequence numerically from `a_0 = 1`, returning `a_1, ..., a_steps`.
pub fn grow_greedy(steps: usize, s: f64, grid: usize) -> Result<Vec<GreedyChoice>> {
    validate(steps.max(1), s, grid)?;
    let mut angles = vec![0.0];
    let mut out = Vec::with_capacity(steps);
    for _ in 0..steps {
        let choice = greedy_extend(&angles, s, grid)?;
        angles.push(choice.angle);
        out.push(choice);
    }
    Ok(out)
}
