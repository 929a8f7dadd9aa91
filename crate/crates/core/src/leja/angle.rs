//! Points on the unit circle measured in half-turns (units of π radians).

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;

/// Largest level kept exact; `j / 2^m` with `m <= 52` converts to `f64` without rounding.
pub const MAX_LEVEL: u32 = 52;

/// The point `exp(iπ j / 2^m)`, stored exactly.
///
/// Normalized so that `j` is odd (or the point is `(0, 0)`) and `0 <= j < 2^{m+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DyadicAngle {
    numerator: u64,
    level: u32,
}

impl DyadicAngle {
    pub const ZERO: DyadicAngle = DyadicAngle { numerator: 0, level: 0 };

    /// `j / 2^m` half-turns, reduced modulo one full turn and normalized.
    ///
    /// # Panics
    /// If `level` exceeds [`MAX_LEVEL`].
    pub fn new(numerator: u64, level: u32) -> Self {
        assert!(level <= MAX_LEVEL, "dyadic level {level} exceeds {MAX_LEVEL}");
        let turn = 1u64 << (level + 1);
        Self::normalized(numerator % turn, level)
    }

    fn normalized(mut j: u64, mut m: u32) -> Self {
        if j == 0 {
            return Self::ZERO;
        }
        let z = j.trailing_zeros().min(m);
        j >>= z;
        m -= z;
        DyadicAngle { numerator: j, level: m }
    }

    pub fn numerator(&self) -> u64 {
        self.numerator
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Numerator rescaled to a common level `m >= self.level`.
    #[inline]
    fn at_level(&self, m: u32) -> u64 {
        self.numerator << (m - self.level)
    }

    /// Rotation by `other` (angle addition modulo a full turn).
    pub fn rotate(&self, other: &DyadicAngle) -> DyadicAngle {
        let m = self.level.max(other.level);
        let turn = 1u64 << (m + 1);
        Self::normalized((self.at_level(m) + other.at_level(m)) % turn, m)
    }

    /// Exact difference `self - other` reduced to `[0, 2)` half-turns.
    pub fn difference(&self, other: &DyadicAngle) -> DyadicAngle {
        let m = self.level.max(other.level);
        let turn = 1u64 << (m + 1);
        let d = (self.at_level(m) + turn - other.at_level(m)) % turn;
        Self::normalized(d, m)
    }

    pub fn half_turns(&self) -> f64 {
        self.numerator as f64 / (1u64 << self.level) as f64
    }

    pub fn radians(&self) -> f64 {
        PI * self.half_turns()
    }

    /// Whether the point is a `2^n`-th root of unity.
    pub fn is_root_of_unity_of_order(&self, n: u32) -> bool {
        // exp(iπ j/2^m)^{2^n} = 1  iff  j 2^n / 2^m is even
        *self == Self::ZERO || n > self.level
    }
}

impl Ord for DyadicAngle {
    fn cmp(&self, other: &Self) -> Ordering {
        let m = self.level.max(other.level);
        self.at_level(m).cmp(&other.at_level(m))
    }
}

impl PartialOrd for DyadicAngle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DyadicAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.level == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, 1u64 << self.level)
        }
    }
}

/// `2 |sin(π Δ / 2)|` for a half-turn difference `Δ`, folded to the shorter arc first.
#[inline]
pub fn chord_from_half_turns(delta: f64) -> f64 {
    let d = delta.rem_euclid(2.0);
    let d = if d > 1.0 { 2.0 - d } else { d };
    2.0 * (0.5 * PI * d).sin()
}

/// Anything that can report its Euclidean distance to another point on the circle.
pub trait CirclePoint {
    fn chord(&self, other: &Self) -> f64;

    /// Position in half-turns, in `[0, 2)`.
    fn half_turns(&self) -> f64;
}

impl CirclePoint for DyadicAngle {
    /// The difference is taken exactly before any rounding.
    #[inline]
    fn chord(&self, other: &Self) -> f64 {
        chord_from_half_turns(self.difference(other).half_turns())
    }

    fn half_turns(&self) -> f64 {
        DyadicAngle::half_turns(self)
    }
}

/// A circle point given by a real angle in half-turns.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct HalfTurns(pub f64);

impl HalfTurns {
    pub fn reduced(self) -> HalfTurns {
        HalfTurns(self.0.rem_euclid(2.0))
    }
}

impl From<DyadicAngle> for HalfTurns {
    fn from(a: DyadicAngle) -> Self {
        HalfTurns(a.half_turns())
    }
}

impl CirclePoint for HalfTurns {
    #[inline]
    fn chord(&self, other: &Self) -> f64 {
        chord_from_half_turns(self.0 - other.0)
    }

    fn half_turns(&self) -> f64 {
        self.0.rem_euclid(2.0)
    }
}

/// Chord distance between two exact dyadic angles.
pub fn chord_distance(a: &DyadicAngle, b: &DyadicAngle) -> f64 {
    a.chord(b)
}
