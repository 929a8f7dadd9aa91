//! Leja sections on the unit circle: exact dyadic constructions and a numeric greedy oracle.

mod angle;
mod greedy;
mod section;

pub use angle::{chord_distance, chord_from_half_turns, CirclePoint, DyadicAngle, HalfTurns, MAX_LEVEL};
pub use greedy::{
    discrete_potential, golden_section_minimize, greedy_extend, greedy_oracle_choice, greedy_oracle_extend,
    grow_greedy, GreedyChoice, ANGLE_TOLERANCE,
};
pub use section::{canonical_point, canonical_section, empirical_distribution, randomized_section, LejaSection};
