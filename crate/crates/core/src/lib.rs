//! Energies of greedy (Leja) point sequences on the unit circle.
//!
//! The canonical greedy sequence starting at `1` is the bit-reversal
//! ordering of dyadic angles; its first `N` points decompose into rotated
//! roots of unity along the binary digits of `N`. This crate computes the
//! logarithmic and Riesz `s`-energies of these sections exactly and
//! numerically, their normalized second-order terms, and the extremal
//! constants that govern their upper limits.

// `!(x > 0.0)` style guards also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod cli;
pub mod dyadic;
pub mod energy;
pub mod error;
pub mod leja;
pub mod specfun;
pub mod sum;

pub use asymptotics::{extremal_search, theta_of, ExtremalEstimate, ExtremalKind, ThetaVector};
pub use dyadic::{decompose, tau, tau_cumulative_fast, BinaryDecomposition};
pub use energy::{fast_energy, normalized_stat, pairwise_energy, EnergyStat, EnergyTable, Regime};
pub use error::{Error, Result};
pub use leja::{canonical_section, randomized_section, DyadicAngle, HalfTurns, LejaSection};
pub use specfun::{equilibrium_energy, gamma_fn, limit_constant, zeta, LimitTarget};
