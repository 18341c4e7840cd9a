//! Independent computations of the same Tor groups, used to cross-check the
//! Koszul complex: Hochster's decomposition for moment-angle complexes and a
//! truncated one-sided bar construction.

pub mod bar;
pub mod hochster;

pub use bar::{bar_tor, bar_tor_with_bound, BarComplex, BarElement, BarKey, BAR_SIZE_BOUND};
pub use hochster::hochster_tor;
