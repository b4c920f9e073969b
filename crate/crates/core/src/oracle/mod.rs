//! Exhaustive ground truth: realizability by brute force over universes,
//! the rank-three counterexample, covering statistics and counting.

mod brute;
mod census;
mod covering;
mod negative;

pub use brute::{brute_force_realizable, BruteOutcome, BruteReport, FastTr, OrbitIndex, DEFAULT_ORBIT_BUDGET};
pub use census::{census, p_binomial, CensusBudget, CensusRow};
pub use covering::{covering_stats, random_choices, CoveringStats};
pub use negative::{negative_transfer_system, verify_negative_rank3, NegativeReport};
