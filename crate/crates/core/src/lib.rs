//! Equilibria and mechanism outcomes for public-goods provision.
//!
//! * [`economy`]: Cobb-Douglas agents, linear technology, MRS and the
//!   Samuelson efficiency residual, vertical summation of demand.
//! * [`voluntary`]: best responses and Nash equilibria of the voluntary
//!   contribution game, efficient and Pareto allocations, free-rider losses.
//! * [`lindahl`]: personalized cost shares.
//! * [`groves`]: a Groves-type mechanism for a binary project, with an
//!   exhaustive dominant-strategy checker.
//! * [`voting`]: pairwise majority, cycles, single-peakedness, median voter.
//! * [`polecon`]: median-voter spending under proportional taxation.

pub mod economy;
pub mod error;
pub mod groves;
pub mod lindahl;
pub mod polecon;
pub mod voluntary;
pub mod voting;

pub use economy::{samuelson_residual, vertical_sum_demand, Agent, Allocation, DemandCurve, Technology};
pub use error::{Error, Result};
pub use groves::{MechanismOutcome, MechanismScenario, TransferConvention, Verdict};
pub use lindahl::LindahlSolution;
pub use polecon::{Benefit, FiscalEquilibrium, FiscalModel};
pub use voluntary::{ContributionProfile, EquilibriumReport};
pub use voting::{MajorityMatrix, PreferenceProfile};
