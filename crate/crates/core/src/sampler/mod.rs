//! Posterior sampling over rules.

pub mod mh;
pub mod pcfg;
pub mod run;

pub use mh::{mh_step, propose, ChainState, Proposal, Scorer};
pub use pcfg::{branching_matrix, check_properness, make_proper, spectral_radius, Pcfg};
pub use run::{run, run_chains, ChainStats, RuleDistribution, RuleEntry, SamplerConfig};
