//! Consumption-leisure choice under bounded environmental awareness.
//!
//! The model: agents split time between work and leisure; consumption
//! pollutes, but each agent only weighs the damage by an awareness parameter
//! `a`. Awareness itself depends on available information (inverted-U,
//! information overload) and on exosomatic energy use (detachment from
//! nature). The crate solves the naive, symmetric-Nash, and efficient
//! (Lindahl) allocations, a knowledge-extended time allocation where
//! information must be processed before it raises awareness, and macro-level
//! awareness trajectories.

// Validation deliberately writes `!(x > 0.0)` instead of `x <= 0.0` so that
// NaN fails the check; the lint's suggested rewrite would accept NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod awareness;
pub mod choice;
pub mod commands;
pub mod equilibrium;
pub mod error;
pub mod knowledge;
pub mod numerics;
pub mod scenario;
pub mod selftest;
pub mod svg;
pub mod table;
pub mod trajectory;

pub use awareness::{
    awareness_info, awareness_knowledge, knowledge_stock, overload_threshold, AwarenessMode,
    AwarenessSpec, KnowledgeParams,
};
pub use choice::{
    best_response, naive_bundle, perceived_utility, pollution, true_welfare, Bundle,
    EconomyParams, PollutionTech, Preferences,
};
pub use commands::{run, Command, OutputFormat};
pub use equilibrium::{efficient_symmetric, figure1, nash_symmetric, welfare_gap, Figure1Result};
pub use error::{Error, Result};
pub use knowledge::{extended_bundle, extended_utility, information_sweep, ExtendedBundle};
pub use numerics::{SolveReport, SolverSettings};
pub use scenario::{parse_scenario, Scenario, SweepSpec, TrajectorySpec};
pub use trajectory::{awareness_trajectory, path_eval, single_peak, PathSpec, PeakVerdict, Series};
