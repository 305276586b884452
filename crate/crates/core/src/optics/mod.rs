//! Mach-Zehnder benches built from translation, reflection and
//! beam-splitter operators, with atoms in boxes acting as which-path
//! blockers, plus spin analysers for the resulting atom states.

mod bench;
mod experiments;
pub mod operators;
mod spin;

use thiserror::Error;

pub use bench::{
    click_distribution, composed_operator, element_operators, fig11, fig12a, fig12b, fig13, fig14, run_bench,
    run_bench_with_atoms, Arm, BenchConfig, BenchOutcome, DetectorId, Element, ModeVector, ZState, MAX_ATOMS,
};
pub use experiments::{delayed_choice, run_ifm, run_qle, AtomBenchResult, DelayedChoice, IfmResult, JointDistribution};
pub use operators::{
    beam_splitter, reflection, splitter_parameter, translation, unit_phase, BenchOperator, OperatorLabel, DEFAULT_K,
};
pub use spin::{
    bell_correlations, mermin_local_bound, outcome_table, random_setting_agreement, Setting, SpinRotation, SpinState,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OpticsError {
    /// `element` is the index into the bench's element list, when known.
    #[error("{message}")]
    Invalid { element: Option<usize>, message: String },
    #[error("state has squared norm {0}, expected 1")]
    Unnormalized(f64),
    #[error("spin state length {0} is not 2^n with n >= 1")]
    SpinLength(usize),
    #[error("expected {expected} atom states, got {found}")]
    AtomCount { expected: usize, found: usize },
}
