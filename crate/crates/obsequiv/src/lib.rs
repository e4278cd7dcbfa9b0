//! Simulation and verification toolkit for the observational equivalence of
//! measure-preserving deterministic systems and finite-alphabet stochastic
//! processes.
//!
//! The crate simulates two deterministic systems, the baker transformation
//! of the unit square and the irrational rotation of the circle, and
//! coarse-grains their orbits through finite observation partitions into
//! symbolic processes. On the stochastic side it samples Bernoulli and
//! Markov processes, estimates transition structure from symbol sequences,
//! and evaluates cylinder-set measures on shift spaces. The `equivalence`
//! module ties the two sides together: nontriviality of coarse-grained
//! transition rows, mixing/ergodicity correlations, the dyadic-partition
//! distance bound, exact conjugacy of the baker map with the fair-coin
//! shift via binary expansions, and statistical certificates that a fine
//! coarse-graining is an irreducible aperiodic Markov process yet not a
//! Bernoulli one.
//!
//! Everything is a pure function of its inputs and an explicit `u64` seed;
//! all values are `Send + Sync` and safe to share across threads.
//!
//! See the `examples/` directory for one runnable program per capability,
//! and the `obsequiv` binary for a scriptable command-line interface.

pub mod dynamics;
pub mod equivalence;
pub mod error;
pub mod partitions;
pub mod processes;
pub mod report;
pub mod rng;
pub mod seqio;
pub mod shift_space;
pub mod stats;

pub use dynamics::{
    baker_step, baker_step_inverse, circle_distance, rotation_step, BitFraction, ExactPair,
    PhasePoint, System, SystemKind, DEFAULT_EXACT_WIDTH, GOLDEN_ROTATION,
};
pub use equivalence::{
    baker_dyadic_chain, baker_left_right_chain, bernoulli_rejection_witness, congruence_report,
    epsilon_congruence_bound_check, markov_property_test, markov_replacement_certificate,
    mixing_correlation, mixing_sweep, nontriviality_verdict, resolution_for_epsilon,
    rotation_halves_chain,
};
pub use error::{Error, Result};
pub use partitions::{
    coarse_grain, coarse_grain_random, dyadic_partition, halves_partition, left_right_partition,
    Cell, Partition,
};
pub use processes::{
    bernoulli_sample, empirical_transition_matrix, is_aperiodic, is_irreducible, markov_sample,
    period_of, stationarity_check, MarkovModel, Origin, SymbolSequence, TransitionEstimate,
};
pub use shift_space::{
    baker_to_shift, conjugacy_check, conjugacy_sample, cylinder_measure_bernoulli,
    cylinder_measure_markov, empirical_entropy_rate, entropy_rate_markov,
    finite_window_equivalence, ks_entropy_bernoulli, shift_to_baker, Constraint, CylinderSpec,
    ShiftWindow,
};
