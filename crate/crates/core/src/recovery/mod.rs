//! Sparse signal models, matching pursuit, and the recovery experiments.

mod experiment;
mod mp;
mod signal;

pub use experiment::{
    run_noiseless_experiment, run_noisy_experiment, ConditionResult, ExperimentReport, MatrixFamily,
};
pub use mp::{evaluate_success, matching_pursuit, MpConfig, MpOutcome, TrialResult};
pub use signal::{measure, measure_noisy, noise_variance, random_sparse_signal, SparseSignal};
