//! Probabilistic device fingerprinting: uniqueness-driven CRP selection and
//! the trial-by-trial inference protocol.

mod infer;
mod oracle;
mod pfhd;
mod select;

pub use infer::{
    classify_trial, infer, replay_labels, AlignmentRule, Decision, InferenceRun, Label,
    TrialClassification,
};
pub use oracle::{
    per_trial_accept_prob, poisson_binomial_tail, simulate_inference_runs,
    simulate_inference_runs_seq, InferenceStudy, TrialOracle,
};
pub use pfhd::{mismatch_probability, mismatch_probability_product_form, pfhd_inter};
pub use select::{select_crps, RankedChallenge};
