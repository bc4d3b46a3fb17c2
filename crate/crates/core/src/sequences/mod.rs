//! Sequence-level computations: binomial transforms, Bernoulli weights, the diagonal
//! projector tree, the quadratic branch solvers and the decay experiments.

mod bernoulli;
mod branch;
mod decay;
mod p0;
mod seq;
mod transform;

pub use bernoulli::{
    aaa_residuals, ac_residuals, aggregate_identity_residuals, all_zero, b_identity_residuals, bernoulli_a_seq, solve_b_of_p,
};
pub use branch::{
    format_branch_signs, mfam_search, parse_branch_signs, solve_power_recurrence, solve_power_recurrence_from, Branch, BranchRun,
    MfamReport,
};
pub use decay::{decay_probe, DecayReport, ELKIES_PATTERN, MAX_DECAY_N};
pub use p0::{bfrak_to_b, bm_residuals, enumerate_p0, p0_path, prob_residuals, BranchPath, BranchTree, TruncatedResidual, MAX_P0_DEPTH};
pub use seq::{FloatSeq, RationalSeq};
pub use transform::{binomial_transform, TransformMode};
