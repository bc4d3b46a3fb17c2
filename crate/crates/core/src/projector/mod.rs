//! Projector equations on γ-normalized coefficient grids.

pub mod band4;
pub mod beta;
pub mod grid;
pub mod residual;

pub use band4::{band4_forced_zeros, constraint_id, Band4Report, ForcedZero};
pub use beta::{beta_orthogonality, beta_orthogonality_4d, beta_sequence, BetaReport2D, BetaReport4D};
pub use grid::{CoeffGrid2D, CoeffGrid4D};
pub use residual::{band_membership, dual_path_check, dual_path_report, projector_residual, Banded, DualPathReport, ResidualReport};
