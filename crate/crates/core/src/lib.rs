//! Geometric quantum discord of bipartite qudit states.
//!
//! The crate computes the Hilbert–Schmidt geometric discord of a state on
//! `H_{d1} ⊗ H_{d2}` (classicality measured on the second subsystem) from the
//! spectrum of a single positive operator built from the generalized Bloch
//! representation of the state. Around that closed form it provides:
//!
//! - [`basis`]: the generalized Gell-Mann generators with `tr[Υ_i Υ_j] = 2δ_ij`;
//! - [`qstate`]: density matrices, partial trace/transpose, eigensystems and
//!   seeded test-state generators;
//! - [`repr`]: conversion to and from the `(r1, r2, T)` representation;
//! - [`frames`]: simplex frames and their rank-`(d-1)` projectors;
//! - [`discord`]: the discord value, its bounds and the closest
//!   quantum-classical state;
//! - [`oracle`]: a brute-force minimiser over measurement bases used to
//!   cross-check the closed form.

#![forbid(unsafe_code)]

pub mod basis;
pub mod discord;
mod error;
pub mod frames;
pub mod linalg;
pub mod oracle;
pub mod qstate;
pub mod repr;

pub use basis::{gell_mann_basis, OperatorBasis};
pub use discord::{
    closest_qc_state, discord_bounds, geometric_discord, BoundsReport, ClosestStateResult,
    DiscordResult,
};
pub use error::{Error, Result};
pub use frames::SimplexFrame;
pub use linalg::{CMatrix, CVector, RMatrix, RVector, C64};
pub use oracle::{OracleConfig, OracleResult};
pub use qstate::{DensityMatrix, EigenSystem, Subsystem};
pub use repr::BlochRepr;
