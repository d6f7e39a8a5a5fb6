//! Numerics for centered Wishart matrices, random induced quantum states and
//! the absolute positive partial transpose (APPT) property.
//!
//! The crate is organised bottom-up:
//!
//! - [`perm`]: permutation length, cycles and genus, fixed-point-free
//!   enumeration, non-crossing partitions and the exact moment formula for
//!   centered Wishart matrices.
//! - [`linalg`]: dense complex matrices and a Hermitian eigenvalue solver.
//! - [`random_states`]: Ginibre/Wishart sampling, induced states, partial
//!   trace and partial transpose.
//! - [`appt`]: the Λ/Θ construction and the exact, necessary and sufficient
//!   APPT tests.
//! - [`asymptotics`]: semicircle and Marchenko–Pastur laws, the `C_τ`
//!   constant and the APPT threshold constants.
//! - [`experiments`]: seeded Monte Carlo experiments behind the CLI.

pub mod appt;
pub mod asymptotics;
pub mod error;
pub mod experiments;
pub mod linalg;
pub mod perm;
pub mod random_states;
mod summation;

pub use error::{Error, Result};
