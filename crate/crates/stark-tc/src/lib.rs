//! Thermal entanglement and quantum Otto engine numerics for a pair of
//! two-level atoms in a cavity with an intensity-dependent (dynamical
//! Stark) level shift.
//!
//! The library computes, from closed forms and from an independent
//! matrix-exponential route, the 4x4 thermal reduced density matrix of the
//! atom pair; its Wootters concurrence as a function of the two
//! dimensionless parameters x = 2g/xi and y = xi*alpha^2/T; and the
//! quantum Otto cycle built on the same level structure (heats, work,
//! efficiency, positive-work condition, asymptotics).
//!
//! Modules:
//! - [`numerics`]: dependency-free 4x4 symmetric eigensolver (cyclic
//!   Jacobi), matrix exponential, PSD square root, PSD-product spectra.
//! - [`model`]: parameters, the effective Hamiltonian, thermal states by
//!   two routes, limit states, coherent-field weights.
//! - [`entanglement`]: spin flip, concurrence, the (x, y) map, closed-form
//!   coupling laws.
//! - [`otto`]: the four-level Otto cycle and its thermodynamics.
//! - [`sweep`]: grid scans and CSV/JSON serialization (rayon-parallel with
//!   the default `parallel` feature, sequential without).
//! - [`verify`]: the self-check suite used by the CLI.
//!
//! Conventions: k_B = hbar = 1, temperatures in energy units; every matrix
//! is real in the standard basis (|ee>, |eg>, |ge>, |gg>).

pub mod entanglement;
pub mod error;
pub mod model;
pub mod numerics;
pub mod otto;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};
