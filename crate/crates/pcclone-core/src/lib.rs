//! Simulation and verification toolkit for phase-covariant cloning of
//! equatorial qubits.
//!
//! The library is organised around a handful of small, self-contained
//! modules:
//!
//! * [`qlinalg`] — dense complex matrices, Kronecker products, partial
//!   traces, Bloch-vector conversions and a Hermitian eigensolver.
//! * [`states`] — pure multi-qubit states: equatorial families in the XY and
//!   XZ conventions, BB84 states, Dicke states and the symmetric subspace.
//! * [`channels`] — Kraus channels, phase-covariance checks, and extraction
//!   of equatorial/axis shrinking factors through the Γ-matrix formalism.
//! * [`estimation`] — covariant phase-estimation POVMs, the closed-form
//!   mean estimation fidelity, and measure-and-prepare channels built
//!   from them.
//! * [`cloners`] — closed-form cloning bounds, the explicit optimal 1→2
//!   equatorial cloner, and concatenation checks.
//! * [`optimizer`] — constrained maximisation that re-derives the optimal
//!   cloner coefficients from the unitarity and symmetry constraints.

pub mod channels;
pub mod cloners;
pub mod estimation;
pub mod optimizer;
pub mod qlinalg;
pub mod states;

mod binom;
mod error;

pub use error::{Error, Result};
