//! Spacetime-averaged energy expectation values for superpositions of
//! infinite-square-well eigenstates.
//!
//! The pointwise energy of a wave function is taken as `Re(i ∂ψ/∂t / ψ)`.
//! Averaging it over the well and over one full temporal period gives an
//! expectation value that can be compared with the Born-rule value
//! `Σ c_n² e_n / Σ c_n²`.
//!
//! All quantities use the dimensionless convention `ħ = 1`, `2m = 1`,
//! `L = 1`, so `e_n = n²π²` and `ω_n = e_n`.
//!
//! Two independent routes compute the two-state average:
//!
//! * [`closed_form`] isolates the crossings of `f²` and `g²` and weights
//!   each eigenvalue by the fraction of the well it dominates.
//! * [`quadrature`] integrates the pointwise energy directly over
//!   `[0, 1] × [0, T]` on refined midpoint grids, and also handles
//!   superpositions of more than two states.
//!
//! [`analysis`] builds relative-difference sweeps and figure presets on top
//! of both.

pub mod analysis;
pub mod closed_form;
pub mod energy;
mod error;
pub mod quadrature;
pub mod sum;
pub mod well;

pub use error::{Error, Result};
pub use well::{eigen_energy, eigen_function, psi, ComplexAmplitude, Eigenstate, Superposition};
