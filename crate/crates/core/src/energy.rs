//! The pointwise energy field `E(x, t) = Re(i ∂ψ/∂t / ψ)`.
//!
//! For an eigenstate this is the constant eigenvalue. For a superposition it
//! fluctuates in space and time and diverges like `1/|ψ|` near the zeros of
//! `ψ`. Samples where `|ψ|² < NODE_EPSILON` are reported as undefined
//! rather than as errors so that integrators can skip them.

use num_complex::Complex64;

use crate::well::{check_position, Superposition};
use crate::{Error, Result};

/// Threshold on `|ψ|²` below which the energy is undefined.
pub const NODE_EPSILON: f64 = 1e-12;

/// Energy at one spacetime point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergySample {
    /// Meaningless when `defined` is false.
    pub value: f64,
    pub defined: bool,
    pub psi_sq: f64,
}

impl EnergySample {
    fn undefined(psi_sq: f64) -> Self {
        Self {
            value: f64::NAN,
            defined: false,
            psi_sq,
        }
    }

    /// `Some(value)` when defined.
    pub fn get(&self) -> Option<f64> {
        self.defined.then_some(self.value)
    }
}

/// `Re(num / den)` given `num = Σ c e a e^{-iθ}` and `den = Σ c a e^{-iθ}`.
#[inline]
pub(crate) fn energy_ratio(num: Complex64, den: Complex64) -> EnergySample {
    let psi_sq = den.norm_sqr();
    if psi_sq.is_nan() || psi_sq < NODE_EPSILON {
        return EnergySample::undefined(psi_sq);
    }
    let value = (num.re * den.re + num.im * den.im) / psi_sq;
    EnergySample {
        value,
        defined: true,
        psi_sq,
    }
}

/// Pointwise energy of a superposition with its well eigenvalues.
pub fn pointwise_energy(s: &Superposition, x: f64, t: f64) -> Result<EnergySample> {
    pointwise_energy_with(s, &s.energies(), x, t)
}

/// Pointwise energy with caller-supplied energies, one per term.
///
/// The energies set both the phase velocities and the weights, so passing
/// equal values for every term makes the field constant.
pub fn pointwise_energy_with(
    s: &Superposition,
    energies: &[f64],
    x: f64,
    t: f64,
) -> Result<EnergySample> {
    check_position(x)?;
    if !t.is_finite() {
        return Err(Error::NonFinite("time"));
    }
    if energies.len() != s.len() {
        return Err(Error::EnergyCountMismatch {
            expected: s.len(),
            got: energies.len(),
        });
    }
    let mut num = Complex64::new(0.0, 0.0);
    let mut den = Complex64::new(0.0, 0.0);
    for (term, &e) in s.terms().iter().zip(energies) {
        let amp = term.coefficient * term.state.value_unchecked(x);
        let z = Complex64::from_polar(amp, -e * t);
        den += z;
        num += z * e;
    }
    Ok(energy_ratio(num, den))
}

/// Closed-form two-state energy
/// `(e1+e2)/2 + (e1−e2)(f²−g²) / [2(f²+g²)(1 + a cos φ)]`, `a = 2fg/(f²+g²)`.
///
/// `phase` is `(e2 − e1) t`. The sample is undefined where
/// `|ψ|² = (f²+g²)(1 + a cos φ)` drops below [`NODE_EPSILON`].
pub fn two_state_pointwise(e1: f64, e2: f64, f: f64, g: f64, phase: f64) -> EnergySample {
    let norm = f * f + g * g;
    if norm == 0.0 {
        return EnergySample::undefined(0.0);
    }
    let a = 2.0 * f * g / norm;
    let denom = 1.0 + a * phase.cos();
    let psi_sq = norm * denom;
    if denom.is_nan() || denom < NODE_EPSILON / norm {
        return EnergySample::undefined(psi_sq);
    }
    let value = 0.5 * (e1 + e2) + (e1 - e2) * (f * f - g * g) / (2.0 * norm * denom);
    EnergySample {
        value,
        defined: true,
        psi_sq,
    }
}
