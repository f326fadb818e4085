//! Dimensionless model of the one-dimensional infinite square well.
//!
//! Units are fixed at `ħ = 1`, `2m = 1`, `L = 1`. In these units the
//! eigenvalues are `e_n = n²π²`, the angular frequencies equal the
//! eigenvalues, and the normalised eigenfunctions are `√2 sin(nπx)`.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;

use crate::{Error, Result};

/// Value of the wave function at a spacetime point.
pub type ComplexAmplitude = Complex64;

/// `sin(πy)` with exact zeros at every integer `y`.
pub(crate) fn sin_pi(y: f64) -> f64 {
    // r in [-1, 1]
    let r = y - 2.0 * (y / 2.0).round();
    if r == 0.0 || r.abs() == 1.0 {
        0.0
    } else if r.abs() == 0.5 {
        r.signum()
    } else {
        (PI * r).sin()
    }
}

/// A single eigenstate of the well, labelled by its quantum number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Eigenstate(u32);

impl Eigenstate {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidQuantumNumber(0));
        }
        Ok(Self(n))
    }

    pub fn n(self) -> u32 {
        self.0
    }

    pub fn energy(self) -> f64 {
        let n = f64::from(self.0);
        n * n * PI * PI
    }

    /// `√2 sin(nπx)` without the range check of [`eigen_function`].
    pub(crate) fn value_unchecked(self, x: f64) -> f64 {
        SQRT_2 * sin_pi(f64::from(self.0) * x)
    }
}

/// Eigenvalue `n²π²` of the `n`-th state.
pub fn eigen_energy(n: u32) -> Result<f64> {
    Eigenstate::new(n).map(Eigenstate::energy)
}

/// Normalised eigenfunction `√2 sin(nπx)` on `[0, 1]`.
pub fn eigen_function(n: u32, x: f64) -> Result<f64> {
    let state = Eigenstate::new(n)?;
    check_position(x)?;
    Ok(state.value_unchecked(x))
}

pub(crate) fn check_position(x: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::PositionOutOfRange(x));
    }
    Ok(())
}

/// One `(n, c)` pair of a superposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub state: Eigenstate,
    pub coefficient: f64,
}

/// Real-coefficient superposition `Σ c_n e^{-i e_n t} √2 sin(nπx)`.
///
/// Quantum numbers are distinct and at least one coefficient is nonzero.
/// Coefficients need not be normalised.
#[derive(Debug, Clone, PartialEq)]
pub struct Superposition {
    terms: Vec<Term>,
}

impl Superposition {
    pub fn new<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, f64)>,
    {
        let mut out: Vec<Term> = Vec::new();
        for (n, c) in terms {
            let state = Eigenstate::new(n)?;
            if !c.is_finite() {
                return Err(Error::NonFinite("coefficient"));
            }
            if out.iter().any(|t| t.state == state) {
                return Err(Error::DuplicateQuantumNumber(n));
            }
            out.push(Term {
                state,
                coefficient: c,
            });
        }
        if out.is_empty() {
            return Err(Error::EmptySuperposition);
        }
        if out.iter().all(|t| t.coefficient == 0.0) {
            return Err(Error::ZeroCoefficients);
        }
        Ok(Self { terms: out })
    }

    pub fn eigenstate(n: u32) -> Result<Self> {
        Self::new([(n, 1.0)])
    }

    /// Equal-weight superposition of the first `count` eigenstates, `c_n = 1/√count`.
    pub fn equal_weights(count: usize) -> Result<Self> {
        let c = 1.0 / (count as f64).sqrt();
        Self::new((1..=count as u32).map(|n| (n, c)))
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn quantum_numbers(&self) -> Vec<u32> {
        self.terms.iter().map(|t| t.state.n()).collect()
    }

    pub fn coefficients(&self) -> Vec<f64> {
        self.terms.iter().map(|t| t.coefficient).collect()
    }

    /// Well eigenvalues of the terms, in term order.
    pub fn energies(&self) -> Vec<f64> {
        self.terms.iter().map(|t| t.state.energy()).collect()
    }

    pub fn norm_sq(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coefficient * t.coefficient)
            .sum()
    }

    /// Copy with every coefficient multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(
            self.terms
                .iter()
                .map(|t| (t.state.n(), t.coefficient * factor)),
        )
    }
}

/// `ψ(x, t)` for a superposition.
pub fn psi(s: &Superposition, x: f64, t: f64) -> Result<ComplexAmplitude> {
    check_position(x)?;
    if !t.is_finite() {
        return Err(Error::NonFinite("time"));
    }
    Ok(s.terms
        .iter()
        .map(|term| {
            let amp = term.coefficient * term.state.value_unchecked(x);
            Complex64::from_polar(amp, -term.state.energy() * t)
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigen_energy_values() {
        assert!((eigen_energy(1).unwrap() - 9.869_604_401_089_358).abs() < 1e-12);
        assert_eq!(eigen_energy(2).unwrap(), 4.0 * PI * PI);
        assert!((eigen_energy(10).unwrap() / (PI * PI) - 100.0).abs() < 1e-12);
        assert_eq!(eigen_energy(0), Err(Error::InvalidQuantumNumber(0)));
    }

    #[test]
    fn eigen_function_values() {
        assert_eq!(eigen_function(1, 0.0).unwrap(), 0.0);
        assert_eq!(eigen_function(1, 0.5).unwrap(), SQRT_2);
        assert_eq!(eigen_function(2, 0.5).unwrap(), 0.0);
        assert_eq!(eigen_function(7, 1.0).unwrap(), 0.0);
        assert!(matches!(
            eigen_function(1, 1.5),
            Err(Error::PositionOutOfRange(_))
        ));
        assert!(matches!(
            eigen_function(1, -0.1),
            Err(Error::PositionOutOfRange(_))
        ));
    }

    #[test]
    fn sin_pi_matches_std() {
        for i in 0..1000 {
            let y = -7.3 + i as f64 * 0.0173;
            assert!((sin_pi(y) - (PI * y).sin()).abs() < 1e-13, "y = {y}");
        }
    }

    #[test]
    fn psi_examples() {
        let s = Superposition::eigenstate(1).unwrap();
        let v = psi(&s, 0.5, 0.0).unwrap();
        assert_eq!(v, Complex64::new(SQRT_2, 0.0));

        let s = Superposition::new([(1, 1.0), (2, 1.0)]).unwrap();
        for t in [0.0, 0.1, 0.37, 2.5] {
            let v = psi(&s, 0.5, t).unwrap();
            let expected = Complex64::from_polar(SQRT_2, -PI * PI * t);
            assert!((v - expected).norm() < 1e-12);
        }
        let v = psi(&s, 1.0 / 3.0, 0.0).unwrap();
        // √2 (sin(π/3) + sin(2π/3)) = √6
        assert!((v.re - 6f64.sqrt()).abs() < 1e-12);
        assert!((v.re - 2.449_489_742_783_178).abs() < 1e-12);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn superposition_validation() {
        assert_eq!(Superposition::new([]), Err(Error::EmptySuperposition));
        assert_eq!(
            Superposition::new([(1, 1.0), (1, 2.0)]),
            Err(Error::DuplicateQuantumNumber(1))
        );
        assert_eq!(
            Superposition::new([(1, 0.0), (2, 0.0)]),
            Err(Error::ZeroCoefficients)
        );
        assert_eq!(
            Superposition::new([(0, 1.0)]),
            Err(Error::InvalidQuantumNumber(0))
        );
        assert!(Superposition::new([(1, f64::NAN)]).is_err());
        assert!(Superposition::new([(1, 0.0), (2, 1.0)]).is_ok());
    }

    #[test]
    fn psi_vanishes_at_walls() {
        let s = Superposition::new([(1, 0.3), (4, -1.2), (9, 2.0)]).unwrap();
        for t in [0.0, 0.013, 1.7] {
            assert_eq!(psi(&s, 0.0, t).unwrap().norm(), 0.0);
            assert_eq!(psi(&s, 1.0, t).unwrap().norm(), 0.0);
        }
    }
}
