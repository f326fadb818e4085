//! Direct spacetime average of the pointwise energy.
//!
//! The integrand `Re(Σ c e a e^{-iθ} / Σ c a e^{-iθ})` is unbounded near the
//! zeros of `ψ`, but for generic coefficients those zeros are isolated
//! points of `[0, 1] × [0, T]` and the singularity is integrable. A midpoint
//! tensor rule is refined by doubling the cells per axis until successive
//! levels agree; midpoints never land on the walls.
//!
//! Averaged over one period, the energy at a fixed x is `−Δarg ψ / T`, a
//! multiple of `2π/T`, so the x profile is a step function. Midpoint
//! sampling of the steps gives an `O(h)` error with no smooth asymptotic
//! expansion, which is why extrapolation is not attempted.
//!
//! Rows of the grid are evaluated in parallel. Each row is summed in a fixed
//! order and the row sums are combined pairwise, so the value is
//! bit-identical for any thread count.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;
use rayon::prelude::*;

use crate::closed_form::{dgp_two_state, TwoStateSpec};
use crate::energy::energy_ratio;
use crate::sum::pairwise_sum;
use crate::well::Superposition;
use crate::{Error, Result};

pub const DEFAULT_BASE_CELLS: usize = 64;
pub const DEFAULT_MAX_LEVELS: u32 = 12;
pub const DEFAULT_MIN_LEVELS: u32 = 3;
pub const MIN_REL_TOL: f64 = 1e-6;
pub const MAX_REL_TOL: f64 = 1e-2;
/// Tolerance used when the caller does not choose one.
pub const DEFAULT_REL_TOL: f64 = 1e-3;

/// Common temporal period of a superposition.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodSpec {
    pub period: f64,
    /// Pairwise `|n_j² − n_i²|`, the beat frequencies in units of `π²`.
    pub k_set: Vec<u64>,
}

impl PeriodSpec {
    pub fn k_gcd(&self) -> u64 {
        self.k_set.iter().fold(0, |acc, k| acc.gcd(k))
    }
}

/// Least common multiple of the pairwise beat periods `2π/(kπ²)`.
///
/// Computed as `2/(π·gcd(k))` with exact integer arithmetic. A single
/// eigenstate gets the period of its own phase, `2/(n²π)`.
pub fn common_period(s: &Superposition) -> PeriodSpec {
    let ns = s.quantum_numbers();
    let mut k_set = Vec::new();
    for (i, &a) in ns.iter().enumerate() {
        for &b in &ns[i + 1..] {
            let (a, b) = (u64::from(a), u64::from(b));
            k_set.push((a * a).abs_diff(b * b));
        }
    }
    let g = k_set.iter().fold(0u64, |acc, k| acc.gcd(k));
    let period = if g == 0 {
        let n = f64::from(ns[0]);
        2.0 / (n * n * PI)
    } else {
        2.0 / (PI * g as f64)
    };
    PeriodSpec { period, k_set }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureOptions {
    pub rel_tol: f64,
    /// Time cells on the first level; x uses one more.
    pub base_cells: usize,
    pub max_levels: u32,
    /// Levels evaluated before convergence may be declared.
    pub min_levels: u32,
    /// Start of the time window; the window is `[t0, t0 + T]`.
    pub time_offset: f64,
}

impl QuadratureOptions {
    pub fn new(rel_tol: f64) -> Result<Self> {
        if !(MIN_REL_TOL..=MAX_REL_TOL).contains(&rel_tol) {
            return Err(Error::ToleranceOutOfRange(rel_tol));
        }
        Ok(Self {
            rel_tol,
            base_cells: DEFAULT_BASE_CELLS,
            max_levels: DEFAULT_MAX_LEVELS,
            min_levels: DEFAULT_MIN_LEVELS,
            time_offset: 0.0,
        })
    }

    pub fn with_time_offset(mut self, t0: f64) -> Self {
        self.time_offset = t0;
        self
    }

    pub fn with_max_levels(mut self, levels: u32) -> Self {
        self.max_levels = levels;
        self
    }

    /// `(x_cells, t_cells)` on a level, counting from 1.
    ///
    /// Time cells double from `base_cells`. With real coefficients the
    /// two-state nodes sit at beat phase 0 or π, which an even time grid
    /// keeps half a cell away from every sample.
    ///
    /// The x axis uses `t_cells + base_cells` cells. Successive x grids are
    /// then not a factor of two apart: with exactly doubled grids a sign step
    /// can sit in the same relative position on several levels, and the
    /// level difference vanishes while the error does not. The count keeps
    /// the power of two of `base_cells`, so midpoints avoid the common
    /// nodes `j/d` of the eigenfunctions for any realistic `d`.
    pub fn grid(&self, level: u32) -> (usize, usize) {
        let base = self.base_cells.max(2);
        let t_cells = base << (level.max(1) - 1);
        (t_cells + base, t_cells)
    }
}

/// Outcome of a refined double integral.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureReport {
    pub value: f64,
    /// `|last − previous|` between the two finest levels.
    pub est_error: f64,
    pub levels: u32,
    /// Cells on the finest level whose midpoint sample was undefined.
    pub singular_cells: u64,
    pub x_cells: usize,
    pub t_cells: usize,
    pub period: f64,
    /// Estimate at each level, coarsest first.
    pub history: Vec<f64>,
    pub converged: bool,
}

impl QuadratureReport {
    /// `|v_k − v_{k−1}|` for each level after the first.
    pub fn level_differences(&self) -> Vec<f64> {
        self.history
            .windows(2)
            .map(|w| (w[1] - w[0]).abs())
            .collect()
    }
}

/// Spacetime average of the pointwise energy with the well eigenvalues.
pub fn dgp_numeric(s: &Superposition, rel_tol: f64) -> Result<QuadratureReport> {
    dgp_numeric_with(s, &s.energies(), &QuadratureOptions::new(rel_tol)?)
}

/// Spacetime average with caller-supplied energies, one per term.
///
/// The time window is the common period of the well eigenvalues. Synthetic
/// energies are meant for degenerate checks; with equal energies the
/// integrand does not depend on time.
///
/// A level is accepted once the last two level differences are both within
/// `rel_tol·|value|` and the newer one is no larger than the older one. The
/// integrand averages to a step function of x, so single differences can
/// be small by coincidence.
pub fn dgp_numeric_with(
    s: &Superposition,
    energies: &[f64],
    opts: &QuadratureOptions,
) -> Result<QuadratureReport> {
    if energies.len() != s.len() {
        return Err(Error::EnergyCountMismatch {
            expected: s.len(),
            got: energies.len(),
        });
    }
    if !(MIN_REL_TOL..=MAX_REL_TOL).contains(&opts.rel_tol) {
        return Err(Error::ToleranceOutOfRange(opts.rel_tol));
    }
    if !opts.time_offset.is_finite() {
        return Err(Error::NonFinite("time offset"));
    }
    let period = common_period(s).period;

    let mut history: Vec<f64> = Vec::new();
    let mut last = None;
    for level in 1..=opts.max_levels.max(1) {
        let (x_cells, t_cells) = opts.grid(level);
        let (value, singular) =
            midpoint_level(s, energies, period, opts.time_offset, x_cells, t_cells);
        history.push(value);

        let n = history.len();
        let diff = |k: usize| (history[k] - history[k - 1]).abs();
        let est_error = if n >= 2 { diff(n - 1) } else { f64::INFINITY };
        let converged = level >= opts.min_levels.max(3) && {
            let (older, newer) = (diff(n - 2), diff(n - 1));
            let tol = opts.rel_tol * value.abs();
            older <= tol && newer <= tol && newer <= older
        };

        let report = QuadratureReport {
            value,
            est_error,
            levels: level,
            singular_cells: singular,
            x_cells,
            t_cells,
            period,
            history: history.clone(),
            converged,
        };
        if converged {
            return Ok(report);
        }
        last = Some(report);
    }
    Err(Error::NotConverged(Box::new(
        last.expect("at least one level"),
    )))
}

/// One midpoint level. Returns the average and the number of undefined
/// samples, which contribute zero to the sum.
fn midpoint_level(
    s: &Superposition,
    energies: &[f64],
    period: f64,
    t0: f64,
    x_cells: usize,
    t_cells: usize,
) -> (f64, u64) {
    let terms = s.terms();
    let k = terms.len();
    let dx = 1.0 / x_cells as f64;
    let dt = period / t_cells as f64;

    // rotations[j * k + m] = e^{-i e_m t_j}
    let rotations: Vec<Complex64> = (0..t_cells)
        .flat_map(|j| {
            let t = t0 + (j as f64 + 0.5) * dt;
            energies
                .iter()
                .map(move |&e| Complex64::from_polar(1.0, -e * t))
        })
        .collect();

    let rows: Vec<(f64, u64)> = (0..x_cells)
        .into_par_iter()
        .map_init(
            || (Vec::with_capacity(t_cells), vec![0.0; k]),
            |(buf, amps), i| {
                let x = (i as f64 + 0.5) * dx;
                for (a, term) in amps.iter_mut().zip(terms) {
                    *a = term.coefficient * term.state.value_unchecked(x);
                }
                buf.clear();
                let mut singular = 0u64;
                for rot in rotations.chunks_exact(k) {
                    let mut num = Complex64::new(0.0, 0.0);
                    let mut den = Complex64::new(0.0, 0.0);
                    for ((&a, &r), &e) in amps.iter().zip(rot).zip(energies) {
                        let z = r * a;
                        den += z;
                        num += z * e;
                    }
                    let sample = energy_ratio(num, den);
                    if sample.defined {
                        buf.push(sample.value);
                    } else {
                        singular += 1;
                        buf.push(0.0);
                    }
                }
                (pairwise_sum(buf), singular)
            },
        )
        .collect();

    let sums: Vec<f64> = rows.iter().map(|r| r.0).collect();
    let singular = rows.iter().map(|r| r.1).sum();
    (pairwise_sum(&sums) / (x_cells * t_cells) as f64, singular)
}

/// Closed-form and numerical averages side by side.
#[derive(Debug, Clone, PartialEq)]
pub struct Validation {
    pub closed: f64,
    pub numeric: f64,
    pub report: QuadratureReport,
    pub agree: bool,
}

impl Validation {
    pub fn relative_difference(&self) -> f64 {
        (self.closed - self.numeric).abs() / self.closed.abs()
    }
}

/// Cross-checks the sign-region average against the double integral.
///
/// `agree` holds when the relative difference is within
/// `max(rel_tol, 3·est_error/|closed|)`.
pub fn validate_two_state(spec: &TwoStateSpec, rel_tol: f64) -> Result<Validation> {
    validate_two_state_with(spec, &QuadratureOptions::new(rel_tol)?)
}

/// [`validate_two_state`] with explicit quadrature options.
pub fn validate_two_state_with(
    spec: &TwoStateSpec,
    opts: &QuadratureOptions,
) -> Result<Validation> {
    let closed = dgp_two_state(spec)?;
    let s = spec.superposition();
    let report = dgp_numeric_with(&s, &s.energies(), opts)?;
    let numeric = report.value;
    let bound = opts.rel_tol.max(3.0 * report.est_error / closed.abs());
    let agree = (closed - numeric).abs() / closed.abs() <= bound;
    Ok(Validation {
        closed,
        numeric,
        report,
        agree,
    })
}
