//! Relative-difference sweeps, figure presets and trend tables.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::closed_form::{
    born_expectation, born_expectation_with, dgp_two_state, intersection_count, TwoStateSpec,
};
use crate::quadrature::{dgp_numeric_with, QuadratureOptions, QuadratureReport};
use crate::well::Superposition;
use crate::{Error, Result};

pub const DEFAULT_GRID_POINTS: usize = 201;

/// `(born − dgp) / dgp × 100`.
pub fn delta_percent(born: f64, dgp: f64) -> Result<f64> {
    if dgp == 0.0 {
        return Err(Error::ZeroReference);
    }
    Ok((born - dgp) / dgp * 100.0)
}

/// `points` uniform values of P on `[0, 1]`, endpoints included.
pub fn uniform_grid(points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => {
            let last = (points - 1) as f64;
            (0..points).map(|i| i as f64 / last).collect()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub p: f64,
    pub born: f64,
    pub dgp: f64,
    pub delta_percent: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub n1: u32,
    pub n2: u32,
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    pub fn deltas(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.delta_percent).collect()
    }
}

fn two_state_row(spec: &TwoStateSpec) -> Result<SweepRow> {
    let born = born_expectation(&spec.superposition())?;
    let dgp = dgp_two_state(spec)?;
    Ok(SweepRow {
        p: spec.p(),
        born,
        dgp,
        delta_percent: delta_percent(born, dgp)?,
    })
}

/// Δ(P) for one pair of quantum numbers using the closed-form average.
///
/// Rows are evaluated in parallel and returned in grid order.
pub fn sweep_delta(n1: u32, n2: u32, grid: &[f64]) -> Result<SweepResult> {
    let valid =
        grid.iter().all(|p| (0.0..=1.0).contains(p)) && grid.windows(2).all(|w| w[0] < w[1]);
    if !valid {
        return Err(Error::InvalidGrid);
    }
    TwoStateSpec::new(n1, n2, 0.0)?;
    let rows = grid
        .par_iter()
        .map(|&p| {
            TwoStateSpec::new(n1, n2, p)
                .and_then(|spec| two_state_row(&spec))
                .map_err(|e| Error::AtProbability {
                    p,
                    source: Box::new(e),
                })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult { n1, n2, rows })
}

/// The five preset Δ(P) curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FigurePreset {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
}

impl FigurePreset {
    pub const ALL: [FigurePreset; 5] = [
        FigurePreset::Fig1,
        FigurePreset::Fig2,
        FigurePreset::Fig3,
        FigurePreset::Fig4,
        FigurePreset::Fig5,
    ];

    pub fn quantum_numbers(self) -> (u32, u32) {
        match self {
            FigurePreset::Fig1 => (1, 2),
            FigurePreset::Fig2 => (3, 8),
            FigurePreset::Fig3 => (13, 25),
            FigurePreset::Fig4 => (17, 23),
            FigurePreset::Fig5 => (42, 43),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FigurePreset::Fig1 => "fig1",
            FigurePreset::Fig2 => "fig2",
            FigurePreset::Fig3 => "fig3",
            FigurePreset::Fig4 => "fig4",
            FigurePreset::Fig5 => "fig5",
        }
    }

    /// Sweep on the default 201-point grid.
    pub fn sweep(self) -> Result<SweepResult> {
        let (n1, n2) = self.quantum_numbers();
        sweep_delta(n1, n2, &uniform_grid(DEFAULT_GRID_POINTS))
    }
}

impl fmt::Display for FigurePreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FigurePreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FigurePreset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::UnknownPreset(s.to_string()))
    }
}

pub fn figure_preset(name: &str) -> Result<SweepResult> {
    name.parse::<FigurePreset>()?.sweep()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MagnitudeSummary {
    pub max_abs_delta: f64,
    pub argmax_p: f64,
}

/// Largest |Δ| over a sweep and the first P attaining it. `None` when the
/// sweep has no rows.
pub fn magnitude_summary(result: &SweepResult) -> Option<MagnitudeSummary> {
    let first = result.rows.first()?;
    let mut best = MagnitudeSummary {
        max_abs_delta: first.delta_percent.abs(),
        argmax_p: first.p,
    };
    for row in &result.rows[1..] {
        if row.delta_percent.abs() > best.max_abs_delta {
            best = MagnitudeSummary {
                max_abs_delta: row.delta_percent.abs(),
                argmax_p: row.p,
            };
        }
    }
    Some(best)
}

/// Coefficient choice for [`nstate_trend`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Weighting {
    /// `c_n = 1/√N` for the first N eigenstates.
    #[default]
    Equal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrendRow {
    pub states: usize,
    pub born: f64,
    pub dgp: f64,
    pub delta_percent: f64,
    /// Crossings per periodicity cell, for two-state rows only.
    pub intersections_per_cell: Option<Ratio<u64>>,
    pub report: QuadratureReport,
}

/// Δ for one superposition through the numerical average.
pub fn trend_row(s: &Superposition, energies: &[f64], rel_tol: f64) -> Result<TrendRow> {
    trend_row_with(s, energies, &QuadratureOptions::new(rel_tol)?)
}

/// [`trend_row`] with explicit quadrature options.
pub fn trend_row_with(
    s: &Superposition,
    energies: &[f64],
    opts: &QuadratureOptions,
) -> Result<TrendRow> {
    let report = dgp_numeric_with(s, energies, opts)?;
    let born = born_expectation_with(s, energies)?;
    let dgp = report.value;
    let intersections_per_cell = match s.terms() {
        [a, b] => {
            let norm = s.norm_sq();
            let p = a.coefficient * a.coefficient / norm;
            let spec = TwoStateSpec::new(a.state.n(), b.state.n(), p)?;
            Some(intersection_count(&spec)?.per_cell)
        }
        _ => None,
    };
    Ok(TrendRow {
        states: s.len(),
        born,
        dgp,
        delta_percent: delta_percent(born, dgp)?,
        intersections_per_cell,
        report,
    })
}

/// Δ for superpositions of the first N eigenstates, N = 2..=max_states.
///
/// A diagnostic table; no monotonic law is implied.
pub fn nstate_trend(
    max_states: usize,
    weighting: Weighting,
    rel_tol: f64,
) -> Result<Vec<TrendRow>> {
    nstate_trend_with(max_states, weighting, &QuadratureOptions::new(rel_tol)?)
}

/// [`nstate_trend`] with explicit quadrature options.
pub fn nstate_trend_with(
    max_states: usize,
    weighting: Weighting,
    opts: &QuadratureOptions,
) -> Result<Vec<TrendRow>> {
    if !(2..=6).contains(&max_states) {
        return Err(Error::StateCountOutOfRange(max_states));
    }
    (2..=max_states)
        .map(|n| {
            let s = match weighting {
                Weighting::Equal => Superposition::equal_weights(n)?,
            };
            trend_row_with(&s, &s.energies(), opts)
        })
        .collect()
}

/// Crossing density and Δ magnitude for one two-state pair.
#[derive(Debug, Clone, PartialEq)]
pub struct IntersectionRow {
    pub n1: u32,
    pub n2: u32,
    /// Crossings per periodicity cell at P = 1/2.
    pub per_cell_at_half: Ratio<u64>,
    pub max_abs_delta: f64,
    pub argmax_p: f64,
}

/// Pairs the crossing count at P = 1/2 with the largest |Δ| of a sweep.
pub fn intersection_row(sweep: &SweepResult) -> Result<IntersectionRow> {
    let counts = intersection_count(&TwoStateSpec::new(sweep.n1, sweep.n2, 0.5)?)?;
    let summary = magnitude_summary(sweep).unwrap_or(MagnitudeSummary {
        max_abs_delta: 0.0,
        argmax_p: 0.0,
    });
    Ok(IntersectionRow {
        n1: sweep.n1,
        n2: sweep.n2,
        per_cell_at_half: counts.per_cell,
        max_abs_delta: summary.max_abs_delta,
        argmax_p: summary.argmax_p,
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;

    const PI2: f64 = PI * PI;

    #[test]
    fn delta_examples() {
        assert_eq!(delta_percent(PI2, PI2).unwrap(), 0.0);
        let d = delta_percent(2.5 * PI2, 3.0 * PI2).unwrap();
        assert!((d + 50.0 / 3.0).abs() < 1e-12);
        let d = delta_percent(3.0 * PI2, 2.5 * PI2).unwrap();
        assert!((d - 20.0).abs() < 1e-12);
        assert_eq!(delta_percent(1.0, 0.0), Err(Error::ZeroReference));
    }

    #[test]
    fn grid_has_exact_endpoints() {
        let g = uniform_grid(201);
        assert_eq!(g.len(), 201);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[100], 0.5);
        assert_eq!(g[200], 1.0);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn three_point_sweep() {
        let r = sweep_delta(1, 2, &[0.0, 0.5, 1.0]).unwrap();
        let d = r.deltas();
        assert_eq!(d[0], 0.0);
        assert!((d[1] + 16.666_666_666_666_668).abs() < 1e-9);
        assert_eq!(d[2], 0.0);

        let r = sweep_delta(3, 8, &[0.0, 1.0]).unwrap();
        assert_eq!(r.deltas(), vec![0.0, 0.0]);
    }

    #[test]
    fn sweep_rejects_bad_grids() {
        assert_eq!(sweep_delta(1, 2, &[0.5, 0.2]), Err(Error::InvalidGrid));
        assert_eq!(sweep_delta(1, 2, &[0.5, 0.5]), Err(Error::InvalidGrid));
        assert_eq!(sweep_delta(1, 2, &[0.0, 1.5]), Err(Error::InvalidGrid));
        assert!(sweep_delta(2, 2, &[0.5]).is_err());
    }

    #[test]
    fn presets() {
        assert_eq!(
            "fig1".parse::<FigurePreset>().unwrap().quantum_numbers(),
            (1, 2)
        );
        assert_eq!(
            "fig3".parse::<FigurePreset>().unwrap().quantum_numbers(),
            (13, 25)
        );
        assert_eq!(
            "fig5".parse::<FigurePreset>().unwrap().quantum_numbers(),
            (42, 43)
        );
        assert_eq!(
            figure_preset("fig6"),
            Err(Error::UnknownPreset("fig6".to_string()))
        );
        let r = figure_preset("fig1").unwrap();
        assert_eq!((r.n1, r.n2, r.rows.len()), (1, 2, DEFAULT_GRID_POINTS));
    }

    #[test]
    fn magnitude_of_flat_sweep() {
        let flat = SweepResult {
            n1: 1,
            n2: 2,
            rows: [0.2, 0.4]
                .iter()
                .map(|&p| SweepRow {
                    p,
                    born: 1.0,
                    dgp: 1.0,
                    delta_percent: 0.0,
                })
                .collect(),
        };
        assert_eq!(
            magnitude_summary(&flat),
            Some(MagnitudeSummary {
                max_abs_delta: 0.0,
                argmax_p: 0.2
            })
        );
        assert_eq!(
            magnitude_summary(&SweepResult {
                n1: 1,
                n2: 2,
                rows: vec![]
            }),
            None
        );
    }

    #[test]
    fn trend_bounds() {
        assert_eq!(
            nstate_trend(1, Weighting::Equal, 1e-3),
            Err(Error::StateCountOutOfRange(1))
        );
        assert_eq!(
            nstate_trend(7, Weighting::Equal, 1e-3),
            Err(Error::StateCountOutOfRange(7))
        );
    }

    #[test]
    fn degenerate_energies_give_zero_delta() {
        let s = Superposition::equal_weights(2).unwrap();
        let row = trend_row(&s, &[5.0, 5.0], 1e-3).unwrap();
        assert!(row.delta_percent.abs() < 1e-9);
    }
}
