//! Exact two-state pipeline.
//!
//! Averaging the two-state energy over one beat period leaves
//! `(e1+e2)/2 + (e1−e2)/2 · sgn(f² − g²)`: each point of the well carries
//! the eigenvalue of whichever component has the larger modulus there. The
//! spatial average is therefore `e1·|{f² > g²}| + e2·|{g² > f²}|`, and the
//! only numerical work is locating the sign changes of
//! `h(x) = P sin²(n1πx) − (1−P) sin²(n2πx)`.

use std::cmp::Ordering;

use num_integer::Integer;
use num_rational::Ratio;

use crate::well::{eigen_energy, sin_pi, Eigenstate, Superposition};
use crate::{Error, Result};

/// Minimum scan cells per unit of the larger quantum number.
pub const SCAN_CELLS_PER_MODE: usize = 16;
/// Grid doublings attempted before root isolation gives up.
pub const MAX_SCAN_DOUBLINGS: u32 = 4;

// |q| at or below this on a scan node is treated as a root on the node.
const NODE_ZERO_TOL: f64 = 1e-14;
const MAX_P_REFINEMENT: f64 = 256.0;

/// Normalised two-state superposition with `c1 = √P`, `c2 = √(1−P)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoStateSpec {
    n1: u32,
    n2: u32,
    p: f64,
}

impl TwoStateSpec {
    pub fn new(n1: u32, n2: u32, p: f64) -> Result<Self> {
        Eigenstate::new(n1)?;
        Eigenstate::new(n2)?;
        if n1 == n2 {
            return Err(Error::EqualQuantumNumbers(n1));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::ProbabilityOutOfRange(p));
        }
        Ok(Self { n1, n2, p })
    }

    pub fn n1(&self) -> u32 {
        self.n1
    }

    pub fn n2(&self) -> u32 {
        self.n2
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn c1(&self) -> f64 {
        self.p.sqrt()
    }

    pub fn c2(&self) -> f64 {
        (1.0 - self.p).sqrt()
    }

    /// Well eigenvalues `(e1, e2)`.
    pub fn energies(&self) -> (f64, f64) {
        let e = |n| eigen_energy(n).expect("validated quantum number");
        (e(self.n1), e(self.n2))
    }

    pub fn superposition(&self) -> Superposition {
        Superposition::new([(self.n1, self.c1()), (self.n2, self.c2())])
            .expect("validated two-state spec")
    }

    /// Same P with both quantum numbers multiplied by `k`.
    pub fn scaled(&self, k: u32) -> Result<Self> {
        Self::new(self.n1 * k, self.n2 * k, self.p)
    }

    /// Quantum numbers divided by their gcd.
    pub fn reduced(&self) -> Self {
        let d = self.n1.gcd(&self.n2);
        Self {
            n1: self.n1 / d,
            n2: self.n2 / d,
            p: self.p,
        }
    }

    // Same sign as h(x) wherever f and g do not both vanish.
    fn dominance(&self, x: f64) -> f64 {
        self.c1() * sin_pi(f64::from(self.n1) * x).abs()
            - self.c2() * sin_pi(f64::from(self.n2) * x).abs()
    }

    // Sign of h just inside either wall: both sines are linear there.
    fn wall_sign(&self) -> i8 {
        let slope = self.c1() * f64::from(self.n1) - self.c2() * f64::from(self.n2);
        if slope.abs() <= 1e-12 * f64::from(self.n1.max(self.n2)) {
            0
        } else if slope > 0.0 {
            1
        } else {
            -1
        }
    }
}

/// Time average of the two-state energy at a point with amplitudes `f`, `g`.
///
/// Energies are free parameters here; the well has no zero eigenvalue but
/// `e1 = 0` is a useful illustration.
pub fn time_average_two_state(e1: f64, e2: f64, f: f64, g: f64) -> Result<f64> {
    if f == 0.0 && g == 0.0 {
        return Err(Error::VanishingAmplitudes);
    }
    Ok(match (f * f).partial_cmp(&(g * g)) {
        Some(Ordering::Greater) => e1,
        Some(Ordering::Less) => e2,
        _ => 0.5 * (e1 + e2),
    })
}

/// Partition of `[0, 1]` by the sign of `f² − g²`.
///
/// `labels[i]` is the sign on the open interval between boundary `i` and
/// boundary `i + 1`, where the boundaries are `0`, the crossings, and `1`.
/// `+1` means `f² > g²`, `−1` means `g² > f²`, and `0` is reserved for
/// `f² ≡ g²`.
#[derive(Debug, Clone, PartialEq)]
pub struct SignRegions {
    pub crossings: Vec<f64>,
    pub labels: Vec<i8>,
}

impl SignRegions {
    fn single(label: i8) -> Self {
        Self {
            crossings: Vec::new(),
            labels: vec![label],
        }
    }

    /// `(start, end, label)` for each interval.
    pub fn intervals(&self) -> impl Iterator<Item = (f64, f64, i8)> + '_ {
        let bounds: Vec<f64> = std::iter::once(0.0)
            .chain(self.crossings.iter().copied())
            .chain(std::iter::once(1.0))
            .collect();
        self.labels
            .iter()
            .enumerate()
            .map(move |(i, &label)| (bounds[i], bounds[i + 1], label))
    }

    fn measure(&self, label: i8) -> f64 {
        self.intervals()
            .filter(|&(_, _, l)| l == label)
            .map(|(a, b, _)| b - a)
            .sum()
    }

    /// Fraction of the well where `f² > g²`.
    pub fn fraction_first(&self) -> f64 {
        self.measure(1)
    }

    /// Fraction of the well where `g² > f²`.
    pub fn fraction_second(&self) -> f64 {
        self.measure(-1)
    }

    pub fn fraction_equal(&self) -> f64 {
        self.measure(0)
    }

    /// `∫₀¹ sgn(f² − g²) dx`.
    pub fn signed_measure(&self) -> f64 {
        self.intervals()
            .map(|(a, b, l)| f64::from(l) * (b - a))
            .sum()
    }
}

/// Locates every sign change of `f² − g²` in `(0, 1)`.
///
/// The dominance function is scanned on a uniform grid of at least
/// `16·max(n1, n2)` cells (more for P near 0 or 1, where crossings come in
/// close pairs), and each bracketed sign change is bisected to machine
/// precision. Touch points without a sign change, such as shared nodes of
/// the two sines, are skipped. The grid is doubled until two successive
/// scans agree on the number of crossings.
pub fn find_sign_regions(spec: &TwoStateSpec) -> Result<SignRegions> {
    if spec.p == 1.0 {
        return Ok(SignRegions::single(1));
    }
    if spec.p == 0.0 {
        return Ok(SignRegions::single(-1));
    }

    let minority = spec.p.min(1.0 - spec.p);
    let boost = (1.0 / minority.sqrt()).ceil().min(MAX_P_REFINEMENT) as usize;
    let mut cells = SCAN_CELLS_PER_MODE * spec.n1.max(spec.n2) as usize * boost;

    let mut previous = scan(spec, cells);
    for _ in 0..MAX_SCAN_DOUBLINGS {
        cells *= 2;
        let current = scan(spec, cells);
        if current.crossings.len() == previous.crossings.len() {
            return Ok(current);
        }
        previous = current;
    }
    Err(Error::RootIsolation {
        n1: spec.n1,
        n2: spec.n2,
        p: spec.p,
        refinements: MAX_SCAN_DOUBLINGS,
    })
}

fn scan(spec: &TwoStateSpec, cells: usize) -> SignRegions {
    let node = |j: usize| j as f64 / cells as f64;
    let sign_at = |j: usize| -> i8 {
        if j == 0 || j == cells {
            return spec.wall_sign();
        }
        let q = spec.dominance(node(j));
        if q.abs() <= NODE_ZERO_TOL {
            0
        } else if q > 0.0 {
            1
        } else {
            -1
        }
    };

    let mut crossings = Vec::new();
    let mut first_label = 0i8;
    // Last node with a nonzero sign, and the first zero node after it.
    let mut last: Option<(usize, i8)> = None;
    let mut pending_zero: Option<usize> = None;

    for j in 0..=cells {
        let s = sign_at(j);
        if s == 0 {
            if last.is_some() && pending_zero.is_none() {
                pending_zero = Some(j);
            }
            continue;
        }
        match last {
            None => first_label = s,
            Some((i, prev)) if prev != s => {
                let x = match pending_zero {
                    Some(z) => node(z),
                    None => bisect(spec, node(i), node(j), prev),
                };
                crossings.push(x);
            }
            Some(_) => {}
        }
        last = Some((j, s));
        pending_zero = None;
    }

    let labels = (0..=crossings.len())
        .map(|i| {
            if i % 2 == 0 {
                first_label
            } else {
                -first_label
            }
        })
        .collect();
    SignRegions { crossings, labels }
}

fn bisect(spec: &TwoStateSpec, mut lo: f64, mut hi: f64, lo_sign: i8) -> f64 {
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return mid;
        }
        let q = spec.dominance(mid);
        if q == 0.0 {
            return mid;
        }
        if (q > 0.0) == (lo_sign > 0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// Spacetime-averaged energy of a two-state superposition via sign regions.
pub fn dgp_two_state(spec: &TwoStateSpec) -> Result<f64> {
    let (e1, e2) = spec.energies();
    dgp_two_state_with_energies(spec, e1, e2)
}

/// As [`dgp_two_state`] with synthetic energies in place of the eigenvalues.
pub fn dgp_two_state_with_energies(spec: &TwoStateSpec, e1: f64, e2: f64) -> Result<f64> {
    let regions = find_sign_regions(spec)?;
    Ok(e1 * regions.fraction_first()
        + e2 * regions.fraction_second()
        + 0.5 * (e1 + e2) * regions.fraction_equal())
}

/// Born-rule expectation `Σ c_n² e_n / Σ c_n²`.
pub fn born_expectation(s: &Superposition) -> Result<f64> {
    born_expectation_with(s, &s.energies())
}

pub fn born_expectation_with(s: &Superposition, energies: &[f64]) -> Result<f64> {
    if energies.len() != s.len() {
        return Err(Error::EnergyCountMismatch {
            expected: s.len(),
            got: energies.len(),
        });
    }
    let norm = s.norm_sq();
    if norm == 0.0 {
        return Err(Error::ZeroCoefficients);
    }
    let weighted: f64 = s
        .terms()
        .iter()
        .zip(energies)
        .map(|(t, e)| t.coefficient * t.coefficient * e)
        .sum();
    Ok(weighted / norm)
}

/// Crossings over the whole well and per periodicity cell `1/gcd(n1, n2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntersectionCount {
    pub total: u64,
    pub per_cell: Ratio<u64>,
}

pub fn intersection_count(spec: &TwoStateSpec) -> Result<IntersectionCount> {
    let total = find_sign_regions(spec)?.crossings.len() as u64;
    let cells = u64::from(spec.n1.gcd(&spec.n2));
    Ok(IntersectionCount {
        total,
        per_cell: Ratio::new(total, cells),
    })
}
