use std::f64::consts::PI;

use proptest::prelude::*;
use spacetime_average::analysis::{delta_percent, sweep_delta};
use spacetime_average::closed_form::{
    born_expectation, dgp_two_state, find_sign_regions, time_average_two_state, TwoStateSpec,
};
use spacetime_average::energy::{pointwise_energy, two_state_pointwise};
use spacetime_average::quadrature::common_period;
use spacetime_average::sum::pairwise_sum;
use spacetime_average::{eigen_energy, eigen_function, psi, Superposition};

const PI2: f64 = PI * PI;

fn distinct_pair() -> impl Strategy<Value = (u32, u32)> {
    (1u32..30, 1u32..30).prop_filter("distinct", |(a, b)| a != b)
}

fn interior_p() -> impl Strategy<Value = f64> {
    0.01f64..0.99
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reflection_symmetry(n in 1u32..60, x in 0.0f64..=1.0) {
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        let a = eigen_function(n, x).unwrap();
        let b = eigen_function(n, 1.0 - x).unwrap();
        prop_assert!((a - sign * b).abs() < 1e-12);
    }

    #[test]
    fn walls_are_nodes(n in 1u32..500, t in -50.0f64..50.0) {
        let s = Superposition::new([(n, 1.0), (n + 1, -0.5)]).unwrap();
        prop_assert_eq!(psi(&s, 0.0, t).unwrap().norm_sqr(), 0.0);
        prop_assert_eq!(psi(&s, 1.0, t).unwrap().norm_sqr(), 0.0);
    }

    #[test]
    fn density_is_periodic(
        ns in proptest::sample::subsequence((1u32..=8).collect::<Vec<_>>(), 1..=4),
        coeffs in proptest::collection::vec(0.1f64..2.0, 4),
        x in 0.0f64..1.0,
        t in 0.0f64..5.0,
    ) {
        let s = Superposition::new(ns.iter().copied().zip(coeffs)).unwrap();
        let period = common_period(&s).period;
        let a = psi(&s, x, t).unwrap().norm_sqr();
        let b = psi(&s, x, t + period).unwrap().norm_sqr();
        prop_assert!((a - b).abs() <= 1e-12 * s.norm_sq().max(1.0) * 2.0 * ns.len() as f64);
    }

    #[test]
    fn eigenstate_energy_is_constant(n in 1u32..40, x in 0.001f64..0.999, t in -10.0f64..10.0) {
        let e = pointwise_energy(&Superposition::eigenstate(n).unwrap(), x, t).unwrap();
        if let Some(v) = e.get() {
            let expected = eigen_energy(n).unwrap();
            prop_assert!((v - expected).abs() <= 1e-10 * expected);
        }
    }

    #[test]
    fn general_energy_matches_two_state_form(
        (n1, n2) in distinct_pair(),
        c1 in -2.0f64..2.0,
        c2 in -2.0f64..2.0,
        x in 0.0f64..1.0,
        t in 0.0f64..1.0,
    ) {
        prop_assume!(c1.abs() > 1e-3 && c2.abs() > 1e-3);
        let s = Superposition::new([(n1, c1), (n2, c2)]).unwrap();
        let (e1, e2) = (eigen_energy(n1).unwrap(), eigen_energy(n2).unwrap());
        let f = c1 * eigen_function(n1, x).unwrap();
        let g = c2 * eigen_function(n2, x).unwrap();
        let general = pointwise_energy(&s, x, t).unwrap();
        let closed = two_state_pointwise(e1, e2, f, g, (e2 - e1) * t);
        // Stay away from nodes where both forms lose all precision.
        prop_assume!(general.psi_sq > 1e-6);
        let (a, b) = (general.get().unwrap(), closed.get().unwrap());
        let scale = e1.max(e2) * (f * f + g * g) / general.psi_sq;
        prop_assert!((a - b).abs() <= 1e-10 * scale, "{} vs {}", a, b);
    }

    #[test]
    fn energy_is_scale_invariant(
        (n1, n2) in distinct_pair(),
        c1 in 0.1f64..2.0,
        c2 in -2.0f64..-0.1,
        k in prop_oneof![0.01f64..0.5, 2.0f64..100.0],
        x in 0.0f64..1.0,
        t in 0.0f64..1.0,
    ) {
        let s = Superposition::new([(n1, c1), (n2, c2)]).unwrap();
        let scaled = s.scaled(k).unwrap();
        let a = pointwise_energy(&s, x, t).unwrap();
        let b = pointwise_energy(&scaled, x, t).unwrap();
        prop_assume!(a.psi_sq > 1e-6);
        let (a, b) = (a.get().unwrap(), b.get().unwrap());
        prop_assert!((a - b).abs() <= 1e-9 * a.abs().max(PI2));
        let (ba, bb) = (born_expectation(&s).unwrap(), born_expectation(&scaled).unwrap());
        prop_assert!((ba - bb).abs() <= 1e-12 * ba);
    }

    #[test]
    fn time_average_matches_phase_average(
        e1 in 1.0f64..100.0,
        e2 in 1.0f64..100.0,
        f in -1.0f64..1.0,
        g in -1.0f64..1.0,
    ) {
        // Stay clear of f² = g², where the phase average has a near-singular peak.
        prop_assume!((f * f - g * g).abs() > 0.2 * (f * f + g * g));
        let exact = time_average_two_state(e1, e2, f, g).unwrap();
        let m = 20_000;
        let samples: Vec<f64> = (0..m)
            .map(|j| {
                let phase = 2.0 * PI * (j as f64 + 0.5) / m as f64;
                two_state_pointwise(e1, e2, f, g, phase).value
            })
            .collect();
        let mean = pairwise_sum(&samples) / m as f64;
        prop_assert!((mean - exact).abs() <= 1e-8 * e1.max(e2), "{} vs {}", mean, exact);
    }

    #[test]
    fn ratio_invariance((n1, n2) in distinct_pair(), k in 2u32..5, p in interior_p()) {
        let a = sweep_delta(n1, n2, &[p]).unwrap().rows[0].delta_percent;
        let b = sweep_delta(k * n1, k * n2, &[p]).unwrap().rows[0].delta_percent;
        prop_assert!((a - b).abs() <= 1e-10 * a.abs().max(1.0), "{} vs {}", a, b);
    }

    #[test]
    fn complementarity((n1, n2) in distinct_pair(), p in interior_p()) {
        let a = sweep_delta(n1, n2, &[p]).unwrap().rows[0];
        let b = sweep_delta(n2, n1, &[1.0 - p]).unwrap().rows[0];
        prop_assert!((a.born - b.born).abs() <= 1e-12 * a.born);
        prop_assert!((a.dgp - b.dgp).abs() <= 1e-9 * a.dgp);
        prop_assert!((a.delta_percent - b.delta_percent).abs() <= 1e-7);
    }

    #[test]
    fn average_lies_between_eigenvalues((n1, n2) in distinct_pair(), p in 0.0f64..=1.0) {
        let spec = TwoStateSpec::new(n1, n2, p).unwrap();
        let dgp = dgp_two_state(&spec).unwrap();
        let (e1, e2) = spec.energies();
        prop_assert!(dgp >= e1.min(e2) * (1.0 - 1e-12));
        prop_assert!(dgp <= e1.max(e2) * (1.0 + 1e-12));
    }

    #[test]
    fn sign_labels_match_midpoints((n1, n2) in distinct_pair(), p in interior_p()) {
        let spec = TwoStateSpec::new(n1, n2, p).unwrap();
        let regions = find_sign_regions(&spec).unwrap();
        let total: f64 = regions.intervals().map(|(a, b, _)| b - a).sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
        for (a, b, label) in regions.intervals() {
            let x = 0.5 * (a + b);
            let h = p * (n1 as f64 * PI * x).sin().powi(2)
                - (1.0 - p) * (n2 as f64 * PI * x).sin().powi(2);
            if h.abs() > 1e-9 {
                prop_assert_eq!(label, h.signum() as i8, "interval [{}, {}]", a, b);
            }
        }
        let equal = regions.fraction_equal();
        prop_assert!(equal.abs() < 1e-12);
        prop_assert!((regions.fraction_first() + regions.fraction_second() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sweep_rows_recompute((n1, n2) in distinct_pair(), points in 2usize..12) {
        let grid: Vec<f64> = (0..points).map(|i| i as f64 / (points - 1) as f64).collect();
        let sweep = sweep_delta(n1, n2, &grid).unwrap();
        prop_assert_eq!(sweep.rows.len(), points);
        for row in &sweep.rows {
            let spec = TwoStateSpec::new(n1, n2, row.p).unwrap();
            prop_assert_eq!(row.born, born_expectation(&spec.superposition()).unwrap());
            prop_assert_eq!(row.dgp, dgp_two_state(&spec).unwrap());
            prop_assert_eq!(row.delta_percent, delta_percent(row.born, row.dgp).unwrap());
        }
        prop_assert!(sweep.rows[0].delta_percent.abs() < 1e-9);
        prop_assert!(sweep.rows[points - 1].delta_percent.abs() < 1e-9);
    }

    #[test]
    fn pairwise_sum_is_accurate(values in proptest::collection::vec(-1e3f64..1e3, 0..500)) {
        let exact: f64 = values.iter().sum();
        let bound = 1e-12 * values.iter().map(|v| v.abs()).sum::<f64>().max(1.0);
        prop_assert!((pairwise_sum(&values) - exact).abs() <= bound);
    }
}

#[test]
fn eigenstate_constancy_on_grid() {
    for n in [1u32, 2, 5] {
        let s = Superposition::eigenstate(n).unwrap();
        let expected = (n * n) as f64 * PI2;
        let mut defined = 0;
        for i in 0..100 {
            for j in 0..100 {
                let x = i as f64 / 99.0;
                let t = j as f64 * 0.01;
                if let Some(v) = pointwise_energy(&s, x, t).unwrap().get() {
                    assert!((v - expected).abs() <= 1e-10 * expected);
                    defined += 1;
                }
            }
        }
        assert!(defined >= 9_800);
    }
}
