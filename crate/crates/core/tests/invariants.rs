//! Randomized invariants across sets, capacities, integrals, bases and operators.

use proptest::prelude::*;

use bdchoquet::analysis::kfunctional::k_upper;
use bdchoquet::analysis::SmoothingLadder;
use bdchoquet::bernstein::{
    basis_simplex, bernstein_basis_1d, classical_bernstein, enumerate_multi_indices, SimplexPoint,
};
use bdchoquet::capacity::{Capacity, Distortion};
use bdchoquet::choquet::{choquet_full, ordinary_integral, IntegralMethod};
use bdchoquet::function::{Func1, SampleMode, SampledFunction1D};
use bdchoquet::operators::{CapacityFamily, Discretization, OperatorPlan, Target};
use bdchoquet::sets::IntervalSet;

fn raw_intervals() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((0.0f64..1.0, 0.0f64..0.4), 0..5)
        .prop_map(|v| v.into_iter().map(|(a, w)| (a, (a + w).min(1.0))).collect())
}

fn interval_set() -> impl Strategy<Value = IntervalSet> {
    raw_intervals().prop_map(|v| IntervalSet::canonicalize(v).unwrap())
}

fn submodular_capacities() -> Vec<Capacity> {
    vec![
        Capacity::sqrt_lebesgue(),
        Capacity::sin_lebesgue(),
        Capacity::DistortedLebesgue(Distortion::Power(0.4)),
        Capacity::possibility_bump(4, 2).unwrap(),
        Capacity::possibility_bump(6, 0).unwrap(),
        Capacity::LebesgueBorel,
        Capacity::dirac(0.5),
        Capacity::sin_lebesgue().scaled(0.5).unwrap(),
    ]
}

/// Polynomial with nonnegative coefficients, so nonnegative on [0, 1].
fn nonneg_poly() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..1.0, 1..5)
}

fn poly(c: Vec<f64>) -> Func1 {
    Func1::new("poly", move |t: f64| c.iter().rev().fold(0.0, |acc, a| acc * t + a))
}

fn sampled(values: Vec<f64>) -> SampledFunction1D {
    SampledFunction1D::from_cell_values(values).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonicalize_is_idempotent_and_closed(a in raw_intervals(), b in raw_intervals()) {
        let s = IntervalSet::canonicalize(a).unwrap();
        let again = IntervalSet::canonicalize(s.intervals().to_vec()).unwrap();
        prop_assert_eq!(&s, &again);
        let t = IntervalSet::canonicalize(b).unwrap();
        prop_assert!(IntervalSet::from_canonical(s.union(&t).intervals().to_vec()).is_ok());
        prop_assert!(IntervalSet::from_canonical(s.intersection(&t).intervals().to_vec()).is_ok());
    }

    #[test]
    fn capacities_are_monotone_and_submodular(a in interval_set(), b in interval_set()) {
        for c in submodular_capacities() {
            let (ma, mb) = (c.measure(&a).unwrap(), c.measure(&b).unwrap());
            let (mu, mi) = (c.measure(&a.union(&b)).unwrap(), c.measure(&a.intersection(&b)).unwrap());
            prop_assert!(mi <= ma + 1e-12 && ma <= mu + 1e-12, "{}", c);
            prop_assert!(mu + mi <= ma + mb + 1e-12, "{}", c);
            prop_assert_eq!(c.measure(&IntervalSet::empty()).unwrap(), 0.0);
            if c.flags().normalized {
                prop_assert!((c.measure(&IntervalSet::full()).unwrap() - 1.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn possibility_union_is_max(a in interval_set(), b in interval_set()) {
        for c in [Capacity::possibility_bump(5, 3).unwrap(), Capacity::possibility_bump(9, 9).unwrap()] {
            let u = c.measure(&a.union(&b)).unwrap();
            prop_assert_eq!(u, c.measure(&a).unwrap().max(c.measure(&b).unwrap()));
        }
    }

    #[test]
    fn integral_is_homogeneous_and_subadditive(
        f in prop::collection::vec(-1.0f64..2.0, 64),
        g in prop::collection::vec(-1.0f64..2.0, 64),
        scale in 0.0f64..5.0,
    ) {
        let m = IntegralMethod::SortedLevels;
        let sum: Vec<f64> = f.iter().zip(&g).map(|(a, b)| a + b).collect();
        let scaled: Vec<f64> = f.iter().map(|a| scale * a).collect();
        let (f, g) = (sampled(f), sampled(g));
        for c in submodular_capacities() {
            let i_f = choquet_full(&f, &c, m).unwrap();
            let i_g = choquet_full(&g, &c, m).unwrap();
            let i_sum = choquet_full(&sampled(sum.clone()), &c, m).unwrap();
            prop_assert!(i_sum <= i_f + i_g + 1e-9, "{}", c);
            let i_scaled = choquet_full(&sampled(scaled.clone()), &c, m).unwrap();
            prop_assert!((i_scaled - scale * i_f).abs() <= 1e-9 * (1.0 + i_scaled.abs()), "{}", c);
        }
    }

    #[test]
    fn additive_capacities_reduce_to_quadrature(f in prop::collection::vec(0.0f64..3.0, 1..128)) {
        let f = sampled(f);
        for c in [Capacity::LebesgueBorel, Capacity::dirac(0.3), Capacity::DistortedLebesgue(Distortion::Identity)] {
            let ch = choquet_full(&f, &c, IntegralMethod::SortedLevels).unwrap();
            let ord = ordinary_integral(&f, &IntervalSet::full(), &c).unwrap();
            prop_assert!((ch - ord).abs() <= 1e-9, "{}: {} vs {}", c, ch, ord);
        }
    }

    #[test]
    fn bases_partition_unity(n in 1u32..=256, x in 0.0f64..=1.0) {
        let mut s = 0.0;
        for k in 0..=n {
            let b = bernstein_basis_1d(n, k, x).unwrap();
            prop_assert!(b >= 0.0);
            s += b;
        }
        prop_assert!((s - 1.0).abs() < 1e-12);
    }

    #[test]
    fn simplex_bases_partition_unity(n in 1u32..=40, u in 0.0f64..=1.0, v in 0.0f64..=1.0) {
        let p = SimplexPoint::new(vec![u * (1.0 - v), v * u]).unwrap();
        let mut s = 0.0;
        for alpha in enumerate_multi_indices(n, 2).unwrap() {
            let (b, _) = basis_simplex(&alpha, &p).unwrap();
            prop_assert!(b >= 0.0);
            s += b;
        }
        prop_assert!((s - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bernstein_lies_above_convex_functions(n in 1u32..64, x in 0.0f64..1.0, c in 0.0f64..1.0) {
        let f = Func1::new("convex", move |t: f64| (t - c).abs() + t * t);
        prop_assert!(classical_bernstein(&f, n, x).unwrap() >= f.eval(x) - 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn operators_fix_constants_and_preserve_order(
        cf in nonneg_poly(),
        ch in nonneg_poly(),
        scale in 0.0f64..4.0,
        n in 1u32..12,
    ) {
        let disc = Discretization::default().with_cells(256);
        let xs: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
        let f = poly(cf.clone());
        let h = poly(ch.clone());
        let g = f.add(&h);
        let families = [
            CapacityFamily::Constant(Capacity::sqrt_lebesgue()),
            CapacityFamily::Possibility,
            CapacityFamily::two_measure(Capacity::LebesgueBorel, Capacity::sin_lebesgue(), bdchoquet::operators::EndTerms::Both).unwrap(),
        ];
        for fam in &families {
            let plan = OperatorPlan::new(n, 1, fam, &disc).unwrap();
            let one = plan.apply(&Target::Line(Func1::e0())).unwrap();
            let of = plan.apply(&Target::Line(f.clone())).unwrap();
            let og = plan.apply(&Target::Line(g.clone())).unwrap();
            let oh = plan.apply(&Target::Line(h.clone())).unwrap();
            let os = plan.apply(&Target::Line(f.scale(scale))).unwrap();
            for &x in &xs {
                prop_assert!((one.evaluate_at(x).unwrap() - 1.0).abs() < 1e-12);
                let (vf, vg, vh) = (of.evaluate_at(x).unwrap(), og.evaluate_at(x).unwrap(), oh.evaluate_at(x).unwrap());
                prop_assert!(vf <= vg + 1e-9);
                prop_assert!(vg <= vf + vh + 1e-9);
                prop_assert!((os.evaluate_at(x).unwrap() - scale * vf).abs() <= 1e-9 * (1.0 + vf.abs() * scale));
            }
        }
    }

    #[test]
    fn k_upper_nonincreasing_in_ladder(cf in prop::collection::vec(-1.0f64..1.0, 1..6), t in 0.0f64..0.5) {
        let f = Target::Line(poly(cf));
        let orders = [4u32, 8, 16, 32, 64];
        let mut last = f64::INFINITY;
        for len in 1..=orders.len() {
            let ladder = SmoothingLadder::new(orders[..len].to_vec()).unwrap();
            let k = k_upper(&f, t, &ladder, 512).unwrap();
            prop_assert!(k <= last);
            last = k;
        }
    }
}

#[test]
fn sampling_modes_agree_on_constants() {
    let f = Func1::constant(2.5);
    for mode in [SampleMode::Midpoint, SampleMode::NodeAverage] {
        let s = SampledFunction1D::from_fn(16, mode, &f).unwrap();
        let v = choquet_full(&s, &Capacity::sqrt_lebesgue(), IntegralMethod::SortedLevels).unwrap();
        assert!((v - 2.5).abs() < 1e-15);
    }
}
