//! Invariants that hold for every finite sequence.

use gmseq::classes::{gm_bar_diagnostic, gm_classic_diagnostic, gm_star_diagnostic, ClassicGrid};
use gmseq::functionals::{hardy_lhs_rhs, i_p, j_p, j_p_star, theta_blocks, HardySide};
use gmseq::generators::{make_example, make_family, ExampleName, FamilyKind};
use gmseq::io::{sequence_from_csv, sequence_from_json, sequence_to_json, write_sequence_csv};
use gmseq::netspace::{hat_average, NetAverages};
use gmseq::trig::{apply_multiplier, lp_norm, partial_sum, Multiplier};
use gmseq::{
    symmetric_rearrangement, Complex64, DyadicProfile, Exponent, QuadratureSpec, TwoSidedSequence,
};
use proptest::prelude::*;

fn coefficient() -> impl Strategy<Value = Complex64> {
    prop_oneof![
        1 => Just(Complex64::new(0.0, 0.0)),
        3 => (-4.0..4.0f64, -4.0..4.0f64).prop_map(|(r, i)| Complex64::new(r, i)),
        1 => (-4.0..4.0f64).prop_map(|r| Complex64::new(r, 0.0)),
    ]
}

fn sequence(max_len: usize) -> impl Strategy<Value = TwoSidedSequence> {
    (-40i64..40, prop::collection::vec(coefficient(), 1..max_len))
        .prop_map(|(offset, values)| TwoSidedSequence::new(offset, values).unwrap())
}

fn nonzero_sequence(max_len: usize) -> impl Strategy<Value = TwoSidedSequence> {
    sequence(max_len).prop_filter("nonzero", |a| !a.is_zero())
}

fn exponent() -> impl Strategy<Value = Exponent> {
    prop_oneof![
        Just(1.25),
        Just(1.5),
        Just(2.0),
        Just(3.0),
        Just(4.0),
        1.05..6.0f64
    ]
    .prop_map(|p| Exponent::new(p).unwrap())
}

fn ulp_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn delta_is_reflection_symmetric(a in sequence(40), k in -60i64..60) {
        prop_assume!(k != 0);
        prop_assert_eq!(a.delta_abs(k), a.reflect().delta_abs(-k));
    }

    #[test]
    fn rearrangement_is_ordered_and_preserves_magnitudes(a in sequence(40)) {
        let r = symmetric_rearrangement(&a);
        prop_assert!(r.symmetric.windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(r.one_sided.windows(2).all(|w| w[0] >= w[1]));
        let mut want: Vec<f64> = a.values().iter().map(|v| v.norm()).collect();
        want.sort_by(|x, y| y.total_cmp(x));
        prop_assert_eq!(&r.one_sided, &want);
    }

    #[test]
    fn j_p_star_ignores_permutations(a in sequence(40), p in exponent(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut values = a.values().to_vec();
        values.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let b = TwoSidedSequence::new(a.offset() - 3, values).unwrap();
        prop_assert_eq!(j_p_star(&a, p), j_p_star(&b, p));
    }

    #[test]
    fn j_p_ignores_unimodular_multipliers(a in sequence(40), p in exponent(), signs in prop::collection::vec(prop::bool::ANY, 40)) {
        let explicit = Multiplier::Explicit {
            offset: a.offset(),
            signs: signs.iter().cycle().take(a.len()).map(|s| if *s { 1 } else { -1 }).collect(),
        };
        for m in [Multiplier::Alternating, Multiplier::DyadicSign, explicit] {
            let b = apply_multiplier(&a, &m).unwrap();
            prop_assert_eq!(j_p(&a, p), j_p(&b, p));
        }
    }

    #[test]
    fn theta_blocks_partition_the_deltas(a in sequence(40)) {
        let levels = gmseq::functionals::default_levels(&a) + 1;
        let blocks: f64 = theta_blocks(&a, levels).iter().sum();
        let reach = a.radius() as i64 + 2;
        let direct: f64 = (-reach..=reach).map(|k| a.delta_abs(k)).sum();
        prop_assert!(ulp_close(blocks, direct, 1e-12));
    }

    #[test]
    fn i_p_of_partial_sums_is_contracted(a in sequence(60), p in exponent()) {
        let bound = (1.0 / p.conjugate()).exp2();
        let full = i_p(&a, p, None).unwrap();
        for n in 0..8 {
            let s = partial_sum(&a, n);
            let levels = gmseq::functionals::default_levels(&a);
            let truncated = i_p(&s, p, Some(levels)).unwrap();
            prop_assert!(truncated <= bound * full * (1.0 + 1e-12), "N = {}: {} > {} · {}", n, truncated, bound, full);
        }
    }

    #[test]
    fn i_p_does_not_depend_on_extra_levels(a in sequence(40), p in exponent()) {
        let l = gmseq::functionals::default_levels(&a);
        let base = i_p(&a, p, Some(l)).unwrap();
        prop_assert_eq!(base, i_p(&a, p, Some(l + 3)).unwrap());
    }

    #[test]
    fn hardy_inequalities_hold_with_explicit_constants(
        a in prop::collection::vec(0.0..10.0f64, 1..40),
        alpha in 0.01..0.99f64,
        q in 1.01..8.0f64,
    ) {
        for side in [HardySide::Tail, HardySide::Head] {
            let (lhs, rhs) = hardy_lhs_rhs(&a, alpha, q, side).unwrap();
            prop_assert!(lhs <= side.constant(alpha) * rhs * (1.0 + 1e-12));
        }
    }

    #[test]
    fn tilde_is_nonincreasing_and_almost_dyadic_monotone(a in sequence(80)) {
        let t = NetAverages::new(&a);
        let d = t.diameter() as u64;
        for k in 1..=d + 3 {
            prop_assert!(t.tilde(k + 1) <= t.tilde(k));
        }
        for k in 0..12 {
            prop_assert!(t.tilde_dyadic(k) <= 5.0 * t.tilde_dyadic(k + 1) * (1.0 + 1e-12));
        }
    }

    #[test]
    fn halving_the_center_changes_tilde_by_at_most_six(a in sequence(80)) {
        let b = a.with_value(0, a.get(0) * 0.5).unwrap();
        let (ta, tb) = (NetAverages::new(&a), NetAverages::new(&b));
        for r in 0..12 {
            prop_assert!(tb.tilde_dyadic(r) <= 6.0 * ta.tilde_dyadic(r) * (1.0 + 1e-12));
        }
    }

    #[test]
    fn tilde_is_dominated_by_rearrangement_means(a in sequence(80)) {
        let t = NetAverages::new(&a);
        let r = symmetric_rearrangement(&a);
        for k in 1..=(a.len() + 4) {
            let mean = r.top_sum(k) / k as f64;
            prop_assert!(t.tilde(k as u64) <= mean * (1.0 + 1e-12));
        }
    }

    #[test]
    fn hat_is_dominated_by_tilde(a in sequence(80)) {
        let t = NetAverages::new(&a);
        for k in 0..10 {
            prop_assert!(hat_average(&a, k) <= t.tilde_dyadic(k) * (1.0 + 1e-12));
        }
    }

    #[test]
    fn profile_invariants(a in sequence(80)) {
        let pr = DyadicProfile::new(&a, None);
        for n in 0..pr.levels {
            prop_assert!(pr.majorant_tilde[n] >= pr.tilde_avg[n]);
            prop_assert!(pr.majorant_hat[n] >= pr.hat_avg[n]);
            prop_assert!(pr.majorant_hat[n] <= pr.majorant_tilde[n] * (1.0 + 1e-12));
            if n + 1 < pr.levels {
                prop_assert!(pr.tilde_avg[n + 1] <= pr.tilde_avg[n]);
                prop_assert!(pr.tilde_avg[n] <= 5.0 * pr.tilde_avg[n + 1] * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn partial_sum_is_idempotent(a in sequence(40), n in 0u32..8) {
        let once = partial_sum(&a, n);
        prop_assert_eq!(partial_sum(&once, n), once);
    }

    #[test]
    fn alternating_multiplier_is_translation(a in nonzero_sequence(30), p in exponent()) {
        let spec = QuadratureSpec::default();
        let b = apply_multiplier(&a, &Multiplier::Alternating).unwrap();
        let (x, y) = (lp_norm(&a, p, &spec).unwrap(), lp_norm(&b, p, &spec).unwrap());
        prop_assert!((x.value - y.value).abs() <= 2.0 * spec.refine_tolerance * x.value);
    }

    #[test]
    fn parseval(a in nonzero_sequence(60)) {
        let v = lp_norm(&a, Exponent::new(2.0).unwrap(), &QuadratureSpec::default()).unwrap().value;
        let energy: f64 = a.values().iter().map(|z| z.norm_sqr()).sum();
        prop_assert!(ulp_close(v, (2.0 * std::f64::consts::PI * energy).sqrt(), 1e-8));
    }

    #[test]
    fn diagnostics_are_scale_invariant(a in nonzero_sequence(40), re in 0.1..10.0f64, im in -10.0..10.0f64) {
        let c = Complex64::new(re, im);
        let b = a.scale(c);
        let pairs = [
            (gm_star_diagnostic(&a).unwrap(), gm_star_diagnostic(&b).unwrap()),
            (gm_bar_diagnostic(&a).unwrap(), gm_bar_diagnostic(&b).unwrap()),
        ];
        for (x, y) in pairs {
            prop_assert_eq!(&x.block_index, &y.block_index);
            for (u, v) in x.ratio.iter().zip(&y.ratio) {
                prop_assert!(u == v || ulp_close(*u, *v, 1e-10));
            }
        }
    }

    #[test]
    fn monotone_sequences_have_classic_constant_at_most_two(
        mut v in prop::collection::vec(0.0..10.0f64, 1..300),
        grid in prop_oneof![Just(ClassicGrid::Dyadic), Just(ClassicGrid::Full)],
    ) {
        v.sort_by(|x, y| y.total_cmp(x));
        prop_assume!(v[0] > 0.0);
        let a: Vec<Complex64> = v.iter().map(|x| Complex64::new(*x, 0.0)).collect();
        let d = gm_classic_diagnostic(&a, 2.0, grid).unwrap();
        prop_assert!(d.best_constant <= 2.0, "best constant {}", d.best_constant);
    }

    #[test]
    fn files_round_trip_exactly(
        offset in -1000i64..1000,
        values in prop::collection::vec((any::<f64>(), any::<f64>()), 1..40),
    ) {
        let values: Vec<Complex64> = values
            .into_iter()
            .map(|(r, i)| Complex64::new(if r.is_finite() { r } else { 0.0 }, if i.is_finite() { i } else { 0.0 }))
            .collect();
        let a = TwoSidedSequence::new(offset, values).unwrap();
        let json = sequence_to_json(&a).unwrap();
        prop_assert_eq!(&sequence_from_json(&json).unwrap(), &a);
        let mut csv = Vec::new();
        write_sequence_csv(&mut csv, &a).unwrap();
        prop_assert_eq!(&sequence_from_csv(csv.as_slice()).unwrap(), &a);
    }

    #[test]
    fn generators_are_pure(seed in 0u64..1000, size in 1usize..200) {
        let x = make_family(FamilyKind::RandomComplex, &[seed as f64, 0.5], size).unwrap();
        let y = make_family(FamilyKind::RandomComplex, &[seed as f64, 0.5], size).unwrap();
        prop_assert_eq!(x, y);
    }
}

#[test]
fn examples_are_pure() {
    for name in ExampleName::ALL {
        assert_eq!(
            make_example(name, 9).unwrap(),
            make_example(name, 9).unwrap()
        );
    }
}
