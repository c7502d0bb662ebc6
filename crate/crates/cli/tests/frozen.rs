//! Library values against the constants frozen from the reference run.

use gmseq::classes::gm_real_inclusion_diagnostic;
use gmseq::functionals::j_p_star;
use gmseq::generators::{make_example, ExampleName};
use gmseq::netspace::{lorentz_norm, net_norm_dyadic, net_norm_with, NetIndex};
use gmseq::{Exponent, NetAverages};
use gmseq_cli::fixtures::{
    random_family, random_gm_family, FrozenConstants, FROZEN_SLACK, NET_DYADIC_COUNT,
    NET_DYADIC_PAIRS, P_GRID,
};
use gmseq_oracle as oracle;

fn within(x: f64, c: f64) -> bool {
    x <= c * (1.0 + FROZEN_SLACK) && 1.0 / x <= c * (1.0 + FROZEN_SLACK)
}

#[test]
fn every_constant_is_present_and_sane() {
    let f = FrozenConstants::load();
    assert!(!f.provenance.is_empty());
    assert_eq!(f.nmax_range, [6, 20]);
    assert!(0.0 < f.gap.delta_block_min && f.gap.delta_block_min <= f.gap.delta_block_max);
    assert!(f.gap.hat_growth_min > 0.0);
    assert!(f.compensated.classic_rate_min > 0.0);
    for &p in &P_GRID {
        assert!(f.fourier_ratio_max(p).unwrap() > 0.0);
        assert!(f.jstar_lorentz_c(p).unwrap() >= 1.0);
    }
    assert_eq!(f.net_dyadic.len(), NET_DYADIC_PAIRS.len());
}

#[test]
fn jstar_and_lorentz_are_comparable() {
    let f = FrozenConstants::load();
    for a in random_family() {
        for &p in &P_GRID {
            let r = j_p_star(&a, Exponent::new(p).unwrap())
                / lorentz_norm(&a, p / (p - 1.0), p).unwrap();
            assert!(within(r, f.jstar_lorentz_c(p).unwrap()), "p = {p}: {r}");
        }
    }
}

#[test]
fn dyadic_net_norm_is_equivalent() {
    let f = FrozenConstants::load();
    for a in &random_family()[..NET_DYADIC_COUNT] {
        let table = NetAverages::new(a);
        for e in &f.net_dyadic {
            let net = net_norm_with(&table, e.p, NetIndex::Finite(e.q));
            let dy = net_norm_dyadic(a, e.p, e.q).unwrap();
            assert!(within(net / dy, e.c), "(p, q) = ({}, {})", e.p, e.q);
        }
    }
}

#[test]
fn real_gm_sequences_sit_in_gm_bar() {
    let f = FrozenConstants::load();
    for a in random_gm_family() {
        let d = gm_real_inclusion_diagnostic(&a).unwrap();
        assert!(d.best_constant <= f.gm_real_inclusion_max * (1.0 + FROZEN_SLACK));
    }
}

/// The short end of the generator run, repeated: values recomputed by the
/// oracle fall inside the frozen brackets.
#[test]
fn frozen_brackets_cover_a_fresh_reference_run() {
    let f = FrozenConstants::load();
    for nmax in 6..=10 {
        let a = make_example(ExampleName::Gap, nmax).unwrap();
        let (off, v) = (a.offset(), a.values());
        for n in 5..=nmax {
            let s = 1i64 << n;
            let block: f64 = (s..=2 * s)
                .map(|k| (oracle::get(off, v, k) - oracle::get(off, v, k + 1)).norm())
                .sum();
            let lhs = block * s as f64 / (n as f64).sqrt();
            assert!(f.gap.delta_block_min <= lhs && lhs <= f.gap.delta_block_max);
        }
        assert!(oracle::gm_bar_best(off, v) <= f.gap.gm_bar_best_max);
        let c = make_example(ExampleName::Lacunary, nmax).unwrap();
        let neg = oracle::hat_levels(c.offset(), c.values(), nmax, false, true);
        for k in 1..=nmax {
            assert!(neg[k as usize] * (k as f64).exp2() <= f.lacunary.negative_hat_max);
        }
    }
}
