//! Regenerates `fixtures/frozen_constants.json`.
//!
//! Sequences come from `gmseq`'s generators; every number is computed by
//! `gmseq-oracle`, which shares no code with the library.
//!
//! ```text
//! cargo run --release -p gmseq-cli --example generate_fixtures
//! ```

use std::path::Path;

use gmseq::generators::{make_example, make_family, ExampleName, FamilyKind};
use gmseq::{Complex64, TwoSidedSequence};
use gmseq_cli::fixtures::{
    random_family, random_gm_family, CompensatedConstants, FrozenConstants, GapConstants,
    LacunaryConstants, NetDyadic, PerExponent, PowerNorms, NET_DYADIC_COUNT, NET_DYADIC_PAIRS,
    P_GRID,
};
use gmseq_oracle as oracle;

const NMAX_RANGE: [u32; 2] = [6, 20];
const OVERSAMPLE: usize = 4;
const REFINE_TOLERANCE: f64 = 1e-6;
const MAX_DOUBLINGS: u32 = 6;

fn conj(p: f64) -> f64 {
    p / (p - 1.0)
}

fn ceil_log2(n: u64) -> u32 {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}

/// `b_k = a_k`, `k ≥ 1`.
fn one_sided(a: &TwoSidedSequence) -> Vec<Complex64> {
    (1..=a.k_max())
        .map(|k| oracle::get(a.offset(), a.values(), k))
        .collect()
}

fn gap() -> GapConstants {
    let (mut lo, mut hi, mut growth, mut bar) = (f64::INFINITY, 0.0_f64, f64::INFINITY, 0.0_f64);
    for nmax in NMAX_RANGE[0]..=NMAX_RANGE[1] {
        let a = make_example(ExampleName::Gap, nmax).unwrap();
        let (off, v) = (a.offset(), a.values());
        let hats = oracle::hat_levels(off, v, nmax, true, true);
        for n in 5..=nmax {
            let s = 1i64 << n;
            let block: f64 = (s..=2 * s)
                .map(|k| (oracle::get(off, v, k) - oracle::get(off, v, k + 1)).norm())
                .sum();
            let lhs = block * s as f64 / (n as f64).sqrt();
            lo = lo.min(lhs);
            hi = hi.max(lhs);
            growth = growth.min(hats[n as usize] * s as f64 / n as f64);
        }
        bar = bar.max(oracle::gm_bar_best(off, v));
        eprintln!("gap nmax={nmax} done");
    }
    GapConstants {
        delta_block_min: lo,
        delta_block_max: hi,
        hat_growth_min: growth,
        gm_bar_best_max: bar,
    }
}

fn compensated() -> CompensatedConstants {
    let mut rate = f64::INFINITY;
    for nmax in NMAX_RANGE[0]..=NMAX_RANGE[1] {
        let a = make_example(ExampleName::Compensated, nmax).unwrap();
        let real: Vec<Complex64> = one_sided(&a)
            .iter()
            .map(|z| Complex64::new(z.re, 0.0))
            .collect();
        let levels = ceil_log2(real.len() as u64 + 1);
        let ratios = oracle::gm_classic_dyadic(&real, 2.0, levels);
        for j in 4..=nmax.min(levels) {
            if let Some(r) = ratios[j as usize] {
                rate = rate.min(r / (j as f64 / 4.0).exp2());
            }
        }
        eprintln!("compensated nmax={nmax} done");
    }
    CompensatedConstants {
        classic_rate_min: rate,
    }
}

fn lacunary() -> LacunaryConstants {
    let (mut hat, mut bar) = (0.0_f64, 0.0_f64);
    for nmax in NMAX_RANGE[0]..=NMAX_RANGE[1] {
        let a = make_example(ExampleName::Lacunary, nmax).unwrap();
        let neg = oracle::hat_levels(a.offset(), a.values(), nmax, false, true);
        for k in 1..=nmax {
            hat = hat.max(neg[k as usize] * (k as f64).exp2());
        }
        bar = bar.max(oracle::gm_bar_best(a.offset(), a.values()));
        eprintln!("lacunary nmax={nmax} done");
    }
    LacunaryConstants {
        negative_hat_max: hat,
        gm_bar_best_max: bar,
    }
}

fn family_constants(family: &[TwoSidedSequence]) -> (Vec<PerExponent>, Vec<PerExponent>) {
    let mut fourier = vec![0.0_f64; P_GRID.len()];
    let mut jstar = vec![1.0_f64; P_GRID.len()];
    for (i, a) in family.iter().enumerate() {
        let (off, v) = (a.offset(), a.values());
        let lp =
            oracle::lp_doubling_many(off, v, &P_GRID, OVERSAMPLE, REFINE_TOLERANCE, MAX_DOUBLINGS);
        for (j, &p) in P_GRID.iter().enumerate() {
            let net = oracle::net_norm(off, v, conj(p), p);
            fourier[j] = fourier[j].max(net / lp[j]);
            let r = oracle::j_p_star(v, p) / oracle::lorentz(v, conj(p), p);
            jstar[j] = jstar[j].max(r).max(1.0 / r);
        }
        if i % 50 == 0 {
            eprintln!("family member {i}");
        }
    }
    let pack = |xs: Vec<f64>| {
        P_GRID
            .iter()
            .zip(xs)
            .map(|(&p, value)| PerExponent { p, value })
            .collect()
    };
    (pack(fourier), pack(jstar))
}

fn net_dyadic(family: &[TwoSidedSequence]) -> Vec<NetDyadic> {
    NET_DYADIC_PAIRS
        .iter()
        .map(|&(p, q)| {
            let mut c = 1.0_f64;
            for a in &family[..NET_DYADIC_COUNT] {
                let net = oracle::net_norm(a.offset(), a.values(), p, q);
                let dy = oracle::net_norm_dyadic(a.offset(), a.values(), p, q);
                c = c.max(net / dy).max(dy / net);
            }
            NetDyadic { p, q, c }
        })
        .collect()
}

fn power_norms() -> PowerNorms {
    let (alpha, size, p) = (0.75, 1024, 2.0);
    let a = make_family(FamilyKind::Power, &[alpha], size).unwrap();
    let (off, v) = (a.offset(), a.values());
    let levels = ceil_log2(a.radius() + 1) + 1;
    let thetas: Vec<f64> = (0..=levels).map(|n| oracle::theta(off, v, n)).collect();
    PowerNorms {
        alpha,
        size,
        p,
        j_p: oracle::j_p_reverse(off, v, p),
        j_p_star: oracle::j_p_star(v, p),
        i_p: oracle::i_p(&thetas, p),
        net_norm: oracle::net_norm(off, v, conj(p), p),
        lorentz_norm: oracle::lorentz(v, conj(p), p),
        lp: oracle::parseval(v),
    }
}

fn main() {
    let family = random_family();
    let gap = gap();
    let compensated = compensated();
    let lacunary = lacunary();
    let (fourier_ratio_max, jstar_lorentz_c) = family_constants(&family);
    let net_dyadic = net_dyadic(&family);
    let gm_real_inclusion_max = random_gm_family()
        .iter()
        .map(|a| oracle::gm_real_inclusion_best(a.offset(), a.values()))
        .fold(0.0, f64::max);
    let frozen = FrozenConstants {
        provenance: format!(
            "examples/generate_fixtures.rs with gmseq-oracle {}: proposition constants over nmax {}..={}; \
             family constants over the {}-member random family; lp by direct evaluation with oversample {}, \
             tolerance {:e}, {} doublings; net norms with a midpoint upper bound on the tail",
            env!("CARGO_PKG_VERSION"),
            NMAX_RANGE[0],
            NMAX_RANGE[1],
            family.len(),
            OVERSAMPLE,
            REFINE_TOLERANCE,
            MAX_DOUBLINGS,
        ),
        nmax_range: NMAX_RANGE,
        gap,
        compensated,
        lacunary,
        fourier_ratio_max,
        jstar_lorentz_c,
        net_dyadic,
        gm_real_inclusion_max,
        power_norms: power_norms(),
    };
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/frozen_constants.json");
    let mut text = serde_json::to_string_pretty(&frozen).unwrap();
    text.push('\n');
    std::fs::write(&path, text).unwrap();
    eprintln!("wrote {}", path.display());
}
