//! The fixed sequence families the acceptance checks run over, and the
//! constants frozen from the reference implementation.

use gmseq::generators::{make_example, make_family, ExampleName, FamilyKind};
use gmseq::{Complex64, TwoSidedSequence};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Members of [`random_family`].
pub const FAMILY_SIZE: usize = 500;
/// Largest `size` parameter, so every support fits in 511 indices.
pub const MAX_FAMILY_SIZE: usize = 255;
const FAMILY_SEED: u64 = 0x6d5e_17a3;
const DECAYS: [f64; 4] = [0.0, 0.5, 1.0, 1.5];

/// 500 seeded random complex sequences on `[-size, size]` with
/// `size ≤ 255`. Every fifth member is cut to `k ≥ 0` and every fifth
/// (shifted by one) has every third coefficient zeroed.
pub fn random_family() -> Vec<TwoSidedSequence> {
    let mut rng = ChaCha8Rng::seed_from_u64(FAMILY_SEED);
    (0..FAMILY_SIZE)
        .map(|i| {
            let size = rng.gen_range(1..=MAX_FAMILY_SIZE);
            let decay = DECAYS[i % DECAYS.len()];
            let a = make_family(FamilyKind::RandomComplex, &[i as f64, decay], size)
                .expect("valid family parameters");
            match i % 5 {
                0 => a.restrict(0, a.k_max()),
                1 => a.map_indexed(|k, v| {
                    if k % 3 == 0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        v
                    }
                }),
                _ => a,
            }
        })
        .collect()
}

/// Hand-picked sequences with known structure, each with a label.
pub fn named_fixtures() -> Vec<(String, TwoSidedSequence)> {
    let mut out = vec![
        ("unit-0".to_owned(), TwoSidedSequence::unit(0)),
        ("unit-1".to_owned(), TwoSidedSequence::unit(1)),
        ("unit-minus-5".to_owned(), TwoSidedSequence::unit(-5)),
    ];
    let families: [(FamilyKind, &[f64], usize); 5] = [
        (FamilyKind::Power, &[0.75], 64),
        (FamilyKind::Power, &[0.6], 100),
        (FamilyKind::OneSidedPower, &[1.0], 120),
        (FamilyKind::RandomGm, &[3.0, 1.0, 0.5], 200),
        (FamilyKind::RandomComplex, &[7.0, 0.0], 64),
    ];
    for (kind, params, size) in families {
        let label = format!("{kind}-{params:?}-{size}");
        out.push((
            label,
            make_family(kind, params, size).expect("valid family"),
        ));
    }
    for name in ExampleName::ALL {
        out.push((
            format!("{name}-6"),
            make_example(name, 6).expect("valid example"),
        ));
    }
    out
}

/// Every fixture: the named ones followed by the random family.
pub fn all_fixtures() -> Vec<TwoSidedSequence> {
    let mut out: Vec<TwoSidedSequence> = named_fixtures().into_iter().map(|(_, a)| a).collect();
    out.extend(random_family());
    out
}

/// Exponents used by the lemma and Fourier-inequality checks.
pub const P_GRID: [f64; 5] = [1.25, 1.5, 2.0, 3.0, 4.0];

/// Relative slack applied when comparing against a frozen constant.
pub const FROZEN_SLACK: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapConstants {
    /// Bracket of the GM left side `Σ_{k=2^n}^{2^{n+1}} |Δa_k|` times `2^n/√n`.
    pub delta_block_min: f64,
    pub delta_block_max: f64,
    /// Lower bound of `â_{2^n} 2^n / n`.
    pub hat_growth_min: f64,
    /// Largest best constant of the GM̄ diagnostic.
    pub gm_bar_best_max: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompensatedConstants {
    /// Lower bound of the real part's classical GM ratio at `n = 2^j`,
    /// divided by `2^{j/4}`, over `j ≥ 4`.
    pub classic_rate_min: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LacunaryConstants {
    /// Upper bound of `â⁻_{2^k} 2^k` for `k ≥ 1`.
    pub negative_hat_max: f64,
    /// Largest best constant of the GM̄ diagnostic on the full sequence.
    pub gm_bar_best_max: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PerExponent {
    pub p: f64,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NetDyadic {
    pub p: f64,
    pub q: f64,
    /// Both `dyadic/net` and `net/dyadic` stay below this.
    pub c: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerNorms {
    pub alpha: f64,
    pub size: usize,
    pub p: f64,
    pub j_p: f64,
    pub j_p_star: f64,
    pub i_p: f64,
    pub net_norm: f64,
    pub lorentz_norm: f64,
    pub lp: f64,
}

/// Constants produced by `examples/generate_fixtures.rs` from the
/// brute-force reference implementation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrozenConstants {
    pub provenance: String,
    /// `nmax` values the proposition constants were taken over.
    pub nmax_range: [u32; 2],
    pub gap: GapConstants,
    pub compensated: CompensatedConstants,
    pub lacunary: LacunaryConstants,
    /// Largest `‖a‖_{n_{p',p}} / ‖f‖_p` over the random family, per `p`.
    pub fourier_ratio_max: Vec<PerExponent>,
    /// Bracket constant of `J_p^* / ‖a‖_{l_{p',p}}` over the random family.
    pub jstar_lorentz_c: Vec<PerExponent>,
    pub net_dyadic: Vec<NetDyadic>,
    /// Largest GM_ℝ-inclusion best constant over the random GM family.
    pub gm_real_inclusion_max: f64,
    pub power_norms: PowerNorms,
}

impl FrozenConstants {
    pub fn load() -> Self {
        serde_json::from_str(include_str!("../fixtures/frozen_constants.json"))
            .expect("fixtures/frozen_constants.json is well formed")
    }

    pub fn fourier_ratio_max(&self, p: f64) -> Option<f64> {
        self.fourier_ratio_max
            .iter()
            .find(|e| e.p == p)
            .map(|e| e.value)
    }

    pub fn jstar_lorentz_c(&self, p: f64) -> Option<f64> {
        self.jstar_lorentz_c
            .iter()
            .find(|e| e.p == p)
            .map(|e| e.value)
    }
}

/// Random real GM family for the GM_ℝ inclusion constant: seeds `0..40`,
/// `α ∈ {0.5, 1, 1.5}`, size 1024.
pub fn random_gm_family() -> Vec<TwoSidedSequence> {
    let mut out = Vec::new();
    for seed in 0..40u64 {
        let alpha = [0.5, 1.0, 1.5][seed as usize % 3];
        out.push(
            make_family(FamilyKind::RandomGm, &[seed as f64, alpha, 0.5], 1024)
                .expect("valid family"),
        );
    }
    out
}

/// `(p, q)` pairs for the dyadic net-norm equivalence.
pub const NET_DYADIC_PAIRS: [(f64, f64); 4] =
    [(2.0, 2.0), (1.5, 3.0), (3.0, 1.5), (4.0, 4.0 / 3.0)];

/// Members of [`random_family`] used for the dyadic net-norm bracket.
pub const NET_DYADIC_COUNT: usize = 100;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_shape() {
        let f = random_family();
        assert_eq!(f.len(), FAMILY_SIZE);
        assert!(f.iter().all(|a| a.len() <= 2 * MAX_FAMILY_SIZE + 1));
        assert!(f.iter().all(|a| !a.is_zero()));
        assert_eq!(f, random_family());
    }
}
