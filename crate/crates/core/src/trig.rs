//! Trigonometric polynomials `f(x) = Σ a_k e^{ikx}`: evaluation, partial
//! sums, `L_p([-π, π])` norms by periodic quadrature, and ±1 multipliers.

use std::f64::consts::PI;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functionals::Exponent;
use crate::sequence::TwoSidedSequence;
use crate::sum::ordered_sum;

/// Sampling rule for [`lp_norm`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureSpec {
    /// Minimum number of nodes; raised to `oversample · (2R + 1)` and rounded
    /// up to a power of two.
    pub sample_count: usize,
    pub oversample: usize,
    pub refine_tolerance: f64,
    pub max_doublings: u32,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            sample_count: 0,
            oversample: 4,
            refine_tolerance: 1e-6,
            max_doublings: 6,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.oversample < 4 {
            return Err(Error::InvalidParameter(
                "oversample must be at least 4".into(),
            ));
        }
        if self.refine_tolerance.is_nan() || self.refine_tolerance <= 0.0 {
            return Err(Error::InvalidParameter(
                "refine_tolerance must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Node count used first for a polynomial of radius `radius`.
    pub fn initial_samples(&self, radius: u64) -> usize {
        let need = self.oversample.saturating_mul(2 * radius as usize + 1);
        need.max(self.sample_count).max(1).next_power_of_two()
    }
}

/// Result of [`lp_norm`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LpNorm {
    pub value: f64,
    /// Nodes in the last refinement.
    pub samples: usize,
    /// `false` when `max_doublings` ran out before the tolerance was met.
    pub converged: bool,
}

/// Nodes `x_j = -π + 2πj/M`, `j = 0..M`.
pub fn uniform_grid(m: usize) -> Vec<f64> {
    (0..m)
        .map(|j| -PI + 2.0 * PI * j as f64 / m as f64)
        .collect()
}

/// `f(x_j)` on [`uniform_grid`]`(m)`.
///
/// With `x_j = -π + 2πj/M` we have `e^{ikx_j} = (-1)^k ω^{kj}`, so folding
/// `(-1)^k a_k` modulo `M` and taking one unnormalised inverse DFT is exact
/// for every `M`.
pub fn evaluate_uniform(a: &TwoSidedSequence, m: usize) -> Vec<Complex64> {
    assert!(m >= 1);
    let mut buf = vec![Complex64::new(0.0, 0.0); m];
    for (k, v) in a.iter() {
        let sign = if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        buf[k.rem_euclid(m as i64) as usize] += v * sign;
    }
    FftPlanner::new().plan_fft_inverse(m).process(&mut buf);
    buf
}

/// `f(x)` at arbitrary points by direct summation.
pub fn evaluate_at(a: &TwoSidedSequence, xs: &[f64]) -> Vec<Complex64> {
    xs.iter()
        .map(|&x| {
            a.iter()
                .map(|(k, v)| v * Complex64::cis(k as f64 * x))
                .sum()
        })
        .collect()
}

fn rectangle_rule(values: &[Complex64], p: f64) -> f64 {
    let m = values.len();
    let s = ordered_sum(values.iter().map(|v| v.norm().powf(p)), m);
    (2.0 * PI / m as f64 * s).powf(1.0 / p)
}

/// `‖f‖_{L_p([-π, π])}` by the rectangle rule, doubling the node count until
/// two successive values agree to `spec.refine_tolerance`.
pub fn lp_norm(a: &TwoSidedSequence, p: Exponent, spec: &QuadratureSpec) -> Result<LpNorm> {
    spec.validate()?;
    let p = p.value();
    let mut m = spec.initial_samples(a.radius());
    let mut value = rectangle_rule(&evaluate_uniform(a, m), p);
    for _ in 0..spec.max_doublings {
        m *= 2;
        let next = rectangle_rule(&evaluate_uniform(a, m), p);
        let close = (next - value).abs() <= spec.refine_tolerance * next.abs();
        value = next;
        if close {
            return Ok(LpNorm {
                value,
                samples: m,
                converged: true,
            });
        }
    }
    Ok(LpNorm {
        value,
        samples: m,
        converged: false,
    })
}

/// `S_N f`: keeps coefficients with `|k| ≤ 2^N`.
pub fn partial_sum(a: &TwoSidedSequence, n: u32) -> TwoSidedSequence {
    if n >= 63 {
        return a.clone();
    }
    let r = 1i64 << n;
    a.restrict(-r, r)
}

/// A sequence `λ_k ∈ {-1, +1}` acting coefficient-wise.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Multiplier {
    /// `(-1)^k`, which is translation by `π`.
    Alternating,
    /// `(-1)^n` on `2^{n-1} ≤ |k| < 2^n`, `+1` at `k = 0`.
    DyadicSign,
    /// Explicit signs for `k = offset, offset + 1, ...`.
    Explicit { offset: i64, signs: Vec<i8> },
}

impl Multiplier {
    /// `λ_k`, or `None` where an explicit list is silent.
    pub fn sign(&self, k: i64) -> Option<i8> {
        match self {
            Self::Alternating => Some(if k.rem_euclid(2) == 0 { 1 } else { -1 }),
            Self::DyadicSign => {
                if k == 0 {
                    return Some(1);
                }
                let n = 64 - k.unsigned_abs().leading_zeros();
                Some(if n.is_multiple_of(2) { 1 } else { -1 })
            }
            Self::Explicit { offset, signs } => {
                let i = k.checked_sub(*offset)?;
                usize::try_from(i).ok().and_then(|i| signs.get(i).copied())
            }
        }
    }
}

impl fmt::Display for Multiplier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Alternating => f.write_str("alternating"),
            Self::DyadicSign => f.write_str("dyadic-sign"),
            Self::Explicit { offset, signs } => {
                write!(f, "explicit@{offset}[{} signs]", signs.len())
            }
        }
    }
}

impl FromStr for Multiplier {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "alternating" => Ok(Self::Alternating),
            "dyadic-sign" => Ok(Self::DyadicSign),
            other => Err(Error::UnknownName(format!(
                "multiplier `{other}` (expected alternating or dyadic-sign)"
            ))),
        }
    }
}

/// `λ_k a_k`. Explicit lists must hold only ±1 and cover every nonzero
/// coefficient.
pub fn apply_multiplier(a: &TwoSidedSequence, m: &Multiplier) -> Result<TwoSidedSequence> {
    if let Multiplier::Explicit { signs, .. } = m {
        if let Some(bad) = signs.iter().find(|s| **s != 1 && **s != -1) {
            return Err(Error::InvalidParameter(format!(
                "multiplier entries must be +1 or -1, found {bad}"
            )));
        }
    }
    let mut missing = None;
    let out = a.map_indexed(|k, v| match m.sign(k) {
        Some(1) => v,
        Some(_) => -v,
        None => {
            if v.re != 0.0 || v.im != 0.0 {
                missing.get_or_insert(k);
            }
            v
        }
    });
    match missing {
        Some(k) => Err(Error::InvalidParameter(format!(
            "multiplier does not cover index {k}"
        ))),
        None => Ok(out),
    }
}

/// Writes `x,re,im` rows of `f` on [`uniform_grid`]`(m)`.
pub fn write_grid_csv<W: Write>(mut w: W, a: &TwoSidedSequence, m: usize) -> Result<()> {
    writeln!(w, "x,re,im")?;
    for (x, f) in uniform_grid(m).iter().zip(evaluate_uniform(a, m)) {
        writeln!(
            w,
            "{},{},{}",
            crate::io::fmt_real(*x),
            crate::io::fmt_real(f.re),
            crate::io::fmt_real(f.im)
        )?;
    }
    Ok(())
}
