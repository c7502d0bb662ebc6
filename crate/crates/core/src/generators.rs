//! Example sequences and parametric test families.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::sequence::TwoSidedSequence;
use crate::trig::{apply_multiplier, Multiplier};

/// Largest dyadic level accepted by [`make_example`] (support up to 2^23).
pub const MAX_EXAMPLE_LEVEL: u32 = 22;
/// Smallest dyadic level accepted by [`make_example`].
pub const MIN_EXAMPLE_LEVEL: u32 = 5;

/// The three counterexample constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExampleName {
    /// `1/2^n` on `[2^n, 2^{n+1})` for `n ≥ 4`, with the even indices in
    /// `[2^n, 2^n + ⌊√n⌋)` zeroed. In the two-sided class but not in GM.
    Gap,
    /// `c_k = (-1)^k 2^{-7n/4} + i (2/3)^n` on `[2^n, 2^{n+1})`, zero for `k ≤ 0`.
    Compensated,
    /// `(2/3)^n` on `[2^n, 2^{n+1})`, `(2/3)^n` at `k = -2^n`, zero elsewhere.
    Lacunary,
}

impl ExampleName {
    pub const ALL: [ExampleName; 3] = [Self::Gap, Self::Compensated, Self::Lacunary];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Gap => "prop-5-gap",
            Self::Compensated => "prop-6-compensated",
            Self::Lacunary => "prop-7-lacunary",
        }
    }
}

impl fmt::Display for ExampleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExampleName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|e| e.as_str() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

/// `(2/3)^n` by repeated multiplication so every call is bitwise identical.
pub(crate) fn two_thirds_pow(n: u32) -> f64 {
    (0..n).fold(1.0, |acc, _| acc * (2.0 / 3.0))
}

/// Builds one of the counterexample sequences with blocks up to level `nmax`.
pub fn make_example(name: ExampleName, nmax: u32) -> Result<TwoSidedSequence> {
    if !(MIN_EXAMPLE_LEVEL..=MAX_EXAMPLE_LEVEL).contains(&nmax) {
        return Err(Error::InvalidParameter(format!(
            "nmax must lie in [{MIN_EXAMPLE_LEVEL}, {MAX_EXAMPLE_LEVEL}], got {nmax}"
        )));
    }
    let top = (1i64 << (nmax + 1)) - 1;
    let level = |k: i64| 63 - k.leading_zeros(); // ⌊log2 k⌋ for k ≥ 1
    let zero = Complex64::new(0.0, 0.0);
    match name {
        ExampleName::Gap => TwoSidedSequence::from_fn(16, top, |k| {
            let n = level(k);
            let block_start = 1i64 << n;
            let gap = (n as f64).sqrt().floor() as i64;
            let value = Complex64::new(1.0 / block_start as f64, 0.0);
            if k % 2 == 1 || k >= block_start + gap {
                value
            } else {
                zero
            }
        }),
        ExampleName::Compensated => TwoSidedSequence::from_fn(1, top, |k| {
            let n = level(k);
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            Complex64::new(sign * (-1.75 * n as f64).exp2(), two_thirds_pow(n))
        }),
        ExampleName::Lacunary => TwoSidedSequence::from_fn(-(1i64 << nmax), top, |k| {
            if k > 0 {
                Complex64::new(two_thirds_pow(level(k)), 0.0)
            } else if k < 0 && (-k).count_ones() == 1 {
                Complex64::new(two_thirds_pow(level(-k)), 0.0)
            } else {
                zero
            }
        }),
    }
}

/// Parametric families used for sweeps and property tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// `a_k = (|k|+1)^{-α}` on `[-size, size]`. Params: `[α]`.
    Power,
    /// `a_k = (k+1)^{-α}` on `[0, size]`. Params: `[α]`.
    OneSidedPower,
    /// Real, positive, one-sided on `[1, size]`: `k^{-α} (1 + jitter·u_k)`
    /// with `u_k` uniform in `[0, 1)`. Params: `[seed, α = 1, jitter = 0.5]`.
    RandomGm,
    /// `(u_k + i v_k) (|k|+1)^{-decay}` on `[-size, size]`, `u, v` uniform in
    /// `[-1, 1)`. Params: `[seed, decay = 0]`.
    RandomComplex,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 4] = [
        Self::Power,
        Self::OneSidedPower,
        Self::RandomGm,
        Self::RandomComplex,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Power => "power",
            Self::OneSidedPower => "one-sided-power",
            Self::RandomGm => "random-gm",
            Self::RandomComplex => "random-complex",
        }
    }

    /// Parameter names in positional order.
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Self::Power | Self::OneSidedPower => &["alpha"],
            Self::RandomGm => &["seed", "alpha", "jitter"],
            Self::RandomComplex => &["seed", "decay"],
        }
    }

    fn defaults(self) -> &'static [Option<f64>] {
        match self {
            Self::Power | Self::OneSidedPower => &[None],
            Self::RandomGm => &[None, Some(1.0), Some(0.5)],
            Self::RandomComplex => &[None, Some(0.0)],
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "random" {
            return Ok(Self::RandomComplex);
        }
        Self::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

fn seed_param(x: f64) -> Result<u64> {
    if x >= 0.0 && x.fract() == 0.0 && x <= u64::MAX as f64 {
        Ok(x as u64)
    } else {
        Err(Error::InvalidParameter(format!(
            "seed must be a nonnegative integer, got {x}"
        )))
    }
}

fn positive_param(name: &str, x: f64) -> Result<f64> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(Error::InvalidParameter(format!(
            "{name} must be positive, got {x}"
        )))
    }
}

/// Generates a member of a parametric family. Missing trailing parameters
/// take their defaults.
pub fn make_family(kind: FamilyKind, params: &[f64], size: usize) -> Result<TwoSidedSequence> {
    if size == 0 {
        return Err(Error::InvalidParameter("size must be at least 1".into()));
    }
    let names = kind.param_names();
    if params.len() > names.len() {
        return Err(Error::InvalidParameter(format!(
            "{kind} takes at most {} parameters, got {}",
            names.len(),
            params.len()
        )));
    }
    let mut resolved = Vec::with_capacity(names.len());
    for (i, default) in kind.defaults().iter().enumerate() {
        match params.get(i).copied().or(*default) {
            Some(v) if v.is_finite() => resolved.push(v),
            Some(v) => {
                return Err(Error::InvalidParameter(format!(
                    "{} = {v} is not finite",
                    names[i]
                )))
            }
            None => {
                return Err(Error::InvalidParameter(format!(
                    "{kind} requires {}",
                    names[i]
                )))
            }
        }
    }
    let size = size as i64;
    match kind {
        FamilyKind::Power => {
            let alpha = positive_param("alpha", resolved[0])?;
            TwoSidedSequence::from_fn(-size, size, |k| {
                Complex64::new(((k.abs() + 1) as f64).powf(-alpha), 0.0)
            })
        }
        FamilyKind::OneSidedPower => {
            let alpha = positive_param("alpha", resolved[0])?;
            TwoSidedSequence::from_fn(0, size, |k| {
                Complex64::new(((k + 1) as f64).powf(-alpha), 0.0)
            })
        }
        FamilyKind::RandomGm => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed_param(resolved[0])?);
            let alpha = positive_param("alpha", resolved[1])?;
            let jitter = resolved[2];
            if !(0.0..1.0).contains(&jitter) {
                return Err(Error::InvalidParameter(format!(
                    "jitter must lie in [0, 1), got {jitter}"
                )));
            }
            TwoSidedSequence::from_fn(1, size, |k| {
                let u: f64 = rng.gen();
                Complex64::new((k as f64).powf(-alpha) * (1.0 + jitter * u), 0.0)
            })
        }
        FamilyKind::RandomComplex => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed_param(resolved[0])?);
            let decay = resolved[1];
            if decay < 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "decay must be nonnegative, got {decay}"
                )));
            }
            TwoSidedSequence::from_fn(-size, size, |k| {
                let re: f64 = rng.gen_range(-1.0..1.0);
                let im: f64 = rng.gen_range(-1.0..1.0);
                Complex64::new(re, im) * ((k.abs() + 1) as f64).powf(-decay)
            })
        }
    }
}

/// A family together with its parameters, an optional scale factor and an
/// optional multiplier, parsed from `kind:key=value,key=value`.
///
/// Keys are the family's parameter names plus `scale` and
/// `multiplier=alternating|dyadic-sign`. `random:seed=7` is shorthand for
/// `random-complex:seed=7`.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub params: Vec<f64>,
    pub scale: f64,
    pub multiplier: Option<Multiplier>,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, params: Vec<f64>) -> Self {
        Self {
            kind,
            params,
            scale: 1.0,
            multiplier: None,
        }
    }

    pub fn generate(&self, size: usize) -> Result<TwoSidedSequence> {
        let mut a = make_family(self.kind, &self.params, size)?;
        if self.scale != 1.0 {
            a = a.scale(Complex64::new(self.scale, 0.0));
        }
        if let Some(m) = &self.multiplier {
            a = apply_multiplier(&a, m)?;
        }
        Ok(a)
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let kind: FamilyKind = name.trim().parse()?;
        let names = kind.param_names();
        let mut slots: Vec<Option<f64>> = vec![None; names.len()];
        let mut spec = FamilySpec::new(kind, Vec::new());
        for item in rest.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got `{item}`")))?;
            let key = key.trim();
            let value = value.trim();
            if key == "multiplier" {
                spec.multiplier = Some(value.parse()?);
                continue;
            }
            let x: f64 = value
                .parse()
                .map_err(|_| Error::Parse(format!("`{value}` is not a number")))?;
            if key == "scale" {
                if !x.is_finite() {
                    return Err(Error::InvalidParameter("scale must be finite".into()));
                }
                spec.scale = x;
                continue;
            }
            let pos = names
                .iter()
                .position(|n| *n == key)
                .ok_or_else(|| Error::Parse(format!("{kind} has no parameter `{key}`")))?;
            slots[pos] = Some(x);
        }
        // Positional list: fill defaults for gaps so later explicit values keep their slot.
        let last = slots.iter().rposition(Option::is_some);
        if let Some(last) = last {
            for (i, slot) in slots.iter().enumerate().take(last + 1) {
                let v = slot.or(kind.defaults()[i]).ok_or_else(|| {
                    Error::InvalidParameter(format!("{kind} requires {}", names[i]))
                })?;
                spec.params.push(v);
            }
        }
        Ok(spec)
    }
}
