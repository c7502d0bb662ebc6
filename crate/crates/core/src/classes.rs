//! Membership diagnostics for the monotonicity classes.
//!
//! Each diagnostic scores a finite sequence block by block as
//! `numerator / denominator`, where the class asks for
//! `numerator ≤ C · denominator` with `C` independent of the block. A finite
//! truncation cannot prove or refute membership, so the [`Verdict`] is a
//! statement about the computed range only:
//!
//! * blocks with `0/0` are skipped;
//! * a positive numerator over a zero denominator scores `+∞` and makes the
//!   verdict `growing`;
//! * the verdict looks at the *active range*, from the first to the last
//!   block with a nonzero numerator. Split it into thirds of `t = len/3`
//!   entries. It is `growing` when every entry of the last third is at least
//!   1.5 times the largest entry of the first third, `inconclusive` when
//!   more than half of them are, and `bounded` otherwise (also for fewer than
//!   three entries). A lone spike at the truncation edge thus stays bounded.
//! * the classical GM verdict only uses blocks whose windows `[n, 2n + 1]`
//!   and `[n/λ, λn]` lie inside the given data.

use std::f64::consts::PI;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::fmt_real;
use crate::netspace::NetAverages;
use crate::profile::DyadicProfile;
use crate::sequence::TwoSidedSequence;

/// Growth factor separating `bounded` from `growing`.
pub const GROWTH_FACTOR: f64 = 1.5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassName {
    Gm,
    Wm,
    GmStar,
    GmBar,
    /// Block harmonic sums against the `â` majorant.
    GmRealInclusion,
}

impl ClassName {
    pub const ALL: [ClassName; 5] = [
        Self::Gm,
        Self::Wm,
        Self::GmStar,
        Self::GmBar,
        Self::GmRealInclusion,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Gm => "gm",
            Self::Wm => "wm",
            Self::GmStar => "gm-star",
            Self::GmBar => "gm-bar",
            Self::GmRealInclusion => "gm-real-inclusion",
        }
    }
}

impl fmt::Display for ClassName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClassName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        Self::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::UnknownName(format!("class `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Bounded,
    Growing,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Bounded => "bounded",
            Self::Growing => "growing",
            Self::Inconclusive => "inconclusive",
        })
    }
}

/// JSON has no infinity; non-finite values are written as strings.
mod extended {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }

    fn to_repr(x: f64) -> Repr {
        if x.is_finite() {
            Repr::Num(x)
        } else {
            Repr::Text(x.to_string())
        }
    }

    fn from_repr<E: serde::de::Error>(r: Repr) -> Result<f64, E> {
        match r {
            Repr::Num(x) => Ok(x),
            Repr::Text(s) => s.parse().map_err(E::custom),
        }
    }

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        to_repr(*x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        from_repr(Repr::deserialize(d)?)
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[f64], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(v.iter().map(|x| to_repr(*x)))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<f64>, D::Error> {
            Vec::<Repr>::deserialize(d)?
                .into_iter()
                .map(from_repr)
                .collect()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassDiagnostic {
    pub class_name: ClassName,
    pub block_index: Vec<u64>,
    pub numerator: Vec<f64>,
    pub denominator: Vec<f64>,
    #[serde(with = "extended::vec")]
    pub ratio: Vec<f64>,
    #[serde(with = "extended")]
    pub best_constant: f64,
    /// Block index where `best_constant` is first attained.
    pub witness: Option<u64>,
    pub verdict: Verdict,
}

impl ClassDiagnostic {
    /// Builds a diagnostic from `(block, numerator, denominator)` triples,
    /// skipping `0/0` blocks.
    pub fn from_blocks<I>(class_name: ClassName, blocks: I) -> Self
    where
        I: IntoIterator<Item = (u64, f64, f64)>,
    {
        let mut block_index = Vec::new();
        let mut numerator = Vec::new();
        let mut denominator = Vec::new();
        let mut ratio = Vec::new();
        for (n, num, den) in blocks {
            if num == 0.0 && den == 0.0 {
                continue;
            }
            block_index.push(n);
            numerator.push(num);
            denominator.push(den);
            ratio.push(if den == 0.0 { f64::INFINITY } else { num / den });
        }
        let mut best_constant = 0.0;
        let mut witness = None;
        for (n, r) in block_index.iter().zip(&ratio) {
            if witness.is_none() || *r > best_constant {
                best_constant = *r;
                witness = Some(*n);
            }
        }
        let verdict = verdict(&numerator, &ratio);
        Self {
            class_name,
            block_index,
            numerator,
            denominator,
            ratio,
            best_constant,
            witness,
            verdict,
        }
    }

    /// Ratios over the active range.
    pub fn active_ratios(&self) -> &[f64] {
        let (lo, hi) = active_range(&self.numerator);
        &self.ratio[lo..hi]
    }

    /// Ratio at block `n`, if scored.
    pub fn ratio_at(&self, n: u64) -> Option<f64> {
        self.block_index
            .iter()
            .position(|b| *b == n)
            .map(|i| self.ratio[i])
    }

    /// CSV with columns `n,numerator,denominator,ratio`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "n,numerator,denominator,ratio")?;
        for i in 0..self.block_index.len() {
            writeln!(
                w,
                "{},{},{},{}",
                self.block_index[i],
                fmt_real(self.numerator[i]),
                fmt_real(self.denominator[i]),
                fmt_real(self.ratio[i]),
            )?;
        }
        Ok(())
    }
}

fn active_range(numerator: &[f64]) -> (usize, usize) {
    match numerator.iter().position(|x| *x != 0.0) {
        Some(lo) => {
            let hi = numerator.iter().rposition(|x| *x != 0.0).unwrap_or(lo) + 1;
            (lo, hi)
        }
        None => (0, 0),
    }
}

fn verdict(numerator: &[f64], ratio: &[f64]) -> Verdict {
    let (lo, hi) = active_range(numerator);
    let r = &ratio[lo..hi];
    if r.iter().any(|x| x.is_infinite()) {
        return Verdict::Growing;
    }
    if r.len() < 3 {
        return Verdict::Bounded;
    }
    let t = r.len() / 3;
    let head = r[..t].iter().copied().fold(0.0, f64::max);
    let tail = &r[r.len() - t..];
    let threshold = GROWTH_FACTOR * head;
    if tail.iter().all(|x| *x >= threshold) {
        Verdict::Growing
    } else if 2 * tail.iter().filter(|x| **x >= threshold).count() > t {
        Verdict::Inconclusive
    } else {
        Verdict::Bounded
    }
}

fn require_nonzero(a: &TwoSidedSequence) -> Result<()> {
    if a.is_zero() {
        Err(Error::ZeroSequence)
    } else {
        Ok(())
    }
}

fn theta_against(profile: &DyadicProfile, class: ClassName, majorant: &[f64]) -> ClassDiagnostic {
    ClassDiagnostic::from_blocks(
        class,
        (0..profile.levels).map(|n| (n as u64, profile.theta[n], majorant[n])),
    )
}

/// `Θ_n` against `sup_k min(1, 2^{k-n}) ã_{2^k}`.
pub fn gm_star_diagnostic(a: &TwoSidedSequence) -> Result<ClassDiagnostic> {
    require_nonzero(a)?;
    Ok(gm_star_from_profile(&DyadicProfile::new(a, None)))
}

pub fn gm_star_from_profile(profile: &DyadicProfile) -> ClassDiagnostic {
    theta_against(profile, ClassName::GmStar, &profile.majorant_tilde)
}

/// `Θ_n` against `sup_k min(1, 2^{k-n}) â_{2^k}`.
///
/// Needs no interval averages, so it stays cheap on long sequences.
pub fn gm_bar_diagnostic(a: &TwoSidedSequence) -> Result<ClassDiagnostic> {
    require_nonzero(a)?;
    // ã is unused here; an empty table skips the quadratic scan.
    let net = NetAverages::new(&TwoSidedSequence::unit(0));
    let profile = DyadicProfile::with_averages(a, None, &net);
    Ok(gm_bar_from_profile(&profile))
}

pub fn gm_bar_from_profile(profile: &DyadicProfile) -> ClassDiagnostic {
    theta_against(profile, ClassName::GmBar, &profile.majorant_hat)
}

/// Which `n` the classical GM condition is scored at.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassicGrid {
    /// `n = 2^j`; the block index reported is `j`.
    #[default]
    Dyadic,
    /// Every `n ≥ 1`; the block index reported is `n`.
    Full,
}

/// `a_1, a_2, ...` as a total function of `k ≥ 1`.
struct OneSided<'a>(&'a [Complex64]);

impl OneSided<'_> {
    fn get(&self, k: usize) -> Complex64 {
        if k == 0 {
            Complex64::new(0.0, 0.0)
        } else {
            self.0.get(k - 1).copied().unwrap_or_default()
        }
    }
}

/// Classical GM: `Σ_{k=n}^{2n} |a_k - a_{k+1}| ≤ (C/n) Σ_{n/λ ≤ k ≤ λn} |a_k|`
/// for the one-sided `a_1, a_2, ...` given as `a[0], a[1], ...`.
/// numerator is the left side, denominator `(1/n) Σ |a_k|`.
pub fn gm_classic_diagnostic(
    a: &[Complex64],
    lambda: f64,
    grid: ClassicGrid,
) -> Result<ClassDiagnostic> {
    if !(lambda > 1.0 && lambda.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "lambda must exceed 1, got {lambda}"
        )));
    }
    let view = OneSided(a);
    let len = a.len();
    // prefix sums of |a_k| and |a_k - a_{k+1}| over k = 1..=len
    let mut mag = vec![0.0; len + 1];
    let mut diff = vec![0.0; len + 1];
    for k in 1..=len {
        mag[k] = mag[k - 1] + view.get(k).norm();
        diff[k] = diff[k - 1] + (view.get(k) - view.get(k + 1)).norm();
    }
    let range_sum = |pre: &[f64], lo: usize, hi: usize| {
        let hi = hi.min(len);
        if lo > hi {
            0.0
        } else {
            pre[hi] - pre[lo - 1]
        }
    };
    let score = |n: usize| {
        let lhs = range_sum(&diff, n, 2 * n);
        let lo = ((n as f64 / lambda).ceil() as usize).max(1);
        let hi = (lambda * n as f64).floor() as usize;
        let rhs = range_sum(&mag, lo, hi) / n as f64;
        (lhs, rhs)
    };
    // one grid point past the data, as for the dyadic blocks
    let ns: Vec<(u64, usize)> = match grid {
        ClassicGrid::Dyadic => {
            let top = crate::functionals::ceil_log2(len as u64 + 1);
            (0..=top).map(|j| (j as u64, 1usize << j)).collect()
        }
        ClassicGrid::Full => (1..=len + 1).map(|n| (n as u64, n)).collect(),
    };
    let mut d = ClassDiagnostic::from_blocks(
        ClassName::Gm,
        ns.iter().map(|&(b, n)| {
            let (lhs, rhs) = score(n);
            (b, lhs, rhs)
        }),
    );
    // Windows reaching past the data see the zero padding, not the sequence;
    // the verdict only looks at blocks that stay inside.
    let inside = |b: u64| {
        let n = match grid {
            ClassicGrid::Dyadic => 1usize << b,
            ClassicGrid::Full => b as usize,
        };
        2 * n < len && (lambda * n as f64).floor() as usize <= len
    };
    let keep: Vec<usize> = (0..d.block_index.len())
        .filter(|&i| inside(d.block_index[i]))
        .collect();
    if !keep.is_empty() {
        let num: Vec<f64> = keep.iter().map(|&i| d.numerator[i]).collect();
        let ratio: Vec<f64> = keep.iter().map(|&i| d.ratio[i]).collect();
        d.verdict = verdict(&num, &ratio);
    }
    Ok(d)
}

/// Weak monotonicity: `|a_n| ≤ (C/n) |Σ_{j=1}^{n} a_j|`, scored as
/// `n |a_n|` over `|Σ_{j≤n} a_j|` for every `n`.
pub fn wm_diagnostic(a: &[Complex64]) -> ClassDiagnostic {
    let mut acc = Complex64::new(0.0, 0.0);
    let blocks: Vec<(u64, f64, f64)> = a
        .iter()
        .enumerate()
        .map(|(i, v)| {
            acc += v;
            let n = i as u64 + 1;
            (n, n as f64 * v.norm(), acc.norm())
        })
        .collect();
    ClassDiagnostic::from_blocks(ClassName::Wm, blocks)
}

/// `Σ_{k=2^n}^{2^{n+1}} |a_k| / k` for the one-sided `a_1, a_2, ...`.
pub fn block_harmonic_sum(a: &[Complex64], n: u32) -> f64 {
    if n >= 63 {
        return 0.0;
    }
    let lo = 1usize << n;
    let hi = (2 * lo).min(a.len());
    (lo..=hi).map(|k| a[k - 1].norm() / k as f64).sum()
}

/// Block harmonic sums of the positive side against the `â` majorant of
/// the whole sequence.
pub fn gm_real_inclusion_diagnostic(a: &TwoSidedSequence) -> Result<ClassDiagnostic> {
    require_nonzero(a)?;
    let net = NetAverages::new(&TwoSidedSequence::unit(0));
    let profile = DyadicProfile::with_averages(a, None, &net);
    Ok(gm_real_inclusion_from_profile(a, &profile))
}

pub fn gm_real_inclusion_from_profile(
    a: &TwoSidedSequence,
    profile: &DyadicProfile,
) -> ClassDiagnostic {
    let pos = a.positive_part();
    ClassDiagnostic::from_blocks(
        ClassName::GmRealInclusion,
        (0..profile.levels).map(|n| {
            (
                n as u64,
                block_harmonic_sum(&pos, n as u32),
                profile.majorant_hat[n],
            )
        }),
    )
}

/// Outcome of [`sector_check`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectorCheck {
    pub inside: bool,
    /// First `k ≥ 1` with `a_k` outside the sector.
    pub first_violation: Option<u64>,
}

/// Whether every nonzero `a_k` lies in `{z : |arg z - α| ≤ β}`, the angle
/// difference taken in `(-π, π]`.
pub fn sector_check(a: &[Complex64], alpha: f64, beta: f64) -> SectorCheck {
    let outside = |z: &Complex64| {
        if z.re == 0.0 && z.im == 0.0 {
            return false;
        }
        let mut d = (z.arg() - alpha).rem_euclid(2.0 * PI);
        if d > PI {
            d -= 2.0 * PI;
        }
        d.abs() > beta
    };
    let first_violation = a.iter().position(outside).map(|i| i as u64 + 1);
    SectorCheck {
        inside: first_violation.is_none(),
        first_violation,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|x| Complex64::new(*x, 0.0)).collect()
    }

    #[test]
    fn verdict_rules() {
        let ones = [1.0; 9];
        assert_eq!(
            verdict(&ones, &[1.0, 1.2, 0.9, 1.0, 1.1, 1.0, 1.3, 1.2, 1.4]),
            Verdict::Bounded
        );
        assert_eq!(
            verdict(&ones, &[1.0, 1.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0]),
            Verdict::Growing
        );
        assert_eq!(
            verdict(&ones, &[1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 2.0, 2.0, 1.0]),
            Verdict::Inconclusive
        );
        assert_eq!(
            verdict(&ones, &[1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 2.0]),
            Verdict::Bounded
        );
        assert_eq!(verdict(&ones[..2], &[1.0, 100.0]), Verdict::Bounded);
        assert_eq!(verdict(&ones[..2], &[1.0, f64::INFINITY]), Verdict::Growing);
        // trailing empty blocks do not count
        let num = [1.0, 1.0, 1.0, 0.0, 0.0, 0.0];
        assert_eq!(
            verdict(&num, &[5.0, 5.0, 5.0, 0.0, 0.0, 0.0]),
            Verdict::Bounded
        );
    }

    #[test]
    fn zero_over_zero_is_skipped() {
        let d = ClassDiagnostic::from_blocks(
            ClassName::GmStar,
            [(0, 2.0, 1.0), (1, 0.0, 0.0), (2, 1.0, 0.0)],
        );
        assert_eq!(d.block_index, vec![0, 2]);
        assert_eq!(d.ratio[1], f64::INFINITY);
        assert_eq!(d.best_constant, f64::INFINITY);
        assert_eq!(d.witness, Some(2));
        assert_eq!(d.verdict, Verdict::Growing);
    }

    #[test]
    fn json_round_trip_with_infinity() {
        let d = ClassDiagnostic::from_blocks(ClassName::Wm, [(1, 1.0, 0.0), (2, 1.0, 2.0)]);
        let text = serde_json::to_string(&d).unwrap();
        assert!(text.contains("\"inf\""));
        let back: ClassDiagnostic = serde_json::from_str(&text).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn unit_impulse_gm_star() {
        let d = gm_star_diagnostic(&TwoSidedSequence::unit(0)).unwrap();
        assert_eq!(d.ratio[0], 2.0);
        assert_eq!(d.verdict, Verdict::Bounded);
        assert!(gm_star_diagnostic(&TwoSidedSequence::zeros(0, 3).unwrap()).is_err());
        assert!(gm_bar_diagnostic(&TwoSidedSequence::zeros(0, 3).unwrap()).is_err());
    }

    #[test]
    fn classic_harmonic_is_bounded() {
        let a: Vec<Complex64> = (1..=4096)
            .map(|k| Complex64::new(1.0 / k as f64, 0.0))
            .collect();
        let d = gm_classic_diagnostic(&a, 2.0, ClassicGrid::Dyadic).unwrap();
        assert_eq!(d.verdict, Verdict::Bounded);
        assert!(d.best_constant <= 2.0);
        assert!(gm_classic_diagnostic(&a, 1.0, ClassicGrid::Dyadic).is_err());
    }

    #[test]
    fn classic_alternating_signs_grow() {
        let a: Vec<Complex64> = (1..=4096)
            .map(|k| Complex64::new(if k % 2 == 0 { 1.0 } else { -1.0 }, 0.0))
            .collect();
        let d = gm_classic_diagnostic(&a, 2.0, ClassicGrid::Dyadic).unwrap();
        assert_eq!(d.verdict, Verdict::Growing);
        // 2(n + 1) against (1/n)(3n/2 + 1)
        let r = d.ratio_at(6).unwrap();
        assert!((r - 2.0 * 65.0 * 64.0 / 97.0).abs() < 1e-12);
    }

    #[test]
    fn classic_index_window() {
        // n = 3, λ = 2: RHS runs over k = 2..=6
        let a = real(&[100.0, 1.0, 1.0, 1.0, 1.0, 1.0, 100.0]);
        let d = gm_classic_diagnostic(&a, 2.0, ClassicGrid::Full).unwrap();
        assert_eq!(d.denominator[2], 5.0 / 3.0);
        assert_eq!(d.numerator[2], 99.0);
    }

    #[test]
    fn wm_examples() {
        let d = wm_diagnostic(&real(&[1.0; 16]));
        assert!(d.ratio.iter().all(|r| (*r - 1.0).abs() < 1e-15));
        let alt = wm_diagnostic(&real(&[1.0, -1.0, 1.0, -1.0]));
        assert_eq!(alt.ratio[1], f64::INFINITY);
        assert_eq!(alt.verdict, Verdict::Growing);
    }

    #[test]
    fn harmonic_block() {
        let a: Vec<Complex64> = (1..=32)
            .map(|k| Complex64::new(1.0 / k as f64, 0.0))
            .collect();
        let direct: f64 = (8..=16).map(|k| 1.0 / (k * k) as f64).sum();
        assert!((block_harmonic_sum(&a, 3) - direct).abs() < 1e-16);
        assert_eq!(block_harmonic_sum(&real(&[0.0; 40]), 3), 0.0);
    }

    #[test]
    fn sectors() {
        assert!(sector_check(&real(&[1.0, 2.0]), 0.0, 0.0).inside);
        let c = sector_check(&real(&[-1.0]), 0.0, PI / 4.0);
        assert_eq!(c.first_violation, Some(1));
        let tilted: Vec<Complex64> = (1..10)
            .map(|k| Complex64::from_polar(1.0 / k as f64, PI / 8.0))
            .collect();
        assert!(sector_check(&tilted, 0.0, 0.45).inside);
        assert!(!sector_check(&tilted, 0.0, 0.3).inside);
        // wrap-around near ±π
        let near_pi = [Complex64::from_polar(1.0, -3.1)];
        assert!(sector_check(&near_pi, 3.1, 0.1).inside);
    }

    #[test]
    fn class_names_parse() {
        for c in ClassName::ALL {
            assert_eq!(c.as_str().parse::<ClassName>().unwrap(), c);
        }
        assert!("gm-hat".parse::<ClassName>().is_err());
    }
}
