//! Interval averages `ã_k`, zero-anchored averages `â_{2^k}`, and the
//! discrete net-space and Lorentz norms built on them.
//!
//! # Computing `ã_k` exactly
//!
//! `ã_k` is a supremum over infinitely many integer intervals `w` with
//! `|w| ≥ k`. Let the nonzero support have diameter `D`. An interval longer
//! than `max(k, D)` meets the support in a sub-interval of length at most `D`,
//! so it can be shrunk to length `max(k, D)` while keeping that intersection:
//! the sum is unchanged and the denominator drops. The supremum is therefore
//! attained at some length `L ∈ [k, max(k, D)]`, and every candidate is a
//! difference of two prefix sums. For `k ≥ D` every admissible interval meets
//! the support in a prefix or a suffix of it, which gives `ã_k = M / k` with
//! `M` the largest prefix or suffix sum modulus.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rearrange::symmetric_rearrangement;
use crate::sequence::TwoSidedSequence;
use crate::sum::ordered_sum;

/// Cumulative sums `P(c) = Σ_{j ≤ c} a_j`.
#[derive(Clone, Debug)]
pub struct PrefixSums {
    base: i64,
    // sums[i] = Σ_{j < base + i} a_j
    sums: Vec<Complex64>,
}

impl PrefixSums {
    pub fn new(a: &TwoSidedSequence) -> Self {
        let mut sums = Vec::with_capacity(a.len() + 1);
        let mut acc = Complex64::new(0.0, 0.0);
        sums.push(acc);
        for v in a.values() {
            acc += v;
            sums.push(acc);
        }
        Self {
            base: a.k_min(),
            sums,
        }
    }

    /// `P(c)`; zero below the stored window and the total above it.
    pub fn at(&self, c: i64) -> Complex64 {
        let i = c - self.base + 1;
        if i <= 0 {
            self.sums[0]
        } else if i as usize >= self.sums.len() {
            *self.sums.last().expect("non-empty")
        } else {
            self.sums[i as usize]
        }
    }

    /// `Σ_{j=lo}^{hi} a_j` (zero when `hi < lo`).
    pub fn interval_sum(&self, lo: i64, hi: i64) -> Complex64 {
        if hi < lo {
            Complex64::new(0.0, 0.0)
        } else {
            self.at(hi) - self.at(lo - 1)
        }
    }
}

/// Split prefix sums over the trimmed support, laid out for the window scan.
struct WindowScan {
    re: Vec<f64>,
    im: Vec<f64>,
    /// prefix_max[i] = max_{1 ≤ j ≤ i} |P_j|²
    prefix_max: Vec<f64>,
    /// suffix_max[i] = max_{i ≤ t ≤ D-1} |P_D - P_t|²
    suffix_max: Vec<f64>,
}

impl WindowScan {
    fn new(a: &TwoSidedSequence) -> Option<Self> {
        let t = a.trimmed();
        if t.is_zero() {
            return None;
        }
        let d = t.len();
        let mut re = Vec::with_capacity(d + 1);
        let mut im = Vec::with_capacity(d + 1);
        let (mut sr, mut si) = (0.0, 0.0);
        re.push(0.0);
        im.push(0.0);
        for v in t.values() {
            sr += v.re;
            si += v.im;
            re.push(sr);
            im.push(si);
        }
        let mut prefix_max = vec![0.0_f64; d + 1];
        for j in 1..=d {
            prefix_max[j] = prefix_max[j - 1].max(re[j] * re[j] + im[j] * im[j]);
        }
        let mut suffix_max = vec![0.0_f64; d + 1];
        for i in (0..d).rev() {
            let (dr, di) = (re[d] - re[i], im[d] - im[i]);
            suffix_max[i] = suffix_max[i + 1].max(dr * dr + di * di);
        }
        Some(Self {
            re,
            im,
            prefix_max,
            suffix_max,
        })
    }

    fn diameter(&self) -> usize {
        self.re.len() - 1
    }

    /// Largest `|Σ_{w} a|²` over intervals of length exactly `len ≤ D`.
    fn max_sq(&self, len: usize) -> f64 {
        let d = self.diameter();
        debug_assert!(len >= 1 && len <= d);
        let (re, im) = (&self.re, &self.im);
        let mut best = self.prefix_max[len - 1];
        if len >= 2 {
            best = best.max(self.suffix_max[d - len + 1]);
        }
        let interior = re[len..]
            .iter()
            .zip(&im[len..])
            .zip(re.iter().zip(im.iter()))
            .fold(0.0_f64, |acc, ((hr, hi), (lr, li))| {
                let (dr, di) = (hr - lr, hi - li);
                acc.max(dr * dr + di * di)
            });
        best.max(interior)
    }

    /// Largest prefix or suffix sum modulus of the support.
    fn tail_constant(&self) -> f64 {
        let d = self.diameter();
        self.prefix_max[d].max(self.suffix_max[0]).sqrt()
    }
}

/// `ã_k` for every `k ≥ 1`, precomputed in `O(D²)` for support diameter `D`.
#[derive(Clone, Debug)]
pub struct NetAverages {
    tilde: Vec<f64>,
    tail_constant: f64,
}

impl NetAverages {
    pub fn new(a: &TwoSidedSequence) -> Self {
        let Some(scan) = WindowScan::new(a) else {
            return Self {
                tilde: Vec::new(),
                tail_constant: 0.0,
            };
        };
        let d = scan.diameter();
        let per_length: Vec<f64> = (1..=d)
            .into_par_iter()
            .map(|len| scan.max_sq(len).sqrt() / len as f64)
            .collect();
        let mut tilde = per_length;
        for i in (0..d.saturating_sub(1)).rev() {
            tilde[i] = tilde[i].max(tilde[i + 1]);
        }
        Self {
            tilde,
            tail_constant: scan.tail_constant(),
        }
    }

    /// Diameter `D` of the nonzero support (0 for the zero sequence).
    pub fn diameter(&self) -> usize {
        self.tilde.len()
    }

    /// `M` with `ã_k = M / k` for all `k ≥ D`.
    pub fn tail_constant(&self) -> f64 {
        self.tail_constant
    }

    /// `ã_k`, `k ≥ 1`.
    pub fn tilde(&self, k: u64) -> f64 {
        assert!(k >= 1, "ã_k is defined for k ≥ 1");
        if k as usize <= self.tilde.len() {
            self.tilde[k as usize - 1]
        } else {
            self.tail_constant / k as f64
        }
    }

    /// `ã_{2^level}`.
    pub fn tilde_dyadic(&self, level: u32) -> f64 {
        if level >= 64 {
            0.0
        } else {
            self.tilde(1u64 << level)
        }
    }
}

/// `ã_k = sup_{|w| ≥ k} |Σ_{m∈w} a_m| / |w|` over integer intervals `w`.
pub fn tilde_average(a: &TwoSidedSequence, k: u64) -> Result<f64> {
    if k < 1 {
        return Err(Error::InvalidParameter("ã_k needs k ≥ 1".into()));
    }
    let Some(scan) = WindowScan::new(a) else {
        return Ok(0.0);
    };
    let d = scan.diameter() as u64;
    if k >= d {
        return Ok(scan.tail_constant() / k as f64);
    }
    Ok((k as usize..=d as usize)
        .into_par_iter()
        .map(|len| scan.max_sq(len).sqrt() / len as f64)
        .reduce(|| 0.0, f64::max))
}

/// Which signs of `m` enter `â_{2^k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HatSide {
    Both,
    Positive,
    Negative,
}

/// Zero-anchored partial sums `Σ_{j=0}^{m} a_j` (`m ≥ 0`) and
/// `Σ_{j=m}^{0} a_j` (`m ≤ 0`).
#[derive(Clone, Debug)]
pub struct HatAverages {
    positive: Vec<Complex64>,
    negative: Vec<Complex64>,
}

impl HatAverages {
    pub fn new(a: &TwoSidedSequence) -> Self {
        let mut positive = Vec::new();
        let mut acc = Complex64::new(0.0, 0.0);
        for m in 0..=a.k_max().max(0) {
            acc += a.get(m);
            positive.push(acc);
        }
        let mut negative = Vec::new();
        let mut acc = Complex64::new(0.0, 0.0);
        for m in 0..=(-a.k_min()).max(0) {
            acc += a.get(-m);
            negative.push(acc);
        }
        Self { positive, negative }
    }

    fn side_max(sums: &[Complex64], lo: u64, hi: u64) -> f64 {
        // m in [lo, hi); sums are constant past the stored end.
        let stored = sums.len() as u64;
        let mut best = 0.0_f64;
        for m in lo..hi.min(stored) {
            best = best.max(sums[m as usize].norm() / (m + 1) as f64);
        }
        let first_beyond = lo.max(stored);
        if first_beyond < hi {
            let total = sums.last().expect("non-empty").norm();
            best = best.max(total / (first_beyond + 1) as f64);
        }
        best
    }

    /// `â_{2^level}` restricted to `side`.
    pub fn hat(&self, level: u32, side: HatSide) -> f64 {
        if level >= 62 {
            return 0.0;
        }
        let (lo, hi) = (1u64 << level, 1u64 << (level + 1));
        let pos = || Self::side_max(&self.positive, lo, hi);
        let neg = || Self::side_max(&self.negative, lo, hi);
        match side {
            HatSide::Both => pos().max(neg()),
            HatSide::Positive => pos(),
            HatSide::Negative => neg(),
        }
    }

    /// Smallest level whose block lies entirely past the stored window;
    /// `â_{2^k}` is nonincreasing from there on.
    pub fn decay_level(&self) -> u32 {
        let reach = self.positive.len().max(self.negative.len()) as u64;
        crate::functionals::ceil_log2(reach + 1)
    }
}

/// `â_{2^level} = sup_{2^level ≤ |m| < 2^{level+1}} |Σ_{j=0}^{m} a_j| / (|m|+1)`,
/// reading the sum as `Σ_{j=m}^{0}` for negative `m`.
pub fn hat_average(a: &TwoSidedSequence, level: u32) -> f64 {
    HatAverages::new(a).hat(level, HatSide::Both)
}

pub fn hat_average_side(a: &TwoSidedSequence, level: u32, side: HatSide) -> f64 {
    HatAverages::new(a).hat(level, side)
}

/// Second index of a net-space norm.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NetIndex {
    Finite(f64),
    Infinite,
}

/// `Σ_{k ≥ n} k^{-s}` for `s > 1`, `n ≥ 1`, by Euler–Maclaurin past `k = 32`.
pub fn zeta_tail(s: f64, n: u64) -> f64 {
    assert!(s > 1.0 && n >= 1);
    const START: u64 = 32;
    let mut head = 0.0;
    let mut k = n;
    while k < START {
        head += (k as f64).powf(-s);
        k += 1;
    }
    let x = k as f64;
    // B_{2j} / (2j)!
    const COEFFS: [f64; 5] = [
        1.0 / 12.0,
        -1.0 / 720.0,
        1.0 / 30240.0,
        -1.0 / 1209600.0,
        1.0 / 47900160.0,
    ];
    let mut tail = x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s);
    // rising factorial s (s+1) ... (s+2j-2) times x^{-s-2j+1}
    let mut factor = s * x.powf(-s - 1.0);
    for (j, c) in COEFFS.iter().enumerate() {
        tail += c * factor;
        let a = s + (2 * j + 1) as f64;
        factor *= a * (a + 1.0) / (x * x);
    }
    head + tail
}

/// `‖a‖_{n_{p,q}} = (Σ_{k≥1} k^{q/p-1} ã_k^q)^{1/q}`, or `sup_k k^{1/p} ã_k`
/// for `q = ∞`. The tail `k > D` uses `ã_k = M/k` and is summed in closed form.
pub fn net_norm(a: &TwoSidedSequence, p: f64, q: NetIndex) -> Result<f64> {
    check_net_exponents(p, q)?;
    Ok(net_norm_with(&NetAverages::new(a), p, q))
}

fn check_net_exponents(p: f64, q: NetIndex) -> Result<()> {
    match q {
        NetIndex::Finite(q) => {
            if !(p > 1.0 && p.is_finite()) {
                return Err(Error::ExponentOutOfRange {
                    value: p,
                    expected: "1 < p < inf",
                });
            }
            if !(q >= 1.0 && q.is_finite()) {
                return Err(Error::ExponentOutOfRange {
                    value: q,
                    expected: "1 <= q < inf",
                });
            }
        }
        NetIndex::Infinite => {
            if p.is_nan() || p <= 1.0 {
                return Err(Error::ExponentOutOfRange {
                    value: p,
                    expected: "1 < p <= inf",
                });
            }
        }
    }
    Ok(())
}

/// [`net_norm`] over precomputed averages.
pub fn net_norm_with(avg: &NetAverages, p: f64, q: NetIndex) -> f64 {
    let d = avg.diameter() as u64;
    if d == 0 {
        return 0.0;
    }
    match q {
        NetIndex::Infinite => (1..=d)
            .map(|k| {
                let w = if p.is_infinite() {
                    1.0
                } else {
                    (k as f64).powf(1.0 / p)
                };
                w * avg.tilde(k)
            })
            .fold(0.0, f64::max),
        NetIndex::Finite(q) => {
            let head = ordered_sum(
                (1..=d).map(|k| (k as f64).powf(q / p - 1.0) * avg.tilde(k).powf(q)),
                d as usize,
            );
            let s = q + 1.0 - q / p;
            let tail = avg.tail_constant().powf(q) * zeta_tail(s, d + 1);
            (head + tail).powf(1.0 / q)
        }
    }
}

/// Dyadic form `(Σ_{j≥0} (2^{j/p} ã_{2^j})^q)^{1/q}`, equivalent to
/// [`net_norm`] up to constants depending on `p, q`.
pub fn net_norm_dyadic(a: &TwoSidedSequence, p: f64, q: f64) -> Result<f64> {
    check_net_exponents(p, NetIndex::Finite(q))?;
    Ok(net_norm_dyadic_with(&NetAverages::new(a), p, q))
}

pub fn net_norm_dyadic_with(avg: &NetAverages, p: f64, q: f64) -> f64 {
    let d = avg.diameter() as u64;
    if d == 0 {
        return 0.0;
    }
    // first level with 2^j ≥ D, from which ã_{2^j} = M / 2^j
    let j0 = crate::functionals::ceil_log2(d);
    let head: f64 = (0..j0)
        .map(|j| ((j as f64 / p).exp2() * avg.tilde_dyadic(j)).powf(q))
        .sum();
    let ratio = (q * (1.0 / p - 1.0)).exp2();
    let tail = avg.tail_constant().powf(q) * ratio.powf(j0 as f64) / (1.0 - ratio);
    (head + tail).powf(1.0 / q)
}

/// `‖a‖_{l_{p,q}} = (Σ_{n≥1} n^{q/p-1} (a*_n)^q)^{1/q}` over the one-sided
/// nonincreasing rearrangement.
pub fn lorentz_norm(a: &TwoSidedSequence, p: f64, q: f64) -> Result<f64> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::ExponentOutOfRange {
            value: p,
            expected: "1 < p < inf",
        });
    }
    if !(q > 0.0 && q.is_finite()) {
        return Err(Error::ExponentOutOfRange {
            value: q,
            expected: "0 < q < inf",
        });
    }
    let r = symmetric_rearrangement(a);
    let terms = r.one_sided.iter().enumerate().map(|(i, &m)| {
        if m == 0.0 {
            0.0
        } else {
            ((i + 1) as f64).powf(q / p - 1.0) * m.powf(q)
        }
    });
    Ok(ordered_sum(terms, r.one_sided.len()).powf(1.0 / q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn prefix_sums_are_total() {
        let a = TwoSidedSequence::from_real(-1, &[1.0, 2.0, 4.0]).unwrap();
        let p = PrefixSums::new(&a);
        assert_eq!(p.at(-5).re, 0.0);
        assert_eq!(p.at(-1).re, 1.0);
        assert_eq!(p.at(0).re, 3.0);
        assert_eq!(p.at(9).re, 7.0);
        assert_eq!(p.interval_sum(0, 1).re, 6.0);
        assert_eq!(p.interval_sum(-3, 3).re, 7.0);
        assert_eq!(p.interval_sum(2, 1).re, 0.0);
    }

    #[test]
    fn tilde_of_unit_impulse() {
        let a = TwoSidedSequence::unit(0);
        assert_eq!(tilde_average(&a, 4).unwrap(), 0.25);
        let avg = NetAverages::new(&a);
        for k in 1..20 {
            assert_eq!(avg.tilde(k), 1.0 / k as f64);
        }
        assert!(tilde_average(&a, 0).is_err());
    }

    #[test]
    fn tilde_of_constant_block() {
        let a = TwoSidedSequence::from_real(1, &[1.0; 8]).unwrap();
        assert_eq!(tilde_average(&a, 2).unwrap(), 1.0);
        assert_eq!(tilde_average(&a, 8).unwrap(), 1.0);
        assert_eq!(tilde_average(&a, 16).unwrap(), 0.5);
    }

    #[test]
    fn tilde_sees_partial_windows_past_support() {
        // total cancels but a window of length k ≥ D can hold the +1 alone
        let a = TwoSidedSequence::from_real(0, &[1.0, -1.0]).unwrap();
        assert_eq!(tilde_average(&a, 5).unwrap(), 0.2);
        let avg = NetAverages::new(&a);
        assert_eq!(avg.tail_constant(), 1.0);
        assert_eq!(avg.tilde(1), 1.0);
        assert_eq!(avg.tilde(2), 0.5);
    }

    #[test]
    fn zero_sequence_norms() {
        let z = TwoSidedSequence::zeros(-3, 7).unwrap();
        assert_eq!(tilde_average(&z, 3).unwrap(), 0.0);
        assert_eq!(net_norm(&z, 2.0, NetIndex::Finite(2.0)).unwrap(), 0.0);
        assert_eq!(lorentz_norm(&z, 2.0, 2.0).unwrap(), 0.0);
        assert_eq!(hat_average(&z, 3), 0.0);
    }

    #[test]
    fn hat_examples() {
        let a = TwoSidedSequence::unit(0);
        assert_eq!(hat_average(&a, 0), 0.5);
        assert_eq!(hat_average(&a, 2), 0.2);
        let b = TwoSidedSequence::from_real(-2, &[4.0, 0.0, 0.0, 0.0, 1.0]).unwrap();
        // m = -2 block of level 1: |a_{-2}|/3
        assert_eq!(hat_average_side(&b, 1, HatSide::Negative), 4.0 / 3.0);
        assert_eq!(hat_average_side(&b, 1, HatSide::Positive), 1.0 / 3.0);
        assert_eq!(hat_average(&b, 1), 4.0 / 3.0);
    }

    #[test]
    fn zeta_tail_values() {
        assert!((zeta_tail(2.0, 1) - PI * PI / 6.0).abs() < 1e-14);
        let direct: f64 = (5..200_000u64).map(|k| (k as f64).powf(-3.0)).sum::<f64>();
        let rest = zeta_tail(3.0, 200_000);
        assert!((zeta_tail(3.0, 5) - direct - rest).abs() < 1e-15);
        assert!((zeta_tail(1.5, 1) - 2.612_375_348_685_488).abs() < 1e-12);
    }

    #[test]
    fn net_norm_of_unit_impulse() {
        let a = TwoSidedSequence::unit(0);
        let v = net_norm(&a, 2.0, NetIndex::Finite(2.0)).unwrap();
        assert!((v - (PI * PI / 6.0).sqrt()).abs() < 1e-14);
        assert_eq!(net_norm(&a, 3.0, NetIndex::Infinite).unwrap(), 1.0);
        assert_eq!(
            net_norm(&a, f64::INFINITY, NetIndex::Infinite).unwrap(),
            1.0
        );
        assert!(net_norm(&a, 1.0, NetIndex::Finite(2.0)).is_err());
        assert!(net_norm(&a, 2.0, NetIndex::Finite(0.5)).is_err());
    }

    #[test]
    fn lorentz_examples() {
        let single = TwoSidedSequence::unit(4).scale(Complex64::new(0.0, 3.0));
        assert!((lorentz_norm(&single, 1.7, 2.3).unwrap() - 3.0).abs() < 1e-14);
        let a = TwoSidedSequence::from_real(0, &[1.0, 3.0, 2.0]).unwrap();
        assert!((lorentz_norm(&a, 2.0, 2.0).unwrap() - 14f64.sqrt()).abs() < 1e-14);
        assert!(lorentz_norm(&a, 1.0, 2.0).is_err());
        assert!(lorentz_norm(&a, 2.0, 0.0).is_err());
    }
}
