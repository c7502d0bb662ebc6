//! Paley-type functionals, dyadic block sums of |Δa| and the discrete Hardy
//! inequalities.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rearrange::symmetric_rearrangement;
use crate::sequence::TwoSidedSequence;
use crate::sum::{canonical_order, ordered_sum};

/// An exponent `p` with `1 < p < ∞`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Exponent(f64);

impl Exponent {
    pub fn new(p: f64) -> Result<Self> {
        if p > 1.0 && p.is_finite() {
            Ok(Self(p))
        } else {
            Err(Error::ExponentOutOfRange {
                value: p,
                expected: "1 < p < inf",
            })
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `p' = p / (p - 1)`.
    pub fn conjugate(self) -> f64 {
        self.0 / (self.0 - 1.0)
    }

    pub fn conjugate_exponent(self) -> Exponent {
        Exponent(self.conjugate())
    }
}

impl TryFrom<f64> for Exponent {
    type Error = Error;

    fn try_from(p: f64) -> Result<Self> {
        Self::new(p)
    }
}

impl From<Exponent> for f64 {
    fn from(p: Exponent) -> f64 {
        p.0
    }
}

/// `⌈log2 x⌉` for `x ≥ 1`.
pub(crate) fn ceil_log2(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

/// Dyadic block count covering the stored window:
/// `⌈log2(max(|k_min|, k_max) + 1)⌉ + 1`.
pub fn default_levels(a: &TwoSidedSequence) -> usize {
    ceil_log2(a.radius() + 1) as usize + 1
}

/// Block count covering the nonzero support only.
pub(crate) fn support_levels(a: &TwoSidedSequence) -> usize {
    match a.support() {
        Some((lo, hi)) => ceil_log2(lo.unsigned_abs().max(hi.unsigned_abs()) + 1) as usize + 1,
        None => 1,
    }
}

/// Index range `[[2^{n-1}], 2^n)` of dyadic block `n` in `|m|`.
pub fn block_range(n: usize) -> (u64, u64) {
    if n == 0 {
        (0, 1)
    } else {
        (1u64 << (n - 1), 1u64 << n)
    }
}

/// `Θ_n = Σ_{[2^{n-1}] ≤ |m| < 2^n} |Δa_m|` for `n = 0..levels`.
pub fn theta_blocks(a: &TwoSidedSequence, levels: usize) -> Vec<f64> {
    // Δa_m vanishes once |m| exceeds the stored radius.
    let reach = a.radius() + 1;
    (0..levels)
        .map(|n| {
            if n == 0 {
                return a.delta_abs(0);
            }
            if n >= 64 {
                return 0.0;
            }
            let (lo, hi) = block_range(n);
            if lo > reach {
                return 0.0;
            }
            let hi = hi.min(reach + 1);
            let count = 2 * (hi - lo) as usize;
            ordered_sum(
                (lo..hi).flat_map(|m| {
                    let m = m as i64;
                    [a.delta_abs(-m), a.delta_abs(m)]
                }),
                count,
            )
        })
        .collect()
}

/// `J_p = (Σ_k (|k|+1)^{p-2} |a_k|^p)^{1/p}`.
pub fn j_p(a: &TwoSidedSequence, p: Exponent) -> f64 {
    let p = p.value();
    let terms = canonical_order(a.k_min(), a.k_max()).map(|k| {
        let m = a.get(k).norm();
        if m == 0.0 {
            0.0
        } else {
            ((k.abs() + 1) as f64).powf(p - 2.0) * m.powf(p)
        }
    });
    ordered_sum(terms, a.len()).powf(1.0 / p)
}

/// `J_p^*`: [`j_p`] of the symmetric nonincreasing rearrangement.
pub fn j_p_star(a: &TwoSidedSequence, p: Exponent) -> f64 {
    let r = symmetric_rearrangement(a);
    let pv = p.value();
    // The zigzag slot order coincides with the canonical summation order.
    let terms = r.symmetric.iter().enumerate().map(|(i, &m)| {
        if m == 0.0 {
            0.0
        } else {
            let k = crate::rearrange::zigzag_index(i);
            ((k.abs() + 1) as f64).powf(pv - 2.0) * m.powf(pv)
        }
    });
    ordered_sum(terms, r.symmetric.len()).powf(1.0 / pv)
}

/// `I_p = (Σ_n (2^{n/p'} Θ_n)^p)^{1/p}`.
///
/// `levels` defaults to [`default_levels`]; an explicit value must cover every
/// block that intersects the support.
pub fn i_p(a: &TwoSidedSequence, p: Exponent, levels: Option<usize>) -> Result<f64> {
    let needed = support_levels(a);
    let levels = levels.unwrap_or_else(|| default_levels(a));
    if levels < needed {
        return Err(Error::InvalidParameter(format!(
            "levels = {levels} does not cover the support (needs {needed})"
        )));
    }
    Ok(i_p_from_theta(&theta_blocks(a, levels), p))
}

pub(crate) fn i_p_from_theta(theta: &[f64], p: Exponent) -> f64 {
    let pv = p.value();
    let inv_conj = 1.0 / p.conjugate();
    let terms = theta
        .iter()
        .enumerate()
        .map(|(n, &t)| ((n as f64 * inv_conj).exp2() * t).powf(pv));
    ordered_sum(terms, theta.len()).powf(1.0 / pv)
}

/// Which discrete Hardy inequality to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HardySide {
    /// `(Σ_k (2^{αk} Σ_{m≥k} a_m)^q)^{1/q} ≲ (Σ_k (2^{αk} a_k)^q)^{1/q}`
    Tail,
    /// `(Σ_k (2^{(α-1)k} Σ_{m≤k} 2^m a_m)^q)^{1/q} ≲ (Σ_k (2^{αk} a_k)^q)^{1/q}`
    Head,
}

impl HardySide {
    /// Explicit constant from Minkowski's inequality and a geometric series:
    /// `1/(1 - 2^{-α})` for the tail form, `1/(1 - 2^{α-1})` for the head form.
    pub fn constant(self, alpha: f64) -> f64 {
        match self {
            HardySide::Tail => 1.0 / (1.0 - (-alpha).exp2()),
            HardySide::Head => 1.0 / (1.0 - (alpha - 1.0).exp2()),
        }
    }
}

/// Both sides of a discrete Hardy inequality for a finite nonnegative list
/// `a_0, a_1, ...` (zero beyond its end). The head form's constant tail
/// `k ≥ len` is summed in closed form.
pub fn hardy_lhs_rhs(a: &[f64], alpha: f64, q: f64, which: HardySide) -> Result<(f64, f64)> {
    if let Some(i) = a.iter().position(|x| !(x.is_finite() && *x >= 0.0)) {
        return Err(Error::InvalidParameter(format!(
            "entry {i} is negative or not finite"
        )));
    }
    if !(q > 1.0 && q.is_finite()) {
        return Err(Error::ExponentOutOfRange {
            value: q,
            expected: "1 < q < inf",
        });
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    let weight = |k: usize| (alpha * k as f64).exp2();
    let rhs = a
        .iter()
        .enumerate()
        .map(|(k, &x)| (weight(k) * x).powf(q))
        .sum::<f64>()
        .powf(1.0 / q);
    let lhs_q = match which {
        HardySide::Tail => {
            let mut suffix = 0.0;
            let mut tails = vec![0.0; a.len()];
            for k in (0..a.len()).rev() {
                suffix += a[k];
                tails[k] = suffix;
            }
            tails
                .iter()
                .enumerate()
                .map(|(k, &t)| (weight(k) * t).powf(q))
                .sum::<f64>()
        }
        HardySide::Head => {
            // g_k = 2^{(α-1)k} Σ_{m≤k} 2^m a_m = 2^{α-1} g_{k-1} + 2^{αk} a_k
            let shrink = (alpha - 1.0).exp2();
            let mut g = 0.0;
            let mut total = 0.0;
            for (k, &x) in a.iter().enumerate() {
                g = shrink * g + weight(k) * x;
                total += g.powf(q);
            }
            // k ≥ len: g keeps shrinking by 2^{α-1} per step.
            let r = shrink.powf(q);
            total + (shrink * g).powf(q) / (1.0 - r)
        }
    };
    Ok((lhs_q.powf(1.0 / q), rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn p(x: f64) -> Exponent {
        Exponent::new(x).unwrap()
    }

    #[test]
    fn exponent_range() {
        assert!(Exponent::new(1.0).is_err());
        assert!(Exponent::new(f64::INFINITY).is_err());
        assert!(Exponent::new(f64::NAN).is_err());
        let e = p(3.0);
        assert!((1.0 / e.value() + 1.0 / e.conjugate() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn levels_cover_radius() {
        assert_eq!(default_levels(&TwoSidedSequence::unit(0)), 1);
        assert_eq!(default_levels(&TwoSidedSequence::unit(1)), 2);
        assert_eq!(default_levels(&TwoSidedSequence::unit(-4)), 4);
        assert_eq!(default_levels(&TwoSidedSequence::unit(7)), 4);
        assert_eq!(default_levels(&TwoSidedSequence::unit(8)), 5);
    }

    #[test]
    fn theta_of_unit_impulses() {
        assert_eq!(
            theta_blocks(&TwoSidedSequence::unit(0), 4),
            vec![2.0, 0.0, 0.0, 0.0]
        );
        assert_eq!(
            theta_blocks(&TwoSidedSequence::unit(1), 4),
            vec![1.0, 1.0, 0.0, 0.0]
        );
    }

    #[test]
    fn j_p_single_terms() {
        for x in [1.1, 2.0, 3.7] {
            assert_eq!(j_p(&TwoSidedSequence::unit(0), p(x)), 1.0);
        }
        assert!((j_p(&TwoSidedSequence::unit(1), p(2.0)) - 1.0).abs() < 1e-15);
        assert!((j_p(&TwoSidedSequence::unit(1), p(3.0)) - 2f64.powf(1.0 / 3.0)).abs() < 1e-15);
    }

    #[test]
    fn j_p_star_examples() {
        let a = TwoSidedSequence::from_real(-1, &[3.0, 1.0, 2.0]).unwrap();
        assert!((j_p_star(&a, p(2.0)) - 14f64.sqrt()).abs() < 1e-14);
        let single = TwoSidedSequence::new(5, vec![Complex64::new(0.0, -2.5)]).unwrap();
        assert!((j_p_star(&single, p(1.7)) - 2.5).abs() < 1e-14);
        // already symmetric-nonincreasing
        let s = TwoSidedSequence::from_real(-1, &[2.0, 3.0, 1.0]).unwrap();
        assert_eq!(j_p_star(&s, p(2.5)), j_p(&s, p(2.5)));
    }

    #[test]
    fn i_p_examples() {
        assert!((i_p(&TwoSidedSequence::unit(0), p(2.0), None).unwrap() - 2.0).abs() < 1e-15);
        assert!(
            (i_p(&TwoSidedSequence::unit(1), p(2.0), None).unwrap() - 3f64.sqrt()).abs() < 1e-15
        );
        let a = TwoSidedSequence::unit(5);
        let base = i_p(&a, p(1.5), None).unwrap();
        for levels in [5, 6, 9, 20] {
            assert_eq!(i_p(&a, p(1.5), Some(levels)).unwrap(), base);
        }
        assert!(i_p(&a, p(1.5), Some(2)).is_err());
    }

    #[test]
    fn hardy_trivial_cases() {
        for side in [HardySide::Tail, HardySide::Head] {
            let (l, r) = hardy_lhs_rhs(&[0.0; 5], 0.5, 2.0, side).unwrap();
            assert_eq!((l, r), (0.0, 0.0));
        }
        let (l, r) = hardy_lhs_rhs(&[1.0, 0.0, 0.0], 0.3, 1.7, HardySide::Tail).unwrap();
        assert_eq!((l, r), (1.0, 1.0));
        assert!(hardy_lhs_rhs(&[1.0, -0.1], 0.5, 2.0, HardySide::Tail).is_err());
        assert!(hardy_lhs_rhs(&[1.0], 1.0, 2.0, HardySide::Tail).is_err());
        assert!(hardy_lhs_rhs(&[1.0], 0.5, 1.0, HardySide::Head).is_err());
    }

    #[test]
    fn hardy_head_single_entry_closed_form() {
        // a = (1): g_k = 2^{(α-1)k}, LHS^q = Σ_k 2^{(α-1)kq} = 1/(1 - 2^{(α-1)q})
        let (alpha, q) = (0.4, 2.5);
        let (l, r) = hardy_lhs_rhs(&[1.0], alpha, q, HardySide::Head).unwrap();
        let expected = (1.0 / (1.0 - ((alpha - 1.0) * q).exp2())).powf(1.0 / q);
        assert!((l - expected).abs() < 1e-14);
        assert_eq!(r, 1.0);
    }
}
