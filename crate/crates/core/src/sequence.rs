//! Finite two-sided complex sequences.
//!
//! A [`TwoSidedSequence`] stores `a_k` for `k` in `[k_min, k_max]`; every
//! index outside that window reads as an exact zero, so all infinite sums
//! over the sequence reduce to finite ones.

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct TwoSidedSequence {
    offset: i64,
    values: Vec<Complex64>,
}

impl TwoSidedSequence {
    /// Builds a sequence whose first stored coefficient sits at `offset`.
    pub fn new(offset: i64, values: Vec<Complex64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySequence);
        }
        if let Some(pos) = values
            .iter()
            .position(|v| !v.re.is_finite() || !v.im.is_finite())
        {
            return Err(Error::NonFinite {
                index: offset + pos as i64,
            });
        }
        Ok(Self { offset, values })
    }

    pub fn from_real(offset: i64, values: &[f64]) -> Result<Self> {
        Self::new(
            offset,
            values.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    /// The unit impulse at index `k`.
    pub fn unit(k: i64) -> Self {
        Self {
            offset: k,
            values: vec![Complex64::new(1.0, 0.0)],
        }
    }

    pub fn zeros(offset: i64, len: usize) -> Result<Self> {
        Self::new(offset, vec![Complex64::new(0.0, 0.0); len])
    }

    /// Builds a sequence on `[k_min, k_max]` from a closure.
    pub fn from_fn<F>(k_min: i64, k_max: i64, mut f: F) -> Result<Self>
    where
        F: FnMut(i64) -> Complex64,
    {
        if k_max < k_min {
            return Err(Error::EmptySequence);
        }
        Self::new(k_min, (k_min..=k_max).map(&mut f).collect())
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn k_min(&self) -> i64 {
        self.offset
    }

    pub fn k_max(&self) -> i64 {
        self.offset + self.values.len() as i64 - 1
    }

    /// `max(|k_min|, |k_max|)`.
    pub fn radius(&self) -> u64 {
        self.k_min().unsigned_abs().max(self.k_max().unsigned_abs())
    }

    /// Total over all of ℤ: stored value or exact zero.
    pub fn get(&self, k: i64) -> Complex64 {
        let i = k - self.offset;
        if i < 0 || i >= self.values.len() as i64 {
            Complex64::new(0.0, 0.0)
        } else {
            self.values[i as usize]
        }
    }

    /// `(k, a_k)` over the stored window.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, v)| (self.offset + i as i64, *v))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.re == 0.0 && v.im == 0.0)
    }

    /// Smallest window `[lo, hi]` holding every nonzero coefficient.
    pub fn support(&self) -> Option<(i64, i64)> {
        let nz = |v: &Complex64| v.re != 0.0 || v.im != 0.0;
        let first = self.values.iter().position(nz)?;
        let last = self.values.iter().rposition(nz)?;
        Some((self.offset + first as i64, self.offset + last as i64))
    }

    /// Copy with the stored window shrunk to the nonzero support
    /// (a single zero at index 0 for the zero sequence).
    pub fn trimmed(&self) -> Self {
        match self.support() {
            Some((lo, hi)) => Self {
                offset: lo,
                values: self.values[(lo - self.offset) as usize..=(hi - self.offset) as usize]
                    .to_vec(),
            },
            None => Self {
                offset: 0,
                values: vec![Complex64::new(0.0, 0.0)],
            },
        }
    }

    /// `b_k = a_{-k}`.
    pub fn reflect(&self) -> Self {
        let mut values = self.values.clone();
        values.reverse();
        Self {
            offset: -self.k_max(),
            values,
        }
    }

    /// Zeroes every coefficient outside `[lo, hi]`.
    pub fn restrict(&self, lo: i64, hi: i64) -> Self {
        self.map_indexed(|k, v| {
            if k < lo || k > hi {
                Complex64::new(0.0, 0.0)
            } else {
                v
            }
        })
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map_indexed(|_, v| v * c)
    }

    pub fn map_indexed<F>(&self, mut f: F) -> Self
    where
        F: FnMut(i64, Complex64) -> Complex64,
    {
        Self {
            offset: self.offset,
            values: self.iter().map(|(k, v)| f(k, v)).collect(),
        }
    }

    /// Replaces the coefficient at `k`, growing the stored window if needed.
    pub fn with_value(&self, k: i64, value: Complex64) -> Result<Self> {
        let lo = self.k_min().min(k);
        let hi = self.k_max().max(k);
        Self::from_fn(lo, hi, |j| if j == k { value } else { self.get(j) })
    }

    /// `|Δa_k|`: forward difference for `k > 0`, backward for `k < 0`,
    /// and the sum of both one-step differences at `k = 0`.
    pub fn delta_abs(&self, k: i64) -> f64 {
        use std::cmp::Ordering;
        match k.cmp(&0) {
            Ordering::Greater => (self.get(k) - self.get(k + 1)).norm(),
            Ordering::Less => (self.get(k) - self.get(k - 1)).norm(),
            Ordering::Equal => {
                let a0 = self.get(0);
                (a0 - self.get(1)).norm() + (a0 - self.get(-1)).norm()
            }
        }
    }

    /// The one-sided tail `a_1, a_2, ..., a_{k_max}` (empty when `k_max < 1`).
    pub fn positive_part(&self) -> Vec<Complex64> {
        (1..=self.k_max()).map(|k| self.get(k)).collect()
    }
}

/// Free-function form of [`TwoSidedSequence::delta_abs`].
pub fn delta_abs(a: &TwoSidedSequence, k: i64) -> f64 {
    a.delta_abs(k)
}
