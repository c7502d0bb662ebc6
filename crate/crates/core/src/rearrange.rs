//! Nonincreasing rearrangements of coefficient magnitudes.

use std::cmp::Ordering;

use crate::sequence::TwoSidedSequence;

/// Magnitudes of a sequence sorted into nonincreasing order.
///
/// `symmetric[i]` is the value placed at the zigzag index
/// [`zigzag_index(i)`](zigzag_index), i.e. `a*_0 ≥ a*_{-1} ≥ a*_1 ≥ a*_{-2} ≥ …`;
/// `one_sided[n - 1]` is `a*_n` of the one-sided rearrangement. Both lists hold
/// the same multiset; past their end every rearranged value is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct RearrangedSequence {
    pub symmetric: Vec<f64>,
    pub one_sided: Vec<f64>,
    /// Original index of the coefficient that landed in each slot.
    pub sources: Vec<i64>,
}

/// Position `i` of the zigzag order 0, -1, 1, -2, 2, ... as an index in ℤ.
pub fn zigzag_index(i: usize) -> i64 {
    let i = i as i64;
    if i % 2 == 1 {
        -(i + 1) / 2
    } else {
        i / 2
    }
}

/// Sorts magnitudes descending. Equal magnitudes are ordered by descending
/// `|k|`, then positive `k` before negative `k`.
pub fn symmetric_rearrangement(a: &TwoSidedSequence) -> RearrangedSequence {
    let mut entries: Vec<(f64, i64)> = a.iter().map(|(k, v)| (v.norm(), k)).collect();
    entries.sort_by(|(ma, ka), (mb, kb)| {
        mb.total_cmp(ma)
            .then_with(|| kb.unsigned_abs().cmp(&ka.unsigned_abs()))
            .then_with(|| match (ka.signum(), kb.signum()) {
                (x, y) if x == y => Ordering::Equal,
                (1, _) => Ordering::Less,
                (_, 1) => Ordering::Greater,
                _ => Ordering::Equal,
            })
    });
    let symmetric: Vec<f64> = entries.iter().map(|e| e.0).collect();
    RearrangedSequence {
        one_sided: symmetric.clone(),
        sources: entries.iter().map(|e| e.1).collect(),
        symmetric,
    }
}

impl RearrangedSequence {
    /// `a*_k` for the symmetric layout, zero past the stored list.
    pub fn symmetric_at(&self, k: i64) -> f64 {
        let pos = if k > 0 { 2 * k } else { -2 * k - 1 };
        let pos = if k == 0 { 0 } else { pos };
        self.symmetric.get(pos as usize).copied().unwrap_or(0.0)
    }

    /// The symmetric rearrangement laid out as a real two-sided sequence.
    pub fn to_sequence(&self) -> TwoSidedSequence {
        let n = self.symmetric.len();
        let lo = -(n as i64 / 2);
        let hi = (n as i64 - 1).max(0) / 2;
        TwoSidedSequence::from_fn(lo, hi, |k| {
            num_complex::Complex64::new(self.symmetric_at(k), 0.0)
        })
        .expect("zigzag layout is non-empty and finite")
    }

    /// Sum of the `k` largest magnitudes.
    pub fn top_sum(&self, k: usize) -> f64 {
        self.one_sided.iter().take(k).sum()
    }
}
