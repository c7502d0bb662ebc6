/// Term count above which sums switch to Neumaier compensation.
pub const COMPENSATION_THRESHOLD: usize = 1 << 15;

/// Sums `terms` in the order given. `count` is the expected number of terms
/// and selects plain or compensated accumulation.
pub fn ordered_sum<I>(terms: I, count: usize) -> f64
where
    I: IntoIterator<Item = f64>,
{
    if count > COMPENSATION_THRESHOLD {
        neumaier_sum(terms)
    } else {
        terms.into_iter().sum()
    }
}

pub fn neumaier_sum<I>(terms: I) -> f64
where
    I: IntoIterator<Item = f64>,
{
    let mut sum = 0.0_f64;
    let mut carry = 0.0_f64;
    for t in terms {
        let s = sum + t;
        if sum.abs() >= t.abs() {
            carry += (sum - s) + t;
        } else {
            carry += (t - s) + sum;
        }
        sum = s;
    }
    sum + carry
}

/// Indices in the canonical summation order: 0, -1, 1, -2, 2, ...
/// restricted to `[k_min, k_max]`.
pub fn canonical_order(k_min: i64, k_max: i64) -> impl Iterator<Item = i64> {
    let radius = k_min.unsigned_abs().max(k_max.unsigned_abs()) as i64;
    (0..=radius)
        .flat_map(|r| {
            let neg = if r == 0 { None } else { Some(-r) };
            neg.into_iter().chain(std::iter::once(r))
        })
        .filter(move |k| *k >= k_min && *k <= k_max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neumaier_recovers_small_terms() {
        let terms = [1.0, 1e100, 1.0, -1e100];
        assert_eq!(neumaier_sum(terms), 2.0);
    }

    #[test]
    fn canonical_order_zigzags() {
        let v: Vec<i64> = canonical_order(-2, 3).collect();
        assert_eq!(v, vec![0, -1, 1, -2, 2, 3]);
    }
}
