//! Slow, literal reference computations.
//!
//! Every function here follows its definition as directly as possible, with
//! no shared code paths with `gmseq`. Sequences are passed raw as the index
//! of the first stored coefficient plus the stored values.

use std::f64::consts::PI;

use num_complex::Complex64;

/// `a_k`, zero outside the stored window.
pub fn get(offset: i64, v: &[Complex64], k: i64) -> Complex64 {
    let i = k - offset;
    if i < 0 || i >= v.len() as i64 {
        Complex64::new(0.0, 0.0)
    } else {
        v[i as usize]
    }
}

pub fn delta(offset: i64, v: &[Complex64], k: i64) -> f64 {
    let a = |j| get(offset, v, j);
    if k > 0 {
        (a(k) - a(k + 1)).norm()
    } else if k < 0 {
        (a(k) - a(k - 1)).norm()
    } else {
        (a(0) - a(1)).norm() + (a(0) - a(-1)).norm()
    }
}

/// `Θ_n` by looping over every `m` of the block.
pub fn theta(offset: i64, v: &[Complex64], n: u32) -> f64 {
    if n == 0 {
        return delta(offset, v, 0);
    }
    let lo = 1i64 << (n - 1);
    let hi = 1i64 << n;
    let mut s = 0.0;
    for m in lo..hi {
        s += delta(offset, v, m) + delta(offset, v, -m);
    }
    s
}

/// `J_p` summed from the last stored index down to the first.
pub fn j_p_reverse(offset: i64, v: &[Complex64], p: f64) -> f64 {
    let mut s = 0.0;
    for i in (0..v.len()).rev() {
        let k = offset + i as i64;
        s += (k.abs() as f64 + 1.0).powf(p - 2.0) * v[i].norm().powf(p);
    }
    s.powf(1.0 / p)
}

/// Moduli sorted in decreasing order.
pub fn sorted_magnitudes(v: &[Complex64]) -> Vec<f64> {
    let mut m: Vec<f64> = v.iter().map(|z| z.norm()).collect();
    m.sort_by(|a, b| b.partial_cmp(a).unwrap());
    m
}

/// `l_{p,q}` from the sorted magnitudes.
pub fn lorentz(v: &[Complex64], p: f64, q: f64) -> f64 {
    let mut s = 0.0;
    for (i, m) in sorted_magnitudes(v).iter().enumerate() {
        if *m > 0.0 {
            s += ((i + 1) as f64).powf(q / p - 1.0) * m.powf(q);
        }
    }
    s.powf(1.0 / q)
}

/// Largest `|Σ_{m∈w} a_m| / |w|` over windows of each length `1..=max_len`,
/// enumerating every window that meets the stored range and summing it term
/// by term: `O(N · max_len²)`.
pub fn window_means_cubic(offset: i64, v: &[Complex64], max_len: usize) -> Vec<f64> {
    let k_min = offset;
    let k_max = offset + v.len() as i64 - 1;
    let mut best = vec![0.0_f64; max_len];
    for len in 1..=max_len {
        let l = len as i64;
        for start in (k_min - l + 1)..=k_max {
            let mut s = Complex64::new(0.0, 0.0);
            for m in start..start + l {
                s += get(offset, v, m);
            }
            best[len - 1] = best[len - 1].max(s.norm() / len as f64);
        }
    }
    best
}

/// As [`window_means_cubic`], growing each window one term at a time from
/// every start: `O(N · max_len)`.
pub fn window_means_running(offset: i64, v: &[Complex64], max_len: usize) -> Vec<f64> {
    let k_min = offset;
    let k_max = offset + v.len() as i64 - 1;
    let mut best = vec![0.0_f64; max_len];
    for start in (k_min - max_len as i64 + 1)..=k_max {
        let mut s = Complex64::new(0.0, 0.0);
        for len in 1..=max_len {
            s += get(offset, v, start + len as i64 - 1);
            best[len - 1] = best[len - 1].max(s.norm() / len as f64);
        }
    }
    best
}

/// `ã_k = max_{L ≥ k} best[L-1]` for `k = 1..=best.len()`.
///
/// Only exact for `k` up to `best.len() - N`, where `N` is the stored
/// length, since longer windows are not enumerated.
pub fn tilde_from_window_means(best: &[f64]) -> Vec<f64> {
    let mut out = best.to_vec();
    for i in (0..out.len().saturating_sub(1)).rev() {
        out[i] = out[i].max(out[i + 1]);
    }
    out
}

/// `ã_k` for `k = 1..=k_max` by exhaustive cubic enumeration of all windows
/// of length up to `k_max + N`.
pub fn tilde_cubic(offset: i64, v: &[Complex64], k_max: usize) -> Vec<f64> {
    let mut t = tilde_from_window_means(&window_means_cubic(offset, v, k_max + v.len()));
    t.truncate(k_max);
    t
}

/// Same as [`tilde_cubic`] via running sums.
pub fn tilde_running(offset: i64, v: &[Complex64], k_max: usize) -> Vec<f64> {
    let mut t = tilde_from_window_means(&window_means_running(offset, v, k_max + v.len()));
    t.truncate(k_max);
    t
}

/// `â_{2^level}` by summing from 0 to each `m` separately.
pub fn hat(offset: i64, v: &[Complex64], level: u32) -> f64 {
    hat_sided(offset, v, level, true, true)
}

pub fn hat_sided(offset: i64, v: &[Complex64], level: u32, positive: bool, negative: bool) -> f64 {
    let lo = 1i64 << level;
    let hi = 1i64 << (level + 1);
    let mut best = 0.0_f64;
    for m in lo..hi {
        if positive {
            let s: Complex64 = (0..=m).map(|j| get(offset, v, j)).sum();
            best = best.max(s.norm() / (m + 1) as f64);
        }
        if negative {
            let s: Complex64 = (-m..=0).map(|j| get(offset, v, j)).sum();
            best = best.max(s.norm() / (m + 1) as f64);
        }
    }
    best
}

/// `f(x) = Σ a_k e^{ikx}` by direct summation at each point.
pub fn evaluate(offset: i64, v: &[Complex64], xs: &[f64]) -> Vec<Complex64> {
    xs.iter()
        .map(|&x| {
            let mut s = Complex64::new(0.0, 0.0);
            for (i, a) in v.iter().enumerate() {
                let k = offset + i as i64;
                let t = k as f64 * x;
                s += a * Complex64::new(t.cos(), t.sin());
            }
            s
        })
        .collect()
}

/// Rectangle rule for `‖f‖_p` on `m` nodes `-π + 2πj/m`, evaluated directly.
pub fn lp_direct(offset: i64, v: &[Complex64], p: f64, m: usize) -> f64 {
    let xs: Vec<f64> = (0..m)
        .map(|j| -PI + 2.0 * PI * j as f64 / m as f64)
        .collect();
    let s: f64 = evaluate(offset, v, &xs)
        .iter()
        .map(|z| z.norm().powf(p))
        .sum();
    (2.0 * PI / m as f64 * s).powf(1.0 / p)
}

/// `(2π Σ|a_k|²)^{1/2}`.
pub fn parseval(v: &[Complex64]) -> f64 {
    (2.0 * PI * v.iter().map(|z| z.norm_sqr()).sum::<f64>()).sqrt()
}

/// Partial sum `Σ_{k=1}^{terms} k^{q/p-1} t(k)^q`, no closed-form tail.
pub fn net_sum_partial(tilde: impl Fn(u64) -> f64, p: f64, q: f64, terms: u64) -> f64 {
    let mut s = 0.0;
    for k in 1..=terms {
        s += (k as f64).powf(q / p - 1.0) * tilde(k).powf(q);
    }
    s
}

/// `I_p` from per-block `Θ` values.
pub fn i_p(thetas: &[f64], p: f64) -> f64 {
    let pp = p / (p - 1.0);
    let mut s = 0.0;
    for (n, t) in thetas.iter().enumerate() {
        s += ((n as f64) / pp).exp2().powf(p) * t.powf(p);
    }
    s.powf(1.0 / p)
}

/// `â_{2^k}` for `k = 0..=max_level`, restricted to the chosen sides, from
/// running sums taken outward from 0.
pub fn hat_levels(
    offset: i64,
    v: &[Complex64],
    max_level: u32,
    positive: bool,
    negative: bool,
) -> Vec<f64> {
    let top = 1i64 << (max_level + 1);
    let mut out = vec![0.0_f64; max_level as usize + 1];
    let mut pos = get(offset, v, 0);
    let mut neg = pos;
    for m in 1..top {
        pos += get(offset, v, m);
        neg += get(offset, v, -m);
        let level = (63 - m.leading_zeros()) as usize;
        let d = (m + 1) as f64;
        if positive {
            out[level] = out[level].max(pos.norm() / d);
        }
        if negative {
            out[level] = out[level].max(neg.norm() / d);
        }
    }
    out
}

/// `J_p^*`: sorted moduli placed at `0, -1, 1, -2, 2, ...`.
pub fn j_p_star(v: &[Complex64], p: f64) -> f64 {
    let mut s = 0.0;
    for (i, m) in sorted_magnitudes(v).into_iter().enumerate() {
        let k = i.div_ceil(2);
        s += ((k + 1) as f64).powf(p - 2.0) * m.powf(p);
    }
    s.powf(1.0 / p)
}

/// Smallest `2^j ≥ n`.
fn ceil_log2(n: u64) -> u32 {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}

/// `ã_k` for `k = 1..=v.len()` and the constant `M` with `ã_k = M/k` beyond.
pub fn tilde_with_tail(offset: i64, v: &[Complex64]) -> (Vec<f64>, f64) {
    let d = v.len();
    let t = tilde_running(offset, v, d);
    let m = t[d - 1] * d as f64;
    (t, m)
}

/// Upper bound for `Σ_{k>n} k^{-s}` by the midpoint rule on a convex
/// integrand; exact up to `O(n^{-s-2})`.
fn power_tail_upper(s: f64, n: u64) -> f64 {
    (n as f64 + 0.5).powf(1.0 - s) / (s - 1.0)
}

/// `‖a‖_{n_{p,q}}^q` as a direct sum over `k ≤ D + extra` plus a rigorous
/// upper bound for the rest.
pub fn net_norm_pow(offset: i64, v: &[Complex64], p: f64, q: f64, extra: u64) -> f64 {
    let (t, m) = tilde_with_tail(offset, v);
    let mut s = 0.0;
    for (i, x) in t.iter().enumerate() {
        let k = (i + 1) as f64;
        s += k.powf(q / p - 1.0) * x.powf(q);
    }
    let expo = q + 1.0 - q / p;
    let d = v.len() as u64;
    let mut rest = 0.0;
    for k in d + 1..=d + extra {
        rest += (k as f64).powf(-expo);
    }
    rest += power_tail_upper(expo, d + extra);
    s + m.powf(q) * rest
}

pub fn net_norm(offset: i64, v: &[Complex64], p: f64, q: f64) -> f64 {
    net_norm_pow(offset, v, p, q, 1 << 16).powf(1.0 / q)
}

/// `(Σ_{j≥0} (2^{j/p} ã_{2^j})^q)^{1/q}` with the geometric tail summed in
/// closed form once `2^j ≥ D`.
pub fn net_norm_dyadic(offset: i64, v: &[Complex64], p: f64, q: f64) -> f64 {
    let (t, m) = tilde_with_tail(offset, v);
    let d = v.len() as u64;
    let j0 = ceil_log2(d);
    let mut s = 0.0;
    for j in 0..j0 {
        s += ((j as f64) / p).exp2().powf(q) * t[(1usize << j) - 1].powf(q);
    }
    // j ≥ j0: (2^{j/p} M 2^{-j})^q = M^q r^j
    let r = (-(q * (1.0 - 1.0 / p))).exp2();
    s += m.powf(q) * r.powi(j0 as i32) / (1.0 - r);
    s.powf(1.0 / q)
}

/// `f(x)` at each node by Horner's rule in `e^{ix}`.
pub fn evaluate_horner(offset: i64, v: &[Complex64], xs: &[f64]) -> Vec<Complex64> {
    xs.iter()
        .map(|&x| {
            let z = Complex64::new(x.cos(), x.sin());
            let mut acc = Complex64::new(0.0, 0.0);
            for a in v.iter().rev() {
                acc = acc * z + a;
            }
            let t = offset as f64 * x;
            acc * Complex64::new(t.cos(), t.sin())
        })
        .collect()
}

fn rectangle(values: &[Complex64], p: f64) -> f64 {
    let m = values.len();
    let s: f64 = values.iter().map(|z| z.norm().powf(p)).sum();
    (2.0 * PI / m as f64 * s).powf(1.0 / p)
}

/// Rectangle-rule `‖f‖_p` on `m_0, 2m_0, ...` nodes, stopping once two
/// successive values agree to `tol` or after `max_doublings` doublings;
/// `m_0` is the smallest power of two `≥ oversample (2R + 1)`.
pub fn lp_doubling(
    offset: i64,
    v: &[Complex64],
    p: f64,
    oversample: usize,
    tol: f64,
    max_doublings: u32,
) -> f64 {
    lp_doubling_many(offset, v, &[p], oversample, tol, max_doublings)[0]
}

/// [`lp_doubling`] for several exponents, evaluating each grid once.
pub fn lp_doubling_many(
    offset: i64,
    v: &[Complex64],
    ps: &[f64],
    oversample: usize,
    tol: f64,
    max_doublings: u32,
) -> Vec<f64> {
    let radius = offset
        .unsigned_abs()
        .max((offset + v.len() as i64 - 1).unsigned_abs());
    let m0 = (oversample * (2 * radius as usize + 1)).next_power_of_two();
    let mut grids: Vec<Vec<Complex64>> = Vec::new();
    let mut grid = |i: usize| -> Vec<Complex64> {
        while grids.len() <= i {
            let m = m0 << grids.len();
            let xs: Vec<f64> = (0..m)
                .map(|j| -PI + 2.0 * PI * j as f64 / m as f64)
                .collect();
            grids.push(evaluate_horner(offset, v, &xs));
        }
        grids[i].clone()
    };
    ps.iter()
        .map(|&p| {
            let mut value = rectangle(&grid(0), p);
            for i in 1..=max_doublings as usize {
                let next = rectangle(&grid(i), p);
                let close = (next - value).abs() <= tol * next;
                value = next;
                if close {
                    break;
                }
            }
            value
        })
        .collect()
}

/// `sup_k min(1, 2^{k-n}) â_{2^k}` for `n = 0..=top`, with `top` two
/// levels past the support radius.
pub fn hat_majorants(offset: i64, v: &[Complex64]) -> Vec<f64> {
    let radius = offset
        .unsigned_abs()
        .max((offset + v.len() as i64 - 1).unsigned_abs());
    let top = ceil_log2(radius + 1) + 2;
    let hats = hat_levels(offset, v, top, true, true);
    (0..=top)
        .map(|n| {
            let mut maj = 0.0_f64;
            for (k, h) in hats.iter().enumerate() {
                let w = if k as u32 >= n {
                    1.0
                } else {
                    (k as f64 - n as f64).exp2()
                };
                maj = maj.max(w * h);
            }
            maj
        })
        .collect()
}

fn best_ratio(pairs: impl Iterator<Item = (f64, f64)>) -> f64 {
    let mut best = 0.0_f64;
    for (num, den) in pairs {
        if num == 0.0 && den == 0.0 {
            continue;
        }
        best = best.max(if den == 0.0 { f64::INFINITY } else { num / den });
    }
    best
}

/// Best constant of `Θ_n ≤ C sup_k min(1, 2^{k-n}) â_{2^k}` over all
/// levels, skipping blocks where both sides vanish.
pub fn gm_bar_best(offset: i64, v: &[Complex64]) -> f64 {
    let maj = hat_majorants(offset, v);
    best_ratio(
        maj.iter()
            .enumerate()
            .map(|(n, m)| (theta(offset, v, n as u32), *m)),
    )
}

/// Best constant of `Σ_{2^n ≤ k ≤ 2^{n+1}} |a_k|/k ≤ C sup_k min(1, 2^{k-n}) â_{2^k}`.
pub fn gm_real_inclusion_best(offset: i64, v: &[Complex64]) -> f64 {
    let maj = hat_majorants(offset, v);
    best_ratio(maj.iter().enumerate().map(|(n, m)| {
        let lo = 1i64 << n;
        let s: f64 = (lo..=2 * lo)
            .map(|k| get(offset, v, k).norm() / k as f64)
            .sum();
        (s, *m)
    }))
}

/// Classical GM ratio at `n = 2^j`, `j = 0..=levels`, for the one-sided
/// sequence `b_1, b_2, ...` with `b_k = v[k - 1]`: the Δ-sum over
/// `[n, 2n]` divided by `(1/n) Σ_{n/λ ≤ k ≤ λn} |b_k|`. `None` marks 0/0.
pub fn gm_classic_dyadic(b: &[Complex64], lambda: f64, levels: u32) -> Vec<Option<f64>> {
    let at = |k: usize| {
        if k == 0 {
            Complex64::new(0.0, 0.0)
        } else {
            b.get(k - 1).copied().unwrap_or_default()
        }
    };
    (0..=levels)
        .map(|j| {
            let n = 1usize << j;
            let num: f64 = (n..=2 * n).map(|k| (at(k) - at(k + 1)).norm()).sum();
            let lo = ((n as f64 / lambda).ceil() as usize).max(1);
            let hi = (lambda * n as f64).floor() as usize;
            let den: f64 = (lo..=hi).map(|k| at(k).norm()).sum::<f64>() / n as f64;
            if num == 0.0 && den == 0.0 {
                None
            } else if den == 0.0 {
                Some(f64::INFINITY)
            } else {
                Some(num / den)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|x| Complex64::new(*x, 0.0)).collect()
    }

    #[test]
    fn window_enumerations_agree() {
        let v = real(&[1.0, -2.0, 0.5, 3.0, -1.0]);
        let a = window_means_cubic(-2, &v, 12);
        let b = window_means_running(-2, &v, 12);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-15);
        }
        assert_eq!(a[0], 3.0);
    }

    #[test]
    fn impulse() {
        let v = real(&[1.0]);
        let t = tilde_cubic(0, &v, 5);
        assert_eq!(t, vec![1.0, 0.5, 1.0 / 3.0, 0.25, 0.2]);
        assert_eq!(hat(0, &v, 0), 0.5);
        assert_eq!(theta(0, &v, 0), 2.0);
        assert!((lp_direct(0, &v, 3.0, 8) - (2.0 * PI).powf(1.0 / 3.0)).abs() < 1e-14);
    }
}
