//! Per-level dyadic data: block sums `Θ_n`, averages `ã_{2^n}`, `â_{2^n}` and
//! their majorants `sup_k min(1, 2^{k-n}) avg_{2^k}`.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::functionals::{default_levels, theta_blocks};
use crate::io::fmt_real;
use crate::netspace::{HatAverages, HatSide, NetAverages};
use crate::sequence::TwoSidedSequence;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DyadicProfile {
    pub levels: usize,
    pub theta: Vec<f64>,
    pub tilde_avg: Vec<f64>,
    pub hat_avg: Vec<f64>,
    pub majorant_tilde: Vec<f64>,
    pub majorant_hat: Vec<f64>,
}

/// Level count used by the class diagnostics: the stored window plus one
/// empty block.
pub fn diagnostic_levels(a: &TwoSidedSequence) -> usize {
    default_levels(a) + 1
}

/// `sup_{k ≥ 0} min(1, 2^{k-n}) v_k` for each `n < v.len()`, given
/// `sup_{k ≥ n} v_k` as `upper[n]`.
fn majorant(v: &[f64], upper: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(v.len());
    // running = max_{k<n} 2^{k-n} v_k
    let mut running = 0.0_f64;
    for n in 0..v.len() {
        if n > 0 {
            running = 0.5 * running.max(v[n - 1]);
        }
        out.push(running.max(upper[n]));
    }
    out
}

impl DyadicProfile {
    /// Profile over `levels` levels (default: [`diagnostic_levels`]).
    /// Computing `ã` exactly costs `O(D²)` in the support diameter `D`.
    pub fn new(a: &TwoSidedSequence, levels: Option<usize>) -> Self {
        Self::with_averages(a, levels, &NetAverages::new(a))
    }

    pub fn with_averages(a: &TwoSidedSequence, levels: Option<usize>, net: &NetAverages) -> Self {
        let levels = levels.unwrap_or_else(|| diagnostic_levels(a)).max(1);
        let theta = theta_blocks(a, levels);
        let tilde_avg: Vec<f64> = (0..levels as u32).map(|n| net.tilde_dyadic(n)).collect();
        // ã is nonincreasing, so its tail supremum is the current value.
        let majorant_tilde = majorant(&tilde_avg, &tilde_avg);

        let hats = HatAverages::new(a);
        let hat_avg: Vec<f64> = (0..levels as u32)
            .map(|n| hats.hat(n, HatSide::Both))
            .collect();
        // â is nonincreasing from the decay level on; scan up to there.
        let reach = (hats.decay_level() as usize).max(levels);
        let mut upper = vec![0.0; levels];
        let mut acc = (levels as u32..=reach as u32)
            .map(|n| hats.hat(n, HatSide::Both))
            .fold(0.0, f64::max);
        for n in (0..levels).rev() {
            acc = acc.max(hat_avg[n]);
            upper[n] = acc;
        }
        let majorant_hat = majorant(&hat_avg, &upper);

        Self {
            levels,
            theta,
            tilde_avg,
            hat_avg,
            majorant_tilde,
            majorant_hat,
        }
    }

    /// CSV with columns `n,theta,tilde_avg,hat_avg,majorant_tilde,majorant_hat`.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "n,theta,tilde_avg,hat_avg,majorant_tilde,majorant_hat")?;
        for n in 0..self.levels {
            writeln!(
                w,
                "{n},{},{},{},{},{}",
                fmt_real(self.theta[n]),
                fmt_real(self.tilde_avg[n]),
                fmt_real(self.hat_avg[n]),
                fmt_real(self.majorant_tilde[n]),
                fmt_real(self.majorant_hat[n]),
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_impulse_profile() {
        let a = TwoSidedSequence::unit(0);
        let pr = DyadicProfile::new(&a, Some(4));
        assert_eq!(pr.theta, vec![2.0, 0.0, 0.0, 0.0]);
        assert_eq!(pr.tilde_avg, vec![1.0, 0.5, 0.25, 0.125]);
        assert_eq!(pr.majorant_tilde, pr.tilde_avg);
        assert_eq!(pr.hat_avg[0], 0.5);
        for n in 0..4 {
            assert!(pr.majorant_hat[n] >= pr.hat_avg[n]);
        }
    }

    #[test]
    fn majorant_weights_earlier_levels() {
        let v = [8.0, 0.0, 0.0, 1.0];
        let m = majorant(&v, &[8.0, 1.0, 1.0, 1.0]);
        assert_eq!(m, vec![8.0, 4.0, 2.0, 1.0]);
    }

    #[test]
    fn hat_majorant_looks_past_levels() {
        // â peaks at level 3 but only two levels are requested
        let a = TwoSidedSequence::from_fn(0, 12, |k| {
            num_complex::Complex64::new(if k >= 8 { 1.0 } else { 0.0 }, 0.0)
        })
        .unwrap();
        let pr = DyadicProfile::new(&a, Some(2));
        let peak = crate::netspace::hat_average(&a, 3);
        assert!(peak > 0.0);
        assert_eq!(pr.majorant_hat[1], peak);
    }

    #[test]
    fn csv_layout() {
        let pr = DyadicProfile::new(&TwoSidedSequence::unit(1), None);
        let mut out = Vec::new();
        pr.write_csv(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next(),
            Some("n,theta,tilde_avg,hat_avg,majorant_tilde,majorant_hat")
        );
        assert_eq!(lines.count(), pr.levels);
    }
}
