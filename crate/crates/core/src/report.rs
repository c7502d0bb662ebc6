//! All functionals of one sequence at one exponent.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functionals::{i_p, j_p, j_p_star, Exponent};
use crate::netspace::{lorentz_norm, net_norm_with, NetAverages, NetIndex};
use crate::sequence::TwoSidedSequence;
use crate::trig::{lp_norm, QuadratureSpec};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ratio {
    pub label: String,
    pub value: f64,
}

/// `J_p`, `J_p^*`, `I_p`, `‖a‖_{n_{p',p}}`, `‖a‖_{l_{p',p}}` and `‖f‖_{L_p}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormReport {
    pub p: f64,
    pub p_prime: f64,
    pub j_p: f64,
    pub j_p_star: f64,
    pub i_p: f64,
    pub net_norm: f64,
    pub lorentz_norm: f64,
    pub lp_quadrature: f64,
    pub ratios: Vec<Ratio>,
    /// Whether the quadrature met its tolerance.
    #[serde(skip, default = "yes")]
    pub quadrature_converged: bool,
}

fn yes() -> bool {
    true
}

impl NormReport {
    pub fn compute(a: &TwoSidedSequence, p: Exponent, quad: &QuadratureSpec) -> Result<Self> {
        Self::compute_with(a, p, quad, &NetAverages::new(a))
    }

    /// As [`NormReport::compute`] with the interval averages of `a` supplied,
    /// so one table serves a whole grid of exponents.
    pub fn compute_with(
        a: &TwoSidedSequence,
        p: Exponent,
        quad: &QuadratureSpec,
        net: &NetAverages,
    ) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::ZeroSequence);
        }
        let p_prime = p.conjugate();
        let lp = lp_norm(a, p, quad)?;
        let jp = j_p(a, p);
        let jps = j_p_star(a, p);
        let ip = i_p(a, p, None)?;
        let net_norm = net_norm_with(net, p_prime, NetIndex::Finite(p.value()));
        let lorentz = lorentz_norm(a, p_prime, p.value())?;
        let value = lp.value;
        let ratios = [
            ("lp/j_p", value / jp),
            ("lp/j_p_star", value / jps),
            ("lp/i_p", value / ip),
            ("net_norm/lp", net_norm / value),
            ("j_p_star/lorentz", jps / lorentz),
        ]
        .into_iter()
        .map(|(label, value)| Ratio {
            label: label.to_owned(),
            value,
        })
        .collect();
        Ok(Self {
            p: p.value(),
            p_prime,
            j_p: jp,
            j_p_star: jps,
            i_p: ip,
            net_norm,
            lorentz_norm: lorentz,
            lp_quadrature: value,
            ratios,
            quadrature_converged: lp.converged,
        })
    }

    pub fn ratio(&self, label: &str) -> Option<f64> {
        self.ratios
            .iter()
            .find(|r| r.label == label)
            .map(|r| r.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn unit_impulse_report() {
        let p = Exponent::new(2.0).unwrap();
        let r =
            NormReport::compute(&TwoSidedSequence::unit(0), p, &QuadratureSpec::default()).unwrap();
        assert_eq!(r.j_p, 1.0);
        assert!((r.lp_quadrature - (2.0 * PI).sqrt()).abs() < 1e-14);
        assert!((r.ratio("lp/j_p").unwrap() - (2.0 * PI).sqrt()).abs() < 1e-14);
        assert_eq!(r.p_prime, 2.0);
        assert!(r.quadrature_converged);
    }

    #[test]
    fn json_field_names() {
        let p = Exponent::new(3.0).unwrap();
        let a = TwoSidedSequence::from_real(-1, &[1.0, 2.0, 0.5]).unwrap();
        let r = NormReport::compute(&a, p, &QuadratureSpec::default()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        let mut expected = vec![
            "p",
            "p_prime",
            "j_p",
            "j_p_star",
            "i_p",
            "net_norm",
            "lorentz_norm",
            "lp_quadrature",
            "ratios",
        ];
        let mut got = keys.clone();
        expected.sort();
        got.sort();
        assert_eq!(got, expected);
        assert!((1.0 / r.p + 1.0 / r.p_prime - 1.0).abs() < 1e-15);
    }

    #[test]
    fn zero_sequence_rejected() {
        let p = Exponent::new(2.0).unwrap();
        let z = TwoSidedSequence::zeros(0, 4).unwrap();
        assert!(NormReport::compute(&z, p, &QuadratureSpec::default()).is_err());
    }
}
