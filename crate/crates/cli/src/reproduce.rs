//! Per-level checks of the displayed inequalities behind the three
//! counterexample propositions.
//!
//! | example | check | inequality |
//! |---|---|---|
//! | gap | `gm-lhs-lower`, `gm-lhs-upper` | `Σ_{k=2^n}^{2^{n+1}} \|Δa_k\| ≍ √n/2^n` (frozen bracket) |
//! | gap | `gm-rhs` | `(1/2^n) Σ_{2^n/λ}^{λ2^n} \|a_k\| ≤ (3 + 2 log₂ λ)/2^n`, λ = 2 |
//! | gap | `gm-ratio-sqrt` | classical GM ratio `≥ 0.3 √n` |
//! | gap | `hat-growth` | `â_{2^n} ≳ n/2^n` (frozen constant) |
//! | gap | `gm-bar-*`, `gm-verdict` | in GM̄, one-sided part not in GM |
//! | compensated | `delta-block` | `Σ_{k=2^n}^{2^{n+1}-1} \|Δc_k\| < 5 (2/3)^n` |
//! | compensated | `tilde-lower` | `c̃_{2^n} ≥ (3/4)(2/3)^n` |
//! | compensated | `delta-vs-tilde` | `Σ \|Δc_k\| ≤ (20/3) c̃_{2^n}` |
//! | compensated | `real-gm-rate`, `real-gm-verdict` | real part not in GM (frozen rate) |
//! | compensated | `gm-bar-verdict` | `c ∈ GM̄` |
//! | lacunary | `negative-delta-block` | `Σ_{-2^n<i≤-2^{n-1}} \|Δc_i\| ≥ (2/3)^n` |
//! | lacunary | `negative-hat` | `ĉ⁻_{2^k} ≲ 1/2^k` (frozen constant) |
//! | lacunary | `hat-lower` | `ĉ_{2^{n+2}} ≥ (3/4)(2/3)^n` |
//! | lacunary | `negative-gm-bar-verdict` | negative side not in GM̄ |
//! | lacunary | `gm-bar-*` | full sequence in GM̄ |

use std::fmt;
use std::io::Write;

use gmseq::classes::{gm_bar_diagnostic, gm_classic_diagnostic, ClassicGrid};
use gmseq::generators::{make_example, ExampleName};
use gmseq::io::fmt_real;
use gmseq::netspace::{hat_average, tilde_average, HatAverages, HatSide};
use gmseq::{Complex64, TwoSidedSequence, Verdict};
use serde::{Deserialize, Serialize};

use crate::fixtures::{FrozenConstants, FROZEN_SLACK};
use crate::ConfigError;

pub const MIN_NMAX: u32 = 6;
pub const MAX_NMAX: u32 = 20;
/// Longest support for which `c̃` is computed exactly; past it the check
/// uses the witness window `[0, 2^n - 1]`, a lower bound.
pub const EXACT_TILDE_LIMIT: usize = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "==")]
    Eq,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Lt => "<",
            Self::Le => "<=",
            Self::Ge => ">=",
            Self::Eq => "==",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Pass => "PASS",
            Self::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub check: String,
    pub n: Option<u32>,
    pub value: String,
    pub bound: String,
    pub relation: Relation,
    pub status: Status,
}

impl Row {
    /// `value relation bound`, with `slack` relative tolerance in the
    /// permissive direction (zero for displayed inequalities).
    fn numeric(
        check: &str,
        n: Option<u32>,
        value: f64,
        relation: Relation,
        bound: f64,
        slack: f64,
    ) -> Self {
        let ok = match relation {
            Relation::Lt => value < bound,
            Relation::Le => value <= bound * (1.0 + slack),
            Relation::Ge => value >= bound * (1.0 - slack),
            Relation::Eq => (value - bound).abs() <= slack * bound.abs(),
        };
        Self {
            check: check.to_owned(),
            n,
            value: fmt_real(value),
            bound: fmt_real(bound),
            relation,
            status: if ok { Status::Pass } else { Status::Fail },
        }
    }

    fn verdict(check: &str, got: Verdict, want: Verdict) -> Self {
        Self {
            check: check.to_owned(),
            n: None,
            value: got.to_string(),
            bound: want.to_string(),
            relation: Relation::Eq,
            status: if got == want {
                Status::Pass
            } else {
                Status::Fail
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReproductionTable {
    pub example: String,
    pub nmax: u32,
    pub rows: Vec<Row>,
    pub notes: Vec<String>,
}

impl ReproductionTable {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(|r| r.status == Status::Fail)
    }

    /// 0 when every row passes, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "check,n,value,bound,relation,status")?;
        for r in &self.rows {
            let n = r.n.map(|n| n.to_string()).unwrap_or_default();
            writeln!(
                w,
                "{},{n},{},{},{},{}",
                r.check, r.value, r.bound, r.relation, r.status
            )?;
        }
        Ok(())
    }
}

fn two_thirds(n: u32) -> f64 {
    (0..n).fold(1.0, |acc, _| acc * (2.0 / 3.0))
}

fn delta_sum(a: &TwoSidedSequence, lo: i64, hi: i64) -> f64 {
    (lo..=hi).map(|k| a.delta_abs(k)).sum()
}

/// Runs every check for `name` with blocks up to `nmax ∈ [6, 20]`.
pub fn run_reproduce(
    name: ExampleName,
    nmax: u32,
    frozen: &FrozenConstants,
) -> Result<ReproductionTable, ConfigError> {
    if !(MIN_NMAX..=MAX_NMAX).contains(&nmax) {
        return Err(ConfigError::new(format!(
            "nmax must lie in [{MIN_NMAX}, {MAX_NMAX}], got {nmax}"
        )));
    }
    let a = make_example(name, nmax)?;
    let mut table = ReproductionTable {
        example: name.to_string(),
        nmax,
        rows: Vec::new(),
        notes: Vec::new(),
    };
    match name {
        ExampleName::Gap => gap(&a, nmax, frozen, &mut table)?,
        ExampleName::Compensated => compensated(&a, nmax, frozen, &mut table)?,
        ExampleName::Lacunary => lacunary(&a, nmax, frozen, &mut table)?,
    }
    Ok(table)
}

fn gap(
    a: &TwoSidedSequence,
    nmax: u32,
    frozen: &FrozenConstants,
    t: &mut ReproductionTable,
) -> Result<(), ConfigError> {
    let c = &frozen.gap;
    let classic = gm_classic_diagnostic(&a.positive_part(), 2.0, ClassicGrid::Dyadic)?;
    let hats = HatAverages::new(a);
    for n in 5..=nmax {
        let i = classic
            .block_index
            .iter()
            .position(|b| *b == n as u64)
            .ok_or_else(|| ConfigError::new(format!("no GM block at n = {n}")))?;
        let scale = (n as f64).exp2();
        let lhs = classic.numerator[i] * scale / (n as f64).sqrt();
        t.rows.push(Row::numeric(
            "gm-lhs-lower",
            Some(n),
            lhs,
            Relation::Ge,
            c.delta_block_min,
            FROZEN_SLACK,
        ));
        t.rows.push(Row::numeric(
            "gm-lhs-upper",
            Some(n),
            lhs,
            Relation::Le,
            c.delta_block_max,
            FROZEN_SLACK,
        ));
        t.rows.push(Row::numeric(
            "gm-rhs",
            Some(n),
            classic.denominator[i],
            Relation::Le,
            5.0 / scale,
            0.0,
        ));
        t.rows.push(Row::numeric(
            "gm-ratio-sqrt",
            Some(n),
            classic.ratio[i],
            Relation::Ge,
            0.3 * (n as f64).sqrt(),
            0.0,
        ));
        let growth = hats.hat(n, HatSide::Both) * scale / n as f64;
        t.rows.push(Row::numeric(
            "hat-growth",
            Some(n),
            growth,
            Relation::Ge,
            c.hat_growth_min,
            FROZEN_SLACK,
        ));
    }
    let bar = gm_bar_diagnostic(a)?;
    t.rows.push(Row::numeric(
        "gm-bar-best-constant",
        None,
        bar.best_constant,
        Relation::Le,
        c.gm_bar_best_max,
        FROZEN_SLACK,
    ));
    t.rows.push(Row::verdict(
        "gm-bar-verdict",
        bar.verdict,
        Verdict::Bounded,
    ));
    t.rows.push(Row::verdict(
        "gm-verdict",
        classic.verdict,
        Verdict::Growing,
    ));
    Ok(())
}

fn compensated(
    a: &TwoSidedSequence,
    nmax: u32,
    frozen: &FrozenConstants,
    t: &mut ReproductionTable,
) -> Result<(), ConfigError> {
    let exact = a.len() <= EXACT_TILDE_LIMIT;
    if !exact {
        t.notes.push(format!(
            "support has {} coefficients; c̃_{{2^n}} is replaced by the witness |Σ_{{0 ≤ j < 2^n}} c_j| / 2^n, a lower bound",
            a.len()
        ));
    }
    for n in 4..=nmax {
        let lo = 1i64 << n;
        let block = delta_sum(a, lo, 2 * lo - 1);
        let tilde = if exact {
            tilde_average(a, 1 << n)?
        } else {
            let s: Complex64 = (0..lo).map(|j| a.get(j)).sum();
            s.norm() / lo as f64
        };
        t.rows.push(Row::numeric(
            "delta-block",
            Some(n),
            block,
            Relation::Lt,
            5.0 * two_thirds(n),
            0.0,
        ));
        t.rows.push(Row::numeric(
            "tilde-lower",
            Some(n),
            tilde,
            Relation::Ge,
            0.75 * two_thirds(n),
            0.0,
        ));
        t.rows.push(Row::numeric(
            "delta-vs-tilde",
            Some(n),
            block / tilde,
            Relation::Le,
            20.0 / 3.0,
            0.0,
        ));
    }
    let bar = gm_bar_diagnostic(a)?;
    t.rows.push(Row::verdict(
        "gm-bar-verdict",
        bar.verdict,
        Verdict::Bounded,
    ));
    let real: Vec<Complex64> = a
        .positive_part()
        .iter()
        .map(|z| Complex64::new(z.re, 0.0))
        .collect();
    let classic = gm_classic_diagnostic(&real, 2.0, ClassicGrid::Dyadic)?;
    for j in 4..=nmax {
        if let Some(r) = classic.ratio_at(j as u64) {
            let rate = r / (j as f64 / 4.0).exp2();
            t.rows.push(Row::numeric(
                "real-gm-rate",
                Some(j),
                rate,
                Relation::Ge,
                frozen.compensated.classic_rate_min,
                FROZEN_SLACK,
            ));
        }
    }
    t.rows.push(Row::verdict(
        "real-gm-verdict",
        classic.verdict,
        Verdict::Growing,
    ));
    Ok(())
}

fn lacunary(
    a: &TwoSidedSequence,
    nmax: u32,
    frozen: &FrozenConstants,
    t: &mut ReproductionTable,
) -> Result<(), ConfigError> {
    let c = &frozen.lacunary;
    for n in 2..=nmax {
        let lo = -(1i64 << n) + 1;
        let hi = -(1i64 << (n - 1));
        t.rows.push(Row::numeric(
            "negative-delta-block",
            Some(n),
            delta_sum(a, lo, hi),
            Relation::Ge,
            two_thirds(n),
            0.0,
        ));
    }
    let hats = HatAverages::new(a);
    for k in 1..=nmax {
        let v = hats.hat(k, HatSide::Negative) * (k as f64).exp2();
        t.rows.push(Row::numeric(
            "negative-hat",
            Some(k),
            v,
            Relation::Le,
            c.negative_hat_max,
            FROZEN_SLACK,
        ));
    }
    for n in 4..nmax {
        t.rows.push(Row::numeric(
            "hat-lower",
            Some(n),
            hat_average(a, n + 2),
            Relation::Ge,
            0.75 * two_thirds(n),
            0.0,
        ));
    }
    let negative = a.restrict(a.k_min(), 0);
    t.rows.push(Row::verdict(
        "negative-gm-bar-verdict",
        gm_bar_diagnostic(&negative)?.verdict,
        Verdict::Growing,
    ));
    let bar = gm_bar_diagnostic(a)?;
    t.rows.push(Row::numeric(
        "gm-bar-best-constant",
        None,
        bar.best_constant,
        Relation::Le,
        c.gm_bar_best_max,
        FROZEN_SLACK,
    ));
    t.rows.push(Row::verdict(
        "gm-bar-verdict",
        bar.verdict,
        Verdict::Bounded,
    ));
    Ok(())
}
