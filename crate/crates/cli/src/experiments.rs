use std::io::Write;

use gmseq::classes::{
    gm_bar_diagnostic, gm_bar_from_profile, gm_classic_diagnostic, gm_real_inclusion_from_profile,
    gm_star_from_profile, wm_diagnostic, ClassicGrid,
};
use gmseq::functionals::j_p;
use gmseq::io::fmt_real;
use gmseq::trig::{apply_multiplier, lp_norm};
use gmseq::{
    ClassDiagnostic, ClassName, DyadicProfile, Exponent, Multiplier, NetAverages, NormReport,
    QuadratureSpec, TwoSidedSequence, Verdict,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{ExperimentConfig, Source};
use crate::ConfigError;

/// One [`NormReport`] per exponent of the grid.
pub fn run_norms(cfg: &ExperimentConfig) -> Result<Vec<NormReport>, ConfigError> {
    cfg.validate()?;
    let a = cfg.load()?;
    norms_of(&a, &cfg.exponents(), &cfg.quadrature)
}

pub fn norms_of(
    a: &TwoSidedSequence,
    ps: &[Exponent],
    quad: &QuadratureSpec,
) -> Result<Vec<NormReport>, ConfigError> {
    if a.is_zero() {
        return Err(gmseq::Error::ZeroSequence.into());
    }
    let net = NetAverages::new(a);
    ps.par_iter()
        .map(|p| NormReport::compute_with(a, *p, quad, &net).map_err(ConfigError::from))
        .collect()
}

/// Diagnostics for each requested class, in the order given.
pub fn run_classify(
    a: &TwoSidedSequence,
    classes: &[ClassName],
    lambda: f64,
    grid: ClassicGrid,
) -> Result<Vec<ClassDiagnostic>, ConfigError> {
    if a.is_zero() {
        return Err(gmseq::Error::ZeroSequence.into());
    }
    let needs_profile = classes.iter().any(|c| {
        matches!(
            c,
            ClassName::GmStar | ClassName::GmBar | ClassName::GmRealInclusion
        )
    });
    let profile = needs_profile.then(|| {
        let net = if classes.contains(&ClassName::GmStar) {
            NetAverages::new(a)
        } else {
            NetAverages::new(&TwoSidedSequence::unit(0))
        };
        DyadicProfile::with_averages(a, None, &net)
    });
    let positive = a.positive_part();
    classes
        .iter()
        .map(|c| {
            Ok(match c {
                ClassName::GmStar => gm_star_from_profile(profile.as_ref().expect("profile")),
                ClassName::GmBar => gm_bar_from_profile(profile.as_ref().expect("profile")),
                ClassName::GmRealInclusion => {
                    gm_real_inclusion_from_profile(a, profile.as_ref().expect("profile"))
                }
                ClassName::Gm => gm_classic_diagnostic(&positive, lambda, grid)?,
                ClassName::Wm => wm_diagnostic(&positive),
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceRow {
    pub size: usize,
    pub p: f64,
    pub lp: f64,
    pub j_p: f64,
    pub ratio: f64,
    pub min_ratio: f64,
    pub max_ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct EquivalenceTable {
    pub rows: Vec<EquivalenceRow>,
    pub warnings: Vec<String>,
}

impl EquivalenceTable {
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "size,p,lp,j_p,ratio,min_ratio,max_ratio")?;
        for r in &self.rows {
            writeln!(
                w,
                "{},{},{},{},{},{},{}",
                r.size,
                fmt_real(r.p),
                fmt_real(r.lp),
                fmt_real(r.j_p),
                fmt_real(r.ratio),
                fmt_real(r.min_ratio),
                fmt_real(r.max_ratio)
            )?;
        }
        Ok(())
    }

    /// Rows for one exponent, in size order.
    pub fn for_p(&self, p: f64) -> Vec<&EquivalenceRow> {
        self.rows.iter().filter(|r| r.p == p).collect()
    }
}

/// `‖f‖_p / J_p` for a family across truncation sizes.
pub fn run_equivalence(cfg: &ExperimentConfig) -> Result<EquivalenceTable, ConfigError> {
    cfg.validate()?;
    let Some(Source::Family { spec, .. }) = &cfg.source else {
        return Err(ConfigError::new("equivalence needs a family spec"));
    };
    let spec = cfg.family_spec(spec)?;
    let sequences = cfg
        .sizes
        .iter()
        .map(|&n| spec.generate(n))
        .collect::<Result<Vec<_>, _>>()?;
    if sequences.iter().any(TwoSidedSequence::is_zero) {
        return Err(ConfigError::new(
            "the family is identically zero at some size",
        ));
    }
    let mut warnings = Vec::new();
    let largest = sequences.last().expect("sizes validated non-empty");
    let verdict = gm_bar_diagnostic(largest)?.verdict;
    if verdict != Verdict::Bounded {
        warnings.push(format!(
            "GM-bar diagnostic at size {} is {verdict}; the equivalence need not hold",
            cfg.sizes.last().expect("non-empty")
        ));
    }
    let ps = cfg.exponents();
    let cells: Vec<(usize, usize)> = (0..ps.len())
        .flat_map(|i| (0..sequences.len()).map(move |j| (i, j)))
        .collect();
    let values = cells
        .par_iter()
        .map(|&(i, j)| {
            let lp = lp_norm(&sequences[j], ps[i], &cfg.quadrature)?;
            Ok((lp, j_p(&sequences[j], ps[i])))
        })
        .collect::<Result<Vec<_>, gmseq::Error>>()?;
    let mut rows = Vec::with_capacity(cells.len());
    for (i, p) in ps.iter().enumerate() {
        let block = &values[i * sequences.len()..(i + 1) * sequences.len()];
        let ratios: Vec<f64> = block.iter().map(|(lp, j)| lp.value / j).collect();
        let min_ratio = ratios.iter().copied().fold(f64::INFINITY, f64::min);
        let max_ratio = ratios.iter().copied().fold(0.0, f64::max);
        for (j, (lp, jp)) in block.iter().enumerate() {
            if !lp.converged {
                warnings.push(format!(
                    "quadrature did not converge for size {}, p = {}",
                    cfg.sizes[j],
                    p.value()
                ));
            }
            rows.push(EquivalenceRow {
                size: cfg.sizes[j],
                p: p.value(),
                lp: lp.value,
                j_p: *jp,
                ratio: ratios[j],
                min_ratio,
                max_ratio,
            });
        }
    }
    Ok(EquivalenceTable { rows, warnings })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultiplierRow {
    pub p: f64,
    pub j_p: f64,
    pub j_p_multiplied: f64,
    pub lp: f64,
    pub lp_multiplied: f64,
    pub lp_relative_change: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MultiplierReport {
    pub sequence: TwoSidedSequence,
    pub rows: Vec<MultiplierRow>,
}

impl MultiplierReport {
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(
            w,
            "p,j_p,j_p_multiplied,lp,lp_multiplied,lp_relative_change"
        )?;
        for r in &self.rows {
            writeln!(
                w,
                "{},{},{},{},{},{}",
                fmt_real(r.p),
                fmt_real(r.j_p),
                fmt_real(r.j_p_multiplied),
                fmt_real(r.lp),
                fmt_real(r.lp_multiplied),
                fmt_real(r.lp_relative_change)
            )?;
        }
        Ok(())
    }
}

/// Applies `m` and compares `J_p` and `‖f‖_p` before and after.
pub fn run_multiplier(
    a: &TwoSidedSequence,
    m: &Multiplier,
    ps: &[Exponent],
    quad: &QuadratureSpec,
) -> Result<MultiplierReport, ConfigError> {
    let b = apply_multiplier(a, m)?;
    let rows = ps
        .par_iter()
        .map(|&p| {
            let (lp, lq) = (lp_norm(a, p, quad)?.value, lp_norm(&b, p, quad)?.value);
            Ok(MultiplierRow {
                p: p.value(),
                j_p: j_p(a, p),
                j_p_multiplied: j_p(&b, p),
                lp,
                lp_multiplied: lq,
                lp_relative_change: if lp == 0.0 { 0.0 } else { (lq - lp).abs() / lp },
            })
        })
        .collect::<Result<Vec<_>, gmseq::Error>>()?;
    Ok(MultiplierReport { sequence: b, rows })
}

/// Diagnostics as CSV blocks, one per class, each preceded by `# class`.
pub fn write_diagnostics_csv<W: Write>(
    mut w: W,
    diags: &[ClassDiagnostic],
) -> Result<(), ConfigError> {
    for d in diags {
        writeln!(
            w,
            "# {} verdict={} best_constant={}",
            d.class_name,
            d.verdict,
            fmt_real(d.best_constant)
        )?;
        d.write_csv(&mut w)?;
    }
    Ok(())
}
