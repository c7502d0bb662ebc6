use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gmseq::classes::ClassicGrid;
use gmseq::generators::ExampleName;
use gmseq::io::{sequence_to_json, write_sequence};
use gmseq::trig::write_grid_csv;
use gmseq::{ClassName, DyadicProfile, Multiplier, QuadratureSpec};
use gmseq_cli::config::{parse_p_grid, parse_sizes};
use gmseq_cli::experiments::{norms_of, write_diagnostics_csv};
use gmseq_cli::fixtures::FrozenConstants;
use gmseq_cli::{
    run_classify, run_equivalence, run_multiplier, run_reproduce, write_output, Command,
    ConfigError, ExperimentConfig, Source,
};

#[derive(Parser)]
#[command(
    name = "gmseq",
    version,
    about = "Two-sided general monotone sequences and Fourier norm experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Paley-type functionals, net and Lorentz norms, and the quadrature L_p norm.
    Norms {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated exponents in (1, inf).
        #[arg(long = "p", default_value = "2")]
        p: String,
        #[command(flatten)]
        quad: QuadArgs,
        /// Also write f(x_j) on a uniform grid as CSV.
        #[arg(long, value_name = "FILE")]
        dump_grid: Option<PathBuf>,
        /// Grid size for --dump-grid.
        #[arg(long, default_value_t = 1024)]
        grid_size: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Class-membership diagnostics.
    Classify {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated subset of gm, wm, gm-star, gm-bar, gm-real-inclusion.
        #[arg(long, default_value = "gm,wm,gm-star,gm-bar,gm-real-inclusion")]
        classes: String,
        #[arg(long, default_value_t = 2.0)]
        lambda: f64,
        #[arg(long, value_enum, default_value_t = GridArg::Dyadic)]
        grid: GridArg,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Per-level checks of a counterexample; exits 1 when any row fails.
    Reproduce {
        /// prop-5-gap, prop-6-compensated or prop-7-lacunary.
        name: String,
        #[arg(long, default_value_t = 12)]
        nmax: u32,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep of ‖f‖_p / J_p over truncation sizes.
    Equivalence {
        #[arg(long)]
        family: String,
        #[arg(long = "p", default_value = "2")]
        p: String,
        /// `2^6..2^12` or a comma-separated list.
        #[arg(long)]
        sizes: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        quad: QuadArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Applies a ±1 multiplier and compares J_p and ‖f‖_p.
    Multiplier {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Comma-separated ±1 entries for --kind explicit.
        #[arg(long, allow_hyphen_values = true)]
        signs: Option<String>,
        /// Index of the first entry of --signs.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        sign_offset: i64,
        #[arg(long = "p", default_value = "2")]
        p: String,
        #[command(flatten)]
        quad: QuadArgs,
        /// Also write the multiplied sequence (.json or .csv).
        #[arg(long, value_name = "FILE")]
        write_sequence: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dyadic profile: Θ_n, ã_{2^n}, â_{2^n} and their majorants.
    Profile {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        levels: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Writes a generated sequence (.json or .csv by extension, JSON on stdout).
    Generate {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Sequence file (.json or .csv).
    #[arg(long, conflicts_with_all = ["family", "example"])]
    input: Option<PathBuf>,
    /// Family spec such as `power:alpha=0.75` or `random:seed=3`.
    #[arg(long, requires = "size", conflicts_with = "example")]
    family: Option<String>,
    #[arg(long)]
    size: Option<usize>,
    /// prop-5-gap, prop-6-compensated or prop-7-lacunary.
    #[arg(long)]
    example: Option<String>,
    #[arg(long, default_value_t = 8)]
    nmax: u32,
    /// Seed for random families that do not name one.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl InputArgs {
    fn source(&self) -> Option<Source> {
        if let Some(p) = &self.input {
            Some(Source::File(p.clone()))
        } else if let Some(spec) = &self.family {
            Some(Source::Family {
                spec: spec.clone(),
                size: self.size.unwrap_or_default(),
            })
        } else {
            self.example.as_ref().map(|name| Source::Example {
                name: name.clone(),
                nmax: self.nmax,
            })
        }
    }
}

#[derive(Args)]
struct QuadArgs {
    /// Minimum number of grid points.
    #[arg(long, default_value_t = 0)]
    samples: usize,
    #[arg(long, default_value_t = 4)]
    oversample: usize,
    #[arg(long, default_value_t = 1e-6)]
    tolerance: f64,
    #[arg(long, default_value_t = 6)]
    max_doublings: u32,
}

impl QuadArgs {
    fn spec(&self) -> QuadratureSpec {
        QuadratureSpec {
            sample_count: self.samples,
            oversample: self.oversample,
            refine_tolerance: self.tolerance,
            max_doublings: self.max_doublings,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GridArg {
    Dyadic,
    Full,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Alternating,
    DyadicSign,
    Explicit,
}

fn config(
    command: Command,
    input: &InputArgs,
    p: &str,
    quad: &QuadArgs,
) -> Result<ExperimentConfig, ConfigError> {
    let mut cfg = ExperimentConfig::new(command);
    cfg.source = input.source();
    cfg.p_grid = parse_p_grid(p)?;
    cfg.seed = input.seed;
    cfg.quadrature = quad.spec();
    cfg.validate()?;
    Ok(cfg)
}

fn json_bytes<T: serde::Serialize>(v: &T) -> Result<Vec<u8>, ConfigError> {
    let mut s = serde_json::to_vec_pretty(v)?;
    s.push(b'\n');
    Ok(s)
}

fn run(cli: Cli) -> Result<i32, ConfigError> {
    match cli.command {
        Cmd::Norms {
            input,
            p,
            quad,
            dump_grid,
            grid_size,
            out,
        } => {
            let cfg = config(Command::Norms, &input, &p, &quad)?;
            let a = cfg.load()?;
            let reports = norms_of(&a, &cfg.exponents(), &cfg.quadrature)?;
            if let Some(path) = dump_grid {
                if grid_size == 0 {
                    return Err(ConfigError::new("--grid-size must be positive"));
                }
                let mut buf = Vec::new();
                write_grid_csv(&mut buf, &a, grid_size)?;
                write_output(Some(&path), &buf)?;
            }
            for r in reports.iter().filter(|r| !r.quadrature_converged) {
                eprintln!("warning: quadrature did not converge at p = {}", r.p);
            }
            write_output(out.as_deref(), &json_bytes(&reports)?)?;
        }
        Cmd::Classify {
            input,
            classes,
            lambda,
            grid,
            format,
            out,
        } => {
            let cfg = config(Command::Classify, &input, "2", &QuadArgs::parse_default())?;
            if !(lambda >= 1.0 && lambda.is_finite()) {
                return Err(ConfigError::new(format!(
                    "lambda must be a finite number >= 1, got {lambda}"
                )));
            }
            let names = classes
                .split(',')
                .map(|s| s.trim().parse::<ClassName>())
                .collect::<Result<Vec<_>, _>>()?;
            let grid = match grid {
                GridArg::Dyadic => ClassicGrid::Dyadic,
                GridArg::Full => ClassicGrid::Full,
            };
            let diags = run_classify(&cfg.load()?, &names, lambda, grid)?;
            let bytes = match format {
                Format::Json => json_bytes(&diags)?,
                Format::Csv => {
                    let mut buf = Vec::new();
                    write_diagnostics_csv(&mut buf, &diags)?;
                    buf
                }
            };
            write_output(out.as_deref(), &bytes)?;
        }
        Cmd::Reproduce {
            name,
            nmax,
            format,
            out,
        } => {
            let name: ExampleName = name.parse()?;
            let table = run_reproduce(name, nmax, &FrozenConstants::load())?;
            let bytes = match format {
                Format::Json => json_bytes(&table)?,
                Format::Csv => {
                    let mut buf = Vec::new();
                    table.write_csv(&mut buf)?;
                    buf
                }
            };
            for note in &table.notes {
                eprintln!("note: {note}");
            }
            write_output(out.as_deref(), &bytes)?;
            return Ok(table.exit_code());
        }
        Cmd::Equivalence {
            family,
            p,
            sizes,
            seed,
            quad,
            out,
        } => {
            let mut cfg = ExperimentConfig::new(Command::Equivalence);
            cfg.sizes = parse_sizes(&sizes)?;
            cfg.source = Some(Source::Family {
                spec: family,
                size: *cfg.sizes.last().unwrap_or(&0),
            });
            cfg.p_grid = parse_p_grid(&p)?;
            cfg.seed = seed;
            cfg.quadrature = quad.spec();
            let table = run_equivalence(&cfg)?;
            for w in &table.warnings {
                eprintln!("warning: {w}");
            }
            let mut buf = Vec::new();
            table.write_csv(&mut buf)?;
            write_output(out.as_deref(), &buf)?;
        }
        Cmd::Multiplier {
            input,
            kind,
            signs,
            sign_offset,
            p,
            quad,
            write_sequence: seq_out,
            out,
        } => {
            let cfg = config(Command::Multiplier, &input, &p, &quad)?;
            let m = match (kind, signs) {
                (KindArg::Alternating, None) => Multiplier::Alternating,
                (KindArg::DyadicSign, None) => Multiplier::DyadicSign,
                (KindArg::Explicit, Some(list)) => Multiplier::Explicit {
                    offset: sign_offset,
                    signs: list
                        .split(',')
                        .map(|s| {
                            s.trim().parse::<i8>().map_err(|_| {
                                ConfigError::new(format!("bad multiplier entry `{s}`"))
                            })
                        })
                        .collect::<Result<_, _>>()?,
                },
                (KindArg::Explicit, None) => {
                    return Err(ConfigError::new("--kind explicit needs --signs"))
                }
                (_, Some(_)) => {
                    return Err(ConfigError::new(
                        "--signs is only valid with --kind explicit",
                    ))
                }
            };
            let report = run_multiplier(&cfg.load()?, &m, &cfg.exponents(), &cfg.quadrature)?;
            if let Some(path) = seq_out {
                write_sequence(&path, &report.sequence)
                    .map_err(|e| ConfigError::new(format!("{}: {e}", path.display())))?;
            }
            let mut buf = Vec::new();
            report.write_csv(&mut buf)?;
            write_output(out.as_deref(), &buf)?;
        }
        Cmd::Profile { input, levels, out } => {
            let cfg = config(Command::Classify, &input, "2", &QuadArgs::parse_default())?;
            let a = cfg.load()?;
            let mut buf = Vec::new();
            DyadicProfile::new(&a, levels).write_csv(&mut buf)?;
            write_output(out.as_deref(), &buf)?;
        }
        Cmd::Generate { input, out } => {
            let cfg = config(Command::Norms, &input, "2", &QuadArgs::parse_default())?;
            let a = cfg.load()?;
            match out {
                Some(path) => write_sequence(&path, &a)
                    .map_err(|e| ConfigError::new(format!("{}: {e}", path.display())))?,
                None => {
                    let mut s = sequence_to_json(&a)?;
                    s.push('\n');
                    write_output(None, s.as_bytes())?;
                }
            }
        }
    }
    Ok(0)
}

impl QuadArgs {
    fn parse_default() -> Self {
        let d = QuadratureSpec::default();
        Self {
            samples: d.sample_count,
            oversample: d.oversample,
            tolerance: d.refine_tolerance,
            max_doublings: d.max_doublings,
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
