//! growthlab: growth characteristics of entire and meromorphic functions,
//! kernel-transform growth bounds, canonical products from zero lists, and
//! a self-verification suite.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use growthlab_cli::commands::{self, BoundSource};
use growthlab_cli::config::{ConfigFile, GridSpec, OutputFormat, PPolicy, RunConfig};
use growthlab_cli::{report, verify};

#[derive(Parser)]
#[command(
    name = "growthlab",
    version,
    about = "Growth characteristics, kernel-transform bounds, and canonical products"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Growth characteristics (lnM, C, B, T, NZ) of a function descriptor
    Characteristics {
        /// Function descriptor, e.g. `exp`, `sin:pi`, `poly:1,0,-1`,
        /// `ml:0.75`, `rgamma`, `prod:exp;poly:1,1`, `quot:sin:pi|poly:pi,0`,
        /// `zeros:points.csv,q=1`
        descriptor: String,
        #[command(flatten)]
        common: Common,
    },
    /// Paley constants P(rho) and the optimal kernel order per rho
    #[command(name = "paley-table")]
    PaleyTable {
        /// Comma-separated list of orders, e.g. `0.25,0.5,1,2`
        rhos: String,
        #[command(flatten)]
        common: Common,
    },
    /// Kernel-transform growth bound from a function, a zero list, or a
    /// sampled T profile
    Bound {
        /// Bound the function with this descriptor (Theorem route: circle
        /// means of ln|f|)
        #[arg(long, value_name = "DESC")]
        function: Option<String>,
        /// Bound any function vanishing on this zero list
        #[arg(long, value_name = "FILE")]
        zeros: Option<PathBuf>,
        /// Bound from a CSV of sampled characteristic values (columns r,T)
        #[arg(long = "t-profile", value_name = "FILE")]
        t_profile: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Build the canonical product over a zero list and report its growth
    Product {
        /// Zero list (CSV `re,im,multiplicity` or JSON array)
        zeros: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Jensen residual C(r) - ln|f(0)| - NZ(r) (+ Npol for quotients)
    Jensen {
        descriptor: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run a named self-check suite and emit a JSON summary
    Verify {
        /// One of: jensen, chain, kernel, paley, products, meromorphic,
        /// lemma22, all
        suite: String,
        /// Write the JSON summary here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Common {
    /// Radial grid as R_MIN:R_MAX:POINTS_PER_DECADE
    #[arg(long)]
    grid: Option<String>,
    /// Kernel order: a number > 0 or `optimal:RHO`
    #[arg(long)]
    p: Option<String>,
    /// Relative tolerance for circle quadrature (scales the kink and
    /// kernel tolerances with it)
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; 0 means one per core
    #[arg(long)]
    threads: Option<usize>,
    /// JSON config file applied beneath the flags
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

impl Common {
    /// Flags > config file > environment > defaults.
    fn resolve(&self) -> Result<RunConfig, String> {
        let file = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| format!("{}: {e}", path.display()))?;
                let parsed: ConfigFile = serde_json::from_str(&text)
                    .map_err(|e| format!("{}: {e}", path.display()))?;
                Some(parsed)
            }
            None => None,
        };
        let mut cfg = RunConfig::layered(file.as_ref())?;
        if let Some(g) = &self.grid {
            cfg.grid = GridSpec::parse(g)?;
        }
        if let Some(p) = &self.p {
            cfg.p_policy = PPolicy::parse(p)?;
        }
        if let Some(t) = self.tol {
            if !(t > 0.0) {
                return Err(format!("--tol must be positive, got {t}"));
            }
            // keep the default ratios between the three tolerances
            cfg.rel_tol = t;
            cfg.kink_rel_tol = t * 100.0;
            cfg.quad_rel_tol = t / 10.0;
        }
        if let Some(f) = self.format {
            cfg.format = f.into();
        }
        if let Some(n) = self.threads {
            cfg.threads = n;
        }
        Ok(cfg)
    }
}

fn write_output(text: &str, out: Option<&Path>) -> Result<(), String> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_report(
    report: &report::GrowthReport,
    config: &RunConfig,
    out: Option<&Path>,
) -> Result<(), String> {
    let text = match config.format {
        OutputFormat::Csv => report.to_csv(),
        OutputFormat::Json => report.to_json(),
    };
    write_output(&text, out)
}

fn run() -> Result<ExitCode, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Characteristics { descriptor, common } => {
            let config = common.resolve()?;
            let report = commands::cmd_characteristics(&descriptor, &config)
                .map_err(|e| e.to_string())?;
            emit_report(&report, &config, common.out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::PaleyTable { rhos, common } => {
            let config = common.resolve()?;
            let parsed: Result<Vec<f64>, _> = rhos
                .split(',')
                .map(|t| t.trim().parse::<f64>())
                .collect();
            let parsed = parsed.map_err(|e| format!("bad rho list {rhos:?}: {e}"))?;
            let table =
                commands::cmd_paley_table(&parsed, &config).map_err(|e| e.to_string())?;
            write_output(&table, common.out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bound {
            function,
            zeros,
            t_profile,
            common,
        } => {
            let config = common.resolve()?;
            let source = match (&function, &zeros, &t_profile) {
                (Some(d), None, None) => BoundSource::Function(d),
                (None, Some(f), None) => BoundSource::Zeros(f),
                (None, None, Some(f)) => BoundSource::TProfile(f),
                _ => {
                    return Err(
                        "pass exactly one of --function, --zeros, --t-profile".to_string()
                    )
                }
            };
            let report = commands::cmd_bound(source, &config).map_err(|e| e.to_string())?;
            emit_report(&report, &config, common.out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Product { zeros, common } => {
            let config = common.resolve()?;
            let report =
                commands::cmd_product(&zeros, &config).map_err(|e| e.to_string())?;
            emit_report(&report, &config, common.out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Jensen { descriptor, common } => {
            let config = common.resolve()?;
            let report =
                commands::cmd_jensen(&descriptor, &config).map_err(|e| e.to_string())?;
            emit_report(&report, &config, common.out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite, out } => {
            let report = verify::run_suite(&suite)?;
            let mut text =
                serde_json::to_string_pretty(&report).expect("summary serializes");
            text.push('\n');
            write_output(&text, out.as_deref())?;
            if report.passed {
                Ok(ExitCode::SUCCESS)
            } else {
                let first = report
                    .checks
                    .iter()
                    .find(|c| !c.passed)
                    .expect("a failed suite names a failing check");
                eprintln!("growthlab verify {suite}: FAILED at {:?}: {}", first.name, first.detail);
                Ok(ExitCode::from(1))
            }
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .init();
    match run() {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("growthlab: {msg}");
            ExitCode::from(2)
        }
    }
}
