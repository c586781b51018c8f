use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use multmap::jacobian::{JacobianError, DEFAULT_RANK_TOL};
use multmap::kernel::{w_space, KernelError, KernelReportDoc};
use multmap::poly::Poly;
use multmap::report::{analyze, AnalyzeError, AnalyzeOptions};
use multmap::roots::{RootConfig, RootError, DEFAULT_GAP_FLOOR, DEFAULT_TOL};
use multmap::scalar::{Field, GaussianRationals, PrimeField, Rationals};
use multmap::verify::{run_corpus, Faults};

mod random;
mod render;

#[derive(Parser, Debug)]
#[command(name = "multmap", version, about = "Multiplier maps of monic polynomials: rank, kernels and identities")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Default output format when --json is absent
    #[arg(long, global = true, env = "MULTMAP_FORMAT", value_enum, default_value_t = Format::Text, hide_env_values = true)]
    format: Format,
    /// Root-finder step tolerance
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Relative singular-value threshold for numerical rank
    #[arg(long, global = true, default_value_t = DEFAULT_RANK_TOL)]
    rank_tol: f64,
    /// Smallest root separation accepted as simple
    #[arg(long, global = true, default_value_t = DEFAULT_GAP_FLOOR)]
    gap_floor: f64,
    /// Divide by the leading coefficient instead of rejecting non-monic input
    #[arg(long, global = true)]
    monicize: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Roots, multipliers, both Jacobians, minors and hypersurface residual
    Analyze {
        /// Coefficients, constant term first, e.g. "-1,0,1"
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Exact W(f), extended kernel and structural checks
    Kernel {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// Work over F_p instead of ℚ / ℚ(i)
        #[arg(long = "char")]
        characteristic: Option<u64>,
    },
    /// Run the built-in verification corpus
    VerifyPaper {
        /// Only run items whose name contains this text
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, hide = true)]
        inject_fault: Option<String>,
    },
    /// Rank statistics over seeded random square-free polynomials
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Conditioning(String),
    Verification(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Conditioning(_) => 2,
            Failure::Verification(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Conditioning(m) | Failure::Verification(m) => m,
        }
    }
}

fn jacobian_failure(e: JacobianError) -> Failure {
    match e {
        JacobianError::Conditioning(_)
        | JacobianError::Degenerate(..)
        | JacobianError::NonFinite
        | JacobianError::Roots(RootError::NonConvergence { .. } | RootError::NonFinite) => {
            Failure::Conditioning(e.to_string())
        }
        _ => Failure::Usage(e.to_string()),
    }
}

impl Global {
    fn json(&self) -> bool {
        self.json || self.format == Format::Json
    }

    fn options(&self) -> Result<AnalyzeOptions, Failure> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Failure::Usage(format!("--tol must be positive, got {}", self.tol)));
        }
        if !(self.rank_tol > 0.0 && self.rank_tol < 1.0) {
            return Err(Failure::Usage(format!("--rank-tol must lie in (0, 1), got {}", self.rank_tol)));
        }
        if !(self.gap_floor > 0.0 && self.gap_floor.is_finite()) {
            return Err(Failure::Usage(format!("--gap-floor must be positive, got {}", self.gap_floor)));
        }
        Ok(AnalyzeOptions {
            roots: RootConfig {
                tol: self.tol,
                gap_floor: self.gap_floor,
                ..RootConfig::default()
            },
            rank_tol: self.rank_tol,
            monicize: self.monicize,
        })
    }
}

fn emit<T: serde::Serialize>(json: bool, value: &T, text: impl FnOnce(&T) -> String) {
    let body = if json {
        serde_json::to_string_pretty(value).expect("reports serialize") + "\n"
    } else {
        text(value)
    };
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    let _ = std::io::stdout().lock().write_all(body.as_bytes());
}

fn kernel_over<F: Field>(text: &str, k: &F, monicize: bool) -> Result<KernelReportDoc, Failure> {
    let mut f = Poly::parse_coeff_list(text, k).map_err(|e| Failure::Usage(format!("cannot parse coefficients: {e}")))?;
    if !f.is_monic(k) && monicize {
        f = f.make_monic(k).map_err(|e| Failure::Usage(e.to_string()))?;
    }
    match w_space(&f, k) {
        Ok(r) => Ok(r.to_doc(k)),
        Err(e @ KernelError::BadPolynomial) => Err(Failure::Usage(format!("{e} (pass --monicize to rescale)"))),
        Err(e) => Err(Failure::Usage(e.to_string())),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let g = &cli.global;
    let opts = g.options()?;
    match cli.command {
        Command::Analyze { poly } => {
            let report = analyze(&poly, &opts).map_err(|e| match e {
                AnalyzeError::Jacobian(j) => jacobian_failure(j),
                other => Failure::Usage(other.to_string()),
            })?;
            emit(g.json(), &report, render::analysis);
        }
        Command::Kernel { poly, characteristic } => {
            let doc = match characteristic {
                Some(p) => {
                    let k = PrimeField::new(p).map_err(|e| Failure::Usage(e.to_string()))?;
                    kernel_over(&poly, &k, g.monicize)?
                }
                None => match kernel_over(&poly, &Rationals, g.monicize) {
                    Ok(doc) => doc,
                    Err(Failure::Usage(m)) if m.starts_with("cannot parse") => {
                        kernel_over(&poly, &GaussianRationals, g.monicize)?
                    }
                    Err(e) => return Err(e),
                },
            };
            emit(g.json(), &doc, render::kernel);
            if !doc.thm_checks.all_passed() {
                let names: Vec<_> = doc.thm_checks.failures().iter().map(|c| c.name.clone()).collect();
                return Err(Failure::Verification(format!("structural checks failed: {}", names.join(", "))));
            }
        }
        Command::VerifyPaper { filter, inject_fault } => {
            let faults = match inject_fault.as_deref() {
                None => Faults::default(),
                Some(name) => Faults::parse(name).ok_or_else(|| Failure::Usage(format!("unknown fault {name:?}")))?,
            };
            let summary = run_corpus(filter.as_deref(), &faults);
            emit(g.json(), &summary, render::verify);
            if !summary.all_passed() {
                return Err(Failure::Verification(format!(
                    "failed items: {}",
                    summary.failed_names().join(", ")
                )));
            }
        }
        Command::Random { n, trials, seed } => {
            if !(2..=12).contains(&n) {
                return Err(Failure::Usage(format!("--n must lie in 2..=12, got {n}")));
            }
            if trials == 0 {
                return Err(Failure::Usage("--trials must be at least 1".into()));
            }
            let report = random::run(n, trials, seed, &opts).map_err(jacobian_failure)?;
            emit(g.json(), &report, render::random);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
