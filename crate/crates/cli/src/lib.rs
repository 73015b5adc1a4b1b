//! Batch front end: argument parsing, validation into a [`RunConfig`], and
//! the `tval`, `wep` and `check` commands.
//!
//! Exit codes: 0 success, 1 validation failure or disagreement, 2 input
//! error, 3 resource bound.

mod commands;
pub mod input;
mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use netquality::OracleBounds;

pub use commands::{cmd_check, cmd_tval, cmd_wep};
pub use input::{InclusiveRange, NetFile, PointsFile};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
    #[error(transparent)]
    Core(#[from] netquality::Error),
    #[error("disagreement: {0}")]
    Disagreement(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Disagreement(_) => 1,
            CliError::Core(e) if e.is_internal() => 1,
            CliError::Core(e) if e.is_resource() => 3,
            _ => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Alg1,
    Alg2,
    Both,
    Oracle,
}

#[derive(Debug, Parser)]
#[command(name = "netquality", version, about = "Exact t-values and weight enumerators of digital nets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandArgs,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub out: Format,

    /// Worker threads; output does not depend on it.
    #[arg(long, global = true, env = "NETQUALITY_THREADS")]
    pub threads: Option<usize>,

    /// Oracle limit on dual candidates and members.
    #[arg(long, global = true, default_value_t = 1 << 24)]
    pub max_duals: u64,

    /// Oracle limit on points × compositions for interval counting.
    #[arg(long, global = true, default_value_t = 1 << 20)]
    pub max_compositions: u64,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Net file (JSON).
    #[arg(long)]
    pub net: Option<PathBuf>,

    /// Raw point multiset (JSON); only a lower bound on t is available.
    #[arg(long)]
    pub points: Option<PathBuf>,

    /// Sobol' direction table: `joe-kuo`, `bratley-fox` or a file path.
    #[arg(long)]
    pub sobol: Option<String>,

    /// Sobol' dimensions, `a..b` or `a`.
    #[arg(long)]
    pub dims: Option<InclusiveRange>,

    /// Digits `m`, `a..b` or `a`.
    #[arg(long)]
    pub m: Option<InclusiveRange>,
}

#[derive(Debug, Subcommand)]
pub enum CommandArgs {
    /// t-values of a net or a grid of Sobol' nets.
    Tval {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value = "alg2")]
        algorithm: Algorithm,
    },
    /// Weight enumerator of the dual net.
    Wep {
        #[command(flatten)]
        input: InputArgs,
        /// All coefficients `0..=ns`.
        #[arg(long)]
        full: bool,
        /// Truncation degree (default `m`).
        #[arg(long = "l")]
        ell: Option<usize>,
        /// The multivariate enumerator.
        #[arg(long)]
        gw: bool,
        /// Total degree cap for `--gw` (default `m`).
        #[arg(long, requires = "gw")]
        cap: Option<usize>,
        /// Projection coordinates for `--gw`, e.g. `1,3`.
        #[arg(long, requires = "gw", value_delimiter = ',')]
        project: Option<Vec<usize>>,
        /// Worst projection of at most this many coordinates, from `--gw`.
        #[arg(long, requires = "gw", conflicts_with = "project")]
        worst: Option<usize>,
    },
    /// Cross-check every path against the brute-force oracles.
    Check {
        #[command(flatten)]
        input: InputArgs,
        /// Check random generating matrices instead of an input net.
        #[arg(long)]
        random: bool,
        #[arg(long, requires = "random")]
        b: Option<u32>,
        #[arg(long, requires = "random")]
        s: Option<usize>,
        #[arg(long, requires = "random", default_value_t = 100)]
        count: usize,
        #[arg(long, requires = "random", default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Tval,
    Wep,
    Check,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Net(PathBuf),
    Points(PathBuf),
    Sobol {
        table: String,
        dims: InclusiveRange,
        m: InclusiveRange,
    },
    Random {
        b: u32,
        m: usize,
        s: usize,
        count: usize,
        seed: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WepMode {
    Truncated(Option<usize>),
    Full,
    Gw {
        cap: Option<usize>,
        project: Option<Vec<usize>>,
        worst: Option<usize>,
    },
}

/// A validated invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub source: Source,
    pub algorithm: Algorithm,
    pub wep: WepMode,
    pub format: Format,
    pub threads: Option<usize>,
    pub bounds: OracleBounds,
}

fn bad(msg: &str) -> CliError {
    CliError::Input(msg.to_string())
}

fn source(input: InputArgs, allow_points: bool, allow_ranges: bool) -> Result<Source, CliError> {
    let given = [input.net.is_some(), input.points.is_some(), input.sobol.is_some()];
    if given.iter().filter(|&&g| g).count() != 1 {
        return Err(bad("give exactly one of --net, --points, --sobol"));
    }
    if input.sobol.is_none() && (input.dims.is_some() || input.m.is_some()) {
        return Err(bad("--dims and --m only apply to --sobol"));
    }
    if let Some(path) = input.net {
        return Ok(Source::Net(path));
    }
    if let Some(path) = input.points {
        if !allow_points {
            return Err(bad("a raw point set has no t-value, only a lower bound; use `check --points`"));
        }
        return Ok(Source::Points(path));
    }
    let table = input.sobol.expect("checked above");
    let (Some(dims), Some(m)) = (input.dims, input.m) else {
        return Err(bad("--sobol needs --dims and --m"));
    };
    if dims.lo == 0 {
        return Err(bad("dimensions start at 1"));
    }
    if !allow_ranges && (dims.as_single().is_none() || m.as_single().is_none()) {
        return Err(bad("this command takes a single --dims and --m"));
    }
    Ok(Source::Sobol { table, dims, m })
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        if cli.threads == Some(0) {
            return Err(bad("--threads must be at least 1"));
        }
        let mut cfg = RunConfig {
            command: Command::Tval,
            source: Source::Net(PathBuf::new()),
            algorithm: Algorithm::Alg2,
            wep: WepMode::Truncated(None),
            format: cli.out,
            threads: cli.threads,
            bounds: OracleBounds {
                max_duals: cli.max_duals,
                max_point_compositions: cli.max_compositions,
            },
        };
        match cli.command {
            CommandArgs::Tval { input, algorithm } => {
                cfg.source = source(input, false, true)?;
                cfg.algorithm = algorithm;
            }
            CommandArgs::Wep {
                input,
                full,
                ell,
                gw,
                cap,
                project,
                worst,
            } => {
                cfg.command = Command::Wep;
                cfg.source = source(input, true, false)?;
                if [full, ell.is_some(), gw].iter().filter(|&&x| x).count() > 1 {
                    return Err(bad("--full, --l and --gw are mutually exclusive"));
                }
                if ell == Some(0) {
                    return Err(bad("--l must be at least 1"));
                }
                if matches!(cfg.source, Source::Points(_)) && (full || ell.is_some() || gw) {
                    return Err(bad("point sets support only the default truncation at m"));
                }
                cfg.wep = if full {
                    WepMode::Full
                } else if gw {
                    WepMode::Gw { cap, project, worst }
                } else {
                    WepMode::Truncated(ell)
                };
            }
            CommandArgs::Check {
                input,
                random,
                b,
                s,
                count,
                seed,
            } => {
                cfg.command = Command::Check;
                cfg.source = if random {
                    if input.net.is_some() || input.points.is_some() || input.sobol.is_some() || input.dims.is_some() {
                        return Err(bad("--random takes no other input"));
                    }
                    let m = input.m.and_then(|r| r.as_single());
                    let (Some(b), Some(m), Some(s)) = (b, m, s) else {
                        return Err(bad("--random needs --b, a single --m and --s"));
                    };
                    if s == 0 || count == 0 {
                        return Err(bad("--s and --count must be at least 1"));
                    }
                    Source::Random { b, m, s, count, seed }
                } else {
                    source(input, true, false)?
                };
            }
        }
        Ok(cfg)
    }
}

/// Whether a command's checks passed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub status: Status,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::Failed => 1,
        }
    }
}

/// Runs a validated configuration, on a dedicated pool if a thread count
/// is set.
pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let dispatch = || match cfg.command {
        Command::Tval => cmd_tval(cfg),
        Command::Wep => cmd_wep(cfg),
        Command::Check => cmd_check(cfg),
    };
    match cfg.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Input(format!("thread pool: {e}")))?
            .install(dispatch),
        None => dispatch(),
    }
}

/// Parses, runs and reports; returns the exit code.
pub fn main_with_args<I, T>(args: I, stdout: &mut impl std::io::Write, stderr: &mut impl std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = write!(stderr, "{e}");
            return 2;
        }
        Err(e) => {
            let _ = write!(stdout, "{e}");
            return 0;
        }
    };
    let result = RunConfig::from_cli(cli).and_then(|cfg| run(&cfg));
    match result {
        Ok(out) => {
            let _ = stdout.write_all(out.text.as_bytes());
            out.exit_code()
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
