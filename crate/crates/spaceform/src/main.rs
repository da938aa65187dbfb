//! Command-line front end: configures the structure, parameters and seed,
//! runs the selected verification suites, and writes a text or JSON report.
//!
//! Exit codes: 0 all adjudicated checks pass, 1 some adjudicated check
//! failed, 2 invalid usage or configuration. Errata entries and printed-
//! formula observations never alter the exit code.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use spaceform::report::{OutputFormat, ParamMode, RunConfig, Suite};
use spaceform::suite::{render, run};
use spaceform::ConnectionKind;

#[derive(Parser, Debug)]
#[command(
    name = "spaceform",
    about = "Verifies closed-form curvature identities on contact metric space forms \
             under deformed connections against independently derived oracles",
    version
)]
struct Cli {
    /// Suite to run: structure | curvature | submanifold | ricci | scalar | theorems | errata | all
    #[arg(long, default_value = "all")]
    suite: Suite,

    /// Ambient parameter n (dimension 2n+1)
    #[arg(long, default_value_t = 3)]
    n: usize,

    /// Submanifold dimension parameter m (tangent dimension m+1, with xi tangent)
    #[arg(long, default_value_t = 4)]
    m: usize,

    /// Restrict connection-sensitive suites to one connection:
    /// levi-civita | semisymmetric-metric | semisymmetric-non-metric |
    /// schouten-van-kampen | tanaka-webster
    #[arg(long)]
    connection: Option<ConnectionKind>,

    /// Sampler seed
    #[arg(long, default_value_t = 42)]
    seed: u64,

    /// Randomized trials per check
    #[arg(long, default_value_t = 1000)]
    trials: usize,

    /// Residual tolerance for verdicts
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,

    /// Fixed structure function f1 (requires --f2 and --f3)
    #[arg(long, requires = "f2", requires = "f3", conflicts_with_all = ["sasakian_c", "random_params"])]
    f1: Option<f64>,

    /// Fixed structure function f2
    #[arg(long, requires = "f1")]
    f2: Option<f64>,

    /// Fixed structure function f3
    #[arg(long, requires = "f1")]
    f3: Option<f64>,

    /// Sasakian specialization: f1 = (c+3)/4, f2 = f3 = (c-1)/4
    #[arg(long = "sasakian-c", conflicts_with = "random_params")]
    sasakian_c: Option<f64>,

    /// Draw f1, f2, f3 uniformly from [LO, HI] per trial
    #[arg(long = "random-params", num_args = 2, value_names = ["LO", "HI"])]
    random_params: Option<Vec<f64>>,

    /// Output format: text | json
    #[arg(long, default_value = "text")]
    format: OutputFormat,

    /// Write the report to this path instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

fn param_mode(cli: &Cli) -> ParamMode {
    if let (Some(f1), Some(f2), Some(f3)) = (cli.f1, cli.f2, cli.f3) {
        ParamMode::Fixed { f1, f2, f3 }
    } else if let Some(c) = cli.sasakian_c {
        ParamMode::Sasakian { c }
    } else if let Some(range) = &cli.random_params {
        ParamMode::Random {
            lo: range[0],
            hi: range[1],
        }
    } else {
        ParamMode::Random { lo: -2.0, hi: 2.0 }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut config = RunConfig::new(cli.suite, cli.n, cli.m);
    config.connection = cli.connection;
    config.seed = cli.seed;
    config.trials = cli.trials;
    config.tol = cli.tol;
    config.param_mode = param_mode(&cli);
    config.format = cli.format;
    config.out = cli.out.clone();

    let report = match run(&config) {
        Ok(report) => report,
        Err(err) => {
            eprintln!("spaceform: {err}");
            return ExitCode::from(2);
        }
    };
    let rendered = render(&report, config.format);
    match &config.out {
        Some(path) => {
            if let Err(err) = std::fs::write(path, rendered) {
                eprintln!("spaceform: cannot write {}: {err}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{rendered}"),
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
