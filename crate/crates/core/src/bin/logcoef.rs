//! `logcoef`: sweeps, sharpness certification, extremal search and the
//! polylogarithm from the command line.
//!
//! Exit status: 0 success, 1 check failure, 2 configuration error, 3 I/O
//! error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use logcoef::report::{run_search, run_sharpness, run_verify, Report, ReportError, SweepConfig};
use logcoef::special::li;

#[derive(Parser)]
#[command(
    name = "logcoef",
    version,
    about = "Logarithmic coefficients of Janowski (j,k)-symmetric starlike functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every bound on every (params, seed) grid point.
    Verify(SweepArgs),
    /// Certify equality at the extremal function.
    Sharpness(SweepArgs),
    /// Search the seed family for the largest sum/bound ratio.
    Search(SweepArgs),
    /// Print Li_v(x) for x in [0, 1].
    Polylog {
        v: f64,
        #[arg(allow_hyphen_values = true)]
        x: f64,
    },
}

/// Grid flags. Lists are comma separated; flags override `--config`.
#[derive(Args)]
struct SweepArgs {
    /// Flat `key = value` file with the same keys as the long flags.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    j: Option<String>,
    #[arg(long)]
    k: Option<String>,
    /// Explicit `j:k` pairs, e.g. `1:1,0:2`.
    #[arg(long)]
    pairs: Option<String>,
    /// Complex values such as `1,0.8+0.3i`.
    #[arg(long = "A", allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long = "B", allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    /// Truncation order N.
    #[arg(long)]
    terms: Option<String>,
    /// `identity`, `rotation:θ`, `expdamp:θ:c`, `poly:p1:p2:...`.
    #[arg(long, allow_hyphen_values = true)]
    seeds: Option<String>,
    #[arg(long)]
    tol: Option<String>,
    #[arg(long = "rng-seed")]
    rng_seed: Option<String>,
    #[arg(long)]
    out: Option<String>,
    /// `json` or `csv`.
    #[arg(long)]
    format: Option<String>,
    #[arg(long = "no-timestamp")]
    no_timestamp: bool,
    /// Allow equality checks for |B| > 0.9 (B = -1 uses N_d >= 10^4).
    #[arg(long)]
    slow: bool,
    /// Search family: `expdamp`, `poly`, `poly1`..`poly4`.
    #[arg(long)]
    family: Option<String>,
    /// Search budget in member evaluations.
    #[arg(long)]
    budget: Option<String>,
    /// Test hook: add this amount to d_1 of Identity-seed members.
    #[arg(long = "perturb-d1", allow_hyphen_values = true, hide = true)]
    perturb_d1: Option<String>,
}

impl SweepArgs {
    fn resolve(&self) -> Result<SweepConfig, ReportError> {
        let mut config = match &self.config {
            Some(path) => SweepConfig::from_text(&std::fs::read_to_string(path)?)?,
            None => SweepConfig::default(),
        };
        let values = [
            ("pairs", &self.pairs),
            ("j", &self.j),
            ("k", &self.k),
            ("A", &self.a),
            ("B", &self.b),
            ("t", &self.t),
            ("terms", &self.terms),
            ("seeds", &self.seeds),
            ("tol", &self.tol),
            ("rng-seed", &self.rng_seed),
            ("out", &self.out),
            ("format", &self.format),
            ("family", &self.family),
            ("budget", &self.budget),
            ("perturb-d1", &self.perturb_d1),
        ];
        for (key, value) in values {
            if let Some(v) = value {
                config.apply(key, v)?;
            }
        }
        if self.no_timestamp {
            config.no_timestamp = true;
        }
        if self.slow {
            config.slow = true;
        }
        Ok(config)
    }
}

fn finish(report: &Report, config: &SweepConfig) -> Result<ExitCode, ReportError> {
    report.emit(config)?;
    let failures: Vec<_> = report.failures().collect();
    eprintln!(
        "{}: {} rows, {} failures",
        report.command,
        report.rows.len(),
        failures.len()
    );
    for row in &failures {
        eprintln!("FAIL {row}");
    }
    Ok(if failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run(cli: Cli) -> Result<ExitCode, ReportError> {
    match cli.command {
        Command::Verify(args) => {
            let config = args.resolve()?;
            finish(&run_verify(&config)?, &config)
        }
        Command::Sharpness(args) => {
            let config = args.resolve()?;
            finish(&run_sharpness(&config)?, &config)
        }
        Command::Search(args) => {
            let config = args.resolve()?;
            let tol = config.tol.unwrap_or(logcoef::bounds::INEQUALITY_TOL);
            let mut lines = String::new();
            let mut violated = false;
            for r in run_search(&config)? {
                violated |= r.max_ratio > 1.0 + tol;
                lines.push_str(&format!(
                    "{} objective={} family={} N={} max_ratio={:.17} argmax={} evaluations={} converged={}\n",
                    r.params, r.objective, r.family, r.order, r.max_ratio, r.argmax, r.evaluations, r.converged
                ));
            }
            match &config.out {
                Some(path) => std::fs::write(path, &lines)?,
                None => print!("{lines}"),
            }
            Ok(if violated {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Polylog { v, x } => {
            println!("{}", li(v, x)?);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
