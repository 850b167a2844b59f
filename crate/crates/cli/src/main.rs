use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use secnet_core::analytic::SignalFit;
use secnet_core::experiment::validate::{run_validate, ValidateOptions};
use secnet_core::experiment::{format_number, run_point, run_sweep, CsvRow, Mode, SweepSpec, CSV_HEADER};
use secnet_core::{Error, NetworkConfig, SopReport};

const EXIT_CONFIG: u8 = 2;
const EXIT_NUMERIC: u8 = 3;
const EXIT_VALIDATION: u8 = 4;

/// Secrecy outage of trust-aware relaying with friendly jamming.
#[derive(Parser, Debug)]
#[command(name = "secnet", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// TOML file with network parameters; unspecified keys keep their defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Override one config key, e.g. `--set c1=0.9` (repeatable).
    #[arg(long = "set", value_name = "KEY=VALUE", global = true)]
    overrides: Vec<String>,

    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    workers: Option<usize>,
}

#[derive(Args, Debug, Clone)]
struct RunArgs {
    #[arg(long, default_value = "both")]
    mode: String,

    /// Monte Carlo trials.
    #[arg(long)]
    trials: Option<u64>,

    #[arg(long, env = "SECNET_SEED")]
    seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a single configuration.
    Point {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Sweep one parameter and write CSV.
    Sweep {
        #[command(flatten)]
        run: RunArgs,

        /// `var=v1,v2,...` with var one of beta_e_db, eve_r, c1, c_q.
        #[arg(long)]
        sweep: String,

        /// Output file (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every numerical self-check.
    Validate {
        /// Trials for the moment comparison.
        #[arg(long, default_value_t = 1_000_000)]
        trials: u64,

        /// Draws for each distributional test.
        #[arg(long, default_value_t = 100_000)]
        samples: u64,

        #[arg(long, env = "SECNET_SEED", default_value_t = 1)]
        seed: u64,

        /// Fit the signal shape with the unsquared numerator (expected to fail).
        #[arg(long)]
        unsquared_signal_shape: bool,
    },
}

enum Failure {
    Core(Error),
    Io(anyhow::Error),
    Validation,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_config() { EXIT_CONFIG } else { EXIT_NUMERIC })
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_CONFIG)
        }
        Err(Failure::Validation) => ExitCode::from(EXIT_VALIDATION),
    }
}

fn load_config(cli: &Cli) -> Result<NetworkConfig, Failure> {
    let mut cfg = match &cli.config {
        Some(path) => NetworkConfig::load(path)?,
        None => NetworkConfig::default(),
    };
    for kv in &cli.overrides {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("--set expects KEY=VALUE, got {kv:?}")))?;
        cfg.set(k.trim(), v.trim())?;
    }
    Ok(cfg)
}

fn apply_run_args(cfg: &mut NetworkConfig, run: &RunArgs) -> Result<Mode, Failure> {
    if let Some(t) = run.trials {
        cfg.trials = t;
    }
    if let Some(s) = run.seed {
        cfg.seed = s;
    }
    cfg.validate()?;
    Ok(run.mode.parse()?)
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(n) = cli.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring worker pool")?;
    }
    let mut cfg = load_config(&cli)?;
    match &cli.command {
        Command::Point { run } => {
            let mode = apply_run_args(&mut cfg, run)?;
            let report = run_point(&cfg, mode)?;
            print_report(&report);
            Ok(())
        }
        Command::Sweep { run, sweep, out } => {
            let mode = apply_run_args(&mut cfg, run)?;
            let spec = SweepSpec::parse(sweep, mode)?;
            let (rows, errors) = run_sweep(&cfg, &spec);
            for (value, e) in &errors {
                eprintln!("sweep point {}={}: {e}", spec.variable, format_number(*value));
            }
            match out {
                Some(path) => {
                    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
                    write_csv(file, &rows)?;
                }
                None => write_csv(io::stdout().lock(), &rows)?,
            }
            Ok(())
        }
        Command::Validate {
            trials,
            samples,
            seed,
            unsquared_signal_shape,
        } => {
            let opts = ValidateOptions {
                moment_trials: *trials,
                network_draws: *samples,
                ks_samples: *samples as usize,
                seed: *seed,
                signal_fit: if *unsquared_signal_shape {
                    SignalFit::UnsquaredNumerator
                } else {
                    SignalFit::MomentMatched
                },
            };
            let report = run_validate(&cfg, &opts)?;
            for c in &report.checks {
                println!("{}", c.line());
            }
            println!();
            println!("epsilon_z sensitivity:");
            println!("{:>10} {:>14} {:>14} {:>12} {:>12} {:>12}", "epsilon_z", "J1", "J2", "nu_i", "theta_i", "sop");
            for r in &report.sensitivity {
                println!(
                    "{:>10} {:>14.6e} {:>14.6e} {:>12.6} {:>12.6e} {:>12.6}",
                    r.epsilon_z, r.j1, r.j2, r.nu_i, r.theta_i, r.sop
                );
            }
            let failed = report.checks.iter().filter(|c| !c.passed()).count();
            println!();
            println!("{} checks, {failed} failed", report.checks.len());
            if failed > 0 {
                Err(Failure::Validation)
            } else {
                Ok(())
            }
        }
    }
}

fn write_csv<W: Write>(w: W, rows: &[CsvRow]) -> anyhow::Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(CSV_HEADER)?;
    for r in rows {
        wtr.write_record(&r.cells)?;
    }
    wtr.flush()?;
    Ok(())
}

fn print_report(r: &SopReport) {
    if let Some(a) = &r.analytic {
        println!("sop_analytic   {}", format_number(a.sop));
        println!("nu_t           {}", format_number(a.params_t.shape));
        println!("theta_t        {}", format_number(a.params_t.scale));
        println!("nu_i           {}", format_number(a.params_i.shape));
        println!("theta_i        {}", format_number(a.params_i.scale));
        println!("q_e            {}", format_number(a.q_e));
        println!("lambda_r       {}", format_number(a.lambda_r));
        println!("lambda_j       {}", format_number(a.lambda_j));
    }
    if let (Some(p), Some(se)) = (r.mc_estimate, r.mc_stderr) {
        println!("sop_mc         {}", format_number(p));
        println!("mc_stderr      {}", format_number(se));
        println!("n_trials       {}", r.trials);
        println!("seed           {}", r.seed);
    }
    if let Some(d) = &r.mc_diagnostics {
        println!("mean_relays    {}", format_number(d.mean_relays));
        println!("mean_jammers   {}", format_number(d.mean_active_jammers));
        println!("empty_relays   {}", format_number(d.empty_relay_fraction));
    }
    if let Some(g) = r.abs_gap() {
        println!("abs_gap        {}", format_number(g));
    }
}
