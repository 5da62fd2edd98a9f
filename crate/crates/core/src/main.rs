use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use groverdd::dd::{catalog, catalog_table, DdOption};
use groverdd::harness::{emit_results, results_csv, run_experiment, ConfigLayer, DdSpec, ExperimentConfig, IterationSpec};
use groverdd::noise::CalibrationSet;
use groverdd::{Error, Result};

/// Noisy Grover search with dynamical-decoupling padding.
#[derive(Parser, Debug)]
#[command(name = "groverdd", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one decoupling option over a range of iterations.
    Run(ExperimentArgs),
    /// Run the iterations x decoupling-options grid.
    Sweep(ExperimentArgs),
    /// Print the decoupling sequences with their phases in units of pi.
    Catalog,
    /// Load a calibration file or bundled label and report what it contains.
    ValidateCalibration {
        /// Path to a TOML file or a bundled label such as pittsburgh-5q.
        calibration: String,
    },
}

#[derive(Args, Debug)]
struct ExperimentArgs {
    /// TOML file with any of the options below; flags override it.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    #[arg(long, value_name = "N")]
    qubits: Option<usize>,
    /// Marked bitstring, qubit 0 first.
    #[arg(long, value_name = "BITS")]
    target: Option<String>,
    /// Inclusive range a..b, a single count, or a comma list.
    #[arg(long, value_name = "a..b")]
    iterations: Option<String>,
    /// free, CPMG, XY4 or T2..T12; comma-separated for sweep.
    #[arg(long, value_name = "NAME")]
    dd: Option<String>,
    /// Bundled label or TOML file; omit for a noise-free device.
    #[arg(long, value_name = "PATH|LABEL")]
    calibration: Option<String>,
    #[arg(long, value_name = "N")]
    shots: Option<u64>,
    #[arg(long, value_name = "N")]
    seed: Option<u64>,
    /// Quasi-static detuning spread in rad/s.
    #[arg(long = "sigma-z", value_name = "VALUE")]
    sigma_z: Option<f64>,
    /// Report model probabilities instead of shot estimates.
    #[arg(long)]
    exact: bool,
    /// Detuning draws per cell.
    #[arg(long, value_name = "N")]
    ensemble: Option<usize>,
    /// Directory for CSV output; results go to stdout when omitted.
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

impl ExperimentArgs {
    fn layer(&self) -> ConfigLayer {
        ConfigLayer {
            qubits: self.qubits,
            target: self.target.clone(),
            iterations: self.iterations.clone().map(IterationSpec::Range),
            dd: self.dd.clone().map(DdSpec::One),
            calibration: self.calibration.clone(),
            shots: self.shots,
            seed: self.seed,
            sigma_z: self.sigma_z,
            exact: self.exact.then_some(true),
            ensemble: self.ensemble,
            min_slack: None,
            out: self.out.clone(),
        }
    }

    fn resolve(&self, sweep: bool) -> Result<ExperimentConfig> {
        let file = match &self.config {
            Some(path) => ConfigLayer::load(path)?,
            None => ConfigLayer::default(),
        };
        let mut layer = file.merge(self.layer());
        if sweep && layer.dd.is_none() {
            let mut all = vec!["free".to_string()];
            all.extend(catalog().iter().map(|s| s.name().to_string()));
            layer.dd = Some(DdSpec::Many(all));
        }
        let cfg = layer.resolve()?;
        if !sweep && cfg.dd.len() != 1 {
            return Err(Error::Config(format!(
                "run takes one decoupling option, got {}; use sweep for several",
                cfg.dd.len()
            )));
        }
        Ok(cfg)
    }
}

fn experiment(args: &ExperimentArgs, sweep: bool) -> Result<()> {
    let cfg = args.resolve(sweep)?;
    log::info!(
        "{} qubits, target {}, iterations {:?}, dd {:?}",
        cfg.n_qubits(),
        cfg.target,
        cfg.iterations,
        cfg.dd.iter().map(DdOption::label).collect::<Vec<_>>()
    );
    let res = run_experiment(&cfg)?;
    match &cfg.out {
        Some(dir) => {
            for path in emit_results(&res, dir)? {
                log::info!("wrote {}", path.display());
            }
            print!("{}", results_csv(&res));
        }
        None => print!("{}", results_csv(&res)),
    }
    Ok(())
}

fn validate(spec: &str) -> Result<()> {
    let cal = CalibrationSet::resolve(spec)?;
    println!("label  {}", cal.label());
    if let Some(device) = cal.device() {
        println!("device  {device}");
    }
    println!("qubit  physical  t1_us  t2_us  readout_error");
    for q in 0..cal.n_qubits() {
        println!(
            "{q}  {}  {:.3}  {:.3}  {:e}",
            cal.physical_qubits()[q],
            cal.t1()[q] * 1e6,
            cal.t2()[q] * 1e6,
            cal.readout_error()[q]
        );
    }
    println!("twoq_error  {:e}", cal.twoq_error(0, 1.min(cal.n_qubits() - 1)));
    for q in cal.clamped_qubits() {
        println!("clamped  qubit {q}: T2 set to 2 T1");
    }
    println!("ok");
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Run(args) => experiment(args, false),
        Command::Sweep(args) => experiment(args, true),
        Command::Catalog => {
            print!("{}", catalog_table());
            Ok(())
        }
        Command::ValidateCalibration { calibration } => validate(calibration),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
