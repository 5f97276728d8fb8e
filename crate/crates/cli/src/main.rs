use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use mzm_cli::verify::VerifyOptions;
use mzm_cli::{run_sweep_to_output, run_verify, BiasMode, CliError, CliResult, SweepConfig};
use mzm_core::compute_rates;
use mzm_core::oracle::simulate_trajectory;

/// Branch-current correlations of a Majorana pair between two leads.
///
/// Without `--verify` the tool sweeps the bias and writes one CSV row per
/// (eV, epsilon_m) point. Flags override values read from `--config`.
#[derive(Debug, Parser)]
#[command(name = "mzm", version)]
struct Args {
    /// Flat `key = value` configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// `symmetric` (mu_L = mu_R = eV) or `antisymmetric` (mu_L = -mu_R = eV).
    #[arg(long)]
    bias_mode: Option<BiasMode>,
    #[arg(long, allow_negative_numbers = true)]
    ev_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    ev_max: Option<f64>,
    #[arg(long)]
    ev_steps: Option<usize>,
    /// Majorana coupling energy; repeat for several sweeps.
    #[arg(long = "epsilon-m", allow_negative_numbers = true)]
    epsilon_m: Vec<f64>,
    #[arg(long)]
    gamma_e_l: Option<f64>,
    #[arg(long)]
    gamma_h_l: Option<f64>,
    #[arg(long)]
    gamma_e_r: Option<f64>,
    #[arg(long)]
    gamma_h_r: Option<f64>,
    #[arg(long)]
    temperature: Option<f64>,
    /// CSV destination; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Length of the Monte Carlo trajectory used by `--verify`.
    #[arg(long)]
    mc_duration: Option<f64>,
    /// Run the invariant suite instead of writing a sweep.
    #[arg(long)]
    verify: bool,
    /// Write the jump record of one trajectory at (ev_max, first epsilon_m).
    #[arg(long)]
    dump_trajectory: Option<PathBuf>,
    /// Scale one rate inside the invariant suite (negative control).
    #[arg(long, hide = true)]
    corrupt_rate: Option<f64>,
}

impl Args {
    fn config(&self) -> CliResult<SweepConfig> {
        let mut c = match &self.config {
            Some(path) => SweepConfig::from_file(path)?,
            None => SweepConfig::default(),
        };
        macro_rules! overlay {
            ($($field:ident),*) => {
                $(if let Some(v) = self.$field.clone() { c.$field = v; })*
            };
        }
        overlay!(
            bias_mode, ev_min, ev_max, ev_steps, gamma_e_l, gamma_h_l, gamma_e_r, gamma_h_r,
            temperature, seed
        );
        if let Some(out) = &self.out {
            c.out = Some(out.clone());
        }
        if let Some(d) = self.mc_duration {
            c.mc_duration = Some(d);
        }
        if !self.epsilon_m.is_empty() {
            c.epsilon_m_list = self.epsilon_m.clone();
        }
        c.validate()?;
        Ok(c)
    }
}

fn dump_trajectory(config: &SweepConfig, path: &PathBuf) -> CliResult<()> {
    let duration = config.mc_duration.ok_or_else(|| {
        CliError::Usage("--dump-trajectory needs an mc_duration".into())
    })?;
    let rates = compute_rates(&config.device(config.ev_max, config.epsilon_m_list[0]))?;
    let traj = simulate_trajectory(&rates, duration, config.seed)?;
    let file = std::fs::File::create(path).map_err(|e| CliError::Io {
        path: path.clone(),
        source: e,
    })?;
    traj.write_tsv(std::io::BufWriter::new(file))
        .map_err(|e| CliError::Io {
            path: path.clone(),
            source: e,
        })
}

fn run(args: &Args) -> CliResult<()> {
    let config = args.config()?;
    if let Some(path) = &args.dump_trajectory {
        dump_trajectory(&config, path)?;
    }
    if args.verify {
        let options = VerifyOptions {
            corrupt_rate: args.corrupt_rate,
        };
        let report = run_verify(&config, options)?;
        println!("{report}");
        report.into_result()?;
    } else {
        let rows = run_sweep_to_output(&config)?;
        if let Some(path) = &config.out {
            eprintln!("wrote {rows} rows to {}", path.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
