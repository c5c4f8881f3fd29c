use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rodwave::Scheme;
use rodwave_cli::{compare, converge, emit_plots, run, CliError, CliResult, ExperimentConfig, OUT_ENV};

#[derive(Parser)]
#[command(name = "rodwave", version = env!("RODWAVE_VERSION"), about = "Conservative solutions of the hyperelastic rod wave equation")]
struct Cli {
    /// Print nothing but errors.
    #[arg(long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Target {
    /// Bundled experiment name.
    experiment: Option<String>,

    #[arg(long, value_name = "PATH", conflicts_with = "experiment")]
    config: Option<PathBuf>,

    /// Output root; each experiment writes into a subdirectory named after it.
    #[arg(long, value_name = "DIR", env = OUT_ENV, default_value = "runs")]
    out: PathBuf,

    /// Scheme name, or a comma separated list for compare and converge.
    #[arg(long, value_name = "NAME[,NAME...]", value_delimiter = ',')]
    scheme: Vec<String>,
}

impl Target {
    fn load(&self) -> CliResult<ExperimentConfig> {
        match (&self.config, &self.experiment) {
            (Some(path), _) => ExperimentConfig::load(path),
            (None, Some(name)) => ExperimentConfig::resolve(name),
            (None, None) => Err(CliError::Invalid("give an experiment name or --config PATH".into())),
        }
    }

    fn schemes(&self) -> CliResult<Vec<Scheme>> {
        self.scheme.iter().map(|s| s.parse::<Scheme>().map_err(CliError::from)).collect()
    }

    fn dir(&self, cfg: &ExperimentConfig) -> PathBuf {
        self.out.join(&cfg.name)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment and write snapshots, diagnostics and a manifest.
    Run(Target),
    /// Run several schemes from the same initial data and tabulate them.
    Compare(Target),
    /// Run a resolution sweep and fit convergence slopes.
    Converge(Target),
    /// Write gnuplot scripts for the runs in a directory.
    EmitPlots { dir: PathBuf },
    /// List the bundled experiments.
    ListExperiments,
}

fn say(quiet: bool, text: &str) {
    if !quiet {
        print!("{text}");
    }
}

fn execute(cli: &Cli) -> CliResult<()> {
    let quiet = cli.quiet;
    match &cli.command {
        Command::Run(target) => {
            let mut cfg = target.load()?;
            match target.schemes()?.as_slice() {
                [] => {}
                [one] => cfg.stepper.scheme = *one,
                _ => return Err(CliError::Invalid("run takes a single scheme".into())),
            }
            let dir = target.dir(&cfg);
            let out = run(&cfg, &dir)?;
            let s = out.summary;
            say(
                quiet,
                &format!(
                    "{} ({}): {} steps, min q {:.4e}, min h {:.4e}, invariant drift {:.3e}\nwrote {}\n",
                    cfg.name,
                    cfg.stepper.scheme,
                    s.steps,
                    s.min_q,
                    s.min_h,
                    s.max_inv_drift,
                    dir.display()
                ),
            );
        }
        Command::Compare(target) => {
            let cfg = target.load()?;
            let mut schemes = target.schemes()?;
            if schemes.is_empty() {
                schemes = cfg.schemes_or_default();
            }
            let dir = target.dir(&cfg);
            let out = compare(&cfg, &schemes, &dir)?;
            say(quiet, &format!("{} against Strang with dt = {}\n", cfg.name, out.reference_dt));
            say(quiet, &out.table());
        }
        Command::Converge(target) => {
            let cfg = target.load()?;
            let mut schemes = target.schemes()?;
            if schemes.is_empty() {
                schemes = cfg.schemes_or_default();
            }
            let dir = target.dir(&cfg);
            let report = converge(&cfg, &schemes, &dir)?;
            say(quiet, &report.table());
        }
        Command::EmitPlots { dir } => {
            for path in emit_plots(dir)? {
                say(quiet, &format!("{}\n", path.display()));
            }
        }
        Command::ListExperiments => {
            for name in rodwave_cli::bundled_names() {
                let cfg = rodwave_cli::bundled(name)?;
                say(quiet, &format!("{name:<28}{}\n", cfg.description));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = if cli.quiet { "error" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.report());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
