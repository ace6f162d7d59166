use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use infomorphic::experiment::{run_experiment, write_outputs, ExperimentConfig, ExperimentKind, Outcome};
use infomorphic::metrics::mean;

#[derive(Parser)]
#[command(name = "infomorph", version, about = "Train and evaluate infomorphic networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment from a TOML config file or a preset name.
    Run {
        config: String,
        /// Base seed; run i uses seed + i.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        runs: Option<usize>,
        /// Output directory for the CSV files.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads (default: all cores).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Check a config without running it.
    Validate { config: String },
    /// Built-in configurations.
    Presets {
        #[command(subcommand)]
        action: PresetAction,
    },
}

#[derive(Subcommand)]
enum PresetAction {
    List,
    /// Print a preset as TOML.
    Show { name: String },
}

fn load(config: &str) -> Result<ExperimentConfig, String> {
    let path = Path::new(config);
    if path.exists() {
        return ExperimentConfig::load(path).map_err(|e| format!("{}: {e}", path.display()));
    }
    ExperimentKind::from_name(config)
        .map(ExperimentConfig::preset)
        .ok_or_else(|| format!("{config}: no such file or preset"))
}

fn report(outcome: &Outcome) {
    match outcome {
        Outcome::Supervised { runs, logreg } => {
            for r in runs {
                println!("run {:>3}  test accuracy {:.4}  flipped {}", r.run_index, r.test_accuracy, r.flipped.len());
            }
            let acc: Vec<f64> = runs.iter().map(|r| r.test_accuracy).collect();
            println!("mean test accuracy {:.4}", mean(&acc));
            if let Some(b) = logreg {
                println!("logistic regression test accuracy {:.4}", b.test_accuracy);
            }
        }
        Outcome::Unsupervised { runs } => {
            for r in runs {
                let bars: Vec<String> = r.preferred_bars.iter().map(|b| b.0.to_string()).collect();
                println!("run {:>3}  layer MI {:.3} bits  bars [{}]", r.run_index, r.layer_mi, bars.join(" "));
            }
        }
        Outcome::Memory { runs } => {
            for r in runs {
                if let Some(s) = r.scores.first() {
                    println!(
                        "patterns {:>3}  run {:>3}  accuracy at β={} infomorphic {:.3} hopfield {:.3}",
                        r.n_patterns, r.run_index, s.noise_beta, s.infomorphic, s.hopfield
                    );
                }
            }
        }
    }
}

fn run(config: &str, seed: Option<u64>, runs: Option<usize>, out: Option<PathBuf>, threads: Option<usize>) -> Result<(), String> {
    let mut cfg = load(config)?;
    if let Some(s) = seed {
        cfg.base_seed = s;
    }
    if let Some(n) = runs {
        cfg.n_runs = n;
    }
    let dir = out
        .or_else(|| cfg.output_dir.clone())
        .unwrap_or_else(|| PathBuf::from("results").join(cfg.experiment.name()));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| e.to_string())?;
    let outcome = pool.install(|| run_experiment(&cfg)).map_err(|e| e.to_string())?;
    report(&outcome);
    for path in write_outputs(&cfg, &outcome, &dir).map_err(|e| e.to_string())? {
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run {
            config,
            seed,
            runs,
            out,
            threads,
        } => run(&config, seed, runs, out, threads),
        Command::Validate { config } => load(&config).and_then(|cfg| {
            let problems = cfg.validate();
            if problems.is_empty() {
                println!("{config}: ok ({} experiment, {} runs)", cfg.experiment.name(), cfg.n_runs);
                Ok(())
            } else {
                Err(problems.join("\n"))
            }
        }),
        Command::Presets { action: PresetAction::List } => {
            for kind in ExperimentKind::ALL {
                println!("{}", kind.name());
            }
            Ok(())
        }
        Command::Presets {
            action: PresetAction::Show { name },
        } => ExperimentKind::from_name(&name)
            .ok_or_else(|| format!("unknown preset {name}"))
            .map(|k| ExperimentConfig::preset(k).to_toml())
            .map(|t| print!("{t}")),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
