//! Store random patterns in a recurrent infomorphic network and recall them
//! from noisy cues, next to a Hopfield network holding the same patterns.
//!
//! `cargo run --release --example associative_memory -- 12`

use infomorphic::experiment::{run_memory, ExperimentConfig, ExperimentKind};

fn main() -> infomorphic::Result<()> {
    let n_patterns: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(12);
    let mut cfg = ExperimentConfig::preset(ExperimentKind::Memory);
    cfg.eval_every = 0;
    let run = run_memory(&cfg, 0, n_patterns)?;
    println!("{n_patterns} patterns, {} neurons", cfg.memory.n_neurons);
    println!("weight symmetry {:.3}, similarity to Hebbian weights {:.3}", run.weight_symmetry, run.hebbian_similarity);
    for s in &run.scores {
        println!("β = {:.1}  infomorphic {:.3}  Hopfield {:.3}", s.noise_beta, s.infomorphic, s.hopfield);
    }
    Ok(())
}
