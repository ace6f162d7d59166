//! Eight recurrently connected neurons learn to split the bars task between them.
//!
//! `cargo run --release --example unsupervised_bars`

use infomorphic::experiment::{run_unsupervised, ExperimentConfig, ExperimentKind};
use infomorphic::pid::PidAtoms;

fn main() -> infomorphic::Result<()> {
    let mut cfg = ExperimentConfig::preset(ExperimentKind::Unsupervised);
    cfg.eval_every = 10;
    cfg.unsupervised.mi_samples = 20_000;
    for i in 0..3 {
        let run = run_unsupervised(&cfg, i)?;
        let atoms = PidAtoms::mean(&run.final_atoms());
        let bars: Vec<usize> = run.preferred_bars.iter().map(|b| b.0).collect();
        println!(
            "run {i}: layer MI {:.2} bits, unique receptive {:.3} bits, bars per neuron {bars:?}, all bars: {}",
            run.layer_mi,
            atoms.i_unq_r,
            run.encodes_all_bars(cfg.unsupervised.min_bar_bits)
        );
    }
    Ok(())
}
