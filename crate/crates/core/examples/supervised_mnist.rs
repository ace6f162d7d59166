//! Train one supervised layer of ten infomorphic neurons on MNIST.
//!
//! Needs the MNIST IDX files in `$INFOMORPH_MNIST_DIR` (default `data/mnist`).
//!
//! `cargo run --release --example supervised_mnist`

use std::sync::Arc;

use infomorphic::experiment::{load_config_mnist, run_supervised, ExperimentConfig, ExperimentKind};
use infomorphic::metrics::mean_atoms_by_batch;

fn main() -> infomorphic::Result<()> {
    let mut cfg = ExperimentConfig::preset(ExperimentKind::Supervised);
    cfg.eval_every = 100;
    let data = Arc::new(load_config_mnist(&cfg)?);
    let run = run_supervised(&cfg, 0, &data)?;
    for (batch, a) in mean_atoms_by_batch(&run.records) {
        println!("batch {batch:>4}  I_red {:.3}  H(Y) {:.3}", a.i_red, a.h_y);
    }
    println!("test accuracy {:.4}", run.test_accuracy);
    println!("neurons flipped to canonical polarity: {:?}", run.flipped);
    Ok(())
}
