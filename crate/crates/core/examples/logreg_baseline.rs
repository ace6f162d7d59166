//! One-vs-all logistic regression on MNIST pixels.
//!
//! `cargo run --release --example logreg_baseline -- 300`

use infomorphic::experiment::{load_config_mnist, logreg_baseline, ExperimentConfig, ExperimentKind};

fn main() -> infomorphic::Result<()> {
    let mut cfg = ExperimentConfig::preset(ExperimentKind::Supervised);
    if let Some(iters) = std::env::args().nth(1).and_then(|s| s.parse().ok()) {
        cfg.supervised.logreg_iters = iters;
    }
    let data = load_config_mnist(&cfg)?;
    let acc = logreg_baseline(&cfg, &data)?;
    println!(
        "{} iterations: test accuracy {:.4}, train accuracy {:.4}",
        cfg.supervised.logreg_iters, acc.test_accuracy, acc.train_accuracy
    );
    Ok(())
}
