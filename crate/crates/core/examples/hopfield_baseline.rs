//! Capacity curve of a classical Hopfield network with 100 neurons.
//!
//! `cargo run --release --example hopfield_baseline`

use infomorphic::metrics::{cosine_similarity, mean};
use infomorphic::network::corrupt;
use infomorphic::seed;
use infomorphic::tasks::{generate_patterns, HopfieldNet};

fn main() -> infomorphic::Result<()> {
    let n = 100;
    let mut rng = seed::stream(0, seed::PATTERNS);
    for p in [5, 10, 12, 14, 16, 20, 30] {
        let mut scores = Vec::new();
        for _ in 0..5 {
            let patterns = generate_patterns(&mut rng, p, n);
            let net = HopfieldNet::train(&patterns)?;
            for x in &patterns {
                let cue = corrupt(x, 0.1, &mut rng);
                let last = net.recall(&cue, 20).pop().expect("non-empty");
                scores.push(cosine_similarity(&last, x)?);
            }
        }
        println!("{p:>3} patterns  recall {:.3}", mean(&scores));
    }
    Ok(())
}
