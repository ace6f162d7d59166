//! Data for the three experiments and the reference baselines.

pub mod bars;
pub mod logreg;
pub mod memory;
pub mod mnist;

pub use bars::{bars_stimulus, generate_bars, render_bars, sample_bars, BarsSample};
pub use logreg::{train_logreg, LogisticRegression};
pub use memory::{generate_patterns, HopfieldNet};
pub use mnist::{load_mnist, mnist_dir, Mnist, MnistDataset, MnistSource};
