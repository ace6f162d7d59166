pub mod error;
pub mod experiment;
pub mod linalg;
pub mod metrics;
pub mod network;
pub mod neuron;
pub mod pid;
pub mod seed;
pub mod tasks;

pub use error::{Error, Result};
