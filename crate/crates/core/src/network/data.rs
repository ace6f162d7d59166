use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::seed::Stream;

/// One input presentation: the receptive vector and, for labelled tasks, the class.
#[derive(Debug, Clone, PartialEq)]
pub struct Stimulus {
    pub receptive: Vec<f64>,
    pub label: Option<usize>,
}

impl Stimulus {
    pub fn new(receptive: Vec<f64>) -> Self {
        Self { receptive, label: None }
    }

    pub fn labelled(receptive: Vec<f64>, label: usize) -> Self {
        Self {
            receptive,
            label: Some(label),
        }
    }
}

pub trait DataSource {
    fn next_stimulus(&mut self, rng: &mut Stream) -> Result<Stimulus>;

    fn draw(&mut self, n: usize, rng: &mut Stream) -> Result<Vec<Stimulus>> {
        (0..n).map(|_| self.next_stimulus(rng)).collect()
    }
}

/// Uniform sampling with replacement from a fixed pool.
#[derive(Debug, Clone)]
pub struct PoolSource {
    pool: Arc<Vec<Stimulus>>,
}

impl PoolSource {
    pub fn new(pool: Arc<Vec<Stimulus>>) -> Result<Self> {
        if pool.is_empty() {
            return Err(Error::EmptySamples);
        }
        Ok(Self { pool })
    }

    pub fn pool(&self) -> &[Stimulus] {
        &self.pool
    }
}

impl DataSource for PoolSource {
    fn next_stimulus(&mut self, rng: &mut Stream) -> Result<Stimulus> {
        Ok(self.pool[rng.gen_range(0..self.pool.len())].clone())
    }
}

/// Hands out a fixed list in order and fails once it runs dry.
#[derive(Debug, Clone)]
pub struct SequentialSource {
    items: Vec<Stimulus>,
    next: usize,
}

impl SequentialSource {
    pub fn new(items: Vec<Stimulus>) -> Self {
        Self { items, next: 0 }
    }
}

impl DataSource for SequentialSource {
    fn next_stimulus(&mut self, _rng: &mut Stream) -> Result<Stimulus> {
        let item = self.items.get(self.next).cloned().ok_or(Error::Exhausted(self.items.len()))?;
        self.next += 1;
        Ok(item)
    }
}

/// Stimuli produced on demand by a generator closure.
pub struct GeneratorSource<F>(pub F);

impl<F: FnMut(&mut Stream) -> Stimulus> DataSource for GeneratorSource<F> {
    fn next_stimulus(&mut self, rng: &mut Stream) -> Result<Stimulus> {
        Ok((self.0)(rng))
    }
}
