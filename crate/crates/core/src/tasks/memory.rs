//! Balanced binary memory patterns and the outer-product Hopfield baseline.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::dot;

/// `p_count` patterns of length `n`, each a random arrangement of `n/2` ones and `n/2` minus ones.
pub fn generate_patterns<R: Rng + ?Sized>(rng: &mut R, p_count: usize, n: usize) -> Vec<Vec<f64>> {
    (0..p_count)
        .map(|_| {
            let mut p: Vec<f64> = (0..n).map(|i| if i < n / 2 { 1.0 } else { -1.0 }).collect();
            p.shuffle(rng);
            p
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct HopfieldNet {
    pub weights: Vec<Vec<f64>>,
}

#[inline]
fn sign(x: f64) -> f64 {
    if x >= 0.0 {
        1.0
    } else {
        -1.0
    }
}

impl HopfieldNet {
    /// `W = (1/N) Σ_p ξ_p ξ_pᵀ` with the diagonal zeroed.
    pub fn train(patterns: &[Vec<f64>]) -> Result<Self> {
        let n = patterns.first().ok_or(Error::EmptySamples)?.len();
        let mut w = vec![vec![0.0; n]; n];
        for p in patterns {
            if p.len() != n {
                return Err(Error::DimensionMismatch {
                    what: "pattern",
                    expected: n,
                    got: p.len(),
                });
            }
            for i in 0..n {
                for j in 0..n {
                    w[i][j] += p[i] * p[j];
                }
            }
        }
        for (i, row) in w.iter_mut().enumerate() {
            for v in row.iter_mut() {
                *v /= n as f64;
            }
            row[i] = 0.0;
        }
        Ok(Self { weights: w })
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    /// Synchronous updates `s ← sign(W s)` with `sign(0) = +1`. Returns the
    /// state after each step; `n_steps = 0` gives just the cue.
    pub fn recall(&self, cue: &[f64], n_steps: usize) -> Vec<Vec<f64>> {
        let mut states = vec![cue.to_vec()];
        for _ in 0..n_steps {
            let s = states.last().expect("non-empty");
            let next = self.weights.iter().map(|row| sign(dot(row, s))).collect();
            states.push(next);
        }
        if n_steps > 0 {
            states.remove(0);
        }
        states
    }

    pub fn energy(&self, s: &[f64]) -> f64 {
        -0.5 * self.weights.iter().zip(s).map(|(row, si)| si * dot(row, s)).sum::<f64>()
    }
}
