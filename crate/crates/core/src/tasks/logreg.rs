//! One-vs-all logistic regression trained by full-batch gradient descent.

use ndarray::{Array1, Array2, ArrayView2, Axis};
use rand::Rng;

use crate::error::{Error, Result};
use crate::metrics::argmax;

#[derive(Debug, Clone, PartialEq)]
pub struct LogisticRegression {
    /// `n_features × n_classes`
    pub weights: Array2<f32>,
    pub bias: Array1<f32>,
}

fn sigmoid32(x: f32) -> f32 {
    1.0 / (1.0 + (-x).exp())
}

impl LogisticRegression {
    /// Weights and biases uniform in `[-init, init]`.
    pub fn new<R: Rng + ?Sized>(n_features: usize, n_classes: usize, init: f32, rng: &mut R) -> Self {
        let mut draw = || if init > 0.0 { rng.gen_range(-init..=init) } else { 0.0 };
        let weights = Array2::from_shape_simple_fn((n_features, n_classes), &mut draw);
        let bias = Array1::from_shape_simple_fn(n_classes, draw);
        Self { weights, bias }
    }

    /// `σ(x W + b)` for every row of `x`.
    pub fn predict_proba(&self, x: ArrayView2<'_, f32>) -> Array2<f32> {
        let mut z = x.dot(&self.weights);
        z += &self.bias;
        z.mapv_inplace(sigmoid32);
        z
    }

    /// Full-batch gradient descent on the summed per-class binary cross-entropies,
    /// averaged over samples.
    pub fn fit(&mut self, x: ArrayView2<'_, f32>, labels: &[usize], iters: usize, eta: f32) -> Result<()> {
        let (n, d) = x.dim();
        let k = self.bias.len();
        if labels.len() != n {
            return Err(Error::DimensionMismatch {
                what: "labels",
                expected: n,
                got: labels.len(),
            });
        }
        if d != self.weights.nrows() {
            return Err(Error::DimensionMismatch {
                what: "features",
                expected: self.weights.nrows(),
                got: d,
            });
        }
        if let Some(&bad) = labels.iter().find(|&&l| l >= k) {
            return Err(Error::DimensionMismatch {
                what: "label",
                expected: k,
                got: bad,
            });
        }
        let scale = eta / n as f32;
        for _ in 0..iters {
            let mut err = self.predict_proba(x);
            for (mut row, &l) in err.axis_iter_mut(Axis(0)).zip(labels) {
                row[l] -= 1.0;
            }
            let grad_w = x.t().dot(&err);
            let grad_b = err.sum_axis(Axis(0));
            self.weights.scaled_add(-scale, &grad_w);
            self.bias.scaled_add(-scale, &grad_b);
        }
        Ok(())
    }

    pub fn accuracy(&self, x: ArrayView2<'_, f32>, labels: &[usize]) -> f64 {
        let p = self.predict_proba(x);
        let hits = p
            .axis_iter(Axis(0))
            .zip(labels)
            .filter(|(row, &l)| {
                let row: Vec<f64> = row.iter().map(|&v| v as f64).collect();
                argmax(&row) == l
            })
            .count();
        hits as f64 / labels.len().max(1) as f64
    }

    /// Receptive field of class `k`.
    pub fn class_weights(&self, k: usize) -> Vec<f64> {
        self.weights.column(k).iter().map(|&v| v as f64).collect()
    }
}

pub fn train_logreg<R: Rng + ?Sized>(
    x: ArrayView2<'_, f32>,
    labels: &[usize],
    n_classes: usize,
    iters: usize,
    eta: f32,
    rng: &mut R,
) -> Result<LogisticRegression> {
    let mut model = LogisticRegression::new(x.ncols(), n_classes, 0.01, rng);
    model.fit(x, labels, iters, eta)?;
    Ok(model)
}
