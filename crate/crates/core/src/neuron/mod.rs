//! The infomorphic neuron: two input classes, stochastic binary output and a
//! local gradient-ascent rule on its own goal function.

mod activation;

pub use activation::{activation_partials, sigmoid, soft_saturate, ActivationKind, SATURATION_EXPONENT};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{axpy, dot, Split};
use crate::pid::{dg_dtheta_all, pid_decompose, BinIndex, BinnedJointModel, BinningSpec, GoalParams, PidAtoms};

/// A batch of input pairs `(x_R, x_C)` as seen by one neuron.
pub trait Observations {
    fn len(&self) -> usize;

    fn receptive(&self, i: usize) -> Split<'_>;

    fn contextual(&self, i: usize) -> Split<'_>;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl Observations for [(Vec<f64>, Vec<f64>)] {
    fn len(&self) -> usize {
        <[_]>::len(self)
    }

    fn receptive(&self, i: usize) -> Split<'_> {
        Split::whole(&self[i].0)
    }

    fn contextual(&self, i: usize) -> Split<'_> {
        Split::whole(&self[i].1)
    }
}

impl Observations for Vec<(Vec<f64>, Vec<f64>)> {
    fn len(&self) -> usize {
        <[_]>::len(self)
    }

    fn receptive(&self, i: usize) -> Split<'_> {
        Split::whole(&self[i].0)
    }

    fn contextual(&self, i: usize) -> Split<'_> {
        Split::whole(&self[i].1)
    }
}

/// Batch gradient of the goal with respect to all weights and biases.
#[derive(Debug, Clone, PartialEq)]
pub struct GradientPair {
    pub grad_w_r: Vec<f64>,
    pub grad_b_r: f64,
    pub grad_w_c: Vec<f64>,
    pub grad_b_c: f64,
}

impl GradientPair {
    pub fn zeros(n_r: usize, n_c: usize) -> Self {
        Self {
            grad_w_r: vec![0.0; n_r],
            grad_b_r: 0.0,
            grad_w_c: vec![0.0; n_c],
            grad_b_c: 0.0,
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.grad_w_r
            .iter()
            .chain(&self.grad_w_c)
            .chain([&self.grad_b_r, &self.grad_b_c])
            .fold(0.0, |m, g| m.max(g.abs()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InfomorphicNeuron {
    pub w_r: Vec<f64>,
    pub w_c: Vec<f64>,
    /// Receptive bias, `R = w_r · x_r - b_r`.
    pub b_r: f64,
    /// Contextual bias, `C = w_c · x_c - b_c`.
    pub b_c: f64,
    pub activation: ActivationKind,
    pub spec_r: BinningSpec,
    pub spec_c: BinningSpec,
    pub goal: GoalParams,
}

impl InfomorphicNeuron {
    /// A neuron with all weights and biases at zero.
    pub fn new(
        n_receptive: usize,
        n_contextual: usize,
        activation: ActivationKind,
        spec_r: BinningSpec,
        spec_c: BinningSpec,
        goal: GoalParams,
    ) -> Self {
        Self {
            w_r: vec![0.0; n_receptive],
            w_c: vec![0.0; n_contextual],
            b_r: 0.0,
            b_c: 0.0,
            activation,
            spec_r,
            spec_c,
            goal,
        }
    }

    pub fn n_receptive(&self) -> usize {
        self.w_r.len()
    }

    pub fn n_contextual(&self) -> usize {
        self.w_c.len()
    }

    /// Every weight and bias drawn uniformly from `[-b_init, b_init]`.
    pub fn init_weights<R: Rng + ?Sized>(&mut self, b_init: f64, rng: &mut R) {
        for w in self.w_r.iter_mut().chain(self.w_c.iter_mut()) {
            *w = rng.gen_range(-b_init..=b_init);
        }
        self.b_r = rng.gen_range(-b_init..=b_init);
        self.b_c = rng.gen_range(-b_init..=b_init);
    }

    pub fn integrate(&self, x_r: &[f64], x_c: &[f64]) -> Result<(f64, f64)> {
        self.check_dims(x_r.len(), x_c.len())?;
        Ok(self.integrate_split(Split::whole(x_r), Split::whole(x_c)))
    }

    fn check_dims(&self, n_r: usize, n_c: usize) -> Result<()> {
        if n_r != self.w_r.len() {
            return Err(Error::DimensionMismatch {
                what: "receptive input",
                expected: self.w_r.len(),
                got: n_r,
            });
        }
        if n_c != self.w_c.len() {
            return Err(Error::DimensionMismatch {
                what: "contextual input",
                expected: self.w_c.len(),
                got: n_c,
            });
        }
        Ok(())
    }

    #[inline]
    pub(crate) fn integrate_split(&self, x_r: Split<'_>, x_c: Split<'_>) -> (f64, f64) {
        (x_r.dot(&self.w_r) - self.b_r, x_c.dot(&self.w_c) - self.b_c)
    }

    pub fn theta(&self, r: f64, c: f64) -> f64 {
        self.activation.theta(r, c)
    }

    /// Samples the binary output: `+1` with probability `θ(r, c)`, else `-1`.
    pub fn fire<R: Rng + ?Sized>(&self, r: f64, c: f64, rng: &mut R) -> f64 {
        let theta = self.theta(r, c);
        if rng.gen::<f64>() < theta {
            1.0
        } else {
            -1.0
        }
    }

    fn bin_all(&self, integrated: &[(f64, f64)]) -> Result<Vec<(BinIndex, BinIndex)>> {
        integrated
            .iter()
            .map(|&(r, c)| Ok((self.spec_r.bin(r)?, self.spec_c.bin(c)?)))
            .collect()
    }

    /// Joint model of a batch of integrated inputs, θ taken at bin centers.
    pub fn joint_model(&self, integrated: &[(f64, f64)]) -> Result<BinnedJointModel> {
        let bins = self.bin_all(integrated)?;
        let activation = self.activation;
        BinnedJointModel::from_binned(self.spec_r, self.spec_c, &bins, move |r, c| activation.theta(r, c))
    }

    /// PID atoms of the neuron's output over a batch of integrated inputs.
    pub fn atoms(&self, integrated: &[(f64, f64)]) -> Result<PidAtoms> {
        Ok(pid_decompose(&self.joint_model(integrated)?))
    }

    pub fn integrate_batch<B: Observations + ?Sized>(&self, batch: &B) -> Result<Vec<(f64, f64)>> {
        (0..batch.len())
            .map(|i| {
                let (x_r, x_c) = (batch.receptive(i), batch.contextual(i));
                self.check_dims(x_r.len(), x_c.len())?;
                Ok(self.integrate_split(x_r, x_c))
            })
            .collect()
    }

    pub fn compute_gradients<B: Observations + ?Sized>(&self, batch: &B) -> Result<GradientPair> {
        if batch.is_empty() {
            return Err(Error::EmptySamples);
        }
        let integrated = self.integrate_batch(batch)?;
        self.gradients_from_integrated(batch, &integrated)
    }

    /// Batch gradient given the integrated inputs already computed for `batch`.
    ///
    /// Per sample, `f(r̃, c̃) · ∂A/∂r(r̃, c̃) · x_R` is accumulated, with
    /// `f = ∂g/∂θ · θ(1 - θ)` and everything but the raw inputs evaluated at
    /// the bin centers. Biases act as weights on a constant `-1` input.
    pub fn gradients_from_integrated<B: Observations + ?Sized>(
        &self,
        batch: &B,
        integrated: &[(f64, f64)],
    ) -> Result<GradientPair> {
        if integrated.is_empty() {
            return Err(Error::EmptySamples);
        }
        if integrated.len() != batch.len() {
            return Err(Error::DimensionMismatch {
                what: "integrated inputs",
                expected: batch.len(),
                got: integrated.len(),
            });
        }
        let bins = self.bin_all(integrated)?;
        let activation = self.activation;
        let model = BinnedJointModel::from_binned(self.spec_r, self.spec_c, &bins, move |r, c| activation.theta(r, c))?;
        let mut grads = GradientPair::zeros(self.w_r.len(), self.w_c.len());
        if self.goal.is_zero() {
            return Ok(grads);
        }
        let dg = dg_dtheta_all(&model, &self.goal);
        // per-cell factors f·∂A/∂r and f·∂A/∂c
        let factors: Vec<(f64, f64)> = model
            .cells()
            .iter()
            .zip(&dg)
            .map(|(cell, &d)| {
                let f = d * cell.theta * (1.0 - cell.theta);
                let r = self.spec_r.center(cell.r);
                let c = self.spec_c.center(cell.c);
                let (_, da_dr, da_dc) = activation.partials(r, c);
                (f * da_dr, f * da_dc)
            })
            .collect();
        for (i, &(rb, cb)) in bins.iter().enumerate() {
            let cell = model.cell_index(rb, cb).expect("every binned sample has a cell");
            let (fr, fc) = factors[cell];
            if fr != 0.0 {
                batch.receptive(i).axpy_into(fr, &mut grads.grad_w_r);
                grads.grad_b_r -= fr;
            }
            if fc != 0.0 {
                batch.contextual(i).axpy_into(fc, &mut grads.grad_w_c);
                grads.grad_b_c -= fc;
            }
        }
        let inv_n = 1.0 / batch.len() as f64;
        grads.grad_w_r.iter_mut().for_each(|g| *g *= inv_n);
        grads.grad_w_c.iter_mut().for_each(|g| *g *= inv_n);
        grads.grad_b_r *= inv_n;
        grads.grad_b_c *= inv_n;
        Ok(grads)
    }

    /// Gradient ascent step with receptive pullback:
    /// `w_R ← w_R − 2λ w_R + η ∇w_R` (bias `b_R` likewise), `w_C ← w_C + η ∇w_C`.
    pub fn apply_update(&mut self, grads: &GradientPair, eta: f64, lambda: f64) {
        let keep = 1.0 - 2.0 * lambda;
        if keep != 1.0 {
            self.w_r.iter_mut().for_each(|w| *w *= keep);
            self.b_r *= keep;
        }
        axpy(eta, &grads.grad_w_r, &mut self.w_r);
        axpy(eta, &grads.grad_w_c, &mut self.w_c);
        self.b_r += eta * grads.grad_b_r;
        self.b_c += eta * grads.grad_b_c;
    }

    pub fn receptive_norm(&self) -> f64 {
        dot(&self.w_r, &self.w_r).sqrt()
    }
}
