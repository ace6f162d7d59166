//! Finite-difference oracle for neuron gradients with every sample pinned to its bin.

use std::collections::BTreeMap;

use infomorphic::neuron::{sigmoid, ActivationKind, InfomorphicNeuron};
use infomorphic::pid::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Batch = Vec<(Vec<f64>, Vec<f64>)>;

/// Which parameter a perturbation touches.
#[derive(Clone, Copy, Debug)]
pub enum Coord {
    WR(usize),
    BR,
    WC(usize),
    BC,
}

/// Goal value after shifting one parameter by `eps`, with every sample held in
/// the bin it occupied at `eps = 0`.
///
/// A sample contributes `σ(A(center_r + Δr, center_c + Δc))`, where `Δr, Δc`
/// are the changes of its own integrated inputs; a bin's θ is the mean over its
/// samples.
pub fn frozen_goal(neuron: &InfomorphicNeuron, batch: &Batch, coord: Coord, eps: f64) -> f64 {
    let mut groups: BTreeMap<(BinIndex, BinIndex), (usize, f64)> = BTreeMap::new();
    for (x_r, x_c) in batch {
        let r: f64 = x_r.iter().zip(&neuron.w_r).map(|(x, w)| x * w).sum::<f64>() - neuron.b_r;
        let c: f64 = x_c.iter().zip(&neuron.w_c).map(|(x, w)| x * w).sum::<f64>() - neuron.b_c;
        let (dr, dc) = match coord {
            Coord::WR(j) => (eps * x_r[j], 0.0),
            Coord::BR => (-eps, 0.0),
            Coord::WC(j) => (0.0, eps * x_c[j]),
            Coord::BC => (0.0, -eps),
        };
        let rb = neuron.spec_r.bin(r).unwrap();
        let cb = neuron.spec_c.bin(c).unwrap();
        let cr = neuron.spec_r.center(rb) + dr;
        let cc = neuron.spec_c.center(cb) + dc;
        let theta = sigmoid(neuron.activation.value(cr, cc));
        let e = groups.entry((rb, cb)).or_insert((0, 0.0));
        e.0 += 1;
        e.1 += theta;
    }
    let n = batch.len() as f64;
    let cells = groups
        .into_iter()
        .map(|((r, c), (k, sum))| Cell {
            r,
            c,
            mass: k as f64 / n,
            theta: sum / k as f64,
        })
        .collect();
    let model = BinnedJointModel::from_cells(neuron.spec_r, neuron.spec_c, cells).unwrap();
    goal_value(&pid_decompose(&model), &neuron.goal)
}

pub fn random_setup(rng: &mut ChaCha8Rng, activation: ActivationKind, goal: [f64; 5]) -> (InfomorphicNeuron, Batch) {
    let n_r = rng.gen_range(1..=5);
    let n_c = rng.gen_range(1..=5);
    let spec = BinningSpec::new(-3.0, 3.0, 6).unwrap();
    let mut neuron = InfomorphicNeuron::new(n_r, n_c, activation, spec, spec, GoalParams::new(goal));
    neuron.init_weights(1.0, rng);
    let n = rng.gen_range(20..=100);
    let batch = (0..n)
        .map(|_| {
            (
                (0..n_r).map(|_| rng.gen_range(-1.5..1.5)).collect(),
                (0..n_c).map(|_| rng.gen_range(-1.5..1.5)).collect(),
            )
        })
        .collect();
    (neuron, batch)
}
