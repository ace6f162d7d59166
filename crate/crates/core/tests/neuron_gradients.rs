mod common;

use common::frozen::*;
use infomorphic::neuron::{ActivationKind, InfomorphicNeuron};
use infomorphic::pid::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn gradients_match_frozen_binning_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let goals = [
        [0.1, 0.1, 1.0, 0.1, 0.0],
        [1.0, 0.0, 0.0, 0.0, 0.0],
        [0.3, -0.7, 0.2, 0.5, 0.4],
    ];
    let kinds = [ActivationKind::ModulatedContext, ActivationKind::SaturatingSum { scale: 8.0 }];
    let h = 1e-5;
    let mut checked = 0;
    for kind in kinds {
        for goal in goals {
            for _ in 0..10 {
                let (neuron, batch) = random_setup(&mut rng, kind, goal);
                let grads = neuron.compute_gradients(&batch).unwrap();
                let mut coords: Vec<(Coord, f64)> = vec![(Coord::BR, grads.grad_b_r), (Coord::BC, grads.grad_b_c)];
                coords.extend(grads.grad_w_r.iter().enumerate().map(|(j, &g)| (Coord::WR(j), g)));
                coords.extend(grads.grad_w_c.iter().enumerate().map(|(j, &g)| (Coord::WC(j), g)));
                let scale = grads.max_abs();
                for (coord, analytic) in coords {
                    let fd = (frozen_goal(&neuron, &batch, coord, h) - frozen_goal(&neuron, &batch, coord, -h)) / (2.0 * h);
                    // components far below the gradient's own size are compared absolutely
                    let tol = 1e-4 * analytic.abs().max(1e-3 * scale).max(1e-12);
                    assert!(
                        (fd - analytic).abs() <= tol,
                        "{kind:?} {goal:?} {coord:?}: fd {fd} vs analytic {analytic}"
                    );
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 200);
}

#[test]
fn saturated_bins_contribute_nothing() {
    // a wide binning whose outer bins drive θ to within 1e-10 of 0 or 1
    let spec = BinningSpec::new(-40.0, 40.0, 8).unwrap();
    let goal = GoalParams::new([0.1, 0.1, 1.0, 0.1, 0.0]);
    let kind = ActivationKind::ModulatedContext;
    let mut neuron = InfomorphicNeuron::new(1, 1, kind, spec, spec, goal);
    neuron.w_r = vec![1.0];
    neuron.w_c = vec![1.0];
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let batch: Batch = (0..400)
        .map(|_| (vec![rng.gen_range(-45.0..45.0)], vec![rng.gen_range(-45.0..45.0)]))
        .collect();
    let integrated = neuron.integrate_batch(&batch).unwrap();
    let model = neuron.joint_model(&integrated).unwrap();
    let dg = dg_dtheta_all(&model, &neuron.goal);
    let mut saturated = 0;
    for (cell, d) in model.cells().iter().zip(&dg) {
        let spread = cell.theta * (1.0 - cell.theta);
        if spread <= 1e-10 {
            saturated += 1;
            assert!((d * spread).abs() <= 1e-9, "f = {} at θ = {}", d * spread, cell.theta);
        }
    }
    assert!(saturated > 0);
}
