//! Binned joint distributions, the union-event PID and the goal function.
//!
//! A neuron's integrated inputs are binned into `(r̃, c̃)`; together with the
//! firing table `θ(r̃, c̃)` this fixes `p(y, r̃, c̃)`. Every information
//! quantity, the goal `G` and the pointwise learning signal `∂g/∂θ` are
//! computed from that one model.

mod binning;
mod decompose;
mod goal;
mod joint;

pub use binning::{bin_center, bin_value, BinIndex, BinningSpec};
pub use decompose::{conditional_entropies, i_sx_redundancy, pid_decompose, ConditionalEntropies, PidAtoms};
pub use goal::{
    dg_dtheta, dg_dtheta_all, goal_value, goal_value_entropic, reparameterize, GoalParams, ATOM_TO_ENTROPY,
    ENTROPY_TO_ATOM,
};
pub use joint::{estimate_joint, marginal_theta, union_probabilities, BinnedJointModel, Cell, ThetaMarginals, PROB_EPS};

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> BinningSpec {
        BinningSpec::new(-1.0, 1.0, 2).unwrap()
    }

    /// Uniform 2x2 grid with theta given per (r, c) in {1, 2}^2.
    fn binary_model(theta: impl Fn(usize, usize) -> f64) -> BinnedJointModel {
        let mut cells = Vec::new();
        for r in 1..=2 {
            for c in 1..=2 {
                cells.push(Cell {
                    r: BinIndex(r),
                    c: BinIndex(c),
                    mass: 0.25,
                    theta: theta(r, c),
                });
            }
        }
        BinnedJointModel::from_cells(spec(), spec(), cells).unwrap()
    }

    #[test]
    fn xor_atoms() {
        let model = binary_model(|r, c| if r != c { 1.0 } else { 0.0 });
        let a = pid_decompose(&model);
        let l23 = (2.0f64 / 3.0).log2();
        assert!((a.i_red - l23).abs() < 1e-9);
        assert!((a.i_unq_r + l23).abs() < 1e-9);
        assert!((a.i_unq_c + l23).abs() < 1e-9);
        assert!((a.i_syn - (1.0 + l23)).abs() < 1e-9);
        assert!(a.h_res.abs() < 1e-9);
        assert!(a.consistency_error() < 1e-12);
    }

    #[test]
    fn copy_atoms() {
        let model = binary_model(|r, _| if r == 2 { 1.0 } else { 0.0 });
        let a = pid_decompose(&model);
        let l43 = (4.0f64 / 3.0).log2();
        assert!((a.i_red - l43).abs() < 1e-9);
        assert!((a.i_unq_r - (1.0 - l43)).abs() < 1e-9);
        assert!((a.i_unq_c + l43).abs() < 1e-9);
        assert!((a.i_syn - l43).abs() < 1e-9);
        assert!((a.i_red + a.i_unq_c).abs() < 1e-9);
    }

    #[test]
    fn constant_theta_has_no_information() {
        let model = binary_model(|_, _| 0.3);
        let a = pid_decompose(&model);
        for v in [a.i_unq_r, a.i_unq_c, a.i_red, a.i_syn] {
            assert!(v.abs() < 1e-12, "{a:?}");
        }
        assert!((a.h_res - a.h_y).abs() < 1e-12);
        assert!(i_sx_redundancy(&model).abs() < 1e-12);
    }

    #[test]
    fn perfectly_correlated_redundancy_is_one_bit() {
        let cells = vec![
            Cell {
                r: BinIndex(1),
                c: BinIndex(1),
                mass: 0.5,
                theta: 0.0,
            },
            Cell {
                r: BinIndex(2),
                c: BinIndex(2),
                mass: 0.5,
                theta: 1.0,
            },
        ];
        let model = BinnedJointModel::from_cells(spec(), spec(), cells).unwrap();
        assert!((i_sx_redundancy(&model) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn reparameterization_examples() {
        let g = reparameterize([0.1, 0.1, 1.0, 0.1, 0.0]);
        let expected = [0.1, 0.0, 0.0, -0.1, 0.9];
        for (a, b) in g.iter().zip(expected) {
            assert!((a - b).abs() < 1e-15);
        }
        assert_eq!(reparameterize([1.0, 0.0, 0.0, 0.0, 0.0]), [1.0, -1.0, 0.0, 0.0, -1.0]);
        assert_eq!(reparameterize([0.0; 5]), [0.0; 5]);
    }

    #[test]
    fn matrices_are_mutual_inverses() {
        for i in 0..5 {
            for j in 0..5 {
                let ab: i32 = (0..5).map(|k| ATOM_TO_ENTROPY[i][k] * ENTROPY_TO_ATOM[k][j]).sum();
                let ba: i32 = (0..5).map(|k| ENTROPY_TO_ATOM[i][k] * ATOM_TO_ENTROPY[k][j]).sum();
                let id = i32::from(i == j);
                assert_eq!(ab, id);
                assert_eq!(ba, id);
            }
        }
    }

    #[test]
    fn goal_picks_atoms() {
        let model = binary_model(|r, c| if r != c { 1.0 } else { 0.0 });
        let a = pid_decompose(&model);
        let g = goal_value(&a, &GoalParams::new([1.0, 0.0, 0.0, 0.0, 0.0]));
        assert!((g - 0.584962500721).abs() < 1e-9);
        assert_eq!(goal_value(&PidAtoms::default(), &GoalParams::new([0.1, 0.1, 1.0, 0.1, 0.0])), 0.0);
    }

    #[test]
    fn zero_goal_has_zero_gradient() {
        let model = binary_model(|r, c| 0.1 * (r + 2 * c) as f64);
        assert!(dg_dtheta_all(&model, &GoalParams::new([0.0; 5])).iter().all(|&d| d == 0.0));
    }

    #[test]
    fn symmetric_theta_zeroes_log_terms() {
        let model = binary_model(|_, _| 0.5);
        let params = GoalParams::from_entropy_weights([0.7, -0.3, 0.2, 0.0, 0.0]);
        for d in dg_dtheta_all(&model, &params) {
            assert!(d.abs() < 1e-12);
        }
    }

    #[test]
    fn goal_params_roundtrip_through_entropy_weights() {
        let p = GoalParams::new([0.3, -0.2, 1.0, 0.1, 0.5]);
        let q = GoalParams::from_entropy_weights(p.gamma_small());
        for (a, b) in p.gamma_caps().iter().zip(q.gamma_caps()) {
            assert!((a - b).abs() < 1e-15);
        }
    }
}
