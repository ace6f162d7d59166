mod common;

use common::*;
use infomorphic::pid::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn redundancy_matches_enumeration_on_logic_gates() {
    let cases: [([[f64; 2]; 2], f64); 3] = [
        ([[0.0, 1.0], [1.0, 0.0]], (2.0f64 / 3.0).log2()),
        ([[0.0, 0.0], [1.0, 1.0]], (4.0f64 / 3.0).log2()),
        ([[0.4, 0.4], [0.4, 0.4]], 0.0),
    ];
    for (theta, expected) in cases {
        let (mass, theta) = binary_grid(theta);
        let oracle = JointTable::from_theta(&mass, &theta).redundancy();
        let model = model_from_grid(&mass, &theta);
        assert!((oracle - expected).abs() < 1e-12);
        assert!((i_sx_redundancy(&model) - oracle).abs() < 1e-9);
    }
}

#[test]
fn decomposition_matches_enumeration_on_random_grids() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let (mass, theta) = random_grid(&mut rng, 3, 4, 0.01);
        let table = JointTable::from_theta(&mass, &theta);
        let atoms = pid_decompose(&model_from_grid(&mass, &theta));
        assert!((atoms.i_red - table.redundancy()).abs() < 1e-9);
        assert!((atoms.i_y_r - table.i_y_r()).abs() < 1e-9);
        assert!((atoms.i_y_c - table.i_y_c()).abs() < 1e-9);
        assert!((atoms.i_y_rc - table.i_y_rc()).abs() < 1e-9);
        assert!((atoms.h_y - table.h_y()).abs() < 1e-9);
    }
}

#[test]
fn redundancy_minus_synergy_is_co_information() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let (mass, theta) = random_grid(&mut rng, 4, 3, 0.01);
        let model = model_from_grid(&mass, &theta);
        let atoms = pid_decompose(&model);
        let h = conditional_entropies(&model);
        // I(Y:R:C) = I(Y:R,C) - I(Y:R|C) - I(Y:C|R)
        let i_r_given_c = h.h_y_given_c - h.h_y_given_rc;
        let i_c_given_r = h.h_y_given_r - h.h_y_given_rc;
        let coinfo = atoms.i_y_rc - i_r_given_c - i_c_given_r;
        assert!((atoms.i_red - atoms.i_syn - coinfo).abs() < 1e-9);
    }
}

#[test]
fn dg_dtheta_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let goals = [
        [0.1, 0.1, 1.0, 0.1, 0.0],
        [1.0, 0.0, 0.0, 0.0, 0.0],
        [0.3, -0.7, 0.2, 0.5, 0.4],
    ];
    let h = 1e-6;
    for caps in goals {
        let params = GoalParams::new(caps);
        for _ in 0..10 {
            let (mass, theta) = random_grid(&mut rng, 3, 3, 0.05);
            let model = model_from_grid(&mass, &theta);
            let analytic = dg_dtheta_all(&model, &params);
            for (i, cell) in model.cells().iter().enumerate() {
                let up = goal_value(&pid_decompose(&model.with_theta(i, cell.theta + h)), &params);
                let down = goal_value(&pid_decompose(&model.with_theta(i, cell.theta - h)), &params);
                let numeric = (up - down) / (2.0 * h);
                let expected = cell.mass * analytic[i];
                assert!(
                    rel_err(numeric, expected) < 1e-6,
                    "goal {caps:?} cell {i}: fd {numeric} vs analytic {expected}"
                );
            }
        }
    }
}

#[test]
fn single_bin_accessor_agrees_with_bulk() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let (mass, theta) = random_grid(&mut rng, 3, 3, 0.05);
    let model = model_from_grid(&mass, &theta);
    let params = GoalParams::new([0.1, 0.1, 1.0, 0.1, 0.0]);
    let bulk = dg_dtheta_all(&model, &params);
    for (i, cell) in model.cells().iter().enumerate() {
        assert_eq!(dg_dtheta(&model, cell.r, cell.c, &params), Some(bulk[i]));
    }
    assert_eq!(dg_dtheta(&model, BinIndex(0), BinIndex(0), &params), None);
}

fn arb_grid() -> impl Strategy<Value = (Vec<Vec<f64>>, Vec<Vec<f64>>)> {
    (1usize..5, 1usize..5).prop_flat_map(|(n_r, n_c)| {
        (
            prop::collection::vec(prop::collection::vec(0.01f64..1.0, n_c), n_r),
            prop::collection::vec(prop::collection::vec(0.0f64..=1.0, n_c), n_r),
        )
            .prop_map(|(mut mass, theta)| {
                let total: f64 = mass.iter().flatten().sum();
                mass.iter_mut().flatten().for_each(|m| *m /= total);
                (mass, theta)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn atoms_are_consistent((mass, theta) in arb_grid()) {
        let atoms = pid_decompose(&model_from_grid(&mass, &theta));
        prop_assert!(atoms.consistency_error() < 1e-9);
    }

    #[test]
    fn goal_is_the_same_in_both_parameterizations(
        (mass, theta) in arb_grid(),
        caps in prop::array::uniform5(-2.0f64..2.0),
    ) {
        let model = model_from_grid(&mass, &theta);
        let params = GoalParams::new(caps);
        let atom_space = goal_value(&pid_decompose(&model), &params);
        let entropy_space = goal_value_entropic(&model, &params);
        prop_assert!((atom_space - entropy_space).abs() < 1e-9);
    }

    #[test]
    fn redundancy_ignores_bin_labels((mass, theta) in arb_grid(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n_r = mass.len();
        let n_c = mass[0].len();
        let mut rows: Vec<usize> = (0..n_r).collect();
        let mut cols: Vec<usize> = (0..n_c).collect();
        rows.shuffle(&mut rng);
        cols.shuffle(&mut rng);
        let permute = |g: &Vec<Vec<f64>>| -> Vec<Vec<f64>> {
            rows.iter().map(|&r| cols.iter().map(|&c| g[r][c]).collect()).collect()
        };
        let a = i_sx_redundancy(&model_from_grid(&mass, &theta));
        let b = i_sx_redundancy(&model_from_grid(&permute(&mass), &permute(&theta)));
        prop_assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn receptive_only_theta_carries_no_context_information(
        (mass, theta) in arb_grid(),
    ) {
        let theta: Vec<Vec<f64>> = theta.iter().map(|row| vec![row[0]; row.len()]).collect();
        let atoms = pid_decompose(&model_from_grid(&mass, &theta));
        prop_assert!((atoms.i_unq_c + atoms.i_syn).abs() < 1e-9);
        prop_assert!((atoms.i_y_rc - atoms.i_y_r).abs() < 1e-9);
    }
}
