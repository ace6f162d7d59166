use infomorphic::metrics::{cosine_similarity, layer_mutual_information, plugin_mutual_information, wta_accuracy};
use infomorphic::network::{Network, NeuronParams, Topology};
use infomorphic::neuron::ActivationKind;
use infomorphic::pid::{BinningSpec, GoalParams};
use infomorphic::seed;
use infomorphic::tasks::bars;
use proptest::prelude::*;

fn theta_rows() -> impl Strategy<Value = (Vec<Vec<f64>>, Vec<usize>)> {
    (1usize..40).prop_flat_map(|n| {
        (
            prop::collection::vec(prop::collection::vec(0.001f64..0.999, 10), n),
            prop::collection::vec(0usize..10, n),
        )
    })
}

fn nonzero_vec(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-5.0f64..5.0, n).prop_filter("non-zero", |v| v.iter().any(|x| x.abs() > 1e-3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn wta_is_invariant_under_monotone_maps((theta, labels) in theta_rows()) {
        let acc = wta_accuracy(&theta, &labels).unwrap();
        prop_assert!((0.0..=1.0).contains(&acc));
        let logit: Vec<Vec<f64>> = theta.iter().map(|r| r.iter().map(|t| (t / (1.0 - t)).ln()).collect()).collect();
        let cubic: Vec<Vec<f64>> = theta.iter().map(|r| r.iter().map(|t| t * t * t + 2.0 * t - 7.0).collect()).collect();
        prop_assert_eq!(wta_accuracy(&logit, &labels).unwrap(), acc);
        prop_assert_eq!(wta_accuracy(&cubic, &labels).unwrap(), acc);
    }

    #[test]
    fn cosine_is_bounded_and_scale_free(
        (a, b) in (2usize..50).prop_flat_map(|n| (nonzero_vec(n), nonzero_vec(n))),
        alpha in 1e-3f64..1e3,
    ) {
        let c = cosine_similarity(&a, &b).unwrap();
        prop_assert!((-1.0 - 1e-12..=1.0 + 1e-12).contains(&c));
        let scaled: Vec<f64> = a.iter().map(|x| alpha * x).collect();
        prop_assert!((cosine_similarity(&scaled, &b).unwrap() - c).abs() < 1e-9);
    }

    #[test]
    fn plugin_mi_is_bounded(pairs in prop::collection::vec((0u32..16, 0u32..4), 1..400)) {
        let mi = plugin_mutual_information(&pairs);
        prop_assert!(mi >= -1e-12);
        prop_assert!(mi <= 2.0 + 1e-9);
    }
}

#[test]
fn layer_mi_never_exceeds_eight_bits() {
    let spec = BinningSpec::new(-25.0, 25.0, 500).unwrap();
    let params = NeuronParams {
        activation: ActivationKind::ModulatedContext,
        spec_r: spec,
        spec_c: spec,
        goal: GoalParams::new([1.0, 0.0, 0.0, 0.0, 0.0]),
    };
    for s in 0..3 {
        let mut net = Network::new(Topology::RecurrentFull { n_neurons: 8 }, bars::N_PIXELS, &params).unwrap();
        net.initialize(3.0, s);
        let mut rng = seed::stream(s, seed::EVAL);
        let mi = layer_mutual_information(&net, bars::render_bars, bars::N_BARS as u32, 4000, 2, &mut rng).unwrap();
        assert!((0.0..=8.0).contains(&mi), "{mi}");
    }
}
