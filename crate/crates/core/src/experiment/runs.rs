//! Single-run drivers for the three protocols.

use std::sync::Arc;

use crate::error::Result;
use crate::metrics::{
    contextual_matrix, cosine_similarity, hebbian_similarity, mean, probe_layer, weight_symmetry, TrajectoryRecord,
};
use crate::network::{corrupt, GeneratorSource, Mode, Network, PoolSource, Stimulus, Topology};
use crate::pid::PidAtoms;
use crate::seed::{self, Stream};
use crate::tasks::{bars, generate_patterns, HopfieldNet, Mnist, MnistSource};

use super::config::ExperimentConfig;

fn canonicalize(network: &mut Network, cfg: &ExperimentConfig) -> Vec<usize> {
    if cfg.canonical_polarity {
        network.canonicalize_polarity()
    } else {
        Vec::new()
    }
}

/// Final atoms of each neuron, taken from the last logged batch.
fn final_atoms(records: &[TrajectoryRecord]) -> Vec<PidAtoms> {
    let last = records.iter().map(|r| r.batch_index).max();
    records.iter().filter(|r| Some(r.batch_index) == last).map(|r| r.atoms).collect()
}

#[derive(Debug, Clone)]
pub struct SupervisedRun {
    pub run_index: usize,
    pub network: Network,
    pub records: Vec<TrajectoryRecord>,
    pub test_accuracy: f64,
    pub train_accuracy: f64,
    /// Neurons flipped by polarity canonicalization.
    pub flipped: Vec<usize>,
}

impl SupervisedRun {
    pub fn final_atoms(&self) -> Vec<PidAtoms> {
        final_atoms(&self.records)
    }
}

/// Winner-take-all accuracy of a supervised network with the label channel silenced.
pub fn supervised_accuracy(network: &Network, data: &crate::tasks::MnistDataset) -> Result<f64> {
    let mut hits = 0usize;
    for i in 0..data.len() {
        let theta = network.thetas(&Stimulus::new(data.image(i)), Mode::Test)?;
        hits += (crate::metrics::argmax(&theta) == data.label(i)) as usize;
    }
    Ok(hits as f64 / data.len().max(1) as f64)
}

pub fn run_supervised(cfg: &ExperimentConfig, run_index: usize, data: &Arc<Mnist>) -> Result<SupervisedRun> {
    let run_seed = seed::run_seed(cfg.base_seed, run_index);
    let topology = Topology::SupervisedOneVsAll {
        n_classes: cfg.supervised.n_classes,
    };
    let mut network = Network::new(topology, data.train.n_pixels(), &cfg.neuron)?;
    network.initialize(cfg.b_init, run_seed);
    let mut train = MnistSource::new(data.train.clone())?;
    let mut test = MnistSource::new(data.test.clone())?;
    let mut records = Vec::new();
    network.train(&cfg.schedule, &mut train, &mut test, run_seed, cfg.eval_every, &mut records)?;
    let flipped = canonicalize(&mut network, cfg);
    let test_accuracy = supervised_accuracy(&network, &data.test)?;
    let train_accuracy = if cfg.supervised.train_accuracy {
        supervised_accuracy(&network, &data.train)?
    } else {
        f64::NAN
    };
    Ok(SupervisedRun {
        run_index,
        network,
        records,
        test_accuracy,
        train_accuracy,
        flipped,
    })
}

#[derive(Debug, Clone)]
pub struct UnsupervisedRun {
    pub run_index: usize,
    pub network: Network,
    pub records: Vec<TrajectoryRecord>,
    pub layer_mi: f64,
    /// Per neuron: the bar it carries most information about, and how much (bits).
    pub preferred_bars: Vec<(usize, f64)>,
}

impl UnsupervisedRun {
    /// Every bar claimed by exactly one neuron, each with at least `min_bits` about it.
    pub fn encodes_all_bars(&self, min_bits: f64) -> bool {
        let mut seen = [false; bars::N_BARS];
        for &(bar, bits) in &self.preferred_bars {
            if seen[bar] || bits < min_bits {
                return false;
            }
            seen[bar] = true;
        }
        seen.iter().all(|&s| s)
    }

    pub fn distinct_bars(&self) -> usize {
        let mut bars: Vec<usize> = self.preferred_bars.iter().map(|b| b.0).collect();
        bars.sort_unstable();
        bars.dedup();
        bars.len()
    }

    /// Neurons whose preferred bar is shared with another neuron.
    pub fn duplicated_neurons(&self) -> Vec<usize> {
        (0..self.preferred_bars.len())
            .filter(|&k| {
                self.preferred_bars
                    .iter()
                    .enumerate()
                    .any(|(j, b)| j != k && b.0 == self.preferred_bars[k].0)
            })
            .collect()
    }

    pub fn final_atoms(&self) -> Vec<PidAtoms> {
        final_atoms(&self.records)
    }
}

pub fn bars_source() -> GeneratorSource<impl FnMut(&mut Stream) -> Stimulus> {
    GeneratorSource(|rng: &mut Stream| bars::bars_stimulus(rng))
}

pub fn run_unsupervised(cfg: &ExperimentConfig, run_index: usize) -> Result<UnsupervisedRun> {
    let run_seed = seed::run_seed(cfg.base_seed, run_index);
    let topology = Topology::RecurrentFull {
        n_neurons: cfg.unsupervised.n_neurons,
    };
    let mut network = Network::new(topology, bars::N_PIXELS, &cfg.neuron)?;
    network.initialize(cfg.b_init, run_seed);
    let mut records = Vec::new();
    network.train(&cfg.schedule, &mut bars_source(), &mut bars_source(), run_seed, cfg.eval_every, &mut records)?;
    let mut probe_rng = seed::stream(run_seed, seed::RECALL);
    let probe = probe_layer(
        &network,
        bars::render_bars,
        bars::N_BARS as u32,
        cfg.unsupervised.mi_samples,
        cfg.schedule.m_rep,
        &mut probe_rng,
    )?;
    Ok(UnsupervisedRun {
        run_index,
        layer_mi: probe.mutual_information(),
        preferred_bars: probe.preferred_bars(network.n_neurons(), bars::N_BARS),
        network,
        records,
    })
}

/// Recall accuracy of one method at one noise level, averaged over all stored patterns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecallScore {
    pub noise_beta: f64,
    pub infomorphic: f64,
    pub hopfield: f64,
}

#[derive(Debug, Clone)]
pub struct MemoryRun {
    pub run_index: usize,
    pub n_patterns: usize,
    pub network: Network,
    pub patterns: Vec<Vec<f64>>,
    pub records: Vec<TrajectoryRecord>,
    pub scores: Vec<RecallScore>,
    pub weight_symmetry: f64,
    pub hebbian_similarity: f64,
    pub flipped: Vec<usize>,
}

impl MemoryRun {
    pub fn final_atoms(&self) -> Vec<PidAtoms> {
        final_atoms(&self.records)
    }
}

/// Mean final-step cosine similarity over `patterns` for the infomorphic and Hopfield networks.
pub fn recall_scores(
    network: &Network,
    hopfield: &HopfieldNet,
    patterns: &[Vec<f64>],
    noise_beta: f64,
    n_steps: usize,
    rng: &mut Stream,
) -> Result<RecallScore> {
    let mut info = Vec::with_capacity(patterns.len());
    let mut hop = Vec::with_capacity(patterns.len());
    let mut net = network.clone();
    for p in patterns {
        let cue = corrupt(p, noise_beta, rng);
        let states = net.recall_from_cue(&cue, n_steps, rng)?;
        info.push(cosine_similarity(states.last().expect("n_steps ≥ 1"), p)?);
        let h = hopfield.recall(&cue, n_steps);
        hop.push(cosine_similarity(h.last().expect("non-empty"), p)?);
    }
    Ok(RecallScore {
        noise_beta,
        infomorphic: mean(&info),
        hopfield: mean(&hop),
    })
}

pub fn run_memory(cfg: &ExperimentConfig, run_index: usize, n_patterns: usize) -> Result<MemoryRun> {
    let run_seed = seed::run_seed(cfg.base_seed, run_index);
    // patterns depend on the pattern count too, so different counts are independent draws
    let mut pattern_rng = seed::stream(seed::derive_seed(run_seed, n_patterns as u64), seed::PATTERNS);
    let n = cfg.memory.n_neurons;
    let patterns = generate_patterns(&mut pattern_rng, n_patterns, n);
    let pool: Arc<Vec<Stimulus>> = Arc::new(patterns.iter().cloned().map(Stimulus::new).collect());
    let mut network = Network::new(Topology::MemoryRecurrent { n_neurons: n }, n, &cfg.neuron)?;
    network.initialize(cfg.b_init, run_seed);
    let mut records = Vec::new();
    network.train(
        &cfg.schedule,
        &mut PoolSource::new(pool.clone())?,
        &mut PoolSource::new(pool)?,
        run_seed,
        cfg.eval_every,
        &mut records,
    )?;
    let flipped = canonicalize(&mut network, cfg);
    let hopfield = HopfieldNet::train(&patterns)?;
    let mut recall_rng = seed::stream(run_seed, seed::RECALL);
    let scores = cfg
        .memory
        .noise_levels
        .iter()
        .map(|&beta| recall_scores(&network, &hopfield, &patterns, beta, cfg.memory.recall_steps, &mut recall_rng))
        .collect::<Result<Vec<_>>>()?;
    let w_c = contextual_matrix(&network);
    Ok(MemoryRun {
        run_index,
        n_patterns,
        weight_symmetry: weight_symmetry(&w_c)?,
        hebbian_similarity: hebbian_similarity(&w_c, &patterns)?,
        network,
        patterns,
        records,
        scores,
        flipped,
    })
}
