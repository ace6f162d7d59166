//! Networks of infomorphic neurons: wiring, synchronous dynamics, batched
//! training and recall.

mod data;

pub use data::{DataSource, GeneratorSource, PoolSource, SequentialSource, Stimulus};

use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Split;
use crate::metrics::TrajectoryRecord;
use crate::neuron::{ActivationKind, InfomorphicNeuron, Observations};
use crate::pid::{goal_value, BinningSpec, GoalParams};
use crate::seed::{self, Stream};

const PLUS: [f64; 1] = [1.0];
const MINUS: [f64; 1] = [-1.0];
const ZERO: [f64; 1] = [0.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Topology {
    /// Neuron `k` sees the whole stimulus and element `k` of the one-hot label.
    SupervisedOneVsAll { n_classes: usize },
    /// Neuron `k` sees the whole stimulus and every other neuron's previous output.
    RecurrentFull { n_neurons: usize },
    /// Neuron `k` sees stimulus element `k` and every other neuron's previous output.
    MemoryRecurrent { n_neurons: usize },
}

impl Topology {
    pub fn n_neurons(&self) -> usize {
        match *self {
            Topology::SupervisedOneVsAll { n_classes } => n_classes,
            Topology::RecurrentFull { n_neurons } | Topology::MemoryRecurrent { n_neurons } => n_neurons,
        }
    }

    pub fn is_recurrent(&self) -> bool {
        !matches!(self, Topology::SupervisedOneVsAll { .. })
    }

    /// `(n_receptive, n_contextual)` per neuron for a stimulus of length `n_inputs`.
    pub fn neuron_dims(&self, n_inputs: usize) -> (usize, usize) {
        match *self {
            Topology::SupervisedOneVsAll { .. } => (n_inputs, 1),
            Topology::RecurrentFull { n_neurons } => (n_inputs, n_neurons - 1),
            Topology::MemoryRecurrent { n_neurons } => (1, n_neurons - 1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Labels are shown as contextual input.
    Train,
    /// The supervised context is replaced by `0`.
    Test,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Phase {
    pub n_steps: usize,
    pub eta: f64,
    pub lambda: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    pub phases: Vec<Phase>,
    pub n_train: usize,
    pub n_test: usize,
    pub m_rep: usize,
}

impl Schedule {
    pub fn total_batches(&self) -> usize {
        self.phases.iter().map(|p| p.n_steps).sum()
    }
}

/// Per-neuron parameters shared by the whole layer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NeuronParams {
    pub activation: ActivationKind,
    pub spec_r: BinningSpec,
    pub spec_c: BinningSpec,
    pub goal: GoalParams,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NetworkState {
    /// Previous-step outputs, each `±1`.
    pub outputs: Vec<f64>,
    pub step_counter: u64,
}

/// Everything one neuron saw during a batch of presentations.
#[derive(Debug, Clone)]
pub struct BatchTrace {
    pub stimuli: Vec<Stimulus>,
    /// Stimulus index for every time step.
    pub step_stimulus: Vec<usize>,
    /// Network state each step read its context from (recurrent topologies only).
    pub step_context: Vec<Vec<f64>>,
    /// `(r, c)` per neuron per step.
    pub integrated: Vec<Vec<(f64, f64)>>,
    pub mode: Mode,
}

impl BatchTrace {
    pub fn n_steps(&self) -> usize {
        self.step_stimulus.len()
    }
}

/// One neuron's view of a [`BatchTrace`], without copying inputs.
pub struct NeuronView<'a> {
    trace: &'a BatchTrace,
    topology: Topology,
    k: usize,
    receptive_zero: bool,
}

impl Observations for NeuronView<'_> {
    fn len(&self) -> usize {
        self.trace.n_steps()
    }

    fn receptive(&self, i: usize) -> Split<'_> {
        let stim = &self.trace.stimuli[self.trace.step_stimulus[i]];
        match self.topology {
            Topology::MemoryRecurrent { .. } if self.receptive_zero => Split::whole(&ZERO),
            Topology::MemoryRecurrent { .. } => Split::whole(std::slice::from_ref(&stim.receptive[self.k])),
            _ => Split::whole(&stim.receptive),
        }
    }

    fn contextual(&self, i: usize) -> Split<'_> {
        match self.topology {
            Topology::SupervisedOneVsAll { .. } => {
                let stim = &self.trace.stimuli[self.trace.step_stimulus[i]];
                Split::whole(label_context(stim.label, self.k, self.trace.mode))
            }
            _ => Split::without(&self.trace.step_context[i], self.k),
        }
    }
}

fn label_context(label: Option<usize>, k: usize, mode: Mode) -> &'static [f64] {
    match (mode, label) {
        (Mode::Test, _) | (Mode::Train, None) => &ZERO,
        (Mode::Train, Some(l)) if l == k => &PLUS,
        (Mode::Train, Some(_)) => &MINUS,
    }
}

#[derive(Debug, Clone)]
pub struct Network {
    pub topology: Topology,
    pub neurons: Vec<InfomorphicNeuron>,
    pub state: NetworkState,
    n_inputs: usize,
    streams: Vec<Stream>,
}

impl Network {
    /// A network with zero weights, all outputs `-1` and seed-0 firing streams.
    pub fn new(topology: Topology, n_inputs: usize, params: &NeuronParams) -> Result<Self> {
        let n = topology.n_neurons();
        if n == 0 || (topology.is_recurrent() && n < 2) {
            return Err(Error::InvalidConfig(vec![format!("topology: {n} neurons is too few")]));
        }
        if let Topology::MemoryRecurrent { n_neurons } = topology {
            if n_inputs != n_neurons {
                return Err(Error::DimensionMismatch {
                    what: "memory pattern length",
                    expected: n_neurons,
                    got: n_inputs,
                });
            }
        }
        let (n_r, n_c) = topology.neuron_dims(n_inputs);
        let neurons = (0..n)
            .map(|_| InfomorphicNeuron::new(n_r, n_c, params.activation, params.spec_r, params.spec_c, params.goal))
            .collect();
        let mut net = Self {
            topology,
            neurons,
            state: NetworkState {
                outputs: vec![-1.0; n],
                step_counter: 0,
            },
            n_inputs,
            streams: Vec::new(),
        };
        net.reseed_streams(0);
        Ok(net)
    }

    /// Random weights, random initial state and fresh firing streams, all from `run_seed`.
    pub fn initialize(&mut self, b_init: f64, run_seed: u64) {
        let mut init = seed::stream(run_seed, seed::INIT);
        for neuron in &mut self.neurons {
            neuron.init_weights(b_init, &mut init);
        }
        let mut state = seed::stream(run_seed, seed::STATE);
        self.randomize_state(&mut state);
        self.reseed_streams(run_seed);
    }

    pub fn randomize_state<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        for y in &mut self.state.outputs {
            *y = if rng.gen::<bool>() { 1.0 } else { -1.0 };
        }
    }

    /// Replaces every neuron's firing stream with one derived from `seed_value`.
    pub fn reseed_streams(&mut self, seed_value: u64) {
        self.streams = (0..self.neurons.len())
            .map(|k| seed::stream(seed_value, seed::NEURON_BASE + k as u64))
            .collect();
    }

    pub fn n_neurons(&self) -> usize {
        self.neurons.len()
    }

    pub fn n_inputs(&self) -> usize {
        self.n_inputs
    }

    fn check_stimulus(&self, stimulus: &Stimulus, mode: Mode) -> Result<()> {
        if stimulus.receptive.len() != self.n_inputs {
            return Err(Error::DimensionMismatch {
                what: "stimulus",
                expected: self.n_inputs,
                got: stimulus.receptive.len(),
            });
        }
        if let (Topology::SupervisedOneVsAll { n_classes }, Mode::Train) = (self.topology, mode) {
            match stimulus.label {
                Some(l) if l < n_classes => {}
                Some(l) => {
                    return Err(Error::DimensionMismatch {
                        what: "label",
                        expected: n_classes,
                        got: l,
                    })
                }
                None => return Err(Error::InvalidConfig(vec!["supervised training stimulus has no label".into()])),
            }
        }
        Ok(())
    }

    #[inline]
    fn integrate_neuron(&self, k: usize, stimulus: &Stimulus, mode: Mode, receptive_zero: bool) -> (f64, f64) {
        let neuron = &self.neurons[k];
        let x_r = match self.topology {
            Topology::MemoryRecurrent { .. } if receptive_zero => Split::whole(&ZERO),
            Topology::MemoryRecurrent { .. } => Split::whole(std::slice::from_ref(&stimulus.receptive[k])),
            _ => Split::whole(&stimulus.receptive),
        };
        let x_c = match self.topology {
            // a silenced label channel contributes nothing, bias included
            Topology::SupervisedOneVsAll { .. } if mode == Mode::Test => return (neuron.integrate_split(x_r, Split::whole(&ZERO)).0, 0.0),
            Topology::SupervisedOneVsAll { .. } => Split::whole(label_context(stimulus.label, k, mode)),
            _ => Split::without(&self.state.outputs, k),
        };
        neuron.integrate_split(x_r, x_c)
    }

    /// Firing probabilities for `stimulus` given the current state, without stepping.
    pub fn thetas(&self, stimulus: &Stimulus, mode: Mode) -> Result<Vec<f64>> {
        self.check_stimulus(stimulus, mode)?;
        Ok((0..self.n_neurons())
            .map(|k| {
                let (r, c) = self.integrate_neuron(k, stimulus, mode, false);
                self.neurons[k].theta(r, c)
            })
            .collect())
    }

    /// One synchronous time step. Every neuron reads the same previous state;
    /// the new state replaces it only after all neurons have fired.
    pub fn step(&mut self, stimulus: &Stimulus, mode: Mode) -> Result<&[f64]> {
        self.check_stimulus(stimulus, mode)?;
        let mut integrated = vec![(0.0, 0.0); self.n_neurons()];
        self.step_inner(stimulus, mode, false, 0..self.n_neurons(), &mut integrated);
        Ok(&self.state.outputs)
    }

    /// [`Network::step`] visiting neurons in the given order.
    pub fn step_in_order(&mut self, stimulus: &Stimulus, mode: Mode, order: &[usize]) -> Result<&[f64]> {
        self.check_stimulus(stimulus, mode)?;
        let mut integrated = vec![(0.0, 0.0); self.n_neurons()];
        self.step_inner(stimulus, mode, false, order.iter().copied(), &mut integrated);
        Ok(&self.state.outputs)
    }

    fn step_inner(
        &mut self,
        stimulus: &Stimulus,
        mode: Mode,
        receptive_zero: bool,
        order: impl Iterator<Item = usize>,
        integrated: &mut [(f64, f64)],
    ) {
        let mut next = vec![0.0; self.n_neurons()];
        for k in order {
            let (r, c) = self.integrate_neuron(k, stimulus, mode, receptive_zero);
            integrated[k] = (r, c);
            next[k] = self.neurons[k].fire(r, c, &mut self.streams[k]);
        }
        self.state.outputs = next;
        self.state.step_counter += 1;
    }

    /// Presents each stimulus for `m_rep` consecutive steps and records what every neuron saw.
    pub fn present_batch(&mut self, stimuli: Vec<Stimulus>, m_rep: usize, mode: Mode) -> Result<BatchTrace> {
        for s in &stimuli {
            self.check_stimulus(s, mode)?;
        }
        let n = self.n_neurons();
        let total = stimuli.len() * m_rep;
        let mut trace = BatchTrace {
            stimuli: Vec::new(),
            step_stimulus: Vec::with_capacity(total),
            step_context: Vec::with_capacity(if self.topology.is_recurrent() { total } else { 0 }),
            integrated: vec![Vec::with_capacity(total); n],
            mode,
        };
        let mut step_vals = vec![(0.0, 0.0); n];
        for (i, stim) in stimuli.iter().enumerate() {
            for _ in 0..m_rep {
                trace.step_stimulus.push(i);
                if self.topology.is_recurrent() {
                    trace.step_context.push(self.state.outputs.clone());
                }
                self.step_inner(stim, mode, false, 0..n, &mut step_vals);
                for (k, v) in step_vals.iter().enumerate() {
                    trace.integrated[k].push(*v);
                }
            }
        }
        trace.stimuli = stimuli;
        Ok(trace)
    }

    pub fn view<'a>(&self, trace: &'a BatchTrace, k: usize) -> NeuronView<'a> {
        NeuronView {
            trace,
            topology: self.topology,
            k,
            receptive_zero: false,
        }
    }

    /// Draws `n_train` stimuli, presents them, then updates every neuron with
    /// the phase's learning and pullback rates.
    pub fn run_batch<D: DataSource + ?Sized>(
        &mut self,
        schedule: &Schedule,
        source: &mut D,
        phase: &Phase,
        data_rng: &mut Stream,
    ) -> Result<BatchTrace> {
        let stimuli = source.draw(schedule.n_train, data_rng)?;
        let trace = self.present_batch(stimuli, schedule.m_rep, Mode::Train)?;
        let grads = (0..self.n_neurons())
            .map(|k| {
                let neuron = &self.neurons[k];
                neuron.gradients_from_integrated(&self.view(&trace, k), &trace.integrated[k])
            })
            .collect::<Result<Vec<_>>>()?;
        for (neuron, g) in self.neurons.iter_mut().zip(&grads) {
            neuron.apply_update(g, phase.eta, phase.lambda);
        }
        Ok(trace)
    }

    /// PID atoms of every neuron on a fresh batch, on a copy of the network so
    /// that neither its state nor its firing streams advance.
    pub fn evaluate<D: DataSource + ?Sized>(
        &self,
        source: &mut D,
        n_test: usize,
        m_rep: usize,
        eval_rng: &mut Stream,
        batch_index: usize,
    ) -> Result<Vec<TrajectoryRecord>> {
        let stimuli = source.draw(n_test, eval_rng)?;
        let mut probe = self.clone();
        probe.reseed_streams(eval_rng.gen());
        let trace = probe.present_batch(stimuli, m_rep, Mode::Train)?;
        self.neurons
            .iter()
            .enumerate()
            .map(|(k, neuron)| {
                let atoms = neuron.atoms(&trace.integrated[k])?;
                Ok(TrajectoryRecord {
                    batch_index,
                    neuron_id: k,
                    goal: goal_value(&atoms, &neuron.goal),
                    atoms,
                })
            })
            .collect()
    }

    /// Runs every phase of `schedule`, reporting per-neuron atoms on an
    /// evaluation batch after every `eval_every`-th batch (and the last one).
    pub fn train<D, E, S>(
        &mut self,
        schedule: &Schedule,
        train_source: &mut D,
        eval_source: &mut E,
        run_seed: u64,
        eval_every: usize,
        sink: &mut S,
    ) -> Result<()>
    where
        D: DataSource + ?Sized,
        E: DataSource + ?Sized,
        S: TrajectorySink + ?Sized,
    {
        let mut data_rng = seed::stream(run_seed, seed::DATA);
        let mut eval_rng = seed::stream(run_seed, seed::EVAL);
        let total = schedule.total_batches();
        let mut batch_index = 0;
        for phase in &schedule.phases {
            for _ in 0..phase.n_steps {
                self.run_batch(schedule, train_source, phase, &mut data_rng)?;
                if eval_every > 0 && ((batch_index + 1) % eval_every == 0 || batch_index + 1 == total) {
                    let records = self.evaluate(eval_source, schedule.n_test, schedule.m_rep, &mut eval_rng, batch_index)?;
                    sink.record(self, &records)?;
                }
                batch_index += 1;
            }
        }
        Ok(())
    }

    /// Cued recall: a noisy copy of `pattern` is shown for one step, then the
    /// receptive input is zero for the remaining `n_steps - 1` steps.
    ///
    /// `round(β·N)` elements of the cue are chosen and each is resampled
    /// uniformly from `{-1, +1}`. Returns the state after every step.
    pub fn recall<R: Rng + ?Sized>(
        &mut self,
        pattern: &[f64],
        noise_beta: f64,
        n_steps: usize,
        rng: &mut R,
    ) -> Result<Vec<Vec<f64>>> {
        if !(0.0..=1.0).contains(&noise_beta) {
            return Err(Error::InvalidConfig(vec![format!("noise_beta: {noise_beta} is outside [0, 1]")]));
        }
        let cue = corrupt(pattern, noise_beta, rng);
        self.recall_from_cue(&cue, n_steps, rng)
    }

    /// Recall from an already corrupted cue, starting from a random state.
    pub fn recall_from_cue<R: Rng + ?Sized>(&mut self, cue: &[f64], n_steps: usize, rng: &mut R) -> Result<Vec<Vec<f64>>> {
        let cue = Stimulus::new(cue.to_vec());
        self.check_stimulus(&cue, Mode::Test)?;
        self.randomize_state(rng);
        self.reseed_streams(rng.gen());
        let n = self.n_neurons();
        let mut scratch = vec![(0.0, 0.0); n];
        let mut states = Vec::with_capacity(n_steps);
        let blank = Stimulus::new(vec![0.0; self.n_inputs]);
        for t in 0..n_steps {
            if t == 0 {
                self.step_inner(&cue, Mode::Test, false, 0..n, &mut scratch);
            } else {
                self.step_inner(&blank, Mode::Test, true, 0..n, &mut scratch);
            }
            states.push(self.state.outputs.clone());
        }
        Ok(states)
    }

    /// Flips neurons so that each one's scalar teaching input enters with a
    /// non-negative weight: the label weight for the supervised topology, the
    /// pattern-element weight for the memory topology. Returns the flipped
    /// neurons.
    ///
    /// Relabelling a neuron's output `Y -> -Y` and negating its parameters
    /// leaves every information quantity unchanged, so training alone cannot
    /// choose the sign. In a recurrent net the neurons reading the flipped
    /// output negate the matching contextual weight. `RecurrentFull` has no
    /// teaching input and is left alone.
    pub fn canonicalize_polarity(&mut self) -> Vec<usize> {
        let flips: Vec<bool> = match self.topology {
            Topology::SupervisedOneVsAll { .. } => self.neurons.iter().map(|n| n.w_c[0] < 0.0).collect(),
            Topology::MemoryRecurrent { .. } => self.neurons.iter().map(|n| n.w_r[0] < 0.0).collect(),
            Topology::RecurrentFull { .. } => return Vec::new(),
        };
        let recurrent = self.topology.is_recurrent();
        for (k, neuron) in self.neurons.iter_mut().enumerate() {
            if flips[k] {
                neuron.w_r.iter_mut().for_each(|w| *w = -*w);
                neuron.b_r = -neuron.b_r;
                neuron.b_c = -neuron.b_c;
            }
            for (i, w) in neuron.w_c.iter_mut().enumerate() {
                let source_flipped = recurrent && flips[if i < k { i } else { i + 1 }];
                if flips[k] != source_flipped {
                    *w = -*w;
                }
            }
        }
        for (y, &f) in self.state.outputs.iter_mut().zip(&flips) {
            if f && recurrent {
                *y = -*y;
            }
        }
        flips.iter().enumerate().filter(|(_, &f)| f).map(|(k, _)| k).collect()
    }
}

/// Copy of `pattern` with `round(β·len)` randomly chosen elements resampled from `{-1, +1}`.
pub fn corrupt<R: Rng + ?Sized>(pattern: &[f64], noise_beta: f64, rng: &mut R) -> Vec<f64> {
    let mut cue = pattern.to_vec();
    let n_noisy = (noise_beta * pattern.len() as f64).round() as usize;
    for i in sample(rng, pattern.len(), n_noisy.min(pattern.len())) {
        cue[i] = if rng.gen::<bool>() { 1.0 } else { -1.0 };
    }
    cue
}

/// Receives trajectory records as training progresses.
pub trait TrajectorySink {
    fn record(&mut self, network: &Network, records: &[TrajectoryRecord]) -> Result<()>;
}

impl TrajectorySink for Vec<TrajectoryRecord> {
    fn record(&mut self, _network: &Network, records: &[TrajectoryRecord]) -> Result<()> {
        self.extend_from_slice(records);
        Ok(())
    }
}

/// Discards everything.
pub struct NullSink;

impl TrajectorySink for NullSink {
    fn record(&mut self, _network: &Network, _records: &[TrajectoryRecord]) -> Result<()> {
        Ok(())
    }
}

impl<F: FnMut(&Network, &[TrajectoryRecord]) -> Result<()>> TrajectorySink for F {
    fn record(&mut self, network: &Network, records: &[TrajectoryRecord]) -> Result<()> {
        self(network, records)
    }
}
