use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::network::{NeuronParams, Phase, Schedule};
use crate::neuron::ActivationKind;
use crate::pid::{BinningSpec, GoalParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    Supervised,
    Unsupervised,
    Memory,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 3] = [ExperimentKind::Supervised, ExperimentKind::Unsupervised, ExperimentKind::Memory];

    pub fn name(&self) -> &'static str {
        match self {
            ExperimentKind::Supervised => "supervised",
            ExperimentKind::Unsupervised => "unsupervised",
            ExperimentKind::Memory => "memory",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SupervisedOptions {
    pub n_classes: usize,
    /// Falls back to `$INFOMORPH_MNIST_DIR`, then `data/mnist`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mnist_dir: Option<PathBuf>,
    /// Also report winner-take-all accuracy on the full training split.
    pub train_accuracy: bool,
    /// Logistic-regression baseline; `0` iterations skips it.
    pub logreg_iters: usize,
    pub logreg_eta: f64,
}

impl Default for SupervisedOptions {
    fn default() -> Self {
        Self {
            n_classes: 10,
            mnist_dir: None,
            train_accuracy: true,
            logreg_iters: 0,
            logreg_eta: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnsupervisedOptions {
    pub n_neurons: usize,
    /// Trials for the layer mutual information estimate.
    pub mi_samples: usize,
    /// Minimum information (bits) a neuron needs about its bar to count as encoding it.
    pub min_bar_bits: f64,
}

impl Default for UnsupervisedOptions {
    fn default() -> Self {
        Self {
            n_neurons: 8,
            mi_samples: 100_000,
            min_bar_bits: 0.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MemoryOptions {
    pub n_neurons: usize,
    pub pattern_counts: Vec<usize>,
    pub noise_levels: Vec<f64>,
    pub recall_steps: usize,
    pub capacity_threshold: f64,
}

impl Default for MemoryOptions {
    fn default() -> Self {
        Self {
            n_neurons: 100,
            pattern_counts: vec![1, 2, 4, 6, 8, 12, 15, 20, 25, 30, 35, 40, 45, 50, 55, 60],
            noise_levels: vec![0.0, 0.1, 0.2, 0.3, 0.4, 0.5],
            recall_steps: 20,
            capacity_threshold: 0.95,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    pub n_runs: usize,
    pub base_seed: u64,
    /// Log trajectory records after every `eval_every`-th batch; `0` disables them.
    pub eval_every: usize,
    pub b_init: f64,
    /// Flip trained neurons so their teaching input has a positive weight
    /// (see `Network::canonicalize_polarity`).
    #[serde(default = "yes")]
    pub canonical_polarity: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
    pub neuron: NeuronParams,
    pub schedule: Schedule,
    #[serde(default)]
    pub supervised: SupervisedOptions,
    #[serde(default)]
    pub unsupervised: UnsupervisedOptions,
    #[serde(default)]
    pub memory: MemoryOptions,
}

fn yes() -> bool {
    true
}

fn spec(lower: f64, upper: f64, n: usize) -> BinningSpec {
    BinningSpec {
        lower,
        upper,
        n_interior: n,
    }
}

impl ExperimentConfig {
    pub fn preset(kind: ExperimentKind) -> Self {
        match kind {
            ExperimentKind::Supervised => Self {
                experiment: kind,
                n_runs: 10,
                base_seed: 0,
                eval_every: 1,
                b_init: 0.01,
                canonical_polarity: true,
                output_dir: None,
                neuron: NeuronParams {
                    activation: ActivationKind::ModulatedContext,
                    spec_r: spec(-20.0, 20.0, 200),
                    spec_c: spec(-20.0, 20.0, 200),
                    goal: GoalParams::new([0.1, 0.1, 1.0, 0.1, 0.0]),
                },
                schedule: Schedule {
                    phases: vec![Phase {
                        n_steps: 800,
                        eta: 1.0,
                        lambda: 0.0,
                    }],
                    n_train: 1000,
                    n_test: 1000,
                    m_rep: 1,
                },
                supervised: SupervisedOptions {
                    logreg_iters: 3000,
                    ..SupervisedOptions::default()
                },
                unsupervised: UnsupervisedOptions::default(),
                memory: MemoryOptions::default(),
            },
            ExperimentKind::Unsupervised => Self {
                experiment: kind,
                n_runs: 30,
                base_seed: 0,
                eval_every: 1,
                b_init: 0.1,
                canonical_polarity: true,
                output_dir: None,
                neuron: NeuronParams {
                    activation: ActivationKind::ModulatedContext,
                    spec_r: spec(-25.0, 25.0, 500),
                    spec_c: spec(-25.0, 25.0, 500),
                    goal: GoalParams::new([1.0, 0.0, 0.0, 0.0, 0.0]),
                },
                schedule: Schedule {
                    phases: vec![
                        Phase {
                            n_steps: 50,
                            eta: 10.0,
                            lambda: 0.28,
                        },
                        Phase {
                            n_steps: 50,
                            eta: 1.0,
                            lambda: 0.0,
                        },
                    ],
                    n_train: 1000,
                    n_test: 1000,
                    m_rep: 8,
                },
                supervised: SupervisedOptions::default(),
                unsupervised: UnsupervisedOptions::default(),
                memory: MemoryOptions::default(),
            },
            ExperimentKind::Memory => Self {
                experiment: kind,
                n_runs: 5,
                base_seed: 0,
                eval_every: 1,
                b_init: 0.1,
                canonical_polarity: true,
                output_dir: None,
                neuron: NeuronParams {
                    activation: ActivationKind::SaturatingSum { scale: 8.0 },
                    spec_r: spec(-20.0, 20.0, 20),
                    spec_c: spec(-20.0, 20.0, 20),
                    goal: GoalParams::new([0.1, 0.1, 1.0, 0.1, 0.0]),
                },
                schedule: Schedule {
                    phases: vec![Phase {
                        n_steps: 300,
                        eta: 0.48,
                        lambda: 0.0,
                    }],
                    n_train: 200,
                    n_test: 200,
                    m_rep: 8,
                },
                supervised: SupervisedOptions::default(),
                unsupervised: UnsupervisedOptions::default(),
                memory: MemoryOptions::default(),
            },
        }
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::ConfigParse(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml(&text)
    }

    /// Every constraint the config breaks, each naming its field; empty means runnable.
    pub fn validate(&self) -> Vec<String> {
        let mut v = Vec::new();
        let mut need = |ok: bool, msg: String| {
            if !ok {
                v.push(msg);
            }
        };
        need(self.n_runs >= 1, format!("n_runs: must be at least 1, got {}", self.n_runs));
        need(
            self.b_init.is_finite() && self.b_init >= 0.0,
            format!("b_init: must be finite and non-negative, got {}", self.b_init),
        );
        for (name, s) in [("neuron.spec_r", &self.neuron.spec_r), ("neuron.spec_c", &self.neuron.spec_c)] {
            if let Err(e) = s.validate() {
                need(false, format!("{name}: {e}"));
            }
        }
        if let ActivationKind::SaturatingSum { scale } = self.neuron.activation {
            need(
                scale.is_finite() && scale > 0.0,
                format!("neuron.activation.scale: must be positive, got {scale}"),
            );
        }
        need(
            self.neuron.goal.gamma_caps().iter().all(|g| g.is_finite()),
            "neuron.goal: every weight must be finite".to_string(),
        );
        let s = &self.schedule;
        need(!s.phases.is_empty(), "schedule.phases: at least one phase is required".into());
        for (i, p) in s.phases.iter().enumerate() {
            need(p.n_steps >= 1, format!("schedule.phases[{i}].n_steps: must be at least 1, got {}", p.n_steps));
            need(
                p.eta.is_finite() && p.eta >= 0.0,
                format!("schedule.phases[{i}].eta: must be finite and non-negative, got {}", p.eta),
            );
            need(
                p.lambda.is_finite() && (0.0..0.5).contains(&p.lambda),
                format!(
                    "schedule.phases[{i}].lambda: must lie in [0, 0.5) so the pullback factor 1 - 2λ stays positive, got {}",
                    p.lambda
                ),
            );
        }
        need(s.n_train >= 1, format!("schedule.n_train: must be at least 1, got {}", s.n_train));
        need(s.n_test >= 1, format!("schedule.n_test: must be at least 1, got {}", s.n_test));
        need(s.m_rep >= 1, format!("schedule.m_rep: must be at least 1, got {}", s.m_rep));
        match self.experiment {
            ExperimentKind::Supervised => {
                let o = &self.supervised;
                need(o.n_classes >= 2 && o.n_classes <= 10, format!("supervised.n_classes: must lie in 2..=10, got {}", o.n_classes));
                need(o.logreg_eta.is_finite() && o.logreg_eta > 0.0, format!("supervised.logreg_eta: must be positive, got {}", o.logreg_eta));
            }
            ExperimentKind::Unsupervised => {
                let o = &self.unsupervised;
                need(o.n_neurons >= 2, format!("unsupervised.n_neurons: must be at least 2, got {}", o.n_neurons));
                need(o.mi_samples >= 1, format!("unsupervised.mi_samples: must be at least 1, got {}", o.mi_samples));
            }
            ExperimentKind::Memory => {
                let o = &self.memory;
                need(
                    o.n_neurons >= 2 && o.n_neurons.is_multiple_of(2),
                    format!("memory.n_neurons: must be even and at least 2, got {}", o.n_neurons),
                );
                need(!o.pattern_counts.is_empty(), "memory.pattern_counts: must not be empty".into());
                need(
                    o.pattern_counts.iter().all(|&p| p >= 1),
                    "memory.pattern_counts: every count must be at least 1".into(),
                );
                need(
                    o.noise_levels.iter().all(|b| (0.0..=1.0).contains(b)),
                    "memory.noise_levels: every level must lie in [0, 1]".into(),
                );
                need(o.recall_steps >= 1, format!("memory.recall_steps: must be at least 1, got {}", o.recall_steps));
            }
        }
        v
    }

    pub fn validated(self) -> Result<Self> {
        let v = self.validate();
        if v.is_empty() {
            Ok(self)
        } else {
            Err(Error::InvalidConfig(v))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_are_valid_and_round_trip() {
        for kind in ExperimentKind::ALL {
            let cfg = ExperimentConfig::preset(kind);
            assert!(cfg.validate().is_empty(), "{kind:?}: {:?}", cfg.validate());
            let back = ExperimentConfig::from_toml(&cfg.to_toml()).unwrap();
            assert_eq!(back, cfg);
        }
    }

    #[test]
    fn presets_match_the_tables() {
        let s = ExperimentConfig::preset(ExperimentKind::Supervised);
        assert_eq!(s.schedule.total_batches(), 800);
        assert_eq!(s.neuron.goal.gamma_caps(), [0.1, 0.1, 1.0, 0.1, 0.0]);
        assert_eq!((s.neuron.spec_r.lower, s.neuron.spec_r.upper, s.neuron.spec_r.n_interior), (-20.0, 20.0, 200));
        let u = ExperimentConfig::preset(ExperimentKind::Unsupervised);
        assert_eq!(u.schedule.phases.iter().map(|p| (p.n_steps, p.eta, p.lambda)).collect::<Vec<_>>(), vec![(50, 10.0, 0.28), (50, 1.0, 0.0)]);
        assert_eq!(u.neuron.goal.gamma_caps(), [1.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(u.neuron.spec_c.n_interior, 500);
        let m = ExperimentConfig::preset(ExperimentKind::Memory);
        assert_eq!((m.schedule.total_batches(), m.schedule.phases[0].eta, m.neuron.spec_r.n_interior), (300, 0.48, 20));
    }

    #[test]
    fn violations_name_their_field() {
        let mut cfg = ExperimentConfig::preset(ExperimentKind::Unsupervised);
        cfg.schedule.phases[0].lambda = 0.6;
        cfg.schedule.m_rep = 0;
        let v = cfg.validate();
        assert_eq!(v.len(), 2);
        assert!(v[0].starts_with("schedule.phases[0].lambda"));
        assert!(v[1].starts_with("schedule.m_rep"));
        assert!(matches!(cfg.validated(), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let mut text = ExperimentConfig::preset(ExperimentKind::Memory).to_toml();
        text.push_str("\nbogus = 1\n");
        assert!(ExperimentConfig::from_toml(&text).is_err());
    }
}
