//! Configuration-driven experiment runner and CSV export.

mod config;
mod runs;

pub use config::{ExperimentConfig, ExperimentKind, MemoryOptions, SupervisedOptions, UnsupervisedOptions};
pub use runs::{
    bars_source, recall_scores, run_memory, run_supervised, run_unsupervised, supervised_accuracy, MemoryRun, RecallScore,
    SupervisedRun, UnsupervisedRun,
};

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::Result;
use crate::metrics::{capacity, mean, percentile, TrajectoryRecord};
use crate::network::Network;
use crate::pid::PidAtoms;
use crate::seed;
use crate::tasks::{load_mnist, mnist_dir, train_logreg, Mnist};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaselineAccuracy {
    pub test_accuracy: f64,
    pub train_accuracy: f64,
}

#[derive(Debug, Clone)]
pub enum Outcome {
    Supervised {
        runs: Vec<SupervisedRun>,
        logreg: Option<BaselineAccuracy>,
    },
    Unsupervised {
        runs: Vec<UnsupervisedRun>,
    },
    Memory {
        runs: Vec<MemoryRun>,
    },
}

/// Loads MNIST from the configured directory.
pub fn load_config_mnist(cfg: &ExperimentConfig) -> Result<Mnist> {
    load_mnist(&mnist_dir(cfg.supervised.mnist_dir.as_deref()))
}

/// One-vs-all logistic regression on the full training split, pixels in `[0, 1]`.
pub fn logreg_baseline(cfg: &ExperimentConfig, data: &Mnist) -> Result<BaselineAccuracy> {
    let x_train = data.train.matrix_f32_unit();
    let y_train = data.train.labels_usize();
    let mut rng = seed::stream(cfg.base_seed, seed::INIT);
    let model = train_logreg(
        x_train.view(),
        &y_train,
        cfg.supervised.n_classes,
        cfg.supervised.logreg_iters,
        cfg.supervised.logreg_eta as f32,
        &mut rng,
    )?;
    let x_test = data.test.matrix_f32_unit();
    Ok(BaselineAccuracy {
        test_accuracy: model.accuracy(x_test.view(), &data.test.labels_usize()),
        train_accuracy: model.accuracy(x_train.view(), &y_train),
    })
}

/// Runs all `n_runs` runs of `cfg` (in parallel on the current rayon pool).
/// Results come back in run order regardless of scheduling.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Outcome> {
    let cfg = cfg.clone().validated()?;
    match cfg.experiment {
        ExperimentKind::Supervised => {
            let data = Arc::new(load_config_mnist(&cfg)?);
            let runs = (0..cfg.n_runs)
                .into_par_iter()
                .map(|i| run_supervised(&cfg, i, &data))
                .collect::<Result<Vec<_>>>()?;
            let logreg = if cfg.supervised.logreg_iters > 0 {
                Some(logreg_baseline(&cfg, &data)?)
            } else {
                None
            };
            Ok(Outcome::Supervised { runs, logreg })
        }
        ExperimentKind::Unsupervised => {
            let runs = (0..cfg.n_runs)
                .into_par_iter()
                .map(|i| run_unsupervised(&cfg, i))
                .collect::<Result<Vec<_>>>()?;
            Ok(Outcome::Unsupervised { runs })
        }
        ExperimentKind::Memory => {
            let jobs: Vec<(usize, usize)> = cfg
                .memory
                .pattern_counts
                .iter()
                .flat_map(|&p| (0..cfg.n_runs).map(move |i| (p, i)))
                .collect();
            let runs = jobs
                .into_par_iter()
                .map(|(p, i)| run_memory(&cfg, i, p))
                .collect::<Result<Vec<_>>>()?;
            Ok(Outcome::Memory { runs })
        }
    }
}

#[inline]
fn f(x: f64) -> String {
    format!("{x:.8e}")
}

const ATOM_HEADER: &str = "i_unq_r,i_unq_c,i_red,i_syn,h_res,h_y,i_y_r,i_y_c,i_y_rc";

fn atom_fields(a: &PidAtoms) -> String {
    [a.i_unq_r, a.i_unq_c, a.i_red, a.i_syn, a.h_res, a.h_y, a.i_y_r, a.i_y_c, a.i_y_rc]
        .iter()
        .map(|&v| f(v))
        .collect::<Vec<_>>()
        .join(",")
}

fn trajectory_rows(out: &mut String, prefix: &str, records: &[TrajectoryRecord]) {
    for r in records {
        let _ = writeln!(out, "{prefix}{},{},{},{}", r.batch_index, r.neuron_id, atom_fields(&r.atoms), f(r.goal));
    }
}

fn field_rows(out: &mut String, prefix: &str, network: &Network) {
    for (k, n) in network.neurons.iter().enumerate() {
        for (i, w) in n.w_r.iter().enumerate() {
            let _ = writeln!(out, "{prefix}{k},w_r,{i},{}", f(*w));
        }
        let _ = writeln!(out, "{prefix}{k},b_r,0,{}", f(n.b_r));
        for (i, w) in n.w_c.iter().enumerate() {
            let _ = writeln!(out, "{prefix}{k},w_c,{i},{}", f(*w));
        }
        let _ = writeln!(out, "{prefix}{k},b_c,0,{}", f(n.b_c));
    }
}

/// The CSV files of an outcome, as `(file name, contents)`.
pub fn render_outputs(cfg: &ExperimentConfig, outcome: &Outcome) -> Vec<(&'static str, String)> {
    let mut traj = String::new();
    let mut summary = String::new();
    let mut fields = String::new();
    let mut files = Vec::new();
    match outcome {
        Outcome::Supervised { runs, logreg } => {
            let _ = writeln!(traj, "run,batch,neuron,{ATOM_HEADER},goal");
            let _ = writeln!(summary, "method,run,test_accuracy,train_accuracy,flipped_neurons,{ATOM_HEADER}");
            let _ = writeln!(fields, "run,neuron,param,index,value");
            for r in runs {
                trajectory_rows(&mut traj, &format!("{},", r.run_index), &r.records);
                let atoms = PidAtoms::mean(&r.final_atoms());
                let _ = writeln!(
                    summary,
                    "infomorphic,{},{},{},{},{}",
                    r.run_index,
                    f(r.test_accuracy),
                    f(r.train_accuracy),
                    r.flipped.len(),
                    atom_fields(&atoms)
                );
                field_rows(&mut fields, &format!("{},", r.run_index), &r.network);
            }
            if let Some(b) = logreg {
                let blank = [""; 9].join(",");
                let _ = writeln!(summary, "logistic_regression,,{},{},,{blank}", f(b.test_accuracy), f(b.train_accuracy));
            }
        }
        Outcome::Unsupervised { runs } => {
            let _ = writeln!(traj, "run,batch,neuron,{ATOM_HEADER},goal");
            let _ = writeln!(summary, "run,layer_mi,distinct_bars,encodes_all_bars,preferred_bars,{ATOM_HEADER}");
            let _ = writeln!(fields, "run,neuron,param,index,value");
            for r in runs {
                trajectory_rows(&mut traj, &format!("{},", r.run_index), &r.records);
                let atoms = PidAtoms::mean(&r.final_atoms());
                let bars: Vec<String> = r.preferred_bars.iter().map(|b| b.0.to_string()).collect();
                let _ = writeln!(
                    summary,
                    "{},{},{},{},{},{}",
                    r.run_index,
                    f(r.layer_mi),
                    r.distinct_bars(),
                    r.encodes_all_bars(cfg.unsupervised.min_bar_bits),
                    bars.join(" "),
                    atom_fields(&atoms)
                );
                field_rows(&mut fields, &format!("{},", r.run_index), &r.network);
            }
        }
        Outcome::Memory { runs } => {
            let _ = writeln!(traj, "n_patterns,run,batch,neuron,{ATOM_HEADER},goal");
            let _ = writeln!(summary, "n_patterns,run,noise_beta,infomorphic_accuracy,hopfield_accuracy,weight_symmetry,hebbian_similarity,flipped_neurons");
            let _ = writeln!(fields, "n_patterns,run,neuron,param,index,value");
            for r in runs {
                let prefix = format!("{},{},", r.n_patterns, r.run_index);
                trajectory_rows(&mut traj, &prefix, &r.records);
                for s in &r.scores {
                    let _ = writeln!(
                        summary,
                        "{prefix}{},{},{},{},{},{}",
                        f(s.noise_beta),
                        f(s.infomorphic),
                        f(s.hopfield),
                        f(r.weight_symmetry),
                        f(r.hebbian_similarity),
                        r.flipped.len()
                    );
                }
                field_rows(&mut fields, &prefix, &r.network);
            }
            let (table, limits) = capacity_tables(cfg, runs);
            files.push(("capacity.csv", table));
            files.push(("capacity_limits.csv", limits));
        }
    }
    files.insert(0, ("fields.csv", fields));
    files.insert(0, ("summary.csv", summary));
    files.insert(0, ("trajectories.csv", traj));
    files
}

/// Mean accuracy per (method, noise level, pattern count) over runs, with a
/// 95% band over runs.
pub fn accuracy_table(runs: &[MemoryRun]) -> BTreeMap<(&'static str, u64, usize), Vec<f64>> {
    let mut acc: BTreeMap<(&'static str, u64, usize), Vec<f64>> = BTreeMap::new();
    for r in runs {
        for s in &r.scores {
            let key = s.noise_beta.to_bits();
            acc.entry(("infomorphic", key, r.n_patterns)).or_default().push(s.infomorphic);
            acc.entry(("hopfield", key, r.n_patterns)).or_default().push(s.hopfield);
        }
    }
    acc
}

fn capacity_tables(cfg: &ExperimentConfig, runs: &[MemoryRun]) -> (String, String) {
    let acc = accuracy_table(runs);
    let mut table = String::from("method,noise_beta,n_patterns,mean_accuracy,p2_5,p97_5,n_runs\n");
    let mut curves: BTreeMap<(&'static str, u64), BTreeMap<usize, f64>> = BTreeMap::new();
    for (&(method, beta, p), values) in &acc {
        let m = mean(values);
        let _ = writeln!(
            table,
            "{method},{},{p},{},{},{},{}",
            f(f64::from_bits(beta)),
            f(m),
            f(percentile(values, 0.025)),
            f(percentile(values, 0.975)),
            values.len()
        );
        curves.entry((method, beta)).or_default().insert(p, m);
    }
    let mut limits = String::from("method,noise_beta,capacity\n");
    for ((method, beta), curve) in &curves {
        let c = capacity(curve, cfg.memory.capacity_threshold).unwrap_or(0);
        let _ = writeln!(limits, "{method},{},{c}", f(f64::from_bits(*beta)));
    }
    (table, limits)
}

pub fn write_outputs(cfg: &ExperimentConfig, outcome: &Outcome, dir: &Path) -> Result<Vec<std::path::PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for (name, contents) in render_outputs(cfg, outcome) {
        let path = dir.join(name);
        fs::write(&path, contents)?;
        written.push(path);
    }
    Ok(written)
}
