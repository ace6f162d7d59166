//! Readouts and summary statistics.

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::dot;
use crate::network::{Mode, Network, Stimulus};
use crate::pid::PidAtoms;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRecord {
    pub batch_index: usize,
    pub neuron_id: usize,
    pub atoms: PidAtoms,
    pub goal: f64,
}

/// Mean atoms over neurons for each logged batch, in batch order.
pub fn mean_atoms_by_batch(records: &[TrajectoryRecord]) -> Vec<(usize, PidAtoms)> {
    let mut by_batch: BTreeMap<usize, Vec<&PidAtoms>> = BTreeMap::new();
    for r in records {
        by_batch.entry(r.batch_index).or_default().push(&r.atoms);
    }
    by_batch.into_iter().map(|(b, atoms)| (b, PidAtoms::mean(atoms))).collect()
}

/// Index of the largest entry; ties go to the lowest index.
pub fn argmax(row: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in row.iter().enumerate() {
        if v > row[best] {
            best = i;
        }
    }
    best
}

/// Fraction of rows whose largest firing probability sits at the label.
pub fn wta_accuracy<R: AsRef<[f64]>>(theta: &[R], labels: &[usize]) -> Result<f64> {
    if theta.len() != labels.len() {
        return Err(Error::DimensionMismatch {
            what: "labels",
            expected: theta.len(),
            got: labels.len(),
        });
    }
    if theta.is_empty() {
        return Err(Error::EmptySamples);
    }
    let hits = theta.iter().zip(labels).filter(|(row, &l)| argmax(row.as_ref()) == l).count();
    Ok(hits as f64 / labels.len() as f64)
}

pub fn cosine_similarity(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            what: "cosine operand",
            expected: a.len(),
            got: b.len(),
        });
    }
    let na = dot(a, a);
    let nb = dot(b, b);
    if na == 0.0 || nb == 0.0 {
        return Err(Error::ZeroNorm);
    }
    Ok((dot(a, b) / (na.sqrt() * nb.sqrt())).clamp(-1.0, 1.0))
}

fn transpose(w: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    let n = w.len();
    if let Some(row) = w.iter().find(|row| row.len() != n) {
        return Err(Error::DimensionMismatch {
            what: "square matrix row",
            expected: n,
            got: row.len(),
        });
    }
    Ok((0..n).map(|j| (0..n).map(|i| w[i][j]).collect()).collect())
}

/// Cosine similarity between a square matrix and its transpose, both flattened.
pub fn weight_symmetry(w: &[Vec<f64>]) -> Result<f64> {
    let t = transpose(w)?;
    let flat: Vec<f64> = w.iter().flatten().copied().collect();
    let flat_t: Vec<f64> = t.iter().flatten().copied().collect();
    cosine_similarity(&flat, &flat_t)
}

/// Expands recurrent contextual weights (row `k` has `n - 1` entries, own slot
/// omitted) into an `n × n` matrix with a zero diagonal.
pub fn contextual_matrix(network: &Network) -> Vec<Vec<f64>> {
    let n = network.n_neurons();
    network
        .neurons
        .iter()
        .enumerate()
        .map(|(k, neuron)| {
            let mut row = Vec::with_capacity(n);
            row.extend_from_slice(&neuron.w_c[..k]);
            row.push(0.0);
            row.extend_from_slice(&neuron.w_c[k..]);
            row
        })
        .collect()
}

/// Cosine similarity between `w_c` and the outer-product matrix of `patterns`,
/// diagonal entries excluded on both sides.
pub fn hebbian_similarity(w_c: &[Vec<f64>], patterns: &[Vec<f64>]) -> Result<f64> {
    let n = w_c.len();
    transpose(w_c)?;
    if patterns.is_empty() {
        return Err(Error::EmptySamples);
    }
    let mut a = Vec::with_capacity(n * n);
    let mut b = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            a.push(w_c[i][j]);
            let mut h = 0.0;
            for p in patterns {
                if p.len() != n {
                    return Err(Error::DimensionMismatch {
                        what: "pattern",
                        expected: n,
                        got: p.len(),
                    });
                }
                h += p[i] * p[j];
            }
            b.push(h / n as f64);
        }
    }
    cosine_similarity(&a, &b)
}

/// Largest pattern count whose mean accuracy exceeds `threshold`, or 0 if none does.
pub fn capacity(table: &BTreeMap<usize, f64>, threshold: f64) -> Result<usize> {
    if table.is_empty() {
        return Err(Error::EmptyTable);
    }
    Ok(table
        .iter()
        .filter(|(_, &acc)| acc > threshold)
        .map(|(&p, _)| p)
        .max()
        .unwrap_or(0))
}

/// Plug-in mutual information (bits) of a sample of discrete pairs.
pub fn plugin_mutual_information(pairs: &[(u32, u32)]) -> f64 {
    if pairs.is_empty() {
        return 0.0;
    }
    let n = pairs.len() as f64;
    let mut joint: BTreeMap<(u32, u32), usize> = BTreeMap::new();
    let mut px: BTreeMap<u32, usize> = BTreeMap::new();
    let mut py: BTreeMap<u32, usize> = BTreeMap::new();
    for &(x, y) in pairs {
        *joint.entry((x, y)).or_default() += 1;
        *px.entry(x).or_default() += 1;
        *py.entry(y).or_default() += 1;
    }
    let mut mi = 0.0;
    for (&(x, y), &k) in &joint {
        let pxy = k as f64 / n;
        mi += pxy * (pxy * n * n / (px[&x] as f64 * py[&y] as f64)).log2();
    }
    mi.max(0.0)
}

/// Outcome of probing a bars network with random stimuli.
#[derive(Debug, Clone)]
pub struct LayerProbe {
    /// `(stimulus pattern id, output word)` per trial.
    pub pairs: Vec<(u32, u32)>,
}

impl LayerProbe {
    pub fn mutual_information(&self) -> f64 {
        plugin_mutual_information(&self.pairs)
    }

    /// For each neuron, the input bit (bar) it carries most information about,
    /// with that information in bits.
    pub fn preferred_bars(&self, n_neurons: usize, n_bars: usize) -> Vec<(usize, f64)> {
        (0..n_neurons)
            .map(|k| {
                (0..n_bars)
                    .map(|j| {
                        let bits: Vec<(u32, u32)> = self.pairs.iter().map(|&(s, w)| ((s >> j) & 1, (w >> k) & 1)).collect();
                        (j, plugin_mutual_information(&bits))
                    })
                    .fold((0, f64::NEG_INFINITY), |best, cur| if cur.1 > best.1 { cur } else { best })
            })
            .collect()
    }
}

/// Runs `n_samples` trials on a recurrent bars network. Each trial draws one of
/// the `2^n_bars` bar patterns uniformly, presents it for `settle_steps` steps
/// and records the output word after the last step. The state carries over
/// between trials and the network itself is left untouched.
pub fn probe_layer<R: Rng + ?Sized>(
    network: &Network,
    render: impl Fn(u32) -> Vec<f64>,
    n_bars: u32,
    n_samples: usize,
    settle_steps: usize,
    rng: &mut R,
) -> Result<LayerProbe> {
    let mut probe = network.clone();
    probe.reseed_streams(rng.gen());
    let stimuli: Vec<Stimulus> = (0..1u32 << n_bars).map(|id| Stimulus::new(render(id))).collect();
    let mut pairs = Vec::with_capacity(n_samples);
    for _ in 0..n_samples {
        let id = rng.gen_range(0..1u32 << n_bars);
        for _ in 0..settle_steps.max(1) {
            probe.step(&stimuli[id as usize], Mode::Test)?;
        }
        let word = probe
            .state
            .outputs
            .iter()
            .enumerate()
            .fold(0u32, |w, (k, &y)| if y > 0.0 { w | (1 << k) } else { w });
        pairs.push((id, word));
    }
    Ok(LayerProbe { pairs })
}

/// Plug-in estimate of `I(X_R : Y_1..Y_n)` in bits for a bars network.
pub fn layer_mutual_information<R: Rng + ?Sized>(
    network: &Network,
    render: impl Fn(u32) -> Vec<f64>,
    n_bars: u32,
    n_samples: usize,
    settle_steps: usize,
    rng: &mut R,
) -> Result<f64> {
    Ok(probe_layer(network, render, n_bars, n_samples, settle_steps, rng)?.mutual_information())
}

/// Sample percentile with linear interpolation, `q` in `[0, 1]`.
pub fn percentile(values: &[f64], q: f64) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let pos = q.clamp(0.0, 1.0) * (v.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    v[lo] + (v[hi] - v[lo]) * (pos - lo as f64)
}

pub fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    values.iter().sum::<f64>() / values.len() as f64
}
