use serde::{Deserialize, Serialize};

use super::joint::BinnedJointModel;

/// Binary entropy in bits. Arguments are expected to be clamped already.
#[inline]
pub(crate) fn h2(p: f64) -> f64 {
    -(p * p.log2() + (1.0 - p) * (1.0 - p).log2())
}

/// Output entropy and its conditional variants, in bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionalEntropies {
    pub h_y: f64,
    pub h_y_given_r: f64,
    pub h_y_given_c: f64,
    pub h_y_given_rc: f64,
}

pub fn conditional_entropies(model: &BinnedJointModel) -> ConditionalEntropies {
    let h_y = h2(model.p_plus());
    let mut h_y_given_rc = 0.0;
    for cell in model.cells() {
        h_y_given_rc += cell.mass * h2(cell.theta);
    }
    let mut h_y_given_r = 0.0;
    for i in 0..model.row_slots() {
        let r = super::BinIndex(i);
        let p = model.p_r(r);
        if p > 0.0 {
            h_y_given_r += p * h2(model.p_plus_given_r(r));
        }
    }
    let mut h_y_given_c = 0.0;
    for i in 0..model.col_slots() {
        let c = super::BinIndex(i);
        let p = model.p_c(c);
        if p > 0.0 {
            h_y_given_c += p * h2(model.p_plus_given_c(c));
        }
    }
    ConditionalEntropies {
        h_y,
        h_y_given_r,
        h_y_given_c,
        h_y_given_rc,
    }
}

/// Redundant information under the pointwise union-event measure, in bits.
///
/// `sum_{y,r,c} p(y,r,c) log2[ p(y | r ∪ c) / p(y) ]`
pub fn i_sx_redundancy(model: &BinnedJointModel) -> f64 {
    let p_plus = model.p_plus();
    let p_minus = 1.0 - p_plus;
    let mut acc = 0.0;
    for (i, cell) in model.cells().iter().enumerate() {
        let q = model.p_plus_given_union_at(i);
        let pointwise = cell.theta * (q / p_plus).log2() + (1.0 - cell.theta) * ((1.0 - q) / p_minus).log2();
        acc += cell.mass * pointwise;
    }
    acc
}

/// The five goal components of a neuron's output entropy plus the classical
/// quantities they are assembled from. All values in bits.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PidAtoms {
    pub i_unq_r: f64,
    pub i_unq_c: f64,
    pub i_red: f64,
    pub i_syn: f64,
    pub h_res: f64,
    pub h_y: f64,
    pub i_y_r: f64,
    pub i_y_c: f64,
    pub i_y_rc: f64,
}

impl PidAtoms {
    /// Atoms in goal-vector order `(unq_R, unq_C, red, syn, res)`.
    pub fn as_goal_vector(&self) -> [f64; 5] {
        [self.i_unq_r, self.i_unq_c, self.i_red, self.i_syn, self.h_res]
    }

    /// Largest violation of the consistency equations tying atoms to the
    /// classical mutual informations.
    pub fn consistency_error(&self) -> f64 {
        [
            self.i_red + self.i_unq_r - self.i_y_r,
            self.i_red + self.i_unq_c - self.i_y_c,
            self.i_unq_r + self.i_unq_c + self.i_red + self.i_syn - self.i_y_rc,
            self.i_y_rc + self.h_res - self.h_y,
        ]
        .iter()
        .fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Average of several atom sets (e.g. over the neurons of a layer).
    pub fn mean<'a, I: IntoIterator<Item = &'a PidAtoms>>(atoms: I) -> PidAtoms {
        let mut acc = PidAtoms::default();
        let mut n = 0usize;
        for a in atoms {
            acc.i_unq_r += a.i_unq_r;
            acc.i_unq_c += a.i_unq_c;
            acc.i_red += a.i_red;
            acc.i_syn += a.i_syn;
            acc.h_res += a.h_res;
            acc.h_y += a.h_y;
            acc.i_y_r += a.i_y_r;
            acc.i_y_c += a.i_y_c;
            acc.i_y_rc += a.i_y_rc;
            n += 1;
        }
        if n > 0 {
            let k = 1.0 / n as f64;
            acc.i_unq_r *= k;
            acc.i_unq_c *= k;
            acc.i_red *= k;
            acc.i_syn *= k;
            acc.h_res *= k;
            acc.h_y *= k;
            acc.i_y_r *= k;
            acc.i_y_c *= k;
            acc.i_y_rc *= k;
        }
        acc
    }
}

/// Full decomposition: classical terms from the model, redundancy from the
/// union-event measure, remaining atoms from the consistency equations.
pub fn pid_decompose(model: &BinnedJointModel) -> PidAtoms {
    let h = conditional_entropies(model);
    let i_y_r = h.h_y - h.h_y_given_r;
    let i_y_c = h.h_y - h.h_y_given_c;
    let i_y_rc = h.h_y - h.h_y_given_rc;
    let i_red = i_sx_redundancy(model);
    let i_unq_r = i_y_r - i_red;
    let i_unq_c = i_y_c - i_red;
    let i_syn = i_y_rc - i_unq_r - i_unq_c - i_red;
    PidAtoms {
        i_unq_r,
        i_unq_c,
        i_red,
        i_syn,
        h_res: h.h_y_given_rc,
        h_y: h.h_y,
        i_y_r,
        i_y_c,
        i_y_rc,
    }
}
