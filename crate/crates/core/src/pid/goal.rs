use std::f64::consts::LN_2;

use serde::{Deserialize, Serialize};

use super::decompose::{conditional_entropies, i_sx_redundancy, PidAtoms};
use super::joint::BinnedJointModel;

/// Maps `(Γ_unq,R, Γ_unq,C, Γ_red, Γ_syn, Γ_res)` to the entropy-space weights
/// `(γ_Y, γ_Y|R, γ_Y|C, γ_Y|RC, γ_red)`.
pub const ATOM_TO_ENTROPY: [[i32; 5]; 5] = [
    [1, 1, 0, -1, 0],
    [-1, 0, 0, 1, 0],
    [0, -1, 0, 1, 0],
    [0, 0, 0, -1, 1],
    [-1, -1, 1, 1, 0],
];

/// Inverse of [`ATOM_TO_ENTROPY`].
pub const ENTROPY_TO_ATOM: [[i32; 5]; 5] = [
    [1, 0, 1, 0, 0],
    [1, 1, 0, 0, 0],
    [1, 0, 0, 0, 1],
    [1, 1, 1, 0, 0],
    [1, 1, 1, 1, 0],
];

fn apply(matrix: &[[i32; 5]; 5], v: &[f64; 5]) -> [f64; 5] {
    let mut out = [0.0; 5];
    for (o, row) in out.iter_mut().zip(matrix) {
        *o = row.iter().zip(v).map(|(&m, &x)| m as f64 * x).sum();
    }
    out
}

pub fn reparameterize(gamma_caps: [f64; 5]) -> [f64; 5] {
    apply(&ATOM_TO_ENTROPY, &gamma_caps)
}

/// Goal weights in atom space together with their entropy-space image.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 5]", into = "[f64; 5]")]
pub struct GoalParams {
    gamma_caps: [f64; 5],
    gamma_small: [f64; 5],
}

impl From<[f64; 5]> for GoalParams {
    fn from(gamma_caps: [f64; 5]) -> Self {
        Self::new(gamma_caps)
    }
}

impl From<GoalParams> for [f64; 5] {
    fn from(p: GoalParams) -> Self {
        p.gamma_caps
    }
}

impl GoalParams {
    pub fn new(gamma_caps: [f64; 5]) -> Self {
        Self {
            gamma_caps,
            gamma_small: reparameterize(gamma_caps),
        }
    }

    pub fn from_entropy_weights(gamma_small: [f64; 5]) -> Self {
        Self {
            gamma_caps: apply(&ENTROPY_TO_ATOM, &gamma_small),
            gamma_small,
        }
    }

    pub fn gamma_caps(&self) -> [f64; 5] {
        self.gamma_caps
    }

    pub fn gamma_small(&self) -> [f64; 5] {
        self.gamma_small
    }

    pub fn is_zero(&self) -> bool {
        self.gamma_caps.iter().all(|&g| g == 0.0)
    }
}

/// `G = Γ · (I_unq,R, I_unq,C, I_red, I_syn, H_res)`.
pub fn goal_value(atoms: &PidAtoms, params: &GoalParams) -> f64 {
    params
        .gamma_caps
        .iter()
        .zip(atoms.as_goal_vector())
        .map(|(g, a)| g * a)
        .sum()
}

/// The same goal evaluated in entropy space directly from a model.
pub fn goal_value_entropic(model: &BinnedJointModel, params: &GoalParams) -> f64 {
    let h = conditional_entropies(model);
    let [g_y, g_yr, g_yc, g_yrc, g_red] = params.gamma_small;
    g_y * h.h_y + g_yr * h.h_y_given_r + g_yc * h.h_y_given_c + g_yrc * h.h_y_given_rc + g_red * i_sx_redundancy(model)
}

#[inline]
fn logit2(p: f64) -> f64 {
    (p / (1.0 - p)).log2()
}

/// Pointwise derivative `∂g/∂θ` for every occupied cell, in cell order.
///
/// Scaled so that `∂G/∂θ(r,c) = p(r,c) · ∂g/∂θ(r,c)`. The union-event term
/// couples every cell sharing a row or column with the perturbed one; those
/// contributions are collected through row and column sums.
pub fn dg_dtheta_all(model: &BinnedJointModel, params: &GoalParams) -> Vec<f64> {
    let [g_y, g_yr, g_yc, g_yrc, g_red] = params.gamma_small;
    let cells = model.cells();
    let global = -(g_y + g_red) * logit2(model.p_plus());

    let mut union_q = Vec::new();
    let mut row_sum = Vec::new();
    let mut col_sum = Vec::new();
    let mut coupling = Vec::new();
    if g_red != 0.0 {
        union_q.reserve(cells.len());
        coupling.reserve(cells.len());
        row_sum = vec![0.0; model.row_slots()];
        col_sum = vec![0.0; model.col_slots()];
        for (i, cell) in cells.iter().enumerate() {
            let (pu, _) = model.union_at(i);
            let q = model.p_plus_given_union_at(i);
            let t = cell.mass / pu * (cell.theta / q - (1.0 - cell.theta) / (1.0 - q));
            union_q.push(q);
            coupling.push(t);
            row_sum[cell.r.0] += t;
            col_sum[cell.c.0] += t;
        }
    }

    cells
        .iter()
        .enumerate()
        .map(|(i, cell)| {
            let mut d = global;
            if g_yr != 0.0 {
                d -= g_yr * logit2(model.p_plus_given_r(cell.r));
            }
            if g_yc != 0.0 {
                d -= g_yc * logit2(model.p_plus_given_c(cell.c));
            }
            if g_yrc != 0.0 {
                d -= g_yrc * logit2(cell.theta);
            }
            if g_red != 0.0 {
                let cross = row_sum[cell.r.0] + col_sum[cell.c.0] - coupling[i];
                d += g_red * (logit2(union_q[i]) + cross / LN_2);
            }
            d
        })
        .collect()
}

/// `∂g/∂θ` at a single occupied bin pair; `None` if the pair is unoccupied.
pub fn dg_dtheta(
    model: &BinnedJointModel,
    r: super::BinIndex,
    c: super::BinIndex,
    params: &GoalParams,
) -> Option<f64> {
    let index = model.cell_index(r, c)?;
    Some(dg_dtheta_all(model, params)[index])
}
