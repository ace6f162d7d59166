use std::collections::BTreeMap;

use super::binning::{BinIndex, BinningSpec};
use crate::error::{Error, Result};

/// Lower/upper clamp applied to every probability that enters a logarithm.
pub const PROB_EPS: f64 = 1e-12;

#[inline]
pub(crate) fn clamp_prob(p: f64) -> f64 {
    p.clamp(PROB_EPS, 1.0 - PROB_EPS)
}

/// One occupied cell of the joint histogram.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub r: BinIndex,
    pub c: BinIndex,
    /// Empirical probability mass `p(r, c)`.
    pub mass: f64,
    /// Firing probability `P(Y = +1 | r, c)` at the bin centers.
    pub theta: f64,
}

/// Empirical joint distribution of binned receptive and contextual inputs
/// together with the conditional firing table.
///
/// Cells are kept sorted by `(r, c)` and only occupied cells are stored. The
/// joint over the output is implicit: `p(+1, r, c) = theta * mass`.
#[derive(Debug, Clone)]
pub struct BinnedJointModel {
    spec_r: BinningSpec,
    spec_c: BinningSpec,
    cells: Vec<Cell>,
    // dense marginals over all bins (zero where unoccupied)
    p_r: Vec<f64>,
    p_c: Vec<f64>,
    fire_r: Vec<f64>,
    fire_c: Vec<f64>,
    p_plus: f64,
}

/// Marginal firing probabilities `<theta>` over the joint, and conditioned
/// on either binned input.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaMarginals {
    pub p_plus: f64,
    pub given_r: BTreeMap<BinIndex, f64>,
    pub given_c: BTreeMap<BinIndex, f64>,
}

impl BinnedJointModel {
    /// Builds a model from explicit cells. Masses are renormalized, duplicate
    /// cells are merged (mass-weighted theta) and theta is clamped.
    pub fn from_cells(spec_r: BinningSpec, spec_c: BinningSpec, mut cells: Vec<Cell>) -> Result<Self> {
        spec_r.validate()?;
        spec_c.validate()?;
        if cells.is_empty() {
            return Err(Error::EmptySamples);
        }
        for cell in &cells {
            if !spec_r.contains(cell.r) || !spec_c.contains(cell.c) {
                return Err(Error::UnoccupiedBin {
                    r: cell.r.0,
                    c: cell.c.0,
                });
            }
        }
        cells.sort_by_key(|c| (c.r, c.c));
        let mut merged: Vec<Cell> = Vec::with_capacity(cells.len());
        for cell in cells {
            match merged.last_mut() {
                Some(last) if last.r == cell.r && last.c == cell.c => {
                    let total = last.mass + cell.mass;
                    if total > 0.0 {
                        last.theta = (last.theta * last.mass + cell.theta * cell.mass) / total;
                    }
                    last.mass = total;
                }
                _ => merged.push(cell),
            }
        }
        merged.retain(|c| c.mass > 0.0);
        let total: f64 = merged.iter().map(|c| c.mass).sum();
        if merged.is_empty() || total.is_nan() || total <= 0.0 {
            return Err(Error::EmptySamples);
        }
        for cell in &mut merged {
            cell.mass /= total;
            cell.theta = clamp_prob(cell.theta);
        }
        Ok(Self::with_marginals(spec_r, spec_c, merged))
    }

    /// Histogram of already-binned observations, theta evaluated at bin centers.
    pub fn from_binned<F>(
        spec_r: BinningSpec,
        spec_c: BinningSpec,
        bins: &[(BinIndex, BinIndex)],
        theta_fn: F,
    ) -> Result<Self>
    where
        F: Fn(f64, f64) -> f64,
    {
        if bins.is_empty() {
            return Err(Error::EmptySamples);
        }
        let stride = spec_c.total_bins() as u64;
        let mut keys: Vec<u64> = bins.iter().map(|(r, c)| r.0 as u64 * stride + c.0 as u64).collect();
        keys.sort_unstable();
        let n = keys.len() as f64;
        let mut cells = Vec::new();
        let mut i = 0;
        while i < keys.len() {
            let key = keys[i];
            let mut j = i;
            while j < keys.len() && keys[j] == key {
                j += 1;
            }
            let r = BinIndex((key / stride) as usize);
            let c = BinIndex((key % stride) as usize);
            let theta = theta_fn(spec_r.center(r), spec_c.center(c));
            cells.push(Cell {
                r,
                c,
                mass: (j - i) as f64 / n,
                theta: clamp_prob(theta),
            });
            i = j;
        }
        Ok(Self::with_marginals(spec_r, spec_c, cells))
    }

    fn with_marginals(spec_r: BinningSpec, spec_c: BinningSpec, cells: Vec<Cell>) -> Self {
        let mut p_r = vec![0.0; spec_r.total_bins()];
        let mut p_c = vec![0.0; spec_c.total_bins()];
        let mut fire_r = vec![0.0; spec_r.total_bins()];
        let mut fire_c = vec![0.0; spec_c.total_bins()];
        let mut p_plus = 0.0;
        for cell in &cells {
            let tp = cell.theta * cell.mass;
            p_r[cell.r.0] += cell.mass;
            p_c[cell.c.0] += cell.mass;
            fire_r[cell.r.0] += tp;
            fire_c[cell.c.0] += tp;
            p_plus += tp;
        }
        Self {
            spec_r,
            spec_c,
            cells,
            p_r,
            p_c,
            fire_r,
            fire_c,
            p_plus,
        }
    }

    pub fn spec_r(&self) -> &BinningSpec {
        &self.spec_r
    }

    pub fn spec_c(&self) -> &BinningSpec {
        &self.spec_c
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Position of `(r, c)` in [`cells`](Self::cells), if occupied.
    pub fn cell_index(&self, r: BinIndex, c: BinIndex) -> Option<usize> {
        self.cells.binary_search_by_key(&(r, c), |cell| (cell.r, cell.c)).ok()
    }

    pub fn cell(&self, r: BinIndex, c: BinIndex) -> Option<&Cell> {
        self.cell_index(r, c).map(|i| &self.cells[i])
    }

    /// A copy with a new theta at one cell; masses are untouched.
    pub fn with_theta(&self, index: usize, theta: f64) -> Self {
        let mut cells = self.cells.clone();
        cells[index].theta = clamp_prob(theta);
        Self::with_marginals(self.spec_r, self.spec_c, cells)
    }

    pub fn p_r(&self, r: BinIndex) -> f64 {
        self.p_r[r.0]
    }

    pub fn p_c(&self, c: BinIndex) -> f64 {
        self.p_c[c.0]
    }

    /// `<theta>` over the whole joint, clamped.
    pub fn p_plus(&self) -> f64 {
        clamp_prob(self.p_plus)
    }

    /// `<theta>_{c|r}`, clamped. Zero-mass rows return the clamp floor.
    pub fn p_plus_given_r(&self, r: BinIndex) -> f64 {
        let p = self.p_r[r.0];
        if p > 0.0 {
            clamp_prob(self.fire_r[r.0] / p)
        } else {
            PROB_EPS
        }
    }

    pub fn p_plus_given_c(&self, c: BinIndex) -> f64 {
        let p = self.p_c[c.0];
        if p > 0.0 {
            clamp_prob(self.fire_c[c.0] / p)
        } else {
            PROB_EPS
        }
    }

    /// `(p(r ∪ c), p(+1, r ∪ c))` for the cell at `index`.
    pub(crate) fn union_at(&self, index: usize) -> (f64, f64) {
        let cell = &self.cells[index];
        let p_union = self.p_r[cell.r.0] + self.p_c[cell.c.0] - cell.mass;
        let p_y_union = self.fire_r[cell.r.0] + self.fire_c[cell.c.0] - cell.theta * cell.mass;
        (clamp_prob(p_union), p_y_union.max(PROB_EPS))
    }

    /// `p(+1 | r ∪ c)` for the cell at `index`, clamped.
    pub(crate) fn p_plus_given_union_at(&self, index: usize) -> f64 {
        let (pu, pyu) = self.union_at(index);
        clamp_prob(pyu / pu)
    }

    pub(crate) fn row_slots(&self) -> usize {
        self.p_r.len()
    }

    pub(crate) fn col_slots(&self) -> usize {
        self.p_c.len()
    }
}

/// Histogram of raw `(r, c)` samples with theta evaluated at bin centers.
pub fn estimate_joint<F>(
    samples: &[(f64, f64)],
    theta_fn: F,
    spec_r: &BinningSpec,
    spec_c: &BinningSpec,
) -> Result<BinnedJointModel>
where
    F: Fn(f64, f64) -> f64,
{
    if samples.is_empty() {
        return Err(Error::EmptySamples);
    }
    spec_r.validate()?;
    spec_c.validate()?;
    let bins = samples
        .iter()
        .map(|&(r, c)| Ok((spec_r.bin(r)?, spec_c.bin(c)?)))
        .collect::<Result<Vec<_>>>()?;
    BinnedJointModel::from_binned(*spec_r, *spec_c, &bins, theta_fn)
}

pub fn marginal_theta(model: &BinnedJointModel) -> ThetaMarginals {
    let mut given_r = BTreeMap::new();
    let mut given_c = BTreeMap::new();
    for cell in model.cells() {
        given_r
            .entry(cell.r)
            .or_insert_with(|| model.p_plus_given_r(cell.r));
        given_c
            .entry(cell.c)
            .or_insert_with(|| model.p_plus_given_c(cell.c));
    }
    ThetaMarginals {
        p_plus: model.p_plus(),
        given_r,
        given_c,
    }
}

/// `(p(r ∪ c), p(+1, r ∪ c))` for an occupied bin pair.
pub fn union_probabilities(model: &BinnedJointModel, r: BinIndex, c: BinIndex) -> Result<(f64, f64)> {
    let index = model
        .cell_index(r, c)
        .ok_or(Error::UnoccupiedBin { r: r.0, c: c.0 })?;
    Ok(model.union_at(index))
}
