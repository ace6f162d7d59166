//! Test-only oracles, independent of the library's computation paths.
#![allow(dead_code)]

pub mod frozen;

use infomorphic::pid::{BinIndex, BinnedJointModel, BinningSpec, Cell};
use rand::Rng;

/// Explicit joint table `p(y, r, c)` over small alphabets, with `y` in {0: -1, 1: +1}.
pub struct JointTable {
    pub n_r: usize,
    pub n_c: usize,
    /// indexed [y][r][c]
    pub p: Vec<Vec<Vec<f64>>>,
}

impl JointTable {
    pub fn from_theta(mass: &[Vec<f64>], theta: &[Vec<f64>]) -> Self {
        let n_r = mass.len();
        let n_c = mass[0].len();
        let mut p = vec![vec![vec![0.0; n_c]; n_r]; 2];
        for r in 0..n_r {
            for c in 0..n_c {
                p[1][r][c] = theta[r][c] * mass[r][c];
                p[0][r][c] = (1.0 - theta[r][c]) * mass[r][c];
            }
        }
        Self { n_r, n_c, p }
    }

    fn p_y(&self, y: usize) -> f64 {
        self.p[y].iter().flatten().sum()
    }

    /// Probability of `y` jointly with the event {R = r or C = c}, and of the event itself,
    /// by enumerating all outcomes.
    fn union_event(&self, y: usize, r: usize, c: usize) -> (f64, f64) {
        let mut joint = 0.0;
        let mut event = 0.0;
        for rr in 0..self.n_r {
            for cc in 0..self.n_c {
                if rr == r || cc == c {
                    joint += self.p[y][rr][cc];
                    event += self.p[0][rr][cc] + self.p[1][rr][cc];
                }
            }
        }
        (joint, event)
    }

    pub fn redundancy(&self) -> f64 {
        let mut acc = 0.0;
        for y in 0..2 {
            let py = self.p_y(y);
            for r in 0..self.n_r {
                for c in 0..self.n_c {
                    let p = self.p[y][r][c];
                    if p > 0.0 {
                        let (joint, event) = self.union_event(y, r, c);
                        acc += p * ((joint / event) / py).log2();
                    }
                }
            }
        }
        acc
    }

    fn entropy(probs: impl Iterator<Item = f64>) -> f64 {
        probs.filter(|&p| p > 0.0).map(|p| -p * p.log2()).sum()
    }

    /// I(Y : source) where source groups outcomes by `key(r, c)`.
    fn mutual_info(&self, key: impl Fn(usize, usize) -> usize, n_keys: usize) -> f64 {
        let mut pk = vec![0.0; n_keys];
        let mut pyk = vec![[0.0; 2]; n_keys];
        for y in 0..2 {
            for r in 0..self.n_r {
                for c in 0..self.n_c {
                    let k = key(r, c);
                    pk[k] += self.p[y][r][c];
                    pyk[k][y] += self.p[y][r][c];
                }
            }
        }
        let hy = Self::entropy((0..2).map(|y| self.p_y(y)));
        let hk = Self::entropy(pk.iter().copied());
        let hyk = Self::entropy(pyk.iter().flat_map(|v| v.iter().copied()));
        hy + hk - hyk
    }

    pub fn i_y_r(&self) -> f64 {
        self.mutual_info(|r, _| r, self.n_r)
    }

    pub fn i_y_c(&self) -> f64 {
        self.mutual_info(|_, c| c, self.n_c)
    }

    pub fn i_y_rc(&self) -> f64 {
        let n_c = self.n_c;
        self.mutual_info(|r, c| r * n_c + c, self.n_r * n_c)
    }

    pub fn h_y(&self) -> f64 {
        Self::entropy((0..2).map(|y| self.p_y(y)))
    }
}

pub fn unit_spec(n: usize) -> BinningSpec {
    BinningSpec::new(0.0, n as f64, n).unwrap()
}

/// Model with interior bins `1..=n` matching a dense mass/theta grid.
pub fn model_from_grid(mass: &[Vec<f64>], theta: &[Vec<f64>]) -> BinnedJointModel {
    let n_r = mass.len();
    let n_c = mass[0].len();
    let mut cells = Vec::new();
    for r in 0..n_r {
        for c in 0..n_c {
            if mass[r][c] > 0.0 {
                cells.push(Cell {
                    r: BinIndex(r + 1),
                    c: BinIndex(c + 1),
                    mass: mass[r][c],
                    theta: theta[r][c],
                });
            }
        }
    }
    BinnedJointModel::from_cells(unit_spec(n_r), unit_spec(n_c), cells).unwrap()
}

/// Random dense grid with masses summing to one and theta inside (lo, 1 - lo).
pub fn random_grid<R: Rng>(rng: &mut R, n_r: usize, n_c: usize, lo: f64) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let mut mass: Vec<Vec<f64>> = (0..n_r)
        .map(|_| (0..n_c).map(|_| rng.gen_range(0.05..1.0)).collect())
        .collect();
    let total: f64 = mass.iter().flatten().sum();
    for row in &mut mass {
        for m in row.iter_mut() {
            *m /= total;
        }
    }
    let theta = (0..n_r)
        .map(|_| (0..n_c).map(|_| rng.gen_range(lo..1.0 - lo)).collect())
        .collect();
    (mass, theta)
}

pub fn binary_grid(theta: [[f64; 2]; 2]) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    (
        vec![vec![0.25; 2]; 2],
        theta.iter().map(|row| row.to_vec()).collect(),
    )
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-12)
}
