//! Horizontal bars on an 8×8 grid.

use rand::Rng;

use crate::network::Stimulus;

pub const N_BARS: usize = 8;
pub const BAR_WIDTH: usize = 8;
pub const N_PIXELS: usize = N_BARS * BAR_WIDTH;
pub const P_BAR: f64 = 0.5;

#[derive(Debug, Clone, PartialEq)]
pub struct BarsSample {
    pub pixels: Vec<f64>,
    pub bar_mask: [bool; N_BARS],
}

impl BarsSample {
    /// Bit `i` set iff bar `i` is on.
    pub fn pattern_id(&self) -> u32 {
        self.bar_mask.iter().enumerate().fold(0, |id, (i, &on)| if on { id | (1 << i) } else { id })
    }
}

/// Row `i` is all `+1` when bit `i` of `id` is set, else all `-1`.
pub fn render_bars(id: u32) -> Vec<f64> {
    (0..N_PIXELS)
        .map(|p| if (id >> (p / BAR_WIDTH)) & 1 == 1 { 1.0 } else { -1.0 })
        .collect()
}

pub fn sample_bars<R: Rng + ?Sized>(rng: &mut R) -> BarsSample {
    let mut bar_mask = [false; N_BARS];
    for b in &mut bar_mask {
        *b = rng.gen_bool(P_BAR);
    }
    let id = bar_mask.iter().enumerate().fold(0u32, |id, (i, &on)| if on { id | (1 << i) } else { id });
    BarsSample {
        pixels: render_bars(id),
        bar_mask,
    }
}

pub fn generate_bars<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<BarsSample> {
    (0..n).map(|_| sample_bars(rng)).collect()
}

pub fn bars_stimulus<R: Rng + ?Sized>(rng: &mut R) -> Stimulus {
    Stimulus::new(sample_bars(rng).pixels)
}
