//! Small dense vector kernels used on the hot paths.

/// A logical vector stored as two contiguous pieces.
///
/// Recurrent neurons read every other neuron's previous output; splitting the
/// shared state around the neuron's own slot avoids copying it per neuron.
#[derive(Debug, Clone, Copy)]
pub struct Split<'a> {
    pub head: &'a [f64],
    pub tail: &'a [f64],
}

impl<'a> Split<'a> {
    pub fn whole(v: &'a [f64]) -> Self {
        Self { head: v, tail: &[] }
    }

    /// `v` with element `skip` removed.
    pub fn without(v: &'a [f64], skip: usize) -> Self {
        Self {
            head: &v[..skip],
            tail: &v[skip + 1..],
        }
    }

    pub fn len(&self) -> usize {
        self.head.len() + self.tail.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = &'a f64> + 'a {
        self.head.iter().chain(self.tail.iter())
    }

    pub fn to_vec(&self) -> Vec<f64> {
        self.iter().copied().collect()
    }

    pub fn dot(&self, w: &[f64]) -> f64 {
        debug_assert_eq!(w.len(), self.len());
        let (wh, wt) = w.split_at(self.head.len());
        dot(wh, self.head) + dot(wt, self.tail)
    }

    /// `y += alpha * self`
    pub fn axpy_into(&self, alpha: f64, y: &mut [f64]) {
        let (yh, yt) = y.split_at_mut(self.head.len());
        axpy(alpha, self.head, yh);
        axpy(alpha, self.tail, yt);
    }
}

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = [0.0f64; 8];
    let ca = a.chunks_exact(8);
    let cb = b.chunks_exact(8);
    let (ra, rb) = (ca.remainder(), cb.remainder());
    for (x, y) in ca.zip(cb) {
        for k in 0..8 {
            acc[k] += x[k] * y[k];
        }
    }
    let mut s = (acc[0] + acc[4]) + (acc[1] + acc[5]) + (acc[2] + acc[6]) + (acc[3] + acc[7]);
    for (x, y) in ra.iter().zip(rb) {
        s += x * y;
    }
    s
}

/// `y += alpha * x`
#[inline]
pub fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    debug_assert_eq!(x.len(), y.len());
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}
