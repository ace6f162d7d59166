use serde::{Deserialize, Serialize};

/// Exponent of the soft saturation used by [`ActivationKind::SaturatingSum`].
pub const SATURATION_EXPONENT: i32 = 8;

#[inline]
pub fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

/// How the integrated inputs `(r, c)` combine before the output sigmoid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ActivationKind {
    /// `A(r, c) = r (0.5 + σ(2rc))`: the receptive input drives, the context
    /// only modulates. `A(r, 0) = r`.
    ModulatedContext,
    /// `A(r, c) = s(r) + s(c)` with `s` a sign-preserving soft saturation at
    /// `±scale`.
    SaturatingSum { scale: f64 },
}

/// `s(x) = x / (1 + |x/scale|^8)^(1/8)` and its derivative.
#[inline]
pub fn soft_saturate(x: f64, scale: f64) -> (f64, f64) {
    let p = SATURATION_EXPONENT;
    let inv_p = 1.0 / p as f64;
    let ax = x.abs();
    if ax <= scale {
        let u = (ax / scale).powi(p);
        let base = 1.0 + u;
        let s = x * base.powf(-inv_p);
        let ds = base.powf(-inv_p - 1.0);
        (s, ds)
    } else {
        // rewrite in terms of scale/|x| so huge inputs cannot overflow
        let v = (scale / ax).powi(p);
        let base = 1.0 + v;
        let s = x.signum() * scale * base.powf(-inv_p);
        // (1 + u)^(-1/p - 1) with u = 1/v
        let ds = v.powf(1.0 + inv_p) * base.powf(-inv_p - 1.0);
        (s, ds)
    }
}

impl ActivationKind {
    pub fn value(&self, r: f64, c: f64) -> f64 {
        match *self {
            ActivationKind::ModulatedContext => r * (0.5 + sigmoid(2.0 * r * c)),
            ActivationKind::SaturatingSum { scale } => soft_saturate(r, scale).0 + soft_saturate(c, scale).0,
        }
    }

    /// `(A, ∂A/∂r, ∂A/∂c)`.
    pub fn partials(&self, r: f64, c: f64) -> (f64, f64, f64) {
        match *self {
            ActivationKind::ModulatedContext => {
                let s = sigmoid(2.0 * r * c);
                let ds = s * (1.0 - s);
                (r * (0.5 + s), 0.5 + s + 2.0 * r * c * ds, 2.0 * r * r * ds)
            }
            ActivationKind::SaturatingSum { scale } => {
                let (sr, dr) = soft_saturate(r, scale);
                let (sc, dc) = soft_saturate(c, scale);
                (sr + sc, dr, dc)
            }
        }
    }

    /// Firing probability `θ(r, c) = σ(A(r, c))`.
    pub fn theta(&self, r: f64, c: f64) -> f64 {
        sigmoid(self.value(r, c))
    }
}

pub fn activation_partials(kind: &ActivationKind, r: f64, c: f64) -> (f64, f64, f64) {
    kind.partials(r, c)
}
