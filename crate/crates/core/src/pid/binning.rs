use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Equal-width binning of the interval `[lower, upper]`, flanked by two
/// unbounded overflow bins.
///
/// Index 0 collects everything below `lower`, index `n_interior + 1`
/// everything above `upper`. A value exactly at `upper` lands in the last
/// interior bin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BinningSpec {
    pub lower: f64,
    pub upper: f64,
    pub n_interior: usize,
}

/// Position of a value within a [`BinningSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinIndex(pub usize);

impl BinningSpec {
    pub fn new(lower: f64, upper: f64, n_interior: usize) -> Result<Self> {
        let spec = Self {
            lower,
            upper,
            n_interior,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lower.is_finite() && self.upper.is_finite())
            || self.lower >= self.upper
            || self.n_interior == 0
        {
            return Err(Error::InvalidBinning {
                lower: self.lower,
                upper: self.upper,
                n_interior: self.n_interior,
            });
        }
        Ok(())
    }

    /// Interior bins plus the two overflow bins.
    pub fn total_bins(&self) -> usize {
        self.n_interior + 2
    }

    pub fn width(&self) -> f64 {
        (self.upper - self.lower) / self.n_interior as f64
    }

    pub fn bin(&self, x: f64) -> Result<BinIndex> {
        if !x.is_finite() {
            return Err(Error::NonFinite(x));
        }
        Ok(self.bin_finite(x))
    }

    #[inline]
    pub(crate) fn bin_finite(&self, x: f64) -> BinIndex {
        if x < self.lower {
            BinIndex(0)
        } else if x > self.upper {
            BinIndex(self.n_interior + 1)
        } else {
            let k = ((x - self.lower) / self.width()).floor() as usize;
            BinIndex(k.min(self.n_interior - 1) + 1)
        }
    }

    pub fn center(&self, idx: BinIndex) -> f64 {
        let w = self.width();
        match idx.0 {
            0 => self.lower - 0.5 * w,
            i if i > self.n_interior => self.upper + 0.5 * w,
            i => self.lower + (i as f64 - 0.5) * w,
        }
    }

    pub fn contains(&self, idx: BinIndex) -> bool {
        idx.0 <= self.n_interior + 1
    }
}

/// Maps `x` to its bin under `spec`; non-finite input is an error.
pub fn bin_value(x: f64, spec: &BinningSpec) -> Result<BinIndex> {
    spec.bin(x)
}

pub fn bin_center(idx: BinIndex, spec: &BinningSpec) -> f64 {
    spec.center(idx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn memory_spec() -> BinningSpec {
        BinningSpec::new(-20.0, 20.0, 20).unwrap()
    }

    #[test]
    fn interior_value_lands_in_covering_bin() {
        let spec = memory_spec();
        assert_eq!(spec.width(), 2.0);
        let idx = bin_value(0.5, &spec).unwrap();
        // bin covering [0, 2): ten bins below zero plus the overflow bin
        assert_eq!(idx, BinIndex(11));
        assert_eq!(bin_center(idx, &spec), 1.0);
    }

    #[test]
    fn overflow_and_boundaries() {
        let spec = memory_spec();
        assert_eq!(spec.bin(-25.0).unwrap(), BinIndex(0));
        assert_eq!(spec.bin(-20.0).unwrap(), BinIndex(1));
        assert_eq!(spec.bin(20.0).unwrap(), BinIndex(20));
        assert_eq!(spec.bin(20.000001).unwrap(), BinIndex(21));
        assert_eq!(spec.bin(1e300).unwrap(), BinIndex(21));
        assert_eq!(spec.total_bins(), 22);
    }

    #[test]
    fn overflow_centers_sit_half_a_width_outside() {
        let spec = memory_spec();
        assert_eq!(spec.center(BinIndex(0)), -21.0);
        assert_eq!(spec.center(BinIndex(21)), 21.0);
    }

    #[test]
    fn non_finite_is_rejected() {
        let spec = memory_spec();
        assert!(spec.bin(f64::NAN).is_err());
        assert!(spec.bin(f64::INFINITY).is_err());
    }

    #[test]
    fn invalid_specs() {
        assert!(BinningSpec::new(1.0, 1.0, 4).is_err());
        assert!(BinningSpec::new(-1.0, 1.0, 0).is_err());
    }

    #[test]
    fn every_value_maps_inside_its_center_bin() {
        let spec = BinningSpec::new(-25.0, 25.0, 500).unwrap();
        for i in 1..=500 {
            let c = spec.center(BinIndex(i));
            assert_eq!(spec.bin(c).unwrap(), BinIndex(i));
        }
    }
}
