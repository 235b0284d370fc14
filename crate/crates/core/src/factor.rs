//! Ground-truth factor grids.
//!
//! A [`FactorSpace`] is the Cartesian grid of generative factors behind a
//! synthetic dataset. Coordinates are 0-indexed; linear indices use
//! row-major order (last factor fastest), matching the storage convention of
//! dSprites-style array files.

use crate::error::{Error, Result};
use crate::rng::Rng;
use rand::Rng as _;

/// Sizes of each generative factor; immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSpace {
    sizes: Vec<usize>,
    total: usize,
}

/// One coordinate vector in a [`FactorSpace`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FactorPos(pub Vec<usize>);

impl FactorPos {
    pub fn coords(&self) -> &[usize] {
        &self.0
    }
}

impl FactorSpace {
    pub fn new(sizes: &[usize]) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::InvalidParams("factor space needs K >= 1".into()));
        }
        if sizes.iter().any(|&f| f == 0) {
            return Err(Error::InvalidParams("factor sizes must be >= 1".into()));
        }
        let total = sizes.iter().try_fold(1usize, |acc, &f| acc.checked_mul(f));
        let total = total.ok_or_else(|| Error::InvalidParams("factor grid overflows usize".into()))?;
        Ok(Self {
            sizes: sizes.to_vec(),
            total,
        })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Number of factors (K).
    pub fn num_factors(&self) -> usize {
        self.sizes.len()
    }

    /// Total number of grid cells.
    pub fn total(&self) -> usize {
        self.total
    }

    pub fn validate_pos(&self, pos: &FactorPos) -> Result<()> {
        if pos.0.len() != self.sizes.len() {
            return Err(Error::DimensionMismatch {
                expected: self.sizes.len(),
                got: pos.0.len(),
            });
        }
        for (factor, (&c, &f)) in pos.0.iter().zip(&self.sizes).enumerate() {
            if c >= f {
                return Err(Error::InvalidPosition {
                    factor,
                    coord: c,
                    size: f,
                });
            }
        }
        Ok(())
    }

    /// Row-major ravel of a coordinate vector.
    pub fn pos_to_index(&self, pos: &FactorPos) -> Result<usize> {
        self.validate_pos(pos)?;
        let mut idx = 0usize;
        for (&c, &f) in pos.0.iter().zip(&self.sizes) {
            idx = idx * f + c;
        }
        Ok(idx)
    }

    /// Inverse of [`FactorSpace::pos_to_index`].
    pub fn index_to_pos(&self, idx: usize) -> Result<FactorPos> {
        if idx >= self.total {
            return Err(Error::IndexOutOfRange {
                idx,
                total: self.total,
            });
        }
        let mut coords = vec![0usize; self.sizes.len()];
        let mut rem = idx;
        for (c, &f) in coords.iter_mut().zip(&self.sizes).rev() {
            *c = rem % f;
            rem /= f;
        }
        Ok(FactorPos(coords))
    }

    /// The ordered set of coordinates along `factor` passing through
    /// `anchor`. Every member generates the identical traversal.
    pub fn traversal(&self, anchor: &FactorPos, factor: usize) -> Result<Vec<FactorPos>> {
        self.validate_pos(anchor)?;
        if factor >= self.sizes.len() {
            return Err(Error::FactorOutOfRange {
                factor,
                count: self.sizes.len(),
            });
        }
        let mut out = Vec::with_capacity(self.sizes[factor]);
        for v in 0..self.sizes[factor] {
            let mut coords = anchor.0.clone();
            coords[factor] = v;
            out.push(FactorPos(coords));
        }
        Ok(out)
    }

    /// Uniform draw over all grid cells.
    pub fn sample_pos(&self, rng: &mut Rng) -> FactorPos {
        let coords = self
            .sizes
            .iter()
            .map(|&f| if f == 1 { 0 } else { rng.gen_range(0..f) })
            .collect();
        FactorPos(coords)
    }
}
