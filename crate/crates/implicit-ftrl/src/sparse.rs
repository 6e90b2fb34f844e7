//! Sparse vectors for per-round features, paired with dense `&[f64]` iterates.

use crate::error::{Error, Result};

/// Sparse vector stored as (index, value) pairs with strictly increasing indices.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseVector {
    entries: Vec<(usize, f64)>,
}

impl SparseVector {
    /// Builds a sparse vector; indices must be strictly increasing.
    pub fn new(entries: Vec<(usize, f64)>) -> Result<Self> {
        for pair in entries.windows(2) {
            if pair[1].0 <= pair[0].0 {
                return Err(Error::InvalidInput(format!(
                    "sparse indices must be strictly increasing, got {} after {}",
                    pair[1].0, pair[0].0
                )));
            }
        }
        Ok(Self { entries })
    }

    /// Unit basis vector e_index.
    pub fn unit(index: usize) -> Self {
        Self {
            entries: vec![(index, 1.0)],
        }
    }

    /// Dense slice to sparse, dropping exact zeros.
    pub fn from_dense(values: &[f64]) -> Self {
        Self {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| **v != 0.0)
                .map(|(i, v)| (i, *v))
                .collect(),
        }
    }

    pub fn entries(&self) -> &[(usize, f64)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|(_, v)| *v == 0.0)
    }

    /// Largest index present, if any.
    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    /// Fails when the support does not fit inside a dense vector of length `len`.
    pub fn check_fits(&self, len: usize) -> Result<()> {
        match self.max_index() {
            Some(index) if index >= len => Err(Error::DimensionMismatch { index, len }),
            _ => Ok(()),
        }
    }

    /// ⟨self, dense⟩. Panics if the support exceeds `dense`; call
    /// [`check_fits`](Self::check_fits) first on untrusted input.
    pub fn dot(&self, dense: &[f64]) -> f64 {
        self.entries.iter().map(|(i, v)| v * dense[*i]).sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.entries.iter().map(|(_, v)| v * v).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// dense += scale * self
    pub fn add_scaled_into(&self, scale: f64, dense: &mut [f64]) {
        for (i, v) in &self.entries {
            dense[*i] += scale * v;
        }
    }

    pub fn to_dense(&self, dim: usize) -> Vec<f64> {
        let mut out = vec![0.0; dim];
        self.add_scaled_into(1.0, &mut out);
        out
    }

    /// Copy with every value multiplied by `scale`.
    pub fn scaled(&self, scale: f64) -> Self {
        Self {
            entries: self.entries.iter().map(|(i, v)| (*i, v * scale)).collect(),
        }
    }
}

/// ‖a − b‖² for equal-length dense slices.
pub fn dense_dist_sq(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// ‖a‖² for a dense slice.
pub fn dense_norm_sq(a: &[f64]) -> f64 {
    a.iter().map(|x| x * x).sum()
}
