use crate::error::GeoError;

/// A stacked vector in R^(n*d): n agent blocks of dimension d, stored flat
/// and row-major (agent i owns entries [i*d, (i+1)*d)).
#[derive(Debug, Clone, PartialEq)]
pub struct BlockVector {
    data: Vec<f64>,
    n: usize,
    d: usize,
}

impl BlockVector {
    pub fn zeros(n: usize, d: usize) -> Self {
        BlockVector {
            data: vec![0.0; n * d],
            n,
            d,
        }
    }

    pub fn from_flat(data: Vec<f64>, n: usize, d: usize) -> Result<Self, GeoError> {
        if data.len() != n * d {
            return Err(GeoError::DimensionMismatch {
                what: "block vector data",
                expected: n * d,
                actual: data.len(),
            });
        }
        Ok(BlockVector { data, n, d })
    }

    pub fn num_blocks(&self) -> usize {
        self.n
    }

    pub fn block_dim(&self) -> usize {
        self.d
    }

    pub fn block(&self, i: usize) -> &[f64] {
        &self.data[i * self.d..(i + 1) * self.d]
    }

    pub fn block_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.d..(i + 1) * self.d]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }
}

/// Borrow block i of a flat n*d vector.
#[inline]
pub fn block_of(flat: &[f64], i: usize, d: usize) -> &[f64] {
    &flat[i * d..(i + 1) * d]
}

/// Borrow block i of a flat n*d vector, mutably.
#[inline]
pub fn block_of_mut(flat: &mut [f64], i: usize, d: usize) -> &mut [f64] {
    &mut flat[i * d..(i + 1) * d]
}
