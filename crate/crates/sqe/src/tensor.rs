//! Dense multi-index arrays of expressions with declared index variance.

use serde::Serialize;

use crate::expr::{nsum, Expr, ExprError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variance {
    Up,
    Down,
}

/// Dense tensor of expressions on an n-dimensional chart. Rank 0 (a scalar)
/// is a single component.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorField {
    dim: usize,
    variance: Vec<Variance>,
    components: Vec<Expr>,
}

impl TensorField {
    pub fn zeros(dim: usize, variance: Vec<Variance>) -> TensorField {
        let len = dim.pow(variance.len() as u32);
        TensorField {
            dim,
            variance,
            components: vec![Expr::zero(); len],
        }
    }

    pub fn from_fn<F>(dim: usize, variance: Vec<Variance>, mut f: F) -> Result<TensorField, ExprError>
    where
        F: FnMut(&[usize]) -> Result<Expr, ExprError>,
    {
        let rank = variance.len();
        let len = dim.pow(rank as u32);
        let mut components = Vec::with_capacity(len);
        let mut idx = vec![0usize; rank];
        for flat in 0..len {
            components.push(f(&idx)?);
            Self::advance(&mut idx, dim);
            let _ = flat;
        }
        Ok(TensorField {
            dim,
            variance,
            components,
        })
    }

    fn advance(idx: &mut [usize], dim: usize) {
        for slot in (0..idx.len()).rev() {
            idx[slot] += 1;
            if idx[slot] < dim {
                return;
            }
            idx[slot] = 0;
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.variance.len()
    }

    pub fn variance(&self) -> &[Variance] {
        &self.variance
    }

    fn flat(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.rank());
        let mut f = 0;
        for &i in idx {
            debug_assert!(i < self.dim);
            f = f * self.dim + i;
        }
        f
    }

    pub fn get(&self, idx: &[usize]) -> &Expr {
        &self.components[self.flat(idx)]
    }

    pub fn set(&mut self, idx: &[usize], e: Expr) {
        let f = self.flat(idx);
        self.components[f] = e;
    }

    pub fn components(&self) -> &[Expr] {
        &self.components
    }

    /// Iterate over all multi-indices in row-major order.
    pub fn indices(&self) -> IndexIter {
        IndexIter {
            dim: self.dim,
            rank: self.rank(),
            next: Some(vec![0; self.rank()]),
        }
    }

    pub fn is_structurally_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero_const())
    }

    pub fn map<F>(&self, mut f: F) -> Result<TensorField, ExprError>
    where
        F: FnMut(&Expr) -> Result<Expr, ExprError>,
    {
        let mut components = Vec::with_capacity(self.components.len());
        for c in &self.components {
            components.push(f(c)?);
        }
        Ok(TensorField {
            dim: self.dim,
            variance: self.variance.clone(),
            components,
        })
    }

    pub fn sub(&self, other: &TensorField) -> Result<TensorField, ExprError> {
        assert_eq!(self.dim, other.dim);
        assert_eq!(self.variance, other.variance);
        let mut components = Vec::with_capacity(self.components.len());
        for (a, b) in self.components.iter().zip(&other.components) {
            components.push(nsum([a.clone(), Expr::neg(b.clone())])?);
        }
        Ok(TensorField {
            dim: self.dim,
            variance: self.variance.clone(),
            components,
        })
    }

    pub fn add(&self, other: &TensorField) -> Result<TensorField, ExprError> {
        assert_eq!(self.dim, other.dim);
        assert_eq!(self.variance, other.variance);
        let mut components = Vec::with_capacity(self.components.len());
        for (a, b) in self.components.iter().zip(&other.components) {
            components.push(nsum([a.clone(), b.clone()])?);
        }
        Ok(TensorField {
            dim: self.dim,
            variance: self.variance.clone(),
            components,
        })
    }
}

pub struct IndexIter {
    dim: usize,
    rank: usize,
    next: Option<Vec<usize>>,
}

impl Iterator for IndexIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut rolled = true;
        for slot in (0..self.rank).rev() {
            succ[slot] += 1;
            if succ[slot] < self.dim {
                rolled = false;
                break;
            }
            succ[slot] = 0;
        }
        if self.rank == 0 {
            rolled = true;
        }
        if !rolled {
            self.next = Some(succ);
        }
        Some(current)
    }
}
