use std::fmt;

use crate::error::{Error, Result};

/// Dimensions of the tensor legs of a space. The empty shape is the ground
/// field. Multi-indices flatten left-major: the leftmost leg is the most
/// significant digit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape(Vec<usize>);

impl Shape {
    /// Panics on a zero-dimensional leg; use [`Shape::try_new`] for input data.
    pub fn new(factors: impl Into<Vec<usize>>) -> Shape {
        Shape::try_new(factors).expect("shape legs must be positive")
    }

    pub fn try_new(factors: impl Into<Vec<usize>>) -> Result<Shape> {
        let factors = factors.into();
        if factors.contains(&0) {
            return Err(Error::ShapeMismatch(format!(
                "zero-dimensional leg in {factors:?}"
            )));
        }
        Ok(Shape(factors))
    }

    /// The ground field, dimension 1.
    pub fn scalar() -> Shape {
        Shape(Vec::new())
    }

    pub fn factors(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().product()
    }

    pub fn concat(&self, other: &Shape) -> Shape {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Shape(v)
    }

    pub fn flat_index(&self, legs: &[usize]) -> usize {
        debug_assert_eq!(legs.len(), self.0.len());
        legs.iter()
            .zip(&self.0)
            .fold(0, |acc, (&i, &d)| acc * d + i)
    }

    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.0.len()];
        for (slot, &d) in out.iter_mut().zip(&self.0).rev() {
            *slot = flat % d;
            flat /= d;
        }
        out
    }

    /// All multi-indices in flat order.
    pub fn indices(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.total()).map(move |i| self.multi_index(i))
    }

    pub fn permuted(&self, perm: &[usize]) -> Shape {
        Shape(perm.iter().map(|&p| self.0[p]).collect())
    }
}

impl From<&[usize]> for Shape {
    fn from(v: &[usize]) -> Shape {
        Shape::new(v.to_vec())
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}
