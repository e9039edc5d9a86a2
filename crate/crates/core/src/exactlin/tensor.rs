use std::collections::BTreeMap;

use super::linmap::{ensure_field, LinMap};
use super::scalar::{FieldSpec, Scalar};
use super::shape::Shape;
use crate::error::{Error, Result};

/// A sparse element of a tensor product of spaces, keyed by basis multi-index.
///
/// Applying a [`LinMap`] at a leg position replaces that run of legs by the
/// map's codomain legs, which is how Sweedler-notation formulas are evaluated
/// one basis element at a time without building large Kronecker products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    field: FieldSpec,
    shape: Shape,
    terms: BTreeMap<Vec<usize>, Scalar>,
}

impl Tensor {
    pub fn zero(field: FieldSpec, shape: Shape) -> Tensor {
        Tensor { field, shape, terms: BTreeMap::new() }
    }

    pub fn basis(field: FieldSpec, shape: Shape, legs: &[usize]) -> Tensor {
        let mut t = Tensor::zero(field, shape);
        t.add_term(legs.to_vec(), field.one());
        t
    }

    /// The scalar `s` as an element of the empty tensor product.
    pub fn scalar(s: Scalar) -> Tensor {
        let mut t = Tensor::zero(s.field(), Shape::scalar());
        t.add_term(Vec::new(), s);
        t
    }

    pub fn from_dense(field: FieldSpec, shape: Shape, v: &[Scalar]) -> Result<Tensor> {
        if v.len() != shape.total() {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} for shape {}",
                v.len(),
                shape
            )));
        }
        let mut t = Tensor::zero(field, shape);
        for (i, x) in v.iter().enumerate() {
            ensure_field(field, x.field())?;
            if !x.is_zero() {
                let legs = t.shape.multi_index(i);
                t.terms.insert(legs, x.clone());
            }
        }
        Ok(t)
    }

    pub fn to_dense(&self) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.shape.total()];
        for (legs, v) in &self.terms {
            out[self.shape.flat_index(legs)] = v.clone();
        }
        out
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, legs: &[usize]) -> Scalar {
        self.terms.get(legs).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c · e_legs`, dropping the entry if it cancels.
    pub fn add_term(&mut self, legs: Vec<usize>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(legs.len(), self.shape.len());
        match self.terms.get_mut(&legs) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.terms.remove(&legs);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(legs, c);
            }
        }
    }

    /// Applies `map` to the legs starting at position `at`.
    pub fn apply(&self, map: &LinMap, at: usize) -> Result<Tensor> {
        ensure_field(self.field, map.field())?;
        let k = map.domain().len();
        let legs = self.shape.factors();
        if at + k > legs.len() || &legs[at..at + k] != map.domain().factors() {
            return Err(Error::ShapeMismatch(format!(
                "cannot apply {} -> {} at leg {at} of {}",
                map.domain(),
                map.codomain(),
                self.shape
            )));
        }
        let mut shape = legs[..at].to_vec();
        shape.extend_from_slice(map.codomain().factors());
        shape.extend_from_slice(&legs[at + k..]);
        let mut out = Tensor::zero(self.field, Shape::new(shape));
        for (idx, c) in &self.terms {
            let col = map.domain().flat_index(&idx[at..at + k]);
            for (row, a) in map.sparse_column(col) {
                let mut new = idx[..at].to_vec();
                new.extend(map.codomain().multi_index(*row));
                new.extend_from_slice(&idx[at + k..]);
                out.add_term(new, a * c);
            }
        }
        Ok(out)
    }

    /// Reorders legs: output leg `i` is input leg `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Tensor {
        let mut out = Tensor::zero(self.field, self.shape.permuted(perm));
        for (idx, c) in &self.terms {
            out.terms.insert(perm.iter().map(|&p| idx[p]).collect(), c.clone());
        }
        out
    }

    /// Outer product; `self`'s legs come first.
    pub fn tensor(&self, other: &Tensor) -> Tensor {
        let mut out = Tensor::zero(self.field, self.shape.concat(&other.shape));
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                let mut idx = i.clone();
                idx.extend_from_slice(j);
                out.add_term(idx, a * b);
            }
        }
        out
    }

    pub fn add(&self, other: &Tensor) -> Result<Tensor> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (idx, c) in &other.terms {
            out.add_term(idx.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Tensor) -> Result<Tensor> {
        self.add(&other.scale(&-self.field.one()))
    }

    pub fn scale(&self, s: &Scalar) -> Tensor {
        let mut out = Tensor::zero(self.field, self.shape.clone());
        if s.is_zero() {
            return out;
        }
        for (idx, c) in &self.terms {
            out.terms.insert(idx.clone(), c * s);
        }
        out
    }

    /// Reinterprets the legs with a different factorization of equal total.
    pub fn reshape(&self, shape: Shape) -> Result<Tensor> {
        if shape.total() != self.shape.total() {
            return Err(Error::ShapeMismatch(format!(
                "cannot reshape {} as {}",
                self.shape, shape
            )));
        }
        let mut out = Tensor::zero(self.field, shape);
        for (idx, c) in &self.terms {
            let flat = self.shape.flat_index(idx);
            out.terms.insert(out.shape.multi_index(flat), c.clone());
        }
        Ok(out)
    }

    fn check_compatible(&self, other: &Tensor) -> Result<()> {
        ensure_field(self.field, other.field)?;
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch(format!("{} vs {}", self.shape, other.shape)));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn apply_in_the_middle() {
        let f = LinMap::from_fn(q(), Shape::new([2]), Shape::new([3]), |r, c| {
            q().from_i64((r + 3 * c) as i64)
        });
        let t = Tensor::basis(q(), Shape::new([4, 2, 5]), &[3, 1, 2]);
        let out = t.apply(&f, 1).unwrap();
        assert_eq!(out.shape(), &Shape::new([4, 3, 5]));
        for r in 0..3 {
            assert_eq!(out.coefficient(&[3, r, 2]), q().from_i64((r + 3) as i64));
        }
    }

    #[test]
    fn insert_and_contract_legs() {
        let unit = LinMap::from_vector(q(), Shape::new([2]), &[q().one(), q().zero()]).unwrap();
        let t = Tensor::basis(q(), Shape::new([3]), &[1]);
        let ins = t.apply(&unit, 1).unwrap();
        assert_eq!(ins, Tensor::basis(q(), Shape::new([3, 2]), &[1, 0]));
        let eps = LinMap::from_functional(q(), Shape::new([2]), &[q().from_i64(5), q().one()])
            .unwrap();
        let back = ins.apply(&eps, 1).unwrap();
        assert_eq!(back, t.scale(&q().from_i64(5)));
    }

    #[test]
    fn permute_and_cancel() {
        let mut t = Tensor::basis(q(), Shape::new([2, 3]), &[1, 2]);
        let p = t.permute(&[1, 0]);
        assert_eq!(p, Tensor::basis(q(), Shape::new([3, 2]), &[2, 1]));
        t.add_term(vec![1, 2], -q().one());
        assert!(t.is_zero());
    }

    #[test]
    fn dense_roundtrip() {
        let v: Vec<Scalar> = (0..6).map(|i| q().from_i64(i % 3)).collect();
        let t = Tensor::from_dense(q(), Shape::new([2, 3]), &v).unwrap();
        assert_eq!(t.to_dense(), v);
        assert_eq!(t.coefficient(&[1, 2]), q().from_i64(2));
    }
}
