use std::fmt;
use std::sync::OnceLock;

use super::scalar::{FieldSpec, Scalar};
use super::shape::Shape;
use super::solve::reduced_row_echelon;
use super::tensor::Tensor;
use crate::error::{Error, Result};

/// A linear map between tensor products of spaces, stored as a dense
/// `codomain.total() × domain.total()` matrix in row-major order.
pub struct LinMap {
    field: FieldSpec,
    domain: Shape,
    codomain: Shape,
    entries: Vec<Scalar>,
    columns: OnceLock<Vec<Vec<(usize, Scalar)>>>,
}

impl Clone for LinMap {
    fn clone(&self) -> Self {
        LinMap {
            field: self.field,
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            entries: self.entries.clone(),
            columns: self.columns.clone(),
        }
    }
}

impl PartialEq for LinMap {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.domain == other.domain
            && self.codomain == other.codomain
            && self.entries == other.entries
    }
}

impl Eq for LinMap {}

impl fmt::Debug for LinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LinMap {} -> {} over {}", self.domain, self.codomain, self.field)?;
        for r in 0..self.rows() {
            let row: Vec<String> = (0..self.cols()).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

pub(crate) fn ensure_field(a: FieldSpec, b: FieldSpec) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::FieldMismatch(a, b))
    }
}

impl LinMap {
    pub fn from_entries(
        field: FieldSpec,
        domain: Shape,
        codomain: Shape,
        entries: Vec<Scalar>,
    ) -> Result<LinMap> {
        let expected = domain.total() * codomain.total();
        if entries.len() != expected {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {} -> {} map (need {expected})",
                entries.len(),
                domain,
                codomain
            )));
        }
        if let Some(bad) = entries.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch(field, bad.field()));
        }
        Ok(LinMap { field, domain, codomain, entries, columns: OnceLock::new() })
    }

    pub fn zero(field: FieldSpec, domain: Shape, codomain: Shape) -> LinMap {
        let n = domain.total() * codomain.total();
        LinMap {
            field,
            domain,
            codomain,
            entries: vec![field.zero(); n],
            columns: OnceLock::new(),
        }
    }

    pub fn identity(field: FieldSpec, shape: Shape) -> LinMap {
        LinMap::from_fn(field, shape.clone(), shape, |r, c| {
            if r == c {
                field.one()
            } else {
                field.zero()
            }
        })
    }

    /// Builds the map entry by entry from `(row, col)`.
    pub fn from_fn(
        field: FieldSpec,
        domain: Shape,
        codomain: Shape,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> LinMap {
        let (rows, cols) = (codomain.total(), domain.total());
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        LinMap { field, domain, codomain, entries, columns: OnceLock::new() }
    }

    /// Builds the map from the image of every basis multi-index of the domain.
    /// This is how Sweedler-notation formulas are turned into matrices.
    pub fn from_basis_images(
        field: FieldSpec,
        domain: Shape,
        codomain: Shape,
        mut image: impl FnMut(&[usize]) -> Result<Tensor>,
    ) -> Result<LinMap> {
        let (rows, cols) = (codomain.total(), domain.total());
        let mut entries = vec![field.zero(); rows * cols];
        for c in 0..cols {
            let t = image(&domain.multi_index(c))?;
            ensure_field(field, t.field())?;
            if t.shape().total() != rows {
                return Err(Error::ShapeMismatch(format!(
                    "basis image has shape {}, expected {}",
                    t.shape(),
                    codomain
                )));
            }
            for (legs, v) in t.terms() {
                entries[t.shape().flat_index(legs) * cols + c] = v.clone();
            }
        }
        Ok(LinMap { field, domain, codomain, entries, columns: OnceLock::new() })
    }

    /// The map `k -> shape` sending 1 to `v` (a distinguished element).
    pub fn from_vector(field: FieldSpec, shape: Shape, v: &[Scalar]) -> Result<LinMap> {
        LinMap::from_entries(field, Shape::scalar(), shape, v.to_vec())
    }

    /// The functional `shape -> k` with coefficient row `v`.
    pub fn from_functional(field: FieldSpec, shape: Shape, v: &[Scalar]) -> Result<LinMap> {
        LinMap::from_entries(field, shape, Shape::scalar(), v.to_vec())
    }

    /// The flip `x ⊗ y ↦ y ⊗ x` from shape `[m, n]` to `[n, m]`.
    pub fn swap(field: FieldSpec, m: usize, n: usize) -> LinMap {
        LinMap::permutation(field, &Shape::new([m, n]), &[1, 0])
    }

    /// Leg permutation: output leg `i` is input leg `perm[i]`.
    pub fn permutation(field: FieldSpec, shape: &Shape, perm: &[usize]) -> LinMap {
        let codomain = shape.permuted(perm);
        let mut entries = vec![field.zero(); shape.total() * shape.total()];
        let cols = shape.total();
        for c in 0..cols {
            let legs = shape.multi_index(c);
            let out: Vec<usize> = perm.iter().map(|&p| legs[p]).collect();
            entries[codomain.flat_index(&out) * cols + c] = field.one();
        }
        LinMap { field, domain: shape.clone(), codomain, entries, columns: OnceLock::new() }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn domain(&self) -> &Shape {
        &self.domain
    }

    pub fn codomain(&self) -> &Shape {
        &self.codomain
    }

    pub fn rows(&self) -> usize {
        self.codomain.total()
    }

    pub fn cols(&self) -> usize {
        self.domain.total()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> &Scalar {
        &self.entries[row * self.cols() + col]
    }

    pub fn column(&self, col: usize) -> Vec<Scalar> {
        (0..self.rows()).map(|r| self.get(r, col).clone()).collect()
    }

    pub fn row(&self, row: usize) -> &[Scalar] {
        let c = self.cols();
        &self.entries[row * c..(row + 1) * c]
    }

    /// Nonzero `(row, value)` pairs of a column; cached on first use.
    pub fn sparse_column(&self, col: usize) -> &[(usize, Scalar)] {
        let cols = self.columns.get_or_init(|| {
            (0..self.cols())
                .map(|c| {
                    (0..self.rows())
                        .filter_map(|r| {
                            let v = self.get(r, c);
                            (!v.is_zero()).then(|| (r, v.clone()))
                        })
                        .collect()
                })
                .collect()
        });
        &cols[col]
    }

    /// Image of a basis multi-index as a sparse tensor.
    pub fn image_of(&self, legs: &[usize]) -> Tensor {
        let col = self.domain.flat_index(legs);
        let mut t = Tensor::zero(self.field, self.codomain.clone());
        for (r, v) in self.sparse_column(col) {
            t.add_term(self.codomain.multi_index(*r), v.clone());
        }
        t
    }

    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols() {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} applied to map with domain {}",
                v.len(),
                self.domain
            )));
        }
        let mut out = vec![self.field.zero(); self.rows()];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            ensure_field(self.field, x.field())?;
            for (r, a) in self.sparse_column(c) {
                out[*r] = &out[*r] + &(a * x);
            }
        }
        Ok(out)
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &LinMap) -> Result<LinMap> {
        ensure_field(self.field, g.field)?;
        if g.rows() != self.cols() {
            return Err(Error::ShapeMismatch(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.domain, self.codomain, g.domain, g.codomain
            )));
        }
        let (rows, cols) = (self.rows(), g.cols());
        let mut entries = vec![self.field.zero(); rows * cols];
        for c in 0..cols {
            for (k, b) in g.sparse_column(c) {
                for (r, a) in self.sparse_column(*k) {
                    let e = &mut entries[r * cols + c];
                    *e = &*e + &(a * b);
                }
            }
        }
        Ok(LinMap {
            field: self.field,
            domain: g.domain.clone(),
            codomain: self.codomain.clone(),
            entries,
            columns: OnceLock::new(),
        })
    }

    /// Kronecker product `self ⊗ g`; `self`'s legs come first.
    pub fn tensor(&self, g: &LinMap) -> Result<LinMap> {
        ensure_field(self.field, g.field)?;
        let domain = self.domain.concat(&g.domain);
        let codomain = self.codomain.concat(&g.codomain);
        let (gr, gc) = (g.rows(), g.cols());
        let cols = domain.total();
        let mut entries = vec![self.field.zero(); codomain.total() * cols];
        for c1 in 0..self.cols() {
            for (r1, a) in self.sparse_column(c1) {
                for c2 in 0..gc {
                    for (r2, b) in g.sparse_column(c2) {
                        entries[(r1 * gr + r2) * cols + c1 * gc + c2] = a * b;
                    }
                }
            }
        }
        Ok(LinMap { field: self.field, domain, codomain, entries, columns: OnceLock::new() })
    }

    pub fn transpose(&self) -> LinMap {
        LinMap::from_fn(self.field, self.codomain.clone(), self.domain.clone(), |r, c| {
            self.get(c, r).clone()
        })
    }

    /// Same matrix with a different leg structure of equal totals.
    pub fn reshape(&self, domain: Shape, codomain: Shape) -> Result<LinMap> {
        if domain.total() != self.cols() || codomain.total() != self.rows() {
            return Err(Error::ShapeMismatch(format!(
                "cannot reshape {} -> {} as {} -> {}",
                self.domain, self.codomain, domain, codomain
            )));
        }
        Ok(LinMap {
            field: self.field,
            domain,
            codomain,
            entries: self.entries.clone(),
            columns: self.columns.clone(),
        })
    }

    pub fn add(&self, other: &LinMap) -> Result<LinMap> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &LinMap) -> Result<LinMap> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &LinMap, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<LinMap> {
        ensure_field(self.field, other.field)?;
        if self.rows() != other.rows() || self.cols() != other.cols() {
            return Err(Error::ShapeMismatch(format!(
                "{} -> {} vs {} -> {}",
                self.domain, self.codomain, other.domain, other.codomain
            )));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect();
        Ok(LinMap {
            field: self.field,
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            entries,
            columns: OnceLock::new(),
        })
    }

    pub fn scale(&self, s: &Scalar) -> LinMap {
        LinMap {
            field: self.field,
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            entries: self.entries.iter().map(|e| e * s).collect(),
            columns: OnceLock::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows() == self.cols()
            && (0..self.rows()).all(|r| {
                (0..self.cols()).all(|c| {
                    let v = self.get(r, c);
                    if r == c {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    /// Same matrix entries, ignoring leg structure.
    pub fn same_matrix(&self, other: &LinMap) -> bool {
        self.field == other.field
            && self.rows() == other.rows()
            && self.cols() == other.cols()
            && self.entries == other.entries
    }

    /// Exact inverse of a square matrix, with domain and codomain exchanged.
    pub fn inverse(&self) -> Option<LinMap> {
        let n = self.rows();
        if n != self.cols() {
            return None;
        }
        // Row-reduce [A | I].
        let mut aug: Vec<Vec<Scalar>> = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend((0..n).map(|c| if c == r { self.field.one() } else { self.field.zero() }));
                row
            })
            .collect();
        let pivots = reduced_row_echelon(&mut aug, n);
        if pivots.len() != n {
            return None;
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in &aug {
            entries.extend_from_slice(&row[n..]);
        }
        Some(LinMap {
            field: self.field,
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            entries,
            columns: OnceLock::new(),
        })
    }
}
