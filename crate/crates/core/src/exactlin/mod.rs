//! Exact scalars and finite-dimensional multilinear algebra.
//!
//! Every space is a tensor product of legs described by a [`Shape`]; basis
//! multi-indices flatten left-major, so `e_i ⊗ e_j` in `[m, n]` sits at
//! `i·n + j`.

mod linmap;
mod scalar;
mod shape;
mod solve;
mod tensor;

pub use linmap::LinMap;
pub use scalar::{FieldSpec, Scalar};
pub use shape::Shape;
pub use solve::{solve_linear, LinearSolution};
pub use tensor::Tensor;

/// `f ∘ g`.
pub fn compose(f: &LinMap, g: &LinMap) -> crate::Result<LinMap> {
    f.compose(g)
}

/// `f ⊗ g` with `f`'s legs first.
pub fn tensor(f: &LinMap, g: &LinMap) -> crate::Result<LinMap> {
    f.tensor(g)
}

/// The flip `[m, n] -> [n, m]`.
pub fn swap(field: FieldSpec, m: usize, n: usize) -> LinMap {
    LinMap::swap(field, m, n)
}
