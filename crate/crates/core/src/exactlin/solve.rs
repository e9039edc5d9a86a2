use super::linmap::{ensure_field, LinMap};
use rand::Rng;

use super::scalar::{FieldSpec, Scalar};
use crate::error::{Error, Result};

/// Outcome of solving `A·x = b` exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    Unique(Vec<Scalar>),
    Inconsistent,
    Many { particular: Vec<Scalar>, nullspace: Vec<Vec<Scalar>> },
}

impl LinearSolution {
    pub fn unique(self) -> Option<Vec<Scalar>> {
        match self {
            LinearSolution::Unique(x) => Some(x),
            _ => None,
        }
    }

    /// A random point of the solution set: the particular solution plus a
    /// random combination of the nullspace basis.
    pub fn sample<R: Rng + ?Sized>(&self, field: FieldSpec, rng: &mut R) -> Option<Vec<Scalar>> {
        match self {
            LinearSolution::Inconsistent => None,
            LinearSolution::Unique(x) => Some(x.clone()),
            LinearSolution::Many { particular, nullspace } => {
                let mut x = particular.clone();
                for v in nullspace {
                    let c = field.random_scalar(rng);
                    for (xi, vi) in x.iter_mut().zip(v) {
                        *xi = &*xi + &(&c * vi);
                    }
                }
                Some(x)
            }
        }
    }
}

/// In-place Gauss–Jordan elimination restricted to the first `pivot_cols`
/// columns. Returns the pivot column of each nonzero row, in order.
pub(crate) fn reduced_row_echelon(rows: &mut [Vec<Scalar>], pivot_cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = &*x - &(&f * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solves `system · x = rhs` by exact Gauss–Jordan elimination.
pub fn solve_linear(system: &LinMap, rhs: &[Scalar]) -> Result<LinearSolution> {
    let field = system.field();
    let (m, n) = (system.rows(), system.cols());
    if rhs.len() != m {
        return Err(Error::ShapeMismatch(format!(
            "right-hand side of length {} for a system with {m} rows",
            rhs.len()
        )));
    }
    for b in rhs {
        ensure_field(field, b.field())?;
    }
    let mut aug: Vec<Vec<Scalar>> = (0..m)
        .map(|r| {
            let mut row = system.row(r).to_vec();
            row.push(rhs[r].clone());
            row
        })
        .collect();
    let pivots = reduced_row_echelon(&mut aug, n);
    if aug[pivots.len()..].iter().any(|row| !row[n].is_zero()) {
        return Ok(LinearSolution::Inconsistent);
    }
    let mut particular = vec![field.zero(); n];
    for (row, &c) in pivots.iter().enumerate() {
        particular[c] = aug[row][n].clone();
    }
    if pivots.len() == n {
        return Ok(LinearSolution::Unique(particular));
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let nullspace = free
        .iter()
        .map(|&f| {
            let mut v = vec![field.zero(); n];
            v[f] = field.one();
            for (row, &c) in pivots.iter().enumerate() {
                v[c] = -&aug[row][f];
            }
            v
        })
        .collect();
    Ok(LinearSolution::Many { particular, nullspace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{FieldSpec, Shape};

    #[test]
    fn identity_system_is_unique() {
        let q = FieldSpec::Rationals;
        let id = LinMap::identity(q, Shape::new([3]));
        let b = vec![q.from_i64(1), q.from_i64(-2), q.from_i64(7)];
        assert_eq!(solve_linear(&id, &b).unwrap(), LinearSolution::Unique(b));
    }

    #[test]
    fn zero_system() {
        let q = FieldSpec::Rationals;
        let z = LinMap::zero(q, Shape::new([2]), Shape::new([2]));
        match solve_linear(&z, &[q.zero(), q.zero()]).unwrap() {
            LinearSolution::Many { particular, nullspace } => {
                assert!(particular.iter().all(Scalar::is_zero));
                assert_eq!(nullspace.len(), 2);
            }
            other => panic!("expected Many, got {other:?}"),
        }
        assert_eq!(
            solve_linear(&z, &[q.one(), q.zero()]).unwrap(),
            LinearSolution::Inconsistent
        );
    }

    #[test]
    fn underdetermined_over_f5() {
        let f = FieldSpec::Prime(5);
        // x + 2y = 3
        let a = LinMap::from_entries(f, Shape::new([2]), Shape::scalar(), vec![f.one(), f.from_i64(2)])
            .unwrap();
        let LinearSolution::Many { particular, nullspace } = solve_linear(&a, &[f.from_i64(3)]).unwrap()
        else {
            panic!("expected Many");
        };
        assert_eq!(a.apply(&particular).unwrap(), vec![f.from_i64(3)]);
        assert_eq!(a.apply(&nullspace[0]).unwrap(), vec![f.zero()]);
    }
}
