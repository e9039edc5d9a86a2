//! Structure constants recomputed with plain index loops and compared against
//! the tensor-evaluator implementations.

use crossprod::algstruct::HopfData;
use crossprod::catalog::{drinfeld_double, group_algebra, majid_map, qt_structure_z2, sweedler_h4};
use crossprod::exactlin::{FieldSpec, Scalar};

const Q: FieldSpec = FieldSpec::Rationals;

fn f5() -> FieldSpec {
    FieldSpec::prime(5).unwrap()
}

struct Constants {
    n: usize,
    f: FieldSpec,
    h: HopfData,
    s_inv: Vec<Vec<Scalar>>,
}

impl Constants {
    fn new(h: &HopfData) -> Constants {
        let n = h.dim();
        let s = h.antipode_inverse().unwrap();
        let s_inv = (0..n).map(|i| (0..n).map(|j| s.get(i, j).clone()).collect()).collect();
        Constants { n, f: h.field(), h: h.clone(), s_inv }
    }

    /// Coefficient of `x_k` in `x_i x_j`.
    fn mult(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.h.alg().mult.get(k, i * self.n + j).clone()
    }

    /// Coefficient of `x_i ⊗ x_j` in `Δ(x_k)`.
    fn comult(&self, k: usize, i: usize, j: usize) -> Scalar {
        self.h.coa().comult.get(i * self.n + j, k).clone()
    }

    /// Coefficient of `e^y` in `x_i ⇀ e^c ↼ x_k`, that is `e^c(x_k y x_i)`.
    fn both_sides(&self, i: usize, c: usize, k: usize, y: usize) -> Scalar {
        let mut acc = self.f.zero();
        for m in 0..self.n {
            acc = &acc + &(&self.mult(k, y, m) * &self.mult(m, i, c));
        }
        acc
    }
}

/// `(p ⊗ h)(p' ⊗ h') = p (h₁ ⇀ p' ↼ S⁻¹h₃) ⊗ h₂h'` on dual basis times basis.
fn double_oracle(c: &Constants, a: usize, b: usize, cc: usize, d: usize, u: usize, v: usize) -> Scalar {
    let n = c.n;
    let mut total = c.f.zero();
    for m in 0..n {
        for k in 0..n {
            let outer = c.comult(b, m, k);
            if outer.is_zero() {
                continue;
            }
            for i in 0..n {
                for j in 0..n {
                    let delta3 = &outer * &c.comult(m, i, j);
                    if delta3.is_zero() {
                        continue;
                    }
                    let hh = c.mult(j, d, v);
                    if hh.is_zero() {
                        continue;
                    }
                    for y in 0..n {
                        let dual_prod = c.comult(u, a, y);
                        if dual_prod.is_zero() {
                            continue;
                        }
                        let mut act = c.f.zero();
                        for l in 0..n {
                            act = &act + &(&c.s_inv[l][k] * &c.both_sides(i, cc, l, y));
                        }
                        total = &total + &(&(&delta3 * &act) * &(&dual_prod * &hh));
                    }
                }
            }
        }
    }
    total
}

fn assert_double_matches(h: &HopfData) {
    let c = Constants::new(h);
    let n = c.n;
    let d = drinfeld_double(h).unwrap();
    let prod = d.product_map();
    for a in 0..n {
        for b in 0..n {
            for cc in 0..n {
                for dd in 0..n {
                    let col = ((a * n + b) * n + cc) * n + dd;
                    for u in 0..n {
                        for v in 0..n {
                            let expect = double_oracle(&c, a, b, cc, dd, u, v);
                            assert_eq!(prod.get(u * n + v, col), &expect, "({a},{b})({cc},{dd}) at ({u},{v})");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn double_product_of_group_algebras() {
    for f in [Q, f5()] {
        assert_double_matches(&group_algebra(2, f));
        assert_double_matches(&group_algebra(3, f));
    }
}

#[test]
fn double_product_of_sweedler() {
    assert_double_matches(&sweedler_h4(Q).unwrap());
    assert_double_matches(&sweedler_h4(f5()).unwrap());
}

#[test]
fn z2_r_matrix_coefficients() {
    for f in [Q, f5()] {
        let half = f.from_ratio(1, 2).unwrap();
        let qt = qt_structure_z2(f).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                let expect = if a * b == 1 { -half.clone() } else { half.clone() };
                assert_eq!(qt.r.coefficient(&[a, b]), expect);
            }
        }
    }
}

/// `φ(p ⊗ h) = p ↼ S⁻¹(r¹) ⊗ r²h`.
#[test]
fn majid_map_matches_loops() {
    for f in [Q, f5()] {
        let qt = qt_structure_z2(f).unwrap();
        let c = Constants::new(&qt.h);
        let n = c.n;
        let phi = majid_map(&qt).unwrap();
        for a in 0..n {
            for b in 0..n {
                for u in 0..n {
                    for v in 0..n {
                        let mut expect = f.zero();
                        for i in 0..n {
                            for j in 0..n {
                                let r = qt.r.coefficient(&[i, j]);
                                for l in 0..n {
                                    // (e^a ↼ x_l)(x_u) = e^a(x_l x_u)
                                    let left = &c.s_inv[l][i] * &c.mult(l, u, a);
                                    expect = &expect + &(&(&r * &left) * &c.mult(j, b, v));
                                }
                            }
                        }
                        assert_eq!(phi.get(u * n + v, a * n + b), &expect);
                    }
                }
            }
        }
    }
}

/// Frozen from the loop oracle: in `D(k[Z₂])`, `(1 ⊗ g)(e^g ⊗ 1) = e^g ⊗ g`
/// since the conjugation action of a commutative group is trivial.
#[test]
fn double_of_z2_is_commutative() {
    let d = drinfeld_double(&group_algebra(2, Q)).unwrap();
    let m = &d.carrier.alg.mult;
    for i in 0..4 {
        for j in 0..4 {
            assert_eq!(m.column(i * 4 + j), m.column(j * 4 + i));
        }
    }
    let h4 = drinfeld_double(&sweedler_h4(Q).unwrap()).unwrap();
    let m = &h4.carrier.alg.mult;
    assert!((0..256).any(|c| m.column(c) != m.column((c % 16) * 16 + c / 16)));
}
