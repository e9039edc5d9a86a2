//! Algebras, coalgebras, bialgebras and Hopf algebras given by structure
//! constants, with exhaustive axiom checkers.

use crate::error::{Error, Result};
use crate::exactlin::{FieldSpec, LinMap, Scalar, Shape, Tensor};
use crate::report::CheckReport;

fn basis(field: FieldSpec, shape: &Shape, idx: &[usize]) -> Tensor {
    Tensor::basis(field, shape.clone(), idx)
}

fn expect_shapes(what: &str, map: &LinMap, domain: &[usize], codomain: &[usize]) -> Result<()> {
    if map.domain().factors() != domain || map.codomain().factors() != codomain {
        return Err(Error::ShapeMismatch(format!(
            "{what} must be {domain:?} -> {codomain:?}, got {} -> {}",
            map.domain(),
            map.codomain()
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraData {
    pub field: FieldSpec,
    pub dim: usize,
    /// `[dim, dim] -> [dim]`
    pub mult: LinMap,
    /// Coefficients of the unit element.
    pub unit: Vec<Scalar>,
}

impl AlgebraData {
    pub fn new(mult: LinMap, unit: Vec<Scalar>) -> Result<AlgebraData> {
        let dim = mult.codomain().total();
        expect_shapes("multiplication", &mult, &[dim, dim], &[dim])?;
        if unit.len() != dim {
            return Err(Error::ShapeMismatch(format!("unit of length {} in dimension {dim}", unit.len())));
        }
        Ok(AlgebraData { field: mult.field(), dim, mult, unit })
    }

    /// Builds the multiplication from the product of each basis pair.
    pub fn from_products(
        field: FieldSpec,
        dim: usize,
        unit: Vec<Scalar>,
        product: impl FnMut(&[usize]) -> Result<Tensor>,
    ) -> Result<AlgebraData> {
        let mult = LinMap::from_basis_images(field, Shape::new([dim, dim]), Shape::new([dim]), product)?;
        AlgebraData::new(mult, unit)
    }

    pub fn shape(&self) -> Shape {
        Shape::new([self.dim])
    }

    pub fn unit_map(&self) -> LinMap {
        LinMap::from_vector(self.field, self.shape(), &self.unit).expect("unit length checked")
    }

    pub fn unit_tensor(&self) -> Tensor {
        Tensor::from_dense(self.field, self.shape(), &self.unit).expect("unit length checked")
    }

    /// Triple product `μ ∘ (id ⊗ μ)`.
    pub fn mu2(&self) -> LinMap {
        let id = LinMap::identity(self.field, self.shape());
        self.mult.compose(&id.tensor(&self.mult).expect("same field")).expect("shapes agree")
    }

    /// Product of two basis elements.
    pub fn product(&self, i: usize, j: usize) -> Tensor {
        self.mult.image_of(&[i, j])
    }

    pub fn opposite(&self) -> AlgebraData {
        let sw = LinMap::swap(self.field, self.dim, self.dim);
        AlgebraData {
            field: self.field,
            dim: self.dim,
            mult: self.mult.compose(&sw).expect("square"),
            unit: self.unit.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoalgebraData {
    pub field: FieldSpec,
    pub dim: usize,
    /// `[dim] -> [dim, dim]`
    pub comult: LinMap,
    /// `[dim] -> []`
    pub counit: LinMap,
}

impl CoalgebraData {
    pub fn new(comult: LinMap, counit: LinMap) -> Result<CoalgebraData> {
        let dim = comult.domain().total();
        expect_shapes("comultiplication", &comult, &[dim], &[dim, dim])?;
        expect_shapes("counit", &counit, &[dim], &[])?;
        if comult.field() != counit.field() {
            return Err(Error::FieldMismatch(comult.field(), counit.field()));
        }
        Ok(CoalgebraData { field: comult.field(), dim, comult, counit })
    }

    pub fn from_coproducts(
        field: FieldSpec,
        dim: usize,
        counit: Vec<Scalar>,
        coproduct: impl FnMut(&[usize]) -> Result<Tensor>,
    ) -> Result<CoalgebraData> {
        let comult =
            LinMap::from_basis_images(field, Shape::new([dim]), Shape::new([dim, dim]), coproduct)?;
        CoalgebraData::new(comult, LinMap::from_functional(field, Shape::new([dim]), &counit)?)
    }

    pub fn shape(&self) -> Shape {
        Shape::new([self.dim])
    }

    pub fn co_opposite(&self) -> CoalgebraData {
        let sw = LinMap::swap(self.field, self.dim, self.dim);
        CoalgebraData {
            field: self.field,
            dim: self.dim,
            comult: sw.compose(&self.comult).expect("square"),
            counit: self.counit.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BialgebraData {
    pub alg: AlgebraData,
    pub coa: CoalgebraData,
}

impl BialgebraData {
    pub fn new(alg: AlgebraData, coa: CoalgebraData) -> Result<BialgebraData> {
        if alg.field != coa.field {
            return Err(Error::FieldMismatch(alg.field, coa.field));
        }
        if alg.dim != coa.dim {
            return Err(Error::ShapeMismatch(format!(
                "algebra of dimension {} with coalgebra of dimension {}",
                alg.dim, coa.dim
            )));
        }
        Ok(BialgebraData { alg, coa })
    }

    pub fn field(&self) -> FieldSpec {
        self.alg.field
    }

    pub fn dim(&self) -> usize {
        self.alg.dim
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfData {
    pub bia: BialgebraData,
    pub antipode: LinMap,
    antipode_inv: Option<LinMap>,
}

impl HopfData {
    pub fn new(bia: BialgebraData, antipode: LinMap) -> Result<HopfData> {
        let d = bia.dim();
        expect_shapes("antipode", &antipode, &[d], &[d])?;
        let antipode_inv = antipode.inverse();
        Ok(HopfData { bia, antipode, antipode_inv })
    }

    pub fn field(&self) -> FieldSpec {
        self.bia.field()
    }

    pub fn dim(&self) -> usize {
        self.bia.dim()
    }

    pub fn alg(&self) -> &AlgebraData {
        &self.bia.alg
    }

    pub fn coa(&self) -> &CoalgebraData {
        &self.bia.coa
    }

    pub fn antipode_inverse(&self) -> Option<&LinMap> {
        self.antipode_inv.as_ref()
    }
}

/// Which of the two marked-point flavors a [`PointedSpace`] carries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Point {
    /// A distinguished element, such as a unit.
    Element(Vec<Scalar>),
    /// A distinguished functional, such as a counit.
    Functional(Vec<Scalar>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedSpace {
    pub field: FieldSpec,
    pub dim: usize,
    pub point: Point,
}

impl PointedSpace {
    pub fn element(field: FieldSpec, v: Vec<Scalar>) -> Result<PointedSpace> {
        PointedSpace::build(field, Point::Element(v))
    }

    pub fn functional(field: FieldSpec, v: Vec<Scalar>) -> Result<PointedSpace> {
        PointedSpace::build(field, Point::Functional(v))
    }

    fn build(field: FieldSpec, point: Point) -> Result<PointedSpace> {
        let v = match &point {
            Point::Element(v) | Point::Functional(v) => v,
        };
        if v.is_empty() {
            return Err(Error::ShapeMismatch("pointed space of dimension 0".into()));
        }
        if v.iter().all(Scalar::is_zero) {
            return Err(Error::ShapeMismatch("distinguished point must be nonzero".into()));
        }
        if let Some(bad) = v.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch(field, bad.field()));
        }
        Ok(PointedSpace { field, dim: v.len(), point })
    }

    pub fn shape(&self) -> Shape {
        Shape::new([self.dim])
    }

    /// `k -> V`, sending 1 to the distinguished element.
    pub fn element_map(&self) -> Result<LinMap> {
        match &self.point {
            Point::Element(v) => LinMap::from_vector(self.field, self.shape(), v),
            Point::Functional(_) => Err(Error::ShapeMismatch("space carries a functional, not an element".into())),
        }
    }

    /// `X -> k`, the distinguished functional.
    pub fn functional_map(&self) -> Result<LinMap> {
        match &self.point {
            Point::Functional(v) => LinMap::from_functional(self.field, self.shape(), v),
            Point::Element(_) => Err(Error::ShapeMismatch("space carries an element, not a functional".into())),
        }
    }
}

pub fn check_algebra(a: &AlgebraData) -> CheckReport {
    let mut r = CheckReport::new();
    algebra_checks(a, &mut r).expect("shapes validated at construction");
    r
}

fn algebra_checks(a: &AlgebraData, r: &mut CheckReport) -> Result<()> {
    let f = a.field;
    let d = a.dim;
    let mu = &a.mult;
    let unit = a.unit_map();
    let s3 = Shape::new([d, d, d]);
    r.check_identity(
        "assoc",
        &s3,
        |i| basis(f, &s3, i).apply(mu, 0)?.apply(mu, 0),
        |i| basis(f, &s3, i).apply(mu, 1)?.apply(mu, 0),
    )?;
    let s1 = a.shape();
    r.check_identity(
        "unit_left",
        &s1,
        |i| basis(f, &s1, i).apply(&unit, 0)?.apply(mu, 0),
        |i| Ok(basis(f, &s1, i)),
    )?;
    r.check_identity(
        "unit_right",
        &s1,
        |i| basis(f, &s1, i).apply(&unit, 1)?.apply(mu, 0),
        |i| Ok(basis(f, &s1, i)),
    )
}

pub fn check_coalgebra(c: &CoalgebraData) -> CheckReport {
    let mut r = CheckReport::new();
    coalgebra_checks(c, &mut r).expect("shapes validated at construction");
    r
}

fn coalgebra_checks(c: &CoalgebraData, r: &mut CheckReport) -> Result<()> {
    let f = c.field;
    let delta = &c.comult;
    let eps = &c.counit;
    let s1 = c.shape();
    r.check_identity(
        "coassoc",
        &s1,
        |i| basis(f, &s1, i).apply(delta, 0)?.apply(delta, 0),
        |i| basis(f, &s1, i).apply(delta, 0)?.apply(delta, 1),
    )?;
    r.check_identity(
        "counit_left",
        &s1,
        |i| basis(f, &s1, i).apply(delta, 0)?.apply(eps, 0),
        |i| Ok(basis(f, &s1, i)),
    )?;
    r.check_identity(
        "counit_right",
        &s1,
        |i| basis(f, &s1, i).apply(delta, 0)?.apply(eps, 1),
        |i| Ok(basis(f, &s1, i)),
    )
}

/// Compatibility of `Δ`, `ε` with `μ`, `1`, plus the algebra and coalgebra
/// suites under the scopes `algebra` and `coalgebra`.
pub fn check_bialgebra(b: &BialgebraData) -> CheckReport {
    let mut r = CheckReport::new();
    r.merge_scoped("algebra", check_algebra(&b.alg));
    r.merge_scoped("coalgebra", check_coalgebra(&b.coa));
    compatibility_checks(b, &mut r).expect("shapes validated at construction");
    r
}

fn compatibility_checks(b: &BialgebraData, r: &mut CheckReport) -> Result<()> {
    let f = b.field();
    let d = b.dim();
    let mu = &b.alg.mult;
    let delta = &b.coa.comult;
    let eps = &b.coa.counit;
    let s2 = Shape::new([d, d]);
    r.check_identity(
        "comult_multiplicative",
        &s2,
        |i| basis(f, &s2, i).apply(mu, 0)?.apply(delta, 0),
        |i| {
            basis(f, &s2, i)
                .apply(delta, 0)?
                .apply(delta, 2)?
                .permute(&[0, 2, 1, 3])
                .apply(mu, 0)?
                .apply(mu, 1)
        },
    )?;
    let one = b.alg.unit_tensor();
    let s0 = Shape::scalar();
    r.check_identity(
        "comult_unit",
        &s0,
        |_| one.apply(delta, 0),
        |_| Ok(one.tensor(&one)),
    )?;
    r.check_identity(
        "counit_multiplicative",
        &s2,
        |i| basis(f, &s2, i).apply(mu, 0)?.apply(eps, 0),
        |i| basis(f, &s2, i).apply(eps, 0)?.apply(eps, 0),
    )?;
    r.check_identity(
        "counit_unit",
        &s0,
        |_| one.apply(eps, 0),
        |_| Ok(Tensor::scalar(f.one())),
    )
}

/// Antipode identities `S(c₁)c₂ = ε(c)1 = c₁S(c₂)` plus the bialgebra suite
/// under the scope `bialgebra`.
pub fn check_hopf(h: &HopfData) -> CheckReport {
    let mut r = CheckReport::new();
    r.merge_scoped("bialgebra", check_bialgebra(&h.bia));
    antipode_checks(h, &mut r).expect("shapes validated at construction");
    match h.antipode_inverse() {
        Some(_) => r.note("antipode is invertible; inverse cached"),
        None => r.note("antipode is not invertible"),
    }
    r
}

fn antipode_checks(h: &HopfData, r: &mut CheckReport) -> Result<()> {
    let f = h.field();
    let s1 = Shape::new([h.dim()]);
    let (mu, delta, eps) = (&h.alg().mult, &h.coa().comult, &h.coa().counit);
    let s = &h.antipode;
    let unit = h.alg().unit_map();
    let eps_one = |i: &[usize]| basis(f, &s1, i).apply(eps, 0)?.apply(&unit, 0);
    r.check_identity(
        "antipode_left",
        &s1,
        |i| basis(f, &s1, i).apply(delta, 0)?.apply(s, 0)?.apply(mu, 0),
        eps_one,
    )?;
    r.check_identity(
        "antipode_right",
        &s1,
        |i| basis(f, &s1, i).apply(delta, 0)?.apply(s, 1)?.apply(mu, 0),
        eps_one,
    )
}

/// The dual bialgebra on the dual basis: products and coproducts swap roles
/// by transposition.
pub fn dualize(b: &BialgebraData) -> BialgebraData {
    let f = b.field();
    let d = b.dim();
    let mult = b.coa.comult.transpose();
    let unit = b.coa.counit.entries().to_vec();
    let comult = b.alg.mult.transpose();
    let counit = LinMap::from_functional(f, Shape::new([d]), &b.alg.unit).expect("length d");
    BialgebraData {
        alg: AlgebraData { field: f, dim: d, mult, unit },
        coa: CoalgebraData { field: f, dim: d, comult, counit },
    }
}

/// Dual Hopf algebra; its antipode is the transpose.
pub fn dualize_hopf(h: &HopfData) -> HopfData {
    HopfData::new(dualize(&h.bia), h.antipode.transpose()).expect("square antipode")
}

pub fn op_cop(b: &BialgebraData, flip_mult: bool, flip_comult: bool) -> BialgebraData {
    BialgebraData {
        alg: if flip_mult { b.alg.opposite() } else { b.alg.clone() },
        coa: if flip_comult { b.coa.co_opposite() } else { b.coa.clone() },
    }
}

/// Hopf version of [`op_cop`]: flipping exactly one structure replaces the
/// antipode by its inverse.
pub fn op_cop_hopf(h: &HopfData, flip_mult: bool, flip_comult: bool) -> Result<HopfData> {
    let antipode = if flip_mult != flip_comult {
        h.antipode_inverse().cloned().ok_or(Error::AntipodeNotInvertible)?
    } else {
        h.antipode.clone()
    };
    HopfData::new(op_cop(&h.bia, flip_mult, flip_comult), antipode)
}

/// `⇀ : H ⊗ H* -> H*`, `(h ⇀ p)(x) = p(xh)`, on the dual basis.
pub fn left_regular_action(a: &AlgebraData) -> LinMap {
    let d = a.dim;
    let sh = Shape::new([d, d]);
    // (e_a ⇀ e^b)(e_k) = coefficient of e_b in e_k e_a
    LinMap::from_fn(a.field, sh.clone(), Shape::new([d]), |k, col| {
        let idx = sh.multi_index(col);
        a.mult.get(idx[1], k * d + idx[0]).clone()
    })
}

/// `↼ : H* ⊗ H -> H*`, `(p ↼ h)(x) = p(hx)`, on the dual basis.
pub fn right_regular_action(a: &AlgebraData) -> LinMap {
    let d = a.dim;
    let sh = Shape::new([d, d]);
    // (e^b ↼ e_a)(e_k) = coefficient of e_b in e_a e_k
    LinMap::from_fn(a.field, sh.clone(), Shape::new([d]), |k, col| {
        let idx = sh.multi_index(col);
        a.mult.get(idx[0], idx[1] * d + k).clone()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// ℚ[Z₂] with basis {1, g}, built by hand.
    fn qz2() -> HopfData {
        let q = FieldSpec::Rationals;
        let alg = AlgebraData::from_products(q, 2, vec![q.one(), q.zero()], |ij| {
            Ok(Tensor::basis(q, Shape::new([2]), &[(ij[0] + ij[1]) % 2]))
        })
        .unwrap();
        let coa = CoalgebraData::from_coproducts(q, 2, vec![q.one(), q.one()], |i| {
            Ok(Tensor::basis(q, Shape::new([2, 2]), &[i[0], i[0]]))
        })
        .unwrap();
        HopfData::new(BialgebraData::new(alg, coa).unwrap(), LinMap::identity(q, Shape::new([2]))).unwrap()
    }

    #[test]
    fn group_algebra_passes() {
        let h = qz2();
        assert!(check_algebra(h.alg()).passed());
        assert!(check_coalgebra(h.coa()).passed());
        assert!(check_bialgebra(&h.bia).passed());
        let r = check_hopf(&h);
        assert!(r.passed(), "{r}");
        assert!(h.antipode_inverse().unwrap().is_identity());
    }

    #[test]
    fn perturbed_multiplication_fails() {
        let h = qz2();
        let q = h.field();
        let mut entries = h.alg().mult.entries().to_vec();
        // 1·g gains an extra 1 in the 1-coordinate.
        entries[1] = &entries[1] + &q.one();
        let mult = LinMap::from_entries(q, Shape::new([2, 2]), Shape::new([2]), entries).unwrap();
        let bad = AlgebraData::new(mult, h.alg().unit.clone()).unwrap();
        let r = check_algebra(&bad);
        assert!(!r.passed());
        assert!(!r.get("assoc").unwrap().passed() || !r.get("unit_left").unwrap().passed());
    }

    #[test]
    fn one_dimensional_algebra() {
        let q = FieldSpec::Rationals;
        let mult = LinMap::identity(q, Shape::new([1])).reshape(Shape::new([1, 1]), Shape::new([1])).unwrap();
        assert!(check_algebra(&AlgebraData::new(mult, vec![q.one()]).unwrap()).passed());
    }

    #[test]
    fn dual_of_group_algebra_is_function_algebra() {
        let h = qz2();
        let d = dualize(&h.bia);
        let q = h.field();
        for i in 0..2 {
            for j in 0..2 {
                let expect = if i == j {
                    Tensor::basis(q, Shape::new([2]), &[i])
                } else {
                    Tensor::zero(q, Shape::new([2]))
                };
                assert_eq!(d.alg.product(i, j), expect);
            }
        }
        assert!(check_bialgebra(&d).passed());
        assert_eq!(dualize(&d), h.bia);
    }

    #[test]
    fn regular_actions_on_z2() {
        let h = qz2();
        let q = h.field();
        let left = left_regular_action(h.alg());
        // g ⇀ e^g = e^1, since (g ⇀ e^g)(x) = e^g(xg).
        assert_eq!(left.image_of(&[1, 1]), Tensor::basis(q, Shape::new([2]), &[0]));
        let right = right_regular_action(h.alg());
        assert_eq!(right.image_of(&[1, 1]), Tensor::basis(q, Shape::new([2]), &[0]));
        assert_eq!(left.image_of(&[0, 1]), Tensor::basis(q, Shape::new([2]), &[1]));
    }

    #[test]
    fn op_cop_involutions() {
        let h = qz2();
        assert_eq!(op_cop(&h.bia, false, false), h.bia);
        assert_eq!(op_cop(&op_cop(&h.bia, true, false), true, false), h.bia);
        let d = dualize(&h.bia);
        assert_eq!(op_cop(&d, false, true), d);
    }

    #[test]
    fn zero_antipode_fails() {
        let h = qz2();
        let bad = HopfData::new(h.bia.clone(), LinMap::zero(h.field(), Shape::new([2]), Shape::new([2]))).unwrap();
        let r = check_hopf(&bad);
        assert!(!r.passes("antipode_left"));
        assert!(bad.antipode_inverse().is_none());
    }
}
