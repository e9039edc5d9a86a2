//! Equivalence of crossed products: deforming `(R, σ)` by a pair `(θ, γ)`,
//! assembling the equivalence `φ`, and recovering pairs from equivalences.

use rand::Rng;

use crate::algstruct::AlgebraData;
use crate::crossed::{build_crossed_product, build_twisted_tensor, e, expect_map, CrossedData, TwistingMapData};
use crate::error::{Error, Result};
use crate::exactlin::{solve_linear, LinMap, LinearSolution, Scalar, Shape, Tensor};
use crate::report::CheckReport;

/// Two maps `V -> A ⊗ V`: `θ(v) = v₍₋₁₎ ⊗ v₍₀₎` and `γ(v) = v{-1} ⊗ v{0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistPair {
    pub theta: LinMap,
    pub gamma: LinMap,
}

impl TwistPair {
    pub fn new(d: &CrossedData, theta: LinMap, gamma: LinMap) -> Result<TwistPair> {
        let (da, dv) = (d.dim_a(), d.dim_v());
        expect_map("theta", &theta, &[dv], &[da, dv])?;
        expect_map("gamma", &gamma, &[dv], &[da, dv])?;
        Ok(TwistPair { theta, gamma })
    }

    /// `θ(v) = γ(v) = 1_A ⊗ v`.
    pub fn identity(d: &CrossedData) -> TwistPair {
        let m = unit_insertion(d);
        TwistPair { theta: m.clone(), gamma: m }
    }

    pub fn swapped(&self) -> TwistPair {
        TwistPair { theta: self.gamma.clone(), gamma: self.theta.clone() }
    }
}

/// `v ↦ 1_A ⊗ v`.
fn unit_insertion(d: &CrossedData) -> LinMap {
    let f = d.field();
    let sv = d.space.shape();
    let one_a = d.algebra.unit_map();
    LinMap::from_basis_images(f, sv.clone(), d.carrier(), |i| e(f, &sv, i).apply(&one_a, 0))
        .expect("shapes agree")
}

/// An equivalence `φ : A ⊗_{R',σ'} V -> A ⊗_{R,σ} V` with its inverse and the
/// pair it comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceWitness {
    pub phi: LinMap,
    pub phi_inv: LinMap,
    pub pair: TwistPair,
}

/// `R' = (μ₂ ⊗ id)(id ⊗ id ⊗ γ)(id ⊗ R)(θ ⊗ id)`.
pub fn r_prime(d: &CrossedData, p: &TwistPair) -> Result<LinMap> {
    let f = d.field();
    let s = Shape::new([d.dim_v(), d.dim_a()]);
    let mu2 = d.algebra.mu2();
    LinMap::from_basis_images(f, s.clone(), d.carrier(), |i| {
        e(f, &s, i).apply(&p.theta, 0)?.apply(&d.r, 1)?.apply(&p.gamma, 2)?.apply(&mu2, 0)
    })
}

/// `σ' = (μ ⊗ id)(id ⊗ γ)(μ₂ ⊗ id)(id ⊗ id ⊗ σ)(id ⊗ R ⊗ id)(θ ⊗ θ)`.
pub fn sigma_prime(d: &CrossedData, p: &TwistPair) -> Result<LinMap> {
    let f = d.field();
    let s = Shape::new([d.dim_v(), d.dim_v()]);
    let mu2 = d.algebra.mu2();
    let mu = &d.algebra.mult;
    LinMap::from_basis_images(f, s.clone(), d.carrier(), |i| {
        e(f, &s, i)
            .apply(&p.theta, 0)?
            .apply(&p.theta, 2)?
            .apply(&d.r, 1)?
            .apply(&d.sigma, 2)?
            .apply(&mu2, 0)?
            .apply(&p.gamma, 1)?
            .apply(mu, 0)
    })
}

/// `cros1`–`cros4` for a pair over the base data; `σ'` is computed first
/// because `cros4` refers to it.
pub fn cros_checks(d: &CrossedData, p: &TwistPair) -> Result<CheckReport> {
    let f = d.field();
    let sigma_p = sigma_prime(d, p)?;
    let mu = &d.algebra.mult;
    let one_a = d.algebra.unit_map();
    let one_v = d.unit_v();
    let unit = d.unit_tensor();
    let s0 = Shape::scalar();
    let sv = d.space.shape();
    let mut r = CheckReport::new();

    let mut part = CheckReport::new();
    part.check_identity("cros1_theta", &s0, |_| one_v.image_of(&[]).apply(&p.theta, 0), |_| Ok(unit.clone()))?;
    part.check_identity("cros1_gamma", &s0, |_| one_v.image_of(&[]).apply(&p.gamma, 0), |_| Ok(unit.clone()))?;
    r.absorb_as("cros1", part);

    r.check_identity(
        "cros2",
        &sv,
        |i| e(f, &sv, i).apply(&p.theta, 0)?.apply(&p.gamma, 1)?.apply(mu, 0),
        |i| e(f, &sv, i).apply(&one_a, 0),
    )?;
    r.check_identity(
        "cros3",
        &sv,
        |i| e(f, &sv, i).apply(&p.gamma, 0)?.apply(&p.theta, 1)?.apply(mu, 0),
        |i| e(f, &sv, i).apply(&one_a, 0),
    )?;
    let s2 = Shape::new([d.dim_v(), d.dim_v()]);
    r.check_identity(
        "cros4",
        &s2,
        |i| {
            e(f, &s2, i)
                .apply(&p.gamma, 1)?
                .apply(&d.r, 0)?
                .apply(&p.gamma, 1)?
                .apply(mu, 0)?
                .apply(&sigma_p, 1)?
                .apply(mu, 0)
        },
        |i| e(f, &s2, i).apply(&d.sigma, 0)?.apply(&p.gamma, 1)?.apply(mu, 0),
    )?;
    Ok(r)
}

/// `Rprim`, `sigmaprim` (the given primed data matches the formulas) and
/// `cros1`–`cros4`.
pub fn twisting_conditions(primed: &CrossedData, base: &CrossedData, p: &TwistPair) -> Result<CheckReport> {
    let mut r = CheckReport::new();
    r.compare_maps("Rprim", &primed.r, &r_prime(base, p)?)?;
    r.compare_maps("sigmaprim", &primed.sigma, &sigma_prime(base, p)?)?;
    r.merge(cros_checks(base, p)?);
    Ok(r)
}

/// Deforms `(R, σ)` into `(R', σ')`. The report covers `cros1`–`cros4` and,
/// under the scope `primed`, the full crossed product suite of the result.
pub fn derive_twisted_data(d: &CrossedData, p: &TwistPair) -> Result<(CrossedData, CheckReport)> {
    TwistPair::new(d, p.theta.clone(), p.gamma.clone())?;
    let mut r = cros_checks(d, p)?;
    let primed = CrossedData::new(d.algebra.clone(), d.space.clone(), r_prime(d, p)?, sigma_prime(d, p)?)?;
    let (_, pr) = build_crossed_product(&primed)?;
    r.merge_scoped("primed", pr);
    Ok((primed, r))
}

/// The left `A`-linear map `a ⊗ v ↦ a·t(v)` for `t : V -> A ⊗ V`.
pub fn a_linear_extension(d: &CrossedData, t: &LinMap) -> Result<LinMap> {
    let f = d.field();
    let s = d.carrier();
    LinMap::from_basis_images(f, s.clone(), s.clone(), |i| e(f, &s, i).apply(t, 1)?.apply(&d.algebra.mult, 0))
}

/// `φ(a ⊗ v) = a v₍₋₁₎ ⊗ v₍₀₎` and `φ⁻¹(a ⊗ v) = a v{-1} ⊗ v{0}`, checked to
/// be mutually inverse.
pub fn build_phi(d: &CrossedData, p: &TwistPair) -> Result<EquivalenceWitness> {
    TwistPair::new(d, p.theta.clone(), p.gamma.clone())?;
    let phi = a_linear_extension(d, &p.theta)?;
    let phi_inv = a_linear_extension(d, &p.gamma)?;
    if !phi.compose(&phi_inv)?.is_identity() || !phi_inv.compose(&phi)?.is_identity() {
        return Err(Error::NotInvertible("the maps built from theta and gamma are not mutually inverse".into()));
    }
    Ok(EquivalenceWitness { phi, phi_inv, pair: p.clone() })
}

/// Checks that `φ : A ⊗_{R',σ'} V -> A ⊗_{R,σ} V` is a unital, multiplicative,
/// left `A`-linear bijection.
pub fn verify_crossed_equivalence(primed: &CrossedData, base: &CrossedData, w: &EquivalenceWitness) -> Result<CheckReport> {
    verify_equivalence_maps(primed, base, &w.phi, &w.phi_inv)
}

fn verify_equivalence_maps(primed: &CrossedData, base: &CrossedData, phi: &LinMap, phi_inv: &LinMap) -> Result<CheckReport> {
    let f = base.field();
    if primed.carrier() != base.carrier() || primed.algebra != base.algebra {
        return Err(Error::ShapeMismatch("the two crossed products must share A and V".into()));
    }
    let c = base.carrier();
    let phi = &phi.reshape(c.clone(), c.clone())?;
    let phi_inv = &phi_inv.reshape(c.clone(), c.clone())?;
    let mu1 = primed.product_map();
    let mu2 = base.product_map();
    let mu_a = &base.algebra.mult;
    let mut r = CheckReport::new();
    r.flag(
        "phi_inverse",
        phi.compose(phi_inv)?.is_identity() && phi_inv.compose(phi)?.is_identity(),
        "phi and phi_inv are not mutually inverse",
    );
    let s4 = Shape::new([base.dim_a(), base.dim_v(), base.dim_a(), base.dim_v()]);
    r.check_identity(
        "phi_multiplicative",
        &s4,
        |i| e(f, &s4, i).apply(&mu1, 0)?.apply(phi, 0),
        |i| e(f, &s4, i).apply(phi, 0)?.apply(phi, 2)?.apply(&mu2, 0),
    )?;
    let unit = base.unit_tensor();
    r.check_identity("phi_unital", &Shape::scalar(), |_| unit.apply(phi, 0), |_| Ok(unit.clone()))?;
    let s3 = Shape::new([base.dim_a(), base.dim_a(), base.dim_v()]);
    r.check_identity(
        "phi_left_a_linear",
        &s3,
        |i| e(f, &s3, i).apply(mu_a, 0)?.apply(phi, 0),
        |i| e(f, &s3, i).apply(phi, 1)?.apply(mu_a, 0),
    )?;
    let sa = base.algebra.shape();
    let one_v = base.unit_v();
    r.check_identity(
        "phi_fixes_a",
        &sa,
        |i| e(f, &sa, i).apply(&one_v, 1)?.apply(phi, 0),
        |i| e(f, &sa, i).apply(&one_v, 1),
    )?;
    Ok(r)
}

/// Recovers `θ(v) = φ(1_A ⊗ v)` and `γ(v) = φ⁻¹(1_A ⊗ v)` after verifying that
/// `φ` is an equivalence, then checks that the pair regenerates the primed
/// data (`Rprim`, `sigmaprim`) and satisfies `cros1`–`cros4`.
pub fn extract_twisting_pair(
    primed: &CrossedData,
    base: &CrossedData,
    phi: &LinMap,
    phi_inv: &LinMap,
) -> Result<(TwistPair, CheckReport)> {
    let pre = verify_equivalence_maps(primed, base, phi, phi_inv)?;
    if !pre.passed() {
        return Err(Error::NotEquivalence(format!("failed: {}", pre.failed_names().join(", "))));
    }
    let ins = unit_insertion(base);
    let c = base.carrier();
    let theta = phi.reshape(c.clone(), c.clone())?.compose(&ins)?;
    let gamma = phi_inv.reshape(c.clone(), c)?.compose(&ins)?;
    let pair = TwistPair { theta, gamma };
    let mut r = pre;
    r.merge(twisting_conditions(primed, base, &pair)?);
    Ok((pair, r))
}

/// Outcome of solving `cros3` for `γ` given `θ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GammaSolution {
    /// The unique solution; `cros2` has been verified as well.
    Unique(LinMap),
    /// No `γ` satisfies both `cros3` and `cros2`.
    Inconsistent,
    /// A particular solution and a basis of the solution space of the
    /// homogeneous system.
    Many { particular: LinMap, nullspace: Vec<LinMap> },
}

/// `cros3` reads `φ(γ(v)) = 1_A ⊗ v` with `φ` the `A`-linear extension of
/// `θ`, a linear system in `γ` solved one basis vector at a time.
pub fn solve_gamma(d: &CrossedData, theta: &LinMap) -> Result<GammaSolution> {
    let f = d.field();
    let (da, dv) = (d.dim_a(), d.dim_v());
    expect_map("theta", theta, &[dv], &[da, dv])?;
    let phi = a_linear_extension(d, theta)?;
    let ins = unit_insertion(d);
    let n = da * dv;
    let mut columns = Vec::with_capacity(dv);
    let mut kernel: Option<Vec<Vec<Scalar>>> = None;
    for v in 0..dv {
        match solve_linear(&phi, &ins.column(v))? {
            LinearSolution::Inconsistent => return Ok(GammaSolution::Inconsistent),
            LinearSolution::Unique(x) => columns.push(x),
            LinearSolution::Many { particular, nullspace } => {
                columns.push(particular);
                kernel = Some(nullspace);
            }
        }
    }
    let as_map = |cols: &[Vec<Scalar>]| {
        LinMap::from_fn(f, Shape::new([dv]), d.carrier(), |r, c| cols[c][r].clone())
    };
    let particular = as_map(&columns);
    if let Some(kernel) = kernel {
        // The system matrix is the same for every v, so the solution space
        // is a product of copies of ker φ.
        let zero = vec![f.zero(); n];
        let mut nullspace = Vec::new();
        for v in 0..dv {
            for k in &kernel {
                let mut cols = vec![zero.clone(); dv];
                cols[v] = k.clone();
                nullspace.push(as_map(&cols));
            }
        }
        return Ok(GammaSolution::Many { particular, nullspace });
    }
    let pair = TwistPair { theta: theta.clone(), gamma: particular.clone() };
    if cros_checks(d, &pair)?.passes("cros2") {
        Ok(GammaSolution::Unique(particular))
    } else {
        Ok(GammaSolution::Inconsistent)
    }
}

/// A random `θ` with `θ(1_V) = 1_A ⊗ 1_V`.
pub fn random_unital_theta<R: Rng + ?Sized>(d: &CrossedData, rng: &mut R) -> LinMap {
    let f = d.field();
    let (da, dv) = (d.dim_a(), d.dim_v());
    let n = da * dv;
    let mut cols: Vec<Vec<Scalar>> = (0..dv).map(|_| (0..n).map(|_| f.random_scalar(rng)).collect()).collect();
    let one_v = d.unit_v().column(0);
    let k = one_v.iter().position(|x| !x.is_zero()).expect("unit is nonzero");
    let target = d.unit_tensor().to_dense();
    // Solve Σ_j u_j θ(e_j) = 1 ⊗ u for column k.
    let inv = one_v[k].inv().expect("nonzero");
    let mut col = target;
    for (j, u) in one_v.iter().enumerate() {
        if j != k && !u.is_zero() {
            for (c, x) in col.iter_mut().zip(&cols[j]) {
                *c = &*c - &(u * x);
            }
        }
    }
    cols[k] = col.iter().map(|x| x * &inv).collect();
    LinMap::from_fn(f, Shape::new([dv]), d.carrier(), |r, c| cols[c][r].clone())
}

/// A random unital `θ` completed by the unique `γ`, or `None` when `γ` is not
/// unique.
pub fn random_pair<R: Rng + ?Sized>(d: &CrossedData, rng: &mut R) -> Result<Option<TwistPair>> {
    let theta = random_unital_theta(d, rng);
    Ok(match solve_gamma(d, &theta)? {
        GammaSolution::Unique(gamma) => Some(TwistPair { theta, gamma }),
        _ => None,
    })
}

/// The characterization of `A`-equivalent twisted tensor products
/// `A ⊗_{R'} B'` and `A ⊗_R B`: `theta_multiplicative`, `theta_unital`,
/// `gamma_unital` and `rel1`–`rel4`.
pub fn ttp_equivalence(
    a: &AlgebraData,
    b: &AlgebraData,
    b_prime: &AlgebraData,
    r: &LinMap,
    r_prime: &LinMap,
    p: &TwistPair,
) -> Result<CheckReport> {
    let f = a.field;
    let (da, db) = (a.dim, b.dim);
    if b_prime.dim != db {
        return Err(Error::ShapeMismatch("B and B' must have the same dimension".into()));
    }
    expect_map("R'", r_prime, &[db, da], &[da, db])?;
    expect_map("theta", &p.theta, &[db], &[da, db])?;
    expect_map("gamma", &p.gamma, &[db], &[da, db])?;
    let twisted = TwistingMapData::new(a.clone(), b.clone(), r.clone())?;
    let (ab, _) = build_twisted_tensor(&twisted)?;
    let carrier = Shape::new([da, db]);
    let ab_mult = ab
        .mult
        .reshape(Shape::new([da, db, da, db]), carrier.clone())?;
    let mu = &a.mult;
    let mu2 = a.mu2();
    let one_a = a.unit_map();
    let unit = a.unit_tensor().tensor(&b.unit_tensor());
    let mut rep = CheckReport::new();
    rep.flag("shared_unit", b.unit == b_prime.unit, "B and B' have different units");

    let s2 = Shape::new([db, db]);
    rep.check_identity(
        "theta_multiplicative",
        &s2,
        |i| e(f, &s2, i).apply(&b_prime.mult, 0)?.apply(&p.theta, 0),
        |i| e(f, &s2, i).apply(&p.theta, 0)?.apply(&p.theta, 2)?.apply(&ab_mult, 0),
    )?;
    let one_b = b.unit_tensor();
    rep.check_identity("theta_unital", &Shape::scalar(), |_| one_b.apply(&p.theta, 0), |_| Ok(unit.clone()))?;
    rep.check_identity("gamma_unital", &Shape::scalar(), |_| one_b.apply(&p.gamma, 0), |_| Ok(unit.clone()))?;
    rep.check_identity(
        "rel1",
        &s2,
        |i| e(f, &s2, i).apply(&b.mult, 0)?.apply(&p.gamma, 0),
        |i| {
            e(f, &s2, i)
                .apply(&p.gamma, 1)?
                .apply(r, 0)?
                .apply(&p.gamma, 1)?
                .apply(mu, 0)?
                .apply(&b_prime.mult, 1)
        },
    )?;
    let sb = b.shape();
    rep.check_identity(
        "rel2",
        &sb,
        |i| e(f, &sb, i).apply(&p.theta, 0)?.apply(&p.gamma, 1)?.apply(mu, 0),
        |i| e(f, &sb, i).apply(&one_a, 0),
    )?;
    rep.check_identity(
        "rel3",
        &sb,
        |i| e(f, &sb, i).apply(&p.gamma, 0)?.apply(&p.theta, 1)?.apply(mu, 0),
        |i| e(f, &sb, i).apply(&one_a, 0),
    )?;
    let sba = Shape::new([db, da]);
    rep.check_identity(
        "rel4",
        &sba,
        |i| e(f, &sba, i).apply(r_prime, 0),
        |i| e(f, &sba, i).apply(&p.theta, 0)?.apply(r, 1)?.apply(&p.gamma, 2)?.apply(&mu2, 0),
    )?;
    Ok(rep)
}

/// `θ(v) = u(v) ⊗ v`-style diagonal map: `θ(e_v) = x_v ⊗ e_v` for given
/// elements `x_v ∈ A`.
pub fn diagonal_theta(d: &CrossedData, xs: &[Tensor]) -> Result<LinMap> {
    let f = d.field();
    if xs.len() != d.dim_v() {
        return Err(Error::ShapeMismatch(format!("{} elements for dim V = {}", xs.len(), d.dim_v())));
    }
    let sv = d.space.shape();
    LinMap::from_basis_images(f, sv.clone(), d.carrier(), |i| Ok(xs[i[0]].tensor(&e(f, &sv, i))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algstruct::PointedSpace;
    use crate::exactlin::FieldSpec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn zn(n: usize, f: FieldSpec) -> AlgebraData {
        AlgebraData::from_products(f, n, (0..n).map(|i| if i == 0 { f.one() } else { f.zero() }).collect(), |ij| {
            Ok(Tensor::basis(f, Shape::new([n]), &[(ij[0] + ij[1]) % n]))
        })
        .unwrap()
    }

    fn tensor_base(f: FieldSpec) -> CrossedData {
        let a = zn(2, f);
        TwistingMapData::new(a.clone(), a, LinMap::swap(f, 2, 2)).unwrap().as_crossed()
    }

    fn scalar_elem(f: FieldSpec, c: i64) -> Tensor {
        Tensor::basis(f, Shape::new([2]), &[0]).scale(&f.from_i64(c))
    }

    #[test]
    fn identity_pair_changes_nothing() {
        let f = FieldSpec::Prime(5);
        let d = tensor_base(f);
        let p = TwistPair::identity(&d);
        let (primed, r) = derive_twisted_data(&d, &p).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(primed, d);
        let w = build_phi(&d, &p).unwrap();
        assert!(w.phi.is_identity());
        let (back, rr) = extract_twisting_pair(&primed, &d, &w.phi, &w.phi_inv).unwrap();
        assert!(rr.passed(), "{rr}");
        assert_eq!(back, p);
    }

    #[test]
    fn scalar_twist_rescales_sigma() {
        // θ(1) = 1 ⊗ 1, θ(g) = 2 ⊗ g; γ is its inverse 3 ⊗ g over F5.
        let f = FieldSpec::Prime(5);
        let d = tensor_base(f);
        let theta = diagonal_theta(&d, &[scalar_elem(f, 1), scalar_elem(f, 2)]).unwrap();
        let GammaSolution::Unique(gamma) = solve_gamma(&d, &theta).unwrap() else {
            panic!("expected a unique gamma");
        };
        assert_eq!(gamma, diagonal_theta(&d, &[scalar_elem(f, 1), scalar_elem(f, 3)]).unwrap());
        let p = TwistPair { theta, gamma };
        let (primed, r) = derive_twisted_data(&d, &p).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(primed.r, d.r);
        // σ'(g, g) = 2·2 σ(g, g), and γ(1) = 1 ⊗ 1 adds no factor.
        assert_eq!(primed.sigma.image_of(&[1, 1]), d.sigma.image_of(&[1, 1]).scale(&f.from_i64(4)));
        let w = build_phi(&d, &p).unwrap();
        assert!(verify_crossed_equivalence(&primed, &d, &w).unwrap().passed());
    }

    #[test]
    fn perturbed_gamma_is_flagged() {
        let f = FieldSpec::Prime(5);
        let d = tensor_base(f);
        let theta = diagonal_theta(&d, &[scalar_elem(f, 1), scalar_elem(f, 2)]).unwrap();
        let gamma = diagonal_theta(&d, &[scalar_elem(f, 1), scalar_elem(f, 4)]).unwrap();
        let p = TwistPair { theta, gamma };
        let r = cros_checks(&d, &p).unwrap();
        assert!(!r.passes("cros2"));
        assert!(!r.passes("cros3"));
        assert!(matches!(build_phi(&d, &p), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn non_equivalences_are_rejected() {
        let f = FieldSpec::Rationals;
        let d = tensor_base(f);
        let id = LinMap::identity(f, d.carrier());
        let two = id.scale(&f.from_i64(2));
        let half = id.scale(&f.parse_scalar("1/2").unwrap());
        let r = verify_equivalence_maps(&d, &d, &two, &half).unwrap();
        assert!(!r.passes("phi_unital"));
        assert!(matches!(extract_twisting_pair(&d, &d, &two, &half), Err(Error::NotEquivalence(_))));

        // φ = id between the tensor and the super tensor product.
        let a = zn(2, f);
        let sign = LinMap::from_fn(f, Shape::new([2, 2]), Shape::new([2, 2]), |r, c| {
            let (i, j) = (c / 2, c % 2);
            if r == j * 2 + i { f.from_i64(if i * j == 1 { -1 } else { 1 }) } else { f.zero() }
        });
        let sup = TwistingMapData::new(a.clone(), a, sign).unwrap().as_crossed();
        let r = verify_equivalence_maps(&sup, &d, &id, &id).unwrap();
        assert!(!r.passes("phi_multiplicative"));
    }

    #[test]
    fn non_surjective_theta_has_no_unique_gamma() {
        let f = FieldSpec::Prime(5);
        let d = tensor_base(f);
        // θ(g) = 0 ⊗ g collapses the g-direction.
        let theta = diagonal_theta(&d, &[scalar_elem(f, 1), scalar_elem(f, 0)]).unwrap();
        assert_eq!(solve_gamma(&d, &theta).unwrap(), GammaSolution::Inconsistent);
    }

    #[test]
    fn random_pairs_are_unital_and_regenerate() {
        let f = FieldSpec::Prime(5);
        let d = tensor_base(f);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut found = 0;
        for _ in 0..20 {
            let theta = random_unital_theta(&d, &mut rng);
            assert_eq!(theta.apply(&d.unit_v().column(0)).unwrap(), d.unit_tensor().to_dense());
            if let GammaSolution::Unique(gamma) = solve_gamma(&d, &theta).unwrap() {
                found += 1;
                let p = TwistPair { theta, gamma };
                let w = build_phi(&d, &p).unwrap();
                assert_eq!(w.phi.inverse().unwrap(), w.phi_inv);
            }
        }
        assert!(found > 0);
    }

    #[test]
    fn ttp_identity_and_super_tensor() {
        let f = FieldSpec::Prime(5);
        let a = zn(2, f);
        let d = tensor_base(f);
        let p = TwistPair::identity(&d);
        let flip = LinMap::swap(f, 2, 2);
        let r = ttp_equivalence(&a, &a, &a, &flip, &flip, &p).unwrap();
        assert!(r.passed(), "{r}");
        let sign = LinMap::from_fn(f, Shape::new([2, 2]), Shape::new([2, 2]), |r, c| {
            let (i, j) = (c / 2, c % 2);
            if r == j * 2 + i { f.from_i64(if i * j == 1 { -1 } else { 1 }) } else { f.zero() }
        });
        let r = ttp_equivalence(&a, &a, &a, &flip, &sign, &p).unwrap();
        assert!(!r.passes("rel4"));
    }

    #[test]
    fn pointed_space_must_hold_an_element() {
        let f = FieldSpec::Rationals;
        let a = zn(2, f);
        let x = PointedSpace::functional(f, vec![f.one(), f.one()]).unwrap();
        assert!(CrossedData::new(a, x, LinMap::swap(f, 2, 2), LinMap::swap(f, 2, 2)).is_err());
    }
}
