//! Equivalence of cross product bialgebras whose coalgebra is the tensor
//! product coalgebra `A ⊗ C`, with `A` a bialgebra.

use rand::Rng;

use crate::algstruct::{check_bialgebra, BialgebraData, CoalgebraData, PointedSpace};
use crate::crossed::{
    assemble_cross_bialgebra, build_crossed_coproduct, build_crossed_product, e, expect_map, extract_w_rho,
    tensor_cocrossed, CoCrossedData, CrossBialgebraData, CrossedData,
};
use crate::error::{Error, Result};
use crate::exactlin::{solve_linear, LinMap, Scalar, Shape};
use crate::report::CheckReport;
use crate::twisteq::{
    build_phi, derive_twisted_data, extract_twisting_pair, solve_gamma, twisting_conditions, verify_crossed_equivalence,
    EquivalenceWitness, GammaSolution, TwistPair,
};

/// A cross product bialgebra on `A ⊗ C` carrying the tensor product
/// coalgebra (`W₀` is the flip, `ρ₀(a ⊗ c) = a₁ ⊗ a₂ ε_C(c)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseCrossBialgebra {
    pub a: BialgebraData,
    pub c: CoalgebraData,
    pub crossed: CrossedData,
    pub fused: CrossBialgebraData,
}

impl BaseCrossBialgebra {
    /// Validates that the crossed product on `A ⊗ C` together with the tensor
    /// coalgebra is a bialgebra.
    pub fn new(a: BialgebraData, c: CoalgebraData, crossed: CrossedData) -> Result<BaseCrossBialgebra> {
        if crossed.algebra != a.alg {
            return Err(Error::UnsupportedBase("the crossed product is not over the given bialgebra".into()));
        }
        if crossed.dim_v() != c.dim {
            return Err(Error::ShapeMismatch(format!(
                "crossed product over a space of dimension {}, coalgebra of dimension {}",
                crossed.dim_v(),
                c.dim
            )));
        }
        let co = tensor_cocrossed(&a.coa, &c)?;
        let (fused, _, report) = assemble_cross_bialgebra(&crossed, &co)?;
        if !report.passed() {
            return Err(Error::UnsupportedBase(format!(
                "not a cross product bialgebra: {}",
                report.failed_names().join(", ")
            )));
        }
        Ok(BaseCrossBialgebra { a, c, crossed, fused })
    }

    /// Accepts a fused object only when its coalgebra side is exactly `W₀`, `ρ₀`.
    pub fn from_cross_bialgebra(a: BialgebraData, cb: &CrossBialgebraData) -> Result<BaseCrossBialgebra> {
        let expected = tensor_cocrossed(&a.coa, &cb.cocrossed.coalgebra)?;
        if cb.cocrossed.w != expected.w || cb.cocrossed.rho != expected.rho {
            return Err(Error::UnsupportedBase(
                "coalgebra structure is not the tensor product coalgebra".into(),
            ));
        }
        BaseCrossBialgebra::new(a, cb.cocrossed.coalgebra.clone(), cb.crossed.clone())
    }

    /// Like [`BaseCrossBialgebra::from_cross_bialgebra`], reading the
    /// coalgebra of `A` off `ρ`: `Δ_A(a) = ρ(a ⊗ c)/ε_C(c)` for a basis
    /// element `c` with `ε_C(c) ≠ 0`, and `ε_A = ε_X`.
    pub fn from_fused(cb: &CrossBialgebraData) -> Result<BaseCrossBialgebra> {
        let f = cb.field();
        let c = &cb.cocrossed.coalgebra;
        let eps_c = c.counit.entries();
        let Some(k) = eps_c.iter().position(|x| !x.is_zero()) else {
            return Err(Error::UnsupportedBase("the counit of C vanishes".into()));
        };
        let inv = eps_c[k].inv().expect("nonzero");
        let da = cb.crossed.dim_a();
        let sa = Shape::new([da]);
        let comult = LinMap::from_basis_images(f, sa.clone(), Shape::new([da, da]), |i| {
            Ok(cb.cocrossed.rho.image_of(&[i[0], k]).scale(&inv))
        })?;
        let coa = CoalgebraData::new(comult, cb.cocrossed.eps_x())?;
        let a = BialgebraData::new(cb.crossed.algebra.clone(), coa)?;
        BaseCrossBialgebra::from_cross_bialgebra(a, cb)
    }

    pub fn carrier(&self) -> Shape {
        self.crossed.carrier()
    }

    /// The tensor coalgebra comultiplication `[a, c] -> [a, c, a, c]`.
    pub fn delta(&self) -> LinMap {
        self.fused.cocrossed.coproduct_map()
    }

    pub fn bialgebra(&self) -> BialgebraData {
        self.fused.bialgebra().expect("validated at construction")
    }
}

/// Everything the forward direction produces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BialgTwistResult {
    pub w_prime: LinMap,
    pub rho_prime: LinMap,
    pub delta_prime: LinMap,
    pub primed: CrossBialgebraData,
    pub witness: EquivalenceWitness,
}

fn check_pair_shapes(base: &BaseCrossBialgebra, p: &TwistPair) -> Result<()> {
    TwistPair::new(&base.crossed, p.theta.clone(), p.gamma.clone()).map(|_| ())
}

/// `extra1`–`extra3` on every basis element of `C`, together with `Rprim`,
/// `sigmaprim` and `cros1`–`cros4` for the derived crossed product.
pub fn check_extra_conditions(base: &BaseCrossBialgebra, p: &TwistPair) -> Result<CheckReport> {
    check_pair_shapes(base, p)?;
    let f = base.crossed.field();
    let sc = base.c.shape();
    let (eps_a, eps_c, dc) = (&base.a.coa.counit, &base.c.counit, &base.c.comult);
    let mut r = CheckReport::new();

    let mut part = CheckReport::new();
    part.check_identity(
        "extra1_theta",
        &sc,
        |i| e(f, &sc, i).apply(&p.theta, 0)?.apply(eps_a, 0)?.apply(eps_c, 0),
        |i| e(f, &sc, i).apply(eps_c, 0),
    )?;
    part.check_identity(
        "extra1_gamma",
        &sc,
        |i| e(f, &sc, i).apply(&p.gamma, 0)?.apply(eps_a, 0)?.apply(eps_c, 0),
        |i| e(f, &sc, i).apply(eps_c, 0),
    )?;
    r.absorb_as("extra1", part);
    r.check_identity(
        "extra2",
        &sc,
        |i| e(f, &sc, i).apply(&p.theta, 0)?.apply(dc, 1),
        |i| e(f, &sc, i).apply(dc, 0)?.apply(&p.theta, 0),
    )?;
    r.check_identity(
        "extra3",
        &sc,
        |i| e(f, &sc, i).apply(&p.gamma, 0)?.apply(dc, 1),
        |i| e(f, &sc, i).apply(dc, 0)?.apply(&p.gamma, 0),
    )?;
    let (primed, _) = derive_twisted_data(&base.crossed, p)?;
    r.merge(twisting_conditions(&primed, &base.crossed, p)?);
    Ok(r)
}

/// The six identities `cucu1`–`cucu6` that follow from the hypotheses; a
/// failure on a pair that passes [`check_extra_conditions`] means a bug.
pub fn check_cucu_lemmas(base: &BaseCrossBialgebra, p: &TwistPair) -> Result<CheckReport> {
    check_pair_shapes(base, p)?;
    let f = base.crossed.field();
    let sc = base.c.shape();
    let (eps_a, eps_c, dc) = (&base.a.coa.counit, &base.c.counit, &base.c.comult);
    let mu = &base.a.alg.mult;
    let one_a = base.a.alg.unit_map();
    let mut r = CheckReport::new();
    let one_tensor_c = |i: &[usize]| e(f, &sc, i).apply(&one_a, 0);

    let mixed = |first: &LinMap, second: &LinMap, i: &[usize]| {
        e(f, &sc, i)
            .apply(dc, 0)?
            .apply(first, 0)?
            .apply(eps_c, 1)?
            .apply(second, 1)?
            .apply(mu, 0)
    };
    r.check_identity("cucu1", &sc, |i| mixed(&p.theta, &p.gamma, i), one_tensor_c)?;
    r.check_identity("cucu2", &sc, |i| mixed(&p.gamma, &p.theta, i), one_tensor_c)?;
    r.check_identity("cucu3", &sc, |i| e(f, &sc, i).apply(&p.theta, 0)?.apply(eps_a, 0), |i| Ok(e(f, &sc, i)))?;
    r.check_identity("cucu4", &sc, |i| e(f, &sc, i).apply(&p.gamma, 0)?.apply(eps_a, 0), |i| Ok(e(f, &sc, i)))?;

    let split = |t: &LinMap, i: &[usize]| {
        e(f, &sc, i)
            .apply(dc, 0)?
            .apply(t, 0)?
            .apply(eps_c, 1)?
            .apply(t, 1)?
            .apply(eps_c, 2)
    };
    let nested = |t: &LinMap, i: &[usize]| e(f, &sc, i).apply(t, 0)?.apply(t, 1)?.apply(eps_c, 2);
    r.check_identity("cucu5", &sc, |i| split(&p.gamma, i), |i| nested(&p.gamma, i))?;
    r.check_identity("cucu6", &sc, |i| split(&p.theta, i), |i| nested(&p.theta, i))?;
    Ok(r)
}

/// `W'` by the long formula (with both counit factors).
pub fn w_prime_full(base: &BaseCrossBialgebra, p: &TwistPair) -> Result<LinMap> {
    let f = base.crossed.field();
    let s = base.carrier();
    let (eps_a, eps_c, dc) = (&base.a.coa.counit, &base.c.counit, &base.c.comult);
    let mu2 = base.a.alg.mu2();
    LinMap::from_basis_images(f, s.clone(), Shape::new([base.c.dim, base.a.dim()]), |i| {
        Ok(e(f, &s, i)
            .apply(&p.theta, 1)?
            .apply(dc, 2)?
            .apply(&p.gamma, 2)?
            .apply(eps_a, 2)?
            .apply(&p.gamma, 3)?
            .apply(eps_c, 4)?
            .permute(&[2, 0, 1, 3]))
        .and_then(|t| t.apply(&mu2, 1))
    })
}

/// `W'` by the short formula.
pub fn w_prime_short(base: &BaseCrossBialgebra, p: &TwistPair) -> Result<LinMap> {
    let f = base.crossed.field();
    let s = base.carrier();
    let (eps_c, dc) = (&base.c.counit, &base.c.comult);
    let mu2 = base.a.alg.mu2();
    LinMap::from_basis_images(f, s.clone(), Shape::new([base.c.dim, base.a.dim()]), |i| {
        Ok(e(f, &s, i)
            .apply(&p.theta, 1)?
            .apply(dc, 2)?
            .apply(&p.gamma, 3)?
            .apply(eps_c, 4)?
            .permute(&[2, 0, 1, 3]))
        .and_then(|t| t.apply(&mu2, 1))
    })
}

/// `ρ'(a ⊗ c) = ε_C(c₍₀₎{0}{0}) a₁ c₍₋₁₎₁ c₍₀₎{-1} ⊗ a₂ c₍₋₁₎₂ c₍₀₎{0}{-1}`.
pub fn rho_prime(base: &BaseCrossBialgebra, p: &TwistPair) -> Result<LinMap> {
    let f = base.crossed.field();
    let s = base.carrier();
    let (da_map, eps_c) = (&base.a.coa.comult, &base.c.counit);
    let mu2 = base.a.alg.mu2();
    let da = base.a.dim();
    LinMap::from_basis_images(f, s.clone(), Shape::new([da, da]), |i| {
        let t = e(f, &s, i)
            .apply(&p.theta, 1)?
            .apply(&p.gamma, 2)?
            .apply(&p.gamma, 3)?
            .apply(eps_c, 4)?
            .apply(da_map, 0)?
            .apply(da_map, 2)?;
        t.permute(&[0, 2, 4, 1, 3, 5]).apply(&mu2, 0)?.apply(&mu2, 1)
    })
}

/// `W'` and `ρ'`. Both formulas for `W'` are evaluated and must agree.
pub fn derive_coalgebra_twist(base: &BaseCrossBialgebra, p: &TwistPair) -> Result<(LinMap, LinMap)> {
    check_pair_shapes(base, p)?;
    let full = w_prime_full(base, p)?;
    let short = w_prime_short(base, p)?;
    if full != short {
        return Err(Error::InternalInconsistency("the two formulas for W' disagree".into()));
    }
    Ok((full, rho_prime(base, p)?))
}

/// `Δ'(a ⊗ c) = a₁ c₁₍₋₁₎₁ c₁₍₀₎{-1} ⊗ c₁₍₀₎{0} ⊗ a₂ c₁₍₋₁₎₂ c₂{-1} ⊗ c₂{0}`.
pub fn delta_prime_formula(base: &BaseCrossBialgebra, p: &TwistPair) -> Result<LinMap> {
    let f = base.crossed.field();
    let s = base.carrier();
    let (da_map, dc) = (&base.a.coa.comult, &base.c.comult);
    let mu2 = base.a.alg.mu2();
    let (da, dcn) = (base.a.dim(), base.c.dim);
    LinMap::from_basis_images(f, s.clone(), Shape::new([da, dcn, da, dcn]), |i| {
        let t = e(f, &s, i)
            .apply(dc, 1)?
            .apply(&p.theta, 1)?
            .apply(&p.gamma, 2)?
            .apply(&p.gamma, 4)?
            .apply(da_map, 0)?
            .apply(da_map, 2)?;
        t.permute(&[0, 2, 4, 5, 1, 3, 6, 7]).apply(&mu2, 0)?.apply(&mu2, 2)
    })
}

/// `Δ'` from its closed formula, with a report comparing it against the
/// crossed coproduct built from `(W', ρ')` (`deltaprim_formco`) and against
/// `(φ⁻¹ ⊗ φ⁻¹)∘Δ∘φ` (`deltaprim_conjugation`).
pub fn derive_delta_prime(base: &BaseCrossBialgebra, p: &TwistPair) -> Result<(LinMap, CheckReport)> {
    check_pair_shapes(base, p)?;
    let f = base.crossed.field();
    let delta_p = delta_prime_formula(base, p)?;
    let mut r = CheckReport::new();
    let w_p = w_prime_full(base, p)?;
    let rho_p = rho_prime(base, p)?;
    let co = primed_cocrossed(base, w_p, rho_p)?;
    r.compare_maps("deltaprim_formco", &delta_p, &co.coproduct_map())?;
    match build_phi(&base.crossed, p) {
        Ok(w) => {
            let s = base.carrier();
            let delta = base.delta();
            r.check_identity(
                "deltaprim_conjugation",
                &s,
                |i| e(f, &s, i).apply(&delta_p, 0),
                |i| e(f, &s, i).apply(&w.phi, 0)?.apply(&delta, 0)?.apply(&w.phi_inv, 0)?.apply(&w.phi_inv, 2),
            )?;
        }
        Err(_) => r.flag("deltaprim_conjugation", false, "phi is not invertible"),
    }
    Ok((delta_p, r))
}

fn primed_cocrossed(base: &BaseCrossBialgebra, w: LinMap, rho: LinMap) -> Result<CoCrossedData> {
    let f = base.crossed.field();
    let x = PointedSpace::functional(f, base.a.coa.counit.entries().to_vec())?;
    CoCrossedData::new(x, base.c.clone(), w, rho)
}

/// Coalgebra-side properties of `φ : primed -> base`: `phi_comultiplicative`,
/// `phi_counital`, and right `C`-colinearity of `φ` and `φ⁻¹`.
fn coalgebra_morphism_checks(
    base: &BaseCrossBialgebra,
    primed_delta: &LinMap,
    phi: &LinMap,
    phi_inv: &LinMap,
) -> Result<CheckReport> {
    let f = base.crossed.field();
    let s = base.carrier();
    let delta = base.delta();
    let counit = base.fused.cocrossed.counit_map();
    let dc = &base.c.comult;
    let mut r = CheckReport::new();
    r.check_identity(
        "phi_comultiplicative",
        &s,
        |i| e(f, &s, i).apply(primed_delta, 0)?.apply(phi, 0)?.apply(phi, 2),
        |i| e(f, &s, i).apply(phi, 0)?.apply(&delta, 0),
    )?;
    r.check_identity(
        "phi_counital",
        &s,
        |i| e(f, &s, i).apply(phi, 0)?.apply(&counit, 0),
        |i| e(f, &s, i).apply(&counit, 0),
    )?;
    r.check_identity(
        "phi_right_c_colinear",
        &s,
        |i| e(f, &s, i).apply(dc, 1)?.apply(phi, 0),
        |i| e(f, &s, i).apply(phi, 0)?.apply(dc, 1),
    )?;
    r.check_identity(
        "phi_inv_right_c_colinear",
        &s,
        |i| e(f, &s, i).apply(dc, 1)?.apply(phi_inv, 0),
        |i| e(f, &s, i).apply(phi_inv, 0)?.apply(dc, 1),
    )?;
    Ok(r)
}

/// The full forward direction: derives `R'`, `σ'`, `W'`, `ρ'`, `Δ'`, builds
/// the primed cross product bialgebra and verifies that `φ` is an
/// equivalence. Failed sub-checks are recorded, not raised; only a
/// non-invertible `φ` is an error.
pub fn verify_bialgebra_equivalence(base: &BaseCrossBialgebra, p: &TwistPair) -> Result<(BialgTwistResult, CheckReport)> {
    check_pair_shapes(base, p)?;
    let mut r = check_extra_conditions(base, p)?;
    r.merge(check_cucu_lemmas(base, p)?);

    let w_full = w_prime_full(base, p)?;
    let w_short = w_prime_short(base, p)?;
    r.compare_maps("wprim_agree", &w_full, &w_short)?;
    let rho_p = rho_prime(base, p)?;

    let (primed_crossed, _) = derive_twisted_data(&base.crossed, p)?;
    let primed_co = primed_cocrossed(base, w_full.clone(), rho_p.clone())?;
    let (primed, _, fused_report) = assemble_cross_bialgebra(&primed_crossed, &primed_co)?;
    r.merge_scoped("primed", fused_report);

    let (delta_p, dr) = derive_delta_prime(base, p)?;
    r.merge(dr);

    let witness = build_phi(&base.crossed, p)?;
    r.merge(verify_crossed_equivalence(&primed_crossed, &base.crossed, &witness)?);
    r.merge(coalgebra_morphism_checks(base, &delta_p, &witness.phi, &witness.phi_inv)?);

    let result = BialgTwistResult { w_prime: w_full, rho_prime: rho_p, delta_prime: delta_p, primed, witness };
    Ok((result, r))
}

/// The converse: given a primed cross product bialgebra and an equivalence
/// `φ : primed -> base`, verifies every hypothesis on `φ`, recovers
/// `θ(c) = φ(1 ⊗ c)`, `γ(c) = φ⁻¹(1 ⊗ c)` and checks that the pair satisfies
/// all conditions and regenerates the primed `W'`, `ρ'` (`Wprim`, `rhoprim`).
pub fn extract_bialgebra_pair(
    base: &BaseCrossBialgebra,
    primed: &CrossBialgebraData,
    phi: &LinMap,
    phi_inv: &LinMap,
) -> Result<(TwistPair, CheckReport)> {
    let s = base.carrier();
    let phi = phi.reshape(s.clone(), s.clone())?;
    let phi_inv = phi_inv.reshape(s.clone(), s.clone())?;
    if primed.crossed.carrier() != s {
        return Err(Error::ShapeMismatch("primed object lives on a different carrier".into()));
    }
    let (primed_coalg, _) = build_crossed_coproduct(&primed.cocrossed)?;
    let primed_delta = primed_coalg.comult.reshape(s.clone(), Shape::new([base.a.dim(), base.c.dim, base.a.dim(), base.c.dim]))?;
    let (_, _, primed_report) = assemble_cross_bialgebra(&primed.crossed, &primed.cocrossed)?;
    let coalg = coalgebra_morphism_checks(base, &primed_delta, &phi, &phi_inv)?;
    if !primed_report.passed() || !coalg.passed() {
        let mut failed = primed_report.failed_names();
        failed.extend(coalg.failed_names());
        return Err(Error::NotEquivalence(format!("failed: {}", failed.join(", "))));
    }
    let (pair, mut r) = extract_twisting_pair(&primed.crossed, &base.crossed, &phi, &phi_inv)?;
    r.merge(coalg);
    r.merge(check_extra_conditions(base, &pair)?);

    let (w, rho) = extract_w_rho(&primed_coalg.comult, &primed.cocrossed.eps_x(), &base.c.counit)?;
    r.compare_maps("Wprim", &w, &w_prime_full(base, &pair)?)?;
    r.compare_maps("rhoprim", &rho, &rho_prime(base, &pair)?)?;
    Ok((pair, r))
}

/// `θ(c) = u(c₁) ⊗ c₂` completed by the unique `γ`, for `u : C -> A` with
/// `u(1_C) = 1_A` and `ε_A∘u = ε_C`.
pub fn lazy_twist(base: &BaseCrossBialgebra, u: &LinMap) -> Result<TwistPair> {
    let f = base.crossed.field();
    let (da, dc) = (base.a.dim(), base.c.dim);
    expect_map("u", u, &[dc], &[da])?;
    let sc = base.c.shape();
    let theta = LinMap::from_basis_images(f, sc.clone(), base.carrier(), |i| {
        e(f, &sc, i).apply(&base.c.comult, 0)?.apply(u, 0)
    })?;
    match solve_gamma(&base.crossed, &theta)? {
        GammaSolution::Unique(gamma) => Ok(TwistPair { theta, gamma }),
        _ => Err(Error::NotInvertible("theta has no unique convolution inverse".into())),
    }
}

/// A random `u : C -> A` with `u(1_C) = 1_A` and `ε_A∘u = ε_C`, turned into a
/// lazy twist; `None` when the resulting `θ` is not invertible.
pub fn random_lazy_twist<R: Rng + ?Sized>(base: &BaseCrossBialgebra, rng: &mut R) -> Result<Option<TwistPair>> {
    let f = base.crossed.field();
    let (da, dc) = (base.a.dim(), base.c.dim);
    let one_c = base.crossed.unit_v().column(0);
    let eps_a = base.a.coa.counit.entries();
    let eps_c = base.c.counit.entries();
    // Unknowns: u[r][c] at index r·dc + c. Rows: dc counit equations, then
    // da unit equations.
    let n = da * dc;
    let rows = dc + da;
    let system = LinMap::from_fn(f, Shape::new([n]), Shape::new([rows]), |row, col| {
        let (r, c) = (col / dc, col % dc);
        if row < dc {
            if c == row { eps_a[r].clone() } else { f.zero() }
        } else if r == row - dc {
            one_c[c].clone()
        } else {
            f.zero()
        }
    });
    let mut rhs: Vec<Scalar> = eps_c.to_vec();
    rhs.extend(base.a.alg.unit.iter().cloned());
    let Some(x) = solve_linear(&system, &rhs)?.sample(f, rng) else {
        return Ok(None);
    };
    let u = LinMap::from_fn(f, Shape::new([dc]), Shape::new([da]), |r, c| x[r * dc + c].clone());
    match lazy_twist(base, &u) {
        Ok(p) => Ok(Some(p)),
        Err(Error::NotInvertible(_)) => Ok(None),
        Err(err) => Err(err),
    }
}

/// Runs the bialgebra suite on the base's fused object.
pub fn check_base(base: &BaseCrossBialgebra) -> CheckReport {
    let mut r = CheckReport::new();
    let (_, pr) = build_crossed_product(&base.crossed).expect("validated");
    r.merge_scoped("crossed", pr);
    r.merge_scoped("bialgebra", check_bialgebra(&base.bialgebra()));
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algstruct::AlgebraData;
    use crate::crossed::TwistingMapData;
    use crate::exactlin::{FieldSpec, Tensor};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn z2(f: FieldSpec) -> BialgebraData {
        let alg = AlgebraData::from_products(f, 2, vec![f.one(), f.zero()], |ij| {
            Ok(Tensor::basis(f, Shape::new([2]), &[(ij[0] + ij[1]) % 2]))
        })
        .unwrap();
        let coa = CoalgebraData::from_coproducts(f, 2, vec![f.one(); 2], |i| {
            Ok(Tensor::basis(f, Shape::new([2, 2]), &[i[0], i[0]]))
        })
        .unwrap();
        BialgebraData::new(alg, coa).unwrap()
    }

    fn base(f: FieldSpec) -> BaseCrossBialgebra {
        let h = z2(f);
        let crossed = TwistingMapData::new(h.alg.clone(), h.alg.clone(), LinMap::swap(f, 2, 2)).unwrap().as_crossed();
        BaseCrossBialgebra::new(h.clone(), h.coa.clone(), crossed).unwrap()
    }

    /// u(1) = 1, u(g) = α + (1 - α) g.
    fn lazy_u(f: FieldSpec, alpha: Scalar) -> LinMap {
        let beta = &f.one() - &alpha;
        LinMap::from_entries(f, Shape::new([2]), Shape::new([2]), vec![f.one(), alpha, f.zero(), beta]).unwrap()
    }

    #[test]
    fn identity_pair_reproduces_base() {
        let f = FieldSpec::Rationals;
        let b = base(f);
        let p = TwistPair::identity(&b.crossed);
        let (w, rho) = derive_coalgebra_twist(&b, &p).unwrap();
        assert_eq!(w, b.fused.cocrossed.w);
        assert_eq!(rho, b.fused.cocrossed.rho);
        let (res, r) = verify_bialgebra_equivalence(&b, &p).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(res.primed, b.fused);
        assert!(res.witness.phi.is_identity());
    }

    #[test]
    fn lazy_twist_on_z2_passes_and_round_trips() {
        let f = FieldSpec::Rationals;
        let b = base(f);
        // u(g) = 2 - g is invertible in ℚ[Z₂] (its inverse is (2 + g)/3).
        let p = lazy_twist(&b, &lazy_u(f, f.from_i64(2))).unwrap();
        let (res, r) = verify_bialgebra_equivalence(&b, &p).unwrap();
        assert!(r.passed(), "{r}");
        let (back, rr) = extract_bialgebra_pair(&b, &res.primed, &res.witness.phi, &res.witness.phi_inv).unwrap();
        assert!(rr.passed(), "{rr}");
        assert_eq!(back, p);
    }

    #[test]
    fn lazy_twist_hand_values() {
        // On group-likes W' stays the flip and ρ' is conjugated by u(g).
        let f = FieldSpec::Rationals;
        let b = base(f);
        let p = lazy_twist(&b, &lazy_u(f, f.from_i64(2))).unwrap();
        let (w, rho) = derive_coalgebra_twist(&b, &p).unwrap();
        assert_eq!(w, LinMap::swap(f, 2, 2));
        // ρ'(1 ⊗ g) = Δ(x) (x⁻¹ ⊗ x⁻¹)... evaluated: x = 2 - g, x⁻¹ = (2 + g)/3.
        let x = Tensor::from_dense(f, Shape::new([2]), &[f.from_i64(2), f.from_i64(-1)]).unwrap();
        let xinv = Tensor::from_dense(f, Shape::new([2]), &[f.parse_scalar("2/3").unwrap(), f.parse_scalar("1/3").unwrap()]).unwrap();
        let mu = &b.a.alg.mult;
        let dx = x.apply(&b.a.coa.comult, 0).unwrap();
        let expect = dx.tensor(&xinv).tensor(&xinv).permute(&[0, 2, 1, 3]).apply(mu, 0).unwrap().apply(mu, 1).unwrap();
        assert_eq!(rho.image_of(&[0, 1]), expect);
    }

    #[test]
    fn non_colinear_theta_fails_extra2() {
        let f = FieldSpec::Rationals;
        let b = base(f);
        // θ(g) = 1 ⊗ g + g ⊗ 1 - g ⊗ g... keep θ(1) = 1 ⊗ 1 and mix legs.
        let theta = LinMap::from_entries(
            f,
            Shape::new([2]),
            Shape::new([2, 2]),
            vec![
                f.one(), f.zero(),
                f.zero(), f.one(),
                f.zero(), f.one(),
                f.zero(), f.zero(),
            ],
        )
        .unwrap();
        let gamma = match solve_gamma(&b.crossed, &theta).unwrap() {
            GammaSolution::Unique(g) => g,
            other => panic!("expected unique gamma, got {other:?}"),
        };
        let p = TwistPair { theta, gamma };
        let r = check_extra_conditions(&b, &p).unwrap();
        assert!(!r.passes("extra2"));
        assert!(r.get("extra2").unwrap().violations[0].at == vec![1]);
    }

    #[test]
    fn bad_pair_trips_cucu1() {
        let f = FieldSpec::Rationals;
        let b = base(f);
        let good = lazy_twist(&b, &lazy_u(f, f.from_i64(2))).unwrap();
        let bad = TwistPair { theta: good.theta.clone(), gamma: TwistPair::identity(&b.crossed).gamma };
        let r = check_cucu_lemmas(&b, &bad).unwrap();
        assert!(!r.passes("cucu1"));
    }

    #[test]
    fn non_counital_pair_is_pinpointed() {
        // u(g) = 2 + g breaks ε_A∘u = ε_C.
        let f = FieldSpec::Rationals;
        let b = base(f);
        let u = LinMap::from_entries(f, Shape::new([2]), Shape::new([2]), vec![f.one(), f.from_i64(2), f.zero(), f.one()]).unwrap();
        let sc = b.c.shape();
        let theta = LinMap::from_basis_images(f, sc.clone(), b.carrier(), |i| {
            e(f, &sc, i).apply(&b.c.comult, 0)?.apply(&u, 0)
        })
        .unwrap();
        let GammaSolution::Unique(gamma) = solve_gamma(&b.crossed, &theta).unwrap() else { panic!() };
        let (_, r) = verify_bialgebra_equivalence(&b, &TwistPair { theta, gamma }).unwrap();
        assert!(!r.passes("extra1"));
        assert!(!r.passes("phi_counital"));
    }

    #[test]
    fn random_lazy_twists_over_f5() {
        let f = FieldSpec::Prime(5);
        let b = base(f);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut seen = 0;
        for _ in 0..10 {
            if let Some(p) = random_lazy_twist(&b, &mut rng).unwrap() {
                seen += 1;
                let (w, _) = derive_coalgebra_twist(&b, &p).unwrap();
                assert_eq!(w, w_prime_short(&b, &p).unwrap());
                let (_, r) = verify_bialgebra_equivalence(&b, &p).unwrap();
                assert!(r.passed(), "{r}");
            }
        }
        assert!(seen > 0);
    }

    #[test]
    fn non_tensor_coalgebra_is_rejected() {
        let f = FieldSpec::Rationals;
        let b = base(f);
        let mut cb = b.fused.clone();
        cb.cocrossed.w = cb.cocrossed.w.scale(&f.from_i64(2));
        assert!(matches!(
            BaseCrossBialgebra::from_cross_bialgebra(b.a.clone(), &cb),
            Err(Error::UnsupportedBase(_))
        ));
        assert!(BaseCrossBialgebra::from_cross_bialgebra(b.a.clone(), &b.fused).is_ok());
        assert_eq!(BaseCrossBialgebra::from_fused(&b.fused).unwrap(), b);
        assert!(matches!(BaseCrossBialgebra::from_fused(&cb), Err(Error::UnsupportedBase(_))));
    }
}
