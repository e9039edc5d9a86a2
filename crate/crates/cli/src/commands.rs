//! Command implementations. Each returns a report and, optionally, a bundle
//! to write.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crossprod::algstruct::{check_algebra, check_bialgebra, check_coalgebra, check_hopf, dualize_hopf};
use crossprod::bialgeq::{extract_bialgebra_pair, random_lazy_twist, verify_bialgebra_equivalence, BaseCrossBialgebra};
use crossprod::catalog::{
    check_qt, drinfeld_double, group_algebra, majid_equivalence_demo, majid_map, qt_structure_z2,
    radford_biproduct_z2, sweedler_h4,
};
use crossprod::corpus::{cocycle_z4, tensor_product_crossed};
use crossprod::crossed::{
    assemble_cross_bialgebra, assemble_mirror_cross_bialgebra, build_crossed_coproduct, build_crossed_product,
    build_mirror_crossed, build_mirror_crossed_coproduct, build_twisted_tensor, CrossedData,
};
use crossprod::exactlin::FieldSpec;
use crossprod::twisteq::{
    build_phi, derive_twisted_data, extract_twisting_pair, random_pair, verify_crossed_equivalence, TwistPair,
};
use crossprod::CheckReport;

use crate::bundle::{Bundle, Loaded, Object, Writer};
use crate::error::CliError;

pub struct Outcome {
    pub report: CheckReport,
    pub bundle: Option<Bundle>,
}

impl Outcome {
    fn report(report: CheckReport) -> Outcome {
        Outcome { report, bundle: None }
    }
}

/// The axiom suite for one resolved structure.
fn suite(obj: &Object) -> Result<CheckReport, CliError> {
    Ok(match obj {
        Object::Algebra(a) => check_algebra(a),
        Object::Coalgebra(c) => check_coalgebra(c),
        Object::Bialgebra(b) => check_bialgebra(b),
        Object::Hopf(h) => check_hopf(h),
        Object::Crossed(d) => build_crossed_product(d)?.1,
        Object::CoCrossed(d) => build_crossed_coproduct(d)?.1,
        Object::CrossBialgebra(d) => assemble_cross_bialgebra(&d.crossed, &d.cocrossed)?.2,
        Object::Mirror(d) => build_mirror_crossed(d)?.1,
        Object::MirrorCoCrossed(d) => build_mirror_crossed_coproduct(d)?.1,
        Object::MirrorCrossBialgebra(a, b) => assemble_mirror_cross_bialgebra(a, b)?.1,
        Object::Ttp(d) => build_twisted_tensor(d)?.1,
        Object::Qt(q) => {
            let mut r = CheckReport::new();
            r.merge_scoped("hopf", check_hopf(&q.h));
            r.merge(check_qt(q)?);
            r
        }
        Object::Pair(_) | Object::Witness(..) => {
            let mut r = CheckReport::new();
            r.note("nothing to check on its own");
            r
        }
    })
}

/// Runs the suite of every structure, or of the named one.
pub fn check(loaded: &Loaded, only: Option<&str>) -> Result<Outcome, CliError> {
    let mut report = CheckReport::new();
    let names: Vec<String> = match only {
        Some(n) => {
            loaded.structure(n)?;
            vec![n.to_string()]
        }
        None => loaded.bundle.structures.keys().cloned().collect(),
    };
    for name in names {
        report.merge_scoped(&name, suite(&loaded.object(&name)?)?);
    }
    Ok(Outcome::report(report))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum BuildKind {
    Crossed,
    Cocrossed,
    Ttp,
    CrossBialgebra,
    Mirror,
}

/// Builds the named structure and exports what it produces.
pub fn build(loaded: &Loaded, kind: BuildKind, name: &str) -> Result<Outcome, CliError> {
    let obj = loaded.object(name)?;
    let mut w = Writer::new(loaded.field);
    let out = format!("{name}.built");
    let report = match (kind, &obj) {
        (BuildKind::Crossed, Object::Crossed(d)) => {
            let (a, r) = build_crossed_product(d)?;
            w.algebra(&out, &a);
            r
        }
        (BuildKind::Cocrossed, Object::CoCrossed(d)) => {
            let (c, r) = build_crossed_coproduct(d)?;
            w.coalgebra(&out, &c);
            r
        }
        (BuildKind::Ttp, Object::Ttp(d)) => {
            let (a, r) = build_twisted_tensor(d)?;
            w.algebra(&out, &a);
            r
        }
        (BuildKind::CrossBialgebra, Object::CrossBialgebra(d)) => {
            let (_, b, r) = assemble_cross_bialgebra(&d.crossed, &d.cocrossed)?;
            w.bialgebra(&out, &b);
            r
        }
        (BuildKind::Mirror, Object::Mirror(d)) => {
            let (a, r) = build_mirror_crossed(d)?;
            w.algebra(&out, &a);
            r
        }
        (BuildKind::Mirror, Object::MirrorCoCrossed(d)) => {
            let (c, r) = build_mirror_crossed_coproduct(d)?;
            w.coalgebra(&out, &c);
            r
        }
        (BuildKind::Mirror, Object::MirrorCrossBialgebra(a, b)) => {
            let (bia, r) = assemble_mirror_cross_bialgebra(a, b)?;
            w.bialgebra(&out, &bia);
            r
        }
        _ => {
            return Err(CliError::Usage(format!(
                "structure {name:?} of type {} cannot be built as {kind:?}",
                loaded.structure(name)?.kind
            )))
        }
    };
    Ok(Outcome { report, bundle: Some(w.finish()) })
}

/// Where a pair comes from: `identity`, a structure of the main bundle, or
/// `path[:name]` of another bundle.
pub fn resolve_pair(loaded: &Loaded, spec: &str, base: &CrossedData) -> Result<TwistPair, CliError> {
    if spec == "identity" {
        return Ok(TwistPair::identity(base));
    }
    if loaded.bundle.structures.contains_key(spec) {
        return check_pair(loaded.twist_pair(spec)?, base);
    }
    let (path, name) = match spec.rsplit_once(':') {
        Some((p, n)) if std::path::Path::new(p).exists() => (p, Some(n)),
        _ => (spec, None),
    };
    let other = Loaded::read(path)?;
    if other.field != loaded.field {
        return Err(CliError::Usage(format!("{path}: field {} differs from {}", other.field, loaded.field)));
    }
    let name = match name {
        Some(n) => n.to_string(),
        None => {
            let pairs: Vec<&String> =
                other.bundle.structures.iter().filter(|(_, s)| s.kind == "twist_pair").map(|(k, _)| k).collect();
            match pairs.as_slice() {
                [one] => (*one).clone(),
                _ => return Err(CliError::Usage(format!("{path}: expected exactly one twist_pair structure"))),
            }
        }
    };
    check_pair(other.twist_pair(&name)?, base)
}

fn check_pair(p: TwistPair, base: &CrossedData) -> Result<TwistPair, CliError> {
    Ok(TwistPair::new(base, p.theta, p.gamma)?)
}

/// Deforms a crossed product (or a cross product bialgebra with the tensor
/// coalgebra) by a pair and verifies the resulting equivalence.
pub fn twist(loaded: &Loaded, base: &str, pair: &str) -> Result<Outcome, CliError> {
    let mut w = Writer::new(loaded.field);
    let mut report = CheckReport::new();
    match loaded.object(base)? {
        Object::Crossed(d) => twist_crossed(loaded, &d, pair, &mut w, &mut report)?,
        Object::Ttp(t) => twist_crossed(loaded, &t.as_crossed(), pair, &mut w, &mut report)?,
        Object::CrossBialgebra(cb) => {
            let b = BaseCrossBialgebra::from_fused(&cb)?;
            let p = resolve_pair(loaded, pair, &b.crossed)?;
            let (res, r) = verify_bialgebra_equivalence(&b, &p)?;
            report.merge(r);
            w.cross_bialgebra(&format!("{base}.primed"), &res.primed);
            w.witness(&format!("{base}.phi"), &res.witness.phi, &res.witness.phi_inv);
        }
        _ => {
            return Err(CliError::Usage(format!(
                "structure {base:?} is neither crossed, ttp nor cross_bialgebra"
            )))
        }
    }
    Ok(Outcome { report, bundle: Some(w.finish()) })
}

fn twist_crossed(
    loaded: &Loaded,
    d: &CrossedData,
    pair: &str,
    w: &mut Writer,
    report: &mut CheckReport,
) -> Result<(), CliError> {
    let p = resolve_pair(loaded, pair, d)?;
    let (primed, r) = derive_twisted_data(d, &p)?;
    report.merge(r);
    w.crossed("primed", &primed);
    match build_phi(d, &p) {
        Ok(wit) => {
            report.merge(verify_crossed_equivalence(&primed, d, &wit)?);
            w.witness("phi", &wit.phi, &wit.phi_inv);
        }
        Err(crossprod::Error::NotInvertible(msg)) => report.flag("phi_inverse", false, msg),
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

/// Recovers the pair from a witness `φ : primed -> base`.
pub fn extract(loaded: &Loaded, base: &str, primed: &str, witness: &str) -> Result<Outcome, CliError> {
    let (phi, phi_inv) = loaded.witness(witness)?;
    let mut w = Writer::new(loaded.field);
    let (pair, report) = match (loaded.object(base)?, loaded.object(primed)?) {
        (Object::Crossed(b), Object::Crossed(p)) => extract_twisting_pair(&p, &b, &phi, &phi_inv)?,
        (Object::CrossBialgebra(b), Object::CrossBialgebra(p)) => {
            let b = BaseCrossBialgebra::from_fused(&b)?;
            extract_bialgebra_pair(&b, &p, &phi, &phi_inv)?
        }
        _ => {
            return Err(CliError::Usage(
                "base and primed must both be crossed or both be cross_bialgebra".into(),
            ))
        }
    };
    w.twist_pair("pair", &pair);
    Ok(Outcome { report, bundle: Some(w.finish()) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Demo {
    /// The biproduct of a quasitriangular k[Z2] and its double.
    Majid,
    /// Axiom suite of the double of Sweedler's algebra.
    DoubleH4,
    /// A random lazy twist of k[Z2] ⊗ k[Z2], forward and back.
    Lazy,
    /// A random pair on k[Z2] ⊗ k[x]/x^2, forward and back.
    Twist,
}

const DEMO_DRAWS: usize = 64;

/// Draws until the sampler yields a pair; records the draw count, or a failed
/// `sampled_pair` check when every draw is rejected.
fn first_sample<T>(
    r: &mut CheckReport,
    mut sample: impl FnMut(&mut ChaCha8Rng) -> crossprod::Result<Option<T>>,
    rng: &mut ChaCha8Rng,
) -> crossprod::Result<Option<T>> {
    for draw in 1..=DEMO_DRAWS {
        if let Some(x) = sample(rng)? {
            r.note(format!("pair found on draw {draw}"));
            return Ok(Some(x));
        }
    }
    r.flag("sampled_pair", false, format!("no usable pair in {DEMO_DRAWS} draws"));
    Ok(None)
}

pub fn demo(which: Demo, f: FieldSpec, seed: u64) -> Result<Outcome, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let report = match which {
        Demo::Majid => majid_equivalence_demo(f)?,
        Demo::DoubleH4 => {
            let d = drinfeld_double(&sweedler_h4(f)?)?;
            let mut r = CheckReport::new();
            r.merge_scoped("double", check_bialgebra(&d.carrier));
            r
        }
        Demo::Lazy => {
            let h = group_algebra(2, f);
            let base = BaseCrossBialgebra::new(h.bia.clone(), h.coa().clone(), tensor_product_crossed(h.alg(), h.alg()))?;
            let mut r = CheckReport::new();
            match first_sample(&mut r, |rng| random_lazy_twist(&base, rng), &mut rng)? {
                Some(p) => {
                    let (res, fr) = verify_bialgebra_equivalence(&base, &p)?;
                    r.merge_scoped("forward", fr);
                    let (back, er) =
                        extract_bialgebra_pair(&base, &res.primed, &res.witness.phi, &res.witness.phi_inv)?;
                    r.merge_scoped("extract", er);
                    r.flag("round_trip", back == p, "extracted pair differs");
                }
                None => {}
            }
            r
        }
        Demo::Twist => {
            let h = group_algebra(2, f);
            let dual_numbers = crossprod::corpus::small_algebras(f)
                .into_iter()
                .find(|(n, _)| n == "k[x]/x^2")
                .expect("listed")
                .1;
            let base = tensor_product_crossed(h.alg(), &dual_numbers);
            let mut r = CheckReport::new();
            match first_sample(&mut r, |rng| random_pair(&base, rng), &mut rng)? {
                Some(p) => {
                    let (primed, dr) = derive_twisted_data(&base, &p)?;
                    r.merge_scoped("forward", dr);
                    let wit = build_phi(&base, &p)?;
                    r.merge_scoped("forward", verify_crossed_equivalence(&primed, &base, &wit)?);
                    let (back, er) = extract_twisting_pair(&primed, &base, &wit.phi, &wit.phi_inv)?;
                    r.merge_scoped("extract", er);
                    r.flag("round_trip", back == p, "extracted pair differs");
                }
                None => {}
            }
            r
        }
    };
    Ok(Outcome::report(report))
}

/// Names accepted by `export`.
pub const CATALOG: [&str; 12] = [
    "z1",
    "z2",
    "z3",
    "z4",
    "sweedler",
    "sweedler-dual",
    "qt-z2",
    "double-z2",
    "double-sweedler",
    "biproduct-z2",
    "majid-z2",
    "cocycle-z4",
];

/// A catalog object as a bundle.
pub fn export(name: &str, f: FieldSpec) -> Result<Bundle, CliError> {
    let mut w = Writer::new(f);
    match name {
        "z1" | "z2" | "z3" | "z4" => {
            let n = name[1..].parse().expect("digit");
            w.hopf(name, &group_algebra(n, f));
        }
        "sweedler" => {
            w.hopf(name, &sweedler_h4(f)?);
        }
        "sweedler-dual" => {
            w.hopf(name, &dualize_hopf(&sweedler_h4(f)?));
        }
        "qt-z2" => {
            w.qt(name, &qt_structure_z2(f)?);
        }
        "double-z2" | "double-sweedler" => {
            let h = if name == "double-z2" { group_algebra(2, f) } else { sweedler_h4(f)? };
            let d = drinfeld_double(&h)?;
            w.bialgebra(name, &d.carrier);
            w.mirror_cross_bialgebra(&format!("{name}.mirror"), &d.as_mirror, &d.as_mirror_co);
        }
        "biproduct-z2" => {
            let b = radford_biproduct_z2(f)?;
            w.mirror_cross_bialgebra(name, &b.crossed, &b.cocrossed);
        }
        "majid-z2" => {
            let qt = qt_structure_z2(f)?;
            let d = drinfeld_double(&qt.h)?;
            let b = radford_biproduct_z2(f)?;
            w.mirror_cross_bialgebra("double", &d.as_mirror, &d.as_mirror_co);
            w.mirror_cross_bialgebra("biproduct", &b.crossed, &b.cocrossed);
            let phi = majid_map(&qt)?;
            let phi_inv = phi.inverse().ok_or_else(|| crossprod::Error::NotInvertible("majid map".into()))?;
            w.witness("phi", &phi, &phi_inv);
        }
        "cocycle-z4" => {
            w.crossed(name, &cocycle_z4(f, f.from_i64(3), false)?);
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown catalog object {other:?}; known: {}",
                CATALOG.join(", ")
            )))
        }
    }
    Ok(w.finish())
}
