//! The JSON bundle format: a field, named spaces, named maps and named
//! structures that refer to them.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crossprod::algstruct::{AlgebraData, BialgebraData, CoalgebraData, HopfData, Point, PointedSpace};
use crossprod::catalog::QTStructure;
use crossprod::crossed::{
    CoCrossedData, CrossBialgebraData, CrossedData, MirrorCoCrossedData, MirrorCrossedData, TwistingMapData,
};
use crossprod::exactlin::{FieldSpec, LinMap, Scalar, Shape};
use crossprod::twisteq::TwistPair;

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FieldBlock {
    Q,
    Fp { p: u64 },
}

impl FieldBlock {
    pub fn spec(&self) -> Result<FieldSpec, crossprod::Error> {
        match self {
            FieldBlock::Q => Ok(FieldSpec::Rationals),
            FieldBlock::Fp { p } => FieldSpec::prime(*p),
        }
    }

    pub fn of(f: FieldSpec) -> FieldBlock {
        match f {
            FieldSpec::Rationals => FieldBlock::Q,
            FieldSpec::Prime(p) => FieldBlock::Fp { p },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceBlock {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapBlock {
    pub domain: Vec<usize>,
    pub codomain: Vec<usize>,
    /// Row-major; one row per codomain basis element.
    pub entries: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureBlock {
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(flatten)]
    pub refs: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bundle {
    pub field: FieldBlock,
    #[serde(default)]
    pub spaces: BTreeMap<String, SpaceBlock>,
    #[serde(default)]
    pub maps: BTreeMap<String, MapBlock>,
    #[serde(default)]
    pub structures: BTreeMap<String, StructureBlock>,
}

impl Bundle {
    pub fn new(f: FieldSpec) -> Bundle {
        Bundle { field: FieldBlock::of(f), spaces: BTreeMap::new(), maps: BTreeMap::new(), structures: BTreeMap::new() }
    }

    /// Pretty JSON with a trailing newline; key order is fixed by the maps.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("bundle serializes");
        s.push('\n');
        s
    }
}

/// 1-based line of the first occurrence of `"key"` in `text`, or 1.
fn line_of(text: &str, key: &str) -> usize {
    let needle = format!("\"{key}\"");
    text.find(&needle).map_or(1, |pos| text[..pos].matches('\n').count() + 1)
}

/// Line of the first `"value"` after the `"key":` entry, for dangling references.
fn line_of_ref(text: &str, key: &str, value: &str) -> usize {
    let Some(start) = text.find(&format!("\"{key}\":")) else { return line_of(text, key) };
    let needle = format!("\"{value}\"");
    text[start..]
        .find(&needle)
        .map_or_else(|| line_of(text, key), |pos| text[..start + pos].matches('\n').count() + 1)
}

/// A parsed bundle together with its source, for error context.
pub struct Loaded {
    pub file: String,
    pub text: String,
    pub bundle: Bundle,
    pub field: FieldSpec,
}

impl Loaded {
    pub fn parse(file: &str, text: &str) -> Result<Loaded, CliError> {
        let bundle: Bundle = serde_json::from_str(text).map_err(|e| CliError::Parse {
            file: file.to_string(),
            line: e.line(),
            column: e.column(),
            msg: e.to_string(),
        })?;
        let field = bundle.field.spec().map_err(|e| CliError::Parse {
            file: file.to_string(),
            line: line_of(text, "field"),
            column: 1,
            msg: e.to_string(),
        })?;
        let loaded = Loaded { file: file.to_string(), text: text.to_string(), bundle, field };
        loaded.validate()?;
        Ok(loaded)
    }

    pub fn read(path: &str) -> Result<Loaded, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_string(), source })?;
        Loaded::parse(path, &text)
    }

    /// Resolves every structure once so that all names and shapes are
    /// checked before any computation.
    fn validate(&self) -> Result<(), CliError> {
        for name in self.bundle.spaces.keys() {
            self.space_point(name, "spaces")?;
        }
        for name in self.bundle.maps.keys() {
            self.map(name, "maps")?;
        }
        for name in self.bundle.structures.keys() {
            self.object(name)?;
        }
        Ok(())
    }

    fn line(&self, key: &str) -> usize {
        line_of(&self.text, key)
    }

    fn unknown(&self, name: &str, from: &str) -> CliError {
        CliError::UnknownName { file: self.file.clone(), line: line_of_ref(&self.text, from, name), name: name.to_string(), from: from.to_string() }
    }

    fn shape_err(&self, context: &str, e: impl ToString) -> CliError {
        CliError::Shape { file: self.file.clone(), line: self.line(context), context: context.to_string(), msg: e.to_string() }
    }

    fn scalar(&self, s: &str, context: &str) -> Result<Scalar, CliError> {
        self.field.parse_scalar(s).map_err(|e| CliError::Parse {
            file: self.file.clone(),
            line: self.line(context),
            column: 1,
            msg: format!("in {context}: {e}"),
        })
    }

    pub fn map(&self, name: &str, from: &str) -> Result<LinMap, CliError> {
        let m = self.bundle.maps.get(name).ok_or_else(|| self.unknown(name, from))?;
        let dom = Shape::try_new(m.domain.clone()).map_err(|e| self.shape_err(name, e))?;
        let cod = Shape::try_new(m.codomain.clone()).map_err(|e| self.shape_err(name, e))?;
        if m.entries.len() != cod.total() || m.entries.iter().any(|r| r.len() != dom.total()) {
            return Err(self.shape_err(
                name,
                format!("expected {} rows of length {}", cod.total(), dom.total()),
            ));
        }
        let mut entries = Vec::with_capacity(dom.total() * cod.total());
        for row in &m.entries {
            for s in row {
                entries.push(self.scalar(s, name)?);
            }
        }
        LinMap::from_entries(self.field, dom, cod, entries).map_err(|e| self.shape_err(name, e))
    }

    fn space_point(&self, name: &str, from: &str) -> Result<Vec<Scalar>, CliError> {
        let s = self.bundle.spaces.get(name).ok_or_else(|| self.unknown(name, from))?;
        let Some(point) = &s.point else {
            return Err(self.shape_err(name, "space has no distinguished point"));
        };
        if point.len() != s.dim {
            return Err(self.shape_err(name, format!("point of length {} in dimension {}", point.len(), s.dim)));
        }
        point.iter().map(|x| self.scalar(x, name)).collect()
    }

    fn element_space(&self, name: &str, from: &str) -> Result<PointedSpace, CliError> {
        let p = self.space_point(name, from)?;
        PointedSpace::element(self.field, p).map_err(|e| self.shape_err(name, e))
    }

    fn functional_space(&self, name: &str, from: &str) -> Result<PointedSpace, CliError> {
        let p = self.space_point(name, from)?;
        PointedSpace::functional(self.field, p).map_err(|e| self.shape_err(name, e))
    }

    pub fn structure(&self, name: &str) -> Result<&StructureBlock, CliError> {
        self.bundle.structures.get(name).ok_or_else(|| self.unknown(name, "structures"))
    }

    fn reference(&self, s: &str, key: &str) -> Result<String, CliError> {
        let block = self.structure(s)?;
        block.refs.get(key).cloned().ok_or_else(|| self.shape_err(s, format!("missing reference {key:?}")))
    }

    fn expect_kind(&self, name: &str, kind: &str) -> Result<(), CliError> {
        let found = &self.structure(name)?.kind;
        if found != kind {
            return Err(self.shape_err(name, format!("expected a {kind} structure, found {found}")));
        }
        Ok(())
    }

    fn sub_map(&self, s: &str, key: &str) -> Result<LinMap, CliError> {
        let m = self.reference(s, key)?;
        self.map(&m, s)
    }

    fn wrap<T>(&self, s: &str, r: Result<T, crossprod::Error>) -> Result<T, CliError> {
        r.map_err(|e| self.shape_err(s, e))
    }

    pub fn algebra(&self, s: &str) -> Result<AlgebraData, CliError> {
        self.expect_kind(s, "algebra")?;
        let mult = self.sub_map(s, "mult")?;
        let unit = self.sub_map(s, "unit")?;
        self.wrap(s, AlgebraData::new(mult, unit.entries().to_vec()))
    }

    pub fn coalgebra(&self, s: &str) -> Result<CoalgebraData, CliError> {
        self.expect_kind(s, "coalgebra")?;
        let comult = self.sub_map(s, "comult")?;
        let counit = self.sub_map(s, "counit")?;
        self.wrap(s, CoalgebraData::new(comult, counit))
    }

    pub fn bialgebra(&self, s: &str) -> Result<BialgebraData, CliError> {
        self.expect_kind(s, "bialgebra")?;
        let a = self.algebra(&self.reference(s, "algebra")?)?;
        let c = self.coalgebra(&self.reference(s, "coalgebra")?)?;
        self.wrap(s, BialgebraData::new(a, c))
    }

    pub fn hopf(&self, s: &str) -> Result<HopfData, CliError> {
        self.expect_kind(s, "hopf")?;
        let b = self.bialgebra(&self.reference(s, "bialgebra")?)?;
        let anti = self.sub_map(s, "antipode")?;
        self.wrap(s, HopfData::new(b, anti))
    }

    pub fn crossed(&self, s: &str) -> Result<CrossedData, CliError> {
        self.expect_kind(s, "crossed")?;
        let a = self.algebra(&self.reference(s, "algebra")?)?;
        let v = self.element_space(&self.reference(s, "space")?, s)?;
        let r = self.sub_map(s, "R")?;
        let sigma = self.sub_map(s, "sigma")?;
        self.wrap(s, CrossedData::new(a, v, r, sigma))
    }

    pub fn cocrossed(&self, s: &str) -> Result<CoCrossedData, CliError> {
        self.expect_kind(s, "cocrossed")?;
        let x = self.functional_space(&self.reference(s, "space")?, s)?;
        let c = self.coalgebra(&self.reference(s, "coalgebra")?)?;
        let w = self.sub_map(s, "W")?;
        let rho = self.sub_map(s, "rho")?;
        self.wrap(s, CoCrossedData::new(x, c, w, rho))
    }

    pub fn cross_bialgebra(&self, s: &str) -> Result<CrossBialgebraData, CliError> {
        self.expect_kind(s, "cross_bialgebra")?;
        let cr = self.crossed(&self.reference(s, "crossed")?)?;
        let co = self.cocrossed(&self.reference(s, "cocrossed")?)?;
        self.wrap(s, CrossBialgebraData::new(cr, co))
    }

    pub fn mirror(&self, s: &str) -> Result<MirrorCrossedData, CliError> {
        self.expect_kind(s, "mirror")?;
        let b = self.algebra(&self.reference(s, "algebra")?)?;
        let w = self.element_space(&self.reference(s, "space")?, s)?;
        let p = self.sub_map(s, "P")?;
        let nu = self.sub_map(s, "nu")?;
        self.wrap(s, MirrorCrossedData::new(b, w, p, nu))
    }

    pub fn mirror_cocrossed(&self, s: &str) -> Result<MirrorCoCrossedData, CliError> {
        self.expect_kind(s, "mirror_cocrossed")?;
        let d = self.coalgebra(&self.reference(s, "coalgebra")?)?;
        let y = self.functional_space(&self.reference(s, "space")?, s)?;
        let u = self.sub_map(s, "U")?;
        let eta = self.sub_map(s, "eta")?;
        self.wrap(s, MirrorCoCrossedData::new(d, y, u, eta))
    }

    pub fn mirror_cross_bialgebra(&self, s: &str) -> Result<(MirrorCrossedData, MirrorCoCrossedData), CliError> {
        self.expect_kind(s, "mirror_cross_bialgebra")?;
        let cr = self.mirror(&self.reference(s, "crossed")?)?;
        let co = self.mirror_cocrossed(&self.reference(s, "cocrossed")?)?;
        if cr.carrier() != co.carrier() {
            return Err(self.shape_err(s, format!("carriers {} and {} differ", cr.carrier(), co.carrier())));
        }
        Ok((cr, co))
    }

    pub fn ttp(&self, s: &str) -> Result<TwistingMapData, CliError> {
        self.expect_kind(s, "ttp")?;
        let a = self.algebra(&self.reference(s, "algebra_a")?)?;
        let b = self.algebra(&self.reference(s, "algebra_b")?)?;
        let r = self.sub_map(s, "R")?;
        self.wrap(s, TwistingMapData::new(a, b, r))
    }

    /// The two maps of a pair; shapes are checked against a base later.
    pub fn twist_pair(&self, s: &str) -> Result<TwistPair, CliError> {
        self.expect_kind(s, "twist_pair")?;
        Ok(TwistPair { theta: self.sub_map(s, "theta")?, gamma: self.sub_map(s, "gamma")? })
    }

    pub fn witness(&self, s: &str) -> Result<(LinMap, LinMap), CliError> {
        self.expect_kind(s, "witness")?;
        Ok((self.sub_map(s, "phi")?, self.sub_map(s, "phi_inv")?))
    }

    pub fn qt(&self, s: &str) -> Result<QTStructure, CliError> {
        self.expect_kind(s, "qt")?;
        let h = self.hopf(&self.reference(s, "hopf")?)?;
        let r = self.sub_map(s, "r")?;
        let n = h.dim();
        let r = self.wrap(s, r.image_of(&[]).reshape(Shape::new([n, n])))?;
        self.wrap(s, QTStructure::new(h, r))
    }

    /// Resolves a structure of any type.
    pub fn object(&self, s: &str) -> Result<Object, CliError> {
        let kind = self.structure(s)?.kind.clone();
        Ok(match kind.as_str() {
            "algebra" => Object::Algebra(self.algebra(s)?),
            "coalgebra" => Object::Coalgebra(self.coalgebra(s)?),
            "bialgebra" => Object::Bialgebra(self.bialgebra(s)?),
            "hopf" => Object::Hopf(self.hopf(s)?),
            "crossed" => Object::Crossed(self.crossed(s)?),
            "cocrossed" => Object::CoCrossed(self.cocrossed(s)?),
            "cross_bialgebra" => Object::CrossBialgebra(self.cross_bialgebra(s)?),
            "mirror" => Object::Mirror(self.mirror(s)?),
            "mirror_cocrossed" => Object::MirrorCoCrossed(self.mirror_cocrossed(s)?),
            "mirror_cross_bialgebra" => {
                let (a, b) = self.mirror_cross_bialgebra(s)?;
                Object::MirrorCrossBialgebra(a, b)
            }
            "ttp" => Object::Ttp(self.ttp(s)?),
            "twist_pair" => Object::Pair(self.twist_pair(s)?),
            "witness" => {
                let (phi, phi_inv) = self.witness(s)?;
                Object::Witness(phi, phi_inv)
            }
            "qt" => Object::Qt(self.qt(s)?),
            other => return Err(self.shape_err(s, format!("unknown structure type {other:?}"))),
        })
    }
}

/// A resolved structure.
#[derive(Clone, Debug)]
pub enum Object {
    Algebra(AlgebraData),
    Coalgebra(CoalgebraData),
    Bialgebra(BialgebraData),
    Hopf(HopfData),
    Crossed(CrossedData),
    CoCrossed(CoCrossedData),
    CrossBialgebra(CrossBialgebraData),
    Mirror(MirrorCrossedData),
    MirrorCoCrossed(MirrorCoCrossedData),
    MirrorCrossBialgebra(MirrorCrossedData, MirrorCoCrossedData),
    Ttp(TwistingMapData),
    Pair(TwistPair),
    Witness(LinMap, LinMap),
    Qt(QTStructure),
}

/// Builds bundles from typed data. Maps are named `<structure>.<role>`.
pub struct Writer {
    pub bundle: Bundle,
}

impl Writer {
    pub fn new(f: FieldSpec) -> Writer {
        Writer { bundle: Bundle::new(f) }
    }

    pub fn finish(self) -> Bundle {
        self.bundle
    }

    fn put_map(&mut self, name: String, m: &LinMap) -> String {
        let cols = m.cols();
        let entries = if cols == 0 {
            vec![Vec::new(); m.rows()]
        } else {
            m.entries().chunks(cols).map(|row| row.iter().map(ToString::to_string).collect()).collect()
        };
        let block = MapBlock { domain: m.domain().factors().to_vec(), codomain: m.codomain().factors().to_vec(), entries };
        self.bundle.maps.insert(name.clone(), block);
        name
    }

    fn put_space(&mut self, name: String, v: &PointedSpace) -> String {
        let point = match &v.point {
            Point::Element(x) | Point::Functional(x) => x.iter().map(ToString::to_string).collect(),
        };
        self.bundle.spaces.insert(name.clone(), SpaceBlock { dim: v.dim, point: Some(point) });
        name
    }

    fn put_structure(&mut self, name: &str, kind: &str, refs: &[(&str, String)]) -> String {
        let refs = refs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        self.bundle.structures.insert(name.to_string(), StructureBlock { kind: kind.to_string(), refs });
        name.to_string()
    }

    pub fn algebra(&mut self, name: &str, a: &AlgebraData) -> String {
        let mult = self.put_map(format!("{name}.mult"), &a.mult);
        let unit = self.put_map(format!("{name}.unit"), &a.unit_map());
        self.put_structure(name, "algebra", &[("mult", mult), ("unit", unit)])
    }

    pub fn coalgebra(&mut self, name: &str, c: &CoalgebraData) -> String {
        let comult = self.put_map(format!("{name}.comult"), &c.comult);
        let counit = self.put_map(format!("{name}.counit"), &c.counit);
        self.put_structure(name, "coalgebra", &[("comult", comult), ("counit", counit)])
    }

    pub fn bialgebra(&mut self, name: &str, b: &BialgebraData) -> String {
        let a = self.algebra(&format!("{name}.algebra"), &b.alg);
        let c = self.coalgebra(&format!("{name}.coalgebra"), &b.coa);
        self.put_structure(name, "bialgebra", &[("algebra", a), ("coalgebra", c)])
    }

    pub fn hopf(&mut self, name: &str, h: &HopfData) -> String {
        let b = self.bialgebra(&format!("{name}.bialgebra"), &h.bia);
        let s = self.put_map(format!("{name}.antipode"), &h.antipode);
        self.put_structure(name, "hopf", &[("bialgebra", b), ("antipode", s)])
    }

    pub fn crossed(&mut self, name: &str, d: &CrossedData) -> String {
        let a = self.algebra(&format!("{name}.A"), &d.algebra);
        let v = self.put_space(format!("{name}.V"), &d.space);
        let r = self.put_map(format!("{name}.R"), &d.r);
        let s = self.put_map(format!("{name}.sigma"), &d.sigma);
        self.put_structure(name, "crossed", &[("algebra", a), ("space", v), ("R", r), ("sigma", s)])
    }

    pub fn cocrossed(&mut self, name: &str, d: &CoCrossedData) -> String {
        let x = self.put_space(format!("{name}.X"), &d.space);
        let c = self.coalgebra(&format!("{name}.C"), &d.coalgebra);
        let w = self.put_map(format!("{name}.W"), &d.w);
        let rho = self.put_map(format!("{name}.rho"), &d.rho);
        self.put_structure(name, "cocrossed", &[("space", x), ("coalgebra", c), ("W", w), ("rho", rho)])
    }

    pub fn cross_bialgebra(&mut self, name: &str, d: &CrossBialgebraData) -> String {
        let cr = self.crossed(&format!("{name}.crossed"), &d.crossed);
        let co = self.cocrossed(&format!("{name}.cocrossed"), &d.cocrossed);
        self.put_structure(name, "cross_bialgebra", &[("crossed", cr), ("cocrossed", co)])
    }

    pub fn mirror(&mut self, name: &str, d: &MirrorCrossedData) -> String {
        let b = self.algebra(&format!("{name}.B"), &d.algebra);
        let w = self.put_space(format!("{name}.W"), &d.space);
        let p = self.put_map(format!("{name}.P"), &d.p);
        let nu = self.put_map(format!("{name}.nu"), &d.nu);
        self.put_structure(name, "mirror", &[("algebra", b), ("space", w), ("P", p), ("nu", nu)])
    }

    pub fn mirror_cocrossed(&mut self, name: &str, d: &MirrorCoCrossedData) -> String {
        let c = self.coalgebra(&format!("{name}.D"), &d.coalgebra);
        let y = self.put_space(format!("{name}.Y"), &d.space);
        let u = self.put_map(format!("{name}.U"), &d.u);
        let eta = self.put_map(format!("{name}.eta"), &d.eta);
        self.put_structure(name, "mirror_cocrossed", &[("coalgebra", c), ("space", y), ("U", u), ("eta", eta)])
    }

    pub fn mirror_cross_bialgebra(&mut self, name: &str, cr: &MirrorCrossedData, co: &MirrorCoCrossedData) -> String {
        let a = self.mirror(&format!("{name}.crossed"), cr);
        let b = self.mirror_cocrossed(&format!("{name}.cocrossed"), co);
        self.put_structure(name, "mirror_cross_bialgebra", &[("crossed", a), ("cocrossed", b)])
    }

    pub fn ttp(&mut self, name: &str, d: &TwistingMapData) -> String {
        let a = self.algebra(&format!("{name}.A"), &d.a);
        let b = self.algebra(&format!("{name}.B"), &d.b);
        let r = self.put_map(format!("{name}.R"), &d.r);
        self.put_structure(name, "ttp", &[("algebra_a", a), ("algebra_b", b), ("R", r)])
    }

    pub fn twist_pair(&mut self, name: &str, p: &TwistPair) -> String {
        let t = self.put_map(format!("{name}.theta"), &p.theta);
        let g = self.put_map(format!("{name}.gamma"), &p.gamma);
        self.put_structure(name, "twist_pair", &[("theta", t), ("gamma", g)])
    }

    pub fn witness(&mut self, name: &str, phi: &LinMap, phi_inv: &LinMap) -> String {
        let a = self.put_map(format!("{name}.phi"), phi);
        let b = self.put_map(format!("{name}.phi_inv"), phi_inv);
        self.put_structure(name, "witness", &[("phi", a), ("phi_inv", b)])
    }

    pub fn qt(&mut self, name: &str, qt: &QTStructure) -> String {
        let h = self.hopf(&format!("{name}.H"), &qt.h);
        let r = LinMap::from_basis_images(qt.h.field(), Shape::scalar(), qt.r.shape().clone(), |_| Ok(qt.r.clone()))
            .expect("shapes agree");
        let r = self.put_map(format!("{name}.r"), &r);
        self.put_structure(name, "qt", &[("hopf", h), ("r", r)])
    }
}
