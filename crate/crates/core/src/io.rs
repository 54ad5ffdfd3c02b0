//! Canonical JSON documents.
//!
//! A document is `{"kind": ..., "schema_version": 1, "body": ...}`. Output has
//! sorted keys, sparse tensors sorted by `(i, j, k)` with zero entries
//! omitted, and reduced scalars; input must already be in that form, so
//! `serialize(parse(text)) == text` for every accepted document.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::de::IgnoredAny;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::action::{LeibnizAction, SplitExtension};
use crate::algebra::{validate_algebra, LeibnizAlgebra, LinearMorphism};
use crate::covering::{check_covering, check_covering_xmod, GroupoidAction};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::groupoid::{GroupoidMorphism, InternalGroupoid};
use crate::linalg::Matrix;
use crate::tensor::Tensor3;
use crate::xmod::{kernel_of_boundary, CrossedModule, XModMorphism};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Algebra,
    Morphism,
    Action,
    Extension,
    Xmod,
    XmodMorphism,
    Groupoid,
    GpdMorphism,
    GpdAction,
}

impl Kind {
    pub const ALL: [Kind; 9] = [
        Kind::Algebra,
        Kind::Morphism,
        Kind::Action,
        Kind::Extension,
        Kind::Xmod,
        Kind::XmodMorphism,
        Kind::Groupoid,
        Kind::GpdMorphism,
        Kind::GpdAction,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Kind::Algebra => "algebra",
            Kind::Morphism => "morphism",
            Kind::Action => "action",
            Kind::Extension => "extension",
            Kind::Xmod => "xmod",
            Kind::XmodMorphism => "xmod_morphism",
            Kind::Groupoid => "groupoid",
            Kind::GpdMorphism => "gpd_morphism",
            Kind::GpdAction => "gpd_action",
        }
    }

    pub fn from_label(s: &str) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| k.label() == s)
    }
}

/// Any structure a document can carry. `Candidate` is an algebra document
/// whose tensor fails the Leibniz identity; it still parses so that it can
/// be reported on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    Algebra(LeibnizAlgebra),
    Candidate { tensor: Tensor3, basis: Vec<String> },
    Morphism(LinearMorphism),
    Action(LeibnizAction),
    Extension(SplitExtension),
    XMod(CrossedModule),
    XModMorphism(XModMorphism),
    Groupoid(InternalGroupoid),
    GpdMorphism(GroupoidMorphism),
    GpdAction(GroupoidAction),
}

impl Structure {
    pub fn kind(&self) -> Kind {
        match self {
            Structure::Algebra(_) | Structure::Candidate { .. } => Kind::Algebra,
            Structure::Morphism(_) => Kind::Morphism,
            Structure::Action(_) => Kind::Action,
            Structure::Extension(_) => Kind::Extension,
            Structure::XMod(_) => Kind::Xmod,
            Structure::XModMorphism(_) => Kind::XmodMorphism,
            Structure::Groupoid(_) => Kind::Groupoid,
            Structure::GpdMorphism(_) => Kind::GpdMorphism,
            Structure::GpdAction(_) => Kind::GpdAction,
        }
    }

    pub fn report(&self) -> Report {
        report(self)
    }

    pub fn is_valid(&self) -> bool {
        self.report().valid()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub schema_version: u32,
    pub body: Structure,
}

impl Document {
    pub fn new(body: Structure) -> Self {
        Document {
            schema_version: SCHEMA_VERSION,
            body,
        }
    }

    pub fn kind(&self) -> Kind {
        self.body.kind()
    }
}

impl From<Structure> for Document {
    fn from(body: Structure) -> Self {
        Document::new(body)
    }
}

// Wire format.

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawField {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<u32>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    k: usize,
    c: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProduct {
    i: usize,
    j: usize,
    out: Vec<RawTerm>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    field: RawField,
    dim: usize,
    basis: Vec<String>,
    brackets: Vec<RawProduct>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMorphism {
    source: RawAlgebra,
    target: RawAlgebra,
    matrix: RawMatrix,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAction {
    actor: RawAlgebra,
    actee: RawAlgebra,
    lambda: Vec<RawProduct>,
    rho: Vec<RawProduct>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExtension {
    kernel: RawAlgebra,
    middle: RawAlgebra,
    base: RawAlgebra,
    i: RawMatrix,
    p: RawMatrix,
    s: RawMatrix,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawXMod {
    l1: RawAlgebra,
    l0: RawAlgebra,
    boundary: RawMatrix,
    action: RawAction,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawXModMorphism {
    source: RawXMod,
    target: RawXMod,
    f1: RawMatrix,
    f0: RawMatrix,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroupoid {
    arrows: RawAlgebra,
    objects: RawAlgebra,
    d0: RawMatrix,
    d1: RawMatrix,
    eps: RawMatrix,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGpdMorphism {
    source: RawGroupoid,
    target: RawGroupoid,
    on_arrows: RawMatrix,
    on_objects: RawMatrix,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGpdAction {
    groupoid: RawGroupoid,
    algebra: RawAlgebra,
    omega: RawMatrix,
    act: RawMatrix,
    pullback_basis: Vec<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHeader {
    kind: String,
    schema_version: u32,
    #[allow(dead_code)]
    body: IgnoredAny,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDoc<T> {
    kind: String,
    schema_version: u32,
    body: T,
}

// Structure -> wire.

fn field_raw(f: FieldSpec) -> RawField {
    match f {
        FieldSpec::Rational => RawField {
            kind: "rational".into(),
            p: None,
        },
        FieldSpec::Prime(p) => RawField {
            kind: "prime".into(),
            p: Some(p),
        },
    }
}

fn sparse_raw(t: &Tensor3) -> Vec<RawProduct> {
    let mut out: Vec<RawProduct> = Vec::new();
    for (i, j, k, c) in t.entries() {
        let term = RawTerm { k, c: c.to_string() };
        match out.last_mut() {
            Some(last) if last.i == i && last.j == j => last.out.push(term),
            _ => out.push(RawProduct { i, j, out: vec![term] }),
        }
    }
    out
}

fn tensor_raw(t: &Tensor3, basis: &[String]) -> RawAlgebra {
    RawAlgebra {
        field: field_raw(t.field()),
        dim: basis.len(),
        basis: basis.to_vec(),
        brackets: sparse_raw(t),
    }
}

fn algebra_raw(a: &LeibnizAlgebra) -> RawAlgebra {
    tensor_raw(a.tensor(), a.basis_names())
}

fn vector_raw(v: &[Scalar]) -> Vec<String> {
    v.iter().map(|c| c.to_string()).collect()
}

fn matrix_raw(m: &Matrix) -> RawMatrix {
    RawMatrix {
        rows: m.rows(),
        cols: m.cols(),
        entries: (0..m.rows()).map(|r| vector_raw(m.row(r))).collect(),
    }
}

fn action_raw(a: &LeibnizAction) -> RawAction {
    RawAction {
        actor: algebra_raw(a.actor()),
        actee: algebra_raw(a.actee()),
        lambda: sparse_raw(a.left()),
        rho: sparse_raw(a.right()),
    }
}

fn xmod_raw(x: &CrossedModule) -> RawXMod {
    RawXMod {
        l1: algebra_raw(x.l1()),
        l0: algebra_raw(x.l0()),
        boundary: matrix_raw(x.boundary().matrix()),
        action: action_raw(x.action()),
    }
}

fn groupoid_raw(g: &InternalGroupoid) -> RawGroupoid {
    RawGroupoid {
        arrows: algebra_raw(g.arrows()),
        objects: algebra_raw(g.objects()),
        d0: matrix_raw(g.d0().matrix()),
        d1: matrix_raw(g.d1().matrix()),
        eps: matrix_raw(g.eps().matrix()),
    }
}

fn body_value(s: &Structure) -> serde_json::Result<Value> {
    match s {
        Structure::Algebra(a) => serde_json::to_value(algebra_raw(a)),
        Structure::Candidate { tensor, basis } => serde_json::to_value(tensor_raw(tensor, basis)),
        Structure::Morphism(m) => serde_json::to_value(RawMorphism {
            source: algebra_raw(m.source()),
            target: algebra_raw(m.target()),
            matrix: matrix_raw(m.matrix()),
        }),
        Structure::Action(a) => serde_json::to_value(action_raw(a)),
        Structure::Extension(e) => serde_json::to_value(RawExtension {
            kernel: algebra_raw(e.kernel_alg()),
            middle: algebra_raw(e.middle_alg()),
            base: algebra_raw(e.base_alg()),
            i: matrix_raw(e.i().matrix()),
            p: matrix_raw(e.p().matrix()),
            s: matrix_raw(e.s().matrix()),
        }),
        Structure::XMod(x) => serde_json::to_value(xmod_raw(x)),
        Structure::XModMorphism(m) => serde_json::to_value(RawXModMorphism {
            source: xmod_raw(m.source()),
            target: xmod_raw(m.target()),
            f1: matrix_raw(m.f1().matrix()),
            f0: matrix_raw(m.f0().matrix()),
        }),
        Structure::Groupoid(g) => serde_json::to_value(groupoid_raw(g)),
        Structure::GpdMorphism(p) => serde_json::to_value(RawGpdMorphism {
            source: groupoid_raw(p.source()),
            target: groupoid_raw(p.target()),
            on_arrows: matrix_raw(p.on_arrows().matrix()),
            on_objects: matrix_raw(p.on_objects().matrix()),
        }),
        Structure::GpdAction(a) => serde_json::to_value(RawGpdAction {
            groupoid: groupoid_raw(a.groupoid()),
            algebra: algebra_raw(a.algebra()),
            omega: matrix_raw(a.omega().matrix()),
            act: matrix_raw(a.act_matrix()),
            pullback_basis: a.pullback().basis().iter().map(|v| vector_raw(v)).collect(),
        }),
    }
}

/// The document as a JSON value with sorted keys.
pub fn to_value(doc: &Document) -> Value {
    let body = body_value(&doc.body).expect("wire types always serialize");
    json!({
        "kind": doc.kind().label(),
        "schema_version": doc.schema_version,
        "body": body,
    })
}

/// Canonical pretty form, terminated by a newline.
pub fn serialize(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(&to_value(doc)).expect("values always serialize");
    s.push('\n');
    s
}

/// Canonical single-line form, without a trailing newline.
pub fn serialize_compact(doc: &Document) -> String {
    serde_json::to_string(&to_value(doc)).expect("values always serialize")
}

// Wire -> structure.

fn perr(path: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_string(),
        message: message.into(),
    }
}

fn at(path: &str, e: Error) -> Error {
    match e {
        Error::Parse { .. } => e,
        Error::Invalid(m) => Error::Invalid(format!("{path}: {m}")),
        other => perr(path, other.to_string()),
    }
}

fn field_from(raw: &RawField, path: &str) -> Result<FieldSpec> {
    match (raw.kind.as_str(), raw.p) {
        ("rational", None) => Ok(FieldSpec::Rational),
        ("prime", Some(p)) => FieldSpec::prime(p).map_err(|e| at(&format!("{path}.p"), e)),
        _ => Err(perr(path, "expected {\"kind\": \"rational\"} or {\"kind\": \"prime\", \"p\": p}")),
    }
}

fn scalar(f: FieldSpec, text: &str, path: &str) -> Result<Scalar> {
    f.parse_scalar(text).map_err(|e| at(path, e))
}

fn sparse(f: FieldSpec, dims: [usize; 3], raw: &[RawProduct], path: &str) -> Result<Tensor3> {
    let mut entries = Vec::new();
    let mut last_ij: Option<(usize, usize)> = None;
    for (n, prod) in raw.iter().enumerate() {
        let p = format!("{path}[{n}]");
        if prod.i >= dims[0] || prod.j >= dims[1] {
            return Err(perr(&p, format!("index ({}, {}) out of range", prod.i, prod.j)));
        }
        if last_ij.is_some_and(|l| l >= (prod.i, prod.j)) {
            return Err(perr(&p, "entries must be strictly increasing in (i, j)"));
        }
        last_ij = Some((prod.i, prod.j));
        if prod.out.is_empty() {
            return Err(perr(&format!("{p}.out"), "empty output list; omit the entry instead"));
        }
        let mut last_k = None;
        for (m, term) in prod.out.iter().enumerate() {
            let tp = format!("{p}.out[{m}]");
            if term.k >= dims[2] {
                return Err(perr(&format!("{tp}.k"), format!("index {} out of range", term.k)));
            }
            if last_k.is_some_and(|l| l >= term.k) {
                return Err(perr(&tp, "terms must be strictly increasing in k"));
            }
            last_k = Some(term.k);
            let c = scalar(f, &term.c, &format!("{tp}.c"))?;
            if c.is_zero() {
                return Err(perr(&format!("{tp}.c"), "zero coefficients must be omitted"));
            }
            entries.push((prod.i, prod.j, term.k, c));
        }
    }
    Tensor3::from_entries(f, dims, entries).map_err(|e| at(path, e))
}

fn candidate(raw: &RawAlgebra, path: &str) -> Result<(Tensor3, Vec<String>)> {
    let f = field_from(&raw.field, &format!("{path}.field"))?;
    let n = raw.dim;
    if raw.basis.len() != n {
        return Err(perr(&format!("{path}.basis"), format!("expected {n} names, found {}", raw.basis.len())));
    }
    let t = sparse(f, [n, n, n], &raw.brackets, &format!("{path}.brackets"))?;
    Ok((t, raw.basis.clone()))
}

fn algebra(raw: &RawAlgebra, path: &str) -> Result<Arc<LeibnizAlgebra>> {
    let (t, basis) = candidate(raw, path)?;
    LeibnizAlgebra::new(t, Some(basis))
        .map(Arc::new)
        .map_err(|e| at(path, e))
}

fn same_field(expected: FieldSpec, found: FieldSpec, path: &str) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(at(path, Error::FieldMismatch(expected.to_string(), found.to_string())))
    }
}

fn matrix(f: FieldSpec, raw: &RawMatrix, rows: usize, cols: usize, path: &str) -> Result<Matrix> {
    if raw.rows != rows || raw.cols != cols {
        return Err(perr(
            path,
            format!("expected a {rows}x{cols} matrix, found {}x{}", raw.rows, raw.cols),
        ));
    }
    if raw.entries.len() != rows {
        return Err(perr(&format!("{path}.entries"), format!("expected {rows} rows, found {}", raw.entries.len())));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for (r, row) in raw.entries.iter().enumerate() {
        let rp = format!("{path}.entries[{r}]");
        if row.len() != cols {
            return Err(perr(&rp, format!("expected {cols} entries, found {}", row.len())));
        }
        for (c, text) in row.iter().enumerate() {
            data.push(scalar(f, text, &format!("{rp}[{c}]"))?);
        }
    }
    Matrix::new(f, rows, cols, data).map_err(|e| at(path, e))
}

fn morphism_between(
    source: &Arc<LeibnizAlgebra>,
    target: &Arc<LeibnizAlgebra>,
    raw: &RawMatrix,
    path: &str,
) -> Result<LinearMorphism> {
    same_field(source.field(), target.field(), path)?;
    let m = matrix(source.field(), raw, target.dim(), source.dim(), path)?;
    LinearMorphism::new(source.clone(), target.clone(), m).map_err(|e| at(path, e))
}

fn action_from(raw: &RawAction, path: &str) -> Result<LeibnizAction> {
    let actor = algebra(&raw.actor, &format!("{path}.actor"))?;
    let actee = algebra(&raw.actee, &format!("{path}.actee"))?;
    let f = actor.field();
    same_field(f, actee.field(), &format!("{path}.actee.field"))?;
    let (l, m) = (actor.dim(), actee.dim());
    let left = sparse(f, [l, m, m], &raw.lambda, &format!("{path}.lambda"))?;
    let right = sparse(f, [m, l, m], &raw.rho, &format!("{path}.rho"))?;
    LeibnizAction::new(actor, actee, left, right).map_err(|e| at(path, e))
}

fn xmod_from(raw: &RawXMod, path: &str) -> Result<CrossedModule> {
    let l1 = algebra(&raw.l1, &format!("{path}.l1"))?;
    let l0 = algebra(&raw.l0, &format!("{path}.l0"))?;
    let boundary = morphism_between(&l1, &l0, &raw.boundary, &format!("{path}.boundary"))?;
    let action = action_from(&raw.action, &format!("{path}.action"))?;
    if action.actor() != &l0 || action.actee() != &l1 {
        return Err(perr(&format!("{path}.action"), "action must be of l0 on l1"));
    }
    CrossedModule::new(boundary, action).map_err(|e| at(path, e))
}

fn groupoid_from(raw: &RawGroupoid, path: &str) -> Result<InternalGroupoid> {
    let arrows = algebra(&raw.arrows, &format!("{path}.arrows"))?;
    let objects = algebra(&raw.objects, &format!("{path}.objects"))?;
    let d0 = morphism_between(&arrows, &objects, &raw.d0, &format!("{path}.d0"))?;
    let d1 = morphism_between(&arrows, &objects, &raw.d1, &format!("{path}.d1"))?;
    let eps = morphism_between(&objects, &arrows, &raw.eps, &format!("{path}.eps"))?;
    InternalGroupoid::new(arrows, objects, d0.matrix().clone(), d1.matrix().clone(), eps.matrix().clone())
        .map_err(|e| at(path, e))
}

fn typed<'de, T: Deserialize<'de>>(text: &'de str) -> Result<RawDoc<T>> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| perr(&e.path().to_string(), e.inner().to_string()))
}

/// Parses a canonical document. Structural problems are reported as
/// [`Error::Parse`] with the offending field path; an embedded algebra
/// violating the Leibniz identity is reported as [`Error::Invalid`]. A
/// top-level algebra document that violates the identity parses to
/// [`Structure::Candidate`].
pub fn parse(text: &str) -> Result<Document> {
    let header: RawHeader = {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| perr(&e.path().to_string(), e.inner().to_string()))?
    };
    if header.schema_version != SCHEMA_VERSION {
        return Err(perr(
            "schema_version",
            format!("unsupported schema version {} (expected {SCHEMA_VERSION})", header.schema_version),
        ));
    }
    let kind = Kind::from_label(&header.kind).ok_or_else(|| perr("kind", format!("unknown kind {:?}", header.kind)))?;
    let body = match kind {
        Kind::Algebra => {
            let raw = typed::<RawAlgebra>(text)?.body;
            let (t, basis) = candidate(&raw, "body")?;
            let report = validate_algebra(&t).map_err(|e| at("body", e))?;
            if report.leibniz_ok {
                Structure::Algebra(LeibnizAlgebra::new(t, Some(basis)).map_err(|e| at("body", e))?)
            } else {
                Structure::Candidate { tensor: t, basis }
            }
        }
        Kind::Morphism => {
            let raw = typed::<RawMorphism>(text)?.body;
            let source = algebra(&raw.source, "body.source")?;
            let target = algebra(&raw.target, "body.target")?;
            Structure::Morphism(morphism_between(&source, &target, &raw.matrix, "body.matrix")?)
        }
        Kind::Action => Structure::Action(action_from(&typed::<RawAction>(text)?.body, "body")?),
        Kind::Extension => {
            let raw = typed::<RawExtension>(text)?.body;
            let kernel = algebra(&raw.kernel, "body.kernel")?;
            let middle = algebra(&raw.middle, "body.middle")?;
            let base = algebra(&raw.base, "body.base")?;
            let i = morphism_between(&kernel, &middle, &raw.i, "body.i")?;
            let p = morphism_between(&middle, &base, &raw.p, "body.p")?;
            let s = morphism_between(&base, &middle, &raw.s, "body.s")?;
            Structure::Extension(SplitExtension::new(i, p, s).map_err(|e| at("body", e))?)
        }
        Kind::Xmod => Structure::XMod(xmod_from(&typed::<RawXMod>(text)?.body, "body")?),
        Kind::XmodMorphism => {
            let raw = typed::<RawXModMorphism>(text)?.body;
            let source = xmod_from(&raw.source, "body.source")?;
            let target = xmod_from(&raw.target, "body.target")?;
            same_field(source.l1().field(), target.l1().field(), "body.target")?;
            let f = source.l1().field();
            let f1 = matrix(f, &raw.f1, target.l1().dim(), source.l1().dim(), "body.f1")?;
            let f0 = matrix(f, &raw.f0, target.l0().dim(), source.l0().dim(), "body.f0")?;
            Structure::XModMorphism(XModMorphism::new(source, target, f1, f0).map_err(|e| at("body", e))?)
        }
        Kind::Groupoid => Structure::Groupoid(groupoid_from(&typed::<RawGroupoid>(text)?.body, "body")?),
        Kind::GpdMorphism => {
            let raw = typed::<RawGpdMorphism>(text)?.body;
            let source = groupoid_from(&raw.source, "body.source")?;
            let target = groupoid_from(&raw.target, "body.target")?;
            let f = source.arrows().field();
            same_field(f, target.arrows().field(), "body.target")?;
            let arrows = matrix(f, &raw.on_arrows, target.arrows().dim(), source.arrows().dim(), "body.on_arrows")?;
            let objects = matrix(f, &raw.on_objects, target.objects().dim(), source.objects().dim(), "body.on_objects")?;
            Structure::GpdMorphism(GroupoidMorphism::new(source, target, arrows, objects).map_err(|e| at("body", e))?)
        }
        Kind::GpdAction => {
            let raw = typed::<RawGpdAction>(text)?.body;
            let g = groupoid_from(&raw.groupoid, "body.groupoid")?;
            let l = algebra(&raw.algebra, "body.algebra")?;
            let f = g.arrows().field();
            same_field(f, l.field(), "body.algebra.field")?;
            let omega = matrix(f, &raw.omega, g.objects().dim(), l.dim(), "body.omega")?;
            let ambient = g.arrows().dim() + l.dim();
            let pullback = raw
                .pullback_basis
                .iter()
                .enumerate()
                .map(|(r, row)| {
                    let rp = format!("body.pullback_basis[{r}]");
                    if row.len() != ambient {
                        return Err(perr(&rp, format!("expected {ambient} entries, found {}", row.len())));
                    }
                    row.iter()
                        .enumerate()
                        .map(|(c, t)| scalar(f, t, &format!("{rp}[{c}]")))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let act = matrix(f, &raw.act, l.dim(), pullback.len(), "body.act")?;
            let a = GroupoidAction::new(g, l, omega, act).map_err(|e| at("body", e))?;
            if a.pullback().basis() != pullback.as_slice() {
                return Err(perr(
                    "body.pullback_basis",
                    "does not match the reduced basis of {(g, l) : d0(g) = omega(l)}",
                ));
            }
            Structure::GpdAction(a)
        }
    };
    Ok(Document {
        schema_version: header.schema_version,
        body,
    })
}

/// Outcome of validating a structure: named checks, all of which must hold,
/// plus informational fields that do not affect validity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub kind: Kind,
    pub checks: Vec<(&'static str, bool)>,
    pub info: Vec<(&'static str, String)>,
}

impl Report {
    pub fn valid(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn check(&self, name: &str) -> Option<bool> {
        self.checks.iter().find(|(n, _)| *n == name).map(|(_, ok)| *ok)
    }

    pub fn to_json(&self) -> Value {
        let mut checks = serde_json::Map::new();
        for (name, ok) in &self.checks {
            checks.insert(name.to_string(), Value::Bool(*ok));
        }
        let mut info = serde_json::Map::new();
        for (name, value) in &self.info {
            info.insert(name.to_string(), Value::String(value.clone()));
        }
        json!({
            "kind": self.kind.label(),
            "valid": self.valid(),
            "checks": checks,
            "info": info,
        })
    }

    pub fn to_table(&self) -> String {
        let width = self
            .checks
            .iter()
            .map(|(n, _)| n.len())
            .chain(self.info.iter().map(|(n, _)| n.len()))
            .max()
            .unwrap_or(0)
            .max(5);
        let mut s = String::new();
        let _ = writeln!(s, "{:<width$}  {}", "kind", self.kind.label());
        for (name, ok) in &self.checks {
            let _ = writeln!(s, "{name:<width$}  {}", if *ok { "ok" } else { "FAIL" });
        }
        for (name, value) in &self.info {
            let _ = writeln!(s, "{name:<width$}  {value}");
        }
        let _ = writeln!(s, "{:<width$}  {}", "valid", self.valid());
        s
    }
}

pub fn report(s: &Structure) -> Report {
    let kind = s.kind();
    let (checks, info) = match s {
        Structure::Algebra(a) => {
            let r = a.report();
            (
                vec![("leibniz_ok", r.leibniz_ok)],
                vec![("abelian", r.abelian.to_string()), ("lie", r.lie.to_string())],
            )
        }
        Structure::Candidate { tensor, .. } => {
            let r = validate_algebra(tensor).expect("square tensor");
            (
                vec![("leibniz_ok", r.leibniz_ok)],
                vec![("abelian", r.abelian.to_string()), ("lie", r.lie.to_string())],
            )
        }
        Structure::Morphism(m) => (vec![("morphism_ok", m.check_morphism())], vec![]),
        Structure::Action(a) => {
            let r = a.validate();
            let names = ["i", "ii", "iii", "iv", "v", "vi"];
            (names.iter().copied().zip(r.axioms).collect(), vec![])
        }
        Structure::Extension(e) => {
            let r = e.report();
            (
                vec![
                    ("maps_ok", r.maps_ok),
                    ("i_injective", r.i_injective),
                    ("p_surjective", r.p_surjective),
                    ("exact", r.exact),
                    ("section_ok", r.section_ok),
                ],
                vec![],
            )
        }
        Structure::XMod(x) => {
            let r = x.validate();
            let mut info = vec![];
            if r.all_ok() {
                info.push(("ker_boundary_abelian", kernel_of_boundary(x).1.to_string()));
            }
            (
                vec![
                    ("morphism_ok", r.morphism_ok),
                    ("action_ok", r.action_ok),
                    ("lxm1", r.lxm1),
                    ("lxm2", r.lxm2),
                ],
                info,
            )
        }
        Structure::XModMorphism(m) => {
            let r = m.report();
            (
                vec![
                    ("source_ok", m.source().is_valid()),
                    ("target_ok", m.target().is_valid()),
                    ("maps_ok", r.maps_ok),
                    ("commutes", r.commutes),
                    ("left_equivariant", r.left_equivariant),
                    ("right_equivariant", r.right_equivariant),
                ],
                vec![("covering", check_covering_xmod(m).to_string())],
            )
        }
        Structure::Groupoid(g) => {
            let r = g.validate();
            (
                vec![
                    ("maps_ok", r.maps_ok),
                    ("sections_ok", r.sections_ok),
                    ("kernel_bracket_ok", r.kernel_bracket_ok),
                    ("interchange_ok", r.interchange_ok),
                ],
                vec![("transitivity", g.is_transitive().label().to_string())],
            )
        }
        Structure::GpdMorphism(p) => {
            let r = p.report();
            (
                vec![
                    ("source_ok", p.source().is_valid()),
                    ("target_ok", p.target().is_valid()),
                    ("maps_ok", r.maps_ok),
                    ("commutes_d0", r.commutes_d0),
                    ("commutes_d1", r.commutes_d1),
                    ("commutes_eps", r.commutes_eps),
                ],
                vec![("covering", check_covering(p).to_string())],
            )
        }
        Structure::GpdAction(a) => {
            let r = a.validate();
            (
                vec![
                    ("groupoid_ok", a.groupoid().is_valid()),
                    ("a1", r.a1),
                    ("a2", r.a2),
                    ("a3", r.a3),
                    ("morphism_ok", r.morphism_ok),
                ],
                vec![],
            )
        }
    };
    Report { kind, checks, info }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{a2, fixtures_over};

    fn doc(s: Structure) -> Document {
        Document::new(s)
    }

    #[test]
    fn zero_algebra_canonical_text() {
        let text = serialize(&doc(Structure::Algebra(LeibnizAlgebra::zero(FieldSpec::Rational))));
        let expected = r#"{
  "body": {
    "basis": [],
    "brackets": [],
    "dim": 0,
    "field": {
      "kind": "rational"
    }
  },
  "kind": "algebra",
  "schema_version": 1
}
"#;
        assert_eq!(text, expected);
    }

    #[test]
    fn a2_round_trip() {
        let d = doc(Structure::Algebra(a2(FieldSpec::Rational)));
        let text = serialize(&d);
        assert!(text.contains(r#""c": "1""#));
        let back = parse(&text).unwrap();
        assert_eq!(back, d);
        assert_eq!(serialize(&back), text);
    }

    #[test]
    fn non_canonical_scalar_rejected() {
        let text = serialize(&doc(Structure::Algebra(a2(FieldSpec::Rational)))).replace(r#""c": "1""#, r#""c": "2/4""#);
        match parse(&text) {
            Err(Error::Parse { path, message }) => {
                assert_eq!(path, "body.brackets[0].out[0].c");
                assert!(message.contains("non-canonical"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_fields_rejected_with_path() {
        let text = serialize(&doc(Structure::Algebra(a2(FieldSpec::Rational)))).replace(r#""dim": 2"#, r#""dim": 2, "extra": 1"#);
        match parse(&text) {
            Err(Error::Parse { path, message }) => {
                assert_eq!(path, "body.extra");
                assert!(message.contains("line"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse(r#"{"kind": "algebra", "schema_version": 2, "body": {}}"#), Err(Error::Parse { .. })));
        assert!(matches!(parse(r#"{"kind": "nope", "schema_version": 1, "body": {}}"#), Err(Error::Parse { .. })));
    }

    #[test]
    fn candidate_algebra_parses_and_reports_failure() {
        let f = FieldSpec::prime(2).unwrap();
        let t = Tensor3::from_entries(f, [1, 1, 1], [(0, 0, 0, f.one())]).unwrap();
        let d = doc(Structure::Candidate {
            tensor: t,
            basis: vec!["e1".into()],
        });
        let back = parse(&serialize(&d)).unwrap();
        assert_eq!(back, d);
        let r = back.body.report();
        assert!(!r.valid());
        assert_eq!(r.check("leibniz_ok"), Some(false));
    }

    #[test]
    fn unsorted_or_zero_entries_rejected() {
        let f = FieldSpec::Rational;
        let base = serialize(&doc(Structure::Algebra(crate::fixtures::lie2(f))));
        let swapped = base.replacen(r#""i": 0"#, r#""i": 9"#, 1);
        assert!(matches!(parse(&swapped), Err(Error::Parse { .. })));
        let zero = base.replacen(r#""c": "1""#, r#""c": "0""#, 1);
        assert!(matches!(parse(&zero), Err(Error::Parse { .. })));
    }

    #[test]
    fn fixtures_round_trip_bytewise() {
        for field in [FieldSpec::Rational, FieldSpec::prime(3).unwrap()] {
            for fx in fixtures_over(field) {
                let d = doc(fx.payload);
                let text = serialize(&d);
                let back = parse(&text).unwrap_or_else(|e| panic!("{}: {e}", fx.name));
                assert_eq!(serialize(&back), text, "{}", fx.name);
                assert_eq!(back, d, "{}", fx.name);
            }
        }
    }

    #[test]
    fn field_mismatch_detected() {
        let a = Arc::new(a2(FieldSpec::Rational));
        let m = LinearMorphism::identity(a);
        let text = serialize(&doc(Structure::Morphism(m)));
        let idx = text.find(r#""kind": "rational""#).unwrap();
        let mixed = format!("{}{}", &text[..idx], text[idx..].replacen(r#""kind": "rational""#, r#""kind": "prime", "p": 2"#, 1));
        assert!(parse(&mixed).is_err());
    }
}
