//! Python bindings. Scalars cross the boundary as strings (`"3"`, `"-1/2"`)
//! or Python ints; vectors as lists of those.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyList;

use leibniz_core::{self as core, Document, Error, FieldSpec, Matrix, Scalar, Structure};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn field_of(field: Option<&Bound<'_, PyAny>>) -> PyResult<FieldSpec> {
    let Some(field) = field else {
        return Ok(FieldSpec::Rational);
    };
    if field.is_none() {
        return Ok(FieldSpec::Rational);
    }
    if let Ok(p) = field.extract::<u32>() {
        return FieldSpec::prime(p).map_err(err);
    }
    match field.extract::<String>()?.as_str() {
        "rational" | "Q" => Ok(FieldSpec::Rational),
        other => Err(PyValueError::new_err(format!("field must be 'rational' or a prime, got {other:?}"))),
    }
}

fn scalar(f: FieldSpec, x: &Bound<'_, PyAny>) -> PyResult<Scalar> {
    if let Ok(n) = x.extract::<i64>() {
        return Ok(f.from_i64(n));
    }
    f.parse_scalar(&x.extract::<String>()?).map_err(err)
}

fn vector(f: FieldSpec, xs: &Bound<'_, PyAny>) -> PyResult<Vec<Scalar>> {
    xs.try_iter()?.map(|x| scalar(f, &x?)).collect()
}

fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(|c| c.to_string()).collect()
}

fn rows(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| strings(m.row(r))).collect()
}

fn report_dict<'py>(py: Python<'py>, s: &Structure) -> PyResult<Bound<'py, PyAny>> {
    let text = s.report().to_json().to_string();
    py.import("json")?.call_method1("loads", (text,))
}

fn to_json(s: &Structure) -> String {
    core::serialize(&Document::new(s.clone()))
}

/// A finite-dimensional Leibniz algebra given by structure constants.
#[pyclass(module = "leibniz", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct Algebra(Arc<core::LeibnizAlgebra>);

#[pymethods]
impl Algebra {
    /// `constants[i][j]` is the coordinate vector of `[e_i, e_j]`.
    #[new]
    #[pyo3(signature = (constants, field=None))]
    fn new(constants: &Bound<'_, PyAny>, field: Option<&Bound<'_, PyAny>>) -> PyResult<Self> {
        let f = field_of(field)?;
        let table: Vec<Vec<Bound<'_, PyAny>>> = constants.extract()?;
        let n = table.len();
        let mut data = Vec::with_capacity(n * n * n);
        for row in &table {
            if row.len() != n {
                return Err(PyValueError::new_err("structure constants must be n x n x n"));
            }
            for cell in row {
                let v = vector(f, cell)?;
                if v.len() != n {
                    return Err(PyValueError::new_err("structure constants must be n x n x n"));
                }
                data.extend(v);
            }
        }
        let t = core::Tensor3::from_flat(f, [n, n, n], data).map_err(err)?;
        Ok(Algebra(Arc::new(core::LeibnizAlgebra::new(t, None).map_err(err)?)))
    }

    #[staticmethod]
    #[pyo3(signature = (n, field=None))]
    fn abelian(n: usize, field: Option<&Bound<'_, PyAny>>) -> PyResult<Self> {
        Ok(Algebra(Arc::new(core::LeibnizAlgebra::abelian(field_of(field)?, n))))
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn field(&self) -> String {
        self.0.field().to_string()
    }

    fn bracket(&self, x: &Bound<'_, PyAny>, y: &Bound<'_, PyAny>) -> PyResult<Vec<String>> {
        let f = self.0.field();
        Ok(strings(&self.0.bracket(&vector(f, x)?, &vector(f, y)?).map_err(err)?))
    }

    fn is_abelian(&self) -> bool {
        self.0.is_abelian()
    }

    fn is_lie(&self) -> bool {
        self.0.report().lie
    }

    fn report<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        report_dict(py, &Structure::Algebra(self.0.as_ref().clone()))
    }

    fn to_json(&self) -> String {
        to_json(&Structure::Algebra(self.0.as_ref().clone()))
    }

    fn __eq__(&self, other: &Algebra) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("Algebra(dim={}, field={})", self.0.dim(), self.0.field())
    }
}

/// A Leibniz action of `actor` on `actee`.
#[pyclass(module = "leibniz", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct Action(core::LeibnizAction);

#[pymethods]
impl Action {
    #[staticmethod]
    fn by_bracket(a: &Algebra) -> Self {
        Action(core::LeibnizAction::by_bracket(a.0.clone()))
    }

    #[staticmethod]
    fn trivial(actor: &Algebra, actee: &Algebra) -> PyResult<Self> {
        Ok(Action(core::LeibnizAction::trivial(actor.0.clone(), actee.0.clone()).map_err(err)?))
    }

    #[getter]
    fn actor(&self) -> Algebra {
        Algebra(self.0.actor().clone())
    }

    #[getter]
    fn actee(&self) -> Algebra {
        Algebra(self.0.actee().clone())
    }

    /// Truth values of axioms (i) to (vi).
    fn axioms(&self) -> [bool; 6] {
        self.0.validate().axioms
    }

    fn is_valid(&self) -> bool {
        self.0.validate().all_ok()
    }

    fn semidirect(&self) -> PyResult<Extension> {
        Ok(Extension(core::semidirect(&self.0).map_err(err)?.1))
    }

    fn to_json(&self) -> String {
        to_json(&Structure::Action(self.0.clone()))
    }

    fn __eq__(&self, other: &Action) -> bool {
        self.0 == other.0
    }
}

/// A split extension `0 -> K -> E -> L -> 0` with section.
#[pyclass(module = "leibniz", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct Extension(core::SplitExtension);

#[pymethods]
impl Extension {
    #[staticmethod]
    fn self_extension(a: &Algebra) -> PyResult<Self> {
        Ok(Extension(core::SplitExtension::self_extension(a.0.clone()).map_err(err)?))
    }

    #[getter]
    fn middle(&self) -> Algebra {
        Algebra(self.0.middle_alg().clone())
    }

    fn is_valid(&self) -> bool {
        self.0.report().all_ok()
    }

    fn derived_action(&self) -> PyResult<Action> {
        Ok(Action(core::derived_action(&self.0).map_err(err)?))
    }

    /// The matrices of `theta: K x| L -> E` and its inverse.
    fn extension_iso(&self) -> PyResult<(Vec<Vec<String>>, Vec<Vec<String>>)> {
        let (fwd, back) = core::extension_iso(&self.0).map_err(err)?;
        Ok((rows(fwd.matrix()), rows(back.matrix())))
    }

    fn to_json(&self) -> String {
        to_json(&Structure::Extension(self.0.clone()))
    }
}

#[pyclass(module = "leibniz", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct CrossedModule(core::CrossedModule);

#[pymethods]
impl CrossedModule {
    #[staticmethod]
    fn identity(a: &Algebra) -> Self {
        CrossedModule(core::CrossedModule::identity(a.0.clone()))
    }

    #[getter]
    fn l1(&self) -> Algebra {
        Algebra(self.0.l1().clone())
    }

    #[getter]
    fn l0(&self) -> Algebra {
        Algebra(self.0.l0().clone())
    }

    fn is_valid(&self) -> bool {
        self.0.is_valid()
    }

    fn kernel_is_abelian(&self) -> bool {
        core::kernel_of_boundary(&self.0).1
    }

    fn to_groupoid(&self) -> PyResult<Groupoid> {
        Ok(Groupoid(core::delta(&self.0).map_err(err)?))
    }

    /// Checks that `x -> eta(delta(x))` is an isomorphism.
    fn roundtrip_ok(&self) -> bool {
        core::roundtrip_eta_delta(&self.0).is_ok()
    }

    fn to_json(&self) -> String {
        to_json(&Structure::XMod(self.0.clone()))
    }

    fn __eq__(&self, other: &CrossedModule) -> bool {
        self.0 == other.0
    }
}

/// An internal groupoid in Leibniz algebras.
#[pyclass(module = "leibniz", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct Groupoid(core::InternalGroupoid);

#[pymethods]
impl Groupoid {
    #[staticmethod]
    fn pair(a: &Algebra) -> PyResult<Self> {
        Ok(Groupoid(core::InternalGroupoid::pair(a.0.clone()).map_err(err)?))
    }

    #[staticmethod]
    fn one_object(a: &Algebra) -> PyResult<Self> {
        Ok(Groupoid(core::InternalGroupoid::one_object(a.0.clone()).map_err(err)?))
    }

    #[staticmethod]
    fn discrete(a: &Algebra) -> Self {
        Groupoid(core::InternalGroupoid::discrete(a.0.clone()))
    }

    #[getter]
    fn arrows(&self) -> Algebra {
        Algebra(self.0.arrows().clone())
    }

    #[getter]
    fn objects(&self) -> Algebra {
        Algebra(self.0.objects().clone())
    }

    fn is_valid(&self) -> bool {
        self.0.is_valid()
    }

    fn report<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        report_dict(py, &Structure::Groupoid(self.0.clone()))
    }

    fn transitivity(&self) -> &'static str {
        self.0.is_transitive().label()
    }

    /// `h o k`, defined when `d0(h) = d1(k)`.
    fn compose(&self, h: &Bound<'_, PyAny>, k: &Bound<'_, PyAny>) -> PyResult<Vec<String>> {
        let f = self.0.arrows().field();
        Ok(strings(&self.0.compose(&vector(f, h)?, &vector(f, k)?).map_err(err)?))
    }

    fn inverse(&self, g: &Bound<'_, PyAny>) -> PyResult<Vec<String>> {
        let f = self.0.arrows().field();
        Ok(strings(&self.0.inverse(&vector(f, g)?).map_err(err)?))
    }

    fn to_xmod(&self) -> PyResult<CrossedModule> {
        Ok(CrossedModule(core::eta(&self.0).map_err(err)?))
    }

    /// Checks that `G -> delta(eta(G))` is an isomorphism.
    fn roundtrip_ok(&self) -> bool {
        core::roundtrip_delta_eta(&self.0).is_ok()
    }

    fn to_json(&self) -> String {
        to_json(&Structure::Groupoid(self.0.clone()))
    }

    fn __eq__(&self, other: &Groupoid) -> bool {
        self.0 == other.0
    }
}

#[pyclass(module = "leibniz", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct GroupoidMorphism(core::GroupoidMorphism);

#[pymethods]
impl GroupoidMorphism {
    #[staticmethod]
    fn identity(g: &Groupoid) -> Self {
        GroupoidMorphism(core::GroupoidMorphism::identity(g.0.clone()))
    }

    #[getter]
    fn source(&self) -> Groupoid {
        Groupoid(self.0.source().clone())
    }

    #[getter]
    fn target(&self) -> Groupoid {
        Groupoid(self.0.target().clone())
    }

    fn is_valid(&self) -> bool {
        self.0.is_valid()
    }

    fn is_covering(&self) -> bool {
        core::check_covering(&self.0)
    }

    /// The unique arrow over `g` starting at `at`.
    fn lift(&self, g: &Bound<'_, PyAny>, at: &Bound<'_, PyAny>) -> PyResult<Vec<String>> {
        let f = self.0.target().arrows().field();
        Ok(strings(&core::lift(&self.0, &vector(f, g)?, &vector(f, at)?).map_err(err)?))
    }

    fn to_action(&self) -> PyResult<GroupoidAction> {
        Ok(GroupoidAction(core::covering_to_action(&self.0).map_err(err)?))
    }

    fn to_json(&self) -> String {
        to_json(&Structure::GpdMorphism(self.0.clone()))
    }
}

/// An action of an internal groupoid on a Leibniz algebra.
#[pyclass(module = "leibniz", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct GroupoidAction(core::GroupoidAction);

#[pymethods]
impl GroupoidAction {
    #[staticmethod]
    fn canonical(g: &Groupoid) -> PyResult<Self> {
        Ok(GroupoidAction(core::GroupoidAction::canonical(g.0.clone()).map_err(err)?))
    }

    fn is_valid(&self) -> bool {
        self.0.is_valid()
    }

    fn apply(&self, g: &Bound<'_, PyAny>, l: &Bound<'_, PyAny>) -> PyResult<Vec<String>> {
        let f = self.0.algebra().field();
        Ok(strings(&self.0.apply(&vector(f, g)?, &vector(f, l)?).map_err(err)?))
    }

    /// The action groupoid and its projection covering.
    fn action_groupoid(&self) -> PyResult<(Groupoid, GroupoidMorphism)> {
        let (g, q) = core::action_groupoid(&self.0).map_err(err)?;
        Ok((Groupoid(g), GroupoidMorphism(q)))
    }

    fn to_json(&self) -> String {
        to_json(&Structure::GpdAction(self.0.clone()))
    }
}

/// Any other document kind, kept as parsed.
#[pyclass(module = "leibniz", name = "Document", frozen, skip_from_py_object)]
pub struct PyDocument(Structure);

#[pymethods]
impl PyDocument {
    #[getter]
    fn kind(&self) -> &'static str {
        self.0.kind().label()
    }

    fn is_valid(&self) -> bool {
        self.0.is_valid()
    }

    fn report<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        report_dict(py, &self.0)
    }

    fn to_json(&self) -> String {
        to_json(&self.0)
    }
}

fn wrap<'py>(py: Python<'py>, s: Structure) -> PyResult<Bound<'py, PyAny>> {
    Ok(match s {
        Structure::Algebra(a) => Bound::new(py, Algebra(Arc::new(a)))?.into_any(),
        Structure::Action(a) => Bound::new(py, Action(a))?.into_any(),
        Structure::Extension(e) => Bound::new(py, Extension(e))?.into_any(),
        Structure::XMod(x) => Bound::new(py, CrossedModule(x))?.into_any(),
        Structure::Groupoid(g) => Bound::new(py, Groupoid(g))?.into_any(),
        Structure::GpdMorphism(m) => Bound::new(py, GroupoidMorphism(m))?.into_any(),
        Structure::GpdAction(a) => Bound::new(py, GroupoidAction(a))?.into_any(),
        other => Bound::new(py, PyDocument(other))?.into_any(),
    })
}

/// Parses a JSON document into the matching wrapper class.
#[pyfunction]
fn parse<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    wrap(py, core::parse(text).map_err(err)?.body)
}

/// Validation report of any JSON document, as a dict.
#[pyfunction]
fn validate<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    report_dict(py, &core::parse(text).map_err(err)?.body)
}

#[pyfunction]
#[pyo3(signature = (field=None))]
fn fixture_names(field: Option<&Bound<'_, PyAny>>) -> PyResult<Vec<String>> {
    Ok(core::fixtures::fixtures_over(field_of(field)?).into_iter().map(|f| f.name).collect())
}

#[pyfunction]
#[pyo3(signature = (name, field=None))]
fn fixture<'py>(py: Python<'py>, name: &str, field: Option<&Bound<'_, PyAny>>) -> PyResult<Bound<'py, PyAny>> {
    let fx = core::fixtures::fixture(name, field_of(field)?)
        .ok_or_else(|| PyValueError::new_err(format!("unknown fixture {name:?}")))?;
    wrap(py, fx.payload)
}

/// All Leibniz algebra structures on GF(p)^dim.
#[pyfunction]
fn enumerate_leibniz<'py>(py: Python<'py>, dim: usize, p: u32) -> PyResult<Bound<'py, PyList>> {
    let algs = py
        .detach(|| core::enumerate::enumerate_leibniz(dim, p))
        .map_err(err)?;
    PyList::new(py, algs.into_iter().map(|a| Algebra(Arc::new(a))))
}

#[pyfunction]
fn enumerate_actions(actor: &Algebra, actee: &Algebra) -> PyResult<Vec<Action>> {
    Ok(core::enumerate::enumerate_actions(&actor.0, &actee.0)
        .map_err(err)?
        .into_iter()
        .map(Action)
        .collect())
}

#[pymodule]
fn leibniz(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Algebra>()?;
    m.add_class::<Action>()?;
    m.add_class::<Extension>()?;
    m.add_class::<CrossedModule>()?;
    m.add_class::<Groupoid>()?;
    m.add_class::<GroupoidMorphism>()?;
    m.add_class::<GroupoidAction>()?;
    m.add_class::<PyDocument>()?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(fixture_names, m)?)?;
    m.add_function(wrap_pyfunction!(fixture, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_leibniz, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_actions, m)?)?;
    Ok(())
}
