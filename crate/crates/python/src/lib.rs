//! Python bindings for `multikit`. Elements and polynomials cross the
//! boundary as their display names; reports come back as plain dicts.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyAny;

use multikit::axioms::validate;
use multikit::cli;
use multikit::conformance::conformance_report;
use multikit::extension::{closure_tower, CandidateOrder};
use multikit::morphism::{classify_map, find_isomorphism, MorphismTable, DEFAULT_ISO_BOUND};
use multikit::poly::{effective_roots, euclid_divide, evaluate, parse_poly, poly_prod, poly_sum, roots, Poly};
use multikit::quotient::{class_names, irreducibility, make_quotient, ProductMode, QuotientField};
use multikit::structures::{builtin, parse_structure, serialize_structure};
use multikit::{ElemSet, Error, FiniteSuperring};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

/// A finite superring given by its operation tables.
#[pyclass(name = "Structure", module = "multikit_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyStructure {
    inner: FiniteSuperring,
}

impl PyStructure {
    fn elem(&self, name: &str) -> PyResult<usize> {
        self.inner.index_of(name).map_err(err)
    }

    fn names(&self, s: &ElemSet) -> Vec<String> {
        self.inner.set_names(s)
    }

    fn poly(&self, text: &str) -> PyResult<Poly> {
        parse_poly(&self.inner, text).map_err(err)
    }
}

#[pymethods]
impl PyStructure {
    /// A builtin structure: `krasner`, `q2`, `l9`, `h<p>`, `x<n>` or `f<q>`.
    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        builtin(name).map(|inner| PyStructure { inner }).map_err(err)
    }

    #[staticmethod]
    fn from_msr(text: &str) -> PyResult<Self> {
        parse_structure(text).map(|inner| PyStructure { inner }).map_err(err)
    }

    fn to_msr(&self) -> String {
        serialize_structure(&self.inner)
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    fn __len__(&self) -> usize {
        self.inner.size()
    }

    fn __repr__(&self) -> String {
        format!("Structure({}, {} elements)", self.inner.name(), self.inner.size())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn elements(&self) -> Vec<String> {
        self.inner.names().to_vec()
    }

    fn neg(&self, a: &str) -> PyResult<String> {
        Ok(self.inner.element_name(self.inner.neg(self.elem(a)?)).to_string())
    }

    fn sum(&self, a: &str, b: &str) -> PyResult<Vec<String>> {
        Ok(self.names(self.inner.sum(self.elem(a)?, self.elem(b)?)))
    }

    fn prod(&self, a: &str, b: &str) -> PyResult<Vec<String>> {
        Ok(self.names(self.inner.prod(self.elem(a)?, self.elem(b)?)))
    }

    fn inverses(&self, a: &str) -> PyResult<Vec<String>> {
        Ok(self.names(&self.inner.inverses(self.elem(a)?)))
    }

    fn characteristic(&self) -> usize {
        self.inner.characteristic()
    }

    /// Every axiom verdict, with the first failing witness for each.
    fn validate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &validate(&self.inner).to_json(&self.inner))
    }

    fn is_superfield(&self) -> bool {
        validate(&self.inner).superfield.is_pass()
    }

    fn poly_sum(&self, f: &str, g: &str) -> PyResult<String> {
        Ok(poly_sum(&self.inner, &self.poly(f)?, &self.poly(g)?).render(&self.inner))
    }

    fn poly_mul(&self, f: &str, g: &str) -> PyResult<String> {
        Ok(poly_prod(&self.inner, &self.poly(f)?, &self.poly(g)?).render(&self.inner))
    }

    fn evaluate(&self, f: &str, at: &str) -> PyResult<Vec<String>> {
        Ok(self.names(&evaluate(&self.inner, &self.poly(f)?, self.elem(at)?)))
    }

    /// A witness `(q, r)` with `f ∈ q·g + r`.
    fn divide(&self, f: &str, g: &str) -> PyResult<(String, String)> {
        let d = euclid_divide(&self.inner, &self.poly(f)?, &self.poly(g)?).map_err(err)?;
        Ok((d.q.render(&self.inner), d.r.render(&self.inner)))
    }

    fn roots(&self, f: &str) -> PyResult<Vec<String>> {
        Ok(self.names(&roots(&self.inner, &self.poly(f)?).map_err(err)?))
    }

    fn effective_roots(&self, f: &str) -> PyResult<Vec<String>> {
        Ok(self.names(&effective_roots(&self.inner, &self.poly(f)?).map_err(err)?))
    }

    fn is_irreducible(&self, p: &str) -> PyResult<bool> {
        Ok(irreducibility(&self.inner, &self.poly(p)?).map_err(err)?.irreducible)
    }

    /// The quotient `F(p)`; `mode` is `strict` or `saturated`.
    #[pyo3(signature = (p, mode = "strict"))]
    fn quotient(&self, p: &str, mode: &str) -> PyResult<PyQuotient> {
        let p = self.poly(p)?;
        let mode = match mode {
            "strict" => ProductMode::Strict,
            "saturated" => ProductMode::saturated_for(&p),
            other => return Err(PyValueError::new_err(format!("unknown mode `{other}`"))),
        };
        make_quotient(&self.inner, &p, mode).map(|inner| PyQuotient { inner }).map_err(err)
    }

    /// Adjoin roots until closed up to `max_degree` or `max_steps` are used.
    /// Returns the tower manifest and the top structure.
    #[pyo3(signature = (max_degree = 2, max_steps = 1))]
    fn closure<'py>(&self, py: Python<'py>, max_degree: usize, max_steps: usize) -> PyResult<(Bound<'py, PyAny>, PyStructure)> {
        let t = closure_tower(&self.inner, max_degree, max_steps, CandidateOrder::Canonical).map_err(err)?;
        Ok((to_py(py, &t.manifest().1)?, PyStructure { inner: t.top().clone() }))
    }
}

/// `F(p)` with its class arithmetic and canonical embedding.
#[pyclass(name = "Quotient", module = "multikit_py", frozen)]
struct PyQuotient {
    inner: QuotientField,
}

#[pymethods]
impl PyQuotient {
    #[getter]
    fn structure(&self) -> PyStructure {
        PyStructure { inner: self.inner.ring.clone() }
    }

    #[getter]
    fn mode(&self) -> String {
        self.inner.arith.mode().label()
    }

    fn classes(&self) -> Vec<String> {
        self.inner.ring.names().to_vec()
    }

    fn prod(&self, a: &str, b: &str) -> PyResult<Vec<String>> {
        let r = &self.inner.ring;
        let (a, b) = (r.index_of(a).map_err(err)?, r.index_of(b).map_err(err)?);
        Ok(class_names(&self.inner.arith, &self.inner.arith.prod(a, b)))
    }

    fn root(&self) -> Option<String> {
        self.inner.root().map(|c| self.inner.ring.element_name(c).to_string())
    }

    fn embedding_kind(&self) -> String {
        self.inner.embedding_class.kind.label().to_string()
    }

    fn report<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.report.to_json(&self.inner.ring))
    }

    fn __repr__(&self) -> String {
        format!("Quotient({}, {})", self.inner.ring.name(), self.inner.arith.mode().label())
    }
}

/// Classify the map given as `"a:b,c:d,…"`: `not-morphism`, `morphism` or
/// `full-morphism`.
#[pyfunction]
fn classify(domain: &PyStructure, codomain: &PyStructure, map: &str) -> PyResult<String> {
    let m = MorphismTable::parse(&domain.inner, &codomain.inner, map).map_err(err)?;
    Ok(classify_map(&domain.inner, &codomain.inner, &m).kind.label().to_string())
}

#[pyfunction]
fn isomorphism(a: &PyStructure, b: &PyStructure) -> PyResult<Option<String>> {
    Ok(find_isomorphism(&a.inner, &b.inner, DEFAULT_ISO_BOUND)
        .map_err(err)?
        .map(|m| m.render(&a.inner, &b.inner)))
}

#[pyfunction]
#[pyo3(signature = (seed = 0))]
fn conformance(py: Python<'_>, seed: u64) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &conformance_report(seed).map_err(err)?.to_json())
}

/// Run the command line with `args` (without the program name). Returns
/// `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let out = cli::run(std::iter::once("multikit".to_string()).chain(args));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
fn multikit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyStructure>()?;
    m.add_class::<PyQuotient>()?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(isomorphism, m)?)?;
    m.add_function(wrap_pyfunction!(conformance, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
