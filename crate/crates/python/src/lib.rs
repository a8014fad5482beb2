//! Python bindings.
//!
//! Matrices cross the boundary as lists of rows; entries may be anything
//! whose `str()` is a valid scalar (`int`, `fractions.Fraction`, or strings
//! such as `"1/2+3i"` and `"sqrt(2)"`). Results come back with string
//! entries so that nothing is rounded.

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use ::tricanon::canon::{canonicalize, check_table, CanonInput, Relation};
use ::tricanon::io::{format_matrix, parse_matrices, Report};
use ::tricanon::pencil::kronecker_decompose;
use ::tricanon::summands::{table_samples, SummandDescriptor};
use ::tricanon::witness::congruence_witness;
use ::tricanon::{Error, ErrorCategory, ExactMatrix, GaussianRational, Scalar, TowerElement};

create_exception!(tricanon, TricanonError, PyException, "Base class of all tricanon errors.");
create_exception!(tricanon, ParseError, TricanonError, "Malformed matrix, scalar or descriptor.");
create_exception!(tricanon, FieldError, TricanonError, "The result leaves the working field.");
create_exception!(tricanon, StructureError, TricanonError, "The input violates a structural precondition.");
create_exception!(tricanon, NotEquivalentError, TricanonError, "The two pairs are not equivalent.");

fn to_py(e: Error) -> PyErr {
    let msg = e.to_string();
    match e.category() {
        ErrorCategory::Parse => ParseError::new_err(msg),
        ErrorCategory::Field => FieldError::new_err(msg),
        ErrorCategory::Structure => StructureError::new_err(msg),
        ErrorCategory::NotEquivalent => NotEquivalentError::new_err(msg),
        ErrorCategory::Internal => TricanonError::new_err(msg),
    }
}

type Rows = Vec<Vec<String>>;

/// Serialize a Python list of rows in the matrix file format.
fn matrix_text(m: &Bound<'_, PyAny>) -> PyResult<String> {
    let mut rows: Rows = Vec::new();
    for row in m.try_iter()? {
        let mut entries = Vec::new();
        for x in row?.try_iter()? {
            entries.push(x?.str()?.to_string());
        }
        rows.push(entries);
    }
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(ParseError::new_err("ragged rows"));
    }
    let mut text = format!("{} {cols}\n", rows.len());
    for r in &rows {
        text.push_str(&r.join(" "));
        text.push('\n');
    }
    Ok(text)
}

fn rows_of<S: Scalar>(m: &ExactMatrix<S>) -> Rows {
    m.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
}

/// Run `f` over `Q(i)` when every entry parses there, else over the tower.
macro_rules! with_domain {
    ($mats:expr, |$ms:ident| $body:expr) => {{
        let text = $mats
            .iter()
            .map(|m| matrix_text(m))
            .collect::<PyResult<Vec<_>>>()?
            .join("---\n");
        match parse_matrices::<GaussianRational>(&text) {
            Ok($ms) => $body,
            Err(gauss_err) => match parse_matrices::<TowerElement>(&text) {
                Ok($ms) => $body,
                Err(_) => Err(to_py(gauss_err)),
            },
        }
    }};
}

fn check_pairs<S: Scalar>(ms: &[ExactMatrix<S>]) -> PyResult<()> {
    for p in ms.chunks(2) {
        if p.len() == 2 && p[0].shape() != p[1].shape() {
            return Err(ParseError::new_err("pair members have different shapes"));
        }
    }
    Ok(())
}

fn kronecker_impl<'py, S: Scalar>(py: Python<'py>, ms: Vec<ExactMatrix<S>>, witness: bool) -> PyResult<Bound<'py, PyDict>> {
    check_pairs(&ms)?;
    let form = kronecker_decompose(&ms[0], &ms[1]).map_err(to_py)?;
    let out = PyDict::new(py);
    out.set_item("blocks", form.blocks.iter().map(ToString::to_string).collect::<Vec<_>>())?;
    if witness {
        out.set_item("r", rows_of(&form.r))?;
        out.set_item("s", rows_of(&form.s))?;
    }
    Ok(out)
}

/// Kronecker blocks of the pencil `B - tA`, optionally with witnesses
/// `R`, `S` such that `R A S` and `R B S` are in canonical form.
#[pyfunction]
#[pyo3(signature = (a, b, witness = false))]
fn kronecker<'py>(py: Python<'py>, a: &Bound<'py, PyAny>, b: &Bound<'py, PyAny>, witness: bool) -> PyResult<Bound<'py, PyDict>> {
    with_domain!([a, b], |ms| kronecker_impl(py, ms, witness))
}

fn canon_impl<'py, S: Scalar>(py: Python<'py>, relation: Relation, mut ms: Vec<ExactMatrix<S>>, materialize: bool) -> PyResult<Bound<'py, PyDict>> {
    check_pairs(&ms)?;
    let input = match (relation.is_single(), ms.len()) {
        (true, 1) => CanonInput::Matrix(ms.pop().unwrap()),
        (false, 2) => {
            let b = ms.pop().unwrap();
            CanonInput::Pair(ms.pop().unwrap(), b)
        }
        (true, _) => return Err(ParseError::new_err(format!("relation {relation} takes a single matrix"))),
        (false, _) => return Err(ParseError::new_err(format!("relation {relation} takes a pair (pass b=...)"))),
    };
    let c = canonicalize(relation, &input).map_err(to_py)?;
    let report = Report::new(&c, materialize).map_err(to_py)?;
    let out = PyDict::new(py);
    out.set_item("relation", &report.relation)?;
    out.set_item("summands", &report.summands)?;
    out.set_item("blocks", &report.blocks)?;
    out.set_item("notes", &report.notes)?;
    if let Some(text) = &report.canonical_form {
        let ms = parse_matrices::<TowerElement>(text).map_err(to_py)?;
        out.set_item("canonical_form", ms.iter().map(rows_of).collect::<Vec<_>>())?;
    }
    Ok(out)
}

/// Canonical summands of a matrix (`congruence`, `star`) or pair (the
/// other relations). Returns a dict with `relation`, `summands`, `blocks`,
/// `notes` and, with `materialize=True`, `canonical_form` (a list holding
/// the canonical matrix or the two members of the canonical pair).
#[pyfunction]
#[pyo3(signature = (relation, a, b = None, materialize = false))]
fn canon<'py>(
    py: Python<'py>,
    relation: &str,
    a: &Bound<'py, PyAny>,
    b: Option<&Bound<'py, PyAny>>,
    materialize: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let relation: Relation = relation.parse().map_err(to_py)?;
    let mats: Vec<&Bound<'py, PyAny>> = std::iter::once(a).chain(b).collect();
    with_domain!(mats, |ms| canon_impl(py, relation, ms, materialize))
}

fn witness_impl<S: Scalar>(ms: Vec<ExactMatrix<S>>) -> PyResult<Rows> {
    check_pairs(&ms)?;
    let n = congruence_witness(&ms[0], &ms[1], &ms[2], &ms[3]).map_err(to_py)?;
    Ok(rows_of(&n))
}

/// `N` with `N^T A N = A2` and `N^T B N = B2` for two equivalent
/// symmetric or skew-symmetric pairs.
#[pyfunction]
fn witness(a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>, a2: &Bound<'_, PyAny>, b2: &Bound<'_, PyAny>) -> PyResult<Rows> {
    with_domain!([a, b, a2, b2], |ms| witness_impl(ms))
}

/// `(descriptor, passed)` for every sampled canonical summand up to
/// `max_size`.
#[pyfunction]
fn verify_tables(max_size: usize) -> PyResult<Vec<(String, bool)>> {
    if max_size == 0 {
        return Err(StructureError::new_err("max_size must be at least 1"));
    }
    table_samples(max_size)
        .iter()
        .map(|d| check_table(d).map(|c| (d.to_string(), c.passed())).map_err(to_py))
        .collect()
}

/// Normalized text form of a summand descriptor.
#[pyfunction]
fn descriptor(text: &str) -> PyResult<String> {
    text.parse::<SummandDescriptor>().map(|d| d.to_string()).map_err(to_py)
}

/// Render a matrix (list of rows) in the matrix file format.
#[pyfunction]
fn format(m: &Bound<'_, PyAny>) -> PyResult<String> {
    with_domain!([m], |ms| Ok::<_, PyErr>(format_matrix(&ms[0])))
}

#[pymodule]
#[pyo3(name = "tricanon")]
fn tricanon_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add_function(wrap_pyfunction!(kronecker, m)?)?;
    m.add_function(wrap_pyfunction!(canon, m)?)?;
    m.add_function(wrap_pyfunction!(witness, m)?)?;
    m.add_function(wrap_pyfunction!(verify_tables, m)?)?;
    m.add_function(wrap_pyfunction!(descriptor, m)?)?;
    m.add_function(wrap_pyfunction!(format, m)?)?;
    m.add("TricanonError", py.get_type::<TricanonError>())?;
    m.add("ParseError", py.get_type::<ParseError>())?;
    m.add("FieldError", py.get_type::<FieldError>())?;
    m.add("StructureError", py.get_type::<StructureError>())?;
    m.add("NotEquivalentError", py.get_type::<NotEquivalentError>())?;
    m.add("RELATIONS", Relation::ALL.iter().map(ToString::to_string).collect::<Vec<_>>())?;
    Ok(())
}
