//! Python bindings: the main types and operations, driven in-process.
//!
//! Monomials, partitions, and ideals cross the boundary as their text
//! syntax; series come back as wrapper classes with term lists and the
//! same JSON formats the CLI emits.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyOverflowError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyType;

use hilbnum::{
    CollapsedSeries, Distance, DistanceKind, Error, GradedSeries, Monomial, MonomialIdeal,
    Partition, UnivariateSeries,
};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::ArithmeticOverflow => PyOverflowError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

#[pyclass(name = "Monomial", frozen, eq, hash)]
#[derive(PartialEq, Hash)]
struct PyMonomial {
    inner: Monomial,
}

#[pymethods]
impl PyMonomial {
    /// Parse the text syntax: `1`, `x1`, `x1^2*x3`, ...
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        let inner: Monomial = text.parse().map_err(py_err)?;
        Ok(PyMonomial { inner })
    }

    #[classmethod]
    fn one(_cls: &Bound<'_, PyType>) -> Self {
        PyMonomial {
            inner: Monomial::one(),
        }
    }

    fn tdeg(&self) -> u64 {
        self.inner.tdeg()
    }

    fn is_one(&self) -> bool {
        self.inner.is_one()
    }

    fn support(&self) -> Vec<u32> {
        self.inner.support().collect()
    }

    fn exponents(&self) -> Vec<(u32, u32)> {
        self.inner.pairs().to_vec()
    }

    fn divides(&self, other: &PyMonomial) -> bool {
        self.inner.divides(&other.inner)
    }

    fn lcm(&self, other: &PyMonomial) -> PyMonomial {
        PyMonomial {
            inner: self.inner.lcm(&other.inner),
        }
    }

    fn quotient(&self, other: &PyMonomial) -> PyResult<PyMonomial> {
        Ok(PyMonomial {
            inner: self.inner.quotient_exact(&other.inner).map_err(py_err)?,
        })
    }

    fn mul(&self, other: &PyMonomial) -> PyResult<PyMonomial> {
        Ok(PyMonomial {
            inner: self.inner.mul_checked(&other.inner).map_err(py_err)?,
        })
    }

    /// The truncation map to `x1..xn`: the monomial itself, or None for
    /// the distinguished zero.
    fn truncate(&self, n: u32) -> Option<PyMonomial> {
        self.inner.truncate(n).map(|inner| PyMonomial { inner })
    }

    fn multi_degree(&self, y: &PyPartition) -> Vec<u64> {
        self.inner.multi_degree(&y.inner).components().to_vec()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Monomial('{}')", self.inner)
    }
}

#[pyclass(name = "Partition", frozen)]
struct PyPartition {
    inner: Partition,
}

#[pymethods]
impl PyPartition {
    /// Parse a partition spec: `total`, or `r=..;default=..;class:idx,..`.
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        let inner: Partition = spec.parse().map_err(py_err)?;
        Ok(PyPartition { inner })
    }

    #[classmethod]
    fn total(_cls: &Bound<'_, PyType>) -> Self {
        PyPartition {
            inner: Partition::total(),
        }
    }

    #[getter]
    fn r(&self) -> u32 {
        self.inner.r()
    }

    fn class_of(&self, var: u32) -> u32 {
        self.inner.class_of(var)
    }
}

#[pyclass(name = "GradedSeries", frozen, eq, hash)]
#[derive(PartialEq, Hash)]
struct PyGradedSeries {
    inner: GradedSeries,
}

#[pymethods]
impl PyGradedSeries {
    /// Build from a cap and `{monomial_text: coeff}` terms.
    #[new]
    #[pyo3(signature = (cap, terms=None))]
    fn new(cap: u32, terms: Option<BTreeMap<String, i64>>) -> PyResult<Self> {
        let mut parsed = Vec::new();
        for (text, c) in terms.unwrap_or_default() {
            let m: Monomial = text.parse().map_err(py_err)?;
            parsed.push((m, c));
        }
        Ok(PyGradedSeries {
            inner: GradedSeries::from_terms(cap, parsed).map_err(py_err)?,
        })
    }

    #[classmethod]
    fn from_json(_cls: &Bound<'_, PyType>, text: &str) -> PyResult<Self> {
        Ok(PyGradedSeries {
            inner: GradedSeries::from_json_str(text).map_err(py_err)?,
        })
    }

    #[getter]
    fn cap(&self) -> u32 {
        self.inner.cap()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// Terms in canonical monomial order, as `(monomial_text, coeff)`.
    fn terms(&self) -> Vec<(String, i64)> {
        self.inner
            .terms()
            .map(|(m, c)| (m.to_string(), c))
            .collect()
    }

    fn coefficient_at(&self, m: &PyMonomial) -> PyResult<i64> {
        self.inner.coefficient_at(&m.inner).map_err(py_err)
    }

    fn add(&self, other: &PyGradedSeries) -> PyResult<PyGradedSeries> {
        Ok(PyGradedSeries {
            inner: self.inner.add(&other.inner).map_err(py_err)?,
        })
    }

    fn sub(&self, other: &PyGradedSeries) -> PyResult<PyGradedSeries> {
        Ok(PyGradedSeries {
            inner: self.inner.sub(&other.inner).map_err(py_err)?,
        })
    }

    fn multiply(&self, other: &PyGradedSeries) -> PyResult<PyGradedSeries> {
        Ok(PyGradedSeries {
            inner: self.inner.multiply(&other.inner).map_err(py_err)?,
        })
    }

    fn __add__(&self, other: &PyGradedSeries) -> PyResult<PyGradedSeries> {
        self.add(other)
    }

    fn __sub__(&self, other: &PyGradedSeries) -> PyResult<PyGradedSeries> {
        self.sub(other)
    }

    fn __mul__(&self, other: &PyGradedSeries) -> PyResult<PyGradedSeries> {
        self.multiply(other)
    }

    fn truncate_cap(&self, new_cap: u32) -> PyGradedSeries {
        PyGradedSeries {
            inner: self.inner.truncate_cap(new_cap),
        }
    }

    /// Kill every term involving a variable of index `> n`.
    fn restrict_vars(&self, n: u32) -> PyGradedSeries {
        PyGradedSeries {
            inner: self.inner.restrict_vars(n),
        }
    }

    fn collapse(&self, y: &PyPartition) -> PyResult<PyCollapsedSeries> {
        Ok(PyCollapsedSeries {
            inner: self.inner.collapse(&y.inner).map_err(py_err)?,
        })
    }

    /// The number-theoretic-function view: `{integer: coeff}` under the
    /// prime encoding `x_i -> p_i`.
    fn to_dirichlet(&self) -> PyResult<BTreeMap<u64, i64>> {
        self.inner.to_dirichlet().map_err(py_err)
    }

    fn to_json(&self) -> String {
        self.inner.to_json_string()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("GradedSeries('{}', cap={})", self.inner, self.inner.cap())
    }
}

#[pyclass(name = "CollapsedSeries", frozen, eq, hash)]
#[derive(PartialEq, Hash)]
struct PyCollapsedSeries {
    inner: CollapsedSeries,
}

#[pymethods]
impl PyCollapsedSeries {
    #[classmethod]
    fn from_json(_cls: &Bound<'_, PyType>, text: &str) -> PyResult<Self> {
        Ok(PyCollapsedSeries {
            inner: CollapsedSeries::from_json_str(text).map_err(py_err)?,
        })
    }

    #[getter]
    fn r(&self) -> u32 {
        self.inner.r()
    }

    #[getter]
    fn cap(&self) -> u32 {
        self.inner.cap()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// Terms in ascending graded order, as `(degree_tuple, coeff)`.
    fn terms(&self) -> Vec<(Vec<u64>, i64)> {
        self.inner
            .terms()
            .map(|(d, c)| (d.components().to_vec(), c))
            .collect()
    }

    /// Dense coefficient list `a_0..a_cap`; requires `r = 1`.
    fn coefficients(&self) -> PyResult<Vec<i64>> {
        Ok(UnivariateSeries::from_collapsed(&self.inner)
            .map_err(py_err)?
            .coeffs()
            .to_vec())
    }

    fn agrees_up_to(&self, other: &PyCollapsedSeries, d: u32) -> bool {
        self.inner.agrees_up_to(&other.inner, d)
    }

    fn to_json(&self) -> String {
        self.inner.to_json_string()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "CollapsedSeries('{}', r={}, cap={})",
            self.inner,
            self.inner.r(),
            self.inner.cap()
        )
    }
}

#[pyclass(name = "MonomialIdeal", frozen, eq, hash)]
#[derive(PartialEq, Hash)]
struct PyMonomialIdeal {
    inner: MonomialIdeal,
}

#[pymethods]
impl PyMonomialIdeal {
    /// Minimalize the given generators (text syntax). An empty list is the
    /// zero ideal.
    #[new]
    #[pyo3(signature = (gens=None))]
    fn new(gens: Option<Vec<String>>) -> PyResult<Self> {
        let parsed = gens
            .unwrap_or_default()
            .iter()
            .map(|s| s.parse::<Monomial>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(py_err)?;
        Ok(PyMonomialIdeal {
            inner: MonomialIdeal::generated_by(parsed),
        })
    }

    /// Parse the ideal file format; returns the ideal plus
    /// `(line, monomial_text)` pairs for discarded redundant generators.
    #[classmethod]
    fn from_file_text(
        _cls: &Bound<'_, PyType>,
        text: &str,
    ) -> PyResult<(Self, Vec<(usize, String)>)> {
        let parsed = hilbnum::parse_ideal_text(text).map_err(py_err)?;
        Ok((
            PyMonomialIdeal {
                inner: parsed.ideal,
            },
            parsed
                .redundant
                .into_iter()
                .map(|(line, m)| (line, m.to_string()))
                .collect(),
        ))
    }

    fn gens(&self) -> Vec<String> {
        self.inner.gens().iter().map(|g| g.to_string()).collect()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn is_unit(&self) -> bool {
        self.inner.is_unit()
    }

    fn max_var(&self) -> u32 {
        self.inner.max_var()
    }

    fn contains(&self, m: &PyMonomial) -> bool {
        self.inner.contains(&m.inner)
    }

    fn __contains__(&self, m: &PyMonomial) -> bool {
        self.contains(m)
    }

    fn truncate_vars(&self, n: u32) -> PyMonomialIdeal {
        PyMonomialIdeal {
            inner: self.inner.truncate_vars(n),
        }
    }

    fn truncate_below_degree(&self, d: u32) -> PyMonomialIdeal {
        PyMonomialIdeal {
            inner: self.inner.truncate_below_degree(d),
        }
    }

    fn staircase_complement(&self, n: u32, cap: u32) -> PyGradedSeries {
        PyGradedSeries {
            inner: self.inner.staircase_complement(n, cap),
        }
    }

    fn char_series(&self, n: u32, cap: u32) -> PyGradedSeries {
        PyGradedSeries {
            inner: self.inner.char_series(n, cap),
        }
    }

    /// Truncated ideal distance: `2^{-n}` as a float, or None when the
    /// ideals are indistinguishable within the search bound.
    /// `kind` is `"varwise"` or `"degreewise"`.
    fn distance(
        &self,
        other: &PyMonomialIdeal,
        kind: &str,
        search_bound: u32,
    ) -> PyResult<Option<f64>> {
        let kind = match kind {
            "varwise" => DistanceKind::Varwise,
            "degreewise" => DistanceKind::Degreewise,
            other => {
                return Err(PyValueError::new_err(format!(
                    "unknown distance kind '{other}'"
                )))
            }
        };
        Ok(
            match self.inner.distance(&other.inner, kind, search_bound) {
                Distance::Indistinguishable => None,
                d @ Distance::Dyadic { .. } => Some(d.as_f64()),
            },
        )
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("MonomialIdeal({:?})", self.gens())
    }
}

/// Realize a built-in stream (`example-23gen`, `powers:d1,d2,...`) to a
/// total degree.
#[pyfunction]
fn realize_stream(name: &str, max_degree: u32) -> PyResult<PyMonomialIdeal> {
    let stream = hilbnum::parse_stream_name(name).map_err(py_err)?;
    Ok(PyMonomialIdeal {
        inner: hilbnum::realize_stream(stream.as_ref(), max_degree).map_err(py_err)?,
    })
}

#[pyfunction]
fn nu(n: u32, cap: u32) -> PyGradedSeries {
    PyGradedSeries {
        inner: hilbnum::nu(n, cap),
    }
}

#[pyfunction]
fn mu(n: u32, cap: u32) -> PyGradedSeries {
    PyGradedSeries {
        inner: hilbnum::mu(n, cap),
    }
}

#[pyfunction]
fn numerator_incl_excl(ideal: &PyMonomialIdeal, cap: u32) -> PyResult<PyGradedSeries> {
    Ok(PyGradedSeries {
        inner: hilbnum::numerator_incl_excl(&ideal.inner, cap).map_err(py_err)?,
    })
}

#[pyfunction]
fn numerator_lcm_lattice(ideal: &PyMonomialIdeal, cap: u32) -> PyResult<PyGradedSeries> {
    Ok(PyGradedSeries {
        inner: hilbnum::numerator_lcm_lattice(&ideal.inner, cap).map_err(py_err)?,
    })
}

#[pyfunction]
fn numerator_koszul(ideal: &PyMonomialIdeal, cap: u32) -> PyGradedSeries {
    PyGradedSeries {
        inner: hilbnum::numerator_koszul(&ideal.inner, cap),
    }
}

#[pyfunction]
fn numerator_oracle(ideal: &PyMonomialIdeal, n: u32, cap: u32) -> PyResult<PyGradedSeries> {
    Ok(PyGradedSeries {
        inner: hilbnum::numerator_oracle(&ideal.inner, n, cap).map_err(py_err)?,
    })
}

/// The lcm lattice as `[(monomial_text, mobius_value)]` in ascending
/// degree order.
#[pyfunction]
fn lcm_lattice(ideal: &PyMonomialIdeal) -> PyResult<Vec<(String, i64)>> {
    let lattice = hilbnum::build_lcm_lattice(&ideal.inner).map_err(py_err)?;
    Ok(lattice
        .elements()
        .iter()
        .map(|m| (m.to_string(), lattice.mobius(m).unwrap()))
        .collect())
}

fn check_support_size(m: &Monomial) -> PyResult<()> {
    if m.support_size() > 62 {
        return Err(PyValueError::new_err(
            "monomial support too large to enumerate faces",
        ));
    }
    Ok(())
}

#[pyfunction]
fn koszul_coefficient(ideal: &PyMonomialIdeal, m: &PyMonomial) -> PyResult<i64> {
    check_support_size(&m.inner)?;
    Ok(hilbnum::koszul_coefficient(&ideal.inner, &m.inner))
}

/// The Koszul complex of `m`: `(faces, chi_tilde, coefficient)` where
/// faces are sorted variable-index lists.
#[pyfunction]
fn koszul_complex(ideal: &PyMonomialIdeal, m: &PyMonomial) -> PyResult<(Vec<Vec<u32>>, i64, i64)> {
    check_support_size(&m.inner)?;
    let complex = hilbnum::KoszulComplex::build(&ideal.inner, &m.inner);
    let chi = complex.reduced_euler_characteristic();
    let coeff = hilbnum::koszul_coefficient(&ideal.inner, &m.inner);
    Ok((complex.faces().to_vec(), chi, coeff))
}

#[pyfunction]
fn truncation_law(ideal: &PyMonomialIdeal, n: u32, cap: u32) -> PyResult<bool> {
    hilbnum::truncation_law(&ideal.inner, n, cap).map_err(py_err)
}

#[pyfunction]
fn intersect(a: &PyMonomialIdeal, b: &PyMonomialIdeal) -> PyMonomialIdeal {
    PyMonomialIdeal {
        inner: hilbnum::intersect(&a.inner, &b.inner),
    }
}

/// Validate the two-block split identity with the listed generators as the
/// first block.
#[pyfunction]
fn split_incl_excl(ideal: &PyMonomialIdeal, left: Vec<String>, cap: u32) -> PyResult<bool> {
    let left = left
        .iter()
        .map(|s| s.parse::<Monomial>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(py_err)?;
    hilbnum::split_incl_excl(&ideal.inner, &left, cap).map_err(py_err)
}

/// Convergence experiment over a built-in stream; returns
/// `(steps, stabilized_prefix)` with steps as `(n, CollapsedSeries)`.
#[pyfunction]
fn convergence_run(
    stream: &str,
    y: &PyPartition,
    n_max: u32,
    cap: u32,
) -> PyResult<(Vec<(u32, PyCollapsedSeries)>, u32)> {
    let s = hilbnum::parse_stream_name(stream).map_err(py_err)?;
    let run = hilbnum::convergence_run(s.as_ref(), &y.inner, n_max, cap).map_err(py_err)?;
    Ok((
        run.steps
            .into_iter()
            .map(|(n, g)| (n, PyCollapsedSeries { inner: g }))
            .collect(),
        run.stabilized_prefix,
    ))
}

#[pyfunction]
fn verify_23gen_recursion(n_max: u32, cap: u32) -> PyResult<bool> {
    hilbnum::verify_23gen_recursion(n_max, cap).map_err(py_err)
}

/// The d-th Macaulay expansion of u, as `[(k_j, j)]` with j descending.
#[pyfunction]
fn macaulay_expand(u: u64, d: u32) -> PyResult<Vec<(u64, u32)>> {
    if d == 0 {
        return Err(PyValueError::new_err("macaulay expansion needs d >= 1"));
    }
    Ok(hilbnum::macaulay_expand(u, d).terms().to_vec())
}

#[pyfunction]
fn macaulay_bound(u: u64, d: u32) -> PyResult<u64> {
    if d == 0 {
        return Err(PyValueError::new_err("macaulay bound needs d >= 1"));
    }
    Ok(hilbnum::macaulay_bound(u, d))
}

#[pyfunction]
fn is_o_sequence(coeffs: Vec<i64>) -> PyResult<bool> {
    let h = UnivariateSeries::new(coeffs).map_err(py_err)?;
    Ok(hilbnum::is_o_sequence(&h))
}

/// Classify a numerator prefix; returns `[(a, b, degenerate)]`, empty when
/// no certificate exists below `b_max`.
#[pyfunction]
fn classify_numerator(coeffs: Vec<i64>, b_max: u32) -> PyResult<Vec<(u64, u32, bool)>> {
    let f = UnivariateSeries::new(coeffs).map_err(py_err)?;
    Ok(hilbnum::classify_numerator(&f, b_max)
        .into_iter()
        .map(|c| (c.a, c.b, c.degenerate))
        .collect())
}

#[pyfunction]
fn numerator_degree_bound(a: Vec<i64>) -> u64 {
    hilbnum::numerator_degree_bound(&a)
}

#[pyfunction]
fn bjorner_kalai_check(p: &PyGradedSeries) -> bool {
    hilbnum::bjorner_kalai_check(&p.inner)
}

#[pyfunction]
fn pcond_check(p: &PyGradedSeries) -> bool {
    hilbnum::pcond_check(&p.inner)
}

#[pymodule]
fn hilbnum_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyMonomial>()?;
    m.add_class::<PyPartition>()?;
    m.add_class::<PyGradedSeries>()?;
    m.add_class::<PyCollapsedSeries>()?;
    m.add_class::<PyMonomialIdeal>()?;
    m.add_function(wrap_pyfunction!(realize_stream, m)?)?;
    m.add_function(wrap_pyfunction!(nu, m)?)?;
    m.add_function(wrap_pyfunction!(mu, m)?)?;
    m.add_function(wrap_pyfunction!(numerator_incl_excl, m)?)?;
    m.add_function(wrap_pyfunction!(numerator_lcm_lattice, m)?)?;
    m.add_function(wrap_pyfunction!(numerator_koszul, m)?)?;
    m.add_function(wrap_pyfunction!(numerator_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(lcm_lattice, m)?)?;
    m.add_function(wrap_pyfunction!(koszul_coefficient, m)?)?;
    m.add_function(wrap_pyfunction!(koszul_complex, m)?)?;
    m.add_function(wrap_pyfunction!(truncation_law, m)?)?;
    m.add_function(wrap_pyfunction!(intersect, m)?)?;
    m.add_function(wrap_pyfunction!(split_incl_excl, m)?)?;
    m.add_function(wrap_pyfunction!(convergence_run, m)?)?;
    m.add_function(wrap_pyfunction!(verify_23gen_recursion, m)?)?;
    m.add_function(wrap_pyfunction!(macaulay_expand, m)?)?;
    m.add_function(wrap_pyfunction!(macaulay_bound, m)?)?;
    m.add_function(wrap_pyfunction!(is_o_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(classify_numerator, m)?)?;
    m.add_function(wrap_pyfunction!(numerator_degree_bound, m)?)?;
    m.add_function(wrap_pyfunction!(bjorner_kalai_check, m)?)?;
    m.add_function(wrap_pyfunction!(pcond_check, m)?)?;
    Ok(())
}
