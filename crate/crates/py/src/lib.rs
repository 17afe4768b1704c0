//! Python bindings: element construction, tabulation, transforms and the
//! cost table. Arrays cross the boundary as nested lists.

use std::collections::BTreeMap;

use macrotab_core::complex::{reference_simplex, SplitKind};
use macrotab_core::elements::{cost_table as core_cost_table, CiarletElement, ElementSpec};
use macrotab_core::quadrature::macro_rule as core_macro_rule;
use macrotab_core::transform::{geometry, TransformPlan};
use macrotab_core::Error;
use pyo3::exceptions::{PyArithmeticError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn to_py(e: Error) -> PyErr {
    if e.is_numerical() {
        return PyArithmeticError::new_err(e.to_string());
    }
    match e {
        Error::UnknownElement(_) | Error::InvalidArgument(_) | Error::InvalidSplit(_) | Error::Incompatible(_) | Error::PointOutside(_) => {
            PyValueError::new_err(e.to_string())
        }
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn check_points(points: &[Vec<f64>]) -> PyResult<()> {
    match points.iter().find(|p| p.len() != 2) {
        Some(p) => Err(PyValueError::new_err(format!("points need 2 coordinates, got {}", p.len()))),
        None => Ok(()),
    }
}

/// A macroelement on the reference triangle.
#[pyclass(name = "Element", module = "macrotab", frozen)]
struct PyElement {
    inner: CiarletElement,
}

#[pymethods]
impl PyElement {
    #[new]
    #[pyo3(signature = (name, degree=None, variant=None))]
    fn new(name: &str, degree: Option<usize>, variant: Option<&str>) -> PyResult<Self> {
        let spec = ElementSpec::lookup(name, degree, variant).map_err(to_py)?;
        Ok(Self { inner: spec.build().map_err(to_py)? })
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    #[getter]
    fn ncomp(&self) -> usize {
        self.inner.value_shape().ncomp()
    }

    #[getter]
    fn subcells(&self) -> usize {
        self.inner.num_subcells()
    }

    /// Condition number of the generalized Vandermonde matrix.
    #[getter]
    fn cond(&self) -> f64 {
        self.inner.cond()
    }

    fn node_labels(&self) -> Vec<String> {
        self.inner.dual().nodes().iter().map(|n| format!("{:?}", n.label)).collect()
    }

    /// `{(dim, id): [node indices]}` on the unsplit triangle.
    fn entity_dofs(&self) -> BTreeMap<(usize, usize), Vec<usize>> {
        self.inner.dual().entity_dofs().clone()
    }

    /// Values indexed `[derivative][basis][point][component]`, derivatives
    /// graded as `(0,0) (1,0) (0,1) (2,0) (1,1) (0,2) ...`.
    #[pyo3(signature = (points, max_deriv=0))]
    fn tabulate(&self, points: Vec<Vec<f64>>, max_deriv: usize) -> PyResult<Vec<Vec<Vec<Vec<f64>>>>> {
        check_points(&points)?;
        let t = self.inner.tabulate(&points, max_deriv).map_err(to_py)?;
        Ok(nest(&t))
    }

    /// Basis values on the physical triangle `cell` at physical `points`,
    /// through the element's transformation.
    #[pyo3(signature = (cell, points, max_deriv=0))]
    fn tabulate_physical(&self, cell: Vec<Vec<f64>>, points: Vec<Vec<f64>>, max_deriv: usize) -> PyResult<Vec<Vec<Vec<Vec<f64>>>>> {
        check_points(&points)?;
        let geom = geometry(&cell).map_err(to_py)?;
        let t = TransformPlan::new(self.inner.clone()).tabulate(&geom, &points, None, max_deriv).map_err(to_py)?;
        Ok(nest(&t))
    }

    /// `M` for the physical triangle `cell`, as rows.
    fn transform(&self, cell: Vec<Vec<f64>>) -> PyResult<Vec<Vec<f64>>> {
        let geom = geometry(&cell).map_err(to_py)?;
        let m = TransformPlan::new(self.inner.clone())
            .matrix(&geom)
            .map_err(to_py)?
            .ok_or_else(|| PyValueError::new_err(format!("{} is rebuilt per cell and has no transformation matrix", self.inner.name())))?;
        Ok(m.row_iter().map(|r| r.iter().copied().collect()).collect())
    }

    fn duality_error(&self) -> PyResult<f64> {
        self.inner.duality_error().map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("Element('{}', dim={})", self.inner.name(), self.inner.dim())
    }
}

fn nest(t: &macrotab_core::polyset::TabulatedValues) -> Vec<Vec<Vec<Vec<f64>>>> {
    (0..t.derivs().len())
        .map(|k| (0..t.nbasis()).map(|b| (0..t.npoints()).map(|p| (0..t.ncomp()).map(|c| t.get(k, b, p, c)).collect()).collect()).collect())
        .collect()
}

/// Rows `(element, degree, n_dof, subcells, n_q_ref, n_q, c)` of the cost model.
#[pyfunction]
fn cost_table() -> PyResult<Vec<(String, usize, u64, u64, u64, u64, u64)>> {
    Ok(core_cost_table()
        .map_err(to_py)?
        .into_iter()
        .map(|r| (r.element, r.degree, r.n_dof, r.subcells, r.n_q_ref, r.n_q, r.c))
        .collect())
}

/// `(points, weights, cells)` of the macro rule on a split reference triangle.
#[pyfunction]
fn macro_rule(split: &str, degree: usize) -> PyResult<(Vec<Vec<f64>>, Vec<f64>, Vec<usize>)> {
    let kind = match split.to_ascii_lowercase().as_str() {
        "none" => SplitKind::None,
        "alfeld" => SplitKind::Alfeld,
        "iso" | "iso2" => SplitKind::Iso(2),
        "iso3" => SplitKind::Iso(3),
        "ps6" => SplitKind::PowellSabin6,
        "ps12" => SplitKind::PowellSabin12,
        _ => return Err(PyValueError::new_err(format!("unknown split '{split}'"))),
    };
    let sp = kind.apply(&reference_simplex(2).map_err(to_py)?).map_err(to_py)?;
    let rule = core_macro_rule(sp.child(), degree).map_err(to_py)?;
    let cells = rule.cells().map(<[usize]>::to_vec).unwrap_or_default();
    Ok((rule.points().to_vec(), rule.weights().to_vec(), cells))
}

#[pymodule]
fn macrotab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyElement>()?;
    m.add_function(wrap_pyfunction!(cost_table, m)?)?;
    m.add_function(wrap_pyfunction!(macro_rule, m)?)?;
    Ok(())
}
