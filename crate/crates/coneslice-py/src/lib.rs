//! Python bindings for the coneslice library.
//!
//! Exposes the cone type and the main solver entry points:
//!
//!     import coneslice_py as cs
//!     sol = cs.orthant_solve([1.0, 2.0, 3.0])
//!     cone = cs.Cone.from_generators([[1, -1, -0.2], [1, 1, -0.2], [1, 0, 0.01]])
//!     points = cs.enumerate_stationary(cone, [1.0, 0.0, 0.0], starts=200, seed=7)

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use coneslice::geometry::{self, Hyperangle, Hyperplane, Point};
use coneslice::{oracle, orthant, solver, stationarity, tol};

fn to_py_err(err: coneslice::Error) -> PyErr {
    PyValueError::new_err(err.to_string())
}

fn point_of(coords: &[f64]) -> Point {
    Point::from_column_slice(coords)
}

/// A simplicial cone spanned by n linearly independent generators.
#[pyclass(from_py_object)]
#[derive(Clone)]
struct Cone {
    inner: Hyperangle,
}

#[pymethods]
impl Cone {
    /// Cone from generator vectors (rows).
    #[staticmethod]
    fn from_generators(generators: Vec<Vec<f64>>) -> PyResult<Self> {
        let cols = generators.iter().map(|g| point_of(g)).collect();
        Ok(Self {
            inner: Hyperangle::new(cols).map_err(to_py_err)?,
        })
    }

    /// The non-negative orthant of R^n.
    #[staticmethod]
    fn orthant(n: usize) -> PyResult<Self> {
        Ok(Self {
            inner: Hyperangle::orthant(n).map_err(to_py_err)?,
        })
    }

    /// Planar angle of the given aperture (degrees), bisected by the
    /// positive x-axis.
    #[staticmethod]
    fn angle2d(alpha_degrees: f64) -> PyResult<Self> {
        Ok(Self {
            inner: Hyperangle::angle2d(alpha_degrees.to_radians()).map_err(to_py_err)?,
        })
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.inner.dim()
    }

    /// Unit generators, one list per generator.
    fn generators(&self) -> Vec<Vec<f64>> {
        (0..self.inner.dim())
            .map(|j| self.inner.generator(j).iter().copied().collect())
            .collect()
    }

    fn contains(&self, point: Vec<f64>) -> PyResult<bool> {
        self.inner.contains(&point_of(&point)).map_err(to_py_err)
    }

    fn interior_contains(&self, point: Vec<f64>) -> PyResult<bool> {
        self.inner
            .interior_contains(&point_of(&point))
            .map_err(to_py_err)
    }

    fn k_subset_kstar(&self) -> bool {
        self.inner.k_subset_kstar()
    }

    fn kstar_subset_k(&self) -> bool {
        self.inner.kstar_subset_k()
    }

    /// Minimal cone-segment volume and intercepts for a hyperplane through
    /// an interior point.
    fn min_segment_volume(&self, point: Vec<f64>) -> PyResult<(f64, Vec<f64>)> {
        self.inner
            .min_segment_volume(&point_of(&point))
            .map_err(to_py_err)
    }

    fn __repr__(&self) -> String {
        format!("Cone(dimension={})", self.inner.dim())
    }
}

/// Stationary hyperplane for the orthant with its closed-form data.
#[pyclass]
struct OrthantSolution {
    #[pyo3(get)]
    lambda_: f64,
    #[pyo3(get)]
    intercepts: Vec<f64>,
    #[pyo3(get)]
    volume: f64,
    #[pyo3(get)]
    distance: f64,
    #[pyo3(get)]
    plane_normal: Vec<f64>,
}

#[pymethods]
impl OrthantSolution {
    fn __repr__(&self) -> String {
        format!(
            "OrthantSolution(lambda={}, volume={}, distance={})",
            self.lambda_, self.volume, self.distance
        )
    }
}

/// A stationary hyperplane found by the general solver.
#[pyclass]
struct StationaryPlane {
    #[pyo3(get)]
    normal: Vec<f64>,
    #[pyo3(get)]
    volume: f64,
    #[pyo3(get)]
    residual_norm: f64,
    #[pyo3(get)]
    kind: String,
    #[pyo3(get)]
    hessian_eigenvalues: Vec<f64>,
}

#[pymethods]
impl StationaryPlane {
    fn __repr__(&self) -> String {
        format!(
            "StationaryPlane(kind={}, volume={}, residual={:.3e})",
            self.kind, self.volume, self.residual_norm
        )
    }
}

impl From<&solver::StationaryPoint> for StationaryPlane {
    fn from(p: &solver::StationaryPoint) -> Self {
        Self {
            normal: p.plane.normal().iter().copied().collect(),
            volume: p.volume,
            residual_norm: p.residual_norm,
            kind: p.kind.as_str().to_string(),
            hessian_eigenvalues: p.hessian_eigenvalues.clone(),
        }
    }
}

/// Unique stationary hyperplane through an interior point of the orthant.
#[pyfunction]
fn orthant_solve(point: Vec<f64>) -> PyResult<OrthantSolution> {
    let sol = orthant::stationary_section(&point).map_err(to_py_err)?;
    Ok(OrthantSolution {
        lambda_: sol.lambda,
        intercepts: sol.intercepts,
        volume: sol.volume,
        distance: sol.distance,
        plane_normal: sol.plane.normal().iter().copied().collect(),
    })
}

/// Length of the shortest segment cut from the orthant by a line through
/// an interior point.
#[pyfunction]
fn shortest_segment(point: Vec<f64>) -> PyResult<f64> {
    orthant::shortest_segment(&point).map_err(to_py_err)
}

/// Closed-form shortest cut length for the first quadrant.
#[pyfunction]
fn philon_length(a1: f64, a2: f64) -> PyResult<f64> {
    orthant::philon_length_2d(a1, a2).map_err(to_py_err)
}

/// Number of distinct minimal-length cutting lines through a point.
#[pyfunction]
fn minimal_line_count(point: Vec<f64>) -> PyResult<usize> {
    orthant::minimal_line_count(&point).map_err(to_py_err)
}

/// Local volume minimizer over hyperplanes through an interior point.
#[pyfunction]
#[pyo3(signature = (cone, point, tol=tol::TOL_STAT))]
fn minimize(cone: &Cone, point: Vec<f64>, tol: f64) -> PyResult<StationaryPlane> {
    let found =
        solver::minimize(&cone.inner, &point_of(&point), None, tol).map_err(to_py_err)?;
    Ok(StationaryPlane::from(&found))
}

/// All stationary hyperplanes through a point, classified and sorted by
/// volume. Deterministic for a fixed seed.
#[pyfunction]
#[pyo3(signature = (cone, point, starts=0, seed=0, tol=tol::TOL_STAT))]
fn enumerate_stationary(
    cone: &Cone,
    point: Vec<f64>,
    starts: usize,
    seed: u64,
    tol: f64,
) -> PyResult<Vec<StationaryPlane>> {
    let starts = if starts == 0 {
        solver::default_num_starts(cone.inner.dim())
    } else {
        starts
    };
    let points = solver::enumerate_stationary(&cone.inner, &point_of(&point), starts, seed, tol);
    Ok(points.iter().map(StationaryPlane::from).collect())
}

/// Stationarity report of a plane (by its normal) at a point, as a dict.
#[pyfunction]
#[pyo3(signature = (cone, point, normal, tol=tol::TOL_STAT))]
fn stationarity_report(
    py: Python<'_>,
    cone: &Cone,
    point: Vec<f64>,
    normal: Vec<f64>,
    tol: f64,
) -> PyResult<Py<pyo3::types::PyDict>> {
    let plane = Hyperplane::new(point_of(&normal)).map_err(to_py_err)?;
    let rep = stationarity::residual(&cone.inner, &point_of(&point), &plane, tol)
        .map_err(to_py_err)?;
    let dict = pyo3::types::PyDict::new(py);
    dict.set_item("residual_norm", rep.residual_norm)?;
    dict.set_item(
        "residual_vector",
        rep.residual_vector.iter().copied().collect::<Vec<f64>>(),
    )?;
    dict.set_item("foot", rep.foot.iter().copied().collect::<Vec<f64>>())?;
    dict.set_item("centroid", rep.centroid.iter().copied().collect::<Vec<f64>>())?;
    dict.set_item("a_prime", rep.a_prime.iter().copied().collect::<Vec<f64>>())?;
    dict.set_item("equal_distance_spread", rep.equal_distance_spread)?;
    dict.set_item("monge_gap", rep.monge_gap)?;
    dict.set_item("is_stationary", rep.is_stationary)?;
    Ok(dict.into())
}

/// 2D region classification: (label, theta, expected_count).
#[pyfunction]
fn philon_region(alpha_degrees: f64, point: Vec<f64>) -> PyResult<(String, f64, usize)> {
    let r = solver::philon2d_region(alpha_degrees.to_radians(), &point_of(&point))
        .map_err(to_py_err)?;
    Ok((r.label.as_str().to_string(), r.theta, r.expected_count))
}

/// Infimum of cross-section volumes through a boundary point:
/// (m_a, face_dimension, attained_numerically).
#[pyfunction]
fn boundary_infimum(cone: &Cone, point: Vec<f64>) -> PyResult<(f64, usize, bool)> {
    let r = solver::boundary_infimum(&cone.inner, &point_of(&point)).map_err(to_py_err)?;
    Ok((r.m_a, r.face_dimension, r.attained_numerically))
}

/// Brute-force grid minimum: (volume, evaluations).
#[pyfunction]
fn oracle_min(cone: &Cone, point: Vec<f64>) -> PyResult<(f64, usize)> {
    let m = oracle::grid_refine_min(&cone.inner, &point_of(&point), &oracle::GridSpec::default())
        .map_err(to_py_err)?;
    Ok((m.volume, m.evaluations))
}

/// k-volume of a simplex from its vertices.
#[pyfunction]
fn simplex_volume(vertices: Vec<Vec<f64>>) -> PyResult<f64> {
    let pts: Vec<Point> = vertices.iter().map(|v| point_of(v)).collect();
    geometry::simplex_volume(&pts).map_err(to_py_err)
}

#[pyfunction]
fn circumcenter(vertices: Vec<Vec<f64>>) -> PyResult<Vec<f64>> {
    let pts: Vec<Point> = vertices.iter().map(|v| point_of(v)).collect();
    Ok(geometry::circumcenter(&pts)
        .map_err(to_py_err)?
        .iter()
        .copied()
        .collect())
}

#[pyfunction]
fn monge_point(vertices: Vec<Vec<f64>>) -> PyResult<Vec<f64>> {
    let pts: Vec<Point> = vertices.iter().map(|v| point_of(v)).collect();
    Ok(geometry::monge_point(&pts)
        .map_err(to_py_err)?
        .iter()
        .copied()
        .collect())
}

#[pymodule]
fn coneslice_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", coneslice::VERSION)?;
    m.add_class::<Cone>()?;
    m.add_class::<OrthantSolution>()?;
    m.add_class::<StationaryPlane>()?;
    m.add_function(wrap_pyfunction!(orthant_solve, m)?)?;
    m.add_function(wrap_pyfunction!(shortest_segment, m)?)?;
    m.add_function(wrap_pyfunction!(philon_length, m)?)?;
    m.add_function(wrap_pyfunction!(minimal_line_count, m)?)?;
    m.add_function(wrap_pyfunction!(minimize, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_stationary, m)?)?;
    m.add_function(wrap_pyfunction!(stationarity_report, m)?)?;
    m.add_function(wrap_pyfunction!(philon_region, m)?)?;
    m.add_function(wrap_pyfunction!(boundary_infimum, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_min, m)?)?;
    m.add_function(wrap_pyfunction!(simplex_volume, m)?)?;
    m.add_function(wrap_pyfunction!(circumcenter, m)?)?;
    m.add_function(wrap_pyfunction!(monge_point, m)?)?;
    Ok(())
}
