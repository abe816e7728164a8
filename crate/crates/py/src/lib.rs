//! Python bindings. Rationals go in as anything whose `str()` is a rational
//! (`int`, `Fraction`, `"p/q"`, decimal strings) and come out as `Fraction`.
//! Structured results are the same JSON documents the CLI prints, as dicts.

use cpos_core::check::run_checks;
use cpos_core::chords::count_midpoint_chords;
use cpos_core::edit::project_vertex;
use cpos_core::evolute::lambda_sequence;
use cpos_core::io::{self, Refusal};
use cpos_core::kernel::{parse_rational, Point, Rational};
use cpos_core::polygon::{self, is_equal_area, is_symmetric, CposPolygon};
use cpos_core::scene::{layer, parse_features, render_svg, Feature, Mu, Params};
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde_json::Value;

create_exception!(
    cpos,
    GeometryError,
    PyValueError,
    "Geometric refusal: args are (kind, message, index)."
);

fn refusal(r: Refusal) -> PyErr {
    GeometryError::new_err((r.kind, r.message, r.index))
}

fn to_rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    let text: String = obj.str()?.extract()?;
    parse_rational(&text).map_err(|_| PyValueError::new_err(format!("not a rational: {text}")))
}

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((r.to_string(),))
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?
        .call_method1("loads", (io::to_string(v),))
}

#[pyclass(frozen, skip_from_py_object, name = "Polygon", module = "cpos")]
#[derive(Clone)]
pub struct PyPolygon {
    inner: CposPolygon,
}

impl PyPolygon {
    fn layer<'py>(
        &self,
        py: Python<'py>,
        f: Feature,
        params: Params,
    ) -> PyResult<Bound<'py, PyAny>> {
        let v = py
            .detach(|| layer(&self.inner, f, &params))
            .map_err(refusal)?;
        to_py(py, &v)
    }
}

#[pymethods]
impl PyPolygon {
    /// Validates a list of `(x, y)` pairs as a CPOS polygon.
    #[new]
    fn new(vertices: Vec<(Bound<'_, PyAny>, Bound<'_, PyAny>)>) -> PyResult<Self> {
        let pts = vertices
            .iter()
            .map(|(x, y)| Ok(Point::new(to_rational(x)?, to_rational(y)?)))
            .collect::<PyResult<Vec<_>>>()?;
        let inner = polygon::validate(&pts).map_err(|e| refusal(e.into()))?;
        Ok(PyPolygon { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let pts = io::parse_vertices(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        let inner = polygon::validate(&pts).map_err(|e| refusal(e.into()))?;
        Ok(PyPolygon { inner })
    }

    #[staticmethod]
    fn hex_ea2() -> Self {
        PyPolygon {
            inner: polygon::hex_ea2(),
        }
    }

    #[staticmethod]
    fn hex_sym() -> Self {
        PyPolygon {
            inner: polygon::hex_sym(),
        }
    }

    /// Seeded random CPOS polygon with `2n` vertices.
    #[staticmethod]
    fn random(n: usize, seed: u64) -> PyResult<Self> {
        let inner = polygon::random_cpos(n, seed).map_err(|e| refusal(e.into()))?;
        Ok(PyPolygon { inner })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn vertices<'py>(
        &self,
        py: Python<'py>,
    ) -> PyResult<Vec<(Bound<'py, PyAny>, Bound<'py, PyAny>)>> {
        self.inner
            .vertices()
            .iter()
            .map(|p| Ok((fraction(py, &p.x)?, fraction(py, &p.y)?)))
            .collect()
    }

    #[getter]
    fn area<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.area())
    }

    fn is_symmetric(&self) -> bool {
        is_symmetric(&self.inner).is_some()
    }

    fn is_equal_area(&self) -> bool {
        is_equal_area(&self.inner)
    }

    fn to_json(&self) -> String {
        io::to_string(&io::polygon(&self.inner))
    }

    fn lambda_sequence<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        let seq = lambda_sequence(&self.inner).map_err(|e| refusal(e.into()))?;
        seq.iter().map(|r| fraction(py, r)).collect()
    }

    fn area_evolute<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        self.layer(py, Feature::Ae, Params::default())
    }

    fn central_symmetry_set<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        self.layer(py, Feature::Css, Params::default())
    }

    /// Number of chord families whose midpoint is `(x, y)`.
    fn nchords(&self, x: &Bound<'_, PyAny>, y: &Bound<'_, PyAny>) -> PyResult<usize> {
        let p = Point::new(to_rational(x)?, to_rational(y)?);
        count_midpoint_chords(&self.inner, &p).map_err(|e| refusal(e.into()))
    }

    fn equidistant<'py>(
        &self,
        py: Python<'py>,
        t: &Bound<'py, PyAny>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let params = Params {
            t: Some(to_rational(t)?),
            ..Params::default()
        };
        self.layer(py, Feature::Equidistant, params)
    }

    fn ess<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        self.layer(py, Feature::Ess, Params::default())
    }

    /// Parallel-diagonal transform; `mu=None` picks a convex one.
    #[pyo3(signature = (mu = None))]
    fn pd_transform<'py>(
        &self,
        py: Python<'py>,
        mu: Option<Bound<'py, PyAny>>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let mu = match mu {
            Some(m) => Mu::Value(to_rational(&m)?),
            None => Mu::Auto,
        };
        self.layer(
            py,
            Feature::Pd,
            Params {
                mu: Some(mu),
                ..Params::default()
            },
        )
    }

    fn n_points<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        self.layer(py, Feature::NPoints, Params::default())
    }

    fn area_parallel<'py>(
        &self,
        py: Python<'py>,
        level: &Bound<'py, PyAny>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let params = Params {
            level: Some(to_rational(level)?),
            ..Params::default()
        };
        self.layer(py, Feature::AreaParallel, params)
    }

    fn almost_symmetry<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        self.layer(py, Feature::AlmostSymmetry, Params::default())
    }

    fn rass<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        self.layer(py, Feature::Rass, Params::default())
    }

    /// Runs the theorem suite.
    fn check<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let report = py.detach(|| run_checks(&self.inner));
        to_py(py, &report.to_json())
    }

    #[pyo3(signature = (features = "diagonals,ae,css", t = None, level = None, mu = None))]
    fn svg(
        &self,
        py: Python<'_>,
        features: &str,
        t: Option<Bound<'_, PyAny>>,
        level: Option<Bound<'_, PyAny>>,
        mu: Option<Bound<'_, PyAny>>,
    ) -> PyResult<String> {
        let features =
            parse_features(features).map_err(|e| PyValueError::new_err(e.to_string()))?;
        let params = Params {
            t: t.map(|x| to_rational(&x)).transpose()?,
            level: level.map(|x| to_rational(&x)).transpose()?,
            mu: mu.map(|x| to_rational(&x).map(Mu::Value)).transpose()?,
        };
        py.detach(|| render_svg(&self.inner, &features, &params))
            .map_err(refusal)
    }

    /// Drags vertex `k` (1-based) toward `(x, y)`; returns `(polygon, clamped)`.
    fn project(
        &self,
        k: usize,
        x: &Bound<'_, PyAny>,
        y: &Bound<'_, PyAny>,
    ) -> PyResult<(PyPolygon, bool)> {
        let target = Point::new(to_rational(x)?, to_rational(y)?);
        let r = project_vertex(&self.inner, k, &target).map_err(|e| refusal(e.into()))?;
        Ok((PyPolygon { inner: r.polygon }, r.clamped))
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __eq__(&self, other: &PyPolygon) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Polygon({})", self.to_json())
    }
}

#[pymodule]
fn cpos(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPolygon>()?;
    m.add("GeometryError", m.py().get_type::<GeometryError>())?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
