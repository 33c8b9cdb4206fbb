//! Python bindings: the descriptor grammar, growth characteristics,
//! radial profiles, zero sets, kernel transforms, and the verification
//! suites, exposed as the `growthlab_py` extension module.

use growthlab_cli::{descriptor, verify, zeros_io};
use growthlab_core::funcat::FunctionSpec;
use growthlab_core::kernel::{self, KernelParams};
use growthlab_core::points::PointDistribution;
use growthlab_core::products;
use growthlab_core::profile::{self, RadialProfile, Tail};
use growthlab_core::radial::{self, CircleQuadratureSettings};
use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn settings() -> CircleQuadratureSettings {
    CircleQuadratureSettings::default()
}

fn params(p: f64) -> PyResult<KernelParams> {
    KernelParams::new(p).map_err(value_err)
}

/// A function given by a descriptor, e.g. `exp`, `sin:pi`, `poly:1,0,-1`,
/// `ml:0.75`, `quot:sin:pi|poly:pi,0`.
#[pyclass(frozen)]
struct Function {
    spec: FunctionSpec,
    text: String,
}

#[pymethods]
impl Function {
    #[new]
    fn new(descriptor: &str) -> PyResult<Self> {
        Ok(Self {
            spec: descriptor::parse_spec(descriptor).map_err(value_err)?,
            text: descriptor.to_string(),
        })
    }

    /// Genus-q canonical product over the zero set, q from the growth
    /// order p.
    #[staticmethod]
    fn from_zeros(zeros: &ZeroSet, p: f64) -> PyResult<Self> {
        let product = products::build_f_z(zeros.points.clone(), p).map_err(value_err)?;
        let text = format!("product over {} zeros, genus {}", zeros.points.entries().len(), product.genus);
        Ok(Self {
            spec: FunctionSpec::CanonicalProduct(product),
            text,
        })
    }

    fn __repr__(&self) -> String {
        format!("Function({:?})", self.text)
    }

    #[getter]
    fn is_entire(&self) -> bool {
        self.spec.is_entire()
    }

    fn eval(&self, z: Complex64) -> PyResult<Complex64> {
        Ok(self.spec.evaluate(z).map_err(value_err)?.value)
    }

    fn log_abs(&self, z: Complex64) -> PyResult<f64> {
        self.spec.log_abs(z).map_err(value_err)
    }

    /// ln max |f| over the circle |z| = r.
    fn ln_max(&self, r: f64) -> PyResult<f64> {
        radial::max_modulus(&self.spec, r, &settings()).map_err(value_err)
    }

    /// Mean of ln |f| over the circle |z| = r.
    fn circle_mean(&self, r: f64) -> PyResult<f64> {
        radial::circle_mean_log(&self.spec, r, &settings()).map_err(value_err)
    }

    /// The characteristic: mean of ln+ |f| plus the integrated pole count.
    fn nevanlinna_t(&self, r: f64) -> PyResult<f64> {
        radial::nevanlinna_t(&self.spec, r, &settings()).map_err(value_err)
    }

    /// C(r) - ln|f(0)| - N_zeros(r) + N_poles(r); vanishes when the
    /// structural zero data is exact.
    fn jensen_residual(&self, r: f64) -> PyResult<f64> {
        radial::jensen_residual(&self.spec, r, &settings()).map_err(value_err)
    }

    /// Zeros of modulus <= r known structurally.
    fn zeros_up_to(&self, r: f64) -> PyResult<ZeroSet> {
        Ok(ZeroSet {
            points: self.spec.known_zeros(r).map_err(value_err)?,
        })
    }

    /// Evaluate the whole chain u(0) <= B <= C <= lnM, C+ <= T <= lnM+ on
    /// the radii; returns a dict of series plus the worst violation.
    fn chain<'py>(&self, py: Python<'py>, radii: Vec<f64>) -> PyResult<Bound<'py, PyDict>> {
        let rep = radial::chain_check(&self.spec, &radii, &settings()).map_err(value_err)?;
        let d = PyDict::new(py);
        d.set_item("radii", rep.radii)?;
        d.set_item("u0", rep.u0)?;
        d.set_item("B", rep.b)?;
        d.set_item("C", rep.c)?;
        d.set_item("T", rep.t)?;
        d.set_item("lnM", rep.ln_m)?;
        d.set_item("violations", rep.violations)?;
        d.set_item("max_violation", rep.max_violation)?;
        Ok(d)
    }

    /// Least-squares order and type of ln max |f| sampled on
    /// [r_min, r_max] (16 points per decade; needs >= 2 decades).
    fn order_type(&self, r_min: f64, r_max: f64) -> PyResult<(f64, f64)> {
        let grid = profile::log_grid(r_min, r_max, 16).map_err(value_err)?;
        let s = settings();
        let vals: Result<Vec<f64>, _> = grid
            .iter()
            .map(|r| radial::max_modulus(&self.spec, *r, &s))
            .collect();
        let prof = RadialProfile::new(grid, vals.map_err(value_err)?, 0.0, Tail::Forbidden)
            .map_err(value_err)?;
        profile::estimate_order_type(&prof).map_err(value_err)
    }
}

/// A finite multiset of points (zeros or poles) with multiplicities.
#[pyclass(frozen)]
struct ZeroSet {
    points: PointDistribution,
}

#[pymethods]
impl ZeroSet {
    #[new]
    fn new(points: Vec<(Complex64, u32)>) -> Self {
        Self {
            points: PointDistribution::from_points(points),
        }
    }

    /// Read a CSV (`re,im,multiplicity`) or JSON zero list.
    #[staticmethod]
    fn read(path: &str) -> PyResult<Self> {
        Ok(Self {
            points: zeros_io::read_zero_list(std::path::Path::new(path)).map_err(value_err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!(
            "ZeroSet({} points, origin multiplicity {})",
            self.points.entries().len(),
            self.points.origin_multiplicity()
        )
    }

    fn __len__(&self) -> usize {
        self.points.entries().len()
    }

    #[getter]
    fn origin_multiplicity(&self) -> u32 {
        self.points.origin_multiplicity()
    }

    fn entries(&self) -> Vec<(Complex64, u32)> {
        self.points.entries().to_vec()
    }

    /// Number of points with modulus <= r, counted with multiplicity.
    fn radial_count(&self, r: f64) -> f64 {
        self.points.radial_count(r)
    }

    /// Integrated counting function: sum of m ln(r/|a|) over |a| <= r.
    fn integral_count(&self, r: f64) -> f64 {
        self.points.integral_count(r)
    }

    /// Canonical CSV form (sorted, merged, origin row first when present).
    fn to_csv(&self) -> String {
        zeros_io::zero_list_to_csv(&self.points)
    }
}

/// Sampled nondecreasing radial data (a circle-mean or characteristic
/// profile) on a log grid, with a declared continuation past the grid.
#[pyclass(frozen)]
struct Profile {
    inner: RadialProfile,
}

#[pymethods]
impl Profile {
    #[new]
    fn new(grid: Vec<f64>, values: Vec<f64>, left: f64) -> PyResult<Self> {
        Ok(Self {
            inner: RadialProfile::new(grid, values, left, Tail::Forbidden).map_err(value_err)?,
        })
    }

    /// Power-law continuation fitted on the top decade.
    fn fit_tail(&self) -> PyResult<Self> {
        Ok(Self {
            inner: self.inner.clone().with_fitted_tail().map_err(value_err)?,
        })
    }

    /// Continue past the grid with the last value.
    fn constant_tail(&self) -> Self {
        Self {
            inner: self.inner.clone().with_tail(Tail::Constant),
        }
    }

    fn __repr__(&self) -> String {
        let g = self.inner.grid();
        format!("Profile({} points on [{}, {}])", g.len(), g[0], g[g.len() - 1])
    }

    #[getter]
    fn grid(&self) -> Vec<f64> {
        self.inner.grid().to_vec()
    }

    #[getter]
    fn values(&self) -> Vec<f64> {
        self.inner.values().to_vec()
    }

    fn value(&self, r: f64) -> PyResult<f64> {
        self.inner.value(r).map_err(value_err)
    }

    /// Area mean over the disk of radius r.
    fn disk_mean(&self, r: f64) -> PyResult<f64> {
        self.inner.disk_mean(r).map_err(value_err)
    }

    /// Least-squares order and type over the top decade.
    fn order_type(&self) -> PyResult<(f64, f64)> {
        profile::estimate_order_type(&self.inner).map_err(value_err)
    }
}

/// P(rho): pi rho for rho >= 1/2, pi rho / sin(pi rho) below.
#[pyfunction]
fn paley_constant(rho: f64) -> PyResult<f64> {
    kernel::paley_constant(rho).map_err(value_err)
}

/// The sharp kernel order max(1, 2 rho) for growth order rho.
#[pyfunction]
fn optimal_p(rho: f64) -> PyResult<f64> {
    kernel::optimal_p(rho).map_err(value_err)
}

/// The order-p kernel transform of the profile, evaluated at r.
#[pyfunction]
fn kernel_transform(profile: &Profile, p: f64, r: f64) -> PyResult<f64> {
    kernel::kernel_transform(&profile.inner, &params(p)?, r).map_err(value_err)
}

/// Growth bound from a circle-mean or characteristic profile: the kernel
/// transform on each radius, returned as a new profile.
#[pyfunction]
fn transform_bound(profile: &Profile, p: f64, radii: Vec<f64>) -> PyResult<Profile> {
    Ok(Profile {
        inner: kernel::theorem1_bound(&profile.inner, &params(p)?, &radii).map_err(value_err)?,
    })
}

/// Growth bound for any function vanishing on the zero set, from the
/// integrated counting function alone.
#[pyfunction]
fn zeros_bound(zeros: &ZeroSet, p: f64, radii: Vec<f64>) -> PyResult<Profile> {
    Ok(Profile {
        inner: kernel::theorem2_bound(&zeros.points, &params(p)?, &radii).map_err(value_err)?,
    })
}

/// E_order(z; parameter) by series with closed forms at the classical
/// parameters.
#[pyfunction]
fn mittag_leffler(order: f64, parameter: f64, z: Complex64) -> PyResult<Complex64> {
    Ok(growthlab_core::funcat::mittag_leffler(order, parameter, z)
        .map_err(value_err)?
        .value)
}

/// Run a named verification suite; returns (passed, [failed check names]).
#[pyfunction]
fn verify_suite(name: &str) -> PyResult<(bool, Vec<String>)> {
    let report = verify::run_suite(name).map_err(value_err)?;
    let failed = report
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.name.clone())
        .collect();
    Ok((report.passed, failed))
}

#[pymodule]
fn growthlab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Function>()?;
    m.add_class::<ZeroSet>()?;
    m.add_class::<Profile>()?;
    m.add_function(wrap_pyfunction!(paley_constant, m)?)?;
    m.add_function(wrap_pyfunction!(optimal_p, m)?)?;
    m.add_function(wrap_pyfunction!(kernel_transform, m)?)?;
    m.add_function(wrap_pyfunction!(transform_bound, m)?)?;
    m.add_function(wrap_pyfunction!(zeros_bound, m)?)?;
    m.add_function(wrap_pyfunction!(mittag_leffler, m)?)?;
    m.add_function(wrap_pyfunction!(verify_suite, m)?)?;
    Ok(())
}
