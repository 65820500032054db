//! Python module `ehp`: closed-form levels, the finite-difference oracle and
//! wavefunction sampling.

use ehp_core::oracle::{auto_grid, eigen_lowest, GridSpec, OracleMode};
use ehp_core::spectra::{enumerate_bound_states, Model};
use ehp_core::wavefunction::{build_wavefunction, normalize};
use ehp_core::{Error, PhysicalContext, QuantumNumbers, Variant};
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

create_exception!(
    ehp,
    NoBoundState,
    PyValueError,
    "No normalisable level for these quantum numbers."
);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::NoBoundState { .. }
        | Error::SupercriticalBarrier { .. }
        | Error::NotBoundRegime { .. } => NoBoundState::new_err(e.to_string()),
        Error::QuadratureFailure { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn context(hbar: f64, mu: f64) -> PyResult<PhysicalContext> {
    PhysicalContext::natural(hbar, mu).map_err(to_py)
}

fn variant(name: &str) -> PyResult<Variant> {
    name.parse().map_err(to_py)
}

/// Strengths `A, B, C, D` and screening parameter `alpha` of
/// `V = -A x/(1-x) + B x/(1-x)^2 - C/r + D x/r`, `x = exp(-alpha r)`.
#[pyclass(name = "Potential", frozen, from_py_object)]
#[derive(Clone)]
struct PyPotential {
    inner: ehp_core::PotentialParams,
}

#[pymethods]
impl PyPotential {
    #[new]
    #[pyo3(signature = (alpha, a=0.0, b=0.0, c=0.0, d=0.0))]
    fn new(alpha: f64, a: f64, b: f64, c: f64, d: f64) -> PyResult<Self> {
        Ok(Self {
            inner: ehp_core::PotentialParams::new(a, b, c, d, alpha).map_err(to_py)?,
        })
    }

    #[getter]
    fn a(&self) -> f64 {
        self.inner.a
    }

    #[getter]
    fn b(&self) -> f64 {
        self.inner.b
    }

    #[getter]
    fn c(&self) -> f64 {
        self.inner.c
    }

    #[getter]
    fn d(&self) -> f64 {
        self.inner.d
    }

    #[getter]
    fn alpha(&self) -> f64 {
        self.inner.alpha
    }

    /// Exact potential at `r > 0`.
    fn __call__(&self, r: f64) -> PyResult<f64> {
        ehp_core::potential::potential_value(&self.inner, r).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        let p = &self.inner;
        format!(
            "Potential(alpha={}, a={}, b={}, c={}, d={})",
            p.alpha, p.a, p.b, p.c, p.d
        )
    }
}

/// Energy of level `(n, l)`. `model` selects the general formula (`ehp`) or
/// one of the special-case forms.
#[pyfunction]
#[pyo3(signature = (potential, n, l, hbar=1.0, mu=1.0, variant="rederived", model="ehp"))]
fn energy(
    potential: &PyPotential,
    n: u32,
    l: u32,
    hbar: f64,
    mu: f64,
    variant: &str,
    model: &str,
) -> PyResult<f64> {
    let model: Model = model.parse().map_err(to_py)?;
    let level = model
        .energy(
            &potential.inner,
            QuantumNumbers::new(n, l),
            &context(hbar, mu)?,
            self::variant(variant)?,
        )
        .map_err(to_py)?;
    if !level.bound {
        return Err(NoBoundState::new_err(format!(
            "level n={n} l={l} is not below the threshold"
        )));
    }
    Ok(level.energy)
}

/// `[(n, E_n)]` for every bound level at angular momentum `l`.
#[pyfunction]
#[pyo3(signature = (potential, l, hbar=1.0, mu=1.0, variant="rederived", n_max=200))]
fn bound_states(
    potential: &PyPotential,
    l: u32,
    hbar: f64,
    mu: f64,
    variant: &str,
    n_max: u32,
) -> PyResult<Vec<(u32, f64)>> {
    let levels = enumerate_bound_states(
        &potential.inner,
        l,
        &context(hbar, mu)?,
        self::variant(variant)?,
        n_max,
    );
    Ok(levels.iter().map(|lvl| (lvl.qn.n, lvl.energy)).collect())
}

/// Lowest `k` finite-difference levels below the continuum, Richardson
/// extrapolated. `mode` is `"ga"` (Greene-Aldrich equation) or `"exact"`.
#[pyfunction]
#[pyo3(signature = (potential, l, k, hbar=1.0, mu=1.0, mode="ga", points=10239, r_max=None))]
#[allow(clippy::too_many_arguments)]
fn oracle_levels(
    potential: &PyPotential,
    l: u32,
    k: usize,
    hbar: f64,
    mu: f64,
    mode: &str,
    points: usize,
    r_max: Option<f64>,
) -> PyResult<Vec<f64>> {
    let mode = match mode {
        "ga" | "greene-aldrich" => OracleMode::GreeneAldrich,
        "exact" => OracleMode::Exact,
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown mode {other:?}; use 'ga' or 'exact'"
            )))
        }
    };
    if k == 0 {
        return Err(PyValueError::new_err("k must be at least 1"));
    }
    let ctx = context(hbar, mu)?;
    let p = &potential.inner;
    let grid = match r_max {
        Some(r) => GridSpec::new(0.0, r, points),
        None => auto_grid(p, l, &ctx, mode, k as u32 - 1, points),
    }
    .map_err(to_py)?;
    let res = eigen_lowest(p, l, &ctx, mode, &grid, k).map_err(to_py)?;
    Ok(res.richardson.iter().map(|e| e.value).collect())
}

/// Normalised radial function `u(r)` of level `(n, l)`.
#[pyclass(name = "Wavefunction", frozen)]
struct PyWavefunction {
    inner: ehp_core::RadialWavefunction,
}

#[pymethods]
impl PyWavefunction {
    #[new]
    #[pyo3(signature = (potential, n, l, hbar=1.0, mu=1.0))]
    fn new(potential: &PyPotential, n: u32, l: u32, hbar: f64, mu: f64) -> PyResult<Self> {
        let wf = build_wavefunction(
            &potential.inner,
            QuantumNumbers::new(n, l),
            &context(hbar, mu)?,
        )
        .and_then(|w| normalize(&w))
        .map_err(to_py)?;
        Ok(Self { inner: wf })
    }

    #[getter]
    fn energy(&self) -> f64 {
        self.inner.energy
    }

    #[getter]
    fn lambda_(&self) -> f64 {
        self.inner.lambda
    }

    #[getter]
    fn nu(&self) -> f64 {
        self.inner.nu
    }

    #[getter]
    fn log_norm(&self) -> f64 {
        self.inner.log_norm
    }

    /// Radius beyond which `u^2` stays below `1e-12` of its peak.
    #[getter]
    fn r_max(&self) -> f64 {
        self.inner.support().1
    }

    fn __call__(&self, r: f64) -> f64 {
        self.inner.value(r)
    }

    /// `u` at each radius.
    fn sample(&self, radii: Vec<f64>) -> Vec<f64> {
        radii.into_iter().map(|r| self.inner.value(r)).collect()
    }
}

#[pymodule]
fn ehp(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPotential>()?;
    m.add_class::<PyWavefunction>()?;
    m.add_function(wrap_pyfunction!(energy, m)?)?;
    m.add_function(wrap_pyfunction!(bound_states, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_levels, m)?)?;
    m.add("NoBoundState", m.py().get_type::<NoBoundState>())?;
    Ok(())
}
