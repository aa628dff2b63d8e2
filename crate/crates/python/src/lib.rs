//! Python bindings. Points are 1-based here, as in the file formats.

use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use fundom::audit::{self, AuditLimits};
use fundom::constructions::{self, GammaStrategy};
use fundom::{cli, io, lexmax};

const CAP: usize = 1_000_000;

fn py_err(e: fundom::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_ratvec(items: &[Bound<'_, PyAny>]) -> PyResult<fundom::RatVec> {
    let tokens = items
        .iter()
        .map(|v| Ok(v.str()?.to_string()))
        .collect::<PyResult<Vec<String>>>()?;
    fundom::RatVec::parse_strings(&tokens).map_err(py_err)
}

#[pyclass(name = "Permutation", eq, hash, frozen, from_py_object, module = "pyfundom")]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyPermutation(fundom::Permutation);

#[pymethods]
impl PyPermutation {
    /// From 1-based images `[g(1), ..., g(n)]`.
    #[new]
    fn new(images: Vec<usize>) -> PyResult<Self> {
        fundom::Permutation::from_one_based(&images).map(Self).map_err(py_err)
    }

    #[staticmethod]
    fn from_cycles(n: usize, cycles: &str) -> PyResult<Self> {
        fundom::Permutation::parse_cycles(n, cycles).map(Self).map_err(py_err)
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    fn images(&self) -> Vec<usize> {
        self.0.one_based_images()
    }

    fn inverse(&self) -> Self {
        Self(self.0.inverse())
    }

    fn order(&self) -> usize {
        self.0.order()
    }

    /// `(g x)_{g(j)} = x_j`.
    fn act<'py>(&self, x: Vec<Bound<'py, PyAny>>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        self.0.try_act(&x).map_err(py_err)
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.0.compose(&other.0).map(Self).map_err(py_err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Permutation.from_cycles({}, \"{}\")", self.0.degree(), self.0)
    }
}

#[pyclass(name = "PermGroup", frozen, from_py_object, module = "pyfundom")]
#[derive(Clone)]
struct PyPermGroup(fundom::PermGroup);

#[pymethods]
impl PyPermGroup {
    /// Generators are cycle strings or 1-based image lists.
    #[new]
    fn new(n: usize, generators: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            let p = if let Ok(s) = g.extract::<String>() {
                fundom::Permutation::parse_cycles(n, &s)
            } else if let Ok(p) = g.extract::<PyPermutation>() {
                Ok(p.0)
            } else {
                fundom::Permutation::from_one_based(&g.extract::<Vec<usize>>()?)
            };
            gens.push(p.map_err(py_err)?);
        }
        fundom::PermGroup::new(n, gens).map(Self).map_err(py_err)
    }

    #[staticmethod]
    fn symmetric(n: usize) -> Self {
        Self(fundom::PermGroup::symmetric(n))
    }

    #[staticmethod]
    fn cyclic(n: usize) -> Self {
        Self(fundom::PermGroup::cyclic(n))
    }

    #[staticmethod]
    fn dihedral(n: usize) -> Self {
        Self(fundom::PermGroup::dihedral(n))
    }

    #[staticmethod]
    fn trivial(n: usize) -> Self {
        Self(fundom::PermGroup::trivial(n))
    }

    #[staticmethod]
    fn direct_product(factors: Vec<PyPermGroup>) -> PyResult<Self> {
        let fs: Vec<fundom::PermGroup> = factors.into_iter().map(|f| f.0).collect();
        fundom::PermGroup::direct_product(&fs).map(Self).map_err(py_err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        io::parse_group(text).map(Self).map_err(py_err)
    }

    fn to_json(&self) -> String {
        io::group_to_json(&self.0)
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    fn order(&self) -> BigUint {
        self.0.order()
    }

    fn generators(&self) -> Vec<PyPermutation> {
        self.0.generators().iter().cloned().map(PyPermutation).collect()
    }

    fn contains(&self, g: &PyPermutation) -> bool {
        g.0.degree() == self.0.degree() && self.0.contains(&g.0)
    }

    fn __contains__(&self, g: &PyPermutation) -> bool {
        self.contains(g)
    }

    /// Orbits on coordinates, 1-based.
    fn orbits(&self) -> Vec<Vec<usize>> {
        self.0
            .orbits_on_indices()
            .into_iter()
            .map(|o| o.into_iter().map(|i| i + 1).collect())
            .collect()
    }

    fn elements(&self, cap: Option<usize>) -> PyResult<Vec<PyPermutation>> {
        let els = self.0.elements(cap.unwrap_or(CAP)).map_err(py_err)?;
        Ok(els.into_iter().map(PyPermutation).collect())
    }

    fn __repr__(&self) -> String {
        let gens: Vec<String> = self.0.generators().iter().map(|g| format!("\"{g}\"")).collect();
        format!("PermGroup({}, [{}])", self.0.degree(), gens.join(", "))
    }
}

#[pyclass(name = "ConeSystem", frozen, skip_from_py_object, module = "pyfundom")]
#[derive(Clone)]
struct PyConeSystem(fundom::ConeSystem);

#[pymethods]
impl PyConeSystem {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        io::parse_cone(text).map(Self).map_err(py_err)
    }

    fn to_json(&self) -> String {
        io::cone_to_json(&self.0)
    }

    fn cut_format(&self) -> String {
        self.0.cut_format()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    /// Pairs `(gamma, g)`: rational strings and 1-based images.
    fn inequalities(&self) -> Vec<(Vec<String>, Vec<usize>)> {
        self.0
            .ineqs()
            .iter()
            .map(|i| (i.gamma().to_strings(), i.g().one_based_images()))
            .collect()
    }

    /// "interior", "boundary" or "outside".
    fn classify(&self, x: Vec<Bound<'_, PyAny>>) -> PyResult<&'static str> {
        let m = self.0.classify(&to_ratvec(&x)?).map_err(py_err)?;
        Ok(match m {
            fundom::Membership::Interior => "interior",
            fundom::Membership::Boundary => "boundary",
            fundom::Membership::Outside => "outside",
        })
    }

    fn irredundant_core(&self) -> Self {
        Self(self.0.irredundant_core())
    }

    fn implies_system(&self, other: &Self) -> bool {
        self.0.implies_system(&other.0)
    }

    fn mutually_implies(&self, other: &Self) -> bool {
        self.0.mutually_implies(&other.0)
    }
}

#[pyfunction]
fn ssp(group: &PyPermGroup) -> PyConeSystem {
    PyConeSystem(constructions::ssp(&group.0))
}

#[pyfunction]
fn ssp_reduced(group: &PyPermGroup) -> PyConeSystem {
    PyConeSystem(constructions::ssp_reduced(&group.0))
}

/// `gamma` is a strategy string as on the command line, or a list of vectors.
#[pyfunction]
#[pyo3(signature = (group, gamma = None))]
fn gdd(group: &PyPermGroup, gamma: Option<Bound<'_, PyAny>>) -> PyResult<PyConeSystem> {
    let strategy = match gamma {
        None => cli::parse_gamma(None, "gdd").map_err(py_err)?,
        Some(g) => match g.extract::<String>() {
            Ok(spec) => cli::parse_gamma(Some(&spec), "gdd").map_err(py_err)?,
            Err(_) => {
                let rows: Vec<Vec<Bound<'_, PyAny>>> = g.extract()?;
                GammaStrategy::Explicit(rows.iter().map(|r| to_ratvec(r)).collect::<PyResult<_>>()?)
            }
        },
    };
    constructions::gdd(&group.0, &strategy, CAP).map(PyConeSystem).map_err(py_err)
}

#[pyfunction]
fn dirichlet(group: &PyPermGroup, alpha: Vec<Bound<'_, PyAny>>) -> PyResult<PyConeSystem> {
    constructions::dirichlet_domain(&group.0, &to_ratvec(&alpha)?, CAP)
        .map(PyConeSystem)
        .map_err(py_err)
}

#[pyfunction]
fn k_universal_vector(n: usize, k: u64) -> PyResult<Vec<String>> {
    constructions::k_universal_vector(n, k).map(|v| v.to_strings()).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (group, cone, trials = 1000, seed = 1, binary_cap = 12))]
fn verify<'py>(
    py: Python<'py>,
    group: &PyPermGroup,
    cone: &PyConeSystem,
    trials: usize,
    seed: u64,
    binary_cap: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let limits = AuditLimits {
        binary_cap,
        ..AuditLimits::default()
    };
    let r = audit::verify_fundamental_domain(&group.0, &cone.0, trials, seed, &limits).map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("passed", r.passed())?;
    d.set_item("seed", r.seed)?;
    d.set_item("coverage_trials", r.coverage_trials)?;
    d.set_item("coverage_failures", r.coverage_failures)?;
    d.set_item("interior_collision_trials", r.interior_collision_trials)?;
    d.set_item("interior_collisions", r.interior_collisions)?;
    d.set_item(
        "collision_check",
        match r.collision_check {
            audit::CollisionCheck::Exhaustive => "exhaustive",
            audit::CollisionCheck::Sampled => "sampled",
        },
    )?;
    d.set_item(
        "binary_orbit_coverage",
        r.binary_orbit_coverage.map(|b| (b.orbits_total, b.orbits_with_rep)),
    )?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (group, cone, n_cap = 20))]
fn effectiveness<'py>(
    py: Python<'py>,
    group: &PyPermGroup,
    cone: &PyConeSystem,
    n_cap: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let r = audit::effectiveness(&group.0, &cone.0, n_cap).map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("lambda", r.lambda)?;
    d.set_item("histogram", r.histogram)?;
    d.set_item("orbit_count", r.orbit_count)?;
    d.set_item("orbits_without_rep", r.orbits_without_rep)?;
    // Vec<u8> would arrive as bytes.
    let lists = |vs: Vec<Vec<u8>>| -> Vec<Vec<u32>> {
        vs.into_iter().map(|v| v.into_iter().map(u32::from).collect()).collect()
    };
    d.set_item("witness_orbit", lists(r.witness_orbit))?;
    d.set_item("witness_representatives", lists(r.witness_representatives))?;
    Ok(d)
}

#[pyfunction]
fn facet_elements_generate(group: &PyPermGroup, cone: &PyConeSystem) -> bool {
    audit::facet_elements_generate(&group.0, &cone.0)
}

#[pyfunction]
#[pyo3(signature = (group, cap = 100_000))]
fn min_generating_size(group: &PyPermGroup, cap: usize) -> PyResult<usize> {
    audit::min_generating_size(&group.0, cap).map_err(py_err)
}

#[pyfunction]
fn fix_orthogonality_check(cone: &PyConeSystem) -> bool {
    audit::fix_orthogonality_check(&cone.0)
}

#[pyfunction]
fn in_lex(group: &PyPermGroup, x: Vec<Bound<'_, PyAny>>) -> PyResult<bool> {
    lexmax::in_lex(&group.0, &to_ratvec(&x)?, CAP).map_err(py_err)
}

#[pyfunction]
fn in_closure_lex(group: &PyPermGroup, x: Vec<Bound<'_, PyAny>>) -> PyResult<bool> {
    lexmax::in_closure_lex(&group.0, &to_ratvec(&x)?, CAP).map_err(py_err)
}

#[pyfunction]
fn lex_max_in_orbit(group: &PyPermGroup, x: Vec<Bound<'_, PyAny>>) -> PyResult<Vec<String>> {
    lexmax::lex_max_in_orbit(&group.0, &to_ratvec(&x)?, CAP)
        .map(|v| v.to_strings())
        .map_err(py_err)
}

#[pyfunction]
fn is_lex_closed(group: &PyPermGroup) -> bool {
    lexmax::is_lex_closed(&group.0)
}

#[pymodule]
fn pyfundom(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPermutation>()?;
    m.add_class::<PyPermGroup>()?;
    m.add_class::<PyConeSystem>()?;
    m.add_function(wrap_pyfunction!(ssp, m)?)?;
    m.add_function(wrap_pyfunction!(ssp_reduced, m)?)?;
    m.add_function(wrap_pyfunction!(gdd, m)?)?;
    m.add_function(wrap_pyfunction!(dirichlet, m)?)?;
    m.add_function(wrap_pyfunction!(k_universal_vector, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(effectiveness, m)?)?;
    m.add_function(wrap_pyfunction!(facet_elements_generate, m)?)?;
    m.add_function(wrap_pyfunction!(min_generating_size, m)?)?;
    m.add_function(wrap_pyfunction!(fix_orthogonality_check, m)?)?;
    m.add_function(wrap_pyfunction!(in_lex, m)?)?;
    m.add_function(wrap_pyfunction!(in_closure_lex, m)?)?;
    m.add_function(wrap_pyfunction!(lex_max_in_orbit, m)?)?;
    m.add_function(wrap_pyfunction!(is_lex_closed, m)?)?;
    Ok(())
}
