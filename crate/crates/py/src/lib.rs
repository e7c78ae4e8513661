//! Python bindings for the fuzzy-topology engine.
//!
//! Membership degrees cross the boundary as exact `"p/q"` strings, fuzzy
//! sets as lists of such strings, and subsets as sorted lists of point
//! indices, so no precision is lost in either direction. Structured
//! results (classification reports, census reports) arrive as JSON
//! strings ready for `json.loads`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use fuztop::compactness::{CompactnessOracle, CoverInstance};
use fuztop::fuzzy::{ExtensionalFuzzyTopology, GenerationMode};
use fuztop::fuzzy_set::GridContext;
use fuztop::{FuzzySet, Subset, Value};

fn engine_err(e: fuztop::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_values(rows: &[String]) -> PyResult<FuzzySet> {
    if rows.is_empty() {
        return Err(PyValueError::new_err("a fuzzy set needs at least one value"));
    }
    let values = rows
        .iter()
        .map(|s| s.parse::<Value>().map_err(engine_err))
        .collect::<PyResult<Vec<Value>>>()?;
    Ok(FuzzySet::new(values))
}

fn render_values(f: &FuzzySet) -> Vec<String> {
    f.values().iter().map(Value::to_string).collect()
}

fn parse_subset(points: &[usize]) -> Subset {
    Subset::from_points(points)
}

/// A crisp finite topology.
#[pyclass(name = "Topology", frozen, eq)]
#[derive(PartialEq)]
struct PyTopology {
    inner: fuztop::Topology,
}

#[pymethods]
impl PyTopology {
    #[new]
    fn new(ground_size: usize, opens: Vec<Vec<usize>>) -> PyResult<Self> {
        let family = opens.iter().map(|u| parse_subset(u)).collect();
        Ok(PyTopology {
            inner: fuztop::Topology::new(ground_size, family).map_err(engine_err)?,
        })
    }

    /// Smallest topology containing the subbase.
    #[staticmethod]
    fn generate(ground_size: usize, subbase: Vec<Vec<usize>>) -> Self {
        let sets: Vec<Subset> = subbase.iter().map(|u| parse_subset(u)).collect();
        PyTopology {
            inner: fuztop::topology::generate_topology(&sets, ground_size),
        }
    }

    #[staticmethod]
    fn discrete(ground_size: usize) -> Self {
        PyTopology {
            inner: fuztop::Topology::discrete(ground_size),
        }
    }

    #[staticmethod]
    fn indiscrete(ground_size: usize) -> Self {
        PyTopology {
            inner: fuztop::Topology::indiscrete(ground_size),
        }
    }

    #[staticmethod]
    fn sierpinski() -> Self {
        PyTopology {
            inner: fuztop::Topology::sierpinski(),
        }
    }

    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }

    fn opens(&self) -> Vec<Vec<usize>> {
        self.inner.opens().iter().map(|u| u.points()).collect()
    }

    fn is_open(&self, points: Vec<usize>) -> bool {
        self.inner.is_open(parse_subset(&points))
    }

    fn is_discrete(&self) -> bool {
        self.inner.is_discrete()
    }

    fn is_hausdorff(&self) -> bool {
        self.inner.is_hausdorff()
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn is_completely_regular(&self) -> bool {
        self.inner.is_completely_regular()
    }

    fn product(&self, other: &PyTopology) -> PyResult<Self> {
        Ok(PyTopology {
            inner: fuztop::topology::product_topology(&self.inner, &other.inner)
                .map_err(engine_err)?,
        })
    }

    fn coproduct(&self, other: &PyTopology) -> PyResult<Self> {
        Ok(PyTopology {
            inner: fuztop::topology::coproduct_topology(&self.inner, &other.inner)
                .map_err(engine_err)?,
        })
    }

    fn subspace(&self, points: Vec<usize>) -> PyResult<Self> {
        Ok(PyTopology {
            inner: fuztop::topology::relative_topology(&self.inner, parse_subset(&points))
                .map_err(engine_err)?,
        })
    }

    fn __len__(&self) -> usize {
        self.inner.opens().len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Topology(n={}, opens={:?})",
            self.inner.ground_size(),
            self.inner.opens()
        )
    }
}

/// An extensional fuzzy topology over the grid `L_q`.
#[pyclass(name = "FuzzyTopology", frozen, eq)]
#[derive(PartialEq)]
struct PyFuzzyTopology {
    inner: ExtensionalFuzzyTopology,
}

impl PyFuzzyTopology {
    fn wrap(inner: ExtensionalFuzzyTopology) -> Self {
        PyFuzzyTopology { inner }
    }
}

#[pymethods]
impl PyFuzzyTopology {
    /// The lsc functions of a base topology, on the grid `L_q`.
    #[staticmethod]
    fn omega(base: &PyTopology, q: u32) -> PyResult<Self> {
        Ok(Self::wrap(
            fuztop::fuzzy::omega_grid(&base.inner, q).map_err(engine_err)?,
        ))
    }

    /// Characteristic functions of the opens, on the grid `L_q`.
    #[staticmethod]
    fn chi(base: &PyTopology, q: u32) -> PyResult<Self> {
        Ok(Self::wrap(
            fuztop::fuzzy::chi(&base.inner, q).map_err(engine_err)?,
        ))
    }

    /// Closure of the generators under pointwise max and min, with the
    /// grid constants when `laminated` is set.
    #[staticmethod]
    #[pyo3(signature = (ground_size, q, generators, laminated = false))]
    fn generate(
        ground_size: usize,
        q: u32,
        generators: Vec<Vec<String>>,
        laminated: bool,
    ) -> PyResult<Self> {
        let grid = GridContext::new(q, ground_size).map_err(engine_err)?;
        let sets = generators
            .iter()
            .map(|row| parse_values(row))
            .collect::<PyResult<Vec<FuzzySet>>>()?;
        let mode = if laminated {
            GenerationMode::Laminated
        } else {
            GenerationMode::Chang
        };
        Ok(Self::wrap(
            fuztop::fuzzy::generate_fuzzy_topology(&sets, mode, grid).map_err(engine_err)?,
        ))
    }

    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }

    fn q(&self) -> u32 {
        self.inner.grid().q()
    }

    fn members(&self) -> Vec<Vec<String>> {
        self.inner.members().iter().map(render_values).collect()
    }

    fn contains(&self, values: Vec<String>) -> PyResult<bool> {
        Ok(self.inner.contains(&parse_values(&values)?))
    }

    /// The coarsest topology making every member lower semicontinuous.
    fn iota(&self) -> PyTopology {
        PyTopology {
            inner: fuztop::fuzzy::iota(&self.inner),
        }
    }

    /// The sets whose characteristic function belongs to the family.
    fn chi_star(&self) -> PyTopology {
        PyTopology {
            inner: fuztop::fuzzy::chi_star(&self.inner),
        }
    }

    /// Full classification report as a JSON string.
    fn classify_json(&self) -> PyResult<String> {
        let report = fuztop::fuzzy::classify(&self.inner).map_err(engine_err)?;
        serde_json::to_string(&report).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn is_laminated(&self) -> PyResult<bool> {
        Ok(fuztop::fuzzy::classify(&self.inner)
            .map_err(engine_err)?
            .is_laminated)
    }

    fn is_weakly_induced(&self) -> PyResult<bool> {
        Ok(fuztop::fuzzy::classify(&self.inner)
            .map_err(engine_err)?
            .is_weakly_induced)
    }

    fn is_induced_on_grid(&self) -> PyResult<bool> {
        Ok(fuztop::fuzzy::classify(&self.inner)
            .map_err(engine_err)?
            .is_induced_on_grid)
    }

    fn product(&self, other: &PyFuzzyTopology) -> PyResult<Self> {
        Ok(Self::wrap(
            fuztop::constructions::product_fuzzy_topology(&self.inner, &other.inner)
                .map_err(engine_err)?,
        ))
    }

    fn coproduct(&self, other: &PyFuzzyTopology) -> PyResult<Self> {
        Ok(Self::wrap(
            fuztop::constructions::coproduct_fuzzy_topology(&self.inner, &other.inner)
                .map_err(engine_err)?,
        ))
    }

    fn subspace(&self, points: Vec<usize>) -> PyResult<Self> {
        Ok(Self::wrap(
            fuztop::constructions::relative_fuzzy_topology(&self.inner, parse_subset(&points))
                .map_err(engine_err)?,
        ))
    }

    /// A member-built bump that is 1 at `x` and 0 off the open set `u`.
    fn witness_bump(&self, x: usize, u: Vec<usize>) -> PyResult<Vec<String>> {
        let bump = fuztop::fuzzy::witness_bump(&self.inner, x, parse_subset(&u))
            .map_err(engine_err)?;
        Ok(render_values(&bump))
    }

    /// Rebuild a grid-valued lsc function from its level sets.
    fn reconstruct(&self, values: Vec<String>) -> PyResult<Vec<String>> {
        let rebuilt = fuztop::fuzzy::reconstruct_lsc(&self.inner, &parse_values(&values)?)
            .map_err(engine_err)?;
        Ok(render_values(&rebuilt))
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "FuzzyTopology(n={}, q={}, members={})",
            self.inner.ground_size(),
            self.inner.grid().q(),
            self.inner.len()
        )
    }
}

/// Pointwise maximum of fuzzy sets given as value-string rows.
#[pyfunction]
fn pointwise_sup(rows: Vec<Vec<String>>) -> PyResult<Vec<String>> {
    let sets = rows
        .iter()
        .map(|row| parse_values(row))
        .collect::<PyResult<Vec<FuzzySet>>>()?;
    let sup = fuztop::fuzzy_set::pointwise_sup(&sets).map_err(engine_err)?;
    Ok(render_values(&sup))
}

/// Pointwise minimum of fuzzy sets given as value-string rows.
#[pyfunction]
fn pointwise_inf(rows: Vec<Vec<String>>) -> PyResult<Vec<String>> {
    let sets = rows
        .iter()
        .map(|row| parse_values(row))
        .collect::<PyResult<Vec<FuzzySet>>>()?;
    let inf = fuztop::fuzzy_set::pointwise_inf(&sets).map_err(engine_err)?;
    Ok(render_values(&inf))
}

/// Strict level set `{x : f(x) > c}`.
#[pyfunction]
fn level_above(values: Vec<String>, c: String) -> PyResult<Vec<usize>> {
    let f = parse_values(&values)?;
    let c: Value = c.parse().map_err(engine_err)?;
    Ok(f.level_above(c).points())
}

/// Weak level set `{x : f(x) ≥ c}`.
#[pyfunction]
fn level_at_least(values: Vec<String>, c: String) -> PyResult<Vec<usize>> {
    let f = parse_values(&values)?;
    let c: Value = c.parse().map_err(engine_err)?;
    Ok(f.level_at_least(c).points())
}

/// Clipped affine adjustment `t ↦ max(0, min(1, m·t + k))` with rational
/// `m > 0` and `k` given as strings like "3/2" or "-1/4".
#[pyfunction]
fn affine_adjust(values: Vec<String>, m: String, k: String) -> PyResult<Vec<String>> {
    let f = parse_values(&values)?;
    let m: fuztop::Rat = m
        .parse()
        .map_err(|_| PyValueError::new_err(format!("cannot parse slope {m:?}")))?;
    let k: fuztop::Rat = k
        .parse()
        .map_err(|_| PyValueError::new_err(format!("cannot parse offset {k:?}")))?;
    Ok(render_values(&f.affine_adjust(m, k).map_err(engine_err)?))
}

/// All labeled topologies on `n ≤ 4` points.
#[pyfunction]
fn enumerate_topologies(n: usize) -> PyResult<Vec<PyTopology>> {
    Ok(fuztop::census::enumerate_topologies(n)
        .map_err(engine_err)?
        .into_iter()
        .map(|inner| PyTopology { inner })
        .collect())
}

/// Exhaustive classification census at `(n, q)`, as a JSON string.
#[pyfunction]
fn census_json(n: usize, q: u32) -> PyResult<String> {
    let report = fuztop::census::run_equivalence_census(n, q).map_err(engine_err)?;
    serde_json::to_string(&report).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Run one named property check; returns (passed, details).
#[pyfunction]
#[pyo3(signature = (id, seed = 0))]
fn run_check(id: String, seed: u64) -> PyResult<(bool, Vec<String>)> {
    let verdicts = fuztop::checks::run_check(&id, None, seed).map_err(engine_err)?;
    let pass = verdicts.iter().all(|v| v.pass);
    let lines = verdicts
        .into_iter()
        .map(|v| format!("{}: {} ({})", v.name, if v.pass { "pass" } else { "FAIL" }, v.detail))
        .collect();
    Ok((pass, lines))
}

/// Extract a finite subcover certificate and re-verify it; returns the
/// chosen indices.
#[pyfunction]
fn extract_subcover(
    base: &PyTopology,
    target: Vec<String>,
    family: Vec<Vec<String>>,
    epsilon: String,
) -> PyResult<Vec<usize>> {
    let target = parse_values(&target)?;
    let family = family
        .iter()
        .map(|row| parse_values(row))
        .collect::<PyResult<Vec<FuzzySet>>>()?;
    let epsilon: Value = epsilon.parse().map_err(engine_err)?;
    let instance = CoverInstance::new(base.inner.clone(), target, family, epsilon)
        .map_err(engine_err)?;
    let indices = fuztop::compactness::extract_subcover(&instance, &CompactnessOracle::AllCompact)
        .map_err(engine_err)?;
    if !fuztop::compactness::verify_subcover(&instance, &indices) {
        return Err(PyValueError::new_err("subcover postcondition failed"));
    }
    Ok(indices)
}

#[pymodule]
fn fuztop_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyTopology>()?;
    m.add_class::<PyFuzzyTopology>()?;
    m.add_function(wrap_pyfunction!(pointwise_sup, m)?)?;
    m.add_function(wrap_pyfunction!(pointwise_inf, m)?)?;
    m.add_function(wrap_pyfunction!(level_above, m)?)?;
    m.add_function(wrap_pyfunction!(level_at_least, m)?)?;
    m.add_function(wrap_pyfunction!(affine_adjust, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_topologies, m)?)?;
    m.add_function(wrap_pyfunction!(census_json, m)?)?;
    m.add_function(wrap_pyfunction!(run_check, m)?)?;
    m.add_function(wrap_pyfunction!(extract_subcover, m)?)?;
    Ok(())
}
