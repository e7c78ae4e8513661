//! Exhaustive enumeration of topologies and extensional fuzzy topologies on
//! tiny carriers, the classification census backing the equivalence suite,
//! and the seeded random instance generators the property suites draw from.
//!
//! Every enumerator comes in two independent strategies — subset filtering
//! and incremental closure — whose counts must agree. The census asserts
//! the classification biconditional on every instance and treats any
//! violation as fatal.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::compactness::{CompactnessOracle, CoverInstance};
use crate::error::{Error, Result};
use crate::fuzzy::{
    classify, generate_fuzzy_topology, iota, omega, ClassSignature, ExtensionalFuzzyTopology,
    GenerationMode,
};
use crate::fuzzy_set::{pointwise_sup, FuzzySet, GridContext};
use crate::subset::{all_subsets, Subset};
use crate::topology::{generate_topology, Topology};
use crate::value::Value;

/// Largest carrier for topology enumeration.
pub const MAX_CENSUS_GROUND: usize = 4;
/// Largest grid-function count for exhaustive fuzzy enumeration.
pub const MAX_FUZZY_FUNCTIONS: u64 = 9;

/// All labeled topologies on `n ≤ 4` points, by filtering every family of
/// proper nonempty subsets for the axioms.
pub fn enumerate_topologies(n: usize) -> Result<Vec<Topology>> {
    if n == 0 || n > MAX_CENSUS_GROUND {
        return Err(Error::BoundExceeded(format!(
            "topology enumeration needs 1 ≤ n ≤ {MAX_CENSUS_GROUND}, got {n}"
        )));
    }
    let proper: Vec<Subset> = all_subsets(n)
        .filter(|s| !s.is_empty() && *s != Subset::full(n))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << proper.len() {
        let mut family: BTreeSet<Subset> = [Subset::EMPTY, Subset::full(n)].into();
        for (i, &s) in proper.iter().enumerate() {
            if mask >> i & 1 == 1 {
                family.insert(s);
            }
        }
        if let Ok(t) = Topology::new(n, family) {
            out.push(t);
        }
    }
    Ok(out)
}

/// The same set by the independent strategy: close every subbase and
/// deduplicate.
pub fn enumerate_topologies_by_closure(n: usize) -> Result<Vec<Topology>> {
    if n == 0 || n > MAX_CENSUS_GROUND {
        return Err(Error::BoundExceeded(format!(
            "topology enumeration needs 1 ≤ n ≤ {MAX_CENSUS_GROUND}, got {n}"
        )));
    }
    let proper: Vec<Subset> = all_subsets(n)
        .filter(|s| !s.is_empty() && *s != Subset::full(n))
        .collect();
    let mut seen = BTreeSet::new();
    for mask in 0u64..1 << proper.len() {
        let subbase: Vec<Subset> = proper
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &s)| s)
            .collect();
        seen.insert(generate_topology(&subbase, n));
    }
    Ok(seen.into_iter().collect())
}

fn check_fuzzy_bounds(grid: GridContext) -> Result<u64> {
    let count = grid.function_count()?;
    if count > MAX_FUZZY_FUNCTIONS {
        return Err(Error::BoundExceeded(format!(
            "exhaustive fuzzy enumeration needs (q+1)^n ≤ {MAX_FUZZY_FUNCTIONS}, got {count}"
        )));
    }
    Ok(count)
}

/// All extensional fuzzy topologies on the grid, by filtering every member
/// set containing the constants 0 and 1 for closure under max and min.
pub fn enumerate_fuzzy_topologies(n: usize, q: u32) -> Result<Vec<ExtensionalFuzzyTopology>> {
    let grid = GridContext::new(q, n)?;
    check_fuzzy_bounds(grid)?;
    let functions = grid.all_functions()?;
    let bottom = FuzzySet::constant(n, Value::ZERO);
    let top = FuzzySet::constant(n, Value::ONE);
    let optional: Vec<&FuzzySet> = functions
        .iter()
        .filter(|f| **f != bottom && **f != top)
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << optional.len() {
        let mut members: BTreeSet<FuzzySet> = [bottom.clone(), top.clone()].into();
        for (i, f) in optional.iter().enumerate() {
            if mask >> i & 1 == 1 {
                members.insert((*f).clone());
            }
        }
        if let Ok(d) = ExtensionalFuzzyTopology::new(grid, members) {
            out.push(d);
        }
    }
    Ok(out)
}

/// The same set by the independent strategy: Chang-close every generator
/// set and deduplicate.
pub fn enumerate_fuzzy_topologies_by_closure(
    n: usize,
    q: u32,
) -> Result<Vec<ExtensionalFuzzyTopology>> {
    let grid = GridContext::new(q, n)?;
    check_fuzzy_bounds(grid)?;
    let functions = grid.all_functions()?;
    let mut seen = BTreeSet::new();
    for mask in 0u64..1 << functions.len() {
        let generators: Vec<FuzzySet> = functions
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, f)| f.clone())
            .collect();
        seen.insert(generate_fuzzy_topology(&generators, GenerationMode::Chang, grid)?);
    }
    Ok(seen.into_iter().collect())
}

/// One census bucket: how many instances realize a signature, and the
/// smallest one that does.
#[derive(Clone, Debug, Serialize)]
pub struct SignatureBucket {
    pub signature: ClassSignature,
    pub count: usize,
    pub minimal_example_size: usize,
    pub minimal_example: Vec<FuzzySet>,
}

/// Outcome of an exhaustive classification census at one `(n, q)`.
#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub ground_size: usize,
    pub q: u32,
    pub total: usize,
    pub buckets: Vec<SignatureBucket>,
    /// Instances where the grid-affine verdict and the induced-on-grid
    /// verdict differ; recorded, never asserted either way.
    pub affine_induced_divergences: usize,
    /// Milliseconds spent; excluded from serialized output so reports stay
    /// byte-identical across runs.
    #[serde(skip)]
    pub elapsed_ms: u128,
}

/// Classify every enumerated family, asserting on each one that the four
/// weak-inducedness formulations agree, that laminated together with weakly
/// induced is exactly induced-on-grid, and that the constant-sublattice
/// restriction identity holds for weakly induced members. A violation is an
/// error, never a swallowed statistic.
pub fn run_equivalence_census(n: usize, q: u32) -> Result<CensusReport> {
    let start = Instant::now();
    let instances = enumerate_fuzzy_topologies(n, q)?;
    let mut buckets: Vec<SignatureBucket> = Vec::new();
    let mut divergences = 0usize;
    for d in &instances {
        let report = classify(d)?;
        if !report.is_chang {
            return Err(Error::BoundExceeded(format!(
                "enumerated instance fails the membership axioms: {:?}",
                d.members()
            )));
        }
        if !report.subverdicts_agree {
            return Err(Error::CensusViolation(format!(
                "weak-inducedness formulations disagree on {:?}: {:?}",
                d.members(),
                report.weakly_induced
            )));
        }
        if (report.is_laminated && report.is_weakly_induced) != report.is_induced_on_grid {
            return Err(Error::CensusViolation(format!(
                "equivalence biconditional fails on {:?}",
                d.members()
            )));
        }
        if report.is_weakly_induced {
            let levels = d.constant_levels();
            let restricted = d.members_valued_in(levels.levels());
            let target = omega(&iota(d), &levels)?;
            if &restricted != target.members() {
                return Err(Error::CensusViolation(format!(
                    "constant-sublattice restriction identity fails on {:?}",
                    d.members()
                )));
            }
        }
        if report.is_grid_affine_invariant != report.is_induced_on_grid {
            divergences += 1;
        }
        let signature = report.signature();
        match buckets.iter_mut().find(|b| b.signature == signature) {
            Some(bucket) => {
                bucket.count += 1;
                if d.len() < bucket.minimal_example_size {
                    bucket.minimal_example_size = d.len();
                    bucket.minimal_example = d.members().iter().cloned().collect();
                }
            }
            None => buckets.push(SignatureBucket {
                signature,
                count: 1,
                minimal_example_size: d.len(),
                minimal_example: d.members().iter().cloned().collect(),
            }),
        }
    }
    buckets.sort_by_key(|b| b.signature);
    Ok(CensusReport {
        ground_size: n,
        q,
        total: instances.len(),
        buckets,
        affine_induced_divergences: divergences,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// Deterministic generator stream for the randomized suites.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random topology: the closure of up to three random subsets.
pub fn random_topology(rng: &mut ChaCha8Rng, n: usize) -> Topology {
    let count = rng.random_range(0..=3);
    let subbase: Vec<Subset> = (0..count)
        .map(|_| Subset::from_bits(rng.random_range(0..1u32 << n)))
        .collect();
    generate_topology(&subbase, n)
}

/// A random extensional fuzzy topology: the closure of one to four random
/// grid functions, laminated one time in four.
pub fn random_fuzzy_topology(rng: &mut ChaCha8Rng, n: usize, q: u32) -> ExtensionalFuzzyTopology {
    let grid = GridContext::new(q, n).expect("generator parameters in range");
    let count = rng.random_range(1..=4);
    let generators: Vec<FuzzySet> = (0..count).map(|_| random_grid_function(rng, n, q)).collect();
    let mode = if rng.random_range(0..4) == 0 {
        GenerationMode::Laminated
    } else {
        GenerationMode::Chang
    };
    generate_fuzzy_topology(&generators, mode, grid).expect("generators are grid-valued")
}

/// A uniform random grid-valued function.
pub fn random_grid_function(rng: &mut ChaCha8Rng, n: usize, q: u32) -> FuzzySet {
    FuzzySet::new(
        (0..n)
            .map(|_| Value::grid(rng.random_range(0..=q), q))
            .collect(),
    )
}

/// A random lsc grid function: a join of `c ∧ χ_U` layers over random opens.
pub fn random_lsc_function(rng: &mut ChaCha8Rng, t: &Topology, q: u32) -> FuzzySet {
    let n = t.ground_size();
    let opens: Vec<Subset> = t.opens().iter().copied().collect();
    let layers: Vec<FuzzySet> = (0..rng.random_range(1..=3))
        .map(|_| {
            let c = Value::grid(rng.random_range(0..=q), q);
            let u = opens[rng.random_range(0..opens.len())];
            FuzzySet::constant(n, c).meet(&FuzzySet::characteristic(n, u))
        })
        .collect();
    pointwise_sup(&layers).expect("nonempty layer list")
}

/// A random valid cover instance: a fuzzy-open family, a target trimmed
/// below its supremum, and a positive grid epsilon.
pub fn random_cover_instance(rng: &mut ChaCha8Rng, n: usize, q: u32) -> CoverInstance {
    let t = random_topology(rng, n);
    let family: Vec<FuzzySet> = (0..rng.random_range(2..=5))
        .map(|_| random_lsc_function(rng, &t, q))
        .collect();
    let sup = pointwise_sup(&family).expect("nonempty family");
    let target = random_grid_function(rng, n, q).meet(&sup);
    let epsilon = Value::grid(rng.random_range(1..=q), q);
    CoverInstance::new(t, target, family, epsilon).expect("construction satisfies the invariants")
}

/// A random instance for the dominated-closed-set property: a topology, a
/// target `f`, a fuzzy closed `g ≤ f`, and a designated oracle seeded with
/// the interior weak levels of `f`. Returns `None` when no fuzzy closed
/// minorant exists below `f` other than candidates equal to it.
pub fn random_dominated_closed_instance(
    rng: &mut ChaCha8Rng,
    n: usize,
    q: u32,
) -> Option<(Topology, FuzzySet, FuzzySet, CompactnessOracle)> {
    let t = random_topology(rng, n);
    let f = random_grid_function(rng, n, q);
    let grid = GridContext::new(q, n).ok()?;
    let candidates: Vec<FuzzySet> = grid
        .all_functions()
        .ok()?
        .into_iter()
        .filter(|g| g.le(&f) && crate::compactness::is_fuzzy_closed(g, &t))
        .collect();
    if candidates.is_empty() {
        return None;
    }
    let g = candidates[rng.random_range(0..candidates.len())].clone();
    // the weak levels of f over (0, 1) — on a grid, the level sets at f's
    // own positive values
    let seeds: BTreeSet<Subset> = f
        .distinct_values()
        .into_iter()
        .filter(|v| !v.is_zero())
        .map(|v| f.level_at_least(v))
        .collect();
    let oracle = CompactnessOracle::designated_from_seeds(seeds, &t);
    Some((t, f, g, oracle))
}
