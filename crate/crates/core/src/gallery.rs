//! Constructors for the counterexample families: value-sublattice
//! restrictions, open-subspace extensions, interval-band families,
//! horizontal/vertical product families, interval-coded subbases, and the
//! lamination transfer argument.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fuzzy::{
    generate_fuzzy_topology, omega_grid, ExtensionalFuzzyTopology, FuzzyTopology,
    GenerationMode, SupClosedSubgrid,
};
use crate::fuzzy_set::{enumerate_functions, FuzzySet, GridContext};
use crate::subset::Subset;
use crate::topology::{relative_topology, GroundMap, Topology};
use crate::value::Value;

/// Pairwise non-overlapping, nontrivial closed grid intervals, kept in
/// ascending order.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct IntervalFamily {
    q: u32,
    intervals: Vec<(Value, Value)>,
}

impl IntervalFamily {
    pub fn new(q: u32, mut intervals: Vec<(Value, Value)>) -> Result<Self> {
        for &(a, b) in &intervals {
            if !a.on_grid(q) || !b.on_grid(q) {
                return Err(Error::OffGrid(format!("[{a}, {b}]")));
            }
            if a >= b {
                return Err(Error::OverlappingIntervals);
            }
        }
        intervals.sort();
        // closed intervals may share an endpoint; interiors must be disjoint
        for pair in intervals.windows(2) {
            if pair[0].1 > pair[1].0 {
                return Err(Error::OverlappingIntervals);
            }
        }
        Ok(IntervalFamily { q, intervals })
    }

    /// The single interval `[0, 1]`.
    pub fn whole(q: u32) -> Self {
        IntervalFamily {
            q,
            intervals: vec![(Value::ZERO, Value::ONE)],
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn intervals(&self) -> &[(Value, Value)] {
        &self.intervals
    }

    pub fn is_whole(&self) -> bool {
        self.intervals == [(Value::ZERO, Value::ONE)]
    }

    /// Grid values inside one interval, ascending.
    fn grid_values_in(&self, interval: (Value, Value)) -> Vec<Value> {
        (0..=self.q)
            .map(|j| Value::grid(j, self.q))
            .filter(|&v| interval.0 <= v && v <= interval.1)
            .collect()
    }
}

/// A subbase listed alongside the interval coding it, entry by entry.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct IntervalAssignment {
    subbase: Vec<Subset>,
    intervals: IntervalFamily,
}

impl IntervalAssignment {
    pub fn new(subbase: Vec<Subset>, intervals: IntervalFamily) -> Result<Self> {
        if subbase.len() != intervals.intervals().len() {
            return Err(Error::MalformedAssignment(format!(
                "{} subbase entries against {} intervals",
                subbase.len(),
                intervals.intervals().len()
            )));
        }
        let mut seen = BTreeSet::new();
        if !subbase.iter().all(|u| seen.insert(*u)) {
            return Err(Error::MalformedAssignment(
                "subbase entries must be distinct".into(),
            ));
        }
        Ok(IntervalAssignment { subbase, intervals })
    }

    pub fn subbase(&self) -> &[Subset] {
        &self.subbase
    }

    pub fn intervals(&self) -> &IntervalFamily {
        &self.intervals
    }
}

/// The family generated by the sublattice constants together with the
/// characteristic functions of the opens. Coincides with `ω_L(τ)`.
pub fn generated_from_sublattice(
    t: &Topology,
    l: &SupClosedSubgrid,
) -> Result<ExtensionalFuzzyTopology> {
    let grid = GridContext::new(l.q(), t.ground_size())?;
    let n = t.ground_size();
    let mut generators: Vec<FuzzySet> =
        l.levels().iter().map(|&k| FuzzySet::constant(n, k)).collect();
    generators.extend(
        t.opens()
            .iter()
            .map(|&u| FuzzySet::characteristic(n, u)),
    );
    generate_fuzzy_topology(&generators, GenerationMode::Chang, grid)
}

/// Members of `ω(τ|Y)` extended by zero and joined with characteristic
/// functions of opens: a weakly induced family whose only constants are 0
/// and 1 when `Y` is a proper open subset.
pub fn open_subspace_extension(
    t: &Topology,
    y: Subset,
    q: u32,
) -> Result<ExtensionalFuzzyTopology> {
    if y.is_empty() {
        return Err(Error::EmptySubspace);
    }
    if !t.is_open(y) {
        return Err(Error::NotOpen);
    }
    let n = t.ground_size();
    let grid = GridContext::new(q, n)?;
    let inner = omega_grid(&relative_topology(t, y)?, q)?;
    let mut members = BTreeSet::new();
    for f in inner.members() {
        let extended = f.extend_by_zero(y, n);
        for &u in t.opens() {
            members.insert(extended.join(&FuzzySet::characteristic(n, u)));
        }
    }
    ExtensionalFuzzyTopology::new(grid, members)
}

/// Grid constants together with every grid function valued inside a single
/// interval of the family. A fuzzy topology because functions valued in
/// ordered bands meet and join trivially.
pub fn delta_j(n: usize, j: &IntervalFamily) -> Result<ExtensionalFuzzyTopology> {
    let grid = GridContext::new(j.q(), n)?;
    let mut members: BTreeSet<FuzzySet> = grid
        .values()
        .into_iter()
        .map(|k| FuzzySet::constant(n, k))
        .collect();
    for &interval in j.intervals() {
        let levels = j.grid_values_in(interval);
        let count = (levels.len() as u64).checked_pow(n as u32);
        if count.is_none() || count.unwrap() > (1 << 21) {
            return Err(Error::BoundExceeded(format!(
                "{}^{n} functions valued in [{}, {}]",
                levels.len(),
                interval.0,
                interval.1
            )));
        }
        members.extend(enumerate_functions(n, &levels));
    }
    ExtensionalFuzzyTopology::new(grid, members)
}

/// `δ_J` cut down to its lower semicontinuous members.
pub fn omega_j(t: &Topology, j: &IntervalFamily) -> Result<ExtensionalFuzzyTopology> {
    let whole = delta_j(t.ground_size(), j)?;
    let members = whole
        .members()
        .iter()
        .filter(|f| crate::fuzzy::is_lsc(f, t))
        .cloned()
        .collect();
    ExtensionalFuzzyTopology::new(whole.grid(), members)
}

/// Does `f` on the row-major product carrier depend on the first coordinate
/// only?
pub fn is_horizontal(f: &FuzzySet, n1: usize, n2: usize) -> bool {
    assert_eq!(f.len(), n1 * n2);
    (0..n1).all(|x1| (1..n2).all(|x2| f.value(x1 * n2 + x2) == f.value(x1 * n2)))
}

/// Does `f` on the row-major product carrier depend on the second
/// coordinate only?
pub fn is_vertical(f: &FuzzySet, n1: usize, n2: usize) -> bool {
    assert_eq!(f.len(), n1 * n2);
    (0..n2).all(|x2| (1..n1).all(|x1| f.value(x1 * n2 + x2) == f.value(x2)))
}

/// The product family whose members all factor through one projection:
/// pullbacks of the lower band `[0, 1/2]` family on the first factor and of
/// the upper band `[1/2, 1]` family on the second. The union is already a
/// laminated fuzzy topology, with no closure pass needed.
pub fn product_pathology(
    t1: &Topology,
    t2: &Topology,
    q: u32,
) -> Result<ExtensionalFuzzyTopology> {
    if q % 2 != 0 {
        return Err(Error::OddGrid);
    }
    let half = Value::new(1, 2).expect("1/2 is a valid degree");
    let lower = IntervalFamily::new(q, vec![(Value::ZERO, half)])?;
    let upper = IntervalFamily::new(q, vec![(half, Value::ONE)])?;
    let d1 = omega_j(t1, &lower)?;
    let d2 = omega_j(t2, &upper)?;

    let (n1, n2) = (t1.ground_size(), t2.ground_size());
    let grid = GridContext::new(q, n1 * n2)?;
    let pi1 = crate::topology::projection(1, n1, n2);
    let pi2 = crate::topology::projection(2, n1, n2);
    let mut members = BTreeSet::new();
    for f in d1.members() {
        members.insert(pi1.pullback(f)?);
    }
    for f in d2.members() {
        members.insert(pi2.pullback(f)?);
    }
    // the validating constructor certifies the union is closed as it stands
    ExtensionalFuzzyTopology::new(grid, members)
}

/// The interval-coded family: all `c ∨ (d ∧ χ_U)` with `U` in the subbase
/// and `a(U) ≤ c < d ≤ b(U)` on the grid, together with the grid constants.
pub fn delta_rho(assignment: &IntervalAssignment, n: usize) -> Result<ExtensionalFuzzyTopology> {
    let q = assignment.intervals().q();
    let grid = GridContext::new(q, n)?;
    let full = Subset::full(n);
    if let Some(&bad) = assignment.subbase().iter().find(|u| !u.is_subset_of(full)) {
        return Err(Error::MalformedAssignment(format!(
            "subbase entry {bad:?} exceeds the carrier"
        )));
    }
    let mut members: BTreeSet<FuzzySet> = grid
        .values()
        .into_iter()
        .map(|k| FuzzySet::constant(n, k))
        .collect();
    for (&u, &(a, b)) in assignment
        .subbase()
        .iter()
        .zip(assignment.intervals().intervals())
    {
        let levels = assignment.intervals().grid_values_in((a, b));
        for (i, &c) in levels.iter().enumerate() {
            for &d in &levels[i + 1..] {
                let layer = FuzzySet::constant(n, c)
                    .join(&FuzzySet::constant(n, d).meet(&FuzzySet::characteristic(n, u)));
                members.insert(layer);
            }
        }
    }
    ExtensionalFuzzyTopology::new(grid, members)
}

/// Every strict level set realized by the family at grid thresholds.
pub fn strict_level_family(d: &ExtensionalFuzzyTopology) -> BTreeSet<Subset> {
    let mut levels = BTreeSet::new();
    for f in d.members() {
        for &c in &d.grid().thresholds() {
            levels.insert(f.level_above(c));
        }
    }
    levels.insert(Subset::EMPTY);
    levels
}

/// Transfer of lamination along fuzzy maps: a fuzzy continuous map into a
/// laminated family forces lamination of the source, so the check passes
/// exactly when the source is laminated or the map fails continuity.
pub fn lamination_transfer_check(
    h: &GroundMap,
    d1: &FuzzyTopology,
    d2: &FuzzyTopology,
) -> Result<bool> {
    if d1.is_laminated() {
        return Ok(true);
    }
    let judgment = crate::constructions::fuzzy_map_judgment(h, d1, d2)?;
    Ok(!judgment.continuous)
}

/// The chain carrier `{0, 1/q, …, 1}` with its usual topology — discrete on
/// a finite subcarrier of the line — and the induced fuzzy topology.
pub fn usual_interval_fuzzy_space(q: u32) -> Result<(Topology, ExtensionalFuzzyTopology)> {
    let n = q as usize + 1;
    let t = Topology::discrete(n);
    let d = omega_grid(&t, q)?;
    Ok((t, d))
}
