//! Fuzzy topologies and the maps between them and crisp topologies.
//!
//! Two representations coexist. An [`ExtensionalFuzzyTopology`] stores its
//! member set outright: a canonical family of grid-valued fuzzy sets
//! containing the constants 0 and 1 and closed under pointwise max and min.
//! An [`InducedFuzzyTopology`] stores only a crisp base topology and decides
//! membership lazily as lower semicontinuity — the family of *all*
//! `[0,1]`-valued lsc functions is not finitely listable, so the induced
//! form is intensional by design.
//!
//! The classifier reports where a family sits in the hierarchy: laminated
//! (all grid constants present), weakly induced (four equivalent
//! formulations, computed independently and cross-checked), closed under
//! grid-interval affine adjustments, and equal to the lsc family of its own
//! level topology. The last verdict is the grid rendering of "induced".

use std::collections::BTreeSet;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fuzzy_set::{enumerate_functions, FuzzySet, GridContext};
use crate::subset::Subset;
use crate::topology::{generate_topology, Topology};
use crate::value::{Rat, Value};

/// An ascending set of grid values containing 0 and 1. Any finite such set
/// is closed under suprema of nonempty subsets.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SupClosedSubgrid {
    q: u32,
    levels: Vec<Value>,
}

impl SupClosedSubgrid {
    pub fn new(q: u32, mut levels: Vec<Value>) -> Result<Self> {
        levels.sort();
        levels.dedup();
        if !levels.contains(&Value::ZERO) || !levels.contains(&Value::ONE) {
            return Err(Error::NotAFuzzyTopology(
                "a value subgrid must contain 0 and 1".into(),
            ));
        }
        if let Some(off) = levels.iter().find(|v| !v.on_grid(q)) {
            return Err(Error::OffGrid(off.to_string()));
        }
        Ok(SupClosedSubgrid { q, levels })
    }

    /// The whole chain `L_q`.
    pub fn full(q: u32) -> Self {
        SupClosedSubgrid {
            q,
            levels: (0..=q).map(|j| Value::grid(j, q)).collect(),
        }
    }

    /// Just `{0, 1}` inside `L_q`.
    pub fn two_point(q: u32) -> Self {
        SupClosedSubgrid {
            q,
            levels: vec![Value::ZERO, Value::ONE],
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn levels(&self) -> &[Value] {
        &self.levels
    }

    /// Misses at least one point of `L_q`.
    pub fn is_proper(&self) -> bool {
        self.levels.len() < self.q as usize + 1
    }
}

/// Extensionally stored fuzzy topology over a fixed grid.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub struct ExtensionalFuzzyTopology {
    grid: GridContext,
    members: BTreeSet<FuzzySet>,
}

impl ExtensionalFuzzyTopology {
    pub fn new(grid: GridContext, members: BTreeSet<FuzzySet>) -> Result<Self> {
        let d = ExtensionalFuzzyTopology { grid, members };
        match d.axiom_violation() {
            None => Ok(d),
            Some(reason) => Err(Error::NotAFuzzyTopology(reason)),
        }
    }

    pub(crate) fn from_members_unchecked(grid: GridContext, members: BTreeSet<FuzzySet>) -> Self {
        let d = ExtensionalFuzzyTopology { grid, members };
        debug_assert!(d.axiom_violation().is_none(), "{:?}", d.axiom_violation());
        d
    }

    fn axiom_violation(&self) -> Option<String> {
        let n = self.grid.ground_size();
        for f in &self.members {
            if f.len() != n {
                return Some(format!("member {f:?} is not over the {n}-point carrier"));
            }
            if !f.on_grid(self.grid.q()) {
                return Some(format!("member {f:?} leaves the grid q={}", self.grid.q()));
            }
        }
        for c in [Value::ZERO, Value::ONE] {
            if !self.members.contains(&FuzzySet::constant(n, c)) {
                return Some(format!("missing the constant {c}"));
            }
        }
        for f in &self.members {
            for g in &self.members {
                if !self.members.contains(&f.join(g)) {
                    return Some(format!("not closed under max: {f:?} ∨ {g:?}"));
                }
                if !self.members.contains(&f.meet(g)) {
                    return Some(format!("not closed under min: {f:?} ∧ {g:?}"));
                }
            }
        }
        None
    }

    /// Re-check the membership axioms; true for every constructed value.
    pub fn satisfies_axioms(&self) -> bool {
        self.axiom_violation().is_none()
    }

    pub fn grid(&self) -> GridContext {
        self.grid
    }

    pub fn ground_size(&self) -> usize {
        self.grid.ground_size()
    }

    pub fn members(&self) -> &BTreeSet<FuzzySet> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, f: &FuzzySet) -> bool {
        self.members.contains(f)
    }

    pub fn is_subfamily_of(&self, other: &ExtensionalFuzzyTopology) -> bool {
        self.members.is_subset(&other.members)
    }

    /// The constants present in the family; always a sup-closed subgrid.
    pub fn constant_levels(&self) -> SupClosedSubgrid {
        let n = self.ground_size();
        let levels = self
            .grid
            .values()
            .into_iter()
            .filter(|&k| self.members.contains(&FuzzySet::constant(n, k)))
            .collect();
        SupClosedSubgrid {
            q: self.grid.q(),
            levels,
        }
    }

    /// Members whose values all lie in the given level list.
    pub fn members_valued_in(&self, levels: &[Value]) -> BTreeSet<FuzzySet> {
        self.members
            .iter()
            .filter(|f| f.valued_in(levels))
            .cloned()
            .collect()
    }
}

/// The lsc functions of a crisp base topology, stored intensionally.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct InducedFuzzyTopology {
    base: Topology,
    grid: GridContext,
}

impl InducedFuzzyTopology {
    pub fn new(base: Topology, q: u32) -> Result<Self> {
        let grid = GridContext::new(q, base.ground_size())?;
        Ok(InducedFuzzyTopology { base, grid })
    }

    pub fn base(&self) -> &Topology {
        &self.base
    }

    pub fn grid(&self) -> GridContext {
        self.grid
    }

    /// Membership is lower semicontinuity; the test runs over the member's
    /// own refined value grid, so off-grid functions are decidable too.
    pub fn contains(&self, f: &FuzzySet) -> bool {
        f.len() == self.base.ground_size() && is_lsc(f, &self.base)
    }

    /// The grid-valued members, listed extensionally.
    pub fn enumerate(&self) -> Result<ExtensionalFuzzyTopology> {
        omega(&self.base, &SupClosedSubgrid::full(self.grid.q()))
    }
}

/// Either representation, for operations that accept both.
#[derive(Clone, Debug, Serialize)]
pub enum FuzzyTopology {
    Extensional(ExtensionalFuzzyTopology),
    Induced(InducedFuzzyTopology),
}

impl FuzzyTopology {
    pub fn grid(&self) -> GridContext {
        match self {
            FuzzyTopology::Extensional(d) => d.grid(),
            FuzzyTopology::Induced(d) => d.grid(),
        }
    }

    pub fn ground_size(&self) -> usize {
        self.grid().ground_size()
    }

    pub fn contains(&self, f: &FuzzySet) -> bool {
        match self {
            FuzzyTopology::Extensional(d) => d.contains(f),
            FuzzyTopology::Induced(d) => d.contains(f),
        }
    }

    /// Grid-valued member list (enumerated for the induced form).
    pub fn grid_members(&self) -> Result<Vec<FuzzySet>> {
        match self {
            FuzzyTopology::Extensional(d) => Ok(d.members().iter().cloned().collect()),
            FuzzyTopology::Induced(d) => Ok(d.enumerate()?.members().iter().cloned().collect()),
        }
    }

    pub fn iota(&self) -> Topology {
        match self {
            FuzzyTopology::Extensional(d) => iota(d),
            FuzzyTopology::Induced(d) => d.base().clone(),
        }
    }

    pub fn is_laminated(&self) -> bool {
        match self {
            FuzzyTopology::Extensional(d) => !d.constant_levels().is_proper(),
            // the lsc family contains every constant
            FuzzyTopology::Induced(_) => true,
        }
    }
}

/// Lower semicontinuity of `f` with respect to `t`: every strict level set
/// is open. The thresholds at `f`'s own distinct values suffice, since the
/// level sets are constant between consecutive values.
pub fn is_lsc(f: &FuzzySet, t: &Topology) -> bool {
    f.distinct_values()
        .into_iter()
        .all(|c| t.is_open(f.level_above(c)))
}

/// `ω_L(τ)`: all `L`-valued lsc functions. With the full grid this is the
/// grid rendering of the induced fuzzy topology.
pub fn omega(t: &Topology, l: &SupClosedSubgrid) -> Result<ExtensionalFuzzyTopology> {
    let n = t.ground_size();
    let grid = GridContext::new(l.q(), n)?;
    let count = (l.levels().len() as u64).checked_pow(n as u32);
    if count.is_none() || count.unwrap() > (1 << 21) {
        return Err(Error::BoundExceeded(format!(
            "{}^{n} candidate functions",
            l.levels().len()
        )));
    }
    let members = enumerate_functions(n, l.levels())
        .into_iter()
        .filter(|f| is_lsc(f, t))
        .collect();
    Ok(ExtensionalFuzzyTopology::from_members_unchecked(
        grid, members,
    ))
}

/// `ω(τ)` over the full grid `L_q`.
pub fn omega_grid(t: &Topology, q: u32) -> Result<ExtensionalFuzzyTopology> {
    omega(t, &SupClosedSubgrid::full(q))
}

/// `ι(δ)`: the coarsest topology making every member lsc, generated by all
/// strict level sets at grid thresholds.
pub fn iota(d: &ExtensionalFuzzyTopology) -> Topology {
    let mut subbase = Vec::new();
    for f in d.members() {
        for &c in &d.grid().thresholds() {
            subbase.push(f.level_above(c));
        }
    }
    generate_topology(&subbase, d.ground_size())
}

/// `χ(τ)`: characteristic functions of the opens, as a fuzzy topology on
/// the ambient grid.
pub fn chi(t: &Topology, q: u32) -> Result<ExtensionalFuzzyTopology> {
    let grid = GridContext::new(q, t.ground_size())?;
    let members = t
        .opens()
        .iter()
        .map(|&u| FuzzySet::characteristic(t.ground_size(), u))
        .collect();
    Ok(ExtensionalFuzzyTopology::from_members_unchecked(
        grid, members,
    ))
}

/// `χ*(δ)`: the sets whose characteristic function belongs to `δ`. The
/// closure axioms make this a topology.
pub fn chi_star(d: &ExtensionalFuzzyTopology) -> Topology {
    let n = d.ground_size();
    let opens: BTreeSet<Subset> = crate::subset::all_subsets(n)
        .filter(|&u| d.contains(&FuzzySet::characteristic(n, u)))
        .collect();
    Topology::new(n, opens).expect("chi_star of a fuzzy topology is a topology")
}

/// Which constants seed a generated family.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum GenerationMode {
    /// Constants 0 and 1 only.
    Chang,
    /// Every grid constant.
    Laminated,
}

/// Least member set containing the generators and the mode's constants,
/// closed under pairwise max and min; computed as a fixpoint in canonical
/// member order.
pub fn generate_fuzzy_topology(
    generators: &[FuzzySet],
    mode: GenerationMode,
    grid: GridContext,
) -> Result<ExtensionalFuzzyTopology> {
    let n = grid.ground_size();
    let mut members: BTreeSet<FuzzySet> = BTreeSet::new();
    for f in generators {
        if f.len() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                actual: f.len(),
            });
        }
        if !f.on_grid(grid.q()) {
            return Err(Error::OffGrid(format!("{f:?}")));
        }
        members.insert(f.clone());
    }
    match mode {
        GenerationMode::Chang => {
            members.insert(FuzzySet::constant(n, Value::ZERO));
            members.insert(FuzzySet::constant(n, Value::ONE));
        }
        GenerationMode::Laminated => {
            for v in grid.values() {
                members.insert(FuzzySet::constant(n, v));
            }
        }
    }
    loop {
        let mut fresh = Vec::new();
        for f in &members {
            for g in &members {
                for h in [f.join(g), f.meet(g)] {
                    if !members.contains(&h) {
                        fresh.push(h);
                    }
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        members.extend(fresh);
    }
    Ok(ExtensionalFuzzyTopology::from_members_unchecked(
        grid, members,
    ))
}

/// The four equivalent formulations of weak inducedness, evaluated
/// independently so a disagreement (an engine bug) is observable.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct WeaklyInducedVerdicts {
    /// `χ*(δ) = ι(δ)`.
    pub chi_star_equals_iota: bool,
    /// `δ ⊇ χ(ι(δ))`.
    pub contains_chi_of_iota: bool,
    /// `δ ⊆ ω(χ*(δ))`.
    pub within_omega_of_chi_star: bool,
    /// Characteristic functions of member level sets belong to `δ`.
    pub level_characteristics_present: bool,
}

impl WeaklyInducedVerdicts {
    pub fn all(&self) -> bool {
        self.chi_star_equals_iota
            && self.contains_chi_of_iota
            && self.within_omega_of_chi_star
            && self.level_characteristics_present
    }

    pub fn agree(&self) -> bool {
        let v = self.chi_star_equals_iota;
        self.contains_chi_of_iota == v
            && self.within_omega_of_chi_star == v
            && self.level_characteristics_present == v
    }
}

/// Counterexample payloads attached to a negative classification verdict.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    MissingConstant {
        value: Value,
    },
    MissingCharacteristic {
        set: Subset,
    },
    AffineEscape {
        member: FuzzySet,
        slope: String,
        offset: String,
    },
    OmegaGap {
        missing: FuzzySet,
    },
}

/// Where an extensional family sits in the induced hierarchy.
#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub is_chang: bool,
    pub is_laminated: bool,
    pub weakly_induced: WeaklyInducedVerdicts,
    pub is_weakly_induced: bool,
    pub subverdicts_agree: bool,
    pub is_grid_affine_invariant: bool,
    pub is_induced_on_grid: bool,
    pub witnesses: Vec<Witness>,
}

/// The boolean shape of a report, used as a census key.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub struct ClassSignature {
    pub laminated: bool,
    pub weakly_induced: bool,
    pub grid_affine_invariant: bool,
    pub induced_on_grid: bool,
}

impl ClassificationReport {
    pub fn signature(&self) -> ClassSignature {
        ClassSignature {
            laminated: self.is_laminated,
            weakly_induced: self.is_weakly_induced,
            grid_affine_invariant: self.is_grid_affine_invariant,
            induced_on_grid: self.is_induced_on_grid,
        }
    }
}

/// Slopes and offsets of the affine maps carrying one grid interval onto
/// another; the finite family quantified by the grid-affine-invariance
/// verdict. Includes the pure rescalings `(f - a)/(b - a)` as the maps onto
/// `[0, 1]`.
pub fn grid_interval_maps(q: u32) -> Vec<(Rat, Rat)> {
    let q_i = i64::from(q);
    let mut maps = Vec::new();
    for a in 0..q_i {
        for b in a + 1..=q_i {
            for a2 in 0..q_i {
                for b2 in a2 + 1..=q_i {
                    let m = Ratio::new(b2 - a2, b - a);
                    let k = Ratio::new(a2, q_i) - m * Ratio::new(a, q_i);
                    maps.push((m, k));
                }
            }
        }
    }
    maps.sort();
    maps.dedup();
    maps
}

/// Classify an extensional family. Fails only if the full-grid member
/// enumeration behind the induced-on-grid verdict is infeasible.
pub fn classify(d: &ExtensionalFuzzyTopology) -> Result<ClassificationReport> {
    let n = d.ground_size();
    let q = d.grid().q();
    let mut witnesses = Vec::new();

    let is_chang = d.axiom_violation().is_none();

    let mut is_laminated = true;
    for k in d.grid().values() {
        if !d.contains(&FuzzySet::constant(n, k)) {
            is_laminated = false;
            witnesses.push(Witness::MissingConstant { value: k });
            break;
        }
    }

    let level_topology = iota(d);
    let chi_topology = chi_star(d);

    let chi_star_equals_iota = chi_topology == level_topology;
    let mut contains_chi_of_iota = true;
    for &u in level_topology.opens() {
        if !d.contains(&FuzzySet::characteristic(n, u)) {
            contains_chi_of_iota = false;
            witnesses.push(Witness::MissingCharacteristic { set: u });
            break;
        }
    }
    let within_omega_of_chi_star = d.members().iter().all(|f| is_lsc(f, &chi_topology));
    let level_characteristics_present = d.members().iter().all(|f| {
        d.grid()
            .thresholds()
            .iter()
            .all(|&c| d.contains(&FuzzySet::characteristic(n, f.level_above(c))))
    });

    let weakly_induced = WeaklyInducedVerdicts {
        chi_star_equals_iota,
        contains_chi_of_iota,
        within_omega_of_chi_star,
        level_characteristics_present,
    };

    let mut is_grid_affine_invariant = true;
    'affine: for (m, k) in grid_interval_maps(q) {
        for f in d.members() {
            let g = f.affine_adjust(m, k)?;
            if g.on_grid(q) && !d.contains(&g) {
                is_grid_affine_invariant = false;
                witnesses.push(Witness::AffineEscape {
                    member: f.clone(),
                    slope: m.to_string(),
                    offset: k.to_string(),
                });
                break 'affine;
            }
        }
    }

    let full_omega = omega_grid(&level_topology, q)?;
    let is_induced_on_grid = &full_omega == d;
    if !is_induced_on_grid {
        if let Some(missing) = full_omega.members().difference(d.members()).next() {
            witnesses.push(Witness::OmegaGap {
                missing: missing.clone(),
            });
        }
    }

    Ok(ClassificationReport {
        is_chang,
        is_laminated,
        weakly_induced,
        is_weakly_induced: weakly_induced.all(),
        subverdicts_agree: weakly_induced.agree(),
        is_grid_affine_invariant,
        is_induced_on_grid,
        witnesses,
    })
}

/// The separating-bump construction: given `x ∈ U` with `U` open in
/// `ι(δ)`, pick finitely many members `g_i` and thresholds `a_i` with
/// `x ∈ ⋂ (g_i)_{(a_i} ⊆ U`, rescale each truncation
/// `a_i ∨ (g_i(x) ∧ g_i)` onto `[0, 1]`, and return the meet: a fuzzy set
/// that is 1 at `x` and 0 off `U`. The result may leave `δ`'s grid; its
/// values are exact rationals regardless.
pub fn witness_bump(d: &ExtensionalFuzzyTopology, x: usize, u: Subset) -> Result<FuzzySet> {
    let n = d.ground_size();
    if x >= n || !u.contains(x) {
        return Err(Error::PointNotInSet { point: x });
    }
    let level_topology = iota(d);
    if !level_topology.is_open(u) {
        return Err(Error::NotOpen);
    }
    let full = Subset::full(n);
    if u == full {
        return Ok(FuzzySet::constant(n, Value::ONE));
    }

    // Greedy pass over the subbase in canonical order: keep each level set
    // through x that strictly shrinks the running intersection. The final
    // intersection is the minimal open neighbourhood of x, hence inside U.
    let mut chosen: Vec<(&FuzzySet, Value)> = Vec::new();
    let mut current = full;
    'search: for g in d.members() {
        for &a in &d.grid().thresholds() {
            let s = g.level_above(a);
            if s.contains(x) && current.intersection(s) != current {
                current = current.intersection(s);
                chosen.push((g, a));
                if current.is_subset_of(u) {
                    break 'search;
                }
            }
        }
    }
    if !current.is_subset_of(u) {
        return Err(Error::NotOpen);
    }

    let mut factors = Vec::with_capacity(chosen.len());
    for (g, a) in chosen {
        let b = g.value(x);
        debug_assert!(a < b);
        let truncated = FuzzySet::new(g.values().iter().map(|&v| a.max(b.min(v))).collect());
        let span = b.rat() - a.rat();
        let rescaled = truncated.affine_adjust(span.recip(), -a.rat() / span)?;
        factors.push(rescaled);
    }
    crate::fuzzy_set::pointwise_inf(&factors)
}

/// Rebuild a grid-valued lsc function from its level sets:
/// `f̂ = ⋁_{c ∈ L_q} c ∧ χ_{U_c}`. On a finite grid every positive level has
/// a gap below it, so `U_c` is the weak level set at each threshold — it
/// equals the strict level set one grid step down, hence is open. The
/// result equals `f` whenever the precondition holds.
pub fn reconstruct_lsc(d: &ExtensionalFuzzyTopology, f: &FuzzySet) -> Result<FuzzySet> {
    let n = d.ground_size();
    if f.len() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            actual: f.len(),
        });
    }
    if !f.on_grid(d.grid().q()) {
        return Err(Error::OffGrid(format!("{f:?}")));
    }
    let level_topology = iota(d);
    if !is_lsc(f, &level_topology) {
        return Err(Error::NotLsc);
    }
    let mut layers = Vec::new();
    for c in d.grid().values() {
        let u_c = if c.is_zero() {
            Subset::full(n)
        } else {
            f.level_at_least(c)
        };
        layers.push(FuzzySet::constant(n, c).meet(&FuzzySet::characteristic(n, u_c)));
    }
    crate::fuzzy_set::pointwise_sup(&layers)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(num: i64, den: i64) -> Value {
        Value::new(num, den).unwrap()
    }

    fn fs(entries: &[(i64, i64)]) -> FuzzySet {
        FuzzySet::new(entries.iter().map(|&(n, d)| v(n, d)).collect())
    }

    #[test]
    fn omega_examples() {
        // indiscrete base, two-point values: constants only
        let d = omega(&Topology::indiscrete(2), &SupClosedSubgrid::two_point(1)).unwrap();
        assert_eq!(d.len(), 2);
        assert!(d.contains(&FuzzySet::constant(2, Value::ZERO)));
        assert!(d.contains(&FuzzySet::constant(2, Value::ONE)));

        // discrete base: every {0,1}-valued function is lsc
        let d = omega(&Topology::discrete(2), &SupClosedSubgrid::two_point(1)).unwrap();
        assert_eq!(d.len(), 4);

        // Sierpiński: the characteristic function of the closed point is cut
        let d = omega(&Topology::sierpinski(), &SupClosedSubgrid::two_point(1)).unwrap();
        let expected: BTreeSet<FuzzySet> = [
            FuzzySet::constant(2, Value::ZERO),
            FuzzySet::constant(2, Value::ONE),
            FuzzySet::characteristic(2, Subset::singleton(1)),
        ]
        .into();
        assert_eq!(d.members(), &expected);
    }

    #[test]
    fn iota_examples() {
        let grid = GridContext::new(2, 2).unwrap();
        let constants_only = generate_fuzzy_topology(&[], GenerationMode::Chang, grid).unwrap();
        assert_eq!(iota(&constants_only), Topology::indiscrete(2));

        // round trip through omega restores the base
        for t in [
            Topology::sierpinski(),
            Topology::discrete(3),
            Topology::indiscrete(3),
            generate_topology(
                &[Subset::from_points(&[0, 1]), Subset::from_points(&[1, 2])],
                3,
            ),
        ] {
            for q in [1, 2, 4] {
                assert_eq!(iota(&omega_grid(&t, q).unwrap()), t);
            }
        }
    }

    #[test]
    fn chi_and_chi_star_examples() {
        for t in [
            Topology::sierpinski(),
            Topology::discrete(2),
            generate_topology(&[Subset::singleton(0), Subset::from_points(&[0, 1])], 3),
        ] {
            let char_family = chi(&t, 2).unwrap();
            assert_eq!(chi_star(&char_family), t);
            assert_eq!(iota(&char_family), t);
            assert_eq!(chi_star(&omega_grid(&t, 2).unwrap()), t);
        }
    }

    #[test]
    fn generate_fuzzy_topology_examples() {
        let grid = GridContext::new(2, 2).unwrap();
        let chang = generate_fuzzy_topology(&[], GenerationMode::Chang, grid).unwrap();
        assert_eq!(chang.len(), 2);

        let laminated = generate_fuzzy_topology(&[], GenerationMode::Laminated, grid).unwrap();
        assert_eq!(laminated.len(), 3);
        assert!(laminated.contains(&FuzzySet::constant(2, v(1, 2))));

        let grid1 = GridContext::new(1, 2).unwrap();
        let chi0 = FuzzySet::characteristic(2, Subset::singleton(0));
        let chi1 = FuzzySet::characteristic(2, Subset::singleton(1));
        let d =
            generate_fuzzy_topology(&[chi0.clone(), chi1.clone()], GenerationMode::Chang, grid1)
                .unwrap();
        assert_eq!(d.len(), 4);
        assert!(d.contains(&chi0) && d.contains(&chi1));
    }

    #[test]
    fn generation_is_a_closure_operator() {
        let grid = GridContext::new(2, 2).unwrap();
        let gens = [fs(&[(0, 1), (1, 2)]), fs(&[(1, 2), (1, 1)])];
        let d = generate_fuzzy_topology(&gens, GenerationMode::Chang, grid).unwrap();
        for g in &gens {
            assert!(d.contains(g));
        }
        let again = generate_fuzzy_topology(
            &d.members().iter().cloned().collect::<Vec<_>>(),
            GenerationMode::Chang,
            grid,
        )
        .unwrap();
        assert_eq!(again, d);
        let more = generate_fuzzy_topology(
            &[gens[0].clone(), gens[1].clone(), fs(&[(1, 1), (0, 1)])],
            GenerationMode::Chang,
            grid,
        )
        .unwrap();
        assert!(d.is_subfamily_of(&more));
        assert!(classify(&d).unwrap().is_chang);
    }

    #[test]
    fn classify_chi_is_not_laminated_for_q_at_least_two() {
        let t = Topology::sierpinski();
        let report = classify(&chi(&t, 2).unwrap()).unwrap();
        assert!(!report.is_laminated);
        assert!(report.is_weakly_induced);
        assert!(report.subverdicts_agree);
        assert!(!report.is_induced_on_grid);
        assert!(matches!(
            report.witnesses.first(),
            Some(Witness::MissingConstant { .. })
        ));
    }

    #[test]
    fn classify_omega_is_all_true() {
        for t in [
            Topology::sierpinski(),
            Topology::discrete(2),
            Topology::indiscrete(3),
        ] {
            for q in [1, 2, 4] {
                let report = classify(&omega_grid(&t, q).unwrap()).unwrap();
                assert!(report.is_chang);
                assert!(report.is_laminated);
                assert!(report.is_weakly_induced);
                assert!(report.subverdicts_agree);
                assert!(report.is_grid_affine_invariant);
                assert!(report.is_induced_on_grid);
                assert!(report.witnesses.is_empty());
            }
        }
    }

    #[test]
    fn induced_on_grid_matches_the_equivalence() {
        // sweep every pair-generated family on the (2, 2) grid
        let grid = GridContext::new(2, 2).unwrap();
        let functions = grid.all_functions().unwrap();
        for i in 0..functions.len() {
            for j in i..functions.len() {
                let d = generate_fuzzy_topology(
                    &[functions[i].clone(), functions[j].clone()],
                    GenerationMode::Chang,
                    grid,
                )
                .unwrap();
                let report = classify(&d).unwrap();
                assert!(report.subverdicts_agree);
                if report.is_induced_on_grid {
                    assert!(report.is_grid_affine_invariant);
                }
                assert_eq!(
                    report.is_induced_on_grid,
                    report.is_laminated && report.is_weakly_induced
                );
            }
        }
    }

    #[test]
    fn inclusion_in_omega_of_iota() {
        let grid = GridContext::new(2, 3).unwrap();
        let d = generate_fuzzy_topology(
            &[fs(&[(0, 1), (1, 2), (1, 1)])],
            GenerationMode::Chang,
            grid,
        )
        .unwrap();
        let hull = omega_grid(&iota(&d), 2).unwrap();
        assert!(d.is_subfamily_of(&hull));
    }

    #[test]
    fn witness_bump_examples() {
        // the open point of Sierpiński separates as its characteristic function
        let d = omega_grid(&Topology::sierpinski(), 1).unwrap();
        let bump = witness_bump(&d, 1, Subset::singleton(1)).unwrap();
        assert_eq!(bump, FuzzySet::characteristic(2, Subset::singleton(1)));

        // U = X needs no separation
        let grid = GridContext::new(2, 2).unwrap();
        let constants = generate_fuzzy_topology(&[], GenerationMode::Laminated, grid).unwrap();
        let bump = witness_bump(&constants, 0, Subset::full(2)).unwrap();
        assert_eq!(bump, FuzzySet::constant(2, Value::ONE));

        // traced by hand: meet of the generator with its rescaled upper truncation
        let grid = GridContext::new(4, 3).unwrap();
        let g = fs(&[(0, 1), (1, 2), (1, 1)]);
        let d = generate_fuzzy_topology(&[g], GenerationMode::Chang, grid).unwrap();
        let bump = witness_bump(&d, 2, Subset::singleton(2)).unwrap();
        assert_eq!(bump, FuzzySet::characteristic(3, Subset::singleton(2)));

        // error paths
        assert!(matches!(
            witness_bump(&d, 0, Subset::singleton(2)),
            Err(Error::PointNotInSet { point: 0 })
        ));
        assert!(matches!(
            witness_bump(&d, 1, Subset::singleton(1)),
            Err(Error::NotOpen)
        ));
    }

    #[test]
    fn witness_bump_postcondition_on_generated_instances() {
        let grid = GridContext::new(2, 3).unwrap();
        let functions = grid.all_functions().unwrap();
        for step in [5usize, 7, 11] {
            let gens: Vec<FuzzySet> = functions.iter().step_by(step).cloned().collect();
            let d = generate_fuzzy_topology(&gens, GenerationMode::Chang, grid).unwrap();
            let level_topology = iota(&d);
            for &u in level_topology.opens() {
                for x in u.iter() {
                    let bump = witness_bump(&d, x, u).unwrap();
                    assert!(bump.value(x).is_one());
                    for y in u.complement(3).iter() {
                        assert!(bump.value(y).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn reconstruct_lsc_examples() {
        let t = Topology::sierpinski();
        let d = omega_grid(&t, 2).unwrap();

        let chi_open = FuzzySet::characteristic(2, Subset::singleton(1));
        assert_eq!(reconstruct_lsc(&d, &chi_open).unwrap(), chi_open);

        let constant = FuzzySet::constant(2, v(1, 2));
        assert_eq!(reconstruct_lsc(&d, &constant).unwrap(), constant);

        let chain = generate_topology(&[Subset::singleton(2), Subset::from_points(&[1, 2])], 3);
        let d = omega_grid(&chain, 2).unwrap();
        let f = fs(&[(0, 1), (1, 2), (1, 1)]);
        assert_eq!(reconstruct_lsc(&d, &f).unwrap(), f);

        // rejects functions that fail lower semicontinuity
        let bad = fs(&[(1, 1), (0, 1)]);
        let d = omega_grid(&Topology::sierpinski(), 1).unwrap();
        assert!(matches!(reconstruct_lsc(&d, &bad), Err(Error::NotLsc)));
    }

    #[test]
    fn induced_membership_examples() {
        let d = InducedFuzzyTopology::new(Topology::sierpinski(), 2).unwrap();
        // characteristic functions: membership iff the set is open
        assert!(d.contains(&FuzzySet::characteristic(2, Subset::singleton(1))));
        assert!(!d.contains(&FuzzySet::characteristic(2, Subset::singleton(0))));
        // constants always belong
        assert!(d.contains(&FuzzySet::constant(2, v(1, 2))));
        // off-grid values are decidable: the levels here are ∅, {1}, X
        assert!(d.contains(&fs(&[(1, 3), (2, 3)])));
        assert!(!d.contains(&fs(&[(2, 3), (1, 3)])));
    }

    #[test]
    fn constant_levels_are_the_member_constants() {
        let grid = GridContext::new(2, 2).unwrap();
        let d = generate_fuzzy_topology(&[], GenerationMode::Chang, grid).unwrap();
        assert_eq!(d.constant_levels().levels(), &[Value::ZERO, Value::ONE]);
        assert!(d.constant_levels().is_proper());
    }

    #[test]
    fn sublattice_restriction_tracks_weak_inducedness() {
        // δ ∩ L^X = ω_L(ι(δ)) for weakly induced δ, with L its constant set
        for t in [Topology::sierpinski(), Topology::discrete(2)] {
            let d = chi(&t, 2).unwrap();
            let l = d.constant_levels();
            let restricted = d.members_valued_in(l.levels());
            let target = omega(&iota(&d), &l).unwrap();
            assert_eq!(&restricted, target.members());
        }
    }
}
