//! Level-set fuzzy compactness at desk scale: open/closed predicates, the
//! finite-subcover ladder with its certificate, the product level identity,
//! and one-point extension.
//!
//! Every subset of a finite carrier is compact, which collapses several of
//! the distinctions this machinery exists for. The algorithms stay
//! non-vacuous in two ways: subcover extraction returns a certificate that
//! is re-verified independently, and a designated compact family can stand
//! in for genuine compactness in negative tests.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fuzzy::is_lsc;
use crate::fuzzy_set::{pointwise_sup, FuzzySet};
use crate::subset::{check_ground_size, Subset};
use crate::topology::{product_embed, projection, Topology};
use crate::value::Value;

/// Which subsets count as compact.
#[derive(Clone, Debug, Serialize)]
pub enum CompactnessOracle {
    /// Every subset; the finite default.
    AllCompact,
    /// Only the listed subsets.
    Designated(BTreeSet<Subset>),
}

impl CompactnessOracle {
    /// A designated family, validated against the topology: every closed
    /// subset of a member must be a member. The empty set is always
    /// included.
    pub fn designated(mut family: BTreeSet<Subset>, t: &Topology) -> Result<Self> {
        family.insert(Subset::EMPTY);
        for &k in &family {
            for c in t.closed_sets() {
                if c.is_subset_of(k) && !family.contains(&c) {
                    return Err(Error::NotHereditary);
                }
            }
        }
        Ok(CompactnessOracle::Designated(family))
    }

    /// Smallest hereditary designated family containing the seeds.
    pub fn designated_from_seeds(seeds: BTreeSet<Subset>, t: &Topology) -> Self {
        let mut family = seeds;
        let closed = t.closed_sets();
        let additions: Vec<Subset> = closed
            .iter()
            .copied()
            .filter(|c| family.iter().any(|k| c.is_subset_of(*k)))
            .collect();
        family.extend(additions);
        family.insert(Subset::EMPTY);
        CompactnessOracle::Designated(family)
    }

    /// A designated family that behaves like a genuine compact system:
    /// union-closed over the seeds, then hereditary for closed subsets.
    /// Unions of closed members stay inside, which is what the one-point
    /// extension needs to produce a topology.
    pub fn designated_compact_system(seeds: BTreeSet<Subset>, t: &Topology) -> Self {
        let mut family = seeds;
        family.insert(Subset::EMPTY);
        loop {
            let mut fresh = Vec::new();
            for &a in &family {
                for &b in &family {
                    let u = a.union(b);
                    if !family.contains(&u) {
                        fresh.push(u);
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            family.extend(fresh);
        }
        match Self::designated_from_seeds(family, t) {
            CompactnessOracle::Designated(closed) => CompactnessOracle::Designated(closed),
            CompactnessOracle::AllCompact => unreachable!(),
        }
    }

    pub fn is_compact(&self, s: Subset) -> bool {
        match self {
            CompactnessOracle::AllCompact => true,
            CompactnessOracle::Designated(family) => family.contains(&s),
        }
    }
}

/// Fuzzy open: every strict level set is open, i.e. lower semicontinuity.
pub fn is_fuzzy_open(f: &FuzzySet, t: &Topology) -> bool {
    is_lsc(f, t)
}

/// Fuzzy closed: every weak level set is closed. Equivalent to the
/// complement being fuzzy open.
pub fn is_fuzzy_closed(f: &FuzzySet, t: &Topology) -> bool {
    f.distinct_values()
        .into_iter()
        .all(|c| t.is_closed(f.level_at_least(c)))
}

/// Thresholds whose weak level sets exhaust all distinct ones on `(0, 1]`:
/// the positive values of `f`, plus 1 so the empty level is covered when
/// `f` stays below it.
fn compactness_thresholds(f: &FuzzySet) -> Vec<Value> {
    let mut thresholds: Vec<Value> = f
        .distinct_values()
        .into_iter()
        .filter(|v| !v.is_zero())
        .collect();
    if !thresholds.contains(&Value::ONE) {
        thresholds.push(Value::ONE);
    }
    thresholds
}

/// Fuzzy compact: the weak level set at every positive threshold is
/// oracle-compact. The level at 0 — the whole carrier — is deliberately not
/// consulted.
pub fn is_fuzzy_compact(f: &FuzzySet, oracle: &CompactnessOracle) -> bool {
    compactness_thresholds(f)
        .into_iter()
        .all(|c| oracle.is_compact(f.level_at_least(c)))
}

/// A target together with a fuzzy-open cover dominating it.
#[derive(Clone, Debug, Serialize)]
pub struct CoverInstance {
    topology: Topology,
    target: FuzzySet,
    family: Vec<FuzzySet>,
    epsilon: Value,
}

impl CoverInstance {
    pub fn new(
        topology: Topology,
        target: FuzzySet,
        family: Vec<FuzzySet>,
        epsilon: Value,
    ) -> Result<Self> {
        let n = topology.ground_size();
        if target.len() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                actual: target.len(),
            });
        }
        if epsilon.is_zero() {
            return Err(Error::ZeroEpsilon);
        }
        for g in &family {
            if g.len() != n {
                return Err(Error::SizeMismatch {
                    expected: n,
                    actual: g.len(),
                });
            }
            if !is_lsc(g, &topology) {
                return Err(Error::NotLsc);
            }
        }
        let sup = pointwise_sup(&family)?;
        if !target.le(&sup) {
            return Err(Error::CoverPremise);
        }
        Ok(CoverInstance {
            topology,
            target,
            family,
            epsilon,
        })
    }

    pub fn topology(&self) -> &Topology {
        &self.topology
    }

    pub fn target(&self) -> &FuzzySet {
        &self.target
    }

    pub fn family(&self) -> &[FuzzySet] {
        &self.family
    }

    pub fn epsilon(&self) -> Value {
        self.epsilon
    }

    /// The descending threshold ladder `1 = c_0 > c_1 > … > c_N = 0` on the
    /// target's value grid, refined until consecutive steps fall below
    /// `ε/2`.
    pub fn ladder(&self) -> Result<Vec<Value>> {
        let base = self
            .target
            .values()
            .iter()
            .fold(1i64, |acc, v| acc.lcm(&v.denom()));
        // smallest multiple N of the base grid with 1/N < ε/2
        let two_over_eps = Ratio::new(2i64, 1) / self.epsilon.rat();
        let factor = (two_over_eps / Ratio::from_integer(base)).floor().to_integer() + 1;
        let steps = base.checked_mul(factor).filter(|&n| n <= 1 << 16);
        let steps = steps.ok_or_else(|| {
            Error::BoundExceeded(format!("subcover ladder of {base}·{factor} steps"))
        })?;
        Ok((0..=steps)
            .rev()
            .map(|j| Value::from_rat(Ratio::new(j, steps)).expect("ladder point in range"))
            .collect())
    }
}

/// Extract a finite subcover index set: per ladder level, greedily collect
/// (by ascending index) opens at the lower threshold until the weak level
/// set at the upper threshold is covered. The union over all levels
/// satisfies `sup_{K̂} g ≥ f − ε`.
pub fn extract_subcover(instance: &CoverInstance, oracle: &CompactnessOracle) -> Result<Vec<usize>> {
    let ladder = instance.ladder()?;
    let mut chosen = BTreeSet::new();
    for k in 2..ladder.len() {
        let upper = ladder[k - 1];
        let lower = ladder[k];
        let level_set = instance.target.level_at_least(upper);
        if !oracle.is_compact(level_set) {
            return Err(Error::NotCompact {
                level: upper.to_string(),
            });
        }
        let mut remaining = level_set;
        for (i, g) in instance.family.iter().enumerate() {
            if remaining.is_empty() {
                break;
            }
            let open = g.level_above(lower);
            if !open.intersection(remaining).is_empty() {
                remaining = remaining.minus(open);
                chosen.insert(i);
            }
        }
        if !remaining.is_empty() {
            return Err(Error::CoverPremise);
        }
    }
    Ok(chosen.into_iter().collect())
}

/// Independent re-evaluation of the subcover postcondition:
/// `sup_{i ∈ K̂} g_i ≥ f − ε` pointwise, with the empty supremum read as 0.
pub fn verify_subcover(instance: &CoverInstance, indices: &[usize]) -> bool {
    let n = instance.topology.ground_size();
    let selected: Vec<FuzzySet> = indices
        .iter()
        .map(|&i| instance.family[i].clone())
        .collect();
    let sup = if selected.is_empty() {
        FuzzySet::constant(n, Value::ZERO)
    } else {
        pointwise_sup(&selected).expect("nonempty selection")
    };
    instance.target.saturating_sub(instance.epsilon).le(&sup)
}

/// Outcome of a finite-subfamily check, with its certificate.
#[derive(Clone, Debug, Serialize)]
pub struct ConditionLCertificate {
    pub holds: bool,
    pub subcover: Vec<usize>,
}

/// On a finite carrier every subfamily is finite, so the check is
/// constructive rather than trivial: extract a subcover and re-verify its
/// postcondition.
pub fn check_condition_l(
    topology: &Topology,
    target: &FuzzySet,
    opens: &[FuzzySet],
    epsilon: Value,
    oracle: &CompactnessOracle,
) -> Result<ConditionLCertificate> {
    let instance = CoverInstance::new(
        topology.clone(),
        target.clone(),
        opens.to_vec(),
        epsilon,
    )?;
    let subcover = extract_subcover(&instance, oracle)?;
    Ok(ConditionLCertificate {
        holds: verify_subcover(&instance, &subcover),
        subcover,
    })
}

/// The weak level of the min-cylinder `π_1^*(f_1) ∧ π_2^*(f_2)` at a
/// positive threshold against the row-major product of the factor levels.
/// Returns the comparison verdict.
pub fn tychonoff_level_identity(f1: &FuzzySet, f2: &FuzzySet, c: Value) -> Result<bool> {
    if c.is_zero() {
        return Err(Error::ZeroEpsilon);
    }
    let (n1, n2) = (f1.len(), f2.len());
    check_ground_size(n1 * n2)?;
    let cylinder = projection(1, n1, n2)
        .pullback(f1)?
        .meet(&projection(2, n1, n2).pullback(f2)?);
    let lhs = cylinder.level_at_least(c);
    let rhs = product_embed(f1.level_at_least(c), f2.level_at_least(c), n2);
    Ok(lhs == rhs)
}

/// Adjoin a point `p` (index `n`) with value 0 and the extension topology:
/// a set is open when its trace on the carrier is open and, if it contains
/// `p`, the complement of its trace is oracle-compact. With a designated
/// oracle the family is validated before being returned.
pub fn one_point_extension(
    f: &FuzzySet,
    t: &Topology,
    oracle: &CompactnessOracle,
) -> Result<(FuzzySet, Topology)> {
    let n = t.ground_size();
    if f.len() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            actual: f.len(),
        });
    }
    check_ground_size(n + 1)?;
    let p = n;
    let mut values = f.values().to_vec();
    values.push(Value::ZERO);
    let extended = FuzzySet::new(values);

    let mut opens = BTreeSet::new();
    for candidate in crate::subset::all_subsets(n + 1) {
        let trace = candidate.minus(Subset::singleton(p));
        if !t.is_open(trace) {
            continue;
        }
        if candidate.contains(p) && !oracle.is_compact(trace.complement(n)) {
            continue;
        }
        opens.insert(candidate);
    }
    let star = Topology::new(n + 1, opens)?;
    Ok((extended, star))
}
