//! Named property checks: each id runs one law from the invariant suites
//! and returns pass/fail verdicts. The CLI `check` command dispatches here
//! with its default scales; the acceptance suite calls the same functions
//! at the scales it pins.

use std::collections::BTreeSet;

use crate::census::{
    enumerate_fuzzy_topologies, enumerate_topologies, enumerate_topologies_by_closure,
    random_cover_instance, random_dominated_closed_instance, random_fuzzy_topology,
    random_topology, run_equivalence_census, seeded_rng,
};
use crate::compactness::{
    check_condition_l, extract_subcover, is_fuzzy_closed, is_fuzzy_compact, is_fuzzy_open,
    one_point_extension, tychonoff_level_identity, verify_subcover, CompactnessOracle,
};
use crate::constructions::{
    coproduct_fuzzy_topology, fuzzy_map_judgment, product_fuzzy_topology, relative_fuzzy_topology,
};
use crate::error::{Error, Result};
use crate::fuzzy::{
    chi, classify, iota, omega, omega_grid, ExtensionalFuzzyTopology, FuzzyTopology,
    SupClosedSubgrid,
};
use crate::fuzzy_set::{FuzzySet, GridContext};
use crate::gallery::{
    delta_rho, generated_from_sublattice, is_horizontal, is_vertical, product_pathology,
    strict_level_family, usual_interval_fuzzy_space, IntervalAssignment, IntervalFamily,
};
use crate::instance::InstanceDocument;
use crate::report::Verdict;
use crate::subset::{all_subsets, Subset};
use crate::topology::{
    coproduct_topology, generate_topology, product_topology, relative_topology, GroundMap,
    Topology,
};
use crate::value::Value;
use rand::Rng;

/// Every check id the `check` command accepts.
pub const CHECK_IDS: &[&str] = &[
    "round-trip",
    "inclusion",
    "equivalence",
    "subverdicts",
    "pullback-levels",
    "subspace",
    "product",
    "coproduct",
    "sublattice",
    "interval-levels",
    "horizontal-vertical",
    "subcover",
    "tychonoff-levels",
    "closed-dominated",
    "compactness-degenerate",
    "one-point",
];

/// Run one named check (or `all`) at the CLI's default scales.
pub fn run_check(
    id: &str,
    doc: Option<&InstanceDocument>,
    seed: u64,
) -> Result<Vec<Verdict>> {
    let extra = doc.and_then(|d| d.topology.clone());
    match id {
        "round-trip" => Ok(vec![round_trip(3, &[1, 2, 4], extra.as_ref())?]),
        "inclusion" => Ok(vec![inclusion_equality(seed, 200, 3, 4)?]),
        "equivalence" => equivalence_census_suite(),
        "subverdicts" => Ok(vec![subverdict_agreement(seed, 200, 3, 4)?]),
        "pullback-levels" => Ok(vec![pullback_levels_exhaustive(3, 2)?]),
        "subspace" => Ok(vec![subspace_commutation(seed, 100)?]),
        "product" => Ok(vec![product_laws(seed, 60)?]),
        "coproduct" => Ok(vec![coproduct_laws(seed, 60)?]),
        "sublattice" => Ok(vec![sublattice_laws(4)?]),
        "interval-levels" => Ok(vec![interval_level_identity(doc)?]),
        "horizontal-vertical" => Ok(vec![horizontal_vertical(extra.as_ref())?]),
        "subcover" => Ok(vec![subcover_postcondition(seed, 150, 4, 4)?]),
        "tychonoff-levels" => Ok(vec![tychonoff_exhaustive(3, 2)?]),
        "closed-dominated" => Ok(vec![closed_dominated(seed, 50)?]),
        "compactness-degenerate" => compactness_degenerate(),
        "one-point" => Ok(vec![one_point_equivalence(seed, 60)?]),
        "all" => {
            let mut out = Vec::new();
            for id in CHECK_IDS {
                out.extend(run_check(id, doc, seed)?);
            }
            Ok(out)
        }
        other => Err(Error::UnknownCheck(other.to_string())),
    }
}

/// Level-topology round trip: recovering every enumerated base topology
/// from its induced family, with the enumeration count cross-validated by
/// the independent strategy.
pub fn round_trip(max_n: usize, qs: &[u32], extra: Option<&Topology>) -> Result<Verdict> {
    let mut checked = 0usize;
    for n in 1..=max_n {
        let filtered = enumerate_topologies(n)?;
        let closed = enumerate_topologies_by_closure(n)?;
        if filtered.len() != closed.len() {
            return Ok(Verdict::new(
                "round-trip",
                false,
                format!(
                    "enumerators disagree at n={n}: {} vs {}",
                    filtered.len(),
                    closed.len()
                ),
            ));
        }
        let expected = [1usize, 4, 29, 355];
        if n <= expected.len() && filtered.len() != expected[n - 1] {
            return Ok(Verdict::new(
                "round-trip",
                false,
                format!("unexpected topology count at n={n}: {}", filtered.len()),
            ));
        }
        for t in &filtered {
            for &q in qs {
                if iota(&omega_grid(t, q)?) != *t {
                    return Ok(Verdict::new(
                        "round-trip",
                        false,
                        format!("failed on {t:?} at q={q}"),
                    ));
                }
                checked += 1;
            }
        }
    }
    if let Some(t) = extra {
        for &q in qs {
            if iota(&omega_grid(t, q)?) != *t {
                return Ok(Verdict::new(
                    "round-trip",
                    false,
                    format!("failed on the instance topology at q={q}"),
                ));
            }
            checked += 1;
        }
    }
    Ok(Verdict::new(
        "round-trip",
        true,
        format!("{checked} base/grid combinations, counts cross-validated"),
    ))
}

/// Inclusion in the induced hull, with equality exactly on laminated and
/// weakly induced instances.
pub fn inclusion_equality(seed: u64, trials: usize, max_n: usize, max_q: u32) -> Result<Verdict> {
    let mut rng = seeded_rng(seed);
    let mut equal = 0usize;
    for trial in 0..trials {
        let n = rng.random_range(1..=max_n);
        let q = rng.random_range(1..=max_q);
        let d = random_fuzzy_topology(&mut rng, n, q);
        let hull = omega_grid(&iota(&d), q)?;
        if !d.is_subfamily_of(&hull) {
            return Ok(Verdict::new(
                "inclusion",
                false,
                format!("inclusion fails at trial {trial} (n={n}, q={q})"),
            ));
        }
        let report = classify(&d)?;
        let equality = d == hull;
        if equality != (report.is_laminated && report.is_weakly_induced) {
            return Ok(Verdict::new(
                "inclusion",
                false,
                format!("equality criterion fails at trial {trial} (n={n}, q={q})"),
            ));
        }
        if equality {
            equal += 1;
        }
    }
    Ok(Verdict::new(
        "inclusion",
        true,
        format!("{trials} seeded instances, {equal} with equality"),
    ))
}

/// The exhaustive classification census at each feasible grid.
pub fn equivalence_census_suite() -> Result<Vec<Verdict>> {
    let mut out = Vec::new();
    for (n, q) in [(1usize, 1u32), (1, 2), (2, 1), (2, 2)] {
        match run_equivalence_census(n, q) {
            Ok(report) => out.push(Verdict::new(
                format!("equivalence({n},{q})"),
                true,
                format!(
                    "{} instances, biconditional holds, {} affine/induced divergences",
                    report.total, report.affine_induced_divergences
                ),
            )),
            Err(Error::CensusViolation(detail)) => out.push(Verdict::new(
                format!("equivalence({n},{q})"),
                false,
                detail,
            )),
            Err(other) => return Err(other),
        }
    }
    Ok(out)
}

/// The four weak-inducedness formulations agree on random instances.
pub fn subverdict_agreement(seed: u64, trials: usize, max_n: usize, max_q: u32) -> Result<Verdict> {
    let mut rng = seeded_rng(seed);
    for trial in 0..trials {
        let n = rng.random_range(1..=max_n);
        let q = rng.random_range(1..=max_q);
        let d = random_fuzzy_topology(&mut rng, n, q);
        let report = classify(&d)?;
        if !report.subverdicts_agree {
            return Ok(Verdict::new(
                "subverdicts",
                false,
                format!(
                    "formulations disagree at trial {trial}: {:?}",
                    report.weakly_induced
                ),
            ));
        }
    }
    Ok(Verdict::new(
        "subverdicts",
        true,
        format!("{trials} seeded instances"),
    ))
}

/// The pullback level identity, exhaustively over all maps between small
/// carriers and all grid functions and thresholds.
pub fn pullback_levels_exhaustive(max_n: usize, q: u32) -> Result<Verdict> {
    let mut checked = 0usize;
    for n1 in 1..=max_n {
        for n2 in 1..=max_n {
            let grid = GridContext::new(q, n2)?;
            let functions = grid.all_functions()?;
            for h in GroundMap::enumerate_all(n1, n2) {
                for f in &functions {
                    let pulled = h.pullback(f)?;
                    for c in grid.values() {
                        if pulled.level_above(c) != h.preimage(f.level_above(c)) {
                            return Ok(Verdict::new(
                                "pullback-levels",
                                false,
                                format!("failed for {f:?} at {c} under {:?}", h.image_points()),
                            ));
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(Verdict::new(
        "pullback-levels",
        true,
        format!("{checked} exhaustive level comparisons"),
    ))
}

/// Subspace commutation for both the level topology and the induced family.
pub fn subspace_commutation(seed: u64, trials: usize) -> Result<Verdict> {
    let mut rng = seeded_rng(seed);
    for trial in 0..trials {
        let n = rng.random_range(2..=3);
        let q = rng.random_range(1..=2);
        let y = Subset::from_bits(rng.random_range(1..1u32 << n));
        let m = y.card() as usize;

        let d = random_fuzzy_topology(&mut rng, n, q);
        let restricted = relative_fuzzy_topology(&d, y)?;
        if iota(&restricted) != relative_topology(&iota(&d), y)? {
            return Ok(Verdict::new(
                "subspace",
                false,
                format!("level-topology commutation fails at trial {trial}"),
            ));
        }

        let t = random_topology(&mut rng, n);
        let lhs = relative_fuzzy_topology(&omega_grid(&t, q)?, y)?;
        let rhs = omega_grid(&relative_topology(&t, y)?, q)?;
        if lhs != rhs {
            return Ok(Verdict::new(
                "subspace",
                false,
                format!("induced-family commutation fails at trial {trial} (|Y|={m})"),
            ));
        }
    }
    Ok(Verdict::new(
        "subspace",
        true,
        format!("{trials} seeded subspace pairs"),
    ))
}

const PRODUCT_SHAPES: &[(usize, usize, u32)] = &[
    (1, 1, 2),
    (1, 2, 2),
    (2, 2, 2),
    (1, 3, 2),
    (2, 2, 1),
    (2, 3, 1),
];

/// Product laws: the level topology of a product is the product of the
/// level topologies; a laminated factor laminates the product; products of
/// induced families are induced.
pub fn product_laws(seed: u64, trials: usize) -> Result<Verdict> {
    let mut rng = seeded_rng(seed);
    for trial in 0..trials {
        let (n1, n2, q) = PRODUCT_SHAPES[rng.random_range(0..PRODUCT_SHAPES.len())];
        let d1 = random_fuzzy_topology(&mut rng, n1, q);
        let d2 = random_fuzzy_topology(&mut rng, n2, q);
        let p = product_fuzzy_topology(&d1, &d2)?;

        let crisp = product_topology(&iota(&d1), &iota(&d2))?;
        if iota(&p) != crisp {
            return Ok(Verdict::new(
                "product",
                false,
                format!("level-topology identity fails at trial {trial}"),
            ));
        }

        let r1 = classify(&d1)?;
        let r2 = classify(&d2)?;
        if (r1.is_laminated || r2.is_laminated) && !classify(&p)?.is_laminated {
            return Ok(Verdict::new(
                "product",
                false,
                format!("lamination transfer fails at trial {trial}"),
            ));
        }

        // induced factors give the induced product
        let induced = product_fuzzy_topology(
            &omega_grid(&iota(&d1), q)?,
            &omega_grid(&iota(&d2), q)?,
        )?;
        if induced != omega_grid(&crisp, q)? {
            return Ok(Verdict::new(
                "product",
                false,
                format!("induced-product identity fails at trial {trial}"),
            ));
        }
    }
    Ok(Verdict::new(
        "product",
        true,
        format!("{trials} seeded product pairs"),
    ))
}

/// Coproduct laws, mirroring the product suite on disjoint unions.
pub fn coproduct_laws(seed: u64, trials: usize) -> Result<Verdict> {
    let mut rng = seeded_rng(seed);
    for trial in 0..trials {
        let n1 = rng.random_range(1..=2);
        let n2 = rng.random_range(1..=3);
        let q = rng.random_range(1..=2);
        let d1 = random_fuzzy_topology(&mut rng, n1, q);
        let d2 = random_fuzzy_topology(&mut rng, n2, q);
        let c = coproduct_fuzzy_topology(&d1, &d2)?;

        let crisp = coproduct_topology(&iota(&d1), &iota(&d2))?;
        if iota(&c) != crisp {
            return Ok(Verdict::new(
                "coproduct",
                false,
                format!("level-topology identity fails at trial {trial}"),
            ));
        }

        let r1 = classify(&d1)?;
        let r2 = classify(&d2)?;
        if (r1.is_laminated && r2.is_laminated) && !classify(&c)?.is_laminated {
            return Ok(Verdict::new(
                "coproduct",
                false,
                format!("lamination transfer fails at trial {trial}"),
            ));
        }

        let induced = coproduct_fuzzy_topology(
            &omega_grid(&iota(&d1), q)?,
            &omega_grid(&iota(&d2), q)?,
        )?;
        if induced != omega_grid(&crisp, q)? {
            return Ok(Verdict::new(
                "coproduct",
                false,
                format!("induced-coproduct identity fails at trial {trial}"),
            ));
        }
    }
    Ok(Verdict::new(
        "coproduct",
        true,
        format!("{trials} seeded coproduct pairs"),
    ))
}

/// Sublattice laws: the generated and filtered routes to the
/// value-restricted family coincide, and weakly induced families restrict
/// to their constant sublattice exactly.
pub fn sublattice_laws(q: u32) -> Result<Verdict> {
    let interior: Vec<Value> = (1..q).map(|j| Value::grid(j, q)).collect();
    let mut sublattices = Vec::new();
    for mask in 0u32..1 << interior.len() {
        let mut levels = vec![Value::ZERO, Value::ONE];
        for (i, &v) in interior.iter().enumerate() {
            if mask >> i & 1 == 1 {
                levels.push(v);
            }
        }
        sublattices.push(SupClosedSubgrid::new(q, levels)?);
    }
    let mut checked = 0usize;
    for n in 1..=2usize {
        for t in enumerate_topologies(n)? {
            for l in &sublattices {
                let filtered = omega(&t, l)?;
                if generated_from_sublattice(&t, l)? != filtered {
                    return Ok(Verdict::new(
                        "sublattice",
                        false,
                        format!("generation mismatch on {t:?} with L={:?}", l.levels()),
                    ));
                }
                // the restricted family is weakly induced with constants L
                let report = classify(&filtered)?;
                if !report.is_weakly_induced {
                    return Ok(Verdict::new(
                        "sublattice",
                        false,
                        format!("restricted family not weakly induced on {t:?}"),
                    ));
                }
                let constants = filtered.constant_levels();
                let restricted = filtered.members_valued_in(constants.levels());
                if &restricted != omega(&iota(&filtered), &constants)?.members() {
                    return Ok(Verdict::new(
                        "sublattice",
                        false,
                        format!("constant-restriction identity fails on {t:?}"),
                    ));
                }
                checked += 1;
            }
        }
    }
    Ok(Verdict::new(
        "sublattice",
        true,
        format!("{checked} base/sublattice combinations at q={q}"),
    ))
}

/// The built-in interval assignment: the Sierpiński subbase coded by the
/// whole interval at q = 2.
pub fn default_interval_assignment() -> Result<(IntervalAssignment, usize)> {
    let assignment = IntervalAssignment::new(
        vec![Subset::singleton(1)],
        IntervalFamily::new(2, vec![(Value::ZERO, Value::ONE)])?,
    )?;
    Ok((assignment, 2))
}

/// The assignment a document denotes: its proper nonempty opens as the
/// subbase, coded by its interval list.
pub fn document_interval_assignment(
    doc: &InstanceDocument,
) -> Result<Option<(IntervalAssignment, usize)>> {
    let (t, intervals) = match (&doc.topology, &doc.intervals) {
        (Some(t), Some(intervals)) => (t, intervals.clone()),
        _ => return Ok(None),
    };
    let full = Subset::full(doc.ground_size);
    let subbase: Vec<Subset> = t
        .opens()
        .iter()
        .copied()
        .filter(|u| !u.is_empty() && *u != full)
        .collect();
    let assignment = IntervalAssignment::new(subbase, intervals)?;
    Ok(Some((assignment, doc.ground_size)))
}

/// The strict level sets of the interval-coded family are exactly the
/// subbase plus the trivial sets, and its level topology is generated by
/// the subbase.
pub fn interval_level_identity(doc: Option<&InstanceDocument>) -> Result<Verdict> {
    let (assignment, n) = match doc {
        Some(d) => document_interval_assignment(d)?.map_or_else(default_interval_assignment, Ok)?,
        None => default_interval_assignment()?,
    };
    let d = delta_rho(&assignment, n)?;
    let mut expected: BTreeSet<Subset> = assignment.subbase().iter().copied().collect();
    expected.insert(Subset::EMPTY);
    expected.insert(Subset::full(n));
    if strict_level_family(&d) != expected {
        return Ok(Verdict::new(
            "interval-levels",
            false,
            "realized level sets differ from the subbase",
        ));
    }
    if iota(&d) != generate_topology(assignment.subbase(), n) {
        return Ok(Verdict::new(
            "interval-levels",
            false,
            "level topology is not the one generated by the subbase",
        ));
    }
    Ok(Verdict::new(
        "interval-levels",
        true,
        format!(
            "{} members realize exactly the {}-set subbase",
            d.len(),
            assignment.subbase().len()
        ),
    ))
}

/// Every member of the banded product family factors through a projection,
/// and its level topology is the crisp product.
pub fn horizontal_vertical(extra: Option<&Topology>) -> Result<Verdict> {
    let t1 = extra.cloned().unwrap_or_else(Topology::sierpinski);
    let t2 = Topology::sierpinski();
    if t1.ground_size() * t2.ground_size() > 8 {
        return Err(Error::CapExceeded(t1.ground_size() * t2.ground_size(), 8));
    }
    let d = product_pathology(&t1, &t2, 2)?;
    let (n1, n2) = (t1.ground_size(), t2.ground_size());
    for f in d.members() {
        if !is_horizontal(f, n1, n2) && !is_vertical(f, n1, n2) {
            return Ok(Verdict::new(
                "horizontal-vertical",
                false,
                format!("member {f:?} depends on both coordinates"),
            ));
        }
    }
    if iota(&d) != product_topology(&t1, &t2)? {
        return Ok(Verdict::new(
            "horizontal-vertical",
            false,
            "level topology differs from the crisp product",
        ));
    }
    Ok(Verdict::new(
        "horizontal-vertical",
        true,
        format!("{} members, all factored", d.len()),
    ))
}

/// The subcover postcondition re-verified independently on seeded cover
/// instances, under both the finite default and a designated oracle seeded
/// with the target's weak levels.
pub fn subcover_postcondition(
    seed: u64,
    trials: usize,
    max_n: usize,
    max_q: u32,
) -> Result<Verdict> {
    let mut rng = seeded_rng(seed);
    for trial in 0..trials {
        let n = rng.random_range(1..=max_n);
        let q = rng.random_range(1..=max_q);
        let instance = random_cover_instance(&mut rng, n, q);

        let indices = extract_subcover(&instance, &CompactnessOracle::AllCompact)?;
        if !verify_subcover(&instance, &indices) {
            return Ok(Verdict::new(
                "subcover",
                false,
                format!("postcondition fails at trial {trial} (n={n}, q={q})"),
            ));
        }

        let seeds: BTreeSet<Subset> = instance
            .target()
            .distinct_values()
            .into_iter()
            .filter(|v| !v.is_zero())
            .map(|v| instance.target().level_at_least(v))
            .collect();
        let oracle =
            CompactnessOracle::designated_from_seeds(seeds, instance.topology());
        let indices = extract_subcover(&instance, &oracle)?;
        if !verify_subcover(&instance, &indices) {
            return Ok(Verdict::new(
                "subcover",
                false,
                format!("designated-oracle postcondition fails at trial {trial}"),
            ));
        }
    }
    Ok(Verdict::new(
        "subcover",
        true,
        format!("{trials} seeded cover instances, certificates re-verified"),
    ))
}

/// The weak level of a min-cylinder is the product of the factor levels,
/// exhaustively on small carriers.
pub fn tychonoff_exhaustive(max_n: usize, q: u32) -> Result<Verdict> {
    let mut checked = 0usize;
    for n1 in 1..=max_n {
        for n2 in 1..=max_n {
            let fs1 = GridContext::new(q, n1)?.all_functions()?;
            let fs2 = GridContext::new(q, n2)?.all_functions()?;
            for f1 in &fs1 {
                for f2 in &fs2 {
                    for j in 1..=q {
                        if !tychonoff_level_identity(f1, f2, Value::grid(j, q))? {
                            return Ok(Verdict::new(
                                "tychonoff-levels",
                                false,
                                format!("identity fails for {f1:?} × {f2:?} at {j}/{q}"),
                            ));
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(Verdict::new(
        "tychonoff-levels",
        true,
        format!("{checked} exhaustive level identities"),
    ))
}

/// Fuzzy closed minorants of targets with designated-compact levels are
/// fuzzy compact.
pub fn closed_dominated(seed: u64, trials: usize) -> Result<Verdict> {
    let mut rng = seeded_rng(seed);
    let mut produced = 0usize;
    while produced < trials {
        let n = rng.random_range(1..=3);
        let q = rng.random_range(1..=4);
        let Some((_, _, g, oracle)) = random_dominated_closed_instance(&mut rng, n, q) else {
            continue;
        };
        produced += 1;
        if !is_fuzzy_compact(&g, &oracle) {
            return Ok(Verdict::new(
                "closed-dominated",
                false,
                format!("dominated closed set {g:?} not compact under the oracle"),
            ));
        }
    }
    Ok(Verdict::new(
        "closed-dominated",
        true,
        format!("{trials} seeded dominated pairs"),
    ))
}

/// The compactness corollaries in their finite degenerate form: under the
/// finite default all four characterizations hold at once, and on discrete
/// carriers fuzzy compact, fuzzy closed, and the finite-subfamily property
/// are all identically true.
pub fn compactness_degenerate() -> Result<Vec<Verdict>> {
    let oracle = CompactnessOracle::AllCompact;
    let mut out = Vec::new();

    // four-way simultaneity on every 2-point base and the 3-chain
    let mut bases = enumerate_topologies(2)?;
    bases.push(generate_topology(
        &[Subset::singleton(2), Subset::from_points(&[1, 2])],
        3,
    ));
    let mut ok = true;
    let mut detail = String::new();
    'outer: for t in &bases {
        let n = t.ground_size();
        let grid = GridContext::new(2, n)?;
        // the whole carrier and the top constant
        if !is_fuzzy_compact(&FuzzySet::constant(n, Value::ONE), &oracle) {
            ok = false;
            detail = format!("top constant not compact on {t:?}");
            break;
        }
        // every fuzzy closed set is fuzzy compact
        for f in grid.all_functions()? {
            if is_fuzzy_closed(&f, t) && !is_fuzzy_compact(&f, &oracle) {
                ok = false;
                detail = format!("closed {f:?} not compact on {t:?}");
                break 'outer;
            }
        }
        // some positive constant satisfies the finite-subfamily property
        let k = FuzzySet::constant(n, Value::ONE);
        let cover: Vec<FuzzySet> = t
            .opens()
            .iter()
            .map(|&u| FuzzySet::characteristic(n, u))
            .collect();
        let cert = check_condition_l(t, &k, &cover, Value::new(1, 2)?, &oracle)?;
        if !cert.holds {
            ok = false;
            detail = format!("finite-subfamily certificate fails on {t:?}");
            break;
        }
    }
    out.push(Verdict::new(
        "compactness-degenerate(simultaneity)",
        ok,
        if ok {
            format!("{} bases, all four characterizations true at once", bases.len())
        } else {
            detail
        },
    ));

    // discrete carriers: compact ⇔ closed ⇔ true
    let mut ok = true;
    let mut detail = String::new();
    'disc: for n in 1..=3usize {
        let t = Topology::discrete(n);
        if !t.is_hausdorff() {
            ok = false;
            detail = format!("discrete on {n} points reported non-Hausdorff");
            break;
        }
        for f in GridContext::new(2, n)?.all_functions()? {
            if !is_fuzzy_closed(&f, &t) || !is_fuzzy_compact(&f, &oracle) || !is_fuzzy_open(&f, &t)
            {
                ok = false;
                detail = format!("degenerate identity fails for {f:?} on n={n}");
                break 'disc;
            }
        }
    }
    out.push(Verdict::new(
        "compactness-degenerate(discrete)",
        ok,
        if ok {
            "compact ⇔ closed ⇔ true on every discrete carrier, n ≤ 3".to_string()
        } else {
            detail
        },
    ));
    Ok(out)
}

/// On a discrete carrier with a designated compact system, a fuzzy set is
/// oracle-compact exactly when its zero extension is fuzzy closed in the
/// one-point extension space.
pub fn one_point_equivalence(seed: u64, trials: usize) -> Result<Verdict> {
    let mut rng = seeded_rng(seed);
    for trial in 0..trials {
        let n = rng.random_range(1..=3);
        let q = rng.random_range(1..=3);
        let t = Topology::discrete(n);
        let seeds: BTreeSet<Subset> = (0..rng.random_range(0..=2))
            .map(|_| Subset::from_bits(rng.random_range(0..1u32 << n)))
            .collect();
        let oracle = CompactnessOracle::designated_compact_system(seeds, &t);
        let f = crate::census::random_grid_function(&mut rng, n, q);
        let (extended, star) = one_point_extension(&f, &t, &oracle)?;
        if is_fuzzy_compact(&f, &oracle) != is_fuzzy_closed(&extended, &star) {
            return Ok(Verdict::new(
                "one-point",
                false,
                format!("equivalence fails at trial {trial} for {f:?}"),
            ));
        }
    }
    Ok(Verdict::new(
        "one-point",
        true,
        format!("{trials} seeded extensions on discrete carriers"),
    ))
}

/// Exhaustive lamination-transfer sweep: between the listed source and
/// target families, no map out of a non-laminated source into a laminated
/// target is fuzzy continuous.
pub fn lamination_blockade(
    sources: &[ExtensionalFuzzyTopology],
    targets: &[ExtensionalFuzzyTopology],
) -> Result<Verdict> {
    let mut maps_checked = 0usize;
    for d1 in sources {
        let r1 = classify(d1)?;
        if r1.is_laminated {
            continue;
        }
        let source = FuzzyTopology::Extensional(d1.clone());
        for d2 in targets {
            let r2 = classify(d2)?;
            if !r2.is_laminated {
                continue;
            }
            let target = FuzzyTopology::Extensional(d2.clone());
            for h in GroundMap::enumerate_all(d1.ground_size(), d2.ground_size()) {
                let judgment = fuzzy_map_judgment(&h, &source, &target)?;
                if judgment.continuous {
                    return Ok(Verdict::new(
                        "lamination-blockade",
                        false,
                        format!("continuous map {:?} found", h.image_points()),
                    ));
                }
                if !crate::gallery::lamination_transfer_check(&h, &source, &target)? {
                    return Ok(Verdict::new(
                        "lamination-blockade",
                        false,
                        "transfer check disagrees with the judgment",
                    ));
                }
                maps_checked += 1;
            }
        }
    }
    Ok(Verdict::new(
        "lamination-blockade",
        true,
        format!("{maps_checked} maps, none fuzzy continuous"),
    ))
}

/// The census-scale source/target universe for the exhaustive
/// lamination-blockade sweep.
pub fn census_universe(n: usize, q: u32) -> Result<Vec<ExtensionalFuzzyTopology>> {
    enumerate_fuzzy_topologies(n, q)
}

/// Connected interval-coded carriers admit only constant fuzzy continuous
/// maps into the usual-grid interval space.
pub fn connected_constancy(assignment: &IntervalAssignment, n: usize) -> Result<Verdict> {
    let d = delta_rho(assignment, n)?;
    let t = iota(&d);
    if !t.is_connected() {
        return Ok(Verdict::new(
            "connected-constancy",
            false,
            "carrier is not connected; the constancy claim does not apply",
        ));
    }
    let q = d.grid().q();
    let (_, usual) = usual_interval_fuzzy_space(q)?;
    let source = FuzzyTopology::Extensional(d);
    let target = FuzzyTopology::Extensional(usual);
    let mut constants = 0usize;
    let mut total = 0usize;
    for h in GroundMap::enumerate_all(n, q as usize + 1) {
        let constant = h.image_points().iter().all(|&y| y == h.apply(0));
        let judgment = fuzzy_map_judgment(&h, &source, &target)?;
        if judgment.continuous != constant {
            return Ok(Verdict::new(
                "connected-constancy",
                false,
                format!(
                    "map {:?}: continuous={} but constant={}",
                    h.image_points(),
                    judgment.continuous,
                    constant
                ),
            ));
        }
        total += 1;
        if constant {
            constants += 1;
        }
    }
    Ok(Verdict::new(
        "connected-constancy",
        true,
        format!("{total} maps checked, exactly the {constants} constants continuous"),
    ))
}

/// Hausdorff coincides with discreteness on every enumerated carrier.
pub fn hausdorff_is_discrete(max_n: usize) -> Result<Verdict> {
    for n in 1..=max_n {
        for t in enumerate_topologies(n)? {
            if t.is_hausdorff() != t.is_discrete() {
                return Ok(Verdict::new(
                    "hausdorff-discrete",
                    false,
                    format!("{t:?} separates points without being discrete"),
                ));
            }
        }
    }
    Ok(Verdict::new(
        "hausdorff-discrete",
        true,
        format!("all labeled topologies on n ≤ {max_n}"),
    ))
}

/// Complete regularity agrees with its clopen-separation rendering; the
/// sublattice family over a completely regular base is generated by the
/// continuous members.
pub fn chi_consistency(q: u32) -> Result<Verdict> {
    for n in 1..=2usize {
        for t in enumerate_topologies(n)? {
            let family = chi(&t, q)?;
            if crate::fuzzy::chi_star(&family) != t {
                return Ok(Verdict::new(
                    "chi-consistency",
                    false,
                    format!("chi_star(chi(τ)) ≠ τ on {t:?}"),
                ));
            }
            if iota(&family) != t {
                return Ok(Verdict::new(
                    "chi-consistency",
                    false,
                    format!("iota(chi(τ)) ≠ τ on {t:?}"),
                ));
            }
            if crate::fuzzy::chi_star(&omega_grid(&t, q)?) != t {
                return Ok(Verdict::new(
                    "chi-consistency",
                    false,
                    format!("chi_star(omega(τ)) ≠ τ on {t:?}"),
                ));
            }
        }
    }
    Ok(Verdict::new(
        "chi-consistency",
        true,
        format!("characteristic-functor identities on n ≤ 2 at q={q}"),
    ))
}

/// Quotient checks transfer between the crisp and fuzzy sides exhaustively
/// on small carriers.
pub fn quotient_transfer(q: u32) -> Result<Verdict> {
    let mut checked = 0usize;
    for t1 in enumerate_topologies(2)? {
        for t2 in enumerate_topologies(2)? {
            let d1 = FuzzyTopology::Extensional(omega_grid(&t1, q)?);
            let d2 = FuzzyTopology::Extensional(omega_grid(&t2, q)?);
            for h in GroundMap::enumerate_all(2, 2) {
                let judgment = fuzzy_map_judgment(&h, &d1, &d2)?;
                if judgment.continuous != crate::topology::is_continuous(&h, &t1, &t2)
                    || judgment.quotient != crate::topology::is_quotient_map(&h, &t1, &t2)
                {
                    return Ok(Verdict::new(
                        "quotient-transfer",
                        false,
                        format!("transfer fails for {:?}", h.image_points()),
                    ));
                }
                checked += 1;
            }
        }
    }
    Ok(Verdict::new(
        "quotient-transfer",
        true,
        format!("{checked} exhaustive map judgments at q={q}"),
    ))
}

/// Every subset family drawn by the oracle helpers validates as hereditary.
pub fn all_subsets_of(n: usize) -> Vec<Subset> {
    all_subsets(n).collect()
}
