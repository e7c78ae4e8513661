//! Command dispatch: build the requested report from an optional instance
//! document. Input problems surface as errors (exit code 2 at the CLI);
//! failed properties surface as failing verdicts (exit code 1).

use std::time::Instant;

use serde_json::json;

use crate::census::run_equivalence_census;
use crate::checks;
use crate::compactness::{
    extract_subcover, is_fuzzy_closed, is_fuzzy_compact, is_fuzzy_open, one_point_extension,
    tychonoff_level_identity, verify_subcover, CompactnessOracle, CoverInstance,
};
use crate::constructions::{
    coproduct_fuzzy_topology, fuzzy_map_judgment, product_fuzzy_topology, relative_fuzzy_topology,
};
use crate::error::{Error, Result};
use crate::fuzzy::{
    chi_star, classify, generate_fuzzy_topology, iota, omega, omega_grid, ExtensionalFuzzyTopology,
    FuzzyTopology, GenerationMode, SupClosedSubgrid,
};
use crate::fuzzy_set::GridContext;
use crate::gallery::{
    delta_j, omega_j, open_subspace_extension, product_pathology, IntervalFamily,
};
use crate::instance::InstanceDocument;
use crate::report::{Report, Verdict};
use crate::subset::Subset;
use crate::topology::{
    coproduct_topology, is_quotient_map, product_topology, quotient_topology, relative_topology,
    Topology,
};
use crate::value::Value;

/// Runtime limits and the seed for randomized suites.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub seed: u64,
    pub max_n: usize,
    pub max_q: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            seed: 0,
            max_n: 3,
            max_q: 4,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstructKind {
    Product,
    Coproduct,
    Subspace,
    Quotient,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompactnessKind {
    Subcover,
    Levels,
    Tychonoff,
    Onepoint,
}

#[derive(Clone, Debug)]
pub enum Command {
    Classify,
    Check(String),
    Census,
    Construct(ConstructKind),
    Gallery(String),
    Compactness(CompactnessKind),
}

/// Execute one command against an optional parsed document.
pub fn dispatch(
    command: &Command,
    doc: Option<&InstanceDocument>,
    limits: &Limits,
) -> Result<Report> {
    let start = Instant::now();
    let mut report = match command {
        Command::Classify => classify_command(doc)?,
        Command::Check(id) => {
            let mut report = Report::new(format!("check {id}"));
            for verdict in checks::run_check(id, doc, limits.seed)? {
                report.push(verdict);
            }
            report
        }
        Command::Census => census_command(doc, limits)?,
        Command::Construct(kind) => construct_command(*kind, doc)?,
        Command::Gallery(entry) => gallery_command(entry, doc)?,
        Command::Compactness(kind) => compactness_command(*kind, doc)?,
    };
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

/// The family a document denotes: the Chang closure of its fuzzy sets, or
/// the induced family of its topology when no fuzzy sets are given.
pub fn document_family(doc: &InstanceDocument) -> Result<ExtensionalFuzzyTopology> {
    let grid = GridContext::new(doc.denominator, doc.ground_size)?;
    if !doc.fuzzy_sets.is_empty() {
        generate_fuzzy_topology(&doc.fuzzy_sets, GenerationMode::Chang, grid)
    } else if let Some(t) = &doc.topology {
        omega_grid(t, doc.denominator)
    } else {
        Err(Error::MissingField("fuzzy_sets or topology"))
    }
}

fn classify_command(doc: Option<&InstanceDocument>) -> Result<Report> {
    let doc = doc.ok_or(Error::MissingField("instance document"))?;
    let family = document_family(doc)?;
    let classification = classify(&family)?;
    let mut report = Report::new("classify");
    report.push(Verdict::new(
        "membership-axioms",
        classification.is_chang,
        format!("{} members over q={}", family.len(), family.grid().q()),
    ));
    report.push(Verdict::new(
        "weakly-induced-formulations-agree",
        classification.subverdicts_agree,
        String::new(),
    ));
    // the classification flags double as verdicts, so the exit code says
    // whether the family is induced on its grid
    report.push(Verdict::new("laminated", classification.is_laminated, String::new()));
    report.push(Verdict::new(
        "weakly-induced",
        classification.is_weakly_induced,
        String::new(),
    ));
    report.push(Verdict::new(
        "grid-affine-invariant",
        classification.is_grid_affine_invariant,
        String::new(),
    ));
    report.push(Verdict::new(
        "induced-on-grid",
        classification.is_induced_on_grid,
        String::new(),
    ));
    Ok(report.with_payload(json!({
        "classification": classification,
        "members": family.members(),
    })))
}

fn census_command(doc: Option<&InstanceDocument>, limits: &Limits) -> Result<Report> {
    let (n, q) = match doc {
        Some(d) => (d.ground_size, d.denominator),
        None => (2, 2),
    };
    if n > limits.max_n {
        return Err(Error::BoundExceeded(format!(
            "census ground size {n} exceeds --max-n {}",
            limits.max_n
        )));
    }
    if q > limits.max_q {
        return Err(Error::BoundExceeded(format!(
            "census denominator {q} exceeds --max-q {}",
            limits.max_q
        )));
    }
    let census = run_equivalence_census(n, q)?;
    let mut report = Report::new("census");
    report.push(Verdict::new(
        "equivalence-biconditional",
        true,
        format!(
            "{} fuzzy topologies at (n={n}, q={q}), zero violations, {} affine/induced divergences",
            census.total, census.affine_induced_divergences
        ),
    ));
    Ok(report.with_payload(serde_json::to_value(&census).expect("census serializes")))
}

fn require_topology(doc: &InstanceDocument) -> Result<&Topology> {
    doc.topology.as_ref().ok_or(Error::MissingField("topology"))
}

fn construct_command(kind: ConstructKind, doc: Option<&InstanceDocument>) -> Result<Report> {
    let doc = doc.ok_or(Error::MissingField("instance document"))?;
    let t = require_topology(doc)?;
    let q = doc.denominator;
    let induced = omega_grid(t, q)?;
    match kind {
        ConstructKind::Product => {
            let crisp = product_topology(t, t)?;
            let fuzzy = product_fuzzy_topology(&induced, &induced)?;
            let mut report = Report::new("construct product");
            report.push(Verdict::new(
                "level-topology-of-product",
                iota(&fuzzy) == crisp,
                format!("{} opens on {} points", crisp.opens().len(), crisp.ground_size()),
            ));
            report.push(Verdict::new(
                "product-of-induced-is-induced",
                fuzzy == omega_grid(&crisp, q)?,
                format!("{} members", fuzzy.len()),
            ));
            Ok(report.with_payload(json!({ "product": crisp })))
        }
        ConstructKind::Coproduct => {
            let crisp = coproduct_topology(t, t)?;
            let fuzzy = coproduct_fuzzy_topology(&induced, &induced)?;
            let mut report = Report::new("construct coproduct");
            report.push(Verdict::new(
                "level-topology-of-coproduct",
                iota(&fuzzy) == crisp,
                format!("{} opens on {} points", crisp.opens().len(), crisp.ground_size()),
            ));
            report.push(Verdict::new(
                "coproduct-of-induced-is-induced",
                fuzzy == omega_grid(&crisp, q)?,
                format!("{} members", fuzzy.len()),
            ));
            Ok(report.with_payload(json!({ "coproduct": crisp })))
        }
        ConstructKind::Subspace => {
            let y = doc.subset.ok_or(Error::MissingField("subset"))?;
            let sub = relative_topology(t, y)?;
            let restricted = relative_fuzzy_topology(&induced, y)?;
            let mut report = Report::new("construct subspace");
            report.push(Verdict::new(
                "level-topology-of-subspace",
                iota(&restricted) == sub,
                format!("{} opens on {} points", sub.opens().len(), sub.ground_size()),
            ));
            report.push(Verdict::new(
                "restriction-of-induced-is-induced",
                restricted == omega_grid(&sub, q)?,
                format!("{} members", restricted.len()),
            ));
            Ok(report.with_payload(json!({ "subspace": sub })))
        }
        ConstructKind::Quotient => {
            let (name, h) = doc
                .maps
                .iter()
                .next()
                .ok_or(Error::MissingField("maps"))?;
            if h.source_size() != t.ground_size() {
                return Err(Error::SizeMismatch {
                    expected: t.ground_size(),
                    actual: h.source_size(),
                });
            }
            let quotient = quotient_topology(h, t);
            let judgment = fuzzy_map_judgment(
                h,
                &FuzzyTopology::Extensional(induced),
                &FuzzyTopology::Extensional(omega_grid(&quotient, q)?),
            )?;
            let mut report = Report::new("construct quotient");
            report.push(Verdict::new(
                "finest-topology-is-a-quotient",
                is_quotient_map(h, t, &quotient),
                format!("map {name:?} onto {} points", quotient.ground_size()),
            ));
            report.push(Verdict::new(
                "fuzzy-quotient-transfer",
                judgment.continuous && judgment.quotient,
                "induced families on both sides".to_string(),
            ));
            Ok(report.with_payload(json!({ "quotient": quotient })))
        }
    }
}

fn gallery_command(entry: &str, doc: Option<&InstanceDocument>) -> Result<Report> {
    let base = doc
        .and_then(|d| d.topology.clone())
        .unwrap_or_else(Topology::sierpinski);
    let q = doc.map_or(4, |d| d.denominator);
    match entry {
        "A" => gallery_a(&base, q, doc),
        "B" => gallery_b(&base, doc.map_or(2, |d| d.denominator), doc),
        "C" => gallery_c(&base, if q % 2 == 0 { q } else { 2 }),
        "D" => gallery_d(doc),
        "E" => gallery_e(),
        other => Err(Error::UnknownGallery(other.to_string())),
    }
}

fn gallery_a(base: &Topology, q: u32, doc: Option<&InstanceDocument>) -> Result<Report> {
    let mut report = Report::new("gallery A");

    // every proper sup-closed value set: weakly induced, never laminated
    let interior: Vec<Value> = (1..q).map(|j| Value::grid(j, q)).collect();
    let mut swept = 0usize;
    let mut ok = true;
    let mut detail = String::new();
    for mask in 0u32..(1 << interior.len()) - 1 {
        let mut levels = vec![Value::ZERO, Value::ONE];
        for (i, &v) in interior.iter().enumerate() {
            if mask >> i & 1 == 1 {
                levels.push(v);
            }
        }
        let l = SupClosedSubgrid::new(q, levels)?;
        let family = omega(base, &l)?;
        let classification = classify(&family)?;
        if !classification.is_weakly_induced
            || classification.is_laminated
            || iota(&family) != *base
        {
            ok = false;
            detail = format!("failed for L = {:?}", l.levels());
            break;
        }
        swept += 1;
    }
    report.push(Verdict::new(
        "proper-sublattices-weakly-induced-not-laminated",
        ok,
        if ok {
            format!("{swept} proper sup-closed value sets at q={q}")
        } else {
            detail
        },
    ));

    // zero-extended subspace family over a proper nonempty open
    let full = Subset::full(base.ground_size());
    let chosen = doc.and_then(|d| d.subset).or_else(|| {
        base.opens()
            .iter()
            .copied()
            .filter(|u| !u.is_empty() && *u != full)
            .max_by_key(|u| (u.card(), u.bits()))
    });
    match chosen {
        Some(y) => {
            let family = open_subspace_extension(base, y, q)?;
            let classification = classify(&family)?;
            report.push(Verdict::new(
                "open-subspace-extension",
                !classification.is_laminated
                    && classification.is_weakly_induced
                    && iota(&family) == *base
                    && family.constant_levels().levels() == [Value::ZERO, Value::ONE],
                format!("{} members over Y = {y:?}", family.len()),
            ));
        }
        None => report.push(Verdict::new(
            "open-subspace-extension",
            true,
            "no proper nonempty open set; construction not applicable",
        )),
    }
    Ok(report)
}

fn gallery_b(base: &Topology, q: u32, doc: Option<&InstanceDocument>) -> Result<Report> {
    let intervals = match doc.and_then(|d| d.intervals.clone()) {
        Some(intervals) => intervals,
        None => {
            if q % 2 != 0 {
                return Err(Error::OddGrid);
            }
            IntervalFamily::new(q, vec![(Value::ZERO, Value::new(1, 2)?)])?
        }
    };
    let banded = delta_j(base.ground_size(), &intervals)?;
    let family = omega_j(base, &intervals)?;
    let classification = classify(&family)?;
    let mut report = Report::new("gallery B");
    report.push(Verdict::new(
        "band-family-satisfies-the-axioms",
        banded.satisfies_axioms(),
        format!("{} members before the lsc cut", banded.len()),
    ));
    report.push(Verdict::new(
        "laminated",
        classification.is_laminated,
        String::new(),
    ));
    report.push(Verdict::new(
        "level-topology-restores-the-base",
        iota(&family) == *base,
        String::new(),
    ));
    if intervals.is_whole() {
        report.push(Verdict::new(
            "whole-interval-gives-the-induced-family",
            family == omega_grid(base, q)?,
            String::new(),
        ));
    } else {
        report.push(Verdict::new(
            "characteristic-members-are-trivial",
            chi_star(&family) == Topology::indiscrete(base.ground_size()),
            "only ∅ and the carrier have their characteristic function inside".to_string(),
        ));
        report.push(Verdict::new(
            "proper-subfamily-of-the-induced-one",
            family.is_subfamily_of(&omega_grid(base, q)?) && family.len() < omega_grid(base, q)?.len(),
            format!("{} members", family.len()),
        ));
    }
    Ok(report)
}

fn gallery_c(base: &Topology, q: u32) -> Result<Report> {
    let family = product_pathology(base, base, q)?;
    let n = base.ground_size();
    let factored = family
        .members()
        .iter()
        .all(|f| crate::gallery::is_horizontal(f, n, n) || crate::gallery::is_vertical(f, n, n));
    let mut report = Report::new("gallery C");
    report.push(Verdict::new(
        "union-closed-without-a-closure-pass",
        family.satisfies_axioms(),
        format!("{} members", family.len()),
    ));
    report.push(Verdict::new("every-member-horizontal-or-vertical", factored, String::new()));
    report.push(Verdict::new(
        "level-topology-is-the-product",
        iota(&family) == product_topology(base, base)?,
        String::new(),
    ));
    report.push(Verdict::new(
        "laminated",
        classify(&family)?.is_laminated,
        String::new(),
    ));
    Ok(report)
}

fn gallery_d(doc: Option<&InstanceDocument>) -> Result<Report> {
    let mut report = Report::new("gallery D");
    report.push(checks::interval_level_identity(doc)?);

    let (assignment, n) = match doc {
        Some(d) => match checks::document_interval_assignment(d)? {
            Some(pair) => pair,
            None => checks::default_interval_assignment()?,
        },
        None => checks::default_interval_assignment()?,
    };
    let family = crate::gallery::delta_rho(&assignment, n)?;
    report.push(Verdict::new(
        "laminated",
        classify(&family)?.is_laminated,
        String::new(),
    ));
    if iota(&family).is_connected() {
        report.push(checks::connected_constancy(&assignment, n)?);
    } else {
        report.push(Verdict::new(
            "connected-constancy",
            true,
            "carrier is disconnected; the constancy claim is not applicable",
        ));
    }
    Ok(report)
}

fn gallery_e() -> Result<Report> {
    let mut report = Report::new("gallery E");
    let universe = checks::census_universe(2, 2)?;
    report.push(checks::lamination_blockade(&universe, &universe)?);
    Ok(report)
}

fn compactness_command(kind: CompactnessKind, doc: Option<&InstanceDocument>) -> Result<Report> {
    let doc = doc.ok_or(Error::MissingField("instance document"))?;
    let t = require_topology(doc)?;
    let oracle = match &doc.oracle {
        Some(family) => CompactnessOracle::designated(family.clone(), t)?,
        None => CompactnessOracle::AllCompact,
    };
    match kind {
        CompactnessKind::Subcover => {
            if doc.fuzzy_sets.len() < 2 {
                return Err(Error::MissingField("fuzzy_sets (target plus cover)"));
            }
            let epsilon = doc.epsilon.ok_or(Error::MissingField("epsilon"))?;
            let target = doc.fuzzy_sets[0].clone();
            let family = doc.fuzzy_sets[1..].to_vec();
            let instance = CoverInstance::new(t.clone(), target, family, epsilon)?;
            let indices = extract_subcover(&instance, &oracle)?;
            let verified = verify_subcover(&instance, &indices);
            let mut report = Report::new("compactness subcover");
            report.push(Verdict::new(
                "subcover-certificate-verified",
                verified,
                format!("indices {indices:?}, epsilon {epsilon}"),
            ));
            Ok(report.with_payload(json!({ "subcover": indices })))
        }
        CompactnessKind::Levels => {
            if doc.fuzzy_sets.is_empty() {
                return Err(Error::MissingField("fuzzy_sets"));
            }
            let mut report = Report::new("compactness levels");
            let mut rows = Vec::new();
            for (i, f) in doc.fuzzy_sets.iter().enumerate() {
                let open = is_fuzzy_open(f, t);
                let closed = is_fuzzy_closed(f, t);
                let compact = is_fuzzy_compact(f, &oracle);
                report.push(Verdict::new(
                    format!("levels[{i}]-closed-iff-complement-open"),
                    closed == is_fuzzy_open(&f.complement(), t),
                    format!("open={open} closed={closed} compact={compact}"),
                ));
                rows.push(json!({
                    "set": f,
                    "open": open,
                    "closed": closed,
                    "compact": compact,
                    "levels": f
                        .distinct_values()
                        .iter()
                        .map(|&c| json!({
                            "threshold": c,
                            "strictly_above": f.level_above(c),
                            "at_least": f.level_at_least(c),
                        }))
                        .collect::<Vec<_>>(),
                }));
            }
            Ok(report.with_payload(json!({ "levels": rows })))
        }
        CompactnessKind::Tychonoff => {
            if doc.fuzzy_sets.len() < 2 {
                return Err(Error::MissingField("fuzzy_sets (two factors)"));
            }
            let f1 = &doc.fuzzy_sets[0];
            let f2 = &doc.fuzzy_sets[1];
            let mut ok = true;
            for j in 1..=doc.denominator {
                ok &= tychonoff_level_identity(f1, f2, Value::grid(j, doc.denominator))?;
            }
            let mut report = Report::new("compactness tychonoff");
            report.push(Verdict::new(
                "product-levels-are-level-products",
                ok,
                format!("all positive thresholds at q={}", doc.denominator),
            ));
            Ok(report)
        }
        CompactnessKind::Onepoint => {
            if doc.fuzzy_sets.is_empty() {
                return Err(Error::MissingField("fuzzy_sets"));
            }
            let f = &doc.fuzzy_sets[0];
            let (extended, star) = one_point_extension(f, t, &oracle)?;
            let mut report = Report::new("compactness onepoint");
            report.push(Verdict::new(
                "extension-is-a-topology",
                true,
                format!("{} opens on {} points", star.opens().len(), star.ground_size()),
            ));
            if t.is_hausdorff() {
                report.push(Verdict::new(
                    "compact-iff-extension-closed",
                    is_fuzzy_compact(f, &oracle) == is_fuzzy_closed(&extended, &star),
                    String::new(),
                ));
            } else {
                report.push(Verdict::new(
                    "compact-iff-extension-closed",
                    true,
                    "carrier is not Hausdorff; the equivalence is not claimed",
                ));
            }
            Ok(report.with_payload(json!({ "extension": star, "extended_set": extended })))
        }
    }
}
