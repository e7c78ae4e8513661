//! Fuzzy continuity and quotients, plus subspace, product, and coproduct
//! constructions and their commutation with the level-topology maps.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fuzzy::{
    generate_fuzzy_topology, ExtensionalFuzzyTopology, FuzzyTopology, GenerationMode,
    InducedFuzzyTopology,
};
use crate::fuzzy_set::FuzzySet;
use crate::subset::{Subset, MAX_GROUND_SIZE};
use crate::topology::{lower_topology_grid, projection, GroundMap, Topology};
use crate::value::Value;

/// Why a fuzzy map check failed.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum JudgmentWitness {
    /// A member of the target family whose pullback leaves the source family.
    PullbackEscapes { function: FuzzySet },
    /// A target-carrier function whose membership disagrees with its
    /// pullback's membership.
    MembershipMismatch { function: FuzzySet },
}

/// Verdicts for one map between fuzzy topological spaces.
#[derive(Clone, Debug, Serialize)]
pub struct FuzzyMapJudgment {
    pub continuous: bool,
    pub quotient: bool,
    pub witness: Option<JudgmentWitness>,
}

/// Evaluate fuzzy continuity (`H*(δ_2) ⊆ δ_1`) and the fuzzy quotient
/// biconditional, the latter quantified over every grid function on the
/// target carrier — the faithful finite rendering of the unrestricted
/// quantifier.
pub fn fuzzy_map_judgment(
    h: &GroundMap,
    d1: &FuzzyTopology,
    d2: &FuzzyTopology,
) -> Result<FuzzyMapJudgment> {
    if h.source_size() != d1.ground_size() {
        return Err(Error::SizeMismatch {
            expected: d1.ground_size(),
            actual: h.source_size(),
        });
    }
    if h.target_size() != d2.ground_size() {
        return Err(Error::SizeMismatch {
            expected: d2.ground_size(),
            actual: h.target_size(),
        });
    }
    if d1.grid().q() != d2.grid().q() {
        return Err(Error::GridMismatch {
            expected: d1.grid().q(),
            actual: d2.grid().q(),
        });
    }

    let mut witness = None;
    let mut continuous = true;
    for f in d2.grid_members()? {
        let pulled = h.pullback(&f)?;
        if !d1.contains(&pulled) {
            continuous = false;
            witness = Some(JudgmentWitness::PullbackEscapes { function: f });
            break;
        }
    }

    let mut quotient = true;
    for f in d2.grid().all_functions()? {
        let pulled = h.pullback(&f)?;
        if d2.contains(&f) != d1.contains(&pulled) {
            quotient = false;
            if witness.is_none() {
                witness = Some(JudgmentWitness::MembershipMismatch { function: f });
            }
            break;
        }
    }
    debug_assert!(!quotient || continuous);

    Ok(FuzzyMapJudgment {
        continuous,
        quotient,
        witness,
    })
}

pub fn is_fuzzy_continuous(
    h: &GroundMap,
    d1: &FuzzyTopology,
    d2: &FuzzyTopology,
) -> Result<FuzzyMapJudgment> {
    fuzzy_map_judgment(h, d1, d2)
}

pub fn is_fuzzy_quotient(
    h: &GroundMap,
    d1: &FuzzyTopology,
    d2: &FuzzyTopology,
) -> Result<FuzzyMapJudgment> {
    fuzzy_map_judgment(h, d1, d2)
}

/// `δ|Y = {f|Y : f ∈ δ}` on a nonempty subspace, canonicalized.
pub fn relative_fuzzy_topology(
    d: &ExtensionalFuzzyTopology,
    y: Subset,
) -> Result<ExtensionalFuzzyTopology> {
    if y.is_empty() {
        return Err(Error::EmptySubspace);
    }
    let grid = d.grid().with_ground_size(y.card() as usize)?;
    let members: BTreeSet<FuzzySet> = d.members().iter().map(|f| f.restrict(y)).collect();
    Ok(ExtensionalFuzzyTopology::new(grid, members)?)
}

/// Product fuzzy topology: generated (Chang mode) by the pullbacks of both
/// factors' members along the projections of the row-major product carrier.
pub fn product_fuzzy_topology(
    d1: &ExtensionalFuzzyTopology,
    d2: &ExtensionalFuzzyTopology,
) -> Result<ExtensionalFuzzyTopology> {
    if d1.grid().q() != d2.grid().q() {
        return Err(Error::GridMismatch {
            expected: d1.grid().q(),
            actual: d2.grid().q(),
        });
    }
    let (n1, n2) = (d1.ground_size(), d2.ground_size());
    let n = n1 * n2;
    if n > MAX_GROUND_SIZE {
        return Err(Error::CapExceeded(n, MAX_GROUND_SIZE));
    }
    let grid = d1.grid().with_ground_size(n)?;
    let pi1 = projection(1, n1, n2);
    let pi2 = projection(2, n1, n2);
    let mut generators = Vec::with_capacity(d1.len() + d2.len());
    for f in d1.members() {
        generators.push(pi1.pullback(f)?);
    }
    for f in d2.members() {
        generators.push(pi2.pullback(f)?);
    }
    generate_fuzzy_topology(&generators, GenerationMode::Chang, grid)
}

/// Coproduct fuzzy topology on the disjoint union: exactly the functions
/// restricting to a member on each summand, i.e. all concatenations.
pub fn coproduct_fuzzy_topology(
    d1: &ExtensionalFuzzyTopology,
    d2: &ExtensionalFuzzyTopology,
) -> Result<ExtensionalFuzzyTopology> {
    if d1.grid().q() != d2.grid().q() {
        return Err(Error::GridMismatch {
            expected: d1.grid().q(),
            actual: d2.grid().q(),
        });
    }
    let n = d1.ground_size() + d2.ground_size();
    if n > MAX_GROUND_SIZE {
        return Err(Error::CapExceeded(n, MAX_GROUND_SIZE));
    }
    let grid = d1.grid().with_ground_size(n)?;
    let mut members = BTreeSet::new();
    for f1 in d1.members() {
        for f2 in d2.members() {
            let mut values = f1.values().to_vec();
            values.extend_from_slice(f2.values());
            members.insert(FuzzySet::new(values));
        }
    }
    Ok(ExtensionalFuzzyTopology::new(grid, members)?)
}

/// The grid model of the lower-topology unit interval: the chain carrier
/// with its lower topology and the induced fuzzy topology on it. The
/// members are exactly the non-decreasing grid functions on the chain.
pub fn lower_interval_fuzzy_space(q: u32) -> Result<(Topology, InducedFuzzyTopology)> {
    let t = lower_topology_grid(q)?;
    let d = InducedFuzzyTopology::new(t.clone(), q)?;
    Ok((t, d))
}

/// View a grid-valued fuzzy set as a map into the chain carrier of
/// [`lower_interval_fuzzy_space`]: the point for value `j/q` is `j`.
pub fn as_chain_map(f: &FuzzySet, q: u32) -> Result<GroundMap> {
    let mut image = Vec::with_capacity(f.len());
    for &v in f.values() {
        if !v.on_grid(q) {
            return Err(Error::OffGrid(v.to_string()));
        }
        image.push((v.rat() * crate::value::Rat::from_integer(i64::from(q)))
            .to_integer() as usize);
    }
    GroundMap::new(q as usize + 1, image)
}

/// Identity of the chain carrier as a grid function: point `j ↦ j/q`.
pub fn chain_identity(q: u32) -> FuzzySet {
    FuzzySet::new((0..=q).map(|j| Value::grid(j, q)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::{chi, classify, iota, omega_grid};
    use crate::fuzzy_set::GridContext;
    use crate::topology::{
        coproduct_topology, generate_topology, is_continuous, is_quotient_map, product_topology,
    };
    use crate::value::Rat;

    fn v(num: i64, den: i64) -> Value {
        Value::new(num, den).unwrap()
    }

    fn fs(entries: &[(i64, i64)]) -> FuzzySet {
        FuzzySet::new(entries.iter().map(|&(n, d)| v(n, d)).collect())
    }

    fn ext(d: ExtensionalFuzzyTopology) -> FuzzyTopology {
        FuzzyTopology::Extensional(d)
    }

    #[test]
    fn pullback_examples() {
        let f = fs(&[(1, 4), (3, 4)]);
        let id = GroundMap::identity(2);
        assert_eq!(id.pullback(&f).unwrap(), f);

        let constant = GroundMap::constant(3, 2, 1);
        assert_eq!(
            constant.pullback(&f).unwrap(),
            FuzzySet::constant(3, v(3, 4))
        );

        let swap = GroundMap::new(2, vec![1, 0]).unwrap();
        assert_eq!(swap.pullback(&f).unwrap(), fs(&[(3, 4), (1, 4)]));

        assert!(swap.pullback(&fs(&[(0, 1), (0, 1), (0, 1)])).is_err());
    }

    #[test]
    fn identity_is_continuous_and_quotient() {
        let d = omega_grid(&Topology::sierpinski(), 2).unwrap();
        let j = fuzzy_map_judgment(
            &GroundMap::identity(2),
            &ext(d.clone()),
            &ext(d),
        )
        .unwrap();
        assert!(j.continuous && j.quotient);
        assert!(j.witness.is_none());
    }

    #[test]
    fn constants_only_target_is_always_continuous() {
        let grid = GridContext::new(2, 2).unwrap();
        let minimal = generate_fuzzy_topology(&[], GenerationMode::Chang, grid).unwrap();
        let source = ext(chi(&Topology::sierpinski(), 2).unwrap());
        for h in GroundMap::enumerate_all(2, 2) {
            let j = fuzzy_map_judgment(&h, &source, &ext(minimal.clone())).unwrap();
            assert!(j.continuous);
        }
    }

    #[test]
    fn lamination_blocks_maps_from_non_laminated_sources() {
        // laminated target, non-laminated source: every map fails, with a
        // constant witness
        let source = ext(chi(&Topology::sierpinski(), 2).unwrap());
        let target = ext(omega_grid(&Topology::indiscrete(2), 2).unwrap());
        for h in GroundMap::enumerate_all(2, 2) {
            let j = fuzzy_map_judgment(&h, &source, &target).unwrap();
            assert!(!j.continuous);
            match j.witness {
                Some(JudgmentWitness::PullbackEscapes { function }) => {
                    assert_eq!(function, FuzzySet::constant(2, v(1, 2)));
                }
                other => panic!("expected a pullback witness, got {other:?}"),
            }
        }
    }

    #[test]
    fn continuity_transfers_between_crisp_and_fuzzy() {
        let t1 = Topology::discrete(2);
        let t2 = Topology::sierpinski();
        let d1 = ext(omega_grid(&t1, 2).unwrap());
        let d2 = ext(omega_grid(&t2, 2).unwrap());
        for h in GroundMap::enumerate_all(2, 2) {
            let j = fuzzy_map_judgment(&h, &d1, &d2).unwrap();
            assert_eq!(j.continuous, is_continuous(&h, &t1, &t2));
            assert_eq!(j.quotient, is_quotient_map(&h, &t1, &t2));
        }
    }

    #[test]
    fn fuzzy_continuity_implies_level_continuity() {
        let grid = GridContext::new(2, 2).unwrap();
        let functions = grid.all_functions().unwrap();
        for i in [0usize, 3, 7] {
            let d1 = generate_fuzzy_topology(
                &[functions[i].clone()],
                GenerationMode::Chang,
                grid,
            )
            .unwrap();
            for j in [1usize, 4, 8] {
                let d2 = generate_fuzzy_topology(
                    &[functions[j].clone()],
                    GenerationMode::Chang,
                    grid,
                )
                .unwrap();
                for h in GroundMap::enumerate_all(2, 2) {
                    let judgment =
                        fuzzy_map_judgment(&h, &ext(d1.clone()), &ext(d2.clone())).unwrap();
                    if judgment.continuous {
                        assert!(is_continuous(&h, &iota(&d1), &iota(&d2)));
                    }
                }
            }
        }
    }

    #[test]
    fn relative_fuzzy_topology_examples() {
        let t = generate_topology(&[Subset::singleton(2), Subset::from_points(&[1, 2])], 3);
        let d = omega_grid(&t, 2).unwrap();

        let whole = relative_fuzzy_topology(&d, Subset::full(3)).unwrap();
        assert_eq!(whole, d);

        // ω(τ)|Y = ω(τ|Y)
        let y = Subset::from_points(&[0, 2]);
        let restricted = relative_fuzzy_topology(&d, y).unwrap();
        let sub = crate::topology::relative_topology(&t, y).unwrap();
        assert_eq!(restricted, omega_grid(&sub, 2).unwrap());

        // ι(δ|Y) = ι(δ)|Y
        assert_eq!(iota(&restricted), sub);

        // lamination survives restriction
        assert!(classify(&restricted).unwrap().is_laminated);

        assert!(relative_fuzzy_topology(&d, Subset::EMPTY).is_err());
    }

    #[test]
    fn product_of_minimal_families_is_minimal() {
        let grid = GridContext::new(1, 2).unwrap();
        let minimal = generate_fuzzy_topology(&[], GenerationMode::Chang, grid).unwrap();
        let p = product_fuzzy_topology(&minimal, &minimal).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.ground_size(), 4);
    }

    #[test]
    fn product_iota_commutes() {
        let grid = GridContext::new(2, 2).unwrap();
        let functions = grid.all_functions().unwrap();
        for (i, j) in [(1usize, 5usize), (3, 7), (2, 8)] {
            let d1 =
                generate_fuzzy_topology(&[functions[i].clone()], GenerationMode::Chang, grid)
                    .unwrap();
            let d2 =
                generate_fuzzy_topology(&[functions[j].clone()], GenerationMode::Chang, grid)
                    .unwrap();
            let p = product_fuzzy_topology(&d1, &d2).unwrap();
            assert_eq!(
                iota(&p),
                product_topology(&iota(&d1), &iota(&d2)).unwrap()
            );
        }
    }

    #[test]
    fn product_of_induced_is_induced() {
        let t1 = Topology::sierpinski();
        let t2 = generate_topology(&[Subset::singleton(0)], 2);
        let d1 = omega_grid(&t1, 2).unwrap();
        let d2 = omega_grid(&t2, 2).unwrap();
        let p = product_fuzzy_topology(&d1, &d2).unwrap();
        assert_eq!(
            p,
            omega_grid(&product_topology(&t1, &t2).unwrap(), 2).unwrap()
        );
        // one laminated factor laminates the product
        assert!(classify(&p).unwrap().is_laminated);
    }

    #[test]
    fn coproduct_iota_commutes_and_preserves_inducedness() {
        let t1 = Topology::sierpinski();
        let t2 = Topology::indiscrete(2);
        let d1 = omega_grid(&t1, 2).unwrap();
        let d2 = omega_grid(&t2, 2).unwrap();
        let c = coproduct_fuzzy_topology(&d1, &d2).unwrap();
        assert_eq!(iota(&c), coproduct_topology(&t1, &t2).unwrap());
        assert_eq!(
            c,
            omega_grid(&coproduct_topology(&t1, &t2).unwrap(), 2).unwrap()
        );

        let report = classify(&c).unwrap();
        assert!(report.is_laminated && report.is_induced_on_grid);
    }

    #[test]
    fn lower_interval_members_are_non_decreasing() {
        let (_, d_r) = lower_interval_fuzzy_space(2).unwrap();

        assert!(d_r.contains(&chain_identity(2)));

        // an affine adjustment of the identity stays inside when grid-valued
        let adjusted = chain_identity(2)
            .affine_adjust(Rat::new(1, 1), Rat::new(1, 2))
            .unwrap();
        assert!(adjusted.on_grid(2));
        assert!(d_r.contains(&adjusted));

        let decreasing = fs(&[(1, 1), (1, 2), (0, 1)]);
        assert!(!d_r.contains(&decreasing));

        // exhaustively: membership iff non-decreasing along the chain
        let grid = GridContext::new(2, 3).unwrap();
        for f in grid.all_functions().unwrap() {
            let monotone = (0..2).all(|i| f.value(i) <= f.value(i + 1));
            assert_eq!(d_r.contains(&f), monotone);
        }
    }

    #[test]
    fn members_are_the_fuzzy_continuous_maps_into_the_chain() {
        let q = 2;
        let (_, d_r) = lower_interval_fuzzy_space(q).unwrap();
        let chain = FuzzyTopology::Induced(d_r);

        let t = Topology::sierpinski();
        let d = omega_grid(&t, q).unwrap();
        let grid = GridContext::new(q, 2).unwrap();
        for f in grid.all_functions().unwrap() {
            let map = as_chain_map(&f, q).unwrap();
            let judgment =
                fuzzy_map_judgment(&map, &ext(d.clone()), &chain).unwrap();
            assert_eq!(judgment.continuous, d.contains(&f));
        }
    }
}
