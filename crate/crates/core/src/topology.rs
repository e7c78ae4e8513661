//! Crisp finite topologies stored extensionally, maps between carriers,
//! products, coproducts, subspaces, quotients, and the separation
//! predicates the rest of the engine needs.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fuzzy_set::FuzzySet;
use crate::subset::{all_subsets, check_ground_size, Subset, MAX_GROUND_SIZE};

/// A topology on `{0, …, n-1}`: a canonical family of open bitmasks that
/// contains `∅` and the full set and is closed under pairwise union and
/// intersection (which on a finite carrier yields arbitrary unions).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub struct Topology {
    ground_size: usize,
    opens: BTreeSet<Subset>,
}

impl Topology {
    /// Validating constructor; rejects families that break the axioms.
    pub fn new(ground_size: usize, opens: BTreeSet<Subset>) -> Result<Self> {
        check_ground_size(ground_size)?;
        let t = Topology { ground_size, opens };
        match t.axiom_violation() {
            None => Ok(t),
            Some(reason) => Err(Error::NotATopology(reason)),
        }
    }

    fn from_opens_unchecked(ground_size: usize, opens: BTreeSet<Subset>) -> Self {
        let t = Topology { ground_size, opens };
        debug_assert!(t.axiom_violation().is_none());
        t
    }

    pub fn indiscrete(n: usize) -> Self {
        Topology::from_opens_unchecked(n, [Subset::EMPTY, Subset::full(n)].into())
    }

    pub fn discrete(n: usize) -> Self {
        Topology::from_opens_unchecked(n, all_subsets(n).collect())
    }

    /// Two points with `{1}` open.
    pub fn sierpinski() -> Self {
        Topology::from_opens_unchecked(
            2,
            [Subset::EMPTY, Subset::singleton(1), Subset::full(2)].into(),
        )
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn opens(&self) -> &BTreeSet<Subset> {
        &self.opens
    }

    pub fn is_open(&self, u: Subset) -> bool {
        self.opens.contains(&u)
    }

    pub fn is_closed(&self, c: Subset) -> bool {
        self.is_open(c.complement(self.ground_size))
    }

    pub fn closed_sets(&self) -> Vec<Subset> {
        self.opens
            .iter()
            .map(|u| u.complement(self.ground_size))
            .collect()
    }

    pub fn clopen_sets(&self) -> Vec<Subset> {
        self.opens
            .iter()
            .copied()
            .filter(|&u| self.is_closed(u))
            .collect()
    }

    fn axiom_violation(&self) -> Option<String> {
        let full = Subset::full(self.ground_size);
        if !self.opens.contains(&Subset::EMPTY) {
            return Some("missing the empty set".into());
        }
        if !self.opens.contains(&full) {
            return Some("missing the full carrier".into());
        }
        for &a in &self.opens {
            if !a.is_subset_of(full) {
                return Some(format!("open {a:?} exceeds the carrier"));
            }
            for &b in &self.opens {
                if !self.opens.contains(&a.union(b)) {
                    return Some(format!("not closed under union: {a:?} ∪ {b:?}"));
                }
                if !self.opens.contains(&a.intersection(b)) {
                    return Some(format!("not closed under intersection: {a:?} ∩ {b:?}"));
                }
            }
        }
        None
    }

    pub fn is_discrete(&self) -> bool {
        self.opens.len() == 1 << self.ground_size
    }

    /// Every pair of distinct points is separated by disjoint opens.
    pub fn is_hausdorff(&self) -> bool {
        let n = self.ground_size;
        (0..n).all(|x| {
            (x + 1..n).all(|y| {
                self.opens.iter().any(|&u| {
                    u.contains(x)
                        && self
                            .opens
                            .iter()
                            .any(|&v| v.contains(y) && u.intersection(v).is_empty())
                })
            })
        })
    }

    /// No proper nonempty clopen subset.
    pub fn is_connected(&self) -> bool {
        let full = Subset::full(self.ground_size);
        self.clopen_sets()
            .into_iter()
            .all(|w| w.is_empty() || w == full)
    }

    /// Complete regularity via the clopen-separation form valid on finite
    /// carriers: every point of every open set sits inside a clopen subset
    /// of it.
    pub fn is_completely_regular(&self) -> bool {
        let clopens = self.clopen_sets();
        self.opens.iter().all(|&u| {
            u.iter()
                .all(|x| clopens.iter().any(|&w| w.contains(x) && w.is_subset_of(u)))
        })
    }

    /// The smallest closed superset of `a`.
    pub fn closure(&self, a: Subset) -> Subset {
        self.closed_sets()
            .into_iter()
            .filter(|c| a.is_subset_of(*c))
            .fold(Subset::full(self.ground_size), Subset::intersection)
    }
}

/// True iff the family satisfies the topology axioms on an `n`-point carrier.
pub fn is_topology(family: &BTreeSet<Subset>, n: usize) -> bool {
    Topology::new(n, family.clone()).is_ok()
}

/// Smallest topology containing the subbase: close under finite
/// intersections, then under unions. `∅` and the carrier are always present.
pub fn generate_topology(subbase: &[Subset], n: usize) -> Topology {
    let full = Subset::full(n);
    debug_assert!(subbase.iter().all(|s| s.is_subset_of(full)));

    // finite intersections; the full set is the empty intersection
    let mut family: BTreeSet<Subset> = subbase.iter().copied().collect();
    family.insert(full);
    saturate(&mut family, Subset::intersection);

    // arbitrary unions reduce to pairwise ones on a finite carrier
    family.insert(Subset::EMPTY);
    saturate(&mut family, Subset::union);

    Topology::from_opens_unchecked(n, family)
}

fn saturate(family: &mut BTreeSet<Subset>, op: impl Fn(Subset, Subset) -> Subset) {
    loop {
        let mut fresh = Vec::new();
        for &a in family.iter() {
            for &b in family.iter() {
                let c = op(a, b);
                if !family.contains(&c) {
                    fresh.push(c);
                }
            }
        }
        if fresh.is_empty() {
            return;
        }
        family.extend(fresh);
    }
}

/// `{U ∩ Y : U ∈ τ}` re-indexed onto `Y`'s points in ascending order.
pub fn relative_topology(t: &Topology, y: Subset) -> Result<Topology> {
    if y.is_empty() {
        return Err(Error::EmptySubspace);
    }
    let opens = t
        .opens()
        .iter()
        .map(|&u| u.intersection(y).compress(y))
        .collect();
    Ok(Topology::from_opens_unchecked(y.card() as usize, opens))
}

/// Product points in row-major order: `(x1, x2) ↦ x1·n2 + x2`.
pub fn product_point(x1: usize, x2: usize, n2: usize) -> usize {
    x1 * n2 + x2
}

/// `{(x1, x2) : x1 ∈ a, x2 ∈ b}` under the row-major embedding.
pub fn product_embed(a: Subset, b: Subset, n2: usize) -> Subset {
    let mut out = Subset::EMPTY;
    for x1 in a.iter() {
        for x2 in b.iter() {
            out = out.with(product_point(x1, x2, n2));
        }
    }
    out
}

/// Projection `π_1` or `π_2` of the row-major product carrier.
pub fn projection(which: usize, n1: usize, n2: usize) -> GroundMap {
    let image = (0..n1 * n2)
        .map(|p| if which == 1 { p / n2 } else { p % n2 })
        .collect();
    GroundMap::new(if which == 1 { n1 } else { n2 }, image).expect("valid projection")
}

/// Product topology, generated by preimages of opens under both projections.
pub fn product_topology(t1: &Topology, t2: &Topology) -> Result<Topology> {
    let (n1, n2) = (t1.ground_size(), t2.ground_size());
    let n = n1 * n2;
    if n > MAX_GROUND_SIZE {
        return Err(Error::CapExceeded(n, MAX_GROUND_SIZE));
    }
    check_ground_size(n)?;
    let mut subbase = Vec::new();
    for &u in t1.opens() {
        subbase.push(product_embed(u, Subset::full(n2), n2));
    }
    for &v in t2.opens() {
        subbase.push(product_embed(Subset::full(n1), v, n2));
    }
    Ok(generate_topology(&subbase, n))
}

/// Coproduct on the disjoint union with `X_1` indexed first: the opens are
/// exactly the sets restricting to an open on each summand.
pub fn coproduct_topology(t1: &Topology, t2: &Topology) -> Result<Topology> {
    let (n1, n2) = (t1.ground_size(), t2.ground_size());
    let n = n1 + n2;
    if n > MAX_GROUND_SIZE {
        return Err(Error::CapExceeded(n, MAX_GROUND_SIZE));
    }
    let mut opens = BTreeSet::new();
    for &u in t1.opens() {
        for &v in t2.opens() {
            opens.insert(u.union(Subset::from_bits(v.bits() << n1)));
        }
    }
    Ok(Topology::from_opens_unchecked(n, opens))
}

/// First and second summand of the coproduct carrier.
pub fn coproduct_summands(n1: usize, n2: usize) -> (Subset, Subset) {
    let first = Subset::full(n1);
    (first, Subset::full(n1 + n2).minus(first))
}

/// A total map between finite carriers.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct GroundMap {
    target_size: usize,
    image: Vec<usize>,
}

impl GroundMap {
    pub fn new(target_size: usize, image: Vec<usize>) -> Result<Self> {
        check_ground_size(target_size)?;
        check_ground_size(image.len())?;
        if let Some(&bad) = image.iter().find(|&&y| y >= target_size) {
            return Err(Error::NotATopology(format!(
                "map image index {bad} exceeds target size {target_size}"
            )));
        }
        Ok(GroundMap { target_size, image })
    }

    pub fn identity(n: usize) -> Self {
        GroundMap::new(n, (0..n).collect()).expect("valid identity")
    }

    pub fn constant(source_size: usize, target_size: usize, y: usize) -> Self {
        GroundMap::new(target_size, vec![y; source_size]).expect("valid constant map")
    }

    pub fn source_size(&self) -> usize {
        self.image.len()
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn image_points(&self) -> &[usize] {
        &self.image
    }

    pub fn is_surjective(&self) -> bool {
        (0..self.target_size).all(|y| self.image.contains(&y))
    }

    pub fn preimage(&self, u: Subset) -> Subset {
        let mut out = Subset::EMPTY;
        for (x, &y) in self.image.iter().enumerate() {
            if u.contains(y) {
                out = out.with(x);
            }
        }
        out
    }

    /// `H*(f) = f ∘ H`; `f` must live on the target carrier.
    pub fn pullback(&self, f: &FuzzySet) -> Result<FuzzySet> {
        if f.len() != self.target_size {
            return Err(Error::SizeMismatch {
                expected: self.target_size,
                actual: f.len(),
            });
        }
        Ok(FuzzySet::new(
            self.image.iter().map(|&y| f.value(y)).collect(),
        ))
    }

    /// All `target^source` maps, in lexicographic image order.
    pub fn enumerate_all(source_size: usize, target_size: usize) -> Vec<GroundMap> {
        let mut out = Vec::new();
        let mut image = vec![0usize; source_size];
        loop {
            out.push(GroundMap::new(target_size, image.clone()).expect("valid map"));
            let mut pos = source_size;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                image[pos] += 1;
                if image[pos] < target_size {
                    break;
                }
                image[pos] = 0;
            }
        }
    }
}

/// `H` is continuous when every open of the target pulls back open.
pub fn is_continuous(h: &GroundMap, t1: &Topology, t2: &Topology) -> bool {
    assert_eq!(h.source_size(), t1.ground_size());
    assert_eq!(h.target_size(), t2.ground_size());
    t2.opens().iter().all(|&u| t1.is_open(h.preimage(u)))
}

/// Quotient map: `U` open in the target iff its preimage is open, for every
/// subset `U` of the target.
pub fn is_quotient_map(h: &GroundMap, t1: &Topology, t2: &Topology) -> bool {
    assert_eq!(h.source_size(), t1.ground_size());
    assert_eq!(h.target_size(), t2.ground_size());
    all_subsets(t2.ground_size()).all(|u| t2.is_open(u) == t1.is_open(h.preimage(u)))
}

/// The finest topology on the target making `h` continuous.
pub fn quotient_topology(h: &GroundMap, t1: &Topology) -> Topology {
    assert_eq!(h.source_size(), t1.ground_size());
    let opens = all_subsets(h.target_size())
        .filter(|&u| t1.is_open(h.preimage(u)))
        .collect();
    Topology::from_opens_unchecked(h.target_size(), opens)
}

/// The chain `0 < 1/q < … < 1` with the lower topology: the opens are `∅`,
/// the carrier, and the strict up-sets. Point `j` stands for the value `j/q`.
pub fn lower_topology_grid(q: u32) -> Result<Topology> {
    let n = q as usize + 1;
    check_ground_size(n)?;
    let mut opens: BTreeSet<Subset> = [Subset::EMPTY].into();
    for j in 0..n {
        opens.insert(Subset::from_points(&(j..n).collect::<Vec<_>>()));
    }
    Ok(Topology::from_opens_unchecked(n, opens))
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    /// Independent closure oracle: saturate under union and intersection
    /// simultaneously, seeded with the subbase plus `∅` and the carrier.
    fn closure_oracle(subbase: &[Subset], n: usize) -> BTreeSet<Subset> {
        let mut family: BTreeSet<Subset> = subbase.iter().copied().collect();
        family.insert(Subset::EMPTY);
        family.insert(Subset::full(n));
        loop {
            let mut fresh = Vec::new();
            for &a in &family {
                for &b in &family {
                    for c in [a.union(b), a.intersection(b)] {
                        if !family.contains(&c) {
                            fresh.push(c);
                        }
                    }
                }
            }
            if fresh.is_empty() {
                return family;
            }
            family.extend(fresh);
        }
    }

    fn opens(t: &Topology) -> Vec<Subset> {
        t.opens().iter().copied().collect()
    }

    #[test]
    fn generate_topology_examples() {
        let empty_subbase = generate_topology(&[], 3);
        assert_eq!(empty_subbase, Topology::indiscrete(3));

        let t = generate_topology(&[Subset::singleton(0), Subset::from_points(&[0, 1])], 3);
        assert_eq!(t.opens(), &closure_oracle(&opens(&t), 3));
        assert_eq!(
            opens(&t),
            vec![
                Subset::EMPTY,
                Subset::singleton(0),
                Subset::from_points(&[0, 1]),
                Subset::full(3)
            ],
        );

        let subbase = [Subset::from_points(&[0, 1]), Subset::from_points(&[1, 2])];
        let t = generate_topology(&subbase, 3);
        assert_eq!(t.opens(), &closure_oracle(&subbase, 3));
        assert_eq!(
            opens(&t),
            vec![
                Subset::EMPTY,
                Subset::singleton(1),
                Subset::from_points(&[0, 1]),
                Subset::from_points(&[1, 2]),
                Subset::full(3)
            ],
        );
    }

    #[test]
    fn is_topology_examples() {
        assert!(is_topology(
            &[Subset::EMPTY, Subset::full(2)].into(),
            2
        ));
        assert!(is_topology(&all_subsets(3).collect(), 3));
        assert!(is_topology(
            &[
                Subset::EMPTY,
                Subset::singleton(0),
                Subset::singleton(1),
                Subset::full(2)
            ]
            .into(),
            2
        ));
        // missing the full carrier
        assert!(!is_topology(
            &[Subset::EMPTY, Subset::singleton(0), Subset::singleton(1)].into(),
            2
        ));
        // missing the union {0,1}
        assert!(!is_topology(
            &[
                Subset::EMPTY,
                Subset::singleton(0),
                Subset::singleton(1),
                Subset::full(3)
            ]
            .into(),
            3
        ));
    }

    #[test]
    fn relative_topology_examples() {
        let t = generate_topology(&[Subset::singleton(0), Subset::from_points(&[0, 1])], 3);
        let whole = relative_topology(&t, Subset::full(3)).unwrap();
        assert_eq!(whole, t);

        let s = Topology::sierpinski();
        let sub = relative_topology(&s, Subset::singleton(0)).unwrap();
        assert_eq!(sub, Topology::indiscrete(1));

        let d = Topology::discrete(3);
        let sub = relative_topology(&d, Subset::from_points(&[0, 2])).unwrap();
        assert_eq!(sub, Topology::discrete(2));

        assert!(relative_topology(&d, Subset::EMPTY).is_err());
    }

    #[test]
    fn product_topology_examples() {
        let d2 = Topology::discrete(2);
        assert_eq!(product_topology(&d2, &d2).unwrap(), Topology::discrete(4));

        let i2 = Topology::indiscrete(2);
        assert_eq!(product_topology(&i2, &i2).unwrap(), Topology::indiscrete(4));

        // Sierpiński × Sierpiński; frozen from the closure oracle.
        let s = Topology::sierpinski();
        let p = product_topology(&s, &s).unwrap();
        let subbase = [
            product_embed(Subset::singleton(1), Subset::full(2), 2),
            product_embed(Subset::full(2), Subset::singleton(1), 2),
        ];
        assert_eq!(p.opens(), &closure_oracle(&subbase, 4));
        assert_eq!(
            opens(&p),
            vec![
                Subset::EMPTY,
                Subset::singleton(3),
                Subset::from_points(&[1, 3]),
                Subset::from_points(&[2, 3]),
                Subset::from_points(&[1, 2, 3]),
                Subset::full(4)
            ],
        );
    }

    #[test]
    fn coproduct_topology_examples() {
        let d2 = Topology::discrete(2);
        assert_eq!(coproduct_topology(&d2, &d2).unwrap(), Topology::discrete(4));

        let i2 = Topology::indiscrete(2);
        let c = coproduct_topology(&i2, &i2).unwrap();
        assert_eq!(
            opens(&c),
            vec![
                Subset::EMPTY,
                Subset::from_points(&[0, 1]),
                Subset::from_points(&[2, 3]),
                Subset::full(4)
            ],
        );
        // coproduct opens restrict to opens on each summand
        let (x1, x2) = coproduct_summands(2, 2);
        for &w in c.opens() {
            assert!(i2.is_open(w.intersection(x1).compress(x1)));
            assert!(i2.is_open(w.intersection(x2).compress(x2)));
        }
    }

    #[test]
    fn continuity_and_quotient_examples() {
        let s = Topology::sierpinski();
        let id = GroundMap::identity(2);
        assert!(is_continuous(&id, &s, &s));
        assert!(is_quotient_map(&id, &s, &s));

        let into_indiscrete = GroundMap::constant(2, 2, 0);
        assert!(is_continuous(&into_indiscrete, &s, &Topology::indiscrete(2)));

        // surjection from the discrete 2-point space onto Sierpiński
        let d2 = Topology::discrete(2);
        let h = GroundMap::identity(2);
        assert!(is_continuous(&h, &d2, &s));
        // {0} has open preimage but is not open in Sierpiński
        assert!(!is_quotient_map(&h, &d2, &s));
        assert!(is_quotient_map(&h, &d2, &d2));
        assert_eq!(quotient_topology(&h, &d2), d2);
    }

    /// Definitional oracle for complete regularity: a grid-valued separating
    /// function continuous into the usual topology on `[0,1]` (both strict
    /// upper and strict lower level sets open).
    fn completely_regular_oracle(t: &Topology) -> bool {
        let n = t.ground_size();
        let grid = crate::fuzzy_set::GridContext::new(2, n).unwrap();
        let functions = grid.all_functions().unwrap();
        let usual_continuous = |f: &FuzzySet| {
            grid.values().iter().all(|&c| {
                t.is_open(f.level_above(c)) && t.is_open(f.level_at_least(c).complement(n))
            })
        };
        t.opens().iter().all(|&u| {
            let c = u.complement(n);
            u.iter().all(|x| {
                functions.iter().any(|f| {
                    f.value(x).is_one()
                        && c.iter().all(|y| f.value(y).is_zero())
                        && usual_continuous(f)
                })
            })
        })
    }

    #[test]
    fn completely_regular_examples() {
        assert!(Topology::discrete(3).is_completely_regular());
        assert!(Topology::indiscrete(3).is_completely_regular());
        assert!(!Topology::sierpinski().is_completely_regular());

        // cross-check against the definitional separating-function oracle
        for subbase in [
            vec![],
            vec![Subset::singleton(1)],
            vec![Subset::singleton(0), Subset::from_points(&[0, 1])],
            vec![Subset::from_points(&[0, 1]), Subset::from_points(&[1, 2])],
            vec![Subset::singleton(0), Subset::singleton(1), Subset::singleton(2)],
        ] {
            let t = generate_topology(&subbase, 3);
            assert_eq!(
                t.is_completely_regular(),
                completely_regular_oracle(&t),
                "disagreement on {:?}",
                t
            );
        }
    }

    #[test]
    fn lower_topology_examples() {
        let t1 = lower_topology_grid(1).unwrap();
        assert_eq!(t1, Topology::sierpinski());

        let t2 = lower_topology_grid(2).unwrap();
        assert_eq!(
            opens(&t2),
            vec![
                Subset::EMPTY,
                Subset::singleton(2),
                Subset::from_points(&[1, 2]),
                Subset::full(3)
            ],
        );
        for q in 1..6 {
            let t = lower_topology_grid(q).unwrap();
            assert!(t.is_open(Subset::full(q as usize + 1)));
        }
    }

    #[test]
    fn hausdorff_iff_discrete_exhaustively() {
        for n in 1..=3usize {
            let subsets: Vec<Subset> = all_subsets(n).collect();
            let proper: Vec<Subset> = subsets
                .iter()
                .copied()
                .filter(|s| !s.is_empty() && *s != Subset::full(n))
                .collect();
            let mut count = 0usize;
            for mask in 0u32..1 << proper.len() {
                let mut family: BTreeSet<Subset> = [Subset::EMPTY, Subset::full(n)].into();
                for (i, &s) in proper.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        family.insert(s);
                    }
                }
                if let Ok(t) = Topology::new(n, family) {
                    count += 1;
                    assert_eq!(t.is_hausdorff(), t.is_discrete(), "failed on {t:?}");
                }
            }
            assert_eq!(count, [1, 4, 29][n - 1]);
        }
    }

    #[test]
    fn ground_map_basics() {
        assert!(GroundMap::new(2, vec![0, 2]).is_err());
        let h = GroundMap::new(2, vec![1, 1, 0]).unwrap();
        assert_eq!(h.preimage(Subset::singleton(1)), Subset::from_points(&[0, 1]));
        assert!(h.is_surjective());
        assert_eq!(GroundMap::enumerate_all(2, 3).len(), 9);
        assert_eq!(GroundMap::enumerate_all(3, 2).len(), 8);
    }

    fn arb_subbase(n: usize, max_len: usize) -> impl Strategy<Value = Vec<Subset>> {
        prop::collection::vec((0u32..1 << n).prop_map(Subset::from_bits), 0..=max_len)
    }

    proptest! {
        #[test]
        fn generation_is_a_closure_operator(a in arb_subbase(4, 4), b in arb_subbase(4, 2)) {
            let t = generate_topology(&a, 4);
            // extensive
            for s in &a {
                prop_assert!(t.is_open(*s));
            }
            // idempotent
            let again = generate_topology(&opens(&t), 4);
            prop_assert_eq!(&again, &t);
            // monotone
            let mut larger = a.clone();
            larger.extend(b.iter().copied());
            let bigger = generate_topology(&larger, 4);
            prop_assert!(t.opens().iter().all(|u| bigger.is_open(*u)));
        }

        #[test]
        fn pullback_levels_match_preimages(
            image in prop::collection::vec(0usize..3, 1..=4),
            f_values in prop::collection::vec(0u32..=4, 3),
            j in 0u32..=4,
        ) {
            let h = GroundMap::new(3, image).unwrap();
            let f = FuzzySet::new(f_values.iter().map(|&v| crate::value::Value::grid(v, 4)).collect());
            let c = crate::value::Value::grid(j, 4);
            let pulled = h.pullback(&f).unwrap();
            prop_assert_eq!(pulled.level_above(c), h.preimage(f.level_above(c)));
        }
    }
}
