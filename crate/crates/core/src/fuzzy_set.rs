//! Fuzzy subsets of a finite carrier: vectors of exact membership degrees,
//! their pointwise lattice operations, level sets, and affine adjustment.

use std::fmt;

use num_rational::Ratio;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::subset::{check_ground_size, Subset};
use crate::value::{Rat, Value};

/// Working grid: the value chain `L_q = {0, 1/q, …, 1}` over an `n`-point carrier.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub struct GridContext {
    q: u32,
    ground_size: usize,
}

impl GridContext {
    pub fn new(q: u32, ground_size: usize) -> Result<Self> {
        if q == 0 {
            return Err(Error::ZeroGrid);
        }
        check_ground_size(ground_size)?;
        Ok(GridContext { q, ground_size })
    }

    pub fn q(self) -> u32 {
        self.q
    }

    pub fn ground_size(self) -> usize {
        self.ground_size
    }

    /// Same grid over a different carrier.
    pub fn with_ground_size(self, n: usize) -> Result<Self> {
        GridContext::new(self.q, n)
    }

    /// All grid values `0, 1/q, …, 1` in ascending order.
    pub fn values(self) -> Vec<Value> {
        (0..=self.q).map(|j| Value::grid(j, self.q)).collect()
    }

    /// The thresholds `L_q \ {1}`; for grid-valued functions these exhaust
    /// all distinct strict level sets.
    pub fn thresholds(self) -> Vec<Value> {
        (0..self.q).map(|j| Value::grid(j, self.q)).collect()
    }

    pub fn contains(self, v: Value) -> bool {
        v.on_grid(self.q)
    }

    /// Number of grid functions `(q+1)^n`, or an error when enumeration
    /// would be infeasible.
    pub fn function_count(self) -> Result<u64> {
        let base = u64::from(self.q) + 1;
        let mut count: u64 = 1;
        for _ in 0..self.ground_size {
            count = count
                .checked_mul(base)
                .filter(|&c| c <= ENUMERATION_CAP)
                .ok_or_else(|| {
                    Error::BoundExceeded(format!(
                        "({base})^{} grid functions exceed the enumeration cap",
                        self.ground_size
                    ))
                })?;
        }
        Ok(count)
    }

    /// Every grid-valued function on the carrier, in canonical order.
    pub fn all_functions(self) -> Result<Vec<FuzzySet>> {
        self.function_count()?;
        Ok(enumerate_functions(self.ground_size, &self.values()))
    }
}

const ENUMERATION_CAP: u64 = 1 << 21;

/// All functions from an `n`-point carrier into the given ascending value list.
pub fn enumerate_functions(n: usize, levels: &[Value]) -> Vec<FuzzySet> {
    let mut out = Vec::new();
    let mut stack = vec![Vec::with_capacity(n)];
    while let Some(prefix) = stack.pop() {
        if prefix.len() == n {
            out.push(FuzzySet::new(prefix));
            continue;
        }
        // push in reverse so the lexicographically smallest completes first
        for &v in levels.iter().rev() {
            let mut next = prefix.clone();
            next.push(v);
            stack.push(next);
        }
    }
    out
}

/// A fuzzy subset: one membership degree per carrier point.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FuzzySet {
    values: Vec<Value>,
}

impl FuzzySet {
    pub fn new(values: Vec<Value>) -> Self {
        assert!(
            !values.is_empty() && values.len() <= crate::subset::MAX_GROUND_SIZE,
            "carrier size out of range"
        );
        FuzzySet { values }
    }

    pub fn constant(n: usize, v: Value) -> Self {
        FuzzySet::new(vec![v; n])
    }

    /// `χ_U`: 1 on `u`, 0 elsewhere.
    pub fn characteristic(n: usize, u: Subset) -> Self {
        FuzzySet::new(
            (0..n)
                .map(|i| if u.contains(i) { Value::ONE } else { Value::ZERO })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn value(&self, i: usize) -> Value {
        self.values[i]
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    /// Strict level set `{x : f(x) > c}`.
    pub fn level_above(&self, c: Value) -> Subset {
        let mut s = Subset::EMPTY;
        for (i, &v) in self.values.iter().enumerate() {
            if v > c {
                s = s.with(i);
            }
        }
        s
    }

    /// Weak level set `{x : f(x) ≥ c}`.
    pub fn level_at_least(&self, c: Value) -> Subset {
        let mut s = Subset::EMPTY;
        for (i, &v) in self.values.iter().enumerate() {
            if v >= c {
                s = s.with(i);
            }
        }
        s
    }

    /// `1 - f` pointwise.
    pub fn complement(&self) -> FuzzySet {
        FuzzySet::new(self.values.iter().map(|v| v.complement()).collect())
    }

    /// Apply `t ↦ max(0, min(1, m·t + k))` pointwise. Requires `m > 0`.
    pub fn affine_adjust(&self, m: Rat, k: Rat) -> Result<FuzzySet> {
        if m <= Ratio::zero() {
            return Err(Error::NonPositiveSlope(m));
        }
        Ok(FuzzySet::new(
            self.values
                .iter()
                .map(|v| Value::clamped(m * v.rat() + k))
                .collect(),
        ))
    }

    /// Pointwise maximum of two same-carrier fuzzy sets.
    pub fn join(&self, other: &FuzzySet) -> FuzzySet {
        assert_eq!(self.len(), other.len());
        FuzzySet::new(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    /// Pointwise minimum of two same-carrier fuzzy sets.
    pub fn meet(&self, other: &FuzzySet) -> FuzzySet {
        assert_eq!(self.len(), other.len());
        FuzzySet::new(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| a.min(b))
                .collect(),
        )
    }

    /// Pointwise order `f ≤ g`.
    pub fn le(&self, other: &FuzzySet) -> bool {
        assert_eq!(self.len(), other.len());
        self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    /// Distinct values in ascending order.
    pub fn distinct_values(&self) -> Vec<Value> {
        let mut vs = self.values.clone();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn max_value(&self) -> Value {
        *self.values.iter().max().expect("nonempty carrier")
    }

    pub fn on_grid(&self, q: u32) -> bool {
        self.values.iter().all(|v| v.on_grid(q))
    }

    pub fn valued_in(&self, levels: &[Value]) -> bool {
        self.values.iter().all(|v| levels.contains(v))
    }

    /// Restriction to a nonempty subspace, re-indexed onto `y`'s points in
    /// ascending order.
    pub fn restrict(&self, y: Subset) -> FuzzySet {
        assert!(!y.is_empty(), "restriction to the empty carrier");
        FuzzySet::new(y.iter().map(|i| self.values[i]).collect())
    }

    /// Zero-extension: place this function (indexed by `y`'s points) onto an
    /// `n`-point carrier, with value 0 off `y`.
    pub fn extend_by_zero(&self, y: Subset, n: usize) -> FuzzySet {
        assert_eq!(y.card() as usize, self.len());
        let mut values = vec![Value::ZERO; n];
        for (pos, point) in y.iter().enumerate() {
            values[point] = self.values[pos];
        }
        FuzzySet::new(values)
    }

    /// `max(0, f - e)` pointwise.
    pub fn saturating_sub(&self, e: Value) -> FuzzySet {
        FuzzySet::new(
            self.values
                .iter()
                .map(|v| Value::clamped(v.rat() - e.rat()))
                .collect(),
        )
    }
}

impl Serialize for FuzzySet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.values.iter())
    }
}

impl fmt::Debug for FuzzySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Pointwise supremum of a nonempty same-carrier family.
pub fn pointwise_sup(family: &[FuzzySet]) -> Result<FuzzySet> {
    fold_family(family, FuzzySet::join)
}

/// Pointwise infimum of a nonempty same-carrier family.
pub fn pointwise_inf(family: &[FuzzySet]) -> Result<FuzzySet> {
    fold_family(family, FuzzySet::meet)
}

fn fold_family(
    family: &[FuzzySet],
    op: impl Fn(&FuzzySet, &FuzzySet) -> FuzzySet,
) -> Result<FuzzySet> {
    let (first, rest) = family.split_first().ok_or(Error::EmptyFamily)?;
    let mut acc = first.clone();
    for f in rest {
        if f.len() != acc.len() {
            return Err(Error::SizeMismatch {
                expected: acc.len(),
                actual: f.len(),
            });
        }
        acc = op(&acc, f);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn v(n: i64, d: i64) -> Value {
        Value::new(n, d).unwrap()
    }

    fn fs(entries: &[(i64, i64)]) -> FuzzySet {
        FuzzySet::new(entries.iter().map(|&(n, d)| v(n, d)).collect())
    }

    #[test]
    fn level_above_examples() {
        // characteristic function, strict-above-zero
        let chi = FuzzySet::characteristic(3, Subset::from_points(&[1, 2]));
        assert_eq!(chi.level_above(Value::ZERO), Subset::from_points(&[1, 2]));
        // strict inequality excludes equality
        let half = FuzzySet::constant(2, v(1, 2));
        assert_eq!(half.level_above(v(1, 2)), Subset::EMPTY);
        // pointwise comparison oracle: exactly the entries > 1/4
        let f = fs(&[(0, 1), (1, 4), (3, 4)]);
        let expected = Subset::from_points(
            &(0..3).filter(|&i| f.value(i) > v(1, 4)).collect::<Vec<_>>(),
        );
        assert_eq!(expected, Subset::singleton(2));
        assert_eq!(f.level_above(v(1, 4)), expected);
    }

    #[test]
    fn level_at_least_examples() {
        let half = FuzzySet::constant(2, v(1, 2));
        assert_eq!(half.level_at_least(v(1, 2)), Subset::full(2));
        let f = fs(&[(0, 1), (1, 4), (3, 4)]);
        assert_eq!(f.level_at_least(Value::ONE), Subset::EMPTY);
        // f_{[0} is the whole carrier for every f
        assert_eq!(f.level_at_least(Value::ZERO), Subset::full(3));
    }

    #[test]
    fn sup_inf_examples() {
        let f = fs(&[(0, 1), (1, 1)]);
        let g = fs(&[(1, 1), (0, 1)]);
        assert_eq!(pointwise_sup(&[f.clone()]).unwrap(), f);
        assert_eq!(
            pointwise_sup(&[f.clone(), g.clone()]).unwrap(),
            FuzzySet::constant(2, Value::ONE)
        );
        assert_eq!(
            pointwise_inf(&[f, g]).unwrap(),
            FuzzySet::constant(2, Value::ZERO)
        );
        // coordinatewise max oracle
        let a = fs(&[(1, 4), (1, 2)]);
        let b = fs(&[(1, 2), (1, 4)]);
        assert_eq!(
            pointwise_sup(&[a, b]).unwrap(),
            FuzzySet::constant(2, v(1, 2))
        );
        assert!(matches!(pointwise_sup(&[]), Err(Error::EmptyFamily)));
    }

    #[test]
    fn affine_adjust_examples() {
        let f = fs(&[(1, 4), (3, 4)]);
        assert_eq!(f.affine_adjust(Rat::new(1, 1), Rat::new(0, 1)).unwrap(), f);
        // evaluate pointwise and clip
        assert_eq!(
            f.affine_adjust(Rat::new(2, 1), Rat::new(-1, 2)).unwrap(),
            fs(&[(0, 1), (1, 1)])
        );
        // clipping saturates
        let zero = FuzzySet::constant(2, Value::ZERO);
        assert_eq!(
            zero.affine_adjust(Rat::new(3, 1), Rat::new(1, 1)).unwrap(),
            FuzzySet::constant(2, Value::ONE)
        );
        assert!(f.affine_adjust(Rat::new(0, 1), Rat::new(1, 2)).is_err());
        assert!(f.affine_adjust(Rat::new(-1, 1), Rat::new(0, 1)).is_err());
    }

    #[test]
    fn complement_examples() {
        assert_eq!(
            FuzzySet::constant(3, Value::ZERO).complement(),
            FuzzySet::constant(3, Value::ONE)
        );
        let f = fs(&[(1, 4), (1, 1)]);
        assert_eq!(f.complement(), fs(&[(3, 4), (0, 1)]));
        assert_eq!(f.complement().complement(), f);
    }

    #[test]
    fn zero_extension_and_restriction() {
        let y = Subset::from_points(&[0, 2]);
        let f = fs(&[(1, 2), (1, 1)]);
        let extended = f.extend_by_zero(y, 3);
        assert_eq!(extended, fs(&[(1, 2), (0, 1), (1, 1)]));
        assert_eq!(extended.restrict(y), f);
    }

    #[test]
    fn enumerate_functions_counts_and_order() {
        let grid = GridContext::new(2, 2).unwrap();
        let all = grid.all_functions().unwrap();
        assert_eq!(all.len(), 9);
        assert_eq!(all[0], FuzzySet::constant(2, Value::ZERO));
        assert_eq!(all[8], FuzzySet::constant(2, Value::ONE));
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        let grid = GridContext::new(8, 24).unwrap();
        assert!(grid.function_count().is_err());
    }

    fn arb_value(q: u32) -> impl Strategy<Value = Value> {
        (0..=q).prop_map(move |j| Value::grid(j, q))
    }

    fn arb_fuzzy(n: usize, q: u32) -> impl Strategy<Value = FuzzySet> {
        prop::collection::vec(arb_value(q), n).prop_map(FuzzySet::new)
    }

    proptest! {
        #[test]
        fn level_sets_are_nested(f in arb_fuzzy(4, 4), c1 in arb_value(4), c2 in arb_value(4)) {
            let (lo, hi) = if c1 <= c2 { (c1, c2) } else { (c2, c1) };
            prop_assert!(f.level_above(hi).is_subset_of(f.level_above(lo)));
            prop_assert!(f.level_above(lo).is_subset_of(f.level_at_least(lo)));
            if lo < hi {
                prop_assert!(f.level_at_least(hi).is_subset_of(f.level_above(lo)));
            }
        }

        #[test]
        fn sup_distributes_over_level_above(
            f in arb_fuzzy(3, 4),
            g in arb_fuzzy(3, 4),
            h in arb_fuzzy(3, 4),
            c in arb_value(4),
        ) {
            let sup = pointwise_sup(&[f.clone(), g.clone(), h.clone()]).unwrap();
            let union = f
                .level_above(c)
                .union(g.level_above(c))
                .union(h.level_above(c));
            prop_assert_eq!(sup.level_above(c), union);
        }

        #[test]
        fn affine_adjust_is_monotone(
            f in arb_fuzzy(3, 4),
            g in arb_fuzzy(3, 4),
            m in (1i64..5, 1i64..5),
            k in (-4i64..5, 1i64..5),
        ) {
            let lower = f.meet(&g);
            let m = Rat::new(m.0, m.1);
            let k = Rat::new(k.0, k.1);
            prop_assert!(lower
                .affine_adjust(m, k)
                .unwrap()
                .le(&f.affine_adjust(m, k).unwrap()));
        }

        #[test]
        fn join_meet_lattice_laws(f in arb_fuzzy(3, 2), g in arb_fuzzy(3, 2), h in arb_fuzzy(3, 2)) {
            prop_assert_eq!(f.join(&g), g.join(&f));
            prop_assert_eq!(f.meet(&g), g.meet(&f));
            prop_assert_eq!(f.join(&f).clone(), f.clone());
            prop_assert_eq!(f.join(&g).join(&h), f.join(&g.join(&h)));
            prop_assert_eq!(f.meet(&g).meet(&h), f.meet(&g.meet(&h)));
        }

        #[test]
        fn grid_cell_constancy(f in arb_fuzzy(3, 4)) {
            // level_above(f, ·) is constant on each half-open grid cell:
            // checking c on L_q \ {1} exhausts all distinct strict level sets.
            let grid_levels: Vec<Subset> = GridContext::new(4, 3)
                .unwrap()
                .thresholds()
                .iter()
                .map(|&c| f.level_above(c))
                .collect();
            for num in 0..64i64 {
                let c = Value::new(num, 64).unwrap();
                if c.is_one() { break; }
                prop_assert!(grid_levels.contains(&f.level_above(c)));
            }
        }
    }
}
