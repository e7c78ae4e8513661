//! Crisp subsets of a finite carrier, packed into a single bitmask.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported carrier; one machine word with headroom.
pub const MAX_GROUND_SIZE: usize = 24;

/// Validate a carrier size against the bitmask cap.
pub fn check_ground_size(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::EmptyGround)
    } else if n > MAX_GROUND_SIZE {
        Err(Error::GroundSizeExceeded(n, MAX_GROUND_SIZE))
    } else {
        Ok(())
    }
}

/// A subset of `{0, …, n-1}` as a bitmask. Bits above `n-1` stay zero.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_GROUND_SIZE);
        Subset(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(i: usize) -> Self {
        debug_assert!(i < MAX_GROUND_SIZE);
        Subset(1 << i)
    }

    pub fn from_points(points: &[usize]) -> Self {
        points.iter().fold(Subset::EMPTY, |s, &i| s.with(i))
    }

    pub fn from_bits(bits: u32) -> Self {
        Subset(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        debug_assert!(i < MAX_GROUND_SIZE);
        Subset(self.0 | 1 << i)
    }

    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Self {
        Subset(self.0 & other.0)
    }

    pub fn minus(self, other: Subset) -> Self {
        Subset(self.0 & !other.0)
    }

    pub fn complement(self, n: usize) -> Self {
        Subset::full(n).minus(self)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn card(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Member points in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..MAX_GROUND_SIZE).filter(move |&i| self.contains(i))
    }

    pub fn points(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Re-index `self ∩ y` onto the positions of `y` taken in ascending order.
    pub fn compress(self, y: Subset) -> Subset {
        let mut out = Subset::EMPTY;
        for (pos, point) in y.iter().enumerate() {
            if self.contains(point) {
                out = out.with(pos);
            }
        }
        out
    }

    /// Inverse of [`Subset::compress`]: place position-indexed bits back onto `y`.
    pub fn decompress(self, y: Subset) -> Subset {
        let mut out = Subset::EMPTY;
        for (pos, point) in y.iter().enumerate() {
            if self.contains(pos) {
                out = out.with(point);
            }
        }
        out
    }
}

/// All `2^n` subsets of an `n`-point carrier, in bitmask order.
pub fn all_subsets(n: usize) -> impl Iterator<Item = Subset> {
    debug_assert!(n <= MAX_GROUND_SIZE);
    (0u32..1 << n).map(Subset::from_bits)
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Subset {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let points = Vec::<usize>::deserialize(deserializer)?;
        if let Some(&bad) = points.iter().find(|&&i| i >= MAX_GROUND_SIZE) {
            return Err(serde::de::Error::custom(format!(
                "point index {bad} exceeds the carrier cap"
            )));
        }
        Ok(Subset::from_points(&points))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_algebra_basics() {
        let a = Subset::from_points(&[0, 2]);
        let b = Subset::from_points(&[1, 2]);
        assert_eq!(a.union(b), Subset::from_points(&[0, 1, 2]));
        assert_eq!(a.intersection(b), Subset::singleton(2));
        assert_eq!(a.minus(b), Subset::singleton(0));
        assert_eq!(a.complement(3), Subset::singleton(1));
        assert!(a.intersection(b).is_subset_of(a));
        assert_eq!(a.card(), 2);
    }

    #[test]
    fn compress_reindexes_onto_subspace() {
        // Y = {1, 3} on n = 4; {3} sits at position 1 of Y.
        let y = Subset::from_points(&[1, 3]);
        let u = Subset::from_points(&[0, 3]);
        assert_eq!(u.compress(y), Subset::singleton(1));
        assert_eq!(u.compress(y).decompress(y), Subset::singleton(3));
    }

    #[test]
    fn all_subsets_counts() {
        assert_eq!(all_subsets(3).count(), 8);
        assert_eq!(all_subsets(0).count(), 1);
    }
}
