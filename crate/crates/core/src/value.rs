//! Exact membership degrees: reduced rationals confined to `[0, 1]`.
//!
//! Every comparison in the engine is an exact equality, so no floating
//! point appears anywhere. Slopes and offsets of affine maps are plain
//! signed rationals ([`Rat`]); degrees are the range-checked [`Value`].

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Signed exact rational, used for affine slopes and offsets.
pub type Rat = Ratio<i64>;

/// A membership degree: an exact rational in `[0, 1]`, stored reduced.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Value(Rat);

impl Value {
    pub const ZERO: Value = Value(Ratio::new_raw(0, 1));
    pub const ONE: Value = Value(Ratio::new_raw(1, 1));

    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        Self::from_rat(Ratio::new(num, den))
    }

    pub fn from_rat(r: Rat) -> Result<Self> {
        if r < Ratio::zero() || r > Ratio::one() {
            Err(Error::ValueOutOfRange {
                num: *r.numer(),
                den: *r.denom(),
            })
        } else {
            Ok(Value(r))
        }
    }

    /// Clamp an arbitrary rational into `[0, 1]`.
    pub fn clamped(r: Rat) -> Self {
        if r < Ratio::zero() {
            Value::ZERO
        } else if r > Ratio::one() {
            Value::ONE
        } else {
            Value(r)
        }
    }

    /// Grid point `j/q`. Panics if `j > q` or `q == 0`.
    pub fn grid(j: u32, q: u32) -> Self {
        assert!(q >= 1 && j <= q, "grid point {j}/{q} out of range");
        Value(Ratio::new(i64::from(j), i64::from(q)))
    }

    pub fn rat(self) -> Rat {
        self.0
    }

    pub fn numer(self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(self) -> i64 {
        *self.0.denom()
    }

    /// `1 - self`; closed on `[0, 1]`.
    pub fn complement(self) -> Self {
        Value(Ratio::one() - self.0)
    }

    pub fn is_zero(self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(self) -> bool {
        self.0.is_one()
    }

    /// Whether the reduced denominator divides `q`, i.e. the value sits on `L_q`.
    pub fn on_grid(self, q: u32) -> bool {
        i64::from(q) % self.denom() == 0
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

// Debug delegates to Display so set dumps stay readable.
impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Value {
    type Err = Error;

    /// Accepts `"p/q"` and bare integers `"p"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadRational(s.to_string());
        match s.split_once('/') {
            Some((num, den)) => {
                let num: i64 = num.trim().parse().map_err(|_| bad())?;
                let den: i64 = den.trim().parse().map_err(|_| bad())?;
                if den == 0 {
                    return Err(Error::ZeroDenominator);
                }
                Value::new(num, den)
            }
            None => {
                let num: i64 = s.trim().parse().map_err(|_| bad())?;
                Value::new(num, 1)
            }
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Value {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(|e: Error| D::Error::custom(e.to_string()))
    }
}
