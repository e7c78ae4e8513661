//! Exact engine for finite fuzzy topological spaces.
//!
//! Fuzzy sets are vectors of exact rationals over a finite carrier; fuzzy
//! topologies are stored either extensionally (a closed family of
//! grid-valued fuzzy sets) or intensionally (the lower-semicontinuous
//! functions of a crisp topology). The library provides the maps between
//! the two worlds, a classifier for the induced/laminated/weakly-induced
//! hierarchy, product/coproduct/subspace/quotient constructions, a gallery
//! of counterexample families, level-set compactness with subcover
//! certificates, and exhaustive censuses on tiny carriers. All arithmetic
//! is rational; every check is an exact equality.

pub mod census;
pub mod checks;
pub mod commands;
pub mod compactness;
pub mod constructions;
pub mod error;
pub mod fuzzy;
pub mod fuzzy_set;
pub mod gallery;
pub mod instance;
pub mod report;
pub mod subset;
pub mod topology;
pub mod value;

pub use error::{Error, Result};
pub use fuzzy_set::{FuzzySet, GridContext};
pub use subset::Subset;
pub use topology::{GroundMap, Topology};
pub use value::{Rat, Value};
