//! Balanced red-blue edge-colored graphs.
//!
//! The crate provides the bicolored graph carrier, exact balance tests,
//! colored subgraph detection, inevitability tests, exact small-case
//! extremal and Ramsey search, explicit constructions, seeded randomized
//! procedures and the clone normalization pipeline.

pub mod balance;
pub mod bcg;
pub mod bits;
pub mod canon;
pub mod constructions;
pub mod enumerate;
pub mod error;
pub mod extremal;
pub mod fixtures;
pub mod graph;
pub mod inevitability;
pub mod oracle;
pub mod normalize;
pub mod patterns;
pub mod probabilistic;

pub use balance::{density, is_balanced, BalanceSpec, Density};
pub use bcg::{parse_bcg, to_bcg};
pub use canon::{canonical_certificate, canonical_form, Certificate};
pub use error::{Error, Result};
pub use graph::{BicoloredGraph, Color};
pub use patterns::{contains_family, find_colored_subgraph, PatternFamily, Witness};
