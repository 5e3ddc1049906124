//! Exact-arithmetic laboratory for matrix pencils.
//!
//! Computes Kronecker structures and Weyr characteristics of rational
//! pencils, builds pencils with prescribed characteristics, evaluates the
//! interval bounds for rank-one perturbations and one-row completions, and
//! decides the completion problems with partially prescribed invariants.

pub mod bounds;
pub mod builder;
pub mod campaign;
pub mod completion;
pub mod concordance;
pub mod enumerate;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod invariants;
pub mod matrix;
pub mod par;
pub mod partition;
pub mod pencil;
pub mod poly;
pub mod weyr;

pub use error::{LabError, Result};
pub use field::Rational;
pub use matrix::RationalMatrix;
pub use partition::{FiniteSeq, Partition, StarPartition};
pub use pencil::{EigenvalueLabel, RankOneKind, RationalPencil};
pub use weyr::{RegularPart, WeyrCharacteristic};
