//! Periodic mapping classes of closed surfaces: data sets, Dehn twist words,
//! exact symplectic images and word synthesis.
//!
//! The crate is organised around a small number of value types:
//!
//! * [`DataSet`] encodes the conjugacy class of a cyclic action on `S_g`.
//! * [`TwistWord`] is a reduced word in named Dehn twists over a [`CurveTable`].
//! * [`SympMatrix`] is the exact integer image of a word on `H_1(S_g; Z)`.
//! * [`SidePairedPolygon`] models the rotation of a polygon that realizes an
//!   irreducible Type 1 action.
//!
//! Every word produced by [`synthesis::synthesize`] has passed the Lefschetz
//! certificate of [`symplectic::lefschetz_certify`]. That certificate checks
//! necessary conditions only (order and trace profile on homology); it cannot
//! see elements of the Torelli group.

// Row operations read best with explicit indices.
#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod dataset;
mod error;
pub mod matrix;
pub mod polygon;
pub mod search;
pub mod symplectic;
pub mod synthesis;
pub mod tables;
pub mod twistword;

pub use dataset::{ClassKind, ConePair, DataSet, FixedPointProfile, ValidationReport};
pub use error::{Error, Result};
pub use matrix::IntMatrix;
pub use polygon::{HomologyMap, SidePairedPolygon};
pub use search::{Budget, SearchStratum};
pub use symplectic::{CertificateReport, SympMatrix};
pub use synthesis::{MethodTag, Synthesis};
pub use twistword::{CurveId, CurveKind, CurveTable, TwistWord};
