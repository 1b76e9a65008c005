//! Stanley-Reisner invariants of simplicial complexes and their barycentric
//! subdivisions, computed with exact arithmetic.

pub mod betti;
pub mod combinatorics;
pub mod complex;
pub mod conjecture;
pub mod corpus;
pub mod error;
pub mod face;
pub mod field;
pub mod graph;
pub mod homology;
pub mod invariants;
pub mod linalg;
pub mod series;

pub use betti::{BettiTable, ShiftProfile, SweepOptions};
pub use conjecture::ConjectureReport;
pub use complex::{FVector, HVector, SimplicialComplex, Vertex};
pub use error::{Error, Result};
pub use face::Face;
pub use field::FieldSpec;
pub use homology::{reduced_homology, HomologyProfile};
pub use invariants::InvariantBundle;
pub use series::{DenominatorBase, IntPoly, RationalSeries};
