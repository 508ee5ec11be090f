//! The presented Chow ring and its exact graded invariants.

mod element;
pub(crate) mod linalg;
mod presentation;

pub use element::{Monomial, RingElement};
pub use linalg::smith_diagonal;
pub use presentation::{GeneratorTable, GradedRank, PoincareProfile, Presentation, RelationSet, WdvvRelation};
