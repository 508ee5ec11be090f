//! Exact computations for genus-0 moduli spaces of curves whose marked points
//! may collide according to a simplicial complex 𝒦.
//!
//! * [`complex`]: the collision rulebook 𝒦, including Hassett weights.
//! * [`graph`], [`strata`], [`divisor`]: the boundary stratification by
//!   𝒦-stable graphs.
//! * [`ring`]: the presented Chow ring (boundary divisors modulo disjointness
//!   products and WDVV relations), graded ranks and torsion over ℤ.
//! * [`oracle`]: point counts over finite fields from the stratification.
//! * [`crosscheck`]: slow brute-force routes used to validate the fast ones.

pub mod complex;
pub mod crosscheck;
pub mod divisor;
pub mod error;
pub mod graph;
pub mod io;
pub mod labels;
pub mod oracle;
pub mod ring;
pub mod strata;

pub use complex::{GroundSet, HassettWeights, SimplicialComplex};
pub use divisor::{divisors, disjoint, pushforward_divisor, BoundaryDivisor, DivisorKind};
pub use error::{Error, Result};
pub use graph::{generic_meet, induced_complex, KStableGraph, ValidationReport, VertexView};
pub use labels::LabelSet;
pub use oracle::{OracleReport, PointCountPolynomial};
pub use ring::{Monomial, PoincareProfile, Presentation, RingElement};
pub use strata::{enumerate_graphs, Codim};
