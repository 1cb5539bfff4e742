//! Exact polyhedral convex analysis over arbitrary-precision rationals.
//!
//! Everything in this crate is computed exactly: polyhedra are converted
//! between constraint (H) and generator (V) form with an incremental double
//! description method, subdifferentials and normal cones come out as exact
//! generator sets, and set inclusion/equality are decidable predicates rather
//! than tolerance checks.
//!
//! The crate is organized bottom-up:
//!
//! * [`rational`] / [`linalg`]: rational scalars, vectors, matrices, and
//!   exact linear-system solving.
//! * [`polyhedron`]: H/V representations of polyhedral convex sets and the
//!   geometric kernel (conversion, projection, Minkowski sum, intersection,
//!   inclusion, canonicalization).
//! * [`convex`]: polyhedral convex functions as a max of affine pieces over
//!   a polyhedral domain, with normal cones, epigraphs, subdifferentials,
//!   singular subdifferentials, and the exact sum rule.
//! * [`stability`]: parametric problems `min { phi(x, y) | y in G(x) }`,
//!   their optimal value function, solution map, coderivatives, and the
//!   estimate sets whose equalities the [`stability::StabilityReport`]
//!   verifies.

pub mod convex;
mod dd;
pub mod error;
pub mod linalg;
pub mod polyhedron;
pub mod rational;
pub mod stability;

pub use error::{Error, Result};
pub use polyhedron::{HPolyhedron, Polyhedron, VPolyhedron};
pub use rational::{Rat, RatMat, RatVec};
pub use convex::{FunctionValue, PolyhedralFunction};
pub use stability::{
    MuValue, ParametricProblem, PolyhedralMap, StabilityReport, Verdicts,
};
