//! Exact and numerical machinery for Nielsen fixed point theory on products.
//!
//! The crate is organised by subsystem:
//!
//! * [`linalg`]: exact integer matrices, Smith normal form, cokernels and the
//!   block-cyclic assembly used for cyclic product maps.
//! * [`group`]: finite groups given by Cayley tables, unfactorizability,
//!   automorphism enumeration and the decomposition of automorphisms of
//!   direct products into permutations and factor automorphisms.
//! * [`homology`]: simplicial complexes, rational homology and Lefschetz
//!   numbers of simplicial self-maps.
//! * [`torus`]: an exact Nielsen theory oracle for linear maps of flat tori,
//!   including product and cyclic maps.
//! * [`smooth`]: Newton-based fixed point location for perturbed torus maps,
//!   local indices from Jacobian signs, and class labels.
//! * [`bounds`]: index bounds for surface maps and product bounds.
//! * [`verify`]: the full verification sweep behind `verify-all`.

pub mod bounds;
pub mod error;
pub mod group;
pub mod homology;
pub mod json;
pub mod linalg;
pub mod smooth;
pub mod torus;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{IntMatrix, Matrix, RealMatrix};
