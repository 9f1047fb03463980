//! ECH spectral invariants of star-shaped toric domains in ℂ², computed by
//! exact optimisation over convex and concave lattice paths.
//!
//! A toric domain is described by its boundary curve in the moment plane
//! ([`geometry::Curve`]). [`capacity::capacity`] evaluates `c_k` as the
//! optimal action of a lattice path with a lattice-point constraint;
//! [`spectral`] turns optimal paths into atomic measures on the curve and
//! checks the Weyl law and equidistribution; [`isoperimetric`] tests the
//! cross-action inequalities on random curve families.

pub mod capacity;
pub mod error;
pub mod geometry;
pub mod isoperimetric;
pub mod lattice_paths;
pub mod spectral;
pub mod stern_brocot;
pub mod value;

pub use error::{Error, Result};
pub use value::Value;
