//! Exact lattice-level computations for stability conditions on a K3 surface
//! with a (-2)-curve: central charges and phases, the spherical-twist action
//! on Mukai vectors, GL+(2,R) charge-transport identities, and destabilizing
//! wall analysis for line bundles.
//!
//! All arithmetic is exact (arbitrary-precision rationals). Floating point
//! appears only where a value is genuinely transcendental (phases away from
//! the axes) and is always flagged as such.

pub mod charge;
pub mod cli;
pub mod error;
pub mod lattice;
pub mod mukai;
pub mod rat;
pub mod surface;
pub mod transport;
pub mod twist;
pub mod walls;

pub use error::Error;
pub use lattice::{DivisorClass, IntersectionLattice};
pub use mukai::{ChernCharacter, MukaiVector};
pub use rat::Rat;
pub use surface::SurfaceModel;
