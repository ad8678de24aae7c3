//! Exact real root counting for univariate polynomials and sparse polynomial systems.

pub mod circuits;
pub mod enumgeo;
pub mod gale;
pub mod groebner;
pub mod lattice;
pub mod lowerbounds;
pub mod mapdeg;
pub mod polytope;
pub mod qpoly;
pub mod rootcount;

pub use qpoly::{Rational, UniPoly};
