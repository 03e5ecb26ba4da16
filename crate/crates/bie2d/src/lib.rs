//! High-order Nyström solver for 2D Helmholtz scattering (TM polarization,
//! Neumann condition) from piecewise-smooth perfectly conducting scatterers
//! with corners.

pub mod chebcov;
pub mod linsolve;
pub mod specfun;
