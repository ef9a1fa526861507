//! Computational toolkit for multi-space models of spacetime.
//!
//! The crate is split by subject:
//!
//! * [`pseudoface`]: pseudo-face maps between Euclidean spaces, empirical
//!   uniform-continuity certificates, conjugated transport, pseudo-shapes of
//!   balls and subspace chains anchored at a point.
//! * [`relativity`]: spacetime intervals, Lorentz boosts along `x`, velocity
//!   composition, metric quadratic forms and the Friedmann line element.
//! * [`cosmology`]: Kasner exponents, time-shifted accelerating scale factors
//!   and the Townsend-Wohlfarth compactification solution.
//! * [`quadrature`]: adaptive Simpson integration used for proper time.
//! * [`graphphase`]: labelled graph phases, embeddability (planarity with
//!   certificates) and label transformations.
//! * [`multicosmos`]: finite posets of sub-cosmoses with restriction maps and
//!   checkers for composition, separatedness and gluing.

pub mod cosmology;
pub mod graphphase;
pub mod multicosmos;
pub mod pseudoface;
pub mod quadrature;
pub mod relativity;
