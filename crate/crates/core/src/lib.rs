//! Exact computations on Hamiltonian torus actions from fixed-point data.
//!
//! A [`model::HamiltonianModel`] lists the isolated fixed points of a torus
//! action with their moment images and isotropy weights. From that data the
//! crate computes Morse indices and Betti numbers, checks edge-ray closure,
//! extracts deformation coordinates, rebuilds torus polytopes from Kirwan
//! polytopes by Weyl reflections, and classifies reflective vertices. All
//! of it is rational arithmetic; [`numeric`] is a floating-point sampling
//! oracle.

pub mod builders;
pub mod format;
pub mod geometry;
mod lattice;
pub mod lie;
pub mod model;
pub mod numeric;
pub mod rational;
pub mod render;
