//! Configuration spaces of particles on finite graphs: discrete cube-complex
//! models, their homology, and the order of the canonical vector bundle.

pub mod abrams;
pub mod bundle;
pub mod graph;
pub mod homology;
pub mod matrix;
pub mod planarity;
