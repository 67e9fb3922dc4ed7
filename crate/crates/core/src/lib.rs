//! Coherence, slenderness and finiteness for graph products, Artin groups and
//! Coxeter groups given by vertex-edge-labelled graphs.

pub mod graph;
pub mod decomposition;
pub mod group;
pub mod engine;
pub mod census;
