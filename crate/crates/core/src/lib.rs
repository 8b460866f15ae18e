//! Finite graphs, free categories, and categories presented as models of
//! an algebraic theory over graphs.
//!
//! The crate is organized bottom-up:
//!
//! - [`graphs`]: finite graphs, morphisms, cellwise (co)limits and hom-set
//!   enumeration.
//! - [`categories`]: finite categories, functors, paths and free categories.
//! - [`models`]: executable axiom checkers for category and groupoid models
//!   on a graph, with conversions to and from [`categories::FinCategory`].
//! - [`presentations`]: coequalizers of free categories evaluated by bounded
//!   congruence closure, section normalization and closure under finite
//!   colimits.
//! - [`probe`]: chain colimits and the hom-set stabilization probe.
//! - [`text`]: the line-based file formats.

pub mod categories;
pub mod corpus;
pub mod graphs;
pub mod models;
pub mod presentations;
pub mod probe;
pub mod text;
mod unionfind;

pub use unionfind::UnionFind;
