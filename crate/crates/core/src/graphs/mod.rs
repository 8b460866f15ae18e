//! Finite directed multigraphs and their morphisms.
//!
//! A [`FinGraph`] is the presheaf data `(G₀, G₁, s, t)` on the two-object
//! site. Cells are identified by strings and stored in lexicographic order,
//! so [`VertexId`] and [`EdgeId`] indices follow name order.

mod hom;
mod limits;
mod standard;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

pub use hom::{composable_sequences, find_isomorphism, for_each_hom, hom_count, hom_graphs};
pub use limits::{
    coequalizer, coproduct, equalizer, product, pullback, pushout, Cospan, Span,
};
pub use standard::{representable, Cell, path_graph};
pub(crate) use limits::quotient;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EdgeId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge `{0}`")]
    DuplicateEdge(String),
    #[error("edge `{edge}` refers to unknown vertex `{vertex}`")]
    UnknownVertex { edge: String, vertex: String },
    #[error("invalid identifier `{0}`")]
    InvalidIdentifier(String),
    #[error("map has {found} entries for {expected} {cells}")]
    MapArity {
        cells: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("cell index out of range in map for {0}")]
    OutOfRange(&'static str),
    #[error("edge `{edge}` is not preserved: endpoints do not commute")]
    NotHomomorphic { edge: String },
    #[error("morphisms are not composable or not parallel")]
    Mismatch,
    #[error("unknown cell `{0}`")]
    UnknownCell(String),
}

/// Identifiers are whitespace-free and avoid the punctuation the text
/// formats reserve.
pub fn is_valid_identifier(name: &str) -> bool {
    !name.is_empty()
        && name != "."
        && !name.contains("->")
        && !name
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, ':' | '=' | '#'))
}

/// A finite directed multigraph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinGraph {
    vertices: Vec<String>,
    edges: Vec<String>,
    src: Vec<VertexId>,
    tgt: Vec<VertexId>,
}

impl fmt::Debug for FinGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges()
            .map(|e| {
                format!(
                    "{}: {} -> {}",
                    self.edge_name(e),
                    self.vertex_name(self.src(e)),
                    self.vertex_name(self.tgt(e))
                )
            })
            .collect();
        f.debug_struct("FinGraph")
            .field("vertices", &self.vertices)
            .field("edges", &edges)
            .finish()
    }
}

#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    vertices: Vec<String>,
    edges: Vec<(String, String, String)>,
}

impl GraphBuilder {
    pub fn vertex(mut self, name: impl Into<String>) -> Self {
        self.vertices.push(name.into());
        self
    }

    pub fn vertices<I, S>(mut self, names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.vertices.extend(names.into_iter().map(Into::into));
        self
    }

    pub fn edge(
        mut self,
        name: impl Into<String>,
        src: impl Into<String>,
        tgt: impl Into<String>,
    ) -> Self {
        self.edges.push((name.into(), src.into(), tgt.into()));
        self
    }

    pub fn build(self) -> Result<FinGraph, GraphError> {
        FinGraph::new(self.vertices, self.edges)
    }
}

impl FinGraph {
    pub fn builder() -> GraphBuilder {
        GraphBuilder::default()
    }

    pub fn empty() -> FinGraph {
        FinGraph {
            vertices: Vec::new(),
            edges: Vec::new(),
            src: Vec::new(),
            tgt: Vec::new(),
        }
    }

    /// Builds a graph from vertex names and `(edge, src, tgt)` triples.
    pub fn new(
        vertices: Vec<String>,
        edges: Vec<(String, String, String)>,
    ) -> Result<FinGraph, GraphError> {
        let mut vset = BTreeMap::new();
        for v in vertices {
            if !is_valid_identifier(&v) {
                return Err(GraphError::InvalidIdentifier(v));
            }
            if vset.insert(v.clone(), ()).is_some() {
                return Err(GraphError::DuplicateVertex(v));
            }
        }
        let vertices: Vec<String> = vset.into_keys().collect();
        let vindex: HashMap<&str, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();

        let mut eset = BTreeMap::new();
        for (name, s, t) in edges {
            if !is_valid_identifier(&name) {
                return Err(GraphError::InvalidIdentifier(name));
            }
            let lookup = |v: &str| {
                vindex
                    .get(v)
                    .copied()
                    .map(VertexId)
                    .ok_or_else(|| GraphError::UnknownVertex {
                        edge: name.clone(),
                        vertex: v.to_string(),
                    })
            };
            let ends = (lookup(&s)?, lookup(&t)?);
            if eset.contains_key(&name) {
                return Err(GraphError::DuplicateEdge(name));
            }
            eset.insert(name, ends);
        }
        let mut edges = Vec::with_capacity(eset.len());
        let mut src = Vec::with_capacity(eset.len());
        let mut tgt = Vec::with_capacity(eset.len());
        for (name, (s, t)) in eset {
            edges.push(name);
            src.push(s);
            tgt.push(t);
        }
        Ok(FinGraph {
            vertices,
            edges,
            src,
            tgt,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl DoubleEndedIterator<Item = VertexId> + ExactSizeIterator {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn edges(&self) -> impl DoubleEndedIterator<Item = EdgeId> + ExactSizeIterator {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.0]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn edge_names(&self) -> &[String] {
        &self.edges
    }

    pub fn src(&self, e: EdgeId) -> VertexId {
        self.src[e.0]
    }

    pub fn tgt(&self, e: EdgeId) -> VertexId {
        self.tgt[e.0]
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertices
            .binary_search_by(|v| v.as_str().cmp(name))
            .ok()
            .map(VertexId)
    }

    pub fn edge_id(&self, name: &str) -> Option<EdgeId> {
        self.edges
            .binary_search_by(|e| e.as_str().cmp(name))
            .ok()
            .map(EdgeId)
    }

    /// Edges leaving `v`, in canonical order.
    pub fn out_edges(&self, v: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges().filter(move |&e| self.src(e) == v)
    }

    /// Edges entering `v`, in canonical order.
    pub fn in_edges(&self, v: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges().filter(move |&e| self.tgt(e) == v)
    }

    /// Edges from `a` to `b`, in canonical order.
    pub fn edges_between(&self, a: VertexId, b: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges()
            .filter(move |&e| self.src(e) == a && self.tgt(e) == b)
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// A morphism of finite graphs: vertex and edge maps commuting with
/// source and target.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraphMorphism {
    dom: Arc<FinGraph>,
    cod: Arc<FinGraph>,
    vmap: Vec<VertexId>,
    emap: Vec<EdgeId>,
}

impl GraphMorphism {
    pub fn new(
        dom: Arc<FinGraph>,
        cod: Arc<FinGraph>,
        vmap: Vec<VertexId>,
        emap: Vec<EdgeId>,
    ) -> Result<GraphMorphism, GraphError> {
        if vmap.len() != dom.vertex_count() {
            return Err(GraphError::MapArity {
                cells: "vertices",
                expected: dom.vertex_count(),
                found: vmap.len(),
            });
        }
        if emap.len() != dom.edge_count() {
            return Err(GraphError::MapArity {
                cells: "edges",
                expected: dom.edge_count(),
                found: emap.len(),
            });
        }
        if vmap.iter().any(|v| v.0 >= cod.vertex_count()) {
            return Err(GraphError::OutOfRange("vertices"));
        }
        if emap.iter().any(|e| e.0 >= cod.edge_count()) {
            return Err(GraphError::OutOfRange("edges"));
        }
        for e in dom.edges() {
            let image = emap[e.0];
            if vmap[dom.src(e).0] != cod.src(image) || vmap[dom.tgt(e).0] != cod.tgt(image) {
                return Err(GraphError::NotHomomorphic {
                    edge: dom.edge_name(e).to_string(),
                });
            }
        }
        Ok(GraphMorphism {
            dom,
            cod,
            vmap,
            emap,
        })
    }

    /// Builds a morphism from `(dom cell, cod cell)` name pairs.
    pub fn from_names(
        dom: Arc<FinGraph>,
        cod: Arc<FinGraph>,
        vertices: &[(&str, &str)],
        edges: &[(&str, &str)],
    ) -> Result<GraphMorphism, GraphError> {
        let mut vmap = vec![None; dom.vertex_count()];
        for (a, b) in vertices {
            let a = dom
                .vertex_id(a)
                .ok_or_else(|| GraphError::UnknownCell(a.to_string()))?;
            let b = cod
                .vertex_id(b)
                .ok_or_else(|| GraphError::UnknownCell(b.to_string()))?;
            vmap[a.0] = Some(b);
        }
        let mut emap = vec![None; dom.edge_count()];
        for (a, b) in edges {
            let a = dom
                .edge_id(a)
                .ok_or_else(|| GraphError::UnknownCell(a.to_string()))?;
            let b = cod
                .edge_id(b)
                .ok_or_else(|| GraphError::UnknownCell(b.to_string()))?;
            emap[a.0] = Some(b);
        }
        let vmap: Option<Vec<_>> = vmap.into_iter().collect();
        let emap: Option<Vec<_>> = emap.into_iter().collect();
        match (vmap, emap) {
            (Some(vmap), Some(emap)) => GraphMorphism::new(dom, cod, vmap, emap),
            _ => Err(GraphError::MapArity {
                cells: "cells",
                expected: dom.vertex_count() + dom.edge_count(),
                found: vertices.len() + edges.len(),
            }),
        }
    }

    pub(crate) fn new_unchecked(
        dom: Arc<FinGraph>,
        cod: Arc<FinGraph>,
        vmap: Vec<VertexId>,
        emap: Vec<EdgeId>,
    ) -> GraphMorphism {
        debug_assert!(GraphMorphism::new(dom.clone(), cod.clone(), vmap.clone(), emap.clone()).is_ok());
        GraphMorphism {
            dom,
            cod,
            vmap,
            emap,
        }
    }

    pub fn identity(g: Arc<FinGraph>) -> GraphMorphism {
        let vmap = g.vertices().collect();
        let emap = g.edges().collect();
        GraphMorphism {
            dom: g.clone(),
            cod: g,
            vmap,
            emap,
        }
    }

    pub fn dom(&self) -> &Arc<FinGraph> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FinGraph> {
        &self.cod
    }

    pub fn vertex(&self, v: VertexId) -> VertexId {
        self.vmap[v.0]
    }

    pub fn edge(&self, e: EdgeId) -> EdgeId {
        self.emap[e.0]
    }

    pub fn vertex_map(&self) -> &[VertexId] {
        &self.vmap
    }

    pub fn edge_map(&self) -> &[EdgeId] {
        &self.emap
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &GraphMorphism) -> Result<GraphMorphism, GraphError> {
        if self.cod != next.dom {
            return Err(GraphError::Mismatch);
        }
        Ok(GraphMorphism {
            dom: self.dom.clone(),
            cod: next.cod.clone(),
            vmap: self.vmap.iter().map(|v| next.vmap[v.0]).collect(),
            emap: self.emap.iter().map(|e| next.emap[e.0]).collect(),
        })
    }

    pub fn is_bijective(&self) -> bool {
        fn bij<T: Copy + Into<usize>>(map: &[T], n: usize) -> bool {
            if map.len() != n {
                return false;
            }
            let mut seen = vec![false; n];
            map.iter().all(|&x| !std::mem::replace(&mut seen[x.into()], true))
        }
        bij(&self.vmap, self.cod.vertex_count()) && bij(&self.emap, self.cod.edge_count())
    }
}

impl From<VertexId> for usize {
    fn from(v: VertexId) -> usize {
        v.0
    }
}

impl From<EdgeId> for usize {
    fn from(e: EdgeId) -> usize {
        e.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cells_are_sorted_by_name() {
        let g = FinGraph::builder()
            .vertices(["c", "a", "b"])
            .edge("g", "b", "c")
            .edge("f", "a", "b")
            .build()
            .unwrap();
        assert_eq!(g.vertex_names(), ["a", "b", "c"]);
        assert_eq!(g.edge_names(), ["f", "g"]);
        assert_eq!(g.vertex_name(g.src(EdgeId(1))), "b");
        assert_eq!(g.edge_id("g"), Some(EdgeId(1)));
    }

    #[test]
    fn rejects_bad_graphs() {
        assert_eq!(
            FinGraph::builder().vertex("a").vertex("a").build(),
            Err(GraphError::DuplicateVertex("a".into()))
        );
        assert!(matches!(
            FinGraph::builder().vertex("a").edge("f", "a", "z").build(),
            Err(GraphError::UnknownVertex { .. })
        ));
        assert!(matches!(
            FinGraph::builder()
                .vertex("a")
                .edge("f", "a", "a")
                .edge("f", "a", "a")
                .build(),
            Err(GraphError::DuplicateEdge(_))
        ));
        assert!(FinGraph::builder().vertex("a=b").build().is_err());
    }

    #[test]
    fn morphism_must_commute_with_endpoints() {
        let arrow = Arc::new(path_graph(1));
        let bad = GraphMorphism::new(
            arrow.clone(),
            arrow.clone(),
            vec![VertexId(1), VertexId(1)],
            vec![EdgeId(0)],
        );
        assert!(matches!(bad, Err(GraphError::NotHomomorphic { .. })));
        let id = GraphMorphism::identity(arrow.clone());
        assert_eq!(id.then(&id).unwrap(), id);
        assert!(id.is_bijective());
    }
}
