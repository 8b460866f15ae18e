//! Finitely presented categories.
//!
//! A [`Presentation`] is a parallel pair `F(H) ⇉ F(G)` of functors between
//! free categories, stored in transposed form: each map sends a vertex of
//! `H` to a vertex of `G` and an edge of `H` to a path of `G`. Its
//! coequalizer is evaluated by [`coequalize`], a bounded congruence closure
//! over the paths of `G` that reports [`Saturation::Undecided`] instead of
//! running forever.

mod colimits;
mod congruence;
mod section;

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::categories::{CategoryError, Path, PathError};
use crate::graphs::{EdgeId, FinGraph, GraphError, GraphMorphism, VertexId};

pub use colimits::{
    canonical_presentation, coequalizer_of_presented, coproduct_presentations,
    verify_retract_coequalizer, PresentedCoequalizer,
};
pub use congruence::{
    coequalize, morphism_equal, Diagnostics, PresentedCategory, Saturation, UndecidedReason,
    WordResult, UNIVERSE_LIMIT,
};
pub use section::{section_normalize, SectionedPresentation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error("{map}: expected {expected} {cells}, found {found}")]
    Arity {
        map: &'static str,
        cells: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{map}: image of `{edge}` does not match the images of its endpoints")]
    EndpointMismatch { map: &'static str, edge: String },
    #[error("generator `{0}` collides with path notation")]
    ReservedName(String),
    #[error("bounds must be at least 1")]
    InvalidBounds,
    #[error("coequalizer undecided at path length {bound}: {}", .diagnostics.reason)]
    Undecided { bound: usize, diagnostics: Diagnostics },
    #[error("functor data does not match the presented categories")]
    FunctorMismatch,
    #[error("composite p ∘ f is not the identity at `{witness}`")]
    NotARetract { witness: String },
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

/// Search bounds for [`coequalize`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub max_path_len: usize,
    pub max_morphisms: usize,
}

impl Bounds {
    pub fn new(max_path_len: usize, max_morphisms: usize) -> Bounds {
        Bounds {
            max_path_len,
            max_morphisms,
        }
    }

    fn validate(self) -> Result<(), PresentationError> {
        if self.max_path_len == 0 || self.max_morphisms == 0 {
            Err(PresentationError::InvalidBounds)
        } else {
            Ok(())
        }
    }
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds::new(6, 10_000)
    }
}

/// A graph morphism `H -> U F(G)`, i.e. a functor `F(H) -> F(G)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathMap {
    vertices: Vec<VertexId>,
    edges: Vec<Path>,
}

impl PathMap {
    fn new(
        map: &'static str,
        h: &FinGraph,
        g: &FinGraph,
        vertices: Vec<VertexId>,
        edges: Vec<Path>,
    ) -> Result<PathMap, PresentationError> {
        if vertices.len() != h.vertex_count() {
            return Err(PresentationError::Arity {
                map,
                cells: "vertices",
                expected: h.vertex_count(),
                found: vertices.len(),
            });
        }
        if edges.len() != h.edge_count() {
            return Err(PresentationError::Arity {
                map,
                cells: "edges",
                expected: h.edge_count(),
                found: edges.len(),
            });
        }
        if vertices.iter().any(|v| v.0 >= g.vertex_count())
            || edges
                .iter()
                .any(|p| p.start().0 >= g.vertex_count() || p.edges().iter().any(|e| e.0 >= g.edge_count()))
        {
            return Err(GraphError::OutOfRange(map).into());
        }
        for e in h.edges() {
            let p = &edges[e.0];
            Path::new(g, p.start(), p.edges().to_vec())?;
            if p.start() != vertices[h.src(e).0] || p.end(g) != vertices[h.tgt(e).0] {
                return Err(PresentationError::EndpointMismatch {
                    map,
                    edge: h.edge_name(e).to_string(),
                });
            }
        }
        Ok(PathMap { vertices, edges })
    }

    pub fn vertex(&self, v: VertexId) -> VertexId {
        self.vertices[v.0]
    }

    pub fn edge(&self, e: EdgeId) -> &Path {
        &self.edges[e.0]
    }

    pub fn vertex_map(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edge_map(&self) -> &[Path] {
        &self.edges
    }

    /// Every edge sent to a path of length one.
    pub fn from_graph_morphism(m: &GraphMorphism) -> PathMap {
        PathMap {
            vertices: m.vertex_map().to_vec(),
            edges: m
                .edge_map()
                .iter()
                .map(|&e| Path::single(m.cod(), e))
                .collect(),
        }
    }

    /// Postcomposition with a graph morphism out of `G`.
    pub fn then(&self, m: &GraphMorphism) -> PathMap {
        PathMap {
            vertices: self.vertices.iter().map(|&v| m.vertex(v)).collect(),
            edges: self.edges.iter().map(|p| p.map(m)).collect(),
        }
    }
}

/// `F(H) ⇉ F(G)` given by `alpha` and `beta`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    relations: Arc<FinGraph>,
    generators: Arc<FinGraph>,
    alpha: PathMap,
    beta: PathMap,
}

fn check_generator_names(g: &FinGraph) -> Result<(), PresentationError> {
    match g
        .edge_names()
        .iter()
        .find(|e| e.contains('.') || e.starts_with("id("))
    {
        Some(bad) => Err(PresentationError::ReservedName(bad.clone())),
        None => Ok(()),
    }
}

/// Vertex and edge assignments by name, as used by [`Presentation::from_names`].
pub type NamedMap<'a> = (&'a [(&'a str, &'a str)], &'a [(&'a str, &'a str)]);

impl Presentation {
    pub fn new(
        relations: Arc<FinGraph>,
        generators: Arc<FinGraph>,
        alpha: (Vec<VertexId>, Vec<Path>),
        beta: (Vec<VertexId>, Vec<Path>),
    ) -> Result<Presentation, PresentationError> {
        check_generator_names(&generators)?;
        let alpha = PathMap::new("alpha", &relations, &generators, alpha.0, alpha.1)?;
        let beta = PathMap::new("beta", &relations, &generators, beta.0, beta.1)?;
        Ok(Presentation {
            relations,
            generators,
            alpha,
            beta,
        })
    }

    /// Builds a presentation from cell names and path strings. Each list
    /// gives `(cell of H, image)`; every cell of `H` must appear once.
    pub fn from_names(
        relations: Arc<FinGraph>,
        generators: Arc<FinGraph>,
        alpha: NamedMap,
        beta: NamedMap,
    ) -> Result<Presentation, PresentationError> {
        let resolve = |map: &'static str, (vs, es): NamedMap| {
            let mut vertices = vec![None; relations.vertex_count()];
            for &(h, g) in vs {
                let hv = relations
                    .vertex_id(h)
                    .ok_or_else(|| PresentationError::Path(PathError::UnknownVertex(h.into())))?;
                let gv = generators
                    .vertex_id(g)
                    .ok_or_else(|| PresentationError::Path(PathError::UnknownVertex(g.into())))?;
                vertices[hv.0] = Some(gv);
            }
            let mut edges = vec![None; relations.edge_count()];
            for &(h, p) in es {
                let he = relations
                    .edge_id(h)
                    .ok_or_else(|| PresentationError::Path(PathError::UnknownEdge(h.into())))?;
                edges[he.0] = Some(Path::parse(&generators, p)?);
            }
            let count = |found: usize, expected: usize, cells| PresentationError::Arity {
                map,
                cells,
                expected,
                found,
            };
            let nv = vertices.iter().flatten().count();
            let vertices: Vec<VertexId> = vertices
                .into_iter()
                .collect::<Option<_>>()
                .ok_or_else(|| count(nv, relations.vertex_count(), "vertices"))?;
            let ne = edges.iter().flatten().count();
            let edges: Vec<Path> = edges
                .into_iter()
                .collect::<Option<_>>()
                .ok_or_else(|| count(ne, relations.edge_count(), "edges"))?;
            Ok::<_, PresentationError>((vertices, edges))
        };
        let a = resolve("alpha", alpha)?;
        let b = resolve("beta", beta)?;
        Presentation::new(relations.clone(), generators.clone(), a, b)
    }

    /// No relations: the coequalizer is `F(G)` itself.
    pub fn free(generators: Arc<FinGraph>) -> Result<Presentation, PresentationError> {
        let empty = Arc::new(FinGraph::empty());
        Presentation::new(empty, generators, (vec![], vec![]), (vec![], vec![]))
    }

    pub fn relations(&self) -> &Arc<FinGraph> {
        &self.relations
    }

    pub fn generators(&self) -> &Arc<FinGraph> {
        &self.generators
    }

    pub fn alpha(&self) -> &PathMap {
        &self.alpha
    }

    pub fn beta(&self) -> &PathMap {
        &self.beta
    }
}
