use std::cmp::Ordering;

use thiserror::Error;

use crate::graphs::{EdgeId, FinGraph, GraphMorphism, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("edges `{0}` and `{1}` are not composable")]
    NotComposable(String, String),
    #[error("malformed path `{0}`")]
    Malformed(String),
}

/// A path in a graph: a start vertex and a composable edge sequence. The
/// empty path is the identity at `start`.
///
/// Paths order shortest first, then lexicographically by edges (edge ids
/// follow name order), then by start vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    start: VertexId,
    edges: Vec<EdgeId>,
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.edges
            .len()
            .cmp(&other.edges.len())
            .then_with(|| self.edges.cmp(&other.edges))
            .then_with(|| self.start.cmp(&other.start))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Path {
    pub fn identity(v: VertexId) -> Path {
        Path {
            start: v,
            edges: Vec::new(),
        }
    }

    pub fn single(g: &FinGraph, e: EdgeId) -> Path {
        Path {
            start: g.src(e),
            edges: vec![e],
        }
    }

    pub fn new(g: &FinGraph, start: VertexId, edges: Vec<EdgeId>) -> Result<Path, PathError> {
        let mut at = start;
        for (i, &e) in edges.iter().enumerate() {
            if g.src(e) != at {
                let prev = if i == 0 {
                    format!("id({})", g.vertex_name(start))
                } else {
                    g.edge_name(edges[i - 1]).to_string()
                };
                return Err(PathError::NotComposable(prev, g.edge_name(e).to_string()));
            }
            at = g.tgt(e);
        }
        Ok(Path { start, edges })
    }

    /// A nonempty composable edge sequence; the start is the first source.
    pub fn from_edges(g: &FinGraph, edges: Vec<EdgeId>) -> Result<Path, PathError> {
        let start = match edges.first() {
            Some(&e) => g.src(e),
            None => return Err(PathError::Malformed(String::new())),
        };
        Path::new(g, start, edges)
    }

    pub(crate) fn new_unchecked(start: VertexId, edges: Vec<EdgeId>) -> Path {
        Path { start, edges }
    }

    pub fn start(&self) -> VertexId {
        self.start
    }

    pub fn end(&self, g: &FinGraph) -> VertexId {
        self.edges.last().map_or(self.start, |&e| g.tgt(e))
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// `self` followed by `next`, if the endpoints match.
    pub fn concat(&self, next: &Path, g: &FinGraph) -> Option<Path> {
        if self.end(g) != next.start {
            return None;
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&next.edges);
        Some(Path {
            start: self.start,
            edges,
        })
    }

    pub fn push(&self, e: EdgeId) -> Path {
        let mut edges = self.edges.clone();
        edges.push(e);
        Path {
            start: self.start,
            edges,
        }
    }

    /// Image under a graph morphism, edge by edge.
    pub fn map(&self, m: &GraphMorphism) -> Path {
        Path {
            start: m.vertex(self.start),
            edges: self.edges.iter().map(|&e| m.edge(e)).collect(),
        }
    }

    /// `id(v)` for the empty path, otherwise edge names joined by `.`.
    pub fn display(&self, g: &FinGraph) -> String {
        if self.edges.is_empty() {
            format!("id({})", g.vertex_name(self.start))
        } else {
            let names: Vec<&str> = self.edges.iter().map(|&e| g.edge_name(e)).collect();
            names.join(".")
        }
    }

    /// Parses `id(v)` or `e1.e2...` against `g`.
    pub fn parse(g: &FinGraph, text: &str) -> Result<Path, PathError> {
        let text = text.trim();
        if let Some(inner) = text.strip_prefix("id(").and_then(|t| t.strip_suffix(')')) {
            return g
                .vertex_id(inner)
                .map(Path::identity)
                .ok_or_else(|| PathError::UnknownVertex(inner.to_string()));
        }
        if text.is_empty() {
            return Err(PathError::Malformed(text.to_string()));
        }
        let edges = text
            .split('.')
            .map(|name| {
                if name.is_empty() {
                    return Err(PathError::Malformed(text.to_string()));
                }
                g.edge_id(name)
                    .ok_or_else(|| PathError::UnknownEdge(name.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Path::from_edges(g, edges)
    }
}
