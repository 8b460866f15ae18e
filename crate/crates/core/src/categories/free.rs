//! The free category on a graph and the adjunction transpose.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use super::{CategoryError, FinCategory, Functor, MorId, ObjId, Path, PathError};
use crate::graphs::{EdgeId, FinGraph, GraphMorphism, VertexId};

/// Paths of bounded length, with a flag recording whether longer paths
/// exist.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreePaths {
    pub paths: Vec<Path>,
    pub truncated: bool,
}

/// All paths of length at most `max_len`, shortest first and
/// lexicographic within a length.
pub fn free_paths(g: &FinGraph, max_len: usize) -> FreePaths {
    free_paths_capped(g, max_len, usize::MAX).expect("uncapped")
}

/// As [`free_paths`], giving up with `Err(count)` once more than `cap`
/// paths have been produced.
pub fn free_paths_capped(g: &FinGraph, max_len: usize, cap: usize) -> Result<FreePaths, usize> {
    let mut paths: Vec<Path> = g.vertices().map(Path::identity).collect();
    if paths.len() > cap {
        return Err(paths.len());
    }
    let mut level_start = 0;
    for _ in 0..max_len {
        let level_end = paths.len();
        for i in level_start..level_end {
            let end = paths[i].end(g);
            let base = if paths[i].is_empty() {
                None
            } else {
                Some(paths[i].clone())
            };
            for e in g.out_edges(end) {
                let next = match &base {
                    Some(p) => p.push(e),
                    None => Path::single(g, e),
                };
                paths.push(next);
                if paths.len() > cap {
                    return Err(paths.len());
                }
            }
        }
        // Length-0 paths are ordered by start; longer ones by edges.
        paths[level_end..].sort();
        level_start = level_end;
    }
    let truncated = paths[level_start..]
        .iter()
        .any(|p| g.out_edges(p.end(g)).next().is_some());
    Ok(FreePaths { paths, truncated })
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum FreeCategoryError {
    #[error("graph has a directed cycle ({}); its free category is infinite", .cycle.join(" -> "))]
    Cyclic { cycle: Vec<String> },
    #[error("edge name `{0}` collides with path notation")]
    ReservedName(String),
}

/// A directed cycle as an edge sequence, if one exists.
pub fn find_cycle(g: &FinGraph) -> Option<Vec<EdgeId>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    fn visit(
        g: &FinGraph,
        v: VertexId,
        marks: &mut [Mark],
        stack: &mut Vec<EdgeId>,
    ) -> Option<Vec<EdgeId>> {
        marks[v.0] = Mark::Active;
        for e in g.out_edges(v) {
            let w = g.tgt(e);
            match marks[w.0] {
                Mark::Active => {
                    let from = stack
                        .iter()
                        .position(|&s| g.src(s) == w)
                        .unwrap_or(stack.len());
                    let mut cycle = stack[from..].to_vec();
                    cycle.push(e);
                    return Some(cycle);
                }
                Mark::New => {
                    stack.push(e);
                    if let Some(c) = visit(g, w, marks, stack) {
                        return Some(c);
                    }
                    stack.pop();
                }
                Mark::Done => {}
            }
        }
        marks[v.0] = Mark::Done;
        None
    }
    let mut marks = vec![Mark::New; g.vertex_count()];
    for v in g.vertices() {
        if marks[v.0] == Mark::New {
            if let Some(c) = visit(g, v, &mut marks, &mut Vec::new()) {
                return Some(c);
            }
        }
    }
    None
}

fn check_names(g: &FinGraph) -> Result<(), FreeCategoryError> {
    match g
        .edge_names()
        .iter()
        .find(|e| e.contains('.') || e.starts_with("id("))
    {
        Some(bad) => Err(FreeCategoryError::ReservedName(bad.clone())),
        None => Ok(()),
    }
}

/// The free category on an acyclic graph. Morphisms are named `id(v)` and
/// `e1.e2...` in traversal order.
pub fn free_category(g: &FinGraph) -> Result<FinCategory, FreeCategoryError> {
    check_names(g)?;
    if let Some(cycle) = find_cycle(g) {
        return Err(FreeCategoryError::Cyclic {
            cycle: cycle.iter().map(|&e| g.edge_name(e).to_string()).collect(),
        });
    }
    let all = free_paths(g, g.vertex_count()).paths;
    let names: Vec<String> = all.iter().map(|p| p.display(g)).collect();
    let edges = all
        .iter()
        .zip(&names)
        .map(|(p, n)| {
            (
                n.clone(),
                g.vertex_name(p.start()).to_string(),
                g.vertex_name(p.end(g)).to_string(),
            )
        })
        .collect();
    let graph = Arc::new(
        FinGraph::new(g.vertex_names().to_vec(), edges).expect("path names are distinct"),
    );
    let index: HashMap<&Path, MorId> = all
        .iter()
        .zip(&names)
        .map(|(p, n)| (p, graph.edge_id(n).unwrap()))
        .collect();
    let ids = g
        .vertices()
        .map(|v| index[&Path::identity(v)])
        .collect();
    let mut comp = Vec::new();
    for p in &all {
        for q in &all {
            if let Some(pq) = p.concat(q, g) {
                comp.push((index[p], index[q], index[&pq]));
            }
        }
    }
    Ok(FinCategory::new(graph, ids, comp).expect("free category satisfies the laws"))
}

/// The path named by a morphism of `free_category(g)`.
pub fn free_morphism_path(g: &FinGraph, free: &FinCategory, m: MorId) -> Result<Path, PathError> {
    Path::parse(g, free.morphism_name(m))
}

/// A graph morphism `G -> U(C)` extended multiplicatively to all paths of
/// `G`: the transpose `F(G) -> C` under the free/forgetful adjunction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathAssignment {
    source: Arc<FinGraph>,
    target: Arc<FinCategory>,
    omap: Vec<ObjId>,
    emap: Vec<MorId>,
}

pub fn transpose_to_functor(
    phi: &GraphMorphism,
    c: &Arc<FinCategory>,
) -> Result<PathAssignment, CategoryError> {
    if **phi.cod() != **c.graph() {
        return Err(CategoryError::Mismatch);
    }
    Ok(PathAssignment {
        source: phi.dom().clone(),
        target: c.clone(),
        omap: phi.vertex_map().to_vec(),
        emap: phi.edge_map().to_vec(),
    })
}

impl PathAssignment {
    pub fn source(&self) -> &Arc<FinGraph> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCategory> {
        &self.target
    }

    pub fn object(&self, v: VertexId) -> ObjId {
        self.omap[v.0]
    }

    /// Composite of the images of the path's edges; identity on empty paths.
    pub fn apply(&self, p: &Path) -> MorId {
        let c = &self.target;
        p.edges()
            .iter()
            .fold(c.id(self.omap[p.start().0]), |acc, &e| {
                c.compose(acc, self.emap[e.0]).expect("images are composable")
            })
    }

    /// The restriction to generators, inverse to [`transpose_to_functor`].
    pub fn restrict(&self) -> GraphMorphism {
        GraphMorphism::new_unchecked(
            self.source.clone(),
            self.target.graph().clone(),
            self.omap.clone(),
            self.emap.clone(),
        )
    }

    /// The functor `free -> C`, where `free = free_category(source)`.
    pub fn to_functor(&self, free: &Arc<FinCategory>) -> Result<Functor, CategoryError> {
        let mmap = free
            .morphisms()
            .map(|m| {
                free_morphism_path(&self.source, free, m)
                    .map(|p| self.apply(&p))
                    .map_err(|_| CategoryError::Mismatch)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Functor::new(free.clone(), self.target.clone(), self.omap.clone(), mmap)
    }
}

/// Restricts a functor out of `free_category(g)` to the generating graph.
pub fn restrict_to_generators(
    functor: &Functor,
    g: &Arc<FinGraph>,
) -> Result<GraphMorphism, CategoryError> {
    let free = functor.dom();
    if free.graph().vertex_names() != g.vertex_names() {
        return Err(CategoryError::Mismatch);
    }
    let emap = g
        .edges()
        .map(|e| {
            free.morphism_id(g.edge_name(e))
                .map(|m| functor.morphism(m))
                .ok_or(CategoryError::Mismatch)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let vmap = g.vertices().map(|v| functor.object(v)).collect();
    Ok(GraphMorphism::new(
        g.clone(),
        functor.cod().graph().clone(),
        vmap,
        emap,
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::path_graph;

    fn single_loop() -> FinGraph {
        FinGraph::builder()
            .vertex("v")
            .edge("u", "v", "v")
            .build()
            .unwrap()
    }

    #[test]
    fn free_paths_examples() {
        let fp = free_paths(&path_graph(1), 3);
        assert_eq!(fp.paths.len(), 3);
        assert!(!fp.truncated);
        let fp = free_paths(&single_loop(), 4);
        assert_eq!(fp.paths.len(), 5);
        assert!(fp.truncated);
        let discrete = FinGraph::builder().vertices(["a", "b"]).build().unwrap();
        let fp = free_paths(&discrete, 7);
        assert_eq!(fp.paths.len(), 2);
        assert!(!fp.truncated);
        assert!(free_paths(&path_graph(1), 0).truncated);
    }

    #[test]
    fn free_paths_are_sorted() {
        let g = path_graph(3);
        let fp = free_paths(&g, 3);
        let mut sorted = fp.paths.clone();
        sorted.sort();
        assert_eq!(fp.paths, sorted);
        assert_eq!(fp.paths.len(), 4 + 3 + 2 + 1);
    }

    #[test]
    fn free_category_examples() {
        let c = free_category(&path_graph(1)).unwrap();
        assert_eq!((c.object_count(), c.morphism_count()), (2, 3));
        let square = FinGraph::builder()
            .vertices(["a", "b", "c", "d"])
            .edge("f", "a", "b")
            .edge("h", "a", "c")
            .edge("g", "b", "d")
            .edge("k", "c", "d")
            .build()
            .unwrap();
        let c = free_category(&square).unwrap();
        assert_eq!(c.morphism_count(), 10);
        assert!(c.morphism_id("f.g").is_some());
        assert_eq!(
            free_category(&single_loop()),
            Err(FreeCategoryError::Cyclic {
                cycle: vec!["u".into()]
            })
        );
    }

    #[test]
    fn cycle_witness_is_a_cycle() {
        let g = FinGraph::builder()
            .vertices(["a", "b", "c"])
            .edge("x", "a", "b")
            .edge("y", "b", "c")
            .edge("z", "c", "b")
            .build()
            .unwrap();
        let cycle = find_cycle(&g).unwrap();
        let names: Vec<&str> = cycle.iter().map(|&e| g.edge_name(e)).collect();
        assert_eq!(names, ["y", "z"]);
    }

    #[test]
    fn transpose_roundtrip_on_inclusion_of_generators() {
        let g = Arc::new(path_graph(2));
        let free = Arc::new(free_category(&g).unwrap());
        let identity = Functor::identity(free.clone());
        let restricted = restrict_to_generators(&identity, &g).unwrap();
        let back = transpose_to_functor(&restricted, &free)
            .unwrap()
            .to_functor(&free)
            .unwrap();
        assert_eq!(back, identity);
    }
}
