//! Finite categories, functors, paths and free categories.
//!
//! Composition follows the diagrammatic convention used for models:
//! `compose(f, g)` is `g ∘ f` and is defined exactly when `tgt(f) = src(g)`.

mod free;
mod functor;
mod path;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::graphs::{self, EdgeId, FinGraph, GraphError, VertexId};

pub use free::{
    find_cycle, free_category, free_morphism_path, free_paths, free_paths_capped,
    restrict_to_generators, transpose_to_functor, FreeCategoryError, FreePaths, PathAssignment,
};
pub use functor::{
    enumerate_functors, enumerate_functors_limited, find_category_isomorphism,
    functor_search_space, Functor, SearchSpaceTooLarge,
};
pub use path::{Path, PathError};

pub type ObjId = VertexId;
pub type MorId = EdgeId;

/// The category laws checked on construction, in checking order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Law {
    IdentityEndpoints,
    NonComposablePair,
    ConflictingComposite,
    MissingComposite,
    CompositeEndpoints,
    LeftUnit,
    RightUnit,
    Associativity,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Law::IdentityEndpoints => "identity-endpoints",
            Law::NonComposablePair => "non-composable-pair",
            Law::ConflictingComposite => "conflicting-composite",
            Law::MissingComposite => "missing-composite",
            Law::CompositeEndpoints => "composite-endpoints",
            Law::LeftUnit => "left-unit",
            Law::RightUnit => "right-unit",
            Law::Associativity => "associativity",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{law} fails at ({})", .witness.join(", "))]
    Law { law: Law, witness: Vec<String> },
    #[error("identity table has {found} entries for {expected} objects")]
    IdentityArity { expected: usize, found: usize },
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("functor does not preserve {what} at `{at}`")]
    NotFunctorial { what: &'static str, at: String },
    #[error("categories do not match")]
    Mismatch,
}

/// A finite category stored over its underlying graph: objects are the
/// vertices and morphisms (identities included) are the edges.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinCategory {
    graph: Arc<FinGraph>,
    ids: Vec<MorId>,
    /// Row-major `f * n + g` holds `g ∘ f`.
    comp: Vec<Option<MorId>>,
}

impl fmt::Debug for FinCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let table: Vec<String> = self
            .composable_pairs()
            .map(|(a, b)| {
                format!(
                    "{} . {} = {}",
                    self.morphism_name(b),
                    self.morphism_name(a),
                    self.morphism_name(self.compose(a, b).unwrap())
                )
            })
            .collect();
        f.debug_struct("FinCategory")
            .field("graph", &self.graph)
            .field("comp", &table)
            .finish()
    }
}

impl FinCategory {
    /// Validates and builds a category. `comp` holds `(f, g, h)` with
    /// `g ∘ f = h`.
    pub fn new(
        graph: Arc<FinGraph>,
        ids: Vec<MorId>,
        comp: impl IntoIterator<Item = (MorId, MorId, MorId)>,
    ) -> Result<FinCategory, CategoryError> {
        let n = graph.edge_count();
        if ids.len() != graph.vertex_count() {
            return Err(CategoryError::IdentityArity {
                expected: graph.vertex_count(),
                found: ids.len(),
            });
        }
        if ids.iter().any(|m| m.0 >= n) {
            return Err(GraphError::OutOfRange("identities").into());
        }
        let name = |m: MorId| graph.edge_name(m).to_string();
        let oname = |o: ObjId| graph.vertex_name(o).to_string();
        let law = |law, witness: Vec<String>| Err(CategoryError::Law { law, witness });

        for a in graph.vertices() {
            let i = ids[a.0];
            if graph.src(i) != a || graph.tgt(i) != a {
                return law(Law::IdentityEndpoints, vec![oname(a), name(i)]);
            }
        }
        let mut table = vec![None; n * n];
        for (f, g, h) in comp {
            if f.0 >= n || g.0 >= n || h.0 >= n {
                return Err(GraphError::OutOfRange("composition").into());
            }
            if graph.tgt(f) != graph.src(g) {
                return law(Law::NonComposablePair, vec![name(f), name(g)]);
            }
            match table[f.0 * n + g.0] {
                Some(prev) if prev != h => {
                    return law(
                        Law::ConflictingComposite,
                        vec![name(f), name(g), name(prev), name(h)],
                    )
                }
                _ => table[f.0 * n + g.0] = Some(h),
            }
        }
        let cat = FinCategory {
            graph: graph.clone(),
            ids,
            comp: table,
        };
        for (f, g) in cat.composable_pairs_unchecked() {
            match cat.comp[f.0 * n + g.0] {
                None => return law(Law::MissingComposite, vec![name(f), name(g)]),
                Some(h) => {
                    if graph.src(h) != graph.src(f) || graph.tgt(h) != graph.tgt(g) {
                        return law(Law::CompositeEndpoints, vec![name(f), name(g), name(h)]);
                    }
                }
            }
        }
        for f in graph.edges() {
            let left = cat.ids[graph.src(f).0];
            if cat.get(left, f) != f {
                return law(Law::LeftUnit, vec![name(left), name(f)]);
            }
            let right = cat.ids[graph.tgt(f).0];
            if cat.get(f, right) != f {
                return law(Law::RightUnit, vec![name(f), name(right)]);
            }
        }
        for (f, g) in cat.composable_pairs_unchecked() {
            let fg = cat.get(f, g);
            for h in graph.out_edges(graph.tgt(g)) {
                if cat.get(fg, h) != cat.get(f, cat.get(g, h)) {
                    return law(Law::Associativity, vec![name(f), name(g), name(h)]);
                }
            }
        }
        Ok(cat)
    }

    /// Builds a category from names. `comp` entries `(f, g, h)` mean
    /// `g ∘ f = h`.
    pub fn from_names(
        graph: Arc<FinGraph>,
        ids: &[(&str, &str)],
        comp: &[(&str, &str, &str)],
    ) -> Result<FinCategory, CategoryError> {
        let obj = |o: &str| {
            graph
                .vertex_id(o)
                .ok_or_else(|| CategoryError::UnknownObject(o.to_string()))
        };
        let mor = |m: &str| {
            graph
                .edge_id(m)
                .ok_or_else(|| CategoryError::UnknownMorphism(m.to_string()))
        };
        let mut table = vec![None; graph.vertex_count()];
        for (o, m) in ids {
            table[obj(o)?.0] = Some(mor(m)?);
        }
        let found = table.iter().filter(|m| m.is_some()).count();
        let ids: Vec<MorId> = table
            .into_iter()
            .collect::<Option<_>>()
            .ok_or(CategoryError::IdentityArity {
                expected: graph.vertex_count(),
                found,
            })?;
        let comp = comp
            .iter()
            .map(|(f, g, h)| Ok((mor(f)?, mor(g)?, mor(h)?)))
            .collect::<Result<Vec<_>, CategoryError>>()?;
        FinCategory::new(graph, ids, comp)
    }

    /// The discrete category on the given objects, identities named `id(x)`.
    pub fn discrete<I, S>(objects: I) -> FinCategory
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let objects: Vec<String> = objects.into_iter().map(Into::into).collect();
        let edges = objects
            .iter()
            .map(|o| (format!("id({o})"), o.clone(), o.clone()))
            .collect();
        let graph = Arc::new(FinGraph::new(objects, edges).expect("discrete category"));
        FinCategory::with_identity_loops(graph)
    }

    fn with_identity_loops(graph: Arc<FinGraph>) -> FinCategory {
        let ids: Vec<MorId> = graph
            .vertices()
            .map(|v| graph.out_edges(v).next().expect("identity loop"))
            .collect();
        let comp: Vec<_> = ids.iter().map(|&i| (i, i, i)).collect();
        FinCategory::new(graph, ids, comp).expect("discrete category")
    }

    pub fn terminal() -> FinCategory {
        FinCategory::discrete(["*"])
    }

    /// Disjoint union, named as in [`graphs::coproduct`].
    pub fn coproduct(a: &FinCategory, b: &FinCategory) -> FinCategory {
        let sum = graphs::coproduct(&a.graph, &b.graph);
        let mut ids = vec![EdgeId(0); sum.apex.vertex_count()];
        let mut comp = Vec::new();
        for (cat, inj) in [(a, &sum.left), (b, &sum.right)] {
            for o in cat.objects() {
                ids[inj.vertex(o).0] = inj.edge(cat.id(o));
            }
            for (f, g) in cat.composable_pairs() {
                comp.push((inj.edge(f), inj.edge(g), inj.edge(cat.get(f, g))));
            }
        }
        FinCategory::new(sum.apex.clone(), ids, comp).expect("coproduct of categories")
    }

    /// The underlying graph: all morphisms, identities included.
    pub fn graph(&self) -> &Arc<FinGraph> {
        &self.graph
    }

    pub fn object_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn morphism_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn objects(&self) -> impl DoubleEndedIterator<Item = ObjId> + ExactSizeIterator {
        self.graph.vertices()
    }

    pub fn morphisms(&self) -> impl DoubleEndedIterator<Item = MorId> + ExactSizeIterator {
        self.graph.edges()
    }

    pub fn object_name(&self, o: ObjId) -> &str {
        self.graph.vertex_name(o)
    }

    pub fn morphism_name(&self, m: MorId) -> &str {
        self.graph.edge_name(m)
    }

    pub fn object_id(&self, name: &str) -> Option<ObjId> {
        self.graph.vertex_id(name)
    }

    pub fn morphism_id(&self, name: &str) -> Option<MorId> {
        self.graph.edge_id(name)
    }

    pub fn src(&self, m: MorId) -> ObjId {
        self.graph.src(m)
    }

    pub fn tgt(&self, m: MorId) -> ObjId {
        self.graph.tgt(m)
    }

    pub fn id(&self, o: ObjId) -> MorId {
        self.ids[o.0]
    }

    pub fn identities(&self) -> &[MorId] {
        &self.ids
    }

    pub fn is_identity(&self, m: MorId) -> bool {
        self.ids[self.src(m).0] == m
    }

    /// `g ∘ f`, if `tgt(f) = src(g)`.
    pub fn compose(&self, f: MorId, g: MorId) -> Option<MorId> {
        self.comp[f.0 * self.morphism_count() + g.0]
    }

    fn get(&self, f: MorId, g: MorId) -> MorId {
        self.compose(f, g).expect("composable pair")
    }

    fn composable_pairs_unchecked(&self) -> impl Iterator<Item = (MorId, MorId)> + '_ {
        self.graph
            .edges()
            .flat_map(move |f| self.graph.out_edges(self.graph.tgt(f)).map(move |g| (f, g)))
    }

    /// All `(f, g)` with `tgt(f) = src(g)`, in canonical order.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (MorId, MorId)> + '_ {
        self.composable_pairs_unchecked()
    }

    /// Two-sided inverse of `f`, if one exists.
    pub fn inverse(&self, f: MorId) -> Option<MorId> {
        let (a, b) = (self.src(f), self.tgt(f));
        self.graph
            .edges_between(b, a)
            .find(|&g| self.get(f, g) == self.id(a) && self.get(g, f) == self.id(b))
    }

    pub fn is_groupoid(&self) -> bool {
        self.morphisms().all(|f| self.inverse(f).is_some())
    }

    /// Morphism index keyed by name, for callers resolving many names.
    pub fn morphism_index(&self) -> HashMap<&str, MorId> {
        self.morphisms().map(|m| (self.morphism_name(m), m)).collect()
    }
}

/// The underlying graph of a category (the forgetful functor on objects).
pub fn underlying_graph(c: &FinCategory) -> Arc<FinGraph> {
    c.graph().clone()
}
