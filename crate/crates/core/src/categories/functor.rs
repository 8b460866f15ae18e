use std::ops::ControlFlow;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use super::{CategoryError, FinCategory, MorId, ObjId};
use crate::graphs::GraphMorphism;

/// A functor between finite categories.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Functor {
    dom: Arc<FinCategory>,
    cod: Arc<FinCategory>,
    omap: Vec<ObjId>,
    mmap: Vec<MorId>,
}

impl Functor {
    pub fn new(
        dom: Arc<FinCategory>,
        cod: Arc<FinCategory>,
        omap: Vec<ObjId>,
        mmap: Vec<MorId>,
    ) -> Result<Functor, CategoryError> {
        // Endpoint preservation is the graph-morphism condition.
        GraphMorphism::new(dom.graph().clone(), cod.graph().clone(), omap.clone(), mmap.clone())?;
        for o in dom.objects() {
            if mmap[dom.id(o).0] != cod.id(omap[o.0]) {
                return Err(CategoryError::NotFunctorial {
                    what: "identities",
                    at: dom.object_name(o).to_string(),
                });
            }
        }
        for (f, g) in dom.composable_pairs() {
            let h = dom.compose(f, g).expect("composable");
            if cod.compose(mmap[f.0], mmap[g.0]) != Some(mmap[h.0]) {
                return Err(CategoryError::NotFunctorial {
                    what: "composition",
                    at: format!("{} . {}", dom.morphism_name(g), dom.morphism_name(f)),
                });
            }
        }
        Ok(Functor {
            dom,
            cod,
            omap,
            mmap,
        })
    }

    pub fn from_graph_morphism(
        dom: Arc<FinCategory>,
        cod: Arc<FinCategory>,
        m: &GraphMorphism,
    ) -> Result<Functor, CategoryError> {
        Functor::new(dom, cod, m.vertex_map().to_vec(), m.edge_map().to_vec())
    }

    pub fn identity(c: Arc<FinCategory>) -> Functor {
        Functor {
            omap: c.objects().collect(),
            mmap: c.morphisms().collect(),
            dom: c.clone(),
            cod: c,
        }
    }

    pub fn dom(&self) -> &Arc<FinCategory> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FinCategory> {
        &self.cod
    }

    pub fn object(&self, o: ObjId) -> ObjId {
        self.omap[o.0]
    }

    pub fn morphism(&self, m: MorId) -> MorId {
        self.mmap[m.0]
    }

    pub fn object_map(&self) -> &[ObjId] {
        &self.omap
    }

    pub fn morphism_map(&self) -> &[MorId] {
        &self.mmap
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Functor) -> Result<Functor, CategoryError> {
        if self.cod != next.dom {
            return Err(CategoryError::Mismatch);
        }
        Ok(Functor {
            dom: self.dom.clone(),
            cod: next.cod.clone(),
            omap: self.omap.iter().map(|o| next.omap[o.0]).collect(),
            mmap: self.mmap.iter().map(|m| next.mmap[m.0]).collect(),
        })
    }

    /// The underlying graph morphism.
    pub fn as_graph_morphism(&self) -> GraphMorphism {
        GraphMorphism::new_unchecked(
            self.dom.graph().clone(),
            self.cod.graph().clone(),
            self.omap.clone(),
            self.mmap.clone(),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error, Serialize)]
#[error("search space of {cardinality} candidates exceeds the limit of {limit}")]
pub struct SearchSpaceTooLarge {
    pub cardinality: u128,
    pub limit: u128,
}

/// Upper bound on raw functor candidates: object maps times morphism
/// choices for every non-identity morphism.
pub fn functor_search_space(c: &FinCategory, d: &FinCategory) -> u128 {
    let objects = (d.object_count() as u128).saturating_pow(c.object_count() as u32);
    let free = c.morphisms().filter(|&m| !c.is_identity(m)).count() as u32;
    objects.saturating_mul((d.morphism_count() as u128).saturating_pow(free))
}

struct FunctorSearch<'a> {
    c: &'a FinCategory,
    d: &'a FinCategory,
    bijective: bool,
    order: Vec<MorId>,
    /// Composition constraints `(f, g, h)` checked once the last of the
    /// three non-identity morphisms in `order` is assigned.
    checks: Vec<Vec<(MorId, MorId, MorId)>>,
    omap: Vec<ObjId>,
    mmap: Vec<Option<MorId>>,
    oused: Vec<bool>,
    mused: Vec<bool>,
}

impl<'a> FunctorSearch<'a> {
    fn new(c: &'a FinCategory, d: &'a FinCategory, bijective: bool) -> Self {
        let order: Vec<MorId> = c.morphisms().filter(|&m| !c.is_identity(m)).collect();
        let mut pos = vec![None; c.morphism_count()];
        for (i, m) in order.iter().enumerate() {
            pos[m.0] = Some(i);
        }
        let mut checks = vec![Vec::new(); order.len()];
        for (f, g) in c.composable_pairs() {
            let h = c.compose(f, g).expect("composable");
            let last = [f, g, h].iter().filter_map(|m| pos[m.0]).max();
            if let Some(last) = last {
                checks[last].push((f, g, h));
            }
        }
        FunctorSearch {
            c,
            d,
            bijective,
            order,
            checks,
            omap: Vec::with_capacity(c.object_count()),
            mmap: vec![None; c.morphism_count()],
            oused: vec![false; d.object_count()],
            mused: vec![false; d.morphism_count()],
        }
    }

    fn objects<F: FnMut(&[ObjId], &[MorId]) -> ControlFlow<()>>(
        &mut self,
        visit: &mut F,
    ) -> ControlFlow<()> {
        let k = self.omap.len();
        if k == self.c.object_count() {
            for o in self.c.objects() {
                let image = self.d.id(self.omap[o.0]);
                self.mmap[self.c.id(o).0] = Some(image);
                self.mused[image.0] = true;
            }
            let flow = self.morphisms(0, visit);
            for o in self.c.objects() {
                self.mmap[self.c.id(o).0] = None;
                self.mused[self.d.id(self.omap[o.0]).0] = false;
            }
            return flow;
        }
        for w in self.d.objects() {
            if self.bijective && self.oused[w.0] {
                continue;
            }
            self.oused[w.0] = true;
            self.omap.push(w);
            let flow = self.objects(visit);
            self.omap.pop();
            self.oused[w.0] = false;
            flow?;
        }
        ControlFlow::Continue(())
    }

    fn morphisms<F: FnMut(&[ObjId], &[MorId]) -> ControlFlow<()>>(
        &mut self,
        k: usize,
        visit: &mut F,
    ) -> ControlFlow<()> {
        if k == self.order.len() {
            let mmap: Vec<MorId> = self.mmap.iter().map(|m| m.expect("assigned")).collect();
            return visit(&self.omap, &mmap);
        }
        let m = self.order[k];
        let (s, t) = (self.omap[self.c.src(m).0], self.omap[self.c.tgt(m).0]);
        let candidates: Vec<MorId> = self.d.graph().edges_between(s, t).collect();
        for x in candidates {
            if self.bijective && self.mused[x.0] {
                continue;
            }
            self.mmap[m.0] = Some(x);
            let ok = self.checks[k].iter().all(|&(f, g, h)| {
                let img = |m: MorId| self.mmap[m.0].expect("assigned");
                self.d.compose(img(f), img(g)) == Some(img(h))
            });
            if ok {
                self.mused[x.0] = true;
                let flow = self.morphisms(k + 1, visit);
                self.mused[x.0] = false;
                if flow.is_break() {
                    self.mmap[m.0] = None;
                    return flow;
                }
            }
        }
        self.mmap[m.0] = None;
        ControlFlow::Continue(())
    }
}

/// All functors `c -> d`: object maps in lexicographic order, then
/// morphism maps constrained by endpoints and composition.
pub fn enumerate_functors(c: &Arc<FinCategory>, d: &Arc<FinCategory>) -> Vec<Functor> {
    enumerate_functors_limited(c, d, u128::MAX).expect("unlimited")
}

pub fn enumerate_functors_limited(
    c: &Arc<FinCategory>,
    d: &Arc<FinCategory>,
    limit: u128,
) -> Result<Vec<Functor>, SearchSpaceTooLarge> {
    let cardinality = functor_search_space(c, d);
    if cardinality > limit {
        return Err(SearchSpaceTooLarge { cardinality, limit });
    }
    let mut out = Vec::new();
    let _ = FunctorSearch::new(c, d, false).objects(&mut |o: &[ObjId], m: &[MorId]| {
        out.push(Functor {
            dom: c.clone(),
            cod: d.clone(),
            omap: o.to_vec(),
            mmap: m.to_vec(),
        });
        ControlFlow::Continue(())
    });
    Ok(out)
}

/// An isomorphism of categories, by exhaustive bijection search.
pub fn find_category_isomorphism(c: &Arc<FinCategory>, d: &Arc<FinCategory>) -> Option<Functor> {
    if c.object_count() != d.object_count() || c.morphism_count() != d.morphism_count() {
        return None;
    }
    let mut found = None;
    let _ = FunctorSearch::new(c, d, true).objects(&mut |o: &[ObjId], m: &[MorId]| {
        found = Some(Functor {
            dom: c.clone(),
            cod: d.clone(),
            omap: o.to_vec(),
            mmap: m.to_vec(),
        });
        ControlFlow::Break(())
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::categories::free_category;
    use crate::graphs::{path_graph, FinGraph};

    fn idempotent_monoid() -> Arc<FinCategory> {
        let g = Arc::new(
            FinGraph::builder()
                .vertex("*")
                .edge("1", "*", "*")
                .edge("v", "*", "*")
                .build()
                .unwrap(),
        );
        Arc::new(
            FinCategory::from_names(
                g,
                &[("*", "1")],
                &[("1", "1", "1"), ("1", "v", "v"), ("v", "1", "v"), ("v", "v", "v")],
            )
            .unwrap(),
        )
    }

    fn z2() -> Arc<FinCategory> {
        let g = Arc::new(
            FinGraph::builder()
                .vertex("*")
                .edge("1", "*", "*")
                .edge("v", "*", "*")
                .build()
                .unwrap(),
        );
        Arc::new(
            FinCategory::from_names(
                g,
                &[("*", "1")],
                &[("1", "1", "1"), ("1", "v", "v"), ("v", "1", "v"), ("v", "v", "1")],
            )
            .unwrap(),
        )
    }

    #[test]
    fn functor_counts() {
        let d2 = Arc::new(FinCategory::discrete(["a", "b"]));
        assert_eq!(enumerate_functors(&d2, &d2).len(), 4);
        let arrow = Arc::new(free_category(&path_graph(1)).unwrap());
        assert_eq!(enumerate_functors(&arrow, &z2()).len(), 2);
        let t = Arc::new(FinCategory::terminal());
        assert_eq!(enumerate_functors(&z2(), &t).len(), 1);
        assert_eq!(enumerate_functors(&arrow, &t).len(), 1);
        // Monoid maps Z/2 -> {1, v} with v idempotent: only the trivial one.
        assert_eq!(enumerate_functors(&z2(), &idempotent_monoid()).len(), 1);
        assert_eq!(enumerate_functors(&idempotent_monoid(), &idempotent_monoid()).len(), 2);
    }

    #[test]
    fn isomorphism_search_respects_composition() {
        assert!(find_category_isomorphism(&z2(), &idempotent_monoid()).is_none());
        assert!(find_category_isomorphism(&z2(), &z2()).is_some());
    }

    #[test]
    fn limit_is_enforced() {
        let arrow = Arc::new(free_category(&path_graph(1)).unwrap());
        let err = enumerate_functors_limited(&arrow, &z2(), 1).unwrap_err();
        assert_eq!(err.cardinality, 2);
    }

    #[test]
    fn composition_is_associative_and_unital() {
        let fs = enumerate_functors(&z2(), &z2());
        let id = Functor::identity(z2());
        for f in &fs {
            assert_eq!(&f.then(&id).unwrap(), f);
            assert_eq!(&id.then(f).unwrap(), f);
            for g in &fs {
                for h in &fs {
                    let left = f.then(g).unwrap().then(h).unwrap();
                    let right = f.then(&g.then(h).unwrap()).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }
}
