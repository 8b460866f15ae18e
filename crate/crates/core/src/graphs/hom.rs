use std::ops::ControlFlow;
use std::sync::Arc;

use super::{EdgeId, FinGraph, GraphMorphism, VertexId};

struct Search<'a> {
    dom: &'a FinGraph,
    cod: &'a FinGraph,
    bijective: bool,
    vertices_only: bool,
    /// Edges of `dom` whose later endpoint (in vertex order) is the index.
    closing: Vec<Vec<EdgeId>>,
    vmap: Vec<VertexId>,
    emap: Vec<EdgeId>,
    vused: Vec<bool>,
    eused: Vec<bool>,
}

impl<'a> Search<'a> {
    fn new(dom: &'a FinGraph, cod: &'a FinGraph, bijective: bool) -> Self {
        let mut closing = vec![Vec::new(); dom.vertex_count()];
        for e in dom.edges() {
            let last = dom.src(e).max(dom.tgt(e));
            closing[last.0].push(e);
        }
        Search {
            dom,
            cod,
            bijective,
            vertices_only: false,
            closing,
            vmap: Vec::with_capacity(dom.vertex_count()),
            emap: Vec::with_capacity(dom.edge_count()),
            vused: vec![false; cod.vertex_count()],
            eused: vec![false; cod.edge_count()],
        }
    }

    fn vertices<F>(&mut self, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[VertexId], &[EdgeId]) -> ControlFlow<()>,
    {
        let k = self.vmap.len();
        if k == self.dom.vertex_count() {
            if self.vertices_only {
                return visit(&self.vmap, &[]);
            }
            return self.edges(visit);
        }
        for w in self.cod.vertices() {
            if self.bijective && self.vused[w.0] {
                continue;
            }
            self.vmap.push(w);
            let feasible = self.closing[k].iter().all(|&e| {
                let s = self.vmap[self.dom.src(e).0];
                let t = self.vmap[self.dom.tgt(e).0];
                self.cod.edges_between(s, t).next().is_some()
            });
            if feasible {
                self.vused[w.0] = true;
                let flow = self.vertices(visit);
                self.vused[w.0] = false;
                if flow.is_break() {
                    self.vmap.pop();
                    return flow;
                }
            }
            self.vmap.pop();
        }
        ControlFlow::Continue(())
    }

    fn edges<F>(&mut self, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[VertexId], &[EdgeId]) -> ControlFlow<()>,
    {
        let k = self.emap.len();
        if k == self.dom.edge_count() {
            return visit(&self.vmap, &self.emap);
        }
        let e = EdgeId(k);
        let s = self.vmap[self.dom.src(e).0];
        let t = self.vmap[self.dom.tgt(e).0];
        let candidates: Vec<EdgeId> = self.cod.edges_between(s, t).collect();
        for c in candidates {
            if self.bijective && self.eused[c.0] {
                continue;
            }
            self.eused[c.0] = true;
            self.emap.push(c);
            let flow = self.edges(visit);
            self.emap.pop();
            self.eused[c.0] = false;
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// Visits every graph morphism `dom -> cod` as raw vertex and edge maps,
/// vertex maps in lexicographic order, then edge maps.
pub fn for_each_hom<F>(dom: &FinGraph, cod: &FinGraph, mut visit: F)
where
    F: FnMut(&[VertexId], &[EdgeId]) -> ControlFlow<()>,
{
    let _ = Search::new(dom, cod, false).vertices(&mut visit);
}

/// All graph morphisms `dom -> cod` in canonical order.
pub fn hom_graphs(dom: &Arc<FinGraph>, cod: &Arc<FinGraph>) -> Vec<GraphMorphism> {
    let mut out = Vec::new();
    for_each_hom(dom, cod, |v, e| {
        out.push(GraphMorphism::new_unchecked(
            dom.clone(),
            cod.clone(),
            v.to_vec(),
            e.to_vec(),
        ));
        ControlFlow::Continue(())
    });
    out
}

/// `|Gr(dom, cod)|` without materializing the morphisms.
pub fn hom_count(dom: &FinGraph, cod: &FinGraph) -> u128 {
    let mut total = 0u128;
    let mut vmaps = Vec::new();
    let mut search = Search::new(dom, cod, false);
    search.vertices_only = true;
    let _ = search.vertices(&mut |v: &[VertexId], _: &[EdgeId]| {
        vmaps.push(v.to_vec());
        ControlFlow::Continue(())
    });
    for vmap in vmaps {
        let mut product = 1u128;
        for e in dom.edges() {
            let n = cod
                .edges_between(vmap[dom.src(e).0], vmap[dom.tgt(e).0])
                .count() as u128;
            product = product.saturating_mul(n);
            if product == 0 {
                break;
            }
        }
        total = total.saturating_add(product);
    }
    total
}

/// All tuples `(e1, ..., en)` with `tgt(ei) = src(e(i+1))`, in
/// lexicographic order.
pub fn composable_sequences(n: usize, g: &FinGraph) -> Vec<Vec<EdgeId>> {
    if n == 0 {
        return Vec::new();
    }
    let mut out: Vec<Vec<EdgeId>> = g.edges().map(|e| vec![e]).collect();
    for _ in 1..n {
        out = out
            .into_iter()
            .flat_map(|seq| {
                let end = g.tgt(*seq.last().expect("nonempty"));
                g.out_edges(end)
                    .map(|e| {
                        let mut next = seq.clone();
                        next.push(e);
                        next
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

/// Finds an isomorphism `a -> b` by exhaustive bijection search.
pub fn find_isomorphism(a: &Arc<FinGraph>, b: &Arc<FinGraph>) -> Option<GraphMorphism> {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return None;
    }
    let mut found = None;
    let _ = Search::new(a, b, true).vertices(&mut |v: &[VertexId], e: &[EdgeId]| {
        found = Some(GraphMorphism::new_unchecked(
            a.clone(),
            b.clone(),
            v.to_vec(),
            e.to_vec(),
        ));
        ControlFlow::Break(())
    });
    found
}
