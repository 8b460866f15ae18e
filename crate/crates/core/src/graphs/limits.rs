//! Finite limits and colimits in the category of graphs, computed cellwise.

use std::sync::Arc;

use super::{EdgeId, FinGraph, GraphError, GraphMorphism, VertexId};
use crate::unionfind::UnionFind;

/// Two morphisms out of a common apex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Span {
    pub apex: Arc<FinGraph>,
    pub left: GraphMorphism,
    pub right: GraphMorphism,
}

/// Two morphisms into a common apex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cospan {
    pub apex: Arc<FinGraph>,
    pub left: GraphMorphism,
    pub right: GraphMorphism,
}

fn clashes(a: &[String], b: &[String]) -> bool {
    // both sorted
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

/// Disjoint union. When any vertex or edge name occurs on both sides, all
/// cells are renamed with `l_` / `r_` prefixes.
pub fn coproduct(a: &Arc<FinGraph>, b: &Arc<FinGraph>) -> Cospan {
    let prefix = clashes(a.vertex_names(), b.vertex_names())
        || clashes(a.edge_names(), b.edge_names());
    let (pl, pr) = if prefix { ("l_", "r_") } else { ("", "") };
    let vertices: Vec<String> = a
        .vertex_names()
        .iter()
        .map(|v| format!("{pl}{v}"))
        .chain(b.vertex_names().iter().map(|v| format!("{pr}{v}")))
        .collect();
    let edge = |g: &FinGraph, p: &str, e: EdgeId| {
        (
            format!("{p}{}", g.edge_name(e)),
            format!("{p}{}", g.vertex_name(g.src(e))),
            format!("{p}{}", g.vertex_name(g.tgt(e))),
        )
    };
    let edges = a
        .edges()
        .map(|e| edge(a, pl, e))
        .chain(b.edges().map(|e| edge(b, pr, e)))
        .collect();
    let apex = Arc::new(FinGraph::new(vertices, edges).expect("disjoint names"));
    let inject = |g: &Arc<FinGraph>, p: &str| {
        let vmap = g
            .vertices()
            .map(|v| apex.vertex_id(&format!("{p}{}", g.vertex_name(v))).unwrap())
            .collect();
        let emap = g
            .edges()
            .map(|e| apex.edge_id(&format!("{p}{}", g.edge_name(e))).unwrap())
            .collect();
        GraphMorphism::new_unchecked(g.clone(), apex.clone(), vmap, emap)
    };
    Cospan {
        left: inject(a, pl),
        right: inject(b, pr),
        apex: apex.clone(),
    }
}

/// Coequalizer of a parallel pair. Cells of the quotient are named by the
/// least representative of their class.
pub fn coequalizer(
    f: &GraphMorphism,
    g: &GraphMorphism,
) -> Result<(Arc<FinGraph>, GraphMorphism), GraphError> {
    if f.dom() != g.dom() || f.cod() != g.cod() {
        return Err(GraphError::Mismatch);
    }
    let cod = f.cod();
    let mut vuf = UnionFind::new(cod.vertex_count());
    for v in f.dom().vertices() {
        vuf.union(f.vertex(v).0, g.vertex(v).0);
    }
    let mut euf = UnionFind::new(cod.edge_count());
    for e in f.dom().edges() {
        euf.union(f.edge(e).0, g.edge(e).0);
    }
    Ok(quotient(cod, &mut vuf, &mut euf))
}

/// Quotient of `g` by the given cell partitions. Edge classes must respect
/// endpoints modulo the vertex partition.
pub(crate) fn quotient(
    g: &Arc<FinGraph>,
    vuf: &mut UnionFind,
    euf: &mut UnionFind,
) -> (Arc<FinGraph>, GraphMorphism) {
    let vertices: Vec<String> = g
        .vertices()
        .filter(|v| vuf.find(v.0) == v.0)
        .map(|v| g.vertex_name(v).to_string())
        .collect();
    let edges: Vec<(String, String, String)> = g
        .edges()
        .filter(|e| euf.find(e.0) == e.0)
        .map(|e| {
            let s = VertexId(vuf.find(g.src(e).0));
            let t = VertexId(vuf.find(g.tgt(e).0));
            (
                g.edge_name(e).to_string(),
                g.vertex_name(s).to_string(),
                g.vertex_name(t).to_string(),
            )
        })
        .collect();
    let apex = Arc::new(FinGraph::new(vertices, edges).expect("quotient of a valid graph"));
    let vmap = g
        .vertices()
        .map(|v| {
            let r = VertexId(vuf.find(v.0));
            apex.vertex_id(g.vertex_name(r)).unwrap()
        })
        .collect();
    let emap = g
        .edges()
        .map(|e| {
            let r = EdgeId(euf.find(e.0));
            apex.edge_id(g.edge_name(r)).unwrap()
        })
        .collect();
    let q = GraphMorphism::new_unchecked(g.clone(), apex.clone(), vmap, emap);
    (apex, q)
}

/// Pushout of `f: A -> B` and `g: A -> C`.
pub fn pushout(f: &GraphMorphism, g: &GraphMorphism) -> Result<Cospan, GraphError> {
    if f.dom() != g.dom() {
        return Err(GraphError::Mismatch);
    }
    let sum = coproduct(f.cod(), g.cod());
    let (apex, q) = coequalizer(&f.then(&sum.left)?, &g.then(&sum.right)?)?;
    Ok(Cospan {
        left: sum.left.then(&q)?,
        right: sum.right.then(&q)?,
        apex,
    })
}

fn pair(x: &str, y: &str) -> String {
    format!("({x},{y})")
}

fn limit_span(
    a: &Arc<FinGraph>,
    b: &Arc<FinGraph>,
    vertices: Vec<(VertexId, VertexId)>,
    edges: Vec<(EdgeId, EdgeId)>,
) -> Span {
    let vnames: Vec<String> = vertices
        .iter()
        .map(|&(x, y)| pair(a.vertex_name(x), b.vertex_name(y)))
        .collect();
    let enames = edges
        .iter()
        .map(|&(x, y)| {
            (
                pair(a.edge_name(x), b.edge_name(y)),
                pair(a.vertex_name(a.src(x)), b.vertex_name(b.src(y))),
                pair(a.vertex_name(a.tgt(x)), b.vertex_name(b.tgt(y))),
            )
        })
        .collect();
    let apex = Arc::new(FinGraph::new(vnames, enames).expect("cellwise limit"));
    let mut lv = vec![VertexId(0); apex.vertex_count()];
    let mut rv = lv.clone();
    for &(x, y) in &vertices {
        let id = apex.vertex_id(&pair(a.vertex_name(x), b.vertex_name(y))).unwrap();
        lv[id.0] = x;
        rv[id.0] = y;
    }
    let mut le = vec![EdgeId(0); apex.edge_count()];
    let mut re = le.clone();
    for &(x, y) in &edges {
        let id = apex.edge_id(&pair(a.edge_name(x), b.edge_name(y))).unwrap();
        le[id.0] = x;
        re[id.0] = y;
    }
    Span {
        left: GraphMorphism::new_unchecked(apex.clone(), a.clone(), lv, le),
        right: GraphMorphism::new_unchecked(apex.clone(), b.clone(), rv, re),
        apex,
    }
}

pub fn product(a: &Arc<FinGraph>, b: &Arc<FinGraph>) -> Span {
    let vertices = a
        .vertices()
        .flat_map(|x| b.vertices().map(move |y| (x, y)))
        .collect();
    let edges = a
        .edges()
        .flat_map(|x| b.edges().map(move |y| (x, y)))
        .collect();
    limit_span(a, b, vertices, edges)
}

/// Pullback of `f: B -> D` and `g: C -> D`: pairs of cells agreeing in `D`.
pub fn pullback(f: &GraphMorphism, g: &GraphMorphism) -> Result<Span, GraphError> {
    if f.cod() != g.cod() {
        return Err(GraphError::Mismatch);
    }
    let (a, b) = (f.dom(), g.dom());
    let vertices = a
        .vertices()
        .flat_map(|x| {
            b.vertices()
                .filter(move |&y| f.vertex(x) == g.vertex(y))
                .map(move |y| (x, y))
        })
        .collect();
    let edges = a
        .edges()
        .flat_map(|x| {
            b.edges()
                .filter(move |&y| f.edge(x) == g.edge(y))
                .map(move |y| (x, y))
        })
        .collect();
    Ok(limit_span(a, b, vertices, edges))
}

/// Equalizer of a parallel pair: the subgraph on which both agree.
pub fn equalizer(
    f: &GraphMorphism,
    g: &GraphMorphism,
) -> Result<(Arc<FinGraph>, GraphMorphism), GraphError> {
    if f.dom() != g.dom() || f.cod() != g.cod() {
        return Err(GraphError::Mismatch);
    }
    let dom = f.dom();
    let keep_v: Vec<VertexId> = dom.vertices().filter(|&v| f.vertex(v) == g.vertex(v)).collect();
    let keep_e: Vec<EdgeId> = dom.edges().filter(|&e| f.edge(e) == g.edge(e)).collect();
    let sub = Arc::new(
        FinGraph::new(
            keep_v.iter().map(|&v| dom.vertex_name(v).to_string()).collect(),
            keep_e
                .iter()
                .map(|&e| {
                    (
                        dom.edge_name(e).to_string(),
                        dom.vertex_name(dom.src(e)).to_string(),
                        dom.vertex_name(dom.tgt(e)).to_string(),
                    )
                })
                .collect(),
        )
        .expect("subgraph of a valid graph"),
    );
    // Names are sorted on both sides, so the kept cells stay in order.
    let incl = GraphMorphism::new_unchecked(sub.clone(), dom.clone(), keep_v, keep_e);
    Ok((sub, incl))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{find_isomorphism, path_graph, representable, Cell};

    #[test]
    fn pushout_of_endpoints_is_two_path() {
        let s = GraphMorphism::source_inclusion();
        let t = GraphMorphism::target_inclusion();
        let po = pushout(&s, &t).unwrap();
        assert!(find_isomorphism(&po.apex, &Arc::new(path_graph(2))).is_some());
        assert_eq!(po.left.then(&GraphMorphism::identity(po.apex.clone())).unwrap(), po.left);
    }

    #[test]
    fn pushout_along_identity() {
        let g = Arc::new(path_graph(3));
        let id = GraphMorphism::identity(g.clone());
        let po = pushout(&id, &id).unwrap();
        assert!(find_isomorphism(&po.apex, &g).is_some());
    }

    #[test]
    fn coequalizer_of_endpoints_is_a_loop() {
        let s = GraphMorphism::source_inclusion();
        let t = GraphMorphism::target_inclusion();
        let (q, map) = coequalizer(&s, &t).unwrap();
        assert_eq!((q.vertex_count(), q.edge_count()), (1, 1));
        assert_eq!(q.vertex_names(), ["a0"]);
        assert_eq!(map.vertex(VertexId(1)), VertexId(0));
    }

    #[test]
    fn coproduct_and_product_sizes() {
        let p = Arc::new(representable(Cell::Zero));
        let sum = coproduct(&p, &p);
        assert_eq!((sum.apex.vertex_count(), sum.apex.edge_count()), (2, 0));
        let one = Arc::new(path_graph(1));
        let prod = product(&one, &one);
        assert_eq!((prod.apex.vertex_count(), prod.apex.edge_count()), (4, 1));
        assert_eq!(prod.apex.edge_names(), ["(e1,e1)"]);
    }

    #[test]
    fn coproduct_keeps_names_without_clash() {
        let a = Arc::new(FinGraph::builder().vertex("x").build().unwrap());
        let b = Arc::new(FinGraph::builder().vertex("y").build().unwrap());
        assert_eq!(coproduct(&a, &b).apex.vertex_names(), ["x", "y"]);
    }

    #[test]
    fn equalizer_and_pullback_along_identity() {
        let g = Arc::new(path_graph(2));
        let id = GraphMorphism::identity(g.clone());
        let (eq, incl) = equalizer(&id, &id).unwrap();
        assert_eq!(*eq, *g);
        assert!(incl.is_bijective());
        let pb = pullback(&id, &id).unwrap();
        assert!(find_isomorphism(&pb.apex, &g).is_some());
        let s = GraphMorphism::source_inclusion();
        let t = GraphMorphism::target_inclusion();
        let (e, _) = equalizer(&s, &t).unwrap();
        assert!(e.is_empty());
    }
}
