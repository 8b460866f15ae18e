use std::sync::Arc;

use super::{EdgeId, FinGraph, GraphMorphism, VertexId};

/// The two objects of the site whose presheaves are graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cell {
    Zero,
    One,
}

/// The graph of the representable presheaf on `cell`.
///
/// `Zero` gives a single vertex `id0`; `One` gives the arrow
/// `id1: i0 -> i1`.
pub fn representable(cell: Cell) -> FinGraph {
    let built = match cell {
        Cell::Zero => FinGraph::builder().vertex("id0").build(),
        Cell::One => FinGraph::builder()
            .vertices(["i0", "i1"])
            .edge("id1", "i0", "i1")
            .build(),
    };
    built.expect("representable graphs are well formed")
}

/// The path graph `a0 -> a1 -> ... -> an` with edges `e1 .. en`.
pub fn path_graph(n: usize) -> FinGraph {
    let mut b = FinGraph::builder().vertices((0..=n).map(|i| format!("a{i}")));
    for i in 1..=n {
        b = b.edge(format!("e{i}"), format!("a{}", i - 1), format!("a{i}"));
    }
    b.build().expect("path graphs are well formed")
}

impl GraphMorphism {
    /// The map `0⃗ -> G` picking the vertex `v`.
    pub fn point(g: Arc<FinGraph>, v: VertexId) -> GraphMorphism {
        GraphMorphism::new_unchecked(Arc::new(path_graph(0)), g, vec![v], vec![])
    }

    /// The map `1⃗ -> G` picking the edge `e`.
    pub fn arrow(g: Arc<FinGraph>, e: EdgeId) -> GraphMorphism {
        let ends = vec![g.src(e), g.tgt(e)];
        GraphMorphism::new_unchecked(Arc::new(path_graph(1)), g, ends, vec![e])
    }

    /// Source inclusion `s: 0⃗ -> 1⃗`.
    pub fn source_inclusion() -> GraphMorphism {
        GraphMorphism::point(Arc::new(path_graph(1)), VertexId(0))
    }

    /// Target inclusion `t: 0⃗ -> 1⃗`.
    pub fn target_inclusion() -> GraphMorphism {
        GraphMorphism::point(Arc::new(path_graph(1)), VertexId(1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn representables_match_presheaf_counts() {
        let h0 = representable(Cell::Zero);
        assert_eq!((h0.vertex_count(), h0.edge_count()), (1, 0));
        let h1 = representable(Cell::One);
        assert_eq!((h1.vertex_count(), h1.edge_count()), (2, 1));
    }

    #[test]
    fn path_graph_sizes() {
        for n in 0..6 {
            let g = path_graph(n);
            assert_eq!(g.vertex_count(), n + 1);
            assert_eq!(g.edge_count(), n);
        }
        let g = path_graph(2);
        let e2 = g.edge_id("e2").unwrap();
        assert_eq!(g.vertex_name(g.src(e2)), "a1");
        assert_eq!(g.vertex_name(g.tgt(e2)), "a2");
    }
}
