//! Generated graphs and hand-built categories and presentations used by
//! the test suites, the fuzz seeds and `grcat verify-suite`.

use std::sync::Arc;

use crate::categories::{free_category, FinCategory};
use crate::graphs::{path_graph, FinGraph};
use crate::presentations::{coequalize, Bounds, Presentation};

/// Every graph with at most `max_vertices` vertices and `max_edges` edges,
/// up to renaming of edges. Vertices are `v0, v1, ..`, edges `e0, e1, ..`.
pub fn graphs(max_vertices: usize, max_edges: usize) -> Vec<Arc<FinGraph>> {
    let mut out = Vec::new();
    for n in 0..=max_vertices {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|s| (0..n).map(move |t| (s, t))).collect();
        let mut chosen = Vec::new();
        multisets(&pairs, 0, max_edges, &mut chosen, &mut |edges| {
            out.push(Arc::new(numbered(n, edges)));
        });
    }
    out
}

fn multisets<F: FnMut(&[(usize, usize)])>(
    pairs: &[(usize, usize)],
    from: usize,
    room: usize,
    chosen: &mut Vec<(usize, usize)>,
    visit: &mut F,
) {
    visit(chosen);
    if room == 0 {
        return;
    }
    for i in from..pairs.len() {
        chosen.push(pairs[i]);
        multisets(pairs, i, room - 1, chosen, visit);
        chosen.pop();
    }
}

fn numbered(n: usize, edges: &[(usize, usize)]) -> FinGraph {
    FinGraph::new(
        (0..n).map(|i| format!("v{i}")).collect(),
        edges
            .iter()
            .enumerate()
            .map(|(i, &(s, t))| (format!("e{i}"), format!("v{s}"), format!("v{t}")))
            .collect(),
    )
    .expect("numbered graphs are well formed")
}

/// `(name, graph)` pairs used as hand-picked examples.
pub fn sample_graphs() -> Vec<(&'static str, Arc<FinGraph>)> {
    vec![
        ("empty", Arc::new(FinGraph::empty())),
        ("point", Arc::new(path_graph(0))),
        ("arrow", Arc::new(path_graph(1))),
        ("path2", Arc::new(path_graph(2))),
        ("parallel", Arc::new(parallel_pair())),
        ("square", square_graph()),
        ("loop", loop_graph("*", "a")),
    ]
}

pub fn loop_graph(v: &str, e: &str) -> Arc<FinGraph> {
    Arc::new(FinGraph::builder().vertex(v).edge(e, v, v).build().expect("loop"))
}

fn parallel_pair() -> FinGraph {
    FinGraph::builder()
        .vertices(["x", "y"])
        .edge("s", "x", "y")
        .edge("t", "x", "y")
        .build()
        .expect("parallel pair")
}

/// Vertices `a, b, c, d` with `f: a -> b`, `g: b -> d`, `h: a -> c`, `k: c -> d`.
pub fn square_graph() -> Arc<FinGraph> {
    Arc::new(
        FinGraph::builder()
            .vertices(["a", "b", "c", "d"])
            .edge("f", "a", "b")
            .edge("h", "a", "c")
            .edge("g", "b", "d")
            .edge("k", "c", "d")
            .build()
            .expect("square"),
    )
}

/// The cyclic group of order `n` on one object: `id(*)`, `a`, `a2`, ..
pub fn cyclic_group(n: usize) -> FinCategory {
    assert!(n >= 1);
    let name = |k: usize| match k {
        0 => "id(*)".to_string(),
        1 => "a".to_string(),
        k => format!("a{k}"),
    };
    let names: Vec<String> = (0..n).map(name).collect();
    let g = FinGraph::new(
        vec!["*".into()],
        names.iter().map(|m| (m.clone(), "*".into(), "*".into())).collect(),
    )
    .expect("cyclic group graph");
    let comps: Vec<(String, String, String)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (names[i].clone(), names[j].clone(), names[(i + j) % n].clone()))
        .collect();
    let comps: Vec<(&str, &str, &str)> = comps.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())).collect();
    FinCategory::from_names(Arc::new(g), &[("*", "id(*)")], &comps).expect("cyclic group")
}

/// The monoid `{1, e}` with `e ∘ e = e`.
pub fn idempotent_monoid() -> FinCategory {
    let g = FinGraph::builder()
        .vertex("*")
        .edge("id(*)", "*", "*")
        .edge("e", "*", "*")
        .build()
        .expect("idempotent graph");
    FinCategory::from_names(
        Arc::new(g),
        &[("*", "id(*)")],
        &[
            ("id(*)", "id(*)", "id(*)"),
            ("id(*)", "e", "e"),
            ("e", "id(*)", "e"),
            ("e", "e", "e"),
        ],
    )
    .expect("idempotent monoid")
}

/// Two objects with exactly one morphism between any ordered pair.
pub fn codiscrete_pair() -> FinCategory {
    let g = FinGraph::builder()
        .vertices(["x", "y"])
        .edge("id(x)", "x", "x")
        .edge("id(y)", "y", "y")
        .edge("f", "x", "y")
        .edge("f'", "y", "x")
        .build()
        .expect("codiscrete graph");
    let mut comps = Vec::new();
    let src = |m: &str| match m {
        "id(x)" | "f" => "x",
        _ => "y",
    };
    let tgt = |m: &str| match m {
        "id(x)" | "f'" => "x",
        _ => "y",
    };
    let hom = |a: &str, b: &str| match (a, b) {
        ("x", "x") => "id(x)",
        ("y", "y") => "id(y)",
        ("x", "y") => "f",
        _ => "f'",
    };
    let all = ["id(x)", "id(y)", "f", "f'"];
    for f in all {
        for g in all {
            if tgt(f) == src(g) {
                comps.push((f, g, hom(src(f), tgt(g))));
            }
        }
    }
    FinCategory::from_names(Arc::new(g), &[("x", "id(x)"), ("y", "id(y)")], &comps).expect("codiscrete pair")
}

/// The category presented by the commutative square (4 objects, 9 morphisms).
pub fn commutative_square_category() -> FinCategory {
    let pc = coequalize(&commutative_square(), Bounds::default()).expect("square presentation");
    (**pc.category().expect("square is finite")).clone()
}

/// At least ten finite categories, each with a short name.
pub fn sample_categories() -> Vec<(&'static str, FinCategory)> {
    let free = |g: FinGraph| free_category(&g).expect("acyclic");
    vec![
        ("empty", FinCategory::discrete(Vec::<String>::new())),
        ("terminal", FinCategory::terminal()),
        ("discrete2", FinCategory::discrete(["x", "y"])),
        ("discrete3", FinCategory::discrete(["x", "y", "z"])),
        ("arrow", free(path_graph(1))),
        ("path2", free(path_graph(2))),
        ("parallel", free(parallel_pair())),
        ("z2", cyclic_group(2)),
        ("z3", cyclic_group(3)),
        ("idempotent", idempotent_monoid()),
        ("codiscrete2", codiscrete_pair()),
        ("square", commutative_square_category()),
    ]
}

/// `a^n = id` on a single loop `a`.
pub fn cyclic_presentation(n: usize) -> Presentation {
    let power = vec!["a"; n].join(".");
    Presentation::from_names(
        loop_graph("w", "h"),
        loop_graph("*", "a"),
        (&[("w", "*")], &[("h", power.as_str())]),
        (&[("w", "*")], &[("h", "id(*)")]),
    )
    .expect("cyclic presentation")
}

/// `f.g = h.k` on [`square_graph`].
pub fn commutative_square() -> Presentation {
    Presentation::from_names(
        Arc::new(path_graph(1)),
        square_graph(),
        (&[("a0", "a"), ("a1", "d")], &[("e1", "f.g")]),
        (&[("a0", "a"), ("a1", "d")], &[("e1", "h.k")]),
    )
    .expect("square presentation")
}

/// `a.a = a` on a single loop.
pub fn idempotent_presentation() -> Presentation {
    Presentation::from_names(
        loop_graph("w", "h"),
        loop_graph("*", "a"),
        (&[("w", "*")], &[("h", "a.a")]),
        (&[("w", "*")], &[("h", "a")]),
    )
    .expect("idempotent presentation")
}

/// `f: x -> y` and `g: y -> x` made mutually inverse.
pub fn inverse_pair() -> Presentation {
    let g = Arc::new(
        FinGraph::builder()
            .vertices(["x", "y"])
            .edge("f", "x", "y")
            .edge("g", "y", "x")
            .build()
            .expect("inverse pair generators"),
    );
    let h = Arc::new(
        FinGraph::builder()
            .vertices(["p", "q"])
            .edge("l", "p", "p")
            .edge("r", "q", "q")
            .build()
            .expect("inverse pair relations"),
    );
    Presentation::from_names(
        h,
        g,
        (&[("p", "x"), ("q", "y")], &[("l", "f.g"), ("r", "g.f")]),
        (&[("p", "x"), ("q", "y")], &[("l", "id(x)"), ("r", "id(y)")]),
    )
    .expect("inverse pair")
}

/// Identifies the two vertices of a discrete pair.
pub fn collapsed_points() -> Presentation {
    let g = Arc::new(FinGraph::builder().vertices(["x", "y"]).build().expect("points"));
    let h = Arc::new(path_graph(0));
    Presentation::from_names(h, g, (&[("a0", "x")], &[]), (&[("a0", "y")], &[])).expect("collapse")
}

/// Identifies the two parallel arrows `s` and `t`.
pub fn equalized_pair() -> Presentation {
    Presentation::from_names(
        Arc::new(path_graph(1)),
        Arc::new(parallel_pair()),
        (&[("a0", "x"), ("a1", "y")], &[("e1", "s")]),
        (&[("a0", "x"), ("a1", "y")], &[("e1", "t")]),
    )
    .expect("equalized pair")
}

/// `(name, presentation)` pairs; all but `free-loop` have finite coequalizers.
pub fn sample_presentations() -> Vec<(&'static str, Presentation)> {
    let free = |g: Arc<FinGraph>| Presentation::free(g).expect("free presentation");
    vec![
        ("free-empty", free(Arc::new(FinGraph::empty()))),
        ("free-path2", free(Arc::new(path_graph(2)))),
        ("free-square", free(square_graph())),
        ("free-loop", free(loop_graph("*", "a"))),
        ("z2", cyclic_presentation(2)),
        ("z3", cyclic_presentation(3)),
        ("square", commutative_square()),
        ("idempotent", idempotent_presentation()),
        ("inverse-pair", inverse_pair()),
        ("collapsed-points", collapsed_points()),
        ("equalized-pair", equalized_pair()),
    ]
}
