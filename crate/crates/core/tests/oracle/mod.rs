//! Brute-force reference implementations. They use only the raw cell
//! accessors of the library types, never its algorithms.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};

use grcat::graphs::{EdgeId, FinGraph, VertexId};

/// Calls `visit` with every tuple in `0..base` of length `len`.
pub fn odometer(base: usize, len: usize, mut visit: impl FnMut(&[usize])) {
    if len > 0 && base == 0 {
        return;
    }
    let mut digits = vec![0; len];
    loop {
        visit(&digits);
        let mut i = 0;
        loop {
            if i == len {
                return;
            }
            digits[i] += 1;
            if digits[i] < base {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// All graph morphisms as `(vertex map, edge map)`.
pub fn homs(dom: &FinGraph, cod: &FinGraph) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    odometer(cod.vertex_count(), dom.vertex_count(), |vm| {
        let options: Vec<Vec<usize>> = dom
            .edges()
            .map(|e| {
                cod.edges()
                    .filter(|&x| {
                        cod.src(x).0 == vm[dom.src(e).0] && cod.tgt(x).0 == vm[dom.tgt(e).0]
                    })
                    .map(|x| x.0)
                    .collect()
            })
            .collect();
        let mut pick = vec![0; options.len()];
        'outer: loop {
            if options.iter().any(Vec::is_empty) {
                break;
            }
            out.push((vm.to_vec(), pick.iter().zip(&options).map(|(&i, o)| o[i]).collect()));
            for (i, o) in options.iter().enumerate() {
                pick[i] += 1;
                if pick[i] < o.len() {
                    continue 'outer;
                }
                pick[i] = 0;
            }
            break;
        }
    });
    out
}

/// Number of edge tuples `(e1, .., en)` with `tgt(ei) = src(e(i+1))`.
pub fn sequences(n: usize, g: &FinGraph) -> usize {
    let mut count = 0;
    odometer(g.edge_count(), n, |t| {
        let ok = t
            .windows(2)
            .all(|w| g.tgt(EdgeId(w[0])) == g.src(EdgeId(w[1])));
        count += ok as usize;
    });
    count
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Isomorphism of graphs up to renaming, by trying every vertex bijection.
pub fn isomorphic(a: &FinGraph, b: &FinGraph) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let edges = |g: &FinGraph, p: &[usize]| {
        let mut v: Vec<(usize, usize)> = g.edges().map(|e| (p[g.src(e).0], p[g.tgt(e).0])).collect();
        v.sort();
        v
    };
    let id: Vec<usize> = (0..b.vertex_count()).collect();
    let target = edges(b, &id);
    permutations(a.vertex_count()).iter().any(|p| edges(a, p) == target)
}

/// A path as start vertex and edge indices.
pub type Word = (usize, Vec<usize>);

/// Every path of length at most `max_len`.
pub fn words(g: &FinGraph, max_len: usize) -> Vec<Word> {
    let mut out: Vec<Word> = g.vertices().map(|v| (v.0, vec![])).collect();
    let mut frontier = out.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (s, es) in &frontier {
            let end = es.last().map_or(*s, |&e| g.tgt(EdgeId(e)).0);
            for e in g.edges().filter(|&e| g.src(e).0 == end) {
                let mut w = es.clone();
                w.push(e.0);
                next.push((*s, w));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn vertex_at(g: &FinGraph, w: &Word, i: usize) -> usize {
    if i == 0 {
        w.0
    } else {
        g.tgt(EdgeId(w.1[i - 1])).0
    }
}

/// Classes of the congruence generated by `relations` on paths of length at
/// most `max_len`, computed by rewriting subpaths in both directions.
/// Relations are `(start, lhs, rhs)`; both sides share their endpoints.
pub fn congruence(
    g: &FinGraph,
    relations: &[(usize, Vec<usize>, Vec<usize>)],
    max_len: usize,
) -> HashMap<Word, usize> {
    let all = words(g, max_len);
    let mut class: HashMap<Word, usize> = HashMap::new();
    let mut next = 0;
    for w in &all {
        if class.contains_key(w) {
            continue;
        }
        let mut queue = VecDeque::from([w.clone()]);
        class.insert(w.clone(), next);
        while let Some(u) = queue.pop_front() {
            for (s, l, r) in relations {
                for (from, to) in [(l, r), (r, l)] {
                    for i in 0..=u.1.len() {
                        if i + from.len() > u.1.len() || u.1[i..i + from.len()] != from[..] {
                            continue;
                        }
                        if vertex_at(g, &u, i) != *s {
                            continue;
                        }
                        let mut es = u.1[..i].to_vec();
                        es.extend_from_slice(to);
                        es.extend_from_slice(&u.1[i + from.len()..]);
                        if es.len() > max_len {
                            continue;
                        }
                        let v = (u.0, es);
                        if !class.contains_key(&v) {
                            class.insert(v.clone(), next);
                            queue.push_back(v);
                        }
                    }
                }
            }
        }
        next += 1;
    }
    class
}

pub fn class_count(classes: &HashMap<Word, usize>) -> usize {
    classes.values().collect::<BTreeSet<_>>().len()
}

/// A candidate structure on a graph as plain tables.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Candidate {
    /// `(f, g) -> m(f, g)` for every pair with `tgt f = src g`.
    pub comp: Vec<((usize, usize), usize)>,
    pub unit: Vec<usize>,
    pub inv: Option<Vec<usize>>,
}

pub fn composable_pairs(g: &FinGraph) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for f in g.edges() {
        for h in g.edges() {
            if g.tgt(f) == g.src(h) {
                out.push((f.0, h.0));
            }
        }
    }
    out
}

/// Every assignment of an edge to each composable pair and each vertex,
/// and to each edge as well when `with_inverse`.
pub fn candidates(g: &FinGraph, with_inverse: bool) -> Vec<Candidate> {
    let pairs = composable_pairs(g);
    let (p, v, e) = (pairs.len(), g.vertex_count(), g.edge_count());
    let slots = p + v + if with_inverse { e } else { 0 };
    let mut out = Vec::new();
    odometer(e, slots, |d| {
        out.push(Candidate {
            comp: pairs.iter().cloned().zip(d[..p].iter().cloned()).collect(),
            unit: d[p..p + v].to_vec(),
            inv: with_inverse.then(|| d[p + v..].to_vec()),
        });
    });
    out
}

/// The category axioms, plus the inverse axioms when `c.inv` is present,
/// written out directly. `m(f, g)` is the composite `g ∘ f`.
pub fn satisfies(g: &FinGraph, c: &Candidate) -> bool {
    let m: HashMap<(usize, usize), usize> = c.comp.iter().cloned().collect();
    let src = |e: usize| g.src(EdgeId(e)).0;
    let tgt = |e: usize| g.tgt(EdgeId(e)).0;
    for (&(f, h), &x) in &m {
        if src(x) != src(f) || tgt(x) != tgt(h) {
            return false;
        }
    }
    for (v, &u) in c.unit.iter().enumerate() {
        if src(u) != v || tgt(u) != v {
            return false;
        }
    }
    for f in 0..g.edge_count() {
        if m[&(c.unit[src(f)], f)] != f || m[&(f, c.unit[tgt(f)])] != f {
            return false;
        }
    }
    for (&(f, h), &fh) in &m {
        for k in (0..g.edge_count()).filter(|&k| src(k) == tgt(h)) {
            if m[&(fh, k)] != m[&(f, m[&(h, k)])] {
                return false;
            }
        }
    }
    if let Some(inv) = &c.inv {
        for f in 0..g.edge_count() {
            let i = inv[f];
            if src(i) != tgt(f) || tgt(i) != src(f) {
                return false;
            }
            if m[&(f, i)] != c.unit[src(f)] || m[&(i, f)] != c.unit[tgt(f)] {
                return false;
            }
        }
    }
    true
}

pub fn vid(i: usize) -> VertexId {
    VertexId(i)
}

pub fn eid(i: usize) -> EdgeId {
    EdgeId(i)
}
