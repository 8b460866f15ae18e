//! Chains of finite categories and the hom-set stabilization probe.
//!
//! A [`ChainSystem`] is a lazily evaluated chain `X₀ → X₁ → ...` with a hard
//! evaluation cap. The probe enumerates `Hom(M, Xₙ)` for each stage and
//! follows the maps induced by the links: the hom-sets out of a finitely
//! presentable `M` should eventually stop changing.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::Serialize;
use thiserror::Error;

use crate::categories::{
    enumerate_functors_limited, find_cycle, free_category, restrict_to_generators,
    underlying_graph, CategoryError, FinCategory, Functor, SearchSpaceTooLarge,
};
use crate::graphs::{hom_graphs, EdgeId, FinGraph, VertexId};
use crate::presentations::{coequalize, Bounds, Presentation, PresentationError};
use crate::UnionFind;

/// Upper bound on the functor search space per stage.
pub const SEARCH_LIMIT: u128 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProbeError {
    #[error("stage {requested} is beyond the chain's cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("probe cap must be at least 1")]
    ZeroCap,
    #[error("link {index} does not connect consecutive stages")]
    BadLink { index: usize },
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error("functor search space {} exceeds limit {}", .0.cardinality, .0.limit)]
    SearchSpaceTooLarge(SearchSpaceTooLarge),
}

type StageFn = dyn Fn(usize) -> FinCategory + Send + Sync;
type LinkFn =
    dyn Fn(usize, &Arc<FinCategory>, &Arc<FinCategory>) -> Result<Functor, CategoryError> + Send + Sync;

/// An ω-chain of finite categories, memoized per stage.
pub struct ChainSystem {
    name: String,
    cap: usize,
    stage_fn: Box<StageFn>,
    link_fn: Box<LinkFn>,
    stages: Mutex<HashMap<usize, Arc<FinCategory>>>,
    links: Mutex<HashMap<usize, Functor>>,
}

impl fmt::Debug for ChainSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ChainSystem")
            .field("name", &self.name)
            .field("cap", &self.cap)
            .finish_non_exhaustive()
    }
}

impl ChainSystem {
    /// `link(i, Xᵢ, Xᵢ₊₁)` must return a functor between the given stages.
    pub fn new(
        name: impl Into<String>,
        cap: usize,
        stage: impl Fn(usize) -> FinCategory + Send + Sync + 'static,
        link: impl Fn(usize, &Arc<FinCategory>, &Arc<FinCategory>) -> Result<Functor, CategoryError>
            + Send
            + Sync
            + 'static,
    ) -> ChainSystem {
        ChainSystem {
            name: name.into(),
            cap,
            stage_fn: Box::new(stage),
            link_fn: Box::new(link),
            stages: Mutex::new(HashMap::new()),
            links: Mutex::new(HashMap::new()),
        }
    }

    /// `Xᵢ` discrete on `{0, ..., i}` with inclusions.
    pub fn discrete_inclusion(cap: usize) -> ChainSystem {
        ChainSystem::new(
            "discrete-inclusion",
            cap,
            |i| FinCategory::discrete((0..=i).map(|k| k.to_string())),
            |_, a, b| by_object_names(a, b, |name| name.to_string()),
        )
    }

    /// Discrete `{a, b}` collapsing onto a point, then constant.
    pub fn collapse(cap: usize) -> ChainSystem {
        ChainSystem::new(
            "collapse",
            cap,
            |i| {
                if i == 0 {
                    FinCategory::discrete(["a", "b"])
                } else {
                    FinCategory::terminal()
                }
            },
            |_, a, b| by_object_names(a, b, |_| "*".to_string()),
        )
    }

    /// Constant at `c` with identity links.
    pub fn constant(c: FinCategory, cap: usize) -> ChainSystem {
        let c = Arc::new(c);
        ChainSystem::new(
            "constant",
            cap,
            move |_| (*c).clone(),
            |_, a, b| {
                Functor::new(a.clone(), b.clone(), a.objects().collect(), a.morphisms().collect())
            },
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn stage(&self, i: usize) -> Result<Arc<FinCategory>, ProbeError> {
        if i > self.cap {
            return Err(ProbeError::CapExceeded {
                requested: i,
                cap: self.cap,
            });
        }
        if let Some(c) = self.stages.lock().unwrap().get(&i) {
            return Ok(c.clone());
        }
        let c = Arc::new((self.stage_fn)(i));
        Ok(self.stages.lock().unwrap().entry(i).or_insert(c).clone())
    }

    /// The link `Xᵢ → Xᵢ₊₁`.
    pub fn link(&self, i: usize) -> Result<Functor, ProbeError> {
        if i + 1 > self.cap {
            return Err(ProbeError::CapExceeded {
                requested: i + 1,
                cap: self.cap,
            });
        }
        if let Some(f) = self.links.lock().unwrap().get(&i) {
            return Ok(f.clone());
        }
        let (a, b) = (self.stage(i)?, self.stage(i + 1)?);
        let f = (self.link_fn)(i, &a, &b)?;
        if **f.dom() != *a || **f.cod() != *b {
            return Err(ProbeError::BadLink { index: i });
        }
        Ok(self.links.lock().unwrap().entry(i).or_insert(f).clone())
    }
}

/// The functor between discrete-like stages determined on object names;
/// identities go to identities.
fn by_object_names(
    a: &Arc<FinCategory>,
    b: &Arc<FinCategory>,
    rename: impl Fn(&str) -> String,
) -> Result<Functor, CategoryError> {
    let omap: Vec<VertexId> = a
        .objects()
        .map(|o| {
            let name = rename(a.object_name(o));
            b.object_id(&name).ok_or(CategoryError::UnknownObject(name))
        })
        .collect::<Result<_, _>>()?;
    let mmap = a
        .morphisms()
        .map(|m| {
            if a.is_identity(m) {
                Ok(b.id(omap[a.src(m).0]))
            } else {
                Err(CategoryError::UnknownMorphism(a.morphism_name(m).to_string()))
            }
        })
        .collect::<Result<_, _>>()?;
    Functor::new(a.clone(), b.clone(), omap, mmap)
}

/// The colimit of `X₀ → ... → Xₙ` with its cocone.
#[derive(Clone, Debug)]
pub struct ChainColimit {
    pub colimit: Arc<FinCategory>,
    /// `Xᵢ → colimit` for `i = 0..=n`.
    pub cocone: Vec<Functor>,
}

/// Colimit of the truncated chain computed cellwise on underlying graphs,
/// with composition induced from the last stage.
pub fn chain_colimit_truncated(ch: &ChainSystem, n: usize) -> Result<ChainColimit, ProbeError> {
    let stages: Vec<Arc<FinCategory>> = (0..=n).map(|i| ch.stage(i)).collect::<Result<_, _>>()?;
    let links: Vec<Functor> = (0..n).map(|i| ch.link(i)).collect::<Result<_, _>>()?;
    let offsets = |count: fn(&FinCategory) -> usize| {
        let mut acc = vec![0];
        for s in &stages {
            acc.push(acc.last().unwrap() + count(s));
        }
        acc
    };
    let (ob_off, mor_off) = (offsets(FinCategory::object_count), offsets(FinCategory::morphism_count));
    let mut obs = UnionFind::new(*ob_off.last().unwrap());
    let mut mors = UnionFind::new(*mor_off.last().unwrap());
    for (i, l) in links.iter().enumerate() {
        for o in stages[i].objects() {
            obs.union(ob_off[i] + o.0, ob_off[i + 1] + l.object(o).0);
        }
        for m in stages[i].morphisms() {
            mors.union(mor_off[i] + m.0, mor_off[i + 1] + l.morphism(m).0);
        }
    }
    // Each class holds exactly one cell of the last stage; it names the class.
    let last = &stages[n];
    let mut ob_rep = HashMap::new();
    for o in last.objects() {
        ob_rep.insert(obs.find(ob_off[n] + o.0), o);
    }
    let mut mor_rep = HashMap::new();
    for m in last.morphisms() {
        mor_rep.insert(mors.find(mor_off[n] + m.0), m);
    }
    let vertices = last.graph().vertex_names().to_vec();
    let edges = last
        .morphisms()
        .map(|m| {
            (
                last.morphism_name(m).to_string(),
                last.object_name(last.src(m)).to_string(),
                last.object_name(last.tgt(m)).to_string(),
            )
        })
        .collect();
    let graph = Arc::new(FinGraph::new(vertices, edges).map_err(CategoryError::from)?);
    let comp = last
        .composable_pairs()
        .map(|(f, g)| (f, g, last.compose(f, g).unwrap()));
    let colimit = Arc::new(FinCategory::new(graph, last.identities().to_vec(), comp)?);
    let cocone = stages
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let omap = s.objects().map(|o| ob_rep[&obs.find(ob_off[i] + o.0)]).collect();
            let mmap = s.morphisms().map(|m| mor_rep[&mors.find(mor_off[i] + m.0)]).collect();
            Functor::new(s.clone(), colimit.clone(), omap, mmap)
        })
        .collect::<Result<_, _>>()?;
    Ok(ChainColimit { colimit, cocone })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "stage", rename_all = "kebab-case")]
pub enum Verdict {
    /// Every link-induced hom map from stage `k` up to the cap is a
    /// bijection, with `k` below the cap.
    StableBy(usize),
    NotStabilizedWithin(usize),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::StableBy(k) => write!(f, "stable by stage {k}"),
            Verdict::NotStabilizedWithin(c) => write!(f, "not stabilized within {c} stages"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    /// A map into the last probed stage.
    pub element: String,
    /// Least stage it comes from.
    pub stage: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coequalization {
    pub stage: usize,
    pub left: String,
    pub right: String,
    /// Least later stage where the two pushforwards agree.
    pub merged_at: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RouteCheck {
    pub stage: usize,
    pub graph_route: usize,
    pub functor_route: usize,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizationReport {
    pub model: String,
    pub chain: String,
    pub probed_stages: usize,
    pub hom_counts: Vec<usize>,
    /// Whether the map `Hom(M, Xᵢ) → Hom(M, Xᵢ₊₁)` is a bijection.
    pub link_bijective: Vec<bool>,
    pub factorization: Vec<Factorization>,
    pub coequalization: Vec<Coequalization>,
    /// Both adjunction routes, when the generating graph is acyclic.
    pub routes: Option<Vec<RouteCheck>>,
    pub naturality: Option<bool>,
    pub verdict: Verdict,
}

/// A hom element as cell maps into a stage: object and morphism images.
type Elem = (Vec<VertexId>, Vec<EdgeId>);

fn push(e: &Elem, link: &Functor) -> Elem {
    (
        e.0.iter().map(|&o| link.object(o)).collect(),
        e.1.iter().map(|&m| link.morphism(m)).collect(),
    )
}

fn describe(e: &Elem, dom: &FinGraph, cod: &FinCategory) -> String {
    let mut parts: Vec<String> = dom
        .vertices()
        .map(|v| format!("{}:{}", dom.vertex_name(v), cod.object_name(e.0[v.0])))
        .collect();
    parts.extend(dom.edges().map(|x| {
        format!(
            "{}:{}",
            dom.edge_name(x),
            cod.morphism_name(e.1[x.0])
        )
    }));
    parts.join(" ")
}

/// The probe shared by both entry points. `homs[n]` lists the hom
/// elements into stage `n`; `dom` names the cells being mapped.
fn probe(
    model: String,
    ch: &ChainSystem,
    cap: usize,
    dom: &FinGraph,
    homs: &[Vec<Elem>],
) -> Result<StabilizationReport, ProbeError> {
    let links: Vec<Functor> = (0..cap).map(|i| ch.link(i)).collect::<Result<_, _>>()?;
    let index: Vec<HashMap<&Elem, usize>> = homs
        .iter()
        .map(|h| h.iter().enumerate().map(|(i, e)| (e, i)).collect())
        .collect();
    // forward[i][a] = index in homs[i + 1] of the pushforward of homs[i][a].
    let forward: Vec<Vec<usize>> = (0..cap)
        .map(|i| {
            homs[i]
                .iter()
                .map(|e| index[i + 1][&push(e, &links[i])])
                .collect()
        })
        .collect();
    let link_bijective: Vec<bool> = forward
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let mut hit = vec![false; homs[i + 1].len()];
            f.iter().for_each(|&j| hit[j] = true);
            f.len() == homs[i + 1].len() && hit.iter().all(|&h| h)
        })
        .collect();
    let stage_name = |n: usize| ch.stage(n);

    let last = stage_name(cap)?;
    let mut from = vec![None; homs[cap].len()];
    for i in (0..=cap).rev() {
        for a in 0..homs[i].len() {
            let mut j = a;
            for f in &forward[i..cap] {
                j = f[j];
            }
            from[j] = Some(i);
        }
    }
    let factorization = homs[cap]
        .iter()
        .zip(&from)
        .map(|(e, s)| Factorization {
            element: describe(e, dom, &last),
            stage: s.expect("every element comes from the last stage"),
        })
        .collect();

    let mut coequalization = Vec::new();
    for i in 0..cap {
        let here = stage_name(i)?;
        let mut current: Vec<usize> = (0..homs[i].len()).collect();
        let mut merged: HashMap<(usize, usize), usize> = HashMap::new();
        for (n, f) in forward.iter().enumerate().skip(i) {
            current.iter_mut().for_each(|j| *j = f[*j]);
            for a in 0..current.len() {
                for b in a + 1..current.len() {
                    if current[a] == current[b] {
                        merged.entry((a, b)).or_insert(n + 1);
                    }
                }
            }
        }
        let mut pairs: Vec<_> = merged.into_iter().collect();
        pairs.sort();
        for ((a, b), n) in pairs {
            coequalization.push(Coequalization {
                stage: i,
                left: describe(&homs[i][a], dom, &here),
                right: describe(&homs[i][b], dom, &here),
                merged_at: n,
            });
        }
    }

    let verdict = (0..cap)
        .find(|&k| link_bijective[k..].iter().all(|&b| b))
        .map_or(Verdict::NotStabilizedWithin(cap), Verdict::StableBy);
    Ok(StabilizationReport {
        model,
        chain: ch.name().to_string(),
        probed_stages: cap + 1,
        hom_counts: homs.iter().map(Vec::len).collect(),
        link_bijective,
        factorization,
        coequalization,
        routes: None,
        naturality: None,
        verdict,
    })
}

fn functor_elems(
    m: &Arc<FinCategory>,
    stage: &Arc<FinCategory>,
) -> Result<Vec<Elem>, ProbeError> {
    let mut v: Vec<Elem> = enumerate_functors_limited(m, stage, SEARCH_LIMIT)
        .map_err(ProbeError::SearchSpaceTooLarge)?
        .iter()
        .map(|f| {
            (
                f.object_map().to_vec(),
                f.morphism_map().to_vec(),
            )
        })
        .collect();
    v.sort();
    Ok(v)
}

/// Probes `Hom(M, Xₙ)` for `n = 0..=cap`, where `M` is the coequalizer of
/// `mp`.
pub fn fp_stabilization_probe(
    mp: &Presentation,
    bounds: Bounds,
    ch: &ChainSystem,
    cap: usize,
) -> Result<StabilizationReport, ProbeError> {
    if cap == 0 {
        return Err(ProbeError::ZeroCap);
    }
    let pc = coequalize(mp, bounds)?;
    let m = pc.require_finite()?.clone();
    let homs = (0..=cap)
        .map(|n| functor_elems(&m, &ch.stage(n)?))
        .collect::<Result<Vec<_>, _>>()?;
    let model = format!(
        "presented category ({} objects, {} morphisms)",
        m.object_count(),
        m.morphism_count()
    );
    probe(model, ch, cap, m.graph(), &homs)
}

/// Probes `Hom(F(G), Xₙ) = Gr(G, U(Xₙ))`, computing the hom-sets as graph
/// morphisms. When `G` is acyclic the functors out of `free_category(G)`
/// are enumerated too and both routes are compared, including their
/// behaviour along the links.
pub fn free_model_fp_check(
    g: &Arc<FinGraph>,
    ch: &ChainSystem,
    cap: usize,
) -> Result<StabilizationReport, ProbeError> {
    if cap == 0 {
        return Err(ProbeError::ZeroCap);
    }
    let stages: Vec<Arc<FinCategory>> = (0..=cap).map(|n| ch.stage(n)).collect::<Result<_, _>>()?;
    let graph_route: Vec<Vec<Elem>> = stages
        .iter()
        .map(|s| {
            let mut v: Vec<Elem> = hom_graphs(g, &underlying_graph(s))
                .iter()
                .map(|h| {
                    (
                        h.vertex_map().to_vec(),
                        h.edge_map().to_vec(),
                    )
                })
                .collect();
            v.sort();
            v
        })
        .collect();
    let mut report = probe(
        format!("free category on {} vertices, {} edges", g.vertex_count(), g.edge_count()),
        ch,
        cap,
        g,
        &graph_route,
    )?;
    if find_cycle(g).is_none() {
        let free = Arc::new(free_category(g).expect("acyclic"));
        let mut routes = Vec::new();
        let mut natural = true;
        for (n, s) in stages.iter().enumerate() {
            let functors = enumerate_functors_limited(&free, s, SEARCH_LIMIT)
                .map_err(ProbeError::SearchSpaceTooLarge)?;
            let mut restricted: Vec<Elem> = functors
                .iter()
                .map(|f| {
                    let h = restrict_to_generators(f, g)?;
                    Ok((
                        h.vertex_map().to_vec(),
                        h.edge_map().to_vec(),
                    ))
                })
                .collect::<Result<_, CategoryError>>()?;
            restricted.sort();
            routes.push(RouteCheck {
                stage: n,
                graph_route: graph_route[n].len(),
                functor_route: functors.len(),
                agree: restricted == graph_route[n],
            });
            if n < cap {
                let link = ch.link(n)?;
                for f in &functors {
                    let via_functor = restrict_to_generators(&f.then(&link)?, g)?;
                    let h = restrict_to_generators(f, g)?;
                    let via_graph = h.then(&link.as_graph_morphism()).map_err(CategoryError::from)?;
                    natural &= via_functor.vertex_map() == via_graph.vertex_map()
                        && via_functor.edge_map() == via_graph.edge_map();
                }
            }
        }
        report.routes = Some(routes);
        report.naturality = Some(natural);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{representable, Cell};
    use crate::presentations::Bounds;

    fn point_presentation() -> Presentation {
        Presentation::free(Arc::new(FinGraph::builder().vertex("x").build().unwrap())).unwrap()
    }

    fn z2() -> FinCategory {
        let g = Arc::new(
            FinGraph::builder()
                .vertex("*")
                .edge("id", "*", "*")
                .edge("v", "*", "*")
                .build()
                .unwrap(),
        );
        FinCategory::from_names(
            g,
            &[("*", "id")],
            &[("id", "id", "id"), ("id", "v", "v"), ("v", "id", "v"), ("v", "v", "id")],
        )
        .unwrap()
    }

    #[test]
    fn truncated_colimits() {
        let ch = ChainSystem::discrete_inclusion(8);
        let c = chain_colimit_truncated(&ch, 3).unwrap();
        assert_eq!((c.colimit.object_count(), c.colimit.morphism_count()), (4, 4));
        assert_eq!(c.cocone.len(), 4);
        let c = chain_colimit_truncated(&ChainSystem::collapse(8), 2).unwrap();
        assert_eq!(*c.colimit, FinCategory::terminal());
        let k = chain_colimit_truncated(&ChainSystem::constant(z2(), 4), 4).unwrap();
        assert_eq!(*k.colimit, z2());
        assert!(k.cocone.iter().all(|f| *f == Functor::identity(k.colimit.clone())));
        assert!(matches!(
            chain_colimit_truncated(&ch, 9),
            Err(ProbeError::CapExceeded { requested: 9, cap: 8 })
        ));
    }

    #[test]
    fn probe_examples() {
        let b = Bounds::new(2, 100);
        let r = fp_stabilization_probe(&point_presentation(), b, &ChainSystem::discrete_inclusion(16), 5).unwrap();
        assert_eq!(r.hom_counts, [1, 2, 3, 4, 5, 6]);
        assert_eq!(r.verdict, Verdict::NotStabilizedWithin(5));

        let r = fp_stabilization_probe(&point_presentation(), b, &ChainSystem::collapse(16), 4).unwrap();
        assert_eq!(r.verdict, Verdict::StableBy(1));
        assert_eq!(r.coequalization.len(), 1);
        assert_eq!(r.coequalization[0].merged_at, 1);

        let zp = crate::presentations::canonical_presentation(&z2());
        let r = fp_stabilization_probe(&zp, b, &ChainSystem::constant(z2(), 16), 3).unwrap();
        assert_eq!(r.hom_counts, [2, 2, 2, 2]);
        assert_eq!(r.verdict, Verdict::StableBy(0));
    }

    #[test]
    fn free_model_examples() {
        let point = Arc::new(representable(Cell::Zero));
        let r = free_model_fp_check(&point, &ChainSystem::collapse(16), 3).unwrap();
        assert_eq!(r.verdict, Verdict::StableBy(1));
        let arrow = Arc::new(representable(Cell::One));
        let r = free_model_fp_check(&arrow, &ChainSystem::constant(z2(), 16), 3).unwrap();
        assert_eq!(r.hom_counts, [2, 2, 2, 2]);
        assert_eq!(r.verdict, Verdict::StableBy(0));
        assert!(r.routes.unwrap().iter().all(|c| c.agree));
        assert_eq!(r.naturality, Some(true));
        assert_eq!(
            free_model_fp_check(&arrow, &ChainSystem::collapse(16), 0).unwrap_err(),
            ProbeError::ZeroCap
        );
    }
}
