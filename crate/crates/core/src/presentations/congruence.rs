use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::{Bounds, Presentation, PresentationError};
use crate::categories::{FinCategory, MorId, Path};
use crate::graphs::{quotient, EdgeId, FinGraph, GraphMorphism};
use crate::UnionFind;

/// Largest path universe [`coequalize`] will build.
pub const UNIVERSE_LIMIT: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum UndecidedReason {
    UniverseTooLarge { limit: usize },
    RelationBeyondBound { relation: String, length: usize },
    TooManyMorphisms { classes: usize, limit: usize },
    FrontierClass { normal_form: String },
    CompositeMismatch { path: String },
    LawFailure { detail: String },
}

impl fmt::Display for UndecidedReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UndecidedReason::UniverseTooLarge { limit } => {
                write!(f, "more than {limit} paths within the bound")
            }
            UndecidedReason::RelationBeyondBound { relation, length } => {
                write!(f, "relation `{relation}` has a side of length {length}")
            }
            UndecidedReason::TooManyMorphisms { classes, limit } => {
                write!(f, "{classes} classes exceed the morphism limit {limit}")
            }
            UndecidedReason::FrontierClass { normal_form } => {
                write!(f, "normal form `{normal_form}` cannot be extended within the bound")
            }
            UndecidedReason::CompositeMismatch { path } => {
                write!(f, "stepwise composite of `{path}` leaves its class")
            }
            UndecidedReason::LawFailure { detail } => write!(f, "{detail}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostics {
    /// Paths of length at most the bound.
    pub universe: usize,
    /// Congruence classes at the bound.
    pub classes: usize,
    /// Classes containing a path of maximal length.
    pub frontier_classes: usize,
    pub reason: UndecidedReason,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Saturation {
    Finite,
    Undecided { bound: usize, diagnostics: Diagnostics },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WordResult {
    Equal,
    Distinct,
    Undecided,
}

impl fmt::Display for WordResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WordResult::Equal => "equal",
            WordResult::Distinct => "distinct",
            WordResult::Undecided => "undecided",
        })
    }
}

/// The coequalizer of a presentation, evaluated on paths of bounded
/// length over the vertex quotient `G/R₀`.
#[derive(Clone, Debug)]
pub struct PresentedCategory {
    source: Presentation,
    bounds: Bounds,
    reduced: Arc<FinGraph>,
    reduction: GraphMorphism,
    universe: Vec<Path>,
    index: HashMap<Path, usize>,
    class: Vec<usize>,
    normal_forms: Vec<Path>,
    frontier: Vec<bool>,
    saturation: Saturation,
    category: Option<Arc<FinCategory>>,
    morphism_of_class: Vec<MorId>,
}

struct Closure {
    universe: Vec<Path>,
    index: HashMap<Path, usize>,
    uf: UnionFind,
}

impl Closure {
    fn build(g: &FinGraph, bound: usize) -> Option<Closure> {
        let universe = crate::categories::free_paths_capped(g, bound, UNIVERSE_LIMIT)
            .ok()?
            .paths;
        let index = universe
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let uf = UnionFind::new(universe.len());
        Some(Closure {
            universe,
            index,
            uf,
        })
    }

    /// Closes the partition under one-sided extension by an edge, as far as
    /// the extended paths stay in the universe.
    fn close(&mut self, g: &FinGraph, bound: usize) {
        let mut right = Vec::new();
        let mut left = Vec::new();
        for (i, p) in self.universe.iter().enumerate() {
            if p.len() >= bound {
                continue;
            }
            for e in g.out_edges(p.end(g)) {
                right.push((i, e, self.index[&p.push(e)]));
            }
            for e in g.in_edges(p.start()) {
                let mut edges = vec![e];
                edges.extend_from_slice(p.edges());
                let q = Path::new_unchecked(g.src(e), edges);
                left.push((i, e, self.index[&q]));
            }
        }
        loop {
            let mut changed = false;
            let mut table: HashMap<(usize, EdgeId, bool), usize> = HashMap::new();
            for (side, moves) in [(false, &right), (true, &left)] {
                for &(i, e, j) in moves {
                    let c = self.uf.find(i);
                    let cj = self.uf.find(j);
                    match table.entry((c, e, side)) {
                        Entry::Occupied(o) => changed |= self.uf.union(*o.get(), cj),
                        Entry::Vacant(v) => {
                            v.insert(cj);
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }
}

/// Evaluates the coequalizer of `p` by congruence closure on paths of
/// length at most `bounds.max_path_len`.
///
/// The result is [`Saturation::Finite`] only when every normal form can be
/// extended by each outgoing edge within the bound, composing normal forms stays
/// within the bound and agrees with the classes, the category laws hold
/// and there are at most `bounds.max_morphisms` classes.
pub fn coequalize(p: &Presentation, bounds: Bounds) -> Result<PresentedCategory, PresentationError> {
    bounds.validate()?;
    let g = p.generators();
    let h = p.relations();
    let bound = bounds.max_path_len;

    let mut vuf = UnionFind::new(g.vertex_count());
    for v in h.vertices() {
        vuf.union(p.alpha().vertex(v).0, p.beta().vertex(v).0);
    }
    let mut euf = UnionFind::new(g.edge_count());
    let (reduced, reduction) = quotient(g, &mut vuf, &mut euf);

    let mut pc = PresentedCategory {
        source: p.clone(),
        bounds,
        reduced: reduced.clone(),
        reduction: reduction.clone(),
        universe: Vec::new(),
        index: HashMap::new(),
        class: Vec::new(),
        normal_forms: Vec::new(),
        frontier: Vec::new(),
        saturation: Saturation::Finite,
        category: None,
        morphism_of_class: Vec::new(),
    };
    let undecided = |pc: &PresentedCategory, reason| Saturation::Undecided {
        bound,
        diagnostics: Diagnostics {
            universe: pc.universe.len(),
            classes: pc.normal_forms.len(),
            frontier_classes: pc.frontier.iter().filter(|&&f| f).count(),
            reason,
        },
    };

    let Some(mut closure) = Closure::build(&reduced, bound) else {
        pc.saturation = undecided(&pc, UndecidedReason::UniverseTooLarge {
            limit: UNIVERSE_LIMIT,
        });
        return Ok(pc);
    };
    let mut beyond = None;
    for e in h.edges() {
        let a = p.alpha().edge(e).map(&reduction);
        let b = p.beta().edge(e).map(&reduction);
        match (closure.index.get(&a), closure.index.get(&b)) {
            (Some(&i), Some(&j)) => {
                closure.uf.union(i, j);
            }
            _ => {
                beyond.get_or_insert((h.edge_name(e).to_string(), a.len().max(b.len())));
            }
        }
    }
    closure.close(&reduced, bound);

    let (class, count) = closure.uf.classes();
    let mut normal_forms: Vec<Option<Path>> = vec![None; count];
    let mut frontier = vec![false; count];
    for (i, p) in closure.universe.iter().enumerate() {
        normal_forms[class[i]].get_or_insert_with(|| p.clone());
        frontier[class[i]] |= p.len() == bound;
    }
    pc.normal_forms = normal_forms.into_iter().map(Option::unwrap).collect();
    pc.frontier = frontier;
    pc.class = class;
    pc.universe = closure.universe;
    pc.index = closure.index;

    if let Some((relation, length)) = beyond {
        pc.saturation = undecided(&pc, UndecidedReason::RelationBeyondBound { relation, length });
        return Ok(pc);
    }
    if count > bounds.max_morphisms {
        pc.saturation = undecided(&pc, UndecidedReason::TooManyMorphisms {
            classes: count,
            limit: bounds.max_morphisms,
        });
        return Ok(pc);
    }
    // Appending an edge to a normal form must stay within the bound.
    let stuck = |nf: &&Path| nf.len() >= bound && reduced.out_edges(nf.end(&reduced)).next().is_some();
    if let Some(nf) = pc.normal_forms.iter().find(stuck) {
        let normal_form = nf.display(&reduced);
        pc.saturation = undecided(&pc, UndecidedReason::FrontierClass { normal_form });
        return Ok(pc);
    }
    if let Some(bad) = (0..pc.universe.len()).find(|&i| pc.act(&pc.universe[i]) != Some(pc.class[i])) {
        let path = pc.universe[bad].display(&reduced);
        pc.saturation = undecided(&pc, UndecidedReason::CompositeMismatch { path });
        return Ok(pc);
    }
    match pc.build_category() {
        Ok((category, morphism_of_class)) => {
            pc.category = Some(Arc::new(category));
            pc.morphism_of_class = morphism_of_class;
        }
        Err(detail) => {
            pc.saturation = undecided(&pc, UndecidedReason::LawFailure { detail });
        }
    }
    Ok(pc)
}

impl PresentedCategory {
    /// Class reached from the identity at the start of `p` by appending the
    /// edges of `p` one at a time to normal forms.
    fn act(&self, p: &Path) -> Option<usize> {
        self.act_from(self.class[*self.index.get(&Path::identity(p.start()))?], p.edges())
    }

    fn act_from(&self, mut c: usize, edges: &[EdgeId]) -> Option<usize> {
        for &e in edges {
            let next = self.normal_forms[c].push(e);
            c = self.class[*self.index.get(&next)?];
        }
        Some(c)
    }

    fn build_category(&self) -> Result<(FinCategory, Vec<MorId>), String> {
        let g = &*self.reduced;
        let names: Vec<String> = self.normal_forms.iter().map(|p| p.display(g)).collect();
        let edges = self
            .normal_forms
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
        let graph = Arc::new(FinGraph::new(g.vertex_names().to_vec(), edges).map_err(|e| e.to_string())?);
        let mor: Vec<MorId> = names.iter().map(|n| graph.edge_id(n).unwrap()).collect();
        let ids = g
            .vertices()
            .map(|v| mor[self.class[self.index[&Path::identity(v)]]])
            .collect();
        let mut by_start: Vec<Vec<usize>> = vec![Vec::new(); g.vertex_count()];
        for (c, nf) in self.normal_forms.iter().enumerate() {
            by_start[nf.start().0].push(c);
        }
        let mut comp = Vec::new();
        for (x, nf) in self.normal_forms.iter().enumerate() {
            for &y in &by_start[nf.end(g).0] {
                let z = self
                    .act_from(x, self.normal_forms[y].edges())
                    .ok_or_else(|| "composite leaves the bound".to_string())?;
                comp.push((mor[x], mor[y], mor[z]));
            }
        }
        let category = FinCategory::new(graph, ids, comp).map_err(|e| e.to_string())?;
        Ok((category, mor))
    }

    pub fn presentation(&self) -> &Presentation {
        &self.source
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    pub fn saturation(&self) -> &Saturation {
        &self.saturation
    }

    pub fn is_finite(&self) -> bool {
        self.saturation == Saturation::Finite
    }

    /// The coequalizer as a finite category, when saturated.
    pub fn category(&self) -> Option<&Arc<FinCategory>> {
        self.category.as_ref()
    }

    /// The category, or the undecided diagnostics as an error.
    pub fn require_finite(&self) -> Result<&Arc<FinCategory>, PresentationError> {
        match (&self.saturation, &self.category) {
            (Saturation::Finite, Some(c)) => Ok(c),
            (Saturation::Undecided { bound, diagnostics }, _) => Err(PresentationError::Undecided {
                bound: *bound,
                diagnostics: diagnostics.clone(),
            }),
            (Saturation::Finite, None) => unreachable!("finite results carry a category"),
        }
    }

    /// `G/R₀`, whose vertices are the objects.
    pub fn reduced_generators(&self) -> &Arc<FinGraph> {
        &self.reduced
    }

    /// The quotient `r: G -> G/R₀`.
    pub fn vertex_reduction(&self) -> &GraphMorphism {
        &self.reduction
    }

    pub fn class_count(&self) -> usize {
        self.normal_forms.len()
    }

    /// Length-lex least representative of each class, in class order.
    pub fn normal_forms(&self) -> &[Path] {
        &self.normal_forms
    }

    /// Every path of length at most the bound over `G/R₀`.
    pub fn universe(&self) -> &[Path] {
        &self.universe
    }

    fn reduce(&self, p: &Path) -> Path {
        p.map(&self.reduction)
    }

    /// Class of a path over `G`. Any length is accepted when saturated;
    /// otherwise only paths within the bound have a class.
    pub fn class_of(&self, p: &Path) -> Option<usize> {
        let p = self.reduce(p);
        self.class_of_reduced(&p)
    }

    pub(crate) fn class_of_reduced(&self, p: &Path) -> Option<usize> {
        if self.category.is_some() {
            self.act(p)
        } else {
            self.index.get(p).map(|&i| self.class[i])
        }
    }

    pub fn normal_form(&self, p: &Path) -> Option<&Path> {
        self.class_of(p).map(|c| &self.normal_forms[c])
    }

    /// Image of a path over `G` under the quotient functor `q`.
    pub fn quotient_of_path(&self, p: &Path) -> Option<MorId> {
        self.category.as_ref()?;
        self.class_of(p).map(|c| self.morphism_of_class[c])
    }

    /// Class whose morphism is `m`.
    pub(crate) fn class_of_morphism(&self, m: MorId) -> usize {
        self.morphism_of_class
            .iter()
            .position(|&x| x == m)
            .expect("morphism of this category")
    }

    /// `q` restricted to generators: `G -> U(M)`.
    pub fn quotient_map(&self) -> Option<GraphMorphism> {
        let c = self.category.as_ref()?;
        let g = self.source.generators();
        let emap = g
            .edges()
            .map(|e| self.quotient_of_path(&Path::single(g, e)).unwrap())
            .collect();
        Some(GraphMorphism::new_unchecked(
            g.clone(),
            c.graph().clone(),
            self.reduction.vertex_map().to_vec(),
            emap,
        ))
    }
}

/// Decides equality of two paths over the generators.
///
/// Saturated results decide every pair. Otherwise paths in the same
/// class are equal, paths beyond the bound or in classes reaching the
/// bound are undecided, and the remaining pairs are distinct.
pub fn morphism_equal(pc: &PresentedCategory, p: &Path, q: &Path) -> WordResult {
    if p == q {
        return WordResult::Equal;
    }
    let (Some(a), Some(b)) = (pc.class_of(p), pc.class_of(q)) else {
        return WordResult::Undecided;
    };
    if a == b {
        WordResult::Equal
    } else if pc.is_finite() || !(pc.frontier[a] || pc.frontier[b]) {
        WordResult::Distinct
    } else {
        WordResult::Undecided
    }
}
