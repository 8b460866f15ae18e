//! Models of the graph theories of categories and groupoids.
//!
//! A [`ModelData`] is a raw candidate: a carrier graph with a composition
//! table on composable pairs, a unit edge per vertex and optionally an
//! inverse edge per edge. The checkers evaluate the theory's equations as
//! finite quantifications over vertices, edges and composable tuples. The
//! derived operations are used in their forced form: on a composable
//! triple `(f, g, h)` the two routes to a composable pair are
//! `(m(f, g), h)` and `(f, m(g, h))`; on an edge `f` the unit routes are
//! `(e(s f), f)` and `(f, e(t f))`, and the inverse routes
//! `(ι f, f)` and `(f, ι f)`.

use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::categories::{FinCategory, MorId};
use crate::graphs::{composable_sequences, EdgeId, FinGraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Theory {
    /// The theory whose models are categories.
    #[serde(rename = "cat")]
    Category,
    /// The extension by an inverse operation, whose models are groupoids.
    #[serde(rename = "grpd")]
    Groupoid,
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theory::Category => "cat",
            Theory::Groupoid => "grpd",
        })
    }
}

impl FromStr for Theory {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cat" => Ok(Theory::Category),
            "grpd" => Ok(Theory::Groupoid),
            other => Err(format!("unknown theory `{other}` (expected cat or grpd)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Axiom {
    #[serde(rename = "src-compat")]
    SrcCompat,
    #[serde(rename = "tgt-compat")]
    TgtCompat,
    #[serde(rename = "assoc")]
    Assoc,
    #[serde(rename = "unit-endpoints")]
    UnitEndpoints,
    #[serde(rename = "left-unit")]
    LeftUnit,
    #[serde(rename = "right-unit")]
    RightUnit,
    #[serde(rename = "inv-endpoints")]
    InvEndpoints,
    #[serde(rename = "inv-left")]
    InvLeft,
    #[serde(rename = "inv-right")]
    InvRight,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::SrcCompat => "src-compat",
            Axiom::TgtCompat => "tgt-compat",
            Axiom::Assoc => "assoc",
            Axiom::UnitEndpoints => "unit-endpoints",
            Axiom::LeftUnit => "left-unit",
            Axiom::RightUnit => "right-unit",
            Axiom::InvEndpoints => "inv-endpoints",
            Axiom::InvLeft => "inv-left",
            Axiom::InvRight => "inv-right",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub theory: Theory,
    pub passed: bool,
    /// First failing tuple (canonical order) of every failing axiom.
    pub violations: Vec<Violation>,
}

/// Defects that make a candidate ill-formed, as opposed to failing an axiom.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum StructuralDefect {
    #[error("composite given for non-composable pair ({0}, {1})")]
    CompositeOnNonComposable(String, String),
    #[error("no composite for composable pair ({0}, {1})")]
    MissingComposite(String, String),
    #[error("no unit for vertex `{0}`")]
    MissingUnit(String),
    #[error("no inverse for edge `{0}`")]
    MissingInverse(String),
    #[error("inverse map absent")]
    InverseAbsent,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("malformed model: {0}")]
    Structure(#[from] StructuralDefect),
    #[error("not a model: {} axiom(s) violated", .0.violations.len())]
    NotAModel(CheckReport),
    #[error("morphism `{0}` has no two-sided inverse")]
    NoInverse(String),
    #[error("search space of {cardinality} assignments exceeds cap {cap}")]
    SearchSpaceTooLarge { cardinality: u128, cap: u128 },
}

/// Candidate model structure on a carrier graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModelData {
    carrier: Arc<FinGraph>,
    comp: Vec<Option<EdgeId>>,
    unit: Vec<Option<EdgeId>>,
    inv: Option<Vec<Option<EdgeId>>>,
}

impl ModelData {
    /// An empty candidate: no composites, units or inverses assigned.
    pub fn new(carrier: Arc<FinGraph>) -> ModelData {
        let n = carrier.edge_count();
        ModelData {
            comp: vec![None; n * n],
            unit: vec![None; carrier.vertex_count()],
            inv: None,
            carrier,
        }
    }

    pub fn carrier(&self) -> &Arc<FinGraph> {
        &self.carrier
    }

    /// Records `m(f, g) = h`, i.e. `g ∘ f = h`.
    pub fn set_comp(&mut self, f: EdgeId, g: EdgeId, h: EdgeId) {
        let n = self.carrier.edge_count();
        self.comp[f.0 * n + g.0] = Some(h);
    }

    pub fn set_unit(&mut self, v: VertexId, e: EdgeId) {
        self.unit[v.0] = Some(e);
    }

    pub fn set_inv(&mut self, f: EdgeId, g: EdgeId) {
        let n = self.carrier.edge_count();
        self.inv.get_or_insert_with(|| vec![None; n])[f.0] = Some(g);
    }

    pub fn clear_inv(&mut self) {
        self.inv = None;
    }

    pub fn comp(&self, f: EdgeId, g: EdgeId) -> Option<EdgeId> {
        self.comp[f.0 * self.carrier.edge_count() + g.0]
    }

    pub fn unit(&self, v: VertexId) -> Option<EdgeId> {
        self.unit[v.0]
    }

    pub fn inv(&self, f: EdgeId) -> Option<EdgeId> {
        self.inv.as_ref().and_then(|i| i[f.0])
    }

    pub fn has_inverse(&self) -> bool {
        self.inv.is_some()
    }

    /// All assigned composites as `(f, g, m(f, g))`.
    pub fn composites(&self) -> impl Iterator<Item = (EdgeId, EdgeId, EdgeId)> + '_ {
        let n = self.carrier.edge_count();
        self.comp
            .iter()
            .enumerate()
            .filter_map(move |(i, h)| h.map(|h| (EdgeId(i / n), EdgeId(i % n), h)))
    }

    /// Totality of the operations on their domains.
    pub fn validate_structure(&self, theory: Theory) -> Result<(), StructuralDefect> {
        let g = &*self.carrier;
        let name = |e: EdgeId| g.edge_name(e).to_string();
        for f in g.edges() {
            for h in g.edges() {
                let composable = g.tgt(f) == g.src(h);
                match (composable, self.comp(f, h)) {
                    (false, Some(_)) => {
                        return Err(StructuralDefect::CompositeOnNonComposable(name(f), name(h)))
                    }
                    (true, None) => return Err(StructuralDefect::MissingComposite(name(f), name(h))),
                    _ => {}
                }
            }
        }
        if let Some(v) = g.vertices().find(|&v| self.unit(v).is_none()) {
            return Err(StructuralDefect::MissingUnit(g.vertex_name(v).to_string()));
        }
        match (&self.inv, theory) {
            (None, Theory::Groupoid) => return Err(StructuralDefect::InverseAbsent),
            (Some(inv), _) => {
                if let Some(f) = g.edges().find(|f| inv[f.0].is_none()) {
                    return Err(StructuralDefect::MissingInverse(name(f)));
                }
            }
            (None, Theory::Category) => {}
        }
        Ok(())
    }
}

/// Receives axiom failures as the checker finds them.
trait Sink {
    /// Called with the first failing tuple of an axiom.
    fn fail(&mut self, axiom: Axiom, witness: &[EdgeId], vertex: Option<VertexId>) -> ControlFlow<()>;
}

struct Verdict;

impl Sink for Verdict {
    fn fail(&mut self, _: Axiom, _: &[EdgeId], _: Option<VertexId>) -> ControlFlow<()> {
        ControlFlow::Break(())
    }
}

struct Report<'a> {
    graph: &'a FinGraph,
    violations: Vec<Violation>,
}

impl Sink for Report<'_> {
    fn fail(&mut self, axiom: Axiom, witness: &[EdgeId], vertex: Option<VertexId>) -> ControlFlow<()> {
        let mut names: Vec<String> = vertex
            .map(|v| self.graph.vertex_name(v).to_string())
            .into_iter()
            .collect();
        names.extend(witness.iter().map(|&e| self.graph.edge_name(e).to_string()));
        self.violations.push(Violation {
            axiom,
            witness: names,
        });
        ControlFlow::Continue(())
    }
}

/// Evaluates every axiom of `theory`. Structure must already be valid.
fn evaluate(m: &ModelData, theory: Theory, sink: &mut impl Sink) -> ControlFlow<()> {
    let g = &*m.carrier;
    let comp = |f: EdgeId, h: EdgeId| m.comp(f, h).expect("validated");
    let unit = |v: VertexId| m.unit(v).expect("validated");
    let composable = |f: EdgeId, h: EdgeId| g.tgt(f) == g.src(h);
    let pairs = composable_sequences(2, g);
    let triples = composable_sequences(3, g);

    if let Some(p) = pairs.iter().find(|p| g.src(comp(p[0], p[1])) != g.src(p[0])) {
        sink.fail(Axiom::SrcCompat, p, None)?;
    }
    if let Some(p) = pairs.iter().find(|p| g.tgt(comp(p[0], p[1])) != g.tgt(p[1])) {
        sink.fail(Axiom::TgtCompat, p, None)?;
    }
    // psi = (m, id) and phi = (id, m); skipped where the forced pair is not
    // composable, which the endpoint axioms already report.
    let assoc_fails = |t: &&Vec<EdgeId>| {
        let psi = (comp(t[0], t[1]), t[2]);
        let phi = (t[0], comp(t[1], t[2]));
        composable(psi.0, psi.1)
            && composable(phi.0, phi.1)
            && comp(psi.0, psi.1) != comp(phi.0, phi.1)
    };
    if let Some(t) = triples.iter().find(assoc_fails) {
        sink.fail(Axiom::Assoc, t, None)?;
    }
    if let Some(v) = g
        .vertices()
        .find(|&v| g.src(unit(v)) != v || g.tgt(unit(v)) != v)
    {
        sink.fail(Axiom::UnitEndpoints, &[unit(v)], Some(v))?;
    }
    // delta = (e s, id), rho = (id, e t)
    let left = g.edges().find(|&f| {
        let delta = (unit(g.src(f)), f);
        composable(delta.0, delta.1) && comp(delta.0, delta.1) != f
    });
    if let Some(f) = left {
        sink.fail(Axiom::LeftUnit, &[unit(g.src(f)), f], None)?;
    }
    let right = g.edges().find(|&f| {
        let rho = (f, unit(g.tgt(f)));
        composable(rho.0, rho.1) && comp(rho.0, rho.1) != f
    });
    if let Some(f) = right {
        sink.fail(Axiom::RightUnit, &[f, unit(g.tgt(f))], None)?;
    }
    if theory == Theory::Groupoid {
        let inv = |f: EdgeId| m.inv(f).expect("validated");
        if let Some(f) = g
            .edges()
            .find(|&f| g.src(inv(f)) != g.tgt(f) || g.tgt(inv(f)) != g.src(f))
        {
            sink.fail(Axiom::InvEndpoints, &[f, inv(f)], None)?;
        }
        // zeta = (id, ι): f⁻¹ ∘ f = e(s f)
        let bad = g.edges().find(|&f| {
            composable(f, inv(f)) && comp(f, inv(f)) != unit(g.src(f))
        });
        if let Some(f) = bad {
            sink.fail(Axiom::InvLeft, &[f, inv(f)], None)?;
        }
        // xi = (ι, id): f ∘ f⁻¹ = e(t f)
        let bad = g.edges().find(|&f| {
            composable(inv(f), f) && comp(inv(f), f) != unit(g.tgt(f))
        });
        if let Some(f) = bad {
            sink.fail(Axiom::InvRight, &[inv(f), f], None)?;
        }
    }
    ControlFlow::Continue(())
}

fn check(m: &ModelData, theory: Theory) -> Result<CheckReport, ModelError> {
    m.validate_structure(theory)?;
    let mut report = Report {
        graph: &m.carrier,
        violations: Vec::new(),
    };
    let _ = evaluate(m, theory, &mut report);
    Ok(CheckReport {
        theory,
        passed: report.violations.is_empty(),
        violations: report.violations,
    })
}

/// Checks the category axioms; any inverse data is ignored.
pub fn check_category_model(m: &ModelData) -> Result<CheckReport, ModelError> {
    check(m, Theory::Category)
}

/// Checks the category axioms plus the inverse axioms.
pub fn check_groupoid_model(m: &ModelData) -> Result<CheckReport, ModelError> {
    check(m, Theory::Groupoid)
}

pub fn check_model(m: &ModelData, theory: Theory) -> Result<CheckReport, ModelError> {
    check(m, theory)
}

/// True iff the candidate is well formed and satisfies every axiom.
pub fn is_model(m: &ModelData, theory: Theory) -> bool {
    m.validate_structure(theory).is_ok() && evaluate(m, theory, &mut Verdict).is_continue()
}

/// `|E|^(pairs + |V| [+ |E|])`: the raw number of total assignments.
pub fn model_search_space(g: &FinGraph, theory: Theory) -> u128 {
    let pairs = composable_sequences(2, g).len();
    let mut slots = pairs + g.vertex_count();
    if theory == Theory::Groupoid {
        slots += g.edge_count();
    }
    (g.edge_count() as u128).saturating_pow(slots.min(u32::MAX as usize) as u32)
}

/// Every model of `theory` on the carrier, in odometer order over
/// composites (pairs in canonical order), then units, then inverses.
///
/// The cap bounds the raw assignment count. The search itself only tries
/// endpoint-compatible edges in each slot, since any other choice fails
/// an endpoint axiom.
pub fn enumerate_models(
    g: &Arc<FinGraph>,
    theory: Theory,
    cap: u128,
) -> Result<Vec<ModelData>, ModelError> {
    let cardinality = model_search_space(g, theory);
    if cardinality > cap {
        return Err(ModelError::SearchSpaceTooLarge { cardinality, cap });
    }
    enum Slot {
        Comp(EdgeId, EdgeId),
        Unit(VertexId),
        Inv(EdgeId),
    }
    let mut slots = Vec::new();
    let mut candidates: Vec<Vec<EdgeId>> = Vec::new();
    for p in composable_sequences(2, g) {
        slots.push(Slot::Comp(p[0], p[1]));
        candidates.push(g.edges_between(g.src(p[0]), g.tgt(p[1])).collect());
    }
    for v in g.vertices() {
        slots.push(Slot::Unit(v));
        candidates.push(g.edges_between(v, v).collect());
    }
    if theory == Theory::Groupoid {
        for f in g.edges() {
            slots.push(Slot::Inv(f));
            candidates.push(g.edges_between(g.tgt(f), g.src(f)).collect());
        }
    }
    if candidates.iter().any(|c| c.is_empty()) {
        return Ok(Vec::new());
    }
    let mut m = ModelData::new(g.clone());
    if theory == Theory::Groupoid {
        m.inv = Some(vec![None; g.edge_count()]);
    }
    let assign = |m: &mut ModelData, slot: &Slot, e: EdgeId| match *slot {
        Slot::Comp(f, h) => m.set_comp(f, h, e),
        Slot::Unit(v) => m.set_unit(v, e),
        Slot::Inv(f) => m.set_inv(f, e),
    };
    for (slot, c) in slots.iter().zip(&candidates) {
        assign(&mut m, slot, c[0]);
    }
    let mut digits = vec![0usize; slots.len()];
    let mut out = Vec::new();
    loop {
        if evaluate(&m, theory, &mut Verdict).is_continue() {
            out.push(m.clone());
        }
        // Advance the odometer, last slot fastest.
        let mut i = slots.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < candidates[i].len() {
                assign(&mut m, &slots[i], candidates[i][digits[i]]);
                break;
            }
            digits[i] = 0;
            assign(&mut m, &slots[i], candidates[i][0]);
        }
    }
}

/// A groupoid: a category with its inverse map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Groupoid {
    pub category: FinCategory,
    pub inverse: Vec<MorId>,
}

/// Reads a passing model as a category: objects are vertices, morphisms
/// are edges, identities are units.
pub fn model_to_category(m: &ModelData) -> Result<FinCategory, ModelError> {
    let report = check_category_model(m)?;
    if !report.passed {
        return Err(ModelError::NotAModel(report));
    }
    let ids = m.carrier.vertices().map(|v| m.unit(v).expect("validated")).collect();
    Ok(FinCategory::new(m.carrier.clone(), ids, m.composites())
        .expect("a passing model satisfies the category laws"))
}

/// The model whose composition and unit are read off the category.
pub fn category_to_model(c: &FinCategory) -> ModelData {
    let mut m = ModelData::new(c.graph().clone());
    for (f, g) in c.composable_pairs() {
        m.set_comp(f, g, c.compose(f, g).expect("composable"));
    }
    for o in c.objects() {
        m.set_unit(o, c.id(o));
    }
    m
}

pub fn groupoid_to_model(c: &FinCategory) -> Result<ModelData, ModelError> {
    let mut m = category_to_model(c);
    m.inv = Some(vec![None; c.morphism_count()]);
    for f in c.morphisms() {
        let g = c
            .inverse(f)
            .ok_or_else(|| ModelError::NoInverse(c.morphism_name(f).to_string()))?;
        m.set_inv(f, g);
    }
    Ok(m)
}

pub fn model_to_groupoid(m: &ModelData) -> Result<Groupoid, ModelError> {
    let report = check_groupoid_model(m)?;
    if !report.passed {
        return Err(ModelError::NotAModel(report));
    }
    let category = model_to_category(m)?;
    let inverse = m
        .carrier
        .edges()
        .map(|f| m.inv(f).expect("validated"))
        .collect();
    Ok(Groupoid { category, inverse })
}
