use std::fmt::Write as _;
use std::fs;
use std::path::Path as FsPath;
use std::sync::Arc;

use grcat::categories::{free_category, FreeCategoryError, Path};
use grcat::graphs::{hom_count as count_homs, path_graph, pushout as graph_pushout};
use grcat::models::{self, ModelError, Theory};
use grcat::presentations::{
    coequalize, morphism_equal, section_normalize as normalize, Bounds, Diagnostics, Presentation,
    PresentationError, Saturation, WordResult,
};
use grcat::probe::{free_model_fp_check, fp_stabilization_probe, ChainSystem, ProbeError, StabilizationReport, Verdict};
use grcat::text;
use serde_json::{json, Map, Value};

use crate::render;
use crate::BoundArgs;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Failed,
    Undecided,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Failed => 1,
            Status::Undecided => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Failed => "failed",
            Status::Undecided => "undecided",
        }
    }
}

/// A finished command: plain-text report and the same fields as JSON.
#[derive(Debug)]
pub struct Outcome {
    pub status: Status,
    pub text: String,
    pub fields: Map<String, Value>,
}

impl Outcome {
    fn new(status: Status, text: String, fields: Value) -> Outcome {
        let fields = match fields {
            Value::Object(m) => m,
            other => Map::from_iter([("result".to_string(), other)]),
        };
        Outcome { status, text, fields }
    }
}

/// Unreadable or invalid input.
#[derive(Debug)]
pub struct CliError(pub String);

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn read(path: &FsPath) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

fn parsed<T>(path: &FsPath, parse: impl Fn(&str) -> Result<T, text::ParseError>) -> Result<T, CliError> {
    parse(&read(path)?).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

fn bounds(b: BoundArgs) -> Result<Bounds, CliError> {
    if b.max_len == 0 || b.max_morphisms == 0 {
        return Err(CliError("--max-len and --max-morphisms must be at least 1".into()));
    }
    Ok(Bounds::new(b.max_len, b.max_morphisms))
}

fn undecided(bound: usize, d: &Diagnostics) -> Outcome {
    let text = format!(
        "undecided at path length {bound}: {}\nuniverse: {}\nclasses: {}\nfrontier classes: {}\n",
        d.reason, d.universe, d.classes, d.frontier_classes
    );
    Outcome::new(Status::Undecided, text, json!({ "bound": bound, "diagnostics": d }))
}

pub fn free(path: &FsPath) -> Result<Outcome, CliError> {
    let file = parsed(path, text::parse_graph)?;
    match free_category(&file.graph) {
        Ok(c) => {
            let text = format!(
                "# {} objects, {} morphisms\n{}",
                c.object_count(),
                c.morphism_count(),
                text::write_category(file.name.as_deref(), &c)
            );
            Ok(Outcome::new(Status::Ok, text, json!({ "category": render::category(&c) })))
        }
        Err(FreeCategoryError::Cyclic { cycle }) => {
            let text = format!(
                "undecided: graph is not acyclic, its free category is infinite\ncycle: {}\n",
                cycle.join(" -> ")
            );
            Ok(Outcome::new(
                Status::Undecided,
                text,
                json!({ "error": "cyclic", "cycle": cycle }),
            ))
        }
        Err(e) => Err(CliError(e.to_string())),
    }
}

pub fn check_model(theory: Theory, path: &FsPath) -> Result<Outcome, CliError> {
    let m = parsed(path, text::parse_model)?;
    match models::check_model(&m, theory) {
        Ok(report) => {
            let mut text = String::from(if report.passed { "passed\n" } else { "failed\n" });
            for v in &report.violations {
                let _ = writeln!(text, "  {}: {}", v.axiom, v.witness.join(" "));
            }
            let status = if report.passed { Status::Ok } else { Status::Failed };
            Ok(Outcome::new(status, text, json!({ "report": report })))
        }
        Err(ModelError::Structure(d)) => Ok(Outcome::new(
            Status::Failed,
            format!("failed\n  malformed: {d}\n"),
            json!({ "theory": theory, "passed": false, "malformed": d.to_string() }),
        )),
        Err(e) => Err(CliError(e.to_string())),
    }
}

pub fn enumerate_models(theory: Theory, cap: u128, path: &FsPath) -> Result<Outcome, CliError> {
    let file = parsed(path, text::parse_graph)?;
    let found = models::enumerate_models(&file.graph, theory, cap).map_err(|e| CliError(e.to_string()))?;
    let mut text = format!("# {} {theory} models\n", found.len());
    let mut list = Vec::new();
    for (i, m) in found.iter().enumerate() {
        let _ = writeln!(text, "# model {i}");
        let ops: Vec<String> = text::write_model(None, m)
            .lines()
            .filter(|l| !l.starts_with("vertex ") && !l.starts_with("edge "))
            .map(str::to_string)
            .collect();
        for l in &ops {
            let _ = writeln!(text, "{l}");
        }
        list.push(ops);
    }
    Ok(Outcome::new(
        Status::Ok,
        text,
        json!({ "theory": theory, "count": found.len(), "models": list }),
    ))
}

pub fn coeq(b: BoundArgs, path: &FsPath) -> Result<Outcome, CliError> {
    let p = parsed(path, text::parse_presentation)?;
    let pc = coequalize(&p, bounds(b)?).map_err(|e| CliError(e.to_string()))?;
    match (pc.saturation(), pc.category()) {
        (Saturation::Finite, Some(c)) => {
            let text = format!(
                "# finite: {} objects, {} morphisms\n{}",
                c.object_count(),
                c.morphism_count(),
                text::write_category(None, c)
            );
            Ok(Outcome::new(Status::Ok, text, json!({ "category": render::category(c) })))
        }
        (Saturation::Undecided { bound, diagnostics }, _) => Ok(undecided(*bound, diagnostics)),
        _ => Err(CliError("inconsistent coequalizer result".into())),
    }
}

pub fn section_normalize(b: BoundArgs, path: &FsPath) -> Result<Outcome, CliError> {
    let p = parsed(path, text::parse_presentation)?;
    let sp = match normalize(&p, bounds(b)?) {
        Ok(sp) => sp,
        Err(PresentationError::Undecided { bound, diagnostics }) => return Ok(undecided(bound, &diagnostics)),
        Err(PresentationError::VerificationFailed(msg)) => {
            return Ok(Outcome::new(Status::Failed, format!("failed: {msg}\n"), json!({ "failure": msg })))
        }
        Err(e) => return Err(CliError(e.to_string())),
    };
    let r = sp.reduction();
    let (g, reduced) = (r.dom(), r.cod());
    let c = sp.category();
    let mut text = String::from("verified: coequalizers agree, s then qbar is the identity\nvertex quotient:\n");
    let mut quotient = Map::new();
    for v in g.vertices() {
        let (a, b) = (g.vertex_name(v), reduced.vertex_name(r.vertex(v)));
        let _ = writeln!(text, "  {a} -> {b}");
        quotient.insert(a.to_string(), json!(b));
    }
    text.push_str("section:\n");
    let mut section = Map::new();
    for m in c.morphisms() {
        let path = sp.section_path(m).display(reduced);
        let _ = writeln!(text, "  {} -> {path}", c.morphism_name(m));
        section.insert(c.morphism_name(m).to_string(), json!(path));
    }
    let rewritten = text::write_presentation(sp.presentation());
    text.push_str("presentation:\n");
    text.push_str(&rewritten);
    Ok(Outcome::new(
        Status::Ok,
        text,
        json!({
            "vertex_quotient": quotient,
            "section": section,
            "bounded_free_edges": sp.bounded_free().edge_count(),
            "presentation": rewritten,
            "category": render::category(c),
        }),
    ))
}

pub fn word_eq(b: BoundArgs, path: &FsPath, left: &str, right: &str) -> Result<Outcome, CliError> {
    let p = parsed(path, text::parse_presentation)?;
    let g = p.generators();
    let word = |w: &str| Path::parse(g, w).map_err(|e| CliError(format!("`{w}`: {e}")));
    let (l, r) = (word(left)?, word(right)?);
    let pc = coequalize(&p, bounds(b)?).map_err(|e| CliError(e.to_string()))?;
    let result = morphism_equal(&pc, &l, &r);
    let status = if result == WordResult::Undecided {
        Status::Undecided
    } else {
        Status::Ok
    };
    let nf = |q: &Path| pc.normal_form(q).map(|n| n.display(pc.reduced_generators()));
    let mut text = format!("{result}\n");
    for (w, q) in [(left, &l), (right, &r)] {
        if let Some(n) = nf(q) {
            let _ = writeln!(text, "  {w} ~> {n}");
        }
    }
    Ok(Outcome::new(
        status,
        text,
        json!({ "result": result, "left": left, "right": right, "left_normal_form": nf(&l), "right_normal_form": nf(&r) }),
    ))
}

pub fn hom_count(dom: &FsPath, cod: &FsPath) -> Result<Outcome, CliError> {
    let d = parsed(dom, text::parse_graph)?;
    let c = parsed(cod, text::parse_graph)?;
    let n = count_homs(&d.graph, &c.graph);
    Ok(Outcome::new(Status::Ok, format!("{n}\n"), json!({ "count": n.to_string() })))
}

pub fn pushout(path: &FsPath, left: &str, right: &str) -> Result<Outcome, CliError> {
    let d = parsed(path, text::parse_diagram)?;
    let find = |n: &str| d.morphism(n).ok_or_else(|| CliError(format!("no morphism `{n}` in diagram")));
    let (f, g) = (find(left)?, find(right)?);
    let cospan = graph_pushout(f, g).map_err(|e| CliError(e.to_string()))?;
    let text = text::write_graph(Some("pushout"), &cospan.apex);
    Ok(Outcome::new(
        Status::Ok,
        text,
        json!({
            "graph": render::graph(&cospan.apex),
            "left": render::morphism(&cospan.left),
            "right": render::morphism(&cospan.right),
        }),
    ))
}

fn chain(name: &str, cap: usize) -> Result<ChainSystem, CliError> {
    match name {
        "discrete-inclusion" => Ok(ChainSystem::discrete_inclusion(cap)),
        "collapse" => Ok(ChainSystem::collapse(cap)),
        other => match other.strip_prefix("constant:") {
            Some(file) => Ok(ChainSystem::constant(parsed(FsPath::new(file), text::parse_category)?, cap)),
            None => Err(CliError(format!(
                "unknown chain `{other}` (expected discrete-inclusion, collapse or constant:<file>)"
            ))),
        },
    }
}

pub fn fp_probe(
    chain_name: &str,
    cap: usize,
    model: Option<&FsPath>,
    free: Option<&FsPath>,
    b: BoundArgs,
) -> Result<Outcome, CliError> {
    if cap == 0 {
        return Err(CliError("--cap must be at least 1".into()));
    }
    let ch = chain(chain_name, cap)?;
    let result = match (model, free) {
        (_, Some(g)) => free_model_fp_check(&parsed(g, text::parse_graph)?.graph, &ch, cap),
        (Some(m), None) => fp_stabilization_probe(&parsed(m, text::parse_presentation)?, bounds(b)?, &ch, cap),
        (None, None) => {
            let point = Presentation::free(Arc::new(path_graph(0))).expect("point presentation");
            free_model_fp_check(point.generators(), &ch, cap)
        }
    };
    let report = match result {
        Ok(r) => r,
        Err(ProbeError::Presentation(PresentationError::Undecided { bound, diagnostics })) => {
            return Ok(undecided(bound, &diagnostics))
        }
        Err(e) => return Err(CliError(e.to_string())),
    };
    Ok(probe_outcome(&report))
}

fn probe_outcome(r: &StabilizationReport) -> Outcome {
    let mut text = format!("model: {}\nchain: {}\n", r.model, r.chain);
    for (n, count) in r.hom_counts.iter().enumerate() {
        let _ = write!(text, "stage {n}: {count} maps");
        if let Some(b) = r.link_bijective.get(n) {
            let _ = write!(text, ", link {}", if *b { "bijective" } else { "not bijective" });
        }
        text.push('\n');
    }
    let mut routes_agree = true;
    if let Some(routes) = &r.routes {
        for rc in routes {
            routes_agree &= rc.agree;
            let _ = writeln!(
                text,
                "routes at stage {}: {} graph maps, {} functors, {}",
                rc.stage,
                rc.graph_route,
                rc.functor_route,
                if rc.agree { "agree" } else { "DISAGREE" }
            );
        }
    }
    if let Some(n) = r.naturality {
        let _ = writeln!(text, "naturality: {}", if n { "holds" } else { "FAILS" });
        routes_agree &= n;
    }
    let _ = writeln!(text, "verdict: {}", r.verdict);
    let status = if !routes_agree {
        Status::Failed
    } else if matches!(r.verdict, Verdict::NotStabilizedWithin(_)) {
        Status::Undecided
    } else {
        Status::Ok
    };
    Outcome::new(status, text, json!({ "report": r }))
}
