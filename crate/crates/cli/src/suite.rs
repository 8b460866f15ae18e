use std::fmt::Write as _;
use std::sync::Arc;
use std::thread;

use grcat::categories::{
    enumerate_functors, find_category_isomorphism, find_cycle, free_category, restrict_to_generators,
    transpose_to_functor, underlying_graph, FinCategory, Functor,
};
use grcat::corpus;
use grcat::graphs::{
    composable_sequences, find_isomorphism, hom_count, hom_graphs, path_graph, pushout, representable, Cell,
    FinGraph, GraphMorphism,
};
use grcat::models::{self, Theory};
use grcat::presentations::{
    canonical_presentation, coequalize, coequalizer_of_presented, coproduct_presentations, section_normalize,
    verify_retract_coequalizer, Bounds, PresentationError,
};
use grcat::probe::{free_model_fp_check, ChainSystem, Verdict};
use serde_json::json;

use crate::commands::{Outcome, Status};

type Check = fn() -> Result<String, String>;

const CHECKS: &[(&str, Check)] = &[
    ("representables", representables),
    ("path-graph-pushouts", path_pushouts),
    ("composable-sequences", sequences),
    ("adjunction", adjunction),
    ("model-checkers", model_checkers),
    ("model-roundtrips", roundtrips),
    ("coequalizers", coequalizers),
    ("section-normalization", sections),
    ("colimit-stability", colimits),
    ("retracts", retracts),
    ("fp-probe", fp_probe),
];

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn representables() -> Result<String, String> {
    let (h0, h1) = (representable(Cell::Zero), representable(Cell::One));
    ensure((h0.vertex_count(), h0.edge_count()) == (1, 0), || "h0 shape".into())?;
    ensure((h1.vertex_count(), h1.edge_count()) == (2, 1), || "h1 shape".into())?;
    let corpus = corpus::graphs(3, 3);
    for g in &corpus {
        ensure(hom_count(&h0, g) == g.vertex_count() as u128, || format!("hom(h0, {g:?})"))?;
        ensure(hom_count(&h1, g) == g.edge_count() as u128, || format!("hom(h1, {g:?})"))?;
    }
    Ok(format!("{} graphs", corpus.len()))
}

/// `A_n` as the pushout of `A_{n-1}` and an arrow along the last vertex.
fn glued_path(n: usize) -> Arc<FinGraph> {
    let mut acc = Arc::new(path_graph(0));
    let mut end = acc.vertex_id("a0").expect("a0");
    let arrow = Arc::new(path_graph(1));
    let (a0, a1) = (arrow.vertex_id("a0").expect("a0"), arrow.vertex_id("a1").expect("a1"));
    for _ in 0..n {
        let f = GraphMorphism::point(acc.clone(), end);
        let g = GraphMorphism::point(arrow.clone(), a0);
        let glued = pushout(&f, &g).expect("common domain");
        end = glued.right.vertex(a1);
        acc = glued.apex;
    }
    acc
}

fn path_pushouts() -> Result<String, String> {
    for n in 0..=6 {
        ensure(find_isomorphism(&glued_path(n), &Arc::new(path_graph(n))).is_some(), || {
            format!("n = {n}")
        })?;
    }
    Ok("n <= 6".into())
}

fn sequences() -> Result<String, String> {
    let corpus = corpus::graphs(3, 3);
    for g in &corpus {
        for n in 1..=4 {
            let homs = hom_graphs(&Arc::new(path_graph(n)), g).len();
            ensure(homs == composable_sequences(n, g).len(), || format!("n = {n} on {g:?}"))?;
        }
    }
    Ok(format!("{} graphs, n <= 4", corpus.len()))
}

fn adjunction() -> Result<String, String> {
    let cats: Vec<Arc<FinCategory>> = corpus::sample_categories()
        .into_iter()
        .map(|(_, c)| Arc::new(c))
        .filter(|c| c.object_count() <= 3 && c.morphism_count() <= 6)
        .collect();
    let mut pairs = 0;
    for g in corpus::graphs(3, 3).into_iter().filter(|g| find_cycle(g).is_none()) {
        let free = Arc::new(free_category(&g).map_err(|e| e.to_string())?);
        for c in &cats {
            let homs = hom_graphs(&g, &underlying_graph(c));
            let functors = enumerate_functors(&free, c);
            ensure(homs.len() == functors.len(), || format!("counts differ for {g:?}"))?;
            for h in &homs {
                let back = transpose_to_functor(h, c)
                    .and_then(|t| t.to_functor(&free))
                    .and_then(|f| restrict_to_generators(&f, &g))
                    .map_err(|e| e.to_string())?;
                ensure(back == *h, || "transpose is not inverse to restriction".into())?;
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn model_checkers() -> Result<String, String> {
    let two = Arc::new(
        FinGraph::builder()
            .vertex("*")
            .edge("u", "*", "*")
            .edge("v", "*", "*")
            .build()
            .expect("two loops"),
    );
    let cats = models::enumerate_models(&two, Theory::Category, 1 << 20).map_err(|e| e.to_string())?;
    let grpds = models::enumerate_models(&two, Theory::Groupoid, 1 << 20).map_err(|e| e.to_string())?;
    ensure(cats.len() == 4 && grpds.len() == 2, || {
        format!("{} category and {} groupoid models", cats.len(), grpds.len())
    })?;
    Ok("4 category, 2 groupoid models on two loops".into())
}

fn roundtrips() -> Result<String, String> {
    let cats = corpus::sample_categories();
    for (name, c) in &cats {
        let back = models::model_to_category(&models::category_to_model(c)).map_err(|e| e.to_string())?;
        ensure(back == *c, || format!("category {name}"))?;
        if c.is_groupoid() {
            let m = models::groupoid_to_model(c).map_err(|e| e.to_string())?;
            let g = models::model_to_groupoid(&m).map_err(|e| e.to_string())?;
            ensure(g.category == *c, || format!("groupoid {name}"))?;
        }
    }
    Ok(format!("{} categories", cats.len()))
}

fn coequalizers() -> Result<String, String> {
    let bounds = Bounds::new(4, 64);
    let size = |p: &grcat::presentations::Presentation| {
        coequalize(p, bounds)
            .and_then(|pc| pc.require_finite().map(|c| (c.object_count(), c.morphism_count())))
            .map_err(|e| e.to_string())
    };
    ensure(size(&corpus::cyclic_presentation(2))? == (1, 2), || "z2".into())?;
    ensure(size(&corpus::cyclic_presentation(3))? == (1, 3), || "z3".into())?;
    ensure(size(&corpus::commutative_square())? == (4, 9), || "square".into())?;
    for (name, g) in corpus::sample_graphs() {
        if find_cycle(&g).is_some() {
            continue;
        }
        let p = grcat::presentations::Presentation::free(g.clone()).map_err(|e| e.to_string())?;
        let pc = coequalize(&p, Bounds::new(g.edge_count().max(1), 1000)).map_err(|e| e.to_string())?;
        let c = pc.require_finite().map_err(|e| e.to_string())?;
        ensure(**c == free_category(&g).map_err(|e| e.to_string())?, || format!("free {name}"))?;
    }
    Ok("z2, z3, square, free acyclic".into())
}

fn sections() -> Result<String, String> {
    let mut n = 0;
    for (name, p) in corpus::sample_presentations() {
        match section_normalize(&p, Bounds::new(4, 1000)) {
            Ok(sp) => {
                let s = sp.section().then(sp.qbar()).map_err(|e| e.to_string())?;
                ensure(s == GraphMorphism::identity(underlying_graph(sp.category())), || {
                    format!("{name}: s then qbar")
                })?;
                n += 1;
            }
            Err(PresentationError::Undecided { .. }) => {}
            Err(e) => return Err(format!("{name}: {e}")),
        }
    }
    Ok(format!("{n} finite presentations"))
}

fn colimits() -> Result<String, String> {
    let bounds = Bounds::new(4, 1000);
    let pres = corpus::sample_presentations();
    let finite: Vec<_> = pres
        .iter()
        .filter(|(_, p)| coequalize(p, bounds).map(|pc| pc.is_finite()).unwrap_or(false))
        .collect();
    let mut n = 0;
    for (a, pa) in finite.iter().take(5) {
        for (b, pb) in finite.iter().take(3) {
            let sum = coproduct_presentations(pa, pb);
            let got = coequalize(&sum, bounds).and_then(|pc| pc.require_finite().cloned());
            let ca = coequalize(pa, bounds).and_then(|pc| pc.require_finite().cloned());
            let cb = coequalize(pb, bounds).and_then(|pc| pc.require_finite().cloned());
            let (got, ca, cb) = (got.map_err(|e| e.to_string())?, ca.map_err(|e| e.to_string())?, cb.map_err(|e| e.to_string())?);
            let direct = Arc::new(FinCategory::coproduct(&ca, &cb));
            ensure(find_category_isomorphism(&got, &direct).is_some(), || format!("{a} + {b}"))?;
            n += 1;
        }
    }
    let z2 = corpus::cyclic_presentation(2);
    let q = section_normalize(&z2, bounds).map_err(|e| e.to_string())?;
    let qc = q.category().clone();
    let point = Arc::new(FinCategory::terminal());
    let point_pres = canonical_presentation(&point);
    for f in enumerate_functors(&point, &qc) {
        for g in enumerate_functors(&point, &qc) {
            coequalizer_of_presented(&f, &g, &point_pres, &q, bounds).map_err(|e| e.to_string())?;
            n += 1;
        }
    }
    Ok(format!("{n} instances"))
}

fn retracts() -> Result<String, String> {
    let bounds = Bounds::default();
    let z2 = corpus::cyclic_presentation(2);
    let big = section_normalize(&z2, bounds).map_err(|e| e.to_string())?.category().clone();
    let point = Arc::new(FinCategory::terminal());
    let inc = enumerate_functors(&point, &big).pop().ok_or("no functor")?;
    let back = enumerate_functors(&big, &point).pop().ok_or("no functor")?;
    ensure(verify_retract_coequalizer(&z2, &inc, &back, bounds) == Ok(true), || "terminal in z2".into())?;
    let id = Functor::identity(big.clone());
    ensure(verify_retract_coequalizer(&z2, &id, &id, bounds) == Ok(true), || "identity".into())?;
    let collapse = enumerate_functors(&big, &big)
        .into_iter()
        .find(|f| (0..big.morphism_count()).any(|m| f.morphism_map()[m].0 != m))
        .ok_or("no collapse")?;
    let rejected = matches!(
        verify_retract_coequalizer(&z2, &id, &collapse, bounds),
        Err(PresentationError::NotARetract { .. })
    );
    ensure(rejected, || "counterexample accepted".into())?;
    Ok("2 retracts, 1 counterexample".into())
}

fn fp_probe() -> Result<String, String> {
    let point = Arc::new(path_graph(0));
    let r = free_model_fp_check(&point, &ChainSystem::collapse(4), 4).map_err(|e| e.to_string())?;
    ensure(r.verdict == Verdict::StableBy(1), || format!("collapse: {}", r.verdict))?;
    for cap in 1..=16 {
        let r = free_model_fp_check(&point, &ChainSystem::discrete_inclusion(cap), cap).map_err(|e| e.to_string())?;
        ensure(r.verdict == Verdict::NotStabilizedWithin(cap), || format!("discrete cap {cap}: {}", r.verdict))?;
        ensure(r.routes.iter().flatten().all(|rc| rc.agree) && r.naturality != Some(false), || {
            format!("routes at cap {cap}")
        })?;
    }
    Ok("collapse stable by 1, discrete caps 1..16".into())
}

pub fn run() -> Outcome {
    let results: Vec<Result<String, String>> = thread::scope(|s| {
        let handles: Vec<_> = CHECKS.iter().map(|(_, check)| s.spawn(check)).collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err("panicked".into())))
            .collect()
    });
    let mut text = String::new();
    let mut checks = Vec::new();
    for ((name, _), result) in CHECKS.iter().zip(&results) {
        match result {
            Ok(detail) => {
                let _ = writeln!(text, "PASS {name}: {detail}");
                checks.push(json!({ "name": name, "passed": true, "detail": detail }));
            }
            Err(detail) => {
                let _ = writeln!(text, "FAIL {name}: {detail}");
                checks.push(json!({ "name": name, "passed": false, "detail": detail }));
            }
        }
    }
    let passed = results.iter().filter(|r| r.is_ok()).count();
    let _ = writeln!(text, "{passed}/{} checks passed", results.len());
    let status = if passed == results.len() { Status::Ok } else { Status::Failed };
    Outcome {
        status,
        text,
        fields: json!({ "checks": checks, "passed": passed, "total": results.len() })
            .as_object()
            .cloned()
            .unwrap_or_default(),
    }
}
