use grcat::categories::FinCategory;
use grcat::graphs::{FinGraph, GraphMorphism};
use serde_json::{json, Map, Value};

use crate::commands::{CliError, Outcome};

pub const FORMAT: u32 = 1;

pub fn json_envelope(command: &str, outcome: &Outcome) -> String {
    let mut m = Map::new();
    m.insert("format".into(), json!(FORMAT));
    m.insert("command".into(), json!(command));
    m.insert("status".into(), json!(outcome.status.name()));
    m.insert("exit_code".into(), json!(outcome.status.code()));
    for (k, v) in &outcome.fields {
        m.insert(k.clone(), v.clone());
    }
    serde_json::to_string_pretty(&Value::Object(m)).expect("json")
}

pub fn json_error(command: &str, e: &CliError) -> String {
    let v = json!({
        "format": FORMAT,
        "command": command,
        "status": "error",
        "exit_code": 3,
        "error": e.0,
    });
    serde_json::to_string_pretty(&v).expect("json")
}

pub fn graph(g: &FinGraph) -> Value {
    let edges: Vec<Value> = g
        .edges()
        .map(|e| {
            json!({
                "name": g.edge_name(e),
                "src": g.vertex_name(g.src(e)),
                "tgt": g.vertex_name(g.tgt(e)),
            })
        })
        .collect();
    json!({ "vertices": g.vertex_names(), "edges": edges })
}

pub fn morphism(m: &GraphMorphism) -> Value {
    let (d, c) = (m.dom(), m.cod());
    let vertices: Map<String, Value> = d
        .vertices()
        .map(|v| (d.vertex_name(v).to_string(), json!(c.vertex_name(m.vertex(v)))))
        .collect();
    let edges: Map<String, Value> = d
        .edges()
        .map(|e| (d.edge_name(e).to_string(), json!(c.edge_name(m.edge(e)))))
        .collect();
    json!({ "vertices": vertices, "edges": edges })
}

pub fn category(c: &FinCategory) -> Value {
    let identities: Map<String, Value> = c
        .objects()
        .map(|o| (c.object_name(o).to_string(), json!(c.morphism_name(c.id(o)))))
        .collect();
    let composites: Vec<Value> = c
        .composable_pairs()
        .map(|(f, g)| {
            let h = c.compose(f, g).expect("composable");
            json!([c.morphism_name(f), c.morphism_name(g), c.morphism_name(h)])
        })
        .collect();
    json!({
        "objects": c.object_count(),
        "morphisms": c.morphism_count(),
        "graph": graph(c.graph()),
        "identities": identities,
        "composites": composites,
    })
}
