use std::sync::Arc;

use proptest::prelude::*;

use grcat::corpus;
use grcat::graphs::{hom_graphs, FinGraph};
use grcat::models::{category_to_model, enumerate_models, groupoid_to_model, Theory};
use grcat::text::{
    parse_category, parse_diagram, parse_graph, parse_model, parse_presentation, write_category,
    write_diagram, write_graph, write_model, write_presentation, Diagram,
};

#[test]
fn corpus_graphs_roundtrip() {
    for g in corpus::graphs(3, 3) {
        let parsed = parse_graph(&write_graph(Some("g"), &g)).unwrap();
        assert_eq!(parsed.graph, g);
        assert_eq!(parsed.name.as_deref(), Some("g"));
    }
}

#[test]
fn sample_categories_and_models_roundtrip() {
    for (name, c) in corpus::sample_categories() {
        assert_eq!(parse_category(&write_category(Some(name), &c)).unwrap(), c, "{name}");
        let m = category_to_model(&c);
        assert_eq!(parse_model(&write_model(None, &m)).unwrap(), m, "{name}");
        if c.is_groupoid() && c.morphism_count() > 0 {
            let m = groupoid_to_model(&c).unwrap();
            assert_eq!(parse_model(&write_model(None, &m)).unwrap(), m, "{name}");
        }
    }
    for g in corpus::graphs(1, 3) {
        for m in enumerate_models(&g, Theory::Groupoid, 1 << 24).unwrap() {
            if g.edge_count() > 0 {
                assert_eq!(parse_model(&write_model(None, &m)).unwrap(), m);
            }
        }
    }
}

#[test]
fn sample_presentations_roundtrip() {
    for (name, p) in corpus::sample_presentations() {
        assert_eq!(parse_presentation(&write_presentation(&p)).unwrap(), p, "{name}");
    }
}

#[test]
fn diagrams_roundtrip() {
    let graphs = corpus::graphs(2, 2);
    let (a, b) = (graphs[2].clone(), graphs[graphs.len() - 1].clone());
    let homs = hom_graphs(&a, &b);
    let diagram = Diagram {
        graphs: vec![("A".into(), a), ("B".into(), b)],
        morphisms: homs.into_iter().take(3).enumerate().map(|(i, h)| (format!("m{i}"), h)).collect(),
    };
    assert_eq!(parse_diagram(&write_diagram(&diagram)).unwrap(), diagram);
}

fn graph_text() -> impl Strategy<Value = String> {
    let line = prop_oneof![
        "[a-c]{1,2}".prop_map(|v| format!("vertex {v}")),
        ("[a-d]{1,2}", "[a-c]{1,2}", "[a-c]{1,2}").prop_map(|(e, s, t)| format!("edge {e} : {s} -> {t}")),
        "[ -~]{0,20}",
    ];
    prop::collection::vec(line, 0..12).prop_map(|l| l.join("\n"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn parsers_never_panic(src in "(?s).{0,200}") {
        let _ = parse_graph(&src);
        let _ = parse_category(&src);
        let _ = parse_model(&src);
        let _ = parse_presentation(&src);
        let _ = parse_diagram(&src);
    }

    #[test]
    fn structured_graph_text_roundtrips(src in graph_text()) {
        if let Ok(file) = parse_graph(&src) {
            let again = parse_graph(&write_graph(file.name.as_deref(), &file.graph)).unwrap();
            prop_assert_eq!(again, file);
        }
        let keywords = src.replace("vertex", "unit").replace("edge", "comp");
        let _ = parse_model(&keywords);
        let _ = parse_category(&keywords);
    }

    #[test]
    fn errors_name_a_real_line(src in graph_text()) {
        if let Err(e) = parse_graph(&src) {
            if let Some(n) = e.line {
                prop_assert!(n >= 1 && n <= src.lines().count());
            }
        }
    }
}

#[test]
fn empty_graph_roundtrip() {
    let g = Arc::new(FinGraph::empty());
    assert_eq!(parse_graph(&write_graph(None, &g)).unwrap().graph, g);
}

fn seed(name: &str) -> String {
    std::fs::read_to_string(format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn mutate(src: &str, edits: &[(usize, usize, String)]) -> String {
    let mut lines: Vec<String> = src.lines().map(str::to_string).collect();
    for (kind, at, text) in edits {
        let i = if lines.is_empty() { 0 } else { at % lines.len() };
        match kind % 3 {
            0 if !lines.is_empty() => {
                lines.remove(i);
            }
            1 => lines.insert(i, text.clone()),
            _ if !lines.is_empty() => {
                let words: Vec<&str> = lines[i].split(' ').collect();
                let mut w: Vec<String> = words.iter().map(|s| s.to_string()).collect();
                let j = at % w.len();
                w[j] = text.clone();
                lines[i] = w.join(" ");
            }
            _ => {}
        }
    }
    lines.join("\n")
}

fn edits() -> impl Strategy<Value = Vec<(usize, usize, String)>> {
    let token = prop_oneof!["[a-z*]{1,3}", Just("->".to_string()), Just(":".to_string()), Just("=".to_string()), Just(".".to_string()), "[a-c]\\(\\*\\)"];
    prop::collection::vec((0usize..3, 0usize..64, token), 0..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn accepted_mutants_roundtrip(e in edits(), which in 0usize..7) {
        let files = ["square.graph", "two-loops.graph", "z2.cat", "z2.model", "square.pres", "z3.pres", "path2.diagram"];
        let src = mutate(&seed(files[which]), &e);
        if let Ok(v) = parse_graph(&src) {
            prop_assert_eq!(parse_graph(&write_graph(v.name.as_deref(), &v.graph)).unwrap(), v);
        }
        if let Ok(v) = parse_category(&src) {
            prop_assert_eq!(parse_category(&write_category(None, &v)).unwrap(), v);
        }
        if let Ok(v) = parse_model(&src) {
            let _ = write_model(None, &v);
        }
        if let Ok(v) = parse_presentation(&src) {
            prop_assert_eq!(parse_presentation(&write_presentation(&v)).unwrap(), v);
        }
        if let Ok(v) = parse_diagram(&src) {
            prop_assert_eq!(parse_diagram(&write_diagram(&v)).unwrap(), v);
        }
    }
}
