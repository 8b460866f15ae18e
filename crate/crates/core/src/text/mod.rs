//! Line-based text formats.
//!
//! ```text
//! graph square            # optional header
//! vertex a
//! edge f : a -> b
//! ```
//!
//! Categories add `id <obj> = <morph>` and `comp <h> = <g> . <f>` lines
//! (`h = g ∘ f`). Models add `unit <vertex> = <edge>`,
//! `comp <g> after <f> = <h>` and optionally `inv <f> = <g>`.
//! Presentations have a `relations` block and a `generators` block of
//! vertex/edge lines followed by `alpha <cell> = <image>` and
//! `beta <cell> = <image>`, where edge images are paths (`id(v)` or
//! `e1.e2`). Diagram files hold several `graph <name>` blocks and
//! `morphism <name> : <dom> -> <cod>` blocks of `vertex x = y` and
//! `edge e = f` lines.

mod lexer;

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::sync::Arc;

use crate::categories::{FinCategory, Path};
use crate::graphs::{is_valid_identifier, EdgeId, FinGraph, GraphMorphism, VertexId};
use crate::models::ModelData;
use crate::presentations::Presentation;

pub use lexer::{lex, Line, ParseError};

fn ident<'a>(line: &Line<'a>, tok: &'a str) -> Result<&'a str, ParseError> {
    if is_valid_identifier(tok) {
        Ok(tok)
    } else {
        Err(ParseError::at(line.number, format!("invalid identifier `{tok}`")))
    }
}

/// Vertex and edge lines, checked when the block is closed.
#[derive(Default)]
struct GraphBlock {
    vertices: Vec<(String, usize)>,
    edges: Vec<(String, String, String, usize)>,
}

impl GraphBlock {
    /// Consumes a `vertex` or `edge` line; returns false for other lines.
    fn accept(&mut self, line: &Line<'_>) -> Result<bool, ParseError> {
        match line.tokens.as_slice() {
            ["vertex", v] => {
                self.vertices.push((ident(line, v)?.to_string(), line.number));
                Ok(true)
            }
            ["edge", e, ":", s, "->", t] => {
                self.edges.push((
                    ident(line, e)?.to_string(),
                    ident(line, s)?.to_string(),
                    ident(line, t)?.to_string(),
                    line.number,
                ));
                Ok(true)
            }
            ["vertex", ..] => Err(ParseError::at(line.number, "expected `vertex <id>`")),
            ["edge", ..] => Err(ParseError::at(line.number, "expected `edge <id> : <src> -> <tgt>`")),
            _ => Ok(false),
        }
    }

    fn build(self) -> Result<Arc<FinGraph>, ParseError> {
        let mut seen = HashSet::new();
        for (v, n) in &self.vertices {
            if !seen.insert(v.as_str()) {
                return Err(ParseError::at(*n, format!("duplicate vertex `{v}`")));
            }
        }
        let mut edges = HashSet::new();
        for (e, s, t, n) in &self.edges {
            if !edges.insert(e.as_str()) {
                return Err(ParseError::at(*n, format!("duplicate edge `{e}`")));
            }
            for v in [s, t] {
                if !seen.contains(v.as_str()) {
                    return Err(ParseError::at(*n, format!("edge `{e}` uses undeclared vertex `{v}`")));
                }
            }
        }
        let g = FinGraph::new(
            self.vertices.into_iter().map(|v| v.0).collect(),
            self.edges.into_iter().map(|(e, s, t, _)| (e, s, t)).collect(),
        )
        .map_err(|e| ParseError::whole(e.to_string()))?;
        Ok(Arc::new(g))
    }
}

/// Strips an optional leading `graph <name>` header.
fn header<'a, 'b>(lines: &'b [Line<'a>]) -> Result<(Option<String>, &'b [Line<'a>]), ParseError> {
    match lines.first().map(|l| l.tokens.as_slice()) {
        Some(["graph", name]) => {
            let name = ident(&lines[0], name)?.to_string();
            Ok((Some(name), &lines[1..]))
        }
        Some(["graph", ..]) => Err(ParseError::at(lines[0].number, "expected `graph <name>`")),
        _ => Ok((None, lines)),
    }
}

fn unexpected(line: &Line<'_>) -> ParseError {
    ParseError::at(line.number, format!("unexpected `{}`", line.tokens.join(" ")))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFile {
    pub name: Option<String>,
    pub graph: Arc<FinGraph>,
}

pub fn parse_graph(src: &str) -> Result<GraphFile, ParseError> {
    let lines = lex(src);
    let (name, body) = header(&lines)?;
    let mut block = GraphBlock::default();
    for line in body {
        if !block.accept(line)? {
            return Err(unexpected(line));
        }
    }
    Ok(GraphFile {
        name,
        graph: block.build()?,
    })
}

fn write_block(out: &mut String, g: &FinGraph) {
    for v in g.vertices() {
        let _ = writeln!(out, "vertex {}", g.vertex_name(v));
    }
    for e in g.edges() {
        let _ = writeln!(
            out,
            "edge {} : {} -> {}",
            g.edge_name(e),
            g.vertex_name(g.src(e)),
            g.vertex_name(g.tgt(e))
        );
    }
}

fn write_header(out: &mut String, name: Option<&str>) {
    if let Some(n) = name {
        let _ = writeln!(out, "graph {n}");
    }
}

pub fn write_graph(name: Option<&str>, g: &FinGraph) -> String {
    let mut out = String::new();
    write_header(&mut out, name);
    write_block(&mut out, g);
    out
}

pub fn parse_category(src: &str) -> Result<FinCategory, ParseError> {
    let lines = lex(src);
    let (_, body) = header(&lines)?;
    let mut block = GraphBlock::default();
    let mut ids = Vec::new();
    let mut comps = Vec::new();
    for line in body {
        if block.accept(line)? {
            continue;
        }
        match line.tokens.as_slice() {
            ["id", o, "=", m] => ids.push((*o, *m, line.number)),
            ["comp", h, "=", g, ".", f] => comps.push((*f, *g, *h, line.number)),
            ["id", ..] => return Err(ParseError::at(line.number, "expected `id <obj> = <morph>`")),
            ["comp", ..] => return Err(ParseError::at(line.number, "expected `comp <h> = <g> . <f>`")),
            _ => return Err(unexpected(line)),
        }
    }
    let g = block.build()?;
    let mut seen = HashSet::new();
    for &(o, m, n) in &ids {
        if g.vertex_id(o).is_none() {
            return Err(ParseError::at(n, format!("unknown object `{o}`")));
        }
        if g.edge_id(m).is_none() {
            return Err(ParseError::at(n, format!("unknown morphism `{m}`")));
        }
        if !seen.insert(o) {
            return Err(ParseError::at(n, format!("second identity for `{o}`")));
        }
    }
    for &(f, gg, h, n) in &comps {
        if let Some(m) = [f, gg, h].into_iter().find(|m| g.edge_id(m).is_none()) {
            return Err(ParseError::at(n, format!("unknown morphism `{m}`")));
        }
    }
    let ids: Vec<(&str, &str)> = ids.iter().map(|&(o, m, _)| (o, m)).collect();
    let comps: Vec<(&str, &str, &str)> = comps.iter().map(|&(f, g, h, _)| (f, g, h)).collect();
    FinCategory::from_names(g, &ids, &comps).map_err(|e| ParseError::whole(e.to_string()))
}

pub fn write_category(name: Option<&str>, c: &FinCategory) -> String {
    let mut out = String::new();
    write_header(&mut out, name);
    write_block(&mut out, c.graph());
    for o in c.objects() {
        let _ = writeln!(out, "id {} = {}", c.object_name(o), c.morphism_name(c.id(o)));
    }
    for (f, g) in c.composable_pairs() {
        let h = c.compose(f, g).unwrap();
        let _ = writeln!(
            out,
            "comp {} = {} . {}",
            c.morphism_name(h),
            c.morphism_name(g),
            c.morphism_name(f)
        );
    }
    out
}

pub fn parse_model(src: &str) -> Result<ModelData, ParseError> {
    let lines = lex(src);
    let (_, body) = header(&lines)?;
    let mut block = GraphBlock::default();
    let mut rest = Vec::new();
    for line in body {
        if !block.accept(line)? {
            rest.push(line);
        }
    }
    let g = block.build()?;
    let edge = |line: &Line<'_>, e: &str| {
        g.edge_id(e)
            .ok_or_else(|| ParseError::at(line.number, format!("unknown edge `{e}`")))
    };
    let mut m = ModelData::new(g.clone());
    let mut units = HashSet::new();
    let mut comps = HashSet::new();
    let mut invs = HashSet::new();
    for line in rest {
        match line.tokens.as_slice() {
            ["unit", v, "=", e] => {
                let vid = g
                    .vertex_id(v)
                    .ok_or_else(|| ParseError::at(line.number, format!("unknown vertex `{v}`")))?;
                if !units.insert(vid) {
                    return Err(ParseError::at(line.number, format!("second unit for `{v}`")));
                }
                m.set_unit(vid, edge(line, e)?);
            }
            ["comp", gg, "after", f, "=", h] => {
                let (f, gg, h) = (edge(line, f)?, edge(line, gg)?, edge(line, h)?);
                if !comps.insert((f, gg)) {
                    return Err(ParseError::at(line.number, "second composite for this pair"));
                }
                m.set_comp(f, gg, h);
            }
            ["inv", f, "=", h] => {
                let f = edge(line, f)?;
                if !invs.insert(f) {
                    return Err(ParseError::at(line.number, "second inverse for this edge"));
                }
                m.set_inv(f, edge(line, h)?);
            }
            ["unit", ..] => return Err(ParseError::at(line.number, "expected `unit <vertex> = <edge>`")),
            ["comp", ..] => {
                return Err(ParseError::at(line.number, "expected `comp <g> after <f> = <h>`"))
            }
            ["inv", ..] => return Err(ParseError::at(line.number, "expected `inv <f> = <g>`")),
            _ => return Err(unexpected(line)),
        }
    }
    Ok(m)
}

pub fn write_model(name: Option<&str>, m: &ModelData) -> String {
    let g = m.carrier();
    let mut out = String::new();
    write_header(&mut out, name);
    write_block(&mut out, g);
    for v in g.vertices() {
        if let Some(e) = m.unit(v) {
            let _ = writeln!(out, "unit {} = {}", g.vertex_name(v), g.edge_name(e));
        }
    }
    for (f, h, c) in m.composites() {
        let _ = writeln!(
            out,
            "comp {} after {} = {}",
            g.edge_name(h),
            g.edge_name(f),
            g.edge_name(c)
        );
    }
    if m.has_inverse() {
        for f in g.edges() {
            if let Some(i) = m.inv(f) {
                let _ = writeln!(out, "inv {} = {}", g.edge_name(f), g.edge_name(i));
            }
        }
    }
    out
}

pub fn parse_presentation(src: &str) -> Result<Presentation, ParseError> {
    #[derive(PartialEq)]
    enum Section {
        None,
        Relations,
        Generators,
        Maps,
    }
    let lines = lex(src);
    let mut section = Section::None;
    let mut rel = GraphBlock::default();
    let mut generators = GraphBlock::default();
    let (mut seen_rel, mut seen_gen) = (false, false);
    let mut maps = Vec::new();
    for line in &lines {
        match line.tokens.as_slice() {
            ["relations"] if !seen_rel && section != Section::Maps => {
                seen_rel = true;
                section = Section::Relations;
            }
            ["generators"] if !seen_gen && section != Section::Maps => {
                seen_gen = true;
                section = Section::Generators;
            }
            ["relations" | "generators"] => {
                return Err(ParseError::at(line.number, "repeated or misplaced block header"))
            }
            [which @ ("alpha" | "beta"), cell, "=", image] => {
                section = Section::Maps;
                maps.push((*which, *cell, *image, line.number));
            }
            ["alpha" | "beta", ..] => {
                return Err(ParseError::at(line.number, "expected `alpha|beta <cell> = <image>`"))
            }
            _ => {
                let accepted = match section {
                    Section::Relations => rel.accept(line)?,
                    Section::Generators => generators.accept(line)?,
                    Section::None | Section::Maps => false,
                };
                if !accepted {
                    return Err(unexpected(line));
                }
            }
        }
    }
    if !seen_gen {
        return Err(ParseError::whole("missing `generators` block"));
    }
    let h = rel.build()?;
    let g = generators.build()?;
    let mut images: HashMap<(&str, bool, usize), usize> = HashMap::new();
    let mut alpha = (vec![None; h.vertex_count()], vec![None; h.edge_count()]);
    let mut beta = alpha.clone();
    for &(which, cell, image, n) in &maps {
        let target = if which == "alpha" { &mut alpha } else { &mut beta };
        let as_vertex = h.vertex_id(cell);
        let as_edge = h.edge_id(cell);
        let key = match (as_vertex, as_edge) {
            (Some(_), Some(_)) => {
                return Err(ParseError::at(n, format!("`{cell}` names both a vertex and an edge")))
            }
            (Some(v), None) => {
                let gv = g
                    .vertex_id(image)
                    .ok_or_else(|| ParseError::at(n, format!("unknown generator vertex `{image}`")))?;
                target.0[v.0] = Some(gv);
                (which, false, v.0)
            }
            (None, Some(e)) => {
                let p = Path::parse(&g, image).map_err(|err| ParseError::at(n, err.to_string()))?;
                target.1[e.0] = Some(p);
                (which, true, e.0)
            }
            (None, None) => return Err(ParseError::at(n, format!("unknown relation cell `{cell}`"))),
        };
        if images.insert(key, n).is_some() {
            return Err(ParseError::at(n, format!("second {which} image for `{cell}`")));
        }
    }
    let complete = |which: &str, m: (Vec<Option<VertexId>>, Vec<Option<Path>>)| {
        let missing = h
            .vertices()
            .find(|v| m.0[v.0].is_none())
            .map(|v| h.vertex_name(v).to_string())
            .or_else(|| h.edges().find(|e| m.1[e.0].is_none()).map(|e| h.edge_name(e).to_string()));
        if let Some(cell) = missing {
            return Err(ParseError::whole(format!("no {which} image for `{cell}`")));
        }
        Ok((
            m.0.into_iter().map(Option::unwrap).collect::<Vec<_>>(),
            m.1.into_iter().map(Option::unwrap).collect::<Vec<_>>(),
        ))
    };
    let alpha = complete("alpha", alpha)?;
    let beta = complete("beta", beta)?;
    Presentation::new(h, g, alpha, beta).map_err(|e| ParseError::whole(e.to_string()))
}

pub fn write_presentation(p: &Presentation) -> String {
    let (h, g) = (p.relations(), p.generators());
    let mut out = String::from("relations\n");
    write_block(&mut out, h);
    out.push_str("generators\n");
    write_block(&mut out, g);
    for (which, map) in [("alpha", p.alpha()), ("beta", p.beta())] {
        for v in h.vertices() {
            let _ = writeln!(out, "{which} {} = {}", h.vertex_name(v), g.vertex_name(map.vertex(v)));
        }
        for e in h.edges() {
            let _ = writeln!(out, "{which} {} = {}", h.edge_name(e), map.edge(e).display(g));
        }
    }
    out
}

/// Named graphs and morphisms between them.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Diagram {
    pub graphs: Vec<(String, Arc<FinGraph>)>,
    pub morphisms: Vec<(String, GraphMorphism)>,
}

impl Diagram {
    pub fn graph(&self, name: &str) -> Option<&Arc<FinGraph>> {
        self.graphs.iter().find(|g| g.0 == name).map(|g| &g.1)
    }

    pub fn morphism(&self, name: &str) -> Option<&GraphMorphism> {
        self.morphisms.iter().find(|m| m.0 == name).map(|m| &m.1)
    }
}

pub fn parse_diagram(src: &str) -> Result<Diagram, ParseError> {
    enum Block<'a> {
        Graph(String, GraphBlock, usize),
        Morphism {
            name: &'a str,
            dom: &'a str,
            cod: &'a str,
            vertices: Vec<(&'a str, &'a str, usize)>,
            edges: Vec<(&'a str, &'a str, usize)>,
            line: usize,
        },
    }
    let lines = lex(src);
    let mut blocks: Vec<Block<'_>> = Vec::new();
    for line in &lines {
        match (line.tokens.as_slice(), blocks.last_mut()) {
            (["graph", name], _) => {
                blocks.push(Block::Graph(ident(line, name)?.to_string(), GraphBlock::default(), line.number))
            }
            (["morphism", name, ":", dom, "->", cod], _) => blocks.push(Block::Morphism {
                name: ident(line, name)?,
                dom,
                cod,
                vertices: Vec::new(),
                edges: Vec::new(),
                line: line.number,
            }),
            (["graph" | "morphism", ..], _) => {
                return Err(ParseError::at(
                    line.number,
                    "expected `graph <name>` or `morphism <name> : <dom> -> <cod>`",
                ))
            }
            (["vertex", a, "=", b], Some(Block::Morphism { vertices, .. })) => {
                vertices.push((*a, *b, line.number))
            }
            (["edge", a, "=", b], Some(Block::Morphism { edges, .. })) => edges.push((*a, *b, line.number)),
            (_, Some(Block::Graph(_, block, _))) => {
                if !block.accept(line)? {
                    return Err(unexpected(line));
                }
            }
            _ => return Err(unexpected(line)),
        }
    }
    let mut diagram = Diagram::default();
    for block in blocks {
        match block {
            Block::Graph(name, b, n) => {
                if diagram.graph(&name).is_some() {
                    return Err(ParseError::at(n, format!("duplicate graph `{name}`")));
                }
                diagram.graphs.push((name, b.build()?));
            }
            Block::Morphism {
                name,
                dom,
                cod,
                vertices,
                edges,
                line,
            } => {
                if diagram.morphism(name).is_some() {
                    return Err(ParseError::at(line, format!("duplicate morphism `{name}`")));
                }
                let find = |g: &str| {
                    diagram
                        .graph(g)
                        .cloned()
                        .ok_or_else(|| ParseError::at(line, format!("unknown graph `{g}`")))
                };
                let (d, c) = (find(dom)?, find(cod)?);
                let mut vmap = vec![None; d.vertex_count()];
                for &(a, b, n) in &vertices {
                    let a = d.vertex_id(a).ok_or_else(|| ParseError::at(n, format!("unknown vertex `{a}` of `{dom}`")))?;
                    let b = c.vertex_id(b).ok_or_else(|| ParseError::at(n, format!("unknown vertex `{b}` of `{cod}`")))?;
                    if vmap[a.0].replace(b).is_some() {
                        return Err(ParseError::at(n, "vertex mapped twice"));
                    }
                }
                let mut emap = vec![None; d.edge_count()];
                for &(a, b, n) in &edges {
                    let a = d.edge_id(a).ok_or_else(|| ParseError::at(n, format!("unknown edge `{a}` of `{dom}`")))?;
                    let b = c.edge_id(b).ok_or_else(|| ParseError::at(n, format!("unknown edge `{b}` of `{cod}`")))?;
                    if emap[a.0].replace(b).is_some() {
                        return Err(ParseError::at(n, "edge mapped twice"));
                    }
                }
                let vmap: Option<Vec<VertexId>> = vmap.into_iter().collect();
                let emap: Option<Vec<EdgeId>> = emap.into_iter().collect();
                let (Some(vmap), Some(emap)) = (vmap, emap) else {
                    return Err(ParseError::at(line, format!("morphism `{name}` is not total")));
                };
                let m = GraphMorphism::new(d, c, vmap, emap)
                    .map_err(|e| ParseError::at(line, e.to_string()))?;
                diagram.morphisms.push((name.to_string(), m));
            }
        }
    }
    Ok(diagram)
}

pub fn write_diagram(d: &Diagram) -> String {
    let mut out = String::new();
    for (name, g) in &d.graphs {
        let _ = writeln!(out, "graph {name}");
        write_block(&mut out, g);
    }
    for (name, m) in &d.morphisms {
        let dom = d.graphs.iter().find(|g| *g.1 == **m.dom()).map_or("?", |g| g.0.as_str());
        let cod = d.graphs.iter().find(|g| *g.1 == **m.cod()).map_or("?", |g| g.0.as_str());
        let _ = writeln!(out, "morphism {name} : {dom} -> {cod}");
        for v in m.dom().vertices() {
            let _ = writeln!(
                out,
                "vertex {} = {}",
                m.dom().vertex_name(v),
                m.cod().vertex_name(m.vertex(v))
            );
        }
        for e in m.dom().edges() {
            let _ = writeln!(out, "edge {} = {}", m.dom().edge_name(e), m.cod().edge_name(m.edge(e)));
        }
    }
    out
}
