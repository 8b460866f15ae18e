use std::sync::Arc;

use super::{
    coequalize, section_normalize, Bounds, PathMap, Presentation, PresentationError,
    PresentedCategory, SectionedPresentation,
};
use crate::categories::{find_category_isomorphism, FinCategory, Functor, Path};
use crate::graphs::{coproduct, FinGraph, GraphMorphism, VertexId};

/// Joins maps out of the two summands into one map out of the apex.
fn copair(
    apex: &FinGraph,
    left: (&GraphMorphism, &PathMap),
    right: (&GraphMorphism, &PathMap),
) -> (Vec<VertexId>, Vec<Path>) {
    let mut vertices = vec![VertexId(0); apex.vertex_count()];
    let mut edges = vec![None; apex.edge_count()];
    for (inj, map) in [left, right] {
        for v in inj.dom().vertices() {
            vertices[inj.vertex(v).0] = map.vertex(v);
        }
        for e in inj.dom().edges() {
            edges[inj.edge(e).0] = Some(map.edge(e).clone());
        }
    }
    (vertices, edges.into_iter().map(Option::unwrap).collect())
}

/// Disjoint union of two presentations. Its coequalizer is the coproduct
/// of the two coequalizers.
pub fn coproduct_presentations(p1: &Presentation, p2: &Presentation) -> Presentation {
    let h = coproduct(p1.relations(), p2.relations());
    let g = coproduct(p1.generators(), p2.generators());
    let side = |p: &Presentation, inj: &GraphMorphism, pick: fn(&Presentation) -> &PathMap| {
        pick(p).then(inj)
    };
    let (a1, a2) = (side(p1, &g.left, Presentation::alpha), side(p2, &g.right, Presentation::alpha));
    let (b1, b2) = (side(p1, &g.left, Presentation::beta), side(p2, &g.right, Presentation::beta));
    let alpha = copair(&h.apex, (&h.left, &a1), (&h.right, &a2));
    let beta = copair(&h.apex, (&h.left, &b1), (&h.right, &b2));
    Presentation::new(h.apex.clone(), g.apex.clone(), alpha, beta)
        .expect("disjoint union of valid presentations")
}

/// Extra relations identifying two functors into the presented category.
struct Identify<'a> {
    source: &'a FinCategory,
    u: &'a Functor,
    v: &'a Functor,
}

fn canonical_with(c: &FinCategory, extra: Option<Identify<'_>>) -> Presentation {
    let gen_name = |m: crate::categories::MorId| format!("g{}", m.0);
    let gens = Arc::new(
        FinGraph::new(
            c.graph().vertex_names().to_vec(),
            c.morphisms()
                .map(|m| {
                    (
                        gen_name(m),
                        c.object_name(c.src(m)).to_string(),
                        c.object_name(c.tgt(m)).to_string(),
                    )
                })
                .collect(),
        )
        .expect("object names are valid"),
    );
    let gen = |m| Path::single(&gens, gens.edge_id(&gen_name(m)).unwrap());

    let mut hv: Vec<(String, VertexId, VertexId)> = c
        .objects()
        .map(|o| (format!("q[{}]", o.0), o, o))
        .collect();
    let mut he: Vec<(String, String, String, Path, Path)> = Vec::new();
    for (f, g) in c.composable_pairs() {
        let fg = c.compose(f, g).unwrap();
        he.push((
            format!("m[{},{}]", f.0, g.0),
            format!("q[{}]", c.src(f).0),
            format!("q[{}]", c.tgt(g).0),
            gen(f).concat(&gen(g), &gens).unwrap(),
            gen(fg),
        ));
    }
    for o in c.objects() {
        let q = format!("q[{}]", o.0);
        he.push((format!("e[{}]", o.0), q.clone(), q, gen(c.id(o)), Path::identity(o)));
    }
    if let Some(Identify { source, u, v }) = extra {
        for o in source.objects() {
            hv.push((format!("p[{}]", o.0), u.object(o), v.object(o)));
        }
        for f in source.morphisms() {
            he.push((
                format!("u[{}]", f.0),
                format!("p[{}]", source.src(f).0),
                format!("p[{}]", source.tgt(f).0),
                gen(u.morphism(f)),
                gen(v.morphism(f)),
            ));
        }
    }
    let rel = Arc::new(
        FinGraph::new(
            hv.iter().map(|v| v.0.clone()).collect(),
            he.iter().map(|e| (e.0.clone(), e.1.clone(), e.2.clone())).collect(),
        )
        .expect("generated names are distinct"),
    );
    let mut av = vec![VertexId(0); rel.vertex_count()];
    let mut bv = av.clone();
    for (name, a, b) in &hv {
        let i = rel.vertex_id(name).unwrap().0;
        av[i] = *a;
        bv[i] = *b;
    }
    let mut ae = vec![None; rel.edge_count()];
    let mut be = ae.clone();
    for (name, _, _, a, b) in he {
        let i = rel.edge_id(&name).unwrap().0;
        ae[i] = Some(a);
        be[i] = Some(b);
    }
    let unwrap = |v: Vec<Option<Path>>| v.into_iter().map(Option::unwrap).collect();
    Presentation::new(rel, gens, (av, unwrap(ae)), (bv, unwrap(be)))
        .expect("canonical relations respect endpoints")
}

/// The full multiplication table of `c` as a presentation: one generator
/// `g<i>` per morphism, a relation `m[i,j]` per composable pair and `e[o]`
/// per object. Its coequalizer is isomorphic to `c` at any bound ≥ 2.
pub fn canonical_presentation(c: &FinCategory) -> Presentation {
    canonical_with(c, None)
}

/// A presentation of the coequalizer of `u, v: P ⇉ Q`, with the two
/// routes used to confirm it.
#[derive(Clone, Debug)]
pub struct PresentedCoequalizer {
    /// Relations `G_P ⊔ K`, generators `J`.
    pub presentation: Presentation,
    pub coequalizer: PresentedCategory,
    /// Canonical presentation of `Q` with `u(f) ~ v(f)` added.
    pub direct: PresentedCategory,
    /// Isomorphism from `coequalizer` to `direct`.
    pub comparison: Functor,
}

/// Presents the coequalizer of `u, v: P ⇉ Q` where `P` is presented by
/// `p_pres` and `Q` by the sectioned `q`. The generators of `P` are lifted
/// along the section of `Q` and added to the relations of `Q`.
pub fn coequalizer_of_presented(
    u: &Functor,
    v: &Functor,
    p_pres: &Presentation,
    q: &SectionedPresentation,
    bounds: Bounds,
) -> Result<PresentedCoequalizer, PresentationError> {
    let p_cat = coequalize(p_pres, bounds)?;
    let p = p_cat.require_finite()?;
    let qc = q.category();
    if [u, v].iter().any(|w| **w.dom() != **p || **w.cod() != **qc) {
        return Err(PresentationError::FunctorMismatch);
    }
    let gp = p_pres.generators();
    let quotient = p_cat.quotient_map().expect("saturated");
    let lift = |w: &Functor| PathMap {
        vertices: gp
            .vertices()
            .map(|x| w.object(quotient.vertex(x)))
            .collect(),
        edges: gp
            .edges()
            .map(|e| q.section_path(w.morphism(quotient.edge(e))).clone())
            .collect(),
    };
    let (x, y) = (lift(u), lift(v));
    let qp = q.presentation();
    let rel = coproduct(gp, qp.relations());
    let alpha = copair(&rel.apex, (&rel.left, &x), (&rel.right, qp.alpha()));
    let beta = copair(&rel.apex, (&rel.left, &y), (&rel.right, qp.beta()));
    let presentation = Presentation::new(rel.apex.clone(), qp.generators().clone(), alpha, beta)?;
    let coequalizer = coequalize(&presentation, bounds)?;
    let lifted = coequalizer.require_finite()?.clone();

    let direct_pres = canonical_with(qc, Some(Identify { source: p, u, v }));
    let direct = coequalize(&direct_pres, bounds)?;
    let expected = direct.require_finite()?.clone();
    let comparison = find_category_isomorphism(&lifted, &expected).ok_or_else(|| {
        PresentationError::VerificationFailed(
            "lifted presentation disagrees with the direct coequalizer".into(),
        )
    })?;
    Ok(PresentedCoequalizer {
        presentation,
        coequalizer,
        direct,
        comparison,
    })
}

/// Given `f: M -> F` and `p: F -> M` with `p ∘ f = id`, where `F` is
/// presented by `f_pres`, decides whether the coequalizer of
/// `id, f ∘ p: F ⇉ F` is isomorphic to `M`.
pub fn verify_retract_coequalizer(
    f_pres: &Presentation,
    f: &Functor,
    p: &Functor,
    bounds: Bounds,
) -> Result<bool, PresentationError> {
    let sec = section_normalize(f_pres, bounds)?;
    let big = sec.category();
    let m = f.dom();
    if **f.cod() != **big || **p.dom() != **big || **p.cod() != **m {
        return Err(PresentationError::FunctorMismatch);
    }
    // Rebuild both functors over the shared category of the section.
    let f = Functor::new(m.clone(), big.clone(), f.object_map().to_vec(), f.morphism_map().to_vec())?;
    let p = Functor::new(big.clone(), m.clone(), p.object_map().to_vec(), p.morphism_map().to_vec())?;
    let pf = f.then(&p)?;
    if let Some(o) = m.objects().find(|&o| pf.object(o) != o) {
        return Err(PresentationError::NotARetract {
            witness: m.object_name(o).to_string(),
        });
    }
    if let Some(x) = m.morphisms().find(|&x| pf.morphism(x) != x) {
        return Err(PresentationError::NotARetract {
            witness: m.morphism_name(x).to_string(),
        });
    }
    let fp = p.then(&f)?;
    let id = Functor::identity(big.clone());
    let result = coequalizer_of_presented(&id, &fp, sec.presentation(), &sec, bounds)?;
    let c = result.coequalizer.require_finite()?;
    Ok(find_category_isomorphism(c, m).is_some())
}
