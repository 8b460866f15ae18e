use std::sync::Arc;

use super::{coequalize, Bounds, PathMap, Presentation, PresentationError, PresentedCategory};
use crate::categories::{
    find_category_isomorphism, underlying_graph, FinCategory, Functor, MorId, Path,
};
use crate::graphs::{FinGraph, GraphMorphism};

/// A presentation over the vertex quotient `G/R₀`, with a section of its
/// quotient map.
///
/// `bounded_free` has the vertices of `G/R₀` and one edge per path of length
/// at most the bound, named by the path. `section` picks the normal form of
/// each morphism; `qbar` sends each path to its morphism.
#[derive(Clone, Debug)]
pub struct SectionedPresentation {
    original: Presentation,
    pres: Presentation,
    reduction: GraphMorphism,
    coequalizer: PresentedCategory,
    bounded_free: Arc<FinGraph>,
    section: GraphMorphism,
    qbar: GraphMorphism,
}

impl SectionedPresentation {
    pub fn original(&self) -> &Presentation {
        &self.original
    }

    /// `(H, G/R₀, r ∘ alpha, r ∘ beta)`.
    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    /// `r: G -> G/R₀`.
    pub fn reduction(&self) -> &GraphMorphism {
        &self.reduction
    }

    pub fn coequalizer(&self) -> &PresentedCategory {
        &self.coequalizer
    }

    pub fn category(&self) -> &Arc<FinCategory> {
        self.coequalizer.category().expect("sectioned presentations are saturated")
    }

    pub fn bounded_free(&self) -> &Arc<FinGraph> {
        &self.bounded_free
    }

    pub fn section(&self) -> &GraphMorphism {
        &self.section
    }

    pub fn qbar(&self) -> &GraphMorphism {
        &self.qbar
    }

    /// The normal-form path over `G/R₀` chosen for a morphism.
    pub fn section_path(&self, m: MorId) -> &Path {
        &self.coequalizer.normal_forms()[self.coequalizer.class_of_morphism(m)]
    }
}

/// Rewrites a saturated presentation over `G/R₀` and builds a section of
/// its coequalizer, checking that the coequalizers agree, that the new
/// quotient acts on generators as the old one does, and that
/// `s` followed by `q̄` is the identity.
pub fn section_normalize(
    p: &Presentation,
    bounds: Bounds,
) -> Result<SectionedPresentation, PresentationError> {
    let before = coequalize(p, bounds)?;
    let m = before.require_finite()?.clone();
    let r = before.vertex_reduction().clone();
    let rebased = |map: &PathMap| {
        let m = map.then(&r);
        (m.vertex_map().to_vec(), m.edge_map().to_vec())
    };
    let pres = Presentation::new(
        p.relations().clone(),
        r.cod().clone(),
        rebased(p.alpha()),
        rebased(p.beta()),
    )?;
    let after = coequalize(&pres, bounds)?;
    let m2 = after.require_finite()?.clone();

    let iso = if m == m2 {
        Functor::identity(m.clone())
    } else {
        find_category_isomorphism(&m, &m2).ok_or_else(|| {
            PresentationError::VerificationFailed("coequalizers before and after reduction differ".into())
        })?
    };
    let q = before.quotient_map().expect("saturated");
    let q2 = after.quotient_map().expect("saturated");
    let g = p.generators();
    if let Some(e) = g.edges().find(|&e| iso.morphism(q.edge(e)) != q2.edge(r.edge(e))) {
        return Err(PresentationError::VerificationFailed(format!(
            "reduced quotient disagrees with the original on `{}`",
            g.edge_name(e)
        )));
    }

    let reduced = pres.generators();
    let names: Vec<String> = after.universe().iter().map(|p| p.display(reduced)).collect();
    let edges = after
        .universe()
        .iter()
        .zip(&names)
        .map(|(p, n)| {
            (
                n.clone(),
                reduced.vertex_name(p.start()).to_string(),
                reduced.vertex_name(p.end(reduced)).to_string(),
            )
        })
        .collect();
    let bounded_free = Arc::new(FinGraph::new(reduced.vertex_names().to_vec(), edges)?);
    let um = underlying_graph(&m2);
    let vertices: Vec<_> = reduced.vertices().collect();
    let mut qbar_edges = vec![None; names.len()];
    for (p, n) in after.universe().iter().zip(&names) {
        qbar_edges[bounded_free.edge_id(n).unwrap().0] = after.quotient_of_path(p);
    }
    let qbar_edges: Vec<MorId> = qbar_edges.into_iter().map(Option::unwrap).collect();
    let qbar = GraphMorphism::new(bounded_free.clone(), um.clone(), vertices.clone(), qbar_edges)?;
    let section_edges = m2
        .morphisms()
        .map(|mor| {
            let nf = &after.normal_forms()[after.class_of_morphism(mor)];
            bounded_free.edge_id(&nf.display(reduced)).unwrap()
        })
        .collect();
    let section = GraphMorphism::new(um.clone(), bounded_free.clone(), vertices, section_edges)?;
    if section.then(&qbar)? != GraphMorphism::identity(um) {
        return Err(PresentationError::VerificationFailed(
            "section followed by the quotient is not the identity".into(),
        ));
    }
    Ok(SectionedPresentation {
        original: p.clone(),
        pres,
        reduction: r,
        coequalizer: after,
        bounded_free,
        section,
        qbar,
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn collapsing_two_vertices() {
        let g = Arc::new(FinGraph::builder().vertices(["a", "b"]).build().unwrap());
        let h = Arc::new(FinGraph::builder().vertex("w").build().unwrap());
        let p = Presentation::from_names(h, g, (&[("w", "a")], &[]), (&[("w", "b")], &[])).unwrap();
        let s = section_normalize(&p, Bounds::new(2, 10)).unwrap();
        assert_eq!(s.presentation().generators().vertex_count(), 1);
        assert_eq!(s.category().morphism_count(), 1);
        assert_eq!(s.bounded_free().edge_count(), 1);
    }

    #[test]
    fn cyclic_section_picks_normal_forms() {
        let s = section_normalize(&cyclic(2), Bounds::new(4, 10)).unwrap();
        assert_eq!(s.reduction().vertex_map().len(), 1);
        let c = s.category();
        let shown: Vec<String> = c
            .morphisms()
            .map(|m| s.section_path(m).display(s.presentation().generators()))
            .collect();
        assert_eq!(shown, ["a", "id(*)"]);
        // Paths up to length 4 on one loop.
        assert_eq!(s.bounded_free().edge_count(), 5);
        assert_eq!(s.section().then(s.qbar()).unwrap(), GraphMorphism::identity(c.graph().clone()));
    }

    #[test]
    fn refuses_undecided() {
        let p = Presentation::free(loop_graph("*", "a")).unwrap();
        assert!(matches!(
            section_normalize(&p, Bounds::new(3, 10)),
            Err(PresentationError::Undecided { bound: 3, .. })
        ));
    }
}
