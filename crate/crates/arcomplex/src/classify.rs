//! The two vertex-type classifiers: topological (cut the surface along the
//! class and look) and combinatorial (read the type off link data inside a
//! ball), together with their reconciliation.
//!
//! The combinatorial classifier follows the link characterization: the
//! dual link is disconnected exactly for separating classes; the largest
//! maximal-simplex dimension through the vertex separates arcs (6g+3n-7)
//! from curves (6g+3n-8); and loop arcs are told apart from inter-puncture
//! arcs by the existence of a separating-curve vertex z in the link whose
//! star is contained in the star of the arc. Star containment quantifies
//! over an infinite complex, so inside a ball every step degrades to
//! "inconclusive" rather than to a wrong label when the evidence is
//! truncated.

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialBall;
use crate::coords::VertexClass;
use crate::intersect::{class_strands_rel_base, cut_along};
use crate::registry::FlipRegistry;
use crate::strands::{Carried, Strands};
use crate::{Error, Limits, Result};

/// The five vertex types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TypeLabel {
    SepCurve,
    SepLoopArc,
    NonsepCurve,
    NonsepLoopArc,
    InterPunctureArc,
}

impl TypeLabel {
    pub fn is_curve(&self) -> bool {
        matches!(self, TypeLabel::SepCurve | TypeLabel::NonsepCurve)
    }

    pub fn is_separating_type(&self) -> bool {
        matches!(self, TypeLabel::SepCurve | TypeLabel::SepLoopArc)
    }
}

/// True when cutting the surface along the class leaves two components.
pub fn separating(reg: &FlipRegistry, class: &VertexClass, _limits: &Limits) -> Result<bool> {
    let base = reg.base();
    let mut cut_edges = vec![false; base.edge_count()];
    let system = match class {
        VertexClass::Curve(c) => crate::strands::from_curve_vector(base, c.vector())?,
        VertexClass::Arc(a) => match crate::coords::arc_base_strands(reg, a)? {
            Carried::EdgeMarker(e) => {
                cut_edges[e] = true;
                Strands::empty(base)
            }
            Carried::Strands(s) => s,
        },
    };
    let pieces = cut_along(base, &system, &cut_edges)?;
    Ok(pieces.len() == 2)
}

/// Classifies a class by its own topology: kind, endpoints, and whether it
/// separates.
pub fn classify_topological(
    reg: &FlipRegistry,
    class: &VertexClass,
    limits: &Limits,
) -> Result<TypeLabel> {
    match class {
        VertexClass::Curve(_) => Ok(if separating(reg, class, limits)? {
            TypeLabel::SepCurve
        } else {
            TypeLabel::NonsepCurve
        }),
        VertexClass::Arc(a) => {
            if !a.is_loop() {
                Ok(TypeLabel::InterPunctureArc)
            } else if separating(reg, class, limits)? {
                Ok(TypeLabel::SepLoopArc)
            } else {
                Ok(TypeLabel::NonsepLoopArc)
            }
        }
    }
}

/// Largest dimension of a certified-maximal simplex through `v`, with a
/// confidence flag: true when the certified cliques reach the theoretical
/// ceiling for the vertex's kind.
pub fn max_dim_through(
    ball: &SimplicialBall,
    v: usize,
    limits: &Limits,
) -> Result<(Option<i64>, bool)> {
    let s = ball.surface();
    let ceiling = if ball.vertex(v)?.class.is_arc() {
        s.max_maximal_dim()
    } else {
        s.max_maximal_dim() - 1
    };
    let best = largest_genuine_clique_through(ball, v, limits)?;
    match best {
        Some(size) => {
            let dim = size as i64 - 1;
            Ok((Some(dim), dim == ceiling))
        }
        None => Ok((None, false)),
    }
}

/// Size of the largest clique through `v` that is certified maximal in the
/// infinite complex; tries in-ball-maximal cliques from the largest down.
fn largest_genuine_clique_through(
    ball: &SimplicialBall,
    v: usize,
    limits: &Limits,
) -> Result<Option<usize>> {
    // Arc vertices always lie in their anchor triangulation, whose edge
    // set is a certified top simplex present in every registry ball.
    if let VertexClass::Arc(a) = &ball.vertex(v)?.class {
        if let Some(reg) = ball.registry() {
            let entry = reg.entry(a.anchor().0)?;
            let all_present = entry.arcs.iter().all(|&id| {
                ball.find_class(&VertexClass::Arc(reg.arc(id).clone()))
                    .is_some()
            });
            if all_present {
                return Ok(Some(entry.arcs.len()));
            }
        }
    }
    let mut cliques = ball.maximal_cliques_through(v, limits)?;
    cliques.sort_by_key(|c| std::cmp::Reverse(c.len()));
    let mut best: Option<usize> = None;
    for clique in &cliques {
        if best.map_or(false, |b| clique.len() <= b) {
            break;
        }
        if ball.genuinely_maximal(clique)? {
            best = Some(clique.len());
        }
    }
    Ok(best)
}

/// Outcome of the combinatorial classifier, with the per-step evidence.
#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub label: Option<TypeLabel>,
    /// Number of connected components of the dual link inside the ball.
    pub dual_components: usize,
    /// The dual-link verdict agreed on the shrunken ball.
    pub dual_stable: bool,
    /// Largest certified maximal-simplex size through the vertex.
    pub genuine_clique_size: Option<usize>,
    pub evidence: Vec<String>,
}

impl Classification {
    fn inconclusive(mut self, why: &str) -> Classification {
        self.evidence.push(format!("inconclusive: {why}"));
        self.label = None;
        self
    }
}

/// Classifies a vertex from link combinatorics alone. Returns `label:
/// None` (inconclusive) whenever truncation makes a step unreliable.
pub fn classify_combinatorial(
    ball: &SimplicialBall,
    v: usize,
    limits: &Limits,
) -> Result<Classification> {
    let surface = ball.surface();
    let top_size = surface.edge_count() as usize;
    let mut out = Classification {
        label: None,
        dual_components: 0,
        dual_stable: false,
        genuine_clique_size: None,
        evidence: Vec::new(),
    };

    // Truncated vertices produce unreliable links (their duals can appear
    // disconnected spuriously); degrade to inconclusive.
    if !ball.vertex(v)?.complete {
        return Ok(out.inconclusive("vertex link coverage not trusted"));
    }

    // Dual-link connectivity, with a stability probe on the shrunken ball.
    let link = ball.link(v)?;
    if link.vertices.is_empty() {
        return Ok(out.inconclusive("empty link"));
    }
    let dual = link.complement();
    out.dual_components = dual.component_count();
    let disconnected = out.dual_components > 1;
    let opts = ball.options();
    let shrunk = ball.restricted(|u| {
        u != v
            && ball.adjacent(u, v)
            && ball.vertices()[u].weight + opts.weight_margin <= opts.weight_bound
    });
    let shrunk_dual = shrunk.complement();
    out.dual_stable = !shrunk.vertices.is_empty()
        && (shrunk_dual.component_count() > 1) == disconnected;
    out.evidence.push(format!(
        "dual link has {} component(s), stable: {}",
        out.dual_components, out.dual_stable
    ));
    if !out.dual_stable {
        return Ok(out.inconclusive("dual-link verdict unstable under shrinking"));
    }

    // Dimension step.
    let best = largest_genuine_clique_through(ball, v, limits)?;
    out.genuine_clique_size = best;
    let Some(size) = best else {
        return Ok(out.inconclusive("no certified maximal simplex through the vertex"));
    };
    out.evidence
        .push(format!("certified maximal simplex of size {size}"));
    if size == top_size {
        // Arc side.
        if disconnected {
            out.label = Some(TypeLabel::SepLoopArc);
            return Ok(out);
        }
        // Step (c): a separating-curve vertex z in the link with
        // St(z) inside St(v).
        let n_v: std::collections::BTreeSet<usize> =
            ball.neighbors(v).into_iter().chain([v]).collect();
        let mut candidates = Vec::new();
        for &z in n_v.iter() {
            if z == v {
                continue;
            }
            // Recursive combinatorial identification of z as a separating
            // curve: no top simplex, a certified simplex one short, and a
            // disconnected dual link.
            let zbest = largest_genuine_clique_through(ball, z, limits)?;
            if zbest != Some(top_size - 1) {
                continue;
            }
            let zdual = ball.dual_link(z)?;
            if zdual.component_count() <= 1 {
                continue;
            }
            candidates.push(z);
        }
        out.evidence
            .push(format!("{} separating-curve candidates in the link", candidates.len()));
        if candidates.is_empty() {
            return Ok(out.inconclusive("no separating-curve candidate recognized in the link"));
        }
        let mut witnessed_noncontainment = 0usize;
        for &z in &candidates {
            let n_z: std::collections::BTreeSet<usize> =
                ball.neighbors(z).into_iter().chain([z]).collect();
            if n_z.is_subset(&n_v) {
                if ball.vertices()[z].complete {
                    out.evidence.push(format!(
                        "st({z}) inside st({v}) with a complete candidate"
                    ));
                    out.label = Some(TypeLabel::InterPunctureArc);
                    return Ok(out);
                }
                return Ok(out.inconclusive(
                    "contained star found but the candidate's link coverage is not trusted",
                ));
            } else {
                witnessed_noncontainment += 1;
            }
        }
        if witnessed_noncontainment == candidates.len() {
            out.evidence
                .push("every separating candidate has a star escaping the arc's star".into());
            out.label = Some(TypeLabel::NonsepLoopArc);
            return Ok(out);
        }
        Ok(out.inconclusive("mixed star-containment evidence"))
    } else if size == top_size - 1 {
        // Curve side.
        out.label = Some(if disconnected {
            TypeLabel::SepCurve
        } else {
            TypeLabel::NonsepCurve
        });
        Ok(out)
    } else {
        Ok(out.inconclusive("certified dimension below every ceiling"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_ball, BallOptions, ComplexKind};
    use crate::registry::flip_ball;
    use crate::surface::Surface;

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn every_sphere_curve_separates() {
        let reg = flip_ball(Surface::new(0, 4), 1, &limits()).unwrap();
        for curve in crate::complex::enumerate_curves(reg.base(), 6) {
            let class = VertexClass::Curve(curve);
            assert!(separating(&reg, &class, &limits()).unwrap());
            assert_eq!(
                classify_topological(&reg, &class, &limits()).unwrap(),
                TypeLabel::SepCurve
            );
        }
    }

    #[test]
    fn no_torus_curve_separates() {
        let reg = flip_ball(Surface::new(1, 1), 1, &limits()).unwrap();
        for curve in crate::complex::enumerate_curves(reg.base(), 6) {
            let class = VertexClass::Curve(curve);
            assert!(!separating(&reg, &class, &limits()).unwrap());
        }
    }

    #[test]
    fn arc_types_by_endpoints_and_cutting() {
        let reg = flip_ball(Surface::new(1, 2), 2, &limits()).unwrap();
        let mut saw = std::collections::HashSet::new();
        for arc in reg.arcs() {
            let class = VertexClass::Arc(arc.clone());
            let label = classify_topological(&reg, &class, &limits()).unwrap();
            if !arc.is_loop() {
                assert_eq!(label, TypeLabel::InterPunctureArc);
            } else {
                assert!(matches!(
                    label,
                    TypeLabel::SepLoopArc | TypeLabel::NonsepLoopArc
                ));
            }
            saw.insert(label);
        }
        assert!(saw.contains(&TypeLabel::InterPunctureArc));
        assert!(
            saw.contains(&TypeLabel::NonsepLoopArc),
            "a genus surface has nonseparating loop arcs; saw {saw:?}"
        );
    }

    #[test]
    fn boundary_of_inter_puncture_arc_neighborhood_separates() {
        // The curve around an arc joining two distinct punctures bounds a
        // twice-punctured disk on one side.
        let reg = flip_ball(Surface::new(0, 5), 1, &limits()).unwrap();
        let arc = reg
            .arcs()
            .iter()
            .find(|a| !a.is_loop())
            .expect("inter-puncture arc");
        for z in crate::triangulation::neighborhood_boundary(&reg, arc).unwrap() {
            let class = VertexClass::Curve(z);
            assert!(separating(&reg, &class, &limits()).unwrap());
        }
    }

    #[test]
    fn combinatorial_classifier_agrees_on_sphere_ball() {
        let ball = build_ball(
            Surface::new(0, 4),
            ComplexKind::ArcCurve,
            BallOptions::new(3, 10),
            &limits(),
        )
        .unwrap();
        let mut conclusive = 0;
        for v in 0..ball.len() {
            let comb = classify_combinatorial(&ball, v, &limits()).unwrap();
            if let Some(label) = comb.label {
                conclusive += 1;
                assert_eq!(
                    label,
                    ball.vertices()[v].label,
                    "vertex {v}: combinatorial vs topological ({:?})",
                    comb.evidence
                );
            }
        }
        assert!(conclusive > 0, "at least one vertex classified");
    }
}
