//! Finite balls of the arc complex, curve complex and arc-and-curve
//! complex: vertex tables, disjointness graphs, links, cliques and
//! automorphisms.
//!
//! A ball holds every arc of a flip registry of the given radius and every
//! essential curve of base weight at most the bound. Simplices are the
//! cliques of the disjointness graph (flag semantics); maximality inside
//! the infinite complex is certified separately by cutting the surface
//! along a clique and checking that no complement piece admits another
//! class.

use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{classify_topological, TypeLabel};
use crate::coords::{CurveClass, VertexClass};
use crate::intersect::{self, cut_along, merge_disjoint};
use crate::registry::{flip_ball, FlipRegistry};
use crate::strands::{Carried, Strands};
use crate::surface::{SpecialCase, Surface};
use crate::{Error, Limits, Result};

/// Which complex the ball approximates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ComplexKind {
    Arc,
    Curve,
    ArcCurve,
}

impl ComplexKind {
    pub fn includes_arcs(&self) -> bool {
        matches!(self, ComplexKind::Arc | ComplexKind::ArcCurve)
    }
    pub fn includes_curves(&self) -> bool {
        matches!(self, ComplexKind::Curve | ComplexKind::ArcCurve)
    }
}

/// Construction bounds and completeness margins.
///
/// Links in the infinite complexes are infinite, so the per-vertex flag
/// can only promise coverage of neighbors of comparable complexity; the
/// margins below say how much headroom a vertex needs before we trust its
/// ball link. They are a documented heuristic, not a derived bound; the
/// finite S_{0,3} complex is flagged complete outright.
#[derive(Debug, Clone)]
pub struct BallOptions {
    pub radius: u32,
    pub weight_bound: u64,
    pub weight_margin: u64,
    pub radius_margin: u32,
}

impl BallOptions {
    pub fn new(radius: u32, weight_bound: u64) -> BallOptions {
        BallOptions {
            radius,
            weight_bound,
            weight_margin: 4,
            radius_margin: 2,
        }
    }

    pub fn with_margins(mut self, weight_margin: u64, radius_margin: u32) -> BallOptions {
        self.weight_margin = weight_margin;
        self.radius_margin = radius_margin;
        self
    }
}

#[derive(Debug, Clone)]
pub struct BallVertex {
    pub class: VertexClass,
    pub label: TypeLabel,
    /// Heuristic link-coverage flag; see [`BallOptions`].
    pub complete: bool,
    pub weight: u64,
}

/// Dense symmetric adjacency.
#[derive(Debug, Clone)]
pub struct AdjMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl AdjMatrix {
    pub fn new(n: usize) -> AdjMatrix {
        let words = n.div_ceil(64).max(1);
        AdjMatrix {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn set(&mut self, a: usize, b: usize) {
        self.bits[a * self.words + b / 64] |= 1 << (b % 64);
        self.bits[b * self.words + a / 64] |= 1 << (a % 64);
    }

    pub fn get(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }

    pub fn degree(&self, a: usize) -> usize {
        self.bits[a * self.words..(a + 1) * self.words]
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn neighbors(&self, a: usize) -> Vec<usize> {
        (0..self.n).filter(|&b| self.get(a, b)).collect()
    }
}

#[derive(Debug, Clone)]
pub struct SimplicialBall {
    surface: Surface,
    kind: ComplexKind,
    vertices: Vec<BallVertex>,
    adj: AdjMatrix,
    options: BallOptions,
    registry: Option<FlipRegistry>,
}

/// An induced subgraph of a ball; `vertices` are ball indices.
#[derive(Debug, Clone)]
pub struct SubComplex {
    pub vertices: Vec<usize>,
    pub adj: AdjMatrix,
}

impl SubComplex {
    pub fn component_count(&self) -> usize {
        let n = self.vertices.len();
        if n == 0 {
            return 0;
        }
        let mut seen = vec![false; n];
        let mut comps = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            comps += 1;
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                for w in 0..n {
                    if !seen[w] && self.adj.get(v, w) {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// The complement graph on the same vertices.
    pub fn complement(&self) -> SubComplex {
        let n = self.vertices.len();
        let mut adj = AdjMatrix::new(n);
        for i in 0..n {
            for j in i + 1..n {
                if !self.adj.get(i, j) {
                    adj.set(i, j);
                }
            }
        }
        SubComplex {
            vertices: self.vertices.clone(),
            adj,
        }
    }
}

/// Every essential simple closed curve of total base weight at most
/// `max_weight`, in lexicographic vector order.
pub fn enumerate_curves(
    base: &crate::triangulation::IdealTriangulation,
    max_weight: u64,
) -> Vec<CurveClass> {
    let e = base.edge_count();
    let mut triangles: Vec<[usize; 3]> = Vec::new();
    let mut seen = vec![false; base.corner_count()];
    for c in 0..base.corner_count() {
        if seen[c] {
            continue;
        }
        let t = base.triangle_of(c);
        for x in t {
            seen[x] = true;
        }
        triangles.push([base.edge_of(t[0]), base.edge_of(t[1]), base.edge_of(t[2])]);
    }
    fn rec(
        base: &crate::triangulation::IdealTriangulation,
        triangles: &[[usize; 3]],
        v: &mut Vec<u32>,
        i: usize,
        left: u64,
        out: &mut Vec<CurveClass>,
    ) {
        let check = |v: &[u32], upto: usize| -> bool {
            triangles.iter().all(|t| {
                if t.iter().any(|&k| k >= upto) {
                    return true;
                }
                let (a, b, c) = (v[t[0]] as i64, v[t[1]] as i64, v[t[2]] as i64);
                (a + b + c) % 2 == 0 && a <= b + c && b <= a + c && c <= a + b
            })
        };
        if i == v.len() {
            if check(v, i) {
                if let Ok(curve) = CurveClass::from_vector(base, v.clone()) {
                    out.push(curve);
                }
            }
            return;
        }
        for x in 0..=left.min(u32::MAX as u64) as u32 {
            v[i] = x;
            if check(v, i + 1) {
                rec(base, triangles, v, i + 1, left - x as u64, out);
            }
        }
        v[i] = 0;
    }
    let mut out = Vec::new();
    rec(base, &triangles, &mut vec![0u32; e], 0, max_weight, &mut out);
    out
}

/// Builds the finite ball of the requested complex.
pub fn build_ball(
    surface: Surface,
    kind: ComplexKind,
    options: BallOptions,
    limits: &Limits,
) -> Result<SimplicialBall> {
    match surface.special_case() {
        SpecialCase::EmptyComplex => {
            return Ok(SimplicialBall {
                surface,
                kind,
                vertices: Vec::new(),
                adj: AdjMatrix::new(0),
                options,
                registry: None,
            });
        }
        SpecialCase::SinglePoint => {
            let mut vertices = Vec::new();
            if kind.includes_arcs() {
                let arc = crate::coords::ArcClass::new((0, 0), (0, 1), Vec::new());
                vertices.push(BallVertex {
                    class: VertexClass::Arc(arc),
                    label: TypeLabel::InterPunctureArc,
                    complete: true,
                    weight: 0,
                });
            }
            let adj = AdjMatrix::new(vertices.len());
            return Ok(SimplicialBall {
                surface,
                kind,
                vertices,
                adj,
                options,
                registry: None,
            });
        }
        _ => {}
    }
    surface.require_triangulable()?;
    let reg = flip_ball(surface, options.radius, limits)?;
    let finite_complex = reg.is_closed() && surface.special_case() == SpecialCase::FiniteS03;

    let mut classes: Vec<VertexClass> = Vec::new();
    if kind.includes_arcs() {
        for arc in reg.arcs() {
            classes.push(VertexClass::Arc(arc.clone()));
        }
    }
    if kind.includes_curves() {
        for curve in enumerate_curves(reg.base(), options.weight_bound) {
            classes.push(VertexClass::Curve(curve));
        }
    }
    classes.sort_by_key(|c| c.sort_key());
    classes.dedup_by(|a, b| crate::coords::class_equal(a, b));

    let arc_depth = |class: &VertexClass| -> u32 {
        match class {
            VertexClass::Arc(a) => reg.entries()[a.anchor().0].depth,
            VertexClass::Curve(_) => 0,
        }
    };
    let mut vertices = Vec::with_capacity(classes.len());
    for class in &classes {
        let label = classify_topological(&reg, class, limits)?;
        let weight = class.weight();
        let complete = finite_complex
            || (weight + options.weight_margin <= options.weight_bound
                && arc_depth(class) + options.radius_margin <= options.radius);
        vertices.push(BallVertex {
            class: class.clone(),
            label,
            complete,
            weight,
        });
    }

    // Disjointness graph; pairs evaluated in parallel, assembled in a
    // schedule-independent order.
    let n = vertices.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let flags: Vec<Result<bool>> = pairs
        .par_iter()
        .map(|&(i, j)| intersect::disjoint(&reg, &vertices[i].class, &vertices[j].class, limits))
        .collect();
    let mut adj = AdjMatrix::new(n);
    for (&(i, j), flag) in pairs.iter().zip(flags.into_iter()) {
        if flag? {
            adj.set(i, j);
        }
    }
    Ok(SimplicialBall {
        surface,
        kind,
        vertices,
        adj,
        options,
        registry: Some(reg),
    })
}

impl SimplicialBall {
    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn kind(&self) -> ComplexKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[BallVertex] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> Result<&BallVertex> {
        self.vertices.get(v).ok_or(Error::UnknownVertex(v))
    }

    pub fn options(&self) -> &BallOptions {
        &self.options
    }

    pub fn registry(&self) -> Option<&FlipRegistry> {
        self.registry.as_ref()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj.get(a, b)
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.adj.neighbors(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj.degree(v)
    }

    pub fn edge_count(&self) -> usize {
        (0..self.len()).map(|v| self.adj.degree(v)).sum::<usize>() / 2
    }

    pub fn find_class(&self, class: &VertexClass) -> Option<usize> {
        self.vertices
            .iter()
            .position(|v| crate::coords::class_equal(&v.class, class))
    }

    fn induced(&self, vertices: Vec<usize>) -> SubComplex {
        let mut adj = AdjMatrix::new(vertices.len());
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                if self.adj.get(vertices[i], vertices[j]) {
                    adj.set(i, j);
                }
            }
        }
        SubComplex { vertices, adj }
    }

    /// The link of a vertex: everything disjoint from it within the ball.
    pub fn link(&self, v: usize) -> Result<SubComplex> {
        self.vertex(v)?;
        Ok(self.induced(self.neighbors(v)))
    }

    /// The star: the link together with the vertex itself.
    pub fn star(&self, v: usize) -> Result<SubComplex> {
        self.vertex(v)?;
        let mut verts = self.neighbors(v);
        verts.push(v);
        verts.sort_unstable();
        Ok(self.induced(verts))
    }

    /// The complement graph of the link's 1-skeleton.
    pub fn dual_link(&self, v: usize) -> Result<SubComplex> {
        Ok(self.link(v)?.complement())
    }

    /// Induced subgraph on the vertices passing the predicate.
    pub fn restricted(&self, keep: impl Fn(usize) -> bool) -> SubComplex {
        self.induced((0..self.len()).filter(|&v| keep(v)).collect())
    }

    /// All inclusion-maximal cliques, deterministically ordered.
    pub fn maximal_cliques(&self, limits: &Limits) -> Result<Vec<Vec<usize>>> {
        self.cliques_on(&(0..self.len()).collect::<Vec<_>>(), limits)
    }

    /// Maximal cliques containing the given vertex.
    pub fn maximal_cliques_through(&self, v: usize, limits: &Limits) -> Result<Vec<Vec<usize>>> {
        self.vertex(v)?;
        let mut domain = self.neighbors(v);
        domain.push(v);
        domain.sort_unstable();
        let all = self.cliques_on(&domain, limits)?;
        Ok(all.into_iter().filter(|c| c.contains(&v)).collect())
    }

    fn cliques_on(&self, domain: &[usize], limits: &Limits) -> Result<Vec<Vec<usize>>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut r: Vec<usize> = Vec::new();
        self.bk(&mut r, domain.to_vec(), Vec::new(), &mut out, limits)?;
        out.sort();
        Ok(out)
    }

    fn bk(
        &self,
        r: &mut Vec<usize>,
        p: Vec<usize>,
        x: Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limits: &Limits,
    ) -> Result<()> {
        if p.is_empty() && x.is_empty() {
            if out.len() >= limits.max_cliques {
                return Err(Error::ResourceLimit(format!(
                    "more than {} maximal cliques",
                    limits.max_cliques
                )));
            }
            let mut clique = r.clone();
            clique.sort_unstable();
            out.push(clique);
            return Ok(());
        }
        let pivot = p
            .iter()
            .chain(x.iter())
            .copied()
            .max_by_key(|&u| {
                (
                    p.iter().filter(|&&w| self.adj.get(u, w)).count(),
                    usize::MAX - u,
                )
            })
            .unwrap();
        let candidates: Vec<usize> = p
            .iter()
            .copied()
            .filter(|&u| !self.adj.get(pivot, u))
            .collect();
        let mut p = p;
        let mut x = x;
        for u in candidates {
            let np: Vec<usize> = p.iter().copied().filter(|&w| self.adj.get(u, w)).collect();
            let nx: Vec<usize> = x.iter().copied().filter(|&w| self.adj.get(u, w)).collect();
            r.push(u);
            self.bk(r, np, nx, out, limits)?;
            r.pop();
            p.retain(|&w| w != u);
            x.push(u);
        }
        Ok(())
    }

    /// Conjunction of the members' completeness flags.
    pub fn clique_confidence(&self, clique: &[usize]) -> bool {
        clique.iter().all(|&v| self.vertices[v].complete)
    }

    /// Certifies that a clique is a maximal simplex of the infinite
    /// complex: cut the surface along all members and check that no piece
    /// admits a further essential arc or curve.
    pub fn genuinely_maximal(&self, clique: &[usize]) -> Result<bool> {
        let pieces = self.complement_pieces(clique)?;
        Ok(pieces.iter().all(|p| p.admits_nothing()))
    }

    /// Complement pieces of the surface cut along the clique members.
    pub fn complement_pieces(&self, clique: &[usize]) -> Result<Vec<intersect::Piece>> {
        let reg = self
            .registry
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("degenerate ball has no registry".into()))?;
        let base = reg.base();
        let mut cut_edges = vec![false; base.edge_count()];
        let mut union = Strands::empty(base);
        for &v in clique {
            let vert = self.vertex(v)?;
            match &vert.class {
                VertexClass::Curve(c) => {
                    let s = crate::strands::from_curve_vector(base, c.vector())?;
                    union = merge_disjoint(base, &union, &s)?;
                }
                VertexClass::Arc(a) => match crate::coords::arc_base_strands(reg, a)? {
                    Carried::EdgeMarker(e) => cut_edges[e] = true,
                    Carried::Strands(s) => {
                        union = merge_disjoint(base, &union, &s)?;
                    }
                },
            }
        }
        for e in 0..base.edge_count() {
            if cut_edges[e] && union.edge_points[e] > 0 {
                return Err(Error::InvalidCoordinates(
                    "clique members are not simultaneously disjoint".into(),
                ));
            }
        }
        cut_along(base, &union, &cut_edges)
    }

    pub fn to_json(&self) -> BallJson {
        BallJson {
            surface: [self.surface.genus(), self.surface.punctures()],
            kind: self.kind,
            vertices: self.vertices.iter().map(|v| v.class.to_json()).collect(),
            labels: self.vertices.iter().map(|v| v.label).collect(),
            edges: {
                let mut edges = Vec::new();
                for i in 0..self.len() {
                    for j in i + 1..self.len() {
                        if self.adj.get(i, j) {
                            edges.push([i, j]);
                        }
                    }
                }
                edges
            },
            bounds: BoundsJson {
                radius: self.options.radius,
                weight: self.options.weight_bound,
            },
            complete: self.vertices.iter().map(|v| v.complete).collect(),
        }
    }

    /// DOT export: vertices colored by type label, shaped by kind.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph ball {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let color = match v.label {
                TypeLabel::SepCurve => "firebrick",
                TypeLabel::NonsepCurve => "salmon",
                TypeLabel::SepLoopArc => "navy",
                TypeLabel::NonsepLoopArc => "skyblue",
                TypeLabel::InterPunctureArc => "forestgreen",
            };
            let shape = if v.class.is_curve() { "ellipse" } else { "box" };
            s.push_str(&format!(
                "  v{i} [color={color}, shape={shape}, label=\"{i}\"];\n"
            ));
        }
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.adj.get(i, j) {
                    s.push_str(&format!("  v{i} -- v{j};\n"));
                }
            }
        }
        s.push_str("}\n");
        s
    }

    /// Brute-force graph automorphisms preserving the arc/curve tag,
    /// pruned by (kind, type label, degree) invariants. Demands a ball
    /// whose every completeness flag is set.
    pub fn automorphisms(&self, limits: &Limits) -> Result<AutomorphismGroup> {
        if let Some(v) = self.vertices.iter().position(|v| !v.complete) {
            return Err(Error::IncompleteBall(format!(
                "vertex {v} has an incomplete link"
            )));
        }
        let n = self.len();
        let key = |v: usize| -> (bool, TypeLabel, usize) {
            (
                self.vertices[v].class.is_curve(),
                self.vertices[v].label,
                self.adj.degree(v),
            )
        };
        let mut elements: Vec<Vec<usize>> = Vec::new();
        let mut perm = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.extend_automorphism(&key, &mut perm, &mut used, 0, &mut elements, limits)?;
        let mut generators: Vec<Vec<usize>> = Vec::new();
        let mut generated: Vec<Vec<usize>> = vec![(0..n).collect()];
        for g in &elements {
            if generated.contains(g) {
                continue;
            }
            generators.push(g.clone());
            loop {
                let mut grew = false;
                let snapshot = generated.clone();
                for a in &snapshot {
                    for b in generators.iter() {
                        let prod: Vec<usize> = (0..n).map(|i| b[a[i]]).collect();
                        if !generated.contains(&prod) {
                            generated.push(prod);
                            grew = true;
                        }
                    }
                }
                if !grew {
                    break;
                }
            }
        }
        Ok(AutomorphismGroup {
            order: elements.len(),
            generators,
            elements,
        })
    }

    fn extend_automorphism(
        &self,
        key: &dyn Fn(usize) -> (bool, TypeLabel, usize),
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        v: usize,
        elements: &mut Vec<Vec<usize>>,
        limits: &Limits,
    ) -> Result<()> {
        let n = self.len();
        if v == n {
            if elements.len() >= limits.max_cliques {
                return Err(Error::ResourceLimit(
                    "automorphism group too large to enumerate".into(),
                ));
            }
            elements.push(perm.clone());
            return Ok(());
        }
        for image in 0..n {
            if used[image] || key(v) != key(image) {
                continue;
            }
            let consistent = (0..v).all(|w| self.adj.get(v, w) == self.adj.get(image, perm[w]));
            if !consistent {
                continue;
            }
            perm[v] = image;
            used[image] = true;
            self.extend_automorphism(key, perm, used, v + 1, elements, limits)?;
            used[image] = false;
            perm[v] = usize::MAX;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct AutomorphismGroup {
    pub order: usize,
    pub generators: Vec<Vec<usize>>,
    pub elements: Vec<Vec<usize>>,
}

impl AutomorphismGroup {
    pub fn contains(&self, perm: &[usize]) -> bool {
        self.elements.iter().any(|e| e == perm)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BallJson {
    pub surface: [u32; 2],
    pub kind: ComplexKind,
    pub vertices: Vec<crate::coords::ClassJson>,
    pub labels: Vec<TypeLabel>,
    pub edges: Vec<[usize; 2]>,
    pub bounds: BoundsJson,
    pub complete: Vec<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundsJson {
    pub radius: u32,
    pub weight: u64,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn degenerate_balls() {
        let b = build_ball(
            Surface::new(0, 1),
            ComplexKind::ArcCurve,
            BallOptions::new(0, 0),
            &limits(),
        )
        .unwrap();
        assert_eq!(b.len(), 0, "AC of the once-punctured sphere is empty");
        let b = build_ball(
            Surface::new(0, 2),
            ComplexKind::ArcCurve,
            BallOptions::new(0, 0),
            &limits(),
        )
        .unwrap();
        assert_eq!(b.len(), 1, "AC of the twice-punctured sphere is a point");
        assert_eq!(b.edge_count(), 0);
        let b = build_ball(
            Surface::new(0, 2),
            ComplexKind::Curve,
            BallOptions::new(0, 0),
            &limits(),
        )
        .unwrap();
        assert_eq!(b.len(), 0);
    }

    #[test]
    fn s03_complex_has_fig2_f_vector() {
        let b = build_ball(
            Surface::new(0, 3),
            ComplexKind::ArcCurve,
            BallOptions::new(6, 4),
            &limits(),
        )
        .unwrap();
        assert_eq!(b.len(), 6, "six vertices");
        assert_eq!(b.edge_count(), 9, "nine edges");
        let cliques = b.maximal_cliques(&limits()).unwrap();
        let two_cells: Vec<_> = cliques.iter().filter(|c| c.len() == 3).collect();
        assert_eq!(two_cells.len(), 4, "four two-cells");
        assert!(cliques.iter().all(|c| c.len() == 3));
        assert!(
            b.vertices().iter().all(|v| v.class.is_arc()),
            "no essential curves on the pair of pants"
        );
    }

    #[test]
    fn curve_enumeration_finds_slopes_on_the_torus() {
        let base = crate::triangulation::base_triangulation(Surface::new(1, 1)).unwrap();
        let curves = enumerate_curves(&base, 2);
        assert_eq!(curves.len(), 3, "three weight-two slope curves");
        for c in &curves {
            assert_eq!(c.weight(), 2);
        }
    }

    #[test]
    fn ball_counts_grow_with_bounds() {
        let small = build_ball(
            Surface::new(0, 4),
            ComplexKind::ArcCurve,
            BallOptions::new(1, 4),
            &limits(),
        )
        .unwrap();
        let large = build_ball(
            Surface::new(0, 4),
            ComplexKind::ArcCurve,
            BallOptions::new(2, 6),
            &limits(),
        )
        .unwrap();
        assert!(large.len() >= small.len());
        assert!(large.edge_count() >= small.edge_count());
    }

    #[test]
    fn triangulation_cliques_are_genuinely_maximal() {
        let b = build_ball(
            Surface::new(0, 4),
            ComplexKind::ArcCurve,
            BallOptions::new(2, 6),
            &limits(),
        )
        .unwrap();
        let reg = b.registry().unwrap();
        let clique: Vec<usize> = reg.entries()[0]
            .arcs
            .iter()
            .map(|&a| {
                b.find_class(&VertexClass::Arc(reg.arc(a).clone()))
                    .expect("base arc in ball")
            })
            .collect();
        for i in 0..clique.len() {
            for j in i + 1..clique.len() {
                assert!(b.adjacent(clique[i], clique[j]));
            }
        }
        assert!(b.genuinely_maximal(&clique).unwrap());
    }

    #[test]
    fn isolated_vertex_has_empty_link() {
        let b = build_ball(
            Surface::new(0, 2),
            ComplexKind::ArcCurve,
            BallOptions::new(0, 0),
            &limits(),
        )
        .unwrap();
        assert!(b.link(0).unwrap().vertices.is_empty());
        assert!(b.link(1).is_err());
    }

    #[test]
    fn s03_automorphisms_have_order_six() {
        let b = build_ball(
            Surface::new(0, 3),
            ComplexKind::ArcCurve,
            BallOptions::new(6, 4),
            &limits(),
        )
        .unwrap();
        let auto = b.automorphisms(&limits()).unwrap();
        assert_eq!(auto.order, 6);
        assert!(!auto.generators.is_empty());
    }
}
