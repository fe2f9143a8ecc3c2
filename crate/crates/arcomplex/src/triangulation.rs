//! Ideal triangulations as combinatorial maps.
//!
//! A triangulation is stored as its corner set: each triangle contributes
//! three corners, one per side, and we identify a corner with the directed
//! side that leaves it counterclockwise. `sigma` advances a corner within
//! its triangle; the pairing `iota` matching the two sides of each edge is
//! implicit — corners `2k` and `2k+1` always form edge `k`, so
//! `iota(c) = c ^ 1`. Each corner carries the puncture label of its tail.
//!
//! Flips exchange the diagonal of the quadrilateral formed by the two
//! triangles adjacent to a non-self-folded edge. Two exchange conventions
//! are provided: [`IdealTriangulation::flip`] and its exact inverse
//! [`IdealTriangulation::unflip`]. Applying `flip` twice returns a map that
//! is isomorphic to the input respecting all labels (the two corners of the
//! flipped edge trade places), while `unflip(flip(t, e), e)` restores the
//! corner arrays bit for bit.

use serde::{Deserialize, Serialize};

use crate::surface::Surface;
use crate::{Error, Result};

/// Index of an edge of a triangulation.
pub type EdgeIdx = usize;

/// Index of a corner (directed side).
pub type Corner = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IdealTriangulation {
    surface: Surface,
    /// Next corner counterclockwise within the same triangle.
    sigma: Vec<u32>,
    /// Puncture label (0-based) at the tail of each corner.
    puncture: Vec<u32>,
}

/// The quadrilateral around a flippable edge.
///
/// `e1 = 2e` and `e2 = 2e+1` are the two sides of the diagonal; going
/// counterclockwise the quad boundary reads `a, b, c, d` with `a = sigma(e1)`
/// and `c = sigma(e2)`. Corners of the square, ccw: tail(a), tail(b),
/// tail(c), tail(d); the old diagonal joins tail(c)'s corner to tail(a)'s.
#[derive(Debug, Clone, Copy)]
pub struct Quad {
    pub e1: Corner,
    pub e2: Corner,
    pub a: Corner,
    pub b: Corner,
    pub c: Corner,
    pub d: Corner,
}

impl IdealTriangulation {
    /// Builds a triangulation from raw corner data and validates it.
    pub fn from_parts(surface: Surface, sigma: Vec<u32>, puncture: Vec<u32>) -> Result<Self> {
        let t = IdealTriangulation {
            surface,
            sigma,
            puncture,
        };
        t.check_valid()?;
        Ok(t)
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn corner_count(&self) -> usize {
        self.sigma.len()
    }

    pub fn edge_count(&self) -> usize {
        self.sigma.len() / 2
    }

    pub fn face_count(&self) -> usize {
        self.sigma.len() / 3
    }

    #[inline]
    pub fn sigma(&self, c: Corner) -> Corner {
        self.sigma[c] as Corner
    }

    #[inline]
    pub fn sigma2(&self, c: Corner) -> Corner {
        self.sigma(self.sigma(c))
    }

    /// The other side of the same edge.
    #[inline]
    pub fn iota(&self, c: Corner) -> Corner {
        c ^ 1
    }

    /// Next corner counterclockwise around the tail vertex.
    #[inline]
    pub fn theta(&self, c: Corner) -> Corner {
        self.sigma(c ^ 1)
    }

    #[inline]
    pub fn edge_of(&self, c: Corner) -> EdgeIdx {
        c >> 1
    }

    /// Puncture label at the tail of the corner.
    #[inline]
    pub fn tail(&self, c: Corner) -> u32 {
        self.puncture[c]
    }

    /// Puncture label at the head, i.e. the tail of the reversed side.
    #[inline]
    pub fn head(&self, c: Corner) -> u32 {
        self.puncture[c ^ 1]
    }

    /// Unordered endpoint labels of an edge, normalized (small, large).
    pub fn edge_endpoints(&self, e: EdgeIdx) -> (u32, u32) {
        let p = self.puncture[2 * e];
        let q = self.puncture[2 * e + 1];
        (p.min(q), p.max(q))
    }

    /// The three corners of the triangle containing `c`, starting at `c`.
    pub fn triangle_of(&self, c: Corner) -> [Corner; 3] {
        [c, self.sigma(c), self.sigma2(c)]
    }

    /// True when both sides of the edge lie in a single triangle.
    pub fn is_self_folded(&self, e: EdgeIdx) -> bool {
        let c = 2 * e;
        self.sigma(c) == c + 1 || self.sigma2(c) == c + 1
    }

    /// The quadrilateral around a flippable edge.
    pub fn quad(&self, e: EdgeIdx) -> Result<Quad> {
        if e >= self.edge_count() {
            return Err(Error::InvalidInput(format!("edge {e} out of range")));
        }
        if self.is_self_folded(e) {
            return Err(Error::SelfFoldedEdge { edge: e });
        }
        let e1 = 2 * e;
        let e2 = 2 * e + 1;
        Ok(Quad {
            e1,
            e2,
            a: self.sigma(e1),
            b: self.sigma2(e1),
            c: self.sigma(e2),
            d: self.sigma2(e2),
        })
    }

    /// Diagonal exchange at `e`. The new diagonal reuses corners `2e`/`2e+1`,
    /// with corner `2e` running from the quad corner at tail(b) to the one at
    /// tail(d).
    pub fn flip(&self, e: EdgeIdx) -> Result<Self> {
        let q = self.quad(e)?;
        let mut t = self.clone();
        t.sigma[q.e1] = q.d as u32;
        t.sigma[q.d] = q.a as u32;
        t.sigma[q.a] = q.e1 as u32;
        t.sigma[q.e2] = q.b as u32;
        t.sigma[q.b] = q.c as u32;
        t.sigma[q.c] = q.e2 as u32;
        t.puncture[q.e1] = self.puncture[q.b];
        t.puncture[q.e2] = self.puncture[q.d];
        debug_assert!(t.check_valid().is_ok());
        Ok(t)
    }

    /// Diagonal exchange with the opposite corner assignment; exact inverse
    /// of [`flip`](Self::flip) at the same edge.
    pub fn unflip(&self, e: EdgeIdx) -> Result<Self> {
        let q = self.quad(e)?;
        let mut t = self.clone();
        t.sigma[q.e1] = q.b as u32;
        t.sigma[q.b] = q.c as u32;
        t.sigma[q.c] = q.e1 as u32;
        t.sigma[q.e2] = q.d as u32;
        t.sigma[q.d] = q.a as u32;
        t.sigma[q.a] = q.e2 as u32;
        t.puncture[q.e1] = self.puncture[q.d];
        t.puncture[q.e2] = self.puncture[q.b];
        debug_assert!(t.check_valid().is_ok());
        Ok(t)
    }

    /// Corners grouped by the vertex (theta orbit) they sit at.
    pub fn vertex_orbits(&self) -> Vec<Vec<Corner>> {
        let n = self.corner_count();
        let mut seen = vec![false; n];
        let mut orbits = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut c = start;
            while !seen[c] {
                seen[c] = true;
                orbit.push(c);
                c = self.theta(c);
            }
            orbits.push(orbit);
        }
        orbits
    }

    /// Per-edge count of ends at the given puncture (0, 1, or 2).
    pub fn link_vector(&self, puncture: u32) -> Vec<u32> {
        let mut v = vec![0u32; self.edge_count()];
        for c in 0..self.corner_count() {
            if self.puncture[c] == puncture {
                v[self.edge_of(c)] += 1;
            }
        }
        v
    }

    /// Degree of a puncture: number of edge-ends attached to it.
    pub fn puncture_degree(&self, puncture: u32) -> usize {
        self.puncture.iter().filter(|&&p| p == puncture).count()
    }

    fn check_valid(&self) -> Result<()> {
        let c = self.corner_count();
        let bad = |m: String| Err(Error::InvalidInput(m));
        if c == 0 || c % 6 != 0 {
            return bad(format!("corner count {c} is not a positive multiple of 6"));
        }
        if self.puncture.len() != c {
            return bad("puncture labeling length mismatch".into());
        }
        let mut hit = vec![false; c];
        for d in 0..c {
            let s = self.sigma[d] as usize;
            if s >= c || hit[s] {
                return bad("sigma is not a permutation".into());
            }
            hit[s] = true;
        }
        for d in 0..c {
            if self.sigma(d) == d {
                return bad(format!("sigma fixes corner {d}"));
            }
            if self.sigma(self.sigma2(d)) != d {
                return bad(format!("sigma orbit of corner {d} does not have order 3"));
            }
        }
        // Connectivity under sigma and iota.
        let mut seen = vec![false; c];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(d) = stack.pop() {
            for next in [self.sigma(d), d ^ 1] {
                if !seen[next] {
                    seen[next] = true;
                    count += 1;
                    stack.push(next);
                }
            }
        }
        if count != c {
            return bad("underlying map is not connected".into());
        }
        // Vertex orbits: label-constant, one label per orbit, n orbits.
        let orbits = self.vertex_orbits();
        let n = self.surface.punctures() as usize;
        if orbits.len() != n {
            return bad(format!(
                "expected {n} vertex orbits, found {}",
                orbits.len()
            ));
        }
        let mut label_seen = vec![false; n];
        for orbit in &orbits {
            let label = self.puncture[orbit[0]];
            if orbit.iter().any(|&d| self.puncture[d] != label) {
                return bad("puncture labels are not constant on a vertex orbit".into());
            }
            let l = label as usize;
            if l >= n || label_seen[l] {
                return bad("puncture labels do not biject with vertex orbits".into());
            }
            label_seen[l] = true;
        }
        // Euler count: V - E + F = 2 - 2g.
        let v = orbits.len() as i64;
        let e = (c / 2) as i64;
        let f = (c / 3) as i64;
        if v - e + f != 2 - 2 * self.surface.genus() as i64 {
            return bad(format!("Euler count failed: V={v} E={e} F={f}"));
        }
        if e != self.surface.edge_count() {
            return bad(format!(
                "edge count {e} does not match 6g+3n-6 = {}",
                self.surface.edge_count()
            ));
        }
        Ok(())
    }

    /// Canonical byte code. Equal codes mean the two maps are isomorphic;
    /// with `labeled` set the isomorphism is additionally required to match
    /// puncture labels. Computed by breadth-first relabeling from every
    /// corner, taking the lexicographic minimum.
    pub fn canonical_code(&self, labeled: bool) -> Vec<u8> {
        let c = self.corner_count();
        let mut best: Option<Vec<u32>> = None;
        for root in 0..c {
            let mut code = Vec::with_capacity(3 * c + 2);
            code.push(self.surface.genus());
            code.push(self.surface.punctures());
            let mut id = vec![u32::MAX; c];
            let mut order = Vec::with_capacity(c);
            id[root] = 0;
            order.push(root);
            let mut next_id = 1u32;
            let mut i = 0;
            while i < order.len() {
                let d = order[i];
                for nb in [self.sigma(d), d ^ 1] {
                    if id[nb] == u32::MAX {
                        id[nb] = next_id;
                        next_id += 1;
                        order.push(nb);
                    }
                    code.push(id[nb]);
                }
                if labeled {
                    code.push(self.puncture[d]);
                }
                i += 1;
            }
            if best.as_ref().map_or(true, |b| code < *b) {
                best = Some(code);
            }
        }
        let words = best.unwrap_or_default();
        let mut bytes = Vec::with_capacity(4 * words.len());
        for w in words {
            bytes.extend_from_slice(&w.to_be_bytes());
        }
        bytes
    }

    /// Map isomorphism respecting puncture labels.
    pub fn isomorphic_labeled(&self, other: &Self) -> bool {
        self.surface == other.surface
            && self.corner_count() == other.corner_count()
            && self.canonical_code(true) == other.canonical_code(true)
    }

    pub fn to_json(&self) -> TriangulationJson {
        TriangulationJson {
            corners: self.corner_count(),
            sigma: self.sigma.clone(),
            iota: (0..self.corner_count() as u32).map(|c| c ^ 1).collect(),
            punctures: self.puncture.iter().map(|&p| p + 1).collect(),
            edges: (0..self.edge_count())
                .map(|e| [2 * e as u32, 2 * e as u32 + 1])
                .collect(),
        }
    }

    pub fn from_json(surface: Surface, json: &TriangulationJson) -> Result<Self> {
        if json.sigma.len() != json.corners
            || json.iota.len() != json.corners
            || json.punctures.len() != json.corners
        {
            return Err(Error::InvalidInput(
                "triangulation JSON: array lengths disagree with corner count".into(),
            ));
        }
        for (c, &i) in json.iota.iter().enumerate() {
            if i as usize != c ^ 1 {
                return Err(Error::InvalidInput(
                    "triangulation JSON: iota must pair corners 2k and 2k+1".into(),
                ));
            }
        }
        for (k, pair) in json.edges.iter().enumerate() {
            if pair[0] as usize != 2 * k || pair[1] as usize != 2 * k + 1 {
                return Err(Error::InvalidInput(
                    "triangulation JSON: edge table must list [2k, 2k+1]".into(),
                ));
            }
        }
        let puncture = json
            .punctures
            .iter()
            .map(|&p| {
                p.checked_sub(1)
                    .ok_or_else(|| Error::InvalidInput("puncture labels are 1-based".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_parts(surface, json.sigma.clone(), puncture)
    }
}

/// Boundary components of a regular neighborhood of a set of pairwise
/// disjoint arcs realized as edges of `tri`, together with their endpoint
/// punctures. Components that bound nothing (trivial circles) are dropped;
/// the result is raw strand data relative to `tri`, unfiltered for
/// essentiality.
pub fn edge_set_boundary(
    tri: &IdealTriangulation,
    set: &[EdgeIdx],
) -> Result<Vec<crate::strands::Strands>> {
    use crate::strands::WalkBuilder;
    let g_dart = |d: Corner| set.contains(&(d >> 1));
    let mut used = vec![false; tri.corner_count()];
    let mut comps = Vec::new();
    for e in set {
        for d0 in [2 * e, 2 * e + 1] {
            if used[d0] {
                continue;
            }
            // The boundary side starting along this dart: wrap around the
            // tail puncture to the next set-dart, hop to its other side,
            // repeat. Crossings collect the non-set darts passed.
            let mut crossings: Vec<Corner> = Vec::new();
            let mut d = d0;
            loop {
                used[d] = true;
                let mut u = tri.theta(d);
                while !g_dart(u) {
                    crossings.push(u);
                    u = tri.theta(u);
                }
                d = u ^ 1;
                if d == d0 {
                    break;
                }
            }
            if crossings.is_empty() {
                continue; // boundary of an empty sector: a trivial circle
            }
            let mut builder = WalkBuilder::new(tri);
            let tags: Vec<usize> = crossings
                .iter()
                .map(|&u| builder.point(u >> 1, if u % 2 == 0 { -1 } else { 1 }))
                .collect();
            let n = crossings.len();
            for k in 0..n {
                let v = crossings[k];
                let w = crossings[(k + 1) % n];
                if !tri.triangle_of(v ^ 1).contains(&w) {
                    return Err(Error::InvalidCoordinates(
                        "neighborhood walk left its triangle".into(),
                    ));
                }
                builder.chord(v ^ 1, tags[k], w, tags[(k + 1) % n]);
            }
            let strands = builder.finish()?;
            if strands.total_weight() > 0 {
                comps.push(strands);
            }
        }
    }
    Ok(comps)
}

/// The essential boundary curves of a regular neighborhood of an anchored
/// arc together with its endpoint punctures, as curve classes over the
/// base triangulation. Peripheral and trivial components are filtered out;
/// the empty set is a valid result (spheres with at most three punctures).
pub fn neighborhood_boundary(
    reg: &crate::registry::FlipRegistry,
    arc: &crate::coords::ArcClass,
) -> Result<Vec<crate::coords::CurveClass>> {
    use crate::strands::Carried;
    let (tri_id, edge) = arc.anchor();
    let entry = reg.entry(tri_id)?;
    let comps = edge_set_boundary(&entry.tri, &[edge])?;
    let mut out: Vec<crate::coords::CurveClass> = Vec::new();
    for comp in comps {
        let carried = reg.carry_to_base(tri_id, Carried::Strands(comp))?;
        let vector = match carried {
            Carried::Strands(s) => s.vector(),
            Carried::EdgeMarker(_) => unreachable!("a closed curve is never an edge"),
        };
        if let Ok(curve) = crate::coords::CurveClass::from_vector(reg.base(), vector) {
            if !out.contains(&curve) {
                out.push(curve);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Wire format for triangulations.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TriangulationJson {
    pub corners: usize,
    pub sigma: Vec<u32>,
    pub iota: Vec<u32>,
    /// 1-based tail labels per corner.
    pub punctures: Vec<u32>,
    pub edges: Vec<[u32; 2]>,
}

/// Deterministic base triangulation for every triangulable surface.
///
/// The surface is presented as a polygon with `4g + 2(n-1)` sides carrying
/// the identification word `c1 .. c(n-1) a1 b1 a1' b1' .. ag bg ag' bg'
/// c(n-1)' .. c1'` (puncture letters nested around the genus block) and
/// triangulated by the fan of diagonals from vertex 0 of the polygon. The
/// nesting keeps the two polygon sides of each fan triangle on distinct
/// edges, so no base triangulation has a self-folded edge.
pub fn base_triangulation(s: Surface) -> Result<IdealTriangulation> {
    s.require_triangulable()?;
    let g = s.genus() as usize;
    let n = s.punctures() as usize;
    let k = 4 * g + 2 * (n - 1);
    debug_assert!(k >= 4);

    // Side partner table for the polygon word.
    let mut partner = vec![usize::MAX; k];
    for i in 0..n - 1 {
        partner[i] = k - 1 - i;
        partner[k - 1 - i] = i;
    }
    for j in 0..g {
        let base = n - 1 + 4 * j;
        partner[base] = base + 2;
        partner[base + 2] = base;
        partner[base + 1] = base + 3;
        partner[base + 3] = base + 1;
    }

    // Fan triangles (0, i, i+1) for i in 1..k-1; raw corner ids are
    // (3*(i-1) + slot) with slot 0 = segment 0->i, 1 = i->i+1, 2 = (i+1)->0.
    #[derive(Clone, Copy, PartialEq, Eq, Hash)]
    enum Seg {
        Poly(usize),
        Diag(usize, bool), // diagonal 0->i, flag = forward
    }
    let faces = k - 2;
    let raw_count = 3 * faces;
    let raw_seg = |corner: usize| -> Seg {
        let t = corner / 3 + 1; // triangle (0, t, t+1)
        match corner % 3 {
            0 => {
                if t == 1 {
                    Seg::Poly(0)
                } else {
                    Seg::Diag(t, true)
                }
            }
            1 => Seg::Poly(t),
            _ => {
                if t == k - 2 {
                    Seg::Poly(k - 1)
                } else {
                    Seg::Diag(t + 1, false)
                }
            }
        }
    };
    // Pair raw corners.
    let mut by_seg: std::collections::HashMap<Seg, usize> = std::collections::HashMap::new();
    let mut raw_pair = vec![usize::MAX; raw_count];
    for corner in 0..raw_count {
        let seg = raw_seg(corner);
        let key = match seg {
            Seg::Poly(i) => Seg::Poly(partner[i].min(i)),
            Seg::Diag(i, _) => Seg::Diag(i, true),
        };
        if let Some(&other) = by_seg.get(&key) {
            raw_pair[corner] = other;
            raw_pair[other] = corner;
        } else {
            by_seg.insert(key, corner);
        }
    }
    debug_assert!(raw_pair.iter().all(|&p| p != usize::MAX));

    // Relabel so each edge occupies corners (2k, 2k+1), first-seen first.
    let mut new_id = vec![usize::MAX; raw_count];
    let mut next_edge = 0usize;
    for corner in 0..raw_count {
        if new_id[corner] == usize::MAX {
            new_id[corner] = 2 * next_edge;
            new_id[raw_pair[corner]] = 2 * next_edge + 1;
            next_edge += 1;
        }
    }
    let mut sigma = vec![0u32; raw_count];
    for corner in 0..raw_count {
        let next_raw = corner - corner % 3 + (corner + 1) % 3;
        sigma[new_id[corner]] = new_id[next_raw] as u32;
    }

    // Assign puncture labels from theta orbits, ordered by smallest corner.
    let mut puncture = vec![u32::MAX; raw_count];
    let mut label = 0u32;
    for start in 0..raw_count {
        if puncture[start] != u32::MAX {
            continue;
        }
        let mut c = start;
        while puncture[c] == u32::MAX {
            puncture[c] = label;
            c = sigma[c ^ 1] as usize;
        }
        label += 1;
    }
    if label as usize != n {
        return Err(Error::InvalidInput(format!(
            "polygon construction produced {label} punctures instead of {n}"
        )));
    }
    IdealTriangulation::from_parts(s, sigma, puncture)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(t: &IdealTriangulation) -> (usize, usize, usize) {
        (
            t.vertex_orbits().len(),
            t.edge_count(),
            t.face_count(),
        )
    }

    #[test]
    fn base_counts_for_small_surfaces() {
        let t = base_triangulation(Surface::new(0, 4)).unwrap();
        assert_eq!(counts(&t), (4, 6, 4), "tetrahedron map for S_{{0,4}}");
        let t = base_triangulation(Surface::new(1, 1)).unwrap();
        assert_eq!(counts(&t), (1, 3, 2));
        let t = base_triangulation(Surface::new(0, 3)).unwrap();
        assert_eq!(counts(&t), (3, 3, 2));
        let t = base_triangulation(Surface::new(1, 2)).unwrap();
        assert_eq!(counts(&t), (2, 6, 4));
        let t = base_triangulation(Surface::new(0, 5)).unwrap();
        assert_eq!(counts(&t), (5, 9, 6));
        let t = base_triangulation(Surface::new(2, 1)).unwrap();
        assert_eq!(counts(&t), (1, 9, 6));
    }

    #[test]
    fn base_rejects_unsupported() {
        assert!(base_triangulation(Surface::new(0, 2)).is_err());
        assert!(base_triangulation(Surface::new(0, 1)).is_err());
        assert!(base_triangulation(Surface::new(1, 0)).is_err());
    }

    #[test]
    fn unflip_is_exact_inverse() {
        for (g, n) in [(0, 3), (1, 1), (0, 4), (1, 2), (0, 5)] {
            let t = base_triangulation(Surface::new(g, n)).unwrap();
            for e in 0..t.edge_count() {
                if t.is_self_folded(e) {
                    continue;
                }
                let f = t.flip(e).unwrap();
                assert_eq!(f.unflip(e).unwrap(), t, "unflip(flip) on edge {e}");
                let u = t.unflip(e).unwrap();
                assert_eq!(u.flip(e).unwrap(), t, "flip(unflip) on edge {e}");
            }
        }
    }

    #[test]
    fn double_flip_is_isomorphic_as_labeled_map() {
        for (g, n) in [(0, 3), (1, 1), (0, 4), (0, 5)] {
            let t = base_triangulation(Surface::new(g, n)).unwrap();
            for e in 0..t.edge_count() {
                if t.is_self_folded(e) {
                    continue;
                }
                let ff = t.flip(e).unwrap().flip(e).unwrap();
                assert!(
                    ff.isomorphic_labeled(&t),
                    "flip^2 must be a labeled-map isomorphism at edge {e}"
                );
            }
        }
    }

    #[test]
    fn any_single_flip_keeps_invariants() {
        let t = base_triangulation(Surface::new(1, 1)).unwrap();
        for e in 0..t.edge_count() {
            let f = t.flip(e).unwrap();
            assert_eq!(f.edge_count(), 3);
            assert_eq!(f.vertex_orbits().len(), 1);
        }
    }

    #[test]
    fn no_base_triangulation_has_folded_edges() {
        for (g, n) in [(0, 3), (0, 4), (0, 5), (1, 1), (1, 2), (2, 1), (1, 3)] {
            let t = base_triangulation(Surface::new(g, n)).unwrap();
            assert!(
                (0..t.edge_count()).all(|e| !t.is_self_folded(e)),
                "base of S_{{{g},{n}}} should have no self-folded edge"
            );
        }
    }

    #[test]
    fn self_folded_edge_is_rejected() {
        // Flipping any edge of the S_{0,3} base produces a once-punctured
        // monogon; the folded edge must then refuse to flip.
        let t = base_triangulation(Surface::new(0, 3)).unwrap();
        for e in 0..t.edge_count() {
            let f = t.flip(e).unwrap();
            let folded: Vec<_> = (0..3).filter(|&x| f.is_self_folded(x)).collect();
            assert!(!folded.is_empty(), "flip {e} should fold an edge");
            for &x in &folded {
                assert!(matches!(
                    f.flip(x),
                    Err(Error::SelfFoldedEdge { edge }) if edge == x
                ));
            }
        }
    }

    /// Independent isomorphism search by backtracking over the image of a
    /// single corner; used to certify the canonical code.
    fn isomorphic_by_search(a: &IdealTriangulation, b: &IdealTriangulation, labeled: bool) -> bool {
        let c = a.corner_count();
        if c != b.corner_count() {
            return false;
        }
        'roots: for root in 0..c {
            let mut map = vec![usize::MAX; c];
            let mut stack = vec![(0usize, root)];
            map[0] = root;
            if labeled && a.tail(0) != b.tail(root) {
                continue;
            }
            while let Some((x, y)) = stack.pop() {
                for (nx, ny) in [(a.sigma(x), b.sigma(y)), (x ^ 1, y ^ 1)] {
                    if map[nx] == usize::MAX {
                        if labeled && a.tail(nx) != b.tail(ny) {
                            continue 'roots;
                        }
                        map[nx] = ny;
                        stack.push((nx, ny));
                    } else if map[nx] != ny {
                        continue 'roots;
                    }
                }
            }
            let mut used = vec![false; c];
            if map.iter().all(|&y| {
                if y == usize::MAX || used[y] {
                    false
                } else {
                    used[y] = true;
                    true
                }
            }) {
                return true;
            }
        }
        false
    }

    #[test]
    fn canonical_code_matches_isomorphism_search() {
        let t = base_triangulation(Surface::new(1, 1)).unwrap();
        let f0 = t.flip(0).unwrap();
        let f1 = t.flip(1).unwrap();
        for (x, y) in [(&t, &f0), (&f0, &f1), (&t, &t)] {
            let by_code = x.canonical_code(true) == y.canonical_code(true);
            let by_search = isomorphic_by_search(x, y, true);
            assert_eq!(by_code, by_search);
        }
        // Relabeling invariance: codes ignore the internal corner order.
        let perm_code = {
            // Rebuild t with edges 0 and 1 swapped (corners 0,1 <-> 2,3).
            let swap = |c: usize| match c {
                0 => 2,
                1 => 3,
                2 => 0,
                3 => 1,
                other => other,
            };
            let mut sigma = vec![0u32; t.corner_count()];
            let mut punct = vec![0u32; t.corner_count()];
            for c in 0..t.corner_count() {
                sigma[swap(c)] = swap(t.sigma(c)) as u32;
                punct[swap(c)] = t.tail(c);
            }
            IdealTriangulation::from_parts(t.surface(), sigma, punct)
                .unwrap()
                .canonical_code(true)
        };
        assert_eq!(perm_code, t.canonical_code(true));
    }

    #[test]
    fn codes_distinguish_surfaces() {
        let a = base_triangulation(Surface::new(0, 3)).unwrap();
        let b = base_triangulation(Surface::new(1, 1)).unwrap();
        assert_ne!(a.canonical_code(true), b.canonical_code(true));
        assert_ne!(a.canonical_code(false), b.canonical_code(false));
    }

    #[test]
    fn json_round_trip() {
        let t = base_triangulation(Surface::new(0, 4)).unwrap();
        let j = t.to_json();
        let back = IdealTriangulation::from_json(t.surface(), &j).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn torus_arc_neighborhood_is_the_parallel_curve() {
        use crate::registry::flip_ball;
        let reg = flip_ball(Surface::new(1, 1), 0, &crate::Limits::default()).unwrap();
        // The boundary of a neighborhood of the slope arc at edge e is the
        // parallel curve, crossing the other two edges once each.
        for e in 0..3 {
            let arc = reg.arc(reg.arc_id_at(0, e).unwrap()).clone();
            let curves = neighborhood_boundary(&reg, &arc).unwrap();
            assert_eq!(curves.len(), 1, "both annulus sides are the same class");
            let mut expect = vec![1u32, 1, 1];
            expect[e] = 0;
            assert_eq!(curves[0].vector(), expect);
        }
    }

    #[test]
    fn s03_arcs_have_no_essential_neighborhood_curves() {
        use crate::registry::flip_ball;
        let reg = flip_ball(Surface::new(0, 3), 4, &crate::Limits::default()).unwrap();
        assert!(reg.is_closed());
        for arc in reg.arcs() {
            let curves = neighborhood_boundary(&reg, arc).unwrap();
            assert!(
                curves.is_empty(),
                "S_{{0,3}} admits no essential curves, got {curves:?}"
            );
        }
    }

    #[test]
    fn registry_arcs_have_curve_neighbors_off_small_spheres() {
        use crate::registry::flip_ball;
        for (g, n) in [(0, 4), (1, 1), (1, 2), (0, 5)] {
            let reg = flip_ball(Surface::new(g, n), 2, &crate::Limits::default()).unwrap();
            for arc in reg.arcs() {
                let curves = neighborhood_boundary(&reg, arc).unwrap();
                assert!(
                    !curves.is_empty(),
                    "S_{{{g},{n}}} arc {:?} has no essential boundary curve",
                    arc.vector()
                );
                let cap = if arc.is_loop() { 2 } else { 1 };
                assert!(curves.len() <= cap, "at most {cap} boundary classes");
            }
        }
    }

    #[test]
    fn neighborhood_curves_are_disjoint_from_the_arc() {
        use crate::coords::VertexClass;
        use crate::intersect::intersection_number;
        use crate::registry::flip_ball;
        let lim = crate::Limits::default();
        let reg = flip_ball(Surface::new(0, 5), 1, &lim).unwrap();
        for arc in reg.arcs() {
            let a = VertexClass::Arc(arc.clone());
            for curve in neighborhood_boundary(&reg, arc).unwrap() {
                let c = VertexClass::Curve(curve);
                assert_eq!(intersection_number(&reg, &a, &c, &lim).unwrap(), 0);
                assert_eq!(intersection_number(&reg, &c, &a, &lim).unwrap(), 0);
            }
        }
    }
}
