//! Normal position of curve and arc systems inside an ideal triangulation.
//!
//! A system is stored triangle by triangle as a set of chords. Chord ends
//! sit either on a side of the triangle (a crossing with the edge under
//! that side, with an ordinal position along the side) or at a corner (an
//! arc endpoint at the puncture, with an angular slot). Within one system
//! the chords of a triangle are pairwise disjoint, so the combinatorics of
//! ordinals and slots determine the picture completely.
//!
//! The two producers of strand data are [`from_curve_vector`] (the standard
//! corner-strand solution of the per-triangle matching equations) and
//! closed walks assembled by [`WalkBuilder`] (regular-neighborhood
//! boundaries). [`carry_across_exchange`] pushes a system through a single
//! diagonal exchange by recombining the chords of the two affected
//! triangles inside their quadrilateral; this is the transport primitive
//! for everything anchored away from the base triangulation.

use crate::triangulation::{EdgeIdx, IdealTriangulation, Quad};
use crate::{Error, Result};

/// One endpoint of a chord.
///
/// `Side { corner, pos }`: the chord meets the edge under `corner`; `pos`
/// counts crossings along the corner's direction (tail to head). The same
/// crossing seen from the partner side `corner ^ 1` has position
/// `m - 1 - pos`.
///
/// `Corner { corner, slot }`: the chord ends at the puncture at
/// `tail(corner)`, inside the angular sector of that triangle corner; slots
/// count from the arriving side `sigma2(corner)` toward `corner`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum End {
    Side { corner: usize, pos: u32 },
    Corner { corner: usize, slot: u32 },
}

impl End {
    pub fn corner(&self) -> usize {
        match *self {
            End::Side { corner, .. } | End::Corner { corner, .. } => corner,
        }
    }

    pub fn is_corner(&self) -> bool {
        matches!(self, End::Corner { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Chord {
    pub a: End,
    pub b: End,
}

/// A system of disjoint strands in normal position relative to one
/// triangulation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Strands {
    /// Crossing count per edge.
    pub edge_points: Vec<u32>,
    /// Arc-endpoint slot count per corner.
    pub corner_slots: Vec<u32>,
    pub chords: Vec<Chord>,
}

/// A class carried along flips: either literally an edge of the current
/// triangulation or a strand system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Carried {
    EdgeMarker(EdgeIdx),
    Strands(Strands),
}

/// Which exchange convention moved the triangulation: `Flip` matches
/// [`IdealTriangulation::flip`], `Unflip` matches
/// [`IdealTriangulation::unflip`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exchange {
    Flip,
    Unflip,
}

impl Strands {
    pub fn empty(tri: &IdealTriangulation) -> Strands {
        Strands {
            edge_points: vec![0; tri.edge_count()],
            corner_slots: vec![0; tri.corner_count()],
            chords: Vec::new(),
        }
    }

    pub fn total_weight(&self) -> u64 {
        self.edge_points.iter().map(|&m| m as u64).sum()
    }

    /// Interior intersection numbers with the edges of the triangulation.
    pub fn vector(&self) -> Vec<u32> {
        self.edge_points.clone()
    }

    /// Number of arc endpoints (0 for closed systems).
    pub fn endpoint_count(&self) -> u32 {
        self.corner_slots.iter().sum()
    }

    /// Punctures at the corner slots, sorted.
    pub fn endpoints(&self, tri: &IdealTriangulation) -> Vec<u32> {
        let mut out = Vec::new();
        for ch in &self.chords {
            for end in [ch.a, ch.b] {
                if let End::Corner { corner, .. } = end {
                    out.push(tri.tail(corner));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Consistency checks; run after every construction in tests and debug
    /// builds.
    pub fn validate(&self, tri: &IdealTriangulation) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidCoordinates(m));
        if self.edge_points.len() != tri.edge_count()
            || self.corner_slots.len() != tri.corner_count()
        {
            return bad("strand table sizes disagree with the triangulation".into());
        }
        let mut side_seen: Vec<Vec<bool>> = (0..tri.corner_count())
            .map(|c| vec![false; self.edge_points[tri.edge_of(c)] as usize])
            .collect();
        let mut slot_seen: Vec<Vec<bool>> = (0..tri.corner_count())
            .map(|c| vec![false; self.corner_slots[c] as usize])
            .collect();
        for ch in &self.chords {
            let ta = tri.triangle_of(ch.a.corner());
            if !ta.contains(&ch.b.corner()) {
                return bad("chord ends lie in different triangles".into());
            }
            if let (End::Side { corner: c1, .. }, End::Side { corner: c2, .. }) = (ch.a, ch.b) {
                if c1 == c2 {
                    return bad(format!("same-side chord on corner {c1}"));
                }
            }
            for end in [ch.a, ch.b] {
                match end {
                    End::Side { corner, pos } => {
                        let cell = side_seen[corner].get_mut(pos as usize).ok_or_else(|| {
                            Error::InvalidCoordinates(format!(
                                "side position {pos} out of range on corner {corner}"
                            ))
                        })?;
                        if *cell {
                            return bad(format!("side ({corner},{pos}) used twice"));
                        }
                        *cell = true;
                    }
                    End::Corner { corner, slot } => {
                        let cell = slot_seen[corner].get_mut(slot as usize).ok_or_else(|| {
                            Error::InvalidCoordinates(format!(
                                "corner slot {slot} out of range on corner {corner}"
                            ))
                        })?;
                        if *cell {
                            return bad(format!("corner slot ({corner},{slot}) used twice"));
                        }
                        *cell = true;
                    }
                }
            }
        }
        if side_seen.iter().any(|v| v.iter().any(|&s| !s))
            || slot_seen.iter().any(|v| v.iter().any(|&s| !s))
        {
            return bad("unreferenced side position or corner slot".into());
        }
        let order = BoundaryOrder::new(tri, self);
        for (_, chords) in group_chords_by_triangle(tri, self) {
            for i in 0..chords.len() {
                for j in i + 1..chords.len() {
                    if order.chords_cross(self.chords[chords[i]], self.chords[chords[j]]) {
                        return bad("chords of one system cross".into());
                    }
                }
            }
        }
        Ok(())
    }

    /// The matching partner of a side end: the same crossing seen from the
    /// adjacent triangle.
    pub fn partner(&self, tri: &IdealTriangulation, end: End) -> End {
        match end {
            End::Side { corner, pos } => {
                let m = self.edge_points[tri.edge_of(corner)];
                End::Side {
                    corner: corner ^ 1,
                    pos: m - 1 - pos,
                }
            }
            End::Corner { .. } => end,
        }
    }
}

/// Cyclic boundary coordinates of the triangles of a system: every end of
/// every chord receives a position on its triangle's boundary circle. The
/// circle reads corner station, side, corner station, side, corner station,
/// side, counterclockwise.
pub struct BoundaryOrder {
    corner_offset: Vec<u64>,
    side_offset: Vec<u64>,
    total: Vec<u64>,
    tri_of_corner: Vec<usize>,
}

impl BoundaryOrder {
    pub fn new(tri: &IdealTriangulation, s: &Strands) -> BoundaryOrder {
        let nc = tri.corner_count();
        let mut corner_offset = vec![0u64; nc];
        let mut side_offset = vec![0u64; nc];
        let mut total = vec![0u64; nc / 3];
        let mut tri_of_corner = vec![0usize; nc];
        let mut seen = vec![false; nc];
        let mut tri_idx = 0;
        for start in 0..nc {
            if seen[start] {
                continue;
            }
            let mut off = 0u64;
            for c in tri.triangle_of(start) {
                seen[c] = true;
                tri_of_corner[c] = tri_idx;
                corner_offset[c] = off;
                off += s.corner_slots[c] as u64;
                side_offset[c] = off;
                off += s.edge_points[tri.edge_of(c)] as u64;
            }
            total[tri_idx] = off;
            tri_idx += 1;
        }
        BoundaryOrder {
            corner_offset,
            side_offset,
            total,
            tri_of_corner,
        }
    }

    pub fn position(&self, end: End) -> u64 {
        match end {
            End::Corner { corner, slot } => self.corner_offset[corner] + slot as u64,
            End::Side { corner, pos } => self.side_offset[corner] + pos as u64,
        }
    }

    pub fn triangle_len(&self, corner: usize) -> u64 {
        self.total[self.tri_of_corner[corner]]
    }

    /// Two chords of one triangle cross exactly when their ends strictly
    /// interleave around the boundary circle.
    pub fn chords_cross(&self, k1: Chord, k2: Chord) -> bool {
        let (a, b) = (self.position(k1.a), self.position(k1.b));
        let (c, d) = (self.position(k2.a), self.position(k2.b));
        if a == c || a == d || b == c || b == d {
            return false;
        }
        let between = |lo: u64, hi: u64, x: u64| -> bool {
            if lo <= hi {
                x > lo && x < hi
            } else {
                x > lo || x < hi
            }
        };
        between(a, b, c) != between(a, b, d)
    }
}

pub(crate) fn group_chords_by_triangle(
    tri: &IdealTriangulation,
    s: &Strands,
) -> std::collections::BTreeMap<usize, Vec<usize>> {
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for (i, ch) in s.chords.iter().enumerate() {
        let c = ch.a.corner();
        let key = *tri.triangle_of(c).iter().min().unwrap();
        groups.entry(key).or_default().push(i);
    }
    groups
}

/// Builds the standard corner-strand representative of a non-negative
/// integer edge vector. Errors unless every triangle satisfies the matching
/// conditions (even side sum, triangle inequalities) and the vector is not
/// identically zero.
pub fn from_curve_vector(tri: &IdealTriangulation, v: &[u32]) -> Result<Strands> {
    if v.len() != tri.edge_count() {
        return Err(Error::InvalidCoordinates(format!(
            "vector length {} does not match edge count {}",
            v.len(),
            tri.edge_count()
        )));
    }
    if v.iter().all(|&x| x == 0) {
        return Err(Error::InvalidCoordinates(
            "the zero vector names no curve".into(),
        ));
    }
    let mut s = Strands {
        edge_points: v.to_vec(),
        corner_slots: vec![0; tri.corner_count()],
        chords: Vec::new(),
    };
    let mut seen = vec![false; tri.corner_count()];
    for start in 0..tri.corner_count() {
        if seen[start] {
            continue;
        }
        let [c0, c1, c2] = tri.triangle_of(start);
        for c in [c0, c1, c2] {
            seen[c] = true;
        }
        let side = |c: usize| v[tri.edge_of(c)] as i64;
        let (x0, x1, x2) = (side(c0), side(c1), side(c2));
        if (x0 + x1 + x2) % 2 != 0 {
            return Err(Error::InvalidCoordinates(format!(
                "odd side sum {x0}+{x1}+{x2} in a triangle"
            )));
        }
        let tuples = [(c0, c1, x2), (c1, c2, x0), (c2, c0, x1)];
        let mut counts = [0i64; 3];
        for (k, &(prev, next, opposite)) in tuples.iter().enumerate() {
            counts[k] = (side(prev) + side(next) - opposite) / 2;
            if counts[k] < 0 {
                return Err(Error::InvalidCoordinates(format!(
                    "triangle inequality fails: {} + {} < {}",
                    side(prev),
                    side(next),
                    opposite
                )));
            }
        }
        for (k, &(prev, next, _)) in tuples.iter().enumerate() {
            let m_prev = side(prev) as u32;
            for j in 0..counts[k] as u32 {
                s.chords.push(Chord {
                    a: End::Side {
                        corner: prev,
                        pos: m_prev - 1 - j,
                    },
                    b: End::Side {
                        corner: next,
                        pos: j,
                    },
                });
            }
        }
    }
    debug_assert!(s.validate(tri).is_ok());
    Ok(s)
}

/// A traced component of a system.
#[derive(Debug, Clone)]
pub struct Component {
    pub chord_indices: Vec<usize>,
    pub closed: bool,
    /// Puncture labels of the two ends for open components, normalized.
    pub endpoints: Option<(u32, u32)>,
}

/// Splits a system into its connected strands.
pub fn trace_components(tri: &IdealTriangulation, s: &Strands) -> Vec<Component> {
    use std::collections::HashMap;
    let mut at: HashMap<(usize, u32), (usize, bool)> = HashMap::new();
    for (i, ch) in s.chords.iter().enumerate() {
        if let End::Side { corner, pos } = ch.a {
            at.insert((corner, pos), (i, true));
        }
        if let End::Side { corner, pos } = ch.b {
            at.insert((corner, pos), (i, false));
        }
    }
    let other = |i: usize, ingress_is_a: bool| -> End {
        if ingress_is_a {
            s.chords[i].b
        } else {
            s.chords[i].a
        }
    };
    let mut used = vec![false; s.chords.len()];
    let mut components = Vec::new();
    // Open components first, started from corner ends.
    for (i, ch) in s.chords.iter().enumerate() {
        if used[i] || (!ch.a.is_corner() && !ch.b.is_corner()) {
            continue;
        }
        let start_end = if ch.a.is_corner() { ch.a } else { ch.b };
        let mut indices = vec![i];
        used[i] = true;
        let mut exit = if ch.a.is_corner() { ch.b } else { ch.a };
        while let End::Side { .. } = exit {
            let p = s.partner(tri, exit);
            let (j, via_a) = match p {
                End::Side { corner, pos } => at[&(corner, pos)],
                End::Corner { .. } => unreachable!(),
            };
            used[j] = true;
            indices.push(j);
            exit = other(j, via_a);
        }
        let (sc, ec) = match (start_end, exit) {
            (End::Corner { corner: c1, .. }, End::Corner { corner: c2, .. }) => {
                (tri.tail(c1), tri.tail(c2))
            }
            _ => unreachable!(),
        };
        components.push(Component {
            chord_indices: indices,
            closed: false,
            endpoints: Some((sc.min(ec), sc.max(ec))),
        });
    }
    // Closed components.
    for i in 0..s.chords.len() {
        if used[i] {
            continue;
        }
        let mut indices = vec![i];
        used[i] = true;
        let stop = s.chords[i].a;
        let mut exit = s.chords[i].b;
        loop {
            let p = s.partner(tri, exit);
            if p == stop {
                break;
            }
            let (j, via_a) = match p {
                End::Side { corner, pos } => at[&(corner, pos)],
                End::Corner { .. } => unreachable!(),
            };
            used[j] = true;
            indices.push(j);
            exit = other(j, via_a);
        }
        components.push(Component {
            chord_indices: indices,
            closed: true,
            endpoints: None,
        });
    }
    components
}

/// Extracts one component as a standalone system.
pub fn extract_component(tri: &IdealTriangulation, s: &Strands, comp: &Component) -> Strands {
    let mut keep = vec![false; s.chords.len()];
    for &i in &comp.chord_indices {
        keep[i] = true;
    }
    compact(tri, s, &keep)
}

/// Rebuilds a system keeping only the flagged chords, renumbering positions
/// and slots densely.
fn compact(tri: &IdealTriangulation, s: &Strands, keep: &[bool]) -> Strands {
    let mut surviving: Vec<Vec<u32>> = vec![Vec::new(); tri.edge_count()];
    let mut slot_surviving: Vec<Vec<u32>> = vec![Vec::new(); tri.corner_count()];
    for (i, ch) in s.chords.iter().enumerate() {
        if !keep[i] {
            continue;
        }
        for end in [ch.a, ch.b] {
            match end {
                End::Side { corner, pos } => {
                    let e = tri.edge_of(corner);
                    let even_pos = if corner % 2 == 0 {
                        pos
                    } else {
                        s.edge_points[e] - 1 - pos
                    };
                    surviving[e].push(even_pos);
                }
                End::Corner { corner, slot } => slot_surviving[corner].push(slot),
            }
        }
    }
    for v in surviving.iter_mut() {
        v.sort_unstable();
        v.dedup(); // each crossing appears once per side
    }
    for v in slot_surviving.iter_mut() {
        v.sort_unstable();
    }
    let remap_side = |corner: usize, pos: u32| -> u32 {
        let e = tri.edge_of(corner);
        let even_pos = if corner % 2 == 0 {
            pos
        } else {
            s.edge_points[e] - 1 - pos
        };
        let new_even = surviving[e].binary_search(&even_pos).unwrap() as u32;
        if corner % 2 == 0 {
            new_even
        } else {
            surviving[e].len() as u32 - 1 - new_even
        }
    };
    let mut out = Strands {
        edge_points: surviving.iter().map(|v| v.len() as u32).collect(),
        corner_slots: slot_surviving.iter().map(|v| v.len() as u32).collect(),
        chords: Vec::new(),
    };
    for (i, ch) in s.chords.iter().enumerate() {
        if !keep[i] {
            continue;
        }
        let map_end = |end: End| -> End {
            match end {
                End::Side { corner, pos } => End::Side {
                    corner,
                    pos: remap_side(corner, pos),
                },
                End::Corner { corner, slot } => End::Corner {
                    corner,
                    slot: slot_surviving[corner].binary_search(&slot).unwrap() as u32,
                },
            }
        };
        out.chords.push(Chord {
            a: map_end(ch.a),
            b: map_end(ch.b),
        });
    }
    out
}

/// Incremental builder for strand systems given by explicit walks (used for
/// regular-neighborhood boundaries). Crossing points carry sort keys; the
/// builder orders them along each edge, resolves ordinals, removes
/// same-side returns into the triangulation, and validates.
pub struct WalkBuilder<'a> {
    tri: &'a IdealTriangulation,
    points: Vec<Vec<(i64, usize)>>,
    chords: Vec<(usize, usize, usize, usize)>,
    next_tag: usize,
}

impl<'a> WalkBuilder<'a> {
    pub fn new(tri: &'a IdealTriangulation) -> Self {
        WalkBuilder {
            tri,
            points: vec![Vec::new(); tri.edge_count()],
            chords: Vec::new(),
            next_tag: 0,
        }
    }

    /// Registers a crossing on `edge`. The key orders crossings along the
    /// even corner of the edge; keys must be pairwise distinct per edge.
    pub fn point(&mut self, edge: EdgeIdx, key_along_even: i64) -> usize {
        let tag = self.next_tag;
        self.next_tag += 1;
        self.points[edge].push((key_along_even, tag));
        tag
    }

    /// Adds a chord between two registered crossings, seen from the given
    /// corners (which must bound one triangle).
    pub fn chord(&mut self, corner_a: usize, tag_a: usize, corner_b: usize, tag_b: usize) {
        self.chords.push((corner_a, tag_a, corner_b, tag_b));
    }

    pub fn finish(mut self) -> Result<Strands> {
        for v in self.points.iter_mut() {
            v.sort_unstable();
            for w in v.windows(2) {
                if w[0].0 == w[1].0 {
                    return Err(Error::InvalidCoordinates("duplicate walk point key".into()));
                }
            }
        }
        let mut pos_of_tag = std::collections::HashMap::new();
        for (e, v) in self.points.iter().enumerate() {
            for (i, &(_, tag)) in v.iter().enumerate() {
                pos_of_tag.insert(tag, (e, i as u32));
            }
        }
        let mut s = Strands {
            edge_points: self.points.iter().map(|v| v.len() as u32).collect(),
            corner_slots: vec![0; self.tri.corner_count()],
            chords: Vec::new(),
        };
        for &(ca, ta, cb, tb) in &self.chords {
            let side_end = |corner: usize, tag: usize| -> Result<End> {
                let (e, even_pos) = pos_of_tag[&tag];
                if self.tri.edge_of(corner) != e {
                    return Err(Error::InvalidCoordinates(
                        "walk chord cites a corner on the wrong edge".into(),
                    ));
                }
                let pos = if corner % 2 == 0 {
                    even_pos
                } else {
                    s.edge_points[e] - 1 - even_pos
                };
                Ok(End::Side { corner, pos })
            };
            let a = side_end(ca, ta)?;
            let b = side_end(cb, tb)?;
            s.chords.push(Chord { a, b });
        }
        reduce_same_side(self.tri, &mut s)?;
        s.validate(self.tri)?;
        Ok(s)
    }
}

/// Removes chords whose two ends lie on the same side of one triangle by
/// pushing the strand across that edge, splicing the two neighbouring
/// chords, until none remain. Components that reduce away entirely
/// (trivial loops) are dropped.
fn reduce_same_side(tri: &IdealTriangulation, s: &mut Strands) -> Result<()> {
    loop {
        let mut victim = None;
        for (i, ch) in s.chords.iter().enumerate() {
            if let (End::Side { corner: c1, .. }, End::Side { corner: c2, .. }) = (ch.a, ch.b) {
                if c1 == c2 {
                    victim = Some(i);
                    break;
                }
            }
        }
        let Some(i) = victim else {
            return Ok(());
        };
        let ch = s.chords[i];
        let pa = s.partner(tri, ch.a);
        let pb = s.partner(tri, ch.b);
        let mut ia = None;
        let mut ib = None;
        for (j, other) in s.chords.iter().enumerate() {
            if j == i {
                continue;
            }
            if other.a == pa || other.b == pa {
                ia = Some(j);
            }
            if other.a == pb || other.b == pb {
                ib = Some(j);
            }
        }
        let (ja, jb) = match (ia, ib) {
            (Some(x), Some(y)) => (x, y),
            _ => {
                return Err(Error::InvalidCoordinates(
                    "open strand at a same-side reduction".into(),
                ))
            }
        };
        let mut keep = vec![true; s.chords.len()];
        keep[i] = false;
        if ja == jb {
            // The strand closes up through a single partner chord: the whole
            // component is a trivial loop.
            keep[ja] = false;
            *s = compact(tri, s, &keep);
            continue;
        }
        let far = |j: usize| -> End {
            let c = s.chords[j];
            if c.a == pa || c.a == pb {
                c.b
            } else {
                c.a
            }
        };
        let splice = Chord {
            a: far(ja),
            b: far(jb),
        };
        keep[ja] = false;
        keep[jb] = false;
        *s = compact_with_extra(tri, s, &keep, splice);
    }
}

fn compact_with_extra(
    tri: &IdealTriangulation,
    s: &Strands,
    keep: &[bool],
    extra: Chord,
) -> Strands {
    let mut tmp = s.clone();
    tmp.chords.push(extra);
    let mut keep2 = keep.to_vec();
    keep2.push(true);
    compact(tri, &tmp, &keep2)
}

/// If the (single-component, closed) system is isotopic to the circle
/// around one puncture, returns that puncture.
pub fn peripheral_puncture(tri: &IdealTriangulation, s: &Strands) -> Option<u32> {
    let v = s.vector();
    (0..tri.surface().punctures()).find(|&p| tri.link_vector(p) == v)
}

// ---------------------------------------------------------------------------
// Transport across a diagonal exchange
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pt {
    x: i64,
    y: i64,
}

/// Orders two chords by the position of their intersection with the line
/// x + y = d, by decreasing x (closer to the square corner (d, 0) first).
fn cmp_diag_hit(u1: Pt, v1: Pt, u2: Pt, v2: Pt, d: i64) -> std::cmp::Ordering {
    let frac = |u: Pt, v: Pt| -> (i128, i128) {
        let dx = (v.x - u.x) as i128;
        let dy = (v.y - u.y) as i128;
        let num = u.x as i128 * dy - u.y as i128 * dx + dx * d as i128;
        let den = dx + dy;
        if den < 0 {
            (-num, -den)
        } else {
            (num, den)
        }
    };
    let (n1, d1) = frac(u1, v1);
    let (n2, d2) = frac(u2, v2);
    (n2 * d1).cmp(&(n1 * d2))
}

/// Pushes a carried class through one diagonal exchange of `tri` at `edge`.
/// `tri` is the triangulation before the exchange; the result is relative
/// to `tri.flip(edge)` or `tri.unflip(edge)` according to `how`.
pub fn carry_across_exchange(
    tri: &IdealTriangulation,
    edge: EdgeIdx,
    how: Exchange,
    class: &Carried,
) -> Result<Carried> {
    let q = tri.quad(edge)?;
    let s = match class {
        Carried::EdgeMarker(f) if *f != edge => return Ok(Carried::EdgeMarker(*f)),
        Carried::EdgeMarker(_) => {
            return Ok(Carried::Strands(materialize_old_diagonal(tri, &q, how)))
        }
        Carried::Strands(s) => s,
    };

    // Square geometry: corners P = tail(a), Q = tail(b), R = tail(c),
    // S = tail(d) at (0,0), (L,0), (L,L), (0,L); the old diagonal joins R
    // to P, the new one Q to S.
    let sides = [q.a, q.b, q.c, q.d];
    let m_of = |corner: usize| s.edge_points[tri.edge_of(corner)] as i64;
    let d_len: i64 = sides.iter().map(|&c| m_of(c) + 1).product();
    let corner_pt = [
        Pt { x: 0, y: 0 },
        Pt { x: d_len, y: 0 },
        Pt { x: d_len, y: d_len },
        Pt { x: 0, y: d_len },
    ];
    let side_pt = |corner: usize, pos: u32| -> Pt {
        let idx = sides.iter().position(|&c| c == corner).unwrap();
        let step = d_len / (m_of(corner) + 1);
        let along = (pos as i64 + 1) * step;
        let (from, to) = (corner_pt[idx], corner_pt[(idx + 1) % 4]);
        Pt {
            x: from.x + (to.x - from.x) / d_len * along,
            y: from.y + (to.y - from.y) / d_len * along,
        }
    };

    #[derive(Clone, Copy, PartialEq, Debug)]
    enum SqEnd {
        Side { corner: usize, pos: u32 },
        Station { corner: usize, slot: u32, at: usize },
    }
    let station_at = |corner: usize| -> usize {
        if corner == q.a || corner == q.e2 {
            0
        } else if corner == q.b {
            1
        } else if corner == q.c || corner == q.e1 {
            2
        } else if corner == q.d {
            3
        } else {
            unreachable!("corner station outside the quad")
        }
    };
    let sq_pt = |e: &SqEnd| -> Pt {
        match *e {
            SqEnd::Side { corner, pos } => side_pt(corner, pos),
            SqEnd::Station { at, .. } => corner_pt[at],
        }
    };

    // Splice chords across the old diagonal.
    let t1 = tri.triangle_of(q.e1);
    let t2 = tri.triangle_of(q.e2);
    let in_quad = |c: usize| t1.contains(&c) || t2.contains(&c);
    let to_sq = |end: End| -> SqEnd {
        match end {
            End::Side { corner, pos } => SqEnd::Side { corner, pos },
            End::Corner { corner, slot } => SqEnd::Station {
                corner,
                slot,
                at: station_at(corner),
            },
        }
    };
    let m_e = s.edge_points[edge];
    let mut half1: Vec<Option<SqEnd>> = vec![None; m_e as usize];
    let mut half2: Vec<Option<SqEnd>> = vec![None; m_e as usize];
    let mut quad_chords: Vec<(SqEnd, SqEnd)> = Vec::new();
    let mut outside: Vec<Chord> = Vec::new();
    for ch in &s.chords {
        if !in_quad(ch.a.corner()) {
            outside.push(*ch);
            continue;
        }
        let on_diag = |end: End| -> Option<(usize, u32)> {
            if let End::Side { corner, pos } = end {
                if corner == q.e1 || corner == q.e2 {
                    return Some((corner, pos));
                }
            }
            None
        };
        match (on_diag(ch.a), on_diag(ch.b)) {
            (None, None) => quad_chords.push((to_sq(ch.a), to_sq(ch.b))),
            (Some((c, p)), None) | (None, Some((c, p))) => {
                let other = if on_diag(ch.a).is_some() { ch.b } else { ch.a };
                let pos1 = if c == q.e1 { p } else { m_e - 1 - p };
                if c == q.e1 {
                    half1[pos1 as usize] = Some(to_sq(other));
                } else {
                    half2[pos1 as usize] = Some(to_sq(other));
                }
            }
            (Some(_), Some(_)) => {
                return Err(Error::InvalidCoordinates(
                    "strand crosses the exchanged edge twice within one triangle".into(),
                ))
            }
        }
    }
    for k in 0..m_e as usize {
        match (half1[k], half2[k]) {
            (Some(u), Some(v)) => quad_chords.push((u, v)),
            _ => {
                return Err(Error::InvalidCoordinates(
                    "dangling crossing on the exchanged edge".into(),
                ))
            }
        }
    }

    let flipped = match how {
        Exchange::Flip => tri.flip(edge)?,
        Exchange::Unflip => tri.unflip(edge)?,
    };
    // -1: the (P) side of the new diagonal; +1: the (R) side; 0: at Q or S.
    let region = |e: &SqEnd| -> i32 {
        let p = sq_pt(e);
        (p.x + p.y - d_len).signum() as i32
    };
    // The new-edge corner inside the P-region triangle always runs Q -> S.
    let (corner_p_region, corner_r_region) = match how {
        Exchange::Flip => (q.e1, q.e2),
        Exchange::Unflip => (q.e2, q.e1),
    };

    // Classify quad chords against the new diagonal.
    let mut crossing: Vec<(SqEnd, SqEnd)> = Vec::new(); // (P-side end, R-side end)
    let mut plain: Vec<(SqEnd, SqEnd)> = Vec::new();
    let mut diag_parallel = 0usize;
    for &(u, v) in &quad_chords {
        let (ru, rv) = (region(&u), region(&v));
        if ru == 0 && rv == 0 {
            diag_parallel += 1;
        } else if ru != 0 && rv != 0 && ru != rv {
            if ru < 0 {
                crossing.push((u, v));
            } else {
                crossing.push((v, u));
            }
        } else {
            plain.push((u, v));
        }
    }
    if diag_parallel > 0 {
        // A corner-to-corner chord parallel to the new diagonal: the class
        // is a single arc isotopic to the new edge.
        if quad_chords.len() == 1 && outside.is_empty() {
            return Ok(Carried::EdgeMarker(edge));
        }
        return Err(Error::InvalidCoordinates(
            "diagonal-parallel chord inside a larger system".into(),
        ));
    }
    crossing.sort_by(|l, r| {
        let o = cmp_diag_hit(sq_pt(&l.0), sq_pt(&l.1), sq_pt(&r.0), sq_pt(&r.1), d_len);
        if o != std::cmp::Ordering::Equal {
            return o;
        }
        // Stacked corner-to-corner chords: order by the P-side slot.
        let slot = |e: &SqEnd| match *e {
            SqEnd::Station { slot, .. } => slot,
            _ => 0,
        };
        slot(&l.0).cmp(&slot(&r.0))
    });
    let new_m = crossing.len() as u32;

    let mut out = Strands {
        edge_points: {
            let mut ep = s.edge_points.clone();
            ep[edge] = new_m;
            ep
        },
        corner_slots: s.corner_slots.clone(),
        chords: Vec::new(),
    };
    for c in [q.a, q.b, q.c, q.d, q.e1, q.e2] {
        out.corner_slots[c] = 0;
    }

    // Remap corner stations. Around P the new station is keyed by corner a
    // and reads old station(e2) slots then old station(a) slots; around R,
    // station(c) reads old station(e1) then old station(c). At Q and S the
    // old stations split by region; the block angularly nearer the arriving
    // side keeps the lower slots.
    use std::collections::HashMap;
    let mut station_members: HashMap<usize, Vec<(usize, u32)>> = HashMap::new();
    {
        let mut push = |new_c: usize, old_c: usize, slot: u32| {
            station_members.entry(new_c).or_default().push((old_c, slot));
        };
        for k in 0..s.corner_slots[q.e2] {
            push(q.a, q.e2, k);
        }
        for k in 0..s.corner_slots[q.a] {
            push(q.a, q.a, k);
        }
        for k in 0..s.corner_slots[q.e1] {
            push(q.c, q.e1, k);
        }
        for k in 0..s.corner_slots[q.c] {
            push(q.c, q.c, k);
        }
        let mut q_split: Vec<(i32, u32)> = Vec::new();
        let mut s_split: Vec<(i32, u32)> = Vec::new();
        for &(u, v) in &quad_chords {
            for (this, other) in [(u, v), (v, u)] {
                if let SqEnd::Station { corner, slot, .. } = this {
                    if corner == q.b {
                        q_split.push((region(&other), slot));
                    } else if corner == q.d {
                        s_split.push((region(&other), slot));
                    }
                }
            }
        }
        // At Q: the P-region block sits between the arriving side a and the
        // diagonal, so it keeps the lower slots; the station between a and
        // the diagonal is sigma(a) in the exchanged map.
        q_split.sort_by_key(|&(r, slot)| (r, slot));
        for &(r, slot) in &q_split {
            let target = if r < 0 { flipped.sigma(q.a) } else { q.b };
            push(target, q.b, slot);
        }
        // At S: the R-region block sits between the arriving side c and the
        // diagonal.
        s_split.sort_by_key(|&(r, slot)| (-r, slot));
        for &(r, slot) in &s_split {
            let target = if r > 0 { flipped.sigma(q.c) } else { q.d };
            push(target, q.d, slot);
        }
    }
    let mut slot_map: HashMap<(usize, u32), (usize, u32)> = HashMap::new();
    for (new_c, members) in &station_members {
        for (i, &(old_c, old_slot)) in members.iter().enumerate() {
            slot_map.insert((old_c, old_slot), (*new_c, i as u32));
        }
        out.corner_slots[*new_c] = members.len() as u32;
    }

    let remap_end = |e: &SqEnd| -> End {
        match *e {
            SqEnd::Side { corner, pos } => End::Side { corner, pos },
            SqEnd::Station { corner, slot, .. } => {
                let (new_c, new_slot) = slot_map[&(corner, slot)];
                End::Corner {
                    corner: new_c,
                    slot: new_slot,
                }
            }
        }
    };
    out.chords.extend(outside.iter().copied());
    for &(u, v) in &plain {
        out.chords.push(Chord {
            a: remap_end(&u),
            b: remap_end(&v),
        });
    }
    for (k, &(mu, pu)) in crossing.iter().enumerate() {
        let k = k as u32;
        out.chords.push(Chord {
            a: remap_end(&mu),
            b: End::Side {
                corner: corner_p_region,
                pos: k,
            },
        });
        out.chords.push(Chord {
            a: End::Side {
                corner: corner_r_region,
                pos: new_m - 1 - k,
            },
            b: remap_end(&pu),
        });
    }
    debug_assert!(
        out.validate(&flipped).is_ok(),
        "carry output invalid: {:?}",
        out.validate(&flipped)
    );
    Ok(Carried::Strands(out))
}

/// The old diagonal drawn as strands in the exchanged triangulation: one
/// crossing of the new edge, one corner chord on each side.
fn materialize_old_diagonal(tri: &IdealTriangulation, q: &Quad, how: Exchange) -> Strands {
    let (corner_p_region, corner_r_region) = match how {
        Exchange::Flip => (q.e1, q.e2),
        Exchange::Unflip => (q.e2, q.e1),
    };
    let mut s = Strands {
        edge_points: vec![0; tri.edge_count()],
        corner_slots: vec![0; tri.corner_count()],
        chords: Vec::new(),
    };
    s.edge_points[tri.edge_of(q.e1)] = 1;
    s.corner_slots[q.a] = 1;
    s.corner_slots[q.c] = 1;
    s.chords.push(Chord {
        a: End::Corner {
            corner: q.a,
            slot: 0,
        },
        b: End::Side {
            corner: corner_p_region,
            pos: 0,
        },
    });
    s.chords.push(Chord {
        a: End::Side {
            corner: corner_r_region,
            pos: 0,
        },
        b: End::Corner {
            corner: q.c,
            slot: 0,
        },
    });
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::Surface;
    use crate::triangulation::base_triangulation;

    #[test]
    fn curve_vector_materialization_round_trip() {
        let t = base_triangulation(Surface::new(1, 1)).unwrap();
        let s = from_curve_vector(&t, &[0, 1, 1]).unwrap();
        assert_eq!(s.vector(), vec![0, 1, 1]);
        let comps = trace_components(&t, &s);
        assert_eq!(comps.len(), 1);
        assert!(comps[0].closed);
    }

    #[test]
    fn invalid_vectors_are_rejected() {
        let t = base_triangulation(Surface::new(1, 1)).unwrap();
        assert!(from_curve_vector(&t, &[0, 0, 0]).is_err());
        assert!(from_curve_vector(&t, &[1, 0, 0]).is_err());
    }

    #[test]
    fn peripheral_detection() {
        let t = base_triangulation(Surface::new(0, 4)).unwrap();
        for p in 0..4 {
            let link = t.link_vector(p);
            let s = from_curve_vector(&t, &link).unwrap();
            let comps = trace_components(&t, &s);
            assert_eq!(comps.len(), 1, "puncture link of {p} is one circle");
            assert_eq!(peripheral_puncture(&t, &s), Some(p));
        }
    }

    #[test]
    fn marker_materializes_to_unit_vector_after_one_exchange() {
        let t = base_triangulation(Surface::new(1, 1)).unwrap();
        for e in 0..3 {
            let carried =
                carry_across_exchange(&t, e, Exchange::Flip, &Carried::EdgeMarker(e)).unwrap();
            match carried {
                Carried::Strands(s) => {
                    let mut expect = vec![0, 0, 0];
                    expect[e] = 1;
                    assert_eq!(s.vector(), expect);
                    let flipped = t.flip(e).unwrap();
                    s.validate(&flipped).unwrap();
                    let comps = trace_components(&flipped, &s);
                    assert_eq!(comps.len(), 1);
                    assert!(!comps[0].closed);
                }
                _ => panic!("expected strands"),
            }
        }
    }

    #[test]
    fn marker_round_trip_through_exchange() {
        for (g, n) in [(1, 1), (0, 4), (0, 5), (1, 2)] {
            let t = base_triangulation(Surface::new(g, n)).unwrap();
            for e in 0..t.edge_count() {
                if t.is_self_folded(e) {
                    continue;
                }
                let flipped = t.flip(e).unwrap();
                let mid =
                    carry_across_exchange(&t, e, Exchange::Flip, &Carried::EdgeMarker(e)).unwrap();
                let back = carry_across_exchange(&flipped, e, Exchange::Unflip, &mid).unwrap();
                assert_eq!(back, Carried::EdgeMarker(e), "S_{{{g},{n}}} edge {e}");
            }
        }
    }

    #[test]
    fn curve_transport_round_trip() {
        let t = base_triangulation(Surface::new(1, 1)).unwrap();
        let curve = from_curve_vector(&t, &[0, 1, 1]).unwrap();
        for e in 0..3 {
            let flipped = t.flip(e).unwrap();
            let fwd =
                carry_across_exchange(&t, e, Exchange::Flip, &Carried::Strands(curve.clone()))
                    .unwrap();
            if let Carried::Strands(ref s) = fwd {
                s.validate(&flipped).unwrap();
            }
            let back = carry_across_exchange(&flipped, e, Exchange::Unflip, &fwd).unwrap();
            match back {
                Carried::Strands(s) => assert_eq!(s.vector(), curve.vector(), "edge {e}"),
                _ => panic!("curve cannot become an edge"),
            }
        }
    }

    #[test]
    fn torus_slope_curve_transport_matches_max_rule() {
        // Transporting the (0,1,1) curve across its 0-weight edge must give
        // the max-rule value 2 there.
        let t = base_triangulation(Surface::new(1, 1)).unwrap();
        let curve = from_curve_vector(&t, &[0, 1, 1]).unwrap();
        let zero_edge = 0usize;
        assert_eq!(curve.vector()[zero_edge], 0);
        let fwd =
            carry_across_exchange(&t, zero_edge, Exchange::Flip, &Carried::Strands(curve)).unwrap();
        match fwd {
            Carried::Strands(s) => assert_eq!(s.vector()[zero_edge], 2),
            _ => panic!(),
        }
    }
}
