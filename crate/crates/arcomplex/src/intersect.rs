//! Geometric intersection numbers and disjointness.
//!
//! The fast path reads intersection numbers off transported coordinates at
//! an arc's anchor edge. The overlay oracle places both classes in normal
//! position relative to the base triangulation, interleaves their crossing
//! points along every edge, and removes removable bigons (disk faces with
//! two crossing corners and no puncture inside, and puncture-cornered
//! bigons whose corner is a shared endpoint) to a fixed point; the final
//! count is minimal by the bigon criterion.
//!
//! The same machinery assembles disjoint unions of classes and cuts the
//! surface along them, which is what the complement analyses elsewhere
//! consume.

use std::collections::{HashMap, HashSet};

use crate::coords::{self, class_equal, VertexClass};
use crate::registry::FlipRegistry;
use crate::strands::{self, BoundaryOrder, Carried, Chord, End, Strands};
use crate::triangulation::IdealTriangulation;
use crate::{Error, Limits, Result};

/// How an intersection number was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Witness {
    /// The classes are equal; a class is disjoint from itself.
    Identical,
    /// Coordinates transported to an anchor triangulation and read off.
    FastPath,
    /// Overlay oracle relative to the base triangulation.
    OverlayOracle,
    /// Both arcs occur as edges of one registry triangulation.
    CoOccurrence,
}

/// Geometric intersection number of two classes, with the witnessing
/// method. Interior points only: shared endpoint punctures contribute 0.
pub fn intersection_number_with(
    reg: &FlipRegistry,
    x: &VertexClass,
    y: &VertexClass,
    limits: &Limits,
) -> Result<(u64, Witness)> {
    if class_equal(x, y) {
        return Ok((0, Witness::Identical));
    }
    match (x, y) {
        (_, VertexClass::Arc(b)) => {
            let (tri_id, edge) = b.anchor();
            let value = match x {
                VertexClass::Curve(c) => coords::curve_to_anchor(reg, c, tri_id)?[edge] as u64,
                VertexClass::Arc(a) => {
                    let carried = coords::arc_base_strands(reg, a)?;
                    let carried = reg.carry_from_base(tri_id, carried)?;
                    match carried {
                        Carried::EdgeMarker(_) => {
                            // x is itself an edge of y's anchor triangulation.
                            return Ok((0, Witness::CoOccurrence));
                        }
                        Carried::Strands(s) => s.vector()[edge] as u64,
                    }
                }
            };
            Ok((value, Witness::FastPath))
        }
        (VertexClass::Arc(_), VertexClass::Curve(_)) => {
            intersection_number_with(reg, y, x, limits)
        }
        (VertexClass::Curve(_), VertexClass::Curve(_)) => {
            let v = overlay_oracle(reg, x, y, limits)?;
            Ok((v, Witness::OverlayOracle))
        }
    }
}

pub fn intersection_number(
    reg: &FlipRegistry,
    x: &VertexClass,
    y: &VertexClass,
    limits: &Limits,
) -> Result<u64> {
    intersection_number_with(reg, x, y, limits).map(|(v, _)| v)
}

pub fn disjoint(
    reg: &FlipRegistry,
    x: &VertexClass,
    y: &VertexClass,
    limits: &Limits,
) -> Result<bool> {
    Ok(intersection_number(reg, x, y, limits)? == 0)
}

/// Strand picture of any class relative to the base triangulation. Arcs
/// isotopic to a base edge become the corner-to-corner chord hugging that
/// edge, so the oracle sees every class as honest strands.
pub fn class_strands_rel_base(reg: &FlipRegistry, class: &VertexClass) -> Result<Strands> {
    let base = reg.base();
    match class {
        VertexClass::Curve(c) => strands::from_curve_vector(base, c.vector()),
        VertexClass::Arc(a) => match coords::arc_base_strands(reg, a)? {
            Carried::Strands(s) => Ok(s),
            Carried::EdgeMarker(e) => Ok(edge_hug_strands(base, e)),
        },
    }
}

/// The arc isotopic to edge `e`, drawn parallel to it inside the triangle
/// of corner `2e`.
pub fn edge_hug_strands(base: &IdealTriangulation, e: usize) -> Strands {
    let c = 2 * e;
    let mut s = Strands::empty(base);
    s.corner_slots[c] = 1;
    s.corner_slots[base.sigma(c)] = 1;
    s.chords.push(Chord {
        a: End::Corner { corner: c, slot: 0 },
        b: End::Corner {
            corner: base.sigma(c),
            slot: 0,
        },
    });
    s
}

/// Brute-force minimal crossing count between two classes, both expressed
/// as normal data relative to the base triangulation.
pub fn overlay_oracle(
    reg: &FlipRegistry,
    x: &VertexClass,
    y: &VertexClass,
    limits: &Limits,
) -> Result<u64> {
    if class_equal(x, y) {
        return Ok(0);
    }
    let sx = class_strands_rel_base(reg, x)?;
    let sy = class_strands_rel_base(reg, y)?;
    overlay_min_crossings(reg.base(), &sx, &sy, limits)
}

/// Minimal crossings between two strand systems over one triangulation:
/// canonical interleaving followed by bigon removal to a fixed point.
pub fn overlay_min_crossings(
    tri: &IdealTriangulation,
    x: &Strands,
    y: &Strands,
    limits: &Limits,
) -> Result<u64> {
    for e in 0..tri.edge_count() {
        let worst = x.edge_points[e].max(y.edge_points[e]);
        if worst > limits.max_strands_per_edge {
            return Err(Error::ResourceLimit(format!(
                "{worst} strands on edge {e} exceed the per-edge budget {}",
                limits.max_strands_per_edge
            )));
        }
    }
    let mut state = OverlayState::new(tri, x, y);
    Ok(state.minimize())
}

/// Exhaustive variant: enumerates every per-edge and per-corner
/// interleaving in deterministic order, minimizes each, and returns the
/// overall minimum. Errors with `ResourceLimit` when the interleaving
/// count exceeds the configured budget.
pub fn overlay_min_exhaustive(
    tri: &IdealTriangulation,
    x: &Strands,
    y: &Strands,
    limits: &Limits,
) -> Result<u64> {
    let binom = |a: u32, b: u32| -> u64 {
        let b = b.min(a - b);
        let mut r: u64 = 1;
        for i in 0..b {
            r = r.saturating_mul((a - i) as u64) / (i as u64 + 1);
        }
        r
    };
    let mut combos: u64 = 1;
    for e in 0..tri.edge_count() {
        combos = combos.saturating_mul(binom(x.edge_points[e] + y.edge_points[e], x.edge_points[e]));
    }
    for c in 0..tri.corner_count() {
        combos =
            combos.saturating_mul(binom(x.corner_slots[c] + y.corner_slots[c], x.corner_slots[c]));
    }
    if combos > limits.max_interleavings {
        return Err(Error::ResourceLimit(format!(
            "{combos} interleavings exceed the budget {}",
            limits.max_interleavings
        )));
    }
    let edge_choices: Vec<Vec<Vec<(u8, u32)>>> = (0..tri.edge_count())
        .map(|e| all_merges(x.edge_points[e], y.edge_points[e]))
        .collect();
    let slot_choices: Vec<Vec<Vec<(u8, u32)>>> = (0..tri.corner_count())
        .map(|c| all_merges(x.corner_slots[c], y.corner_slots[c]))
        .collect();
    let mut idx = vec![0usize; edge_choices.len() + slot_choices.len()];
    let mut best = u64::MAX;
    loop {
        let mut state = OverlayState::new(tri, x, y);
        for (e, choices) in edge_choices.iter().enumerate() {
            state.edge_order[e] = choices[idx[e]].clone();
        }
        for (c, choices) in slot_choices.iter().enumerate() {
            state.slot_order[c] = choices[idx[edge_choices.len() + c]].clone();
        }
        best = best.min(state.minimize());
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(best);
            }
            let cap = if k < edge_choices.len() {
                edge_choices[k].len()
            } else {
                slot_choices[k - edge_choices.len()].len()
            };
            idx[k] += 1;
            if idx[k] < cap {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

#[doc(hidden)]
pub fn overlay_debug(tri: &IdealTriangulation, x: &Strands, y: &Strands) -> String {
    let mut state = OverlayState::new(tri, x, y);
    let n = state.minimize();
    format!("fixed point {n}\n{}", state.debug_dump())
}

/// All shuffles of `0..nx` tagged 0 with `0..ny` tagged 1, preserving each
/// class's internal order.
fn all_merges(nx: u32, ny: u32) -> Vec<Vec<(u8, u32)>> {
    fn rec(
        cur: &mut Vec<(u8, u32)>,
        ix: u32,
        iy: u32,
        nx: u32,
        ny: u32,
        out: &mut Vec<Vec<(u8, u32)>>,
    ) {
        if ix == nx && iy == ny {
            out.push(cur.clone());
            return;
        }
        if ix < nx {
            cur.push((0, ix));
            rec(cur, ix + 1, iy, nx, ny, out);
            cur.pop();
        }
        if iy < ny {
            cur.push((1, iy));
            rec(cur, ix, iy + 1, nx, ny, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), 0, 0, nx, ny, &mut out);
    out
}

// ---------------------------------------------------------------------------
// Overlay state: two systems with an explicit interleaving
// ---------------------------------------------------------------------------

struct OverlayState<'a> {
    tri: &'a IdealTriangulation,
    class: [&'a Strands; 2],
    /// Per edge: merged crossing sequence along the even corner; entries
    /// are (class tag, that class's even position).
    edge_order: Vec<Vec<(u8, u32)>>,
    /// Per corner: merged slot sequence.
    slot_order: Vec<Vec<(u8, u32)>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Crossing {
    xc: usize,
    yc: usize,
}

#[derive(Debug, Clone)]
struct StrandInfo {
    /// (chord index, traversed a->b) in strand order.
    chords: Vec<(usize, bool)>,
    closed: bool,
    /// Crossing ids met along the strand, in order.
    crossings: Vec<usize>,
    /// For each crossing: index into `chords` where it happens.
    crossing_chord: Vec<usize>,
}

impl<'a> OverlayState<'a> {
    fn new(tri: &'a IdealTriangulation, x: &'a Strands, y: &'a Strands) -> Self {
        let mut edge_order = Vec::with_capacity(tri.edge_count());
        for e in 0..tri.edge_count() {
            let mut v: Vec<(u8, u32)> = (0..x.edge_points[e]).map(|k| (0u8, k)).collect();
            v.extend((0..y.edge_points[e]).map(|k| (1u8, k)));
            edge_order.push(v);
        }
        let mut slot_order = Vec::with_capacity(tri.corner_count());
        for c in 0..tri.corner_count() {
            let mut v: Vec<(u8, u32)> = (0..x.corner_slots[c]).map(|k| (0u8, k)).collect();
            v.extend((0..y.corner_slots[c]).map(|k| (1u8, k)));
            slot_order.push(v);
        }
        OverlayState {
            tri,
            class: [x, y],
            edge_order,
            slot_order,
        }
    }

    fn merged_even(&self, tag: u8, e: usize, own_even: u32) -> u32 {
        self.edge_order[e]
            .iter()
            .position(|&p| p == (tag, own_even))
            .expect("point present in merge") as u32
    }

    fn even_of(&self, tag: u8, corner: usize, pos: u32) -> (usize, u32) {
        let e = self.tri.edge_of(corner);
        let m = self.class[tag as usize].edge_points[e];
        let even = if corner % 2 == 0 { pos } else { m - 1 - pos };
        (e, even)
    }

    fn merged_end(&self, tag: u8, end: End) -> End {
        match end {
            End::Side { corner, pos } => {
                let (e, own_even) = self.even_of(tag, corner, pos);
                let idx = self.merged_even(tag, e, own_even);
                let total = self.edge_order[e].len() as u32;
                let pos = if corner % 2 == 0 { idx } else { total - 1 - idx };
                End::Side { corner, pos }
            }
            End::Corner { corner, slot } => {
                let idx = self.slot_order[corner]
                    .iter()
                    .position(|&p| p == (tag, slot))
                    .expect("slot present in merge") as u32;
                End::Corner { corner, slot: idx }
            }
        }
    }

    fn merged_boundary(&self) -> BoundaryOrder {
        let fake = Strands {
            edge_points: self.edge_order.iter().map(|v| v.len() as u32).collect(),
            corner_slots: self.slot_order.iter().map(|v| v.len() as u32).collect(),
            chords: Vec::new(),
        };
        BoundaryOrder::new(self.tri, &fake)
    }

    fn crossings(&self) -> Vec<Crossing> {
        let order = self.merged_boundary();
        let merged_chord = |tag: u8, i: usize| -> Chord {
            let ch = self.class[tag as usize].chords[i];
            Chord {
                a: self.merged_end(tag, ch.a),
                b: self.merged_end(tag, ch.b),
            }
        };
        let groups_x = strands::group_chords_by_triangle(self.tri, self.class[0]);
        let groups_y = strands::group_chords_by_triangle(self.tri, self.class[1]);
        let mut out = Vec::new();
        for (t, xs) in &groups_x {
            if let Some(ys) = groups_y.get(t) {
                for &xi in xs {
                    let mx = merged_chord(0, xi);
                    for &yi in ys {
                        if order.chords_cross(mx, merged_chord(1, yi)) {
                            out.push(Crossing { xc: xi, yc: yi });
                        }
                    }
                }
            }
        }
        out
    }

    fn strands_with_crossings(&self, tag: u8, crossings: &[Crossing]) -> Vec<StrandInfo> {
        let s = self.class[tag as usize];
        let comps = traced_oriented(self.tri, s);
        let order = self.merged_boundary();
        let mut per_chord: Vec<Vec<usize>> = vec![Vec::new(); s.chords.len()];
        for (cid, cr) in crossings.iter().enumerate() {
            let mine = if tag == 0 { cr.xc } else { cr.yc };
            per_chord[mine].push(cid);
        }
        for (ci, list) in per_chord.iter_mut().enumerate() {
            if list.len() < 2 {
                continue;
            }
            let ch = s.chords[ci];
            let a = order.position(self.merged_end(tag, ch.a));
            let b = order.position(self.merged_end(tag, ch.b));
            let n = order.triangle_len(ch.a.corner());
            let gamma_pos = |cid: usize| -> u64 {
                let cr = crossings[cid];
                let other_tag = 1 - tag;
                let oi = if tag == 0 { cr.yc } else { cr.xc };
                let other = self.class[other_tag as usize].chords[oi];
                for end in [other.a, other.b] {
                    let p = order.position(self.merged_end(other_tag, end));
                    let inside = if a <= b { p > a && p < b } else { p > a || p < b };
                    if inside {
                        return if p >= a { p - a } else { p + n - a };
                    }
                }
                unreachable!("crossing chord must have an end inside the arc")
            };
            list.sort_by_key(|&cid| gamma_pos(cid));
        }
        comps
            .into_iter()
            .map(|chords| {
                let closed = !chords
                    .iter()
                    .any(|&(i, _)| s.chords[i].a.is_corner() || s.chords[i].b.is_corner());
                let mut crossing_list = Vec::new();
                let mut crossing_chord = Vec::new();
                for (k, &(ci, fwd)) in chords.iter().enumerate() {
                    let mut along = per_chord[ci].clone();
                    if !fwd {
                        along.reverse();
                    }
                    for cid in along {
                        crossing_list.push(cid);
                        crossing_chord.push(k);
                    }
                }
                StrandInfo {
                    chords,
                    closed,
                    crossings: crossing_list,
                    crossing_chord,
                }
            })
            .collect()
    }

    /// Surface points crossed walking from the end of chord `from` up to
    /// the start of chord `to` (indices into `info.chords`, wrapping).
    /// `wrapped` distinguishes the full-circle case when from == to.
    fn run_between(
        &self,
        tag: u8,
        info: &StrandInfo,
        from: usize,
        to: usize,
        wrapped: bool,
    ) -> Vec<(usize, u32)> {
        if from == to && !wrapped {
            return Vec::new();
        }
        let s = self.class[tag as usize];
        let len = info.chords.len();
        let mut out = Vec::new();
        let mut k = from;
        loop {
            let (ci, fwd) = info.chords[k];
            let exit = if fwd { s.chords[ci].b } else { s.chords[ci].a };
            match exit {
                End::Side { corner, pos } => {
                    let (e, even) = self.even_of(tag, corner, pos);
                    out.push((e, self.merged_even(tag, e, even)));
                }
                End::Corner { .. } => unreachable!("run walked off an open strand"),
            }
            k = (k + 1) % len;
            if k == to {
                break;
            }
        }
        out
    }

    /// Points from a crossing to the strand's endpoint in one direction.
    fn tail_points(
        &self,
        tag: u8,
        info: &StrandInfo,
        rank: usize,
        toward_start: bool,
    ) -> Vec<(usize, u32)> {
        let s = self.class[tag as usize];
        let chord_at = info.crossing_chord[rank];
        let mut out = Vec::new();
        if toward_start {
            let mut k = chord_at;
            while k > 0 {
                let (ci, fwd) = info.chords[k];
                let entry = if fwd { s.chords[ci].a } else { s.chords[ci].b };
                match entry {
                    End::Side { corner, pos } => {
                        let (e, even) = self.even_of(tag, corner, pos);
                        out.push((e, self.merged_even(tag, e, even)));
                    }
                    End::Corner { .. } => unreachable!(),
                }
                k -= 1;
            }
        } else {
            let len = info.chords.len();
            let mut k = chord_at;
            while k + 1 < len {
                let (ci, fwd) = info.chords[k];
                let exit = if fwd { s.chords[ci].b } else { s.chords[ci].a };
                match exit {
                    End::Side { corner, pos } => {
                        let (e, even) = self.even_of(tag, corner, pos);
                        out.push((e, self.merged_even(tag, e, even)));
                    }
                    End::Corner { .. } => unreachable!(),
                }
                k += 1;
            }
        }
        out
    }

    fn terminal_station(&self, tag: u8, info: &StrandInfo, toward_start: bool) -> (usize, u32) {
        let s = self.class[tag as usize];
        let (ci, fwd) = if toward_start {
            info.chords[0]
        } else {
            *info.chords.last().unwrap()
        };
        let end = if toward_start == fwd {
            s.chords[ci].a
        } else {
            s.chords[ci].b
        };
        match self.merged_end(tag, end) {
            End::Corner { corner, slot } => (corner, slot),
            End::Side { .. } => unreachable!("open strand must end at a corner"),
        }
    }

    fn lists_match(xs: &[(usize, u32)], ys: &[(usize, u32)]) -> bool {
        xs.len() == ys.len()
            && xs
                .iter()
                .zip(ys.iter())
                .all(|(&(ex, ix), &(ey, iy))| ex == ey && ix.abs_diff(iy) == 1)
    }

    fn apply_swaps(&mut self, xs: &[(usize, u32)], ys: &[(usize, u32)]) {
        for (&(e, ix), &(_, iy)) in xs.iter().zip(ys.iter()) {
            self.edge_order[e].swap(ix as usize, iy as usize);
        }
    }

    /// Finds one removable bigon or shared-endpoint half-bigon and pushes
    /// the class-0 run across it. Returns false at the fixed point.
    fn remove_one(&mut self, crossings: &[Crossing]) -> bool {
        let xinfo = self.strands_with_crossings(0, crossings);
        let yinfo = self.strands_with_crossings(1, crossings);
        let mut ypos = vec![(usize::MAX, usize::MAX); crossings.len()];
        for (si, info) in yinfo.iter().enumerate() {
            for (j, &cid) in info.crossings.iter().enumerate() {
                ypos[cid] = (si, j);
            }
        }
        // Interior bigons: a pair of crossings consecutive along both
        // classes whose connecting runs cross the same edges at adjacent
        // merged positions.
        for xi in &xinfo {
            let k = xi.crossings.len();
            let pair_count = if xi.closed { k } else { k.saturating_sub(1) };
            for j in 0..pair_count {
                let jn = (j + 1) % k;
                let c1 = xi.crossings[j];
                let c2 = xi.crossings[jn];
                if c1 == c2 {
                    continue;
                }
                let (ys1, yj1) = ypos[c1];
                let (ys2, yj2) = ypos[c2];
                if ys1 != ys2 {
                    continue;
                }
                let yi = &yinfo[ys1];
                let yk = yi.crossings.len();
                // With two crossings on a closed strand both directions
                // are adjacent; try each.
                let mut options: Vec<(usize, bool)> = Vec::new();
                if (yj1 + 1) % yk == yj2 && (yi.closed || yj1 + 1 < yk) {
                    options.push((yj1, false));
                }
                if (yj2 + 1) % yk == yj1 && (yi.closed || yj2 + 1 < yk) {
                    options.push((yj2, true));
                }
                let x_wrapped = j + 1 == k;
                let xs = self.run_between(
                    0,
                    xi,
                    xi.crossing_chord[j],
                    xi.crossing_chord[jn],
                    x_wrapped && xi.crossing_chord[j] == xi.crossing_chord[jn],
                );
                if xs.is_empty() {
                    continue;
                }
                for (ya, reverse_y) in options {
                    let y_wrapped = ya + 1 == yk;
                    let mut ys = self.run_between(
                        1,
                        yi,
                        yi.crossing_chord[ya],
                        yi.crossing_chord[(ya + 1) % yk],
                        y_wrapped && yi.crossing_chord[ya] == yi.crossing_chord[(ya + 1) % yk],
                    );
                    if reverse_y {
                        ys.reverse();
                    }
                    if Self::lists_match(&xs, &ys) {
                        self.apply_swaps(&xs, &ys);
                        return true;
                    }
                }
            }
        }
        // Half-bigons whose corner is a shared endpoint puncture.
        for xi in &xinfo {
            if xi.closed || xi.crossings.is_empty() {
                continue;
            }
            for (toward_start, j) in [(true, 0), (false, xi.crossings.len() - 1)] {
                let cid = xi.crossings[j];
                let (ys, yj) = ypos[cid];
                let yi = &yinfo[ys];
                if yi.closed {
                    continue;
                }
                for y_toward_start in [true, false] {
                    let terminal = if y_toward_start {
                        0
                    } else {
                        yi.crossings.len() - 1
                    };
                    if yj != terminal {
                        continue;
                    }
                    let xs = self.tail_points(0, xi, j, toward_start);
                    let ys_pts = self.tail_points(1, yi, yj, y_toward_start);
                    if !Self::lists_match(&xs, &ys_pts) {
                        continue;
                    }
                    let (cx, sx) = self.terminal_station(0, xi, toward_start);
                    let (cy, sy) = self.terminal_station(1, yi, y_toward_start);
                    if cx != cy || sx.abs_diff(sy) != 1 {
                        continue;
                    }
                    self.apply_swaps(&xs, &ys_pts);
                    self.slot_order[cx].swap(sx as usize, sy as usize);
                    return true;
                }
            }
        }
        false
    }

    fn minimize(&mut self) -> u64 {
        loop {
            let crossings = self.crossings();
            if !self.remove_one(&crossings) {
                return crossings.len() as u64;
            }
        }
    }

    #[doc(hidden)]
    pub fn debug_dump(&self) -> String {
        use std::fmt::Write;
        let mut s = String::new();
        let crossings = self.crossings();
        writeln!(s, "crossings: {crossings:?}").unwrap();
        for tag in 0..2u8 {
            let infos = self.strands_with_crossings(tag, &crossings);
            for (k, info) in infos.iter().enumerate() {
                writeln!(
                    s,
                    "class{tag} strand{k} closed={} chords={:?} crossings={:?} at_chords={:?}",
                    info.closed, info.chords, info.crossings, info.crossing_chord
                )
                .unwrap();
                let n = info.crossings.len();
                for j in 0..n {
                    let jn = (j + 1) % n;
                    let from = info.crossing_chord[j];
                    let to = info.crossing_chord[jn];
                    let wrapped = j + 1 == n && from == to;
                    let run = self.run_between(tag, info, from, to, wrapped);
                    writeln!(s, "  run {}->{}: {:?}", info.crossings[j], info.crossings[jn], run)
                        .unwrap();
                }
            }
        }
        writeln!(s, "edge_order: {:?}", self.edge_order).unwrap();
        s
    }

    fn into_union(mut self) -> Result<Strands> {
        let remaining = self.minimize();
        if remaining != 0 {
            return Err(Error::InvalidCoordinates(format!(
                "classes are not disjoint: {remaining} crossings remain"
            )));
        }
        let mut out = Strands {
            edge_points: self.edge_order.iter().map(|v| v.len() as u32).collect(),
            corner_slots: self.slot_order.iter().map(|v| v.len() as u32).collect(),
            chords: Vec::new(),
        };
        for tag in 0..2u8 {
            for ch in &self.class[tag as usize].chords {
                out.chords.push(Chord {
                    a: self.merged_end(tag, ch.a),
                    b: self.merged_end(tag, ch.b),
                });
            }
        }
        out.validate(self.tri)?;
        Ok(out)
    }
}

/// Components as oriented chord sequences (chord index, traversed a->b).
fn traced_oriented(tri: &IdealTriangulation, s: &Strands) -> Vec<Vec<(usize, bool)>> {
    let mut at: HashMap<(usize, u32), (usize, bool)> = HashMap::new();
    for (i, ch) in s.chords.iter().enumerate() {
        if let End::Side { corner, pos } = ch.a {
            at.insert((corner, pos), (i, true));
        }
        if let End::Side { corner, pos } = ch.b {
            at.insert((corner, pos), (i, false));
        }
    }
    let mut used = vec![false; s.chords.len()];
    let mut out = Vec::new();
    for (i, ch) in s.chords.iter().enumerate() {
        if used[i] || (!ch.a.is_corner() && !ch.b.is_corner()) {
            continue;
        }
        let forward = ch.a.is_corner();
        let mut seq = vec![(i, forward)];
        used[i] = true;
        let mut exit = if forward { ch.b } else { ch.a };
        while let End::Side { .. } = exit {
            let p = s.partner(tri, exit);
            let (j, entered_at_a) = match p {
                End::Side { corner, pos } => at[&(corner, pos)],
                _ => unreachable!(),
            };
            used[j] = true;
            seq.push((j, entered_at_a));
            exit = if entered_at_a {
                s.chords[j].b
            } else {
                s.chords[j].a
            };
        }
        out.push(seq);
    }
    for i in 0..s.chords.len() {
        if used[i] {
            continue;
        }
        let mut seq = vec![(i, true)];
        used[i] = true;
        let stop = s.chords[i].a;
        let mut exit = s.chords[i].b;
        loop {
            let p = s.partner(tri, exit);
            if p == stop {
                break;
            }
            let (j, entered_at_a) = match p {
                End::Side { corner, pos } => at[&(corner, pos)],
                _ => unreachable!(),
            };
            used[j] = true;
            seq.push((j, entered_at_a));
            exit = if entered_at_a {
                s.chords[j].b
            } else {
                s.chords[j].a
            };
        }
        out.push(seq);
    }
    out
}

/// Adds `extra` to the disjoint union `acc` (both relative to `tri`),
/// failing if they actually intersect.
pub fn merge_disjoint(tri: &IdealTriangulation, acc: &Strands, extra: &Strands) -> Result<Strands> {
    OverlayState::new(tri, acc, extra).into_union()
}

// ---------------------------------------------------------------------------
// Cutting along a system
// ---------------------------------------------------------------------------

/// One complement component of the surface cut along a system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    /// Euler characteristic of the compact piece (punctures filled in).
    pub euler: i64,
    /// Punctures strictly inside the piece.
    pub interior_marked: u32,
    /// One entry per boundary circle: the number of puncture corners on it.
    pub circle_corners: Vec<u32>,
}

impl Piece {
    pub fn boundary_circles(&self) -> usize {
        self.circle_corners.len()
    }

    /// True exactly when no essential arc or curve lives inside: the piece
    /// is a triangle, an annulus with one boundary puncture, or a pair of
    /// pants.
    pub fn admits_nothing(&self) -> bool {
        let b = self.circle_corners.len();
        (self.euler == 1 && b == 1 && self.interior_marked == 0 && self.circle_corners == [3])
            || (self.euler == 0
                && b == 2
                && self.interior_marked == 0
                && self.circle_corners == [0, 1])
            || (self.euler == -1
                && b == 3
                && self.interior_marked == 0
                && self.circle_corners == [0, 0, 0])
    }
}

/// Cuts the surface along a crossing-free system plus a set of whole edges
/// of the triangulation; the system must not cross any cut edge.
pub fn cut_along(
    tri: &IdealTriangulation,
    system: &Strands,
    cut_edges: &[bool],
) -> Result<Vec<Piece>> {
    if cut_edges.len() != tri.edge_count() {
        return Err(Error::InvalidInput("cut_edges length mismatch".into()));
    }
    for e in 0..tri.edge_count() {
        if cut_edges[e] && system.edge_points[e] > 0 {
            return Err(Error::InvalidCoordinates("system crosses a cut edge".into()));
        }
    }
    system.validate(tri)?;

    #[derive(Debug, Clone, Copy, PartialEq, Eq)]
    enum Item {
        Marker(usize),
        Slot(usize, u32),
        Point(usize, u32),
    }

    let mut end_of: HashMap<End, usize> = HashMap::new();
    for (i, ch) in system.chords.iter().enumerate() {
        end_of.insert(ch.a, i);
        end_of.insert(ch.b, i);
    }

    let nc = tri.corner_count();
    let ne = tri.edge_count();
    let mut face_counter = 0usize;
    let mut subsector_face: HashMap<(usize, u32), usize> = HashMap::new();
    let mut side_gap_face: HashMap<(usize, u32), usize> = HashMap::new();
    let mut chord_faces: Vec<(usize, usize)> = vec![(usize::MAX, usize::MAX); system.chords.len()];
    let mut end_flanks: HashMap<End, (usize, usize)> = HashMap::new();

    let mut seen = vec![false; nc];
    for start in 0..nc {
        if seen[start] {
            continue;
        }
        let triangle = tri.triangle_of(start);
        for c in triangle {
            seen[c] = true;
        }
        let mut items: Vec<Item> = Vec::new();
        for c in triangle {
            items.push(Item::Marker(c));
            for k in 0..system.corner_slots[c] {
                items.push(Item::Slot(c, k));
            }
            for p in 0..system.edge_points[tri.edge_of(c)] {
                items.push(Item::Point(c, p));
            }
        }
        let item_end = |it: &Item| -> Option<End> {
            match *it {
                Item::Marker(_) => None,
                Item::Slot(c, k) => Some(End::Corner { corner: c, slot: k }),
                Item::Point(c, p) => Some(End::Side { corner: c, pos: p }),
            }
        };
        let f_outer = face_counter;
        face_counter += 1;
        let mut current = f_outer;
        let mut stack: Vec<usize> = Vec::new();
        let mut open: HashSet<usize> = HashSet::new();
        let mut face_of_gap = vec![usize::MAX; items.len() + 1];
        face_of_gap[0] = current;
        for (i, it) in items.iter().enumerate() {
            if let Some(end) = item_end(it) {
                let chord = *end_of.get(&end).ok_or_else(|| {
                    Error::InvalidCoordinates("dangling strand point in cut".into())
                })?;
                let before = current;
                if open.insert(chord) {
                    stack.push(current);
                    current = face_counter;
                    face_counter += 1;
                    chord_faces[chord] = (before, current);
                } else {
                    current = stack.pop().ok_or_else(|| {
                        Error::InvalidCoordinates("unbalanced chord nesting".into())
                    })?;
                }
                end_flanks.insert(end, (before, current));
            }
            face_of_gap[i + 1] = current;
        }
        if current != f_outer || !stack.is_empty() {
            return Err(Error::InvalidCoordinates(
                "unbalanced chord nesting in a triangle".into(),
            ));
        }
        let mut idx = 0usize;
        for c in triangle {
            idx += 1; // past the marker
            for k in 0..system.corner_slots[c] {
                subsector_face.insert((c, k), face_of_gap[idx]);
                idx += 1;
            }
            subsector_face.insert((c, system.corner_slots[c]), face_of_gap[idx]);
            let m = system.edge_points[tri.edge_of(c)];
            for p in 0..m {
                side_gap_face.insert((c, p), face_of_gap[idx]);
                idx += 1;
            }
            side_gap_face.insert((c, m), face_of_gap[idx]);
        }
    }

    // Glue faces across non-cut edge segments.
    let mut dsu = Dsu::new(face_counter);
    for e in 0..ne {
        if cut_edges[e] {
            continue;
        }
        let m = system.edge_points[e];
        for j in 0..=m {
            dsu.union(side_gap_face[&(2 * e, j)], side_gap_face[&(2 * e + 1, m - j)]);
        }
    }

    // Vertex sector groups.
    #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
    enum BNode {
        PointSide(usize, u32, bool),
        Group(usize),
    }
    let orbits = tri.vertex_orbits();
    let mut group_of_subsector: HashMap<(usize, u32), usize> = HashMap::new();
    let mut groups: Vec<(usize, bool)> = Vec::new(); // (member face, interior?)
    for orbit in &orbits {
        let cuts_here = orbit
            .iter()
            .any(|&c| system.corner_slots[c] > 0 || cut_edges[tri.edge_of(c)]);
        if !cuts_here {
            let gid = groups.len();
            groups.push((subsector_face[&(orbit[0], 0)], true));
            for &c in orbit {
                group_of_subsector.insert((c, 0), gid);
            }
            continue;
        }
        // Circular sequence of subsectors with their trailing separators.
        let mut flat: Vec<((usize, u32), bool)> = Vec::new();
        let mut c = orbit[0];
        loop {
            let s = system.corner_slots[c];
            for k in 0..=s {
                let cut_after = if k < s {
                    true
                } else {
                    cut_edges[tri.edge_of(c)]
                };
                flat.push(((c, k), cut_after));
            }
            c = tri.theta(c);
            if c == orbit[0] {
                break;
            }
        }
        let first_cut = flat.iter().position(|&(_, cut)| cut).expect("cut exists");
        flat.rotate_left(first_cut + 1);
        let mut current_group: Option<usize> = None;
        for &(sub, cut_after) in &flat {
            let gid = *current_group.get_or_insert_with(|| {
                let gid = groups.len();
                groups.push((subsector_face[&sub], false));
                gid
            });
            group_of_subsector.insert(sub, gid);
            if cut_after {
                current_group = None;
            }
        }
    }

    // Boundary edges (face, endpoints).
    let point_side_node = |corner: usize, pos: u32, flank_before: bool| -> BNode {
        let e = tri.edge_of(corner);
        let m = system.edge_points[e];
        let even = if corner % 2 == 0 { pos } else { m - 1 - pos };
        let lo = if corner % 2 == 0 {
            flank_before
        } else {
            !flank_before
        };
        BNode::PointSide(e, even, lo)
    };
    let mut boundary_edges: Vec<(usize, BNode, BNode)> = Vec::new();
    for (i, ch) in system.chords.iter().enumerate() {
        let (outer, inner) = chord_faces[i];
        for face in [outer, inner] {
            let node_at = |end: End| -> BNode {
                let (before, after) = end_flanks[&end];
                let use_before = face == before;
                debug_assert!(use_before || face == after);
                match end {
                    End::Side { corner, pos } => point_side_node(corner, pos, use_before),
                    End::Corner { corner, slot } => {
                        let sub = if use_before { slot } else { slot + 1 };
                        BNode::Group(group_of_subsector[&(corner, sub)])
                    }
                }
            };
            boundary_edges.push((face, node_at(ch.a), node_at(ch.b)));
        }
    }
    for e in 0..ne {
        if !cut_edges[e] {
            continue;
        }
        for c in [2 * e, 2 * e + 1] {
            let face = side_gap_face[&(c, 0)];
            let tail_group = BNode::Group(group_of_subsector[&(c, system.corner_slots[c])]);
            let head_group = BNode::Group(group_of_subsector[&(tri.sigma(c), 0)]);
            boundary_edges.push((face, tail_group, head_group));
        }
    }

    // Counts per piece root.
    let mut f_count: HashMap<usize, i64> = HashMap::new();
    let mut roots: Vec<usize> = Vec::new();
    for f in 0..face_counter {
        let r = dsu.find(f);
        if !f_count.contains_key(&r) {
            roots.push(r);
        }
        *f_count.entry(r).or_insert(0) += 1;
    }
    let mut e_count: HashMap<usize, i64> = HashMap::new();
    for e in 0..ne {
        if cut_edges[e] {
            continue;
        }
        for j in 0..=system.edge_points[e] {
            let r = dsu.find(side_gap_face[&(2 * e, j)]);
            *e_count.entry(r).or_insert(0) += 1;
        }
    }
    for &(face, _, _) in &boundary_edges {
        *e_count.entry(dsu.find(face)).or_insert(0) += 1;
    }
    let mut v_count: HashMap<usize, i64> = HashMap::new();
    let mut interior: HashMap<usize, u32> = HashMap::new();
    for e in 0..ne {
        if cut_edges[e] {
            continue;
        }
        for k in 0..system.edge_points[e] {
            let lo = dsu.find(side_gap_face[&(2 * e, k)]);
            let hi = dsu.find(side_gap_face[&(2 * e, k + 1)]);
            *v_count.entry(lo).or_insert(0) += 1;
            *v_count.entry(hi).or_insert(0) += 1;
        }
    }
    for &(face, is_interior) in &groups {
        let r = dsu.find(face);
        *v_count.entry(r).or_insert(0) += 1;
        if is_interior {
            *interior.entry(r).or_insert(0) += 1;
        }
    }

    // Boundary circles.
    let mut incident: HashMap<BNode, Vec<(usize, u8)>> = HashMap::new();
    for (idx, &(_, n1, n2)) in boundary_edges.iter().enumerate() {
        incident.entry(n1).or_default().push((idx, 0));
        incident.entry(n2).or_default().push((idx, 1));
    }
    for (node, slots) in &incident {
        if slots.len() != 2 {
            return Err(Error::InvalidCoordinates(format!(
                "boundary node {node:?} has degree {}",
                slots.len()
            )));
        }
    }
    let ends = |i: usize| [boundary_edges[i].1, boundary_edges[i].2];
    let mut used = vec![false; boundary_edges.len()];
    let mut circles_per_root: HashMap<usize, Vec<u32>> = HashMap::new();
    for start in 0..boundary_edges.len() {
        if used[start] {
            continue;
        }
        let root = dsu.find(boundary_edges[start].0);
        let mut corners = 0u32;
        let mut e = start;
        let mut arr_slot = 1u8;
        loop {
            used[e] = true;
            let node = ends(e)[arr_slot as usize];
            if matches!(node, BNode::Group(_)) {
                corners += 1;
            }
            let &(ne2, nslot) = incident[&node]
                .iter()
                .find(|&&(ei, si)| (ei, si) != (e, arr_slot))
                .expect("degree 2");
            e = ne2;
            arr_slot = 1 - nslot;
            if e == start && arr_slot == 1 {
                break;
            }
        }
        circles_per_root.entry(root).or_default().push(corners);
    }

    roots.sort_unstable();
    let mut pieces = Vec::new();
    for r in roots {
        let v = v_count.get(&r).copied().unwrap_or(0);
        let e = e_count.get(&r).copied().unwrap_or(0);
        let f = f_count.get(&r).copied().unwrap_or(0);
        let mut circle_corners = circles_per_root.remove(&r).unwrap_or_default();
        circle_corners.sort_unstable();
        pieces.push(Piece {
            euler: v - e + f,
            interior_marked: interior.get(&r).copied().unwrap_or(0),
            circle_corners,
        });
    }
    Ok(pieces)
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = x;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coords::CurveClass;
    use crate::registry::flip_ball;
    use crate::surface::Surface;
    use crate::triangulation::base_triangulation;

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn class_is_disjoint_from_itself() {
        let reg = flip_ball(Surface::new(1, 1), 2, &limits()).unwrap();
        for arc in reg.arcs().iter().take(4) {
            let v = VertexClass::Arc(arc.clone());
            assert_eq!(intersection_number(&reg, &v, &v, &limits()).unwrap(), 0);
        }
    }

    #[test]
    fn edges_of_one_triangulation_are_disjoint() {
        let reg = flip_ball(Surface::new(0, 4), 2, &limits()).unwrap();
        for entry in reg.entries().iter().take(5) {
            for i in 0..entry.arcs.len() {
                for j in i + 1..entry.arcs.len() {
                    let a = VertexClass::Arc(reg.arc(entry.arcs[i]).clone());
                    let b = VertexClass::Arc(reg.arc(entry.arcs[j]).clone());
                    assert_eq!(
                        intersection_number(&reg, &a, &b, &limits()).unwrap(),
                        0,
                        "edges {i},{j}"
                    );
                }
            }
        }
    }

    #[test]
    fn torus_diagonals_cross_once() {
        let reg = flip_ball(Surface::new(1, 1), 1, &limits()).unwrap();
        let entry = reg
            .entries()
            .iter()
            .find(|en| en.depth == 1 && en.flip_path == vec![0])
            .unwrap();
        let old = VertexClass::Arc(reg.arc(0).clone());
        let new = VertexClass::Arc(reg.arc(entry.arcs[0]).clone());
        let (v, w) = intersection_number_with(&reg, &old, &new, &limits()).unwrap();
        assert_eq!((v, w), (1, Witness::FastPath));
        let (v2, _) = intersection_number_with(&reg, &new, &old, &limits()).unwrap();
        assert_eq!(v2, 1);
    }

    #[test]
    fn torus_slope_curves_cross_once() {
        let reg = flip_ball(Surface::new(1, 1), 1, &limits()).unwrap();
        let base = reg.base();
        let c0 = VertexClass::Curve(CurveClass::from_vector(base, vec![0, 1, 1]).unwrap());
        let c1 = VertexClass::Curve(CurveClass::from_vector(base, vec![1, 0, 1]).unwrap());
        let c2 = VertexClass::Curve(CurveClass::from_vector(base, vec![1, 1, 0]).unwrap());
        for (a, b) in [(&c0, &c1), (&c1, &c2), (&c0, &c2)] {
            let (v, w) = intersection_number_with(&reg, a, b, &limits()).unwrap();
            assert_eq!(w, Witness::OverlayOracle);
            assert_eq!(v, 1);
        }
        for c in [&c0, &c1, &c2] {
            assert_eq!(intersection_number(&reg, c, c, &limits()).unwrap(), 0);
        }
    }

    #[test]
    fn curve_versus_arc_matches_vector_entry() {
        let reg = flip_ball(Surface::new(1, 1), 1, &limits()).unwrap();
        let base = reg.base();
        let c = CurveClass::from_vector(base, vec![0, 1, 1]).unwrap();
        let curve = VertexClass::Curve(c.clone());
        for e in 0..3 {
            let arc = VertexClass::Arc(reg.arc(reg.arc_id_at(0, e).unwrap()).clone());
            let (v, w) = intersection_number_with(&reg, &curve, &arc, &limits()).unwrap();
            assert_eq!(w, Witness::FastPath);
            assert_eq!(v, c.vector()[e] as u64);
            let o = overlay_oracle(&reg, &curve, &arc, &limits()).unwrap();
            assert_eq!(o, v, "oracle vs fast path at edge {e}");
        }
    }

    #[test]
    fn exhaustive_agrees_with_canonical_removal() {
        let reg = flip_ball(Surface::new(1, 1), 2, &limits()).unwrap();
        let base = reg.base();
        let curves = [
            CurveClass::from_vector(base, vec![0, 1, 1]).unwrap(),
            CurveClass::from_vector(base, vec![1, 0, 1]).unwrap(),
            CurveClass::from_vector(base, vec![1, 1, 2]).unwrap(),
            CurveClass::from_vector(base, vec![1, 2, 1]).unwrap(),
        ];
        for a in &curves {
            for b in &curves {
                let sa = strands::from_curve_vector(base, a.vector()).unwrap();
                let sb = strands::from_curve_vector(base, b.vector()).unwrap();
                let canonical = overlay_min_crossings(base, &sa, &sb, &limits()).unwrap();
                let exhaustive = overlay_min_exhaustive(base, &sa, &sb, &limits()).unwrap();
                assert_eq!(canonical, exhaustive, "{:?} vs {:?}", a.vector(), b.vector());
            }
        }
    }

    #[test]
    fn exhaustive_agrees_on_sphere_curves() {
        // Bigon removal must reach the same minimum as exhaustive
        // interleaving on a spread of curve pairs.
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for (g, n, w) in [(0, 4, 8), (0, 5, 6), (1, 2, 6)] {
            let base = base_triangulation(Surface::new(g, n)).unwrap();
            let mut curves = crate::complex::enumerate_curves(&base, w);
            curves.shuffle(&mut rng);
            curves.truncate(8);
            let mut lim = limits();
            lim.max_interleavings = 40_000;
            let mut compared = 0;
            for a in &curves {
                for b in &curves {
                    let sa = strands::from_curve_vector(&base, a.vector()).unwrap();
                    let sb = strands::from_curve_vector(&base, b.vector()).unwrap();
                    let canonical = overlay_min_crossings(&base, &sa, &sb, &lim).unwrap();
                    match overlay_min_exhaustive(&base, &sa, &sb, &lim) {
                        Ok(exhaustive) => {
                            assert_eq!(
                                canonical,
                                exhaustive,
                                "S_{{{g},{n}}}: {:?} vs {:?}",
                                a.vector(),
                                b.vector()
                            );
                            compared += 1;
                        }
                        Err(Error::ResourceLimit(_)) => {}
                        Err(e) => panic!("{e}"),
                    }
                }
            }
            assert!(compared >= 10, "only {compared} pairs fit the budget");
        }
    }

    #[test]
    fn arcs_sharing_an_endpoint_can_be_disjoint() {
        let reg = flip_ball(Surface::new(0, 3), 1, &limits()).unwrap();
        let a = VertexClass::Arc(reg.arc(0).clone());
        let b = VertexClass::Arc(reg.arc(1).clone());
        assert_eq!(overlay_oracle(&reg, &a, &b, &limits()).unwrap(), 0);
    }

    #[test]
    fn symmetry_on_mixed_pairs() {
        let reg = flip_ball(Surface::new(0, 4), 2, &limits()).unwrap();
        let base = reg.base();
        let mut classes: Vec<VertexClass> = reg
            .arcs()
            .iter()
            .take(10)
            .map(|a| VertexClass::Arc(a.clone()))
            .collect();
        for v in [
            vec![1u32, 1, 0, 0, 1, 1],
            vec![0, 1, 1, 1, 1, 0],
            vec![1, 0, 1, 1, 0, 1],
        ] {
            if let Ok(c) = CurveClass::from_vector(base, v) {
                classes.push(VertexClass::Curve(c));
            }
        }
        for x in &classes {
            for y in &classes {
                let a = intersection_number(&reg, x, y, &limits()).unwrap();
                let b = intersection_number(&reg, y, x, &limits()).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn cut_whole_surface_is_one_piece() {
        let tri = base_triangulation(Surface::new(0, 4)).unwrap();
        let empty = Strands::empty(&tri);
        let pieces = cut_along(&tri, &empty, &vec![false; 6]).unwrap();
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].euler, 2);
        assert_eq!(pieces[0].interior_marked, 4);
        assert!(pieces[0].circle_corners.is_empty());
    }

    #[test]
    fn cut_along_all_base_edges_gives_triangles() {
        let tri = base_triangulation(Surface::new(0, 4)).unwrap();
        let empty = Strands::empty(&tri);
        let pieces = cut_along(&tri, &empty, &vec![true; 6]).unwrap();
        assert_eq!(pieces.len(), 4, "a triangulation cuts into its faces");
        for p in &pieces {
            assert_eq!(p.euler, 1);
            assert_eq!(p.circle_corners, vec![3]);
            assert_eq!(p.interior_marked, 0);
            assert!(p.admits_nothing());
        }
    }

    #[test]
    fn cut_along_separating_curve_on_sphere() {
        let tri = base_triangulation(Surface::new(0, 4)).unwrap();
        // find some essential curve vector
        let mut found = false;
        'outer: for v0 in 0..3u32 {
            for v1 in 0..3u32 {
                for v2 in 0..3u32 {
                    for v3 in 0..3u32 {
                        for v4 in 0..3u32 {
                            for v5 in 0..3u32 {
                                let v = vec![v0, v1, v2, v3, v4, v5];
                                if let Ok(c) = CurveClass::from_vector(&tri, v) {
                                    let s =
                                        strands::from_curve_vector(&tri, c.vector()).unwrap();
                                    let pieces =
                                        cut_along(&tri, &s, &vec![false; 6]).unwrap();
                                    assert_eq!(
                                        pieces.len(),
                                        2,
                                        "every curve on a sphere separates: {:?}",
                                        c.vector()
                                    );
                                    let chi: i64 = pieces.iter().map(|p| p.euler).sum();
                                    assert_eq!(chi, 2);
                                    let marked: u32 =
                                        pieces.iter().map(|p| p.interior_marked).sum();
                                    assert_eq!(marked, 4);
                                    found = true;
                                    break 'outer;
                                }
                            }
                        }
                    }
                }
            }
        }
        assert!(found, "no essential curve found in the search window");
    }

    #[test]
    fn cut_along_nonseparating_torus_curve() {
        let tri = base_triangulation(Surface::new(1, 1)).unwrap();
        let s = strands::from_curve_vector(&tri, &[0, 1, 1]).unwrap();
        let pieces = cut_along(&tri, &s, &vec![false; 3]).unwrap();
        assert_eq!(pieces.len(), 1, "torus curves are nonseparating");
        assert_eq!(pieces[0].euler, 0);
        assert_eq!(pieces[0].circle_corners, vec![0, 0]);
    }

    #[test]
    fn cut_along_one_arc_of_the_sphere_is_a_disk() {
        // The sphere cut along one embedded arc between two punctures is a
        // disk with those punctures as two boundary corners.
        let tri = base_triangulation(Surface::new(0, 4)).unwrap();
        let e = (0..6)
            .find(|&e| {
                let (p, q) = tri.edge_endpoints(e);
                p != q
            })
            .unwrap();
        let mut cut = vec![false; 6];
        cut[e] = true;
        let empty = Strands::empty(&tri);
        let pieces = cut_along(&tri, &empty, &cut).unwrap();
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].euler, 1);
        assert_eq!(pieces[0].interior_marked, 2);
        assert_eq!(pieces[0].circle_corners, vec![2]);
    }

    #[test]
    fn merge_disjoint_base_diagonal_pair() {
        // Two disjoint curves merge into one system with summed vectors.
        let tri = base_triangulation(Surface::new(1, 2)).unwrap();
        // find two disjoint essential curves by brute force over small
        // vectors
        let mut curves = Vec::new();
        let e = tri.edge_count();
        let mut v = vec![0u32; e];
        fn enumerate(
            tri: &IdealTriangulation,
            v: &mut Vec<u32>,
            i: usize,
            out: &mut Vec<CurveClass>,
        ) {
            if out.len() > 40 {
                return;
            }
            if i == v.len() {
                if let Ok(c) = CurveClass::from_vector(tri, v.clone()) {
                    out.push(c);
                }
                return;
            }
            for x in 0..=2u32 {
                v[i] = x;
                enumerate(tri, v, i + 1, out);
            }
            v[i] = 0;
        }
        enumerate(&tri, &mut v, 0, &mut curves);
        assert!(curves.len() >= 2, "need a few curves to test merging");
        let lim = limits();
        let mut merged_any = false;
        for i in 0..curves.len() {
            for j in i + 1..curves.len() {
                let sa = strands::from_curve_vector(&tri, curves[i].vector()).unwrap();
                let sb = strands::from_curve_vector(&tri, curves[j].vector()).unwrap();
                if overlay_min_crossings(&tri, &sa, &sb, &lim).unwrap() == 0 {
                    let u = merge_disjoint(&tri, &sa, &sb).unwrap();
                    let expect: Vec<u32> = curves[i]
                        .vector()
                        .iter()
                        .zip(curves[j].vector())
                        .map(|(&a, &b)| a + b)
                        .collect();
                    assert_eq!(u.vector(), expect);
                    merged_any = true;
                }
            }
        }
        assert!(merged_any, "expected at least one disjoint curve pair");
    }
}
