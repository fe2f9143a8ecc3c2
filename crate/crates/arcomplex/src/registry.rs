//! Flip-graph enumeration and the arc inventory.
//!
//! The registry stores every triangulation reachable from the base by at
//! most `radius` flips. Two triangulations count as the same node exactly
//! when they carry the same set of arc classes (the same point of the flip
//! graph of ideal triangulations up to isotopy); the dedup key is therefore
//! the sorted list of per-edge arc ids rather than the map-isomorphism
//! canonical code, which would conflate distinct arc sets on symmetric
//! surfaces.

use std::collections::HashMap;

use crate::coords::ArcClass;
use crate::strands::{carry_across_exchange, Carried, Exchange};
use crate::surface::Surface;
use crate::triangulation::{base_triangulation, EdgeIdx, IdealTriangulation};
use crate::{Error, Limits, Result};

/// Index of a triangulation inside a registry.
pub type TriId = usize;

#[derive(Debug, Clone)]
pub struct RegistryEntry {
    pub tri: IdealTriangulation,
    /// Flip sequence from the base reproducing `tri` exactly.
    pub flip_path: Vec<EdgeIdx>,
    pub parent: Option<(TriId, EdgeIdx)>,
    pub depth: u32,
    /// Arc id per edge.
    pub arcs: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct FlipRegistry {
    surface: Surface,
    entries: Vec<RegistryEntry>,
    content_index: HashMap<Vec<usize>, TriId>,
    arc_table: Vec<ArcClass>,
    arc_index: HashMap<(Vec<i64>, (u32, u32)), usize>,
    radius: u32,
    /// True when the search closed before exhausting the radius, i.e. the
    /// whole (finite) flip graph has been enumerated.
    closed: bool,
}

impl FlipRegistry {
    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn base(&self) -> &IdealTriangulation {
        &self.entries[0].tri
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    /// Whole flip graph enumerated before the radius ran out.
    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, id: TriId) -> Result<&RegistryEntry> {
        self.entries
            .get(id)
            .ok_or_else(|| Error::RegistryMiss(format!("triangulation {id} not in registry")))
    }

    pub fn entries(&self) -> &[RegistryEntry] {
        &self.entries
    }

    pub fn arcs(&self) -> &[ArcClass] {
        &self.arc_table
    }

    pub fn arc(&self, id: usize) -> &ArcClass {
        &self.arc_table[id]
    }

    pub fn arc_id_at(&self, tri: TriId, edge: EdgeIdx) -> Result<usize> {
        let entry = self.entry(tri)?;
        entry.arcs.get(edge).copied().ok_or_else(|| {
            Error::RegistryMiss(format!("edge {edge} out of range in triangulation {tri}"))
        })
    }

    /// Looks up an arc class by its canonical key.
    pub fn find_arc(&self, vector: &[i64], endpoints: (u32, u32)) -> Option<usize> {
        self.arc_index.get(&(vector.to_vec(), endpoints)).copied()
    }

    /// Carries a class from the given registry triangulation back to the
    /// base along the reversed flip path.
    pub fn carry_to_base(&self, from: TriId, class: Carried) -> Result<Carried> {
        let mut id = from;
        let mut class = class;
        while let Some((parent, edge)) = self.entries[id].parent {
            let tri = &self.entries[id].tri;
            class = carry_across_exchange(tri, edge, Exchange::Unflip, &class)?;
            id = parent;
        }
        Ok(class)
    }

    /// Carries a class from the base out to a registry triangulation along
    /// its flip path.
    pub fn carry_from_base(&self, to: TriId, class: Carried) -> Result<Carried> {
        let entry = self.entry(to)?;
        let mut tri = self.entries[0].tri.clone();
        let mut class = class;
        for &edge in &entry.flip_path {
            class = carry_across_exchange(&tri, edge, Exchange::Flip, &class)?;
            tri = tri.flip(edge)?;
        }
        debug_assert_eq!(&tri, &entry.tri);
        Ok(class)
    }
}

/// Enumerates every triangulation within `radius` flips of the base,
/// deduplicated by arc content, with the arc inventory populated.
pub fn flip_ball(surface: Surface, radius: u32, limits: &Limits) -> Result<FlipRegistry> {
    let base = base_triangulation(surface)?;
    let edge_count = base.edge_count();
    let mut reg = FlipRegistry {
        surface,
        entries: Vec::new(),
        content_index: HashMap::new(),
        arc_table: Vec::new(),
        arc_index: HashMap::new(),
        radius,
        closed: false,
    };
    let mut base_arcs = Vec::with_capacity(edge_count);
    for e in 0..edge_count {
        let mut vector = vec![0i64; edge_count];
        vector[e] = -1;
        let endpoints = base.edge_endpoints(e);
        let id = intern_arc(&mut reg, vector, endpoints, (0, e));
        base_arcs.push(id);
    }
    let mut content = base_arcs.clone();
    content.sort_unstable();
    reg.content_index.insert(content, 0);
    reg.entries.push(RegistryEntry {
        tri: base,
        flip_path: Vec::new(),
        parent: None,
        depth: 0,
        arcs: base_arcs,
    });

    let mut frontier_start = 0usize;
    for depth in 0..radius {
        let frontier_end = reg.entries.len();
        if frontier_start == frontier_end {
            break;
        }
        for id in frontier_start..frontier_end {
            for e in 0..edge_count {
                if reg.entries[id].tri.is_self_folded(e) {
                    continue;
                }
                if reg.entries.len() >= limits.max_registry_nodes {
                    return Err(Error::ResourceLimit(format!(
                        "flip ball exceeded {} nodes",
                        limits.max_registry_nodes
                    )));
                }
                expand_flip(&mut reg, id, e, depth + 1)?;
            }
        }
        frontier_start = frontier_end;
    }
    if frontier_start == reg.entries.len() {
        reg.closed = true;
    }
    Ok(reg)
}

fn expand_flip(reg: &mut FlipRegistry, from: TriId, edge: EdgeIdx, depth: u32) -> Result<()> {
    let tri = reg.entries[from].tri.flip(edge)?;
    // New arc at `edge`: carry the marker back to the base along the
    // reversed path (one unflip back into `from`, then the parent chain).
    let carried = carry_across_exchange(&tri, edge, Exchange::Unflip, &Carried::EdgeMarker(edge))?;
    let carried = reg.carry_to_base(from, carried)?;
    let vector = match carried {
        Carried::EdgeMarker(f) => {
            let mut v = vec![0i64; tri.edge_count()];
            v[f] = -1;
            v
        }
        Carried::Strands(s) => s.vector().iter().map(|&x| x as i64).collect(),
    };
    let endpoints = tri.edge_endpoints(edge);
    let mut arcs = reg.entries[from].arcs.clone();
    let mut content_probe = arcs.clone();
    // Intern after we know whether this triangulation is new, so anchors of
    // fresh arcs point at real entries.
    let key = (vector.clone(), endpoints);
    let existing_arc = reg.arc_index.get(&key).copied();
    let probe_arc = existing_arc.unwrap_or(usize::MAX);
    content_probe[edge] = probe_arc;
    let mut content_sorted = content_probe.clone();
    content_sorted.sort_unstable();
    if existing_arc.is_some() && reg.content_index.contains_key(&content_sorted) {
        return Ok(());
    }
    let new_id = reg.entries.len();
    let arc_id = match existing_arc {
        Some(id) => id,
        None => intern_arc(reg, vector, endpoints, (new_id, edge)),
    };
    arcs[edge] = arc_id;
    let mut content = arcs.clone();
    content.sort_unstable();
    if reg.content_index.contains_key(&content) {
        return Ok(());
    }
    let mut flip_path = reg.entries[from].flip_path.clone();
    flip_path.push(edge);
    reg.content_index.insert(content, new_id);
    reg.entries.push(RegistryEntry {
        tri,
        flip_path,
        parent: Some((from, edge)),
        depth,
        arcs,
    });
    Ok(())
}

/// Carries a class backwards along a flip sequence that starts at `base`,
/// returning it relative to `base`.
pub fn carry_back_along(
    base: &IdealTriangulation,
    flips: &[EdgeIdx],
    class: Carried,
) -> Result<Carried> {
    let mut tris = vec![base.clone()];
    for &e in flips {
        tris.push(tris.last().unwrap().flip(e)?);
    }
    let mut class = class;
    for (k, &e) in flips.iter().enumerate().rev() {
        class = carry_across_exchange(&tris[k + 1], e, Exchange::Unflip, &class)?;
    }
    Ok(class)
}

/// Result of straightening a family of disjoint arcs: a triangulation in
/// which each arc is an edge.
#[derive(Debug, Clone)]
pub struct Straightened {
    pub tri: IdealTriangulation,
    /// Flip path from the starting triangulation.
    pub flips: Vec<EdgeIdx>,
    /// Edge index of each input arc in `tri`, in input order.
    pub edges: Vec<EdgeIdx>,
}

/// Flips `start` until every given class is an edge. The classes must be
/// pairwise disjoint arcs, given as carried data relative to `start`.
/// Greedy weight descent with a breadth-first fallback across plateaus.
pub fn straighten(
    start: &IdealTriangulation,
    targets: &[Carried],
    limits: &Limits,
) -> Result<Straightened> {
    let weight = |c: &Carried| -> u64 {
        match c {
            Carried::EdgeMarker(_) => 0,
            Carried::Strands(s) => s.total_weight(),
        }
    };
    let mut tri = start.clone();
    let mut flips: Vec<EdgeIdx> = Vec::new();
    let mut carried: Vec<Carried> = targets.to_vec();
    let mut edges: Vec<Option<EdgeIdx>> = targets
        .iter()
        .map(|c| match c {
            Carried::EdgeMarker(e) => Some(*e),
            _ => None,
        })
        .collect();
    let mut placed: Vec<EdgeIdx> = edges.iter().flatten().copied().collect();

    let carry_all = |tri: &IdealTriangulation,
                     e: EdgeIdx,
                     carried: &[Carried]|
     -> Result<Vec<Carried>> {
        carried
            .iter()
            .map(|c| carry_across_exchange(tri, e, Exchange::Flip, c))
            .collect()
    };

    for i in 0..targets.len() {
        let mut guard = 0usize;
        while edges[i].is_none() {
            guard += 1;
            if guard > limits.max_registry_nodes {
                return Err(Error::ResourceLimit("straightening did not converge".into()));
            }
            let current = match &carried[i] {
                Carried::EdgeMarker(e) => {
                    edges[i] = Some(*e);
                    placed.push(*e);
                    continue;
                }
                Carried::Strands(s) => s.clone(),
            };
            let w0 = current.total_weight();
            // Greedy: flip a crossed edge that strictly lowers the weight.
            let mut best: Option<(u64, EdgeIdx, Vec<Carried>)> = None;
            for e in 0..tri.edge_count() {
                if current.edge_points[e] == 0 || tri.is_self_folded(e) || placed.contains(&e) {
                    continue;
                }
                let moved = carry_all(&tri, e, &carried)?;
                let w = weight(&moved[i]);
                if w < w0 && best.as_ref().map_or(true, |(bw, be, _)| w < *bw || (w == *bw && e < *be)) {
                    best = Some((w, e, moved));
                }
            }
            if let Some((_, e, moved)) = best {
                carried = moved;
                tri = tri.flip(e)?;
                flips.push(e);
                continue;
            }
            // Plateau: breadth-first over crossed-edge flips until the
            // weight drops or the arc becomes an edge.
            let mut queue = std::collections::VecDeque::new();
            let mut visited = std::collections::HashSet::new();
            queue.push_back((tri.clone(), flips.clone(), carried.clone()));
            let mut resolved = false;
            while let Some((qtri, qflips, qcarried)) = queue.pop_front() {
                if visited.len() > 4096 {
                    return Err(Error::ResourceLimit(
                        "straightening plateau search exhausted".into(),
                    ));
                }
                let qcur = match &qcarried[i] {
                    Carried::EdgeMarker(_) => {
                        tri = qtri;
                        flips = qflips;
                        carried = qcarried;
                        resolved = true;
                        break;
                    }
                    Carried::Strands(s) => s.clone(),
                };
                if qcur.total_weight() < w0 {
                    tri = qtri;
                    flips = qflips;
                    carried = qcarried;
                    resolved = true;
                    break;
                }
                if !visited.insert((qtri.canonical_code(true), qcur.vector())) {
                    continue;
                }
                for e in 0..qtri.edge_count() {
                    if qcur.edge_points[e] == 0
                        || qtri.is_self_folded(e)
                        || placed.contains(&e)
                    {
                        continue;
                    }
                    let moved = carry_all(&qtri, e, &qcarried)?;
                    let mut nf = qflips.clone();
                    nf.push(e);
                    queue.push_back((qtri.flip(e)?, nf, moved));
                }
            }
            if !resolved {
                return Err(Error::ResourceLimit(
                    "straightening found no descending flip".into(),
                ));
            }
        }
    }
    Ok(Straightened {
        tri,
        flips,
        edges: edges.into_iter().map(|e| e.unwrap()).collect(),
    })
}

fn intern_arc(
    reg: &mut FlipRegistry,
    vector: Vec<i64>,
    endpoints: (u32, u32),
    anchor: (TriId, EdgeIdx),
) -> usize {
    let key = (vector.clone(), endpoints);
    if let Some(&id) = reg.arc_index.get(&key) {
        return id;
    }
    let id = reg.arc_table.len();
    reg.arc_index.insert(key, id);
    reg.arc_table.push(ArcClass::new(anchor, endpoints, vector));
    id
}

#[cfg(test)]
mod tests {
    use super::*;

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn radius_zero_is_single_node() {
        let reg = flip_ball(Surface::new(1, 1), 0, &limits()).unwrap();
        assert_eq!(reg.len(), 1);
        assert_eq!(reg.arcs().len(), 3);
    }

    #[test]
    fn torus_radius_one_has_three_labeled_neighbors() {
        let reg = flip_ball(Surface::new(1, 1), 1, &limits()).unwrap();
        assert_eq!(reg.len(), 4, "base plus its three single-flip neighbors");
    }

    #[test]
    fn registry_growth_is_monotone() {
        let mut last = 0;
        for r in 0..4 {
            let reg = flip_ball(Surface::new(0, 4), r, &limits()).unwrap();
            assert!(reg.len() >= last);
            last = reg.len();
        }
    }

    #[test]
    fn replayed_paths_reproduce_entries() {
        let reg = flip_ball(Surface::new(0, 4), 3, &limits()).unwrap();
        for entry in reg.entries() {
            let mut tri = reg.base().clone();
            for &e in &entry.flip_path {
                tri = tri.flip(e).unwrap();
            }
            assert_eq!(tri, entry.tri);
        }
    }

    #[test]
    fn s03_flip_graph_closes_with_four_triangulations_and_six_arcs() {
        let reg = flip_ball(Surface::new(0, 3), 6, &limits()).unwrap();
        assert!(reg.is_closed());
        assert_eq!(reg.len(), 4);
        assert_eq!(reg.arcs().len(), 6);
    }

    #[test]
    fn anchors_resolve() {
        let reg = flip_ball(Surface::new(0, 5), 2, &limits()).unwrap();
        for (id, arc) in reg.arcs().iter().enumerate() {
            let (tri_id, edge) = arc.anchor();
            let entry = reg.entry(tri_id).unwrap();
            assert_eq!(entry.arcs[edge], id, "anchor of arc {id} points back");
            assert_eq!(entry.tri.edge_endpoints(edge), arc.endpoints());
        }
    }

    #[test]
    fn straighten_realizes_disjoint_arc_pairs() {
        use crate::coords::{arc_base_strands, VertexClass};
        use crate::intersect::intersection_number;
        let lim = limits();
        let reg = flip_ball(Surface::new(0, 4), 2, &lim).unwrap();
        let mut tested = 0;
        for i in 0..reg.arcs().len() {
            for j in i + 1..reg.arcs().len() {
                if tested >= 12 {
                    break;
                }
                let a = VertexClass::Arc(reg.arc(i).clone());
                let b = VertexClass::Arc(reg.arc(j).clone());
                if intersection_number(&reg, &a, &b, &lim).unwrap() != 0 {
                    continue;
                }
                let ca = arc_base_strands(&reg, reg.arc(i)).unwrap();
                let cb = arc_base_strands(&reg, reg.arc(j)).unwrap();
                let st = straighten(reg.base(), &[ca, cb], &lim).unwrap();
                // Verify by carrying the markers back to the base.
                let mut back = vec![
                    Carried::EdgeMarker(st.edges[0]),
                    Carried::EdgeMarker(st.edges[1]),
                ];
                let mut tri_seq = vec![reg.base().clone()];
                for &e in &st.flips {
                    tri_seq.push(tri_seq.last().unwrap().flip(e).unwrap());
                }
                for (k, &e) in st.flips.iter().enumerate().rev() {
                    for c in back.iter_mut() {
                        *c = carry_across_exchange(&tri_seq[k + 1], e, Exchange::Unflip, c)
                            .unwrap();
                    }
                }
                for (c, arc_id) in back.iter().zip([i, j]) {
                    let vector: Vec<i64> = match c {
                        Carried::EdgeMarker(f) => {
                            let mut v = vec![0i64; 6];
                            v[*f] = -1;
                            v
                        }
                        Carried::Strands(s) => {
                            s.vector().iter().map(|&x| x as i64).collect()
                        }
                    };
                    assert_eq!(&vector, reg.arc(arc_id).vector());
                }
                tested += 1;
            }
        }
        assert!(tested >= 5, "found only {tested} disjoint pairs to test");
    }

    #[test]
    fn arc_vectors_are_path_independent() {
        // Re-deriving each edge's vector by carrying its marker to the base
        // must agree with the interned arc, whichever route first produced
        // it.
        let reg = flip_ball(Surface::new(1, 1), 3, &limits()).unwrap();
        for entry_id in 0..reg.len() {
            let entry = reg.entry(entry_id).unwrap();
            for e in 0..entry.tri.edge_count() {
                let arc = reg.arc(entry.arcs[e]);
                let carried = reg.carry_to_base(entry_id, Carried::EdgeMarker(e)).unwrap();
                let vector: Vec<i64> = match carried {
                    Carried::EdgeMarker(f) => {
                        let mut v = vec![0i64; 3];
                        v[f] = -1;
                        v
                    }
                    Carried::Strands(s) => s.vector().iter().map(|&x| x as i64).collect(),
                };
                assert_eq!(
                    &vector,
                    arc.vector(),
                    "entry {entry_id} edge {e} disagrees with interned arc"
                );
            }
        }
    }
}
