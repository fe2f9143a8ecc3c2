//! Curve and arc classes in normal coordinates, and coordinate transport.
//!
//! Curves are non-negative integer vectors of intersection numbers with the
//! base edges. Arcs are anchored: the class is an edge of some registry
//! triangulation, and the base vector (with the `-1` convention marking the
//! base edges themselves) is a derived canonical key. Equality of classes
//! is equality of tag, vector and endpoints.

use serde::{Deserialize, Serialize};

use crate::registry::{FlipRegistry, TriId};
use crate::strands::{self, Carried};
use crate::triangulation::{EdgeIdx, IdealTriangulation};
use crate::{Error, Result};

/// An essential simple closed curve, as its intersection vector with the
/// base edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveClass {
    vector: Vec<u32>,
}

impl CurveClass {
    /// Validates that the vector names a single essential curve: matching
    /// conditions hold, the strands form one closed component, and the
    /// component is neither trivial nor a puncture link.
    pub fn from_vector(base: &IdealTriangulation, vector: Vec<u32>) -> Result<CurveClass> {
        let s = strands::from_curve_vector(base, &vector)?;
        let comps = strands::trace_components(base, &s);
        if comps.len() != 1 {
            return Err(Error::InvalidCoordinates(format!(
                "vector splits into {} components",
                comps.len()
            )));
        }
        if strands::peripheral_puncture(base, &s).is_some() {
            return Err(Error::InvalidCoordinates(
                "vector is a puncture link (inessential curve)".into(),
            ));
        }
        Ok(CurveClass { vector })
    }

    pub fn vector(&self) -> &[u32] {
        &self.vector
    }

    pub fn weight(&self) -> u64 {
        self.vector.iter().map(|&x| x as u64).sum()
    }
}

/// An essential arc, anchored as an edge of a registry triangulation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArcClass {
    anchor: (TriId, EdgeIdx),
    endpoints: (u32, u32),
    /// Base vector with the -1 convention: entry -1 at e means the arc is
    /// the base edge e (then all other entries are 0).
    vector: Vec<i64>,
}

impl ArcClass {
    pub fn new(anchor: (TriId, EdgeIdx), endpoints: (u32, u32), vector: Vec<i64>) -> ArcClass {
        debug_assert!(vector.iter().filter(|&&x| x == -1).count() <= 1);
        debug_assert!(
            !vector.contains(&-1) || vector.iter().all(|&x| x == -1 || x == 0),
            "a base-edge arc has zero interior intersections"
        );
        ArcClass {
            anchor,
            endpoints,
            vector,
        }
    }

    pub fn anchor(&self) -> (TriId, EdgeIdx) {
        self.anchor
    }

    pub(crate) fn set_anchor(&mut self, anchor: (TriId, EdgeIdx)) {
        self.anchor = anchor;
    }

    /// Normalized endpoint puncture pair (small, large), 0-based.
    pub fn endpoints(&self) -> (u32, u32) {
        self.endpoints
    }

    pub fn is_loop(&self) -> bool {
        self.endpoints.0 == self.endpoints.1
    }

    pub fn vector(&self) -> &[i64] {
        &self.vector
    }

    /// The base edge this arc is isotopic to, if any.
    pub fn as_base_edge(&self) -> Option<EdgeIdx> {
        self.vector.iter().position(|&x| x == -1)
    }

    pub fn weight(&self) -> u64 {
        self.vector.iter().map(|&x| x.max(0) as u64).sum()
    }
}

/// An isotopy class of either kind.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum VertexClass {
    Curve(CurveClass),
    Arc(ArcClass),
}

impl VertexClass {
    pub fn is_arc(&self) -> bool {
        matches!(self, VertexClass::Arc(_))
    }

    pub fn is_curve(&self) -> bool {
        matches!(self, VertexClass::Curve(_))
    }

    pub fn weight(&self) -> u64 {
        match self {
            VertexClass::Curve(c) => c.weight(),
            VertexClass::Arc(a) => a.weight(),
        }
    }

    /// Deterministic sort key: kind, vector, endpoints.
    pub fn sort_key(&self) -> (u8, Vec<i64>, (u32, u32)) {
        match self {
            VertexClass::Curve(c) => (
                0,
                c.vector().iter().map(|&x| x as i64).collect(),
                (u32::MAX, u32::MAX),
            ),
            VertexClass::Arc(a) => (1, a.vector().to_vec(), a.endpoints()),
        }
    }

    pub fn to_json(&self) -> ClassJson {
        match self {
            VertexClass::Curve(c) => ClassJson {
                kind: "curve".into(),
                coords: c.vector().iter().map(|&x| x as i64).collect(),
                endpoints: None,
            },
            VertexClass::Arc(a) => ClassJson {
                kind: "arc".into(),
                coords: a.vector().to_vec(),
                endpoints: Some([a.endpoints().0 + 1, a.endpoints().1 + 1]),
            },
        }
    }
}

/// Wire format for classes.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassJson {
    pub kind: String,
    pub coords: Vec<i64>,
    /// 1-based puncture labels for arcs, absent for curves.
    pub endpoints: Option<[u32; 2]>,
}

impl ClassJson {
    /// Resolves the wire form against a registry. Curves validate directly;
    /// arcs must already be registered (their anchor is looked up).
    pub fn resolve(&self, reg: &FlipRegistry) -> Result<VertexClass> {
        match self.kind.as_str() {
            "curve" => {
                let v = self
                    .coords
                    .iter()
                    .map(|&x| {
                        u32::try_from(x).map_err(|_| {
                            Error::InvalidInput("negative curve coordinate".into())
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(VertexClass::Curve(CurveClass::from_vector(reg.base(), v)?))
            }
            "arc" => {
                let ep = self
                    .endpoints
                    .ok_or_else(|| Error::InvalidInput("arc without endpoints".into()))?;
                if ep[0] == 0 || ep[1] == 0 {
                    return Err(Error::InvalidInput("endpoints are 1-based".into()));
                }
                let ep = (ep[0] - 1, ep[1] - 1);
                let ep = (ep.0.min(ep.1), ep.0.max(ep.1));
                let id = reg.find_arc(&self.coords, ep).ok_or_else(|| {
                    Error::RegistryMiss(
                        "arc not present in the registry; increase the flip radius".into(),
                    )
                })?;
                Ok(VertexClass::Arc(reg.arc(id).clone()))
            }
            other => Err(Error::InvalidInput(format!("unknown class kind {other}"))),
        }
    }
}

/// Decidable class equality: same tag, equal base vectors, and (for arcs)
/// equal endpoint pairs. Anchors are representation detail, not identity.
pub fn class_equal(x: &VertexClass, y: &VertexClass) -> bool {
    match (x, y) {
        (VertexClass::Curve(a), VertexClass::Curve(b)) => a.vector() == b.vector(),
        (VertexClass::Arc(a), VertexClass::Arc(b)) => {
            a.vector() == b.vector() && a.endpoints() == b.endpoints()
        }
        _ => false,
    }
}

/// Transports curve coordinates across one flip of `tri` at `e` by the
/// tropical exchange rule: the new value at `e` is
/// `max(v[a] + v[c], v[b] + v[d]) - v[e]` over the quadrilateral sides.
pub fn transport(v: &[u32], tri: &IdealTriangulation, e: EdgeIdx) -> Result<Vec<u32>> {
    if v.len() != tri.edge_count() {
        return Err(Error::InvalidCoordinates(
            "vector length mismatch in transport".into(),
        ));
    }
    // Matching conditions relative to `tri`.
    strands::from_curve_vector(tri, v)?;
    let q = tri.quad(e)?;
    let val = |corner: usize| v[tri.edge_of(corner)] as i64;
    let new = (val(q.a) + val(q.c)).max(val(q.b) + val(q.d)) - v[e] as i64;
    debug_assert!(new >= 0);
    let mut out = v.to_vec();
    out[e] = new as u32;
    Ok(out)
}

/// Transports a curve vector from the base to a registry triangulation by
/// applying the tropical rule along the flip path.
pub fn curve_to_anchor(reg: &FlipRegistry, curve: &CurveClass, to: TriId) -> Result<Vec<u32>> {
    let entry = reg.entry(to)?;
    let mut tri = reg.base().clone();
    let mut v = curve.vector().to_vec();
    for &e in &entry.flip_path {
        v = transport(&v, &tri, e)?;
        tri = tri.flip(e)?;
    }
    Ok(v)
}

/// Interior intersection numbers of an anchored arc with every base edge,
/// recomputed by carrying the anchor marker along the reversed flip path.
/// The registry caches this value at registration; the recomputation is the
/// defining route.
pub fn arc_base_vector(reg: &FlipRegistry, arc: &ArcClass) -> Result<Vec<i64>> {
    let (tri_id, edge) = arc.anchor();
    let entry = reg.entry(tri_id)?;
    if edge >= entry.tri.edge_count() {
        return Err(Error::RegistryMiss(format!(
            "anchor edge {edge} out of range"
        )));
    }
    let carried = reg.carry_to_base(tri_id, Carried::EdgeMarker(edge))?;
    Ok(match carried {
        Carried::EdgeMarker(f) => {
            let mut v = vec![0i64; reg.base().edge_count()];
            v[f] = -1;
            v
        }
        Carried::Strands(s) => s.vector().iter().map(|&x| x as i64).collect(),
    })
}

/// The arc's strand picture relative to the base triangulation.
pub fn arc_base_strands(reg: &FlipRegistry, arc: &ArcClass) -> Result<Carried> {
    let (tri_id, edge) = arc.anchor();
    reg.carry_to_base(tri_id, Carried::EdgeMarker(edge))
}
