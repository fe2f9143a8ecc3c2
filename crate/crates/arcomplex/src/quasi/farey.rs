//! Rational slopes, the Farey graph, and the model of the arc-and-curve
//! complex of the once-punctured torus.
//!
//! Slopes p/q (plus 1/0 for infinity) are adjacent in the Farey graph when
//! |p s - q r| = 1. Distances are computed by breadth-first search over the
//! slopes whose numerator and denominator sizes stay within the mediant
//! hull of the endpoints — vertices of Farey geodesics are mediants of the
//! endpoints, so the restriction loses nothing.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A slope: a coprime pair (p, q) with q >= 0, and (1, 0) for infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FareySlope {
    p: i64,
    q: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl FareySlope {
    pub fn new(p: i64, q: i64) -> Result<FareySlope> {
        if p == 0 && q == 0 {
            return Err(Error::InvalidInput("0/0 is not a slope".into()));
        }
        let g = gcd(p, q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 || (q == 0 && p < 0) {
            p = -p;
            q = -q;
        }
        Ok(FareySlope { p, q })
    }

    pub fn infinity() -> FareySlope {
        FareySlope { p: 1, q: 0 }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn det(&self, other: &FareySlope) -> i64 {
        (self.p * other.q - self.q * other.p).abs()
    }

    /// Farey adjacency: representatives intersecting once on the torus
    /// (twice on the four-punctured sphere).
    pub fn adjacent(&self, other: &FareySlope) -> bool {
        self.det(other) == 1
    }

    fn size(&self) -> i64 {
        self.p.abs().max(self.q)
    }
}

impl std::fmt::Display for FareySlope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// Distance in the Farey graph.
pub fn farey_distance(s: FareySlope, t: FareySlope) -> u32 {
    if s == t {
        return 0;
    }
    if s.adjacent(&t) {
        return 1;
    }
    // Geodesic vertices are mediants of the endpoints: their numerators and
    // denominators are bounded by the endpoint sums. Enumerate that window
    // and search.
    let bound = (s.p.abs() + s.q + t.p.abs() + t.q).max(2);
    let graph = FareyGraph::up_to(bound);
    graph.distance(s, t).expect("endpoints inside their own hull")
}

/// The Farey graph on all slopes with |p|, q bounded.
pub struct FareyGraph {
    pub slopes: Vec<FareySlope>,
    adjacency: Vec<Vec<usize>>,
}

impl FareyGraph {
    pub fn up_to(bound: i64) -> FareyGraph {
        let mut slopes = Vec::new();
        for q in 0..=bound {
            for p in -bound..=bound {
                if (p != 0 || q != 0) && gcd(p, q) == 1 {
                    if q == 0 && p != 1 {
                        continue;
                    }
                    slopes.push(FareySlope { p, q });
                }
            }
        }
        slopes.sort();
        slopes.dedup();
        let n = slopes.len();
        let mut adjacency = vec![Vec::new(); n];
        for i in 0..n {
            for j in i + 1..n {
                if slopes[i].adjacent(&slopes[j]) {
                    adjacency[i].push(j);
                    adjacency[j].push(i);
                }
            }
        }
        FareyGraph { slopes, adjacency }
    }

    pub fn index(&self, s: FareySlope) -> Option<usize> {
        self.slopes.binary_search(&s).ok()
    }

    pub fn distance(&self, s: FareySlope, t: FareySlope) -> Option<u32> {
        let (si, ti) = (self.index(s)?, self.index(t)?);
        let mut dist = vec![u32::MAX; self.slopes.len()];
        let mut queue = std::collections::VecDeque::new();
        dist[si] = 0;
        queue.push_back(si);
        while let Some(v) = queue.pop_front() {
            if v == ti {
                return Some(dist[v]);
            }
            for &w in &self.adjacency[v] {
                if dist[w] == u32::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        None
    }
}

/// The model of AC(S_{1,1}): a curve vertex and an arc vertex per slope;
/// each curve is adjacent to its own arc only, and arcs are adjacent along
/// Farey edges.
pub struct TorusAcModel {
    pub graph: FareyGraph,
}

/// Model vertex: the curve or the arc of a slope.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelVertex {
    Curve(usize),
    Arc(usize),
}

impl TorusAcModel {
    pub fn up_to(bound: i64) -> TorusAcModel {
        TorusAcModel {
            graph: FareyGraph::up_to(bound),
        }
    }

    pub fn slope_count(&self) -> usize {
        self.graph.slopes.len()
    }

    pub fn adjacent(&self, a: ModelVertex, b: ModelVertex) -> bool {
        match (a, b) {
            (ModelVertex::Curve(_), ModelVertex::Curve(_)) => false,
            (ModelVertex::Curve(s), ModelVertex::Arc(t))
            | (ModelVertex::Arc(t), ModelVertex::Curve(s)) => s == t,
            (ModelVertex::Arc(s), ModelVertex::Arc(t)) => {
                s != t && self.graph.slopes[s].adjacent(&self.graph.slopes[t])
            }
        }
    }

    /// Graph distance in the model between the curve vertices of two
    /// slopes, by breadth-first search over the whole model.
    pub fn curve_distance(&self, s: FareySlope, t: FareySlope) -> Option<u32> {
        let n = self.slope_count();
        let (si, ti) = (self.graph.index(s)?, self.graph.index(t)?);
        // vertex ids: curve(i) = i, arc(i) = n + i
        let neighbors = |v: usize| -> Vec<usize> {
            if v < n {
                vec![n + v]
            } else {
                let i = v - n;
                let mut out = vec![i];
                out.extend(self.graph.adjacency[i].iter().map(|&j| n + j));
                out
            }
        };
        let mut dist = vec![u32::MAX; 2 * n];
        let mut queue = std::collections::VecDeque::new();
        dist[si] = 0;
        queue.push_back(si);
        while let Some(v) = queue.pop_front() {
            if v == ti {
                return Some(dist[v]);
            }
            for w in neighbors(v) {
                if dist[w] == u32::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// Structural property: no paths z v, z a v between distinct curves
    /// with at most one arc between them.
    pub fn no_short_curve_links(&self) -> bool {
        let n = self.slope_count();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                if self.adjacent(ModelVertex::Curve(i), ModelVertex::Curve(j)) {
                    return false;
                }
                for k in 0..n {
                    if self.adjacent(ModelVertex::Curve(i), ModelVertex::Arc(k))
                        && self.adjacent(ModelVertex::Arc(k), ModelVertex::Curve(j))
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// No path a z b with z a curve and a, b distinct arcs.
    pub fn curves_have_unique_arc_neighbor(&self) -> bool {
        (0..self.slope_count()).all(|s| {
            let nbrs: Vec<usize> = (0..self.slope_count())
                .filter(|&t| self.adjacent(ModelVertex::Curve(s), ModelVertex::Arc(t)))
                .collect();
            nbrs == vec![s]
        })
    }

    /// Property (ii): a path z a b v between curves forces Farey-adjacent
    /// slopes, i.e. curve-complex distance one.
    pub fn four_step_paths_are_farey_edges(&self) -> bool {
        let n = self.slope_count();
        for z in 0..n {
            for v in 0..n {
                if z == v {
                    continue;
                }
                // z a b v with a = arc(z), b = arc(v) adjacent arcs
                if self.adjacent(ModelVertex::Arc(z), ModelVertex::Arc(v))
                    && !self.graph.slopes[z].adjacent(&self.graph.slopes[v])
                {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_normalization() {
        assert_eq!(
            FareySlope::new(2, 4).unwrap(),
            FareySlope::new(1, 2).unwrap()
        );
        assert_eq!(
            FareySlope::new(-3, -6).unwrap(),
            FareySlope::new(1, 2).unwrap()
        );
        assert_eq!(FareySlope::new(-2, 0).unwrap(), FareySlope::infinity());
        assert!(FareySlope::new(0, 0).is_err());
    }

    #[test]
    fn basic_distances() {
        let zero = FareySlope::new(0, 1).unwrap();
        let inf = FareySlope::infinity();
        assert_eq!(farey_distance(zero, zero), 0);
        assert_eq!(farey_distance(zero, inf), 1, "determinant one: adjacent");
        let two_fifths = FareySlope::new(2, 5).unwrap();
        assert_eq!(farey_distance(zero, two_fifths), 2, "witness midpoint 1/2");
        let half = FareySlope::new(1, 2).unwrap();
        assert!(zero.adjacent(&half) && half.adjacent(&two_fifths));
    }

    #[test]
    fn metric_spot_checks() {
        let slopes: Vec<FareySlope> = [(0, 1), (1, 1), (1, 0), (2, 5), (3, 7), (-2, 3)]
            .into_iter()
            .map(|(p, q)| FareySlope::new(p, q).unwrap())
            .collect();
        for &a in &slopes {
            for &b in &slopes {
                let d = farey_distance(a, b);
                assert_eq!(d, farey_distance(b, a), "symmetry");
                assert_eq!(d == 0, a == b);
                for &c in &slopes {
                    assert!(
                        farey_distance(a, c) <= d + farey_distance(b, c),
                        "triangle inequality through {b}"
                    );
                }
            }
        }
    }

    #[test]
    fn distances_stable_under_window_growth() {
        let pairs = [((0i64, 1i64), (5i64, 7i64)), ((1, 2), (-4, 9)), ((3, 4), (1, 0))];
        for ((p1, q1), (p2, q2)) in pairs {
            let s = FareySlope::new(p1, q1).unwrap();
            let t = FareySlope::new(p2, q2).unwrap();
            let bound = (s.size() + t.size()).max(2);
            let small = FareyGraph::up_to(bound + 2).distance(s, t).unwrap();
            let large = FareyGraph::up_to(bound + 8).distance(s, t).unwrap();
            assert_eq!(small, large, "window growth must not shorten paths");
            assert_eq!(small, farey_distance(s, t));
        }
    }

    #[test]
    fn model_structure() {
        let model = TorusAcModel::up_to(5);
        assert!(model.no_short_curve_links());
        assert!(model.curves_have_unique_arc_neighbor());
        assert!(model.four_step_paths_are_farey_edges());
        let zero = FareySlope::new(0, 1).unwrap();
        let inf = FareySlope::infinity();
        assert_eq!(model.curve_distance(zero, inf), Some(3), "d_C + 2 = 1 + 2");
        assert_eq!(model.curve_distance(zero, zero), Some(0));
    }
}
