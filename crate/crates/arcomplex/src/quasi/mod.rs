//! Quasi-isometry machinery: simplicial paths, rewriting arc-and-curve
//! paths into curve paths, graph distances on balls, slope models for the
//! once-punctured torus and the four-punctured sphere, and the inequality
//! verifier.

pub mod farey;

pub use farey::{farey_distance, FareyGraph, FareySlope, ModelVertex, TorusAcModel};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex::{build_ball, BallOptions, ComplexKind, SimplicialBall};
use crate::coords::{arc_base_strands, class_equal, ArcClass, ClassJson, CurveClass, VertexClass};
use crate::intersect::{disjoint, intersection_number};
use crate::registry::{carry_back_along, straighten, FlipRegistry};
use crate::strands::Carried;
use crate::surface::{SpecialCase, Surface};
use crate::triangulation::{edge_set_boundary, neighborhood_boundary};
use crate::{Error, Limits, Result};

/// Whether a path lives in the arc-and-curve graph or the curve graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PathKind {
    ArcCurve,
    Curve,
}

/// A simplicial path in a 1-skeleton.
#[derive(Debug, Clone)]
pub struct Path {
    pub kind: PathKind,
    pub vertices: Vec<VertexClass>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn to_json(&self, surface: Surface) -> PathJson {
        PathJson {
            surface: [surface.genus(), surface.punctures()],
            kind: self.kind,
            vertices: self.vertices.iter().map(|v| v.to_json()).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PathJson {
    pub surface: [u32; 2],
    pub kind: PathKind,
    pub vertices: Vec<ClassJson>,
}

/// Checks that consecutive entries are distinct and disjoint.
pub fn validate_ac_path(
    reg: &FlipRegistry,
    vertices: &[VertexClass],
    limits: &Limits,
) -> Result<()> {
    if vertices.is_empty() {
        return Err(Error::InvalidPath("empty vertex list".into()));
    }
    for w in vertices.windows(2) {
        if class_equal(&w[0], &w[1]) {
            return Err(Error::InvalidPath("consecutive vertices equal".into()));
        }
        if !disjoint(reg, &w[0], &w[1], limits)? {
            return Err(Error::InvalidPath(
                "consecutive vertices are not disjoint".into(),
            ));
        }
    }
    Ok(())
}

/// Result of path rewriting.
#[derive(Debug, Clone)]
pub struct Rewritten {
    pub path: Path,
    pub warnings: Vec<String>,
}

/// Rewrites a valid arc-and-curve path with curve endpoints into a curve
/// path with the same endpoints and at most twice the length.
///
/// The scan keeps curve vertices; an arc followed by a curve is replaced by
/// an essential boundary curve of the arc's thickened neighborhood; a pair
/// of consecutive arcs is replaced by one such curve, or by a curve from
/// the arc together with one from the thickening of the pair, whichever
/// verifies disjoint. The candidate set covers every replacement the
/// case analysis needs, so a missing candidate on a generic surface is an
/// implementation bug, not a data condition.
pub fn rewrite_to_curve_path(
    reg: &FlipRegistry,
    input: &[VertexClass],
    limits: &Limits,
) -> Result<Rewritten> {
    let surface = reg.surface();
    let mut warnings = Vec::new();
    match surface.special_case() {
        SpecialCase::Generic => {}
        SpecialCase::SmallOther => {
            warnings.push(format!(
                "surface {surface} is outside the proved cases; rewriting proceeds without a guarantee"
            ));
        }
        other => {
            return Err(Error::InvalidInput(format!(
                "path rewriting needs a generic surface, got {other:?}"
            )));
        }
    }
    validate_ac_path(reg, input, limits)?;
    if !input.first().map(|v| v.is_curve()).unwrap_or(false)
        || !input.last().map(|v| v.is_curve()).unwrap_or(false)
    {
        return Err(Error::InvalidPath("endpoints must be curves".into()));
    }

    let boundaries = |arc: &ArcClass| -> Result<Vec<VertexClass>> {
        Ok(neighborhood_boundary(reg, arc)?
            .into_iter()
            .map(VertexClass::Curve)
            .collect())
    };
    let ok = |a: &VertexClass, b: &VertexClass| -> Result<bool> {
        Ok(!class_equal(a, b) && disjoint(reg, a, b, limits)?)
    };

    let mut out: Vec<VertexClass> = vec![input[0].clone()];
    let mut i = 1;
    while i < input.len() {
        let prev = out.last().unwrap().clone();
        match &input[i] {
            VertexClass::Curve(_) => {
                if class_equal(&prev, &input[i]) {
                    i += 1; // the replacement already reached this curve
                    continue;
                }
                debug_assert!(disjoint(reg, &prev, &input[i], limits)?);
                out.push(input[i].clone());
                i += 1;
            }
            VertexClass::Arc(a) => {
                let next = input.get(i + 1).ok_or_else(|| {
                    Error::InvalidPath("path ends with an arc".into())
                })?;
                // A degenerate shortcut: the neighbors of the arc are
                // already adjacent (or equal).
                if class_equal(&prev, next) || ok(&prev, next)? {
                    i += 1;
                    continue;
                }
                match next {
                    VertexClass::Curve(_) => {
                        // x a z -> x v z with v from the thickening of a.
                        let mut chosen = None;
                        for v in boundaries(a)? {
                            if ok(&v, &prev)? && ok(&v, next)? {
                                chosen = Some(v);
                                break;
                            }
                        }
                        let v = chosen.ok_or(Error::NoCandidate {
                            left: i - 1,
                            right: i + 1,
                        })?;
                        out.push(v);
                        i += 1;
                    }
                    VertexClass::Arc(b) => {
                        // x a b ... -> x z b ..., or x z v b ... with v from
                        // the thickened pair; when the only boundary of a is
                        // x itself the replacement degenerates to x v b.
                        let barc = VertexClass::Arc(b.clone());
                        let zs: Vec<VertexClass> = boundaries(a)?
                            .into_iter()
                            .filter(|z| class_equal(z, &prev) || ok(z, &prev).unwrap_or(false))
                            .collect();
                        let mut done = false;
                        for z in &zs {
                            if !class_equal(z, &prev) && ok(z, &barc)? {
                                out.push(z.clone());
                                i += 1; // consume a; b stays
                                done = true;
                                break;
                            }
                        }
                        if !done {
                            let pair = pair_boundaries(reg, a, b, limits)?;
                            'outer: for z in &zs {
                                let z_is_prev = class_equal(z, &prev);
                                for v in &pair {
                                    let v = VertexClass::Curve(v.clone());
                                    if ok(&v, z)? && ok(&v, &barc)? && !class_equal(&v, &prev) {
                                        if !z_is_prev {
                                            out.push(z.clone());
                                        }
                                        out.push(v);
                                        i += 1;
                                        done = true;
                                        break 'outer;
                                    }
                                }
                            }
                        }
                        if !done {
                            return Err(Error::NoCandidate {
                                left: i,
                                right: i + 1,
                            });
                        }
                    }
                }
            }
        }
    }
    if !class_equal(out.last().unwrap(), input.last().unwrap()) {
        out.push(input.last().unwrap().clone());
    }
    // Validity of the result.
    if out.len() > 2 * input.len() {
        return Err(Error::InvalidPath(format!(
            "rewritten path of length {} exceeds twice the input {}",
            out.len() - 1,
            input.len() - 1
        )));
    }
    for w in out.windows(2) {
        if class_equal(&w[0], &w[1]) || !disjoint(reg, &w[0], &w[1], limits)? {
            return Err(Error::InvalidPath(
                "rewriting produced an invalid pair".into(),
            ));
        }
    }
    if out.iter().any(|v| !v.is_curve()) {
        return Err(Error::InvalidPath("rewriting left an arc in place".into()));
    }
    Ok(Rewritten {
        path: Path {
            kind: PathKind::Curve,
            vertices: out,
        },
        warnings,
    })
}

/// Essential boundary curves of a thickened pair of disjoint arcs,
/// computed in a triangulation containing both as edges.
pub fn pair_boundaries(
    reg: &FlipRegistry,
    a: &ArcClass,
    b: &ArcClass,
    limits: &Limits,
) -> Result<Vec<CurveClass>> {
    let ca = arc_base_strands(reg, a)?;
    let cb = arc_base_strands(reg, b)?;
    let st = straighten(reg.base(), &[ca, cb], limits)?;
    let comps = edge_set_boundary(&st.tri, &st.edges)?;
    let mut out: Vec<CurveClass> = Vec::new();
    for comp in comps {
        let carried = carry_back_along(reg.base(), &st.flips, Carried::Strands(comp))?;
        let vector = match carried {
            Carried::Strands(s) => s.vector(),
            Carried::EdgeMarker(_) => unreachable!("closed boundary curve"),
        };
        if let Ok(curve) = CurveClass::from_vector(reg.base(), vector) {
            if !out.contains(&curve) {
                out.push(curve);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Shortest-path length between two ball vertices in the 1-skeleton, with
/// an exactness flag: true when the distance provably agrees with the
/// infinite complex because every vertex nearer than the far endpoint has
/// trusted link coverage.
pub fn bfs_distance(ball: &SimplicialBall, x: usize, y: usize) -> Result<(u32, bool)> {
    let dist = bfs_from(ball, x, None)?;
    let d = dist[y].ok_or(Error::Unreachable(x, y))?;
    let exact = (0..ball.len()).all(|u| match dist[u] {
        Some(du) if du < d => ball.vertices()[u].complete,
        _ => true,
    });
    Ok((d, exact))
}

/// One shortest path between two ball vertices.
pub fn bfs_path(ball: &SimplicialBall, x: usize, y: usize) -> Result<Vec<usize>> {
    ball.vertex(x)?;
    ball.vertex(y)?;
    let mut parent: Vec<Option<usize>> = vec![None; ball.len()];
    let mut dist: Vec<Option<u32>> = vec![None; ball.len()];
    dist[x] = Some(0);
    let mut queue = std::collections::VecDeque::from([x]);
    while let Some(v) = queue.pop_front() {
        if v == y {
            break;
        }
        for w in ball.neighbors(v) {
            if dist[w].is_none() {
                dist[w] = Some(dist[v].unwrap() + 1);
                parent[w] = Some(v);
                queue.push_back(w);
            }
        }
    }
    if dist[y].is_none() {
        return Err(Error::Unreachable(x, y));
    }
    let mut path = vec![y];
    let mut v = y;
    while let Some(p) = parent[v] {
        path.push(p);
        v = p;
    }
    path.reverse();
    Ok(path)
}

/// Distances restricted to the curve vertices (the curve-complex graph on
/// generic surfaces, where adjacency is disjointness).
pub fn curve_distance_in_ball(ball: &SimplicialBall, x: usize, y: usize) -> Result<(u32, bool)> {
    if !ball.vertices()[x].class.is_curve() || !ball.vertices()[y].class.is_curve() {
        return Err(Error::InvalidInput("curve distance needs curve vertices".into()));
    }
    let dist = bfs_from(ball, x, Some(&|v: usize| ball.vertices()[v].class.is_curve()))?;
    let d = dist[y].ok_or(Error::Unreachable(x, y))?;
    let exact = (0..ball.len()).all(|u| match dist[u] {
        Some(du) if du < d => ball.vertices()[u].complete,
        _ => true,
    });
    Ok((d, exact))
}

fn bfs_from(
    ball: &SimplicialBall,
    x: usize,
    filter: Option<&dyn Fn(usize) -> bool>,
) -> Result<Vec<Option<u32>>> {
    ball.vertex(x)?;
    let allowed = |v: usize| filter.map_or(true, |f| f(v));
    if !allowed(x) {
        return Err(Error::InvalidInput("source filtered out".into()));
    }
    let mut dist: Vec<Option<u32>> = vec![None; ball.len()];
    dist[x] = Some(0);
    let mut queue = std::collections::VecDeque::from([x]);
    while let Some(v) = queue.pop_front() {
        for w in ball.neighbors(v) {
            if allowed(w) && dist[w].is_none() {
                dist[w] = Some(dist[v].unwrap() + 1);
                queue.push_back(w);
            }
        }
    }
    Ok(dist)
}

// ---------------------------------------------------------------------------
// Slope bookkeeping for the two special surfaces
// ---------------------------------------------------------------------------

/// Slope of an arc on the once-punctured torus, in the marking that calls
/// the base edges 0/1, 1/0 and 1/1.
pub fn torus_arc_slope(arc: &ArcClass) -> Result<FareySlope> {
    let v = arc.vector();
    if v.len() != 3 {
        return Err(Error::InvalidInput("not a torus arc".into()));
    }
    if let Some(e) = arc.as_base_edge() {
        return FareySlope::new([0, 1, 1][e], [1, 0, 1][e]);
    }
    recover_slope(v[0] + 1, v[1] + 1, v[2] + 1)
}

/// Slope of a curve on the once-punctured torus in the same marking.
pub fn torus_curve_slope(curve: &CurveClass) -> Result<FareySlope> {
    let v = curve.vector();
    if v.len() != 3 {
        return Err(Error::InvalidInput("not a torus curve".into()));
    }
    recover_slope(v[0] as i64, v[1] as i64, v[2] as i64)
}

/// Solves |p| = a, |q| = b, |p - q| = c for a slope.
fn recover_slope(a: i64, b: i64, c: i64) -> Result<FareySlope> {
    if c == (a - b).abs() {
        FareySlope::new(a, b)
    } else if c == a + b {
        FareySlope::new(-a, b)
    } else {
        Err(Error::InvalidCoordinates(format!(
            "no slope has |p|={a}, |q|={b}, |p-q|={c}"
        )))
    }
}

/// The three reference curves on the four-punctured sphere: boundaries of
/// neighborhoods of arcs from one puncture to the other three. They
/// pairwise intersect twice and pin the slope marking.
pub struct SphereMarking {
    refs: [CurveClass; 3], // slope 0, infinity, 1
}

impl SphereMarking {
    pub fn new(reg: &FlipRegistry, limits: &Limits) -> Result<SphereMarking> {
        if (reg.surface().genus(), reg.surface().punctures()) != (0, 4) {
            return Err(Error::InvalidInput("sphere marking needs S_{0,4}".into()));
        }
        let arc_joining = |p: u32, q: u32| -> Result<&ArcClass> {
            reg.arcs()
                .iter()
                .find(|a| a.endpoints() == (p.min(q), p.max(q)))
                .ok_or_else(|| Error::RegistryMiss(format!("no arc joining {p},{q}")))
        };
        let boundary_of = |p: u32, q: u32| -> Result<CurveClass> {
            let curves = neighborhood_boundary(reg, arc_joining(p, q)?)?;
            curves
                .into_iter()
                .next()
                .ok_or_else(|| Error::InvalidInput("no essential boundary".into()))
        };
        // slope infinity separates {0,1}; slope 0 separates {0,2}; slope 1
        // separates {0,3}.
        let c_inf = boundary_of(0, 1)?;
        let c_0 = boundary_of(0, 2)?;
        let c_1 = boundary_of(0, 3)?;
        let marking = SphereMarking {
            refs: [c_0, c_inf, c_1],
        };
        // The references must pairwise intersect twice.
        for i in 0..3 {
            for j in i + 1..3 {
                let a = VertexClass::Curve(marking.refs[i].clone());
                let b = VertexClass::Curve(marking.refs[j].clone());
                if intersection_number(reg, &a, &b, limits)? != 2 {
                    return Err(Error::InvalidCoordinates(
                        "reference curves do not intersect twice".into(),
                    ));
                }
            }
        }
        Ok(marking)
    }

    /// Slope of a curve class: intersection numbers with the references,
    /// halved.
    pub fn slope(
        &self,
        reg: &FlipRegistry,
        curve: &CurveClass,
        limits: &Limits,
    ) -> Result<FareySlope> {
        let x = VertexClass::Curve(curve.clone());
        let i_with = |r: &CurveClass| -> Result<i64> {
            let v = intersection_number(reg, &x, &VertexClass::Curve(r.clone()), limits)?;
            if v % 2 != 0 {
                return Err(Error::InvalidCoordinates(
                    "odd intersection with a reference curve".into(),
                ));
            }
            Ok((v / 2) as i64)
        };
        let a = i_with(&self.refs[0])?;
        let b = i_with(&self.refs[1])?;
        let c = i_with(&self.refs[2])?;
        if a == 0 && b == 0 && c == 0 {
            // the curve is one of the references
            for (k, r) in self.refs.iter().enumerate() {
                if r == curve {
                    return FareySlope::new([0, 1, 1][k], [1, 0, 1][k]);
                }
            }
        }
        recover_slope(a, b, c)
    }
}

// ---------------------------------------------------------------------------
// Inequality verification
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InequalityOptions {
    pub samples: usize,
    pub seed: u64,
    pub radius: u32,
    pub weight: u64,
    /// Slope window for the Farey cases.
    pub max_denominator: i64,
}

impl Default for InequalityOptions {
    fn default() -> Self {
        InequalityOptions {
            samples: 50,
            seed: 7,
            radius: 3,
            weight: 10,
            max_denominator: 6,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SampleOutcome {
    pub id: usize,
    pub left: String,
    pub right: String,
    pub d_c: u32,
    pub d_ac: u32,
    pub pass: bool,
    pub note: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct InequalityReport {
    pub surface: [u32; 2],
    pub case: String,
    /// "checked" or "report-only" (surfaces outside the proved cases).
    pub mode: String,
    pub samples: Vec<SampleOutcome>,
    pub passes: usize,
    pub failures: usize,
    pub skips: usize,
    pub warnings: Vec<String>,
}

/// Samples vertex pairs and checks the case-appropriate inequality between
/// curve-graph and arc-and-curve-graph distances; on generic surfaces the
/// factor-two bound is additionally confirmed constructively by replaying
/// the path rewriting on extracted geodesics.
pub fn verify_inequalities(
    surface: Surface,
    opts: &InequalityOptions,
    limits: &Limits,
) -> Result<InequalityReport> {
    match surface.special_case() {
        SpecialCase::Farey11 => verify_farey11(surface, opts),
        SpecialCase::Sphere04 => verify_sphere04(surface, opts, limits),
        SpecialCase::Generic => verify_generic(surface, opts, limits, "checked"),
        SpecialCase::SmallOther => verify_generic(surface, opts, limits, "report-only"),
        other => Err(Error::InvalidInput(format!(
            "no inequality regime for {other:?}"
        ))),
    }
}

fn report_skeleton(surface: Surface, case: &str, mode: &str) -> InequalityReport {
    InequalityReport {
        surface: [surface.genus(), surface.punctures()],
        case: case.into(),
        mode: mode.into(),
        samples: Vec::new(),
        passes: 0,
        failures: 0,
        skips: 0,
        warnings: Vec::new(),
    }
}

fn finish(mut report: InequalityReport) -> InequalityReport {
    report.passes = report.samples.iter().filter(|s| s.pass).count();
    report.failures = report.samples.len() - report.passes;
    report
}

fn verify_farey11(surface: Surface, opts: &InequalityOptions) -> Result<InequalityReport> {
    let mut report = report_skeleton(surface, "d_C <= d_AC <= d_C + 2 (equality d_AC = d_C + 2)", "checked");
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let d = opts.max_denominator;
    let model = TorusAcModel::up_to(4 * d.max(1) + 4);
    if !(model.no_short_curve_links()
        && model.curves_have_unique_arc_neighbor()
        && model.four_step_paths_are_farey_edges())
    {
        report
            .warnings
            .push("model structural properties failed".into());
    }
    let mut id = 0;
    let mut guard = 0;
    while report.samples.len() < opts.samples && guard < opts.samples * 200 {
        guard += 1;
        let s = FareySlope::new(rng.gen_range(-d..=d), rng.gen_range(0..=d));
        let t = FareySlope::new(rng.gen_range(-d..=d), rng.gen_range(0..=d));
        let (Ok(s), Ok(t)) = (s, t) else { continue };
        let d_c = farey_distance(s, t);
        if d_c > 5 {
            report.skips += 1;
            continue;
        }
        let Some(d_ac) = model.curve_distance(s, t) else {
            report.skips += 1;
            continue;
        };
        let pass = if s == t {
            d_c == 0 && d_ac == 0
        } else {
            d_ac == d_c + 2
        };
        report.samples.push(SampleOutcome {
            id,
            left: s.to_string(),
            right: t.to_string(),
            d_c,
            d_ac,
            pass,
            note: if s == t { "equal slopes".into() } else { String::new() },
        });
        id += 1;
    }
    Ok(finish(report))
}

fn verify_sphere04(
    surface: Surface,
    opts: &InequalityOptions,
    limits: &Limits,
) -> Result<InequalityReport> {
    let mut report = report_skeleton(surface, "d_C/2 <= d_AC <= d_C + 2", "checked");
    let ball = build_ball(
        surface,
        ComplexKind::ArcCurve,
        BallOptions::new(opts.radius, opts.weight),
        limits,
    )?;
    let reg = ball.registry().expect("triangulable surface");
    let marking = SphereMarking::new(reg, limits)?;
    let curves: Vec<usize> = (0..ball.len())
        .filter(|&v| ball.vertices()[v].class.is_curve())
        .collect();
    if curves.len() < 2 {
        report.warnings.push("not enough curve vertices".into());
        return Ok(finish(report));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut id = 0;
    let mut guard = 0;
    while report.samples.len() < opts.samples && guard < opts.samples * 200 {
        guard += 1;
        let x = curves[rng.gen_range(0..curves.len())];
        let y = curves[rng.gen_range(0..curves.len())];
        let (d_ac, exact) = match bfs_distance(&ball, x, y) {
            Ok(v) => v,
            Err(_) => {
                report.skips += 1;
                continue;
            }
        };
        if !exact {
            report.skips += 1;
            continue;
        }
        let cx = match &ball.vertices()[x].class {
            VertexClass::Curve(c) => c.clone(),
            _ => unreachable!(),
        };
        let cy = match &ball.vertices()[y].class {
            VertexClass::Curve(c) => c.clone(),
            _ => unreachable!(),
        };
        let sx = marking.slope(reg, &cx, limits)?;
        let sy = marking.slope(reg, &cy, limits)?;
        let d_c = farey_distance(sx, sy);
        let pass = d_c <= 2 * d_ac && d_ac <= d_c + 2;
        report.samples.push(SampleOutcome {
            id,
            left: sx.to_string(),
            right: sy.to_string(),
            d_c,
            d_ac,
            pass,
            note: String::new(),
        });
        id += 1;
    }
    Ok(finish(report))
}

fn verify_generic(
    surface: Surface,
    opts: &InequalityOptions,
    limits: &Limits,
    mode: &str,
) -> Result<InequalityReport> {
    let mut report = report_skeleton(surface, "d_C/2 <= d_AC <= d_C, rewriting <= 2 d_AC", mode);
    let ball = build_ball(
        surface,
        ComplexKind::ArcCurve,
        BallOptions::new(opts.radius, opts.weight),
        limits,
    )?;
    let reg = ball.registry().expect("triangulable surface");
    let curves: Vec<usize> = (0..ball.len())
        .filter(|&v| ball.vertices()[v].class.is_curve())
        .collect();
    if curves.len() < 2 {
        report.warnings.push("not enough curve vertices".into());
        return Ok(finish(report));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut id = 0;
    let mut guard = 0;
    while report.samples.len() < opts.samples && guard < opts.samples * 200 {
        guard += 1;
        let x = curves[rng.gen_range(0..curves.len())];
        let y = curves[rng.gen_range(0..curves.len())];
        let Ok((d_ac, ac_exact)) = bfs_distance(&ball, x, y) else {
            report.skips += 1;
            continue;
        };
        let Ok((d_c, c_exact)) = curve_distance_in_ball(&ball, x, y) else {
            report.skips += 1;
            continue;
        };
        if !ac_exact || !c_exact {
            report.skips += 1;
            continue;
        }
        let mut pass = d_c <= 2 * d_ac && d_ac <= d_c;
        let mut note = String::new();
        // Constructive check: rewrite an extracted geodesic.
        if surface.special_case() == SpecialCase::Generic && x != y {
            let path_indices = bfs_path(&ball, x, y)?;
            let path: Vec<VertexClass> = path_indices
                .iter()
                .map(|&v| ball.vertices()[v].class.clone())
                .collect();
            match rewrite_to_curve_path(reg, &path, limits) {
                Ok(rw) => {
                    let bound = 2 * (path.len() - 1);
                    if rw.path.len() > bound {
                        pass = false;
                        note = format!(
                            "rewriting gave length {} > 2L = {bound}",
                            rw.path.len()
                        );
                    }
                }
                Err(e) => {
                    pass = false;
                    note = format!("rewriting failed: {e}");
                }
            }
        }
        report.samples.push(SampleOutcome {
            id,
            left: format!("v{x}"),
            right: format!("v{y}"),
            d_c,
            d_ac,
            pass,
            note,
        });
        id += 1;
    }
    Ok(finish(report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry::flip_ball;

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn torus_slopes_recover_and_match_intersections() {
        let reg = flip_ball(Surface::new(1, 1), 4, &limits()).unwrap();
        let arcs: Vec<(usize, FareySlope)> = reg
            .arcs()
            .iter()
            .enumerate()
            .map(|(i, a)| (i, torus_arc_slope(a).unwrap()))
            .collect();
        // Distinct arcs have distinct slopes.
        for (i, si) in &arcs {
            for (j, sj) in &arcs {
                if i < j {
                    assert_ne!(si, sj, "arcs {i} and {j} share slope {si}");
                }
            }
        }
        // The machinery's intersection numbers realize |det| - 1.
        let lim = limits();
        for (i, si) in arcs.iter().take(10) {
            for (j, sj) in arcs.iter().take(10) {
                if i >= j {
                    continue;
                }
                let a = VertexClass::Arc(reg.arc(*i).clone());
                let b = VertexClass::Arc(reg.arc(*j).clone());
                let got = intersection_number(&reg, &a, &b, &lim).unwrap();
                assert_eq!(
                    got,
                    (si.det(sj) - 1) as u64,
                    "i(arc {si}, arc {sj})"
                );
            }
        }
    }

    #[test]
    fn torus_curve_slopes_match_intersections() {
        let reg = flip_ball(Surface::new(1, 1), 1, &limits()).unwrap();
        let curves = crate::complex::enumerate_curves(reg.base(), 6);
        let lim = limits();
        for a in curves.iter() {
            let sa = torus_curve_slope(a).unwrap();
            for b in curves.iter() {
                let sb = torus_curve_slope(b).unwrap();
                let x = VertexClass::Curve(a.clone());
                let y = VertexClass::Curve(b.clone());
                let got = intersection_number(&reg, &x, &y, &lim).unwrap();
                assert_eq!(got, sa.det(&sb) as u64, "i(curve {sa}, curve {sb})");
            }
        }
    }

    #[test]
    fn model_matches_machinery_adjacency() {
        let lim = limits();
        let ball = build_ball(
            Surface::new(1, 1),
            ComplexKind::ArcCurve,
            BallOptions::new(4, 10),
            &lim,
        )
        .unwrap();
        let model = TorusAcModel::up_to(24);
        let mut checked = 0;
        for i in 0..ball.len() {
            for j in i + 1..ball.len() {
                let si = ball_slope(&ball, i);
                let sj = ball_slope(&ball, j);
                let (Some((si, ivc)), Some((sj, jvc))) = (si, sj) else {
                    continue;
                };
                if si.q() > 5 || sj.q() > 5 || si.p().abs() > 5 || sj.p().abs() > 5 {
                    continue;
                }
                let mi = model.graph.index(si).unwrap();
                let mj = model.graph.index(sj).unwrap();
                let mv = |curve: bool, k: usize| {
                    if curve {
                        ModelVertex::Curve(k)
                    } else {
                        ModelVertex::Arc(k)
                    }
                };
                assert_eq!(
                    ball.adjacent(i, j),
                    model.adjacent(mv(ivc, mi), mv(jvc, mj)),
                    "adjacency of {si}({ivc}) and {sj}({jvc})"
                );
                checked += 1;
            }
        }
        assert!(checked > 50, "compared only {checked} pairs");
    }

    fn ball_slope(ball: &SimplicialBall, v: usize) -> Option<(FareySlope, bool)> {
        match &ball.vertices()[v].class {
            VertexClass::Curve(c) => torus_curve_slope(c).ok().map(|s| (s, true)),
            VertexClass::Arc(a) => torus_arc_slope(a).ok().map(|s| (s, false)),
        }
    }

    #[test]
    fn distinct_torus_curves_are_far_apart() {
        let lim = limits();
        let ball = build_ball(
            Surface::new(1, 1),
            ComplexKind::ArcCurve,
            BallOptions::new(3, 8),
            &lim,
        )
        .unwrap();
        let curves: Vec<usize> = (0..ball.len())
            .filter(|&v| ball.vertices()[v].class.is_curve())
            .collect();
        assert!(curves.len() >= 2);
        for &x in curves.iter().take(3) {
            for &y in curves.iter().take(3) {
                if x == y {
                    continue;
                }
                if let Ok((d, _)) = bfs_distance(&ball, x, y) {
                    assert!(d >= 3, "distinct torus curves are at distance >= 3");
                }
            }
        }
    }

    #[test]
    fn rewrite_small_paths_on_s05() {
        let lim = limits();
        let ball = build_ball(
            Surface::new(0, 5),
            ComplexKind::ArcCurve,
            BallOptions::new(2, 8),
            &lim,
        )
        .unwrap();
        let reg = ball.registry().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let curves: Vec<usize> = (0..ball.len())
            .filter(|&v| ball.vertices()[v].class.is_curve())
            .collect();
        let mut done = 0;
        let mut guard = 0;
        while done < 10 && guard < 5000 {
            guard += 1;
            // random walk from a curve to a curve
            let start = curves[rng.gen_range(0..curves.len())];
            let mut walk = vec![start];
            for _ in 0..7 {
                let nbrs = ball.neighbors(*walk.last().unwrap());
                if nbrs.is_empty() {
                    break;
                }
                let next = nbrs[rng.gen_range(0..nbrs.len())];
                if walk.len() >= 2 && walk[walk.len() - 2] == next {
                    continue;
                }
                walk.push(next);
                if walk.len() >= 3 && ball.vertices()[next].class.is_curve() {
                    break;
                }
            }
            if walk.len() < 3 || !ball.vertices()[*walk.last().unwrap()].class.is_curve() {
                continue;
            }
            let path: Vec<VertexClass> = walk
                .iter()
                .map(|&v| ball.vertices()[v].class.clone())
                .collect();
            if validate_ac_path(reg, &path, &lim).is_err() {
                continue;
            }
            let rewritten = rewrite_to_curve_path(reg, &path, &lim).unwrap();
            assert!(rewritten.path.len() <= 2 * (path.len() - 1));
            assert!(rewritten.warnings.is_empty());
            assert!(class_equal(
                rewritten.path.vertices.first().unwrap(),
                path.first().unwrap()
            ));
            assert!(class_equal(
                rewritten.path.vertices.last().unwrap(),
                path.last().unwrap()
            ));
            done += 1;
        }
        assert!(done >= 5, "rewrote only {done} sampled paths");
    }

    #[test]
    fn farey11_report_is_all_equalities() {
        let opts = InequalityOptions {
            samples: 20,
            seed: 3,
            max_denominator: 4,
            ..Default::default()
        };
        let report = verify_inequalities(Surface::new(1, 1), &opts, &limits()).unwrap();
        assert_eq!(report.failures, 0, "failures: {:?}", report.samples);
        assert!(report.passes >= 20);
    }
}
