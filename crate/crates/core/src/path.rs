//! Discrete paths on a cone and the midpoint curve shortening flow.
//!
//! A path is a node chain with fixed off-vertex endpoints; its energy is
//! `N * Σ d(x_i, x_{i+1})²` with `d` the intrinsic local distance, so uniform
//! samplings of a geodesic of length `L` have energy exactly `L²`. The flow
//! relaxes interior nodes toward the local chord midpoint in a two-leg
//! development and captures nodes onto the apex when their legs wrap it.
//! Nodes sitting exactly on the apex never move: every neighborhood of the
//! apex meets all development sheets, so no chord move is canonical there,
//! and paths pinned at the apex are exactly the broken critical points of
//! the discrete energy.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cone::{
    chord_angle, local_distance_len, ConePoint, ConeSurface, PlanarPoint, APEX_GRAZE_TOL,
};
use crate::geodesic::{enumerate_classical, Geodesic, GeodesicError, GeodesicKind};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PathError {
    #[error("discrete paths need at least 2 segments, got {0}")]
    TooFewSegments(usize),
    #[error("discrete paths must start and end off the vertex")]
    VertexEndpoint,
    #[error("paths live on cones with different apex angles, {0} vs {1}")]
    SurfaceMismatch(f64, f64),
    #[error("paths have different node counts, {0} vs {1}")]
    NodeCountMismatch(usize, usize),
    #[error("relaxation step must lie in (0, 1], got {0}")]
    InvalidStep(f64),
    #[error("flow tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("sheet {sheet} has development angle {angle} outside (-π, π), no chord exists")]
    NoChordOnSheet { sheet: i64, angle: f64 },
    #[error("no sheet admits a chord between these endpoints")]
    NoChordSheets,
    #[error("blend parameter must lie in [0, 1], got {0}")]
    InvalidBlend(f64),
    #[error("corner radius must be positive and finite, got {0}")]
    InvalidCornerRadius(f64),
    #[error("corner node {0} must be an interior node")]
    InvalidCornerNode(usize),
    #[error(transparent)]
    Geodesic(#[from] GeodesicError),
}

/// Polygonal path on a cone with fixed endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscretePath {
    surface: ConeSurface,
    nodes: Vec<ConePoint>,
}

impl DiscretePath {
    /// Wrap an explicit node chain. Endpoints must be off the vertex and the
    /// chain must have at least two segments.
    pub fn from_nodes(surface: ConeSurface, nodes: Vec<ConePoint>) -> Result<Self, PathError> {
        if nodes.len() < 3 {
            return Err(PathError::TooFewSegments(nodes.len().saturating_sub(1)));
        }
        if nodes[0].is_vertex() || nodes[nodes.len() - 1].is_vertex() {
            return Err(PathError::VertexEndpoint);
        }
        Ok(Self { surface, nodes })
    }

    /// Uniform sampling of the classical geodesic on the given sheet: the
    /// development chord is split into equal planar segments and mapped back.
    pub fn chord_interpolation(
        surface: ConeSurface,
        p: ConePoint,
        q: ConePoint,
        sheet: i64,
        segments: usize,
    ) -> Result<Self, PathError> {
        if segments < 2 {
            return Err(PathError::TooFewSegments(segments));
        }
        if p.is_vertex() || q.is_vertex() {
            return Err(PathError::VertexEndpoint);
        }
        let angle = chord_angle(surface, p, q, sheet).expect("endpoints are off the vertex");
        if angle.abs() >= PI - APEX_GRAZE_TOL {
            return Err(PathError::NoChordOnSheet { sheet, angle });
        }
        let a = PlanarPoint::new(p.r(), 0.0);
        let b = PlanarPoint::from_polar(q.r(), angle);
        let mut nodes = Vec::with_capacity(segments + 1);
        nodes.push(p);
        for i in 1..segments {
            let t = i as f64 / segments as f64;
            nodes.push(from_frame(surface, p.theta(), a.lerp(b, t)));
        }
        nodes.push(q);
        Ok(Self { surface, nodes })
    }

    /// Polar interpolation on a chosen sheet: radii interpolate linearly and
    /// the angle sweeps the full development angle of that sheet. Useful as a
    /// wound initial condition; the sheet need not admit a chord.
    pub fn arc_interpolation(
        surface: ConeSurface,
        p: ConePoint,
        q: ConePoint,
        sheet: i64,
        segments: usize,
    ) -> Result<Self, PathError> {
        if segments < 2 {
            return Err(PathError::TooFewSegments(segments));
        }
        if p.is_vertex() || q.is_vertex() {
            return Err(PathError::VertexEndpoint);
        }
        let angle = chord_angle(surface, p, q, sheet).expect("endpoints are off the vertex");
        let mut nodes = Vec::with_capacity(segments + 1);
        nodes.push(p);
        for i in 1..segments {
            let t = i as f64 / segments as f64;
            let r = p.r() + t * (q.r() - p.r());
            let theta = p.theta() + t * angle;
            nodes.push(ConePoint::new(surface, r, theta).expect("finite polar data"));
        }
        nodes.push(q);
        Ok(Self { surface, nodes })
    }

    /// Uniform sampling of the broken geodesic: radial arms meeting at the
    /// apex, with the apex node placed so both arms have near-equal spacing.
    pub fn vertex_routed(
        surface: ConeSurface,
        p: ConePoint,
        q: ConePoint,
        segments: usize,
    ) -> Result<Self, PathError> {
        if segments < 2 {
            return Err(PathError::TooFewSegments(segments));
        }
        if p.is_vertex() || q.is_vertex() {
            return Err(PathError::VertexEndpoint);
        }
        let n = segments as f64;
        let m = ((n * p.r() / (p.r() + q.r())).round() as usize).clamp(1, segments - 1);
        let mut nodes = Vec::with_capacity(segments + 1);
        nodes.push(p);
        for i in 1..m {
            let r = p.r() * (m - i) as f64 / m as f64;
            nodes.push(ConePoint::new(surface, r, p.theta()).expect("finite polar data"));
        }
        nodes.push(ConePoint::vertex());
        for i in m + 1..segments {
            let r = q.r() * (i - m) as f64 / (segments - m) as f64;
            nodes.push(ConePoint::new(surface, r, q.theta()).expect("finite polar data"));
        }
        nodes.push(q);
        Ok(Self { surface, nodes })
    }

    /// The sheet's chord pinched to a corner at `corner_radius` near the apex.
    ///
    /// The corner sits on the ray through the chord's closest approach to the
    /// apex and both legs are straight in the development, so the path keeps
    /// the sheet's winding while passing arbitrarily close to the apex. Nodes
    /// are uniform per leg with the corner at node `corner_node`; with leg
    /// lengths `a` and `b` and `m = corner_node` the discrete energy is
    /// exactly `N(a²/m + b²/(N−m))`, strictly decreasing along the ray until
    /// the corner reaches the chord.
    pub fn pinched(
        surface: ConeSurface,
        p: ConePoint,
        q: ConePoint,
        sheet: i64,
        corner_radius: f64,
        corner_node: usize,
        segments: usize,
    ) -> Result<Self, PathError> {
        if segments < 2 {
            return Err(PathError::TooFewSegments(segments));
        }
        if p.is_vertex() || q.is_vertex() {
            return Err(PathError::VertexEndpoint);
        }
        if !corner_radius.is_finite() || corner_radius <= 0.0 {
            return Err(PathError::InvalidCornerRadius(corner_radius));
        }
        if corner_node == 0 || corner_node >= segments {
            return Err(PathError::InvalidCornerNode(corner_node));
        }
        let angle = chord_angle(surface, p, q, sheet).expect("endpoints are off the vertex");
        if angle.abs() >= PI - APEX_GRAZE_TOL {
            return Err(PathError::NoChordOnSheet { sheet, angle });
        }
        let a = PlanarPoint::new(p.r(), 0.0);
        let b = PlanarPoint::from_polar(q.r(), angle);
        let diff = PlanarPoint::new(b.x - a.x, b.y - a.y);
        let len2 = diff.x * diff.x + diff.y * diff.y;
        let foot = if len2 > 0.0 {
            (-(a.x * diff.x + a.y * diff.y) / len2).clamp(0.25, 0.75)
        } else {
            0.5
        };
        let beta = {
            let fx = a.x + foot * diff.x;
            let fy = a.y + foot * diff.y;
            if fx.hypot(fy) > 1e-12 {
                fy.atan2(fx)
            } else {
                angle / 2.0
            }
        };
        let corner = PlanarPoint::from_polar(corner_radius, beta);
        let m = corner_node;
        let mut nodes = Vec::with_capacity(segments + 1);
        nodes.push(p);
        for i in 1..=m {
            let t = i as f64 / m as f64;
            nodes.push(from_frame(surface, p.theta(), a.lerp(corner, t)));
        }
        for i in m + 1..segments {
            let t = (i - m) as f64 / (segments - m) as f64;
            nodes.push(from_frame(surface, p.theta(), corner.lerp(b, t)));
        }
        nodes.push(q);
        Ok(Self { surface, nodes })
    }

    pub fn surface(&self) -> ConeSurface {
        self.surface
    }

    pub fn nodes(&self) -> &[ConePoint] {
        &self.nodes
    }

    pub fn segments(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn endpoints(&self) -> (ConePoint, ConePoint) {
        (self.nodes[0], self.nodes[self.nodes.len() - 1])
    }

    pub fn length(&self) -> f64 {
        self.nodes
            .windows(2)
            .map(|w| local_distance_len(self.surface, w[0], w[1]))
            .sum()
    }

    /// Discrete energy `N * Σ d(x_i, x_{i+1})²`. Uniform geodesic samplings
    /// make this the squared length.
    pub fn discrete_energy(&self) -> f64 {
        let sum: f64 = self
            .nodes
            .windows(2)
            .map(|w| seg2(self.surface, w[0], w[1]))
            .sum();
        self.segments() as f64 * sum
    }

    /// Total development angle swept by the legs, or `None` when a node sits
    /// on the apex. Meaningful while every leg turns by less than half the
    /// apex angle, which holds for the resolutions used here.
    pub fn winding(&self) -> Option<f64> {
        let mut total = 0.0;
        for w in self.nodes.windows(2) {
            if w[0].is_vertex() || w[1].is_vertex() {
                return None;
            }
            total += self.surface.centered_angle(w[1].theta() - w[0].theta());
        }
        Some(total)
    }

    pub fn min_interior_radius(&self) -> f64 {
        self.nodes[1..self.nodes.len() - 1]
            .iter()
            .map(|p| p.r())
            .fold(f64::INFINITY, f64::min)
    }

    pub fn has_interior_vertex(&self) -> bool {
        self.nodes[1..self.nodes.len() - 1].iter().any(|p| p.is_vertex())
    }

    /// Radius under which a converged node counts as captured by the apex:
    /// twice the mean node spacing of the broken route.
    pub fn capture_radius(&self) -> f64 {
        let (p, q) = self.endpoints();
        2.0 * (p.r() + q.r()) / self.segments() as f64
    }

    fn check_comparable(&self, other: &DiscretePath) -> Result<(), PathError> {
        if self.surface.alpha() != other.surface.alpha() {
            return Err(PathError::SurfaceMismatch(
                self.surface.alpha(),
                other.surface.alpha(),
            ));
        }
        if self.nodes.len() != other.nodes.len() {
            return Err(PathError::NodeCountMismatch(
                self.nodes.len(),
                other.nodes.len(),
            ));
        }
        Ok(())
    }

    /// Uniform distance: max over node pairs of the local distance.
    pub fn path_distance(&self, other: &DiscretePath) -> Result<f64, PathError> {
        self.check_comparable(other)?;
        let mut max = 0.0f64;
        for (a, b) in self.nodes.iter().zip(&other.nodes) {
            max = max.max(local_distance_len(self.surface, *a, *b));
        }
        Ok(max)
    }

    /// Like [`path_distance`](Self::path_distance) but bails out with `None`
    /// as soon as a node pair exceeds `cutoff`.
    pub fn path_distance_within(
        &self,
        other: &DiscretePath,
        cutoff: f64,
    ) -> Result<Option<f64>, PathError> {
        self.check_comparable(other)?;
        let mut max = 0.0f64;
        for (a, b) in self.nodes.iter().zip(&other.nodes) {
            let d = local_distance_len(self.surface, *a, *b);
            if d > cutoff {
                return Ok(None);
            }
            max = max.max(d);
        }
        Ok(Some(max))
    }

    /// Nodewise interpolation toward `other`: each node moves fraction `t`
    /// along its local geodesic to the matching node.
    pub fn blend_toward(&self, other: &DiscretePath, t: f64) -> Result<DiscretePath, PathError> {
        self.check_comparable(other)?;
        if !(0.0..=1.0).contains(&t) || !t.is_finite() {
            return Err(PathError::InvalidBlend(t));
        }
        let nodes = self
            .nodes
            .iter()
            .zip(&other.nodes)
            .map(|(a, b)| interpolate_local(self.surface, *a, *b, t))
            .collect();
        DiscretePath::from_nodes(self.surface, nodes)
    }

    /// Seeded jitter of the interior: every node off the apex moves by a
    /// uniform square displacement in its local development, scaled by
    /// `amplitude` times the mean segment length. Endpoints and apex nodes
    /// stay, so pinned paths remain pinned.
    pub fn perturbed(&self, amplitude: f64, rng: &mut ChaCha8Rng) -> DiscretePath {
        let h = amplitude * self.length() / self.segments() as f64;
        let mut nodes = self.nodes.clone();
        for node in &mut nodes[1..self.nodes.len() - 1] {
            if node.is_vertex() {
                continue;
            }
            let dx: f64 = rng.random_range(-h..=h);
            let dy: f64 = rng.random_range(-h..=h);
            let moved = PlanarPoint::new(node.r() + dx, dy);
            *node = from_frame(self.surface, node.theta(), moved);
        }
        Self {
            surface: self.surface,
            nodes,
        }
    }
}

/// Map a development-frame planar point back to the cone, with the frame's
/// zero direction at angle `anchor`.
fn from_frame(surface: ConeSurface, anchor: f64, p: PlanarPoint) -> ConePoint {
    let r = p.norm();
    if r == 0.0 {
        return ConePoint::vertex();
    }
    ConePoint::new(surface, r, anchor + p.y.atan2(p.x)).expect("finite planar data")
}

/// Point a fraction `t` along the local geodesic from `a` to `b`: a planar
/// lerp in the development when the route is a chord, the radial arclength
/// point when it runs through the apex.
pub fn interpolate_local(surface: ConeSurface, a: ConePoint, b: ConePoint, t: f64) -> ConePoint {
    if a.is_vertex() || b.is_vertex() {
        return vertex_route_point(surface, a, b, t);
    }
    let d = surface.centered_angle(b.theta() - a.theta());
    if d.abs() < PI - APEX_GRAZE_TOL {
        let pa = PlanarPoint::new(a.r(), 0.0);
        let pb = PlanarPoint::from_polar(b.r(), d);
        from_frame(surface, a.theta(), pa.lerp(pb, t))
    } else {
        vertex_route_point(surface, a, b, t)
    }
}

fn vertex_route_point(surface: ConeSurface, a: ConePoint, b: ConePoint, t: f64) -> ConePoint {
    let s = t * (a.r() + b.r());
    if s < a.r() {
        ConePoint::new(surface, a.r() - s, a.theta()).expect("finite polar data")
    } else if s > a.r() {
        ConePoint::new(surface, s - a.r(), b.theta()).expect("finite polar data")
    } else {
        ConePoint::vertex()
    }
}

/// Squared local distance between consecutive nodes, via the centered angle.
fn seg2(surface: ConeSurface, a: ConePoint, b: ConePoint) -> f64 {
    if a.is_vertex() || b.is_vertex() {
        let d = a.r() + b.r();
        return d * d;
    }
    let c = surface.centered_angle(b.theta() - a.theta());
    if c.abs() < PI - APEX_GRAZE_TOL {
        a.r() * a.r() + b.r() * b.r() - 2.0 * a.r() * b.r() * c.cos()
    } else {
        let d = a.r() + b.r();
        d * d
    }
}

/// Relaxation target for an interior node, with the squared-length sums of
/// its two legs before and after. `None` when the node is pinned on the apex.
fn relax_node(
    surface: ConeSurface,
    a: ConePoint,
    x: ConePoint,
    b: ConePoint,
    step: f64,
) -> Option<(ConePoint, f64, f64)> {
    if x.is_vertex() {
        return None;
    }
    let cur2 = seg2(surface, a, x) + seg2(surface, x, b);
    let candidate = if a.is_vertex() || b.is_vertex() {
        best_capture(surface, a, b)
    } else {
        let psi1 = surface.centered_angle(x.theta() - a.theta());
        let psi2 = surface.centered_angle(b.theta() - x.theta());
        let psi = psi1 + psi2;
        if psi1.abs() < PI - APEX_GRAZE_TOL
            && psi2.abs() < PI - APEX_GRAZE_TOL
            && psi.abs() < PI - APEX_GRAZE_TOL
        {
            // Both legs develop into one planar chart around the node.
            let pa = PlanarPoint::new(a.r(), 0.0);
            let px = PlanarPoint::from_polar(x.r(), psi1);
            let pb = PlanarPoint::from_polar(b.r(), psi);
            let target = px.lerp(pa.lerp(pb, 0.5), step);
            from_frame(surface, a.theta(), target)
        } else {
            // The legs wrap the apex: the straight connection is blocked, so
            // the node either lands on the apex or on the radial route.
            best_capture(surface, a, b)
        }
    };
    let new2 = seg2(surface, a, candidate) + seg2(surface, candidate, b);
    Some((candidate, cur2, new2))
}

/// Better of the apex itself and the arclength midpoint of the radial route.
fn best_capture(surface: ConeSurface, a: ConePoint, b: ConePoint) -> ConePoint {
    let vertex = ConePoint::vertex();
    let mid = vertex_route_point(surface, a, b, 0.5);
    let v2 = seg2(surface, a, vertex) + seg2(surface, vertex, b);
    let m2 = seg2(surface, a, mid) + seg2(surface, mid, b);
    if v2 <= m2 {
        vertex
    } else {
        mid
    }
}

/// One full relaxation sweep: odd interior nodes, then even. Within a parity
/// class the touched legs are disjoint, so each accepted move lowers the
/// energy by its local difference exactly. The returned path never has higher
/// energy than the input.
pub fn curve_shorten_step(path: &DiscretePath, step: f64) -> Result<DiscretePath, PathError> {
    if !(step > 0.0 && step <= 1.0) {
        return Err(PathError::InvalidStep(step));
    }
    let mut nodes = path.nodes.clone();
    sweep(path.surface, &mut nodes, step);
    let out = DiscretePath {
        surface: path.surface,
        nodes,
    };
    if out.discrete_energy() > path.discrete_energy() {
        // Accumulated rounding in the fresh resummation can exceed the input
        // energy even though every accepted move lowered its own terms; keep
        // the exact guarantee by reverting.
        return Ok(path.clone());
    }
    Ok(out)
}

/// In-place sweep; returns (moved, sum of exact Σd² changes, all ≤ 0).
fn sweep(surface: ConeSurface, nodes: &mut [ConePoint], step: f64) -> (bool, f64) {
    let last = nodes.len() - 1;
    let mut moved = false;
    let mut delta = 0.0f64;
    for start in [1usize, 2] {
        let mut i = start;
        while i < last {
            if let Some((y, cur2, new2)) = relax_node(surface, nodes[i - 1], nodes[i], nodes[i + 1], step)
            {
                if new2 <= cur2 {
                    if y != nodes[i] {
                        moved = true;
                    }
                    nodes[i] = y;
                    delta += new2 - cur2;
                }
            }
            i += 2;
        }
    }
    (moved, delta)
}

/// Flow output: the final path, the energy after every sweep (exactly
/// non-increasing), and whether the stop came from the tolerance test.
#[derive(Debug, Clone)]
pub struct FlowResult {
    pub path: DiscretePath,
    pub energy_trace: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

/// [`FlowResult`] plus snapshots of the path at sweep 0, powers of two, and
/// the final sweep.
#[derive(Debug, Clone)]
pub struct FlowTrajectory {
    pub result: FlowResult,
    pub snapshots: Vec<(usize, DiscretePath)>,
}

/// Run the flow until the per-sweep relative energy drop falls to `tol` or
/// no node moves, up to `max_iter` sweeps.
pub fn flow_to_critical(
    path: &DiscretePath,
    tol: f64,
    max_iter: usize,
) -> Result<FlowResult, PathError> {
    run_flow(path, tol, max_iter, None)
}

/// [`flow_to_critical`] with snapshots recorded along the way.
pub fn flow_trajectory(
    path: &DiscretePath,
    tol: f64,
    max_iter: usize,
) -> Result<FlowTrajectory, PathError> {
    let mut snaps = Vec::new();
    let result = run_flow(path, tol, max_iter, Some(&mut snaps))?;
    Ok(FlowTrajectory {
        result,
        snapshots: snaps,
    })
}

fn run_flow(
    path: &DiscretePath,
    tol: f64,
    max_iter: usize,
    mut record: Option<&mut Vec<(usize, DiscretePath)>>,
) -> Result<FlowResult, PathError> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(PathError::InvalidTolerance(tol));
    }
    let surface = path.surface;
    let mut nodes = path.nodes.clone();
    let n = path.segments() as f64;
    let mut energy = path.discrete_energy();
    let mut trace = vec![energy];
    if let Some(r) = record.as_deref_mut() {
        r.push((0, path.clone()));
    }
    let mut iterations = 0;
    let mut converged = false;
    let mut next_snap = 1usize;
    for it in 1..=max_iter {
        let (moved, delta) = sweep(surface, &mut nodes, 1.0);
        // delta is a sum of exact nonpositive local differences, so the
        // maintained energy never increases; it tracks the fresh resummation
        // to rounding, which the trace tolerates and final users recompute.
        energy += n * delta;
        let prev = *trace.last().expect("trace starts nonempty");
        trace.push(energy);
        iterations = it;
        let done = !moved || (prev - energy) <= tol * prev.max(f64::MIN_POSITIVE);
        if let Some(r) = record.as_deref_mut() {
            if it == next_snap || done {
                if r.last().map(|(i, _)| *i) != Some(it) {
                    r.push((
                        it,
                        DiscretePath {
                            surface,
                            nodes: nodes.clone(),
                        },
                    ));
                }
                while next_snap <= it {
                    next_snap <<= 1;
                }
            }
        }
        if done {
            converged = true;
            break;
        }
    }
    if let Some(r) = record.as_deref_mut() {
        if r.last().map(|(i, _)| *i) != Some(iterations) {
            r.push((
                iterations,
                DiscretePath {
                    surface,
                    nodes: nodes.clone(),
                },
            ));
        }
    }
    Ok(FlowResult {
        path: DiscretePath { surface, nodes },
        energy_trace: trace,
        iterations,
        converged,
    })
}

/// Which enumerated geodesic a flowed path has landed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitClass {
    Classical { sheet: i64 },
    Broken,
    Unresolved,
}

/// Match a flowed path against an enumeration by energy, then confirm the
/// match by winding (classical) or apex contact (broken). Anything without a
/// unique confirmed match is `Unresolved`.
pub fn classify_limit(
    path: &DiscretePath,
    geodesics: &[Geodesic],
    energy_rel_tol: f64,
) -> LimitClass {
    let e = path.discrete_energy();
    let winding = path.winding();
    let touches_apex = path.has_interior_vertex() || path.min_interior_radius() <= path.capture_radius();
    let mut found: Option<LimitClass> = None;
    for g in geodesics {
        if (e - g.energy).abs() > energy_rel_tol * g.energy.max(e) {
            continue;
        }
        let confirmed = match g.kind {
            GeodesicKind::Classical { .. } => match (winding, g.development_angle) {
                (Some(w), Some(delta)) => {
                    !touches_apex
                        && (w - delta).abs() < 0.49 * path.surface.alpha().min(2.0 * PI)
                }
                _ => false,
            },
            GeodesicKind::Broken => touches_apex,
        };
        if confirmed {
            let class = match g.kind {
                GeodesicKind::Classical { sheet } => LimitClass::Classical { sheet },
                GeodesicKind::Broken => LimitClass::Broken,
            };
            if found.is_some() && found != Some(class) {
                return LimitClass::Unresolved;
            }
            found = Some(class);
        }
    }
    found.unwrap_or(LimitClass::Unresolved)
}

/// How to draw initial paths for flow experiments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SampleStrategy {
    /// Exact chord samplings, cycling through the admissible sheets.
    SheetChords,
    /// The broken sampling plus seeded wiggles that keep the apex node.
    VertexRouted,
    /// Seeded jitter of chord and broken samplings.
    Perturbed { amplitude: f64 },
}

/// Deterministic batch of initial paths between fixed endpoints.
pub fn sample_paths(
    surface: ConeSurface,
    p: ConePoint,
    q: ConePoint,
    segments: usize,
    count: usize,
    strategy: SampleStrategy,
    seed: u64,
) -> Result<Vec<DiscretePath>, PathError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    match strategy {
        SampleStrategy::SheetChords => {
            let chords = sheet_chords(surface, p, q, segments)?;
            if chords.is_empty() {
                return Err(PathError::NoChordSheets);
            }
            for i in 0..count {
                out.push(chords[i % chords.len()].clone());
            }
        }
        SampleStrategy::VertexRouted => {
            let base = DiscretePath::vertex_routed(surface, p, q, segments)?;
            for i in 0..count {
                if i == 0 {
                    out.push(base.clone());
                } else {
                    out.push(base.perturbed(0.3, &mut rng));
                }
            }
        }
        SampleStrategy::Perturbed { amplitude } => {
            let mut bases = sheet_chords(surface, p, q, segments)?;
            bases.push(DiscretePath::vertex_routed(surface, p, q, segments)?);
            for i in 0..count {
                let base = &bases[i % bases.len()];
                out.push(base.perturbed(amplitude, &mut rng));
            }
        }
    }
    Ok(out)
}

fn sheet_chords(
    surface: ConeSurface,
    p: ConePoint,
    q: ConePoint,
    segments: usize,
) -> Result<Vec<DiscretePath>, PathError> {
    let mut out = Vec::new();
    for g in enumerate_classical(surface, p, q)? {
        if let GeodesicKind::Classical { sheet } = g.kind {
            out.push(DiscretePath::chord_interpolation(surface, p, q, sheet, segments)?);
        }
    }
    Ok(out)
}
