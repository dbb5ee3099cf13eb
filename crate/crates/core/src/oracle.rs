//! Independent brute-force checks for the fast paths.
//!
//! The grid oracle rebuilds geodesic lengths from nothing but the flat metric:
//! each sheet's development strip is meshed with near-square polar cells
//! (geometric ring spacing keeps cells isotropic at every radius), endpoints
//! land exactly on grid nodes by fitting the effective steps, and an A*
//! search with an exact-distance heuristic returns the shortest grid path in
//! that homotopy class. The homology oracle redoes relative ranks by dense
//! Gaussian elimination on bitmask columns, with none of the sparse pivot
//! bookkeeping of the production path. Seeded generators for random filtered
//! complexes and generic cone scenarios live here too, shared by the check
//! suites.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cone::{chord_angle, ConePoint, ConeSurface};
use crate::homology::{FilteredComplex, HomologyError};

/// Stencil radius: moves reach up to this many rings and columns at once.
/// With near-square cells the direction fan is then dense enough that the
/// detour forced on an arbitrary straight segment stays below 0.3%.
const STENCIL: i64 = 7;

/// A sheet is searched when its development angle is below `π` plus this
/// margin; way beyond `π` the wrap length only grows, so nothing is learned.
const SHEET_MARGIN: f64 = 0.25;

/// Relative shortfall against `r_p + r_q` required to call a grid path a
/// classical geodesic.
const COUNT_MARGIN: f64 = 0.005;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("grid oracle requires both endpoints off the vertex")]
    VertexEndpoint,
    #[error("{which} step must be positive and finite, got {value}")]
    InvalidStep { which: &'static str, value: f64 },
    #[error("endpoints do not snap onto the grid: {0}")]
    SnapFailure(String),
    #[error("grid search exhausted without reaching the target")]
    Unreachable,
    #[error("exhaustive homology handles at most 64 simplices, got {0}")]
    TooLarge(usize),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

/// Mesh resolution request. The effective steps are refitted per sheet, never
/// by more than a factor of two, so that both endpoints are grid nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub radial_step: f64,
    pub angular_step: f64,
}

impl GridSpec {
    pub fn new(radial_step: f64, angular_step: f64) -> Result<Self, OracleError> {
        if !radial_step.is_finite() || radial_step <= 0.0 {
            return Err(OracleError::InvalidStep {
                which: "radial",
                value: radial_step,
            });
        }
        if !angular_step.is_finite() || angular_step <= 0.0 {
            return Err(OracleError::InvalidStep {
                which: "angular",
                value: angular_step,
            });
        }
        Ok(Self {
            radial_step,
            angular_step,
        })
    }

    /// Uniform resolution `step` in both directions.
    pub fn isotropic(step: f64) -> Result<Self, OracleError> {
        Self::new(step, step)
    }

    pub fn halved(&self) -> Self {
        Self {
            radial_step: self.radial_step / 2.0,
            angular_step: self.angular_step / 2.0,
        }
    }

    fn check_endpoints(&self, p: ConePoint, q: ConePoint) -> Result<(), OracleError> {
        let r = p.r().min(q.r());
        if self.radial_step > 0.25 * r {
            return Err(OracleError::SnapFailure(format!(
                "radial step {} too coarse for endpoint radius {r}",
                self.radial_step
            )));
        }
        if self.angular_step > PI / 4.0 {
            return Err(OracleError::SnapFailure(format!(
                "angular step {} too coarse",
                self.angular_step
            )));
        }
        Ok(())
    }
}

/// Shortest grid path on one sheet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SheetPath {
    pub sheet: i64,
    pub development_angle: f64,
    pub length: f64,
}

/// Shortest apex-free grid path from `p` to the sheet-`k` copy of `q`, for
/// every sheet in the window `|k| <= ceil(2π/α) + 1`, skipping sheets whose
/// development angle exceeds `π` by more than a fixed margin (their wrap
/// paths are never competitive). Results are sorted by sheet.
pub fn grid_shortest_per_sheet(
    surface: ConeSurface,
    p: ConePoint,
    q: ConePoint,
    spec: GridSpec,
) -> Result<Vec<SheetPath>, OracleError> {
    if p.is_vertex() || q.is_vertex() {
        return Err(OracleError::VertexEndpoint);
    }
    spec.check_endpoints(p, q)?;
    let window = (2.0 * PI / surface.alpha()).ceil() as i64 + 1;
    let mut out = Vec::new();
    for k in -window..=window {
        let delta = chord_angle(surface, p, q, k).expect("endpoints off the vertex");
        if delta.abs() >= PI + SHEET_MARGIN {
            continue;
        }
        let length = strip_shortest(p.r(), q.r(), delta.abs(), spec)?;
        out.push(SheetPath {
            sheet: k,
            development_angle: delta,
            length,
        });
    }
    Ok(out)
}

/// Number of sheets whose grid path beats the vertex route by the fixed
/// margin: the oracle's geodesic count.
pub fn grid_matched_count(
    surface: ConeSurface,
    p: ConePoint,
    q: ConePoint,
    spec: GridSpec,
) -> Result<usize, OracleError> {
    let threshold = (p.r() + q.r()) * (1.0 - COUNT_MARGIN);
    Ok(grid_shortest_per_sheet(surface, p, q, spec)?
        .iter()
        .filter(|s| s.length < threshold)
        .count())
}

/// Length of the broken route measured on a grid that keeps the apex: the
/// shortest grid path from `p` into the apex plus the same for `q`.
pub fn grid_broken_length(
    _surface: ConeSurface,
    p: ConePoint,
    q: ConePoint,
    spec: GridSpec,
) -> Result<f64, OracleError> {
    if p.is_vertex() || q.is_vertex() {
        return Err(OracleError::VertexEndpoint);
    }
    spec.check_endpoints(p, q)?;
    Ok(fan_to_apex(p.r(), spec)? + fan_to_apex(q.r(), spec)?)
}

/// Geometry of one development strip: ring radii in geometric progression
/// and equally spaced columns, with both endpoints exactly on nodes.
struct Strip {
    radii: Vec<f64>,
    cols: usize,
    dtheta: f64,
    start: usize,
    target: usize,
    target_col: usize,
}

fn build_strip(rp: f64, rq: f64, span: f64, spec: GridSpec) -> Strip {
    // Fit the angular step so the target column is exact.
    let (m_cols, dtheta) = if span > spec.angular_step / 2.0 {
        let m = (span / spec.angular_step).round().max(1.0);
        (m as usize, span / m)
    } else {
        (0, spec.angular_step)
    };
    // Fit the ring ratio so the target ring is exact; nearly equal radii snap
    // to one ring (within half a radial step, as allowed).
    let log_ratio = (rq / rp).ln();
    let h_req = spec.radial_step;
    let (m_rings, g) = if log_ratio.abs() > h_req / 2.0 {
        let m = (log_ratio / h_req).round();
        (m as i64, (log_ratio / m).abs())
    } else {
        (0, h_req)
    };

    // Radial extent: out to the larger radius, down below the chord's closest
    // approach to the apex (for wrapping spans just past π, down to a fixed
    // fraction instead), with stencil-sized margins on both sides.
    let r_hi = rp.max(rq);
    let closest = if span < PI {
        rp * rq * span.sin() / chord_len_flat(rp, rq, span).max(f64::MIN_POSITIVE)
    } else {
        f64::INFINITY
    };
    let r_lo = (0.8 * closest).min(0.2 * rp.min(rq));
    let i_min = ((r_lo / rp).ln() / g).floor() as i64 - STENCIL;
    let i_max = ((r_hi / rp).ln() / g).ceil() as i64 + STENCIL;
    let radii: Vec<f64> = (i_min..=i_max).map(|i| rp * (i as f64 * g).exp()).collect();

    let pad = STENCIL as usize;
    let cols = m_cols + 2 * pad + 1;
    let rows = radii.len();
    let p_ring = (-i_min) as usize;
    let q_ring = (m_rings - i_min) as usize;
    debug_assert!(p_ring < rows && q_ring < rows);
    Strip {
        radii,
        cols,
        dtheta,
        start: p_ring * cols + pad,
        target: q_ring * cols + pad + m_cols,
        target_col: pad + m_cols,
    }
}

fn chord_len_flat(rp: f64, rq: f64, delta: f64) -> f64 {
    (rp * rp + rq * rq - 2.0 * rp * rq * delta.cos()).max(0.0).sqrt()
}

/// Directions of the move stencil: coprime offsets within the stencil box.
fn stencil_dirs() -> Vec<(i64, i64)> {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    let mut dirs = Vec::new();
    for di in -STENCIL..=STENCIL {
        for dj in -STENCIL..=STENCIL {
            if (di, dj) != (0, 0) && gcd(di.abs().max(dj.abs()), di.abs().min(dj.abs())) == 1 {
                dirs.push((di, dj));
            }
        }
    }
    dirs
}

/// Shortest path across one strip by A* with the exact free-space distance
/// to the target as heuristic (admissible and consistent: edge weights are
/// true local distances, and the heuristic ignores only the apex hole).
fn strip_shortest(rp: f64, rq: f64, span: f64, spec: GridSpec) -> Result<f64, OracleError> {
    let strip = build_strip(rp, rq, span, spec);
    let rows = strip.radii.len();
    let cols = strip.cols;
    let dirs = stencil_dirs();
    let cos_dj: Vec<f64> = (0..=STENCIL as usize)
        .map(|d| (d as f64 * strip.dtheta).cos())
        .collect();
    // cos of the angular offset to the target column, clamped at π: beyond a
    // half turn the free-space distance saturates at r + r_target.
    let cos_to_target: Vec<f64> = (0..cols)
        .map(|c| {
            let dcol = c.abs_diff(strip.target_col) as f64;
            (dcol * strip.dtheta).min(PI).cos()
        })
        .collect();
    let r_target = strip.radii[strip.target / cols];

    let h = |idx: usize| -> f64 {
        let r = strip.radii[idx / cols];
        (r * r + r_target * r_target - 2.0 * r * r_target * cos_to_target[idx % cols])
            .max(0.0)
            .sqrt()
    };

    let mut dist = vec![f64::INFINITY; rows * cols];
    let mut heap: BinaryHeap<Reverse<(u64, u32)>> = BinaryHeap::new();
    dist[strip.start] = 0.0;
    heap.push(Reverse((h(strip.start).to_bits(), strip.start as u32)));
    while let Some(Reverse((fbits, idx))) = heap.pop() {
        let idx = idx as usize;
        if idx == strip.target {
            return Ok(dist[idx]);
        }
        let g = dist[idx];
        if f64::from_bits(fbits) > g + h(idx) + 1e-12 {
            continue;
        }
        let (row, col) = (idx / cols, idx % cols);
        let r = strip.radii[row];
        for &(di, dj) in &dirs {
            let (nrow, ncol) = (row as i64 + di, col as i64 + dj);
            if nrow < 0 || nrow >= rows as i64 || ncol < 0 || ncol >= cols as i64 {
                continue;
            }
            let nidx = nrow as usize * cols + ncol as usize;
            let nr = strip.radii[nrow as usize];
            let w = (r * r + nr * nr - 2.0 * r * nr * cos_dj[dj.unsigned_abs() as usize])
                .max(0.0)
                .sqrt();
            let cand = g + w;
            if cand < dist[nidx] {
                dist[nidx] = cand;
                heap.push(Reverse(((cand + h(nidx)).to_bits(), nidx as u32)));
            }
        }
    }
    Err(OracleError::Unreachable)
}

/// Shortest grid path from radius `r` into the apex on a narrow uniform fan
/// that includes the apex as an explicit node.
fn fan_to_apex(r: f64, spec: GridSpec) -> Result<f64, OracleError> {
    let rings = ((r / spec.radial_step).round() as usize).max(2);
    let dr = r / rings as f64;
    let cols = 2 * STENCIL as usize + 1;
    let dirs = stencil_dirs();
    let cos_dj: Vec<f64> = (0..=STENCIL as usize)
        .map(|d| (d as f64 * spec.angular_step).cos())
        .collect();
    // Node layout: index 0 is the apex, then ring-major grid nodes.
    let node = |ring: usize, col: usize| 1 + (ring - 1) * cols + col;
    let total = 1 + rings * cols;
    let start = node(rings, STENCIL as usize);
    let mut dist = vec![f64::INFINITY; total];
    let mut heap: BinaryHeap<Reverse<(u64, u32)>> = BinaryHeap::new();
    dist[start] = 0.0;
    // The heuristic is the exact radial distance to the apex.
    heap.push(Reverse((r.to_bits(), start as u32)));
    while let Some(Reverse((fbits, idx))) = heap.pop() {
        let idx = idx as usize;
        if idx == 0 {
            return Ok(dist[0]);
        }
        let ring = (idx - 1) / cols + 1;
        let col = (idx - 1) % cols;
        let g = dist[idx];
        if f64::from_bits(fbits) > g + ring as f64 * dr + 1e-12 {
            continue;
        }
        let rr = ring as f64 * dr;
        for &(di, dj) in &dirs {
            let nring = ring as i64 + di;
            let ncol = col as i64 + dj;
            if nring < 1 || nring > rings as i64 || ncol < 0 || ncol >= cols as i64 {
                continue;
            }
            let nidx = node(nring as usize, ncol as usize);
            let nr = nring as f64 * dr;
            let w = (rr * rr + nr * nr - 2.0 * rr * nr * cos_dj[dj.unsigned_abs() as usize])
                .max(0.0)
                .sqrt();
            let cand = g + w;
            if cand < dist[nidx] {
                dist[nidx] = cand;
                heap.push(Reverse(((cand + nr).to_bits(), nidx as u32)));
            }
        }
        // Apex edges from the innermost rings.
        if ring <= STENCIL as usize {
            let cand = g + rr;
            if cand < dist[0] {
                dist[0] = cand;
                heap.push(Reverse((cand.to_bits(), 0)));
            }
        }
    }
    Err(OracleError::Unreachable)
}

/// Relative Betti numbers `[β0, β1]` of a small filtered pair by dense
/// bitmask Gaussian elimination, no sparse shortcuts.
pub fn exhaustive_relative_betti(
    complex: &FilteredComplex,
    upper: f64,
    lower: f64,
) -> Result<[usize; 2], OracleError> {
    if !(lower <= upper) {
        return Err(OracleError::Homology(HomologyError::InvalidWindow {
            lower,
            upper,
        }));
    }
    let in_window = |f: f64| f > lower && f <= upper;
    let mut vertex_id = vec![usize::MAX; complex.vertex_count()];
    let mut v_count = 0usize;
    for (i, &f) in complex.vertex_filtrations().iter().enumerate() {
        if in_window(f) {
            vertex_id[i] = v_count;
            v_count += 1;
        }
    }
    let mut edge_id: std::collections::HashMap<[usize; 2], usize> = Default::default();
    let mut d1: Vec<u64> = Vec::new();
    for ([a, b], f) in complex.edges() {
        if !in_window(f) {
            continue;
        }
        edge_id.insert([a, b], d1.len());
        let mut col = 0u64;
        for v in [a, b] {
            if vertex_id[v] != usize::MAX {
                col |= 1 << vertex_id[v];
            }
        }
        d1.push(col);
    }
    let mut d2: Vec<u64> = Vec::new();
    for ([a, b, c], f) in complex.triangles() {
        if !in_window(f) {
            continue;
        }
        let mut col = 0u64;
        for face in [[a, b], [a, c], [b, c]] {
            if let Some(&e) = edge_id.get(&face) {
                col |= 1 << e;
            }
        }
        d2.push(col);
    }
    let simplices = v_count + d1.len() + d2.len();
    if simplices > 64 || v_count > 64 || d1.len() > 64 {
        return Err(OracleError::TooLarge(simplices));
    }
    let rank1 = dense_rank(d1.clone());
    let rank2 = dense_rank(d2);
    Ok([v_count - rank1, d1.len() - rank1 - rank2])
}

fn dense_rank(mut cols: Vec<u64>) -> usize {
    let mut rank = 0usize;
    for row in 0..64 {
        let Some(j) = (rank..cols.len()).find(|&j| cols[j] >> row & 1 == 1) else {
            continue;
        };
        cols.swap(rank, j);
        let pivot = cols[rank];
        for (k, c) in cols.iter_mut().enumerate() {
            if k != rank && *c >> row & 1 == 1 {
                *c ^= pivot;
            }
        }
        rank += 1;
    }
    rank
}

/// Seeded random filtered complex with at most `max_vertices` vertices:
/// uniform vertex levels, independent edges, and each edge-complete triple
/// filled half the time.
pub fn seeded_complex(rng: &mut ChaCha8Rng, max_vertices: usize) -> FilteredComplex {
    let n = rng.random_range(3..=max_vertices.max(3));
    let filts: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..2.0)).collect();
    let mut complex = FilteredComplex::new(filts).expect("finite filtrations");
    let mut present = vec![vec![false; n]; n];
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(0.35) {
                complex.add_edge(u, v).expect("fresh edge");
                present[u][v] = true;
            }
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            for w in v + 1..n {
                if present[u][v] && present[u][w] && present[v][w] && rng.random_bool(0.5) {
                    complex.add_triangle(u, v, w).expect("edges are present");
                }
            }
        }
    }
    complex
}

/// A cone scenario suitable for tight oracle comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenericScenario {
    pub surface: ConeSurface,
    pub p: ConePoint,
    pub q: ConePoint,
}

/// Seeded generic scenario: apex angle in `[π/3, 3π]`, radii in `[0.6, 1.4]`,
/// resampled until every development angle stays at least 0.4 away from `±π`
/// and every admissible chord is at least 0.55 long. The margins keep the
/// geodesic count stable under 1% length perturbations.
pub fn random_generic_scenario(rng: &mut ChaCha8Rng) -> GenericScenario {
    loop {
        let alpha = rng.random_range(PI / 3.0..=3.0 * PI);
        let surface = ConeSurface::new(alpha).expect("valid angle");
        let rp = rng.random_range(0.6..=1.4);
        let rq = rng.random_range(0.6..=1.4);
        let tp = rng.random_range(0.0..alpha);
        let tq = rng.random_range(0.0..alpha);
        let p = ConePoint::new(surface, rp, tp).expect("finite");
        let q = ConePoint::new(surface, rq, tq).expect("finite");
        let window = (2.0 * PI / alpha).ceil() as i64 + 1;
        let mut ok = true;
        for k in -window..=window {
            let delta = chord_angle(surface, p, q, k).expect("off vertex");
            if (delta.abs() - PI).abs() < 0.4 {
                ok = false;
                break;
            }
            if delta.abs() < PI && chord_len_flat(rp, rq, delta) < 0.55 {
                ok = false;
                break;
            }
        }
        if ok {
            return GenericScenario { surface, p, q };
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn grid_spec_is_validated() {
        assert!(GridSpec::new(0.0, 1e-3).is_err());
        assert!(GridSpec::new(1e-3, f64::NAN).is_err());
        let spec = GridSpec::isotropic(4e-3).unwrap();
        assert_eq!(spec.halved().radial_step, 2e-3);
        let s = ConeSurface::plane();
        let p = ConePoint::new(s, 0.01, 0.0).unwrap();
        let q = ConePoint::new(s, 1.0, 1.0).unwrap();
        assert!(matches!(
            grid_shortest_per_sheet(s, p, q, spec),
            Err(OracleError::SnapFailure(_))
        ));
        assert_eq!(
            grid_shortest_per_sheet(s, ConePoint::vertex(), q, spec),
            Err(OracleError::VertexEndpoint)
        );
    }

    #[test]
    fn stencil_has_full_symmetry() {
        let dirs = stencil_dirs();
        assert!(dirs.contains(&(1, 0)));
        assert!(dirs.contains(&(0, -1)));
        assert!(dirs.contains(&(-7, 3)));
        assert!(!dirs.contains(&(2, 4)));
        for &(di, dj) in &dirs {
            assert!(dirs.contains(&(-di, -dj)));
        }
    }

    #[test]
    fn plane_chord_reproduced_within_tolerance() {
        let s = ConeSurface::plane();
        let p = ConePoint::new(s, 1.0, FRAC_PI_2).unwrap();
        let q = ConePoint::new(s, 1.0, 0.0).unwrap();
        let spec = GridSpec::isotropic(4e-3).unwrap();
        let sheets = grid_shortest_per_sheet(s, p, q, spec).unwrap();
        let best = sheets
            .iter()
            .find(|sh| sh.development_angle.abs() < PI)
            .unwrap();
        let exact = 2.0f64.sqrt();
        let rel = (best.length - exact) / exact;
        assert!(rel >= -1e-9, "grid beat the exact chord: {rel}");
        assert!(rel < 0.01, "grid length off by {rel}");
        assert_eq!(grid_matched_count(s, p, q, spec).unwrap(), 1);
    }

    #[test]
    fn quarter_cone_counts_four_sheets() {
        let s = ConeSurface::new(FRAC_PI_2).unwrap();
        let p = ConePoint::new(s, 1.0, 0.0).unwrap();
        let q = ConePoint::new(s, 1.0, PI / 5.0).unwrap();
        let spec = GridSpec::isotropic(4e-3).unwrap();
        assert_eq!(grid_matched_count(s, p, q, spec).unwrap(), 4);
        let sheets = grid_shortest_per_sheet(s, p, q, spec).unwrap();
        let shortest = sheets
            .iter()
            .map(|sh| sh.length)
            .fold(f64::INFINITY, f64::min);
        let exact = 2.0 * (PI / 10.0).sin();
        assert!((shortest - exact) / exact < 0.01);
        assert!(shortest >= exact * (1.0 - 1e-9));
    }

    #[test]
    fn broken_route_measured_through_the_apex() {
        let s = ConeSurface::new(FRAC_PI_2).unwrap();
        let p = ConePoint::new(s, 1.0, 0.0).unwrap();
        let q = ConePoint::new(s, 1.0, PI / 5.0).unwrap();
        let spec = GridSpec::isotropic(4e-3).unwrap();
        let len = grid_broken_length(s, p, q, spec).unwrap();
        assert!((len - 2.0).abs() / 2.0 < 0.01);
        assert!(len >= 2.0 * (1.0 - 1e-9));
    }

    #[test]
    fn exhaustive_ranks_on_hand_checked_pairs() {
        // Square boundary relative to its bottom edge: a circle.
        let mut c = FilteredComplex::new(vec![0.0, 0.0, 1.0, 1.0]).unwrap();
        c.add_edge(0, 1).unwrap();
        c.add_edge(1, 2).unwrap();
        c.add_edge(2, 3).unwrap();
        c.add_edge(3, 0).unwrap();
        assert_eq!(exhaustive_relative_betti(&c, 1.0, 0.0).unwrap(), [0, 1]);
        assert_eq!(exhaustive_relative_betti(&c, 1.0, f64::NEG_INFINITY).unwrap(), [1, 1]);
        assert_eq!(exhaustive_relative_betti(&c, 0.5, 0.2).unwrap(), [0, 0]);

        let mut filled = FilteredComplex::new(vec![0.0, 0.0, 0.0]).unwrap();
        filled.add_edge(0, 1).unwrap();
        filled.add_edge(1, 2).unwrap();
        filled.add_edge(0, 2).unwrap();
        filled.add_triangle(0, 1, 2).unwrap();
        assert_eq!(
            exhaustive_relative_betti(&filled, 0.0, f64::NEG_INFINITY).unwrap(),
            [1, 0]
        );
    }

    #[test]
    fn exhaustive_oracle_rejects_large_input() {
        let c = FilteredComplex::new(vec![0.0; 65]).unwrap();
        assert_eq!(
            exhaustive_relative_betti(&c, 1.0, -1.0),
            Err(OracleError::TooLarge(65))
        );
    }

    #[test]
    fn generators_are_deterministic() {
        let mut a = ChaCha8Rng::seed_from_u64(4);
        let mut b = ChaCha8Rng::seed_from_u64(4);
        assert_eq!(seeded_complex(&mut a, 10), seeded_complex(&mut b, 10));
        assert_eq!(random_generic_scenario(&mut a), random_generic_scenario(&mut b));
        let sc = random_generic_scenario(&mut a);
        assert!(sc.surface.alpha() >= PI / 3.0 && sc.surface.alpha() <= 3.0 * PI);
        assert!(sc.p.r() >= 0.6 && sc.p.r() <= 1.4);
    }
}
