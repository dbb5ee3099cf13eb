//! Enumeration of geodesics between two fixed points on a cone.
//!
//! A classical geodesic develops to a straight chord: there is exactly one
//! candidate per sheet whose development angle lies strictly inside
//! `(-π, π)`. The remaining geodesic is the broken one through the apex, with
//! length `r_p + r_q`. Energies are for constant-speed parametrization on
//! `[0, 1]`, so energy equals squared length.

use std::f64::consts::PI;

use thiserror::Error;

use crate::cone::{chord_angle, chord_len, ConePoint, ConeSurface, APEX_GRAZE_TOL};

/// Relative gap under which two geodesic energies count as a tie.
pub const ENERGY_TIE_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeodesicError {
    #[error("geodesic enumeration requires both endpoints off the vertex")]
    VertexEndpoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeodesicKind {
    /// Develops to a straight chord on the given sheet.
    Classical { sheet: i64 },
    /// Runs radially into the apex and back out.
    Broken,
}

/// One geodesic from `p` to `q`, with its invariants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geodesic {
    pub kind: GeodesicKind,
    /// Development angle for classical geodesics, `None` for the broken one.
    pub development_angle: Option<f64>,
    pub length: f64,
    /// Energy of the constant-speed parametrization on `[0, 1]`.
    pub energy: f64,
    /// Set when another geodesic in the same enumeration shares this energy
    /// up to [`ENERGY_TIE_TOL`] relative.
    pub tie: bool,
}

fn require_off_vertex(p: ConePoint, q: ConePoint) -> Result<(), GeodesicError> {
    if p.is_vertex() || q.is_vertex() {
        Err(GeodesicError::VertexEndpoint)
    } else {
        Ok(())
    }
}

/// All classical geodesics from `p` to `q`, sorted by increasing energy.
///
/// Sheets are scanned over the full window where the development angle
/// `delta + k*alpha` can lie inside `(-π, π)`; each admissible sheet yields
/// exactly one geodesic.
pub fn enumerate_classical(
    surface: ConeSurface,
    p: ConePoint,
    q: ConePoint,
) -> Result<Vec<Geodesic>, GeodesicError> {
    require_off_vertex(p, q)?;
    let alpha = surface.alpha();
    let delta = chord_angle(surface, p, q, 0).expect("endpoints are off the vertex");
    let k_min = ((-PI - delta) / alpha).ceil() as i64 - 1;
    let k_max = ((PI - delta) / alpha).floor() as i64 + 1;
    let mut out = Vec::new();
    for k in k_min..=k_max {
        let angle = delta + k as f64 * alpha;
        if angle.abs() < PI - APEX_GRAZE_TOL {
            let length = chord_len(p.r(), q.r(), angle);
            out.push(Geodesic {
                kind: GeodesicKind::Classical { sheet: k },
                development_angle: Some(angle),
                length,
                energy: length * length,
                tie: false,
            });
        }
    }
    out.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    Ok(out)
}

/// The broken geodesic through the apex: length `r_p + r_q`.
pub fn broken_geodesic(
    _surface: ConeSurface,
    p: ConePoint,
    q: ConePoint,
) -> Result<Geodesic, GeodesicError> {
    require_off_vertex(p, q)?;
    let length = p.r() + q.r();
    Ok(Geodesic {
        kind: GeodesicKind::Broken,
        development_angle: None,
        length,
        energy: length * length,
        tie: false,
    })
}

/// Classical geodesics plus the broken one, sorted by increasing energy, with
/// tie flags set pairwise at [`ENERGY_TIE_TOL`] relative.
pub fn enumerate_all(
    surface: ConeSurface,
    p: ConePoint,
    q: ConePoint,
) -> Result<Vec<Geodesic>, GeodesicError> {
    let mut out = enumerate_classical(surface, p, q)?;
    out.push(broken_geodesic(surface, p, q)?);
    out.sort_by(|a, b| {
        a.energy
            .total_cmp(&b.energy)
            .then_with(|| kind_order(a.kind).cmp(&kind_order(b.kind)))
    });
    for i in 0..out.len() {
        for j in i + 1..out.len() {
            let (ei, ej) = (out[i].energy, out[j].energy);
            if (ei - ej).abs() <= ENERGY_TIE_TOL * ei.max(ej) {
                out[i].tie = true;
                out[j].tie = true;
            }
        }
    }
    Ok(out)
}

fn kind_order(kind: GeodesicKind) -> (i64, i64) {
    match kind {
        GeodesicKind::Classical { sheet } => (0, sheet),
        GeodesicKind::Broken => (1, 0),
    }
}

/// Number of geodesics (classical plus broken) between `p` and `q`.
pub fn geodesic_count(
    surface: ConeSurface,
    p: ConePoint,
    q: ConePoint,
) -> Result<usize, GeodesicError> {
    Ok(enumerate_classical(surface, p, q)?.len() + 1)
}
