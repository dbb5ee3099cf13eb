//! Flat cone surfaces and their development onto the plane.
//!
//! A cone with total apex angle `alpha > 0` is the metric space obtained by
//! gluing the edges of a planar sector of angle `alpha`; `alpha = 2π` is the
//! ordinary plane with a marked origin. Points are intrinsic polar pairs
//! `(r, theta)` with `theta` reduced modulo `alpha`. Away from the apex the
//! surface is flat, so local geometry reduces to planar geometry after
//! developing (unrolling) the sector, one sheet per turn around the apex.

use std::f64::consts::PI;

use thiserror::Error;

/// Angular slack below which a development angle is treated as hitting `±π`,
/// i.e. the chord through the developed sector would graze the apex.
pub const APEX_GRAZE_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConeError {
    #[error("total apex angle must be positive and finite, got {0}")]
    InvalidApexAngle(f64),
    #[error("radius must be finite and nonnegative, got {0}")]
    InvalidRadius(f64),
    #[error("angle must be finite, got {0}")]
    InvalidAngle(f64),
    #[error("the vertex has no angle")]
    VertexHasNoAngle,
}

/// Euclidean cone, determined by its total apex angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeSurface {
    alpha: f64,
}

impl ConeSurface {
    pub fn new(alpha: f64) -> Result<Self, ConeError> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(ConeError::InvalidApexAngle(alpha));
        }
        Ok(Self { alpha })
    }

    /// The plane, as the cone with total angle `2π`.
    pub fn plane() -> Self {
        Self {
            alpha: 2.0 * PI,
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Reduce an angle to the fundamental domain `[0, alpha)`.
    pub fn normalize_angle(&self, theta: f64) -> f64 {
        let mut t = theta.rem_euclid(self.alpha);
        // rem_euclid can return alpha itself when theta is a tiny negative.
        if t >= self.alpha {
            t -= self.alpha;
        }
        t
    }

    /// Representative of an angular difference in `(-alpha/2, alpha/2]`.
    ///
    /// This is the development angle of smallest magnitude among all sheets,
    /// which is the only one local distance computations need.
    pub fn centered_angle(&self, dtheta: f64) -> f64 {
        let d = self.normalize_angle(dtheta);
        if d > self.alpha / 2.0 {
            d - self.alpha
        } else {
            d
        }
    }
}

/// Point on a cone in intrinsic polar coordinates.
///
/// The apex is `r = 0`; its angle is immaterial and stored as zero so that
/// vertex points compare equal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConePoint {
    r: f64,
    theta: f64,
}

impl ConePoint {
    /// Construct a point, normalizing the angle into `[0, alpha)`.
    pub fn new(surface: ConeSurface, r: f64, theta: f64) -> Result<Self, ConeError> {
        if !r.is_finite() || r < 0.0 {
            return Err(ConeError::InvalidRadius(r));
        }
        if !theta.is_finite() {
            return Err(ConeError::InvalidAngle(theta));
        }
        if r == 0.0 {
            return Ok(Self::vertex());
        }
        Ok(Self {
            r,
            theta: surface.normalize_angle(theta),
        })
    }

    pub fn vertex() -> Self {
        Self { r: 0.0, theta: 0.0 }
    }

    pub fn is_vertex(&self) -> bool {
        self.r == 0.0
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

/// Image of a cone point in a planar development.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanarPoint {
    pub x: f64,
    pub y: f64,
}

impl PlanarPoint {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn from_polar(r: f64, phi: f64) -> Self {
        Self {
            x: r * phi.cos(),
            y: r * phi.sin(),
        }
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(&self, other: PlanarPoint) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn lerp(&self, other: PlanarPoint, t: f64) -> PlanarPoint {
        PlanarPoint {
            x: self.x + t * (other.x - self.x),
            y: self.y + t * (other.y - self.y),
        }
    }
}

/// Develop a point onto the plane using sheet `k`: the planar angle is
/// `theta + k * alpha`. The apex maps to the origin on every sheet.
pub fn develop(surface: ConeSurface, p: ConePoint, sheet: i64) -> PlanarPoint {
    PlanarPoint::from_polar(p.r(), p.theta() + sheet as f64 * surface.alpha())
}

/// Development angle `delta + k * alpha` seen by the chord from `p` to `q` on
/// sheet `k`, where `delta` is the canonical angular difference
/// `normalize(theta_q - theta_p)` in `[0, alpha)`.
pub fn chord_angle(
    surface: ConeSurface,
    p: ConePoint,
    q: ConePoint,
    sheet: i64,
) -> Result<f64, ConeError> {
    if p.is_vertex() || q.is_vertex() {
        return Err(ConeError::VertexHasNoAngle);
    }
    Ok(surface.normalize_angle(q.theta() - p.theta()) + sheet as f64 * surface.alpha())
}

/// Length of a development chord with endpoint radii `rp`, `rq` subtending the
/// angle `delta` at the origin.
pub(crate) fn chord_len(rp: f64, rq: f64, delta: f64) -> f64 {
    (rp * rp + rq * rq - 2.0 * rp * rq * delta.cos()).max(0.0).sqrt()
}

/// How a shortest local connection runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// Straight chord in the development on the given sheet.
    Chord { sheet: i64 },
    /// Radial descent into the apex and back out: length `r_p + r_q`.
    ThroughVertex,
}

/// Intrinsic distance between two cone points, with the realizing route.
///
/// The shortest chord uses the sheet of minimal development angle. When every
/// development angle has magnitude at least `π` (possible only when the
/// centered angle reaches `π`, so never on cones sharper than the plane), or
/// when an endpoint is the apex, the shortest route passes through the apex.
pub fn local_distance(surface: ConeSurface, p: ConePoint, q: ConePoint) -> (f64, Route) {
    if p.is_vertex() || q.is_vertex() {
        return (p.r() + q.r(), Route::ThroughVertex);
    }
    let d = surface.centered_angle(q.theta() - p.theta());
    if d.abs() < PI - APEX_GRAZE_TOL {
        let delta = surface.normalize_angle(q.theta() - p.theta());
        let sheet = if delta <= surface.alpha() / 2.0 { 0 } else { -1 };
        (chord_len(p.r(), q.r(), d), Route::Chord { sheet })
    } else {
        (p.r() + q.r(), Route::ThroughVertex)
    }
}

/// Distance part of [`local_distance`].
pub fn local_distance_len(surface: ConeSurface, p: ConePoint, q: ConePoint) -> f64 {
    local_distance(surface, p, q).0
}
