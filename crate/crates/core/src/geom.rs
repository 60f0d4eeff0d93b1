//! Vector helpers over `[f64; 3]`. Planar data uses `z = 0`; angles are degrees.

use libm::{atan2, cos, floor, sin, sqrt};

pub type Vec3 = [f64; 3];

const DEG_PER_RAD: f64 = 180.0 / core::f64::consts::PI;

#[inline]
pub fn to_rad(deg: f64) -> f64 {
    deg / DEG_PER_RAD
}

#[inline]
pub fn to_deg(rad: f64) -> f64 {
    rad * DEG_PER_RAD
}

#[inline]
pub fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[inline]
pub fn add(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

#[inline]
pub fn scale(a: Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

#[inline]
pub fn neg(a: Vec3) -> Vec3 {
    [-a[0], -a[1], -a[2]]
}

#[inline]
pub fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

#[inline]
pub fn norm(a: Vec3) -> f64 {
    sqrt(dot(a, a))
}

/// Unit vector along `a`, or `None` for the zero vector.
pub fn normalize(a: Vec3) -> Option<Vec3> {
    let n = norm(a);
    if n > 0.0 && n.is_finite() {
        Some(scale(a, 1.0 / n))
    } else {
        None
    }
}

/// Angle between two nonzero vectors in `[0, 180]`.
///
/// Uses `atan2(|a x b|, a . b)`, which stays accurate near 0 and 180.
pub fn angle_between(a: Vec3, b: Vec3) -> f64 {
    to_deg(atan2(norm(cross(a, b)), dot(a, b)))
}

/// Reduce an angle to `[0, 360)`.
pub fn wrap_deg(x: f64) -> f64 {
    let r = x - 360.0 * floor(x / 360.0);
    if r >= 360.0 {
        0.0
    } else {
        r
    }
}

/// Reduce an angle to `[-180, 180)`.
pub fn signed_deg(x: f64) -> f64 {
    wrap_deg(x + 180.0) - 180.0
}

/// Planar unit vector with the given heading (counterclockwise from +x).
pub fn heading_vec(deg: f64) -> Vec3 {
    let r = to_rad(deg);
    [cos(r), sin(r), 0.0]
}

/// Planar heading of `a` in `[0, 360)`, ignoring `z`.
pub fn heading_deg(a: Vec3) -> f64 {
    wrap_deg(to_deg(atan2(a[1], a[0])))
}

/// Rotate `v` about the unit `axis` by `deg` (right-hand rule).
pub fn rotate_about(v: Vec3, axis: Vec3, deg: f64) -> Vec3 {
    let (s, c) = (sin(to_rad(deg)), cos(to_rad(deg)));
    let term1 = scale(v, c);
    let term2 = scale(cross(axis, v), s);
    let term3 = scale(axis, dot(axis, v) * (1.0 - c));
    add(add(term1, term2), term3)
}

/// Some unit vector orthogonal to the unit vector `a`.
///
/// For planar `a` this is the `+z` axis, so planar rotations stay planar.
pub fn orthogonal(a: Vec3) -> Vec3 {
    if a[2].abs() < 1e-12 {
        return [0.0, 0.0, 1.0];
    }
    let helper = if a[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    normalize(cross(a, helper)).unwrap_or([0.0, 0.0, 1.0])
}

/// Turn the unit vector `from` towards the unit vector `to` by `fraction` of
/// the angle between them, along the shorter great circle.
///
/// Antipodal pairs have no unique shorter arc; the rotation axis then comes
/// from [`orthogonal`], which means counterclockwise for planar headings.
pub fn slerp(from: Vec3, to: Vec3, fraction: f64) -> Vec3 {
    let angle = angle_between(from, to);
    if angle < 1e-12 {
        return from;
    }
    let axis = normalize(cross(from, to)).unwrap_or_else(|| orthogonal(from));
    rotate_about(from, axis, angle * fraction)
}
