//! Hyperbolic volume of `Δ*_g` by cubature in the upper half-space.
//!
//! Over a point `x` of the triangle `ABD` the solid runs from `z_low(x)` to
//! infinity, so the volume is `∫∫ 1/(2 z_low²)`. The lower envelope is the
//! highest of four hemispheres; splitting `ABD` into the power cells of their
//! circles makes the integrand smooth on every piece.

use serde::{Deserialize, Serialize};

use crate::angles::{angles, AngleData};
use crate::error::{invariant, GexError, Result};
use crate::halfspace::{realize_half_space, Circle, Point};
use crate::quadrature::{integrate, CubatureConfig, Triangle};

/// Limit of `vol(M_g)/g` as quoted in the literature for this family.
pub const REFERENCE_LIMIT: f64 = 5.419960359;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VolumeResult {
    pub value: f64,
    pub abs_error_bound: f64,
    pub subdivisions: usize,
}

/// Clips a convex polygon to the half-plane `n · p <= k`.
fn clip(poly: &[Point], n: Point, k: f64) -> Vec<Point> {
    let mut out = Vec::with_capacity(poly.len() + 1);
    for i in 0..poly.len() {
        let (p, q) = (poly[i], poly[(i + 1) % poly.len()]);
        let fp = n[0] * p[0] + n[1] * p[1] - k;
        let fq = n[0] * q[0] + n[1] * q[1] - k;
        if fp <= 0.0 {
            out.push(p);
        }
        if (fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0) {
            let t = fp / (fp - fq);
            out.push([p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]);
        }
    }
    out
}

fn polygon_area(poly: &[Point]) -> f64 {
    let mut s = 0.0;
    for i in 0..poly.len() {
        let (p, q) = (poly[i], poly[(i + 1) % poly.len()]);
        s += p[0] * q[1] - p[1] * q[0];
    }
    0.5 * s.abs()
}

/// Part of `domain` where circle `i` has the largest power
/// `r_i² − |x − c_i|²`.
pub fn power_cell(circles: &[Circle], i: usize, domain: &[Point]) -> Vec<Point> {
    let ci = circles[i];
    let mut poly = domain.to_vec();
    for (j, cj) in circles.iter().enumerate() {
        if j == i || poly.is_empty() {
            continue;
        }
        // r_i² − |x−c_i|² >= r_j² − |x−c_j|²  ⇔  2(c_j − c_i)·x <= |c_j|² − |c_i|² − r_j² + r_i²
        let n = [
            2.0 * (cj.center[0] - ci.center[0]),
            2.0 * (cj.center[1] - ci.center[1]),
        ];
        let k = cj.center[0].powi(2) + cj.center[1].powi(2)
            - ci.center[0].powi(2)
            - ci.center[1].powi(2)
            - cj.radius.powi(2)
            + ci.radius.powi(2);
        poly = clip(&poly, n, k);
    }
    poly
}

/// Volume of `Δ*_g` with error bound at most `tol`.
pub fn tet_volume(a: &AngleData, tol: f64) -> Result<VolumeResult> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(GexError::Domain(format!(
            "quadrature tolerance must be positive, got {tol}"
        )));
    }
    let h = realize_half_space(a, 1.0)?;
    let circles = h.circles();
    let domain = [h.a, h.b, h.d];
    let mut pieces: Vec<(usize, Triangle)> = Vec::new();
    let mut covered = 0.0;
    for i in 0..circles.len() {
        let cell = power_cell(&circles, i, &domain);
        if cell.len() < 3 {
            continue;
        }
        covered += polygon_area(&cell);
        for k in 1..cell.len() - 1 {
            pieces.push((i, [cell[0], cell[k], cell[k + 1]]));
        }
    }
    let total = polygon_area(&domain);
    invariant((covered - total).abs() <= 1e-12 * total, || {
        format!("power cells cover {covered} of the triangle's area {total}")
    })?;
    let r = integrate(
        &pieces,
        |i, p| {
            let c = circles[i];
            let z2 =
                c.radius * c.radius - (p[0] - c.center[0]).powi(2) - (p[1] - c.center[1]).powi(2);
            0.5 / z2
        },
        CubatureConfig::new(tol),
    )?;
    invariant(r.value > 0.0, || format!("non-positive volume {}", r.value))?;
    Ok(VolumeResult {
        value: r.value,
        abs_error_bound: r.error_bound,
        subdivisions: r.subdivisions,
    })
}

/// `vol(M_g) = (2g + 2) V_g`; the error bound scales by the same factor.
pub fn volume_of_mg(g: usize, tol: f64) -> Result<VolumeResult> {
    let v = tet_volume(&angles(g)?, tol)?;
    let n = (2 * g + 2) as f64;
    Ok(VolumeResult {
        value: n * v.value,
        abs_error_bound: n * v.abs_error_bound,
        subdivisions: v.subdivisions,
    })
}

/// One line of a volume table.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VolumeRow {
    pub g: usize,
    pub v_g: f64,
    pub vol_mg: f64,
    pub vol_per_g: f64,
    pub abs_error_bound: f64,
}

pub fn volume_row(g: usize, tol: f64) -> Result<VolumeRow> {
    let v = tet_volume(&angles(g)?, tol)?;
    let n = (2 * g + 2) as f64;
    Ok(VolumeRow {
        g,
        v_g: v.value,
        vol_mg: n * v.value,
        vol_per_g: n * v.value / g as f64,
        abs_error_bound: n * v.abs_error_bound,
    })
}
