//! The tetrahedron `Δ*_g` drawn in the upper half-space with its ideal vertex
//! at infinity. Faces through infinity become the lines `F2, F3, F4`; the
//! fourth face is the hemisphere over the circle `F1`; the three truncation
//! planes are hemispheres over `S2, S3, S4`.

use serde::{Deserialize, Serialize};

use crate::angles::AngleData;
use crate::error::{invariant, GexError, Result};

pub type Point = [f64; 2];

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

/// A line through `point` with unit `direction`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Line {
    pub point: Point,
    pub direction: Point,
}

fn sub(p: Point, q: Point) -> Point {
    [p[0] - q[0], p[1] - q[1]]
}

fn dot(p: Point, q: Point) -> f64 {
    p[0] * q[0] + p[1] * q[1]
}

fn cross(p: Point, q: Point) -> f64 {
    p[0] * q[1] - p[1] * q[0]
}

pub fn dist(p: Point, q: Point) -> f64 {
    let d = sub(p, q);
    dot(d, d).sqrt()
}

impl Line {
    fn through(p: Point, q: Point) -> Line {
        let d = sub(q, p);
        let n = dot(d, d).sqrt();
        Line {
            point: p,
            direction: [d[0] / n, d[1] / n],
        }
    }

    pub fn distance_to(&self, p: Point) -> f64 {
        cross(self.direction, sub(p, self.point)).abs()
    }

    pub fn contains(&self, p: Point, tol: f64) -> bool {
        self.distance_to(p) <= tol
    }

    /// Unsigned angle in `[0, π/2]` between two lines.
    pub fn angle_with(&self, other: &Line) -> f64 {
        let c = dot(self.direction, other.direction).abs().min(1.0);
        c.acos()
    }
}

impl Circle {
    /// Height of the hemisphere over `p`, squared; negative outside the disk.
    pub fn height_sq(&self, p: Point) -> f64 {
        let d = sub(p, self.center);
        self.radius * self.radius - dot(d, d)
    }

    /// Cosine of the angle between the hemisphere and the vertical plane over `l`.
    pub fn cos_angle_with_line(&self, l: &Line) -> f64 {
        l.distance_to(self.center) / self.radius
    }

    pub fn orthogonal_to(&self, other: &Circle, tol: f64) -> bool {
        let d = dist(self.center, other.center);
        (d * d - self.radius.powi(2) - other.radius.powi(2)).abs() <= tol
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HalfSpaceRealization {
    pub r: f64,
    pub r_prime: f64,
    /// `∠CAV`; the construction's auxiliary angle.
    pub gamma_prime: f64,
    pub f1: Circle,
    pub s2: Circle,
    pub s3: Circle,
    pub s4: Circle,
    pub f2: Line,
    pub f3: Line,
    pub f4: Line,
    pub a: Point,
    pub b: Point,
    pub c: Point,
    pub d: Point,
    pub v: Point,
    pub p: Point,
    pub q: Point,
}

/// `cos²α + cos²β + cos²γ + 2 cosα cosβ cosγ − 1`.
pub fn gram_term(a: &AngleData) -> f64 {
    let (ca, cb, cg) = (a.alpha.cos(), a.beta.cos(), a.gamma.cos());
    ca * ca + cb * cb + cg * cg + 2.0 * ca * cb * cg - 1.0
}

/// `R′²/R²` from the closed form.
pub fn rprime_ratio_sq(a: &AngleData) -> f64 {
    gram_term(a) / a.gamma.sin().powi(2)
}

/// `|AB|` from the closed form in terms of `R′`.
pub fn ab_closed_form(a: &AngleData, r_prime: f64) -> f64 {
    2.0 * r_prime * (a.alpha.cos() + a.beta.cos() * a.gamma.cos()) / gram_term(a).sqrt()
}

/// Places the tetrahedron: `F1` has radius `r`, `AB` lies on the x-axis
/// symmetric about the origin, `D` above it.
pub fn realize_half_space(a: &AngleData, r: f64) -> Result<HalfSpaceRealization> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(GexError::Domain(format!(
            "radius must be positive, got {r}"
        )));
    }
    let (ca, cb, cg, sg) = (a.alpha.cos(), a.beta.cos(), a.gamma.cos(), a.gamma.sin());
    let cot_gp = (ca + cb * cg) / (cb * sg);
    let gamma_prime = (1.0 / cot_gp).atan();
    let sin_gp = (1.0 + cot_gp * cot_gp).powf(-0.5);
    let ac = r * cb / sin_gp;
    let r_prime = (ac * ac - r * r).sqrt();
    let half = ac * gamma_prime.cos();

    let pa = [-half, 0.0];
    let pb = [half, 0.0];
    let pd = [0.0, half * a.gamma.tan()];
    let pc = [pa[0] + ac * gamma_prime.cos(), ac * gamma_prime.sin()];
    let f1 = Circle {
        center: pc,
        radius: r,
    };
    let f2 = Line::through(pb, pd);
    let f3 = Line::through(pa, pd);
    let f4 = Line::through(pa, pb);

    // Intersections of F1 with F4 and F3, the ones nearer to A.
    let near_a = |l: &Line| -> Point {
        let t0 = dot(sub(pc, l.point), l.direction);
        let h = l.distance_to(pc);
        let t = t0 - (r * r - h * h).max(0.0).sqrt();
        [
            l.point[0] + t * l.direction[0],
            l.point[1] + t * l.direction[1],
        ]
    };
    let far_a = |l: &Line| -> Point {
        let t0 = dot(sub(pc, l.point), l.direction);
        let h = l.distance_to(pc);
        let t = t0 + (r * r - h * h).max(0.0).sqrt();
        [
            l.point[0] + t * l.direction[0],
            l.point[1] + t * l.direction[1],
        ]
    };

    let s = |center: Point| Circle {
        center,
        radius: r_prime,
    };
    Ok(HalfSpaceRealization {
        r,
        r_prime,
        gamma_prime,
        f1,
        s2: s(pa),
        s3: s(pb),
        s4: s(pd),
        f2,
        f3,
        f4,
        a: pa,
        b: pb,
        c: pc,
        d: pd,
        v: near_a(&f4),
        p: far_a(&f3),
        q: near_a(&f3),
    })
}

/// Residuals of every geometric requirement on a realization.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealizationCheck {
    pub residuals: Vec<(String, f64)>,
}

impl RealizationCheck {
    pub fn max_residual(&self) -> f64 {
        self.residuals
            .iter()
            .map(|(_, r)| r.abs())
            .fold(0.0, f64::max)
    }

    pub fn passed(&self, tol: f64) -> bool {
        self.max_residual() <= tol
    }
}

fn angle_at(vertex: Point, p: Point, q: Point) -> f64 {
    let (u, v) = (sub(p, vertex), sub(q, vertex));
    cross(u, v).abs().atan2(dot(u, v))
}

impl HalfSpaceRealization {
    pub fn circles(&self) -> [Circle; 4] {
        [self.f1, self.s2, self.s3, self.s4]
    }

    /// Squared height of the lowest admissible point above `p`: the solid
    /// lies above `F1` and outside `S2, S3, S4`.
    pub fn z_low_sq(&self, p: Point) -> f64 {
        self.circles()
            .iter()
            .map(|c| c.height_sq(p))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Checks orthogonality, angles, the isosceles shape and both closed forms.
    pub fn verify(&self, a: &AngleData) -> RealizationCheck {
        let mut res: Vec<(String, f64)> = Vec::new();
        let scale = self.r;
        for (name, s) in [("S2", self.s2), ("S3", self.s3), ("S4", self.s4)] {
            let d = dist(self.f1.center, s.center);
            res.push((
                format!("F1 orthogonal to {name}"),
                (d * d - self.r * self.r - s.radius * s.radius) / (scale * scale),
            ));
        }
        // A line is orthogonal to a circle exactly when it passes through its center.
        let lines = [("F2", self.f2), ("F3", self.f3), ("F4", self.f4)];
        let spheres = [("S2", self.s2), ("S3", self.s3), ("S4", self.s4)];
        for (j, (ln, l)) in lines.iter().enumerate() {
            for (k, (sn, s)) in spheres.iter().enumerate() {
                if j != k {
                    res.push((
                        format!("{ln} orthogonal to {sn}"),
                        l.distance_to(s.center) / scale,
                    ));
                }
            }
        }
        res.push((
            "angle F3,F4 at A = gamma".into(),
            angle_at(self.a, self.b, self.d) - a.gamma,
        ));
        res.push((
            "angle F2,F4 at B = gamma".into(),
            angle_at(self.b, self.a, self.d) - a.gamma,
        ));
        res.push((
            "angle F2,F3 at D = delta".into(),
            angle_at(self.d, self.a, self.b) - a.delta,
        ));
        res.push((
            "angle F1,F4 = beta".into(),
            self.f1.cos_angle_with_line(&self.f4) - a.beta.cos(),
        ));
        res.push((
            "angle F1,F3 = alpha".into(),
            self.f1.cos_angle_with_line(&self.f3) - a.alpha.cos(),
        ));
        res.push((
            "angle F1,F2 = alpha".into(),
            self.f1.cos_angle_with_line(&self.f2) - a.alpha.cos(),
        ));
        let (ad, bd, ab) = (
            dist(self.a, self.d),
            dist(self.b, self.d),
            dist(self.a, self.b),
        );
        res.push(("|AD| = |BD|".into(), (ad - bd) / scale));
        res.push((
            "|AB| = 2|AD|cos(gamma)".into(),
            (ab - 2.0 * ad * a.gamma.cos()) / scale,
        ));
        res.push((
            "R'^2 closed form".into(),
            (self.r_prime / self.r).powi(2) - rprime_ratio_sq(a),
        ));
        res.push((
            "|AB| closed form".into(),
            (ab - ab_closed_form(a, self.r_prime)) / scale,
        ));
        res.push((
            "angle CAV = gamma'".into(),
            angle_at(self.a, self.c, self.v) - self.gamma_prime,
        ));
        res.push((
            "angle CAQ = gamma - gamma'".into(),
            angle_at(self.a, self.c, self.q) - (a.gamma - self.gamma_prime),
        ));
        res.push((
            "angle AVC = pi/2 + beta".into(),
            angle_at(self.v, self.a, self.c) - (std::f64::consts::FRAC_PI_2 + a.beta),
        ));
        res.push((
            "angle AQC = pi/2 + alpha".into(),
            angle_at(self.q, self.a, self.c) - (std::f64::consts::FRAC_PI_2 + a.alpha),
        ));
        for (name, p) in [("V", self.v), ("P", self.p), ("Q", self.q)] {
            res.push((
                format!("{name} on F1"),
                self.f1.height_sq(p) / (scale * scale),
            ));
        }
        res.push(("V on F4".into(), self.f4.distance_to(self.v) / scale));
        res.push(("P on F3".into(), self.f3.distance_to(self.p) / scale));
        res.push(("Q on F3".into(), self.f3.distance_to(self.q) / scale));
        RealizationCheck { residuals: res }
    }
}

/// The reduced inequality `2cos³β + 5cos²β − 1 > 0` together with the
/// direct comparison of `R′` and `R` it stands for.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RprimeWitness {
    pub cubic: f64,
    pub ratio_sq: f64,
}

impl RprimeWitness {
    pub fn holds(&self) -> bool {
        self.cubic > 0.0 && self.ratio_sq > 1.0
    }

    /// Both criteria agree on whether `R′ > R`.
    pub fn consistent(&self) -> bool {
        (self.cubic > 0.0) == (self.ratio_sq > 1.0)
    }
}

pub fn rprime_witness(a: &AngleData) -> RprimeWitness {
    let cb = a.beta.cos();
    RprimeWitness {
        cubic: 2.0 * cb.powi(3) + 5.0 * cb * cb - 1.0,
        ratio_sq: rprime_ratio_sq(a),
    }
}

/// True when the reduced inequality holds and agrees with `R′ > R`.
pub fn check_rprime_inequality(a: &AngleData) -> bool {
    let w = rprime_witness(a);
    w.holds() && w.consistent()
}

/// Asserts the realization is valid to `tol`.
pub fn verified_realization(a: &AngleData, r: f64, tol: f64) -> Result<HalfSpaceRealization> {
    let h = realize_half_space(a, r)?;
    let check = h.verify(a);
    invariant(check.passed(tol), || {
        let worst = check
            .residuals
            .iter()
            .max_by(|x, y| x.1.abs().total_cmp(&y.1.abs()))
            .expect("non-empty");
        format!("realization fails '{}' by {:e}", worst.0, worst.1)
    })?;
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angles::angles;

    #[test]
    fn g2_rprime_and_ab() {
        let a = angles(2).unwrap();
        let h = realize_half_space(&a, 1.0).unwrap();
        assert!((h.r_prime.powi(2) - 1.25).abs() < 1e-12);
        let expected = 2.0 * h.r_prime * (a.alpha.cos() + a.beta.cos() * a.gamma.cos())
            / (5.0f64 / 6.0).sqrt();
        assert!((dist(h.a, h.b) - expected).abs() < 1e-12);
    }

    #[test]
    fn realization_satisfies_all_requirements() {
        for g in [2, 3, 7, 40, 500] {
            let a = angles(g).unwrap();
            let h = realize_half_space(&a, 1.0).unwrap();
            let c = h.verify(&a);
            assert!(c.passed(1e-9), "g={g}: {:?}", c.residuals);
        }
    }

    #[test]
    fn scaling_doubles_lengths() {
        let a = angles(4).unwrap();
        let h1 = realize_half_space(&a, 1.0).unwrap();
        let h2 = realize_half_space(&a, 2.0).unwrap();
        assert!((h2.r_prime - 2.0 * h1.r_prime).abs() < 1e-12);
        assert!((dist(h2.a, h2.d) - 2.0 * dist(h1.a, h1.d)).abs() < 1e-12);
        assert!((h2.r_prime / h2.r - h1.r_prime / h1.r).abs() < 1e-12);
    }

    #[test]
    fn rprime_exceeds_r() {
        let w = rprime_witness(&angles(2).unwrap());
        assert!((w.cubic - 0.5).abs() < 1e-12);
        assert!((w.ratio_sq - 1.25).abs() < 1e-12);
        for g in 2..200 {
            assert!(check_rprime_inequality(&angles(g).unwrap()));
        }
    }

    #[test]
    fn bad_radius_rejected() {
        let a = angles(2).unwrap();
        assert!(realize_half_space(&a, 0.0).is_err());
        assert!(realize_half_space(&a, f64::NAN).is_err());
    }

    #[test]
    fn triangle_vertices_lie_under_the_solid() {
        let a = angles(3).unwrap();
        let h = realize_half_space(&a, 1.0).unwrap();
        for p in [h.a, h.b, h.d, [0.0, 0.0]] {
            assert!(h.z_low_sq(p) > 0.0);
        }
    }
}
