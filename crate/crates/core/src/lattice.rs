//! Rank-two lattices in the plane, represented with complex numbers.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{GexError, Result};

pub fn cross(u: Complex64, v: Complex64) -> f64 {
    (u.conj() * v).im
}

pub fn dot(u: Complex64, v: Complex64) -> f64 {
    (u.conj() * v).re
}

/// Lagrange-Gauss reduction: returns `(b1, b2)` spanning the same lattice
/// with `|b1| <= |b2|` and `|b1 · b2| <= |b1|² / 2`.
pub fn gauss_reduce(mut b1: Complex64, mut b2: Complex64) -> (Complex64, Complex64) {
    if b1.norm_sqr() > b2.norm_sqr() {
        std::mem::swap(&mut b1, &mut b2);
    }
    loop {
        let mu = (dot(b1, b2) / b1.norm_sqr()).round();
        b2 -= b1 * mu;
        if b2.norm_sqr() >= b1.norm_sqr() {
            return (b1, b2);
        }
        std::mem::swap(&mut b1, &mut b2);
    }
}

/// Real coordinates of `v` in the basis `(b1, b2)`.
pub fn coords(b1: Complex64, b2: Complex64, v: Complex64) -> (f64, f64) {
    let det = cross(b1, b2);
    (cross(v, b2) / det, cross(b1, v) / det)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeBasis {
    pub b1: Complex64,
    pub b2: Complex64,
}

impl LatticeBasis {
    pub fn covolume(&self) -> f64 {
        cross(self.b1, self.b2).abs()
    }

    /// Integer coordinates of `v`, if it lies in the lattice to within `tol`
    /// (absolute, in the plane).
    pub fn integer_coords(&self, v: Complex64, tol: f64) -> Option<(i64, i64)> {
        let (x, y) = coords(self.b1, self.b2, v);
        let (i, j) = (x.round(), y.round());
        let back = self.b1 * i + self.b2 * j;
        ((back - v).norm() <= tol).then_some((i as i64, j as i64))
    }

    /// Shortest lattice vector not parallel to `v`, ties broken by the
    /// smallest angle to `v`. Searches a window that is ample for a reduced basis.
    pub fn shortest_independent(&self, v: Complex64) -> Complex64 {
        let mut best: Option<(f64, f64, Complex64)> = None;
        for i in -6i64..=6 {
            for j in -6i64..=6 {
                let w = self.b1 * i as f64 + self.b2 * j as f64;
                if cross(v, w).abs() <= 1e-9 * v.norm() * w.norm().max(1.0) {
                    continue;
                }
                let angle = cross(v, w).atan2(dot(v, w));
                if angle <= 0.0 {
                    continue;
                }
                let key = (w.norm_sqr(), angle);
                if best.is_none_or(|(l, a, _)| {
                    key.0 < l - 1e-12 * l || ((key.0 - l).abs() <= 1e-12 * l && key.1 < a)
                }) {
                    best = Some((key.0, key.1, w));
                }
            }
        }
        best.expect("a rank-two lattice has independent vectors").2
    }
}

/// One-dimensional Euclid on two parallel vectors.
fn collinear_gcd(mut u: Complex64, mut v: Complex64, tol: f64) -> Complex64 {
    while v.norm() > tol {
        let t = (dot(u, v) / u.norm_sqr()).round();
        let r = v - u * t;
        v = u;
        u = r;
        if u.norm() <= tol {
            return v;
        }
    }
    u
}

/// Basis of the lattice generated by `gens`. Vectors shorter than `tol`
/// count as zero; `tol` also bounds the rounding residual accepted when a
/// generator is already in the current lattice.
pub fn lattice_basis(gens: &[Complex64], tol: f64) -> Result<LatticeBasis> {
    let mut pending: Vec<Complex64> = gens.iter().copied().filter(|v| v.norm() > tol).collect();
    pending.reverse();
    let b1 = pending
        .pop()
        .ok_or_else(|| GexError::Developing("no non-zero translations".into()))?;
    let mut b1 = b1;
    let mut b2: Option<Complex64> = None;
    let mut steps = 0usize;
    while let Some(w) = pending.pop() {
        steps += 1;
        if steps > 100_000 {
            return Err(GexError::Developing(
                "lattice reduction did not terminate".into(),
            ));
        }
        let Some(c2) = b2 else {
            if cross(b1, w).abs() <= tol * b1.norm().max(w.norm()) {
                b1 = collinear_gcd(b1, w, tol);
            } else {
                let (x, y) = gauss_reduce(b1, w);
                b1 = x;
                b2 = Some(y);
            }
            continue;
        };
        let (x, y) = coords(b1, c2, w);
        let r = w - b1 * x.round() - c2 * y.round();
        if r.norm() <= tol {
            continue;
        }
        if cross(b1, r).abs() <= tol * b1.norm() {
            b1 = collinear_gcd(b1, r, tol);
            let (u, v) = gauss_reduce(b1, c2);
            b1 = u;
            b2 = Some(v);
        } else {
            pending.push(c2);
            let (u, v) = gauss_reduce(b1, r);
            b1 = u;
            b2 = Some(v);
        }
    }
    let b2 =
        b2.ok_or_else(|| GexError::Developing("translations span a lattice of rank < 2".into()))?;
    // Orient positively.
    let b2 = if cross(b1, b2) < 0.0 { -b2 } else { b2 };
    Ok(LatticeBasis { b1, b2 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64, y: f64) -> Complex64 {
        Complex64::new(x, y)
    }

    #[test]
    fn recovers_square_lattice_from_redundant_generators() {
        let gens = [
            c(3.0, 0.0),
            c(2.0, 1.0),
            c(5.0, 1.0),
            c(0.0, 7.0),
            c(1.0, 0.0) * 2.0,
        ];
        let b = lattice_basis(&gens, 1e-9).unwrap();
        assert!((b.covolume() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn index_two_sublattice_generators_keep_covolume() {
        let (u, v) = (c(1.3, 0.2), c(0.4, 2.1));
        let gens = [u * 2.0, v, u * 2.0 + v, u * 6.0 - v * 3.0];
        let b = lattice_basis(&gens, 1e-9).unwrap();
        assert!((b.covolume() - 2.0 * cross(u, v).abs()).abs() < 1e-9);
        assert!(b.integer_coords(u, 1e-9).is_none());
        assert!(b.integer_coords(u * 2.0 + v * 5.0, 1e-9).is_some());
    }

    #[test]
    fn rank_one_is_an_error() {
        assert!(lattice_basis(&[c(1.0, 1.0), c(2.0, 2.0)], 1e-9).is_err());
        assert!(lattice_basis(&[], 1e-9).is_err());
    }

    #[test]
    fn gauss_reduced_is_short() {
        let (b1, b2) = gauss_reduce(c(1.0, 0.0), c(17.3, 1.0));
        assert!((b1.norm() - 1.0).abs() < 1e-12);
        assert!(dot(b1, b2).abs() <= 0.5 * b1.norm_sqr() + 1e-12);
    }

    #[test]
    fn shortest_independent_prefers_small_angle_on_ties() {
        let b = LatticeBasis {
            b1: c(1.0, 0.0),
            b2: c(0.0, 1.0),
        };
        assert_eq!(b.shortest_independent(c(1.0, 0.0)), c(0.0, 1.0));
    }
}
