//! Dihedral angles of the partially truncated tetrahedra of `T_g` and the
//! gluing-consistency equation they satisfy.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{invariant, GexError, Result};
use crate::triangulation::{edge_classes, edge_index, Triangulation};

/// The four angles shared by every tetrahedron of `T_g`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AngleData {
    pub g: usize,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
}

/// Tolerance used for exact trigonometric identities.
pub const IDENTITY_TOL: f64 = 1e-12;

/// Closed-form angles for genus `g`.
pub fn angles(g: usize) -> Result<AngleData> {
    if g < 2 {
        return Err(GexError::Domain(format!("angles need g >= 2, got {g}")));
    }
    let alpha = PI / (2 * g + 2) as f64;
    let gamma = (1.0 / (2.0 * alpha.cos())).acos();
    let a = AngleData {
        g,
        alpha,
        beta: 2.0 * alpha,
        gamma,
        delta: PI - 2.0 * gamma,
    };
    a.validate()?;
    Ok(a)
}

impl AngleData {
    /// Arbitrary angles, unchecked. Used to probe the checks with perturbed data.
    pub fn from_angles(g: usize, alpha: f64, beta: f64, gamma: f64, delta: f64) -> Self {
        AngleData {
            g,
            alpha,
            beta,
            gamma,
            delta,
        }
    }

    /// Returns a copy with `gamma` shifted by `eps`, everything else untouched.
    pub fn perturb_gamma(self, eps: f64) -> Self {
        AngleData {
            gamma: self.gamma + eps,
            ..self
        }
    }

    pub fn perturb_delta(self, eps: f64) -> Self {
        AngleData {
            delta: self.delta + eps,
            ..self
        }
    }

    /// Checks the defining relations of the family.
    pub fn validate(&self) -> Result<()> {
        let AngleData {
            g,
            alpha,
            beta,
            gamma,
            delta,
        } = *self;
        for (name, v) in [
            ("alpha", alpha),
            ("beta", beta),
            ("gamma", gamma),
            ("delta", delta),
        ] {
            invariant(v > 0.0 && v < PI, || {
                format!("{name} = {v} is outside (0, pi)")
            })?;
        }
        let checks = [
            ("alpha = pi/(2g+2)", alpha - PI / (2 * g + 2) as f64),
            ("beta = 2 alpha", beta - 2.0 * alpha),
            (
                "2 cos(alpha) cos(gamma) = 1",
                2.0 * alpha.cos() * gamma.cos() - 1.0,
            ),
            ("delta = pi - 2 gamma", delta + 2.0 * gamma - PI),
            (
                "2 cos^2(alpha) = 1 + cos(beta)",
                2.0 * alpha.cos().powi(2) - 1.0 - beta.cos(),
            ),
        ];
        for (name, r) in checks {
            invariant(r.abs() <= IDENTITY_TOL, || format!("{name} fails by {r:e}"))?;
        }
        Ok(())
    }

    /// Angle sum of the Euclidean cusp triangle, `delta + 2 gamma`.
    pub fn cusp_triangle_angle_sum(&self) -> f64 {
        self.delta + 2.0 * self.gamma
    }
}

/// Difference of the two sides of the consistency equation
/// `(cos γ cos α + cos β)/(sin γ sin α) = (cos δ cos α + cos α)/(sin δ sin α)`.
pub fn check_consistency(a: &AngleData) -> f64 {
    let (ca, sa) = (a.alpha.cos(), a.alpha.sin());
    let lhs = (a.gamma.cos() * ca + a.beta.cos()) / (a.gamma.sin() * sa);
    let rhs = (a.delta.cos() * ca + ca) / (a.delta.sin() * sa);
    lhs - rhs
}

/// Which slot of a tetrahedron plays the role of each abstract vertex
/// `w1 .. w4`: `w1` ideal, `w2`/`w3` the apexes `v1`/`v2`, `w4` the other
/// equatorial vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRoles {
    pub w: [usize; 4],
}

impl VertexRoles {
    /// Slot to role index (0-based: role 0 is `w1`).
    pub fn role_of(&self, slot: usize) -> usize {
        self.w
            .iter()
            .position(|&s| s == slot)
            .expect("slot in 0..4")
    }
}

/// Slot roles for tetrahedron `t`, read from the built triangulation.
pub fn vertex_roles(t: &Triangulation, tet: usize) -> Result<VertexRoles> {
    let ideal = t.ideal_slot(tet)?;
    invariant(ideal >= 2, || {
        format!("tetrahedron {tet} has an apex as its ideal vertex")
    })?;
    Ok(VertexRoles {
        w: [ideal, 0, 1, 5 - ideal],
    })
}

/// Dihedral angle between two roles (0-based role indices).
pub fn role_angle(a: &AngleData, r1: usize, r2: usize) -> f64 {
    match (r1.min(r2), r1.max(r2)) {
        (0, 1) | (0, 2) => a.gamma,
        (0, 3) => a.delta,
        (1, 2) => a.beta,
        (1, 3) | (2, 3) => a.alpha,
        _ => panic!("roles {r1}, {r2} do not span an edge"),
    }
}

/// The six dihedral angles of one tetrahedron, indexed like [`crate::triangulation::EDGES`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TetShape {
    pub ideal_vertex: usize,
    pub dihedral: [f64; 6],
}

impl TetShape {
    /// Sum of the three angles at the edges through the ideal vertex.
    pub fn ideal_vertex_angle_sum(&self) -> f64 {
        (0..4)
            .filter(|&s| s != self.ideal_vertex)
            .map(|s| self.dihedral[edge_index(self.ideal_vertex, s)])
            .sum()
    }
}

pub fn tet_shape(t: &Triangulation, a: &AngleData, tet: usize) -> Result<TetShape> {
    let roles = vertex_roles(t, tet)?;
    let mut dihedral = [0.0; 6];
    for (i, &(x, y)) in crate::triangulation::EDGES.iter().enumerate() {
        dihedral[i] = role_angle(a, roles.role_of(x), roles.role_of(y));
    }
    Ok(TetShape {
        ideal_vertex: roles.w[0],
        dihedral,
    })
}

/// Total dihedral angle around each edge class `e_k`, summed over the actual
/// members of the class.
pub fn edge_angle_sums(t: &Triangulation, a: &AngleData) -> Result<Vec<f64>> {
    let shapes = (0..t.num_tets())
        .map(|i| tet_shape(t, a, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(edge_classes(t)?
        .iter()
        .map(|c| {
            c.members
                .iter()
                .map(|e| shapes[e.tet].dihedral[e.edge])
                .sum()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::build_triangulation;

    #[test]
    fn g2_values() {
        let a = angles(2).unwrap();
        assert!((a.alpha - PI / 6.0).abs() < 1e-15);
        assert!((a.beta - PI / 3.0).abs() < 1e-15);
        assert!((a.gamma - (1.0 / 3f64.sqrt()).acos()).abs() < 1e-14);
        assert!((a.delta - (1.0 / 3.0f64).acos()).abs() < 1e-14);
        assert!((a.cusp_triangle_angle_sum() - PI).abs() < 1e-15);
    }

    #[test]
    fn defining_relation_g10() {
        let a = angles(10).unwrap();
        assert!((a.gamma.cos() * 2.0 * a.alpha.cos() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn small_genus_rejected() {
        assert!(matches!(angles(1), Err(GexError::Domain(_))));
    }

    #[test]
    fn consistency_holds_and_detects_perturbation() {
        assert!(check_consistency(&angles(2).unwrap()).abs() <= 1e-12);
        assert!(check_consistency(&angles(100).unwrap()).abs() <= 1e-12);
        let bad = angles(2).unwrap().perturb_gamma(0.01);
        assert!(check_consistency(&bad).abs() > 1e-3);
        assert!(bad.validate().is_err());
    }

    #[test]
    fn edges_receive_full_turn() {
        for g in [2, 3, 6] {
            let t = build_triangulation(g).unwrap();
            let a = angles(g).unwrap();
            for s in edge_angle_sums(&t, &a).unwrap() {
                assert!((s - 2.0 * PI).abs() < 1e-12, "g={g}: {s}");
            }
        }
    }

    #[test]
    fn shape_pattern_on_first_tet() {
        let t = build_triangulation(2).unwrap();
        let a = angles(2).unwrap();
        // Tet 0 is (v1, v2, p0, p1) with p0 ideal.
        let s = tet_shape(&t, &a, 0).unwrap();
        assert_eq!(s.ideal_vertex, 2);
        assert_eq!(s.dihedral[edge_index(2, 3)], a.delta);
        assert_eq!(s.dihedral[edge_index(0, 1)], a.beta);
        assert_eq!(s.dihedral[edge_index(0, 2)], a.gamma);
        assert_eq!(s.dihedral[edge_index(1, 3)], a.alpha);
        assert!((s.ideal_vertex_angle_sum() - PI).abs() < 1e-15);
    }
}
