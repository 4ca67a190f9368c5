//! Tilts of the tetrahedra of `T_g` and the resulting certificate that `T_g`
//! is the canonical decomposition of `M_g`.

use serde::{Deserialize, Serialize};

use crate::angles::{vertex_roles, AngleData};
use crate::error::{invariant, GexError, Result};
use crate::triangulation::Triangulation;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TiltData {
    pub g: usize,
    pub r: f64,
    pub k: f64,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
    pub d4: f64,
    /// `t(F1) .. t(F4)`, where `F_i` is the face opposite `w_i`.
    pub t: [f64; 4],
}

fn d_terms(a: &AngleData) -> (f64, f64) {
    let (ca, cb, cg, cd) = (a.alpha.cos(), a.beta.cos(), a.gamma.cos(), a.delta.cos());
    let d2 = ca * ca + cb * cb + cg * cg + 2.0 * ca * cb * cg - 1.0;
    let d4 = 2.0 * ca * ca + cd * cd + 2.0 * ca * ca * cd - 1.0;
    (d2, d4)
}

/// `d1` without its factor `r`.
fn d1_per_r(a: &AngleData) -> f64 {
    let (sg, sd) = (a.gamma.sin(), a.delta.sin());
    2.0 * sg * sg * sd / (2.0 * sg * a.alpha.cos() + sd * a.beta.cos())
}

pub fn compute_tilts(a: &AngleData, r: f64, k: f64) -> Result<TiltData> {
    if !(r > 0.0 && k > 0.0) {
        return Err(GexError::Domain(format!(
            "r and k must be positive, got r={r}, k={k}"
        )));
    }
    let (ca, cb, cg, cd) = (a.alpha.cos(), a.beta.cos(), a.gamma.cos(), a.delta.cos());
    let (d2, d4) = d_terms(a);
    invariant(d2 > 0.0 && d4 > 0.0, || {
        format!("d2 = {d2}, d4 = {d4} must be positive")
    })?;
    let d1 = r * d1_per_r(a);
    let (s2, s4) = (d2.sqrt(), d4.sqrt());
    let t1 = d1 - k * (2.0 * s2 * ca + s4 * cb);
    let t23 = -d1 * ca + k * (s2 * (1.0 - cd) - s4 * cg);
    let t4 = -d1 * cb + k * (-2.0 * s2 * cg + s4);
    Ok(TiltData {
        g: a.g,
        r,
        k,
        d1,
        d2,
        d3: d2,
        d4,
        t: [t1, t23, t23, t4],
    })
}

/// Residuals of the two vanishing expressions and of the facts behind them.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TiltIdentities {
    /// `√d2 (1 − cos δ) − √d4 cos γ`
    pub res1: f64,
    /// `−2 √d2 cos γ + √d4`
    pub res2: f64,
    /// `d4 − 4 d2 cos² γ`
    pub d4_relation: f64,
    /// `1 − cos δ − 2 cos² γ`
    pub half_angle: f64,
}

impl TiltIdentities {
    pub fn max_abs(&self) -> f64 {
        [self.res1, self.res2, self.d4_relation, self.half_angle]
            .iter()
            .fold(0.0, |m, x| m.max(x.abs()))
    }
}

pub fn check_tilt_identities(a: &AngleData) -> TiltIdentities {
    let (cg, cd) = (a.gamma.cos(), a.delta.cos());
    let (d2, d4) = d_terms(a);
    let (s2, s4) = (d2.max(0.0).sqrt(), d4.max(0.0).sqrt());
    TiltIdentities {
        res1: s2 * (1.0 - cd) - s4 * cg,
        res2: -2.0 * s2 * cg + s4,
        d4_relation: d4 - 4.0 * d2 * cg * cg,
        half_angle: 1.0 - cd - 2.0 * cg * cg,
    }
}

/// The value of `r` below which `t(F1) < 0`.
pub fn r_threshold(a: &AngleData, k: f64) -> f64 {
    let (d2, d4) = d_terms(a);
    k * (2.0 * d2.sqrt() * a.alpha.cos() + d4.sqrt() * a.beta.cos()) / d1_per_r(a)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FacePairSum {
    /// `(tet, face)` on each side of the gluing.
    pub sides: [(usize, usize); 2],
    /// Which of `F1 .. F4` each side is (1-based).
    pub face_roles: [usize; 2],
    pub sum: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CanonicityCertificate {
    pub g: usize,
    pub r_used: f64,
    pub k_used: f64,
    pub r_threshold: f64,
    pub tilts: [f64; 4],
    pub per_face_pair_sums: Vec<FacePairSum>,
    pub verdict: bool,
    pub notes: Vec<String>,
}

/// Assembles the tilt sums over every glued face pair of `t` at the given `r`.
pub fn certify_canonical_at(
    t: &Triangulation,
    a: &AngleData,
    k: f64,
    r: f64,
) -> Result<CanonicityCertificate> {
    invariant(t.g() == a.g, || {
        format!("triangulation has g = {}, angles have g = {}", t.g(), a.g)
    })?;
    let tilt = compute_tilts(a, r, k)?;
    let roles = (0..t.num_tets())
        .map(|i| vertex_roles(t, i))
        .collect::<Result<Vec<_>>>()?;
    let per_face_pair_sums: Vec<FacePairSum> = t
        .face_pairs()
        .into_iter()
        .map(|(x, y)| {
            let rx = roles[x.0].role_of(x.1);
            let ry = roles[y.0].role_of(y.1);
            FacePairSum {
                sides: [x, y],
                face_roles: [rx + 1, ry + 1],
                sum: tilt.t[rx] + tilt.t[ry],
            }
        })
        .collect();
    let verdict = per_face_pair_sums.iter().all(|p| p.sum < 0.0);
    Ok(CanonicityCertificate {
        g: a.g,
        r_used: r,
        k_used: k,
        r_threshold: r_threshold(a, k),
        tilts: tilt.t,
        per_face_pair_sums,
        verdict,
        notes: vec![
            "F_i is the face opposite w_i; w1 is the ideal vertex, w2 and w3 the apexes v1 and v2"
                .into(),
            "the third tilt expression is evaluated as t(F4): F2 and F3 share the second one"
                .into(),
            "k is a free positive scale; the signs of t(F2), t(F3), t(F4) do not depend on it"
                .into(),
        ],
    })
}

/// Certificate at `r = r*/2`. For this family a negative verdict cannot
/// happen and is reported as an invariant violation.
pub fn certify_canonical(
    t: &Triangulation,
    a: &AngleData,
    k: f64,
) -> Result<CanonicityCertificate> {
    let cert = certify_canonical_at(t, a, k, 0.5 * r_threshold(a, k))?;
    invariant(cert.verdict, || {
        format!("tilt sums are not all negative for g = {}", a.g)
    })?;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angles::angles;
    use crate::triangulation::build_triangulation;

    #[test]
    fn g2_d_values() {
        let t = compute_tilts(&angles(2).unwrap(), 1.0, 1.0).unwrap();
        assert!((t.d2 - 5.0 / 6.0).abs() < 1e-12);
        assert!((t.d4 - 10.0 / 9.0).abs() < 1e-12);
        assert_eq!(t.d2, t.d3);
    }

    #[test]
    fn k_terms_vanish() {
        for (g, r, k) in [(2, 0.3, 1.0), (9, 2.0, 0.01), (40, 1e-3, 7.5)] {
            let a = angles(g).unwrap();
            let t = compute_tilts(&a, r, k).unwrap();
            assert!((t.t[1] + t.d1 * a.alpha.cos()).abs() < 1e-12);
            assert!((t.t[3] + t.d1 * a.beta.cos()).abs() < 1e-12);
            assert_eq!(t.t[1], t.t[2]);
        }
    }

    #[test]
    fn identities_vanish_and_detect_perturbation() {
        for g in [2, 37] {
            assert!(check_tilt_identities(&angles(g).unwrap()).max_abs() <= 1e-12);
        }
        let bad = check_tilt_identities(&angles(2).unwrap().perturb_delta(0.01));
        assert!(bad.res1.abs() > 1e-4);
    }

    #[test]
    fn threshold_controls_first_tilt() {
        let a = angles(6).unwrap();
        let rs = r_threshold(&a, 1.0);
        assert!(compute_tilts(&a, 0.99 * rs, 1.0).unwrap().t[0] < 0.0);
        assert!(compute_tilts(&a, 1.01 * rs, 1.0).unwrap().t[0] > 0.0);
    }

    #[test]
    fn g2_certificate() {
        let t = build_triangulation(2).unwrap();
        let a = angles(2).unwrap();
        let c = certify_canonical(&t, &a, 1.0).unwrap();
        assert!(c.verdict);
        assert_eq!(c.per_face_pair_sums.len(), 12);
        assert!(c.per_face_pair_sums.iter().all(|p| p.sum < 0.0));
        let big = certify_canonical_at(&t, &a, 1.0, 10.0 * c.r_threshold).unwrap();
        assert!(big.tilts[0] > 0.0 && !big.verdict);
    }

    #[test]
    fn faces_glue_to_faces_of_the_same_role() {
        let t = build_triangulation(3).unwrap();
        let c = certify_canonical(&t, &angles(3).unwrap(), 1.0).unwrap();
        for p in &c.per_face_pair_sums {
            let [x, y] = p.face_roles;
            assert!(x == y || (x, y) == (2, 3) || (x, y) == (3, 2), "{p:?}");
        }
    }

    #[test]
    fn mismatched_genus_rejected() {
        let t = build_triangulation(3).unwrap();
        assert!(certify_canonical(&t, &angles(2).unwrap(), 1.0).is_err());
    }
}
