//! Static table of checkable claims.
//!
//! Each entry maps a stable claim id to a human-readable location string and
//! a checker. A checker returns `Ok((pass, witness))`; module errors are
//! turned into failing entries by the report assembler.

use std::f64::consts::PI;

use serde_json::{json, Value};

use gex_core::automorphism::{automorphism_group, check_dihedral};
use gex_core::cusp::{tiled_area, DEVELOPING_TOL};
use gex_core::halfspace::{realize_half_space, rprime_witness};
use gex_core::serialize::to_document;
use gex_core::slopes::certify_filling;
use gex_core::triangulation::VertexKind;
use gex_core::volume::{volume_row, VolumeRow, REFERENCE_LIMIT};
use gex_core::{
    angles, build_cusp_torus, build_triangulation, certify_canonical_at, check_consistency,
    check_tilt_identities, classify_vertex_links, cusp_area, edge_angle_sums, edge_classes,
    edge_slope_length, exhaustive_slope_audit, Slope,
};

use crate::config::Command;

/// Residual tolerance for closed-form identities.
pub const IDENTITY_TOL: f64 = 1e-12;
/// Residual tolerance for constructed geometry.
pub const GEOMETRY_TOL: f64 = 1e-9;

/// Inputs shared by every per-genus checker.
#[derive(Clone, Copy, Debug)]
pub struct CheckInputs {
    pub quadrature_tol: f64,
    pub coeff_bound: i64,
    pub k: f64,
}

pub type Checked = gex_core::Result<(bool, Value)>;
pub type Checker = fn(usize, &CheckInputs) -> Checked;

pub struct Claim {
    pub id: &'static str,
    pub location: &'static str,
    pub check: Checker,
}

/// Per-genus claims, sorted by id.
pub static CLAIMS: &[Claim] = &[
    Claim {
        id: "angles.consistency",
        location: "consistency equation (cos γ cos α + cos β)/(sin γ sin α) = cot α",
        check: angles_consistency,
    },
    Claim {
        id: "angles.edge_sums",
        location: "angle structure: 2π around every edge, π at the cusp triangle",
        check: angles_edge_sums,
    },
    Claim {
        id: "census.edges",
        location: "edge lemma: g+1 edges of incidence 6, one of 4g+4, one of 2g+2",
        check: census_edges,
    },
    Claim {
        id: "census.links",
        location: "vertex links: one torus cusp of 2g+2 triangles, genus g boundary",
        check: census_links,
    },
    Claim {
        id: "cusp.consistency",
        location: "cusp torus: edge slope length, area formula and lattice determinant",
        check: cusp_consistency,
    },
    Claim {
        id: "halfspace.realization",
        location: "upper half-space picture of the truncated tetrahedron with R′ > R",
        check: halfspace_realization,
    },
    Claim {
        id: "slopes.audit",
        location: "filling theorem: every slope but the meridian is longer than 6",
        check: slopes_audit,
    },
    Claim {
        id: "symmetry.dihedral",
        location: "symmetry theorem: Aut(T_g) is dihedral of order 2g+2, no reversing symmetry",
        check: symmetry_dihedral,
    },
    Claim {
        id: "tilts.canonical",
        location: "canonicity: all glued-face tilt sums negative at r = r*/2",
        check: tilts_canonical,
    },
    Claim {
        id: "tilts.identities",
        location: "tilt identities: both vanishing expressions and d4 = 4 d2 cos²γ",
        check: tilts_identities,
    },
    Claim {
        id: "triangulation.build",
        location: "construction of T_g by subdividing the double cone into 2g+2 tetrahedra",
        check: triangulation_build,
    },
    Claim {
        id: "volume.value",
        location: "volume of M_g as 2g+2 truncated tetrahedra, by adaptive cubature",
        check: volume_value,
    },
];

pub const VOLUME_LIMIT_ID: &str = "volume.limit";
pub const VOLUME_LIMIT_LOCATION: &str = "volume theorem: vol(M_g)/g increases to 5.419960359";

pub fn claim(id: &str) -> Option<&'static Claim> {
    CLAIMS.iter().find(|c| c.id == id)
}

/// Per-genus claim ids run by a command.
pub fn claims_for(command: Command) -> Vec<&'static str> {
    const VERIFY: [&str; 10] = [
        "angles.consistency",
        "angles.edge_sums",
        "census.edges",
        "census.links",
        "cusp.consistency",
        "halfspace.realization",
        "slopes.audit",
        "symmetry.dihedral",
        "tilts.canonical",
        "tilts.identities",
    ];
    match command {
        Command::Build => vec!["census.edges", "census.links", "triangulation.build"],
        Command::Verify | Command::All => VERIFY.to_vec(),
        Command::Volume => vec!["volume.value"],
        Command::Slopes => vec!["slopes.audit"],
        Command::Symmetry => vec!["symmetry.dihedral"],
        Command::Canonical => vec!["tilts.canonical", "tilts.identities"],
    }
}

fn angles_consistency(g: usize, _: &CheckInputs) -> Checked {
    let res = check_consistency(&angles(g)?);
    Ok((
        res.abs() <= IDENTITY_TOL,
        json!({ "residual": res, "tol": IDENTITY_TOL }),
    ))
}

fn angles_edge_sums(g: usize, _: &CheckInputs) -> Checked {
    let a = angles(g)?;
    a.validate()?;
    let t = build_triangulation(g)?;
    let worst_edge = edge_angle_sums(&t, &a)?
        .iter()
        .map(|s| (s - 2.0 * PI).abs())
        .fold(0.0, f64::max);
    let cusp = (a.cusp_triangle_angle_sum() - PI).abs();
    Ok((
        worst_edge <= IDENTITY_TOL && cusp <= IDENTITY_TOL,
        json!({
            "alpha": a.alpha,
            "beta": a.beta,
            "gamma": a.gamma,
            "delta": a.delta,
            "max_edge_sum_defect": worst_edge,
            "cusp_triangle_defect": cusp,
        }),
    ))
}

fn census_edges(g: usize, _: &CheckInputs) -> Checked {
    let classes = edge_classes(&build_triangulation(g)?)?;
    let mut got: Vec<usize> = classes.iter().map(|c| c.incidence).collect();
    let mut want = vec![6; g + 1];
    want.extend([4 * g + 4, 2 * g + 2]);
    got.sort_unstable();
    want.sort_unstable();
    Ok((got == want, json!({ "incidences": got, "expected": want })))
}

fn census_links(g: usize, _: &CheckInputs) -> Checked {
    let t = build_triangulation(g)?;
    let ideal = t
        .vertex_classes()
        .iter()
        .filter(|c| c.kind == VertexKind::Ideal)
        .count();
    let l = classify_vertex_links(&t)?;
    let pass = ideal == 1
        && l.cusp_link_genus == 1
        && l.cusp.triangles == 2 * g + 2
        && l.boundary.connected
        && l.boundary.euler_characteristic == 2 - 2 * g as i64;
    Ok((pass, json!({ "ideal_classes": ideal, "links": l })))
}

fn cusp_consistency(g: usize, _: &CheckInputs) -> Checked {
    let a = angles(g)?;
    let ct = build_cusp_torus(&build_triangulation(g)?, &a)?;
    let len_err = (edge_slope_length(&a) - ct.m.norm()).abs();
    let det_err = (ct.lattice.covolume() - cusp_area(&a)).abs();
    let area_err = (cusp_area(&a) - tiled_area(&a)).abs();
    let pass = len_err <= GEOMETRY_TOL
        && det_err <= GEOMETRY_TOL
        && area_err <= IDENTITY_TOL
        && ct.max_rotation_defect <= DEVELOPING_TOL
        && ct.max_vertex_loop_defect <= DEVELOPING_TOL;
    Ok((
        pass,
        json!({
            "edge_slope_length": ct.m.norm(),
            "second_slope_length": ct.l.norm(),
            "basis_angle": ct.basis_angle(),
            "area": cusp_area(&a),
            "edge_length_error": len_err,
            "lattice_det_error": det_err,
            "area_formula_error": area_err,
            "max_rotation_defect": ct.max_rotation_defect,
            "max_vertex_loop_defect": ct.max_vertex_loop_defect,
        }),
    ))
}

fn halfspace_realization(g: usize, _: &CheckInputs) -> Checked {
    let a = angles(g)?;
    let hs = realize_half_space(&a, 1.0)?;
    let check = hs.verify(&a);
    let w = rprime_witness(&a);
    let pass = check.passed(GEOMETRY_TOL) && w.holds() && w.consistent() && hs.r_prime > hs.r;
    Ok((
        pass,
        json!({
            "r": hs.r,
            "r_prime": hs.r_prime,
            "max_residual": check.max_residual(),
            "rprime_witness": w,
        }),
    ))
}

fn slopes_audit(g: usize, inp: &CheckInputs) -> Checked {
    let ct = build_cusp_torus(&build_triangulation(g)?, &angles(g)?)?;
    let audit = exhaustive_slope_audit(&ct, inp.coeff_bound)?;
    let meridian = certify_filling(&ct, Slope::MERIDIAN)?;
    let pass = audit.passed() && audit.short_slopes == [Slope::MERIDIAN];
    Ok((pass, json!({ "audit": audit, "meridian": meridian })))
}

fn symmetry_dihedral(g: usize, _: &CheckInputs) -> Checked {
    let group = automorphism_group(&build_triangulation(g)?)?;
    let check = check_dihedral(&group);
    let words: Vec<String> = group
        .dihedral_words()
        .into_iter()
        .map(|(i, j)| match (i, j) {
            (0, 0) => "1".to_string(),
            (i, 0) => format!("r^{i}"),
            (0, _) => "s".to_string(),
            (i, _) => format!("r^{i} s"),
        })
        .collect();
    let table: Vec<Vec<Option<usize>>> = group
        .elements
        .iter()
        .map(|x| {
            group
                .elements
                .iter()
                .map(|y| group.index_of(&x.compose(y)))
                .collect()
        })
        .collect();
    let pass = check.passed() && group.order() == 2 * g + 2 && group.reversing_seeds_extended == 0;
    Ok((
        pass,
        json!({
            "order": group.order(),
            "presentation": format!("<r, s | r^{}, s^2, s r s r>", g + 1),
            "elements": words,
            "multiplication_table": table,
            "check": check,
            "seeds_tried": group.seeds_tried,
            "reversing_seeds_tried": group.reversing_seeds_tried,
            "reversing_seeds_extended": group.reversing_seeds_extended,
        }),
    ))
}

fn tilts_canonical(g: usize, inp: &CheckInputs) -> Checked {
    let a = angles(g)?;
    let t = build_triangulation(g)?;
    let r = 0.5 * gex_core::tilts::r_threshold(&a, inp.k);
    let cert = certify_canonical_at(&t, &a, inp.k, r)?;
    let pass = cert.verdict && cert.per_face_pair_sums.iter().all(|p| p.sum < 0.0);
    Ok((pass, serde_json::to_value(&cert).unwrap_or(Value::Null)))
}

fn tilts_identities(g: usize, _: &CheckInputs) -> Checked {
    let id = check_tilt_identities(&angles(g)?);
    let pass = id.res1.abs() <= IDENTITY_TOL
        && id.res2.abs() <= IDENTITY_TOL
        && id.d4_relation.abs() <= IDENTITY_TOL;
    Ok((pass, json!({ "residuals": id, "tol": IDENTITY_TOL })))
}

fn triangulation_build(g: usize, _: &CheckInputs) -> Checked {
    let t = build_triangulation(g)?;
    let doc = to_document(&t)?;
    let pass = doc.tets.len() == 2 * g + 2;
    Ok((pass, serde_json::to_value(&doc).unwrap_or(Value::Null)))
}

fn volume_value(g: usize, inp: &CheckInputs) -> Checked {
    let row = volume_row(g, inp.quadrature_tol)?;
    let allowed = (2 * g + 2) as f64 * inp.quadrature_tol;
    Ok((
        row.abs_error_bound <= allowed,
        json!({ "row": row, "allowed_error": allowed }),
    ))
}

/// The sweep claim over several genera: `vol(M_g)/g` strictly increasing,
/// and within 0.01 of the reference constant once g = 500 is included.
pub fn volume_limit(rows: &[VolumeRow]) -> (bool, Value) {
    let increasing = rows.windows(2).all(|w| w[0].vol_per_g < w[1].vol_per_g);
    let last = rows.last().map(|r| (r.g, r.vol_per_g));
    let gap = last.map(|(_, v)| (v - REFERENCE_LIMIT).abs());
    let near = match last {
        Some((g, _)) if g >= 500 => gap.is_some_and(|d| d < 0.01),
        _ => true,
    };
    let per_g: Vec<Value> = rows.iter().map(|r| json!([r.g, r.vol_per_g])).collect();
    (
        increasing && near,
        json!({
            "reference": REFERENCE_LIMIT,
            "vol_per_g": per_g,
            "strictly_increasing": increasing,
            "last_gap": gap,
        }),
    )
}
