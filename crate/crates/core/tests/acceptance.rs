//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use gex_core::automorphism::{automorphism_group, check_dihedral};
use gex_core::cusp::tiled_area;
use gex_core::tilts::r_threshold;
use gex_core::triangulation::expected_incidence;
use gex_core::volume::REFERENCE_LIMIT;
use gex_core::{
    angles, build_cusp_torus, build_triangulation, certify_canonical_at, check_consistency,
    check_tilt_identities, classify_vertex_links, compute_tilts, cusp_area, edge_classes,
    edge_slope_length, exhaustive_slope_audit, volume_of_mg, AngleData, Slope,
};

struct Outcome {
    pass: bool,
    witness: String,
}

fn ok(pass: bool, witness: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        witness: witness.into(),
    }
}

type Criterion = (&'static str, fn() -> Outcome, Duration);

fn consistency_ok(a: &AngleData) -> bool {
    check_consistency(a).abs() <= 1e-12
}

fn tilt_identities_ok(a: &AngleData) -> bool {
    let id = check_tilt_identities(a);
    id.res1.abs() <= 1e-12 && id.res2.abs() <= 1e-12 && id.d4_relation.abs() <= 1e-12
}

fn c1() -> Outcome {
    let worst = (2..=1000)
        .map(|g| check_consistency(&angles(g).unwrap()).abs())
        .fold(0.0, f64::max);
    ok(
        worst <= 1e-12,
        format!("max |LHS - RHS| = {worst:.2e} over g = 2..1000"),
    )
}

fn c2() -> Outcome {
    for g in 2..=50 {
        let t = build_triangulation(g).unwrap();
        let classes = match edge_classes(&t) {
            Ok(c) => c,
            Err(e) => return ok(false, format!("g={g}: {e}")),
        };
        let mut got: Vec<usize> = classes.iter().map(|c| c.incidence).collect();
        let mut want: Vec<usize> = vec![6; g + 1];
        want.extend([4 * g + 4, 2 * g + 2]);
        got.sort_unstable();
        want.sort_unstable();
        let labels_ok = classes
            .iter()
            .all(|c| c.incidence == expected_incidence(g, c.label));
        if classes.len() != g + 3 || got != want || !labels_ok {
            return ok(
                false,
                format!(
                    "g={g}: incidences {:?}",
                    classes.iter().map(|c| c.incidence).collect::<Vec<_>>()
                ),
            );
        }
    }
    ok(
        true,
        "g+1 classes of incidence 6, one of 4g+4, one of 2g+2 for g = 2..50",
    )
}

fn c3() -> Outcome {
    for g in 2..=50 {
        let t = build_triangulation(g).unwrap();
        let ideal = t
            .vertex_classes()
            .iter()
            .filter(|c| c.kind == gex_core::triangulation::VertexKind::Ideal)
            .count();
        let l = match classify_vertex_links(&t) {
            Ok(l) => l,
            Err(e) => return ok(false, format!("g={g}: {e}")),
        };
        let pass = ideal == 1
            && l.cusp_link_genus == 1
            && l.cusp.euler_characteristic == 0
            && l.cusp.triangles == 2 * g + 2
            && l.boundary.connected
            && l.boundary.euler_characteristic == 2 - 2 * g as i64;
        if !pass {
            return ok(false, format!("g={g}: {l:?}"));
        }
    }
    ok(
        true,
        "one torus cusp of 2g+2 triangles; connected boundary with chi = 2-2g for g = 2..50",
    )
}

fn c4() -> Outcome {
    for g in 2..=20 {
        let t = build_triangulation(g).unwrap();
        let grp = match automorphism_group(&t) {
            Ok(x) => x,
            Err(e) => return ok(false, format!("g={g}: {e}")),
        };
        let check = check_dihedral(&grp);
        if !check.passed() || grp.order() != 2 * g + 2 || grp.reversing_seeds_extended != 0 {
            return ok(false, format!("g={g}: {check:?}"));
        }
    }
    ok(
        true,
        "|Aut| = 2g+2, dihedral relations hold, all orientation-preserving for g = 2..20",
    )
}

fn c5() -> Outcome {
    let mut worst: f64 = 0.0;
    for g in 2..=100 {
        let a = angles(g).unwrap();
        worst = worst.max(check_tilt_identities(&a).max_abs());
        if !tilt_identities_ok(&a) {
            return ok(false, format!("g={g}: {:?}", check_tilt_identities(&a)));
        }
        let t = build_triangulation(g).unwrap();
        let cert = certify_canonical_at(&t, &a, 1.0, 0.5 * r_threshold(&a, 1.0)).unwrap();
        if !cert.verdict || cert.per_face_pair_sums.iter().any(|p| p.sum >= 0.0) {
            return ok(false, format!("g={g}: canonicity verdict false"));
        }
    }
    ok(
        true,
        format!(
            "identities max residual {worst:.2e}; verdict true at r = r*/2, k = 1 for g = 2..100"
        ),
    )
}

fn c6() -> Outcome {
    let a = angles(2).unwrap();
    let ct = build_cusp_torus(&build_triangulation(2).unwrap(), &a).unwrap();
    let ell = edge_slope_length(&a);
    let ell_sq_err = (ell * ell - 24.0 / 5.0).abs();
    let theta_err = (ct.basis_angle() - (1.0f64 / 3.0).acos()).abs();
    let len_err = (ct.l.norm() - 3.0 * ell).abs();
    let audit = exhaustive_slope_audit(&ct, 100).unwrap();
    let min_err = (audit.min_distance_one_length_sq - 38.4).abs();
    ok(
        ell_sq_err <= 1e-12 && theta_err <= 1e-9 && len_err <= 1e-9 && min_err <= 1e-9,
        format!(
            "|l^2 - 24/5| = {ell_sq_err:.1e}, |theta - acos(1/3)| = {theta_err:.1e}, ||s'| - 3l| = {len_err:.1e}, min L^2 over distance-1 slopes = {:.12}",
            audit.min_distance_one_length_sq
        ),
    )
}

fn c7() -> Outcome {
    let (mut e_len, mut e_det, mut e_area): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for g in 2..=50 {
        let a = angles(g).unwrap();
        let ct = match build_cusp_torus(&build_triangulation(g).unwrap(), &a) {
            Ok(c) => c,
            Err(e) => return ok(false, format!("g={g}: {e}")),
        };
        e_len = e_len.max((edge_slope_length(&a) - ct.m.norm()).abs());
        e_det = e_det.max((ct.lattice.covolume() - cusp_area(&a)).abs());
        e_area = e_area.max((cusp_area(&a) - tiled_area(&a)).abs());
    }
    ok(
        e_len <= 1e-9 && e_det <= 1e-9 && e_area <= 1e-12,
        format!("max errors: edge length {e_len:.1e}, lattice det {e_det:.1e}, area formula {e_area:.1e}"),
    )
}

fn c8() -> Outcome {
    let mut min_d1 = Vec::new();
    for g in 2..=10 {
        let ct = build_cusp_torus(&build_triangulation(g).unwrap(), &angles(g).unwrap()).unwrap();
        let audit = exhaustive_slope_audit(&ct, 100).unwrap();
        if !audit.passed()
            || audit.short_slopes != [Slope::MERIDIAN]
            || audit.min_distance_one_length_sq <= 36.0
        {
            return ok(false, format!("g={g}: {audit:?}"));
        }
        if g <= 5 {
            min_d1.push(format!("g={g}: {:.3}", audit.min_distance_one_length_sq));
        }
    }
    ok(
        true,
        format!(
            "only the meridian has L <= 6 for g = 2..10, bound 100; min L^2 at distance 1: {}",
            min_d1.join(", ")
        ),
    )
}

fn c9() -> Outcome {
    let gs = [10usize, 50, 250, 500];
    let mut per_g = Vec::new();
    for g in gs {
        match volume_of_mg(g, 1e-8) {
            Ok(v) => per_g.push(v.value / g as f64),
            Err(e) => return ok(false, format!("g={g}: {e}")),
        }
    }
    let increasing = per_g.windows(2).all(|w| w[0] < w[1]);
    let gap = (per_g[3] - REFERENCE_LIMIT).abs();
    let listed: Vec<String> = gs
        .iter()
        .zip(&per_g)
        .map(|(g, v)| format!("g={g}: {v:.9}"))
        .collect();
    ok(
        increasing && gap < 0.01,
        format!(
            "vol/g {}; increasing = {increasing}; |vol(M_500)/500 - {REFERENCE_LIMIT}| = {gap:.4}",
            listed.join(", ")
        ),
    )
}

fn c10() -> Outcome {
    let bad = angles(2).unwrap().perturb_gamma(0.01);
    let consistency_caught = !consistency_ok(&bad);
    let tilts_caught = !tilt_identities_ok(&bad);
    let tilt_k_terms = compute_tilts(&bad, 1.0, 1.0).is_ok();
    ok(
        consistency_caught && tilts_caught,
        format!(
            "gamma + 0.01 at g=2: consistency residual {:.2e}, tilt residuals {:?} (tilts evaluable: {tilt_k_terms})",
            check_consistency(&bad),
            {
                let id = check_tilt_identities(&bad);
                (format!("{:.2e}", id.res1), format!("{:.2e}", id.res2))
            }
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 consistency equation", c1, Duration::from_secs(1)),
        ("2 edge census", c2, Duration::from_secs(5)),
        ("3 vertex links", c3, Duration::from_secs(5)),
        ("4 symmetry", c4, Duration::from_secs(30)),
        (
            "5 tilt identities and canonicity",
            c5,
            Duration::from_secs(5),
        ),
        ("6 cusp anchors", c6, Duration::MAX),
        ("7 cusp cross-checks", c7, Duration::MAX),
        ("8 slope audit", c8, Duration::from_secs(10)),
        ("9 volume limit", c9, Duration::from_secs(300)),
        ("10 falsifiability", c10, Duration::MAX),
    ];
    let mut failures = 0;
    for (name, check, budget) in criteria {
        let start = Instant::now();
        let out = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= budget;
        let pass = out.pass && in_time;
        if !pass {
            failures += 1;
        }
        let timing = if budget == Duration::MAX {
            format!("{:.2?}", elapsed)
        } else {
            format!("{:.2?} of {:?}", elapsed, budget)
        };
        println!(
            "{} criterion {name}: {} [{timing}{}]",
            if pass { "PASS" } else { "FAIL" },
            out.witness,
            if in_time { "" } else { ", over budget" }
        );
    }
    println!("{} of 10 criteria passed", 10 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
