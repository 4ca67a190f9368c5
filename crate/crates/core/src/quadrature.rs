//! Globally adaptive cubature over planar triangles.
//!
//! Each element is integrated with a degree-5 seven-point rule on itself and
//! on its four midpoint children; the difference is the element's error
//! estimate. The element with the largest estimate is split until the sum of
//! estimates drops below the tolerance.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{GexError, Result};
use crate::halfspace::Point;

pub type Triangle = [Point; 3];

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CubatureResult {
    pub value: f64,
    pub error_bound: f64,
    pub subdivisions: usize,
    pub evaluations: usize,
}

/// Budget and target for [`integrate`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CubatureConfig {
    pub tol: f64,
    pub max_subdivisions: usize,
}

impl CubatureConfig {
    pub fn new(tol: f64) -> Self {
        CubatureConfig {
            tol,
            max_subdivisions: 2_000_000,
        }
    }
}

/// Barycentric nodes and weights of the Radon rule (weights sum to one).
fn radon_rule() -> [([f64; 3], f64); 7] {
    let s = 15f64.sqrt();
    let a = (6.0 - s) / 21.0;
    let b = (6.0 + s) / 21.0;
    let wa = (155.0 - s) / 1200.0;
    let wb = (155.0 + s) / 1200.0;
    let third = 1.0 / 3.0;
    [
        ([third, third, third], 9.0 / 40.0),
        ([a, a, 1.0 - 2.0 * a], wa),
        ([a, 1.0 - 2.0 * a, a], wa),
        ([1.0 - 2.0 * a, a, a], wa),
        ([b, b, 1.0 - 2.0 * b], wb),
        ([b, 1.0 - 2.0 * b, b], wb),
        ([1.0 - 2.0 * b, b, b], wb),
    ]
}

fn area(t: &Triangle) -> f64 {
    let [p, q, r] = *t;
    0.5 * ((q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])).abs()
}

fn midpoint(p: Point, q: Point) -> Point {
    [0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1])]
}

fn children(t: &Triangle) -> [Triangle; 4] {
    let [p, q, r] = *t;
    let (pq, qr, rp) = (midpoint(p, q), midpoint(q, r), midpoint(r, p));
    [[p, pq, rp], [pq, q, qr], [rp, qr, r], [pq, qr, rp]]
}

struct Element {
    tri: Triangle,
    piece: usize,
    value: f64,
    error: f64,
    seq: usize,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Element {}
impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

struct Integrator<'a, F> {
    f: &'a F,
    rule: [([f64; 3], f64); 7],
    evaluations: usize,
}

impl<F: Fn(usize, Point) -> f64> Integrator<'_, F> {
    fn basic(&mut self, piece: usize, t: &Triangle) -> f64 {
        self.evaluations += self.rule.len();
        let s: f64 = self
            .rule
            .iter()
            .map(|(l, w)| {
                let x = l[0] * t[0][0] + l[1] * t[1][0] + l[2] * t[2][0];
                let y = l[0] * t[0][1] + l[1] * t[1][1] + l[2] * t[2][1];
                w * (self.f)(piece, [x, y])
            })
            .sum();
        s * area(t)
    }

    fn element(&mut self, piece: usize, tri: Triangle, seq: usize) -> Element {
        let coarse = self.basic(piece, &tri);
        let fine: f64 = children(&tri).iter().map(|c| self.basic(piece, c)).sum();
        Element {
            tri,
            piece,
            value: fine,
            error: (fine - coarse).abs(),
            seq,
        }
    }
}

/// Integrates `f(piece, x)` over each `(piece, triangle)` and sums the results.
/// The piece index lets one call integrate a different smooth function on
/// each part of a domain.
pub fn integrate<F>(
    pieces: &[(usize, Triangle)],
    f: F,
    cfg: CubatureConfig,
) -> Result<CubatureResult>
where
    F: Fn(usize, Point) -> f64,
{
    if cfg.tol.is_nan() || cfg.tol <= 0.0 {
        return Err(GexError::Domain(format!(
            "tolerance must be positive, got {}",
            cfg.tol
        )));
    }
    let mut it = Integrator {
        f: &f,
        rule: radon_rule(),
        evaluations: 0,
    };
    let mut seq = 0;
    let mut heap = BinaryHeap::new();
    for &(piece, tri) in pieces {
        heap.push(it.element(piece, tri, seq));
        seq += 1;
    }
    let mut subdivisions = 0;
    let total_error = |h: &BinaryHeap<Element>| h.iter().map(|e| e.error).sum::<f64>();
    let mut running = total_error(&heap);
    loop {
        if running <= cfg.tol {
            // Re-sum to avoid drift in the running total.
            running = total_error(&heap);
            if running <= cfg.tol {
                break;
            }
        }
        if subdivisions >= cfg.max_subdivisions {
            let mut vals: Vec<f64> = heap.iter().map(|e| e.value).collect();
            vals.sort_by(f64::total_cmp);
            return Err(GexError::Convergence {
                estimate: vals.iter().sum(),
                error_bound: total_error(&heap),
                subdivisions,
            });
        }
        let Some(worst) = heap.pop() else { break };
        running -= worst.error;
        for c in children(&worst.tri) {
            let e = it.element(worst.piece, c, seq);
            seq += 1;
            running += e.error;
            heap.push(e);
        }
        subdivisions += 1;
    }
    // Sum in a fixed order so the value does not depend on heap layout.
    let mut elems: Vec<Element> = heap.into_vec();
    elems.sort_by_key(|e| e.seq);
    let value = elems.iter().map(|e| e.value).sum();
    let error_bound = elems.iter().map(|e| e.error).sum();
    if !f64::is_finite(value) {
        return Err(GexError::InvariantViolation(
            "cubature produced a non-finite value".into(),
        ));
    }
    Ok(CubatureResult {
        value,
        error_bound,
        subdivisions,
        evaluations: it.evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const UNIT: Triangle = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]];

    #[test]
    fn polynomials_up_to_degree_five_are_exact() {
        // ∫ x^a y^b over the unit simplex = a! b! / (a + b + 2)!.
        let fact = |n: u32| (1..=n).product::<u32>() as f64;
        for a in 0..=5u32 {
            for b in 0..=(5 - a) {
                let r = integrate(
                    &[(0, UNIT)],
                    |_, p| p[0].powi(a as i32) * p[1].powi(b as i32),
                    CubatureConfig::new(1e-14),
                )
                .unwrap();
                let exact = fact(a) * fact(b) / fact(a + b + 2);
                assert!((r.value - exact).abs() < 1e-15, "x^{a} y^{b}");
                assert_eq!(r.subdivisions, 0);
            }
        }
    }

    #[test]
    fn adapts_to_a_peak() {
        // ∫∫ over the unit simplex of 1/sqrt(x + y + eps) has a closed form in t = x + y.
        let eps: f64 = 1e-4;
        let exact = {
            // ∫_0^1 t / sqrt(t + eps) dt
            let s = |t: f64| (2.0 / 3.0) * (t + eps).powf(1.5) - 2.0 * eps * (t + eps).sqrt();
            s(1.0) - s(0.0)
        };
        let r = integrate(
            &[(0, UNIT)],
            |_, p| 1.0 / (p[0] + p[1] + eps).sqrt(),
            CubatureConfig::new(1e-9),
        )
        .unwrap();
        assert!(r.subdivisions > 0);
        assert!((r.value - exact).abs() <= r.error_bound.max(1e-12));
    }

    #[test]
    fn budget_exhaustion_reports_estimate() {
        let cfg = CubatureConfig {
            tol: 1e-15,
            max_subdivisions: 3,
        };
        match integrate(&[(0, UNIT)], |_, p| (p[0] + 1e-6).ln(), cfg) {
            Err(GexError::Convergence {
                subdivisions,
                estimate,
                ..
            }) => {
                assert_eq!(subdivisions, 3);
                assert!(estimate.is_finite());
            }
            other => panic!("expected convergence error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_non_positive_tolerance() {
        assert!(integrate(&[(0, UNIT)], |_, _| 1.0, CubatureConfig::new(0.0)).is_err());
    }
}
