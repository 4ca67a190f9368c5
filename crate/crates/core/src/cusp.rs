//! Euclidean structure on the boundary of the maximal cusp section.
//!
//! Each tetrahedron contributes the triangle `ABD / R′` seen from its ideal
//! vertex. The triangles are developed into the plane across the cusp link
//! gluings; gluings that close a cycle give the holonomy, which must be a
//! translation. The translations generate the lattice of the torus.

use std::collections::{HashMap, VecDeque};
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::angles::{vertex_roles, AngleData};
use crate::error::{invariant, GexError, Result};
use crate::halfspace::realize_half_space;
use crate::lattice::{cross, dot, lattice_basis, LatticeBasis};
use crate::triangulation::Triangulation;

/// Tolerance for developing-map closure and lattice membership.
pub const DEVELOPING_TOL: f64 = 1e-9;

/// Closed-form length of the edges `f_i`.
pub fn edge_slope_length(a: &AngleData) -> f64 {
    let c2 = a.alpha.cos().powi(2);
    2.0 * a.alpha.cos() * ((4.0 * c2 - 1.0) / (4.0 * c2 * c2 - 1.0)).sqrt()
}

/// Closed-form area of the maximal cusp torus.
pub fn cusp_area(a: &AngleData) -> f64 {
    let c2 = a.alpha.cos().powi(2);
    (2 * a.g + 2) as f64 * (4.0 * c2 - 1.0).powf(1.5) / (4.0 * c2 * c2 - 1.0)
}

/// Area of the torus as `2g + 2` isosceles triangles of leg `ℓ` and apex angle `δ`.
pub fn tiled_area(a: &AngleData) -> f64 {
    (2 * a.g + 2) as f64 * edge_slope_length(a).powi(2) * a.delta.sin() / 2.0
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CuspTriangle {
    pub gamma: f64,
    pub delta: f64,
    /// Developed length of the two equal sides.
    pub leg: f64,
    pub base: f64,
}

/// A cusp link edge: the link of a face through the ideal vertex.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinkEdge {
    pub tet: usize,
    pub face: usize,
    /// Link vertex (cusp corner class) at each end.
    pub ends: [usize; 2],
    pub vector: Complex64,
}

impl LinkEdge {
    pub fn is_loop(&self) -> bool {
        self.ends[0] == self.ends[1]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CuspTorus {
    pub g: usize,
    pub triangle: CuspTriangle,
    pub triangles: usize,
    /// Translation holonomy of the edge slope `s̄_g` (the `f_i` edges).
    pub m: Complex64,
    /// Translation holonomy of the second basis slope `s′_g`.
    pub l: Complex64,
    /// Reduced basis of the full translation lattice.
    pub lattice: LatticeBasis,
    /// Coordinates of `m` and `l` in the reduced basis.
    pub basis_change: [[i64; 2]; 2],
    /// Shortest lattice vector independent of `m`.
    pub shortest_independent: Complex64,
    pub link_vertices: usize,
    pub edges: Vec<LinkEdge>,
    /// Largest `|a − 1|` over the rotational parts of non-tree holonomies.
    pub max_rotation_defect: f64,
    /// Largest holonomy defect over loops around link vertices.
    pub max_vertex_loop_defect: f64,
    /// Largest `|Σ corner angles − 2π|` over link vertices.
    pub max_vertex_angle_defect: f64,
    pub notes: Vec<String>,
}

impl CuspTorus {
    pub fn area(&self) -> f64 {
        cross(self.m, self.l).abs()
    }

    /// `θ(s′, s̄)` in `[0, π]`.
    pub fn basis_angle(&self) -> f64 {
        cross(self.m, self.l).abs().atan2(dot(self.m, self.l))
    }
}

/// `z ↦ a z + b`.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Affine {
    a: Complex64,
    b: Complex64,
}

impl Affine {
    const ID: Affine = Affine {
        a: Complex64 { re: 1.0, im: 0.0 },
        b: Complex64 { re: 0.0, im: 0.0 },
    };

    /// The orientation-preserving similarity sending `z0, z1` to `w0, w1`.
    fn from_pairs(z0: Complex64, z1: Complex64, w0: Complex64, w1: Complex64) -> Affine {
        let a = (w1 - w0) / (z1 - z0);
        Affine { a, b: w0 - a * z0 }
    }

    fn apply(&self, z: Complex64) -> Complex64 {
        self.a * z + self.b
    }

    /// `self ∘ other`.
    fn compose(&self, other: &Affine) -> Affine {
        Affine {
            a: self.a * other.a,
            b: self.a * other.b + self.b,
        }
    }

    fn defect(&self) -> f64 {
        (self.a - 1.0).norm() + self.b.norm()
    }
}

/// Model corner positions for a tetrahedron, before placement.
fn model_corners(t: &Triangulation, tet: usize, abd: [Complex64; 3]) -> Result<[Complex64; 4]> {
    let roles = vertex_roles(t, tet)?;
    let mut pos = [Complex64::new(0.0, 0.0); 4];
    pos[roles.w[1]] = abd[0];
    pos[roles.w[2]] = abd[1];
    pos[roles.w[3]] = abd[2];
    // The link inherits its orientation from the tetrahedron: corners listed
    // in increasing slot order turn positively iff o(t)·(−1)^ideal > 0.
    let ideal = roles.w[0];
    let others: Vec<usize> = (0..4).filter(|&s| s != ideal).collect();
    let signed = cross(
        pos[others[1]] - pos[others[0]],
        pos[others[2]] - pos[others[0]],
    );
    let want = f64::from(t.orientation()[tet]) * if ideal % 2 == 0 { 1.0 } else { -1.0 };
    if signed * want < 0.0 {
        for p in &mut pos {
            *p = p.conj();
        }
    }
    Ok(pos)
}

fn corner_angle(pos: &[Complex64; 4], ideal: usize, j: usize) -> f64 {
    let o: Vec<usize> = (0..4).filter(|&s| s != ideal && s != j).collect();
    let (u, v) = (pos[o[0]] - pos[j], pos[o[1]] - pos[j]);
    cross(u, v).abs().atan2(dot(u, v))
}

pub fn build_cusp_torus(t: &Triangulation, a: &AngleData) -> Result<CuspTorus> {
    invariant(t.g() == a.g, || {
        format!("triangulation has g = {}, angles have g = {}", t.g(), a.g)
    })?;
    let n = t.num_tets();
    let h = realize_half_space(a, 1.0)?;
    let scale = 1.0 / h.r_prime;
    let c = |p: [f64; 2]| Complex64::new(p[0] * scale, p[1] * scale);
    let abd = [c(h.a), c(h.b), c(h.d)];
    let ideal: Vec<usize> = (0..n).map(|i| t.ideal_slot(i)).collect::<Result<_>>()?;
    let model: Vec<[Complex64; 4]> = (0..n)
        .map(|i| model_corners(t, i, abd))
        .collect::<Result<_>>()?;

    // Develop along a BFS tree; record the holonomy of every gluing.
    let mut pos: Vec<Option<[Complex64; 4]>> = vec![None; n];
    pos[0] = Some(model[0]);
    let mut hol: HashMap<(usize, usize), Affine> = HashMap::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(s) = queue.pop_front() {
        let ps = pos[s].expect("queued tets are placed");
        for f in (0..4).filter(|&f| f != ideal[s]) {
            let gl = t.gluing(s, f);
            let t2 = gl.tet;
            invariant(gl.perm.apply(ideal[s]) == ideal[t2], || {
                format!("gluing ({s}, {f}) does not match ideal vertices")
            })?;
            let shared: Vec<usize> = (0..4).filter(|&j| j != ideal[s] && j != f).collect();
            let (j0, j1) = (shared[0], shared[1]);
            let (k0, k1) = (gl.perm.apply(j0), gl.perm.apply(j1));
            let place = Affine::from_pairs(model[t2][k0], model[t2][k1], ps[j0], ps[j1]);
            if (place.a.norm() - 1.0).abs() > DEVELOPING_TOL {
                return Err(GexError::Developing(format!(
                    "edge lengths disagree across gluing ({s}, {f}): ratio {}",
                    place.a.norm()
                )));
            }
            let q: [Complex64; 4] = std::array::from_fn(|x| place.apply(model[t2][x]));
            match pos[t2] {
                None => {
                    pos[t2] = Some(q);
                    hol.insert((s, f), Affine::ID);
                    queue.push_back(t2);
                }
                Some(p2) => {
                    hol.insert((s, f), Affine::from_pairs(p2[k0], p2[k1], q[k0], q[k1]));
                }
            }
        }
    }
    let pos: Vec<[Complex64; 4]> = pos
        .into_iter()
        .collect::<Option<_>>()
        .ok_or_else(|| GexError::Developing("cusp link is disconnected".into()))?;

    // Corner classes, i.e. the link vertices.
    let mut corner_id: HashMap<(usize, usize), usize> = HashMap::new();
    let mut classes: Vec<Vec<(usize, usize)>> = Vec::new();
    for s in 0..n {
        for j in (0..4).filter(|&j| j != ideal[s]) {
            if corner_id.contains_key(&(s, j)) {
                continue;
            }
            let id = classes.len();
            let mut members = vec![(s, j)];
            corner_id.insert((s, j), id);
            let mut k = 0;
            while k < members.len() {
                let (u, x) = members[k];
                k += 1;
                for f in (0..4).filter(|&f| f != ideal[u] && f != x) {
                    let gl = t.gluing(u, f);
                    let key = (gl.tet, gl.perm.apply(x));
                    if let std::collections::hash_map::Entry::Vacant(e) = corner_id.entry(key) {
                        e.insert(id);
                        members.push(key);
                    }
                }
            }
            classes.push(members);
        }
    }

    // Walk once around every link vertex.
    let mut max_vertex_loop_defect: f64 = 0.0;
    let mut max_vertex_angle_defect: f64 = 0.0;
    for members in &classes {
        let (s0, j0) = members[0];
        let f0 = (0..4)
            .find(|&f| f != ideal[s0] && f != j0)
            .expect("two faces at a corner");
        let (mut s, mut j, mut exit) = (s0, j0, f0);
        let mut acc = Affine::ID;
        let mut angle = 0.0;
        let mut steps = 0;
        loop {
            angle += corner_angle(&model[s], ideal[s], j);
            let gl = t.gluing(s, exit);
            acc = acc.compose(&hol[&(s, exit)]);
            let entry = gl.perm.apply(exit);
            s = gl.tet;
            j = gl.perm.apply(j);
            exit = (0..4)
                .find(|&f| f != ideal[s] && f != j && f != entry)
                .expect("a corner has two faces");
            steps += 1;
            if (s, j, exit) == (s0, j0, f0) || steps > 4 * n {
                break;
            }
        }
        invariant(steps == members.len(), || {
            format!(
                "walk around a link vertex visited {steps} corners, class has {}",
                members.len()
            )
        })?;
        max_vertex_loop_defect = max_vertex_loop_defect.max(acc.defect());
        max_vertex_angle_defect = max_vertex_angle_defect.max((angle - 2.0 * PI).abs());
    }
    if max_vertex_loop_defect > DEVELOPING_TOL {
        return Err(GexError::Developing(format!(
            "holonomy around a link vertex is not the identity (defect {max_vertex_loop_defect:e})"
        )));
    }

    let max_rotation_defect = hol.values().map(|h| (h.a - 1.0).norm()).fold(0.0, f64::max);
    if max_rotation_defect > DEVELOPING_TOL {
        return Err(GexError::Developing(format!(
            "holonomy has a rotational part (defect {max_rotation_defect:e})"
        )));
    }
    let mut keys: Vec<&(usize, usize)> = hol.keys().collect();
    keys.sort_unstable();
    let translations: Vec<Complex64> = keys.iter().map(|k| hol[*k].b).collect();
    let lattice = lattice_basis(&translations, DEVELOPING_TOL)?;

    // Link edges, one per glued face pair through the ideal vertex.
    let mut edges = Vec::new();
    for ((s, f), _) in t.face_pairs() {
        if f == ideal[s] {
            continue;
        }
        let ends: Vec<usize> = (0..4).filter(|&j| j != ideal[s] && j != f).collect();
        edges.push(LinkEdge {
            tet: s,
            face: f,
            ends: [corner_id[&(s, ends[0])], corner_id[&(s, ends[1])]],
            vector: pos[s][ends[1]] - pos[s][ends[0]],
        });
    }

    let loops: Vec<&LinkEdge> = edges.iter().filter(|e| e.is_loop()).collect();
    let first = loops
        .first()
        .ok_or_else(|| GexError::Developing("no edge of the cusp link closes up".into()))?;
    let m = first.vector;
    let leg = m.norm();
    for e in &loops {
        invariant(
            cross(m, e.vector).abs() <= DEVELOPING_TOL
                && (e.vector.norm() - leg).abs() <= DEVELOPING_TOL,
            || "closed link edges do not all realize the same translation".into(),
        )?;
    }

    // The non-closed edges of length ℓ form one cycle through all link vertices.
    let short: Vec<&LinkEdge> = edges
        .iter()
        .filter(|e| !e.is_loop() && (e.vector.norm() - leg).abs() <= DEVELOPING_TOL)
        .collect();
    let mut adj: HashMap<usize, Vec<(usize, usize, Complex64)>> = HashMap::new();
    for (idx, e) in short.iter().enumerate() {
        adj.entry(e.ends[0])
            .or_default()
            .push((idx, e.ends[1], e.vector));
        adj.entry(e.ends[1])
            .or_default()
            .push((idx, e.ends[0], -e.vector));
    }
    invariant(
        adj.len() == classes.len() && adj.values().all(|v| v.len() == 2),
        || "the short open link edges do not form a cycle through every link vertex".into(),
    )?;
    let start = short[0].ends[0];
    let (mut cur, mut used, mut l) = (start, vec![false; short.len()], Complex64::new(0.0, 0.0));
    loop {
        let &(idx, next, v) = adj[&cur]
            .iter()
            .find(|(i, _, _)| !used[*i])
            .ok_or_else(|| GexError::Developing("short edge cycle broke off".into()))?;
        used[idx] = true;
        l += v;
        cur = next;
        if cur == start {
            break;
        }
    }
    invariant(used.iter().all(|&u| u), || {
        "short edges form more than one cycle".into()
    })?;
    if cross(m, l) < 0.0 {
        l = -l;
    }

    let coords = |v: Complex64| {
        lattice
            .integer_coords(v, DEVELOPING_TOL)
            .ok_or_else(|| GexError::Developing("slope holonomy is not a lattice vector".into()))
    };
    let (mc, lc) = (coords(m)?, coords(l)?);
    let det = mc.0 * lc.1 - mc.1 * lc.0;
    invariant(det.abs() == 1, || {
        format!("s̄ and s′ span a sublattice of index {}", det.abs())
    })?;

    let base = (abd[1] - abd[0]).norm();
    Ok(CuspTorus {
        g: a.g,
        triangle: CuspTriangle {
            gamma: a.gamma,
            delta: a.delta,
            leg: (abd[2] - abd[0]).norm(),
            base,
        },
        triangles: n,
        m,
        l,
        lattice,
        basis_change: [[mc.0, mc.1], [lc.0, lc.1]],
        shortest_independent: lattice.shortest_independent(m),
        link_vertices: classes.len(),
        edges,
        max_rotation_defect,
        max_vertex_loop_defect,
        max_vertex_angle_defect,
        notes: vec![
            "the edge slope s̄ is identified with the meridian of the removed graph".into(),
            "s′ is the holonomy of the cycle of open link edges of length ℓ".into(),
        ],
    })
}
