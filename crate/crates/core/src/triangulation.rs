//! The double cone over a regular `2n`-gon, its face pairing, and the ideal
//! triangulation obtained by coning it off along the vertical edge `v1 v2`.
//!
//! Tetrahedron `i` has vertex slots `[v1, v2, p_i, p_{i+1}]` (indices mod
//! `2n`, `n = g + 1`). Gluings are stored as slot permutations: face `f` of
//! tetrahedron `t` (the face opposite slot `f`) is glued to face `perm(f)` of
//! tetrahedron `gluing.tet`, with slot `x` of `t` going to slot `perm(x)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invariant, GexError, Result};
use crate::perm::Perm4;

/// Edges of a tetrahedron as slot pairs; an edge index points into this table.
pub const EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Index into [`EDGES`] of the edge joining slots `a` and `b`.
pub fn edge_index(a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    EDGES
        .iter()
        .position(|&e| e == (a, b))
        .expect("slots must be distinct and < 4")
}

/// A vertex of the double cone: one of the apexes or an equatorial vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConeVertex {
    V1,
    V2,
    P(usize),
}

impl ConeVertex {
    pub fn is_apex(self) -> bool {
        matches!(self, ConeVertex::V1 | ConeVertex::V2)
    }
}

impl fmt::Display for ConeVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConeVertex::V1 => f.write_str("v1"),
            ConeVertex::V2 => f.write_str("v2"),
            ConeVertex::P(i) => write!(f, "p{i}"),
        }
    }
}

impl FromStr for ConeVertex {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "v1" => Ok(ConeVertex::V1),
            "v2" => Ok(ConeVertex::V2),
            _ => s
                .strip_prefix('p')
                .and_then(|i| i.parse().ok())
                .map(ConeVertex::P)
                .ok_or_else(|| format!("unknown cone vertex `{s}`")),
        }
    }
}

impl Serialize for ConeVertex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ConeVertex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn face_key(mut face: [ConeVertex; 3]) -> [ConeVertex; 3] {
    face.sort();
    face
}

/// One identification of boundary triangles: `source[k]` is glued to `target[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacePairing {
    pub source: [ConeVertex; 3],
    pub target: [ConeVertex; 3],
}

/// The solid double cone `P_n` together with its boundary face pairing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleConeComplex {
    n: usize,
    pairings: Vec<FacePairing>,
}

impl DoubleConeComplex {
    /// Number of sides of the equatorial polygon divided by two.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn g(&self) -> usize {
        self.n - 1
    }

    pub fn pairings(&self) -> &[FacePairing] {
        &self.pairings
    }

    /// Equatorial vertex `p_i` with the index read mod `2n`.
    pub fn p(&self, i: i64) -> ConeVertex {
        let m = 2 * self.n as i64;
        ConeVertex::P(i.rem_euclid(m) as usize)
    }

    /// The `4n` boundary triangles `v1 p_i p_{i+1}` and `v2 p_i p_{i+1}`.
    pub fn boundary_faces(&self) -> Vec<[ConeVertex; 3]> {
        let m = 2 * self.n as i64;
        let mut faces = Vec::with_capacity(4 * self.n);
        for apex in [ConeVertex::V1, ConeVertex::V2] {
            for i in 0..m {
                faces.push([apex, self.p(i), self.p(i + 1)]);
            }
        }
        faces
    }

    fn validate(&self) -> Result<()> {
        let boundary: HashMap<_, _> = self
            .boundary_faces()
            .into_iter()
            .map(|f| (face_key(f), 0usize))
            .collect();
        let mut uses = boundary;
        for pairing in &self.pairings {
            for face in [pairing.source, pairing.target] {
                let key = face_key(face);
                invariant(key.windows(2).all(|w| w[0] != w[1]), || {
                    format!("pairing face {face:?} repeats a vertex")
                })?;
                match uses.get_mut(&key) {
                    Some(count) => *count += 1,
                    None => {
                        return Err(GexError::InvariantViolation(format!(
                            "{face:?} is not a boundary triangle of the double cone"
                        )))
                    }
                }
            }
        }
        invariant(self.pairings.len() == 2 * self.n, || {
            format!(
                "expected {} pairings, found {}",
                2 * self.n,
                self.pairings.len()
            )
        })?;
        for (face, count) in &uses {
            invariant(*count == 1, || {
                format!("boundary triangle {face:?} appears in {count} pairings")
            })?;
        }
        Ok(())
    }
}

/// Builds `P_{g+1}` with the even-index and odd-index pairing families.
pub fn build_double_cone(g: usize) -> Result<DoubleConeComplex> {
    if g < 2 {
        return Err(GexError::Domain(format!(
            "the family is defined for g >= 2, got g = {g}"
        )));
    }
    let n = g + 1;
    let mut dc = DoubleConeComplex {
        n,
        pairings: Vec::with_capacity(2 * n),
    };
    use ConeVertex::{V1, V2};
    for i in 0..2 * n as i64 {
        let (pi, pi1, pi2) = (dc.p(i), dc.p(i + 1), dc.p(i + 2));
        let pairing = if i % 2 == 0 {
            // v1 -> p_{i+1}, p_i -> p_{i+2}, p_{i+1} -> v2
            FacePairing {
                source: [V1, pi, pi1],
                target: [pi1, pi2, V2],
            }
        } else {
            // v1 -> p_{i+2}, p_i -> v2, p_{i+1} -> p_{i+1}
            FacePairing {
                source: [V1, pi, pi1],
                target: [pi2, V2, pi1],
            }
        };
        dc.pairings.push(pairing);
    }
    dc.validate()?;
    Ok(dc)
}

/// Where a face of a tetrahedron is glued.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gluing {
    pub tet: usize,
    pub perm: Perm4,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tetrahedron {
    pub vertices: [ConeVertex; 4],
    pub gluings: [Gluing; 4],
}

impl Tetrahedron {
    pub fn slot_of(&self, v: ConeVertex) -> Option<usize> {
        self.vertices.iter().position(|&w| w == v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TetEdge {
    pub tet: usize,
    pub edge: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TetVertex {
    pub tet: usize,
    pub slot: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexKind {
    /// Link is a torus: a cusp.
    Ideal,
    /// Link has negative Euler characteristic: a geodesic boundary component.
    Truncated,
}

/// Cell counts of the triangulated surface linking a vertex class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkSurface {
    pub triangles: usize,
    pub edges: usize,
    pub vertices: usize,
    pub euler_characteristic: i64,
    pub connected: bool,
}

impl LinkSurface {
    /// Genus, valid for closed orientable surfaces.
    pub fn genus(&self) -> i64 {
        (2 - self.euler_characteristic) / 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexClass {
    pub kind: VertexKind,
    pub members: Vec<TetVertex>,
    pub link: LinkSurface,
}

/// The ideal triangulation `T_g`. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    g: usize,
    tets: Vec<Tetrahedron>,
    orientation: Vec<i8>,
    edge_orbits: Vec<Vec<TetEdge>>,
    vertex_classes: Vec<VertexClass>,
    vertex_class_of: Vec<[usize; 4]>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }

    /// Groups `0..n` by root, each group sorted, groups ordered by smallest member.
    fn groups(&mut self) -> Vec<Vec<usize>> {
        let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in 0..self.0.len() {
            let r = self.find(x);
            by_root.entry(r).or_default().push(x);
        }
        let mut groups: Vec<_> = by_root.into_values().collect();
        groups.sort_by_key(|g| g[0]);
        groups
    }
}

/// Splits `P_{g+1}` along `v1 v2` into `2g + 2` tetrahedra and transfers the
/// face pairing to them.
pub fn subdivide(dc: &DoubleConeComplex) -> Result<Triangulation> {
    let m = 2 * dc.n();
    let vertices: Vec<[ConeVertex; 4]> = (0..m as i64)
        .map(|i| [ConeVertex::V1, ConeVertex::V2, dc.p(i), dc.p(i + 1)])
        .collect();

    let mut gluings: Vec<[Option<Gluing>; 4]> = vec![[None; 4]; m];
    let mut set = |t: usize, f: usize, t2: usize, perm: Perm4| -> Result<()> {
        let f2 = perm.apply(f);
        for (a, fa, b, p) in [(t, f, t2, perm), (t2, f2, t, perm.inverse())] {
            if let Some(existing) = gluings[a][fa] {
                if existing != (Gluing { tet: b, perm: p }) {
                    return Err(GexError::Construction(format!(
                        "face {fa} of tetrahedron {a} is glued twice"
                    )));
                }
            }
            gluings[a][fa] = Some(Gluing { tet: b, perm: p });
        }
        Ok(())
    };

    // Internal faces v1 v2 p_{i+1}: opposite slot 2 in tet i, slot 3 in tet i+1.
    for i in 0..m {
        set(i, 2, (i + 1) % m, Perm4::swap(2, 3))?;
    }

    let mut locate: HashMap<[ConeVertex; 3], (usize, usize)> = HashMap::new();
    for (t, vs) in vertices.iter().enumerate() {
        for apex_slot in 0..2 {
            let f = 1 - apex_slot; // boundary faces are opposite the other apex
            let mut face = [vs[apex_slot], vs[2], vs[3]];
            face.sort();
            locate.insert(face, (t, f));
        }
    }
    for pairing in dc.pairings() {
        let find = |face: [ConeVertex; 3]| {
            locate.get(&face_key(face)).copied().ok_or_else(|| {
                GexError::Construction(format!("{face:?} is not a face of any tetrahedron"))
            })
        };
        let (t, f) = find(pairing.source)?;
        let (t2, f2) = find(pairing.target)?;
        let mut images = [0u8; 4];
        images[f] = f2 as u8;
        for x in (0..4).filter(|&x| x != f) {
            let k = pairing
                .source
                .iter()
                .position(|&v| v == vertices[t][x])
                .ok_or_else(|| GexError::Construction("pairing misses a vertex".into()))?;
            let y = vertices[t2]
                .iter()
                .position(|&v| v == pairing.target[k])
                .ok_or_else(|| GexError::Construction("pairing target misses a vertex".into()))?;
            images[x] = y as u8;
        }
        let perm = Perm4::new(images).ok_or_else(|| {
            GexError::Construction(format!("pairing {pairing:?} is not a bijection"))
        })?;
        set(t, f, t2, perm)?;
    }

    let mut tets = Vec::with_capacity(m);
    for (t, vs) in vertices.into_iter().enumerate() {
        let mut g = [Gluing {
            tet: 0,
            perm: Perm4::IDENTITY,
        }; 4];
        for f in 0..4 {
            g[f] = gluings[t][f].ok_or_else(|| {
                GexError::Construction(format!("face {f} of tetrahedron {t} is unglued"))
            })?;
        }
        tets.push(Tetrahedron {
            vertices: vs,
            gluings: g,
        });
    }
    Triangulation::from_tetrahedra(dc.g(), tets)
}

impl Triangulation {
    /// Assembles a triangulation from glued tetrahedra, checking the gluing
    /// involution and computing orientation, edge and vertex classes.
    pub fn from_tetrahedra(g: usize, tets: Vec<Tetrahedron>) -> Result<Self> {
        let m = tets.len();
        for (t, tet) in tets.iter().enumerate() {
            for f in 0..4 {
                let Gluing { tet: t2, perm } = tet.gluings[f];
                invariant(t2 < m, || {
                    format!("face {f} of {t} glued to missing tet {t2}")
                })?;
                let f2 = perm.apply(f);
                invariant((t2, f2) != (t, f), || {
                    format!("face {f} of tetrahedron {t} is glued to itself")
                })?;
                let back = tets[t2].gluings[f2];
                invariant(back.tet == t && back.perm == perm.inverse(), || {
                    format!("gluing of face {f} of tetrahedron {t} is not an involution")
                })?;
            }
        }

        let orientation = orient(&tets)?;

        let mut edges = UnionFind::new(6 * m);
        let mut verts = UnionFind::new(4 * m);
        for (t, tet) in tets.iter().enumerate() {
            for f in 0..4 {
                let Gluing { tet: t2, perm } = tet.gluings[f];
                for x in (0..4).filter(|&x| x != f) {
                    verts.union(4 * t + x, 4 * t2 + perm.apply(x));
                }
                for (e, &(a, b)) in EDGES.iter().enumerate() {
                    if a != f && b != f {
                        let e2 = edge_index(perm.apply(a), perm.apply(b));
                        edges.union(6 * t + e, 6 * t2 + e2);
                    }
                }
            }
        }
        let edge_orbits: Vec<Vec<TetEdge>> = edges
            .groups()
            .into_iter()
            .map(|grp| {
                grp.into_iter()
                    .map(|x| TetEdge {
                        tet: x / 6,
                        edge: x % 6,
                    })
                    .collect()
            })
            .collect();

        let mut vertex_classes = Vec::new();
        let mut vertex_class_of = vec![[usize::MAX; 4]; m];
        for (ci, grp) in verts.groups().into_iter().enumerate() {
            let members: Vec<TetVertex> = grp
                .into_iter()
                .map(|x| TetVertex {
                    tet: x / 4,
                    slot: x % 4,
                })
                .collect();
            for mv in &members {
                vertex_class_of[mv.tet][mv.slot] = ci;
            }
            let link = link_surface(&tets, &members);
            let kind = match link.euler_characteristic {
                0 => VertexKind::Ideal,
                x if x < 0 => VertexKind::Truncated,
                x => {
                    return Err(GexError::Construction(format!(
                        "vertex class {ci} has a link of Euler characteristic {x}"
                    )))
                }
            };
            vertex_classes.push(VertexClass {
                kind,
                members,
                link,
            });
        }

        Ok(Triangulation {
            g,
            tets,
            orientation,
            edge_orbits,
            vertex_classes,
            vertex_class_of,
        })
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn num_tets(&self) -> usize {
        self.tets.len()
    }

    pub fn tets(&self) -> &[Tetrahedron] {
        &self.tets
    }

    pub fn tet(&self, t: usize) -> &Tetrahedron {
        &self.tets[t]
    }

    pub fn gluing(&self, t: usize, face: usize) -> Gluing {
        self.tets[t].gluings[face]
    }

    /// Orientation signs making every gluing orientation-reversing on faces.
    pub fn orientation(&self) -> &[i8] {
        &self.orientation
    }

    /// The raw edge partition, orbits ordered by their smallest member.
    pub fn edge_orbits(&self) -> &[Vec<TetEdge>] {
        &self.edge_orbits
    }

    pub fn vertex_classes(&self) -> &[VertexClass] {
        &self.vertex_classes
    }

    pub fn vertex_class(&self, t: usize, slot: usize) -> usize {
        self.vertex_class_of[t][slot]
    }

    pub fn is_ideal(&self, t: usize, slot: usize) -> bool {
        self.vertex_classes[self.vertex_class(t, slot)].kind == VertexKind::Ideal
    }

    /// The unique ideal slot of a tetrahedron.
    pub fn ideal_slot(&self, t: usize) -> Result<usize> {
        let ideal: Vec<usize> = (0..4).filter(|&s| self.is_ideal(t, s)).collect();
        match ideal.as_slice() {
            [s] => Ok(*s),
            _ => Err(GexError::InvariantViolation(format!(
                "tetrahedron {t} has ideal slots {ideal:?}, expected exactly one"
            ))),
        }
    }

    /// Each glued face pair once, as `((tet, face), (tet, face))` with the
    /// first entry lexicographically smaller.
    pub fn face_pairs(&self) -> Vec<((usize, usize), (usize, usize))> {
        let mut out = Vec::with_capacity(2 * self.tets.len());
        for (t, tet) in self.tets.iter().enumerate() {
            for f in 0..4 {
                let gl = tet.gluings[f];
                let other = (gl.tet, gl.perm.apply(f));
                if (t, f) < other {
                    out.push(((t, f), other));
                }
            }
        }
        out
    }

    /// Cone-vertex labels of the endpoints of a tetrahedron edge, sorted.
    pub fn edge_label(&self, e: TetEdge) -> (ConeVertex, ConeVertex) {
        let (a, b) = EDGES[e.edge];
        let (va, vb) = (self.tets[e.tet].vertices[a], self.tets[e.tet].vertices[b]);
        if va <= vb {
            (va, vb)
        } else {
            (vb, va)
        }
    }
}

fn orient(tets: &[Tetrahedron]) -> Result<Vec<i8>> {
    let mut sign = vec![0i8; tets.len()];
    if tets.is_empty() {
        return Ok(sign);
    }
    let mut stack = vec![0usize];
    sign[0] = 1;
    while let Some(t) = stack.pop() {
        for f in 0..4 {
            let Gluing { tet: t2, perm } = tets[t].gluings[f];
            let want = -sign[t] * perm.sign();
            if sign[t2] == 0 {
                sign[t2] = want;
                stack.push(t2);
            } else if sign[t2] != want {
                return Err(GexError::InvariantViolation(
                    "triangulation is not orientable".into(),
                ));
            }
        }
    }
    if sign.contains(&0) {
        return Err(GexError::InvariantViolation(
            "triangulation is not connected".into(),
        ));
    }
    Ok(sign)
}

/// Builds the link of a vertex class: one triangle per member, corners
/// indexed by the slot the corresponding tetrahedron edge runs to.
fn link_surface(tets: &[Tetrahedron], members: &[TetVertex]) -> LinkSurface {
    let index: HashMap<(usize, usize), usize> = members
        .iter()
        .enumerate()
        .map(|(i, v)| ((v.tet, v.slot), i))
        .collect();
    let n = members.len();
    let mut corners = UnionFind::new(4 * n);
    let mut triangles = UnionFind::new(n);
    let mut edge_sides = 0usize;
    for (i, v) in members.iter().enumerate() {
        for f in (0..4).filter(|&f| f != v.slot) {
            let Gluing { tet: t2, perm } = tets[v.tet].gluings[f];
            let j = index[&(t2, perm.apply(v.slot))];
            triangles.union(i, j);
            edge_sides += 1;
            for w in (0..4).filter(|&w| w != v.slot && w != f) {
                corners.union(4 * i + w, 4 * j + perm.apply(w));
            }
        }
    }
    let vertices = (0..n)
        .flat_map(|i| {
            let slot = members[i].slot;
            (0..4).filter(move |&w| w != slot).map(move |w| 4 * i + w)
        })
        .map(|c| corners.find(c))
        .collect::<std::collections::BTreeSet<_>>()
        .len();
    let edges = edge_sides / 2;
    let connected = triangles.groups().len() == 1;
    LinkSurface {
        triangles: n,
        edges,
        vertices,
        euler_characteristic: vertices as i64 - edges as i64 + n as i64,
        connected,
    }
}

/// A quotient edge with its label `k` (the edge `e_k`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeClass {
    pub label: usize,
    pub members: Vec<TetEdge>,
    pub incidence: usize,
}

/// Expected members of `e_k` read off the double cone: the tetrahedron edges
/// whose endpoints form one of the listed cone edges.
fn lemma_members(t: &Triangulation, k: usize) -> Vec<TetEdge> {
    let g = t.g() as i64;
    let m = 2 * (g + 1);
    let p = |i: i64| ConeVertex::P(i.rem_euclid(m) as usize);
    let sorted = |a: ConeVertex, b: ConeVertex| if a <= b { (a, b) } else { (b, a) };
    let wanted: Vec<(ConeVertex, ConeVertex)> = if (k as i64) <= g {
        let k = k as i64;
        vec![
            sorted(ConeVertex::V1, p(2 * k)),
            sorted(p(2 * k), p(2 * k + 1)),
            sorted(p(2 * k + 1), p(2 * k + 2)),
            sorted(p(2 * k + 2), ConeVertex::V2),
        ]
    } else if k as i64 == g + 1 {
        (0..m)
            .filter(|j| j % 2 == 1)
            .flat_map(|j| [sorted(ConeVertex::V1, p(j)), sorted(ConeVertex::V2, p(j))])
            .collect()
    } else {
        vec![(ConeVertex::V1, ConeVertex::V2)]
    };
    let mut out = Vec::new();
    for tet in 0..t.num_tets() {
        for edge in 0..6 {
            let e = TetEdge { tet, edge };
            if wanted.contains(&t.edge_label(e)) {
                out.push(e);
            }
        }
    }
    out
}

/// Expected incidence number of `e_k`.
pub fn expected_incidence(g: usize, k: usize) -> usize {
    if k <= g {
        6
    } else if k == g + 1 {
        4 * g + 4
    } else {
        2 * g + 2
    }
}

/// Labels the computed edge partition as `e_0 .. e_{g+2}` and checks each
/// class against the explicit membership lists and incidence numbers.
pub fn edge_classes(t: &Triangulation) -> Result<Vec<EdgeClass>> {
    let g = t.g();
    invariant(t.edge_orbits().len() == g + 3, || {
        format!(
            "expected {} edge classes, found {}",
            g + 3,
            t.edge_orbits().len()
        )
    })?;
    let total: usize = t.edge_orbits().iter().map(Vec::len).sum();
    invariant(total == 6 * t.num_tets(), || {
        format!("incidences sum to {total}, expected {}", 6 * t.num_tets())
    })?;
    let mut classes = Vec::with_capacity(g + 3);
    for k in 0..g + 3 {
        let expected = lemma_members(t, k);
        let orbit = expected
            .first()
            .and_then(|e| t.edge_orbits().iter().find(|o| o.contains(e)))
            .ok_or_else(|| GexError::InvariantViolation(format!("edge e_{k} has no members")))?;
        invariant(*orbit == expected, || {
            format!(
                "computed class {orbit:?} differs from the listed members of e_{k} {expected:?}"
            )
        })?;
        invariant(orbit.len() == expected_incidence(g, k), || {
            format!(
                "e_{k} has incidence {}, expected {}",
                orbit.len(),
                expected_incidence(g, k)
            )
        })?;
        classes.push(EdgeClass {
            label: k,
            members: orbit.clone(),
            incidence: orbit.len(),
        });
    }
    Ok(classes)
}

/// Genera of the cusp link and of the geodesic boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexLinkSummary {
    pub cusp_link_genus: i64,
    pub boundary_genus: i64,
    pub cusp: LinkSurface,
    pub boundary: LinkSurface,
}

/// Checks there is one torus cusp and one connected boundary surface.
pub fn classify_vertex_links(t: &Triangulation) -> Result<VertexLinkSummary> {
    let pick = |kind: VertexKind| -> Result<LinkSurface> {
        let found: Vec<&VertexClass> = t
            .vertex_classes()
            .iter()
            .filter(|c| c.kind == kind)
            .collect();
        match found.as_slice() {
            [c] => {
                invariant(c.link.connected, || {
                    format!("{kind:?} link is disconnected")
                })?;
                invariant(2 * c.link.edges == 3 * c.link.triangles, || {
                    format!("{kind:?} link is not a closed surface")
                })?;
                Ok(c.link)
            }
            _ => Err(GexError::InvariantViolation(format!(
                "expected one {kind:?} vertex class, found {}",
                found.len()
            ))),
        }
    };
    let cusp = pick(VertexKind::Ideal)?;
    let boundary = pick(VertexKind::Truncated)?;
    invariant(cusp.triangles == t.num_tets(), || {
        format!(
            "cusp torus has {} triangles, expected {}",
            cusp.triangles,
            t.num_tets()
        )
    })?;
    Ok(VertexLinkSummary {
        cusp_link_genus: cusp.genus(),
        boundary_genus: boundary.genus(),
        cusp,
        boundary,
    })
}

/// Convenience: `subdivide(build_double_cone(g))`.
pub fn build_triangulation(g: usize) -> Result<Triangulation> {
    subdivide(&build_double_cone(g)?)
}
