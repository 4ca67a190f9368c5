//! Simplicial automorphisms of `T_g`, found by exhaustive seed-and-propagate
//! search, and the dihedral structure of the group they form.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{invariant, GexError, Result};
use crate::perm::Perm4;
use crate::triangulation::Triangulation;

/// A simplicial automorphism: tetrahedron `t` goes to `tet_map[t]` with slot
/// `x` going to slot `vertex_maps[t](x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Automorphism {
    pub tet_map: Vec<usize>,
    pub vertex_maps: Vec<Perm4>,
}

impl Automorphism {
    pub fn identity(num_tets: usize) -> Self {
        Automorphism {
            tet_map: (0..num_tets).collect(),
            vertex_maps: vec![Perm4::IDENTITY; num_tets],
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        let n = self.tet_map.len();
        let mut tet_map = vec![0; n];
        let mut vertex_maps = vec![Perm4::IDENTITY; n];
        for t in 0..n {
            let mid = other.tet_map[t];
            tet_map[t] = self.tet_map[mid];
            vertex_maps[t] = self.vertex_maps[mid].compose(other.vertex_maps[t]);
        }
        Automorphism {
            tet_map,
            vertex_maps,
        }
    }

    pub fn inverse(&self) -> Automorphism {
        let n = self.tet_map.len();
        let mut tet_map = vec![0; n];
        let mut vertex_maps = vec![Perm4::IDENTITY; n];
        for t in 0..n {
            let img = self.tet_map[t];
            tet_map[img] = t;
            vertex_maps[img] = self.vertex_maps[t].inverse();
        }
        Automorphism {
            tet_map,
            vertex_maps,
        }
    }

    pub fn pow(&self, k: usize) -> Automorphism {
        let mut out = Automorphism::identity(self.tet_map.len());
        for _ in 0..k {
            out = self.compose(&out);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        *self == Automorphism::identity(self.tet_map.len())
    }

    /// +1 if the map preserves the orientation of `t`, -1 if it reverses it.
    /// The sign is the same on every tetrahedron for a genuine automorphism.
    pub fn orientation_character(&self, t: &Triangulation) -> Result<i8> {
        let o = t.orientation();
        let chars: Vec<i8> = (0..self.tet_map.len())
            .map(|i| o[i] * o[self.tet_map[i]] * self.vertex_maps[i].sign())
            .collect();
        invariant(chars.iter().all(|&c| c == chars[0]), || {
            "orientation character is not constant across tetrahedra".into()
        })?;
        Ok(chars[0])
    }
}

/// Tries to extend "tetrahedron `base` goes to `image` via `perm`" to a
/// global automorphism by propagating across face gluings.
pub fn extend_seed(
    t: &Triangulation,
    base: usize,
    image: usize,
    perm: Perm4,
) -> Option<Automorphism> {
    let n = t.num_tets();
    let mut assigned: Vec<Option<(usize, Perm4)>> = vec![None; n];
    assigned[base] = Some((image, perm));
    let mut queue = VecDeque::from([base]);
    while let Some(s) = queue.pop_front() {
        let (s_img, phi) = assigned[s]?;
        for f in 0..4 {
            let src = t.gluing(s, f);
            let dst = t.gluing(s_img, phi.apply(f));
            // Compatibility: phi_{s2} ∘ sigma = tau ∘ phi_s.
            let want = dst.perm.compose(phi).compose(src.perm.inverse());
            match assigned[src.tet] {
                None => {
                    assigned[src.tet] = Some((dst.tet, want));
                    queue.push_back(src.tet);
                }
                Some(existing) if existing == (dst.tet, want) => {}
                Some(_) => return None,
            }
        }
    }
    let mut tet_map = Vec::with_capacity(n);
    let mut vertex_maps = Vec::with_capacity(n);
    let mut hit = vec![false; n];
    for a in assigned {
        let (img, p) = a?;
        if std::mem::replace(&mut hit[img], true) {
            return None;
        }
        tet_map.push(img);
        vertex_maps.push(p);
    }
    Some(Automorphism {
        tet_map,
        vertex_maps,
    })
}

/// The full automorphism group with its dihedral generators.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AutGroup {
    pub g: usize,
    pub elements: Vec<Automorphism>,
    /// Orientation character of each element, aligned with `elements`.
    pub orientation_preserving: Vec<bool>,
    /// Index of the rotation `p_i -> p_{i+2}`.
    pub r: usize,
    /// Index of the flip `p_i -> p_{-i}`, `v1 <-> v2`.
    pub s: usize,
    /// Number of seeds tried and how many were orientation-reversing.
    pub seeds_tried: usize,
    pub reversing_seeds_tried: usize,
    pub reversing_seeds_extended: usize,
}

impl AutGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, a: &Automorphism) -> Option<usize> {
        self.elements.iter().position(|e| e == a)
    }

    /// Every element written as `r^i s^j`, `0 <= i <= g`, `j ∈ {0, 1}`.
    pub fn dihedral_words(&self) -> Vec<(usize, usize)> {
        let r = &self.elements[self.r];
        let s = &self.elements[self.s];
        let mut words = vec![(usize::MAX, usize::MAX); self.elements.len()];
        for j in 0..2 {
            for i in 0..=self.g {
                let w = r.pow(i).compose(&s.pow(j));
                if let Some(k) = self.index_of(&w) {
                    words[k] = (i, j);
                }
            }
        }
        words
    }
}

/// Expected rotation `r_g` built from its action on the double cone.
pub fn rotation_r(t: &Triangulation) -> Automorphism {
    let n = t.num_tets();
    Automorphism {
        tet_map: (0..n).map(|i| (i + 2) % n).collect(),
        vertex_maps: vec![Perm4::IDENTITY; n],
    }
}

/// Expected flip `s_g`: tetrahedron `(v1, v2, p_i, p_{i+1})` goes to
/// `(v1, v2, p_{-i-1}, p_{-i})` with `v1 <-> v2`.
pub fn flip_s(t: &Triangulation) -> Automorphism {
    let n = t.num_tets();
    Automorphism {
        tet_map: (0..n).map(|i| (2 * n - 1 - i) % n).collect(),
        vertex_maps: vec![Perm4::new([1, 0, 3, 2]).expect("valid"); n],
    }
}

/// Exhaustive search over all `24 · (2g + 2)` seeds for tetrahedron 0.
pub fn automorphism_group(t: &Triangulation) -> Result<AutGroup> {
    let n = t.num_tets();
    let o = t.orientation();
    let mut elements: Vec<Automorphism> = Vec::new();
    let mut seeds_tried = 0;
    let mut reversing_seeds_tried = 0;
    let mut reversing_seeds_extended = 0;
    for image in 0..n {
        for perm in Perm4::all() {
            seeds_tried += 1;
            let reversing = o[0] * o[image] * perm.sign() < 0;
            if reversing {
                reversing_seeds_tried += 1;
            }
            if let Some(a) = extend_seed(t, 0, image, perm) {
                if reversing {
                    reversing_seeds_extended += 1;
                }
                elements.push(a);
            }
        }
    }
    let orientation_preserving = elements
        .iter()
        .map(|a| a.orientation_character(t).map(|c| c > 0))
        .collect::<Result<Vec<_>>>()?;

    let r_expected = rotation_r(t);
    let s_expected = flip_s(t);
    let r = elements
        .iter()
        .position(|a| *a == r_expected)
        .ok_or_else(|| {
            GexError::InvariantViolation("the rotation r_g is not an automorphism".into())
        })?;
    let s = elements
        .iter()
        .position(|a| *a == s_expected)
        .ok_or_else(|| {
            GexError::InvariantViolation("the flip s_g is not an automorphism".into())
        })?;
    Ok(AutGroup {
        g: t.g(),
        elements,
        orientation_preserving,
        r,
        s,
        seeds_tried,
        reversing_seeds_tried,
        reversing_seeds_extended,
    })
}

/// Outcome of the structural checks on [`AutGroup`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DihedralCheck {
    pub order: usize,
    pub expected_order: usize,
    pub contains_identity: bool,
    pub closed_under_composition: bool,
    pub closed_under_inverse: bool,
    pub r_order_relation: bool,
    pub s_involution: bool,
    pub conjugation_relation: bool,
    pub generated_by_r_and_s: bool,
    pub transitive_on_tetrahedra: bool,
    pub trivial_stabilizer: bool,
    pub all_orientation_preserving: bool,
}

impl DihedralCheck {
    pub fn passed(&self) -> bool {
        self.order == self.expected_order
            && self.contains_identity
            && self.closed_under_composition
            && self.closed_under_inverse
            && self.r_order_relation
            && self.s_involution
            && self.conjugation_relation
            && self.generated_by_r_and_s
            && self.transitive_on_tetrahedra
            && self.trivial_stabilizer
            && self.all_orientation_preserving
    }
}

/// Verifies `r^{g+1} = s^2 = 1`, `r s = s r^{-1}`, closure, generation,
/// simple transitivity on tetrahedra and orientation characters.
pub fn check_dihedral(group: &AutGroup) -> DihedralCheck {
    let els = &group.elements;
    let n = els.first().map_or(0, |e| e.tet_map.len());
    let index: HashMap<&Automorphism, usize> =
        els.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let contains = |a: &Automorphism| index.contains_key(a);
    let r = &els[group.r];
    let s = &els[group.s];

    let closed_under_composition = els
        .iter()
        .all(|a| els.iter().all(|b| contains(&a.compose(b))));
    let closed_under_inverse = els.iter().all(|a| contains(&a.inverse()));

    let mut generated: Vec<Automorphism> = vec![Automorphism::identity(n)];
    let mut frontier = generated.clone();
    while let Some(a) = frontier.pop() {
        for gen in [r, s] {
            let b = gen.compose(&a);
            if !generated.contains(&b) {
                generated.push(b.clone());
                frontier.push(b);
            }
        }
    }
    let generated_by_r_and_s =
        generated.len() == els.len() && generated.iter().all(contains);

    let mut images: Vec<usize> = els.iter().map(|a| a.tet_map[0]).collect();
    images.sort_unstable();
    images.dedup();
    let transitive_on_tetrahedra = images.len() == n;
    let stabilizer = els.iter().filter(|a| a.tet_map[0] == 0).count();

    DihedralCheck {
        order: els.len(),
        expected_order: 2 * group.g + 2,
        contains_identity: els.iter().any(Automorphism::is_identity),
        closed_under_composition,
        closed_under_inverse,
        r_order_relation: r.pow(group.g + 1).is_identity()
            && (1..=group.g).all(|k| !r.pow(k).is_identity()),
        s_involution: s.compose(s).is_identity() && !s.is_identity(),
        conjugation_relation: r.compose(s) == s.compose(&r.inverse()),
        generated_by_r_and_s,
        transitive_on_tetrahedra,
        trivial_stabilizer: stabilizer == 1,
        all_orientation_preserving: group.orientation_preserving.iter().all(|&p| p),
    }
}
