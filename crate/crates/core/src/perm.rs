//! Permutations of the four vertex slots of a tetrahedron.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A bijection of `{0, 1, 2, 3}`, stored as its image list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[u8; 4]", into = "[u8; 4]")]
pub struct Perm4([u8; 4]);

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);

    /// Returns `None` unless `images` lists each slot exactly once.
    pub fn new(images: [u8; 4]) -> Option<Self> {
        let mut seen = [false; 4];
        for &i in &images {
            let i = i as usize;
            if i >= 4 || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Perm4(images))
    }

    /// Transposition of two slots.
    pub fn swap(a: usize, b: usize) -> Self {
        let mut images = [0, 1, 2, 3];
        images.swap(a, b);
        Perm4(images)
    }

    #[inline]
    pub fn apply(self, slot: usize) -> usize {
        self.0[slot] as usize
    }

    pub fn images(self) -> [u8; 4] {
        self.0
    }

    pub fn inverse(self) -> Self {
        let mut inv = [0u8; 4];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        Perm4(inv)
    }

    /// The map `i -> self(other(i))`.
    pub fn compose(self, other: Perm4) -> Self {
        let mut out = [0u8; 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[other.0[i] as usize];
        }
        Perm4(out)
    }

    /// +1 for even permutations, -1 for odd ones.
    pub fn sign(self) -> i8 {
        let mut inversions = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// All 24 permutations in lexicographic order.
    pub fn all() -> impl Iterator<Item = Perm4> {
        let mut out = Vec::with_capacity(24);
        for a in 0..4u8 {
            for b in 0..4u8 {
                for c in 0..4u8 {
                    for d in 0..4u8 {
                        if let Some(p) = Perm4::new([a, b, c, d]) {
                            out.push(p);
                        }
                    }
                }
            }
        }
        out.into_iter()
    }
}

impl TryFrom<[u8; 4]> for Perm4 {
    type Error = String;

    fn try_from(images: [u8; 4]) -> Result<Self, Self::Error> {
        Perm4::new(images).ok_or_else(|| format!("{images:?} is not a permutation of 0..4"))
    }
}

impl From<Perm4> for [u8; 4] {
    fn from(p: Perm4) -> Self {
        p.0
    }
}

impl fmt::Display for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}{}", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn there_are_24_permutations_half_of_them_even() {
        let all: Vec<_> = Perm4::all().collect();
        assert_eq!(all.len(), 24);
        assert_eq!(all.iter().filter(|p| p.sign() == 1).count(), 12);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm4::new([0, 0, 1, 2]).is_none());
        assert!(Perm4::new([0, 1, 2, 4]).is_none());
    }

    #[test]
    fn compose_and_inverse() {
        for p in Perm4::all() {
            assert_eq!(p.compose(p.inverse()), Perm4::IDENTITY);
            for q in Perm4::all() {
                assert_eq!(p.compose(q).sign(), p.sign() * q.sign());
                for i in 0..4 {
                    assert_eq!(p.compose(q).apply(i), p.apply(q.apply(i)));
                }
            }
        }
    }

    #[test]
    fn four_cycles_are_odd() {
        assert_eq!(Perm4::new([2, 0, 3, 1]).unwrap().sign(), -1);
        assert_eq!(Perm4::new([3, 0, 1, 2]).unwrap().sign(), -1);
        assert_eq!(Perm4::swap(2, 3).sign(), -1);
    }
}
