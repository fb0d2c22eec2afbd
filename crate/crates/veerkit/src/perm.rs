//! Permutations of {0,1,2,3}, used for face gluings.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A permutation of {0,1,2,3}, stored as its image array: `images[i]` is
/// the image of `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm4 {
    images: [u8; 4],
}

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4 { images: [0, 1, 2, 3] };

    pub fn new(images: [u8; 4]) -> Result<Perm4> {
        let mut seen = [false; 4];
        for &x in &images {
            if x > 3 || seen[x as usize] {
                return Err(Error::Schema(format!(
                    "invalid permutation image array {:?}",
                    images
                )));
            }
            seen[x as usize] = true;
        }
        Ok(Perm4 { images })
    }

    pub fn apply(&self, i: u8) -> u8 {
        self.images[i as usize]
    }

    pub fn images(&self) -> [u8; 4] {
        self.images
    }

    /// `self.then(g)` maps `i` to `g(self(i))`.
    pub fn then(&self, g: Perm4) -> Perm4 {
        let mut images = [0u8; 4];
        for i in 0..4 {
            images[i] = g.apply(self.images[i]);
        }
        Perm4 { images }
    }

    pub fn inverse(&self) -> Perm4 {
        let mut images = [0u8; 4];
        for i in 0..4u8 {
            images[self.apply(i) as usize] = i;
        }
        Perm4 { images }
    }

    /// True for even permutations.
    pub fn is_even(&self) -> bool {
        let mut inversions = 0;
        for i in 0..4 {
            for j in (i + 1)..4 {
                if self.images[i] > self.images[j] {
                    inversions += 1;
                }
            }
        }
        inversions % 2 == 0
    }

    /// Sign: +1 for even, -1 for odd.
    pub fn sign(&self) -> i8 {
        if self.is_even() {
            1
        } else {
            -1
        }
    }

    /// The transposition swapping `a` and `b`.
    pub fn transposition(a: u8, b: u8) -> Perm4 {
        let mut images = [0, 1, 2, 3];
        images.swap(a as usize, b as usize);
        Perm4 { images }
    }

    /// All 24 permutations in lexicographic order of image arrays. This is
    /// the indexing used by isomorphism signatures.
    pub fn all() -> &'static [Perm4; 24] {
        static TABLE: std::sync::OnceLock<[Perm4; 24]> = std::sync::OnceLock::new();
        TABLE.get_or_init(|| {
            let mut out = [Perm4::IDENTITY; 24];
            let mut k = 0;
            for a in 0..4u8 {
                for b in 0..4u8 {
                    for c in 0..4u8 {
                        for d in 0..4u8 {
                            if let Ok(p) = Perm4::new([a, b, c, d]) {
                                out[k] = p;
                                k += 1;
                            }
                        }
                    }
                }
            }
            out
        })
    }

    /// Index of this permutation in lexicographic order (0..24).
    pub fn lex_index(&self) -> usize {
        Perm4::all().iter().position(|p| p == self).unwrap()
    }

    pub fn from_lex_index(i: usize) -> Result<Perm4> {
        Perm4::all()
            .get(i)
            .copied()
            .ok_or_else(|| Error::Signature(format!("permutation index {} out of range", i)))
    }

    /// Compact string form, e.g. `"0132"`.
    pub fn digits(&self) -> String {
        self.images.iter().map(|d| char::from(b'0' + d)).collect()
    }

    pub fn from_digits(s: &str) -> Result<Perm4> {
        let bytes = s.as_bytes();
        if bytes.len() != 4 {
            return Err(Error::Schema(format!("permutation string {:?} is not 4 digits", s)));
        }
        let mut images = [0u8; 4];
        for (i, &b) in bytes.iter().enumerate() {
            if !(b'0'..=b'3').contains(&b) {
                return Err(Error::Schema(format!("bad digit in permutation string {:?}", s)));
            }
            images[i] = b - b'0';
        }
        Perm4::new(images)
    }
}

impl fmt::Debug for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm4({})", self.digits())
    }
}

impl fmt::Display for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.digits())
    }
}

impl Serialize for Perm4 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.digits())
    }
}

impl<'de> Deserialize<'de> for Perm4 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Perm4, D::Error> {
        let s = String::deserialize(d)?;
        Perm4::from_digits(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_inverse() {
        let p = Perm4::new([1, 0, 3, 2]).unwrap();
        let q = Perm4::new([2, 3, 0, 1]).unwrap();
        let pq = p.then(q);
        for i in 0..4u8 {
            assert_eq!(pq.apply(i), q.apply(p.apply(i)));
        }
        assert_eq!(p.then(p.inverse()), Perm4::IDENTITY);
        assert_eq!(p.inverse().then(p), Perm4::IDENTITY);
    }

    #[test]
    fn parity() {
        assert!(Perm4::IDENTITY.is_even());
        assert!(!Perm4::transposition(0, 1).is_even());
        assert!(Perm4::new([1, 2, 0, 3]).unwrap().is_even());
        assert_eq!(Perm4::new([1, 0, 2, 3]).unwrap().sign(), -1);
    }

    #[test]
    fn lex_table() {
        let table = Perm4::all();
        let mut seen = std::collections::HashSet::new();
        for w in table.windows(2) {
            assert!(w[0].images() < w[1].images());
        }
        for p in table {
            assert!(seen.insert(*p));
        }
        assert_eq!(table[0], Perm4::IDENTITY);
        // Frozen spot checks of the indexing.
        assert_eq!(table[7].images(), [1, 0, 3, 2]);
        assert_eq!(table[8].images(), [1, 2, 0, 3]);
        assert_eq!(table[19].images(), [3, 0, 2, 1]);
    }

    #[test]
    fn digit_round_trip() {
        for p in Perm4::all() {
            assert_eq!(Perm4::from_digits(&p.digits()).unwrap(), *p);
            assert_eq!(Perm4::from_lex_index(p.lex_index()).unwrap(), *p);
        }
        assert!(Perm4::from_digits("0124").is_err());
        assert!(Perm4::from_digits("0112").is_err());
        assert!(Perm4::from_digits("012").is_err());
        assert!(Perm4::from_lex_index(24).is_err());
    }
}
