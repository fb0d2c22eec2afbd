//! Shared fixtures: monodromy-word bundle builders and a hand-checked
//! two-tetrahedron triangulation.

#![allow(dead_code)]

use veerkit::triangulation::VeeringTriangulation;
use veerkit::{Perm4, RawTriangulation, Result};

/// The two-tetrahedron figure-eight knot complement, written out gluing
/// by gluing.
pub const FIG8_JSON: &str = r#"{
  "num_tetrahedra": 2,
  "gluings": [
    [[1, "3120"], [1, "1023"], [1, "0213"], [1, "0132"]],
    [[0, "1023"], [0, "0213"], [0, "0132"], [0, "3120"]]
  ],
  "pi_pair": [1, 1]
}"#;

pub fn fig8() -> VeeringTriangulation {
    veerkit::triangulation::parse_explicit(FIG8_JSON).expect("figure eight fixture")
}

fn perm(digits: [u8; 4]) -> Perm4 {
    Perm4::new(digits).expect("fixture permutation")
}

/// Mapping torus of a once-punctured torus, from a monodromy word in R
/// and L (both letters must occur). One tetrahedron per letter; the
/// gluing of consecutive tetrahedra depends on the letter of the later
/// one.
pub fn torus_bundle(word: &str) -> Result<VeeringTriangulation> {
    let letters: Vec<char> = word.chars().collect();
    let n = letters.len();
    assert!(
        letters.iter().any(|&c| c == 'R') && letters.iter().any(|&c| c == 'L'),
        "monodromy must mix both letters"
    );
    let mut gluings = vec![[None::<(usize, Perm4)>; 4]; n];
    let mut set = |t: usize, k: u8, t2: usize, sigma: Perm4| {
        gluings[t][k as usize] = Some((t2, sigma));
        gluings[t2][sigma.apply(k) as usize] = Some((t, sigma.inverse()));
    };
    for j in 0..n {
        let k = (j + 1) % n;
        match letters[k] {
            'R' => {
                set(j, 2, k, perm([0, 1, 3, 2]));
                set(j, 0, k, perm([1, 0, 2, 3]));
            }
            'L' => {
                set(j, 2, k, perm([0, 2, 1, 3]));
                set(j, 0, k, perm([3, 1, 2, 0]));
            }
            c => panic!("bad letter {:?}", c),
        }
    }
    let gluings = gluings
        .into_iter()
        .map(|row| row.map(|g| g.expect("all slots glued")))
        .collect();
    let raw = RawTriangulation::new(gluings, vec![1; n])?;
    raw.to_veering(false)
}

/// Mapping torus of a four-punctured sphere over the same monodromy
/// words, two tetrahedra per letter. Tetrahedra 2j and 2j + 1 form the
/// layer of letter j.
pub fn s04_bundle(word: &str) -> Result<VeeringTriangulation> {
    let letters: Vec<char> = word.chars().collect();
    let n = letters.len();
    assert!(
        letters.iter().any(|&c| c == 'R') && letters.iter().any(|&c| c == 'L'),
        "monodromy must mix both letters"
    );
    let mut gluings = vec![[None::<(usize, Perm4)>; 4]; 2 * n];
    let mut set = |t: usize, k: u8, t2: usize, sigma: Perm4| {
        gluings[t][k as usize] = Some((t2, sigma));
        gluings[t2][sigma.apply(k) as usize] = Some((t, sigma.inverse()));
    };
    for j in 0..n {
        let k = (j + 1) % n;
        let (a, b) = (2 * j, 2 * j + 1);
        let (a2, b2) = (2 * k, 2 * k + 1);
        match letters[k] {
            'R' => {
                set(a, 2, b2, perm([2, 3, 1, 0]));
                set(a, 0, a2, perm([1, 0, 2, 3]));
                set(b, 2, b2, perm([0, 1, 3, 2]));
                set(b, 0, a2, perm([3, 2, 0, 1]));
            }
            'L' => {
                set(a, 2, a2, perm([0, 2, 1, 3]));
                set(a, 0, b2, perm([3, 1, 2, 0]));
                set(b, 2, b2, perm([0, 2, 1, 3]));
                set(b, 0, a2, perm([3, 1, 2, 0]));
            }
            c => panic!("bad letter {:?}", c),
        }
    }
    let gluings = gluings
        .into_iter()
        .map(|row| row.map(|g| g.expect("all slots glued")))
        .collect();
    let raw = RawTriangulation::new(gluings, vec![1; 2 * n])?;
    raw.to_veering(false)
}

/// Monodromy words for the layered fixture census.
pub const TORUS_WORDS: [&str; 15] = [
    "RL", "RRL", "RLL", "RRLL", "RRRL", "RLRL", "RRRLL", "RRLRL", "RRRRL",
    "RRRLRL", "RRLLRL", "RRRRLL", "RRRRRRL", "RRRRRRRL", "RRRRLLLL",
];

pub const S04_WORDS: [&str; 10] =
    ["RL", "RRL", "RLL", "RRLL", "RLRL", "RRRL", "RRRLL", "RRLRL", "RLLLL", "RRRRL"];

pub fn census() -> Vec<(String, VeeringTriangulation)> {
    let mut out = Vec::new();
    for w in TORUS_WORDS {
        out.push((format!("torus:{}", w), torus_bundle(w).expect(w)));
    }
    for w in S04_WORDS {
        out.push((format!("sphere:{}", w), s04_bundle(w).expect(w)));
    }
    out
}
