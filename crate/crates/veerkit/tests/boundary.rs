mod common;

use std::collections::BTreeSet;

use veerkit::boundary::{build_boundary, BranchKind, TriKind};
use veerkit::carried::carried_cone;
use veerkit::triangulation::Color;

#[test]
fn fig8_flat_triangles() {
    let tri = common::fig8();
    let bc = build_boundary(&tri).unwrap();
    assert_eq!(bc.triangles.len(), 8);
    assert_eq!(bc.cusps.len(), 1);
    assert_eq!(bc.switches.len(), 4);
    for t in 0..2 {
        let up = (0..4)
            .filter(|&v| bc.triangles[4 * t + v].kind == TriKind::Upward)
            .count();
        assert_eq!(up, 2);
    }
}

#[test]
fn fig8_ladders() {
    let tri = common::fig8();
    let bc = build_boundary(&tri).unwrap();
    let shape: Vec<(TriKind, usize, Vec<usize>, Vec<usize>)> = bc
        .ladders
        .iter()
        .map(|l| {
            (
                l.kind,
                l.triangles.len(),
                l.left.switches.clone(),
                l.right.switches.clone(),
            )
        })
        .collect();
    assert_eq!(
        shape,
        vec![
            (TriKind::Downward, 2, vec![0], vec![1]),
            (TriKind::Upward, 2, vec![1], vec![2]),
            (TriKind::Downward, 2, vec![2], vec![3]),
            (TriKind::Upward, 2, vec![3], vec![0]),
        ]
    );
}

#[test]
fn s04_rl_ladders() {
    let tri = common::s04_bundle("RL").unwrap();
    let bc = build_boundary(&tri).unwrap();
    let shape: Vec<(usize, TriKind, usize, Vec<usize>, Vec<usize>)> = bc
        .ladders
        .iter()
        .map(|l| {
            (
                l.cusp,
                l.kind,
                l.triangles.len(),
                l.left.switches.clone(),
                l.right.switches.clone(),
            )
        })
        .collect();
    assert_eq!(
        shape,
        vec![
            (0, TriKind::Downward, 6, vec![5, 3, 0], vec![1, 4, 2]),
            (0, TriKind::Upward, 6, vec![2, 1, 4], vec![3, 0, 5]),
            (1, TriKind::Upward, 2, vec![6], vec![7]),
            (1, TriKind::Downward, 2, vec![7], vec![6]),
        ]
    );
}

#[test]
fn census_ladder_shapes() {
    let expected_sphere: &[(&str, usize, &[usize])] = &[
        ("RL", 2, &[2, 2, 6, 6]),
        ("RRL", 3, &[3, 3, 3, 3, 6, 6]),
        ("RLL", 3, &[3, 3, 3, 3, 6, 6]),
        ("RRLL", 4, &[4, 4, 4, 4, 4, 4, 4, 4]),
        ("RLRL", 2, &[4, 4, 12, 12]),
        ("RRRL", 2, &[4, 4, 12, 12]),
        ("RRRLL", 3, &[5, 5, 5, 5, 10, 10]),
        ("RRLRL", 3, &[5, 5, 5, 5, 10, 10]),
        ("RLLLL", 3, &[5, 5, 5, 5, 10, 10]),
        ("RRRRL", 3, &[5, 5, 5, 5, 10, 10]),
    ];
    for (name, tri) in common::census() {
        let bc = build_boundary(&tri).unwrap();
        let mut lens: Vec<usize> = bc.ladders.iter().map(|l| l.triangles.len()).collect();
        lens.sort_unstable();
        let (family, word) = name.split_once(':').unwrap();
        if family == "torus" {
            let n = word.len();
            assert_eq!(bc.cusps.len(), 1, "{name}");
            assert_eq!(lens, vec![n; 4], "{name}");
        } else {
            let row = expected_sphere.iter().find(|r| r.0 == word).unwrap();
            assert_eq!(bc.cusps.len(), row.1, "{name}");
            assert_eq!(lens, row.2, "{name}");
        }
    }
}

#[test]
fn census_ladders_partition_triangles() {
    for (name, tri) in common::census() {
        let bc = build_boundary(&tri).unwrap();
        let mut seen = vec![0usize; bc.triangles.len()];
        for lad in &bc.ladders {
            for &t in &lad.triangles {
                seen[t] += 1;
                assert_eq!(bc.triangles[t].kind, lad.kind, "{name}");
                assert_eq!(bc.triangles[t].cusp, lad.cusp, "{name}");
            }
        }
        assert!(seen.iter().all(|&c| c == 1), "{name}");
    }
}

#[test]
fn census_cusp_counts() {
    for (name, tri) in common::census() {
        let bc = build_boundary(&tri).unwrap();
        assert_eq!(bc.triangles.len(), 4 * tri.num_tetrahedra(), "{name}");
        assert_eq!(bc.switches.len(), 2 * tri.num_edges(), "{name}");
        for cusp in &bc.cusps {
            // Euler characteristic 0 for the torus cell structure.
            assert_eq!(2 * cusp.switches.len(), cusp.triangles.len(), "{name}");
            let up = cusp
                .ladders
                .iter()
                .filter(|&&l| bc.ladders[l].kind == TriKind::Upward)
                .count();
            assert_eq!(2 * up, cusp.ladders.len(), "{name}");
            assert!(up >= 1, "{name}");
        }
    }
}

#[test]
fn census_pole_structure() {
    for (name, tri) in common::census() {
        let bc = build_boundary(&tri).unwrap();
        // Every pole branch separates an upward from a downward ladder, so
        // it appears in exactly two pole lists.
        let mut pole_refs = vec![0usize; bc.branches.len()];
        for lad in &bc.ladders {
            let m = lad.triangles.len();
            for pole in [&lad.left, &lad.right] {
                assert_eq!(pole.branches.len(), pole.switches.len(), "{name}");
                let k = pole.branches.len();
                for i in 0..k {
                    let b = &bc.branches[pole.branches[i]];
                    assert_eq!(b.kind, BranchKind::Pole, "{name}");
                    pole_refs[pole.branches[i]] += 1;
                    let s = pole.switches[i];
                    let next = &bc.branches[pole.branches[(i + 1) % k]];
                    assert!(s == b.tail || s == b.head, "{name}");
                    assert!(s == next.tail || s == next.head, "{name}");
                }
            }
            assert_eq!(
                lad.left.branches.len() + lad.right.branches.len(),
                m,
                "{name}"
            );
        }
        let n = tri.num_tetrahedra();
        assert_eq!(bc.branches.len(), 6 * n, "{name}");
        for (b, refs) in pole_refs.iter().enumerate() {
            let want = match bc.branches[b].kind {
                BranchKind::Pole => 2,
                BranchKind::Rung => 0,
            };
            assert_eq!(*refs, want, "{name}");
        }
        let rungs = bc
            .branches
            .iter()
            .filter(|b| b.kind == BranchKind::Rung)
            .count();
        assert_eq!(rungs, 4 * n, "{name}");
    }
}

#[test]
fn census_rungs_head_left() {
    // Every rung of a ladder runs from the right pole circle to the left one.
    for (name, tri) in common::census() {
        let bc = build_boundary(&tri).unwrap();
        for lad in &bc.ladders {
            let in_ladder: BTreeSet<usize> = lad.triangles.iter().copied().collect();
            let left: BTreeSet<usize> = lad.left.switches.iter().copied().collect();
            let right: BTreeSet<usize> = lad.right.switches.iter().copied().collect();
            for b in &bc.branches {
                if b.kind == BranchKind::Rung
                    && in_ladder.contains(&b.sides[0].0)
                    && in_ladder.contains(&b.sides[1].0)
                {
                    assert!(left.contains(&b.head), "{name}");
                    assert!(right.contains(&b.tail), "{name}");
                }
            }
        }
    }
}

#[test]
fn census_veering_rule() {
    let mut checked = 0;
    for (name, tri) in common::census() {
        let bc = build_boundary(&tri).unwrap();
        for lad in &bc.ladders {
            for (pole, is_left) in [(&lad.left, true), (&lad.right, false)] {
                let want = bc.required_color(lad, is_left);
                for &s in &pole.switches {
                    assert_eq!(tri.edge_color(bc.switches[s].edge), want, "{name}");
                    checked += 1;
                }
            }
        }
    }
    assert_eq!(checked, 624);
}

#[test]
fn fig8_required_colors() {
    let tri = common::fig8();
    let bc = build_boundary(&tri).unwrap();
    for lad in &bc.ladders {
        let (l, r) = match lad.kind {
            TriKind::Upward => (Color::Right, Color::Left),
            TriKind::Downward => (Color::Left, Color::Right),
        };
        assert_eq!(bc.required_color(lad, true), l);
        assert_eq!(bc.required_color(lad, false), r);
    }
}

#[test]
fn carried_rays_balanced_on_boundary() {
    for name in ["torus:RL", "torus:RRLL", "sphere:RL", "sphere:RRL"] {
        let (_, tri) = common::census()
            .into_iter()
            .find(|(n, _)| n == name)
            .unwrap();
        let bc = build_boundary(&tri).unwrap();
        let cone = carried_cone(&tri).unwrap();
        for ray in cone.rays() {
            assert!(bc.switch_balanced(ray), "{name}");
        }
    }
}
