mod common;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Signed, Zero};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use veerkit::carried::{
    can_flip, carried_cone, carried_surface, check_carried, class_vector, extract_stable_loop,
    flip, flip_delta, is_fiber_class, legal_flips, replay_fiber_result, to_rationals, FiberResult,
};
use veerkit::homology::{pairing, transversalize, DualComplex, H1};
use veerkit::stable_track::enumerate_stable_loops;
use veerkit::{Error, VeeringTriangulation};

fn ints(w: &[i64]) -> Vec<BigInt> {
    w.iter().map(|&x| BigInt::from(x)).collect()
}

fn ray_ints(ray: &[BigRational]) -> Vec<BigInt> {
    ray.iter().map(|x| x.numer().clone()).collect()
}

fn fixture(name: &str) -> VeeringTriangulation {
    common::census().into_iter().find(|(n, _)| n == name).unwrap().1
}

#[test]
fn fig8_cone_rays() {
    let tri = common::fig8();
    let cone = carried_cone(&tri).unwrap();
    let rays: Vec<Vec<BigInt>> = cone.rays().iter().map(|r| ray_ints(r)).collect();
    assert_eq!(rays, vec![ints(&[0, 1, 0, 1]), ints(&[1, 0, 1, 0])]);
    assert!(cone.lineality().is_empty());
    cone.certify().unwrap();
}

#[test]
fn s04_rl_cone_rays() {
    let tri = fixture("sphere:RL");
    let cone = carried_cone(&tri).unwrap();
    let rays: Vec<Vec<BigInt>> = cone.rays().iter().map(|r| ray_ints(r)).collect();
    let expected: Vec<Vec<BigInt>> = [
        [0, 0, 1, 0, 0, 2, 1, 0],
        [0, 0, 1, 1, 1, 0, 0, 1],
        [0, 0, 2, 1, 0, 3, 0, 2],
        [0, 0, 3, 2, 4, 0, 3, 0],
        [0, 1, 0, 1, 0, 1, 0, 1],
        [0, 1, 0, 1, 1, 0, 1, 0],
        [0, 2, 0, 1, 0, 3, 2, 0],
        [0, 3, 0, 4, 2, 0, 0, 3],
        [1, 0, 1, 0, 0, 1, 0, 1],
        [1, 0, 1, 0, 1, 0, 1, 0],
        [1, 1, 0, 0, 0, 1, 1, 0],
        [2, 1, 0, 0, 0, 0, 0, 1],
        [3, 0, 2, 0, 1, 0, 0, 2],
        [3, 2, 0, 0, 1, 0, 2, 0],
    ]
    .iter()
    .map(|r| ints(r))
    .collect();
    assert_eq!(rays, expected);
    cone.certify().unwrap();
}

#[test]
fn census_cones_certify() {
    for (name, tri) in common::census() {
        let cone = carried_cone(&tri).unwrap();
        cone.certify().unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(cone.lineality().is_empty(), "{name}");
        for ray in cone.rays() {
            check_carried(&tri, ray).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(ray.iter().all(|x| !x.is_negative()), "{name}");
        }
    }
}

#[test]
fn check_carried_rejects() {
    let tri = common::fig8();
    assert!(matches!(
        check_carried(&tri, &to_rationals(&ints(&[1, 1]))),
        Err(Error::DimensionMismatch(_))
    ));
    assert!(matches!(
        check_carried(&tri, &to_rationals(&ints(&[-1, 0, -1, 0]))),
        Err(Error::NotCarried(_))
    ));
    // Branch inequality violated: positive total but unbalanced at an edge.
    assert!(matches!(
        check_carried(&tri, &to_rationals(&ints(&[1, 0, 0, 0]))),
        Err(Error::NotCarried(_))
    ));
    check_carried(&tri, &to_rationals(&ints(&[0, 0, 0, 0]))).unwrap();
    check_carried(&tri, &to_rationals(&ints(&[2, 1, 2, 1]))).unwrap();
}

#[test]
fn flip_deltas_sum_to_zero() {
    for (name, tri) in common::census() {
        for t in 0..tri.num_tetrahedra() {
            let delta = flip_delta(&tri, t);
            assert_eq!(delta.len(), tri.num_faces(), "{name}");
            assert_eq!(delta.iter().sum::<i64>(), 0, "{name}");
            assert_eq!(delta.iter().filter(|&&d| d != 0).count(), 4, "{name}");
        }
    }
}

#[test]
fn random_flip_walk_conserves_invariants() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for name in ["torus:RL", "torus:RRLL", "sphere:RL", "sphere:RRL"] {
        let tri = fixture(name);
        let complex = DualComplex::new(&tri);
        let h1 = H1::new(&complex);
        let cone = carried_cone(&tri).unwrap();
        let mut w = vec![BigInt::zero(); tri.num_faces()];
        for ray in cone.rays() {
            for (acc, x) in w.iter_mut().zip(ray_ints(ray)) {
                *acc += x;
            }
        }
        let cycles: Vec<Vec<BigInt>> = enumerate_stable_loops(&tri, true)
            .unwrap()
            .iter()
            .map(|sl| transversalize(&tri, sl).unwrap())
            .collect();
        let total: BigInt = w.iter().sum();
        let class = class_vector(&h1, &to_rationals(&w));
        let pairings: Vec<BigRational> = cycles
            .iter()
            .map(|c| pairing(&tri, &complex, &to_rationals(&w), c).unwrap())
            .collect();
        for _ in 0..200 {
            let legal = legal_flips(&tri, &w);
            assert!(!legal.is_empty(), "{name}");
            let t = legal[rng.gen_range(0..legal.len())];
            w = flip(&tri, t, &w).unwrap();
            check_carried(&tri, &to_rationals(&w)).unwrap();
            assert_eq!(w.iter().sum::<BigInt>(), total, "{name}");
            assert_eq!(class_vector(&h1, &to_rationals(&w)), class, "{name}");
            let now: Vec<BigRational> = cycles
                .iter()
                .map(|c| pairing(&tri, &complex, &to_rationals(&w), c).unwrap())
                .collect();
            assert_eq!(now, pairings, "{name}");
        }
    }
}

#[test]
fn flip_requires_legality() {
    let tri = common::fig8();
    let w = ints(&[1, 0, 1, 0]);
    for t in 0..tri.num_tetrahedra() {
        assert_eq!(can_flip(&tri, t, &w), legal_flips(&tri, &w).contains(&t));
        if !can_flip(&tri, t, &w) {
            assert!(matches!(flip(&tri, t, &w), Err(Error::NotFlippable(_))));
        }
    }
}

#[test]
fn fig8_fiber_certificates() {
    let tri = common::fig8();
    for w in [ints(&[1, 0, 1, 0]), ints(&[0, 1, 0, 1]), ints(&[1, 1, 1, 1])] {
        let res = is_fiber_class(&tri, &w).unwrap();
        assert!(matches!(res, FiberResult::Fiber { .. }));
        if let FiberResult::Fiber { ref cycle, .. } = res {
            assert!(!cycle.is_empty());
        }
        replay_fiber_result(&tri, &w, &res).unwrap();
    }
    let res = is_fiber_class(&tri, &ints(&[0, 0, 0, 0])).unwrap();
    assert!(matches!(res, FiberResult::Empty));
    replay_fiber_result(&tri, &ints(&[0, 0, 0, 0]), &res).unwrap();
}

#[test]
fn s04_rl_nonfiber_certificates() {
    let tri = fixture("sphere:RL");
    let complex = DualComplex::new(&tri);
    for (w, loop_arcs) in [
        (ints(&[0, 0, 1, 0, 0, 2, 1, 0]), vec![(2, 2), (6, 1), (5, 2)]),
        (ints(&[2, 1, 0, 0, 0, 0, 0, 1]), vec![(0, 2), (1, 1), (7, 0)]),
    ] {
        let res = is_fiber_class(&tri, &w).unwrap();
        let FiberResult::NonFiber { ref stable_loop, .. } = res else {
            panic!("expected a non fiber certificate");
        };
        let got: Vec<(usize, u8)> =
            stable_loop.arcs().iter().map(|a| (a.face, a.slot)).collect();
        assert_eq!(got, loop_arcs);
        let cycle = transversalize(&tri, stable_loop).unwrap();
        let p = pairing(&tri, &complex, &to_rationals(&w), &cycle).unwrap();
        assert!(p.is_zero());
        replay_fiber_result(&tri, &w, &res).unwrap();
    }
}

#[test]
fn replay_rejects_tampered_certificates() {
    let tri = fixture("sphere:RL");
    let w = ints(&[0, 0, 1, 0, 0, 2, 1, 0]);
    let res = is_fiber_class(&tri, &w).unwrap();
    // Valid certificate, wrong weight vector.
    let other = ints(&[1, 0, 1, 0, 1, 0, 1, 0]);
    assert!(replay_fiber_result(&tri, &other, &res).is_err());
    let fiber = is_fiber_class(&tri, &other).unwrap();
    assert!(replay_fiber_result(&tri, &w, &fiber).is_err());
}

#[test]
fn extract_requires_terminal_vector() {
    let tri = common::fig8();
    // Every fixture class here is a fiber, so extraction must refuse.
    assert!(matches!(
        extract_stable_loop(&tri, &ints(&[1, 1, 1, 1])),
        Err(Error::Flippable(_))
    ));
}

#[test]
fn carried_surfaces() {
    let tri = common::fig8();
    let cases: [(&[i64], u64, i64, &[(u64, i64)]); 4] = [
        (&[1, 0, 1, 0], 2, -1, &[(2, -1)]),
        (&[0, 1, 0, 1], 2, -1, &[(2, -1)]),
        (&[1, 1, 1, 1], 4, -2, &[(2, -1), (2, -1)]),
        (&[2, 0, 2, 0], 4, -2, &[(2, -1), (2, -1)]),
    ];
    for (w, total, euler, comps) in cases {
        let s = carried_surface(&tri, &ints(w)).unwrap();
        assert_eq!(s.total_sheets, total);
        assert_eq!(s.euler, euler);
        let got: Vec<(u64, i64)> = s.components.iter().map(|c| (c.sheets, c.euler)).collect();
        assert_eq!(got, comps);
    }
    let tri = fixture("sphere:RL");
    for w in [&[0i64, 0, 1, 0, 0, 2, 1, 0], &[2, 1, 0, 0, 0, 0, 0, 1]] {
        let s = carried_surface(&tri, &ints(w)).unwrap();
        assert_eq!((s.total_sheets, s.euler), (4, -2));
        assert_eq!(s.components.len(), 1);
    }
}

#[test]
fn euler_additive_under_scaling() {
    let tri = fixture("torus:RRL");
    let cone = carried_cone(&tri).unwrap();
    let base = ray_ints(&cone.rays()[0]);
    let s1 = carried_surface(&tri, &base).unwrap();
    let tripled: Vec<BigInt> = base.iter().map(|x| x * BigInt::from(3)).collect();
    let s3 = carried_surface(&tri, &tripled).unwrap();
    assert_eq!(s3.total_sheets, 3 * s1.total_sheets);
    assert_eq!(s3.euler, 3 * s1.euler);
}
