//! End-to-end acceptance checks. One pass/fail line per criterion; the
//! process exits nonzero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Signed, Zero};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use veerkit::blowup::{brute_force_fill, fill_even_family, filling_signature, validate_filling, Segment};
use veerkit::boundary::{build_boundary, TriKind};
use veerkit::carried::{
    carried_cone, check_carried, class_vector, flip, is_fiber_class, legal_flips,
    replay_fiber_result, to_rationals, FiberResult,
};
use veerkit::cones::Cone;
use veerkit::duality::{run_duality_check, DualityOptions};
use veerkit::homology::{pairing, transversalize, DualComplex, H1};
use veerkit::perm::Perm4;
use veerkit::stable_track::{
    brute_force_minimal_loops, decompose_stable_loop, enumerate_stable_loops,
    ladderpole_stable_loop, StableLoop,
};
use veerkit::VeeringTriangulation;

fn ray_ints(ray: &[BigRational]) -> Vec<BigInt> {
    ray.iter().map(|x| x.numer().clone()).collect()
}

fn sum_of_rays(cone: &Cone, len: usize) -> Vec<BigInt> {
    let mut sum = vec![BigInt::zero(); len];
    for ray in cone.rays() {
        for (acc, x) in sum.iter_mut().zip(ray_ints(ray)) {
            *acc += x;
        }
    }
    sum
}

fn image_cone(tri: &VeeringTriangulation, h1: &H1, cone: &Cone) -> Cone {
    let projected: Vec<Vec<BigRational>> =
        cone.rays().iter().map(|r| h1.project_weights(r)).collect();
    let _ = tri;
    Cone::from_rays(h1.betti, &projected).unwrap()
}

fn criterion_01() -> Result<String, String> {
    let t0 = Instant::now();
    let tri = common::fig8();
    if tri.num_faces() != 4 {
        return Err(format!("expected 4 faces, got {}", tri.num_faces()));
    }
    if tri.num_edges() != 2 || (0..2).any(|e| tri.edge(e).degree() != 6) {
        return Err("expected 2 edges of degree 6".into());
    }
    if tri.num_cusps() != 1 {
        return Err(format!("expected 1 cusp, got {}", tri.num_cusps()));
    }
    let bc = build_boundary(&tri).map_err(|e| e.to_string())?;
    let up = bc.ladders.iter().filter(|l| l.kind == TriKind::Upward).count();
    let down = bc.ladders.len() - up;
    if (up, down) != (2, 2) {
        return Err(format!("expected 2 upward + 2 downward ladders, got {up} + {down}"));
    }
    let h1 = H1::new(&DualComplex::new(&tri));
    if h1.betti != 1 || !h1.torsion.is_empty() {
        return Err(format!("expected H1 free of rank 1, got betti {} torsion {:?}", h1.betti, h1.torsion));
    }
    let cone = carried_cone(&tri).map_err(|e| e.to_string())?;
    let image = image_cone(&tri, &h1, &cone);
    if image.rays().len() != 1 || !image.lineality().is_empty() {
        return Err(format!("carried cone projects to {} rays", image.rays().len()));
    }
    let opts = DualityOptions { assume_layered: true, ..Default::default() };
    let report = run_duality_check(&tri, &opts).map_err(|e| e.to_string())?;
    if report.verdict != "EQUAL" || report.dual_rays.len() != 1 {
        return Err(format!("duality verdict {} with {} dual rays", report.verdict, report.dual_rays.len()));
    }
    let dt = t0.elapsed();
    if dt.as_secs_f64() >= 1.0 {
        return Err(format!("took {dt:?}, budget is 1 s"));
    }
    Ok(format!("figure-eight pipeline checks out in {dt:?}"))
}

fn criterion_02() -> Result<String, String> {
    let t0 = Instant::now();
    let census = common::census();
    if census.len() < 20 {
        return Err(format!("only {} fixtures", census.len()));
    }
    let opts = DualityOptions { assume_layered: true, ..Default::default() };
    for (name, tri) in &census {
        if tri.num_tetrahedra() > 10 {
            return Err(format!("{name} has more than 10 tetrahedra"));
        }
        let report = run_duality_check(tri, &opts).map_err(|e| format!("{name}: {e}"))?;
        if report.verdict != "EQUAL" {
            return Err(format!("{name}: verdict {} witnesses {:?}", report.verdict, report.witnesses));
        }
    }
    let dt = t0.elapsed();
    if dt.as_secs_f64() >= 60.0 {
        return Err(format!("took {dt:?}, budget is 1 min"));
    }
    Ok(format!("{} fixtures EQUAL in {dt:?}", census.len()))
}

fn criterion_03() -> Result<String, String> {
    let mut pairs = 0;
    for (name, tri) in common::census() {
        let complex = DualComplex::new(&tri);
        let cone = carried_cone(&tri).map_err(|e| e.to_string())?;
        let total = to_rationals(&sum_of_rays(&cone, tri.num_faces()));
        for sl in enumerate_stable_loops(&tri, true).map_err(|e| e.to_string())? {
            for a in sl.arcs() {
                let fe = &tri.face(a.face).edges[a.slot as usize];
                let fan = tri.edge(fe.edge).sides[fe.side as usize].len();
                if fan < 2 + fe.fan_pos {
                    return Err(format!("{name}: a turn crosses no face"));
                }
            }
            let cycle = transversalize(&tri, &sl).map_err(|e| e.to_string())?;
            for ray in cone.rays() {
                let p = pairing(&tri, &complex, ray, &cycle).map_err(|e| e.to_string())?;
                if p.is_negative() {
                    return Err(format!("{name}: negative pairing {p}"));
                }
                pairs += 1;
            }
            let p = pairing(&tri, &complex, &total, &cycle).map_err(|e| e.to_string())?;
            if !p.is_positive() {
                return Err(format!("{name}: pairing {p} with the ray sum"));
            }
        }
    }
    Ok(format!("{pairs} loop/ray pairings nonnegative, all positive against the ray sum"))
}

fn criterion_04() -> Result<String, String> {
    struct State {
        tri: VeeringTriangulation,
        complex: DualComplex,
        h1: H1,
        w: Vec<BigInt>,
        total: BigInt,
        class: Vec<BigRational>,
        cycles: Vec<Vec<BigInt>>,
        pairings: Vec<BigRational>,
    }
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut states = Vec::new();
    for (_, tri) in common::census() {
        let complex = DualComplex::new(&tri);
        let h1 = H1::new(&complex);
        let cone = carried_cone(&tri).map_err(|e| e.to_string())?;
        let w = sum_of_rays(&cone, tri.num_faces());
        let mut cycles = Vec::with_capacity(100);
        for _ in 0..100 {
            let mut c = vec![BigInt::zero(); tri.num_faces()];
            for basis in &h1.basis_cycles {
                let k = BigInt::from(rng.gen_range(-3i64..=3));
                for (acc, x) in c.iter_mut().zip(basis) {
                    *acc += &k * x;
                }
            }
            // Boundaries of dual 2-cells are cycles too.
            for _ in 0..2 {
                let e = rng.gen_range(0..tri.num_edges());
                let k = BigInt::from(rng.gen_range(-2i64..=2));
                for f in 0..tri.num_faces() {
                    c[f] += &k * &complex.d2[f][e];
                }
            }
            cycles.push(c);
        }
        let wq = to_rationals(&w);
        let total = w.iter().sum();
        let class = class_vector(&h1, &wq);
        let pairings = cycles
            .iter()
            .map(|c| pairing(&tri, &complex, &wq, c).unwrap())
            .collect();
        states.push(State { tri, complex, h1, w, total, class, cycles, pairings });
    }
    let num_states = states.len();
    for step in 0..1000 {
        let st = &mut states[step % num_states];
        let legal = legal_flips(&st.tri, &st.w);
        if legal.is_empty() {
            return Err("no legal flip from an interior vector".into());
        }
        let t = legal[rng.gen_range(0..legal.len())];
        st.w = flip(&st.tri, t, &st.w).map_err(|e| e.to_string())?;
        let wq = to_rationals(&st.w);
        check_carried(&st.tri, &wq).map_err(|e| e.to_string())?;
        if st.w.iter().sum::<BigInt>() != st.total {
            return Err(format!("flip {step}: total weight changed"));
        }
        if class_vector(&st.h1, &wq) != st.class {
            return Err(format!("flip {step}: projected class changed"));
        }
        for (c, p0) in st.cycles.iter().zip(&st.pairings) {
            if &pairing(&st.tri, &st.complex, &wq, c).unwrap() != p0 {
                return Err(format!("flip {step}: a pairing changed"));
            }
        }
    }
    Ok("1000 flips conserve weight, class and 100 pairings per fixture".into())
}

fn criterion_05() -> Result<String, String> {
    let mut fibers = 0;
    let mut nonfibers = 0;
    for (name, tri) in common::census() {
        let cone = carried_cone(&tri).map_err(|e| e.to_string())?;
        let interior = sum_of_rays(&cone, tri.num_faces());
        let res = is_fiber_class(&tri, &interior).map_err(|e| e.to_string())?;
        if !matches!(res, FiberResult::Fiber { .. }) {
            return Err(format!("{name}: interior point is not certified as a fiber"));
        }
        replay_fiber_result(&tri, &interior, &res).map_err(|e| format!("{name}: replay: {e}"))?;
        fibers += 1;
        if tri.num_cusps() != 2 {
            continue;
        }
        let complex = DualComplex::new(&tri);
        let h1 = H1::new(&complex);
        let image = image_cone(&tri, &h1, &cone);
        if h1.betti != 2 || image.rays().len() != 2 || !image.lineality().is_empty() {
            continue;
        }
        let projected: Vec<Vec<BigRational>> =
            cone.rays().iter().map(|r| h1.project_weights(r)).collect();
        for ir in image.rays() {
            let k = projected
                .iter()
                .position(|p| {
                    let cross = &p[0] * &ir[1] - &p[1] * &ir[0];
                    let dot = &p[0] * &ir[0] + &p[1] * &ir[1];
                    cross.is_zero() && dot.is_positive()
                })
                .ok_or_else(|| format!("{name}: an image ray has no extreme preimage"))?;
            let w = ray_ints(&cone.rays()[k]);
            let res = is_fiber_class(&tri, &w).map_err(|e| e.to_string())?;
            let FiberResult::NonFiber { ref stable_loop, .. } = res else {
                return Err(format!("{name}: boundary ray not certified non-fiber"));
            };
            let cycle = transversalize(&tri, stable_loop).map_err(|e| e.to_string())?;
            let p = pairing(&tri, &complex, &to_rationals(&w), &cycle).map_err(|e| e.to_string())?;
            if !p.is_zero() {
                return Err(format!("{name}: certificate loop pairs to {p}"));
            }
            replay_fiber_result(&tri, &w, &res).map_err(|e| format!("{name}: replay: {e}"))?;
            nonfibers += 1;
        }
    }
    if nonfibers < 4 {
        return Err(format!("only {nonfibers} non-fiber certificates exercised"));
    }
    Ok(format!("{fibers} fiber and {nonfibers} non-fiber certificates replay"))
}

fn criterion_06() -> Result<String, String> {
    // Enumeration against brute force on the small fixtures.
    let mut small = 0;
    for (name, tri) in common::census() {
        if tri.num_tetrahedra() > 4 {
            continue;
        }
        let fast = enumerate_stable_loops(&tri, true).map_err(|e| e.to_string())?;
        let slow = brute_force_minimal_loops(&tri).map_err(|e| e.to_string())?;
        if fast != slow {
            return Err(format!("{name}: enumeration disagrees with brute force"));
        }
        small += 1;
    }

    // Decomposition: concatenations at a shared face split back into
    // minimal loops with matching arc multiset and class sum.
    let mut decomposed = 0;
    for pick in ["torus:RL", "torus:RRL", "torus:RRLL", "sphere:RL"] {
        let (_, tri) = common::census().into_iter().find(|(n, _)| n == pick).unwrap();
        let h1 = H1::new(&DualComplex::new(&tri));
        let loops = enumerate_stable_loops(&tri, true).map_err(|e| e.to_string())?;
        for i in 0..loops.len() {
            for j in i..loops.len() {
                let fi: BTreeSet<usize> = loops[i].arcs().iter().map(|a| a.face).collect();
                let Some(shared) = loops[j].arcs().iter().find(|a| fi.contains(&a.face)) else {
                    continue;
                };
                let f = shared.face;
                let rot = |sl: &StableLoop| {
                    let arcs = sl.arcs();
                    let k = arcs.iter().position(|a| a.face == f).unwrap();
                    let mut out = arcs[k..].to_vec();
                    out.extend_from_slice(&arcs[..k]);
                    out
                };
                let mut cat = rot(&loops[i]);
                cat.extend(rot(&loops[j]));
                let big = StableLoop::new(&tri, cat).map_err(|e| e.to_string())?;
                let Ok(parts) = decompose_stable_loop(&tri, &big) else {
                    continue;
                };
                let mut got: Vec<_> = parts.iter().flat_map(|p| p.arcs().to_vec()).collect();
                got.sort_unstable();
                let mut want = big.arcs().to_vec();
                want.sort_unstable();
                if got != want {
                    return Err(format!("{pick}: decomposition changes the arc multiset"));
                }
                let mut sum = vec![BigInt::zero(); tri.num_faces()];
                for p in &parts {
                    if !p.is_minimal(&tri) {
                        return Err(format!("{pick}: a decomposition part is not minimal"));
                    }
                    for (acc, x) in sum.iter_mut().zip(transversalize(&tri, p).unwrap()) {
                        *acc += x;
                    }
                }
                let whole = transversalize(&tri, &big).unwrap();
                let a = h1.class_of_cycle(&whole).unwrap();
                let b = h1.class_of_cycle(&sum).unwrap();
                if a.free != b.free || a.torsion != b.torsion {
                    return Err(format!("{pick}: classes of parts do not sum to the whole"));
                }
                decomposed += 1;
            }
        }
    }

    // Ladderpole loops of upward ladders against the minimal enumeration.
    let mut missing: Vec<String> = Vec::new();
    for (name, tri) in common::census() {
        let bc = build_boundary(&tri).map_err(|e| e.to_string())?;
        let minimal: BTreeSet<StableLoop> = enumerate_stable_loops(&tri, true)
            .map_err(|e| e.to_string())?
            .into_iter()
            .collect();
        for lad in &bc.ladders {
            if lad.kind != TriKind::Upward {
                continue;
            }
            for pole in [&lad.left, &lad.right] {
                let sl = ladderpole_stable_loop(&tri, &bc, pole).map_err(|e| e.to_string())?;
                if !minimal.contains(&sl) {
                    missing.push(format!("{name} turns {:?}", sl.turn_edges(&tri)));
                }
            }
        }
    }
    if !missing.is_empty() {
        return Err(format!(
            "brute force on {small} fixtures and {decomposed} decompositions pass, but {} upward \
             ladderpole loops repeat a turn edge and are outside the minimal enumeration: {}",
            missing.len(),
            missing.join("; ")
        ));
    }
    Ok(format!("{small} fixtures brute-forced, {decomposed} decompositions, all ladderpole loops minimal"))
}

fn criterion_07() -> Result<String, String> {
    let mut checked = 0;
    for (name, tri) in common::census() {
        let bc = build_boundary(&tri).map_err(|e| e.to_string())?;
        for lad in &bc.ladders {
            for (pole, left) in [(&lad.left, true), (&lad.right, false)] {
                let want = bc.required_color(lad, left);
                for &s in &pole.switches {
                    if tri.edge_color(bc.switches[s].edge) != want {
                        return Err(format!("{name}: switch {s} breaks the veering rule"));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked}/{checked} ladderpole switches consistent"))
}

fn criterion_08() -> Result<String, String> {
    let t0 = Instant::now();
    let mut cases = 0;
    let mut fillable = 0;
    for q in 3..=4usize {
        let n = 2 * q;
        for mask in 0u32..(1 << n) {
            let sectors: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            if sectors.len() > 6 {
                continue;
            }
            for shift in (0..n).step_by(2) {
                cases += 1;
                let fast = fill_even_family(q, &sectors, shift);
                let slow = match brute_force_fill(q, &sectors, shift) {
                    Ok(v) => v,
                    Err(_) => {
                        // Both constructions must reject a bad family.
                        if fast.is_ok() {
                            return Err(format!(
                                "q={q} sectors {sectors:?} shift {shift}: greedy accepts a family brute force rejects"
                            ));
                        }
                        continue;
                    }
                };
                if fast.is_ok() != !slow.is_empty() {
                    return Err(format!(
                        "q={q} sectors {sectors:?} shift {shift}: greedy {} but brute force finds {}",
                        if fast.is_ok() { "fills" } else { "fails" },
                        slow.len()
                    ));
                }
                for filling in slow.iter().chain(fast.as_ref().ok()) {
                    validate_filling(filling, shift)
                        .map_err(|e| format!("q={q} sectors {sectors:?} shift {shift}: {e}"))?;
                }
                if let Ok(f) = &fast {
                    fillable += 1;
                    let sig = filling_signature(f);
                    if !slow.iter().any(|b| filling_signature(b) == sig) {
                        return Err(format!("q={q} sectors {sectors:?}: greedy filling not found by brute force"));
                    }
                }
            }
        }
    }
    let f3 = fill_even_family(3, &[0, 3], 0).map_err(|e| e.to_string())?;
    if f3.segments != vec![Segment { from: 0, to: 1, edge: 6, ordinal: 0 }] {
        return Err("three-prong instance does not reproduce".into());
    }
    let f4 = fill_even_family(4, &[0, 3, 4, 7], 4).map_err(|e| e.to_string())?;
    if f4.segments.len() != 2 {
        return Err("four-prong instance does not reproduce".into());
    }
    let dt = t0.elapsed();
    if dt.as_secs_f64() >= 60.0 {
        return Err(format!("took {dt:?}, budget is 1 min"));
    }
    Ok(format!("{cases} grid cases agree ({fillable} fillable) in {dt:?}"))
}

fn criterion_09() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let opts = DualityOptions { assume_layered: true, ..Default::default() };
    let names = ["torus:RL", "torus:RRL", "sphere:RL"];
    for name in names {
        let (_, tri) = common::census().into_iter().find(|(n, _)| n == name).unwrap();
        let h1 = H1::new(&DualComplex::new(&tri));
        let sig = tri.canonical_signature();
        let report = run_duality_check(&tri, &opts).map_err(|e| e.to_string())?;
        let loops = enumerate_stable_loops(&tri, true).map_err(|e| e.to_string())?;
        let cone = carried_cone(&tri).map_err(|e| e.to_string())?;
        let interior = sum_of_rays(&cone, tri.num_faces());
        let interior_fiber =
            matches!(is_fiber_class(&tri, &interior).map_err(|e| e.to_string())?, FiberResult::Fiber { .. });

        for round in 0..3 {
            let n = tri.num_tetrahedra();
            let mut tet_map: Vec<usize> = (0..n).collect();
            tet_map.shuffle(&mut rng);
            let vertex_maps: Vec<Perm4> = (0..n)
                .map(|_| {
                    let mut v = [0u8, 1, 2, 3];
                    v.shuffle(&mut rng);
                    Perm4::new(v).unwrap()
                })
                .collect();
            let re = tri.relabel(&tet_map, &vertex_maps).map_err(|e| e.to_string())?;
            if re.canonical_signature() != sig {
                return Err(format!("{name}: relabeling changes the signature (round {round})"));
            }
            let rh1 = H1::new(&DualComplex::new(&re));
            if rh1.betti != h1.betti || rh1.torsion != h1.torsion {
                return Err(format!("{name}: relabeling changes homology"));
            }
            let rreport = run_duality_check(&re, &opts).map_err(|e| e.to_string())?;
            if rreport.verdict != report.verdict {
                return Err(format!("{name}: relabeling changes the duality verdict"));
            }
            let rloops = enumerate_stable_loops(&re, true).map_err(|e| e.to_string())?;
            if rloops.len() != loops.len() {
                return Err(format!("{name}: relabeling changes the loop count"));
            }
            let rcone = carried_cone(&re).map_err(|e| e.to_string())?;
            let rinterior = sum_of_rays(&rcone, re.num_faces());
            let rfiber = matches!(
                is_fiber_class(&re, &rinterior).map_err(|e| e.to_string())?,
                FiberResult::Fiber { .. }
            );
            if rfiber != interior_fiber {
                return Err(format!("{name}: relabeling changes the fiber verdict"));
            }
        }

        let rev = tri.reversed().map_err(|e| e.to_string())?;
        let rev_h1 = H1::new(&DualComplex::new(&rev));
        if rev_h1.betti != h1.betti || rev_h1.torsion != h1.torsion {
            return Err(format!("{name}: coorientation reversal changes homology"));
        }
        let rev_report = run_duality_check(&rev, &opts).map_err(|e| e.to_string())?;
        if rev_report.verdict != "EQUAL" {
            return Err(format!("{name}: reversed fixture fails duality"));
        }
        let bc = build_boundary(&tri).map_err(|e| e.to_string())?;
        let rev_bc = build_boundary(&rev).map_err(|e| e.to_string())?;
        let ups = |b: &veerkit::boundary::BoundaryComplex| {
            b.ladders.iter().filter(|l| l.kind == TriKind::Upward).count()
        };
        if ups(&rev_bc) != bc.ladders.len() - ups(&bc) {
            return Err(format!("{name}: reversal does not swap ladder kinds"));
        }
        let back = rev.reversed().map_err(|e| e.to_string())?;
        if back.canonical_signature() != sig {
            return Err(format!("{name}: double reversal does not return"));
        }

        for _ in 0..2 {
            let swaps: Vec<bool> = (0..tri.num_edges()).map(|_| rng.gen_bool(0.5)).collect();
            let sw = tri.with_side_swaps(&swaps);
            if sw.canonical_signature() != sig {
                return Err(format!("{name}: side swaps change the signature"));
            }
            let sloops = enumerate_stable_loops(&sw, true).map_err(|e| e.to_string())?;
            if sloops != loops {
                return Err(format!("{name}: side swaps change the stable loops"));
            }
            let scone = carried_cone(&sw).map_err(|e| e.to_string())?;
            if scone.rays() != cone.rays() {
                return Err(format!("{name}: side swaps change the carried cone"));
            }
            let sreport = run_duality_check(&sw, &opts).map_err(|e| e.to_string())?;
            if sreport.verdict != report.verdict {
                return Err(format!("{name}: side swaps change the duality verdict"));
            }
        }
    }
    Ok(format!("relabeling, reversal and side swaps invariant on {}", names.join(", ")))
}

fn criterion_10() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for case in 0..100 {
        let dim = rng.gen_range(1..=5);
        let n = rng.gen_range(1..=2 * dim + 2);
        let ineqs: Vec<Vec<BigRational>> = (0..n)
            .map(|_| {
                (0..dim)
                    .map(|_| BigRational::from(BigInt::from(rng.gen_range(-3i64..=3))))
                    .collect()
            })
            .collect();
        let cone = Cone::from_inequalities(dim, ineqs, vec![]).map_err(|e| e.to_string())?;
        cone.certify().map_err(|e| format!("case {case}: {e}"))?;
        let dual = cone.dual().map_err(|e| e.to_string())?;
        dual.certify().map_err(|e| format!("case {case} dual: {e}"))?;
        let back = dual.dual().map_err(|e| e.to_string())?;
        if !back.equals(&cone) {
            return Err(format!("case {case}: double dual differs"));
        }
    }
    let mut certified = 0;
    for (name, tri) in common::census() {
        let h1 = H1::new(&DualComplex::new(&tri));
        let cone = carried_cone(&tri).map_err(|e| e.to_string())?;
        let image = image_cone(&tri, &h1, &cone);
        let dual = image.dual().map_err(|e| e.to_string())?;
        let classes: Vec<Vec<BigRational>> = enumerate_stable_loops(&tri, true)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|sl| {
                let cycle = transversalize(&tri, sl).unwrap();
                let class = h1.class_of_cycle(&cycle).unwrap();
                class.free.iter().map(|x| BigRational::from(x.clone())).collect()
            })
            .collect();
        let loop_cone = Cone::from_rays(h1.betti, &classes).map_err(|e| e.to_string())?;
        for c in [&cone, &image, &dual, &loop_cone] {
            c.certify().map_err(|e| format!("{name}: {e}"))?;
            certified += 1;
        }
    }
    Ok(format!("100 random double duals and {certified} pipeline certificates"))
}

fn main() {
    let criteria: Vec<(usize, fn() -> Result<String, String>)> = vec![
        (1, criterion_01),
        (2, criterion_02),
        (3, criterion_03),
        (4, criterion_04),
        (5, criterion_05),
        (6, criterion_06),
        (7, criterion_07),
        (8, criterion_08),
        (9, criterion_09),
        (10, criterion_10),
    ];
    let mut failed = 0;
    for (n, f) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("ACCEPTANCE {n}: PASS ({detail})"),
            Err(detail) => {
                println!("ACCEPTANCE {n}: FAIL ({detail})");
                failed += 1;
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
