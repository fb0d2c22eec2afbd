//! Surfaces carried by the branched surface dual to the triangulation:
//! the cone of carried weights, flip moves, fiber detection and stable
//! loop extraction.

use crate::cones::Cone;
use crate::homology::{pairing, transversalize, DualComplex, H1};
use crate::stable_track::{Arc, StableLoop};
use crate::triangulation::VeeringTriangulation;
use crate::{Error, Result};
use num::rational::BigRational;
use num::{BigInt, Signed, Zero};
use serde::Serialize;
use std::collections::HashMap;

/// Check nonnegativity and the branch equations.
pub fn check_carried(tri: &VeeringTriangulation, w: &[BigRational]) -> Result<()> {
    if w.len() != tri.num_faces() {
        return Err(Error::DimensionMismatch(format!(
            "{} weights for {} faces",
            w.len(),
            tri.num_faces()
        )));
    }
    if let Some(f) = w.iter().position(|x| x.is_negative()) {
        return Err(Error::NotCarried(format!("negative weight on face {}", f)));
    }
    for e in 0..tri.num_edges() {
        let edge = tri.edge(e);
        let mut balance = BigRational::zero();
        for spoke in &edge.sides[0] {
            balance += &w[spoke.face];
        }
        for spoke in &edge.sides[1] {
            balance -= &w[spoke.face];
        }
        if !balance.is_zero() {
            return Err(Error::NotCarried(format!("branch equation fails at edge {}", e)));
        }
    }
    Ok(())
}

pub fn to_rationals(w: &[BigInt]) -> Vec<BigRational> {
    w.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

fn check_carried_int(tri: &VeeringTriangulation, w: &[BigInt]) -> Result<()> {
    check_carried(tri, &to_rationals(w))
}

/// The cone of carried weight vectors: nonnegative solutions of the
/// branch equations.
pub fn carried_cone(tri: &VeeringTriangulation) -> Result<Cone> {
    let dim = tri.num_faces();
    let complex = DualComplex::new(tri);
    let mut eqs = Vec::with_capacity(tri.num_edges());
    for e in 0..tri.num_edges() {
        let row: Vec<BigRational> = (0..dim)
            .map(|f| BigRational::from_integer(complex.d2[f][e].clone()))
            .collect();
        eqs.push(row);
    }
    let mut ineqs = Vec::with_capacity(dim);
    for f in 0..dim {
        let mut row = vec![BigRational::zero(); dim];
        row[f] = BigRational::from_integer(1.into());
        ineqs.push(row);
    }
    Cone::from_inequalities(dim, ineqs, eqs)
}

/// Weight change of the flip past tetrahedron `t`: its top faces gain a
/// sheet, its bottom faces lose one.
pub fn flip_delta(tri: &VeeringTriangulation, t: usize) -> Vec<i64> {
    let mut delta = vec![0i64; tri.num_faces()];
    for k in 0..4u8 {
        let f = tri.face_of(t, k);
        if tri.is_top(t, k) {
            delta[f] += 1;
        } else {
            delta[f] -= 1;
        }
    }
    delta
}

/// A flip is legal when both bottom faces can give up a sheet.
pub fn can_flip(tri: &VeeringTriangulation, t: usize, w: &[BigInt]) -> bool {
    let bottoms: Vec<usize> =
        (0..4u8).filter(|&k| !tri.is_top(t, k)).map(|k| tri.face_of(t, k)).collect();
    let [b0, b1] = [bottoms[0], bottoms[1]];
    if b0 == b1 {
        w[b0] >= BigInt::from(2)
    } else {
        w[b0] >= BigInt::from(1) && w[b1] >= BigInt::from(1)
    }
}

pub fn flip(tri: &VeeringTriangulation, t: usize, w: &[BigInt]) -> Result<Vec<BigInt>> {
    if t >= tri.num_tetrahedra() {
        return Err(Error::Schema(format!("no tetrahedron {}", t)));
    }
    if !can_flip(tri, t, w) {
        return Err(Error::NotFlippable(format!(
            "a bottom face of tetrahedron {} has too little weight",
            t
        )));
    }
    let delta = flip_delta(tri, t);
    Ok(w.iter().zip(&delta).map(|(x, &d)| x + BigInt::from(d)).collect())
}

pub fn legal_flips(tri: &VeeringTriangulation, w: &[BigInt]) -> Vec<usize> {
    (0..tri.num_tetrahedra()).filter(|&t| can_flip(tri, t, w)).collect()
}

/// Walk top sheets of a carried integer vector and return the stable
/// loop swept out. From a positive face, cross its large edge and land on
/// the topmost positive spoke of the far side. Demands that the far fan
/// top itself has weight zero, i.e. the tetrahedron above the edge is not
/// flippable there.
pub fn extract_stable_loop(
    tri: &VeeringTriangulation,
    w: &[BigInt],
) -> Result<StableLoop> {
    check_carried_int(tri, w)?;
    let start = w
        .iter()
        .position(|x| x.is_positive())
        .ok_or_else(|| Error::NotCarried("cannot extract from the empty surface".into()))?;
    let mut faces = vec![start];
    let mut pos: HashMap<usize, usize> = HashMap::from([(start, 0)]);
    let mut arcs: Vec<Arc> = Vec::new();
    loop {
        let f = *faces.last().unwrap();
        let face = tri.face(f);
        let fe = &face.edges[face.large as usize];
        let edge = tri.edge(fe.edge);
        let far = &edge.sides[1 - fe.side as usize];
        let top = far.last().expect("nonempty fan");
        if w[top.face].is_positive() {
            if can_flip(tri, tri.tet_above_edge(fe.edge), w) {
                return Err(Error::Flippable(format!(
                    "tetrahedron {} above edge {} is flippable",
                    tri.tet_above_edge(fe.edge),
                    fe.edge
                )));
            }
            return Err(Error::Structure(
                "far fan top positive at a nonflippable edge".into(),
            ));
        }
        let spoke = far
            .iter()
            .rev()
            .find(|s| w[s.face].is_positive())
            .ok_or_else(|| Error::Structure("positive face with an empty far side".into()))?;
        arcs.push(Arc { face: spoke.face, slot: spoke.face_edge_slot });
        if let Some(&j) = pos.get(&spoke.face) {
            let cycle: Vec<Arc> = arcs[j..].iter().rev().copied().collect();
            return StableLoop::new(tri, cycle);
        }
        pos.insert(spoke.face, faces.len());
        faces.push(spoke.face);
    }
}

/// Fiber detection result. Certificates are flip sequences; `path` leads
/// from the input vector to the cycle start or to the terminal vector.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict")]
pub enum FiberResult {
    Empty,
    Fiber { path: Vec<usize>, cycle: Vec<usize> },
    NonFiber { path: Vec<usize>, stable_loop: StableLoop },
}

struct Frame {
    v: Vec<BigInt>,
    entered_by: Option<usize>,
    legal: Vec<usize>,
    next: usize,
}

/// Decide whether the carried integer vector is the class of a fiber by
/// exhausting the flip digraph. A reachable directed cycle certifies a
/// fiber; otherwise some terminal vector is reached, and the stable loop
/// extracted there pairs to zero with the class.
pub fn is_fiber_class(tri: &VeeringTriangulation, w: &[BigInt]) -> Result<FiberResult> {
    check_carried_int(tri, w)?;
    if w.iter().all(|x| x.is_zero()) {
        return Ok(FiberResult::Empty);
    }
    const ON_STACK: u8 = 1;
    const DONE: u8 = 2;
    let mut color: HashMap<Vec<BigInt>, u8> = HashMap::new();
    color.insert(w.to_vec(), ON_STACK);
    let mut frames = vec![Frame {
        v: w.to_vec(),
        entered_by: None,
        legal: legal_flips(tri, w),
        next: 0,
    }];
    let mut terminal: Option<(Vec<usize>, Vec<BigInt>)> = None;
    loop {
        let Some(top) = frames.last_mut() else { break };
        let step = if top.next < top.legal.len() {
            let t = top.legal[top.next];
            top.next += 1;
            Some((t, top.v.clone()))
        } else {
            None
        };
        match step {
            Some((t, v)) => {
                let v2 = flip(tri, t, &v)?;
                match color.get(&v2).copied() {
                    Some(ON_STACK) => {
                        let i = frames.iter().position(|fr| fr.v == v2).expect("on stack");
                        let path: Vec<usize> =
                            frames[1..=i].iter().map(|fr| fr.entered_by.unwrap()).collect();
                        let mut cycle: Vec<usize> =
                            frames[i + 1..].iter().map(|fr| fr.entered_by.unwrap()).collect();
                        cycle.push(t);
                        return Ok(FiberResult::Fiber { path, cycle });
                    }
                    Some(DONE) => {}
                    _ => {
                        color.insert(v2.clone(), ON_STACK);
                        let legal = legal_flips(tri, &v2);
                        frames.push(Frame { v: v2, entered_by: Some(t), legal, next: 0 });
                    }
                }
            }
            None => {
                if frames.last().unwrap().legal.is_empty() && terminal.is_none() {
                    let path: Vec<usize> =
                        frames[1..].iter().map(|fr| fr.entered_by.unwrap()).collect();
                    terminal = Some((path, frames.last().unwrap().v.clone()));
                }
                let done = frames.pop().unwrap();
                color.insert(done.v, DONE);
            }
        }
    }
    let (path, wt) = terminal.expect("a finite acyclic digraph has a reachable sink");
    let stable_loop = extract_stable_loop(tri, &wt)?;
    Ok(FiberResult::NonFiber { path, stable_loop })
}

/// Replay a fiber certificate from scratch.
pub fn replay_fiber_result(
    tri: &VeeringTriangulation,
    w: &[BigInt],
    res: &FiberResult,
) -> Result<()> {
    check_carried_int(tri, w)?;
    match res {
        FiberResult::Empty => {
            if w.iter().all(|x| x.is_zero()) {
                Ok(())
            } else {
                Err(Error::Structure("empty verdict on a nonzero vector".into()))
            }
        }
        FiberResult::Fiber { path, cycle } => {
            if cycle.is_empty() {
                return Err(Error::Structure("empty flip cycle".into()));
            }
            let mut v = w.to_vec();
            for &t in path {
                v = flip(tri, t, &v)?;
            }
            let v0 = v.clone();
            for &t in cycle {
                v = flip(tri, t, &v)?;
            }
            if v == v0 {
                Ok(())
            } else {
                Err(Error::Structure("flip cycle does not return".into()))
            }
        }
        FiberResult::NonFiber { path, stable_loop } => {
            let mut v = w.to_vec();
            for &t in path {
                v = flip(tri, t, &v)?;
            }
            if !legal_flips(tri, &v).is_empty() {
                return Err(Error::Structure("claimed terminal vector admits a flip".into()));
            }
            let word = transversalize(tri, stable_loop)?;
            let complex = DualComplex::new(tri);
            let at_terminal = pairing(tri, &complex, &to_rationals(&v), &word)?;
            let at_start = pairing(tri, &complex, &to_rationals(w), &word)?;
            if !at_terminal.is_zero() || !at_start.is_zero() {
                return Err(Error::Structure("certificate loop does not pair to zero".into()));
            }
            Ok(())
        }
    }
}

/// Connected component data of a carried surface.
#[derive(Clone, Debug, Serialize)]
pub struct SurfaceComponent {
    pub sheets: u64,
    pub euler: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CarriedSurface {
    pub total_sheets: u64,
    pub euler: i64,
    pub components: Vec<SurfaceComponent>,
}

/// Assemble the surface of a carried integer vector: sheets are parallel
/// copies of faces, glued across edges by matching the two side stacks
/// in fan order. Euler characteristic is minus half the sheet count.
pub fn carried_surface(tri: &VeeringTriangulation, w: &[BigInt]) -> Result<CarriedSurface> {
    check_carried_int(tri, w)?;
    let mut counts = Vec::with_capacity(w.len());
    for (f, x) in w.iter().enumerate() {
        let c: u64 = x.try_into().map_err(|_| {
            Error::Schema(format!("weight on face {} too large to assemble", f))
        })?;
        counts.push(c);
    }
    let mut base = vec![0u64; w.len() + 1];
    for f in 0..w.len() {
        base[f + 1] = base[f] + counts[f];
    }
    let total = base[w.len()] as usize;
    let mut uf: Vec<usize> = (0..total).collect();
    fn find(uf: &mut Vec<usize>, mut i: usize) -> usize {
        while uf[i] != i {
            uf[i] = uf[uf[i]];
            i = uf[i];
        }
        i
    }
    for e in 0..tri.num_edges() {
        let edge = tri.edge(e);
        let stack = |side: usize| -> Vec<usize> {
            let mut s = Vec::new();
            for spoke in &edge.sides[side] {
                for layer in 0..counts[spoke.face] {
                    s.push((base[spoke.face] + layer) as usize);
                }
            }
            s
        };
        let (s0, s1) = (stack(0), stack(1));
        if s0.len() != s1.len() {
            return Err(Error::NotCarried(format!("stacks differ at edge {}", e)));
        }
        for (a, b) in s0.into_iter().zip(s1) {
            let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
            uf[ra] = rb;
        }
    }
    let mut sizes: HashMap<usize, u64> = HashMap::new();
    for i in 0..total {
        *sizes.entry(find(&mut uf, i)).or_insert(0) += 1;
    }
    let mut components: Vec<SurfaceComponent> = Vec::new();
    for (_, sheets) in sizes {
        if sheets % 2 != 0 {
            return Err(Error::Structure("component with an odd sheet count".into()));
        }
        components.push(SurfaceComponent { sheets, euler: -((sheets / 2) as i64) });
    }
    components.sort_by_key(|c| c.sheets);
    let total_sheets = total as u64;
    Ok(CarriedSurface {
        total_sheets,
        euler: -((total_sheets / 2) as i64),
        components,
    })
}

/// Project a carried vector to its homology class against a fixed basis.
pub fn class_vector(h1: &H1, w: &[BigRational]) -> Vec<BigRational> {
    h1.project_weights(w)
}
