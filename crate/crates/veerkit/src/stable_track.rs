//! The stable train track and its loops.
//!
//! The stable track puts a tripod in every face, with the large branch end
//! at the large slot of the face. At each edge the two fan tops carry the
//! two large ends; all other incidences are small. Smoothing makes the
//! track a directed graph: from a face one may depart through either of
//! its two small slots, arriving at the fan top on the far side of that
//! edge. Stable loops are the directed cycles.

use crate::boundary::{BoundaryComplex, Pole};
use crate::triangulation::VeeringTriangulation;
use crate::{Error, Result};
use serde::Serialize;

/// One step of a stable loop: depart `face` through its edge slot `slot`.
/// The slot must be small, i.e. different from the face's large slot.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct Arc {
    pub face: usize,
    pub slot: u8,
}

/// Where an arc lands: the fan top across the edge, entered at its large
/// slot.
pub fn arc_target(tri: &VeeringTriangulation, arc: Arc) -> Result<Arc> {
    let face = tri.face(arc.face);
    if arc.slot as usize >= 3 {
        return Err(Error::Structure(format!("face edge slot {} out of range", arc.slot)));
    }
    if arc.slot == face.large {
        return Err(Error::NotACycle(format!(
            "arc departs face {} through its large slot",
            arc.face
        )));
    }
    let fe = &face.edges[arc.slot as usize];
    let edge = tri.edge(fe.edge);
    let top = edge.fan_top(1 - fe.side);
    Ok(Arc { face: top.face, slot: tri.face(top.face).large })
}

/// Sanity check of the track structure: every face has one large and two
/// small ends, and each edge sees exactly its two fan tops as large.
pub fn validate_track(tri: &VeeringTriangulation) -> Result<()> {
    for e in 0..tri.num_edges() {
        let edge = tri.edge(e);
        for side in 0..2u8 {
            let fan = &edge.sides[side as usize];
            for (pos, spoke) in fan.iter().enumerate() {
                let large = tri.face(spoke.face).large == spoke.face_edge_slot;
                let is_top = pos + 1 == fan.len();
                if large != is_top {
                    return Err(Error::Structure(format!(
                        "edge {} side {} position {}: large end off the fan top",
                        e, side, pos
                    )));
                }
            }
        }
    }
    Ok(())
}

/// A directed cycle of the stable track, stored rotated so the least arc
/// comes first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct StableLoop {
    arcs: Vec<Arc>,
}

impl StableLoop {
    pub fn new(tri: &VeeringTriangulation, arcs: Vec<Arc>) -> Result<Self> {
        if arcs.is_empty() {
            return Err(Error::NotACycle("empty arc list".into()));
        }
        for i in 0..arcs.len() {
            let target = arc_target(tri, arcs[i])?;
            let next = arcs[(i + 1) % arcs.len()];
            if target.face != next.face {
                return Err(Error::NotACycle(format!(
                    "arc from face {} lands on face {}, not {}",
                    arcs[i].face, target.face, next.face
                )));
            }
        }
        Ok(Self::rotated(arcs))
    }

    fn rotated(arcs: Vec<Arc>) -> Self {
        let rotation = |i: usize| -> Vec<Arc> {
            let mut r = arcs[i..].to_vec();
            r.extend_from_slice(&arcs[..i]);
            r
        };
        let best = (0..arcs.len()).map(rotation).min().unwrap();
        StableLoop { arcs: best }
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The edge each arc turns across, in arc order.
    pub fn turn_edges(&self, tri: &VeeringTriangulation) -> Vec<usize> {
        self.arcs
            .iter()
            .map(|a| tri.face(a.face).edges[a.slot as usize].edge)
            .collect()
    }

    /// Minimal means no face and no turn edge repeats.
    pub fn is_minimal(&self, tri: &VeeringTriangulation) -> bool {
        let mut faces: Vec<usize> = self.arcs.iter().map(|a| a.face).collect();
        faces.sort_unstable();
        faces.dedup();
        if faces.len() != self.arcs.len() {
            return false;
        }
        let mut edges = self.turn_edges(tri);
        edges.sort_unstable();
        edges.dedup();
        edges.len() == self.arcs.len()
    }
}

/// Enumerate directed cycles that visit no face twice. With `minimal`,
/// also reject cycles turning at the same edge twice, which restricts to
/// the minimal stable loops. The result is sorted.
pub fn enumerate_stable_loops(
    tri: &VeeringTriangulation,
    minimal: bool,
) -> Result<Vec<StableLoop>> {
    validate_track(tri)?;
    let mut out = Vec::new();
    let mut face_used = vec![false; tri.num_faces()];
    let mut edge_used = vec![false; tri.num_edges()];
    for start in 0..tri.num_faces() {
        let mut path: Vec<Arc> = Vec::new();
        // Depth first search over out-arcs; face ids below `start` are
        // excluded so each cycle is found once, from its least face.
        search(tri, start, start, &mut path, &mut face_used, &mut edge_used, minimal, &mut out)?;
    }
    out.sort_by(|a, b| a.arcs.cmp(&b.arcs));
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search(
    tri: &VeeringTriangulation,
    start: usize,
    face: usize,
    path: &mut Vec<Arc>,
    face_used: &mut [bool],
    edge_used: &mut [bool],
    minimal: bool,
    out: &mut Vec<StableLoop>,
) -> Result<()> {
    face_used[face] = true;
    let large = tri.face(face).large;
    for slot in 0..3u8 {
        if slot == large {
            continue;
        }
        let edge = tri.face(face).edges[slot as usize].edge;
        if minimal && edge_used[edge] {
            continue;
        }
        let arc = Arc { face, slot };
        let target = arc_target(tri, arc)?.face;
        path.push(arc);
        if target == start {
            out.push(StableLoop::rotated(path.clone()));
        } else if target > start && !face_used[target] {
            if minimal {
                edge_used[edge] = true;
            }
            search(tri, start, target, path, face_used, edge_used, minimal, out)?;
            if minimal {
                edge_used[edge] = false;
            }
        }
        path.pop();
    }
    face_used[face] = false;
    Ok(())
}

/// Reference enumeration for cross checks: filter all cyclic arc
/// sequences up to the face count by brute force.
pub fn brute_force_minimal_loops(tri: &VeeringTriangulation) -> Result<Vec<StableLoop>> {
    let mut out: Vec<StableLoop> = Vec::new();
    let arcs: Vec<Arc> = (0..tri.num_faces())
        .flat_map(|f| {
            let large = tri.face(f).large;
            (0..3u8).filter(move |&s| s != large).map(move |slot| Arc { face: f, slot })
        })
        .collect();
    let mut stack: Vec<Vec<Arc>> = arcs.iter().map(|&a| vec![a]).collect();
    while let Some(seq) = stack.pop() {
        let last = *seq.last().unwrap();
        let target = arc_target(tri, last)?;
        if target.face == seq[0].face {
            if let Ok(sl) = StableLoop::new(tri, seq.clone()) {
                if sl.is_minimal(tri) && sl.arcs[0] == seq[0] && !out.contains(&sl) {
                    out.push(sl);
                }
            }
        }
        if seq.len() < tri.num_faces() {
            for &a in &arcs {
                if a.face == target.face {
                    let mut next = seq.clone();
                    next.push(a);
                    stack.push(next);
                }
            }
        }
    }
    out.sort_by(|a, b| a.arcs.cmp(&b.arcs));
    Ok(out)
}

/// Split a stable loop into minimal ones. The loop must cross each edge
/// in one direction only, where the direction of a turn is the side it
/// departs from; splitting happens at face repeats.
pub fn decompose_stable_loop(
    tri: &VeeringTriangulation,
    sl: &StableLoop,
) -> Result<Vec<StableLoop>> {
    let mut dir: Vec<Option<u8>> = vec![None; tri.num_edges()];
    for a in sl.arcs() {
        let fe = &tri.face(a.face).edges[a.slot as usize];
        match dir[fe.edge] {
            None => dir[fe.edge] = Some(fe.side),
            Some(s) if s == fe.side => {}
            Some(_) => {
                return Err(Error::Structure(format!(
                    "loop crosses edge {} in both directions",
                    fe.edge
                )));
            }
        }
    }
    let mut parts = Vec::new();
    let mut stack: Vec<Arc> = Vec::new();
    for &a in sl.arcs() {
        if let Some(pos) = stack.iter().position(|b| b.face == a.face) {
            parts.push(StableLoop::new(tri, stack.split_off(pos))?);
        }
        stack.push(a);
    }
    if !stack.is_empty() {
        parts.push(StableLoop::new(tri, stack)?);
    }
    for p in &parts {
        if !p.is_minimal(tri) {
            return Err(Error::Structure("decomposition produced a non minimal part".into()));
        }
    }
    Ok(parts)
}

/// The stable loop a ladderpole curve is carried to. Each pole branch
/// lies in a face; at the shared switch of consecutive branches the curve
/// turns across the switch's edge, and those turns are the arcs.
pub fn ladderpole_stable_loop(
    tri: &VeeringTriangulation,
    bc: &BoundaryComplex,
    pole: &Pole,
) -> Result<StableLoop> {
    let m = pole.branches.len();
    // The turn at `switch` departs the face of pole branch `i` and must
    // land on `next_face`; the switch picks out the turn edge through a
    // corner of the branch's below side.
    let arc_toward = |i: usize, switch: usize, next_face: usize| -> Result<Arc> {
        let b = &bc.branches[pole.branches[i]];
        let (tid, k) = b.sides[0];
        let ft = &bc.triangles[tid];
        let (t, v) = (ft.tet, ft.vertex);
        for corner in (0..4u8).filter(|&x| x != v && x != k) {
            if ft.corner_switch[corner as usize] != Some(switch) {
                continue;
            }
            let edge_slot = crate::triangulation::edge_index(v, corner);
            let (face, slot) = tri.face_slot_of_incidence(t, k, edge_slot)?;
            if slot == tri.face(face).large {
                continue;
            }
            let arc = Arc { face, slot };
            if arc_target(tri, arc)?.face == next_face {
                return Ok(arc);
            }
        }
        Err(Error::Convention(
            "ladderpole turn does not continue along the pole".into(),
        ))
    };
    let face_of = |i: usize| bc.branches[pole.branches[i]].face;
    // Forward: the turn between branches[i] and branches[i + 1] happens
    // in the face of branches[i]; backward mirrors this.
    let forward: Result<Vec<Arc>> = (0..m)
        .map(|i| arc_toward(i, pole.switches[i], face_of((i + 1) % m)))
        .collect();
    if let Ok(arcs) = forward {
        if let Ok(sl) = StableLoop::new(tri, arcs) {
            return Ok(sl);
        }
    }
    let backward: Result<Vec<Arc>> = (0..m)
        .rev()
        .map(|i| arc_toward((i + 1) % m, pole.switches[i], face_of(i)))
        .collect();
    if let Ok(arcs) = backward {
        if let Ok(sl) = StableLoop::new(tri, arcs) {
            return Ok(sl);
        }
    }
    Err(Error::Convention("ladderpole does not close up in the stable track".into()))
}
