//! Cusp boundary structure: flat triangles, ladders and ladderpoles.
//!
//! Truncating the tetrahedra turns each ideal vertex into a flat boundary
//! triangle; these tile the cusp tori. The taut structure makes each flat
//! triangle upward or downward, the upward and downward triangles organize
//! into annular ladders, and the boundary of each ladder is a pair of
//! ladderpole curves meeting the boundary track in switches.

use crate::triangulation::{edge_index, Color, VeeringTriangulation, EDGE_VERTICES};
use crate::{Error, Result};
use num::rational::BigRational;
use num::Zero;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TriKind {
    Upward,
    Downward,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BranchKind {
    Rung,
    Pole,
}

/// Flat triangle at ideal vertex `vertex` of tetrahedron `tet`. Sides are
/// indexed by the face slot they lie in, corners by the edge-mate vertex.
#[derive(Clone, Debug)]
pub struct FlatTriangle {
    pub tet: usize,
    pub vertex: u8,
    pub kind: TriKind,
    pub cusp: usize,
    /// Branch id per side slot (slots equal to `vertex` stay `None`).
    pub side_branch: [Option<usize>; 4],
    /// Switch id per corner vertex.
    pub corner_switch: [Option<usize>; 4],
    /// Corner carrying the pi angle: the pi-edge partner of `vertex`.
    pub pi_corner: u8,
}

/// A branch of the boundary track: one side class of the flat
/// triangulation, directed from `tail` to `head`.
#[derive(Clone, Debug)]
pub struct Branch {
    /// The two (triangle, side slot) representatives; index 0 is the side
    /// of the triangle below the face (the branch points away from it).
    pub sides: [(usize, u8); 2],
    pub face: usize,
    pub kind: BranchKind,
    pub tail: usize,
    pub head: usize,
}

/// A switch of the boundary track: an edge end on a cusp torus.
#[derive(Clone, Debug)]
pub struct Switch {
    pub edge: usize,
    pub cusp: usize,
    /// All (triangle, corner vertex) incidences.
    pub corners: Vec<(usize, u8)>,
}

/// One ladderpole: a cyclic curve of pole branches. `switches[i]` joins
/// `branches[i]` to `branches[i + 1]`.
#[derive(Clone, Debug)]
pub struct Pole {
    pub branches: Vec<usize>,
    pub switches: Vec<usize>,
}

/// A ladder: an annulus of same-kind flat triangles in cyclic strip
/// order, bounded by its left and right ladderpoles. The left pole is the
/// one holding the head switches of the ladder's rungs.
#[derive(Clone, Debug)]
pub struct Ladder {
    pub cusp: usize,
    pub kind: TriKind,
    pub triangles: Vec<usize>,
    pub left: Pole,
    pub right: Pole,
}

#[derive(Clone, Debug)]
pub struct CuspBoundary {
    pub triangles: Vec<usize>,
    pub switches: Vec<usize>,
    pub ladders: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct BoundaryComplex {
    pub triangles: Vec<FlatTriangle>,
    pub branches: Vec<Branch>,
    pub switches: Vec<Switch>,
    pub ladders: Vec<Ladder>,
    pub cusps: Vec<CuspBoundary>,
}

fn tri_id(t: usize, v: u8) -> usize {
    4 * t + v as usize
}

/// Cyclic successor map on the corners of flat triangle (t, v), listing
/// corners counterclockwise in the cusp torus.
fn ccw_cycle(tri: &VeeringTriangulation, t: usize, v: u8) -> [u8; 4] {
    let others: Vec<u8> = (0..4u8).filter(|&x| x != v).collect();
    let [a, b, c] = [others[0], others[1], others[2]];
    // (v, a, b, c) as a permutation; its sign times the tetrahedron sign
    // decides whether a -> b -> c or a -> c -> b is counterclockwise.
    let perm = crate::perm::Perm4::new([v, a, b, c]).expect("distinct");
    let forward = perm.sign() * tri.tet_sign(t) == 1;
    let mut next = [0u8; 4];
    if forward {
        next[a as usize] = b;
        next[b as usize] = c;
        next[c as usize] = a;
    } else {
        next[a as usize] = c;
        next[c as usize] = b;
        next[b as usize] = a;
    }
    next
}

/// Build the full boundary complex.
pub fn build_boundary(tri: &VeeringTriangulation) -> Result<BoundaryComplex> {
    let n = tri.num_tetrahedra();

    // Flat triangles.
    let mut triangles: Vec<FlatTriangle> = Vec::with_capacity(4 * n);
    for t in 0..n {
        for v in 0..4u8 {
            let top = EDGE_VERTICES[tri.top_pi(t) as usize];
            let bottom = EDGE_VERTICES[tri.bottom_pi(t) as usize];
            let (kind, pi_corner) = if top.contains(&v) {
                (TriKind::Upward, top[if top[0] == v { 1 } else { 0 }])
            } else {
                (TriKind::Downward, bottom[if bottom[0] == v { 1 } else { 0 }])
            };
            triangles.push(FlatTriangle {
                tet: t,
                vertex: v,
                kind,
                cusp: tri.cusp_of(t, v),
                side_branch: [None; 4],
                corner_switch: [None; 4],
                pi_corner,
            });
        }
    }

    // Switches: classes of corners (t, v, x) under side crossings.
    let mut corner_class = vec![[usize::MAX; 16]; n];
    let idx = |v: u8, x: u8| (4 * v + x) as usize;
    let mut switches: Vec<Switch> = Vec::new();
    for t in 0..n {
        for v in 0..4u8 {
            for x in 0..4u8 {
                if x == v || corner_class[t][idx(v, x)] != usize::MAX {
                    continue;
                }
                let id = switches.len();
                let mut corners = Vec::new();
                let mut stack = vec![(t, v, x)];
                while let Some((t1, v1, x1)) = stack.pop() {
                    if corner_class[t1][idx(v1, x1)] != usize::MAX {
                        continue;
                    }
                    corner_class[t1][idx(v1, x1)] = id;
                    corners.push((tri_id(t1, v1), x1));
                    for k in 0..4u8 {
                        if k == v1 || k == x1 {
                            continue;
                        }
                        let (t2, sigma) = tri.gluing(t1, k);
                        stack.push((t2, sigma.apply(v1), sigma.apply(x1)));
                    }
                }
                corners.sort();
                switches.push(Switch {
                    edge: tri.edge_of(t, edge_index(v, x)),
                    cusp: tri.cusp_of(t, v),
                    corners,
                });
            }
        }
    }
    for (s, sw) in switches.iter().enumerate() {
        for &(tid, x) in &sw.corners {
            triangles[tid].corner_switch[x as usize] = Some(s);
        }
    }

    // Branches: side classes with direction and kind.
    let mut branches: Vec<Branch> = Vec::new();
    for t in 0..n {
        for v in 0..4u8 {
            for k in 0..4u8 {
                if k == v || triangles[tri_id(t, v)].side_branch[k as usize].is_some() {
                    continue;
                }
                let (t2, sigma) = tri.gluing(t, k);
                let (v2, k2) = (sigma.apply(v), sigma.apply(k));
                let here = (tri_id(t, v), k);
                let there = (tri_id(t2, v2), k2);
                // The below-side representative: the face is a top face of
                // its tetrahedron.
                let (minus, plus) = if tri.is_top(t, k) {
                    ((t, v, k), (t2, v2, k2))
                } else if tri.is_top(t2, k2) {
                    ((t2, v2, k2), (t, v, k))
                } else {
                    return Err(Error::Structure(format!(
                        "face between tetrahedra {} and {} has no below side",
                        t, t2
                    )));
                };
                let (tm, vm, km) = minus;
                let next = ccw_cycle(tri, tm, vm);
                // The positively oriented boundary of the below triangle
                // walks side k from succ(k) to pred(k).
                let tail_corner = next[km as usize];
                let head_corner = next[next[km as usize] as usize];
                let tail = corner_class[tm][idx(vm, tail_corner)];
                let head = corner_class[tm][idx(vm, head_corner)];
                let kind = if triangles[tri_id(minus.0, minus.1)].kind
                    == triangles[tri_id(plus.0, plus.1)].kind
                {
                    BranchKind::Rung
                } else {
                    BranchKind::Pole
                };
                let id = branches.len();
                branches.push(Branch {
                    sides: [(tri_id(minus.0, minus.1), minus.2), (tri_id(plus.0, plus.1), plus.2)],
                    face: tri.face_of(t, k),
                    kind,
                    tail,
                    head,
                });
                triangles[here.0].side_branch[here.1 as usize] = Some(id);
                triangles[there.0].side_branch[there.1 as usize] = Some(id);
            }
        }
    }

    // Euler characteristic per cusp: switches minus half the triangles.
    for cusp in 0..tri.num_cusps() {
        let f = triangles.iter().filter(|tr| tr.cusp == cusp).count();
        let v = switches.iter().filter(|sw| sw.cusp == cusp).count();
        if 2 * v != f {
            return Err(Error::Structure(format!(
                "cusp {} is not a torus: {} switches against {} triangles",
                cusp, v, f
            )));
        }
    }

    // Ladders: walk rung-connected strips of same-kind triangles.
    let mut ladder_of = vec![usize::MAX; triangles.len()];
    let mut ladders: Vec<Ladder> = Vec::new();
    for start in 0..triangles.len() {
        if ladder_of[start] != usize::MAX {
            continue;
        }
        let kind = triangles[start].kind;
        let cusp = triangles[start].cusp;
        // Each triangle must offer exactly two rungs and one pole side.
        let rungs_of = |tid: usize| -> Result<Vec<usize>> {
            let mut rungs = Vec::new();
            let mut poles = 0;
            for k in 0..4 {
                if let Some(b) = triangles[tid].side_branch[k] {
                    match branches[b].kind {
                        BranchKind::Rung => rungs.push(b),
                        BranchKind::Pole => poles += 1,
                    }
                }
            }
            if rungs.len() != 2 || poles != 1 {
                return Err(Error::Structure(format!(
                    "flat triangle {} has {} rungs and {} pole sides",
                    tid,
                    rungs.len(),
                    poles
                )));
            }
            Ok(rungs)
        };
        let mut strip = vec![start];
        let mut strip_rungs = Vec::new();
        ladder_of[start] = ladders.len();
        let closing_rung = rungs_of(start)?[0];
        let mut prev_rung = closing_rung;
        let mut current = start;
        loop {
            let rungs = rungs_of(current)?;
            let exit = if rungs[0] == prev_rung { rungs[1] } else { rungs[0] };
            let b = &branches[exit];
            let next_tid = if b.sides[0].0 == current { b.sides[1].0 } else { b.sides[0].0 };
            strip_rungs.push(exit);
            if next_tid == start && exit == closing_rung {
                break;
            }
            if triangles[next_tid].kind != kind {
                return Err(Error::Structure(format!(
                    "rung {} joins opposite triangle kinds",
                    exit
                )));
            }
            ladder_of[next_tid] = ladders.len();
            strip.push(next_tid);
            prev_rung = exit;
            current = next_tid;
        }
        let m = strip.len();

        // All rungs of a ladder lean the same way: every rung head lies
        // on the left pole circle and every tail on the right one. The
        // pole side of strip triangle i shares one corner with each of
        // its flanking rungs, so its endpoints are either both rung
        // heads (left) or both rung tails (right).
        let pole_branch = |tid: usize| -> usize {
            (0..4)
                .filter_map(|k| triangles[tid].side_branch[k])
                .find(|&b| branches[b].kind == BranchKind::Pole)
                .expect("validated above")
        };
        let ends = |b: usize| -> [usize; 2] {
            let mut e = [branches[b].tail, branches[b].head];
            e.sort_unstable();
            e
        };
        let mut on_left = Vec::with_capacity(m);
        for i in 0..m {
            let entry = strip_rungs[(i + m - 1) % m];
            let exit = strip_rungs[i];
            let pole_ends = ends(pole_branch(strip[i]));
            let mut heads = [branches[entry].head, branches[exit].head];
            heads.sort_unstable();
            let mut tails = [branches[entry].tail, branches[exit].tail];
            tails.sort_unstable();
            match (pole_ends == heads, pole_ends == tails) {
                (true, false) => on_left.push(true),
                (false, true) => on_left.push(false),
                _ => {
                    return Err(Error::Structure(format!(
                        "pole side of flat triangle {} matches neither rung side",
                        strip[i]
                    )));
                }
            }
        }
        // Consecutive pole sides on one circle join at the switch shared
        // by every rung crossed between them: their common head on the
        // left, their common tail on the right.
        let chain = |left: bool| -> Result<Pole> {
            let position: Vec<usize> =
                (0..m).filter(|&i| on_left[i] == left).collect();
            if position.is_empty() {
                return Err(Error::Structure("a ladderpole circle has no branches".into()));
            }
            let mut ids = Vec::with_capacity(position.len());
            let mut sw = Vec::with_capacity(position.len());
            for (j, &i) in position.iter().enumerate() {
                ids.push(pole_branch(strip[i]));
                let stop = position[(j + 1) % position.len()];
                let joining = |r: usize| {
                    let b = &branches[strip_rungs[r]];
                    if left {
                        b.head
                    } else {
                        b.tail
                    }
                };
                let s = joining(i);
                let mut r = (i + 1) % m;
                while r != stop {
                    if joining(r) != s {
                        return Err(Error::Structure(
                            "rungs between pole branches disagree on their switch".into(),
                        ));
                    }
                    r = (r + 1) % m;
                }
                sw.push(s);
            }
            Ok(Pole { branches: ids, switches: sw })
        };
        let left = chain(true)?;
        let right = chain(false)?;
        ladders.push(Ladder { cusp, kind, triangles: strip, left, right });
    }

    // Per-cusp bookkeeping; ladders must pair up evenly by kind.
    let mut cusps = Vec::with_capacity(tri.num_cusps());
    for cusp in 0..tri.num_cusps() {
        let tri_ids: Vec<usize> =
            (0..triangles.len()).filter(|&i| triangles[i].cusp == cusp).collect();
        let sw_ids: Vec<usize> =
            (0..switches.len()).filter(|&i| switches[i].cusp == cusp).collect();
        let ladder_ids: Vec<usize> =
            (0..ladders.len()).filter(|&i| ladders[i].cusp == cusp).collect();
        let up = ladder_ids
            .iter()
            .filter(|&&i| ladders[i].kind == TriKind::Upward)
            .count();
        if 2 * up != ladder_ids.len() {
            return Err(Error::Structure(format!(
                "cusp {} has {} upward among {} ladders",
                cusp,
                up,
                ladder_ids.len()
            )));
        }
        cusps.push(CuspBoundary { triangles: tri_ids, switches: sw_ids, ladders: ladder_ids });
    }

    Ok(BoundaryComplex { triangles, branches, switches, ladders, cusps })
}

impl BoundaryComplex {
    /// The veering color required at a pole switch: right-veering along
    /// the left pole of an upward ladder, and mirrored for the other
    /// three pole positions.
    pub fn required_color(&self, ladder: &Ladder, left_pole: bool) -> Color {
        match (ladder.kind, left_pole) {
            (TriKind::Upward, true) => Color::Right,
            (TriKind::Upward, false) => Color::Left,
            (TriKind::Downward, true) => Color::Left,
            (TriKind::Downward, false) => Color::Right,
        }
    }

    /// Check the switch balance of a carried weight vector: at every
    /// switch the weights entering along branch directions match the
    /// weights leaving.
    pub fn switch_balanced(&self, w: &[BigRational]) -> bool {
        let mut balance = vec![BigRational::zero(); self.switches.len()];
        for b in &self.branches {
            balance[b.head] += &w[b.face];
            balance[b.tail] -= &w[b.face];
        }
        balance.iter().all(|x| x.is_zero())
    }
}
