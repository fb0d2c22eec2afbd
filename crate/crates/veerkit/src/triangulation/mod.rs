//! Ideal triangulations carrying taut angle structures and veering data.
//!
//! A triangulation is given by a gluing table on `n` tetrahedra plus one
//! angle digit per tetrahedron selecting the pair of opposite edges that
//! carry angle pi. [`RawTriangulation`] holds the quotient combinatorics
//! (face, edge and cusp classes, edge links) and can report on tautness.
//! [`VeeringTriangulation`] adds the derived structure: coorientations,
//! tetrahedron orientations, edge sides and fans, and edge colors.

pub mod explicit;
pub mod isosig;

pub use explicit::{parse_explicit, serialize_explicit};
pub use isosig::{encode_isosig, parse_isosig};

use crate::perm::Perm4;
use crate::{Error, Result};
use serde::Serialize;

/// Vertex pairs of the six edges of a tetrahedron, in index order.
pub const EDGE_VERTICES: [[u8; 2]; 6] = [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]];

/// Edge index of the edge with vertex set {a, b}.
pub fn edge_index(a: u8, b: u8) -> u8 {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    EDGE_VERTICES
        .iter()
        .position(|ev| ev[0] == a && ev[1] == b)
        .expect("distinct vertices in 0..4") as u8
}

/// Index of the opposite edge.
pub fn opposite_edge(e: u8) -> u8 {
    5 - e
}

/// The two face slots containing edge `e` (the slots not among its vertices).
pub fn slots_containing_edge(e: u8) -> [u8; 2] {
    EDGE_VERTICES[opposite_edge(e) as usize]
}

/// Veering color of an edge. `Left` edges twist leftward (blue), `Right`
/// edges rightward (red).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub enum Color {
    Left,
    Right,
}

/// One incidence of a tetrahedron edge with an edge class: tetrahedron
/// index plus edge slot 0..6.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Corner {
    pub tet: usize,
    pub edge: u8,
}

/// One face incidence in the fan of spokes on one side of an edge.
/// `face_edge_slot` selects which of the face's three edge slots lies on
/// the edge, so a face meeting an edge twice yields two distinct spokes.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FanSpoke {
    pub face: usize,
    pub face_edge_slot: u8,
}

/// An edge class of the quotient triangulation.
#[derive(Clone, Debug)]
pub struct EdgeClass {
    /// The cyclic link: corner incidences in traversal order, starting at
    /// the lexicographically least corner and exiting through its
    /// lower-numbered adjacent face slot. The flag marks pi corners.
    pub corners: Vec<(Corner, bool)>,
    /// Index into `corners` of the top corner (the tetrahedron above the
    /// edge, which sees it as its bottom pi edge).
    pub top_corner: usize,
    /// Index into `corners` of the bottom corner (the tetrahedron below).
    pub bottom_corner: usize,
    /// Zero-angle corners on each side, ordered from bottom to top.
    pub side_corners: [Vec<Corner>; 2],
    /// Fans of face spokes on each side, from bottom to top, including the
    /// two extremal spokes. The last spoke of each side is its fan top.
    pub sides: [Vec<FanSpoke>; 2],
    pub color: Color,
}

impl EdgeClass {
    pub fn degree(&self) -> usize {
        self.corners.len()
    }

    pub fn fan_top(&self, side: u8) -> FanSpoke {
        *self.sides[side as usize].last().expect("nonempty fan")
    }
}

/// Position of one face edge slot on an edge class.
#[derive(Clone, Copy, Debug)]
pub struct FaceEdge {
    pub edge: usize,
    /// Side of the edge (0 or 1) whose fan contains this incidence.
    pub side: u8,
    /// Position in that fan, 0 at the bottom.
    pub fan_pos: usize,
    /// Edge slot 0..6 within the tetrahedron above the face.
    pub above_edge_slot: u8,
}

/// A face class of the quotient triangulation.
#[derive(Clone, Debug)]
pub struct FaceClass {
    /// Representative with the tetrahedron below the face: `(t, k)` where
    /// face slot `k` of `t` is a top face of `t`.
    pub below: (usize, u8),
    /// Representative with the tetrahedron above the face.
    pub above: (usize, u8),
    /// The three edge incidences, ordered by edge slot in the above
    /// representative.
    pub edges: [FaceEdge; 3],
    /// Index into `edges` of the large slot: the bottom pi edge of the
    /// tetrahedron above.
    pub large: u8,
}

/// Per-edge row of a tautness report.
#[derive(Clone, Debug, Serialize)]
pub struct TautRow {
    pub edge: usize,
    pub degree: usize,
    pub pi_corners: usize,
    pub pi_adjacent: bool,
    pub ok: bool,
}

/// Report produced by [`RawTriangulation::validate_taut`].
#[derive(Clone, Debug, Serialize)]
pub struct TautReport {
    pub rows: Vec<TautRow>,
    pub pass: bool,
}

/// Gluing table plus angle digits, with the quotient cell structure but
/// no coorientation-dependent data.
#[derive(Clone, Debug)]
pub struct RawTriangulation {
    n: usize,
    gluings: Vec<[(usize, Perm4); 4]>,
    pi_pair: Vec<u8>,
    face_of: Vec<[usize; 4]>,
    face_reps: Vec<[(usize, u8); 2]>,
    edge_of: Vec<[usize; 6]>,
    edge_links: Vec<Vec<Corner>>,
    cusp_of: Vec<[usize; 4]>,
    num_cusps: usize,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            let root = self.find(self.parent[i]);
            self.parent[i] = root;
        }
        self.parent[i]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl RawTriangulation {
    pub fn new(gluings: Vec<[(usize, Perm4); 4]>, pi_pair: Vec<u8>) -> Result<RawTriangulation> {
        let n = gluings.len();
        if n == 0 {
            return Err(Error::Gluing("empty triangulation".into()));
        }
        if pi_pair.len() != n {
            return Err(Error::Schema(format!(
                "pi_pair has {} entries for {} tetrahedra",
                pi_pair.len(),
                n
            )));
        }
        for (t, &d) in pi_pair.iter().enumerate() {
            if d > 2 {
                return Err(Error::Schema(format!("pi_pair[{}] = {} out of range", t, d)));
            }
        }
        for (t, row) in gluings.iter().enumerate() {
            for (k, &(t2, sigma)) in row.iter().enumerate() {
                if t2 >= n {
                    return Err(Error::Gluing(format!(
                        "tetrahedron {} face {} glued to missing tetrahedron {}",
                        t, k, t2
                    )));
                }
                let k2 = sigma.apply(k as u8);
                if t2 == t && k2 == k as u8 {
                    return Err(Error::Gluing(format!(
                        "tetrahedron {} face {} glued to itself",
                        t, k
                    )));
                }
                let (t3, tau) = gluings[t2][k2 as usize];
                if t3 != t || tau != sigma.inverse() {
                    return Err(Error::Gluing(format!(
                        "gluing of tetrahedron {} face {} is not matched by its partner",
                        t, k
                    )));
                }
            }
        }

        // Connectivity.
        let mut uf = UnionFind::new(n);
        for (t, row) in gluings.iter().enumerate() {
            for &(t2, _) in row {
                uf.union(t, t2);
            }
        }
        for t in 0..n {
            if uf.find(t) != uf.find(0) {
                return Err(Error::Structure("triangulation is not connected".into()));
            }
        }

        // Face classes, in lexicographic order of first appearance.
        let mut face_of = vec![[usize::MAX; 4]; n];
        let mut face_reps = Vec::new();
        for t in 0..n {
            for k in 0..4u8 {
                if face_of[t][k as usize] != usize::MAX {
                    continue;
                }
                let (t2, sigma) = gluings[t][k as usize];
                let k2 = sigma.apply(k);
                let id = face_reps.len();
                face_of[t][k as usize] = id;
                face_of[t2][k2 as usize] = id;
                face_reps.push([(t, k), (t2, k2)]);
            }
        }

        // Edge classes with cyclic links.
        let mut edge_of = vec![[usize::MAX; 6]; n];
        let mut edge_links: Vec<Vec<Corner>> = Vec::new();
        for t in 0..n {
            for e in 0..6u8 {
                if edge_of[t][e as usize] != usize::MAX {
                    continue;
                }
                let id = edge_links.len();
                let start = Corner { tet: t, edge: e };
                let start_exit = slots_containing_edge(e)[0];
                let mut cycle = Vec::new();
                let (mut c, mut exit) = (start, start_exit);
                loop {
                    cycle.push(c);
                    edge_of[c.tet][c.edge as usize] = id;
                    let (t2, sigma) = gluings[c.tet][exit as usize];
                    let [a, b] = EDGE_VERTICES[c.edge as usize];
                    let e2 = edge_index(sigma.apply(a), sigma.apply(b));
                    let entry = sigma.apply(exit);
                    let slots = slots_containing_edge(e2);
                    let exit2 = if slots[0] == entry { slots[1] } else { slots[0] };
                    c = Corner { tet: t2, edge: e2 };
                    exit = exit2;
                    if c == start && exit == start_exit {
                        break;
                    }
                }
                edge_links.push(cycle);
            }
        }

        // Cusp classes.
        let mut cusps = UnionFind::new(4 * n);
        for (t, row) in gluings.iter().enumerate() {
            for (k, &(t2, sigma)) in row.iter().enumerate() {
                for v in 0..4u8 {
                    if v as usize != k {
                        cusps.union(4 * t + v as usize, 4 * t2 + sigma.apply(v) as usize);
                    }
                }
            }
        }
        let mut cusp_of = vec![[usize::MAX; 4]; n];
        let mut cusp_ids: Vec<usize> = Vec::new();
        for t in 0..n {
            for v in 0..4 {
                let root = cusps.find(4 * t + v);
                let id = match cusp_ids.iter().position(|&r| r == root) {
                    Some(i) => i,
                    None => {
                        cusp_ids.push(root);
                        cusp_ids.len() - 1
                    }
                };
                cusp_of[t][v] = id;
            }
        }

        Ok(RawTriangulation {
            n,
            gluings,
            pi_pair,
            face_of,
            face_reps,
            edge_of,
            edge_links,
            cusp_of,
            num_cusps: cusp_ids.len(),
        })
    }

    pub fn num_tetrahedra(&self) -> usize {
        self.n
    }

    pub fn num_faces(&self) -> usize {
        self.face_reps.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edge_links.len()
    }

    pub fn num_cusps(&self) -> usize {
        self.num_cusps
    }

    pub fn gluing(&self, t: usize, k: u8) -> (usize, Perm4) {
        self.gluings[t][k as usize]
    }

    pub fn gluings(&self) -> &[[(usize, Perm4); 4]] {
        &self.gluings
    }

    pub fn pi_pair(&self) -> &[u8] {
        &self.pi_pair
    }

    pub fn face_of(&self, t: usize, k: u8) -> usize {
        self.face_of[t][k as usize]
    }

    pub fn edge_of(&self, t: usize, e: u8) -> usize {
        self.edge_of[t][e as usize]
    }

    pub fn cusp_of(&self, t: usize, v: u8) -> usize {
        self.cusp_of[t][v as usize]
    }

    pub fn edge_link(&self, e: usize) -> &[Corner] {
        &self.edge_links[e]
    }

    fn is_pi_corner(&self, c: Corner) -> bool {
        let d = self.pi_pair[c.tet];
        c.edge == d || c.edge == opposite_edge(d)
    }

    /// Check the taut angle structure edge by edge: angle sum 2 pi (exactly
    /// two pi corners), no two pi corners adjacent in the link, and degree
    /// at least four.
    pub fn validate_taut(&self) -> TautReport {
        let mut rows = Vec::new();
        for (e, link) in self.edge_links.iter().enumerate() {
            let degree = link.len();
            let flags: Vec<bool> = link.iter().map(|&c| self.is_pi_corner(c)).collect();
            let pi_corners = flags.iter().filter(|&&f| f).count();
            let pi_adjacent =
                (0..degree).any(|i| flags[i] && flags[(i + 1) % degree]) && degree > 1;
            let ok = pi_corners == 2 && !pi_adjacent && degree >= 4;
            rows.push(TautRow { edge: e, degree, pi_corners, pi_adjacent, ok });
        }
        let pass = rows.iter().all(|r| r.ok);
        TautReport { rows, pass }
    }

    /// Upgrade to a veering triangulation. Checks tautness, propagates the
    /// face coorientation (seeding the first face of tetrahedron 0 as a top
    /// face, or a bottom face if `reverse_coorientation`), orients the
    /// tetrahedra, and computes edge sides and colors.
    pub fn to_veering(&self, reverse_coorientation: bool) -> Result<VeeringTriangulation> {
        VeeringTriangulation::build(self.clone(), !reverse_coorientation)
    }
}

/// A taut triangulation with consistent coorientation, orientation and
/// veering colors.
#[derive(Clone, Debug)]
pub struct VeeringTriangulation {
    raw: RawTriangulation,
    /// `is_top[t][k]`: face slot `k` is a top face of tetrahedron `t`, so
    /// `t` lies below the face class.
    is_top: Vec<[bool; 4]>,
    /// Tetrahedron orientations, +1 or -1.
    sign: Vec<i8>,
    /// Edge slot of the top pi edge of each tetrahedron.
    top_pi: Vec<u8>,
    /// Edge slot of the bottom pi edge of each tetrahedron.
    bottom_pi: Vec<u8>,
    edges: Vec<EdgeClass>,
    faces: Vec<FaceClass>,
}

impl VeeringTriangulation {
    fn build(raw: RawTriangulation, seed_top: bool) -> Result<VeeringTriangulation> {
        let report = raw.validate_taut();
        if !report.pass {
            let bad: Vec<usize> =
                report.rows.iter().filter(|r| !r.ok).map(|r| r.edge).collect();
            return Err(Error::Tautness(format!(
                "taut angle structure fails at edges {:?}",
                bad
            )));
        }
        let n = raw.n;

        // Coorientation: propagate is_top across pi pairs and gluings.
        let mut is_top = vec![[None::<bool>; 4]; n];
        let mut queue = vec![(0usize, 0u8, seed_top)];
        while let Some((t, k, val)) = queue.pop() {
            match is_top[t][k as usize] {
                Some(v) if v == val => continue,
                Some(_) => {
                    return Err(Error::NoCoorientation(format!(
                        "coorientation conflict at tetrahedron {} face {}",
                        t, k
                    )));
                }
                None => is_top[t][k as usize] = Some(val),
            }
            let d = raw.pi_pair[t];
            let group = slots_containing_edge(d);
            let (same, other) = if group.contains(&k) {
                (group, slots_containing_edge(opposite_edge(d)))
            } else {
                (slots_containing_edge(opposite_edge(d)), group)
            };
            for s in same {
                queue.push((t, s, val));
            }
            for s in other {
                queue.push((t, s, !val));
            }
            let (t2, sigma) = raw.gluings[t][k as usize];
            queue.push((t2, sigma.apply(k), !val));
        }
        let is_top: Vec<[bool; 4]> = is_top
            .into_iter()
            .map(|row| {
                let mut out = [false; 4];
                for (k, v) in row.into_iter().enumerate() {
                    out[k] = v.expect("connected triangulation covers all faces");
                }
                out
            })
            .collect();

        // Orientation: a gluing by permutation sigma relates tetrahedron
        // orientations by sign(t) sign(t2) sgn(sigma) = -1.
        let mut sign = vec![0i8; n];
        sign[0] = 1;
        let mut stack = vec![0usize];
        while let Some(t) = stack.pop() {
            for k in 0..4 {
                let (t2, sigma) = raw.gluings[t][k];
                let want = -sign[t] * sigma.sign();
                if sign[t2] == 0 {
                    sign[t2] = want;
                    stack.push(t2);
                } else if sign[t2] != want {
                    return Err(Error::NotOrientable(format!(
                        "orientation conflict at the gluing of tetrahedron {} face {}",
                        t, k
                    )));
                }
            }
        }

        // Top and bottom pi edges per tetrahedron.
        let mut top_pi = vec![0u8; n];
        let mut bottom_pi = vec![0u8; n];
        for t in 0..n {
            let d = raw.pi_pair[t];
            let d2 = opposite_edge(d);
            // Faces containing edge d sit at the slots opposite its
            // complementary pair.
            let faces_of_d = slots_containing_edge(d);
            if is_top[t][faces_of_d[0] as usize] {
                top_pi[t] = d;
                bottom_pi[t] = d2;
            } else {
                top_pi[t] = d2;
                bottom_pi[t] = d;
            }
        }

        // Face classes: below/above representatives and edge slot order.
        let mut faces: Vec<FaceClass> = Vec::with_capacity(raw.num_faces());
        for reps in &raw.face_reps {
            let [(ta, ka), (tb, kb)] = *reps;
            let (below, above) = if is_top[ta][ka as usize] {
                ((ta, ka), (tb, kb))
            } else {
                ((tb, kb), (ta, ka))
            };
            let (t_up, k_up) = above;
            let mut slots: Vec<u8> = (0..6u8)
                .filter(|&e| !EDGE_VERTICES[e as usize].contains(&k_up))
                .collect();
            slots.sort();
            let large_slot = bottom_pi[t_up];
            let large = slots
                .iter()
                .position(|&e| e == large_slot)
                .ok_or_else(|| {
                    Error::Structure(format!(
                        "bottom pi edge of tetrahedron {} is not on its bottom face {}",
                        t_up, k_up
                    ))
                })? as u8;
            let edges = [
                FaceEdge { edge: 0, side: 0, fan_pos: 0, above_edge_slot: slots[0] },
                FaceEdge { edge: 0, side: 0, fan_pos: 0, above_edge_slot: slots[1] },
                FaceEdge { edge: 0, side: 0, fan_pos: 0, above_edge_slot: slots[2] },
            ];
            faces.push(FaceClass { below, above, edges, large });
        }

        // Edge classes: locate top and bottom corners, split the link into
        // sides, and build the spoke fans.
        let mut edges: Vec<EdgeClass> = Vec::with_capacity(raw.num_edges());
        let mut filled = vec![[false; 3]; faces.len()];
        for (e, link) in raw.edge_links.iter().enumerate() {
            let len = link.len();
            let corners: Vec<(Corner, bool)> =
                link.iter().map(|&c| (c, raw.is_pi_corner(c))).collect();
            let tops: Vec<usize> = (0..len)
                .filter(|&i| corners[i].1 && bottom_pi[link[i].tet] == link[i].edge)
                .collect();
            let bottoms: Vec<usize> = (0..len)
                .filter(|&i| corners[i].1 && top_pi[link[i].tet] == link[i].edge)
                .collect();
            if tops.len() != 1 || bottoms.len() != 1 {
                return Err(Error::Structure(format!(
                    "edge {} does not have exactly one top and one bottom corner",
                    e
                )));
            }
            let (it, ib) = (tops[0], bottoms[0]);

            // Face spoke crossed between link positions i and i+1, from a
            // repeat of the canonical traversal.
            let cross = forward_spokes(&raw, &is_top, link);

            let side_a: Vec<Corner> =
                (1..(it + len - ib) % len).map(|o| link[(ib + o) % len]).collect();
            let side_b_rev: Vec<Corner> =
                (1..(ib + len - it) % len).map(|o| link[(it + o) % len]).collect();
            let side_b: Vec<Corner> = side_b_rev.into_iter().rev().collect();

            let fan_a: Vec<FanSpoke> =
                (0..(it + len - ib) % len).map(|o| cross[(ib + o) % len]).collect();
            let fan_b: Vec<FanSpoke> = (0..(ib + len - it) % len)
                .map(|o| cross[(it + o) % len])
                .rev()
                .collect();
            if side_a.is_empty() || side_b.is_empty() {
                return Err(Error::Structure(format!("edge {} has an empty side", e)));
            }

            for (s, fan) in [(0u8, &fan_a), (1u8, &fan_b)] {
                for (pos, spoke) in fan.iter().enumerate() {
                    let fe = &mut faces[spoke.face].edges[spoke.face_edge_slot as usize];
                    if filled[spoke.face][spoke.face_edge_slot as usize] {
                        return Err(Error::Structure(format!(
                            "face {} edge slot {} appears in two fans",
                            spoke.face, spoke.face_edge_slot
                        )));
                    }
                    filled[spoke.face][spoke.face_edge_slot as usize] = true;
                    fe.edge = e;
                    fe.side = s;
                    fe.fan_pos = pos;
                }
            }

            edges.push(EdgeClass {
                corners,
                top_corner: it,
                bottom_corner: ib,
                side_corners: [side_a, side_b],
                sides: [fan_a, fan_b],
                color: Color::Left,
            });
        }
        if filled.iter().any(|f| f.iter().any(|&x| !x)) {
            return Err(Error::Structure("a face edge slot is missing from all fans".into()));
        }

        // Veering colors: each zero-angle corner sees its edge colored by
        // the tetrahedron's equatorial square; all views must agree.
        let mut colors: Vec<Option<Color>> = vec![None; edges.len()];
        for t in 0..n {
            let table = equatorial_colors(raw.pi_pair[t], top_pi[t], sign[t]);
            for e_slot in 0..6u8 {
                if let Some(color) = table[e_slot as usize] {
                    let e = raw.edge_of[t][e_slot as usize];
                    match colors[e] {
                        None => colors[e] = Some(color),
                        Some(c) if c == color => {}
                        Some(_) => {
                            return Err(Error::Veering(format!(
                                "edge {} is seen with both colors",
                                e
                            )));
                        }
                    }
                }
            }
        }
        for (e, ec) in edges.iter_mut().enumerate() {
            ec.color = colors[e].ok_or_else(|| {
                Error::Veering(format!("edge {} has no zero-angle corner to color it", e))
            })?;
        }

        Ok(VeeringTriangulation { raw, is_top, sign, top_pi, bottom_pi, edges, faces })
    }

    pub fn raw(&self) -> &RawTriangulation {
        &self.raw
    }

    pub fn num_tetrahedra(&self) -> usize {
        self.raw.n
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_cusps(&self) -> usize {
        self.raw.num_cusps
    }

    pub fn gluing(&self, t: usize, k: u8) -> (usize, Perm4) {
        self.raw.gluing(t, k)
    }

    pub fn pi_pair(&self) -> &[u8] {
        self.raw.pi_pair()
    }

    pub fn face_of(&self, t: usize, k: u8) -> usize {
        self.raw.face_of(t, k)
    }

    pub fn edge_of(&self, t: usize, e: u8) -> usize {
        self.raw.edge_of(t, e)
    }

    pub fn cusp_of(&self, t: usize, v: u8) -> usize {
        self.raw.cusp_of(t, v)
    }

    pub fn edge(&self, e: usize) -> &EdgeClass {
        &self.edges[e]
    }

    pub fn face(&self, f: usize) -> &FaceClass {
        &self.faces[f]
    }

    pub fn is_top(&self, t: usize, k: u8) -> bool {
        self.is_top[t][k as usize]
    }

    pub fn tet_sign(&self, t: usize) -> i8 {
        self.sign[t]
    }

    pub fn top_pi(&self, t: usize) -> u8 {
        self.top_pi[t]
    }

    pub fn bottom_pi(&self, t: usize) -> u8 {
        self.bottom_pi[t]
    }

    /// Tetrahedron above the face (the face is one of its bottom faces).
    pub fn above_face(&self, f: usize) -> usize {
        self.faces[f].above.0
    }

    pub fn below_face(&self, f: usize) -> usize {
        self.faces[f].below.0
    }

    /// Tetrahedron above the edge.
    pub fn tet_above_edge(&self, e: usize) -> usize {
        let ec = &self.edges[e];
        ec.corners[ec.top_corner].0.tet
    }

    pub fn tet_below_edge(&self, e: usize) -> usize {
        let ec = &self.edges[e];
        ec.corners[ec.bottom_corner].0.tet
    }

    pub fn edge_color(&self, e: usize) -> Color {
        self.edges[e].color
    }

    /// Resolve a face incidence seen from one of its tetrahedra: for the
    /// face at slot `k` of `t` and the edge at slot `edge_slot` of `t`,
    /// return the face class and the class slot of that edge.
    pub fn face_slot_of_incidence(&self, t: usize, k: u8, edge_slot: u8) -> Result<(usize, u8)> {
        if EDGE_VERTICES[edge_slot as usize].contains(&k) {
            return Err(Error::Structure(format!(
                "edge slot {} is not on face slot {}",
                edge_slot, k
            )));
        }
        let spoke = spoke_of(&self.raw, &self.is_top, Corner { tet: t, edge: edge_slot }, k);
        Ok((spoke.face, spoke.face_edge_slot))
    }

    /// Swap the two sides of the listed edges. The geometry is unchanged;
    /// only the side labels (and hence fan orientations in the data) move.
    pub fn with_side_swaps(&self, swap: &[bool]) -> VeeringTriangulation {
        assert_eq!(swap.len(), self.edges.len());
        let mut out = self.clone();
        for (e, &s) in swap.iter().enumerate() {
            if !s {
                continue;
            }
            out.edges[e].side_corners.swap(0, 1);
            out.edges[e].sides.swap(0, 1);
            for (side, fan) in out.edges[e].sides.clone().into_iter().enumerate() {
                for spoke in fan {
                    let fe = &mut out.faces[spoke.face].edges[spoke.face_edge_slot as usize];
                    fe.side = side as u8;
                }
            }
        }
        out
    }

    /// Rebuild under a relabeling: tetrahedron `t` becomes
    /// `tet_map[t]` and its vertices are renamed by `vertex_maps[t]`. The
    /// coorientation is transported rather than reseeded.
    pub fn relabel(&self, tet_map: &[usize], vertex_maps: &[Perm4]) -> Result<VeeringTriangulation> {
        let n = self.raw.n;
        if tet_map.len() != n || vertex_maps.len() != n {
            return Err(Error::Schema("relabeling data has wrong length".into()));
        }
        let mut seen = vec![false; n];
        for &i in tet_map {
            if i >= n || seen[i] {
                return Err(Error::Schema("tetrahedron relabeling is not a bijection".into()));
            }
            seen[i] = true;
        }
        let mut gluings = vec![[(0usize, Perm4::IDENTITY); 4]; n];
        let mut pi_pair = vec![0u8; n];
        for t in 0..n {
            let rho = vertex_maps[t];
            for k in 0..4u8 {
                let (t2, sigma) = self.raw.gluings[t][k as usize];
                let tau = rho.inverse().then(sigma).then(vertex_maps[t2]);
                gluings[tet_map[t]][rho.apply(k) as usize] = (tet_map[t2], tau);
            }
            let d = self.raw.pi_pair[t];
            let [a, b] = EDGE_VERTICES[d as usize];
            let (ia, ib) = (rho.apply(a), rho.apply(b));
            let new_edge = edge_index(ia, ib);
            // Digit of the pair containing vertex 0.
            pi_pair[tet_map[t]] = if EDGE_VERTICES[new_edge as usize].contains(&0) {
                EDGE_VERTICES[new_edge as usize][1] - 1
            } else {
                EDGE_VERTICES[opposite_edge(new_edge) as usize][1] - 1
            };
        }
        let raw = RawTriangulation::new(gluings, pi_pair)?;
        // Transported coorientation value of the new tetrahedron 0, face 0.
        let old_t = tet_map.iter().position(|&i| i == 0).unwrap();
        let old_k = vertex_maps[old_t].inverse().apply(0);
        let seed = self.is_top[old_t][old_k as usize];
        VeeringTriangulation::build(raw, seed)
    }

    /// The same triangulation with the global coorientation reversed.
    pub fn reversed(&self) -> Result<VeeringTriangulation> {
        VeeringTriangulation::build(self.raw.clone(), !self.is_top[0][0])
    }
}

/// The face spoke crossed when leaving corner `c` through face slot `exit`.
fn spoke_of(
    raw: &RawTriangulation,
    is_top: &[[bool; 4]],
    c: Corner,
    exit: u8,
) -> FanSpoke {
    let face = raw.face_of[c.tet][exit as usize];
    // Express the edge in the above representative of the face.
    let (k_up, edge_up) = if is_top[c.tet][exit as usize] {
        // c.tet is below the face; map through the gluing.
        let (_, sigma) = raw.gluings[c.tet][exit as usize];
        let [a, b] = EDGE_VERTICES[c.edge as usize];
        (sigma.apply(exit), edge_index(sigma.apply(a), sigma.apply(b)))
    } else {
        (exit, c.edge)
    };
    let mut slots: Vec<u8> = (0..6u8)
        .filter(|&e| !EDGE_VERTICES[e as usize].contains(&k_up))
        .collect();
    slots.sort();
    let face_edge_slot = slots.iter().position(|&e| e == edge_up).unwrap() as u8;
    FanSpoke { face, face_edge_slot }
}

/// Spokes crossed between consecutive link corners, by repeating the
/// canonical traversal.
fn forward_spokes(raw: &RawTriangulation, is_top: &[[bool; 4]], link: &[Corner]) -> Vec<FanSpoke> {
    let start = link[0];
    let start_exit = slots_containing_edge(start.edge)[0];
    let mut out = Vec::with_capacity(link.len());
    let (mut c, mut exit) = (start, start_exit);
    loop {
        out.push(spoke_of(raw, is_top, c, exit));
        let (t2, sigma) = raw.gluings[c.tet][exit as usize];
        let [a, b] = EDGE_VERTICES[c.edge as usize];
        let e2 = edge_index(sigma.apply(a), sigma.apply(b));
        let entry = sigma.apply(exit);
        let slots = slots_containing_edge(e2);
        let exit2 = if slots[0] == entry { slots[1] } else { slots[0] };
        c = Corner { tet: t2, edge: e2 };
        exit = exit2;
        if c == start && exit == start_exit {
            break;
        }
    }
    out
}

/// Colors of the four equatorial edges of a taut tetrahedron, indexed by
/// edge slot; the two pi slots are `None`.
fn equatorial_colors(pi_digit: u8, top_pi: u8, sign: i8) -> [Option<Color>; 6] {
    let bottom = opposite_edge(top_pi);
    debug_assert!(top_pi == pi_digit || top_pi == opposite_edge(pi_digit));
    let [p, q] = EDGE_VERTICES[bottom as usize];
    let [mut r, mut s] = EDGE_VERTICES[top_pi as usize];
    // Normalize so that the labeling (p, q, r, s) is negatively oriented.
    let perm = Perm4::new([p, q, r, s]).expect("pi pairs partition the vertices");
    if perm.sign() * sign != -1 {
        std::mem::swap(&mut r, &mut s);
    }
    let mut out = [None; 6];
    out[edge_index(p, r) as usize] = Some(Color::Left);
    out[edge_index(q, s) as usize] = Some(Color::Left);
    out[edge_index(p, s) as usize] = Some(Color::Right);
    out[edge_index(q, r) as usize] = Some(Color::Right);
    out
}
