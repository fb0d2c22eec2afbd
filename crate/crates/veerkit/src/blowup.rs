//! Dynamic blowups of a pseudo-Anosov singularity star and fillings by
//! disjoint segments.
//!
//! A star with 2q alternating spokes sits in a disk with its leaves on
//! the boundary circle. Boundary sectors between consecutive leaves are
//! the regions of the complement; a blowup splits an interior vertex and
//! refines the regions' shapes but never their number or indexing. An
//! even family of marked boundary points, symmetric under a rotation, is
//! filled by pairwise disjoint segments, each crossing exactly one tree
//! edge from its positive side to its negative side.

use crate::{Error, Result};
use serde::Serialize;

/// A half edge at a vertex. `out` means the vertex is the tail.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Dart {
    pub edge: usize,
    pub out: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TreeEdge {
    pub tail: usize,
    pub head: usize,
    /// Endpoint on the center side; segment crossings are ordered from
    /// the other (outer) end toward this one.
    pub center_end: usize,
}

/// A planar directed tree with its leaves pinned to the boundary circle.
#[derive(Clone, Debug, Serialize)]
pub struct PaTree {
    /// Counterclockwise darts at each vertex.
    order: Vec<Vec<Dart>>,
    edges: Vec<TreeEdge>,
    /// Circle position to leaf vertex.
    leaves: Vec<usize>,
}

/// The sign of a boundary sector: positive at even indices.
pub fn sector_sign(sector: usize) -> bool {
    sector % 2 == 0
}

type Walk = Vec<(usize, Dart)>;

impl PaTree {
    /// The star of a singularity with q prongs: one center, 2q spokes of
    /// alternating direction, even spokes pointing inward.
    pub fn star(q: usize) -> Result<PaTree> {
        if q < 3 {
            return Err(Error::Schema(format!("a star needs at least 3 prongs, got {}", q)));
        }
        let mut order = vec![Vec::new(); 2 * q + 1];
        let mut edges = Vec::with_capacity(2 * q);
        let mut leaves = Vec::with_capacity(2 * q);
        for i in 0..2 * q {
            let leaf = i + 1;
            let inward = i % 2 == 0;
            let (tail, head) = if inward { (leaf, 0) } else { (0, leaf) };
            edges.push(TreeEdge { tail, head, center_end: 0 });
            order[0].push(Dart { edge: i, out: !inward });
            order[leaf].push(Dart { edge: i, out: inward });
            leaves.push(leaf);
        }
        let tree = PaTree { order, edges, leaves };
        tree.validate()?;
        Ok(tree)
    }

    pub fn num_sectors(&self) -> usize {
        self.leaves.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, e: usize) -> &TreeEdge {
        &self.edges[e]
    }

    fn other_end(&self, d: Dart) -> usize {
        if d.out {
            self.edges[d.edge].head
        } else {
            self.edges[d.edge].tail
        }
    }

    fn is_leaf(&self, v: usize) -> bool {
        self.order[v].len() == 1
    }

    /// The boundary tour of the tree: each dart once, faces on the right.
    fn face_walk(&self) -> Walk {
        let start_v = self.leaves[0];
        let start_d = self.order[start_v][0];
        let mut walk = Vec::with_capacity(2 * self.edges.len());
        let (mut v, mut d) = (start_v, start_d);
        loop {
            walk.push((v, d));
            let w = self.other_end(d);
            let rev = Dart { edge: d.edge, out: !d.out };
            let pos = self.order[w].iter().position(|&x| x == rev).expect("rev dart");
            let next = self.order[w][(pos + 1) % self.order[w].len()];
            v = w;
            d = next;
            if (v, d) == (start_v, start_d) {
                break;
            }
        }
        walk
    }

    /// Region walks, indexed by sector. Region i runs from leaf i to
    /// leaf i + 1 and lies on the right of each of its darts.
    pub fn regions(&self) -> Result<Vec<Walk>> {
        let walk = self.face_walk();
        if walk.len() != 2 * self.edges.len() {
            return Err(Error::Structure("boundary tour misses darts".into()));
        }
        let n = self.leaves.len();
        let mut cuts = Vec::with_capacity(n);
        for (j, &(v, _)) in walk.iter().enumerate() {
            if self.is_leaf(v) {
                cuts.push((j, self.leaves.iter().position(|&l| l == v).unwrap()));
            }
        }
        if cuts.len() != n || cuts.iter().map(|&(_, p)| p).ne(0..n) {
            return Err(Error::Structure("leaves are out of circular order".into()));
        }
        let mut regions = Vec::with_capacity(n);
        for i in 0..n {
            let from = cuts[i].0;
            let to = if i + 1 < n { cuts[i + 1].0 } else { walk.len() };
            regions.push(walk[from..to].to_vec());
        }
        Ok(regions)
    }

    /// Per edge, the flanking regions as (left, right): the right region
    /// holds the tail-to-head dart in its walk.
    pub fn edge_sides(&self) -> Result<Vec<(usize, usize)>> {
        let regions = self.regions()?;
        let mut sides = vec![(usize::MAX, usize::MAX); self.edges.len()];
        for (r, walk) in regions.iter().enumerate() {
            for &(_, d) in walk {
                if d.out {
                    sides[d.edge].1 = r;
                } else {
                    sides[d.edge].0 = r;
                }
            }
        }
        if sides.iter().any(|&(l, r)| l == usize::MAX || r == usize::MAX) {
            return Err(Error::Structure("an edge side was not traced".into()));
        }
        Ok(sides)
    }

    /// Structural checks: directions alternate, interior valences are
    /// even and at least four, regions match sector parity.
    pub fn validate(&self) -> Result<()> {
        let n = self.leaves.len();
        if n < 6 || n % 2 != 0 {
            return Err(Error::Structure("leaf count must be even and at least 6".into()));
        }
        for (i, &leaf) in self.leaves.iter().enumerate() {
            if self.order[leaf].len() != 1 {
                return Err(Error::Structure(format!("leaf {} has extra darts", leaf)));
            }
            let inward = i % 2 == 0;
            if self.order[leaf][0].out != inward {
                return Err(Error::Structure(format!(
                    "spoke direction at sector {} breaks the alternation",
                    i
                )));
            }
        }
        for (v, darts) in self.order.iter().enumerate() {
            if self.leaves.contains(&v) {
                continue;
            }
            if darts.len() < 4 || darts.len() % 2 != 0 {
                return Err(Error::Structure(format!(
                    "interior vertex {} has valence {}",
                    v,
                    darts.len()
                )));
            }
            for (j, d) in darts.iter().enumerate() {
                let next = darts[(j + 1) % darts.len()];
                if d.out == next.out {
                    return Err(Error::Structure(format!(
                        "directions do not alternate at vertex {}",
                        v
                    )));
                }
            }
        }
        let sides = self.edge_sides()?;
        for (e, &(l, r)) in sides.iter().enumerate() {
            if !sector_sign(r) || sector_sign(l) {
                return Err(Error::Structure(format!(
                    "edge {} has its positive region on the wrong side",
                    e
                )));
            }
        }
        Ok(())
    }

    /// Split the unique common interior vertex of two opposite-sign
    /// regions: the darts from region `a`'s corner counterclockwise to
    /// region `b`'s corner move to a new vertex, joined by a new edge
    /// across which `a` and `b` become adjacent.
    pub fn regional_blowup(&self, a: usize, b: usize) -> Result<PaTree> {
        let n = self.leaves.len();
        if a >= n || b >= n || a == b {
            return Err(Error::Schema(format!("bad region pair ({}, {})", a, b)));
        }
        if sector_sign(a) == sector_sign(b) {
            return Err(Error::SameOrientation(format!(
                "regions {} and {} have the same orientation",
                a, b
            )));
        }
        let sides = self.edge_sides()?;
        if sides.iter().any(|&(l, r)| (l, r) == (a, b) || (l, r) == (b, a)) {
            return Err(Error::Structure(format!(
                "regions {} and {} are already edge adjacent",
                a, b
            )));
        }
        let regions = self.regions()?;
        let interior = |walk: &Walk| -> Vec<usize> {
            walk.iter().map(|&(v, _)| v).filter(|&v| !self.is_leaf(v)).collect()
        };
        let (va, vb) = (interior(&regions[a]), interior(&regions[b]));
        let common: Vec<usize> = va.iter().copied().filter(|v| vb.contains(v)).collect();
        let v = match common.len() {
            0 => {
                return Err(Error::NotAdjacentAtVertex(format!(
                    "regions {} and {} share no interior vertex",
                    a, b
                )));
            }
            1 => common[0],
            _ => {
                return Err(Error::Structure("regions share several vertices".into()));
            }
        };
        let deg = self.order[v].len();
        let out_dart = |r: usize| -> usize {
            let d = regions[r].iter().find(|&&(src, _)| src == v).expect("corner").1;
            self.order[v].iter().position(|&x| x == d).unwrap()
        };
        let (ia, ib) = (out_dart(a), out_dart(b));
        let len_j = (ib + deg - ia) % deg;
        if len_j < 3 || deg - len_j + 1 < 4 {
            return Err(Error::Structure(format!(
                "blowup of regions {} and {} leaves a valence below four",
                a, b
            )));
        }
        let j_darts: Vec<Dart> =
            (0..len_j).map(|k| self.order[v][(ia + k) % deg]).collect();

        let mut tree = self.clone();
        let u = tree.order.len();
        let e_new = tree.edges.len();
        for d in &j_darts {
            let edge = &mut tree.edges[d.edge];
            if edge.tail == v {
                edge.tail = u;
            } else {
                edge.head = u;
            }
            if edge.center_end == v {
                edge.center_end = u;
            }
        }
        // The new edge's direction is forced by the alternation.
        let prev = self.order[v][(ia + deg - 1) % deg];
        let new_out = !prev.out;
        let (tail, head) = if new_out { (v, u) } else { (u, v) };
        tree.edges.push(TreeEdge { tail, head, center_end: v });
        let mut at_v = Vec::with_capacity(deg - len_j + 1);
        for k in 0..deg {
            let pos = (ib + k) % deg;
            if pos == ia {
                break;
            }
            at_v.push(self.order[v][pos]);
        }
        at_v.push(Dart { edge: e_new, out: new_out });
        tree.order[v] = at_v;
        let mut at_u = vec![Dart { edge: e_new, out: !new_out }];
        at_u.extend(j_darts);
        tree.order.push(at_u);
        tree.validate()?;
        Ok(tree)
    }

    /// Deterministic code of the embedded tree: depth first from the
    /// sector-zero leaf, recording valences and directions.
    pub fn canonical_code(&self) -> Vec<i64> {
        let mut code = Vec::new();
        let start_d = self.order[self.leaves[0]][0];
        let mut stack = vec![start_d];
        code.push(if start_d.out { 1 } else { -1 });
        while let Some(d) = stack.pop() {
            let w = self.other_end(d);
            let rev = Dart { edge: d.edge, out: !d.out };
            let pos = self.order[w].iter().position(|&x| x == rev).unwrap();
            let children: Vec<Dart> = (1..self.order[w].len())
                .map(|k| self.order[w][(pos + k) % self.order[w].len()])
                .collect();
            code.push(children.len() as i64);
            for c in &children {
                code.push(if c.out { 1 } else { -1 });
            }
            // Push in reverse so children are visited counterclockwise.
            for &c in children.iter().rev() {
                stack.push(c);
            }
        }
        code
    }

    /// Edge ids in the order the canonical traversal meets them.
    fn traversal_edge_order(&self) -> Vec<usize> {
        let mut rank = vec![usize::MAX; self.edges.len()];
        let mut next = 0;
        let mut stack = vec![self.order[self.leaves[0]][0]];
        while let Some(d) = stack.pop() {
            if rank[d.edge] == usize::MAX {
                rank[d.edge] = next;
                next += 1;
            }
            let w = self.other_end(d);
            let rev = Dart { edge: d.edge, out: !d.out };
            let pos = self.order[w].iter().position(|&x| x == rev).unwrap();
            let children: Vec<Dart> = (1..self.order[w].len())
                .map(|k| self.order[w][(pos + k) % self.order[w].len()])
                .collect();
            for &c in children.iter().rev() {
                stack.push(c);
            }
        }
        rank
    }

    /// The automorphism rotating sectors by `shift`, as vertex and edge
    /// maps, if it exists.
    pub fn rotation_map(&self, shift: usize) -> Result<(Vec<usize>, Vec<usize>)> {
        let n = self.leaves.len();
        let s = shift % n;
        let regions = self.regions()?;
        let mut vmap = vec![usize::MAX; self.order.len()];
        let mut emap = vec![usize::MAX; self.edges.len()];
        for r in 0..n {
            let (src, dst) = (&regions[r], &regions[(r + s) % n]);
            if src.len() != dst.len() {
                return Err(Error::NotSymmetric(format!(
                    "regions {} and {} have different shapes",
                    r,
                    (r + s) % n
                )));
            }
            for (&(v, d), &(v2, d2)) in src.iter().zip(dst) {
                if d.out != d2.out {
                    return Err(Error::NotSymmetric(format!(
                        "direction clash between regions {} and {}",
                        r,
                        (r + s) % n
                    )));
                }
                for (map, x, y) in [(&mut vmap, v, v2), (&mut emap, d.edge, d2.edge)] {
                    if map[x] == usize::MAX {
                        map[x] = y;
                    } else if map[x] != y {
                        return Err(Error::NotSymmetric(
                            "rotation does not extend over the tree".into(),
                        ));
                    }
                }
            }
        }
        for (e, &e2) in emap.iter().enumerate() {
            if e2 == usize::MAX {
                return Err(Error::NotSymmetric("unmatched edge".into()));
            }
            if vmap[self.edges[e].center_end] != self.edges[e2].center_end {
                return Err(Error::NotSymmetric(
                    "rotation flips an edge's center side".into(),
                ));
            }
        }
        Ok((vmap, emap))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct MarkedPoint {
    pub sector: usize,
    /// Positive points sit in even sectors.
    pub positive: bool,
}

/// One filling segment: from a positive point, across `edge` at crossing
/// position `ordinal`, to a negative point.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub struct Segment {
    pub from: usize,
    pub to: usize,
    pub edge: usize,
    pub ordinal: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Filling {
    pub tree: PaTree,
    pub points: Vec<MarkedPoint>,
    pub segments: Vec<Segment>,
}

fn points_of_family(num_sectors: usize, sectors: &[usize]) -> Result<Vec<MarkedPoint>> {
    let mut sorted = sectors.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != sectors.len() {
        return Err(Error::Schema("family sectors repeat".into()));
    }
    if sorted.iter().any(|&s| s >= num_sectors) {
        return Err(Error::Schema("family sector out of range".into()));
    }
    Ok(sorted
        .into_iter()
        .map(|sector| MarkedPoint { sector, positive: sector_sign(sector) })
        .collect())
}

fn family_checks(num_sectors: usize, points: &[MarkedPoint], shift: usize) -> Result<()> {
    if shift >= num_sectors {
        return Err(Error::Schema("rotation shift out of range".into()));
    }
    if shift % 2 != 0 {
        return Err(Error::NotSymmetric("an odd rotation shift reverses signs".into()));
    }
    let plus = points.iter().filter(|p| p.positive).count();
    if 2 * plus != points.len() {
        return Err(Error::OddFamily(format!(
            "{} positive against {} negative points",
            plus,
            points.len() - plus
        )));
    }
    for p in points {
        let image = (p.sector + shift) % num_sectors;
        if !points.iter().any(|x| x.sector == image) {
            return Err(Error::NotSymmetric(format!(
                "sector {} maps to unmarked sector {}",
                p.sector, image
            )));
        }
    }
    Ok(())
}

/// Fill a symmetric even family on the star with q prongs, blowing up as
/// needed. Works rotation orbit by rotation orbit: the least adjacent
/// opposite-sign pair of remaining points is joined, either directly
/// across a shared edge or across the edge created by splitting off the
/// spokes between the two sectors.
pub fn fill_even_family(q: usize, sectors: &[usize], shift: usize) -> Result<Filling> {
    let mut tree = PaTree::star(q)?;
    let n = tree.num_sectors();
    let points = points_of_family(n, sectors)?;
    family_checks(n, &points, shift)?;
    let orbit = if shift == 0 { 1 } else { n / gcd(n, shift) };

    let mut active: Vec<usize> = (0..points.len()).collect();
    let mut segments: Vec<Segment> = Vec::new();
    let mut crossings: Vec<usize> = vec![0; tree.num_edges()];
    while !active.is_empty() {
        let m = active.len();
        let i = (0..m)
            .find(|&i| points[active[i]].positive != points[active[(i + 1) % m]].positive)
            .expect("a balanced family has an adjacent opposite pair");
        let (pa, pb) = (active[i], active[(i + 1) % m]);
        let mut pairs = Vec::with_capacity(orbit);
        for k in 0..orbit {
            let off = (k * shift) % n;
            let find = |base: usize| -> Result<usize> {
                let target = (points[base].sector + off) % n;
                points
                    .iter()
                    .position(|p| p.sector == target)
                    .ok_or_else(|| Error::NotSymmetric("orbit leaves the family".into()))
            };
            pairs.push((find(pa)?, find(pb)?));
        }
        for &(p1, p2) in &pairs {
            let (ra, rb) = (points[p1].sector, points[p2].sector);
            let sides = tree.edge_sides()?;
            let direct = sides
                .iter()
                .position(|&(l, r)| (l, r) == (ra, rb) || (l, r) == (rb, ra));
            let edge = match direct {
                Some(e) => e,
                None => {
                    tree = tree.regional_blowup(ra, rb)?;
                    crossings.push(0);
                    tree.num_edges() - 1
                }
            };
            let (from, to) = if points[p1].positive { (p1, p2) } else { (p2, p1) };
            segments.push(Segment { from, to, edge, ordinal: crossings[edge] });
            crossings[edge] += 1;
        }
        let used: Vec<usize> = pairs.iter().flat_map(|&(x, y)| [x, y]).collect();
        active.retain(|p| !used.contains(p));
    }
    let filling = Filling { tree, points, segments };
    validate_filling(&filling, shift)?;
    Ok(filling)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Items on a region's boundary circle.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum BoundaryItem {
    Point(usize),
    Crossing(usize, usize),
}

/// Check a filling from scratch: tree validity, endpoint matching,
/// crossing legality, pairwise disjointness of the segments and
/// invariance under the rotation.
pub fn validate_filling(filling: &Filling, shift: usize) -> Result<()> {
    let tree = &filling.tree;
    tree.validate()?;
    let n = tree.num_sectors();
    family_checks(n, &filling.points, shift)?;
    for w in filling.points.windows(2) {
        if w[0].sector >= w[1].sector {
            return Err(Error::Schema("points out of sector order".into()));
        }
    }
    for p in &filling.points {
        if p.positive != sector_sign(p.sector) {
            return Err(Error::Schema("point sign clashes with its sector".into()));
        }
    }

    let mut seen = vec![0usize; filling.points.len()];
    let sides = tree.edge_sides()?;
    for s in &filling.segments {
        if s.from >= filling.points.len() || s.to >= filling.points.len() {
            return Err(Error::Schema("segment endpoint out of range".into()));
        }
        seen[s.from] += 1;
        seen[s.to] += 1;
        if !filling.points[s.from].positive || filling.points[s.to].positive {
            return Err(Error::Structure("segment direction violates the signs".into()));
        }
        let (l, r) = sides[s.edge];
        if filling.points[s.from].sector != r || filling.points[s.to].sector != l {
            return Err(Error::Structure(format!(
                "segment {} -> {} does not cross edge {} from its right to its left",
                s.from, s.to, s.edge
            )));
        }
    }
    if seen.iter().any(|&c| c != 1) {
        return Err(Error::Structure("points and segment endpoints do not match".into()));
    }
    let mut per_edge: Vec<Vec<usize>> = vec![Vec::new(); tree.num_edges()];
    for s in &filling.segments {
        per_edge[s.edge].push(s.ordinal);
    }
    for (e, ords) in per_edge.iter().enumerate() {
        let mut o = ords.clone();
        o.sort_unstable();
        if o.iter().enumerate().any(|(i, &x)| i != x) {
            return Err(Error::Structure(format!("crossing ordinals at edge {} skip", e)));
        }
    }

    // Disjointness, region by region: the chords drawn inside a region
    // must not interleave on its boundary circle.
    let regions = tree.regions()?;
    for (r, walk) in regions.iter().enumerate() {
        let mut items = Vec::new();
        if let Some(p) = filling.points.iter().position(|p| p.sector == r) {
            items.push(BoundaryItem::Point(p));
        }
        for &(_, d) in walk {
            let e = d.edge;
            let count = per_edge[e].len();
            let toward_center = tree.other_end(d) == tree.edges[e].center_end;
            let ords: Vec<usize> = if toward_center {
                (0..count).collect()
            } else {
                (0..count).rev().collect()
            };
            items.extend(ords.into_iter().map(|o| BoundaryItem::Crossing(e, o)));
        }
        let mut chords = Vec::new();
        for s in &filling.segments {
            let (l, rr) = sides[s.edge];
            let endpoint = if rr == r && filling.points[s.from].sector == r {
                Some(s.from)
            } else if l == r && filling.points[s.to].sector == r {
                Some(s.to)
            } else {
                None
            };
            if let Some(p) = endpoint {
                let a = items
                    .iter()
                    .position(|&it| it == BoundaryItem::Point(p))
                    .ok_or_else(|| Error::Structure("segment endpoint off its region".into()))?;
                let b = items
                    .iter()
                    .position(|&it| it == BoundaryItem::Crossing(s.edge, s.ordinal))
                    .ok_or_else(|| Error::Structure("crossing off its region".into()))?;
                chords.push((a.min(b), a.max(b)));
            }
        }
        for (i, &(a1, a2)) in chords.iter().enumerate() {
            for &(b1, b2) in &chords[i + 1..] {
                let between = |x: usize| a1 < x && x < a2;
                if between(b1) != between(b2) {
                    return Err(Error::Structure(format!(
                        "segments interleave inside region {}",
                        r
                    )));
                }
            }
        }
    }

    // Symmetry: the rotation extends over the tree and permutes the
    // segments, preserving crossing ordinals.
    let (_, emap) = tree.rotation_map(shift)?;
    let point_image = |p: usize| -> Result<usize> {
        let target = (filling.points[p].sector + shift) % n;
        filling
            .points
            .iter()
            .position(|x| x.sector == target)
            .ok_or_else(|| Error::NotSymmetric("point image missing".into()))
    };
    for s in &filling.segments {
        let image = Segment {
            from: point_image(s.from)?,
            to: point_image(s.to)?,
            edge: emap[s.edge],
            ordinal: s.ordinal,
        };
        if !filling.segments.contains(&image) {
            return Err(Error::NotSymmetric(format!(
                "segment {} -> {} has no rotated partner",
                s.from, s.to
            )));
        }
    }
    Ok(())
}

/// Normal form for comparing fillings across vertex and edge labelings.
pub fn filling_signature(filling: &Filling) -> (Vec<i64>, Vec<Segment>) {
    let rank = filling.tree.traversal_edge_order();
    let mut segs: Vec<Segment> = filling
        .segments
        .iter()
        .map(|s| Segment { from: s.from, to: s.to, edge: rank[s.edge], ordinal: s.ordinal })
        .collect();
    segs.sort();
    (filling.tree.canonical_code(), segs)
}

/// Exhaustive search over blown-up trees and segment systems. Bounded to
/// small instances; the tree closure adds at most one blowup per segment
/// pair.
pub fn brute_force_fill(q: usize, sectors: &[usize], shift: usize) -> Result<Vec<Filling>> {
    if q > 4 || sectors.len() > 6 {
        return Err(Error::SizeGuard(format!(
            "brute force limited to q <= 4 and 6 points, got q = {} with {}",
            q,
            sectors.len()
        )));
    }
    let star = PaTree::star(q)?;
    let n = star.num_sectors();
    let points = points_of_family(n, sectors)?;
    family_checks(n, &points, shift)?;
    let max_extra = sectors.len() / 2;

    let mut trees = vec![star];
    let mut codes = vec![trees[0].canonical_code()];
    let mut frontier = vec![0usize];
    while let Some(idx) = frontier.pop() {
        if trees[idx].num_edges() - 2 * q >= max_extra {
            continue;
        }
        for a in 0..n {
            for b in 0..n {
                let Ok(t) = trees[idx].regional_blowup(a, b) else { continue };
                let code = t.canonical_code();
                if !codes.contains(&code) {
                    codes.push(code);
                    frontier.push(trees.len());
                    trees.push(t);
                }
            }
        }
    }

    let mut out: Vec<Filling> = Vec::new();
    let mut seen: Vec<(Vec<i64>, Vec<Segment>)> = Vec::new();
    let plus: Vec<usize> = (0..points.len()).filter(|&p| points[p].positive).collect();
    let minus: Vec<usize> = (0..points.len()).filter(|&p| !points[p].positive).collect();
    for tree in &trees {
        if tree.rotation_map(shift).is_err() {
            continue;
        }
        let sides = tree.edge_sides()?;
        // Assign each positive point a negative partner and the forced
        // crossing edge, then choose crossing ordinals.
        let mut assignments: Vec<Vec<Segment>> = vec![Vec::new()];
        for (slot, &p) in plus.iter().enumerate() {
            let mut next = Vec::new();
            for partial in &assignments {
                for &m in &minus {
                    if partial.iter().any(|s| s.to == m) {
                        continue;
                    }
                    let edge = sides.iter().position(|&(l, r)| {
                        r == points[p].sector && l == points[m].sector
                    });
                    let Some(e) = edge else { continue };
                    let mut ext = partial.clone();
                    ext.push(Segment { from: p, to: m, edge: e, ordinal: 0 });
                    next.push(ext);
                }
            }
            assignments = next;
            if assignments.is_empty() {
                break;
            }
            let _ = slot;
        }
        for base in &assignments {
            // All orderings of crossings on each edge.
            let mut variants: Vec<Vec<Segment>> = vec![Vec::new()];
            for e in 0..tree.num_edges() {
                let here: Vec<&Segment> = base.iter().filter(|s| s.edge == e).collect();
                let perms = permutations(here.len());
                let mut next = Vec::new();
                for v in &variants {
                    for perm in &perms {
                        let mut ext = v.clone();
                        for (ord, &which) in perm.iter().enumerate() {
                            let mut s = *here[which];
                            s.ordinal = ord;
                            ext.push(s);
                        }
                        next.push(ext);
                    }
                }
                variants = next;
            }
            for segs in variants {
                let mut segs = segs;
                segs.sort();
                let filling =
                    Filling { tree: tree.clone(), points: points.clone(), segments: segs };
                if validate_filling(&filling, shift).is_ok() {
                    let sig = filling_signature(&filling);
                    if !seen.contains(&sig) {
                        seen.push(sig);
                        out.push(filling);
                    }
                }
            }
        }
    }
    Ok(out)
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(k - 1) {
        for pos in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(pos, k - 1);
            out.push(p);
        }
    }
    out
}
