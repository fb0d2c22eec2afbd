//! Homology of the dual spine, in exact integer arithmetic.
//!
//! The dual spine has one vertex per tetrahedron, one edge per face and
//! one 2-cell per edge of the triangulation. Its boundary maps are `d1`
//! (faces to tetrahedra, top minus bottom) and `d2` (edges to faces, side
//! 0 fan minus side 1 fan). First homology of the manifold is the
//! cokernel-with-kernel computation `ker d1 / im d2`, presented through
//! Smith normal forms with unimodular transforms kept on both sides.

use crate::stable_track::StableLoop;
use crate::triangulation::VeeringTriangulation;
use crate::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

pub type Mat = Vec<Vec<BigInt>>;

pub fn zeros(rows: usize, cols: usize) -> Mat {
    vec![vec![BigInt::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Mat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    m
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let (ra, ca) = (a.len(), if a.is_empty() { 0 } else { a[0].len() });
    let cb = if b.is_empty() { 0 } else { b[0].len() };
    assert_eq!(ca, b.len());
    let mut out = zeros(ra, cb);
    for i in 0..ra {
        for k in 0..ca {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..cb {
                let prod = &a[i][k] * &b[k][j];
                out[i][j] += prod;
            }
        }
    }
    out
}

pub fn mat_vec(a: &Mat, x: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(r, v)| r * v).sum())
        .collect()
}

pub fn is_zero_mat(a: &Mat) -> bool {
    a.iter().all(|row| row.iter().all(|x| x.is_zero()))
}

/// Smith normal form `u * a * v = s`, with `u`, `v` unimodular and their
/// inverses tracked alongside.
pub struct Snf {
    pub s: Mat,
    pub u: Mat,
    pub u_inv: Mat,
    pub v: Mat,
    pub v_inv: Mat,
    pub rank: usize,
}

impl Snf {
    pub fn diagonal(&self, i: usize) -> &BigInt {
        &self.s[i][i]
    }
}

pub fn smith(a: &Mat) -> Snf {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut s = a.clone();
    let mut u = identity(rows);
    let mut u_inv = identity(rows);
    let mut v = identity(cols);
    let mut v_inv = identity(cols);

    // Row ops apply to s and u on the left; the inverse op applies to
    // u_inv on the right. Column ops mirror this with v.
    fn swap_rows(s: &mut Mat, u: &mut Mat, u_inv: &mut Mat, i: usize, j: usize) {
        s.swap(i, j);
        u.swap(i, j);
        for row in u_inv.iter_mut() {
            row.swap(i, j);
        }
    }
    fn swap_cols(s: &mut Mat, v: &mut Mat, v_inv: &mut Mat, i: usize, j: usize) {
        for row in s.iter_mut() {
            row.swap(i, j);
        }
        for row in v.iter_mut() {
            row.swap(i, j);
        }
        v_inv.swap(i, j);
    }
    // row[i] += q * row[j]
    fn add_row(s: &mut Mat, u: &mut Mat, u_inv: &mut Mat, i: usize, j: usize, q: &BigInt) {
        for col in 0..s[0].len() {
            let t = q * &s[j][col];
            s[i][col] += t;
        }
        for col in 0..u[0].len() {
            let t = q * &u[j][col];
            u[i][col] += t;
        }
        for row in u_inv.iter_mut() {
            let t = q * &row[i];
            row[j] -= t;
        }
    }
    // col[i] += q * col[j]
    fn add_col(s: &mut Mat, v: &mut Mat, v_inv: &mut Mat, i: usize, j: usize, q: &BigInt) {
        for row in s.iter_mut() {
            let t = q * &row[j];
            row[i] += t;
        }
        for row in v.iter_mut() {
            let t = q * &row[j];
            row[i] += t;
        }
        for col in 0..v_inv[0].len() {
            let t = q * &v_inv[i][col];
            v_inv[j][col] -= t;
        }
    }
    fn negate_row(s: &mut Mat, u: &mut Mat, u_inv: &mut Mat, i: usize) {
        for x in s[i].iter_mut() {
            *x = -&*x;
        }
        for x in u[i].iter_mut() {
            *x = -&*x;
        }
        for row in u_inv.iter_mut() {
            row[i] = -&row[i];
        }
    }

    let dim = rows.min(cols);
    let mut k = 0;
    while k < dim {
        // Pivot: entry of least absolute value in the remaining block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if s[i][j].is_zero() {
                    continue;
                }
                match pivot {
                    Some((pi, pj)) if s[pi][pj].abs() <= s[i][j].abs() => {}
                    _ => pivot = Some((i, j)),
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        swap_rows(&mut s, &mut u, &mut u_inv, k, pi);
        swap_cols(&mut s, &mut v, &mut v_inv, k, pj);

        loop {
            let mut clean = true;
            for i in (k + 1)..rows {
                if s[i][k].is_zero() {
                    continue;
                }
                let q = -(&s[i][k] / &s[k][k]);
                if !q.is_zero() {
                    add_row(&mut s, &mut u, &mut u_inv, i, k, &q);
                }
                if !s[i][k].is_zero() {
                    // Remainder left; swap up the smaller entry and redo.
                    swap_rows(&mut s, &mut u, &mut u_inv, k, i);
                    clean = false;
                }
            }
            for j in (k + 1)..cols {
                if s[k][j].is_zero() {
                    continue;
                }
                let q = -(&s[k][j] / &s[k][k]);
                if !q.is_zero() {
                    add_col(&mut s, &mut v, &mut v_inv, j, k, &q);
                }
                if !s[k][j].is_zero() {
                    swap_cols(&mut s, &mut v, &mut v_inv, k, j);
                    clean = false;
                }
            }
            if clean
                && s[(k + 1)..rows].iter().all(|r| r[k].is_zero())
                && s[k][(k + 1)..cols].iter().all(|x| x.is_zero())
            {
                // Enforce divisibility of the rest of the block.
                let mut bad = None;
                'scan: for i in (k + 1)..rows {
                    for j in (k + 1)..cols {
                        if !(&s[i][j] % &s[k][k]).is_zero() {
                            bad = Some(i);
                            break 'scan;
                        }
                    }
                }
                match bad {
                    Some(i) => {
                        let one = BigInt::one();
                        add_row(&mut s, &mut u, &mut u_inv, k, i, &one);
                    }
                    None => break,
                }
            }
        }
        if s[k][k].is_negative() {
            negate_row(&mut s, &mut u, &mut u_inv, k);
        }
        k += 1;
    }
    let rank = (0..dim).take_while(|&i| !s[i][i].is_zero()).count();
    Snf { s, u, u_inv, v, v_inv, rank }
}

/// Boundary maps of the dual spine.
pub struct DualComplex {
    /// Rows: tetrahedra, columns: faces. Top tetrahedron minus bottom.
    pub d1: Mat,
    /// Rows: faces, columns: edges. Side 0 fan minus side 1 fan.
    pub d2: Mat,
}

impl DualComplex {
    pub fn new(tri: &VeeringTriangulation) -> DualComplex {
        let (nt, nf, ne) = (tri.num_tetrahedra(), tri.num_faces(), tri.num_edges());
        let mut d1 = zeros(nt, nf);
        for f in 0..nf {
            d1[tri.above_face(f)][f] += 1;
            d1[tri.below_face(f)][f] -= 1;
        }
        let mut d2 = zeros(nf, ne);
        for e in 0..ne {
            for (side, sgn) in [(0usize, 1i32), (1, -1)] {
                for spoke in &tri.edge(e).sides[side] {
                    d2[spoke.face][e] += sgn;
                }
            }
        }
        DualComplex { d1, d2 }
    }
}

/// Presentation of the first homology of the manifold.
pub struct H1 {
    pub betti: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<BigInt>,
    /// Cycles (as face chains) whose classes are a basis of the free part.
    pub basis_cycles: Vec<Vec<BigInt>>,
    num_faces: usize,
    r1: usize,
    r3: usize,
    v1_inv: Mat,
    u3: Mat,
    s3_diag: Vec<BigInt>,
    d1: Mat,
}

/// A class in first homology: free coordinates plus torsion coordinates
/// aligned with [`H1::torsion`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct H1Class {
    pub free: Vec<BigInt>,
    pub torsion: Vec<BigInt>,
}

impl H1 {
    pub fn new(complex: &DualComplex) -> H1 {
        let nf = if complex.d1.is_empty() { 0 } else { complex.d1[0].len() };
        let snf1 = smith(&complex.d1);
        let r1 = snf1.rank;
        let kernel_dim = nf - r1;

        // Express d2 in kernel coordinates: the last rows of v1_inv * d2.
        let y = mat_mul(&snf1.v_inv, &complex.d2);
        let c: Mat = y[r1..].to_vec();
        let snf3 = smith(&c);
        let r3 = snf3.rank;
        let betti = kernel_dim - r3;
        let torsion: Vec<BigInt> = (0..r3)
            .map(|i| snf3.diagonal(i).clone())
            .filter(|d| d > &BigInt::one())
            .collect();

        // Kernel basis: the last columns of v1.
        let mut basis_cycles = Vec::with_capacity(betti);
        let u3_inv = &snf3.u_inv;
        for j in 0..betti {
            // x = u3_inv * e_{r3 + j} in kernel coordinates.
            let x: Vec<BigInt> = (0..kernel_dim).map(|i| u3_inv[i][r3 + j].clone()).collect();
            let z: Vec<BigInt> = (0..nf)
                .map(|row| {
                    (0..kernel_dim)
                        .map(|i| &snf1.v[row][r1 + i] * &x[i])
                        .sum()
                })
                .collect();
            basis_cycles.push(z);
        }

        let s3_diag = (0..r3).map(|i| snf3.diagonal(i).clone()).collect();
        H1 {
            betti,
            torsion,
            basis_cycles,
            num_faces: nf,
            r1,
            r3,
            v1_inv: snf1.v_inv,
            u3: snf3.u,
            s3_diag,
            d1: complex.d1.clone(),
        }
    }

    pub fn is_cycle(&self, chain: &[BigInt]) -> bool {
        chain.len() == self.num_faces
            && mat_vec(&self.d1, chain).iter().all(|x| x.is_zero())
    }

    /// Class of a closed face chain.
    pub fn class_of_cycle(&self, chain: &[BigInt]) -> Result<H1Class> {
        if !self.is_cycle(chain) {
            return Err(Error::NotACycle("chain has nonzero dual boundary".into()));
        }
        let full = mat_vec(&self.v1_inv, chain);
        debug_assert!(full[..self.r1].iter().all(|x| x.is_zero()));
        let x = &full[self.r1..];
        let y = mat_vec(&self.u3, x);
        let free = y[self.r3..].to_vec();
        let mut torsion = Vec::new();
        for i in 0..self.r3 {
            if self.s3_diag[i] > BigInt::one() {
                torsion.push(y[i].mod_floor(&self.s3_diag[i]));
            }
        }
        Ok(H1Class { free, torsion })
    }

    /// Free-part coordinates of a rational weight vector on faces: the
    /// pairings with the basis cycles. This is the image of a relative
    /// second homology class under the intersection pairing.
    pub fn project_weights(&self, w: &[BigRational]) -> Vec<BigRational> {
        self.basis_cycles
            .iter()
            .map(|z| {
                z.iter()
                    .zip(w)
                    .map(|(zi, wi)| BigRational::from(zi.clone()) * wi)
                    .sum()
            })
            .collect()
    }
}

/// Push a stable loop off the branch locus into a closed dual cycle: at
/// each turn the loop crosses every spoke strictly above its departure
/// face on that side of the edge.
pub fn transversalize(tri: &VeeringTriangulation, sl: &StableLoop) -> Result<Vec<BigInt>> {
    let mut out = vec![BigInt::zero(); tri.num_faces()];
    for arc in sl.arcs() {
        let fe = tri.face(arc.face).edges[arc.slot as usize];
        let fan = &tri.edge(fe.edge).sides[fe.side as usize];
        if fe.fan_pos + 1 == fan.len() {
            return Err(Error::Convention(format!(
                "turn at face {} departs through a fan top",
                arc.face
            )));
        }
        for spoke in &fan[fe.fan_pos + 1..] {
            out[spoke.face] += 1;
        }
    }
    Ok(out)
}

/// Intersection pairing of a carried weight vector with a closed dual
/// cycle.
pub fn pairing(
    tri: &VeeringTriangulation,
    complex: &DualComplex,
    w: &[BigRational],
    cycle: &[BigInt],
) -> Result<BigRational> {
    if w.len() != tri.num_faces() {
        return Err(Error::DimensionMismatch(format!(
            "weight vector has length {}, expected {}",
            w.len(),
            tri.num_faces()
        )));
    }
    if w.iter().any(|x| x < &BigRational::zero()) {
        return Err(Error::NotCarried("negative weight".into()));
    }
    for e in 0..tri.num_edges() {
        let balance: BigRational = (0..tri.num_faces())
            .map(|f| BigRational::from(complex.d2[f][e].clone()) * &w[f])
            .sum();
        if !balance.is_zero() {
            return Err(Error::NotCarried(format!("branch equation fails at edge {}", e)));
        }
    }
    if cycle.len() != tri.num_faces()
        || !mat_vec(&complex.d1, cycle).iter().all(|x| x.is_zero())
    {
        return Err(Error::NotACycle("pairing against a non-cycle".into()));
    }
    Ok(w.iter()
        .zip(cycle)
        .map(|(wi, zi)| wi * BigRational::from(zi.clone()))
        .sum())
}
