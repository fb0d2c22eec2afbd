//! Exact rational polyhedral cones via the double description method.
//!
//! A cone is kept in both representations at once: extreme rays plus a
//! lineality basis, and inequalities plus equations. Construction from
//! either side runs the double description algorithm, so containment,
//! equality and dualization are all exact.

use crate::{Error, Result};
use num::rational::BigRational;
use num::{BigInt, Integer, One, Signed, Zero};

/// Default guard on the ambient dimension of `dual`.
pub const DEFAULT_DIM_CAP: usize = 12;

pub fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

/// Scale to a primitive integer vector, keeping the direction.
pub fn primitive(v: &[BigRational]) -> Vec<BigRational> {
    let mut denom_lcm = BigInt::one();
    for x in v {
        denom_lcm = denom_lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * &denom_lcm / x.denom()).collect();
    let mut g = BigInt::zero();
    for i in &ints {
        g = g.gcd(i);
    }
    if g.is_zero() {
        return v.to_vec();
    }
    ints.into_iter().map(|i| BigRational::from_integer(i / &g)).collect()
}

/// Row reduce; returns the reduced rows (zero rows dropped) and the pivot
/// column of each.
fn rref(rows: &[Vec<BigRational>]) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        let Some(p) = (row..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let pivot = m[row][c].clone();
        for x in &mut m[row] {
            *x /= &pivot;
        }
        for i in 0..m.len() {
            if i != row && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for cc in 0..cols {
                    let s = &m[row][cc] * &f;
                    m[i][cc] -= s;
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    m.truncate(row);
    (m, pivots)
}

pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    rref(rows).1.len()
}

/// Basis of the right kernel of the given rows, in `dim` variables.
pub fn kernel_basis(rows: &[Vec<BigRational>], dim: usize) -> Vec<Vec<BigRational>> {
    let (m, pivots) = rref(rows);
    let mut out = Vec::new();
    for f in 0..dim {
        if pivots.contains(&f) {
            continue;
        }
        let mut v = vec![BigRational::zero(); dim];
        v[f] = BigRational::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -m[i][f].clone();
        }
        out.push(primitive(&v));
    }
    out
}

#[derive(Clone, PartialEq, Eq)]
struct Tight(Vec<u64>);

impl Tight {
    fn new(m: usize) -> Self {
        Tight(vec![0; m.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn inter(&self, o: &Tight) -> Tight {
        Tight(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }

    fn is_subset(&self, o: &Tight) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

struct DdState {
    dim: usize,
    rays: Vec<(Vec<BigRational>, Tight)>,
    lineality: Vec<Vec<BigRational>>,
    processed: Vec<(Vec<BigRational>, bool)>,
    total: usize,
}

impl DdState {
    fn new(dim: usize, total: usize) -> Self {
        let mut lineality = Vec::with_capacity(dim);
        for i in 0..dim {
            let mut v = vec![BigRational::zero(); dim];
            v[i] = BigRational::one();
            lineality.push(v);
        }
        DdState { dim, rays: Vec::new(), lineality, processed: Vec::new(), total }
    }

    fn tight_of(&self, v: &[BigRational]) -> Tight {
        let mut t = Tight::new(self.total);
        for (i, (a, _)) in self.processed.iter().enumerate() {
            if dot(a, v).is_zero() {
                t.set(i);
            }
        }
        t
    }

    fn step(&mut self, a: Vec<BigRational>, is_eq: bool) {
        let j = self.processed.len();

        // If the constraint is nonzero on the lineality space, pivot: one
        // lineality vector absorbs it and the rest are projected onto the
        // constraint's hyperplane. For an inequality the pivot vector
        // survives as a ray, tight on every earlier constraint.
        if let Some(p) = self.lineality.iter().position(|v| !dot(&a, v).is_zero()) {
            let mut v0 = self.lineality.remove(p);
            let mut av0 = dot(&a, &v0);
            if !is_eq && av0.is_negative() {
                for x in &mut v0 {
                    *x = -x.clone();
                }
                av0 = -av0;
            }
            for v in &mut self.lineality {
                let c = dot(&a, v) / &av0;
                if !c.is_zero() {
                    for (x, y) in v.iter_mut().zip(&v0) {
                        *x -= &c * y;
                    }
                }
            }
            for (r, t) in &mut self.rays {
                let c = dot(&a, r.as_slice()) / &av0;
                if !c.is_zero() {
                    for (x, y) in r.iter_mut().zip(&v0) {
                        *x -= &c * y;
                    }
                    *r = primitive(r);
                }
                t.set(j);
            }
            if !is_eq {
                let mut t = Tight::new(self.total);
                for i in 0..j {
                    t.set(i);
                }
                self.rays.push((primitive(&v0), t));
            }
            self.processed.push((a, is_eq));
            return;
        }

        // Split rays by the sign of the constraint.
        let values: Vec<BigRational> = self.rays.iter().map(|(r, _)| dot(&a, r)).collect();
        let plus: Vec<usize> = (0..values.len()).filter(|&i| values[i].is_positive()).collect();
        let minus: Vec<usize> = (0..values.len()).filter(|&i| values[i].is_negative()).collect();

        let mut new_rays = Vec::new();
        self.processed.push((a, is_eq));
        let lin = self.lineality.len();
        for &ip in &plus {
            for &im in &minus {
                let common = self.rays[ip].1.inter(&self.rays[im].1);
                // Necessary rank for adjacency, counted over all
                // processed constraints.
                if common.count() + lin + 2 < self.dim {
                    continue;
                }
                let adjacent = self
                    .rays
                    .iter()
                    .enumerate()
                    .all(|(k, (_, t))| k == ip || k == im || !common.is_subset(t));
                if !adjacent {
                    continue;
                }
                let (rp, rm) = (&self.rays[ip].0, &self.rays[im].0);
                let v: Vec<BigRational> = rp
                    .iter()
                    .zip(rm)
                    .map(|(xp, xm)| &values[ip] * xm - &values[im] * xp)
                    .collect();
                let v = primitive(&v);
                let t = self.tight_of(&v);
                new_rays.push((v, t));
            }
        }

        let mut kept = Vec::new();
        for (i, (r, mut t)) in std::mem::take(&mut self.rays).into_iter().enumerate() {
            if values[i].is_zero() {
                t.set(j);
                kept.push((r, t));
            } else if values[i].is_positive() && !is_eq {
                kept.push((r, t));
            }
        }
        kept.extend(new_rays);
        self.rays = kept;
    }
}

fn double_description(
    dim: usize,
    eqs: &[Vec<BigRational>],
    ineqs: &[Vec<BigRational>],
) -> Result<(Vec<Vec<BigRational>>, Vec<Vec<BigRational>>)> {
    for v in eqs.iter().chain(ineqs) {
        if v.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "constraint length {} in dimension {}",
                v.len(),
                dim
            )));
        }
    }
    let mut st = DdState::new(dim, eqs.len() + ineqs.len());
    for a in eqs {
        st.step(a.clone(), true);
    }
    for a in ineqs {
        st.step(a.clone(), false);
    }
    let mut rays: Vec<Vec<BigRational>> = st.rays.into_iter().map(|(r, _)| r).collect();
    rays.sort();
    rays.dedup();
    let (lin, _) = rref(&st.lineality);
    let lineality: Vec<Vec<BigRational>> = lin.iter().map(|v| primitive(v)).collect();
    Ok((rays, lineality))
}

/// A closed convex rational polyhedral cone.
#[derive(Clone, Debug)]
pub struct Cone {
    dim: usize,
    rays: Vec<Vec<BigRational>>,
    lineality: Vec<Vec<BigRational>>,
    ineqs: Vec<Vec<BigRational>>,
    eqs: Vec<Vec<BigRational>>,
}

impl Cone {
    pub fn from_inequalities(
        dim: usize,
        ineqs: Vec<Vec<BigRational>>,
        eqs: Vec<Vec<BigRational>>,
    ) -> Result<Cone> {
        if dim == 0 {
            return Err(Error::Schema("cone in dimension zero".into()));
        }
        let (rays, lineality) = double_description(dim, &eqs, &ineqs)?;
        Ok(Cone { dim, rays, lineality, ineqs, eqs })
    }

    /// The cone generated by the given rays. Zero vectors are dropped.
    pub fn from_rays(dim: usize, rays: &[Vec<BigRational>]) -> Result<Cone> {
        if dim == 0 {
            return Err(Error::Schema("cone in dimension zero".into()));
        }
        let mut gens: Vec<Vec<BigRational>> = Vec::new();
        for r in rays {
            if r.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "ray length {} in dimension {}",
                    r.len(),
                    dim
                )));
            }
            if r.iter().any(|x| !x.is_zero()) {
                gens.push(primitive(r));
            }
        }
        gens.sort();
        gens.dedup();
        // Polar cone: its rays are our facet normals, its lineality our
        // equations. A second run turns those back into extreme rays.
        let (polar_rays, polar_lin) = double_description(dim, &[], &gens)?;
        let (rays, lineality) = double_description(dim, &polar_lin, &polar_rays)?;
        Ok(Cone { dim, rays, lineality, ineqs: polar_rays, eqs: polar_lin })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<BigRational>] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vec<BigRational>] {
        &self.lineality
    }

    pub fn inequalities(&self) -> &[Vec<BigRational>] {
        &self.ineqs
    }

    pub fn equations(&self) -> &[Vec<BigRational>] {
        &self.eqs
    }

    pub fn is_trivial(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn contains(&self, x: &[BigRational]) -> bool {
        x.len() == self.dim
            && self.eqs.iter().all(|a| dot(a, x).is_zero())
            && self.ineqs.iter().all(|a| !dot(a, x).is_negative())
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        self.dim == other.dim
            && other.rays.iter().all(|r| self.contains(r))
            && other.lineality.iter().all(|v| {
                self.eqs.iter().chain(&self.ineqs).all(|a| dot(a, v).is_zero())
            })
    }

    pub fn equals(&self, other: &Cone) -> bool {
        self.contains_cone(other) && other.contains_cone(self)
    }

    pub fn dual_with_cap(&self, cap: usize) -> Result<Cone> {
        if self.dim > cap {
            return Err(Error::DimensionGuard { dim: self.dim, cap });
        }
        Cone::from_inequalities(self.dim, self.rays.clone(), self.lineality.clone())
    }

    pub fn dual(&self) -> Result<Cone> {
        self.dual_with_cap(DEFAULT_DIM_CAP)
    }

    /// Check internal consistency: rays and lineality satisfy the
    /// constraints, the lineality basis is independent, rays are distinct,
    /// nonzero, primitive and extreme. Extremeness is the tight rank
    /// test: the constraints vanishing on an extreme ray have rank one
    /// less than the pointed dimension allows.
    pub fn certify(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Structure(msg));
        for v in self.rays.iter().chain(&self.lineality) {
            if v.len() != self.dim {
                return fail("stored vector of wrong length".into());
            }
        }
        for (i, r) in self.rays.iter().enumerate() {
            if r.iter().all(|x| x.is_zero()) {
                return fail(format!("ray {} is zero", i));
            }
            if primitive(r) != *r {
                return fail(format!("ray {} is not primitive", i));
            }
            if !self.contains(r) {
                return fail(format!("ray {} violates the constraints", i));
            }
        }
        for w in self.rays.windows(2) {
            if w[0] == w[1] {
                return fail("duplicate ray".into());
            }
        }
        for (i, v) in self.lineality.iter().enumerate() {
            if self.eqs.iter().chain(&self.ineqs).any(|a| !dot(a, v).is_zero()) {
                return fail(format!("lineality vector {} violates a constraint", i));
            }
        }
        if rank(&self.lineality) != self.lineality.len() {
            return fail("lineality basis is dependent".into());
        }
        let lin = self.lineality.len();
        for (i, r) in self.rays.iter().enumerate() {
            let tight: Vec<Vec<BigRational>> = self
                .eqs
                .iter()
                .chain(self.ineqs.iter().filter(|a| dot(a, r).is_zero()))
                .cloned()
                .collect();
            if rank(&tight) != self.dim - lin - 1 {
                return fail(format!("ray {} fails the extremeness rank test", i));
            }
        }
        Ok(())
    }
}
