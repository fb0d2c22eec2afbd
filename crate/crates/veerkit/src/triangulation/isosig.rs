//! Isomorphism signatures for taut triangulations.
//!
//! A signature has the form `name_angles`: a base-64 encoding of the
//! gluing table in a canonical labeling, an underscore, then one angle
//! digit (0, 1 or 2) per tetrahedron in that labeling. The name encodes,
//! for a breadth-first canonical relabeling: the tetrahedron count, a
//! 2-bit type per processed facet (1 = leads to a new tetrahedron, glued
//! by the identity after relabeling; 2 = glued to an already-seen one),
//! destination indices for type 2 entries, and gluing permutations as
//! lexicographic indices. The canonical form is the minimum over all
//! starting tetrahedra and all 24 starting labelings.

use super::{edge_index, opposite_edge, RawTriangulation, VeeringTriangulation, EDGE_VERTICES};
use crate::perm::Perm4;
use crate::{Error, Result};

const SCHAR: &[u8; 64] = b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789+-";

fn schar_value(c: u8) -> Result<u64> {
    SCHAR
        .iter()
        .position(|&s| s == c)
        .map(|v| v as u64)
        .ok_or_else(|| Error::Signature(format!("invalid signature character {:?}", c as char)))
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn next(&mut self) -> Result<u64> {
        let c = *self
            .bytes
            .get(self.pos)
            .ok_or_else(|| Error::Signature("signature truncated".into()))?;
        self.pos += 1;
        schar_value(c)
    }

    fn nat(&mut self, width: usize) -> Result<u64> {
        let mut out = 0u64;
        for i in 0..width {
            out |= self.next()? << (6 * i);
        }
        Ok(out)
    }
}

fn width_for(n: usize) -> usize {
    let mut width = 1;
    while (n as u64) >= 1u64 << (6 * width) {
        width += 1;
    }
    width
}

/// Parse a signature and build the veering triangulation.
pub fn parse_isosig(sig: &str) -> Result<VeeringTriangulation> {
    let (name, angles) = sig
        .split_once('_')
        .ok_or_else(|| Error::Signature("signature has no angle part".into()))?;
    let mut r = Reader { bytes: name.as_bytes(), pos: 0 };

    let first = r.next()?;
    let (n, width) = if first < 63 {
        (first as usize, 1)
    } else {
        let width = r.next()? as usize;
        if width == 0 || width > 4 {
            return Err(Error::Signature("bad size width".into()));
        }
        (r.nat(width)? as usize, width)
    };
    if n == 0 {
        return Err(Error::Signature("empty triangulation".into()));
    }

    // Facet types, packed three per character.
    let mut types = Vec::new();
    let mut covered = 0usize;
    while covered < 4 * n {
        let c = r.next()?;
        for shift in [0, 2, 4] {
            if covered >= 4 * n {
                break;
            }
            let t = (c >> shift) & 3;
            covered += if t == 0 { 1 } else { 2 };
            types.push(t);
        }
    }
    if covered != 4 * n {
        return Err(Error::Signature("facet types do not cover the facet count".into()));
    }
    let n_type2 = types.iter().filter(|&&t| t == 2).count();
    let mut dests = Vec::with_capacity(n_type2);
    for _ in 0..n_type2 {
        dests.push(r.nat(width)? as usize);
    }
    let mut perms = Vec::with_capacity(n_type2);
    for _ in 0..n_type2 {
        perms.push(Perm4::from_lex_index(r.next()? as usize)?);
    }
    if r.pos != name.len() {
        return Err(Error::Signature("trailing characters in signature".into()));
    }

    // Replay the canonical gluing walk.
    let mut gluings = vec![[None::<(usize, Perm4)>; 4]; n];
    let mut next_new = 1usize;
    let mut type_it = types.into_iter();
    let mut dest_it = dests.into_iter();
    let mut perm_it = perms.into_iter();
    for t in 0..n {
        for k in 0..4u8 {
            if gluings[t][k as usize].is_some() {
                continue;
            }
            match type_it.next() {
                Some(1) => {
                    if next_new >= n {
                        return Err(Error::Signature("too many new tetrahedra".into()));
                    }
                    let t2 = next_new;
                    next_new += 1;
                    gluings[t][k as usize] = Some((t2, Perm4::IDENTITY));
                    gluings[t2][k as usize] = Some((t, Perm4::IDENTITY));
                }
                Some(2) => {
                    let t2 = dest_it.next().expect("counted");
                    let sigma = perm_it.next().expect("counted");
                    if t2 >= next_new {
                        return Err(Error::Signature(format!(
                            "destination {} is not yet seen",
                            t2
                        )));
                    }
                    let k2 = sigma.apply(k);
                    if gluings[t2][k2 as usize].is_some() {
                        return Err(Error::Signature("facet glued twice".into()));
                    }
                    gluings[t][k as usize] = Some((t2, sigma));
                    gluings[t2][k2 as usize] = Some((t, sigma.inverse()));
                }
                Some(0) => {
                    return Err(Error::Signature("boundary facets are not supported".into()));
                }
                _ => return Err(Error::Signature("malformed facet types".into())),
            }
        }
    }
    if next_new != n {
        return Err(Error::Signature("signature does not reach every tetrahedron".into()));
    }
    let gluings: Vec<[(usize, Perm4); 4]> = gluings
        .into_iter()
        .map(|row| {
            let mut out = [(0usize, Perm4::IDENTITY); 4];
            for (k, g) in row.into_iter().enumerate() {
                out[k] = g.expect("all facets glued");
            }
            out
        })
        .collect();

    if angles.len() != n {
        return Err(Error::Signature(format!(
            "expected {} angle digits, found {}",
            n,
            angles.len()
        )));
    }
    let mut pi_pair = Vec::with_capacity(n);
    for c in angles.bytes() {
        if !(b'0'..=b'2').contains(&c) {
            return Err(Error::Signature(format!("bad angle digit {:?}", c as char)));
        }
        pi_pair.push(c - b'0');
    }

    let raw = RawTriangulation::new(gluings, pi_pair)?;
    raw.to_veering(false)
}

/// One canonical-labeling candidate: the rendered name and the relabeling
/// data needed for the angle digits.
fn render_candidate(tri: &RawTriangulation, start: usize, p0: Perm4) -> (Vec<u8>, Vec<usize>, Vec<Perm4>) {
    let n = tri.num_tetrahedra();
    let mut image = vec![None::<usize>; n];
    let mut vmap = vec![Perm4::IDENTITY; n];
    let mut order = vec![start];
    image[start] = Some(0);
    vmap[start] = p0;
    let mut processed = vec![[false; 4]; n];
    let mut types = Vec::new();
    let mut dests = Vec::new();
    let mut perms = Vec::new();

    let mut i = 0;
    while i < order.len() {
        let t = order[i];
        let rho = vmap[t];
        let rho_inv = rho.inverse();
        for k_new in 0..4u8 {
            let k_old = rho_inv.apply(k_new);
            if processed[t][k_old as usize] {
                continue;
            }
            let (t2, sigma) = tri.gluing(t, k_old);
            processed[t][k_old as usize] = true;
            processed[t2][sigma.apply(k_old) as usize] = true;
            if image[t2].is_none() {
                image[t2] = Some(order.len());
                vmap[t2] = sigma.inverse().then(rho);
                order.push(t2);
                types.push(1u8);
            } else {
                types.push(2u8);
                dests.push(image[t2].unwrap());
                let tau = rho_inv.then(sigma).then(vmap[t2]);
                perms.push(tau.lex_index());
            }
        }
        i += 1;
    }
    debug_assert_eq!(order.len(), n);

    let width = width_for(n);
    let mut out = Vec::new();
    if n < 63 {
        out.push(SCHAR[n]);
    } else {
        out.push(SCHAR[63]);
        out.push(SCHAR[width]);
        let mut v = n as u64;
        for _ in 0..width {
            out.push(SCHAR[(v & 63) as usize]);
            v >>= 6;
        }
    }
    for chunk in types.chunks(3) {
        let mut v = 0u8;
        for (j, &t) in chunk.iter().enumerate() {
            v |= t << (2 * j);
        }
        out.push(SCHAR[v as usize]);
    }
    for &d in &dests {
        let mut v = d as u64;
        for _ in 0..width {
            out.push(SCHAR[(v & 63) as usize]);
            v >>= 6;
        }
    }
    for &p in &perms {
        out.push(SCHAR[p]);
    }
    (out, order, vmap)
}

fn transported_digit(tri: &RawTriangulation, t: usize, rho: Perm4) -> u8 {
    let d = tri.pi_pair()[t];
    let [a, b] = EDGE_VERTICES[d as usize];
    let e = edge_index(rho.apply(a), rho.apply(b));
    if EDGE_VERTICES[e as usize].contains(&0) {
        EDGE_VERTICES[e as usize][1] - 1
    } else {
        EDGE_VERTICES[opposite_edge(e) as usize][1] - 1
    }
}

/// Canonical signature of a taut triangulation: the lexicographically
/// least name over all starts and labelings, with ties broken by the
/// least angle string.
pub fn encode_isosig(tri: &VeeringTriangulation) -> String {
    let raw = tri.raw();
    let n = raw.num_tetrahedra();
    let mut best: Option<(Vec<u8>, String)> = None;
    for start in 0..n {
        for &p0 in Perm4::all() {
            let (name, order, vmap) = render_candidate(raw, start, p0);
            if let Some((b, _)) = &best {
                if name > *b {
                    continue;
                }
            }
            let mut angles = String::with_capacity(n);
            for &t in &order {
                angles.push(char::from(b'0' + transported_digit(raw, t, vmap[t])));
            }
            match &best {
                Some((b, a)) if name == *b && angles >= *a => {}
                _ => best = Some((name, angles)),
            }
        }
    }
    let (name, angles) = best.expect("at least one labeling");
    format!("{}_{}", String::from_utf8(name).expect("base64 chars"), angles)
}

impl VeeringTriangulation {
    /// Canonical signature; equal signatures mean combinatorially
    /// isomorphic taut triangulations.
    pub fn canonical_signature(&self) -> String {
        encode_isosig(self)
    }
}
