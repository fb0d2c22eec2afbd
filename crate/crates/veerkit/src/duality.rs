//! The duality check: the dual of the projected carried cone against the
//! cone spanned by minimal stable loop classes.

use crate::carried::{carried_cone, is_fiber_class, to_rationals, FiberResult};
use crate::cones::{dot, Cone, DEFAULT_DIM_CAP};
use crate::homology::{transversalize, DualComplex, H1};
use crate::stable_track::enumerate_stable_loops;
use crate::triangulation::VeeringTriangulation;
use crate::Result;
use num::rational::BigRational;
use num::{BigInt, Zero};
use serde::Serialize;

#[derive(Clone, Copy, Debug)]
pub struct DualityOptions {
    /// Trust the caller that the triangulation is layered.
    pub assume_layered: bool,
    /// Try to certify layeredness by running the fiber test on an
    /// interior carried vector.
    pub certify_layered: bool,
    pub dim_cap: usize,
}

impl Default for DualityOptions {
    fn default() -> Self {
        DualityOptions { assume_layered: false, certify_layered: false, dim_cap: DEFAULT_DIM_CAP }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LoopReport {
    /// (face, slot, edge) per turn.
    pub arcs: Vec<(usize, u8, usize)>,
    pub class: Vec<String>,
    pub torsion: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub id: String,
    pub num_tetrahedra: usize,
    pub num_cusps: usize,
    pub betti: usize,
    pub torsion: Vec<String>,
    /// "assumed", "certified" or "unknown". The verdict only counts as a
    /// theorem check when this is not "unknown".
    pub layered: String,
    /// Extreme rays of the carried cone, as face weight vectors.
    pub carried_rays: Vec<Vec<String>>,
    /// Their homology classes.
    pub carried_classes: Vec<Vec<String>>,
    pub loops: Vec<LoopReport>,
    /// Pairing matrix, loops by carried rays.
    pub pairings: Vec<Vec<String>>,
    /// Extreme rays of the dual of the projected carried cone.
    pub dual_rays: Vec<Vec<String>>,
    pub verdict: String,
    pub witnesses: Vec<String>,
}

fn fmt_vec(v: &[BigRational]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn fmt_ints(v: &[BigInt]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

pub fn run_duality_check(
    tri: &VeeringTriangulation,
    opts: &DualityOptions,
) -> Result<DualityReport> {
    let id = tri.canonical_signature();
    let complex = DualComplex::new(tri);
    let h1 = H1::new(&complex);
    let b = h1.betti;

    let cone_w = carried_cone(tri)?;
    let rays = cone_w.rays().to_vec();

    let layered = if opts.assume_layered {
        "assumed".to_string()
    } else if opts.certify_layered && !rays.is_empty() {
        let mut interior = vec![BigInt::zero(); tri.num_faces()];
        for r in &rays {
            for (i, x) in r.iter().enumerate() {
                interior[i] += x.numer();
            }
        }
        match is_fiber_class(tri, &interior)? {
            FiberResult::Fiber { .. } => "certified".to_string(),
            _ => "unknown".to_string(),
        }
    } else {
        "unknown".to_string()
    };

    let loops = enumerate_stable_loops(tri, true)?;
    let mut loop_reports = Vec::with_capacity(loops.len());
    let mut loop_classes: Vec<Vec<BigRational>> = Vec::with_capacity(loops.len());
    let mut pairings = Vec::with_capacity(loops.len());
    for sl in &loops {
        let word = transversalize(tri, sl)?;
        let class = h1.class_of_cycle(&word)?;
        let row: Vec<String> = rays
            .iter()
            .map(|r| dot(&to_rationals(&word), r).to_string())
            .collect();
        pairings.push(row);
        loop_classes.push(to_rationals(&class.free));
        loop_reports.push(LoopReport {
            arcs: sl
                .arcs()
                .iter()
                .zip(sl.turn_edges(tri))
                .map(|(a, e)| (a.face, a.slot, e))
                .collect(),
            class: fmt_ints(&class.free),
            torsion: fmt_ints(&class.torsion),
        });
    }

    let mut witnesses = Vec::new();
    let mut dual_rays_fmt = Vec::new();
    let verdict;
    if b == 0 {
        verdict = "FAIL";
        witnesses.push("first homology has rank zero".to_string());
    } else {
        let carried_classes: Vec<Vec<BigRational>> =
            rays.iter().map(|r| h1.project_weights(r)).collect();
        let cone_a = Cone::from_rays(b, &carried_classes)?;
        let cone_b = Cone::from_rays(b, &loop_classes)?;
        let dual_a = cone_a.dual_with_cap(opts.dim_cap)?;
        dual_rays_fmt = dual_a.rays().iter().map(|r| fmt_vec(r)).collect();
        if loops.is_empty() {
            verdict = "FAIL";
            witnesses.push("no minimal stable loops".to_string());
        } else if dual_a.equals(&cone_b) {
            verdict = "EQUAL";
        } else {
            verdict = "FAIL";
            for r in dual_a.rays() {
                if !cone_b.contains(r) {
                    witnesses.push(format!(
                        "dual ray [{}] is not spanned by loop classes",
                        fmt_vec(r).join(", ")
                    ));
                }
            }
            for r in cone_b.rays() {
                if !dual_a.contains(r) {
                    witnesses.push(format!(
                        "loop class [{}] lies outside the dual cone",
                        fmt_vec(r).join(", ")
                    ));
                }
            }
            if witnesses.is_empty() {
                witnesses.push("cones differ in lineality".to_string());
            }
        }
    }

    let carried_classes_fmt =
        rays.iter().map(|r| fmt_vec(&h1.project_weights(r))).collect();
    Ok(DualityReport {
        id,
        num_tetrahedra: tri.num_tetrahedra(),
        num_cusps: tri.num_cusps(),
        betti: b,
        torsion: fmt_ints(&h1.torsion),
        layered,
        carried_rays: rays.iter().map(|r| fmt_vec(r)).collect(),
        carried_classes: carried_classes_fmt,
        loops: loop_reports,
        pairings,
        dual_rays: dual_rays_fmt,
        verdict: verdict.to_string(),
        witnesses,
    })
}
