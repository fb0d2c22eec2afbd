//! Command line front end: parse a triangulation, run one stage of the
//! pipeline and print newline-delimited JSON records (or short human
//! summaries with `--pretty`).

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use num::bigint::BigInt;
use num::rational::BigRational;
use serde_json::json;

use veerkit::boundary::{build_boundary, TriKind};
use veerkit::carried::{carried_cone, flip, is_fiber_class};
use veerkit::cones::DEFAULT_DIM_CAP;
use veerkit::duality::{run_duality_check, DualityOptions};
use veerkit::homology::{transversalize, DualComplex, H1};
use veerkit::stable_track::enumerate_stable_loops;
use veerkit::triangulation::{parse_explicit, parse_isosig};
use veerkit::VeeringTriangulation;

#[derive(Parser)]
#[command(name = "veerkit", version, about = "Veering triangulation toolkit")]
struct Cli {
    /// Human-readable summaries instead of JSON records.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

/// INPUT is a taut signature token ("isoSig_angles"), a path to a file
/// holding one, or a path to an explicit JSON triangulation.
#[derive(Subcommand)]
enum Command {
    /// Parse and fully validate a triangulation.
    Validate { input: String },
    /// Counts, canonical signature and the edge table.
    Info { input: String },
    /// Ladder decomposition of the cusp tori.
    Ladders { input: String },
    /// Cycles of the stable train track, minimal ones by default.
    StableLoops {
        input: String,
        /// Include non-minimal stable loops.
        #[arg(long)]
        all: bool,
    },
    /// First homology of the manifold.
    Homology { input: String },
    /// Extreme rays of the carried-surface weight cone.
    CarriedCone { input: String },
    /// Apply one upward flip to a carried weight vector.
    Flip {
        input: String,
        /// Tetrahedron to flip through.
        #[arg(long)]
        tetra: usize,
        /// Comma-separated face weights.
        #[arg(long)]
        weights: String,
    },
    /// Decide whether an integral carried class is a fiber class.
    IsFiber {
        input: String,
        /// Comma-separated face weights.
        #[arg(long)]
        weights: String,
    },
    /// Compare the cone of minimal stable loop classes with the dual of
    /// the carried cone.
    DualCheck {
        input: String,
        /// Trust that the triangulation is layered.
        #[arg(long)]
        assume_layered: bool,
        /// Certify layeredness by running the fiber test first.
        #[arg(long)]
        certify_layered: bool,
    },
    /// Fill an even family on a pseudo-Anosov star by cooriented
    /// segments.
    Blowup {
        /// Number of prongs of the star.
        #[arg(long)]
        prongs: usize,
        /// Comma-separated marked sector indices.
        #[arg(long, default_value = "")]
        family: String,
        /// Rotation shift (in sectors) the family must respect.
        #[arg(long, default_value_t = 0)]
        rotation: usize,
    },
    /// Run the duality check on every entry of a census file.
    Batch {
        file: PathBuf,
        #[arg(long)]
        assume_layered: bool,
        #[arg(long)]
        certify_layered: bool,
    },
}

/// Like `println!` but exits quietly when the consumer closes the pipe.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        if let Err(e) = writeln!(std::io::stdout(), $($arg)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }};
}

fn dim_cap() -> usize {
    std::env::var("VEERKIT_DIM_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_DIM_CAP)
}

fn load_triangulation(input: &str) -> Result<VeeringTriangulation> {
    let Ok(text) = fs::read_to_string(input) else {
        return parse_isosig(input.trim()).with_context(|| format!("cannot parse {input:?}"));
    };
    if text.trim_start().starts_with('{') {
        return Ok(parse_explicit(&text)?);
    }
    let token = census_tokens(&text)
        .into_iter()
        .next()
        .with_context(|| format!("{input}: no signature token"))?
        .1;
    Ok(parse_isosig(&token)?)
}

/// Non-comment tokens of a census file with their 1-based line numbers.
fn census_tokens(text: &str) -> Vec<(usize, String)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, line)| {
            let token = line.split('#').next().unwrap().trim();
            (!token.is_empty()).then(|| (i + 1, token.to_string()))
        })
        .collect()
}

fn parse_weights(s: &str, expected: usize) -> Result<Vec<BigInt>> {
    let w: Vec<BigInt> = s
        .split(',')
        .map(|x| BigInt::from_str(x.trim()).with_context(|| format!("bad weight {x:?}")))
        .collect::<Result<_>>()?;
    if w.len() != expected {
        bail!("expected {expected} weights, got {}", w.len());
    }
    Ok(w)
}

fn strings(v: &[BigRational]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn int_strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn kind_name(kind: TriKind) -> &'static str {
    match kind {
        TriKind::Upward => "upward",
        TriKind::Downward => "downward",
    }
}

fn h1_pretty(h1: &H1) -> String {
    let mut parts = Vec::new();
    match h1.betti {
        0 => {}
        1 => parts.push("Z".to_string()),
        b => parts.push(format!("Z^{b}")),
    }
    for t in &h1.torsion {
        parts.push(format!("Z/{t}"));
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Validate { input } => {
            match load_triangulation(input) {
                Ok(tri) => {
                    let record = json!({
                        "ok": true,
                        "num_tetrahedra": tri.num_tetrahedra(),
                        "num_faces": tri.num_faces(),
                        "num_edges": tri.num_edges(),
                        "num_cusps": tri.num_cusps(),
                    });
                    if cli.pretty {
                        out!(
                            "ok: {} tetrahedra, {} faces, {} edges, {} cusps",
                            tri.num_tetrahedra(),
                            tri.num_faces(),
                            tri.num_edges(),
                            tri.num_cusps()
                        );
                    } else {
                        out!("{record}");
                    }
                }
                Err(e) => {
                    if cli.pretty {
                        out!("invalid: {e:#}");
                    } else {
                        out!("{}", json!({ "ok": false, "error": format!("{e:#}") }));
                    }
                    return Ok(ExitCode::FAILURE);
                }
            }
        }
        Command::Info { input } => {
            let tri = load_triangulation(input)?;
            let edges: Vec<_> = (0..tri.num_edges())
                .map(|e| {
                    json!({
                        "degree": tri.edge(e).degree(),
                        "color": format!("{:?}", tri.edge_color(e)),
                    })
                })
                .collect();
            if cli.pretty {
                out!("signature: {}", tri.canonical_signature());
                out!(
                    "{} tetrahedra, {} faces, {} edges, {} cusps",
                    tri.num_tetrahedra(),
                    tri.num_faces(),
                    tri.num_edges(),
                    tri.num_cusps()
                );
                for e in 0..tri.num_edges() {
                    out!("edge {e}: degree {}, {:?}", tri.edge(e).degree(), tri.edge_color(e));
                }
            } else {
                out!(
                    "{}",
                    json!({
                        "signature": tri.canonical_signature(),
                        "num_tetrahedra": tri.num_tetrahedra(),
                        "num_faces": tri.num_faces(),
                        "num_edges": tri.num_edges(),
                        "num_cusps": tri.num_cusps(),
                        "edges": edges,
                    })
                );
            }
        }
        Command::Ladders { input } => {
            let tri = load_triangulation(input)?;
            let bc = build_boundary(&tri)?;
            for (c, cusp) in bc.cusps.iter().enumerate() {
                let ladders: Vec<_> = cusp
                    .ladders
                    .iter()
                    .map(|&l| {
                        let lad = &bc.ladders[l];
                        json!({
                            "kind": kind_name(lad.kind),
                            "triangles": lad.triangles.len(),
                            "left_pole": lad.left.switches.len(),
                            "right_pole": lad.right.switches.len(),
                        })
                    })
                    .collect();
                if cli.pretty {
                    out!("cusp {c}: {} ladders", cusp.ladders.len());
                    for &l in &cusp.ladders {
                        let lad = &bc.ladders[l];
                        out!(
                            "  {} with {} triangles, poles {}|{}",
                            kind_name(lad.kind),
                            lad.triangles.len(),
                            lad.left.switches.len(),
                            lad.right.switches.len()
                        );
                    }
                } else {
                    out!("{}", json!({ "cusp": c, "ladders": ladders }));
                }
            }
        }
        Command::StableLoops { input, all } => {
            let tri = load_triangulation(input)?;
            let h1 = H1::new(&DualComplex::new(&tri));
            for (i, sl) in enumerate_stable_loops(&tri, !all)?.iter().enumerate() {
                let class = h1.class_of_cycle(&transversalize(&tri, sl)?)?;
                let arcs: Vec<_> = sl.arcs().iter().map(|a| (a.face, a.slot)).collect();
                if cli.pretty {
                    out!(
                        "loop {i}: arcs {:?}, turns {:?}, class {:?}{}",
                        arcs,
                        sl.turn_edges(&tri),
                        class.free,
                        if sl.is_minimal(&tri) { "" } else { ", not minimal" }
                    );
                } else {
                    out!(
                        "{}",
                        json!({
                            "index": i,
                            "arcs": arcs,
                            "turns": sl.turn_edges(&tri),
                            "minimal": sl.is_minimal(&tri),
                            "class": int_strings(&class.free),
                            "torsion": int_strings(&class.torsion),
                        })
                    );
                }
            }
        }
        Command::Homology { input } => {
            let tri = load_triangulation(input)?;
            let h1 = H1::new(&DualComplex::new(&tri));
            if cli.pretty {
                out!("H1 = {}", h1_pretty(&h1));
            } else {
                out!(
                    "{}",
                    json!({
                        "betti": h1.betti,
                        "torsion": int_strings(&h1.torsion),
                        "basis_cycles": h1.basis_cycles.iter().map(|c| int_strings(c)).collect::<Vec<_>>(),
                    })
                );
            }
        }
        Command::CarriedCone { input } => {
            let tri = load_triangulation(input)?;
            let cone = carried_cone(&tri)?;
            if cli.pretty {
                out!("{} extreme rays in dimension {}", cone.rays().len(), tri.num_faces());
                for (i, ray) in cone.rays().iter().enumerate() {
                    out!("ray {i}: {}", strings(ray).join(" "));
                }
            } else {
                for (i, ray) in cone.rays().iter().enumerate() {
                    out!("{}", json!({ "index": i, "ray": strings(ray) }));
                }
            }
        }
        Command::Flip { input, tetra, weights } => {
            let tri = load_triangulation(input)?;
            let w = parse_weights(weights, tri.num_faces())?;
            let next = flip(&tri, *tetra, &w)?;
            if cli.pretty {
                out!("weights: {}", int_strings(&next).join(" "));
            } else {
                out!("{}", json!({ "tetrahedron": tetra, "weights": int_strings(&next) }));
            }
        }
        Command::IsFiber { input, weights } => {
            let tri = load_triangulation(input)?;
            let w = parse_weights(weights, tri.num_faces())?;
            let res = is_fiber_class(&tri, &w)?;
            if cli.pretty {
                use veerkit::carried::FiberResult::*;
                match &res {
                    Empty => out!("Empty: the class is zero"),
                    Fiber { cycle, .. } => out!("Fiber: flip cycle of length {}", cycle.len()),
                    NonFiber { stable_loop, .. } => out!(
                        "NonFiber: obstructing stable loop with {} arcs",
                        stable_loop.arcs().len()
                    ),
                }
            } else {
                out!("{}", serde_json::to_string(&res)?);
            }
        }
        Command::DualCheck { input, assume_layered, certify_layered } => {
            let tri = load_triangulation(input)?;
            let opts = DualityOptions {
                assume_layered: *assume_layered,
                certify_layered: *certify_layered,
                dim_cap: dim_cap(),
            };
            let report = run_duality_check(&tri, &opts)?;
            if cli.pretty {
                out!(
                    "{}: {} (layered {}), {} carried rays, {} loops, {} dual rays",
                    report.id,
                    report.verdict,
                    report.layered,
                    report.carried_rays.len(),
                    report.loops.len(),
                    report.dual_rays.len()
                );
                for w in &report.witnesses {
                    out!("  witness: {w}");
                }
            } else {
                out!("{}", serde_json::to_string(&report)?);
            }
            if report.verdict != "EQUAL" && report.layered != "unknown" {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Blowup { prongs, family, rotation } => {
            let sectors: Vec<usize> = family
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| t.trim().parse().with_context(|| format!("bad sector {t:?}")))
                .collect::<Result<_>>()?;
            let filling = veerkit::blowup::fill_even_family(*prongs, &sectors, *rotation)?;
            if cli.pretty {
                out!("filled with {} segments", filling.segments.len());
                for s in &filling.segments {
                    out!(
                        "  point {} to point {} across edge {} (ordinal {})",
                        s.from, s.to, s.edge, s.ordinal
                    );
                }
            } else {
                out!("{}", serde_json::to_string(&filling)?);
            }
        }
        Command::Batch { file, assume_layered, certify_layered } => {
            let text = fs::read_to_string(file).with_context(|| format!("{}", file.display()))?;
            let opts = DualityOptions {
                assume_layered: *assume_layered,
                certify_layered: *certify_layered,
                dim_cap: dim_cap(),
            };
            let mut failed = false;
            for (line, token) in census_tokens(&text) {
                let outcome = parse_isosig(&token)
                    .and_then(|tri| run_duality_check(&tri, &opts));
                match outcome {
                    Ok(report) => {
                        if cli.pretty {
                            out!("{}: {} (layered {})", token, report.verdict, report.layered);
                        } else {
                            out!("{}", serde_json::to_string(&report)?);
                        }
                        if report.verdict != "EQUAL" && report.layered != "unknown" {
                            failed = true;
                        }
                    }
                    Err(e) => {
                        if cli.pretty {
                            out!("{token}: error: {e}");
                        } else {
                            out!(
                                "{}",
                                json!({ "line": line, "token": token, "error": e.to_string() })
                            );
                        }
                        failed = true;
                    }
                }
            }
            if failed {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
