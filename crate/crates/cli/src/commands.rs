//! One function per subcommand. Each returns the process exit code on
//! success (0 for plain success, 1 for a failed verification) and
//! [`AppError`] otherwise.

use num_complex::Complex64;
use serde::Deserialize;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use harmonic_curves::circle::{gon_vertices, verify_proposition, VerificationReport};
use harmonic_curves::necklace::build_necklace;
use harmonic_curves::poly::{Poly, RootMultiset};
use harmonic_curves::render::{render_svg, Scene};
use harmonic_curves::rng::{unit_circle_roots, XorShift64Star};
use harmonic_curves::tangents::circle_tangency_test;
use harmonic_curves::tracer::{asymptote_fan, asymptote_validity_radius, matching, trace, Window};

use crate::args::{
    DemoArgs, MatchingArgs, NecklaceArgs, RenderArgs, TangentsArgs, TraceArgs, TraceFormat,
    VerifyArgs,
};
use crate::json;
use crate::{usage, AppError};

/// On-disk roots format: `{"roots": [[re, im], ...], "multiplicities": [...]?}`.
#[derive(Deserialize)]
struct RootsFile {
    roots: Vec<[f64; 2]>,
    #[serde(default)]
    multiplicities: Option<Vec<u32>>,
}

fn load_roots_file(path: &Path) -> Result<RootMultiset, AppError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let file: RootsFile = serde_json::from_str(&text)
        .map_err(|e| usage(format!("{} is not a valid roots file: {e}", path.display())))?;
    let roots: Vec<Complex64> = file
        .roots
        .iter()
        .map(|&[re, im]| Complex64::new(re, im))
        .collect();
    let multiset = match file.multiplicities {
        Some(ms) => RootMultiset::with_multiplicities(&roots, &ms)?,
        None => RootMultiset::new(&roots)?,
    };
    Ok(multiset)
}

/// Resolve the three mutually exclusive instance sources.
pub fn load_source(
    roots: &Option<PathBuf>,
    roots_angles: &Option<Vec<f64>>,
    random: &Option<usize>,
    seed: u64,
) -> Result<RootMultiset, AppError> {
    if let Some(path) = roots {
        return load_roots_file(path);
    }
    if let Some(angles) = roots_angles {
        let zs: Vec<Complex64> = angles
            .iter()
            .map(|&a| Complex64::from_polar(1.0, a))
            .collect();
        return Ok(RootMultiset::new(&zs)?);
    }
    if let Some(n) = random {
        return Ok(RootMultiset::new(&unit_circle_roots(*n, seed))?);
    }
    Err(usage(
        "an instance is required: --roots FILE, --roots-angles ..., or --random N",
    ))
}

fn verify_report_json(
    n: usize,
    theta: f64,
    tol: f64,
    report: &VerificationReport,
    signed: bool,
) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"n\": {n},");
    let _ = writeln!(out, "  \"theta\": {},", json::num(theta));
    let _ = writeln!(out, "  \"tolerance\": {},", json::num(tol));
    let _ = writeln!(out, "  \"pass\": {},", report.pass);
    let _ = writeln!(out, "  \"omega\": {},", json::angle(report.omega, signed));
    let _ = writeln!(out, "  \"max_distance\": {},", json::num(report.max_distance));
    out.push_str("  \"zeros\": [\n");
    for (i, z) in report.zeros.zeros.iter().enumerate() {
        let _ = write!(
            out,
            "    {{\"angle\": {}, \"residual\": {}, \"multiplicity\": {}}}",
            json::angle(z.angle, signed),
            json::num(z.residual),
            z.multiplicity
        );
        out.push_str(if i + 1 < report.zeros.zeros.len() { ",\n" } else { "\n" });
    }
    out.push_str("  ],\n");
    let _ = writeln!(out, "  \"predicted\": {},", json::angles(&report.predicted, signed));
    let _ = writeln!(
        out,
        "  \"unmatched_predicted\": {},",
        json::angles(&report.unmatched_predicted, signed)
    );
    let _ = writeln!(
        out,
        "  \"unmatched_found\": {}",
        json::angles(&report.unmatched_found, signed)
    );
    out.push_str("}\n");
    out
}

pub fn verify(a: &VerifyArgs) -> Result<i32, AppError> {
    if let Some(batch) = a.batch {
        return verify_batch(batch, a.seed, a.tol);
    }
    let roots = load_source(&a.source.roots, &a.source.roots_angles, &a.source.random, a.seed)?;
    let theta = a
        .theta
        .ok_or_else(|| usage("--theta is required unless --batch is given"))?;
    let report = verify_proposition(&roots, theta, a.tol)?;
    print!(
        "{}",
        verify_report_json(roots.degree(), theta, a.tol, &report, a.signed_angles)
    );
    Ok(if report.pass { 0 } else { 1 })
}

/// Batch mode: instance `i` uses `n = 1 + (i mod 10)` roots from seed
/// `base + i`; theta comes from one shared generator seeded with
/// `base ^ 0xA5A5A5A5A5A5A5A5` so it is independent of the root draws.
fn verify_batch(batch: usize, base_seed: u64, tol: f64) -> Result<i32, AppError> {
    if batch == 0 {
        return Err(usage("--batch must be at least 1"));
    }
    let mut theta_rng = XorShift64Star::new(base_seed ^ 0xA5A5_A5A5_A5A5_A5A5);
    let mut lines = Vec::with_capacity(batch);
    let mut all_pass = true;
    let mut worst: f64 = 0.0;
    for i in 0..batch {
        let n = 1 + i % 10;
        let seed = base_seed.wrapping_add(i as u64);
        let theta = theta_rng.next_theta();
        let roots = RootMultiset::new(&unit_circle_roots(n, seed))?;
        let report = verify_proposition(&roots, theta, tol)?;
        all_pass &= report.pass;
        worst = worst.max(report.max_distance);
        lines.push(format!(
            "    {{\"n\": {n}, \"seed\": {seed}, \"theta\": {}, \"pass\": {}, \"max_distance\": {}}}",
            json::num(theta),
            report.pass,
            json::num(report.max_distance)
        ));
    }
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"batch\": {batch},");
    let _ = writeln!(out, "  \"seed\": {base_seed},");
    let _ = writeln!(out, "  \"tolerance\": {},", json::num(tol));
    let _ = writeln!(out, "  \"pass\": {all_pass},");
    let _ = writeln!(out, "  \"max_distance\": {},", json::num(worst));
    out.push_str("  \"instances\": [\n");
    out.push_str(&lines.join(",\n"));
    out.push_str("\n  ]\n}\n");
    print!("{out}");
    Ok(if all_pass { 0 } else { 1 })
}

pub fn trace_cmd(a: &TraceArgs) -> Result<i32, AppError> {
    let roots = load_source(&a.source.roots, &a.source.roots_angles, &a.source.random, a.seed)?;
    let p = Poly::from_roots(&roots);
    let window = Window::new(Complex64::new(0.0, 0.0), a.window, a.cells)?;
    let polylines = trace(&p, a.theta, &window);

    match a.format {
        TraceFormat::Json => {
            let mut out = String::new();
            out.push_str("{\n");
            let _ = writeln!(out, "  \"n\": {},", roots.degree());
            let _ = writeln!(out, "  \"theta\": {},", json::num(a.theta));
            let _ = writeln!(
                out,
                "  \"window\": {{\"center\": [{}, {}], \"half_width\": {}, \"cells\": {}}},",
                json::num(0.0),
                json::num(0.0),
                json::num(a.window),
                a.cells
            );
            out.push_str("  \"polylines\": [\n");
            for (i, pl) in polylines.iter().enumerate() {
                let pts: Vec<String> = pl.points.iter().map(|&z| json::complex(z)).collect();
                let _ = write!(
                    out,
                    "    {{\"closed\": {}, \"points\": [{}]}}",
                    pl.closed,
                    pts.join(", ")
                );
                out.push_str(if i + 1 < polylines.len() { ",\n" } else { "\n" });
            }
            out.push_str("  ]\n}\n");
            print!("{out}");
        }
        TraceFormat::Csv => {
            let mut out = String::from("polyline,vertex,re,im,closed\n");
            for (i, pl) in polylines.iter().enumerate() {
                for (j, z) in pl.points.iter().enumerate() {
                    let _ = writeln!(
                        out,
                        "{i},{j},{},{},{}",
                        json::num(z.re),
                        json::num(z.im),
                        pl.closed
                    );
                }
            }
            print!("{out}");
        }
    }
    Ok(0)
}

pub fn matching_cmd(a: &MatchingArgs) -> Result<i32, AppError> {
    let roots = load_source(&a.source.roots, &a.source.roots_angles, &a.source.random, a.seed)?;
    let p = Poly::from_roots(&roots);
    let radius = a.radius.unwrap_or_else(|| asymptote_validity_radius(&roots));
    let m = matching(&p, a.theta, radius)?;
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"n\": {},", roots.degree());
    let _ = writeln!(out, "  \"theta\": {},", json::num(a.theta));
    let _ = writeln!(out, "  \"radius\": {},", json::num(radius));
    let _ = writeln!(out, "  \"pairs\": {}", json::pairs(&m.pairs()));
    out.push_str("}\n");
    print!("{out}");
    Ok(0)
}

pub fn necklace_cmd(a: &NecklaceArgs) -> Result<i32, AppError> {
    let roots = load_source(&a.source.roots, &a.source.roots_angles, &a.source.random, a.seed)?;
    let p = Poly::from_roots(&roots);
    let necklace = build_necklace(&p, a.guard)?;
    let criticals: Vec<f64> = necklace.critical_thetas.iter().map(|a| a.value()).collect();
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"n\": {},", roots.degree());
    let _ = writeln!(out, "  \"guard\": {},", json::num(a.guard));
    let _ = writeln!(out, "  \"critical_thetas\": {},", json::floats(&criticals));
    out.push_str("  \"beads\": [\n");
    for (i, bead) in necklace.beads.iter().enumerate() {
        let _ = write!(
            out,
            "    {{\"interval\": [{}, {}], \"pairs\": {}}}",
            json::num(bead.start),
            json::num(bead.end),
            json::pairs(&bead.matching.pairs())
        );
        out.push_str(if i + 1 < necklace.beads.len() { ",\n" } else { "\n" });
    }
    out.push_str("  ]\n}\n");
    print!("{out}");
    Ok(0)
}

pub fn tangents_cmd(a: &TangentsArgs) -> Result<i32, AppError> {
    let roots = load_source(&a.source.roots, &a.source.roots_angles, &a.source.random, a.seed)?;
    let reports = circle_tangency_test(&roots, a.theta, a.tol)?;
    let mut out = String::from("[\n");
    for (i, r) in reports.iter().enumerate() {
        let _ = write!(
            out,
            "  {{\"root\": {}, \"multiplicity\": {}, \"cofactor\": {}, \"directions\": {}, \
             \"circle_tangent\": {}, \"min_tangent_gap\": {}, \"coincides\": {}, \
             \"gon_vertex_gap\": {}, \"on_gon\": {}, \"agrees\": {}}}",
            json::complex(r.root),
            r.multiplicity,
            json::complex(r.cofactor),
            json::floats(&r.directions),
            json::num(r.circle_tangent),
            json::num(r.min_tangent_gap),
            json::opt_bool(r.coincides),
            json::num(r.gon_vertex_gap),
            json::opt_bool(r.on_gon),
            json::opt_bool(r.agrees)
        );
        out.push_str(if i + 1 < reports.len() { ",\n" } else { "\n" });
    }
    out.push_str("]\n");
    print!("{out}");
    let disagreement = reports.iter().any(|r| r.agrees == Some(false));
    Ok(if disagreement { 1 } else { 0 })
}

/// Shared by `render` and `demo`: trace the curve and assemble the scene.
fn build_scene(
    roots: &RootMultiset,
    theta: f64,
    half_width: f64,
    cells: usize,
    rays: bool,
) -> Result<(Scene, usize), AppError> {
    let p = Poly::from_roots(roots);
    let window = Window::new(Complex64::new(0.0, 0.0), half_width, cells)?;
    let polylines = trace(&p, theta, &window);
    let components = polylines.len();

    let mut scene = Scene::new(Complex64::new(0.0, 0.0), half_width)?;
    scene.unit_circle = true;
    scene.roots = roots.entries().iter().map(|e| e.root).collect();
    scene.curves = polylines;
    let mut legend = vec![
        format!("n = {}", roots.degree()),
        format!("theta = {theta:.6}"),
    ];
    if let Ok(gon) = gon_vertices(roots, theta) {
        legend.push(format!("omega = {:.6}", gon.omega()));
        scene.gon = gon.vertices().to_vec();
    }
    scene.legend = legend;
    if rays {
        let fan = asymptote_fan(roots.degree(), theta)?;
        scene.rays = fan.angles().to_vec();
    }
    Ok((scene, components))
}

pub fn render_cmd(a: &RenderArgs) -> Result<i32, AppError> {
    let roots = load_source(&a.source.roots, &a.source.roots_angles, &a.source.random, a.seed)?;
    let (scene, components) = build_scene(&roots, a.theta, a.window, a.cells, a.rays)?;
    let svg = render_svg(&scene)?;
    match &a.out {
        Some(path) => {
            std::fs::write(path, &svg)
                .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
            let mut out = String::new();
            out.push_str("{\n");
            let _ = writeln!(out, "  \"n\": {},", roots.degree());
            let _ = writeln!(out, "  \"theta\": {},", json::num(a.theta));
            let _ = writeln!(out, "  \"components\": {components},");
            let _ = writeln!(out, "  \"out\": {}", json::string(&path.display().to_string()));
            out.push_str("}\n");
            print!("{out}");
        }
        None => print!("{svg}"),
    }
    Ok(0)
}

/// Pinned demo geometry: 7 roots, theta 0, a window just past the unit
/// circle, and a grid fine enough that every branch is one unbroken chain.
pub const DEMO_N: usize = 7;
pub const DEMO_THETA: f64 = 0.0;
pub const DEMO_HALF_WIDTH: f64 = 2.0;
pub const DEMO_CELLS: usize = 512;

pub fn demo(a: &DemoArgs) -> Result<i32, AppError> {
    let roots = RootMultiset::new(&unit_circle_roots(DEMO_N, a.seed))?;
    let report = verify_proposition(&roots, DEMO_THETA, harmonic_curves::circle::VERIFY_TOL)?;
    let gon = gon_vertices(&roots, DEMO_THETA)?;

    let (mut scene, components) =
        build_scene(&roots, DEMO_THETA, DEMO_HALF_WIDTH, DEMO_CELLS, false)?;
    scene.legend.push(format!("seed = {}", a.seed));
    let svg = render_svg(&scene)?;
    std::fs::write(&a.out, &svg)
        .map_err(|e| usage(format!("cannot write {}: {e}", a.out.display())))?;

    // Side lengths of the predicted polygon, as drawn.
    let vs = gon.vertices();
    let chords: Vec<f64> = (0..vs.len())
        .map(|k| (vs[(k + 1) % vs.len()] - vs[k]).norm())
        .collect();
    let mean = chords.iter().sum::<f64>() / chords.len() as f64;
    let deviation = chords
        .iter()
        .map(|c| (c - mean).abs())
        .fold(0.0, f64::max)
        / mean;

    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"seed\": {},", a.seed);
    let _ = writeln!(out, "  \"n\": {},", roots.degree());
    let _ = writeln!(out, "  \"theta\": {},", json::num(DEMO_THETA));
    let _ = writeln!(out, "  \"omega\": {},", json::num(report.omega));
    let _ = writeln!(out, "  \"pass\": {},", report.pass);
    let _ = writeln!(out, "  \"max_distance\": {},", json::num(report.max_distance));
    let _ = writeln!(out, "  \"components\": {components},");
    let _ = writeln!(out, "  \"roots\": {},", roots.entries().len());
    let _ = writeln!(out, "  \"gon_vertices\": {},", gon.n());
    let _ = writeln!(out, "  \"chord_relative_deviation\": {},", json::num(deviation));
    let _ = writeln!(out, "  \"out\": {}", json::string(&a.out.display().to_string()));
    out.push_str("}\n");
    print!("{out}");
    Ok(if report.pass { 0 } else { 1 })
}
