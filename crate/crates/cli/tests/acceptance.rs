//! Acceptance suite: one test per criterion, each printing a single
//! `acceptance: <criterion>: PASS` / `... FAIL` line (visible with
//! `cargo test -p harmonic-curves-cli --test acceptance -- --nocapture`).
//! Tolerances are pinned in the assertions; a failure panics with detail.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};
use std::time::Instant;

use harmonic_curves::angle::{arg_diff_unit, circular_dist, normalize_angle};
use harmonic_curves::circle::{circle_zeros, default_samples, gon_vertices, omega,
    theta_placing_root_on_gon, verify_proposition, CIRCLE_SOLVER_TOL, VERIFY_TOL};
use harmonic_curves::necklace::{critical_thetas, sweep_check, SINGULAR_VALUE_TOL};
use harmonic_curves::poly::{Poly, RootMultiset};
use harmonic_curves::rng::{unit_circle_roots, XorShift64Star};
use harmonic_curves::tangents::{circle_tangency_test, TANGENCY_TOL};
use harmonic_curves::tracer::{asymptote_fan, asymptote_validity_radius, implicit_value, matching,
    trace, AsymptoteFan, Window};

const TWO_PI: f64 = 2.0 * PI;

fn criterion(name: &str, body: impl FnOnce() + std::panic::UnwindSafe) {
    match std::panic::catch_unwind(body) {
        Ok(()) => println!("acceptance: {name}: PASS"),
        Err(payload) => {
            println!("acceptance: {name}: FAIL");
            std::panic::resume_unwind(payload);
        }
    }
}

fn seeded_roots(n: usize, seed: u64) -> RootMultiset {
    RootMultiset::new(&unit_circle_roots(n, seed)).unwrap()
}

#[test]
fn proposition_on_100_seeded_instances_under_5_seconds() {
    criterion("circle = roots + gon on 100 seeded instances (<= 1e-8, < 5 s)", || {
        let start = Instant::now();
        let mut theta_rng = XorShift64Star::new(0xACCE_5500);
        let mut worst: f64 = 0.0;
        for i in 0..100 {
            let n = 1 + i % 10;
            let roots = seeded_roots(n, 9000 + i as u64);
            let theta = theta_rng.next_theta();
            let report = verify_proposition(&roots, theta, 1e-8).unwrap();
            assert!(report.pass, "instance {i} (n={n}) failed: max {}", report.max_distance);
            worst = worst.max(report.max_distance);
        }
        assert!(worst <= 1e-8, "worst distance {worst}");
        let elapsed = start.elapsed();
        assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    });
}

#[test]
fn hand_checkable_exact_cases_to_1e10() {
    criterion("hand-checkable circle zeros and gons (<= 1e-10)", || {
        // z - 1 at theta 0: zeros exactly {0, pi}.
        let p = Poly::from_roots(&RootMultiset::new(&[Complex64::new(1.0, 0.0)]).unwrap());
        let zs = circle_zeros(&p, 0.0, default_samples(1), CIRCLE_SOLVER_TOL).unwrap();
        assert_eq!(zs.distinct(), 2);
        assert!(circular_dist(zs.zeros[0].angle, 0.0, TWO_PI) <= 1e-10);
        assert!(circular_dist(zs.zeros[1].angle, PI, TWO_PI) <= 1e-10);

        // z^2 - 1 at theta 0: zeros {0, pi/2, pi, 3 pi/2}, gon {i, -i}.
        let roots = RootMultiset::new(&[Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)])
            .unwrap();
        let p = Poly::from_roots(&roots);
        let zs = circle_zeros(&p, 0.0, default_samples(2), CIRCLE_SOLVER_TOL).unwrap();
        assert_eq!(zs.distinct(), 4);
        for (z, want) in zs.zeros.iter().zip([0.0, FRAC_PI_2, PI, 1.5 * PI]) {
            assert!(circular_dist(z.angle, want, TWO_PI) <= 1e-10, "{} vs {want}", z.angle);
        }
        let gon = gon_vertices(&roots, 0.0).unwrap();
        let mut got: Vec<f64> = gon.vertex_angles();
        got.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!(circular_dist(got[0], FRAC_PI_2, TWO_PI) <= 1e-10);
        assert!(circular_dist(got[1], 1.5 * PI, TWO_PI) <= 1e-10);

        // (z - 1)^2 at theta 0: gon {1, -1}; the double root lies on the gon,
        // making the zero at angle 0 have order 3.
        let double = RootMultiset::with_multiplicities(&[Complex64::new(1.0, 0.0)], &[2]).unwrap();
        let gon = gon_vertices(&double, 0.0).unwrap();
        let mut got_these: Vec<f64> = gon.vertex_angles();
        got_these.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!(circular_dist(got_these[0], 0.0, TWO_PI) <= 1e-10);
        assert!(circular_dist(got_these[1], PI, TWO_PI) <= 1e-10);
        let report = verify_proposition(&double, 0.0, VERIFY_TOL).unwrap();
        assert!(report.pass);
        assert_eq!(report.zeros.distinct(), 2);
        assert_eq!(report.zeros.zeros[0].multiplicity, 3);
        assert!(circular_dist(report.zeros.zeros[0].angle, 0.0, TWO_PI) <= 1e-10);
        assert_eq!(report.zeros.zeros[1].multiplicity, 1);
        assert!(circular_dist(report.zeros.zeros[1].angle, PI, TWO_PI) <= 1e-10);
    });
}

#[test]
fn arg_identity_on_100k_seeded_pairs() {
    criterion("unit-difference Arg identity on 1e5 pairs (<= 1e-12 where conditioned)", || {
        let mut rng = XorShift64Star::new(0xA47_1D);
        let mut strict = 0usize;
        let mut total = 0usize;
        for _ in 0..100_000 {
            let nu = rng.next_angle();
            let psi = rng.next_angle();
            if nu == psi {
                continue;
            }
            total += 1;
            let diff = Complex64::from_polar(1.0, nu) - Complex64::from_polar(1.0, psi);
            let direct = normalize_angle(diff.arg(), TWO_PI);
            let closed = arg_diff_unit(nu, psi).unwrap().value();
            let dev = circular_dist(closed, direct, TWO_PI);
            // The direct oracle loses accuracy like eps/|diff| near
            // coincident points; hold it to 1e-12 wherever it can achieve
            // 1e-12, and to its conditioning bound elsewhere.
            let r = diff.norm();
            if r >= 1e-3 {
                assert!(dev <= 1e-12, "nu={nu} psi={psi}: dev {dev}");
            } else {
                assert!(dev <= 1e-12 + 8e-16 / r, "nu={nu} psi={psi} r={r}: dev {dev}");
            }
            if dev <= 1e-12 {
                strict += 1;
            }

            // The sign-based variant is correct mod pi on every pair.
            let s = if (0.5 * (nu - psi)).sin() >= 0.0 { 1.0 } else { -1.0 };
            let sgn_form = 0.5 * (nu + psi) + FRAC_PI_2 + s * PI;
            let dev_pi = circular_dist(
                normalize_angle(sgn_form, PI),
                normalize_angle(direct, PI),
                PI,
            );
            if r >= 1e-3 {
                assert!(dev_pi <= 1e-12, "sgn form: nu={nu} psi={psi}: dev {dev_pi}");
            } else {
                assert!(dev_pi <= 1e-12 + 8e-16 / r);
            }
        }
        assert!(total >= 99_990);
        assert!(
            strict as f64 >= 0.999 * total as f64,
            "only {strict}/{total} pairs met 1e-12 outright"
        );
    });
}

// ---------------------------------------------------------------------------
// Pinch-aware grid-trace matching oracle.
//
// A uniform marching-squares grid cannot see two curve sheets that pass
// through one cell, so polyline connectivity is unreliable wherever the
// sheet separation drops below a couple of cells. Close sheets of
// {Im(e^{-i theta} P) = 0} force a zero of the gradient between them, i.e.
// a critical point c of P whose level offset mu = |Im(e^{-i theta} P(c))|
// is small; the local saddle waist is s = sqrt(2 mu / |P''(c)|). The oracle
// therefore (a) finds disks around critical points whose waist is below a
// few coarse cells, (b) re-traces each disk on a local grid fine enough to
// resolve the waist, and (c) stitches coarse connectivity outside the disks
// to fine connectivity inside them, walking ray-to-ray through the result.

#[derive(Clone, Copy)]
struct PinchDisk {
    center: Complex64,
    radius: f64,
    waist: f64,
}

fn pinch_disks(p: &Poly, theta: f64, cell_diag: f64) -> Vec<PinchDisk> {
    if p.degree() < 2 {
        return Vec::new();
    }
    let second = p.derivative().derivative();
    let mut disks: Vec<PinchDisk> = Vec::new();
    for c in p.critical_points(1e-10).unwrap() {
        let mu = implicit_value(p, theta, c).abs();
        let curvature = second.eval(c).norm();
        let waist = if curvature > 1e-9 {
            (2.0 * mu / curvature).sqrt()
        } else {
            // Degenerate (higher-order) saddle: fall back to a cube-root
            // scale, which over- rather than under-estimates the danger zone.
            mu.max(1e-300).cbrt()
        };
        if waist < 4.0 * cell_diag {
            disks.push(PinchDisk {
                center: c,
                radius: (4.0 * cell_diag).max(8.0 * waist),
                waist,
            });
        }
    }
    // Merge until pairwise disjoint with at least one cell of clearance, so a
    // single polyline segment can never tunnel through a gap between disks.
    loop {
        let mut merged = None;
        'search: for i in 0..disks.len() {
            for j in i + 1..disks.len() {
                let gap = (disks[i].center - disks[j].center).norm();
                if gap < disks[i].radius + disks[j].radius + 2.0 * cell_diag {
                    merged = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((i, j)) = merged else { break };
        let (a, b) = (disks[i], disks[j]);
        let d = (b.center - a.center).norm();
        let waist = a.waist.min(b.waist);
        let cover = if d + b.radius <= a.radius {
            PinchDisk { waist, ..a }
        } else if d + a.radius <= b.radius {
            PinchDisk { waist, ..b }
        } else {
            let radius = (d + a.radius + b.radius) / 2.0;
            let dir = (b.center - a.center) / d;
            PinchDisk {
                center: a.center + dir * (radius - a.radius),
                radius,
                waist,
            }
        };
        disks.swap_remove(j);
        disks[i] = cover;
    }
    disks
}

/// Endpoint of a cut polyline stretch: a fan ray terminal or a crossing of
/// disk boundary number `disk` (crossing ids index a side-local list).
#[derive(Clone, Copy, PartialEq, Debug)]
enum StretchEnd {
    Ray(usize),
    Cross(usize),
}

/// Where point `z` sits relative to the (disjoint) disks.
fn disk_of(z: Complex64, disks: &[PinchDisk]) -> Option<usize> {
    disks
        .iter()
        .position(|d| (z - d.center).norm() <= d.radius)
}

/// Linear interpolation of the crossing of circle(center, radius) on segment
/// a -> b (the segment is short relative to the disk, so one crossing).
fn boundary_point(a: Complex64, b: Complex64, disk: &PinchDisk) -> Complex64 {
    let (da, db) = ((a - disk.center).norm(), (b - disk.center).norm());
    let t = ((disk.radius - da) / (db - da)).clamp(0.0, 1.0);
    a + (b - a) * t
}

/// Cuts one polyline at the disk boundaries. `keep_inside` selects which
/// stretches become edges (false for the coarse global trace, true for the
/// fine local traces). Ray terminals are taken from `terminals` (the
/// polyline's physical end assignments; `None` for fine traces, whose ends
/// must all lie outside the disk). Appends crossing positions to `crossings`
/// and emits `(end, end)` edges.
fn cut_polyline(
    points: &[Complex64],
    closed: bool,
    terminals: Option<(usize, usize)>,
    disks: &[PinchDisk],
    keep_inside: bool,
    crossings: &mut Vec<(usize, Complex64)>,
    edges: &mut Vec<(StretchEnd, StretchEnd)>,
) {
    // Order the traversal so it starts outside every disk.
    let start_idx = points
        .iter()
        .position(|&z| disk_of(z, disks).is_none())
        .expect("polyline lies entirely inside pinch disks");
    let seq: Vec<Complex64> = if closed {
        let mut v: Vec<Complex64> = points[start_idx..].to_vec();
        v.extend_from_slice(&points[..start_idx]);
        v.push(points[start_idx]);
        v
    } else {
        assert_eq!(start_idx, 0, "open polyline must start outside the disks");
        assert!(
            disk_of(*points.last().unwrap(), disks).is_none(),
            "open polyline must end outside the disks"
        );
        points.to_vec()
    };

    let mut state: Option<usize> = None;
    // Start marker of the stretch in progress; `None` on a closed polyline
    // until the first crossing (that dangling stretch is completed at wrap).
    let mut stretch_start: Option<StretchEnd> = if closed {
        None
    } else {
        Some(StretchEnd::Ray(terminals.expect("open coarse polyline needs ray terminals").0))
    };
    let mut first_cross: Option<StretchEnd> = None;
    let emit = |inside: bool,
                    from: Option<StretchEnd>,
                    to: StretchEnd,
                    edges: &mut Vec<(StretchEnd, StretchEnd)>| {
        if inside == keep_inside {
            if let Some(f) = from {
                edges.push((f, to));
            }
        }
    };
    for w in seq.windows(2) {
        let (a, b) = (w[0], w[1]);
        let mb = disk_of(b, disks);
        if mb == state {
            continue;
        }
        // At most two events per segment: leave `state`, then enter `mb`.
        if let Some(d) = state {
            crossings.push((d, boundary_point(a, b, &disks[d])));
            let node = StretchEnd::Cross(crossings.len() - 1);
            emit(true, stretch_start, node, edges);
            if first_cross.is_none() {
                first_cross = Some(node);
            }
            stretch_start = Some(node);
            state = None;
        }
        if let Some(d) = mb {
            crossings.push((d, boundary_point(a, b, &disks[d])));
            let node = StretchEnd::Cross(crossings.len() - 1);
            emit(false, stretch_start, node, edges);
            if first_cross.is_none() {
                first_cross = Some(node);
            }
            stretch_start = Some(node);
            state = Some(d);
        }
    }
    assert!(state.is_none(), "polyline traversal ended inside a disk");
    if closed {
        match first_cross {
            // The wrap joins the dangling initial stretch to the final one.
            Some(first) => emit(false, stretch_start, first, edges),
            // A closed polyline touching no disk would be a compact oval,
            // which the curve cannot have.
            None => panic!("closed polyline away from every pinch disk"),
        }
    } else {
        emit(
            false,
            stretch_start,
            StretchEnd::Ray(terminals.unwrap().1),
            edges,
        );
    }
}

/// Asymptote matching recovered from grid traces alone: a coarse full-window
/// trace for the global picture plus a fine local re-trace inside every
/// pinch disk, stitched at the disk boundaries.
fn grid_matching(p: &Poly, theta: f64, fan: &AsymptoteFan, window: &Window) -> Vec<(usize, usize)> {
    let n = p.degree();
    let cell_diag = window.cell_size() * std::f64::consts::SQRT_2;
    let disks = pinch_disks(p, theta, cell_diag);

    // Coarse side: ray terminals per open polyline end, cut at disk edges.
    let gap = PI / n as f64;
    let mut coarse_cross: Vec<(usize, Complex64)> = Vec::new();
    let mut coarse_edges: Vec<(StretchEnd, StretchEnd)> = Vec::new();
    let mut rays_seen = vec![false; 2 * n];
    for pl in trace(p, theta, window) {
        let terminals = if pl.closed {
            None
        } else {
            let ends = [pl.points[0], *pl.points.last().unwrap()];
            let mut ids = [0usize; 2];
            for (slot, z) in ends.iter().enumerate() {
                let ang = z.arg().rem_euclid(TWO_PI);
                let k = fan.nearest_index(ang);
                assert!(
                    circular_dist(ang, fan.angles()[k], TWO_PI) <= 0.45 * gap,
                    "boundary exit at angle {ang} not captured by a ray"
                );
                assert!(!rays_seen[k], "two polyline ends claim ray {k}");
                rays_seen[k] = true;
                ids[slot] = k;
            }
            Some((ids[0], ids[1]))
        };
        cut_polyline(
            &pl.points,
            pl.closed,
            terminals,
            &disks,
            false,
            &mut coarse_cross,
            &mut coarse_edges,
        );
    }
    assert!(rays_seen.iter().all(|&s| s), "some rays have no grid branch");

    // Fine side: local traces inside each disk.
    let mut fine_cross: Vec<(usize, Complex64)> = Vec::new();
    let mut fine_edges: Vec<(StretchEnd, StretchEnd)> = Vec::new();
    for (d, disk) in disks.iter().enumerate() {
        let half_width = 1.5 * disk.radius;
        let cells = (17.0 * disk.radius / disk.waist).ceil() as usize;
        assert!(
            cells <= 8_000,
            "pinch waist {} below the oracle's resolution budget",
            disk.waist
        );
        let local = Window::new(disk.center, half_width, cells.max(64)).unwrap();
        let one = [*disk];
        for pl in trace(p, theta, &local) {
            // Only the stretches inside this disk matter; remap the
            // single-disk index 0 used by the cutter back to `d`.
            let before = fine_cross.len();
            cut_polyline(
                &pl.points,
                pl.closed,
                if pl.closed { None } else { Some((usize::MAX, usize::MAX)) },
                &one,
                true,
                &mut fine_cross,
                &mut fine_edges,
            );
            for entry in &mut fine_cross[before..] {
                entry.0 = d;
            }
        }
    }
    // Fine edges may reference Ray(usize::MAX) placeholders only if a local
    // polyline end fell inside the disk, which the cutter already rejects.
    assert!(fine_edges
        .iter()
        .all(|(a, b)| !matches!(a, StretchEnd::Ray(_)) && !matches!(b, StretchEnd::Ray(_))));

    // Pair coarse and fine boundary crossings per disk by position.
    let mut portal = vec![usize::MAX; coarse_cross.len()];
    for (d, disk) in disks.iter().enumerate() {
        let mine: Vec<usize> = (0..coarse_cross.len())
            .filter(|&i| coarse_cross[i].0 == d)
            .collect();
        let theirs: Vec<usize> = (0..fine_cross.len())
            .filter(|&j| fine_cross[j].0 == d)
            .collect();
        assert_eq!(
            mine.len(),
            theirs.len(),
            "disk {d}: coarse and fine boundary crossing counts differ"
        );
        let mut taken = vec![false; theirs.len()];
        for &i in &mine {
            let (mut best, mut best_dist) = (usize::MAX, f64::INFINITY);
            for (t, &j) in theirs.iter().enumerate() {
                let dist = (coarse_cross[i].1 - fine_cross[j].1).norm();
                if !taken[t] && dist < best_dist {
                    best = t;
                    best_dist = dist;
                }
            }
            assert!(
                best_dist <= 0.1 * disk.radius,
                "disk {d}: boundary crossings do not line up (gap {best_dist})"
            );
            taken[best] = true;
            portal[i] = theirs[best];
        }
    }

    // Unified graph: ray k -> node k; coarse crossing i -> 2n + i;
    // fine crossing j -> 2n + |coarse| + j.
    let base_c = 2 * n;
    let base_f = base_c + coarse_cross.len();
    let node = |e: StretchEnd, base: usize| match e {
        StretchEnd::Ray(k) => k,
        StretchEnd::Cross(i) => base + i,
    };
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); base_f + fine_cross.len()];
    for &(a, b) in &coarse_edges {
        let (u, v) = (node(a, base_c), node(b, base_c));
        adj[u].push(v);
        adj[v].push(u);
    }
    for &(a, b) in &fine_edges {
        let (u, v) = (node(a, base_f), node(b, base_f));
        adj[u].push(v);
        adj[v].push(u);
    }
    for (i, &j) in portal.iter().enumerate() {
        adj[base_c + i].push(base_f + j);
        adj[base_f + j].push(base_c + i);
    }
    for (u, nbrs) in adj.iter().enumerate() {
        let expect = if u < 2 * n { 1 } else { 2 };
        assert_eq!(nbrs.len(), expect, "stitched node {u} has degree {}", nbrs.len());
    }

    // Walk every ray to its partner through the stitched graph.
    let mut pairs = Vec::new();
    for k in 0..2 * n {
        let (mut prev, mut here) = (k, adj[k][0]);
        let mut steps = 0usize;
        while here >= 2 * n {
            let next = if adj[here][0] == prev { adj[here][1] } else { adj[here][0] };
            prev = here;
            here = next;
            steps += 1;
            assert!(steps <= adj.len(), "stitched walk did not terminate");
        }
        assert_ne!(here, k, "ray {k} pairs with itself");
        if k < here {
            pairs.push((k, here));
        }
    }
    pairs.sort();
    assert_eq!(pairs.len(), n, "stitched walk must pair all rays");
    pairs
}

#[test]
fn continuation_matching_equals_grid_trace_matching() {
    criterion("asymptote matching: continuation = grid trace, involution, noncrossing (n <= 8)", || {
        // Pinned hyperbola case.
        let hyper = Poly::from_coeffs(&[
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        ]);
        let m = matching(&hyper, FRAC_PI_2, 8.0).unwrap();
        assert_eq!(m.pairs(), vec![(0, 3), (1, 2)]);

        for n in 1..=8 {
            let roots = seeded_roots(n, 11_000 + n as u64);
            let p = Poly::from_roots(&roots);
            let theta = 0.9;
            let radius = asymptote_validity_radius(&roots);
            let m = matching(&p, theta, radius).unwrap();
            // Fixed-point-free involution is enforced at construction; check
            // the noncrossing property explicitly.
            assert!(m.is_noncrossing(), "n={n}: {:?}", m.pairs());
            assert_eq!(m.size(), 2 * n);

            let fan = asymptote_fan(n, theta).unwrap();
            let window = Window::new(
                Complex64::new(0.0, 0.0),
                1.05 * radius + 1.0,
                256.max(96 * n),
            )
            .unwrap();
            let from_trace = grid_matching(&p, theta, &fan, &window);
            assert_eq!(from_trace, m.pairs(), "n={n}");
        }
    });
}

#[test]
fn necklace_critical_thetas_and_sweeps_under_60_seconds() {
    criterion("necklace: z^2-1 criticals = {0}; 64-sample sweeps clean on 20 instances (< 60 s)", || {
        let start = Instant::now();
        let hyper = Poly::from_coeffs(&[
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        ]);
        let crit = critical_thetas(&hyper, SINGULAR_VALUE_TOL).unwrap();
        assert!(crit.singular_points.is_empty());
        let values = crit.values();
        assert_eq!(values.len(), 1);
        assert!(values[0].abs() <= 1e-10, "critical theta {}", values[0]);
        let necklace = harmonic_curves::necklace::build_necklace(&hyper, 1e-4).unwrap();
        assert_eq!(necklace.beads.len(), 1);
        assert_eq!(necklace.beads[0].matching.pairs(), vec![(0, 3), (1, 2)]);

        for i in 0..20 {
            let n = 1 + i % 6;
            let roots = seeded_roots(n, 12_000 + i as u64);
            let p = Poly::from_roots(&roots);
            let report = sweep_check(&p, 64).unwrap();
            assert!(
                report.pass(),
                "instance {i} (n={n}): violations {:?}",
                report.violations
            );
        }
        let elapsed = start.elapsed();
        assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    });
}

#[test]
fn tangency_equivalence_with_zero_inconclusive_reports() {
    criterion("tangency <=> gon vertex on 50 seeded + 50 constructed instances, none inconclusive", || {
        let mut theta_rng = XorShift64Star::new(0x7A46);
        for i in 0..50 {
            let n = 1 + i % 8;
            let roots = seeded_roots(n, 13_000 + i as u64);
            let theta = theta_rng.next_theta();
            let reports = circle_tangency_test(&roots, theta, TANGENCY_TOL).unwrap();
            for r in &reports {
                assert!(r.coincides.is_some(), "instance {i}: inconclusive tangency");
                assert!(r.on_gon.is_some(), "instance {i}: inconclusive vertex test");
                assert_eq!(r.agrees, Some(true), "instance {i} root {}", r.root);
            }
        }
        for i in 0..50 {
            let n = 1 + i % 8;
            let roots = seeded_roots(n, 13_100 + i as u64);
            let index = i % n;
            let slot = (3 * i) % n;
            let theta = theta_placing_root_on_gon(&roots, index, slot).unwrap().value();
            let reports = circle_tangency_test(&roots, theta, TANGENCY_TOL).unwrap();
            assert_eq!(reports[index].coincides, Some(true), "constructed {i}");
            assert_eq!(reports[index].on_gon, Some(true), "constructed {i}");
            for r in &reports {
                assert!(r.coincides.is_some(), "constructed {i}: inconclusive tangency");
                assert!(r.on_gon.is_some(), "constructed {i}: inconclusive vertex test");
                assert_eq!(r.agrees, Some(true), "constructed {i} root {}", r.root);
            }
        }
    });
}

#[test]
fn figure_demo_seed_42_structure() {
    criterion("demo --seed 42: 7 components, 7 roots, 7 gon crosses, equal chords, verify passes", || {
        let out = std::env::temp_dir().join(format!("hcurve-acceptance-{}.svg", std::process::id()));
        let result = std::process::Command::new(env!("CARGO_BIN_EXE_hcurve"))
            .args(["demo", "--seed", "42", "--out"])
            .arg(&out)
            .output()
            .expect("demo should spawn");
        assert!(result.status.success(), "stderr: {}", String::from_utf8_lossy(&result.stderr));
        let stdout = String::from_utf8(result.stdout).unwrap();
        let json: serde_json::Value = serde_json::from_str(&stdout).unwrap();
        assert_eq!(json["pass"], serde_json::Value::Bool(true));
        assert_eq!(json["n"], 7);
        assert_eq!(json["components"], 7);
        assert_eq!(json["roots"], 7);
        assert_eq!(json["gon_vertices"], 7);

        let svg = std::fs::read_to_string(&out).unwrap();
        let _ = std::fs::remove_file(&out);
        assert_eq!(svg.matches("class=\"curve\"").count(), 7);
        assert_eq!(svg.matches("class=\"root\"").count(), 7);
        assert_eq!(svg.matches("class=\"gon-vertex\"").count(), 7);
        assert_eq!(svg.matches("<circle").count(), 1);

        // Recover the cross centres from the SVG and check the polygon side
        // lengths agree to 1e-4 relative.
        let mut centres: Vec<Complex64> = Vec::new();
        for line in svg.lines().filter(|l| l.contains("class=\"gon-vertex\"")) {
            let d = line.split("d=\"").nth(1).unwrap().split('"').next().unwrap();
            let nums: Vec<f64> = d
                .split(|c: char| !(c.is_ascii_digit() || c == '.' || c == '-'))
                .filter(|s| !s.is_empty())
                .map(|s| s.parse().unwrap())
                .collect();
            assert_eq!(nums.len(), 8, "cross path: {d}");
            // Midpoint of the first diagonal stroke, y un-flipped.
            centres.push(Complex64::new(
                0.5 * (nums[0] + nums[2]),
                -0.5 * (nums[1] + nums[3]),
            ));
        }
        assert_eq!(centres.len(), 7);
        let chords: Vec<f64> = (0..7)
            .map(|k| (centres[(k + 1) % 7] - centres[k]).norm())
            .collect();
        let mean = chords.iter().sum::<f64>() / 7.0;
        for c in &chords {
            assert!((c - mean).abs() <= 1e-4 * mean, "chords {chords:?}");
        }
    });
}

#[test]
fn invariance_suite() {
    criterion("invariances: gon pi-periodic in theta, rotation-equivariant, dOmega/dtheta = 2/n, zero counts", || {
        // Gon is unchanged under theta -> theta + pi.
        for n in 1..=10 {
            let roots = seeded_roots(n, 14_000 + n as u64);
            let theta = 0.4 + 0.11 * n as f64;
            let a = gon_vertices(&roots, theta).unwrap();
            let b = gon_vertices(&roots, theta + PI).unwrap();
            for va in a.vertices() {
                let gap = b
                    .vertices()
                    .iter()
                    .map(|vb| (va - vb).norm())
                    .fold(f64::INFINITY, f64::min);
                assert!(gap <= 1e-10, "n={n}: vertex {va} moved by {gap}");
            }
        }

        // Rotating the roots by alpha rotates the vertex set by -alpha at
        // fixed theta, and by +alpha when theta co-rotates by n alpha.
        for n in 1..=6 {
            let roots = seeded_roots(n, 14_100 + n as u64);
            let theta = 0.7;
            let base = gon_vertices(&roots, theta).unwrap();
            for alpha in [0.3, 2.0, 5.9] {
                let rot = Complex64::from_polar(1.0, alpha);
                let rotated: Vec<Complex64> =
                    roots.entries().iter().map(|e| rot * e.root).collect();
                let rotated = RootMultiset::new(&rotated).unwrap();

                let fixed_theta = gon_vertices(&rotated, theta).unwrap();
                for va in base.vertices() {
                    let target = va / rot;
                    let gap = fixed_theta
                        .vertices()
                        .iter()
                        .map(|vb| (vb - target).norm())
                        .fold(f64::INFINITY, f64::min);
                    assert!(gap <= 1e-10, "n={n} alpha={alpha}: fixed-theta gap {gap}");
                }

                let co_rotated = gon_vertices(&rotated, theta + n as f64 * alpha).unwrap();
                for va in base.vertices() {
                    let target = va * rot;
                    let gap = co_rotated
                        .vertices()
                        .iter()
                        .map(|vb| (vb - target).norm())
                        .fold(f64::INFINITY, f64::min);
                    assert!(gap <= 1e-10, "n={n} alpha={alpha}: co-rotated gap {gap}");
                }
            }
        }

        // dOmega/dtheta = 2/n by a finite difference.
        for n in 1..=10 {
            let roots = seeded_roots(n, 14_200 + n as u64);
            let theta = 1.1;
            let h = 1e-6;
            let o1 = omega(&roots, theta).unwrap().value();
            let o2 = omega(&roots, theta + h).unwrap().value();
            let d = normalize_angle(o2 - o1 + PI, TWO_PI) - PI;
            assert!(
                (d / h - 2.0 / n as f64).abs() <= 1e-8,
                "n={n}: slope {}",
                d / h
            );
        }

        // Distinct circle-zero count lies in [n, 2n]; orders sum to 2n.
        for i in 0..20 {
            let n = 1 + i % 10;
            let roots = seeded_roots(n, 14_300 + i as u64);
            let p = Poly::from_roots(&roots);
            let theta = 0.35 + 0.13 * i as f64;
            let zs = circle_zeros(&p, theta, default_samples(n), CIRCLE_SOLVER_TOL).unwrap();
            assert!(
                zs.distinct() >= n && zs.distinct() <= 2 * n,
                "instance {i}: {} distinct",
                zs.distinct()
            );
            assert_eq!(zs.total_multiplicity(), 2 * n, "instance {i}");
        }
    });
}
