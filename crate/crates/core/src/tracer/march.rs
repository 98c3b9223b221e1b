//! Marching-squares contour extraction for `Im(e^{-i theta} P(z)) = 0`.
//!
//! The window grid is evaluated once; every grid edge whose endpoint values
//! straddle zero receives a single crossing point by linear interpolation,
//! shared by both adjacent cells so that segments link C0-continuously.
//! Per-cell segments are then chained into polylines in a fixed order
//! (ascending crossing-point index, which follows row-major edge order), and
//! every emitted point is polished by Newton steps along the gradient of the
//! defining function. Exact zeros on grid vertices are classified with the
//! negative side, which keeps the sign field two-valued and the segment
//! topology consistent; crossings on such edges interpolate exactly onto the
//! vertex.

use num_complex::Complex64;

use super::{Polyline, Window};
use crate::poly::Poly;

/// Residual bound factor for refined trace points: every emitted point `z`
/// satisfies `|Im(e^{-i theta} P(z))| <= TRACE_RESIDUAL_FACTOR * (1 + S)`
/// where `S` is the largest `|P|` over the sampled grid.
pub const TRACE_RESIDUAL_FACTOR: f64 = 1e-10;

/// Newton iteration cap per refined point.
const REFINE_ITERATIONS: usize = 12;

/// A refined point may move at most this many cell sides from its
/// interpolated position (it starts within one cell of the curve, so the
/// correction is ordinarily a small fraction of a cell).
const REFINE_MOVE_CAP: f64 = 0.75;

/// Traces all zero crossings of `Im(e^{-i theta} P(z))` inside `window`.
///
/// Returns one polyline per connected chain of grid segments; open chains
/// end on the window boundary (or at a saddle rewiring), closed chains are
/// marked `closed`. The output is empty when the sign of the defining
/// function is constant on the grid — impossible when the window contains a
/// root of a nonconstant `P`. Output order and contents are deterministic.
pub fn trace(p: &Poly, theta: f64, window: &Window) -> Vec<Polyline> {
    let m = window.cells();
    let nv = m + 1;
    let rot = Complex64::from_polar(1.0, -theta);

    // Evaluate the defining function on all grid vertices; track |P| scale.
    let mut f = vec![0.0f64; nv * nv];
    let mut scale = 0.0f64;
    for j in 0..nv {
        for i in 0..nv {
            let v = p.eval(window.vertex(i, j));
            scale = scale.max(v.norm());
            f[j * nv + i] = (rot * v).im;
        }
    }
    let positive = |x: f64| x > 0.0;

    // One crossing point per sign-changing edge, shared between cells.
    // Point indices increase in row-major edge order (per row: horizontal
    // edges, then vertical edges), fixing all downstream ordering.
    let mut points: Vec<Complex64> = Vec::new();
    let mut h_edge = vec![u32::MAX; m * nv]; // (i, j) -> j * m + i
    let mut v_edge = vec![u32::MAX; nv * m]; // (i, j) -> j * nv + i
    for j in 0..nv {
        for i in 0..m {
            let fa = f[j * nv + i];
            let fb = f[j * nv + i + 1];
            if positive(fa) != positive(fb) {
                let t = fa / (fa - fb);
                let za = window.vertex(i, j);
                let zb = window.vertex(i + 1, j);
                h_edge[j * m + i] = points.len() as u32;
                points.push(za + (zb - za) * t);
            }
        }
        if j < m {
            for i in 0..nv {
                let fa = f[j * nv + i];
                let fb = f[(j + 1) * nv + i];
                if positive(fa) != positive(fb) {
                    let t = fa / (fa - fb);
                    let za = window.vertex(i, j);
                    let zb = window.vertex(i, j + 1);
                    v_edge[j * nv + i] = points.len() as u32;
                    points.push(za + (zb - za) * t);
                }
            }
        }
    }

    // Per-cell segments -> adjacency between crossing points.
    let mut neighbors: Vec<[u32; 2]> = vec![[u32::MAX; 2]; points.len()];
    let mut degree = vec![0u8; points.len()];
    let mut link = |a: u32, b: u32| {
        for (x, y) in [(a, b), (b, a)] {
            let d = &mut degree[x as usize];
            neighbors[x as usize][*d as usize] = y;
            *d += 1;
        }
    };
    for j in 0..m {
        for i in 0..m {
            let a = positive(f[j * nv + i]); // bottom-left
            let b = positive(f[j * nv + i + 1]); // bottom-right
            let c = positive(f[(j + 1) * nv + i + 1]); // top-right
            let d = positive(f[(j + 1) * nv + i]); // top-left
            let case = a as usize | (b as usize) << 1 | (c as usize) << 2 | (d as usize) << 3;
            if case == 0 || case == 15 {
                continue;
            }
            let bottom = h_edge[j * m + i];
            let top = h_edge[(j + 1) * m + i];
            let left = v_edge[j * nv + i];
            let right = v_edge[j * nv + i + 1];
            match case {
                1 | 14 => link(bottom, left),
                2 | 13 => link(bottom, right),
                3 | 12 => link(left, right),
                4 | 11 => link(top, right),
                6 | 9 => link(bottom, top),
                7 | 8 => link(left, top),
                5 | 10 => {
                    // Saddle: corners alternate; the sign at the cell center
                    // decides which diagonal the curve separates.
                    let center = p.eval(window.vertex(i, j) + Complex64::new(1.0, 1.0) * (0.5 * window.cell_size()));
                    let center_pos = positive((rot * center).im);
                    // `case == 5` has the positive corners bottom-left and
                    // top-right; `case == 10` has them bottom-right and
                    // top-left. The isolated corners are the ones whose sign
                    // differs from the center.
                    if (case == 5) == center_pos {
                        link(bottom, right);
                        link(top, left);
                    } else {
                        link(bottom, left);
                        link(top, right);
                    }
                }
                _ => unreachable!("cases 0 and 15 are skipped"),
            }
        }
    }

    // Newton-polish every crossing point along the gradient of f.
    let bound = TRACE_RESIDUAL_FACTOR * (1.0 + scale);
    let move_cap = REFINE_MOVE_CAP * window.cell_size();
    let refined: Vec<Complex64> = points
        .iter()
        .map(|&z0| refine(p, rot, z0, bound, move_cap))
        .collect();

    // Chain extraction: open chains first (deterministic by start index),
    // then any remaining cycles.
    let mut visited = vec![false; points.len()];
    let mut polylines = Vec::new();
    for s in 0..points.len() {
        if degree[s] == 1 && !visited[s] {
            polylines.push(walk(s, &neighbors, &degree, &mut visited, &refined, false));
        }
    }
    for s in 0..points.len() {
        if degree[s] == 2 && !visited[s] {
            polylines.push(walk(s, &neighbors, &degree, &mut visited, &refined, true));
        }
    }
    polylines
}

/// Follows the chain starting at `s`, marking points visited.
fn walk(
    s: usize,
    neighbors: &[[u32; 2]],
    degree: &[u8],
    visited: &mut [bool],
    refined: &[Complex64],
    closed: bool,
) -> Polyline {
    let mut pts = Vec::new();
    let mut prev = u32::MAX;
    let mut cur = s as u32;
    loop {
        visited[cur as usize] = true;
        pts.push(refined[cur as usize]);
        let nb = neighbors[cur as usize];
        let next = match degree[cur as usize] {
            1 if prev == u32::MAX => nb[0], // chain start
            1 => break,                     // chain end
            2 => {
                if nb[0] != prev {
                    nb[0]
                } else {
                    nb[1]
                }
            }
            _ => break,
        };
        if visited[next as usize] {
            break; // came back around: cycle complete
        }
        prev = cur;
        cur = next;
    }
    Polyline::new(pts, closed)
}

/// Newton refinement of `z0` toward the zero set of `f = Im(rot * P)`:
/// steps `z -= f * grad / |grad|^2` with `grad = i * conj(rot * P'(z))`,
/// stopping at the residual bound, a vanishing gradient, or the move cap.
/// Returns the best (lowest-residual) iterate seen.
fn refine(p: &Poly, rot: Complex64, z0: Complex64, bound: f64, move_cap: f64) -> Complex64 {
    let mut z = z0;
    let mut best = z0;
    let mut best_res = f64::INFINITY;
    for _ in 0..REFINE_ITERATIONS {
        let (pv, dv) = p.eval_with_derivative(z);
        let fv = (rot * pv).im;
        if fv.abs() < best_res {
            best_res = fv.abs();
            best = z;
        }
        if fv.abs() <= bound {
            return z;
        }
        let w = rot * dv;
        let g2 = w.norm_sqr();
        if g2 == 0.0 {
            break;
        }
        let grad = Complex64::new(w.im, w.re); // i * conj(w)
        let next = z - grad * (fv / g2);
        if (next - z0).norm() > move_cap {
            break;
        }
        z = next;
    }
    best
}
