//! Asymptote matching by predictor–corrector continuation.
//!
//! Far from the roots the curve `Im(e^{-i theta} P(z)) = 0` consists of `2n`
//! nearly straight arms, one per fan direction. Starting at the unique curve
//! crossing of the circle `|z| = R` nearest each ray, the level set is
//! followed inward — tangent predictor, Newton corrector along the gradient —
//! until it exits the circle again; the exit direction's nearest ray is the
//! partner. The resulting pairing must come back a fixed-point-free,
//! noncrossing involution, or an error is raised.
//!
//! `R` must be at least the asymptote-validity radius
//! [`asymptote_validity_radius`] (`2 n (1 + max_i |z_i|)`): beyond it the
//! leading term dominates the argument of `P`, so each circle crossing sits
//! well within half a fan gap of its ray.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{AsymptoteFan, Matching, Polyline};
use crate::angle::{circular_dist, normalize_angle};
use crate::error::{Error, Result};
use crate::necklace;
use crate::poly::{Poly, RootMultiset};

/// Minimum distance (radians, mod pi) from `theta` to every critical theta;
/// closer than this the branch structure is ill-conditioned and `matching`
/// refuses rather than guesses.
pub const CONTINUATION_GUARD: f64 = 1e-6;

/// Initial predictor step as a fraction of the start radius.
const STEP_DIVISOR: f64 = 200.0;

/// The step is halved on corrector failure; below `radius * this` the
/// continuation gives up and reports divergence.
const STEP_FLOOR_FACTOR: f64 = 1e-6;

/// Near the roots the step is additionally capped at
/// `NEAR_FIELD_STEP_FACTOR * (1 + |z|)`, so large start radii do not take
/// unit-scale leaps through the region where branches bend and crowd.
const NEAR_FIELD_STEP_FACTOR: f64 = 0.05;

/// Branches of the curve can only pinch together near critical points of P
/// (the saddle points of the defining harmonic function), so there the step
/// is capped at this fraction of the distance to the nearest critical
/// point. The curve itself stays clear of the critical points (the
/// genericity guard rejects anything else), which bounds the step away from
/// zero along the whole path.
const CRITICAL_PROXIMITY_STEP_FACTOR: f64 = 0.2;

/// Newton iterations per corrector call.
const CORRECTOR_ITERATIONS: usize = 12;

/// Corrector convergence: `|Im(e^{-i theta} P)| <= this * (1 + |P|)`.
const CORRECTOR_RESIDUAL: f64 = 1e-12;

/// Hard cap on predictor steps per ray.
const MAX_STEPS: usize = 500_000;

/// Fraction of the fan gap within which circle crossings must sit from
/// their ray, both at the start and at the exit.
const RAY_CAPTURE_FRACTION: f64 = 0.45;

/// Radius beyond which each asymptote arm is attributable to a unique fan
/// ray: `2 n (1 + max_i |z_i|)`.
pub fn asymptote_validity_radius(roots: &RootMultiset) -> f64 {
    2.0 * roots.degree() as f64 * (1.0 + roots.max_abs())
}

/// Computes the asymptote matching of the curve at parameter `theta` by
/// continuation from the circle `|z| = radius`.
///
/// Requires `radius >=` [`asymptote_validity_radius`] (not checkable from
/// `P` alone; violations surface as inconsistent-pairing errors) and `theta`
/// at least [`CONTINUATION_GUARD`] away (mod pi) from every critical theta.
pub fn matching(p: &Poly, theta: f64, radius: f64) -> Result<Matching> {
    matching_with_paths(p, theta, radius).map(|(m, _)| m)
}

/// Like [`matching`], but also returns the `n` traced branch paths, one per
/// matched pair, ordered by the pair's smaller ray index. Each path starts
/// on the circle at the smaller-index ray and ends on the circle at its
/// partner.
pub fn matching_with_paths(
    p: &Poly,
    theta: f64,
    radius: f64,
) -> Result<(Matching, Vec<Polyline>)> {
    let n = p.degree();
    if p.is_zero() || n == 0 {
        return Err(Error::InvalidParameter {
            what: "matching needs a polynomial of degree >= 1".to_string(),
        });
    }
    if !radius.is_finite() || radius <= 0.0 {
        return Err(Error::InvalidParameter {
            what: format!("radius must be positive and finite, got {radius}"),
        });
    }
    if !theta.is_finite() {
        return Err(Error::NonFinite { what: "theta" });
    }

    // Genericity guard. A multiple root puts a self-crossing on the curve
    // for every theta; otherwise theta must stay clear of the finitely many
    // critical values where the curve passes through a critical point of P.
    let mut critical_points: Vec<Complex64> = Vec::new();
    if n >= 2 {
        let crit = necklace::critical_thetas(p, necklace::SINGULAR_VALUE_TOL)?;
        if let Some(&c) = crit.singular_points.first() {
            return Err(Error::InvalidParameter {
                what: format!(
                    "the curve is singular at {c} for every theta (multiple root); \
                     the asymptote matching is undefined"
                ),
            });
        }
        let theta_mod = normalize_angle(theta, PI);
        for c in crit.values() {
            if circular_dist(theta_mod, c, PI) < CONTINUATION_GUARD {
                return Err(Error::NonGenericTheta {
                    theta,
                    critical: c,
                    guard: CONTINUATION_GUARD,
                });
            }
        }
        critical_points = p.critical_points(necklace::SINGULAR_VALUE_TOL)?;
    }

    let fan = AsymptoteFan::new(n, theta)?;
    let rot = Complex64::from_polar(1.0, -fan.theta());
    let h0 = radius / STEP_DIVISOR;
    let h_floor = radius * STEP_FLOOR_FACTOR;

    let two_n = 2 * n;
    let mut partner = vec![usize::MAX; two_n];
    let mut paths: Vec<Polyline> = Vec::new();
    for k in 0..two_n {
        let (exit_ray, path) = follow_ray(p, rot, &fan, k, radius, h0, h_floor, &critical_points)?;
        partner[k] = exit_ray;
        if exit_ray > k {
            paths.push(path);
        }
    }

    for k in 0..two_n {
        if partner[partner[k]] != k {
            return Err(Error::InconsistentMatching {
                detail: format!(
                    "partner map is not an involution: {k} -> {} -> {}",
                    partner[k],
                    partner[partner[k]]
                ),
            });
        }
    }
    let m = Matching::from_partner(partner)?;
    if let Some((a, b, c, d)) = m.crossing_witness() {
        return Err(Error::InconsistentMatching {
            detail: format!("pairs ({a},{c}) and ({b},{d}) cross"),
        });
    }
    Ok((m, paths))
}

/// Follows the branch leaving ray `k` inward from `|z| = radius` until it
/// exits the circle; returns the exit ray index and the traversed path
/// (first and last points lie on the circle).
fn follow_ray(
    p: &Poly,
    rot: Complex64,
    fan: &AsymptoteFan,
    k: usize,
    radius: f64,
    h0: f64,
    h_floor: f64,
    critical_points: &[Complex64],
) -> Result<(usize, Polyline)> {
    let capture = RAY_CAPTURE_FRACTION * fan.gap();
    let t0 = start_angle(p, rot, radius, fan.angle(k), capture).ok_or_else(|| {
        Error::InconsistentContinuation {
            ray: k,
            detail: "no curve crossing of the start circle near the ray".to_string(),
        }
    })?;
    let mut z = Complex64::from_polar(radius, t0);
    if let Some(zc) = correct(p, rot, z, h0) {
        z = zc;
    }
    let mut dir = unit_tangent(p, rot, z).ok_or(Error::CorrectorDiverged { at: z })?;
    if (dir * z.conj()).re > 0.0 {
        dir = -dir; // start inward
    }

    let mut path = vec![z];
    let mut h = h0;
    // The exit test arms only once the path is clearly inside the circle,
    // so the start crossing itself is not mistaken for the exit.
    let armed_radius = radius - 2.0 * h0;
    let mut armed = false;
    let mut steps = 0usize;
    loop {
        steps += 1;
        if steps > MAX_STEPS {
            return Err(Error::InconsistentContinuation {
                ray: k,
                detail: format!("no circle exit within {MAX_STEPS} steps"),
            });
        }
        let mut h_eff = h.min(NEAR_FIELD_STEP_FACTOR * (1.0 + z.norm()));
        for &c in critical_points {
            h_eff = h_eff.min(CRITICAL_PROXIMITY_STEP_FACTOR * (z - c).norm());
        }
        let predicted = z + dir * h_eff;
        let corrected = correct(p, rot, predicted, 0.5 * h_eff);
        let accepted = corrected.and_then(|zc| {
            let t = unit_tangent(p, rot, zc)?;
            let aligned = if (t * dir.conj()).re >= 0.0 { t } else { -t };
            // Reject sharp turns: near-tangent steps across a tight bend
            // risk hopping onto a neighbouring branch.
            if (aligned * dir.conj()).re < 0.2 {
                None
            } else {
                Some((zc, aligned))
            }
        });
        match accepted {
            Some((zc, aligned)) => {
                z = zc;
                dir = aligned;
                path.push(z);
                if !armed && z.norm() <= armed_radius {
                    armed = true;
                }
                if armed && z.norm() >= radius {
                    break;
                }
                h = (1.3 * h).min(h0);
            }
            None => {
                h *= 0.5;
                if h < h_floor {
                    return Err(Error::CorrectorDiverged { at: predicted });
                }
            }
        }
    }

    // Put the final point exactly on the circle by interpolating the last
    // segment in |z|.
    let a = path[path.len() - 2];
    let b = path[path.len() - 1];
    let (ra, rb) = (a.norm(), b.norm());
    let t = if rb > ra {
        ((radius - ra) / (rb - ra)).clamp(0.0, 1.0)
    } else {
        1.0
    };
    let exit = a + (b - a) * t;
    *path.last_mut().unwrap() = exit;

    let exit_dir = normalize_angle(exit.arg(), 2.0 * PI);
    let exit_ray = fan.nearest_index(exit_dir);
    let dist = circular_dist(exit_dir, fan.angle(exit_ray), 2.0 * PI);
    if dist > capture {
        return Err(Error::InconsistentContinuation {
            ray: k,
            detail: format!(
                "exit direction {exit_dir:.6} is {dist:.3e} rad from the nearest ray {exit_ray}; \
                 radius may be too small"
            ),
        });
    }
    if exit_ray == k {
        return Err(Error::InconsistentContinuation {
            ray: k,
            detail: "path exited at its own start ray".to_string(),
        });
    }
    Ok((exit_ray, Polyline::new(path, false)))
}

/// Finds the angle of the curve crossing of `|z| = radius` nearest to
/// `center`, searching `center ± half_window`: coarse sign scan, then
/// bisection. Returns `None` when no sign change lies in the window.
fn start_angle(
    p: &Poly,
    rot: Complex64,
    radius: f64,
    center: f64,
    half_window: f64,
) -> Option<f64> {
    let g = |t: f64| (rot * p.eval(Complex64::from_polar(radius, t))).im;
    const SAMPLES: usize = 64;
    let lo = center - half_window;
    let step = 2.0 * half_window / SAMPLES as f64;
    let mut prev_t = lo;
    let mut prev_g = g(lo);
    if prev_g == 0.0 {
        return Some(normalize_angle(prev_t, 2.0 * PI));
    }
    let mut best: Option<(f64, f64, f64, f64)> = None; // (dist to center, lo, hi, g(lo))
    for i in 1..=SAMPLES {
        let t = lo + step * i as f64;
        let gt = g(t);
        if gt == 0.0 {
            return Some(normalize_angle(t, 2.0 * PI));
        }
        if (prev_g > 0.0) != (gt > 0.0) {
            let d = (0.5 * (prev_t + t) - center).abs();
            if best.map_or(true, |(bd, ..)| d < bd) {
                best = Some((d, prev_t, t, prev_g));
            }
        }
        prev_t = t;
        prev_g = gt;
    }
    let (_, mut blo, mut bhi, mut glo) = best?;
    for _ in 0..80 {
        let mid = 0.5 * (blo + bhi);
        let gm = g(mid);
        if gm == 0.0 {
            return Some(normalize_angle(mid, 2.0 * PI));
        }
        if (gm > 0.0) == (glo > 0.0) {
            blo = mid;
            glo = gm;
        } else {
            bhi = mid;
        }
    }
    Some(normalize_angle(0.5 * (blo + bhi), 2.0 * PI))
}

/// One Newton corrector: pulls `z0` onto the zero set of `Im(rot * P)`
/// along the gradient, refusing to move farther than `move_cap` in total.
fn correct(p: &Poly, rot: Complex64, z0: Complex64, move_cap: f64) -> Option<Complex64> {
    let mut z = z0;
    for _ in 0..CORRECTOR_ITERATIONS {
        let (pv, dv) = p.eval_with_derivative(z);
        let fv = (rot * pv).im;
        if fv.abs() <= CORRECTOR_RESIDUAL * (1.0 + pv.norm()) {
            return Some(z);
        }
        let w = rot * dv;
        let g2 = w.norm_sqr();
        if g2 == 0.0 {
            return None;
        }
        z -= Complex64::new(w.im, w.re) * (fv / g2); // step along i * conj(w)
        if (z - z0).norm() > move_cap {
            return None;
        }
    }
    None
}

/// Unit tangent of the level set at `z` (sign is arbitrary): the gradient of
/// `Im(rot * P)` is `i * conj(rot * P')`, and the tangent is its quarter
/// turn, `-conj(rot * P')` normalized.
fn unit_tangent(p: &Poly, rot: Complex64, z: Complex64) -> Option<Complex64> {
    let (_, dv) = p.eval_with_derivative(z);
    let w = rot * dv;
    let nrm = w.norm();
    if nrm == 0.0 {
        return None;
    }
    Some(Complex64::new(-w.re, w.im) / nrm)
}
