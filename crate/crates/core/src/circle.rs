//! Intersection of the curve with the unit circle.
//!
//! For a monic `P` with every root on the unit circle, the curve
//! `Im(e^{-i theta} P(z)) = 0` meets the circle in the roots themselves plus
//! a regular n-gon with phase `Omega = (2 theta - sum Arg z_j)/n - pi`. This
//! module computes that gon, finds all circle zeros numerically, and matches
//! the two against each other.

use num_complex::Complex64;

use crate::angle::{circular_dist, normalize_angle, Angle};
use crate::error::{Error, Result};
use crate::poly::{Poly, RootMultiset};

use std::f64::consts::PI;

const TWO_PI: f64 = 2.0 * PI;

/// How far a root may sit from the unit circle before circle-specific
/// operations reject the multiset.
pub const CIRCLE_MEMBERSHIP_TOL: f64 = 1e-9;

/// Default tolerance for matching found circle zeros against predictions.
pub const VERIFY_TOL: f64 = 1e-8;

/// Default bracket width / value floor for the circle zero solver.
pub const CIRCLE_SOLVER_TOL: f64 = 1e-12;

/// Circular clustering distance for merging numerically identical zeros.
const ZERO_CLUSTER_TOL: f64 = 1e-9;

/// Relative derivative gate for deciding a zero's order.
const ORDER_GATE: f64 = 1e-7;

/// Default sample count for [`circle_zeros`].
pub fn default_samples(degree: usize) -> usize {
    4096.max(64 * degree)
}

/// Gon phase `Omega = (2 theta - sum_j Arg z_j)/n - pi`, reduced mod 2 pi.
///
/// Root arguments are taken in `[0, 2 pi)` (the crate-wide determination);
/// a different determination would shift `Omega` by multiples of `2 pi / n`,
/// which leaves the vertex set unchanged.
pub fn omega(roots: &RootMultiset, theta: f64) -> Result<Angle> {
    roots.check_on_unit_circle(CIRCLE_MEMBERSHIP_TOL)?;
    let n = roots.degree() as f64;
    Ok(Angle::two_pi((2.0 * theta - roots.arg_sum()) / n - PI))
}

/// The regular n-gon cut out of the unit circle by the curve.
#[derive(Debug, Clone)]
pub struct NGon {
    omega: f64,
    vertices: Vec<Complex64>,
}

impl NGon {
    /// Phase of vertex 0, in `[0, 2 pi)`.
    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    /// Vertices `e^{i (Omega + 2 k pi / n)}` for `k = 0..n`.
    pub fn vertices(&self) -> &[Complex64] {
        &self.vertices
    }

    /// Vertex angles in `[0, 2 pi)`, in vertex order (not sorted).
    pub fn vertex_angles(&self) -> Vec<f64> {
        let n = self.n() as f64;
        (0..self.n())
            .map(|k| normalize_angle(self.omega + TWO_PI * k as f64 / n, TWO_PI))
            .collect()
    }

    /// Circular distance from `angle` to the nearest vertex.
    pub fn nearest_vertex_distance(&self, angle: f64) -> f64 {
        self.vertex_angles()
            .iter()
            .map(|&v| circular_dist(angle, v, TWO_PI))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Build the predicted regular n-gon for the given roots and theta.
pub fn gon_vertices(roots: &RootMultiset, theta: f64) -> Result<NGon> {
    let om = omega(roots, theta)?.value();
    let n = roots.degree();
    let vertices = (0..n)
        .map(|k| {
            let ang = normalize_angle(om + TWO_PI * k as f64 / n as f64, TWO_PI);
            Complex64::from_polar(1.0, ang)
        })
        .collect();
    Ok(NGon { omega: om, vertices })
}

/// One zero of `t -> Im(e^{-i theta} P(e^{i t}))`.
#[derive(Debug, Clone, Copy)]
pub struct CircleZero {
    /// Position in `[0, 2 pi)`.
    pub angle: f64,
    /// `|g(angle)|` after polishing.
    pub residual: f64,
    /// Order of the zero (1 for transversal crossings).
    pub multiplicity: u32,
}

/// All circle zeros, sorted by angle.
#[derive(Debug, Clone, Default)]
pub struct CircleZeroSet {
    pub zeros: Vec<CircleZero>,
}

impl CircleZeroSet {
    /// Number of distinct zeros.
    pub fn distinct(&self) -> usize {
        self.zeros.len()
    }

    /// Total zero count, orders included.
    pub fn total_multiplicity(&self) -> usize {
        self.zeros.iter().map(|z| z.multiplicity as usize).sum()
    }

    /// Angles repeated according to multiplicity.
    pub fn expanded(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.total_multiplicity());
        for z in &self.zeros {
            for _ in 0..z.multiplicity {
                out.push(z.angle);
            }
        }
        out
    }
}

/// `g(t) = Im(e^{-i theta} P(e^{i t}))` and its t-derivatives.
///
/// With `F_0 = e^{-i theta} P` and `F_{j+1}(z) = i z F_j'(z)`, every
/// derivative is again a trigonometric polynomial:
/// `g^(j)(t) = Im(F_j(e^{i t}))` where `F_j[k] = (i k)^j F_0[k]`.
struct CircleFn {
    levels: Vec<Vec<Complex64>>,
    scales: Vec<f64>,
}

impl CircleFn {
    fn new(p: &Poly, theta: f64, max_order: usize) -> CircleFn {
        let rot = Complex64::from_polar(1.0, -theta);
        let base: Vec<Complex64> = p.coeffs().iter().map(|&c| rot * c).collect();
        let mut levels = vec![base];
        for _ in 0..max_order {
            let prev = levels.last().unwrap();
            let next: Vec<Complex64> = prev
                .iter()
                .enumerate()
                .map(|(k, &c)| Complex64::new(0.0, k as f64) * c)
                .collect();
            levels.push(next);
        }
        let scales = levels
            .iter()
            .map(|l| l.iter().map(|c| c.norm()).sum())
            .collect();
        CircleFn { levels, scales }
    }

    /// `g^(order)(t)`.
    fn eval(&self, order: usize, t: f64) -> f64 {
        let w = Complex64::from_polar(1.0, t);
        let coeffs = &self.levels[order];
        let mut v = *coeffs.last().unwrap();
        for &c in coeffs.iter().rev().skip(1) {
            v = v * w + c;
        }
        v.im
    }

    fn scale(&self, order: usize) -> f64 {
        self.scales[order]
    }
}

/// Safeguarded bisection of `g` (level `order`) to width `tol` on a bracket
/// with a strict sign change, followed by Newton polishing against the next
/// derivative level, clamped to the bracket.
fn refine_zero(f: &CircleFn, order: usize, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut glo = f.eval(order, lo);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let gm = f.eval(order, mid);
        if gm == 0.0 {
            return mid;
        }
        if (gm > 0.0) == (glo > 0.0) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
        if mid == lo || mid == hi {
            break;
        }
    }
    let mut t = 0.5 * (lo + hi);
    for _ in 0..12 {
        let g = f.eval(order, t);
        if g == 0.0 {
            break;
        }
        let d = f.eval(order + 1, t);
        if d == 0.0 {
            break;
        }
        let step = g / d;
        let next = (t - step).clamp(lo, hi);
        if (next - t).abs() < 1e-16 {
            t = next;
            break;
        }
        t = next;
    }
    t
}

/// All zeros of `Im(e^{-i theta} P(e^{i t}))` on `[0, 2 pi)`.
///
/// Transversal zeros are bracketed by sign changes over a uniform sample
/// grid (at least `16 * degree` points), bisected to width `tol`, and Newton
/// polished. Dips of `|g|` that do not change sign are refined to the
/// critical point between the neighbouring samples and classified as either
/// an even-order zero, a pair of nearly coincident transversal zeros, or no
/// zero at all. Each zero is reported with the order read off from the first
/// derivative level that is clearly nonzero there.
///
/// Errors with [`Error::DegenerateCircle`] when `g` vanishes at every sample
/// (the whole circle lies on the curve).
pub fn circle_zeros(p: &Poly, theta: f64, samples: usize, tol: f64) -> Result<CircleZeroSet> {
    let n = p.degree();
    let min_samples = 16.max(16 * n);
    if samples < min_samples {
        return Err(Error::InvalidParameter {
            what: format!("samples = {samples} below minimum {min_samples}"),
        });
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidParameter { what: format!("tol = {tol}") });
    }

    // Order estimation needs derivative levels up to n + 1 (the largest
    // structurally possible order is root multiplicity + 1 <= n + 1), plus
    // one more level to polish even-order zeros via g'.
    let f = CircleFn::new(p, theta, n + 2);
    let h = TWO_PI / samples as f64;
    let g: Vec<f64> = (0..samples).map(|i| f.eval(0, h * i as f64)).collect();

    let max_abs = g.iter().fold(0.0f64, |a, &v| a.max(v.abs()));
    if max_abs <= tol.max(1e-13) * f.scale(0) {
        return Err(Error::DegenerateCircle);
    }

    let mut raw: Vec<(f64, f64)> = Vec::new(); // (angle, residual)

    // Samples that are exact zeros.
    for (i, &gi) in g.iter().enumerate() {
        if gi == 0.0 {
            raw.push((h * i as f64, 0.0));
        }
    }

    // Strict sign-change brackets (wrapping).
    for i in 0..samples {
        let j = (i + 1) % samples;
        if g[i] * g[j] < 0.0 {
            let lo = h * i as f64;
            let t = refine_zero(&f, 0, lo, lo + h, tol);
            raw.push((normalize_angle(t, TWO_PI), f.eval(0, t).abs()));
        }
    }

    // Dips of |g| with no sign change: even-order zeros or straddled pairs.
    let dip_gate = (16.0 * f.scale(2) * h * h).max(1e-7 * f.scale(0));
    for i in 0..samples {
        let prev = (i + samples - 1) % samples;
        let next = (i + 1) % samples;
        let (gp, gi, gn) = (g[prev], g[i], g[next]);
        if gi == 0.0 || gp == 0.0 || gn == 0.0 {
            continue;
        }
        let same_sign = (gp > 0.0) == (gi > 0.0) && (gn > 0.0) == (gi > 0.0);
        let strict_min = gi.abs() < gp.abs() && gi.abs() <= gn.abs();
        if !(same_sign && strict_min && gi.abs() <= dip_gate) {
            continue;
        }
        let lo = h * prev as f64;
        let hi = lo + 2.0 * h;
        let dlo = f.eval(1, lo);
        let dhi = f.eval(1, hi);
        if dlo * dhi >= 0.0 {
            continue; // no interior critical point; sampling noise
        }
        let tc = refine_zero(&f, 1, lo, hi, tol);
        let gc = f.eval(0, tc);
        if gc.abs() <= 1e-11 * f.scale(0) {
            // Even-order zero at the critical point itself.
            raw.push((normalize_angle(tc, TWO_PI), gc.abs()));
        } else if (gc > 0.0) != (gi > 0.0) {
            // g crosses zero twice inside the dip: split and bisect each.
            let t1 = refine_zero(&f, 0, lo, tc, tol);
            let t2 = refine_zero(&f, 0, tc, hi, tol);
            raw.push((normalize_angle(t1, TWO_PI), f.eval(0, t1).abs()));
            raw.push((normalize_angle(t2, TWO_PI), f.eval(0, t2).abs()));
        }
    }

    // Cluster circularly, keep the best-polished representative per cluster.
    raw.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let mut clusters: Vec<Vec<(f64, f64)>> = Vec::new();
    for cand in raw {
        match clusters.last_mut() {
            Some(last) if cand.0 - last.last().unwrap().0 <= ZERO_CLUSTER_TOL => {
                last.push(cand)
            }
            _ => clusters.push(vec![cand]),
        }
    }
    if clusters.len() > 1 {
        let first = clusters.first().unwrap().first().unwrap().0;
        let last = clusters.last().unwrap().last().unwrap().0;
        if first + TWO_PI - last <= ZERO_CLUSTER_TOL {
            let tail = clusters.pop().unwrap();
            clusters[0].extend(tail);
        }
    }

    let mut zeros: Vec<CircleZero> = clusters
        .into_iter()
        .map(|members| {
            let &(angle, residual) = members
                .iter()
                .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                .unwrap();
            let mut multiplicity = (n + 1) as u32;
            for order in 1..=n + 1 {
                if f.eval(order, angle).abs() > ORDER_GATE * f.scale(order) {
                    multiplicity = order as u32;
                    break;
                }
            }
            CircleZero { angle, residual, multiplicity }
        })
        .collect();
    zeros.sort_by(|a, b| a.angle.partial_cmp(&b.angle).unwrap());
    Ok(CircleZeroSet { zeros })
}

/// A matched (predicted, found) pair of circle angles.
#[derive(Debug, Clone, Copy)]
pub struct MatchedPair {
    pub predicted: f64,
    pub found: f64,
    pub distance: f64,
}

/// Outcome of matching found circle zeros against roots plus gon.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    /// True when the matching is a bijection within tolerance.
    pub pass: bool,
    /// Gon phase used for the prediction.
    pub omega: f64,
    /// Largest matched circular distance (0 when nothing matched).
    pub max_distance: f64,
    /// Greedily matched pairs, in matching order.
    pub matched: Vec<MatchedPair>,
    /// Predicted angles that found no partner within tolerance.
    pub unmatched_predicted: Vec<f64>,
    /// Found angles that matched no prediction within tolerance.
    pub unmatched_found: Vec<f64>,
    /// The full predicted multiset (root angles with multiplicity, then gon
    /// angles), sorted.
    pub predicted: Vec<f64>,
    /// The raw solver output.
    pub zeros: CircleZeroSet,
}

/// Verify that the circle zeros are exactly `roots union gon`.
///
/// Both sides are treated as multisets of `2 n` angles: each root
/// contributes its multiplicity, each gon vertex contributes once (a root on
/// the gon therefore occupies both slots), and the found zeros contribute
/// their orders. Pairs are matched greedily, globally nearest first, only
/// within `tol`; the report carries whatever remains unmatched.
pub fn verify_proposition(roots: &RootMultiset, theta: f64, tol: f64) -> Result<VerificationReport> {
    let gon = gon_vertices(roots, theta)?;
    let p = Poly::from_roots(roots);
    let zeros = circle_zeros(&p, theta, default_samples(roots.degree()), CIRCLE_SOLVER_TOL)?;

    let mut predicted: Vec<f64> = Vec::with_capacity(2 * roots.degree());
    for e in roots.entries() {
        let ang = normalize_angle(e.root.arg(), TWO_PI);
        for _ in 0..e.multiplicity {
            predicted.push(ang);
        }
    }
    predicted.extend(gon.vertex_angles());
    predicted.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let found = zeros.expanded();

    // Greedy globally-nearest-first matching, restricted to pairs within tol.
    let mut candidates: Vec<(f64, usize, usize)> = Vec::new();
    for (i, &a) in predicted.iter().enumerate() {
        for (j, &b) in found.iter().enumerate() {
            let d = circular_dist(a, b, TWO_PI);
            if d <= tol {
                candidates.push((d, i, j));
            }
        }
    }
    candidates.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut used_pred = vec![false; predicted.len()];
    let mut used_found = vec![false; found.len()];
    let mut matched = Vec::new();
    let mut max_distance: f64 = 0.0;
    for (d, i, j) in candidates {
        if used_pred[i] || used_found[j] {
            continue;
        }
        used_pred[i] = true;
        used_found[j] = true;
        max_distance = max_distance.max(d);
        matched.push(MatchedPair { predicted: predicted[i], found: found[j], distance: d });
    }
    let unmatched_predicted: Vec<f64> = predicted
        .iter()
        .zip(&used_pred)
        .filter(|(_, &u)| !u)
        .map(|(&a, _)| a)
        .collect();
    let unmatched_found: Vec<f64> = found
        .iter()
        .zip(&used_found)
        .filter(|(_, &u)| !u)
        .map(|(&a, _)| a)
        .collect();
    let pass = unmatched_predicted.is_empty() && unmatched_found.is_empty();
    Ok(VerificationReport {
        pass,
        omega: gon.omega(),
        max_distance,
        matched,
        unmatched_predicted,
        unmatched_found,
        predicted,
        zeros,
    })
}

/// The theta (mod pi) that places root `index` on gon slot `k`:
/// `theta = (n (Arg z_i + pi - 2 k pi / n) + sum_j Arg z_j) / 2`.
///
/// Any slot produces a valid theta; different `k` differ by multiples of pi/1
/// folded into the mod-pi representative.
pub fn theta_placing_root_on_gon(roots: &RootMultiset, index: usize, k: usize) -> Result<Angle> {
    roots.check_on_unit_circle(CIRCLE_MEMBERSHIP_TOL)?;
    if index >= roots.entries().len() {
        return Err(Error::RootIndexOutOfRange { index, len: roots.entries().len() });
    }
    let n = roots.degree() as f64;
    let arg_i = normalize_angle(roots.entries()[index].root.arg(), TWO_PI);
    let theta = (n * (arg_i + PI - TWO_PI * k as f64 / n) + roots.arg_sum()) / 2.0;
    Ok(Angle::pi(theta))
}
