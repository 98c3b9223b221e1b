//! Tangent lines of the curve at a root, and how they relate to the circle.
//!
//! Near a root `z0` of multiplicity `k`, write `P(z) = (z - z0)^k Q(z)` with
//! cofactor `q = Q(z0) != 0`. Substituting `z = z0 + eps e^{i phi}` gives
//!
//! ```text
//! e^{-i theta} P(z) = eps^k |q| e^{i (k phi - theta + Arg q)} (1 + O(eps)),
//! ```
//!
//! whose imaginary part vanishes to leading order exactly when
//! `k phi - theta + Arg q = 0 (mod pi)`. The curve therefore passes through
//! the root along `k` straight tangent lines
//!
//! ```text
//! phi_m = (theta - Arg q + m pi) / k   (mod pi),   m = 0 .. k,
//! ```
//!
//! evenly spaced by `pi / k`.
//!
//! For a root on the unit circle, restricting to the circle
//! (`z = e^{i(psi0 + s)}`, so `z - z0 = i z0 s (1 + O(s))`) turns the same
//! expansion into `s^k |q| sin(k psi0 + k pi/2 - theta + Arg q) (1 + O(s))`:
//! the restriction vanishes to order exactly `k` unless the circle's own
//! tangent direction `psi0 + pi/2` is one of the `phi_m`, in which case the
//! order is higher. Since the total vanishing order around the circle is
//! pinned at `2n` (n roots with multiplicity plus n polygon vertices), the
//! excess order appears exactly when the root sits on a polygon vertex.
//! [`circle_tangency_test`] measures both sides of that equivalence
//! independently — tangent-line coincidence on one side, vertex proximity on
//! the other — and reports whether they agree.

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

use crate::angle::{circular_dist, normalize_angle};
use crate::circle::{gon_vertices, CIRCLE_MEMBERSHIP_TOL};
use crate::error::{Error, Result};
use crate::poly::{Poly, RootMultiset};

const TWO_PI: f64 = 2.0 * PI;

/// Default angular tolerance (radians) for the tangency decisions.
pub const TANGENCY_TOL: f64 = 1e-8;

/// Angular gaps at or below `tol * BAND_TRUE_FACTOR` count as coincident.
pub const BAND_TRUE_FACTOR: f64 = 0.1;

/// Angular gaps at or above `tol * BAND_FALSE_FACTOR` count as distinct;
/// gaps strictly between the two thresholds are reported as inconclusive.
pub const BAND_FALSE_FACTOR: f64 = 10.0;

/// Per-division remainder bound, relative to the dividend's coefficient
/// scale: a claimed root whose synthetic-division remainder exceeds this is
/// rejected as not actually being a root (of the claimed multiplicity).
pub const DEFLATION_RESIDUAL_TOL: f64 = 1e-9;

/// Relative agreement required between the deflated cofactor magnitude and
/// the independent pairwise-product oracle `|lead| prod |z0 - z_j|^{m_j}`.
/// Division noise grows with degree and with root clustering, so this is
/// looser than the remainder bound while still catching O(1) inconsistencies.
pub const DEFLATION_CHECK_TOL: f64 = 1e-6;

/// Cofactors below `DEFLATION_VANISH_FACTOR * max_coeff * max(1, |z0|)^deg`
/// are treated as zero, i.e. the recorded multiplicity understates the truth.
pub const DEFLATION_VANISH_FACTOR: f64 = 1e-10;

/// Divide an ascending coefficient vector by `(z - z0)`, returning the
/// quotient and the remainder (the dividend's value at `z0`).
fn divide_once(coeffs: &[Complex64], z0: Complex64) -> (Vec<Complex64>, Complex64) {
    let n = coeffs.len() - 1;
    let mut b = vec![Complex64::new(0.0, 0.0); n];
    b[n - 1] = coeffs[n];
    for i in (0..n - 1).rev() {
        b[i] = coeffs[i + 1] + z0 * b[i + 1];
    }
    let remainder = coeffs[0] + z0 * b[0];
    (b, remainder)
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// Peel the root `roots.entries()[index]` off `p`, returning its
/// multiplicity `k` and the cofactor `q = Q(z0)` where `P = (z - z0)^k Q`.
///
/// `p` must have the same degree as the multiset and must actually vanish at
/// the root to the claimed order: every synthetic-division remainder is
/// checked against [`DEFLATION_RESIDUAL_TOL`], and the cofactor magnitude is
/// cross-checked against the independent product
/// `|lead| * prod_{j != index} |z0 - z_j|^{m_j}` within
/// [`DEFLATION_CHECK_TOL`].
pub fn deflate_at_root(
    p: &Poly,
    roots: &RootMultiset,
    index: usize,
) -> Result<(u32, Complex64)> {
    let entries = roots.entries();
    if index >= entries.len() {
        return Err(Error::RootIndexOutOfRange {
            index,
            len: entries.len(),
        });
    }
    if p.is_zero() {
        return Err(Error::InvalidParameter {
            what: "cannot deflate the zero polynomial".to_string(),
        });
    }
    if p.degree() != roots.degree() {
        return Err(Error::InvalidParameter {
            what: format!(
                "polynomial degree {} does not match the multiset degree {}",
                p.degree(),
                roots.degree()
            ),
        });
    }
    let z0 = entries[index].root;
    let k = entries[index].multiplicity;
    let growth = z0.norm().max(1.0).powi(p.degree() as i32);

    let mut cur: Vec<Complex64> = p.coeffs().to_vec();
    for step in 0..k {
        let coeff_scale = cur.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let scale = coeff_scale * cur.len() as f64 * growth;
        let (quotient, remainder) = divide_once(&cur, z0);
        if remainder.norm() > DEFLATION_RESIDUAL_TOL * scale {
            return Err(Error::InvalidParameter {
                what: format!(
                    "{z0} is not a root of order {} (division {} left remainder {:.3e})",
                    k,
                    step + 1,
                    remainder.norm()
                ),
            });
        }
        cur = quotient;
    }
    let q = horner(&cur, z0);
    if !q.re.is_finite() || !q.im.is_finite() {
        return Err(Error::NonFinite {
            what: "deflated cofactor",
        });
    }
    if q.norm() <= DEFLATION_VANISH_FACTOR * p.max_coeff() * growth {
        return Err(Error::DeflationFailed { index });
    }

    let lead = p.coeffs()[p.degree()].norm();
    let mut oracle = lead;
    for (j, e) in entries.iter().enumerate() {
        if j != index {
            oracle *= (z0 - e.root).norm().powi(e.multiplicity as i32);
        }
    }
    let mismatch = (q.norm() - oracle).abs();
    if mismatch > DEFLATION_CHECK_TOL * q.norm().max(oracle) {
        return Err(Error::InvalidParameter {
            what: format!(
                "deflated cofactor magnitude {:.6e} disagrees with the root-product value {:.6e}",
                q.norm(),
                oracle
            ),
        });
    }
    Ok((k, q))
}

/// The `k` undirected tangent lines of the curve at a root of multiplicity
/// `k` with cofactor `q`: `(theta - Arg q + m pi)/k mod pi` for `m = 0..k`,
/// sorted ascending in `[0, pi)`. `Arg q` is taken in `[0, 2 pi)`.
pub fn tangent_directions(theta: f64, multiplicity: u32, cofactor: Complex64) -> Result<Vec<f64>> {
    if !theta.is_finite() {
        return Err(Error::NonFinite { what: "theta" });
    }
    if multiplicity == 0 {
        return Err(Error::ZeroMultiplicity { index: 0 });
    }
    if !cofactor.re.is_finite() || !cofactor.im.is_finite() {
        return Err(Error::NonFinite { what: "cofactor" });
    }
    if cofactor.norm() == 0.0 {
        return Err(Error::InvalidParameter {
            what: "tangent directions need a nonzero cofactor".to_string(),
        });
    }
    let k = multiplicity as f64;
    let arg_q = normalize_angle(cofactor.arg(), TWO_PI);
    let mut dirs: Vec<f64> = (0..multiplicity)
        .map(|m| normalize_angle((theta - arg_q + m as f64 * PI) / k, PI))
        .collect();
    dirs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(dirs)
}

/// Everything [`circle_tangency_test`] determines about one root.
#[derive(Debug, Clone)]
pub struct TangentReport {
    /// The root in question.
    pub root: Complex64,
    /// Its multiplicity `k`.
    pub multiplicity: u32,
    /// Cofactor `Q(z0)` of the deflation `P = (z - z0)^k Q`.
    pub cofactor: Complex64,
    /// The `k` tangent lines of the curve at the root, mod pi, sorted.
    pub directions: Vec<f64>,
    /// The unit circle's tangent line at the root, `Arg z0 + pi/2 mod pi`.
    pub circle_tangent: f64,
    /// Circular distance (mod pi) from `circle_tangent` to the nearest
    /// curve tangent line.
    pub min_tangent_gap: f64,
    /// Whether a curve tangent coincides with the circle tangent;
    /// `None` when the gap falls inside the inconclusive band.
    pub coincides: Option<bool>,
    /// Circular distance (mod 2 pi) from the root's angle to the nearest
    /// polygon vertex angle.
    pub gon_vertex_gap: f64,
    /// Whether the root sits on a polygon vertex; `None` when inconclusive.
    pub on_gon: Option<bool>,
    /// Whether the two decisions agree (they must, when roots lie on the
    /// unit circle); `None` if either side was inconclusive.
    pub agrees: Option<bool>,
}

fn banded(gap: f64, tol: f64) -> Option<bool> {
    if gap <= tol * BAND_TRUE_FACTOR {
        Some(true)
    } else if gap >= tol * BAND_FALSE_FACTOR {
        Some(false)
    } else {
        None
    }
}

/// For each distinct root (all on the unit circle), decide independently
/// (a) whether one of the curve's tangent lines at the root coincides with
/// the circle's tangent there and (b) whether the root sits on a vertex of
/// the regular polygon the curve cuts out of the circle, then record whether
/// the two decisions agree.
///
/// Gaps inside `(tol * BAND_TRUE_FACTOR, tol * BAND_FALSE_FACTOR)` are
/// reported as `None` rather than guessed. `tol` must lie in `(0, 1e-3]` so
/// the decision bands stay well below the `pi/k` spacing of tangent lines.
pub fn circle_tangency_test(
    roots: &RootMultiset,
    theta: f64,
    tol: f64,
) -> Result<Vec<TangentReport>> {
    if !theta.is_finite() {
        return Err(Error::NonFinite { what: "theta" });
    }
    if !tol.is_finite() || tol <= 0.0 || tol > 1e-3 {
        return Err(Error::InvalidParameter {
            what: format!("tangency tolerance must lie in (0, 1e-3], got {tol}"),
        });
    }
    roots.check_on_unit_circle(CIRCLE_MEMBERSHIP_TOL)?;
    let gon = gon_vertices(roots, theta)?;
    let p = Poly::from_roots(roots);

    let mut reports = Vec::with_capacity(roots.entries().len());
    for (i, e) in roots.entries().iter().enumerate() {
        let (multiplicity, cofactor) = deflate_at_root(&p, roots, i)?;
        let directions = tangent_directions(theta, multiplicity, cofactor)?;
        let psi = normalize_angle(e.root.arg(), TWO_PI);
        let circle_tangent = normalize_angle(psi + FRAC_PI_2, PI);
        let min_tangent_gap = directions
            .iter()
            .map(|&d| circular_dist(d, circle_tangent, PI))
            .fold(f64::INFINITY, f64::min);
        let coincides = banded(min_tangent_gap, tol);
        let gon_vertex_gap = gon.nearest_vertex_distance(psi);
        let on_gon = banded(gon_vertex_gap, tol);
        let agrees = match (coincides, on_gon) {
            (Some(a), Some(b)) => Some(a == b),
            _ => None,
        };
        reports.push(TangentReport {
            root: e.root,
            multiplicity,
            cofactor,
            directions,
            circle_tangent,
            min_tangent_gap,
            coincides,
            gon_vertex_gap,
            on_gon,
            agrees,
        });
    }
    Ok(reports)
}
