//! Plane tracing of the curve `Im(e^{-i theta} P(z)) = 0`.
//!
//! For a degree-`n` polynomial the curve has `2n` asymptote rays at angles
//! `(pi k + theta)/n`, `k = 0..2n-1`; far from the roots it consists of `2n`
//! nearly straight arms, and generically it decomposes into `n` disjoint
//! unbounded branches, each joining two arms. This module provides
//!
//! * [`implicit_value`] — the defining real function of the curve,
//! * [`trace`] — a marching-squares contour extraction over a [`Window`],
//!   with per-vertex Newton refinement along the gradient,
//! * [`AsymptoteFan`] / [`asymptote_fan`] — the `2n` ray directions,
//! * [`matching`] — which arms join which, computed by predictor–corrector
//!   continuation from a large circle,
//! * [`components`] — traced polylines tagged with the fan indices of their
//!   two arms.
//!
//! Everything here is sequential and deterministic: identical inputs produce
//! identical outputs, bit for bit, on every run.

mod continuation;
mod march;

pub use continuation::{
    asymptote_validity_radius, matching, matching_with_paths, CONTINUATION_GUARD,
};
pub use march::{trace, TRACE_RESIDUAL_FACTOR};

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::angle::{circular_dist, normalize_angle};
use crate::error::{Error, Result};
use crate::poly::Poly;

/// Axis-aligned square region of the plane with a uniform evaluation grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Window {
    center: Complex64,
    half_width: f64,
    cells: usize,
}

impl Window {
    /// Minimum number of grid cells per axis.
    pub const MIN_CELLS: usize = 8;

    /// Creates a window centered at `center` spanning `center ± half_width`
    /// on both axes, subdivided into `cells × cells` grid cells.
    pub fn new(center: Complex64, half_width: f64, cells: usize) -> Result<Self> {
        if !center.re.is_finite() || !center.im.is_finite() {
            return Err(Error::NonFinite {
                what: "window center",
            });
        }
        if !half_width.is_finite() || half_width <= 0.0 {
            return Err(Error::InvalidWindow {
                what: format!("half_width must be positive and finite, got {half_width}"),
            });
        }
        if cells < Self::MIN_CELLS {
            return Err(Error::InvalidWindow {
                what: format!("need at least {} cells per axis, got {cells}", Self::MIN_CELLS),
            });
        }
        Ok(Window {
            center,
            half_width,
            cells,
        })
    }

    pub fn center(&self) -> Complex64 {
        self.center
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn cells(&self) -> usize {
        self.cells
    }

    /// Side length of one grid cell.
    pub fn cell_size(&self) -> f64 {
        2.0 * self.half_width / self.cells as f64
    }

    /// Grid vertex `(i, j)` with `i, j` in `0..=cells`; `(0, 0)` is the
    /// bottom-left corner.
    pub fn vertex(&self, i: usize, j: usize) -> Complex64 {
        let h = self.cell_size();
        Complex64::new(
            self.center.re - self.half_width + h * i as f64,
            self.center.im - self.half_width + h * j as f64,
        )
    }

    /// Whether `z` lies inside the window (boundary inclusive).
    pub fn contains(&self, z: Complex64) -> bool {
        (z.re - self.center.re).abs() <= self.half_width
            && (z.im - self.center.im).abs() <= self.half_width
    }

    /// Distance from `z` to the window boundary (positive inside).
    pub fn boundary_distance(&self, z: Complex64) -> f64 {
        let dx = self.half_width - (z.re - self.center.re).abs();
        let dy = self.half_width - (z.im - self.center.im).abs();
        dx.min(dy)
    }
}

/// Ordered list of curve points; `closed` means the last point connects back
/// to the first. Trace output satisfies: every point has curve residual at
/// most `1e-10 * (1 + max |P| over the sampled grid)`, and consecutive points
/// lie within 1.25 grid-cell diagonals of each other (the linking geometry
/// bounds them by one diagonal; Newton refinement may add a small fraction).
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    pub points: Vec<Complex64>,
    pub closed: bool,
}

impl Polyline {
    pub fn new(points: Vec<Complex64>, closed: bool) -> Self {
        Polyline { points, closed }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// The `2n` asymptote directions `(pi k + theta)/n`, `k = 0..2n-1`.
///
/// The direction *set* is unchanged when `theta` moves by `pi`, so `theta`
/// is canonicalized to `[0, pi)`; with that convention the angles are
/// strictly increasing in `[0, 2pi)` with successive gaps of exactly `pi/n`,
/// and fan indices are stable under `theta -> theta + pi`.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoteFan {
    n: usize,
    theta: f64,
    angles: Vec<f64>,
}

impl AsymptoteFan {
    /// Builds the fan for a degree-`n` polynomial at angle parameter `theta`.
    pub fn new(n: usize, theta: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter {
                what: "asymptote fan needs degree n >= 1".to_string(),
            });
        }
        if !theta.is_finite() {
            return Err(Error::NonFinite { what: "theta" });
        }
        let theta = normalize_angle(theta, PI);
        let angles = (0..2 * n)
            .map(|k| (PI * k as f64 + theta) / n as f64)
            .collect();
        Ok(AsymptoteFan { n, theta, angles })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The canonicalized angle parameter in `[0, pi)`.
    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    /// Direction of ray `k`.
    pub fn angle(&self, k: usize) -> f64 {
        self.angles[k]
    }

    /// Angular gap between consecutive rays, `pi/n`.
    pub fn gap(&self) -> f64 {
        PI / self.n as f64
    }

    /// Index of the ray closest to `direction` (circular distance; the
    /// smaller index wins exact ties).
    pub fn nearest_index(&self, direction: f64) -> usize {
        let mut best = 0usize;
        let mut best_d = f64::INFINITY;
        for (k, &a) in self.angles.iter().enumerate() {
            let d = circular_dist(direction, a, 2.0 * PI);
            if d < best_d {
                best_d = d;
                best = k;
            }
        }
        best
    }
}

/// Builds the [`AsymptoteFan`] for degree `n` and angle `theta`.
pub fn asymptote_fan(n: usize, theta: f64) -> Result<AsymptoteFan> {
    AsymptoteFan::new(n, theta)
}

/// A fixed-point-free involution on `{0, ..., 2n-1}`: which asymptote rays
/// lie on the same connected branch of the curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    partner: Vec<usize>,
}

impl Matching {
    /// Validates and wraps a partner map: `partner[k]` is the ray matched to
    /// ray `k`. Must be a fixed-point-free involution.
    pub fn from_partner(partner: Vec<usize>) -> Result<Self> {
        let m = partner.len();
        for (k, &p) in partner.iter().enumerate() {
            if p >= m {
                return Err(Error::InconsistentMatching {
                    detail: format!("partner[{k}] = {p} out of range (size {m})"),
                });
            }
            if p == k {
                return Err(Error::InconsistentMatching {
                    detail: format!("ray {k} matched to itself"),
                });
            }
            if partner[p] != k {
                return Err(Error::InconsistentMatching {
                    detail: format!(
                        "not an involution: partner[{k}] = {p} but partner[{p}] = {}",
                        partner[p]
                    ),
                });
            }
        }
        Ok(Matching { partner })
    }

    /// Number of rays (`2n`).
    pub fn size(&self) -> usize {
        self.partner.len()
    }

    /// The ray matched to ray `k`.
    pub fn partner(&self, k: usize) -> usize {
        self.partner[k]
    }

    /// Conjugates the pairing by the cyclic index shift `k -> k + shift`:
    /// the result pairs `k` with `partner(k + shift) - shift` (mod `2n`).
    ///
    /// This is the relabeling that keeps a geometrically constant matching
    /// fixed when the parameter crosses a multiple of pi: the fan indices
    /// are canonical for `theta mod pi`, and each crossing of the seam
    /// renames the geometric ray of canonical index `k + 1` to `k`.
    pub fn relabeled(&self, shift: usize) -> Matching {
        let m = self.partner.len();
        let s = shift % m;
        let partner = (0..m)
            .map(|k| (self.partner[(k + s) % m] + m - s) % m)
            .collect();
        Matching { partner }
    }

    /// The pairs `(k, k')` with `k < k'`, in ascending order of `k`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.partner.len() / 2);
        for (k, &p) in self.partner.iter().enumerate() {
            if k < p {
                out.push((k, p));
            }
        }
        out
    }

    /// A matching is crossing if some pairs `(a, c)` and `(b, d)` interleave
    /// as `a < b < c < d`; disjoint plane branches ending on a circle in
    /// convex position can never cross, so a crossing indicates a numerical
    /// failure (or a non-generic curve).
    pub fn crossing_witness(&self) -> Option<(usize, usize, usize, usize)> {
        let pairs = self.pairs();
        for (i, &(a, c)) in pairs.iter().enumerate() {
            for &(b, d) in &pairs[i + 1..] {
                // pairs are ordered with a < b; interleaving is a < b < c < d
                if b < c && c < d {
                    return Some((a, b, c, d));
                }
            }
        }
        None
    }

    pub fn is_noncrossing(&self) -> bool {
        self.crossing_witness().is_none()
    }
}

/// A traced branch of the curve together with the fan indices of the two
/// arms it connects, when those could be assigned unambiguously.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveComponent {
    pub polyline: Polyline,
    /// `(k, k')` with `k < k'`, or `None` for closed polylines, polylines
    /// ending in the window interior, or endpoints whose direction is nearly
    /// equidistant between two adjacent rays.
    pub end_asymptotes: Option<(usize, usize)>,
}

/// The defining function of the curve: `Im(e^{-i theta} P(z))`.
pub fn implicit_value(p: &Poly, theta: f64, z: Complex64) -> f64 {
    (Complex64::from_polar(1.0, -theta) * p.eval(z)).im
}

/// Fraction of the half-gap `pi/(2n)` beyond which a boundary exit direction
/// is considered ambiguous. The nearest ray is by construction within the
/// half-gap, so exits are flagged when they come close to that tie boundary
/// instead of clearly favouring one ray.
const AMBIGUOUS_EXIT_FRACTION: f64 = 0.9;

/// Traces the curve over `window` and tags each unbounded polyline with the
/// fan indices of the two arms it connects, judged by the direction of its
/// boundary endpoints from the origin.
///
/// The tagging is only meaningful when the window contains the roots with a
/// margin of at least the asymptote-validity radius
/// ([`asymptote_validity_radius`]); endpoints whose direction is nearly
/// equidistant between two rays (within 10% of the tie boundary) are left
/// untagged rather than guessed.
pub fn components(
    p: &Poly,
    theta: f64,
    window: &Window,
    fan: &AsymptoteFan,
) -> Vec<CurveComponent> {
    let polylines = trace(p, theta, window);
    let near_boundary = 1.5 * window.cell_size();
    polylines
        .into_iter()
        .map(|pl| {
            let ends = if pl.closed || pl.points.len() < 2 {
                None
            } else {
                let first = pl.points[0];
                let last = *pl.points.last().unwrap();
                assign_ends(first, last, window, fan, near_boundary)
            };
            CurveComponent {
                polyline: pl,
                end_asymptotes: ends,
            }
        })
        .collect()
}

fn assign_ends(
    first: Complex64,
    last: Complex64,
    window: &Window,
    fan: &AsymptoteFan,
    near_boundary: f64,
) -> Option<(usize, usize)> {
    let half_gap = 0.5 * fan.gap();
    let mut ends = [0usize; 2];
    for (slot, z) in [first, last].into_iter().enumerate() {
        if window.boundary_distance(z) > near_boundary || z.norm() == 0.0 {
            return None; // ends inside the window: not an unbounded branch
        }
        let dir = normalize_angle(z.arg(), 2.0 * PI);
        let k = fan.nearest_index(dir);
        if circular_dist(dir, fan.angle(k), 2.0 * PI) > AMBIGUOUS_EXIT_FRACTION * half_gap {
            return None; // too close to the tie boundary between two rays
        }
        ends[slot] = k;
    }
    if ends[0] == ends[1] {
        return None; // both ends nearest the same ray: assignment failed
    }
    Some((ends[0].min(ends[1]), ends[0].max(ends[1])))
}
