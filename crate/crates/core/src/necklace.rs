//! Analysis of the curve family over the angle parameter: critical thetas,
//! where the curve can change topology, and the cyclic sequence of asymptote
//! matchings (beads) as theta traverses `[0, pi)`.
//!
//! The curve `Im(e^{-i theta} P(z)) = 0` is singular at `z` exactly when `z`
//! lies on the curve and `P'(z) = 0`. For a critical point `c` of `P` with
//! `P(c) != 0` that happens for the single parameter value
//! `theta = Arg(P(c)) mod pi`; those are the critical thetas. A critical
//! point with `P(c) = 0` is a multiple root — the curve is singular there
//! for *every* theta — and is reported separately.
//!
//! Between consecutive critical thetas the matching cannot change, so the
//! parameter circle `[0, pi)` splits into arcs ("beads"), each carrying one
//! matching. The arc from the largest critical theta back around to the
//! smallest is a single bead: matchings at `theta` and `theta + pi` agree
//! index-for-index under the canonical fan convention (see
//! [`crate::tracer::AsymptoteFan`]).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::angle::{circular_dist, normalize_angle, Angle};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::tracer::{matching, Matching};

/// `|P(c)| <= SINGULAR_VALUE_TOL * (1 + max |coeff|)` marks the critical
/// point `c` as a multiple root.
pub const SINGULAR_VALUE_TOL: f64 = 1e-10;

/// Residual tolerance handed to the critical-point root finder.
const CRITICAL_POINT_TOL: f64 = 1e-10;

/// Critical thetas closer than this (radians, circular mod pi) are
/// considered one value.
pub const CRITICAL_THETA_DEDUP: f64 = 1e-9;

/// Default distance kept from critical thetas when sampling matchings
/// inside a bead.
pub const NECKLACE_GUARD: f64 = 1e-4;

/// The critical parameter values of a polynomial, plus any critical points
/// that are multiple roots (excluded from the values, singular for every
/// theta).
#[derive(Debug, Clone)]
pub struct CriticalThetas {
    angles: Vec<Angle>,
    pub singular_points: Vec<Complex64>,
}

impl CriticalThetas {
    /// The critical thetas, sorted ascending in `[0, pi)`.
    pub fn angles(&self) -> &[Angle] {
        &self.angles
    }

    /// The critical theta values as plain radians, sorted ascending.
    pub fn values(&self) -> Vec<f64> {
        self.angles.iter().map(|a| a.value()).collect()
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }
}

/// Computes the critical thetas `{Arg(P(c)) mod pi : P'(c) = 0, |P(c)| > tol
/// * (1 + max |coeff|)}`, deduplicated circularly within
/// [`CRITICAL_THETA_DEDUP`]. Critical points under the value threshold are
/// returned as `singular_points`. Degree 1 has no critical points; degree 0
/// is rejected.
pub fn critical_thetas(p: &Poly, tol: f64) -> Result<CriticalThetas> {
    let n = p.degree();
    if p.is_zero() || n == 0 {
        return Err(Error::DegreeTooLow { needed: 1, got: n });
    }
    if n == 1 {
        return Ok(CriticalThetas {
            angles: Vec::new(),
            singular_points: Vec::new(),
        });
    }
    let scale = 1.0 + p.max_coeff();
    let mut raw: Vec<f64> = Vec::new();
    let mut singular_points = Vec::new();
    for c in p.critical_points(CRITICAL_POINT_TOL)? {
        let v = p.eval(c);
        if v.norm() <= tol * scale {
            singular_points.push(c);
        } else {
            raw.push(normalize_angle(v.arg(), PI));
        }
    }
    raw.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // Circular dedup: sweep ascending, then merge the ends across the wrap.
    let mut angles: Vec<f64> = Vec::new();
    for t in raw {
        if angles
            .last()
            .is_some_and(|&prev| circular_dist(prev, t, PI) <= CRITICAL_THETA_DEDUP)
        {
            continue;
        }
        angles.push(t);
    }
    if angles.len() > 1
        && circular_dist(angles[0], *angles.last().unwrap(), PI) <= CRITICAL_THETA_DEDUP
    {
        angles.pop();
    }
    Ok(CriticalThetas {
        angles: angles.into_iter().map(Angle::pi).collect(),
        singular_points,
    })
}

/// One arc of the parameter circle together with its constant matching.
/// `start < end`; `end` may exceed pi on the arc that wraps through 0. All
/// parameter values are taken mod pi.
///
/// The matching is expressed in the canonical ray labeling of parameters in
/// `[start, pi)`. On a wrapping arc, a parameter past the seam sees the same
/// geometric matching with indices shifted: there
/// `matching(p, theta, r)` equals `bead.matching.relabeled(2n - 1)`.
#[derive(Debug, Clone)]
pub struct Bead {
    pub start: f64,
    pub end: f64,
    pub matching: Matching,
}

/// The critical thetas of a polynomial and the matching carried by each arc
/// between consecutive ones, in cyclic order by arc start.
#[derive(Debug, Clone)]
pub struct Necklace {
    pub critical_thetas: Vec<Angle>,
    pub singular_points: Vec<Complex64>,
    pub beads: Vec<Bead>,
}

/// Builds the necklace of `p`: critical thetas plus one verified bead per
/// arc between consecutive ones (a single bead covering all of `[0, pi)`
/// when there are none).
///
/// Each bead's matching is computed at the 1/4, 1/2 and 3/4 points of its
/// arc, each clamped to at least `guard` from the arc ends; the three must
/// agree or the bead is reported as an unresolved transition structure.
pub fn build_necklace(p: &Poly, guard: f64) -> Result<Necklace> {
    if !guard.is_finite() || guard <= 0.0 {
        return Err(Error::InvalidParameter {
            what: format!("guard must be positive and finite, got {guard}"),
        });
    }
    let n = p.degree();
    if p.is_zero() || n == 0 {
        return Err(Error::DegreeTooLow { needed: 1, got: n });
    }
    let crit = critical_thetas(p, SINGULAR_VALUE_TOL)?;
    if let Some(&c) = crit.singular_points.first() {
        return Err(Error::InvalidParameter {
            what: format!(
                "the curve is singular at {c} for every theta (multiple root); \
                 no arc carries a well-defined matching"
            ),
        });
    }
    let radius = 2.0 * n as f64 * (1.0 + p.cauchy_root_bound());

    let values = crit.values();
    let arcs: Vec<(f64, f64)> = if values.is_empty() {
        vec![(0.0, PI)]
    } else {
        let m = values.len();
        (0..m)
            .map(|i| {
                let a = values[i];
                let b = if i + 1 < m {
                    values[i + 1]
                } else {
                    values[0] + PI
                };
                (a, b)
            })
            .collect()
    };

    let mut beads = Vec::with_capacity(arcs.len());
    for (a, b) in arcs {
        let len = b - a;
        if len <= 2.0 * guard {
            return Err(Error::InvalidParameter {
                what: format!(
                    "arc ({a}, {b}) is narrower than twice the sampling guard {guard}"
                ),
            });
        }
        let mut samples = Vec::with_capacity(3);
        for frac in [0.25, 0.5, 0.75] {
            let offset = (len * frac).clamp(guard, len - guard);
            let lifted = a + offset;
            let theta = normalize_angle(lifted, PI);
            let raw = matching(p, theta, radius)?;
            // Samples past the wrap are relabeled back to the labeling at
            // the bead start; each seam crossing renames canonical ray
            // `k + 1` to `k`.
            let crossings = (lifted / PI) as usize;
            samples.push((theta, raw.relabeled(crossings)));
        }
        let all_agree = samples.iter().all(|(_, m)| *m == samples[0].1);
        if !all_agree {
            let detail = samples
                .iter()
                .map(|(t, m)| format!("theta {t}: {:?}", m.pairs()))
                .collect::<Vec<_>>()
                .join("; ");
            return Err(Error::UnresolvedTransition {
                start: a,
                end: b,
                detail,
            });
        }
        beads.push(Bead {
            start: a,
            end: b,
            matching: samples.swap_remove(0).1,
        });
    }
    Ok(Necklace {
        critical_thetas: crit.angles,
        singular_points: crit.singular_points,
        beads,
    })
}

/// Result of a uniform parameter sweep: every pair of consecutive samples
/// whose matchings differ, and the subset of those pairs with no critical
/// theta between them (violations — the matching may only change across a
/// critical theta).
#[derive(Debug, Clone)]
pub struct SweepReport {
    /// Samples actually evaluated (those within [`NECKLACE_GUARD`] of a
    /// critical theta are skipped).
    pub evaluated: usize,
    pub skipped: usize,
    /// Consecutive evaluated sample pairs `(a, b)` with differing matchings.
    pub changes: Vec<(f64, f64)>,
    /// Changes with no critical theta inside the open arc `(a, b)`.
    pub violations: Vec<(f64, f64)>,
}

impl SweepReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Sweeps `samples` parameter values `(i + 1/2) pi / samples` around the
/// parameter circle and cross-checks that the matching only changes across
/// the listed critical thetas (including across the wrap through 0).
pub fn sweep_check(p: &Poly, samples: usize) -> Result<SweepReport> {
    if samples < 2 {
        return Err(Error::InvalidParameter {
            what: format!("sweep needs at least 2 samples, got {samples}"),
        });
    }
    let n = p.degree();
    if p.is_zero() || n == 0 {
        return Err(Error::DegreeTooLow { needed: 1, got: n });
    }
    let crit = critical_thetas(p, SINGULAR_VALUE_TOL)?;
    if let Some(&c) = crit.singular_points.first() {
        return Err(Error::InvalidParameter {
            what: format!(
                "the curve is singular at {c} for every theta (multiple root); \
                 matchings are undefined"
            ),
        });
    }
    let values = crit.values();
    let radius = 2.0 * n as f64 * (1.0 + p.cauchy_root_bound());

    let mut kept: Vec<(f64, Matching)> = Vec::new();
    let mut skipped = 0usize;
    for i in 0..samples {
        let theta = (i as f64 + 0.5) * PI / samples as f64;
        if values
            .iter()
            .any(|&c| circular_dist(theta, c, PI) < NECKLACE_GUARD)
        {
            skipped += 1;
            continue;
        }
        kept.push((theta, matching(p, theta, radius)?));
    }
    let mut changes = Vec::new();
    let mut violations = Vec::new();
    for i in 0..kept.len() {
        if kept.len() == 1 {
            break;
        }
        let (a, ma) = &kept[i];
        let (b_raw, mb_raw) = &kept[(i + 1) % kept.len()];
        // The final pair wraps: compare across theta = pi (= 0), relabeling
        // the post-seam sample into the pre-seam ray labeling.
        let wrap = i + 1 == kept.len();
        let b = if wrap { b_raw + PI } else { *b_raw };
        let mb = if wrap {
            mb_raw.relabeled(1)
        } else {
            mb_raw.clone()
        };
        if *ma != mb {
            changes.push((*a, b));
            let crossed = values.iter().any(|&c| {
                let c_lift = if c > *a { c } else { c + PI };
                *a < c_lift && c_lift < b
            });
            if !crossed {
                violations.push((*a, b));
            }
        }
    }
    Ok(SweepReport {
        evaluated: kept.len(),
        skipped,
        changes,
        violations,
    })
}
