//! Root multisets, monic polynomials, and critical points.

use num_complex::Complex64;

use crate::angle::normalize_angle;
use crate::error::{Error, Result};

use std::f64::consts::PI;

/// Relative clustering tolerance for nearly identical input roots.
pub const ROOT_CLUSTER_TOL: f64 = 1e-9;

/// One distinct root together with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootEntry {
    pub root: Complex64,
    pub multiplicity: u32,
}

/// A non-empty multiset of roots.
///
/// Roots closer than `ROOT_CLUSTER_TOL * max(1, max |z|)` are merged into the
/// first-seen representative, accumulating multiplicity, so the entry list is
/// deterministic in input order.
#[derive(Debug, Clone, PartialEq)]
pub struct RootMultiset {
    entries: Vec<RootEntry>,
}

impl RootMultiset {
    /// Build from a plain list; repeats (within clustering distance) become
    /// multiplicities.
    pub fn new(roots: &[Complex64]) -> Result<RootMultiset> {
        let mult = vec![1u32; roots.len()];
        RootMultiset::with_multiplicities(roots, &mult)
    }

    /// Build from parallel root/multiplicity lists.
    pub fn with_multiplicities(roots: &[Complex64], multiplicities: &[u32]) -> Result<RootMultiset> {
        if roots.is_empty() {
            return Err(Error::EmptyRootSet);
        }
        if multiplicities.len() != roots.len() {
            return Err(Error::MultiplicityCount {
                expected: roots.len(),
                got: multiplicities.len(),
            });
        }
        if let Some(index) = multiplicities.iter().position(|&m| m == 0) {
            return Err(Error::ZeroMultiplicity { index });
        }
        let mut max_abs: f64 = 0.0;
        for z in roots {
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(Error::NonFinite { what: "root coordinate" });
            }
            max_abs = max_abs.max(z.norm());
        }
        let tol = ROOT_CLUSTER_TOL * max_abs.max(1.0);
        let mut entries: Vec<RootEntry> = Vec::new();
        for (&z, &m) in roots.iter().zip(multiplicities) {
            match entries.iter_mut().find(|e| (e.root - z).norm() <= tol) {
                Some(e) => e.multiplicity += m,
                None => entries.push(RootEntry { root: z, multiplicity: m }),
            }
        }
        Ok(RootMultiset { entries })
    }

    /// Distinct roots with multiplicities, in first-seen order.
    pub fn entries(&self) -> &[RootEntry] {
        &self.entries
    }

    /// Total degree `n` (multiplicities counted).
    pub fn degree(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity as usize).sum()
    }

    /// Roots repeated according to multiplicity.
    pub fn expanded(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.entries
            .iter()
            .flat_map(|e| std::iter::repeat(e.root).take(e.multiplicity as usize))
    }

    /// Largest root magnitude.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|e| e.root.norm()).fold(0.0, f64::max)
    }

    /// Sum of root arguments (multiplicities counted), each argument taken in
    /// `[0, 2 pi)`. This is the determination used throughout the crate.
    pub fn arg_sum(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.multiplicity as f64 * normalize_angle(e.root.arg(), 2.0 * PI))
            .sum()
    }

    /// Reported conditioning bound `kappa` for evaluating the monic product
    /// at its own roots: a `4 n` safety prefactor over the coefficient growth
    /// envelope `prod (1 + |z_i|)`.
    pub fn condition_bound(&self) -> f64 {
        let envelope: f64 = self
            .entries
            .iter()
            .map(|e| (1.0 + e.root.norm()).powi(e.multiplicity as i32))
            .product();
        4.0 * self.degree() as f64 * envelope
    }

    /// Check every root sits within `tol` of the unit circle; errors with the
    /// first offender otherwise.
    pub fn check_on_unit_circle(&self, tol: f64) -> Result<()> {
        for e in &self.entries {
            let distance = (e.root.norm() - 1.0).abs();
            if distance > tol {
                return Err(Error::RootOffCircle {
                    root: e.root,
                    distance,
                    tolerance: tol,
                });
            }
        }
        Ok(())
    }
}

/// Dense polynomial with ascending complex coefficients.
///
/// [`Poly::from_roots`] produces a monic polynomial whose leading coefficient
/// is exactly 1 (the product construction never touches it).
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<Complex64>,
}

impl Poly {
    /// The zero polynomial.
    pub fn zero() -> Poly {
        Poly { coeffs: vec![Complex64::new(0.0, 0.0)] }
    }

    /// Build from ascending coefficients, trimming high-order exact zeros.
    pub fn from_coeffs(coeffs: &[Complex64]) -> Poly {
        let mut c = coeffs.to_vec();
        while c.len() > 1 && c.last() == Some(&Complex64::new(0.0, 0.0)) {
            c.pop();
        }
        if c.is_empty() {
            return Poly::zero();
        }
        Poly { coeffs: c }
    }

    /// Monic product `prod (z - z_i)` over the multiset.
    pub fn from_roots(roots: &RootMultiset) -> Poly {
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        for r in roots.expanded() {
            coeffs.push(Complex64::new(0.0, 0.0));
            for k in (0..coeffs.len() - 1).rev() {
                let c = coeffs[k];
                coeffs[k + 1] += c;
                coeffs[k] = -r * c;
            }
        }
        Poly { coeffs }
    }

    /// Ascending coefficients.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Degree (0 for constants, including the zero polynomial).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Complex64::new(0.0, 0.0)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut v = *self.coeffs.last().unwrap();
        for &c in self.coeffs.iter().rev().skip(1) {
            v = v * z + c;
        }
        v
    }

    /// Joint Horner pass for `(P(z), P'(z))`.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut v = *self.coeffs.last().unwrap();
        let mut d = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev().skip(1) {
            d = d * z + v;
            v = v * z + c;
        }
        (v, d)
    }

    /// Formal derivative. The derivative of a constant is the zero
    /// polynomial; callers can detect that case with [`Poly::is_zero`].
    pub fn derivative(&self) -> Poly {
        if self.degree() == 0 {
            return Poly::zero();
        }
        let coeffs: Vec<Complex64> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * k as f64)
            .collect();
        Poly::from_coeffs(&coeffs)
    }

    /// Largest coefficient magnitude (the residual scale for root finding).
    pub fn max_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Cauchy bound on root magnitudes: every root satisfies
    /// `|z| <= 1 + max_{k < deg} |a_k / a_deg|`. Returns 0 for constants
    /// (no roots to bound).
    pub fn cauchy_root_bound(&self) -> f64 {
        let deg = self.degree();
        if deg == 0 {
            return 0.0;
        }
        let lead = self.coeffs[deg].norm();
        let biggest = self.coeffs[..deg]
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
        1.0 + biggest / lead
    }

    /// All `degree - 1` critical points (roots of `P'`, multiplicity
    /// repeated), found by simultaneous Ehrlich-Aberth iteration and sorted
    /// lexicographically by `(re, im)`.
    ///
    /// Requires degree at least 2. Residuals are checked against
    /// `tol * max |P' coefficient|`; non-convergence is an error carrying the
    /// worst residual.
    pub fn critical_points(&self, tol: f64) -> Result<Vec<Complex64>> {
        if self.degree() < 2 {
            return Err(Error::DegreeTooLow { needed: 2, got: self.degree() });
        }
        let d = self.derivative();
        let roots = aberth(d.coeffs(), ABERTH_ITERATION_CAP)?;
        let scale = d.max_coeff();
        let worst = roots
            .iter()
            .map(|&c| d.eval(c).norm())
            .fold(0.0, f64::max);
        if worst > tol * scale {
            return Err(Error::RootFindingDidNotConverge {
                iterations: ABERTH_ITERATION_CAP,
                worst_residual: worst,
            });
        }
        let mut sorted = roots;
        sorted.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
        Ok(sorted)
    }
}

/// Iteration cap for the simultaneous root finder.
pub const ABERTH_ITERATION_CAP: usize = 200;

/// Ehrlich-Aberth simultaneous iteration for all roots of a dense polynomial
/// (ascending coefficients, nonzero leading coefficient, degree >= 1).
///
/// Roots at the origin (exact zero low-order coefficients) are factored out
/// beforehand so they are reproduced exactly. Initial guesses sit on the
/// Cauchy-bound circle with a fixed angular offset; the iteration stops when
/// corrections stall below 1e-14 relative or residuals reach the noise floor.
pub(crate) fn aberth(coeffs: &[Complex64], max_iter: usize) -> Result<Vec<Complex64>> {
    let trimmed = Poly::from_coeffs(coeffs);
    if trimmed.is_zero() {
        return Err(Error::InvalidParameter { what: "zero polynomial has no root set".into() });
    }
    if trimmed.degree() == 0 {
        return Err(Error::DegreeTooLow { needed: 1, got: 0 });
    }

    // Factor out exact roots at 0.
    let zero = Complex64::new(0.0, 0.0);
    let low_zeros = trimmed.coeffs().iter().take_while(|&&c| c == zero).count();
    let mut roots = vec![zero; low_zeros];
    let reduced: Vec<Complex64> = trimmed.coeffs()[low_zeros..].to_vec();
    let m = reduced.len() - 1;
    if m == 0 {
        return Ok(roots);
    }

    // Monic normalization for guesses and iteration.
    let lead = *reduced.last().unwrap();
    let a: Vec<Complex64> = reduced.iter().map(|&c| c / lead).collect();
    let p = Poly::from_coeffs(&a);
    let scale = p.max_coeff();

    let radius = 1.0 + a[..m].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut w: Vec<Complex64> = (0..m)
        .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / m as f64 + 0.43))
        .collect();

    let mut iterations = 0;
    for it in 0..max_iter {
        iterations = it + 1;
        let mut max_correction: f64 = 0.0;
        let mut worst_residual: f64 = 0.0;
        for k in 0..m {
            let (pv, dv) = p.eval_with_derivative(w[k]);
            worst_residual = worst_residual.max(pv.norm());
            if pv == zero {
                continue;
            }
            if dv == zero {
                // Sitting exactly on a critical point: nudge deterministically.
                let nudge = Complex64::new(1e-8, 1e-8) * (1.0 + w[k].norm());
                w[k] += nudge;
                max_correction = f64::INFINITY;
                continue;
            }
            let newton = pv / dv;
            let mut s = zero;
            for j in 0..m {
                if j != k {
                    let diff = w[k] - w[j];
                    if diff == zero {
                        continue;
                    }
                    s += diff.inv();
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * s;
            let step = if denom == zero { newton } else { newton / denom };
            w[k] -= step;
            max_correction = max_correction.max(step.norm() / (1.0 + w[k].norm()));
        }
        if max_correction <= 1e-14 || worst_residual <= 0.5e-15 * scale {
            roots.extend_from_slice(&w);
            return Ok(roots);
        }
    }

    // The cap was reached; clustered (multiple) roots legitimately stall on
    // corrections, so accept the result if residuals reached the attainable
    // floor and report non-convergence otherwise.
    let worst_residual = w.iter().map(|&x| p.eval(x).norm()).fold(0.0, f64::max);
    if worst_residual <= 1e-10 * scale {
        roots.extend_from_slice(&w);
        return Ok(roots);
    }
    Err(Error::RootFindingDidNotConverge { iterations, worst_residual })
}
