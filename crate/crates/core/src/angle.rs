//! Angle arithmetic: canonical representatives, circular distances, and the
//! closed form for the argument of a difference of unit vectors.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Period an [`Angle`] is reduced by.
///
/// Directions of unoriented lines (curve tangents, asymptote directions,
/// theta itself) live mod pi; points on the unit circle live mod 2 pi.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngleModulus {
    /// Reduce modulo 2 pi, canonical range `[0, 2 pi)`.
    TwoPi,
    /// Reduce modulo pi, canonical range `[0, pi)`.
    Pi,
}

impl AngleModulus {
    /// The period as a float.
    pub fn period(self) -> f64 {
        match self {
            AngleModulus::TwoPi => 2.0 * PI,
            AngleModulus::Pi => PI,
        }
    }
}

/// An angle in radians held in canonical form `[0, modulus)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Angle {
    value: f64,
    modulus: AngleModulus,
}

impl Angle {
    /// Reduce `x` (any finite real) to its canonical representative.
    ///
    /// Panics if `x` is not finite; angles are plain data and never carry
    /// NaN/Inf.
    pub fn new(x: f64, modulus: AngleModulus) -> Angle {
        assert!(x.is_finite(), "angle must be finite");
        Angle {
            value: normalize_angle(x, modulus.period()),
            modulus,
        }
    }

    /// Canonical representative mod 2 pi.
    pub fn two_pi(x: f64) -> Angle {
        Angle::new(x, AngleModulus::TwoPi)
    }

    /// Canonical representative mod pi.
    pub fn pi(x: f64) -> Angle {
        Angle::new(x, AngleModulus::Pi)
    }

    /// The canonical value in `[0, modulus)`.
    pub fn value(self) -> f64 {
        self.value
    }

    /// The modulus this angle is reduced by.
    pub fn modulus(self) -> AngleModulus {
        self.modulus
    }

    /// Circular distance to `other` under this angle's modulus.
    pub fn dist(self, other: Angle) -> f64 {
        circular_dist(self.value, other.value, self.modulus.period())
    }
}

/// Reduce `x` into `[0, period)`.
///
/// `rem_euclid` can round up to exactly `period` for tiny negative inputs;
/// that case is folded back to 0 so the result is always canonical.
pub fn normalize_angle(x: f64, period: f64) -> f64 {
    debug_assert!(period > 0.0);
    let r = x.rem_euclid(period);
    if r >= period {
        0.0
    } else {
        r
    }
}

/// Distance between `a` and `b` on a circle of circumference `period`.
pub fn circular_dist(a: f64, b: f64, period: f64) -> f64 {
    let d = normalize_angle(a - b, period);
    d.min(period - d)
}

/// `Arg(e^{i nu} - e^{i psi})` without forming the difference.
///
/// From `e^{i nu} - e^{i psi} = 2 i sin((nu - psi)/2) e^{i (nu + psi)/2}`,
/// the argument is `(nu + psi)/2 + pi/2`, plus pi exactly when the sine
/// factor is negative. Returns the canonical representative mod 2 pi.
///
/// Errors with [`Error::CoincidentUnitPoints`] when the two unit points
/// coincide (the sine factor vanishes), since the difference is then 0.
pub fn arg_diff_unit(nu: f64, psi: f64) -> Result<Angle> {
    if !(nu.is_finite() && psi.is_finite()) {
        return Err(Error::NonFinite { what: "arg_diff_unit input" });
    }
    let s = ((nu - psi) / 2.0).sin();
    if s == 0.0 {
        return Err(Error::CoincidentUnitPoints);
    }
    let indicator = if s < 0.0 { PI } else { 0.0 };
    Ok(Angle::two_pi((nu + psi) / 2.0 + PI / 2.0 + indicator))
}
