//! Harmonic algebraic curves `C_theta(P) = { z : Im(e^{-i theta} P(z)) = 0 }`
//! for monic complex polynomials `P`.
//!
//! Away from the roots of `P` the curve is the locus `Arg P(z) = theta mod
//! pi`; it is an algebraic curve of degree `n = deg P` with `2n` asymptote
//! rays in directions `(pi k + theta)/n`. The crate provides:
//!
//! * [`poly`]: root multisets, monic polynomials, critical points;
//! * [`angle`]: canonical angle arithmetic and the unit-difference argument
//!   identity;
//! * [`circle`]: circle zeros and the regular-n-gon structure of
//!   `curve intersect unit circle` when all roots lie on the circle;
//! * [`tracer`]: marching-squares tracing, asymptote fans, and the
//!   noncrossing matching of asymptote rays by curve components;
//! * [`necklace`]: critical theta values and the bead sequence of matchings;
//! * [`tangents`]: tangent directions at roots and the circle-tangency
//!   criterion;
//! * [`render`]: deterministic SVG output;
//! * [`rng`]: the pinned seeded generator for reproducible instances.

pub mod angle;
pub mod circle;
pub mod error;
pub mod necklace;
pub mod poly;
pub mod render;
pub mod rng;
pub mod tangents;
pub mod tracer;

pub use angle::{arg_diff_unit, circular_dist, normalize_angle, Angle, AngleModulus};
pub use circle::{
    circle_zeros, gon_vertices, omega, theta_placing_root_on_gon, verify_proposition,
    CircleZero, CircleZeroSet, NGon, VerificationReport,
};
pub use error::{Error, Result};
pub use necklace::{build_necklace, critical_thetas, sweep_check, Bead, CriticalThetas, Necklace};
pub use poly::{Poly, RootEntry, RootMultiset};
pub use render::{render_svg, Scene};
pub use tangents::{circle_tangency_test, deflate_at_root, tangent_directions, TangentReport};
pub use tracer::{
    asymptote_fan, asymptote_validity_radius, components, implicit_value, matching,
    matching_with_paths, trace, AsymptoteFan, CurveComponent, Matching, Polyline, Window,
};
