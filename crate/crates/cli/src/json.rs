//! Deterministic JSON output.
//!
//! Output is assembled by hand so that field order, whitespace and float
//! formatting are fixed: identical inputs produce byte-identical documents on
//! every platform. Floats are written with 17 significant digits
//! (`{:.16e}`), enough to round-trip any f64 exactly, with `-0.0` normalized
//! to `0.0`.

use num_complex::Complex64;
use std::f64::consts::PI;

/// 17-significant-digit float, `-0.0` normalized.
pub fn num(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

/// Fold an angle from `[0, 2 pi)` into `(-pi, pi]` when `signed` is set.
pub fn angle(x: f64, signed: bool) -> String {
    if signed && x > PI {
        num(x - 2.0 * PI)
    } else {
        num(x)
    }
}

/// `[re, im]`.
pub fn complex(z: Complex64) -> String {
    format!("[{}, {}]", num(z.re), num(z.im))
}

/// `[a, b, ...]` of floats.
pub fn floats(xs: &[f64]) -> String {
    let items: Vec<String> = xs.iter().map(|&x| num(x)).collect();
    format!("[{}]", items.join(", "))
}

/// `[a, b, ...]` of angles honouring the signed flag.
pub fn angles(xs: &[f64], signed: bool) -> String {
    let items: Vec<String> = xs.iter().map(|&x| angle(x, signed)).collect();
    format!("[{}]", items.join(", "))
}

/// `[[k, k'], ...]` for a matching's pairs.
pub fn pairs(pairs: &[(usize, usize)]) -> String {
    let items: Vec<String> = pairs.iter().map(|&(a, b)| format!("[{a}, {b}]")).collect();
    format!("[{}]", items.join(", "))
}

/// `true` / `false` / `null`.
pub fn opt_bool(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "true",
        Some(false) => "false",
        None => "null",
    }
}

/// JSON string literal with the required escapes.
pub fn string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}
