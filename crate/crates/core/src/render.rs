//! Deterministic SVG rendering of curve scenes.
//!
//! The output is plain SVG 1.1 assembled by string concatenation in a fixed
//! element order, so the same [`Scene`] always produces byte-identical
//! output. World coordinates go straight into the viewBox with the y axis
//! flipped (`user y = -world y`, so world y points up on screen); every
//! coordinate is written with six decimal places and `-0.0` normalized to
//! `0.0`.
//!
//! Element classes, in paint order:
//!
//! * `unit-circle` — the single `<circle>` element, when enabled;
//! * `ray` — dashed asymptote rays from the origin past the window edge;
//! * `curve` — one open or closed `<path>` per polyline;
//! * `gon-polygon` — the dashed polygon through the predicted vertices;
//! * `gon-vertex` — one x-shaped cross per predicted vertex;
//! * `root` — one filled disk (as a `<path>`, keeping `<circle>` unique)
//!   per root;
//! * `legend` — one `<text>` line per legend entry, top-left.

use num_complex::Complex64;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::tracer::Polyline;

/// Fixed pixel size of the square output image.
pub const IMAGE_SIZE: u32 = 640;

/// What to draw. `center`/`half_width` fix the square world-coordinate
/// window; the remaining fields are the scene contents, all optional.
#[derive(Debug, Clone)]
pub struct Scene {
    center: Complex64,
    half_width: f64,
    /// Draw the unit circle.
    pub unit_circle: bool,
    /// Roots, drawn as filled disks.
    pub roots: Vec<Complex64>,
    /// Predicted polygon vertices, drawn as crosses joined by a dashed
    /// polygon (in the given cyclic order). Empty means no polygon.
    pub gon: Vec<Complex64>,
    /// Traced curve polylines.
    pub curves: Vec<Polyline>,
    /// Asymptote ray angles; each ray is drawn from the origin out past the
    /// window edge.
    pub rays: Vec<f64>,
    /// Legend lines, drawn top-left in order.
    pub legend: Vec<String>,
}

impl Scene {
    /// An empty scene over the square window `center +- half_width`.
    pub fn new(center: Complex64, half_width: f64) -> Result<Scene> {
        if !center.re.is_finite() || !center.im.is_finite() {
            return Err(Error::InvalidWindow {
                what: format!("center {center} is not finite"),
            });
        }
        if !half_width.is_finite() || half_width <= 0.0 {
            return Err(Error::InvalidWindow {
                what: format!("half width {half_width} must be finite and positive"),
            });
        }
        Ok(Scene {
            center,
            half_width,
            unit_circle: false,
            roots: Vec::new(),
            gon: Vec::new(),
            curves: Vec::new(),
            rays: Vec::new(),
            legend: Vec::new(),
        })
    }

    /// Center of the world window.
    pub fn center(&self) -> Complex64 {
        self.center
    }

    /// Half the side length of the world window.
    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    fn has_content(&self) -> bool {
        self.unit_circle
            || !self.roots.is_empty()
            || !self.gon.is_empty()
            || !self.curves.is_empty()
            || !self.rays.is_empty()
    }
}

/// Six decimal places with `-0.0` normalized, the only number format used
/// in the output.
fn fmt6(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

/// World point to user-space `x y` (y flipped).
fn xy(z: Complex64) -> String {
    format!("{} {}", fmt6(z.re), fmt6(-z.im))
}

fn escape_xml(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            _ => out.push(ch),
        }
    }
    out
}

fn check_finite(z: Complex64, what: &'static str) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite { what })
    }
}

/// A filled disk as a path (two semicircular arcs), so the unit circle stays
/// the only `<circle>` element in the document.
fn disk_path(center: Complex64, r: f64) -> String {
    let cx = center.re;
    let cy = -center.im;
    format!(
        "M {} {} A {} {} 0 1 0 {} {} A {} {} 0 1 0 {} {} Z",
        fmt6(cx - r),
        fmt6(cy),
        fmt6(r),
        fmt6(r),
        fmt6(cx + r),
        fmt6(cy),
        fmt6(r),
        fmt6(r),
        fmt6(cx - r),
        fmt6(cy),
    )
}

/// Render the scene to an SVG document. Fails on an empty scene, a polyline
/// with fewer than two points, or any non-finite coordinate.
pub fn render_svg(scene: &Scene) -> Result<String> {
    if !scene.has_content() {
        return Err(Error::InvalidParameter {
            what: "scene has nothing to draw".to_string(),
        });
    }
    for &z in &scene.roots {
        check_finite(z, "root position")?;
    }
    for &z in &scene.gon {
        check_finite(z, "polygon vertex")?;
    }
    for pl in &scene.curves {
        if pl.points.len() < 2 {
            return Err(Error::InvalidParameter {
                what: format!("polyline with {} point(s) cannot be drawn", pl.points.len()),
            });
        }
        for &z in &pl.points {
            check_finite(z, "polyline point")?;
        }
    }
    for &t in &scene.rays {
        if !t.is_finite() {
            return Err(Error::NonFinite { what: "ray angle" });
        }
    }

    let hw = scene.half_width;
    let size = 2.0 * hw;
    let min_x = scene.center.re - hw;
    let min_y = -scene.center.im - hw;
    let stroke = hw / 160.0;
    let thin = hw / 320.0;
    let marker = hw * 0.015;

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str("<!-- coordinates are world units; user y = -world y, so world y points up -->\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{IMAGE_SIZE}\" \
         height=\"{IMAGE_SIZE}\" viewBox=\"{} {} {} {}\">",
        fmt6(min_x),
        fmt6(min_y),
        fmt6(size),
        fmt6(size)
    );

    if scene.unit_circle {
        let _ = writeln!(
            out,
            "  <circle class=\"unit-circle\" cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" \
             stroke=\"#888888\" stroke-width=\"{}\"/>",
            fmt6(thin)
        );
    }

    // Rays reach from the origin past the farthest window corner; the
    // viewBox clips them.
    let reach = scene.center.norm() + size;
    for &t in &scene.rays {
        let tip = Complex64::from_polar(reach, t);
        let _ = writeln!(
            out,
            "  <path class=\"ray\" fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"{}\" \
             stroke-dasharray=\"{} {}\" d=\"M 0 0 L {}\"/>",
            fmt6(thin),
            fmt6(4.0 * thin),
            fmt6(4.0 * thin),
            xy(tip)
        );
    }

    for pl in &scene.curves {
        let mut d = String::new();
        for (i, &z) in pl.points.iter().enumerate() {
            let _ = write!(d, "{}{}", if i == 0 { "M " } else { " L " }, xy(z));
        }
        if pl.closed {
            d.push_str(" Z");
        }
        let _ = writeln!(
            out,
            "  <path class=\"curve\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"{}\" \
             stroke-linejoin=\"round\" stroke-linecap=\"round\" d=\"{d}\"/>",
            fmt6(stroke)
        );
    }

    if !scene.gon.is_empty() {
        let mut d = String::new();
        for (i, &z) in scene.gon.iter().enumerate() {
            let _ = write!(d, "{}{}", if i == 0 { "M " } else { " L " }, xy(z));
        }
        if scene.gon.len() > 1 {
            d.push_str(" Z");
        }
        let _ = writeln!(
            out,
            "  <path class=\"gon-polygon\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"{}\" \
             stroke-dasharray=\"{} {}\" d=\"{d}\"/>",
            fmt6(thin),
            fmt6(3.0 * thin),
            fmt6(3.0 * thin)
        );
        for &z in &scene.gon {
            let (cx, cy) = (z.re, -z.im);
            let _ = writeln!(
                out,
                "  <path class=\"gon-vertex\" fill=\"none\" stroke=\"#d62728\" \
                 stroke-width=\"{}\" d=\"M {} {} L {} {} M {} {} L {} {}\"/>",
                fmt6(stroke),
                fmt6(cx - marker),
                fmt6(cy - marker),
                fmt6(cx + marker),
                fmt6(cy + marker),
                fmt6(cx - marker),
                fmt6(cy + marker),
                fmt6(cx + marker),
                fmt6(cy - marker)
            );
        }
    }

    for &z in &scene.roots {
        let _ = writeln!(
            out,
            "  <path class=\"root\" fill=\"#2ca02c\" stroke=\"none\" d=\"{}\"/>",
            disk_path(z, marker)
        );
    }

    for (i, line) in scene.legend.iter().enumerate() {
        let _ = writeln!(
            out,
            "  <text class=\"legend\" x=\"{}\" y=\"{}\" font-family=\"monospace\" \
             font-size=\"{}\" fill=\"#333333\">{}</text>",
            fmt6(min_x + 0.03 * size),
            fmt6(min_y + (0.05 + 0.045 * i as f64) * size),
            fmt6(0.032 * size),
            escape_xml(line)
        );
    }

    out.push_str("</svg>\n");
    Ok(out)
}
