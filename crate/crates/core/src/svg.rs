//! Static SVG figures of real arrangements.
//!
//! The viewport is a box around all intersection points with a margin;
//! clipping is exact, and coordinates are converted to floats only when
//! written out.

use std::fmt::Write as _;

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::geom::{Arrangement, Line};
use crate::poset::build_affine_poset;
use crate::rational::{int, rat, Rational};

const SIZE: f64 = 640.0;
const PAD: f64 = 24.0;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundingBox {
    pub x_min: Rational,
    pub x_max: Rational,
    pub y_min: Rational,
    pub y_max: Rational,
}

impl BoundingBox {
    fn contains(&self, x: &Rational, y: &Rational) -> bool {
        &self.x_min <= x && x <= &self.x_max && &self.y_min <= y && y <= &self.y_max
    }
}

/// Box containing every intersection point, widened by a quarter of its
/// span (at least 1) on each side.
pub fn bounding_box(arr: &Arrangement) -> BoundingBox {
    let poset = build_affine_poset(arr);
    let pts: Vec<(Rational, Rational)> =
        poset.points.iter().filter_map(|p| p.affine_location()).map(|p| (p.x.re.clone(), p.y.re.clone())).collect();
    let span = |v: Vec<&Rational>| -> (Rational, Rational) {
        let (lo, hi) = match (v.iter().min(), v.iter().max()) {
            (Some(lo), Some(hi)) => ((*lo).clone(), (*hi).clone()),
            _ => (int(0), int(0)),
        };
        let margin = ((&hi - &lo) * rat(1, 4)).max(int(1));
        (&lo - &margin, &hi + &margin)
    };
    let (x_min, x_max) = span(pts.iter().map(|p| &p.0).collect());
    let (y_min, y_max) = span(pts.iter().map(|p| &p.1).collect());
    BoundingBox { x_min, x_max, y_min, y_max }
}

/// The segment of a real line inside the box.
pub fn clip(l: &Line, b: &BoundingBox) -> Option<((Rational, Rational), (Rational, Rational))> {
    let (a, bb, c) = (&l.a.re, &l.b.re, &l.c.re);
    let mut hits: Vec<(Rational, Rational)> = Vec::new();
    if !bb.is_zero() {
        for x in [&b.x_min, &b.x_max] {
            hits.push((x.clone(), -(a * x + c) / bb));
        }
    }
    if !a.is_zero() {
        for y in [&b.y_min, &b.y_max] {
            hits.push((-(bb * y + c) / a, y.clone()));
        }
    }
    hits.retain(|(x, y)| b.contains(x, y));
    hits.sort();
    hits.dedup();
    match (hits.first(), hits.last()) {
        (Some(p), Some(q)) if p != q => Some((p.clone(), q.clone())),
        _ => None,
    }
}

fn f(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

/// Renders lines, their labels, and every point of multiplicity ≥ 3.
pub fn render_svg(arr: &Arrangement) -> Result<String> {
    if let Some(l) = arr.lines().iter().find(|l| !l.is_real()) {
        return Err(Error::NonReal(l.label.clone()));
    }
    let b = bounding_box(arr);
    let (w, h) = (f(&(&b.x_max - &b.x_min)), f(&(&b.y_max - &b.y_min)));
    let scale = (SIZE - 2.0 * PAD) / w.max(h);
    let px = |x: &Rational| PAD + (f(x) - f(&b.x_min)) * scale;
    let py = |y: &Rational| PAD + (f(&b.y_max) - f(y)) * scale;
    let (width, height) = (w * scale + 2.0 * PAD, h * scale + 2.0 * PAD);

    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.1}" height="{height:.1}" viewBox="0 0 {width:.1} {height:.1}">"#
    )
    .unwrap();
    writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#).unwrap();
    for l in arr.lines() {
        let Some((p, q)) = clip(l, &b) else { continue };
        writeln!(
            out,
            r#"  <line class="arrangement-line" data-label="{}" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black" stroke-width="1.5"/>"#,
            l.label,
            px(&p.0),
            py(&p.1),
            px(&q.0),
            py(&q.1)
        )
        .unwrap();
        writeln!(
            out,
            r#"  <text class="line-label" x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12">{}</text>"#,
            px(&q.0) + 3.0,
            py(&q.1) - 3.0,
            l.label
        )
        .unwrap();
    }
    for p in build_affine_poset(arr).multiple_points() {
        let loc = p.affine_location().expect("affine poset");
        writeln!(
            out,
            r#"  <circle class="multiple-point" data-multiplicity="{}" cx="{:.2}" cy="{:.2}" r="4" fill="crimson"/>"#,
            p.multiplicity(),
            px(&loc.x.re),
            py(&loc.y.re)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::paper::paper_b_inf;

    #[test]
    fn paper_figure() {
        let svg = render_svg(&paper_b_inf()).unwrap();
        assert_eq!(svg.matches("<line ").count(), 9);
        assert_eq!(svg.matches(r#"class="multiple-point""#).count(), 3);
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn clipping_is_exact() {
        let b = BoundingBox { x_min: int(-1), x_max: int(1), y_min: int(-1), y_max: int(1) };
        let diag = Line::real(int(1), int(-1), int(0), "d").unwrap();
        assert_eq!(clip(&diag, &b), Some(((int(-1), int(-1)), (int(1), int(1)))));
        let far = Line::real(int(1), int(0), int(-5), "f").unwrap();
        assert_eq!(clip(&far, &b), None);
    }
}
