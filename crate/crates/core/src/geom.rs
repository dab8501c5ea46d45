//! Affine lines in ℂ² with Gaussian-rational coefficients.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{GaussianRational, Rational};

/// A point of ℂ² with exact coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: GaussianRational,
    pub y: GaussianRational,
}

impl Point {
    pub fn new(x: GaussianRational, y: GaussianRational) -> Self {
        Point { x, y }
    }

    pub fn real(x: Rational, y: Rational) -> Self {
        Point { x: x.into(), y: y.into() }
    }

    pub fn is_real(&self) -> bool {
        self.x.is_real() && self.y.is_real()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// The zero set of `a·x + b·y + c`, normalized so the first nonzero of
/// `(a, b)` is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Line {
    pub a: GaussianRational,
    pub b: GaussianRational,
    pub c: GaussianRational,
    pub label: String,
}

/// Result of intersecting two lines.  Short-lived, so the large `Point`
/// variant is left unboxed.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Meet {
    Point(Point),
    Parallel,
    EqualLines,
}

pub fn normalize_line(
    a: GaussianRational,
    b: GaussianRational,
    c: GaussianRational,
) -> Result<(GaussianRational, GaussianRational, GaussianRational)> {
    let lead = if !a.is_zero() {
        a.clone()
    } else if !b.is_zero() {
        b.clone()
    } else {
        return Err(Error::DegenerateLine);
    };
    let inv = lead.inv().expect("nonzero lead");
    Ok((&a * &inv, &b * &inv, &c * &inv))
}

impl Line {
    pub fn new(
        a: GaussianRational,
        b: GaussianRational,
        c: GaussianRational,
        label: impl Into<String>,
    ) -> Result<Line> {
        let (a, b, c) = normalize_line(a, b, c)?;
        Ok(Line { a, b, c, label: label.into() })
    }

    /// Real line from rational coefficients.
    pub fn real(a: Rational, b: Rational, c: Rational, label: impl Into<String>) -> Result<Line> {
        Line::new(a.into(), b.into(), c.into(), label)
    }

    pub fn is_real(&self) -> bool {
        self.a.is_real() && self.b.is_real() && self.c.is_real()
    }

    /// Same zero set, ignoring labels.
    pub fn same_locus(&self, other: &Line) -> bool {
        self.a == other.a && self.b == other.b && self.c == other.c
    }

    /// Direction key shared exactly by parallel lines.
    pub fn direction(&self) -> (GaussianRational, GaussianRational) {
        (self.a.clone(), self.b.clone())
    }

    pub fn is_parallel_to(&self, other: &Line) -> bool {
        (&self.a * &other.b - &other.a * &self.b).is_zero()
    }

    pub fn eval(&self, p: &Point) -> GaussianRational {
        &(&(&self.a * &p.x) + &(&self.b * &p.y)) + &self.c
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.eval(p).is_zero()
    }

    pub fn with_label(&self, label: impl Into<String>) -> Line {
        Line { label: label.into(), ..self.clone() }
    }

    /// Slope `dy/dx` of a real non-vertical line.
    pub fn slope(&self) -> Option<Rational> {
        if self.b.is_zero() || !self.is_real() {
            return None;
        }
        Some(-(&self.a.re / &self.b.re))
    }

    /// `y` at a given `x` for a real non-vertical line.
    pub fn y_at(&self, x: &Rational) -> Option<Rational> {
        if self.b.is_zero() || !self.is_real() {
            return None;
        }
        Some(-(&self.a.re * x + &self.c.re) / &self.b.re)
    }

    /// Canonical linear-factor text with denominators cleared, e.g. `3x+y+1`.
    pub fn render(&self) -> String {
        let mut den = BigInt::one();
        for z in [&self.a, &self.b, &self.c] {
            den = den.lcm(z.re.denom()).lcm(z.im.denom());
        }
        let scale = GaussianRational::real(Rational::from_integer(den));
        let terms = [(&self.a * &scale, "x"), (&self.b * &scale, "y"), (&self.c * &scale, "")];
        let mut out = String::new();
        for (coef, var) in terms.iter() {
            if coef.is_zero() {
                continue;
            }
            let (negative, body) = render_term(coef, var);
            if negative {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Returns (leading minus, unsigned body) for one term of a rendered factor.
fn render_term(coef: &GaussianRational, var: &str) -> (bool, String) {
    if coef.is_real() {
        let negative = coef.re.is_negative();
        let mag = coef.re.abs();
        let txt = crate::rational::fmt_rational(&mag);
        if var.is_empty() {
            (negative, txt)
        } else if mag.is_one() {
            (negative, var.to_string())
        } else {
            (negative, format!("{txt}{var}"))
        }
    } else if coef.re.is_zero() {
        let negative = coef.im.is_negative();
        let mag = coef.im.abs();
        let txt = if mag.is_one() { String::new() } else { crate::rational::fmt_rational(&mag) };
        (negative, format!("{txt}i{var}"))
    } else {
        (false, format!("({coef}){var}"))
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.label, self.render())
    }
}

pub fn intersect(l1: &Line, l2: &Line) -> Meet {
    let det = &(&l1.a * &l2.b) - &(&l2.a * &l1.b);
    if det.is_zero() {
        return if l1.same_locus(l2) { Meet::EqualLines } else { Meet::Parallel };
    }
    let x = &(&(&l1.b * &l2.c) - &(&l2.b * &l1.c)) / &det;
    let y = &(&(&l2.a * &l1.c) - &(&l1.a * &l2.c)) / &det;
    Meet::Point(Point { x, y })
}

/// Parses a degree-1 polynomial in `x`, `y` such as `y+3x+1` into the
/// normalized line of its zero set.
pub fn parse_linear_factor(text: &str, label: impl Into<String>) -> Result<Line> {
    let form = crate::expr::parse::<crate::expr::LinearForm>(text)?;
    Line::new(form.a, form.b, form.c, label)
}

/// Ordered collection of distinct, uniquely labeled lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    lines: Vec<Line>,
}

impl Arrangement {
    pub fn new(lines: Vec<Line>) -> Result<Arrangement> {
        let mut labels = BTreeSet::new();
        for (i, l) in lines.iter().enumerate() {
            if !labels.insert(l.label.as_str()) {
                return Err(Error::DuplicateLabel(l.label.clone()));
            }
            if let Some(prev) = lines[..i].iter().find(|m| m.same_locus(l)) {
                return Err(Error::DuplicateLine(prev.label.clone(), l.label.clone()));
            }
        }
        Ok(Arrangement { lines })
    }

    pub fn empty() -> Arrangement {
        Arrangement { lines: Vec::new() }
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn is_real(&self) -> bool {
        self.lines.iter().all(Line::is_real)
    }

    pub fn labels(&self) -> Vec<String> {
        self.lines.iter().map(|l| l.label.clone()).collect()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.lines.iter().position(|l| l.label == label)
    }

    pub fn line(&self, label: &str) -> Option<&Line> {
        self.lines.iter().find(|l| l.label == label)
    }

    /// Appends lines, re-checking distinctness.
    pub fn extended(&self, extra: impl IntoIterator<Item = Line>) -> Result<Arrangement> {
        let mut lines = self.lines.clone();
        lines.extend(extra);
        Arrangement::new(lines)
    }

    /// A label not yet used, built from `stem` and a counter.
    pub fn fresh_label(&self, stem: &str, k: usize) -> String {
        let mut label = format!("{stem}{k}");
        while self.index_of(&label).is_some() {
            label.push('\'');
        }
        label
    }
}
