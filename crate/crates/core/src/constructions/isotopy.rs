//! One-parameter families of arrangements from the proofs of Lemma
//! "present" and Lemma "diffeo", and sampled lattice-constancy checks.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::expr::{self, Algebra};
use crate::geom::{Arrangement, Line};
use crate::poset::build_affine_poset;
use crate::rational::{fmt_rational, int, rat, GaussianRational, Rational};

/// A polynomial in `t` over ℚ(i), coefficients lowest degree first with no
/// trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly(Vec<GaussianRational>);

impl Poly {
    pub fn constant(c: impl Into<GaussianRational>) -> Poly {
        Poly::from_coeffs(vec![c.into()])
    }

    /// The polynomial `t`.
    pub fn t() -> Poly {
        Poly::from_coeffs(vec![GaussianRational::zero(), GaussianRational::one()])
    }

    /// `(t − t²)·i`, the imaginary perturbation of every family.
    pub fn bump() -> Poly {
        let i = GaussianRational::i();
        Poly::from_coeffs(vec![GaussianRational::zero(), i.clone(), -i])
    }

    pub fn from_coeffs(mut c: Vec<GaussianRational>) -> Poly {
        while c.last().is_some_and(GaussianRational::is_zero) {
            c.pop();
        }
        Poly(c)
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.0
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    pub fn eval(&self, t: &Rational) -> GaussianRational {
        let t = GaussianRational::real(t.clone());
        self.0.iter().rev().fold(GaussianRational::zero(), |acc, c| &(&acc * &t) + c)
    }

    pub fn scale(&self, k: impl Into<GaussianRational>) -> Poly {
        let k = k.into();
        Poly::from_coeffs(self.0.iter().map(|c| c * &k).collect())
    }

    pub fn plus(&self, rhs: &Poly) -> Poly {
        let n = self.0.len().max(rhs.0.len());
        let zero = GaussianRational::zero();
        Poly::from_coeffs((0..n).map(|k| self.0.get(k).unwrap_or(&zero) + rhs.0.get(k).unwrap_or(&zero)).collect())
    }

    pub fn minus(&self, rhs: &Poly) -> Poly {
        self.plus(&rhs.scale(-GaussianRational::one()))
    }

    pub fn times(&self, rhs: &Poly) -> Poly {
        if self.0.is_empty() || rhs.0.is_empty() {
            return Poly::default();
        }
        let mut out = vec![GaussianRational::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn parse(src: &str) -> Result<Poly> {
        expr::parse(src)
    }
}

impl Algebra for Poly {
    fn constant(c: GaussianRational) -> Self {
        Poly::constant(c)
    }
    fn variable(name: char) -> Option<Self> {
        (name == 't').then(Poly::t)
    }
    fn add(self, rhs: Self) -> Self {
        self.plus(&rhs)
    }
    fn neg(self) -> Self {
        self.scale(-GaussianRational::one())
    }
    fn mul(self, rhs: Self) -> std::result::Result<Self, String> {
        Ok(self.times(&rhs))
    }
    fn pow(self, e: u32) -> std::result::Result<Self, String> {
        Ok((0..e).fold(Poly::constant(GaussianRational::one()), |acc, _| acc.times(&self)))
    }
}

impl fmt::Display for Poly {
    /// Parseable text such as `3 + (1/2-i)*t^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})*t"),
                _ => format!("({c})*t^{k}"),
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// A line `a(t)·x + b(t)·y + c(t) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyLine {
    pub label: String,
    pub a: Poly,
    pub b: Poly,
    pub c: Poly,
}

impl FamilyLine {
    pub fn new(label: impl Into<String>, a: Poly, b: Poly, c: Poly) -> FamilyLine {
        FamilyLine { label: label.into(), a, b, c }
    }

    /// The constant line of a real or complex [`Line`].
    pub fn fixed(l: &Line) -> FamilyLine {
        FamilyLine::new(
            l.label.clone(),
            Poly::constant(l.a.clone()),
            Poly::constant(l.b.clone()),
            Poly::constant(l.c.clone()),
        )
    }

    /// `y − slope·x − offset`.
    fn sloped(label: String, slope: Poly, offset: Poly) -> FamilyLine {
        let one = Poly::constant(GaussianRational::one());
        FamilyLine::new(label, slope.scale(-GaussianRational::one()), one, offset.scale(-GaussianRational::one()))
    }

    pub fn at(&self, t: &Rational) -> Result<Line> {
        Line::new(self.a.eval(t), self.b.eval(t), self.c.eval(t), self.label.clone())
            .map_err(|_| Error::DegenerateAtSample(fmt_rational(t)))
    }
}

pub fn default_samples() -> Vec<Rational> {
    vec![int(0), rat(1, 7), rat(1, 3), rat(1, 2), rat(5, 7), int(1)]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotopyFamily {
    pub lines: Vec<FamilyLine>,
    pub samples: Vec<Rational>,
}

impl IsotopyFamily {
    /// Validates the family: distinct labels, samples containing 0 and 1,
    /// and no line degenerating at a sample.
    pub fn new(lines: Vec<FamilyLine>, samples: Vec<Rational>) -> Result<IsotopyFamily> {
        let mut seen = BTreeSet::new();
        if let Some(l) = lines.iter().find(|l| !seen.insert(l.label.clone())) {
            return Err(Error::DuplicateLabel(l.label.clone()));
        }
        for t in [int(0), int(1)] {
            if !samples.contains(&t) {
                return Err(Error::BadParameters(format!("sample set must contain {}", fmt_rational(&t))));
            }
        }
        let f = IsotopyFamily { lines, samples };
        for t in &f.samples {
            f.lines_at(t)?;
        }
        Ok(f)
    }

    pub fn labels(&self) -> Vec<String> {
        self.lines.iter().map(|l| l.label.clone()).collect()
    }

    pub fn lines_at(&self, t: &Rational) -> Result<Vec<Line>> {
        self.lines.iter().map(|l| l.at(t)).collect()
    }

    /// The arrangement at `t`; fails when two lines coincide.
    pub fn at(&self, t: &Rational) -> Result<Arrangement> {
        Arrangement::new(self.lines_at(t)?)
    }
}

/// Which display of the paper a family transcribes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// `H(t,R)`: the pencil translated by `R·t` (Lemma "present").
    HtR,
    /// `G(t,q)`: the pencil slopes rotated towards `q` (Lemma "present").
    Gtq,
    /// `G₁(t)`: the parallels `y − u₁x − b_k` moved to offsets `S + k`.
    G1,
    /// `G₂(t)`: the parallels `y − u₂x − d_k` moved to offsets `S + k`.
    G2,
    /// `H(t)` of Lemma "diffeo": slope `u₁` turned into `u₂`.
    Hbar,
}

/// Constants of the displays.  `𝒜` is `x·∏(y − w_j x + a_j)`; each kind
/// reads only the fields its display names.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FamilyParameters {
    pub w: Vec<Rational>,
    pub a: Vec<Rational>,
    /// Pencil slopes `m₂ < ⋯ < m_m`.
    pub pencil_slopes: Vec<Rational>,
    pub r: Option<Rational>,
    pub q: Option<Rational>,
    pub s: Option<Rational>,
    pub u1: Option<Rational>,
    pub u2: Option<Rational>,
    /// Offsets `b₁ < ⋯ < b_m`.
    pub b: Vec<Rational>,
    /// Offsets `d₁ < ⋯ < d_m`.
    pub d: Vec<Rational>,
}

fn need<'a>(v: &'a Option<Rational>, name: &str) -> Result<&'a Rational> {
    v.as_ref().ok_or_else(|| Error::BadParameters(format!("missing {name}")))
}

fn increasing(v: &[Rational], name: &str) -> Result<()> {
    if v.is_empty() || v.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadParameters(format!("{name} must be nonempty and strictly increasing")));
    }
    Ok(())
}

fn c(r: &Rational) -> Poly {
    Poly::constant(r.clone())
}

impl FamilyParameters {
    /// The lines `x` and `y − w_j x + a_j` (labels `H1..Hn`).
    fn base_lines(&self) -> Result<Vec<FamilyLine>> {
        if self.w.len() != self.a.len() {
            return Err(Error::BadParameters("w and a differ in length".into()));
        }
        let zero = Poly::default();
        let one = Poly::constant(GaussianRational::one());
        let mut out = vec![FamilyLine::new("H1", one, zero.clone(), zero)];
        for (j, (w, a)) in self.w.iter().zip(&self.a).enumerate() {
            out.push(FamilyLine::sloped(format!("H{}", j + 2), c(w), c(a).scale(-GaussianRational::one())));
        }
        Ok(out)
    }

    fn avoid_w(&self, slope: &Rational, name: &str) -> Result<()> {
        if self.w.contains(slope) {
            return Err(Error::BadParameters(format!("{name} equals some w_j")));
        }
        Ok(())
    }
}

/// Transcribes the display named by `kind`.  Added lines are labelled
/// `L2..Lm` for the pencil families and `D1..Dm` for the parallel ones.
pub fn family_from_proof(kind: FamilyKind, p: &FamilyParameters) -> Result<IsotopyFamily> {
    let mut lines = p.base_lines()?;
    let t = Poly::t();
    let one_minus_t = Poly::constant(GaussianRational::one()).minus(&t);
    match kind {
        FamilyKind::HtR | FamilyKind::Gtq => {
            increasing(&p.pencil_slopes, "pencil slopes")?;
            for mk in &p.pencil_slopes {
                p.avoid_w(mk, "a pencil slope")?;
            }
            let r = need(&p.r, "R")?;
            let m = p.pencil_slopes.len() + 1;
            for (idx, mk) in p.pencil_slopes.iter().enumerate() {
                let k = idx + 2;
                let label = format!("L{k}");
                let line = if kind == FamilyKind::HtR {
                    // y − m_k x − R·t + (t − t²)i
                    FamilyLine::sloped(label, c(mk), t.scale(r.clone()).minus(&Poly::bump()))
                } else if k == 2 {
                    FamilyLine::sloped(label, c(mk), c(r))
                } else {
                    // M_k(t,q) = ((q − m₂)/m·k + m₂)·t + m_k(1 − t) + (t − t²)i
                    let q = need(&p.q, "q")?;
                    let m2 = &p.pencil_slopes[0];
                    let lead = (q - m2) / int(m as i64) * int(k as i64) + m2;
                    let slope = t.scale(lead).plus(&one_minus_t.scale(mk.clone())).plus(&Poly::bump());
                    FamilyLine::sloped(label, slope, c(r))
                };
                lines.push(line);
            }
        }
        FamilyKind::G1 | FamilyKind::G2 => {
            let (u, offsets, name) =
                if kind == FamilyKind::G1 { (need(&p.u1, "u1")?, &p.b, "b") } else { (need(&p.u2, "u2")?, &p.d, "d") };
            increasing(offsets, name)?;
            p.avoid_w(u, "the parallel slope")?;
            let s = need(&p.s, "S")?;
            for (idx, bk) in offsets.iter().enumerate() {
                let k = idx as i64 + 1;
                // b_k(1 − t) + (S + k)t + (t − t²)i
                let offset = one_minus_t.scale(bk.clone()).plus(&t.scale(s + int(k))).plus(&Poly::bump());
                lines.push(FamilyLine::sloped(format!("D{k}"), c(u), offset));
            }
        }
        FamilyKind::Hbar => {
            let (u1, u2) = (need(&p.u1, "u1")?, need(&p.u2, "u2")?);
            p.avoid_w(u1, "u1")?;
            p.avoid_w(u2, "u2")?;
            let s = need(&p.s, "S")?;
            let count = p.b.len().max(p.d.len());
            if count == 0 {
                return Err(Error::BadParameters("Hbar needs the parallel count via b or d".into()));
            }
            // u₁(1 − t) + u₂t + i(t − t²), offsets S + k for k = 1..m.
            let slope = one_minus_t.scale(u1.clone()).plus(&t.scale(u2.clone())).plus(&Poly::bump());
            for k in 1..=count as i64 {
                lines.push(FamilyLine::sloped(format!("D{k}"), slope.clone(), c(&(s + int(k)))));
            }
        }
    }
    IsotopyFamily::new(lines, default_samples())
}

/// `𝒜` of the worked example in the coordinates of Lemma "diffeo"
/// (`H₁ = x`), with `B₁ = B_∞` and a second parallel family of slope −4:
/// `u₁ = −3, b = (−3, −2, −1)`, `u₂ = −4, d = (−3, −2, −1)`, `S = 10`.
pub fn paper_diffeo_parameters() -> FamilyParameters {
    FamilyParameters {
        // y, y − 1, y − 2, y + x − 2, y − x
        w: vec![int(0), int(0), int(0), int(-1), int(1)],
        a: vec![int(0), int(-1), int(-2), int(-2), int(0)],
        s: Some(int(10)),
        u1: Some(int(-3)),
        u2: Some(int(-4)),
        b: vec![int(-3), int(-2), int(-1)],
        d: vec![int(-3), int(-2), int(-1)],
        ..FamilyParameters::default()
    }
}

/// The worked example's `B_{H1}` translated so the pencil point is the
/// origin (`y ↦ y − 1`): slopes `m = (−5, −4, −3)`, and `R = 64`.
pub fn paper_present_parameters() -> FamilyParameters {
    FamilyParameters {
        w: vec![int(0), int(0), int(0), int(-1), int(1)],
        a: vec![int(-1), int(-2), int(-3), int(-3), int(-1)],
        pencil_slopes: vec![int(-5), int(-4), int(-3)],
        r: Some(int(64)),
        q: Some(int(64)),
        ..FamilyParameters::default()
    }
}

/// How a sampled lattice differs from the one at `t = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeChange {
    /// Lines with these labels coincide.
    Coincident(String, String),
    /// An intersection point (its incident labels) exists at only one of
    /// the two parameters.
    Point { labels: Vec<String>, at_zero: bool },
    /// A parallel class (labels) exists at only one of the two parameters.
    ParallelClass { labels: Vec<String>, at_zero: bool },
}

impl fmt::Display for LatticeChange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |z: bool| if z { "present at t = 0 but not here" } else { "present here but not at t = 0" };
        match self {
            LatticeChange::Coincident(a, b) => write!(f, "lines {a} and {b} coincide"),
            LatticeChange::Point { labels, at_zero } => {
                write!(f, "point on {{{}}} {}", labels.join(", "), side(*at_zero))
            }
            LatticeChange::ParallelClass { labels, at_zero } => {
                write!(f, "parallel class {{{}}} {}", labels.join(", "), side(*at_zero))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub t: Rational,
    pub change: LatticeChange,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstancyReport {
    pub constant: bool,
    pub samples: Vec<Rational>,
    pub witness: Option<Witness>,
}

type Lattice = (BTreeSet<BTreeSet<usize>>, BTreeSet<BTreeSet<usize>>);

fn lattice_at(f: &IsotopyFamily, t: &Rational) -> Result<std::result::Result<Lattice, LatticeChange>> {
    match f.at(t) {
        Ok(arr) => {
            let p = build_affine_poset(&arr);
            let points = p.points.into_iter().map(|q| q.incident).collect();
            let classes = p.classes.into_iter().map(|c| c.members).filter(|m| m.len() > 1).collect();
            Ok(Ok((points, classes)))
        }
        Err(Error::DuplicateLine(a, b)) => Ok(Err(LatticeChange::Coincident(a, b))),
        Err(e) => Err(e),
    }
}

fn first_difference(f: &IsotopyFamily, zero: &Lattice, other: &Lattice) -> Option<LatticeChange> {
    let names = |s: &BTreeSet<usize>| s.iter().map(|&i| f.lines[i].label.clone()).collect();
    let diff = |a: &BTreeSet<BTreeSet<usize>>, b: &BTreeSet<BTreeSet<usize>>| {
        b.difference(a).next().map(|s| (s.clone(), false)).or_else(|| a.difference(b).next().map(|s| (s.clone(), true)))
    };
    if let Some((s, at_zero)) = diff(&zero.0, &other.0) {
        return Some(LatticeChange::Point { labels: names(&s), at_zero });
    }
    diff(&zero.1, &other.1).map(|(s, at_zero)| LatticeChange::ParallelClass { labels: names(&s), at_zero })
}

/// Evaluates the family at every sample and compares each lattice with the
/// one at `t = 0` under the identity labelling.  Sampled evidence only.
pub fn check_lattice_constancy(f: &IsotopyFamily) -> Result<ConstancyReport> {
    check_lattice_constancy_with(f, Exec::default())
}

pub fn check_lattice_constancy_with(f: &IsotopyFamily, exec: Exec) -> Result<ConstancyReport> {
    let zero = lattice_at(f, &int(0))?;
    let mut samples = f.samples.clone();
    samples.sort();
    let lattices = exec::map(exec, &samples, |t| lattice_at(f, t));
    let mut witness = None;
    for (t, lat) in samples.iter().zip(lattices) {
        let change = match (&zero, lat?) {
            (Err(c), _) => Some(c.clone()),
            (Ok(_), Err(c)) => Some(c),
            (Ok(z), Ok(l)) => first_difference(f, z, &l),
        };
        if let Some(change) = change {
            witness = Some(Witness { t: t.clone(), change });
            break;
        }
    }
    Ok(ConstancyReport { constant: witness.is_none(), samples, witness })
}

/// `y, x, y + x − (1 − 2t)`: three double points except at `t = 1/2`,
/// where all three lines pass through the origin.
pub fn engineered_degenerate_family() -> IsotopyFamily {
    let one = Poly::constant(GaussianRational::one());
    let zero = Poly::default();
    let c = Poly::t().scale(GaussianRational::from_int(2)).minus(&one);
    let lines = vec![
        FamilyLine::new("L1", zero.clone(), one.clone(), zero.clone()),
        FamilyLine::new("L2", one.clone(), zero.clone(), zero),
        FamilyLine::new("L3", one.clone(), one, c),
    ];
    IsotopyFamily::new(lines, default_samples()).expect("valid family")
}
