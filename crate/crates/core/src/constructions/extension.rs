//! Pencil attachment `B_H = 𝒜 ∪ 𝒞`, parallel attachment `B_∞ = 𝒜 ∪ 𝒟`, and
//! the exterior-pencil model used for the Lemma "present" check.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arvola::{forbidden_shears, shear_arrangement, unshear_line, valid_shears};
use crate::error::{Error, Result};
use crate::geom::{intersect, Arrangement, Line, Meet, Point};
use crate::poset::build_affine_poset;
use crate::rational::{int, GaussianRational, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilAttachment {
    pub base: Arrangement,
    pub h: String,
    pub m: usize,
    pub point: Point,
    pub slopes: Vec<Rational>,
    pub added: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParallelAttachment {
    pub base: Arrangement,
    pub count: usize,
    /// Common slope of the added lines.
    pub direction: Rational,
    pub offsets: Vec<Rational>,
    pub added: Vec<String>,
}

fn require_real(a: &Arrangement) -> Result<()> {
    match a.lines().iter().find(|l| !l.is_real()) {
        Some(l) => Err(Error::NonReal(l.label.clone())),
        None => Ok(()),
    }
}

fn require_mult(m: usize) -> Result<()> {
    if m < 3 {
        Err(Error::MultiplicityTooSmall(m))
    } else {
        Ok(())
    }
}

/// Rationals in order of height `max(|p|, q)`, then denominator, positive
/// before negative: `0, 1, −1, 2, −2, 1/2, −1/2, 3, −3, 3/2, −3/2, 1/3, …`.
pub fn rationals_by_height() -> impl Iterator<Item = Rational> {
    std::iter::once(Rational::zero()).chain((1i64..).flat_map(|h| {
        (1..=h)
            .flat_map(move |q| {
                let ps: Vec<i64> = if q == h { (1..=h).collect() } else { vec![h] };
                ps.into_iter().map(move |p| (p, q))
            })
            .filter(|&(p, q)| p.max(q) == h && p.gcd(&q) == 1)
            .flat_map(|(p, q)| [Rational::new(p.into(), q.into()), Rational::new((-p).into(), q.into())])
            .collect::<Vec<_>>()
    }))
}

fn real_point(p: &Point) -> (Rational, Rational) {
    (p.x.re.clone(), p.y.re.clone())
}

fn vertices(a: &Arrangement) -> Vec<Point> {
    build_affine_poset(a).points.iter().filter_map(|p| p.affine_location().cloned()).collect()
}

/// `y − σx + (σ·p_x − p_y) = 0`, the line of slope `σ` through `p`.
fn line_through(p: &(Rational, Rational), sigma: &Rational, label: String) -> Line {
    let c = sigma * &p.0 - &p.1;
    Line::real(-sigma.clone(), Rational::one(), c, label).expect("b = 1")
}

fn is_parallel_to_any(l: &Line, a: &Arrangement) -> bool {
    a.lines().iter().any(|m| l.is_parallel_to(m))
}

/// Candidate slopes `−3, −4, −5, …`.
fn candidate_slopes() -> impl Iterator<Item = Rational> {
    (3i64..).map(|k| int(-k))
}

const SLOPE_BOUND: usize = 512;

/// Adds `m − 1` lines through a point of `h` so that `h` and the new lines
/// form a pencil of multiplicity `m` meeting the rest of `𝒜` in double
/// points.  The point is the first of `h` by parameter height lying on no
/// other line; slopes are the first valid ones of `−3, −4, …`.
pub fn build_pencil_extension(a: &Arrangement, h: &str, m: usize) -> Result<(Arrangement, PencilAttachment)> {
    require_mult(m)?;
    require_real(a)?;
    let hl = a.line(h).ok_or_else(|| Error::UnknownLabel(h.to_string()))?;
    let point = rationals_by_height()
        .take(100_000)
        .map(|t| {
            if !hl.a.is_zero() {
                // x = −(b·t + c)
                Point::real(-(&hl.b.re * &t + &hl.c.re), t)
            } else {
                Point::real(t, -hl.c.re.clone())
            }
        })
        .find(|p| a.lines().iter().filter(|l| l.label != h).all(|l| !l.contains(p)))
        .ok_or_else(|| Error::SearchExhausted("pencil point".into()))?;
    let pr = real_point(&point);
    let verts = vertices(a);
    let mut slopes = Vec::new();
    let mut added = Vec::new();
    for sigma in candidate_slopes().take(SLOPE_BOUND) {
        if slopes.len() == m - 1 {
            break;
        }
        let label = a.fresh_label("C", added.len() + 1);
        let l = line_through(&pr, &sigma, label);
        if is_parallel_to_any(&l, a) || verts.iter().any(|v| l.contains(v)) {
            continue;
        }
        slopes.push(sigma);
        added.push(l);
    }
    if added.len() < m - 1 {
        return Err(Error::SearchExhausted("pencil slopes".into()));
    }
    let labels = added.iter().map(|l| l.label.clone()).collect();
    let b = a.extended(added)?;
    let att = PencilAttachment { base: a.clone(), h: h.to_string(), m, point, slopes, added: labels };
    if !check_pencil_attachment(a, &b, &att.h, &att.added) {
        return Err(Error::SearchExhausted("pencil validation".into()));
    }
    Ok((b, att))
}

/// Checks the pencil-attachment invariants against the poset of `b`.
pub fn check_pencil_attachment(a: &Arrangement, b: &Arrangement, h: &str, added: &[String]) -> bool {
    let Some(hi) = b.index_of(h) else { return false };
    let new: BTreeSet<usize> = added.iter().filter_map(|l| b.index_of(l)).collect();
    if new.len() != added.len() || b.len() != a.len() + added.len() {
        return false;
    }
    let mut pencil: BTreeSet<usize> = new.clone();
    pencil.insert(hi);
    let poset = build_affine_poset(b);
    let mut found_pencil = false;
    for p in &poset.points {
        if p.incident == pencil {
            found_pencil = true;
        } else if p.incident.iter().any(|i| new.contains(i)) && p.multiplicity() != 2 {
            return false;
        }
    }
    // Every new line meets every line of 𝒜 ∖ {h}.
    let meets_all =
        new.iter().all(|&c| a.lines().iter().filter(|l| l.label != h).all(|l| !b.lines()[c].is_parallel_to(l)));
    found_pencil && meets_all && embeds_unchanged(a, b)
}

/// `𝒜`'s points keep their incidences inside `b`.
fn embeds_unchanged(a: &Arrangement, b: &Arrangement) -> bool {
    let base = build_affine_poset(a);
    let ext = build_affine_poset(b);
    base.points.iter().all(|p| {
        let loc = p.affine_location().unwrap();
        ext.point_at(loc).is_some_and(|q| {
            let labels: BTreeSet<&str> = q.incident.iter().map(|&i| b.lines()[i].label.as_str()).collect();
            let orig: BTreeSet<&str> = p.incident.iter().map(|&i| a.lines()[i].label.as_str()).collect();
            labels == orig
        })
    })
}

/// First valid sweep shear of `𝒜`.
pub fn base_shear(a: &Arrangement) -> Rational {
    valid_shears(a).next().expect("finitely many forbidden shears")
}

/// Offsets searched for the parallel lines: `1..=16`, then `−1..=−16`,
/// then `±2^k`.
fn candidate_bases() -> impl Iterator<Item = BigInt> {
    (1..=16i64).chain((1..=16).map(|k| -k)).map(BigInt::from).chain((5..64u32).flat_map(|k| {
        let p = BigInt::one() << k;
        [p.clone(), -p]
    }))
}

/// Adds `m − 1` parallel lines `y + |σ|x + c`, listed by decreasing offset,
/// each meeting `𝒜` in double points.  The search additionally keeps the
/// extension generic at `𝒜`'s sweep shear and places every crossing with a
/// line `H` of `𝒜` west of all points of multiplicity ≥ 3 on `H`, so each
/// new line meets the westmost generator of `H`.
pub fn build_parallel_extension(a: &Arrangement, m: usize) -> Result<(Arrangement, ParallelAttachment)> {
    require_mult(m)?;
    require_real(a)?;
    let eps = base_shear(a);
    let verts = vertices(a);
    for sigma in candidate_slopes().take(64) {
        let probe = line_through(&(Rational::zero(), Rational::zero()), &sigma, String::new());
        if is_parallel_to_any(&probe, a) {
            continue;
        }
        for base in candidate_bases() {
            let offsets: Vec<Rational> =
                (0..m as i64 - 1).rev().map(|k| Rational::from_integer(&base + BigInt::from(k))).collect();
            let lines: Vec<Line> = offsets
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    Line::real(-sigma.clone(), Rational::one(), c.clone(), a.fresh_label("D", k + 1)).expect("b = 1")
                })
                .collect();
            if lines.iter().any(|l| verts.iter().any(|v| l.contains(v))) {
                continue;
            }
            let b = a.extended(lines.clone())?;
            if forbidden_shears(&b).contains(&eps) || !crossings_west_of_multiple_points(a, &lines, &eps) {
                continue;
            }
            let added: Vec<String> = lines.iter().map(|l| l.label.clone()).collect();
            if !check_parallel_attachment(a, &b, &added) {
                continue;
            }
            let att = ParallelAttachment { base: a.clone(), count: m - 1, direction: sigma, offsets, added };
            return Ok((b, att));
        }
    }
    Err(Error::SearchExhausted("parallel lines".into()))
}

/// In coordinates sheared by `eps`, each new line crosses each `H ∈ 𝒜` west
/// of every point of multiplicity ≥ 3 on `H`.
pub fn crossings_west_of_multiple_points(a: &Arrangement, new: &[Line], eps: &Rational) -> bool {
    let sa = shear_arrangement(a, eps);
    let poset = build_affine_poset(&sa);
    let sn: Vec<Line> = new.iter().map(|l| crate::arvola::shear_line(l, eps)).collect();
    sa.lines().iter().enumerate().all(|(j, hj)| {
        let first_multiple = poset
            .points
            .iter()
            .filter(|p| p.multiplicity() >= 3 && p.incident.contains(&j))
            .map(|p| p.affine_location().unwrap().x.re.clone())
            .min();
        let Some(limit) = first_multiple else { return true };
        sn.iter().all(|l| match intersect(l, hj) {
            Meet::Point(p) => p.x.re < limit,
            _ => true,
        })
    })
}

/// Checks the parallel-attachment invariants against the poset of `b`.
pub fn check_parallel_attachment(a: &Arrangement, b: &Arrangement, added: &[String]) -> bool {
    let new: Vec<usize> = added.iter().filter_map(|l| b.index_of(l)).collect();
    if new.len() != added.len() || b.len() != a.len() + added.len() {
        return false;
    }
    let lines = b.lines();
    let pairwise_parallel = new.iter().all(|&i| lines[i].is_parallel_to(&lines[new[0]]));
    let meets_all = new.iter().all(|&i| a.lines().iter().all(|l| !lines[i].is_parallel_to(l)));
    let poset = build_affine_poset(b);
    let doubles =
        poset.points.iter().filter(|p| p.incident.iter().any(|i| new.contains(i))).all(|p| p.multiplicity() == 2);
    pairwise_parallel && meets_all && doubles && embeds_unchanged(a, b)
}

/// A real arrangement with the poset of `B_H` whose pencil point lies west
/// of every vertex of `𝒜` in the coordinates sheared by `𝒜`'s sweep shear
/// `ε`: the pencil is moved "outside" the arrangement.
///
/// With `S` the largest sheared slope of `𝒜`, the new lines have sheared
/// slopes `S + 1, …, S + m − 1`, so just west of the pencil point `h` is the
/// top line.  The point sits on `h` at `X_min − T`; `T` doubles until every
/// new crossing lies west of all vertices of `𝒜` and the sweep stays
/// generic at `ε`.  `𝒜`'s lines are kept verbatim.
pub fn exterior_pencil_model(a: &Arrangement, h: &str, m: usize) -> Result<Arrangement> {
    exterior_pencil_model_with_config(a, h, m).map(|(model, _)| model)
}

/// Placement data of [`exterior_pencil_model`], in sheared coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExteriorModelConfig {
    /// Largest `|X|` of a vertex of `𝒜`.
    pub s: Rational,
    /// `|X|` of the pencil point, `> s`.
    pub r: Rational,
    /// Largest slope of an added line.
    pub w: Rational,
}

pub fn exterior_pencil_model_with_config(
    a: &Arrangement,
    h: &str,
    m: usize,
) -> Result<(Arrangement, ExteriorModelConfig)> {
    require_real(a)?;
    exterior_pencil_model_at(a, h, m, &base_shear(a))
}

/// [`exterior_pencil_model`] placed for the sweep shear `eps`, which must be
/// generic for `𝒜`.
pub fn exterior_pencil_model_at(
    a: &Arrangement,
    h: &str,
    m: usize,
    eps: &Rational,
) -> Result<(Arrangement, ExteriorModelConfig)> {
    require_mult(m)?;
    require_real(a)?;
    a.line(h).ok_or_else(|| Error::UnknownLabel(h.to_string()))?;
    if forbidden_shears(a).contains(eps) {
        return Err(Error::NotGeneric(format!("shear {eps} is forbidden for the base arrangement")));
    }
    let eps = eps.clone();
    let sa = shear_arrangement(a, &eps);
    let hs = sa.line(h).unwrap();
    let slopes: Vec<Rational> = sa.lines().iter().map(|l| l.slope().expect("sheared lines are not vertical")).collect();
    let s_max = slopes.iter().max().unwrap().clone();
    let sigmas: Vec<Rational> = (1..m as i64).map(|k| &s_max + int(k)).collect();
    let vxs: Vec<Rational> = vertices(&sa).iter().map(|p| p.x.re.clone()).collect();
    let x_min = vxs.iter().min().cloned().unwrap_or_else(Rational::zero);
    let mut t = Rational::one();
    for _ in 0..256 {
        let xp = &x_min - &t;
        let yp = hs.y_at(&xp).unwrap();
        let p = (xp.clone(), yp);
        let new: Vec<Line> =
            sigmas.iter().enumerate().map(|(k, s)| line_through(&p, s, a.fresh_label("C", k + 1))).collect();
        let mut xs: Vec<Rational> = vec![xp.clone()];
        let mut ok = true;
        for l in &new {
            for hj in sa.lines().iter().filter(|l| l.label != h) {
                match intersect(l, hj) {
                    Meet::Point(q) if q.x.re < x_min => xs.push(q.x.re.clone()),
                    _ => ok = false,
                }
            }
        }
        let distinct: BTreeSet<&Rational> = xs.iter().chain(&vxs).collect();
        if ok && distinct.len() == xs.len() + vxs.len() {
            let lines: Vec<Line> = new.iter().map(|l| unshear_line(l, &eps)).collect();
            let model = a.extended(lines)?;
            debug_assert!(!forbidden_shears(&model).contains(&eps));
            let abs = |r: &Rational| if r < &Rational::zero() { -r.clone() } else { r.clone() };
            let s = vxs.iter().map(abs).max().unwrap_or_else(Rational::zero);
            let config = ExteriorModelConfig { s, r: abs(&xp), w: sigmas.last().unwrap().clone() };
            return Ok((model, config));
        }
        t = &t * int(2);
    }
    Err(Error::SearchExhausted("exterior pencil placement".into()))
}

/// Splits an arrangement of pencil-attachment shape into `(𝒜, h, added)`:
/// a point of multiplicity `m ≥ 3` and a line `h` through it such that the
/// other lines through it meet all remaining lines in double points.
pub fn detect_pencil_form(b: &Arrangement) -> Option<(Arrangement, String, Vec<String>)> {
    let poset = build_affine_poset(b);
    let lines = b.lines();
    for p in poset.points.iter().filter(|p| p.multiplicity() >= 3) {
        for &h in &p.incident {
            let others: Vec<usize> = p.incident.iter().copied().filter(|&i| i != h).collect();
            let rest: Vec<usize> = (0..b.len()).filter(|i| !p.incident.contains(i)).collect();
            let good = others.iter().all(|&c| {
                rest.iter().all(|&r| !lines[c].is_parallel_to(&lines[r]))
                    && poset
                        .points
                        .iter()
                        .filter(|q| q.incident.contains(&c) && q.incident != p.incident)
                        .all(|q| q.multiplicity() == 2)
            });
            if good {
                let a = Arrangement::new(
                    lines.iter().enumerate().filter(|(i, _)| !others.contains(i)).map(|(_, l)| l.clone()).collect(),
                )
                .ok()?;
                let added = others.iter().map(|&i| lines[i].label.clone()).collect();
                return Some((a, lines[h].label.clone(), added));
            }
        }
    }
    None
}

/// A real point helper for callers that build points from integers.
pub fn point(x: i64, y: i64) -> Point {
    Point::new(GaussianRational::from_int(x), GaussianRational::from_int(y))
}
