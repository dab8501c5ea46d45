//! Randell–Arvola presentations of complexified-real arrangements.
//!
//! The real picture is swept in the `+x` direction after a rational shear
//! `x ↦ x + ε·y` that makes every line non-vertical and gives every vertex a
//! distinct `x`-coordinate.
//!
//! Raw edge generator ids run *against* the sweep: the westmost rays get the
//! largest ids, and east edges of later vertices get smaller ids.  With this
//! numbering, [`crate::group::simplify`] eliminates exactly the east edge of
//! each conjugation relator, as [`line_generator_presentation`] does, so both
//! routes reach the same relators.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geom::{Arrangement, Line, Point};
use crate::group::{Gen, Presentation, Word};
use crate::poset::build_affine_poset;
use crate::rational::{int, rat, GaussianRational, Rational};

/// Sweep parameters: the shear `ε`; the sweep direction is always `+x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub shear: Rational,
}

impl SweepConfig {
    pub fn identity() -> SweepConfig {
        SweepConfig { shear: Rational::zero() }
    }
}

/// Denominator of the shear search sequence `0, 1/97, 2/97, …`.
pub const SHEAR_DENOMINATOR: i64 = 97;

/// Line `a·x + b·y + c` rewritten in sheared coordinates `X = x + ε·y`.
pub fn shear_line(l: &Line, eps: &Rational) -> Line {
    let e = GaussianRational::real(eps.clone());
    let b = &l.b - &(&l.a * &e);
    Line::new(l.a.clone(), b, l.c.clone(), l.label.clone()).expect("shear keeps a line nondegenerate")
}

/// Inverse of [`shear_line`].
pub fn unshear_line(l: &Line, eps: &Rational) -> Line {
    let e = GaussianRational::real(eps.clone());
    let b = &l.b + &(&l.a * &e);
    Line::new(l.a.clone(), b, l.c.clone(), l.label.clone()).expect("shear keeps a line nondegenerate")
}

pub fn shear_point(p: &Point, eps: &Rational) -> Point {
    let e = GaussianRational::real(eps.clone());
    Point::new(&p.x + &(&e * &p.y), p.y.clone())
}

pub fn shear_arrangement(arr: &Arrangement, eps: &Rational) -> Arrangement {
    Arrangement::new(arr.lines().iter().map(|l| shear_line(l, eps)).collect()).expect("shear is a bijection on lines")
}

fn require_real(arr: &Arrangement) -> Result<()> {
    match arr.lines().iter().find(|l| !l.is_real()) {
        Some(l) => Err(Error::NonReal(l.label.clone())),
        None => Ok(()),
    }
}

/// The finitely many shears that break the sweep invariants.
pub fn forbidden_shears(arr: &Arrangement) -> BTreeSet<Rational> {
    let mut bad = BTreeSet::new();
    for l in arr.lines() {
        if !l.a.re.is_zero() {
            bad.insert(&l.b.re / &l.a.re);
        }
    }
    let pts: Vec<Point> = build_affine_poset(arr).points.iter().filter_map(|p| p.affine_location().cloned()).collect();
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            if p.y.re != q.y.re {
                bad.insert((&p.x.re - &q.x.re) / (&q.y.re - &p.y.re));
            }
        }
    }
    bad
}

/// Whether the sweep invariants hold after shearing by `eps`.
pub fn is_generic_at(arr: &Arrangement, eps: &Rational) -> bool {
    !forbidden_shears(arr).contains(eps)
}

/// Valid shears in search order: `0`, then `k/97` for `k = 1, 2, …`.
pub fn valid_shears(arr: &Arrangement) -> impl Iterator<Item = Rational> {
    let bad = forbidden_shears(arr);
    std::iter::once(Rational::zero()).chain((1..).map(|k| rat(k, SHEAR_DENOMINATOR))).filter(move |e| !bad.contains(e))
}

/// Shears a real arrangement to the first valid `ε`.
pub fn generic_shear(arr: &Arrangement) -> Result<(Arrangement, SweepConfig)> {
    require_real(arr)?;
    let shear = valid_shears(arr).next().expect("only finitely many shears are forbidden");
    Ok((shear_arrangement(arr, &shear), SweepConfig { shear }))
}

/// A segment or ray of one line between consecutive vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub line: usize,
    /// Position along the line, 0 being the westmost ray.
    pub pos: usize,
    pub west: Option<usize>,
    pub east: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphVertex {
    pub point: Point,
    pub lines: BTreeSet<usize>,
}

/// The planar graph of the real picture of a sheared arrangement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrangementGraph {
    pub labels: Vec<String>,
    /// Vertices sorted by `x`.
    pub vertices: Vec<GraphVertex>,
    /// Edges indexed by raw generator id.
    pub edges: Vec<Edge>,
    /// `line_edges[l][pos]` is the id of line `l`'s edge at `pos`.
    pub line_edges: Vec<Vec<usize>>,
    slopes: Vec<Rational>,
}

/// West edges `g₁…g_n` bottom-to-top just west of the vertex; `east[k]`
/// continues the line of `west[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexStar {
    pub vertex: usize,
    pub lines: Vec<usize>,
    pub west: Vec<usize>,
    pub east: Vec<usize>,
}

pub fn build_graph(arr: &Arrangement) -> Result<ArrangementGraph> {
    require_real(arr)?;
    let lines = arr.lines();
    let mut slopes = Vec::with_capacity(lines.len());
    for l in lines {
        slopes.push(l.slope().ok_or_else(|| Error::NotGeneric(format!("line `{}` is vertical", l.label)))?);
    }
    let mut vertices: Vec<GraphVertex> = build_affine_poset(arr)
        .points
        .into_iter()
        .map(|p| GraphVertex { point: p.affine_location().unwrap().clone(), lines: p.incident })
        .collect();
    vertices.sort_by(|u, v| u.point.x.re.cmp(&v.point.x.re));
    if let Some(w) = vertices.windows(2).find(|w| w[0].point.x.re == w[1].point.x.re) {
        return Err(Error::NotGeneric(format!("vertices {} and {} share x", w[0].point, w[1].point)));
    }

    // Creation order: westmost rays, then east edges vertex by vertex.
    let mut on_line: Vec<Vec<usize>> = vec![Vec::new(); lines.len()];
    for (v, vert) in vertices.iter().enumerate() {
        for &l in &vert.lines {
            on_line[l].push(v);
        }
    }
    let total: usize = on_line.iter().map(|vs| vs.len() + 1).sum();
    let mut edges: Vec<Option<Edge>> = vec![None; total];
    let mut line_edges: Vec<Vec<usize>> = vec![Vec::new(); lines.len()];
    let mut next = 0;
    let mut create = |line: usize, pos: usize, edges: &mut Vec<Option<Edge>>, line_edges: &mut Vec<Vec<usize>>| {
        let id = total - 1 - next;
        next += 1;
        let west = pos.checked_sub(1).map(|p| on_line[line][p]);
        let east = on_line[line].get(pos).copied();
        edges[id] = Some(Edge { line, pos, west, east });
        line_edges[line].push(id);
    };
    for l in 0..lines.len() {
        create(l, 0, &mut edges, &mut line_edges);
    }
    for vert in &vertices {
        for &l in &vert.lines {
            let pos = line_edges[l].len();
            create(l, pos, &mut edges, &mut line_edges);
        }
    }
    Ok(ArrangementGraph {
        labels: arr.labels(),
        vertices,
        edges: edges.into_iter().map(Option::unwrap).collect(),
        line_edges,
        slopes,
    })
}

impl ArrangementGraph {
    pub fn edge_name(&self, id: usize) -> String {
        let e = &self.edges[id];
        format!("{}#{}", self.labels[e.line], e.pos)
    }

    pub fn star(&self, v: usize) -> VertexStar {
        let mut lines: Vec<usize> = self.vertices[v].lines.iter().copied().collect();
        // Just west of the vertex, steeper lines lie lower.
        lines.sort_by(|&p, &q| self.slopes[q].cmp(&self.slopes[p]));
        let edge_at = |l: usize, east: bool| {
            let pos = self.edges_before(l, v) + usize::from(east);
            self.line_edges[l][pos]
        };
        VertexStar {
            vertex: v,
            west: lines.iter().map(|&l| edge_at(l, false)).collect(),
            east: lines.iter().map(|&l| edge_at(l, true)).collect(),
            lines,
        }
    }

    /// Number of vertices of line `l` strictly west of vertex `v`.
    fn edges_before(&self, l: usize, v: usize) -> usize {
        self.line_edges[l].iter().filter(|&&e| self.edges[e].east.is_some_and(|x| x < v)).count()
    }
}

/// `g₂'(g₂^{g₁})⁻¹`-style conjugation relators, then the commutation
/// relators `[g_n⋯g_k, g_{k−1}⋯g₁]` for `k = n, …, 2`.
pub fn vertex_relators(star: &VertexStar) -> Result<(Vec<Word>, Vec<Word>)> {
    let n = star.west.len();
    if n < 2 {
        return Err(Error::BadMultiplicity(n));
    }
    let g = |k: usize| Word::gen(star.west[k - 1]);
    let gp = |k: usize| Word::gen(star.east[k - 1]);
    // Descending product g_hi ⋯ g_lo.
    let desc = |hi: usize, lo: usize| {
        let ids: Vec<usize> = (lo..=hi).rev().map(|k| star.west[k - 1]).collect();
        Word::product_of(&ids)
    };
    let mut conj = vec![gp(1).mul(&g(1).inverse())];
    for k in 2..n {
        conj.push(gp(k).mul(&g(k).conj(&desc(k - 1, 1)).inverse()));
    }
    conj.push(gp(n).mul(&g(n).inverse()));
    let comm = (2..=n).rev().map(|k| Word::commutator(&desc(n, k), &desc(k - 1, 1))).collect();
    Ok((conj, comm))
}

/// One generator per edge; relators vertex by vertex in sweep order.
pub fn assemble_presentation(graph: &ArrangementGraph) -> Presentation {
    let gens = (0..graph.edges.len()).map(|id| Gen { id, name: graph.edge_name(id) }).collect();
    let mut relators = Vec::new();
    for v in 0..graph.vertices.len() {
        let (conj, comm) = vertex_relators(&graph.star(v)).expect("graph vertices have multiplicity ≥ 2");
        relators.extend(conj);
        relators.extend(comm);
    }
    Presentation::new(gens, relators).expect("relators use edge generators")
}

/// Eliminates every east edge by its conjugation relator in sweep order and
/// renames the surviving westmost rays `0..n` by line label.
pub fn line_generator_presentation(graph: &ArrangementGraph) -> Presentation {
    let mut p = assemble_presentation(graph);
    let mut raw = 0;
    let mut deleted = 0;
    for v in 0..graph.vertices.len() {
        let star = graph.star(v);
        for &e in &star.east {
            p.eliminate_mut(e, raw - deleted).expect("east edge occurs once in its conjugation relator");
            raw += 1;
            deleted += 1;
        }
        raw += star.west.len() - 1;
    }
    let order: Vec<usize> = graph.line_edges.iter().map(|es| es[0]).collect();
    p.reorder_generators(&order).relabel(&graph.labels)
}

/// The line-generator presentation of a real arrangement at a given shear.
pub fn presentation_at(arr: &Arrangement, cfg: &SweepConfig) -> Result<Presentation> {
    require_real(arr)?;
    if !is_generic_at(arr, &cfg.shear) {
        return Err(Error::NotGeneric(format!("shear {} is forbidden", cfg.shear)));
    }
    Ok(line_generator_presentation(&build_graph(&shear_arrangement(arr, &cfg.shear))?))
}

/// The line-generator presentation at the first valid shear.
pub fn arrangement_presentation(arr: &Arrangement) -> Result<Presentation> {
    let (sheared, _) = generic_shear(arr)?;
    Ok(line_generator_presentation(&build_graph(&sheared)?))
}

/// Raw edge presentation at the first valid shear.
pub fn raw_presentation(arr: &Arrangement) -> Result<Presentation> {
    let (sheared, _) = generic_shear(arr)?;
    Ok(assemble_presentation(&build_graph(&sheared)?))
}

/// Equation helper used in tests and fixtures: `a·x + b·y + c`.
pub fn real_line(a: i64, b: i64, c: i64, label: &str) -> Line {
    Line::real(int(a), int(b), int(c), label).expect("nondegenerate")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{abelianization, euler_characteristic, match_up_to_renaming, simplify};

    fn arr(lines: Vec<Line>) -> Arrangement {
        Arrangement::new(lines).unwrap()
    }

    fn crossing() -> Arrangement {
        arr(vec![real_line(0, 1, 0, "a"), real_line(1, 0, 0, "b")])
    }

    fn pencil3() -> Arrangement {
        arr(vec![real_line(0, 1, 0, "a"), real_line(1, 0, 0, "b"), real_line(1, -1, 0, "c")])
    }

    fn paper_a() -> Arrangement {
        arr(vec![
            real_line(1, 0, 0, "H1"),
            real_line(0, 1, 0, "H2"),
            real_line(0, 1, -1, "H3"),
            real_line(0, 1, -2, "H4"),
            real_line(1, -1, 0, "H5"),
            real_line(1, 1, -2, "H6"),
        ])
    }

    #[test]
    fn shear_examples() {
        let (_, cfg) = generic_shear(&paper_a()).unwrap();
        assert_ne!(cfg.shear, Rational::zero());
        let verticals = arr(vec![real_line(1, 0, 0, "a"), real_line(1, 0, -1, "b")]);
        let (sheared, cfg) = generic_shear(&verticals).unwrap();
        assert_eq!(cfg.shear, rat(1, 97));
        assert!(sheared.lines().iter().all(|l| l.slope().is_some()));
        let generic = arr(vec![real_line(1, 1, 0, "a"), real_line(1, -1, 3, "b")]);
        assert_eq!(generic_shear(&generic).unwrap().1, SweepConfig::identity());
    }

    #[test]
    fn graph_counts() {
        let (s, _) = generic_shear(&crossing()).unwrap();
        let g = build_graph(&s).unwrap();
        assert_eq!((g.vertices.len(), g.edges.len()), (1, 4));
        let (s, _) = generic_shear(&pencil3()).unwrap();
        let g = build_graph(&s).unwrap();
        assert_eq!((g.vertices.len(), g.edges.len()), (1, 6));
        let p = assemble_presentation(&g);
        assert_eq!((p.gen_count(), p.relators().len()), (6, 5));
    }

    #[test]
    fn vertex_relator_templates() {
        let star = VertexStar { vertex: 0, lines: vec![0, 1], west: vec![0, 1], east: vec![2, 3] };
        let (conj, comm) = vertex_relators(&star).unwrap();
        assert_eq!(conj, vec![Word::gen(2).mul(&Word::gen(0).inverse()), Word::gen(3).mul(&Word::gen(1).inverse())]);
        assert_eq!(comm, vec![Word::commutator(&Word::gen(1), &Word::gen(0))]);
        let star = VertexStar { vertex: 0, lines: vec![0], west: vec![0], east: vec![1] };
        assert_eq!(vertex_relators(&star), Err(Error::BadMultiplicity(1)));
        let star = VertexStar { vertex: 0, lines: vec![0, 1, 2], west: vec![0, 1, 2], east: vec![3, 4, 5] };
        let (conj, comm) = vertex_relators(&star).unwrap();
        assert_eq!((conj.len(), comm.len()), (3, 2));
        assert_eq!(conj[1].len(), 4);
    }

    #[test]
    fn crossing_and_pencil_presentations() {
        let p = arrangement_presentation(&crossing()).unwrap();
        assert_eq!(p.gen_count(), 2);
        assert_eq!(p.relators().len(), 1);
        assert_eq!(
            p.relators()[0].cyclic_canonical(),
            Word::commutator(&Word::gen(0), &Word::gen(1)).cyclic_canonical()
        );

        let p = arrangement_presentation(&pencil3()).unwrap();
        assert_eq!((p.gen_count(), p.relators().len()), (3, 2));
        let raw = raw_presentation(&pencil3()).unwrap();
        let (sr, _) = simplify(&raw);
        let (sp, _) = simplify(&p);
        assert!(match_up_to_renaming(&sr, &sp).is_some());
    }

    #[test]
    fn paper_counts() {
        let (s, _) = generic_shear(&paper_a()).unwrap();
        let g = build_graph(&s).unwrap();
        let raw = assemble_presentation(&g);
        let p = line_generator_presentation(&g);
        let b = build_affine_poset(&paper_a()).betti();
        assert_eq!(p.gen_count(), 6);
        assert_eq!(p.relators().len(), b.b2);
        assert_eq!(euler_characteristic(&p), 1 - b.b1 as i64 + b.b2 as i64);
        assert!(abelianization(&p).is_free(6));
        let (sr, _) = simplify(&raw);
        let (sp, _) = simplify(&p);
        assert!(match_up_to_renaming(&sr, &sp).is_some());
        assert_eq!(raw.gen_count(), g.edges.len());
    }
}
