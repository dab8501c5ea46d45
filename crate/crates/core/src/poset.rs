//! Rank ≤ 2 intersection posets of planar arrangements and of their
//! projective closures, with an exact isomorphism search.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::exec::{self, Exec};
use crate::geom::{intersect, Arrangement, Meet, Point};
use crate::rational::GaussianRational;

pub type Direction = (GaussianRational, GaussianRational);

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Location {
    Affine(Point),
    AtInfinity(Direction),
}

/// A point where at least two lines meet. `incident` holds line indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionPoint {
    pub location: Location,
    pub incident: BTreeSet<usize>,
}

impl IntersectionPoint {
    pub fn multiplicity(&self) -> usize {
        self.incident.len()
    }

    pub fn affine_location(&self) -> Option<&Point> {
        match &self.location {
            Location::Affine(p) => Some(p),
            Location::AtInfinity(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParallelClass {
    pub direction: Direction,
    pub members: BTreeSet<usize>,
}

/// Intersection points and parallel classes of an affine arrangement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffinePoset {
    pub labels: Vec<String>,
    pub points: Vec<IntersectionPoint>,
    pub classes: Vec<ParallelClass>,
}

/// Poset of the projective closure. The line at infinity has index
/// `labels.len() - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectivePoset {
    pub labels: Vec<String>,
    pub points: Vec<IntersectionPoint>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BettiData {
    pub b1: usize,
    pub b2: usize,
}

pub const LINE_AT_INFINITY: &str = "inf";

fn choose2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

pub fn build_affine_poset(arr: &Arrangement) -> AffinePoset {
    let lines = arr.lines();
    let mut points: BTreeMap<Point, BTreeSet<usize>> = BTreeMap::new();
    let mut classes: BTreeMap<Direction, BTreeSet<usize>> = BTreeMap::new();
    for (i, l) in lines.iter().enumerate() {
        classes.entry(l.direction()).or_default().insert(i);
        for (j, m) in lines.iter().enumerate().skip(i + 1) {
            match intersect(l, m) {
                Meet::Point(p) => {
                    let set = points.entry(p).or_default();
                    set.insert(i);
                    set.insert(j);
                }
                Meet::Parallel => {}
                Meet::EqualLines => unreachable!("arrangement lines are distinct"),
            }
        }
    }
    AffinePoset {
        labels: arr.labels(),
        points: points
            .into_iter()
            .map(|(p, incident)| IntersectionPoint { location: Location::Affine(p), incident })
            .collect(),
        classes: classes.into_iter().map(|(direction, members)| ParallelClass { direction, members }).collect(),
    }
}

pub fn projective_closure(arr: &Arrangement) -> ProjectivePoset {
    build_affine_poset(arr).projective()
}

impl AffinePoset {
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn betti(&self) -> BettiData {
        betti(self)
    }

    pub fn projective(&self) -> ProjectivePoset {
        let inf = self.n();
        let mut labels = self.labels.clone();
        let mut name = LINE_AT_INFINITY.to_string();
        while labels.contains(&name) {
            name.push('\'');
        }
        labels.push(name);
        let mut points = self.points.clone();
        for class in &self.classes {
            let mut incident = class.members.clone();
            incident.insert(inf);
            points.push(IntersectionPoint { location: Location::AtInfinity(class.direction.clone()), incident });
        }
        ProjectivePoset { labels, points }
    }

    /// Σ C(mult,2) + Σ C(|class|,2) = C(n,2).
    pub fn pair_accounting_holds(&self) -> bool {
        let pts: usize = self.points.iter().map(|p| choose2(p.multiplicity())).sum();
        let cls: usize = self.classes.iter().map(|c| choose2(c.members.len())).sum();
        pts + cls == choose2(self.n())
    }

    /// Multiset `{multiplicity: count}` over the affine points.
    pub fn multiplicity_profile(&self) -> BTreeMap<usize, usize> {
        multiplicity_profile(&self.points)
    }

    pub fn point_at(&self, p: &Point) -> Option<&IntersectionPoint> {
        self.points.iter().find(|q| q.affine_location() == Some(p))
    }

    /// Points incident to at least three lines.
    pub fn multiple_points(&self) -> impl Iterator<Item = &IntersectionPoint> {
        self.points.iter().filter(|p| p.multiplicity() >= 3)
    }

    pub fn class_of(&self, line: usize) -> &ParallelClass {
        self.classes.iter().find(|c| c.members.contains(&line)).expect("every line has a class")
    }

    pub fn structure(&self) -> IncidenceStructure {
        let mut blocks: Vec<(u8, BTreeSet<usize>)> = self.points.iter().map(|p| (0, p.incident.clone())).collect();
        blocks.extend(self.classes.iter().map(|c| (1, c.members.clone())));
        IncidenceStructure { n: self.n(), blocks }
    }
}

impl ProjectivePoset {
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn infinity_index(&self) -> usize {
        self.labels.len() - 1
    }

    pub fn pair_accounting_holds(&self) -> bool {
        let pts: usize = self.points.iter().map(|p| choose2(p.multiplicity())).sum();
        pts == choose2(self.n())
    }

    pub fn multiplicity_profile(&self) -> BTreeMap<usize, usize> {
        multiplicity_profile(&self.points)
    }

    /// Labels of lines carrying at least `count` points of multiplicity
    /// exactly `mult`.
    pub fn lines_with_points(&self, mult: usize, count: usize) -> Vec<String> {
        (0..self.n())
            .filter(|&i| {
                self.points.iter().filter(|p| p.multiplicity() == mult && p.incident.contains(&i)).count() >= count
            })
            .map(|i| self.labels[i].clone())
            .collect()
    }

    pub fn structure(&self) -> IncidenceStructure {
        IncidenceStructure { n: self.n(), blocks: self.points.iter().map(|p| (0, p.incident.clone())).collect() }
    }
}

fn multiplicity_profile(points: &[IntersectionPoint]) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for p in points {
        *out.entry(p.multiplicity()).or_insert(0) += 1;
    }
    out
}

pub fn betti(poset: &AffinePoset) -> BettiData {
    BettiData { b1: poset.n(), b2: poset.points.iter().map(|p| p.multiplicity() - 1).sum() }
}

/// Lines `0..n` with tagged blocks (points, or parallel classes). Two
/// structures are isomorphic when a permutation of lines carries the block
/// multiset onto the other's, preserving tags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceStructure {
    pub n: usize,
    pub blocks: Vec<(u8, BTreeSet<usize>)>,
}

impl IncidenceStructure {
    /// Per-line sorted list of (tag, block size).
    pub fn line_profiles(&self) -> Vec<Vec<(u8, usize)>> {
        let mut prof = vec![Vec::new(); self.n];
        for (tag, b) in &self.blocks {
            for &i in b {
                prof[i].push((*tag, b.len()));
            }
        }
        for p in &mut prof {
            p.sort_unstable();
        }
        prof
    }

    fn block_set(&self) -> BTreeMap<(u8, BTreeSet<usize>), usize> {
        let mut m = BTreeMap::new();
        for b in &self.blocks {
            *m.entry(b.clone()).or_insert(0) += 1;
        }
        m
    }

    /// Whether `perm` (line i ↦ perm[i]) maps this structure onto `other`.
    pub fn maps_onto(&self, other: &IncidenceStructure, perm: &[usize]) -> bool {
        if self.n != other.n || self.blocks.len() != other.blocks.len() {
            return false;
        }
        let mut mapped = BTreeMap::new();
        for (tag, b) in &self.blocks {
            let img: BTreeSet<usize> = b.iter().map(|&i| perm[i]).collect();
            *mapped.entry((*tag, img)).or_insert(0) += 1;
        }
        mapped == other.block_set()
    }

    /// For each unordered pair, index of the first block containing both.
    fn pair_table(&self) -> Vec<Vec<Option<usize>>> {
        let mut t = vec![vec![None; self.n]; self.n];
        for (k, (_, b)) in self.blocks.iter().enumerate() {
            let v: Vec<usize> = b.iter().copied().collect();
            for (x, &i) in v.iter().enumerate() {
                for &j in &v[x + 1..] {
                    if t[i][j].is_none() {
                        t[i][j] = Some(k);
                        t[j][i] = Some(k);
                    }
                }
            }
        }
        t
    }
}

struct IsoSearch<'a> {
    p: &'a IncidenceStructure,
    q: &'a IncidenceStructure,
    pp: Vec<Vec<Option<usize>>>,
    qp: Vec<Vec<Option<usize>>>,
    candidates: Vec<Vec<usize>>,
}

struct IsoState {
    perm: Vec<usize>,
    used: Vec<bool>,
    block_pq: Vec<Option<usize>>,
    block_qp: Vec<Option<usize>>,
}

impl<'a> IsoSearch<'a> {
    fn new(p: &'a IncidenceStructure, q: &'a IncidenceStructure) -> Option<Self> {
        if p.n != q.n || p.blocks.len() != q.blocks.len() {
            return None;
        }
        let pprof = p.line_profiles();
        let qprof = q.line_profiles();
        let mut sorted_p = pprof.clone();
        let mut sorted_q = qprof.clone();
        sorted_p.sort();
        sorted_q.sort();
        if sorted_p != sorted_q {
            return None;
        }
        let candidates = pprof.iter().map(|pr| (0..q.n).filter(|&j| &qprof[j] == pr).collect()).collect();
        Some(IsoSearch { p, q, pp: p.pair_table(), qp: q.pair_table(), candidates })
    }

    fn fresh_state(&self) -> IsoState {
        IsoState {
            perm: Vec::with_capacity(self.p.n),
            used: vec![false; self.q.n],
            block_pq: vec![None; self.p.blocks.len()],
            block_qp: vec![None; self.q.blocks.len()],
        }
    }

    /// Tries `i ↦ img`; on success returns the newly fixed block pairs.
    fn assign(&self, st: &mut IsoState, img: usize) -> Option<Vec<(usize, usize)>> {
        let i = st.perm.len();
        if st.used[img] {
            return None;
        }
        let mut fixed = Vec::new();
        for j in 0..i {
            let jj = st.perm[j];
            match (self.pp[i][j], self.qp[img][jj]) {
                (None, None) => {}
                (Some(bp), Some(bq)) => {
                    let (tp, sp) = (&self.p.blocks[bp].0, self.p.blocks[bp].1.len());
                    let (tq, sq) = (&self.q.blocks[bq].0, self.q.blocks[bq].1.len());
                    let ok = tp == tq
                        && sp == sq
                        && match (st.block_pq[bp], st.block_qp[bq]) {
                            (None, None) => {
                                st.block_pq[bp] = Some(bq);
                                st.block_qp[bq] = Some(bp);
                                fixed.push((bp, bq));
                                true
                            }
                            (Some(x), Some(y)) => x == bq && y == bp,
                            _ => false,
                        };
                    if !ok {
                        for (bp, bq) in fixed {
                            st.block_pq[bp] = None;
                            st.block_qp[bq] = None;
                        }
                        return None;
                    }
                }
                _ => {
                    for (bp, bq) in fixed {
                        st.block_pq[bp] = None;
                        st.block_qp[bq] = None;
                    }
                    return None;
                }
            }
        }
        st.perm.push(img);
        st.used[img] = true;
        Some(fixed)
    }

    fn unassign(&self, st: &mut IsoState, fixed: Vec<(usize, usize)>) {
        let img = st.perm.pop().expect("nonempty");
        st.used[img] = false;
        for (bp, bq) in fixed {
            st.block_pq[bp] = None;
            st.block_qp[bq] = None;
        }
    }

    fn extend(&self, st: &mut IsoState) -> bool {
        let i = st.perm.len();
        if i == self.p.n {
            return self.p.maps_onto(self.q, &st.perm);
        }
        for &img in &self.candidates[i] {
            if let Some(fixed) = self.assign(st, img) {
                if self.extend(st) {
                    return true;
                }
                self.unassign(st, fixed);
            }
        }
        false
    }

    fn run(&self, exec: Exec) -> Option<Vec<usize>> {
        if self.p.n == 0 {
            return self.p.maps_onto(self.q, &[]).then(Vec::new);
        }
        exec::find_map_first(exec, &self.candidates[0], |&img| {
            let mut st = self.fresh_state();
            self.assign(&mut st, img)?;
            self.extend(&mut st).then_some(st.perm)
        })
    }
}

/// Lexicographically least line bijection carrying `p` onto `q`.
pub fn structures_isomorphic(p: &IncidenceStructure, q: &IncidenceStructure, exec: Exec) -> Option<Vec<usize>> {
    IsoSearch::new(p, q)?.run(exec)
}

/// Poset kinds accepted by [`poset_isomorphic`].
pub trait Poset {
    fn incidence(&self) -> IncidenceStructure;
}

impl Poset for AffinePoset {
    fn incidence(&self) -> IncidenceStructure {
        self.structure()
    }
}

impl Poset for ProjectivePoset {
    fn incidence(&self) -> IncidenceStructure {
        self.structure()
    }
}

pub fn poset_isomorphic<P: Poset>(p: &P, q: &P) -> Option<Vec<usize>> {
    structures_isomorphic(&p.incidence(), &q.incidence(), Exec::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{parse_linear_factor, Arrangement};
    use crate::rational::int;

    fn arr(factors: &[&str]) -> Arrangement {
        Arrangement::new(factors.iter().map(|f| parse_linear_factor(f, *f).unwrap()).collect()).unwrap()
    }

    #[test]
    fn two_generic_lines() {
        let p = build_affine_poset(&arr(&["x", "y"]));
        assert_eq!(p.points.len(), 1);
        assert_eq!(p.points[0].multiplicity(), 2);
        assert!(p.classes.iter().all(|c| c.members.len() == 1));
        assert!(p.pair_accounting_holds());
        assert_eq!(p.betti(), BettiData { b1: 2, b2: 1 });
    }

    #[test]
    fn single_line_projective() {
        let p = projective_closure(&arr(&["x"]));
        assert_eq!(p.points.len(), 1);
        assert_eq!(p.points[0].multiplicity(), 2);
        assert!(p.pair_accounting_holds());
    }

    #[test]
    fn central_pencil_betti() {
        for m in 2..7 {
            let lines: Vec<String> = (1..=m).map(|k| format!("y-{k}x")).collect();
            let refs: Vec<&str> = lines.iter().map(String::as_str).collect();
            let p = build_affine_poset(&arr(&refs));
            assert_eq!(p.betti(), BettiData { b1: m, b2: m - 1 });
        }
    }

    #[test]
    fn example_base_arrangement() {
        let a = arr(&["x", "y", "y-1", "y-2", "y+x-2", "y-x"]);
        let p = build_affine_poset(&a);
        let triples: Vec<Point> = p.multiple_points().map(|q| q.affine_location().unwrap().clone()).collect();
        assert_eq!(
            triples,
            vec![Point::real(int(0), int(0)), Point::real(int(0), int(2)), Point::real(int(1), int(1)),]
        );
        assert_eq!(p.multiplicity_profile(), BTreeMap::from([(2, 3), (3, 3)]));
        let big: Vec<_> = p.classes.iter().filter(|c| c.members.len() > 1).collect();
        assert_eq!(big.len(), 1);
        assert_eq!(big[0].members, BTreeSet::from([1, 2, 3]));
        assert_eq!(p.betti(), BettiData { b1: 6, b2: 9 });
    }

    #[test]
    fn self_isomorphism_is_identity() {
        let a = arr(&["x", "y", "y-1", "y-2", "y+x-2", "y-x"]);
        let p = build_affine_poset(&a);
        assert_eq!(poset_isomorphic(&p, &p), Some((0..6).collect()));
        let pp = p.projective();
        assert_eq!(poset_isomorphic(&pp, &pp), Some((0..7).collect()));
    }

    #[test]
    fn affine_classes_matter() {
        // Three lines, pairwise parallel vs. concurrent: same rank-2 counts
        // differ by block tags.
        let par = build_affine_poset(&arr(&["y", "y-1", "y-2"]));
        let pencil = build_affine_poset(&arr(&["y", "y-x", "y+x"]));
        assert!(poset_isomorphic(&par, &pencil).is_none());
        // One quadruple point at infinity vs. a triple point and three doubles.
        let (pp, qq) = (par.projective(), pencil.projective());
        assert!(poset_isomorphic(&pp, &qq).is_none());
    }
}
