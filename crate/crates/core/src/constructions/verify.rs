//! End-to-end checks of Theorem "main" and Theorem "arb".
//!
//! Every check runs at one sweep shear `ε`, the first generic one for `B_∞`
//! (hence also for `𝒜`), so the relators `R_h` read off `𝒜` are the same
//! words on every side.

use crate::arvola::{presentation_at, valid_shears, SweepConfig};
use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::geom::Arrangement;
use crate::group::{abelianization, match_up_to_renaming_with, simplify, AbelianizationResult, Presentation, Word};
use crate::poset::{build_affine_poset, poset_isomorphic, BettiData};
use crate::rational::Rational;

use super::canonical::{canonicalize_pencil_presentation, lemma_present_target};
use super::extension::{
    build_parallel_extension, build_pencil_extension, check_parallel_attachment, check_pencil_attachment,
    exterior_pencil_model_at,
};
use super::paper::{paper_a, paper_b_h1, paper_b_inf, PAPER_LINE, PAPER_MULT};

/// A generator correspondence `(left name, right name)`.
pub type Bijection = Vec<(String, String)>;

#[derive(Clone, Debug)]
pub struct MainReport {
    pub h: String,
    pub m: usize,
    pub b_h: Arrangement,
    pub b_inf: Arrangement,
    pub shear: Rational,
    /// Pencil and parallel attachment invariants hold on the posets.
    pub attachments_valid: bool,
    /// Simplified model presentation ↔ simplified Lemma "present" target.
    pub lemma_match: Option<Bijection>,
    /// Simplified canonical presentation ↔ simplified presentation of `B_∞`.
    pub canonical_match: Option<Bijection>,
    /// The `B_∞` generator matched to `g`.
    pub g_image: Option<String>,
    pub canonical: Presentation,
    pub b_inf_presentation: Presentation,
    pub betti_h: BettiData,
    pub betti_inf: BettiData,
    pub abelianization_h: AbelianizationResult,
    pub abelianization_inf: AbelianizationResult,
    /// Reported only: the cones are generally not lattice isomorphic.
    pub projective_isomorphic: bool,
    /// Lines of each cone carrying two points of multiplicity `m`.
    pub witness_h: Vec<String>,
    pub witness_inf: Vec<String>,
}

impl MainReport {
    /// All hard checks; the projective comparison is not one of them.
    pub fn passed(&self) -> bool {
        self.attachments_valid
            && self.lemma_match.is_some()
            && self.canonical_match.is_some()
            && self.betti_h == self.betti_inf
            && self.abelianization_h == self.abelianization_inf
    }
}

/// The first sweep shear generic for `b` (and so for its sub-arrangements).
pub fn common_shear(b: &Arrangement) -> Rational {
    valid_shears(b).next().expect("finitely many forbidden shears")
}

/// Relators of `𝒜`'s line-generator presentation at `eps`, over ids
/// `h = 0` and the remaining lines `1..n` in arrangement order.
pub fn base_relators(a: &Arrangement, h: &str, eps: &Rational) -> Result<Vec<Word>> {
    let p = presentation_at(a, &SweepConfig { shear: eps.clone() })?;
    let first = p.gen_by_name(h).ok_or_else(|| Error::UnknownLabel(h.to_string()))?.id;
    let mut order = vec![first];
    order.extend(p.generators().iter().map(|g| g.id).filter(|&id| id != first));
    let names: Vec<String> = (1..=order.len()).map(|j| format!("h{j}")).collect();
    Ok(p.reorder_generators(&order).relabel(&names).relators().to_vec())
}

fn named(p: &Presentation, q: &Presentation, pairs: Vec<(usize, usize)>) -> Bijection {
    pairs.into_iter().map(|(a, b)| (p.name_of(a), q.name_of(b))).collect()
}

fn simplified(p: &Presentation) -> Presentation {
    simplify(p).0
}

/// Lemma "present": the exterior model's presentation and the target agree
/// after simplification.
pub fn lemma_check(a: &Arrangement, h: &str, m: usize, eps: &Rational, exec: Exec) -> Result<Option<Bijection>> {
    let (model, _) = exterior_pencil_model_at(a, h, m, eps)?;
    let model_p = simplified(&presentation_at(&model, &SweepConfig { shear: eps.clone() })?);
    let target = simplified(&lemma_present_target(a.len(), m, &base_relators(a, h, eps)?)?);
    Ok(match_up_to_renaming_with(&model_p, &target, exec).map(|pairs| named(&model_p, &target, pairs)))
}

/// The canonical presentation `𝒫_{B_H}` obtained from the Lemma "present"
/// target by the Tietze sequence of Theorem "main".
pub fn canonical_presentation(a: &Arrangement, h: &str, m: usize, eps: &Rational) -> Result<Presentation> {
    canonicalize_pencil_presentation(&lemma_present_target(a.len(), m, &base_relators(a, h, eps)?)?)
}

/// Runs the Theorem "main" pipeline on explicit `B_H` and `B_∞`.
pub fn verify_instance(
    a: &Arrangement,
    h: &str,
    m: usize,
    b_h: (&Arrangement, &[String]),
    b_inf: (&Arrangement, &[String]),
    exec: Exec,
) -> Result<MainReport> {
    let (b_h, pencil_added) = b_h;
    let (b_inf, parallel_added) = b_inf;
    let attachments_valid =
        check_pencil_attachment(a, b_h, h, pencil_added) && check_parallel_attachment(a, b_inf, parallel_added);
    let eps = common_shear(b_inf);
    let lemma_match = lemma_check(a, h, m, &eps, exec)?;

    let canonical = simplified(&canonical_presentation(a, h, m, &eps)?);
    let b_inf_presentation = simplified(&presentation_at(b_inf, &SweepConfig { shear: eps.clone() })?);
    let canonical_match = match_up_to_renaming_with(&canonical, &b_inf_presentation, exec)
        .map(|pairs| named(&canonical, &b_inf_presentation, pairs));
    let g_image = canonical_match.as_ref().and_then(|b| b.iter().find(|(l, _)| l == "g").map(|(_, r)| r.clone()));

    let poset_h = build_affine_poset(b_h);
    let poset_inf = build_affine_poset(b_inf);
    let (proj_h, proj_inf) = (poset_h.projective(), poset_inf.projective());
    Ok(MainReport {
        h: h.to_string(),
        m,
        b_h: b_h.clone(),
        b_inf: b_inf.clone(),
        shear: eps,
        attachments_valid,
        lemma_match,
        canonical_match,
        g_image,
        abelianization_h: abelianization(&canonical),
        abelianization_inf: abelianization(&b_inf_presentation),
        canonical,
        b_inf_presentation,
        betti_h: poset_h.betti(),
        betti_inf: poset_inf.betti(),
        projective_isomorphic: poset_isomorphic(&proj_h, &proj_inf).is_some(),
        witness_h: proj_h.lines_with_points(m, 2),
        witness_inf: proj_inf.lines_with_points(m, 2),
    })
}

/// Builds `B_H` and `B_∞` by the deterministic searches and runs the
/// Theorem "main" pipeline.
pub fn verify_theorem_main(a: &Arrangement, h: &str, m: usize) -> Result<MainReport> {
    verify_theorem_main_with(a, h, m, Exec::default())
}

pub fn verify_theorem_main_with(a: &Arrangement, h: &str, m: usize, exec: Exec) -> Result<MainReport> {
    let (b_h, pencil) = build_pencil_extension(a, h, m)?;
    let (b_inf, parallel) = build_parallel_extension(a, m)?;
    verify_instance(a, h, m, (&b_h, &pencil.added), (&b_inf, &parallel.added), exec)
}

/// The worked example with `B_{H1}` and `B_∞` taken verbatim.
pub fn verify_paper_example() -> Result<MainReport> {
    let a = paper_a();
    let b_h = paper_b_h1();
    let b_inf = paper_b_inf();
    let tail = |b: &Arrangement| b.labels()[a.len()..].to_vec();
    verify_instance(&a, PAPER_LINE, PAPER_MULT, (&b_h, &tail(&b_h)), (&b_inf, &tail(&b_inf)), Exec::default())
}

#[derive(Clone, Debug)]
pub struct ArbReport {
    pub lines: Vec<String>,
    pub m: usize,
    pub shear: Rational,
    /// Lemma "present" check per line.
    pub lemma_matches: Vec<(String, bool)>,
    /// Canonical presentation of each `B_h` against `B_∞`.
    pub against_parallel: Vec<(String, Option<Bijection>)>,
    /// Pairwise comparisons of canonical presentations.
    pub pairwise: Vec<(String, String, Option<Bijection>)>,
}

impl ArbReport {
    pub fn passed(&self) -> bool {
        self.lemma_matches.iter().all(|(_, ok)| *ok)
            && self.against_parallel.iter().all(|(_, b)| b.is_some())
            && self.pairwise.iter().all(|(_, _, b)| b.is_some())
    }
}

/// Theorem "arb" for `h₁, h₂`: both canonical presentations match each
/// other and the common `B_∞` model.
pub fn verify_theorem_arb(a: &Arrangement, h1: &str, h2: &str, m: usize) -> Result<ArbReport> {
    let lines: Vec<String> = if h1 == h2 { vec![h1.to_string()] } else { vec![h1.to_string(), h2.to_string()] };
    verify_arb_lines(a, &lines, m, Exec::default())
}

/// Theorem "arb" across `lines` (all pairs), e.g. every line of `𝒜`.
pub fn verify_arb_lines(a: &Arrangement, lines: &[String], m: usize, exec: Exec) -> Result<ArbReport> {
    let (b_inf, _) = build_parallel_extension(a, m)?;
    let eps = common_shear(&b_inf);
    let b_inf_p = simplified(&presentation_at(&b_inf, &SweepConfig { shear: eps.clone() })?);

    let per_line: Vec<Result<(Presentation, bool)>> = exec::map(exec, lines, |h| {
        let canonical = simplified(&canonical_presentation(a, h, m, &eps)?);
        let lemma = lemma_check(a, h, m, &eps, Exec::Sequential)?.is_some();
        Ok((canonical, lemma))
    });
    let per_line: Vec<(Presentation, bool)> = per_line.into_iter().collect::<Result<_>>()?;

    let against_parallel = lines
        .iter()
        .zip(&per_line)
        .map(|(h, (c, _))| {
            let b = match_up_to_renaming_with(c, &b_inf_p, exec).map(|pairs| named(c, &b_inf_p, pairs));
            (h.clone(), b)
        })
        .collect();
    let pairs: Vec<(usize, usize)> = (0..lines.len())
        .flat_map(|i| (i..lines.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| i < j || lines.len() == 1)
        .collect();
    let pairwise = exec::map(exec, &pairs, |&(i, j)| {
        let (p, q) = (&per_line[i].0, &per_line[j].0);
        let b = match_up_to_renaming_with(p, q, Exec::Sequential).map(|pairs| named(p, q, pairs));
        (lines[i].clone(), lines[j].clone(), b)
    });
    Ok(ArbReport {
        lines: lines.to_vec(),
        m,
        shear: eps,
        lemma_matches: lines.iter().cloned().zip(per_line.iter().map(|(_, ok)| *ok)).collect(),
        against_parallel,
        pairwise,
    })
}

/// How [`compare_arrangements`] reached its verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompareRoute {
    /// Simplified line-generator presentations matched directly.
    Direct,
    /// A side of pencil-attachment shape was replaced by its canonical
    /// presentation (after its Lemma "present" check passed).
    Canonical,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub route: CompareRoute,
    /// `None` is a verified NO-MATCH for every route tried.
    pub bijection: Option<Bijection>,
}

/// A side of a comparison: its pencil decomposition, if any.
struct Side<'a> {
    arr: &'a Arrangement,
    pencil: Option<(Arrangement, String, usize)>,
}

impl Side<'_> {
    fn base(&self) -> &Arrangement {
        self.pencil.as_ref().map_or(self.arr, |(a, _, _)| a)
    }

    /// The presentation compared at `eps`, or `None` when the pencil side
    /// fails its Lemma "present" check.
    fn presentation(&self, eps: &Rational, exec: Exec) -> Result<Option<Presentation>> {
        match &self.pencil {
            None => Ok(Some(simplified(&presentation_at(self.arr, &SweepConfig { shear: eps.clone() })?))),
            Some((a, h, m)) => {
                if lemma_check(a, h, *m, eps, exec)?.is_none() {
                    return Ok(None);
                }
                Ok(Some(with_base_labels(&simplified(&canonical_presentation(a, h, *m, eps)?), a, h)))
            }
        }
    }
}

/// Renames `h_j` to the label of the `j`-th base line (`h` first, then the
/// rest in arrangement order); `g` and the `l_k` keep their names unless a
/// base label collides with them.
fn with_base_labels(p: &Presentation, a: &Arrangement, h: &str) -> Presentation {
    let mut base = vec![h.to_string()];
    base.extend(a.labels().into_iter().filter(|l| l != h));
    let names: Vec<String> = p
        .generators()
        .iter()
        .map(|g| match g.name.strip_prefix('h').and_then(|j| j.parse::<usize>().ok()) {
            Some(j) => base[j - 1].clone(),
            None => g.name.clone(),
        })
        .collect();
    let mut unique = names.clone();
    unique.sort();
    unique.dedup();
    if unique.len() == names.len() {
        p.relabel(&names)
    } else {
        p.clone()
    }
}

/// Compares `π₁` presentations of two real arrangements: first directly,
/// then, if a side has pencil-attachment shape, through its canonical
/// presentation at a sweep shear generic for both compared arrangements.
pub fn compare_arrangements(a: &Arrangement, b: &Arrangement, exec: Exec) -> Result<Comparison> {
    use crate::arvola::{arrangement_presentation, forbidden_shears};
    let pa = simplified(&arrangement_presentation(a)?);
    let pb = simplified(&arrangement_presentation(b)?);
    if let Some(pairs) = match_up_to_renaming_with(&pa, &pb, exec) {
        return Ok(Comparison { route: CompareRoute::Direct, bijection: Some(named(&pa, &pb, pairs)) });
    }
    let side = |arr| {
        let pencil = super::extension::detect_pencil_form(arr).map(|(base, h, added)| (base, h, added.len() + 1));
        Side { arr, pencil }
    };
    let (sa, sb) = (side(a), side(b));
    if sa.pencil.is_none() && sb.pencil.is_none() {
        return Ok(Comparison { route: CompareRoute::Direct, bijection: None });
    }
    let (ba, bb) = (sa.base(), sb.base());
    let bad_b = forbidden_shears(bb);
    let eps = valid_shears(ba).find(|e| !bad_b.contains(e)).expect("finitely many forbidden shears");
    let (Some(pa), Some(pb)) = (sa.presentation(&eps, exec)?, sb.presentation(&eps, exec)?) else {
        return Ok(Comparison { route: CompareRoute::Canonical, bijection: None });
    };
    let bijection = match_up_to_renaming_with(&pa, &pb, exec).map(|pairs| named(&pa, &pb, pairs));
    Ok(Comparison { route: CompareRoute::Canonical, bijection })
}
