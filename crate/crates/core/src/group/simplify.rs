//! Deterministic simplification by Tietze I–III moves.
//!
//! Each round performs the first applicable step of:
//!
//! 1. cyclically reduce every relator (Tietze I, conjugation by a prefix);
//! 2. eliminate a generator occurring exactly once in some relator, choosing
//!    the least `(relator length, generator id, relator index)`;
//! 3. a Dehn-style length reduction of relator `r_i` by relator `r_j` for the
//!    least `(i, j)`: if `r_i` cyclically contains `u` where `u·v` is a
//!    rotation of `r_j^{±1}` and `|u| > |v|`, replace `u` by `v⁻¹`.  It is
//!    realised as Tietze I on both relators, Tietze III, and a Tietze I that
//!    restores `r_j`.
//!
//! Empty relators are kept: dropping one is not a Tietze I–III move and
//! would change the Euler characteristic.
//!
//! Step 3 depends only on the cyclic classes (up to inversion) of the
//! relators, so presentations whose relators agree as cyclic words simplify
//! to cyclically equal results.

use super::presentation::{Move, Presentation};
use super::word::Word;

pub fn simplify(p: &Presentation) -> (Presentation, Vec<Move>) {
    let mut q = p.clone();
    let mut log = Vec::new();
    loop {
        cyclically_reduce_all(&mut q, &mut log);
        if let Some((gen, index)) = elimination_candidate(&q) {
            let by = q.eliminate_mut(gen, index).expect("candidate is eliminable");
            log.push(Move::Eliminate { gen, relator: index, by });
            continue;
        }
        if let Some(red) = dehn_candidate(&q) {
            apply_reduction(&mut q, &red, &mut log);
            continue;
        }
        return (q, log);
    }
}

fn conjugate_logged(q: &mut Presentation, relator: usize, by: Word, invert: bool, log: &mut Vec<Move>) {
    if by.is_empty() && !invert {
        return;
    }
    q.conjugate_mut(relator, &by, invert).expect("index in range");
    log.push(Move::Conjugate { relator, by, invert });
}

fn cyclically_reduce_all(q: &mut Presentation, log: &mut Vec<Move>) {
    for i in 0..q.relators().len() {
        let (_, u) = q.relators()[i].cyclic_core();
        conjugate_logged(q, i, u, false, log);
    }
}

fn elimination_candidate(q: &Presentation) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for (index, r) in q.relators().iter().enumerate() {
        for l in r.letters() {
            if r.occurrences(l.gen) == 1 {
                let key = (r.len(), l.gen, index);
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
        }
    }
    best.map(|(_, gen, index)| (gen, index))
}

/// A chosen length reduction: `r_i` rotated to start at `start` begins with
/// `u`, and `base = r_j^{±1}` rotated by `shift` reads `u·v`.
pub(crate) struct Reduction {
    pub i: usize,
    pub j: usize,
    pub start: usize,
    pub inverse_j: bool,
    pub shift: usize,
    pub len: usize,
}

fn common_prefix(a: &Word, a_start: usize, b: &Word, b_start: usize, cap: usize) -> usize {
    let (la, lb) = (a.letters(), b.letters());
    (0..cap).take_while(|&k| la[(a_start + k) % la.len()] == lb[(b_start + k) % lb.len()]).count()
}

fn reduced_result(ri: &Word, rj: &Word, red: &Reduction) -> Word {
    let base = if red.inverse_j { rj.inverse() } else { rj.clone() };
    let rot = base.rotate(red.shift);
    let v = Word::raw(rot.letters()[red.len..].to_vec());
    let rest = ri.rotate(red.start);
    let x = Word::raw(rest.letters()[red.len..].to_vec());
    v.inverse().mul(&x)
}

fn dehn_candidate(q: &Presentation) -> Option<Reduction> {
    let rels = q.relators();
    for i in 0..rels.len() {
        let ri = &rels[i];
        if ri.is_empty() {
            continue;
        }
        for (j, rj) in rels.iter().enumerate() {
            if i == j || rj.is_empty() {
                continue;
            }
            let cap = ri.len().min(rj.len());
            let mut best: Option<(usize, Word, Reduction)> = None;
            for inverse_j in [false, true] {
                let base = if inverse_j { rj.inverse() } else { rj.clone() };
                for shift in 0..base.len() {
                    for start in 0..ri.len() {
                        let len = common_prefix(ri, start, &base, shift, cap);
                        if 2 * len <= rj.len() || best.as_ref().is_some_and(|b| len < b.0) {
                            continue;
                        }
                        let red = Reduction { i, j, start, inverse_j, shift, len };
                        let result = reduced_result(ri, rj, &red).cyclic_canonical();
                        let better = match &best {
                            None => true,
                            Some((bl, bw, _)) => len > *bl || result < *bw,
                        };
                        if better {
                            best = Some((len, result, red));
                        }
                    }
                }
            }
            if let Some((_, _, red)) = best {
                return Some(red);
            }
        }
    }
    None
}

/// Finds `(w, invert)` with `w⁻¹·r^{±1}·w = target`, for `target` a rotation
/// of `r` (or of `r⁻¹` when `invert`).
fn rotation_move(r: &Word, target: &Word, invert: bool) -> Word {
    let base = if invert { r.inverse() } else { r.clone() };
    let k = (0..base.len().max(1)).find(|&k| base.rotate(k) == *target).expect("target is a rotation");
    base.prefix(k)
}

pub(crate) fn apply_reduction(q: &mut Presentation, red: &Reduction, log: &mut Vec<Move>) {
    let ri = q.relators()[red.i].clone();
    let rj = q.relators()[red.j].clone();
    // r_i ← x·u.
    let xu = ri.rotate(red.start + red.len);
    let w = rotation_move(&ri, &xu, false);
    conjugate_logged(q, red.i, w, false, log);
    // r_j ← (v·u)⁻¹ = u⁻¹·v⁻¹, a rotation of r_j^{∓1}.
    let base = if red.inverse_j { rj.inverse() } else { rj.clone() };
    let vu = base.rotate(red.shift + red.len);
    let target = vu.inverse();
    let invert = !red.inverse_j;
    let w = rotation_move(&rj, &target, invert);
    conjugate_logged(q, red.j, w, invert, log);
    q.multiply_mut(red.i, red.j).expect("indices distinct and in range");
    log.push(Move::Multiply { target: red.i, by: red.j });
    // Restore r_j exactly.
    let w = rotation_move(&target, &rj, invert);
    conjugate_logged(q, red.j, w, invert, log);
    debug_assert_eq!(q.relators()[red.j], rj);
}

/// Replaces the occurrence of `u` at linear position `start` of `r_i` by
/// `v⁻¹`, where `u·v` is a rotation of `r_j^{±1}`, and restores the
/// original rotation of the untouched part.  Returns `false` when `u` is not
/// a cyclic subword of `r_j^{±1}`.
pub(crate) fn rewrite_at(
    q: &mut Presentation,
    i: usize,
    j: usize,
    start: usize,
    u: &Word,
    log: &mut Vec<Move>,
) -> bool {
    let ri = q.relators()[i].clone();
    let rj = q.relators()[j].clone();
    let len = u.len();
    let found = [false, true].into_iter().find_map(|inverse_j| {
        let base = if inverse_j { rj.inverse() } else { rj.clone() };
        (0..base.len())
            .find(|&shift| len <= base.len() && common_prefix(u, 0, &base, shift, len) == len)
            .map(|shift| (inverse_j, shift))
    });
    let Some((inverse_j, shift)) = found else { return false };
    let red = Reduction { i, j, start, inverse_j, shift, len };
    let expected = {
        let base = if inverse_j { rj.inverse() } else { rj };
        let v = Word::raw(base.rotate(shift).letters()[len..].to_vec());
        let l = ri.letters();
        let mut out = l[..start].to_vec();
        out.extend_from_slice(v.inverse().letters());
        out.extend_from_slice(&l[start + len..]);
        Word::new(out)
    };
    apply_reduction(q, &red, log);
    rotate_relator_to(q, i, &expected, log);
    true
}

/// Tietze I moving relator `i` to `target`, a conjugate of it.
pub(crate) fn rotate_relator_to(q: &mut Presentation, i: usize, target: &Word, log: &mut Vec<Move>) {
    let r = q.relators()[i].clone();
    if r == *target {
        return;
    }
    let w = conjugator(&r, target).expect("target is a conjugate");
    conjugate_logged(q, i, w, false, log);
    debug_assert_eq!(q.relators()[i], *target);
}

/// `w` with `free_reduce(w⁻¹·c·w) = target`, if the two are conjugate.
pub(crate) fn conjugator(c: &Word, target: &Word) -> Option<Word> {
    let (s, a) = c.cyclic_core();
    let (t, b) = target.cyclic_core();
    if s.len() != t.len() {
        return None;
    }
    let k = (0..s.len().max(1)).find(|&k| s.rotate(k) == t)?;
    Some(a.mul(&s.prefix(k)).mul(&b.inverse()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::presentation::euler_characteristic;

    #[test]
    fn eliminates_and_keeps_power() {
        let a = Word::gen(0);
        let b = Word::gen(1);
        let b3 = b.mul(&b).mul(&b);
        let p = Presentation::with_names(&["a", "b"], vec![a.mul(&b.inverse()), b3.clone()]).unwrap();
        let (q, log) = simplify(&p);
        assert_eq!(q.gen_count(), 1);
        assert_eq!(q.generators()[0].name, "b");
        assert_eq!(q.relators(), &[b3]);
        assert!(matches!(log[0], Move::Eliminate { gen: 0, relator: 0, .. }));
    }

    #[test]
    fn log_replays() {
        let a = Word::gen(0);
        let b = Word::gen(1);
        let c = Word::gen(2);
        let r1 = Word::commutator(&a, &b.mul(&c));
        let r2 = Word::commutator(&a, &b);
        let p = Presentation::with_names(&["a", "b", "c"], vec![r1, r2, c.conj(&a)]).unwrap();
        let (q, log) = simplify(&p);
        let mut replay = p.clone();
        for m in &log {
            replay.apply(m).unwrap();
        }
        assert_eq!(replay, q);
        assert_eq!(euler_characteristic(&q), euler_characteristic(&p));
    }

    #[test]
    fn dehn_reduces_conjugated_commutator() {
        // [a, b] and b⁻¹[a, b]b·... : the second relator shortens to a
        // rotation of the first, then to the empty word.
        let a = Word::gen(0);
        let b = Word::gen(1);
        let ab = Word::commutator(&a, &b);
        let r2 = Word::commutator(&a.mul(&b), &b);
        let p = Presentation::with_names(&["a", "b"], vec![ab.clone(), r2]).unwrap();
        let (q, _) = simplify(&p);
        assert_eq!(q.relators().len(), 2);
        assert!(q.relators()[1].len() < 6);
    }

    #[test]
    fn empty_relators_survive() {
        let a = Word::gen(0);
        let p = Presentation::with_names(&["a"], vec![Word::empty(), a.mul(&a)]).unwrap();
        let (q, log) = simplify(&p);
        assert!(log.is_empty());
        assert_eq!(q, p);
    }
}
