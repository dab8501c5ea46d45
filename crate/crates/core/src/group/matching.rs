//! Presentation matching up to generator renaming.
//!
//! Relators compare as cyclic words up to inversion.  Generators are assigned
//! in a fixed order (first appearance in the relators taken shortest first)
//! and candidates are tried in target-id order, so the result is the
//! lexicographically least bijection in that order — independent of whether
//! the first level runs in parallel.

use std::collections::BTreeMap;

use super::presentation::Presentation;
use super::smith::abelianization;
use super::word::Word;
use crate::exec::{self, Exec};

/// Signature of a generator: sorted `(relator length, occurrences)` pairs.
fn signatures(p: &Presentation) -> BTreeMap<usize, Vec<(usize, usize)>> {
    let mut sig: BTreeMap<usize, Vec<(usize, usize)>> = p.generators().iter().map(|g| (g.id, Vec::new())).collect();
    for r in p.relators() {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for l in r.letters() {
            *counts.entry(l.gen).or_default() += 1;
        }
        for (g, c) in counts {
            sig.get_mut(&g).unwrap().push((r.len(), c));
        }
    }
    for v in sig.values_mut() {
        v.sort();
    }
    sig
}

fn cyclic_multiset(p: &Presentation) -> BTreeMap<Word, usize> {
    let mut m = BTreeMap::new();
    for r in p.relators() {
        *m.entry(r.cyclic_canonical()).or_default() += 1;
    }
    m
}

struct Search<'a> {
    order: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    /// For each depth, the relators of `p` that become fully assigned there.
    closing: Vec<Vec<&'a Word>>,
}

impl Search<'_> {
    fn run(
        &self,
        depth: usize,
        map: &mut BTreeMap<usize, usize>,
        used: &mut Vec<usize>,
        pool: &mut BTreeMap<Word, usize>,
    ) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let g = self.order[depth];
        for &c in &self.candidates[depth] {
            if used.contains(&c) {
                continue;
            }
            if self.try_assign(depth, g, c, map, used, pool) {
                return true;
            }
        }
        false
    }

    fn try_assign(
        &self,
        depth: usize,
        g: usize,
        c: usize,
        map: &mut BTreeMap<usize, usize>,
        used: &mut Vec<usize>,
        pool: &mut BTreeMap<Word, usize>,
    ) -> bool {
        map.insert(g, c);
        used.push(c);
        let mut taken = Vec::new();
        let mut ok = true;
        for r in &self.closing[depth] {
            let image = r.rename(|x| map[&x]).cyclic_canonical();
            match pool.get_mut(&image) {
                Some(n) if *n > 0 => {
                    *n -= 1;
                    taken.push(image);
                }
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok && self.run(depth + 1, map, used, pool) {
            return true;
        }
        for w in taken {
            *pool.get_mut(&w).unwrap() += 1;
        }
        used.pop();
        map.remove(&g);
        false
    }
}

/// Returns `(p id, q id)` pairs in `p`'s generator order when a renaming
/// carries `p`'s relator multiset onto `q`'s.
pub fn match_up_to_renaming(p: &Presentation, q: &Presentation) -> Option<Vec<(usize, usize)>> {
    match_up_to_renaming_with(p, q, Exec::default())
}

pub fn match_up_to_renaming_with(p: &Presentation, q: &Presentation, exec: Exec) -> Option<Vec<(usize, usize)>> {
    if p.gen_count() != q.gen_count() || p.relators().len() != q.relators().len() {
        return None;
    }
    let lengths = |x: &Presentation| {
        let mut v: Vec<usize> = x.relators().iter().map(Word::len).collect();
        v.sort();
        v
    };
    if lengths(p) != lengths(q) || abelianization(p) != abelianization(q) {
        return None;
    }
    let (sp, sq) = (signatures(p), signatures(q));
    let mut q_ids: Vec<usize> = q.generators().iter().map(|g| g.id).collect();
    q_ids.sort();

    // Assignment order: first appearance in relators sorted by length.
    let mut rel_order: Vec<&Word> = p.relators().iter().collect();
    rel_order.sort_by_key(|r| r.len());
    let mut order = Vec::new();
    for r in &rel_order {
        for l in r.letters() {
            if !order.contains(&l.gen) {
                order.push(l.gen);
            }
        }
    }
    for g in p.generators() {
        if !order.contains(&g.id) {
            order.push(g.id);
        }
    }
    let candidates: Vec<Vec<usize>> =
        order.iter().map(|g| q_ids.iter().copied().filter(|c| sq[c] == sp[g]).collect()).collect();
    if candidates.iter().any(Vec::is_empty) {
        return None;
    }
    let depth_of: BTreeMap<usize, usize> = order.iter().enumerate().map(|(d, &g)| (g, d)).collect();
    let mut closing: Vec<Vec<&Word>> = vec![Vec::new(); order.len()];
    let mut pool = cyclic_multiset(q);
    for r in p.relators() {
        match r.letters().iter().map(|l| depth_of[&l.gen]).max() {
            Some(d) => closing[d].push(r),
            None => {
                // Empty relator: consume an empty relator of q up front.
                let n = pool.get_mut(&Word::empty())?;
                if *n == 0 {
                    return None;
                }
                *n -= 1;
            }
        }
    }
    let search = Search { order, candidates, closing };
    if search.order.is_empty() {
        return Some(Vec::new());
    }
    let first = search.candidates[0].clone();
    let found = exec::find_map_first(exec, &first, |&c| {
        let mut map = BTreeMap::new();
        let mut used = Vec::new();
        let mut pool = pool.clone();
        search.try_assign(0, search.order[0], c, &mut map, &mut used, &mut pool).then_some(map)
    })?;
    Some(p.generators().iter().map(|g| (g.id, found[&g.id])).collect())
}
