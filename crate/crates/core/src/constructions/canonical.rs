//! The target presentation of Lemma "present" and its canonicalization by
//! the explicit Tietze sequence of Theorem "main".

use crate::error::{Error, Result};
use crate::group::simplify::{rewrite_at, rotate_relator_to};
use crate::group::word::{Letter, Word};
use crate::group::{Gen, Move, Presentation};

/// Generator ids of the target form: `h_j ↦ j − 1`, `l_k ↦ n + k − 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Shape {
    n: usize,
    m: usize,
}

impl Shape {
    fn h(self, j: usize) -> usize {
        j - 1
    }

    fn l(self, k: usize) -> usize {
        self.n + k - 2
    }

    fn is_l(self, gen: usize) -> bool {
        gen >= self.n && gen < self.n + self.m - 1
    }

    fn commutation_count(self) -> usize {
        (self.m - 1) * (self.n - 1)
    }

    /// Index of `[l_k, h_j]`.
    fn commutation_index(self, k: usize, j: usize) -> usize {
        (k - 2) * (self.n - 1) + (j - 2)
    }

    /// Index of the pencil relator for `k` (listed `k = m, …, 2`).
    fn pencil_index(self, k: usize) -> usize {
        self.commutation_count() + (self.m - k)
    }

    fn names(self) -> Vec<String> {
        (1..=self.n).map(|j| format!("h{j}")).chain((2..=self.m).map(|k| format!("l{k}"))).collect()
    }

    fn commutation_relators(self) -> Vec<Word> {
        let mut out = Vec::new();
        for k in 2..=self.m {
            for j in 2..=self.n {
                out.push(Word::commutator(&Word::gen(self.l(k)), &Word::gen(self.h(j))));
            }
        }
        out
    }

    /// `[h₁ l_m ⋯ l_{k+1}, l_k ⋯ l₂]` for `k = m, …, 2`: the commutation
    /// relators of a vertex whose west edges read `l₂, …, l_m, h₁` bottom to
    /// top.
    fn pencil_relators(self) -> Vec<Word> {
        (2..=self.m)
            .rev()
            .map(|k| {
                let top: Vec<usize> =
                    std::iter::once(self.h(1)).chain((k + 1..=self.m).rev().map(|i| self.l(i))).collect();
                let bottom: Vec<usize> = (2..=k).rev().map(|i| self.l(i)).collect();
                Word::commutator(&Word::product_of(&top), &Word::product_of(&bottom))
            })
            .collect()
    }
}

/// `⟨h₁…h_n, l₂…l_m | [l_k, h_j] (2 ≤ k ≤ m, 2 ≤ j ≤ n), [h₁, l_m, …, l₂],
/// R_h⟩`, with `R_h` over generator ids `0..n` (`h₁ = 0`).
pub fn lemma_present_target(n: usize, m: usize, r_h: &[Word]) -> Result<Presentation> {
    if n == 0 || m < 2 {
        return Err(Error::BadParameters(format!("need n ≥ 1 and m ≥ 2, got n = {n}, m = {m}")));
    }
    if r_h.iter().any(|r| r.letters().iter().any(|l| l.gen >= n)) {
        return Err(Error::BadRelators);
    }
    let shape = Shape { n, m };
    let mut relators = shape.commutation_relators();
    relators.extend(shape.pencil_relators());
    relators.extend(r_h.iter().cloned());
    let names = shape.names();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    Presentation::with_names(&names, relators)
}

fn detect_shape(p: &Presentation) -> Result<Shape> {
    let mismatch = |why: &str| Error::ShapeMismatch(format!("not in Lemma \"present\" form: {why}"));
    let gens = p.generators();
    let n = gens.iter().take_while(|g| g.name.starts_with('h')).count();
    let m = gens.len() + 1 - n;
    if n == 0 || m < 2 {
        return Err(mismatch("expected generators h1..hn, l2..lm"));
    }
    let shape = Shape { n, m };
    let expected: Vec<Gen> = shape.names().into_iter().enumerate().map(|(id, name)| Gen { id, name }).collect();
    if gens != expected.as_slice() {
        return Err(mismatch("expected generators h1..hn, l2..lm with ids in order"));
    }
    let mut fixed = shape.commutation_relators();
    fixed.extend(shape.pencil_relators());
    let rels = p.relators();
    if rels.len() < fixed.len() || rels[..fixed.len()] != fixed[..] {
        return Err(mismatch("commutation and pencil relators differ from the display"));
    }
    if rels[fixed.len()..].iter().any(|r| r.letters().iter().any(|l| shape.is_l(l.gen))) {
        return Err(mismatch("R_h mentions an l generator"));
    }
    Ok(shape)
}

/// Canonicalizes a presentation produced by [`lemma_present_target`] into
/// `⟨g, h₂…h_n, l₂…l_m | [l_k, h_j], [g, l_k], R_h(h₁ ↦ g)⟩`.
pub fn canonicalize_pencil_presentation(p: &Presentation) -> Result<Presentation> {
    canonicalize_pencil_presentation_logged(p).map(|(q, _)| q)
}

/// As [`canonicalize_pencil_presentation`], also returning the Tietze
/// I–III moves that replay it.
pub fn canonicalize_pencil_presentation_logged(p: &Presentation) -> Result<(Presentation, Vec<Move>)> {
    let shape = detect_shape(p)?;
    let Shape { n, m } = shape;
    let mut q = p.clone();
    let mut log = Vec::new();

    // Introduce g = h₁ l_m ⋯ l₂ and eliminate h₁ by that relation: the
    // pencil relators become [g, l_k ⋯ l₂].
    let pencil: Vec<usize> = std::iter::once(shape.h(1)).chain((2..=m).rev().map(|k| shape.l(k))).collect();
    let word = Word::product_of(&pencil);
    let g = q.introduce_mut("g", &word)?;
    log.push(Move::Introduce { gen: g, name: "g".into(), word });
    let last = q.relators().len() - 1;
    let by = q.eliminate_mut(shape.h(1), last)?;
    log.push(Move::Eliminate { gen: shape.h(1), relator: last, by });

    // [g, l_k ⋯ l₂] → [g, l_k], replacing l_i g⁻¹ l_i⁻¹ by g⁻¹ via [g, l_i]
    // for i = 2, …, k − 1.
    let gw = Word::gen(g);
    for k in 3..=m {
        let target = shape.pencil_index(k);
        for i in 2..k {
            let li = Word::gen(shape.l(i));
            let u = li.mul(&gw.inverse()).mul(&li.inverse());
            let start = find(&q.relators()[target], &u)
                .ok_or_else(|| Error::ShapeMismatch(format!("pencil relator for l{k} lost its l{i} block")))?;
            rewrite_at(&mut q, target, shape.pencil_index(i), start, &u, &mut log);
        }
        let expected = Word::commutator(&gw, &Word::gen(shape.l(k)));
        rotate_relator_to(&mut q, target, &expected, &mut log);
    }

    // Strip the l's that h₁ ↦ g l₂⁻¹ ⋯ l_m⁻¹ brought into R_h, sliding each
    // one rightwards past g- and h-letters by commutation.
    let swap_with = |x: Letter, y: Letter| -> usize {
        let k = x.gen - n + 2;
        if y.gen == g {
            shape.pencil_index(k)
        } else {
            shape.commutation_index(k, y.gen + 1)
        }
    };
    let r_start = shape.commutation_count() + (m - 1);
    for idx in r_start..q.relators().len() {
        loop {
            let r = &q.relators()[idx];
            let hit = r.letters().windows(2).position(|w| shape.is_l(w[0].gen) && !shape.is_l(w[1].gen));
            let Some(start) = hit else { break };
            let (x, y) = (r.letters()[start], r.letters()[start + 1]);
            let u = Word::raw(vec![x, y]);
            if !rewrite_at(&mut q, idx, swap_with(x, y), start, &u, &mut log) {
                return Err(Error::ShapeMismatch("no commutation relator for an l-letter".into()));
            }
        }
    }

    let rename = |w: &Word| w.rename(|x| if x == shape.h(1) { g } else { x });
    let expected: Vec<Word> = p.relators()[r_start..].iter().map(&rename).collect();
    if q.relators()[r_start..] != expected[..] {
        return Err(Error::ShapeMismatch("R_h did not reduce to R_h(h1 ↦ g)".into()));
    }
    let order: Vec<usize> =
        std::iter::once(g).chain((2..=n).map(|j| shape.h(j))).chain((2..=m).map(|k| shape.l(k))).collect();
    Ok((q.reorder_generators(&order), log))
}

/// First linear position of `u` in `w`.
fn find(w: &Word, u: &Word) -> Option<usize> {
    w.letters().windows(u.len()).position(|s| s == u.letters())
}
