use std::fmt;

/// A generator raised to ±1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: usize,
    pub inv: bool,
}

impl Letter {
    pub fn pos(gen: usize) -> Letter {
        Letter { gen, inv: false }
    }

    pub fn neg(gen: usize) -> Letter {
        Letter { gen, inv: true }
    }

    pub fn inverse(self) -> Letter {
        Letter { gen: self.gen, inv: !self.inv }
    }

    pub fn exponent(self) -> i64 {
        if self.inv {
            -1
        } else {
            1
        }
    }
}

/// A word over signed generators, kept freely reduced by every constructor
/// except [`Word::raw`].
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    /// Wraps letters without reducing.
    pub fn raw(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Word {
        free_reduce(&Word(letters.into_iter().collect()))
    }

    pub fn gen(g: usize) -> Word {
        Word(vec![Letter::pos(g)])
    }

    /// Positive word `g₁g₂⋯gₖ`.
    pub fn product_of(gens: &[usize]) -> Word {
        Word::new(gens.iter().map(|&g| Letter::pos(g)))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn mul(&self, rhs: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&rhs.0);
        free_reduce(&Word(v))
    }

    /// `h⁻¹·self·h`.
    pub fn conj(&self, h: &Word) -> Word {
        h.inverse().mul(self).mul(h)
    }

    /// `[a,b] = a·b·a⁻¹·b⁻¹`.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.mul(b).mul(&a.inverse()).mul(&b.inverse())
    }

    pub fn occurrences(&self, gen: usize) -> usize {
        self.0.iter().filter(|l| l.gen == gen).count()
    }

    pub fn involves(&self, gen: usize) -> bool {
        self.0.iter().any(|l| l.gen == gen)
    }

    pub fn exponent_sum(&self, gen: usize) -> i64 {
        self.0.iter().filter(|l| l.gen == gen).map(|l| l.exponent()).sum()
    }

    /// Replaces each occurrence of `gen` by `w` (`gen⁻¹` by `w⁻¹`).
    pub fn substitute(&self, gen: usize, w: &Word) -> Word {
        let winv = w.inverse();
        let mut v = Vec::with_capacity(self.0.len());
        for l in &self.0 {
            if l.gen == gen {
                v.extend_from_slice(if l.inv { &winv.0 } else { &w.0 });
            } else {
                v.push(*l);
            }
        }
        free_reduce(&Word(v))
    }

    pub fn rename(&self, map: impl Fn(usize) -> usize) -> Word {
        Word(self.0.iter().map(|l| Letter { gen: map(l.gen), inv: l.inv }).collect())
    }

    /// Cyclic rotation starting at position `k`.
    pub fn rotate(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let k = k % self.0.len();
        let mut v = self.0[k..].to_vec();
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    pub fn prefix(&self, k: usize) -> Word {
        Word(self.0[..k].to_vec())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.0.first(), self.0.last()) {
            (Some(a), Some(b)) if self.0.len() > 1 => *a != b.inverse(),
            _ => true,
        }
    }

    /// Returns `(s, u)` with `self = u·s·u⁻¹` and `s` cyclically reduced.
    pub fn cyclic_core(&self) -> (Word, Word) {
        let v = &self.0;
        let mut k = 0;
        while 2 * k + 1 < v.len() && v[k] == v[v.len() - 1 - k].inverse() {
            k += 1;
        }
        (Word(v[k..v.len() - k].to_vec()), Word(v[..k].to_vec()))
    }

    /// Least representative among all rotations of the word and its inverse.
    pub fn cyclic_canonical(&self) -> Word {
        let (core, _) = self.cyclic_core();
        let inv = core.inverse();
        let mut best = core.clone();
        for w in [&core, &inv] {
            for k in 0..w.len().max(1) {
                let r = w.rotate(k);
                if r < best {
                    best = r;
                }
            }
        }
        best
    }

    pub fn display_with(&self, name: impl Fn(usize) -> String) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|l| if l.inv { format!("{}^-1", name(l.gen)) } else { name(l.gen) })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(|g| format!("g{g}")))
    }
}

pub fn free_reduce(w: &Word) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(w.0.len());
    for &l in &w.0 {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word(out)
}
