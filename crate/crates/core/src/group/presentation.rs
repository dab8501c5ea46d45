use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::word::{Letter, Word};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gen {
    pub id: usize,
    pub name: String,
}

/// A finite presentation `⟨G | R⟩` together with the number of Tietze-IV
/// moves in its history.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Presentation {
    gens: Vec<Gen>,
    relators: Vec<Word>,
    sphere_count: usize,
}

/// One logged Tietze move.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    /// Tietze I: `r ← w⁻¹ r^{±1} w`.
    Conjugate { relator: usize, by: Word, invert: bool },
    /// Tietze II: drop `gen` and `relator`, substituting `gen ↦ by`.
    Eliminate { gen: usize, relator: usize, by: Word },
    /// Tietze II inverse: new generator `gen` with relator `gen·w⁻¹`.
    Introduce { gen: usize, name: String, word: Word },
    /// Tietze III: `r_i ← r_i·r_j`.
    Multiply { target: usize, by: usize },
    /// Tietze IV: append `word`.
    AddConsequence { word: Word },
}

impl Presentation {
    /// Builds a presentation, freely reducing the relators.
    pub fn new(gens: Vec<Gen>, relators: Vec<Word>) -> Result<Presentation> {
        let mut seen = BTreeSet::new();
        for g in &gens {
            if !seen.insert(g.id) {
                return Err(Error::ShapeMismatch(format!("duplicate generator id {}", g.id)));
            }
        }
        for r in &relators {
            if let Some(l) = r.letters().iter().find(|l| !seen.contains(&l.gen)) {
                return Err(Error::UnknownGenerator(l.gen));
            }
        }
        let relators = relators.iter().map(|r| Word::new(r.letters().iter().copied())).collect();
        Ok(Presentation { gens, relators, sphere_count: 0 })
    }

    /// Generators named `names`, with ids `0..names.len()`.
    pub fn with_names(names: &[&str], relators: Vec<Word>) -> Result<Presentation> {
        let gens = names.iter().enumerate().map(|(id, n)| Gen { id, name: n.to_string() }).collect();
        Presentation::new(gens, relators)
    }

    pub fn generators(&self) -> &[Gen] {
        &self.gens
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn sphere_count(&self) -> usize {
        self.sphere_count
    }

    pub fn gen_count(&self) -> usize {
        self.gens.len()
    }

    pub fn gen_by_id(&self, id: usize) -> Option<&Gen> {
        self.gens.iter().find(|g| g.id == id)
    }

    pub fn gen_by_name(&self, name: &str) -> Option<&Gen> {
        self.gens.iter().find(|g| g.name == name)
    }

    pub fn name_of(&self, id: usize) -> String {
        self.gen_by_id(id).map_or_else(|| format!("?{id}"), |g| g.name.clone())
    }

    pub fn word_string(&self, w: &Word) -> String {
        w.display_with(|g| self.name_of(g))
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index < self.relators.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index, len: self.relators.len() })
        }
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        match w.letters().iter().find(|l| self.gen_by_id(l.gen).is_none()) {
            Some(l) => Err(Error::UnknownGenerator(l.gen)),
            None => Ok(()),
        }
    }

    pub(crate) fn conjugate_mut(&mut self, index: usize, w: &Word, invert: bool) -> Result<()> {
        self.check_index(index)?;
        self.check_word(w)?;
        let r = &self.relators[index];
        let r = if invert { r.inverse() } else { r.clone() };
        self.relators[index] = r.conj(w);
        Ok(())
    }

    /// Eliminates `gen` using relator `index`; returns the substituted word.
    pub(crate) fn eliminate_mut(&mut self, gen: usize, index: usize) -> Result<Word> {
        self.check_index(index)?;
        let name = self.gen_by_id(gen).ok_or(Error::UnknownGenerator(gen))?.name.clone();
        let r = &self.relators[index];
        if r.occurrences(gen) != 1 {
            return Err(Error::NotEliminable(name));
        }
        let pos = r.letters().iter().position(|l| l.gen == gen).unwrap();
        // Rotate to g^{±1}·rest = 1.
        let rot = r.rotate(pos);
        let rest = Word::new(rot.letters()[1..].iter().copied());
        let by = if rot.letters()[0].inv { rest } else { rest.inverse() };
        self.relators.remove(index);
        self.gens.retain(|g| g.id != gen);
        for r in &mut self.relators {
            if r.involves(gen) {
                *r = r.substitute(gen, &by);
            }
        }
        Ok(by)
    }

    pub(crate) fn introduce_mut(&mut self, name: &str, w: &Word) -> Result<usize> {
        self.check_word(w)?;
        if self.gen_by_name(name).is_some() {
            return Err(Error::ShapeMismatch(format!("generator name `{name}` already in use")));
        }
        let id = self.gens.iter().map(|g| g.id + 1).max().unwrap_or(0);
        self.gens.push(Gen { id, name: name.to_string() });
        self.relators.push(Word::gen(id).mul(&w.inverse()));
        Ok(id)
    }

    pub(crate) fn multiply_mut(&mut self, i: usize, j: usize) -> Result<()> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j {
            return Err(Error::SameIndex);
        }
        self.relators[i] = self.relators[i].mul(&self.relators[j]);
        Ok(())
    }

    pub(crate) fn add_mut(&mut self, w: &Word) -> Result<()> {
        self.check_word(w)?;
        self.relators.push(w.clone());
        self.sphere_count += 1;
        Ok(())
    }

    /// Applies a logged move in place.
    pub fn apply(&mut self, m: &Move) -> Result<()> {
        match m {
            Move::Conjugate { relator, by, invert } => self.conjugate_mut(*relator, by, *invert),
            Move::Eliminate { gen, relator, .. } => self.eliminate_mut(*gen, *relator).map(drop),
            Move::Introduce { gen, name, word } => {
                let id = self.introduce_mut(name, word)?;
                if id != *gen {
                    return Err(Error::ShapeMismatch(format!("introduced id {id}, expected {gen}")));
                }
                Ok(())
            }
            Move::Multiply { target, by } => self.multiply_mut(*target, *by),
            Move::AddConsequence { word } => self.add_mut(word),
        }
    }

    /// Renumbers generators `0..n` in list order, renaming them.
    pub fn relabel(&self, names: &[String]) -> Presentation {
        assert_eq!(names.len(), self.gens.len());
        let idx = |id: usize| self.gens.iter().position(|g| g.id == id).unwrap();
        Presentation {
            gens: names.iter().enumerate().map(|(id, n)| Gen { id, name: n.clone() }).collect(),
            relators: self.relators.iter().map(|r| r.rename(idx)).collect(),
            sphere_count: self.sphere_count,
        }
    }

    /// Reorders the generator list (ids unchanged) by `order` (list of ids).
    pub fn reorder_generators(&self, order: &[usize]) -> Presentation {
        let gens = order.iter().map(|&id| self.gen_by_id(id).unwrap().clone()).collect();
        Presentation { gens, ..self.clone() }
    }

    pub fn rename_generator(&self, id: usize, name: &str) -> Presentation {
        let mut p = self.clone();
        for g in &mut p.gens {
            if g.id == id {
                g.name = name.to_string();
            }
        }
        p
    }

    pub fn to_json(&self) -> PresentationJson {
        PresentationJson {
            generators: self.gens.iter().map(|g| g.name.clone()).collect(),
            relators: self
                .relators
                .iter()
                .map(|r| {
                    r.letters()
                        .iter()
                        .map(|l| {
                            let n = self.name_of(l.gen);
                            if l.inv {
                                format!("-{n}")
                            } else {
                                n
                            }
                        })
                        .collect()
                })
                .collect(),
            sphere_count: self.sphere_count,
        }
    }

    pub fn from_json(j: &PresentationJson) -> Result<Presentation> {
        let names: Vec<&str> = j.generators.iter().map(String::as_str).collect();
        let lookup = |tok: &str| -> Result<Letter> {
            let (inv, name) = match tok.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, tok),
            };
            let gen = names.iter().position(|n| *n == name).ok_or_else(|| Error::Parse {
                line: 1,
                column: 1,
                message: format!("unknown generator `{name}`"),
            })?;
            Ok(Letter { gen, inv })
        };
        let relators = j
            .relators
            .iter()
            .map(|r| r.iter().map(|t| lookup(t)).collect::<Result<Vec<_>>>().map(Word::new))
            .collect::<Result<Vec<_>>>()?;
        let mut p = Presentation::with_names(&names, relators)?;
        p.sphere_count = j.sphere_count;
        Ok(p)
    }
}

impl std::fmt::Display for Presentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let gens: Vec<_> = self.gens.iter().map(|g| g.name.as_str()).collect();
        let rels: Vec<_> = self.relators.iter().map(|r| self.word_string(r)).collect();
        write!(f, "< {} | {} >", gens.join(", "), rels.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<String>>,
    pub sphere_count: usize,
}

pub fn tietze1_conjugate(p: &Presentation, index: usize, w: &Word, invert: bool) -> Result<Presentation> {
    let mut q = p.clone();
    q.conjugate_mut(index, w, invert)?;
    Ok(q)
}

pub fn tietze2_eliminate(p: &Presentation, gen: usize, index: usize) -> Result<Presentation> {
    let mut q = p.clone();
    q.eliminate_mut(gen, index)?;
    Ok(q)
}

/// Inverse Tietze II: adds generator `name` and relator `name·w⁻¹`.
pub fn tietze2_introduce(p: &Presentation, name: &str, w: &Word) -> Result<(Presentation, usize)> {
    let mut q = p.clone();
    let id = q.introduce_mut(name, w)?;
    Ok((q, id))
}

pub fn tietze3_multiply(p: &Presentation, i: usize, j: usize) -> Result<Presentation> {
    let mut q = p.clone();
    q.multiply_mut(i, j)?;
    Ok(q)
}

/// Tietze IV.  The caller vouches that `w` is a consequence.
pub fn tietze4_add(p: &Presentation, w: &Word) -> Result<Presentation> {
    let mut q = p.clone();
    q.add_mut(w)?;
    Ok(q)
}

pub fn euler_characteristic(p: &Presentation) -> i64 {
    1 - p.gen_count() as i64 + p.relators().len() as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> (Word, Word) {
        (Word::gen(0), Word::gen(1))
    }

    #[test]
    fn conjugate_examples() {
        let (a, b) = ab();
        let ba = Word::commutator(&b, &a);
        let p = Presentation::with_names(&["a", "b"], vec![ba.clone()]).unwrap();
        let q = tietze1_conjugate(&p, 0, &Word::empty(), true).unwrap();
        assert_eq!(q.relators()[0], Word::commutator(&a, &b));
        let r = Word::commutator(&a, &b);
        let p = Presentation::with_names(&["a", "b"], vec![r]).unwrap();
        let q = tietze1_conjugate(&p, 0, &a, false).unwrap();
        assert_eq!(q.word_string(&q.relators()[0]), "b a^-1 b^-1 a");
        assert_eq!(tietze1_conjugate(&p, 3, &a, false), Err(Error::IndexOutOfRange { index: 3, len: 1 }));
    }

    #[test]
    fn eliminate_examples() {
        let (a, b) = ab();
        let p = Presentation::with_names(&["a", "b"], vec![a.mul(&b.inverse())]).unwrap();
        let q = tietze2_eliminate(&p, 0, 0).unwrap();
        assert_eq!(q.gen_count(), 1);
        assert!(q.relators().is_empty());
        let abab = a.mul(&b).mul(&a).mul(&b);
        let p = Presentation::with_names(&["a", "b"], vec![abab]).unwrap();
        assert_eq!(tietze2_eliminate(&p, 0, 0), Err(Error::NotEliminable("a".into())));
    }

    #[test]
    fn eliminate_substitutes() {
        // ⟨a,b,c | b a c⁻¹, [a,b]⟩: a = b⁻¹c.
        let (a, b) = ab();
        let c = Word::gen(2);
        let p = Presentation::with_names(&["a", "b", "c"], vec![b.mul(&a).mul(&c.inverse()), Word::commutator(&a, &b)])
            .unwrap();
        let q = tietze2_eliminate(&p, 0, 0).unwrap();
        let expect = Word::commutator(&b.inverse().mul(&c), &b);
        assert_eq!(q.relators(), &[expect]);
    }

    #[test]
    fn multiply_and_add() {
        let (a, b) = ab();
        let p = Presentation::with_names(&["a"], vec![a.clone(), a.inverse()]).unwrap();
        let q = tietze3_multiply(&p, 0, 1).unwrap();
        assert!(q.relators()[0].is_empty());
        assert_eq!(tietze3_multiply(&p, 1, 1), Err(Error::SameIndex));

        let p = Presentation::with_names(&["a", "b"], vec![Word::commutator(&b, &a)]).unwrap();
        let q = tietze4_add(&p, &Word::commutator(&b, &a).inverse()).unwrap();
        assert_eq!(q.sphere_count(), 1);
        assert_eq!(euler_characteristic(&q), euler_characteristic(&p) + 1);
        let q = tietze4_add(&p, &Word::empty()).unwrap();
        assert_eq!(q.relators().len(), 2);
    }

    #[test]
    fn euler_examples() {
        let (a, b) = ab();
        let p = Presentation::with_names(&["a", "b"], vec![Word::commutator(&b, &a)]).unwrap();
        assert_eq!(euler_characteristic(&p), 0);
        assert_eq!(euler_characteristic(&Presentation::default()), 1);
    }

    #[test]
    fn introduce_then_eliminate_round_trips() {
        let (a, b) = ab();
        let p = Presentation::with_names(&["a", "b"], vec![Word::commutator(&a, &b)]).unwrap();
        let (q, g) = tietze2_introduce(&p, "g", &a.mul(&b)).unwrap();
        assert_eq!(g, 2);
        assert_eq!(q.word_string(&q.relators()[1]), "g b^-1 a^-1");
        let back = tietze2_eliminate(&q, g, 1).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn json_round_trip() {
        let (a, b) = ab();
        let p = Presentation::with_names(&["h1", "l2"], vec![Word::commutator(&a, &b)]).unwrap();
        let j = p.to_json();
        assert_eq!(j.relators[0], vec!["h1", "l2", "-h1", "-l2"]);
        assert_eq!(Presentation::from_json(&j).unwrap(), p);
    }
}
