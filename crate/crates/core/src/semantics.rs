//! Finite-vocabulary model theory.
//!
//! Interpretations are bit vectors indexed by a shared [`Vocabulary`]: bit `i`
//! holds the truth value of the `i`-th atom in name order. `TOP` is true in
//! every interpretation and takes no bit.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::formula::{Atom, AtomSet, DnfFormula, Formula, Literal, Term};

/// Default limit on the number of atoms enumerated exhaustively.
pub const DEFAULT_VOCAB_CAP: usize = 24;

/// Interpretations are stored in a `u64`.
pub const MAX_VOCAB_BITS: usize = 63;

#[derive(Debug)]
struct VocabInner {
    atoms: Vec<Atom>,
    cap: usize,
}

/// A canonically ordered finite set of atoms with a stable bit index per atom.
///
/// Cloning is cheap. Equality compares the atoms only; the enumeration cap is
/// carried along so that derived vocabularies inherit it.
#[derive(Debug, Clone)]
pub struct Vocabulary {
    inner: Arc<VocabInner>,
}

impl PartialEq for Vocabulary {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.atoms == other.inner.atoms
    }
}

impl Eq for Vocabulary {}

impl Vocabulary {
    pub fn new(atoms: impl IntoIterator<Item = Atom>) -> Result<Vocabulary> {
        Vocabulary::with_cap(atoms, DEFAULT_VOCAB_CAP)
    }

    pub fn with_cap(atoms: impl IntoIterator<Item = Atom>, cap: usize) -> Result<Vocabulary> {
        let set: BTreeSet<Atom> = atoms.into_iter().collect();
        let limit = cap.min(MAX_VOCAB_BITS);
        if set.len() > limit {
            return Err(Error::VocabularyTooLarge {
                size: set.len(),
                cap: limit,
            });
        }
        Ok(Vocabulary {
            inner: Arc::new(VocabInner {
                atoms: set.into_iter().collect(),
                cap,
            }),
        })
    }

    pub fn from_names(names: &[&str]) -> Result<Vocabulary> {
        Vocabulary::new(names.iter().map(|n| Atom::new(*n)))
    }

    /// The atoms of all the given formulas.
    pub fn covering<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> Result<Vocabulary> {
        Vocabulary::covering_with_cap(formulas, DEFAULT_VOCAB_CAP)
    }

    pub fn covering_with_cap<'a>(formulas: impl IntoIterator<Item = &'a Formula>, cap: usize) -> Result<Vocabulary> {
        let atoms: AtomSet = formulas.into_iter().flat_map(|f| f.atoms()).collect();
        Vocabulary::with_cap(atoms, cap)
    }

    /// This vocabulary plus `extra`, keeping the cap.
    pub fn widen(&self, extra: impl IntoIterator<Item = Atom>) -> Result<Vocabulary> {
        let atoms = self.inner.atoms.iter().cloned().chain(extra);
        Vocabulary::with_cap(atoms, self.inner.cap)
    }

    /// A vocabulary over `atoms` with this vocabulary's cap.
    pub fn sibling(&self, atoms: impl IntoIterator<Item = Atom>) -> Result<Vocabulary> {
        Vocabulary::with_cap(atoms, self.inner.cap)
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.inner.atoms
    }

    pub fn atom_set(&self) -> AtomSet {
        self.inner.atoms.iter().cloned().collect()
    }

    pub fn cap(&self) -> usize {
        self.inner.cap
    }

    pub fn len(&self) -> usize {
        self.inner.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.atoms.is_empty()
    }

    pub fn index_of(&self, atom: &Atom) -> Option<usize> {
        self.inner.atoms.binary_search(atom).ok()
    }

    fn require(&self, atom: &Atom) -> Result<usize> {
        self.index_of(atom)
            .ok_or_else(|| Error::OutOfVocabulary(atom.as_str().to_string()))
    }

    /// Errors unless every atom of `formula` is in the vocabulary.
    pub fn check_covers(&self, formula: &Formula) -> Result<()> {
        for atom in formula.atoms() {
            self.require(&atom)?;
        }
        Ok(())
    }

    /// Number of interpretations, `2^len`.
    pub fn size(&self) -> u64 {
        1u64 << self.len()
    }

    fn full_mask(&self) -> u64 {
        if self.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }

    /// Bit mask of the given atoms (atoms outside the vocabulary are ignored).
    pub fn mask_of<'a>(&self, atoms: impl IntoIterator<Item = &'a Atom>) -> u64 {
        atoms
            .into_iter()
            .filter_map(|a| self.index_of(a))
            .fold(0, |m, i| m | (1 << i))
    }

    pub fn atoms_of_mask(&self, mask: u64) -> AtomSet {
        self.inner
            .atoms
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, a)| a.clone())
            .collect()
    }

    pub fn all_interpretations(&self) -> impl Iterator<Item = Interpretation> + '_ {
        (0..self.size()).map(move |bits| Interpretation::new(self.clone(), bits))
    }
}

/// A total truth assignment over a vocabulary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interpretation {
    vocab: Vocabulary,
    bits: u64,
}

impl Interpretation {
    pub fn new(vocab: Vocabulary, bits: u64) -> Interpretation {
        let bits = bits & vocab.full_mask();
        Interpretation { vocab, bits }
    }

    /// Builds an interpretation from a maximal consistent literal set.
    /// `TOP` is accepted and ignored.
    pub fn from_literals<'a>(
        vocab: &Vocabulary,
        literals: impl IntoIterator<Item = &'a Literal>,
    ) -> Result<Interpretation> {
        let mut pos = 0u64;
        let mut neg = 0u64;
        for lit in literals {
            match lit {
                Literal::Top => {}
                Literal::Bot => return Err(Error::Invalid("interpretation cannot contain false".into())),
                Literal::Pos(a) => pos |= 1 << vocab.require(a)?,
                Literal::Neg(a) => neg |= 1 << vocab.require(a)?,
            }
        }
        if pos & neg != 0 {
            return Err(Error::Invalid("interpretation contains complementary literals".into()));
        }
        if pos | neg != vocab.full_mask() {
            return Err(Error::Invalid("interpretation does not assign every atom".into()));
        }
        Ok(Interpretation::new(vocab.clone(), pos))
    }

    /// Parses `"b !m"`-style text.
    pub fn parse(vocab: &Vocabulary, text: &str) -> Result<Interpretation> {
        let lits = text
            .split_whitespace()
            .map(|t| Literal::parse(t).ok_or_else(|| Error::Invalid(alloc::format!("bad literal `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        Interpretation::from_literals(vocab, &lits)
    }

    pub fn vocab(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, index: usize) -> bool {
        self.bits & (1 << index) != 0
    }

    pub fn value(&self, atom: &Atom) -> Option<bool> {
        self.vocab.index_of(atom).map(|i| self.get(i))
    }

    /// The literal set of the interpretation, excluding `TOP`.
    pub fn literals(&self) -> BTreeSet<Literal> {
        self.vocab
            .atoms()
            .iter()
            .enumerate()
            .map(|(i, a)| Literal::new(a.clone(), self.get(i)))
            .collect()
    }

    pub fn to_term(&self) -> Term {
        Term::new(self.literals())
    }

    /// Flips the value of `atom`.
    pub fn dual(&self, atom: &Atom) -> Result<Interpretation> {
        let i = self.vocab.require(atom)?;
        Ok(Interpretation::new(self.vocab.clone(), self.bits ^ (1 << i)))
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for lit in self.literals() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{lit}")?;
        }
        Ok(())
    }
}

/// A set of interpretations over one vocabulary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelSet {
    vocab: Vocabulary,
    members: BTreeSet<u64>,
}

impl ModelSet {
    pub fn empty(vocab: &Vocabulary) -> ModelSet {
        ModelSet {
            vocab: vocab.clone(),
            members: BTreeSet::new(),
        }
    }

    pub fn all(vocab: &Vocabulary) -> ModelSet {
        ModelSet::from_bits(vocab, 0..vocab.size())
    }

    pub fn from_bits(vocab: &Vocabulary, bits: impl IntoIterator<Item = u64>) -> ModelSet {
        let mask = vocab.full_mask();
        ModelSet {
            vocab: vocab.clone(),
            members: bits.into_iter().map(|b| b & mask).collect(),
        }
    }

    /// Builds a model set from `"b !m"`-style lines.
    pub fn parse_lines<'a>(vocab: &Vocabulary, lines: impl IntoIterator<Item = &'a str>) -> Result<ModelSet> {
        let mut out = ModelSet::empty(vocab);
        for line in lines {
            out.insert(&Interpretation::parse(vocab, line)?)?;
        }
        Ok(out)
    }

    pub fn vocab(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn bits(&self) -> impl Iterator<Item = u64> + '_ {
        self.members.iter().copied()
    }

    pub fn contains_bits(&self, bits: u64) -> bool {
        self.members.contains(&bits)
    }

    pub fn contains(&self, w: &Interpretation) -> bool {
        w.vocab == self.vocab && self.members.contains(&w.bits)
    }

    pub fn insert(&mut self, w: &Interpretation) -> Result<()> {
        if w.vocab != self.vocab {
            return Err(Error::VocabularyMismatch);
        }
        self.members.insert(w.bits);
        Ok(())
    }

    pub fn insert_bits(&mut self, bits: u64) {
        self.members.insert(bits & self.vocab.full_mask());
    }

    pub fn iter(&self) -> impl Iterator<Item = Interpretation> + '_ {
        self.members
            .iter()
            .map(move |&b| Interpretation::new(self.vocab.clone(), b))
    }

    fn same_vocab(&self, other: &ModelSet) -> Result<()> {
        if self.vocab == other.vocab {
            Ok(())
        } else {
            Err(Error::VocabularyMismatch)
        }
    }

    pub fn union(&self, other: &ModelSet) -> Result<ModelSet> {
        self.same_vocab(other)?;
        Ok(ModelSet {
            vocab: self.vocab.clone(),
            members: self.members.union(&other.members).copied().collect(),
        })
    }

    pub fn intersection(&self, other: &ModelSet) -> Result<ModelSet> {
        self.same_vocab(other)?;
        Ok(ModelSet {
            vocab: self.vocab.clone(),
            members: self.members.intersection(&other.members).copied().collect(),
        })
    }

    pub fn difference(&self, other: &ModelSet) -> Result<ModelSet> {
        self.same_vocab(other)?;
        Ok(ModelSet {
            vocab: self.vocab.clone(),
            members: self.members.difference(&other.members).copied().collect(),
        })
    }

    pub fn is_subset(&self, other: &ModelSet) -> Result<bool> {
        self.same_vocab(other)?;
        Ok(self.members.is_subset(&other.members))
    }

    pub fn complement(&self) -> ModelSet {
        ModelSet::from_bits(
            &self.vocab,
            (0..self.vocab.size()).filter(|b| !self.members.contains(b)),
        )
    }

    /// Disjunction of one full term per model. Empty set gives `false`; a
    /// single model over the empty vocabulary gives the empty term (`true`).
    pub fn to_dnf(&self) -> DnfFormula {
        DnfFormula::new(self.iter().map(|w| w.to_term()))
    }

    /// One line per model, literals in atom order, lines sorted bytewise.
    pub fn lines(&self) -> Vec<String> {
        let mut lines: Vec<String> = self.iter().map(|w| w.to_string()).collect();
        lines.sort();
        lines
    }

    /// The same models viewed over a larger vocabulary: every new atom is
    /// left unconstrained.
    pub fn extend_to(&self, wider: &Vocabulary) -> Result<ModelSet> {
        let mut map = Vec::with_capacity(self.vocab.len());
        for atom in self.vocab.atoms() {
            map.push(wider.require(atom)?);
        }
        let mut out = ModelSet::empty(wider);
        for b in 0..wider.size() {
            let narrow = map.iter().enumerate().fold(
                0u64,
                |acc, (j, &i)| if b & (1 << i) != 0 { acc | (1 << j) } else { acc },
            );
            if self.members.contains(&narrow) {
                out.members.insert(b);
            }
        }
        Ok(out)
    }
}

/// A formula with atoms resolved to bit positions.
#[derive(Debug, Clone)]
pub(crate) enum Compiled {
    Const(bool),
    Var(usize),
    Not(Box<Compiled>),
    And(Box<Compiled>, Box<Compiled>),
    Or(Box<Compiled>, Box<Compiled>),
}

impl Compiled {
    pub(crate) fn new(f: &Formula, vocab: &Vocabulary) -> Result<Compiled> {
        Ok(match f {
            Formula::Const(b) => Compiled::Const(*b),
            Formula::Var(a) => Compiled::Var(vocab.require(a)?),
            Formula::Not(g) => Compiled::Not(Box::new(Compiled::new(g, vocab)?)),
            Formula::And(l, r) => Compiled::And(Box::new(Compiled::new(l, vocab)?), Box::new(Compiled::new(r, vocab)?)),
            Formula::Or(l, r) => Compiled::Or(Box::new(Compiled::new(l, vocab)?), Box::new(Compiled::new(r, vocab)?)),
        })
    }

    pub(crate) fn eval(&self, bits: u64) -> bool {
        match self {
            Compiled::Const(b) => *b,
            Compiled::Var(i) => bits & (1 << i) != 0,
            Compiled::Not(g) => !g.eval(bits),
            Compiled::And(l, r) => l.eval(bits) && r.eval(bits),
            Compiled::Or(l, r) => l.eval(bits) || r.eval(bits),
        }
    }
}

/// Every interpretation over `vocab` that satisfies `f`, by exhaustive
/// enumeration.
pub fn enumerate_models(f: &Formula, vocab: &Vocabulary) -> Result<ModelSet> {
    let compiled = Compiled::new(f, vocab)?;
    Ok(ModelSet::from_bits(
        vocab,
        (0..vocab.size()).filter(|&b| compiled.eval(b)),
    ))
}

/// Models of `f` over its own atoms.
pub fn models_over_own_language(f: &Formula) -> Result<ModelSet> {
    enumerate_models(f, &Vocabulary::covering([f])?)
}

pub fn holds(w: &Interpretation, f: &Formula) -> Result<bool> {
    Ok(Compiled::new(f, &w.vocab)?.eval(w.bits))
}

fn literal_holds(w: &Interpretation, lit: &Literal) -> Result<bool> {
    Ok(match lit {
        Literal::Top => true,
        Literal::Bot => false,
        Literal::Pos(a) => w.get(w.vocab.require(a)?),
        Literal::Neg(a) => !w.get(w.vocab.require(a)?),
    })
}

pub fn term_holds(w: &Interpretation, t: &Term) -> Result<bool> {
    for lit in t.iter() {
        if !literal_holds(w, lit)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn holds_dnf(w: &Interpretation, d: &DnfFormula) -> Result<bool> {
    for t in d.terms() {
        if term_holds(w, t)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Models of a dnf over `vocab`, by enumeration.
pub fn dnf_models(d: &DnfFormula, vocab: &Vocabulary) -> Result<ModelSet> {
    let mut out = ModelSet::empty(vocab);
    for w in vocab.all_interpretations() {
        if holds_dnf(&w, d)? {
            out.members.insert(w.bits);
        }
    }
    Ok(out)
}

/// `w ↓ G`: the literals of `w` over atoms not mentioned (in either sign) by `G`.
pub fn restrict<'a>(w: &Interpretation, g: impl IntoIterator<Item = &'a Literal>) -> BTreeSet<Literal> {
    let stripped: AtomSet = g.into_iter().filter_map(Literal::atom).cloned().collect();
    w.literals()
        .into_iter()
        .filter(|l| l.atom().is_some_and(|a| !stripped.contains(a)))
        .collect()
}

/// Atoms on which two interpretations differ.
pub fn diff(w1: &Interpretation, w2: &Interpretation) -> Result<AtomSet> {
    if w1.vocab != w2.vocab {
        return Err(Error::VocabularyMismatch);
    }
    Ok(w1.vocab.atoms_of_mask(w1.bits ^ w2.bits))
}

pub fn entails_in(f: &Formula, g: &Formula, vocab: &Vocabulary) -> Result<bool> {
    let cf = Compiled::new(f, vocab)?;
    let cg = Compiled::new(g, vocab)?;
    Ok((0..vocab.size()).all(|b| !cf.eval(b) || cg.eval(b)))
}

pub fn entails(f: &Formula, g: &Formula) -> Result<bool> {
    entails_in(f, g, &Vocabulary::covering([f, g])?)
}

pub fn equivalent_in(f: &Formula, g: &Formula, vocab: &Vocabulary) -> Result<bool> {
    let cf = Compiled::new(f, vocab)?;
    let cg = Compiled::new(g, vocab)?;
    Ok((0..vocab.size()).all(|b| cf.eval(b) == cg.eval(b)))
}

pub fn equivalent(f: &Formula, g: &Formula) -> Result<bool> {
    equivalent_in(f, g, &Vocabulary::covering([f, g])?)
}

pub fn satisfiable(f: &Formula) -> Result<bool> {
    Ok(!models_over_own_language(f)?.is_empty())
}

/// All prime implicants of `f` over `atoms(f)`, sorted.
///
/// A tautology has the single prime implicant `{TOP}`; an unsatisfiable
/// formula has none.
pub fn prime_implicants(f: &Formula) -> Result<Vec<Term>> {
    prime_implicants_with_cap(f, DEFAULT_VOCAB_CAP)
}

pub fn prime_implicants_with_cap(f: &Formula, cap: usize) -> Result<Vec<Term>> {
    let vocab = Vocabulary::covering_with_cap([f], cap)?;
    let models = enumerate_models(f, &vocab)?;
    let n = vocab.len();
    let total = vocab.size();
    if models.len() as u64 == total {
        return Ok(alloc::vec![Term::new([Literal::Top])]);
    }
    if models.is_empty() {
        return Ok(Vec::new());
    }
    // A partial assignment (mask, values) is an implicant when every
    // completion is a model.
    let implicant = |mask: u64, values: u64| -> bool {
        let free = !mask & vocab.full_mask();
        let mut sub = free;
        loop {
            if !models.contains_bits(values | sub) {
                return false;
            }
            if sub == 0 {
                return true;
            }
            sub = (sub - 1) & free;
        }
    };
    let mut out = Vec::new();
    for mask in 0..total {
        let mut values = mask;
        loop {
            if implicant(mask, values) {
                let prime = (0..n)
                    .filter(|i| mask & (1 << i) != 0)
                    .all(|i| !implicant(mask & !(1 << i), values & !(1 << i)));
                if prime {
                    out.push(Term::new(
                        (0..n)
                            .filter(|i| mask & (1 << i) != 0)
                            .map(|i| Literal::new(vocab.atoms()[i].clone(), values & (1 << i) != 0)),
                    ));
                }
            }
            if values == 0 {
                break;
            }
            values = (values - 1) & mask;
        }
    }
    out.sort();
    Ok(out)
}

/// `∨PI(f)` as a formula, prime implicants in canonical order.
pub fn prime_implicant_disjunction(f: &Formula, cap: usize) -> Result<Formula> {
    Ok(Formula::disjunction(
        prime_implicants_with_cap(f, cap)?.iter().map(Term::to_formula),
    ))
}
