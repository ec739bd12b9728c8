//! Compositional update, erasure, forgetting and revision.
//!
//! [`ul`] and [`el`] decompose a set of formulas case by case, the way a dnf
//! (respectively cnf) conversion would, and apply the collected literals to
//! a single interpretation. Every operator below is the union of those
//! per-model images over the models of the knowledge base.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::error::Result;
use crate::formula::{AtomSet, DnfFormula, Formula};
use crate::semantics::{
    entails_in, enumerate_models, prime_implicant_disjunction, Compiled, Interpretation, ModelSet, Vocabulary,
};

/// Models produced by an operator together with an equivalent dnf.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChangeResult {
    pub models: ModelSet,
    pub formula: DnfFormula,
}

impl ChangeResult {
    /// `formula` is the disjunction of one full term per model.
    pub fn from_models(models: ModelSet) -> ChangeResult {
        let formula = models.to_dnf();
        ChangeResult { models, formula }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Update,
    Erase,
}

/// Literals gathered along one branch of the decomposition.
#[derive(Debug, Clone, Copy, Default)]
struct Gathered {
    pos: u64,
    neg: u64,
    top: bool,
    bot: bool,
}

impl Gathered {
    fn add(&mut self, literal: &Compiled, negated: bool) {
        match literal {
            Compiled::Const(b) => {
                if *b != negated {
                    self.top = true;
                } else {
                    self.bot = true;
                }
            }
            Compiled::Var(i) => {
                if negated {
                    self.neg |= 1 << i;
                } else {
                    self.pos |= 1 << i;
                }
            }
            _ => unreachable!("not a literal"),
        }
    }

    // Update base case needs a consistent set; erasure base case needs a
    // set whose disjunction is not valid. Both properties only get worse as
    // literals are added, so a failing branch can be cut early.
    fn dead(&self, mode: Mode) -> bool {
        match mode {
            Mode::Update => self.bot || self.pos & self.neg != 0,
            Mode::Erase => self.top || self.pos & self.neg != 0,
        }
    }
}

/// The literal sets of the surviving branches, as `(pos, neg)` masks.
type Branches = BTreeSet<(u64, u64)>;

fn apply(bits: u64, (pos, neg): (u64, u64), mode: Mode) -> u64 {
    let kept = bits & !(pos | neg);
    match mode {
        Mode::Update => kept | pos,
        Mode::Erase => kept | neg,
    }
}

fn apply_all(bits: u64, branches: &Branches, mode: Mode) -> BTreeSet<u64> {
    branches.iter().map(|&b| apply(bits, b, mode)).collect()
}

/// A pending member of the formula set: `formula`, or its negation.
#[derive(Debug, Clone, Copy)]
struct Member<'a> {
    formula: &'a Compiled,
    negated: bool,
}

struct Decomposer<'c> {
    mode: Mode,
    choose: &'c mut dyn FnMut(usize) -> usize,
    out: Branches,
}

impl Decomposer<'_> {
    fn run<'a>(&mut self, mut pending: Vec<Member<'a>>, mut acc: Gathered) {
        // Literal members never drive a recursion case; absorb them first.
        pending.retain(|m| match m.formula {
            Compiled::Const(_) | Compiled::Var(_) => {
                acc.add(m.formula, m.negated);
                false
            }
            _ => true,
        });
        if acc.dead(self.mode) {
            return;
        }
        if pending.is_empty() {
            self.out.insert((acc.pos, acc.neg));
            return;
        }
        let pick = (self.choose)(pending.len()) % pending.len();
        let Member { formula, negated } = pending.remove(pick);
        let member = |f, n| Member { formula: f, negated: n };
        match formula {
            // ¬¬α becomes α; ¬α is tracked by flipping the flag.
            Compiled::Not(inner) => {
                pending.push(member(inner, !negated));
                self.run(pending, acc);
            }
            Compiled::And(l, r) | Compiled::Or(l, r) => {
                let is_and = matches!(formula, Compiled::And(..));
                // Under negation ∧ behaves as ∨ and vice versa (De Morgan).
                let conjunctive = is_and != negated;
                let split = match self.mode {
                    Mode::Update => conjunctive,
                    Mode::Erase => !conjunctive,
                };
                if split {
                    pending.push(member(l, negated));
                    pending.push(member(r, negated));
                    self.run(pending, acc);
                } else {
                    let mut left = pending.clone();
                    left.push(member(l, negated));
                    self.run(left, acc);
                    pending.push(member(r, negated));
                    self.run(pending, acc);
                }
            }
            Compiled::Const(_) | Compiled::Var(_) => unreachable!("literals are absorbed"),
        }
    }
}

fn decompose(
    mode: Mode,
    w: &Interpretation,
    members: &[Formula],
    choose: &mut dyn FnMut(usize) -> usize,
) -> Result<ModelSet> {
    let mut sorted: Vec<&Formula> = members.iter().collect();
    sorted.sort();
    sorted.dedup();
    let compiled = sorted
        .iter()
        .map(|f| Compiled::new(f, w.vocab()))
        .collect::<Result<Vec<_>>>()?;
    let mut acc = Gathered::default();
    if compiled.is_empty() {
        // The empty set stands for {⊤}.
        acc.top = true;
    }
    let pending = compiled
        .iter()
        .map(|formula| Member {
            formula,
            negated: false,
        })
        .collect();
    let mut d = Decomposer {
        mode,
        choose,
        out: BTreeSet::new(),
    };
    d.run(pending, acc);
    Ok(ModelSet::from_bits(w.vocab(), apply_all(w.bits(), &d.out, mode)))
}

fn first(_: usize) -> usize {
    0
}

/// `UL(w, G)`: the interpretations closest to `w` according to the update
/// decomposition of the formula set `G`. An empty `G` is read as `{⊤}`.
pub fn ul(w: &Interpretation, g: &[Formula]) -> Result<ModelSet> {
    decompose(Mode::Update, w, g, &mut first)
}

/// [`ul`] with the member selected at each step chosen by `choose(len)`.
/// The result does not depend on the choices.
pub fn ul_with(w: &Interpretation, g: &[Formula], choose: &mut dyn FnMut(usize) -> usize) -> Result<ModelSet> {
    decompose(Mode::Update, w, g, choose)
}

/// `EL(w, G)`, the erasure counterpart of [`ul`]: conjunctions branch,
/// disjunctions accumulate, and the base case complements the literals.
pub fn el(w: &Interpretation, g: &[Formula]) -> Result<ModelSet> {
    decompose(Mode::Erase, w, g, &mut first)
}

pub fn el_with(w: &Interpretation, g: &[Formula], choose: &mut dyn FnMut(usize) -> usize) -> Result<ModelSet> {
    decompose(Mode::Erase, w, g, choose)
}

/// The per-model update image of one formula.
///
/// The decomposition of `mu` does not depend on the model, so its branches
/// are computed once. Images of distinct models are independent, which is
/// what the parallel front end relies on.
#[derive(Debug, Clone)]
pub struct UpdateKernel {
    branches: Branches,
    mode: Mode,
    vocab: Vocabulary,
}

impl UpdateKernel {
    fn new(mu: &Formula, vocab: &Vocabulary, mode: Mode) -> Result<UpdateKernel> {
        let compiled = Compiled::new(mu, vocab)?;
        let mut choose = first;
        let mut d = Decomposer {
            mode,
            choose: &mut choose,
            out: BTreeSet::new(),
        };
        d.run(
            alloc::vec![Member {
                formula: &compiled,
                negated: false,
            }],
            Gathered::default(),
        );
        Ok(UpdateKernel {
            branches: d.out,
            mode,
            vocab: vocab.clone(),
        })
    }

    /// Kernel computing `UL(w, {mu})`.
    pub fn update(mu: &Formula, vocab: &Vocabulary) -> Result<UpdateKernel> {
        UpdateKernel::new(mu, vocab, Mode::Update)
    }

    /// Kernel computing `EL(w, {mu})`.
    pub fn erase(mu: &Formula, vocab: &Vocabulary) -> Result<UpdateKernel> {
        UpdateKernel::new(mu, vocab, Mode::Erase)
    }

    /// Number of surviving decomposition branches.
    pub fn branch_count(&self) -> usize {
        self.branches.len()
    }

    pub fn vocab(&self) -> &Vocabulary {
        &self.vocab
    }

    /// Image of the interpretation with the given bits, ascending.
    pub fn image(&self, bits: u64) -> Vec<u64> {
        apply_all(bits, &self.branches, self.mode).into_iter().collect()
    }

    /// Union of the images of every model in `models`.
    pub fn image_of(&self, models: &ModelSet) -> ModelSet {
        ModelSet::from_bits(&self.vocab, models.bits().flat_map(|b| self.image(b)))
    }
}

/// `atoms(psi) ∪ atoms(mu)`, the default language of a change operation.
pub fn default_vocab(psi: &Formula, mu: &Formula) -> Result<Vocabulary> {
    Vocabulary::covering([psi, mu])
}

fn models_of(psi: &Formula, mu: &Formula, vocab: &Vocabulary) -> Result<ModelSet> {
    vocab.check_covers(mu)?;
    enumerate_models(psi, vocab)
}

/// Compositional update: the union of `UL(w, {mu})` over the models `w` of `psi`.
pub fn update_c(psi: &Formula, mu: &Formula, vocab: &Vocabulary) -> Result<ChangeResult> {
    let base = models_of(psi, mu, vocab)?;
    let kernel = UpdateKernel::update(mu, vocab)?;
    Ok(ChangeResult::from_models(kernel.image_of(&base)))
}

/// Erasure through the Harper construction: `Mod(psi)` plus the update
/// images of `¬mu`.
pub fn erase_c(psi: &Formula, mu: &Formula, vocab: &Vocabulary) -> Result<ChangeResult> {
    let base = models_of(psi, mu, vocab)?;
    let kernel = UpdateKernel::update(&mu.clone().negate(), vocab)?;
    Ok(ChangeResult::from_models(base.union(&kernel.image_of(&base))?))
}

/// Erasure defined directly from [`el`].
pub fn erase_c_direct(psi: &Formula, mu: &Formula, vocab: &Vocabulary) -> Result<ChangeResult> {
    let base = models_of(psi, mu, vocab)?;
    let kernel = UpdateKernel::erase(mu, vocab)?;
    Ok(ChangeResult::from_models(base.union(&kernel.image_of(&base))?))
}

/// `psi` itself when `psi ⊢ mu`, otherwise [`update_c`].
pub fn update_c_guarded(psi: &Formula, mu: &Formula, vocab: &Vocabulary) -> Result<ChangeResult> {
    let base = models_of(psi, mu, vocab)?;
    if entails_in(psi, mu, vocab)? {
        return Ok(ChangeResult::from_models(base));
    }
    update_c(psi, mu, vocab)
}

/// Update by the disjunction of the prime implicants of `mu`.
pub fn update_c_pi(psi: &Formula, mu: &Formula, vocab: &Vocabulary) -> Result<ChangeResult> {
    vocab.check_covers(mu)?;
    let surrogate = prime_implicant_disjunction(mu, vocab.cap())?;
    update_c(psi, &surrogate, vocab)
}

/// `∨∧ModL(mu)`: one full term per model of `mu` over `atoms(mu)`.
pub fn model_disjunction_own_language(mu: &Formula, vocab: &Vocabulary) -> Result<Formula> {
    let own = vocab.sibling(mu.atoms())?;
    Ok(enumerate_models(mu, &own)?.to_dnf().to_formula())
}

/// Update by `∨∧ModL(mu)`; coincides with the standard semantics.
pub fn update_c_ss(psi: &Formula, mu: &Formula, vocab: &Vocabulary) -> Result<ChangeResult> {
    vocab.check_covers(mu)?;
    let surrogate = model_disjunction_own_language(mu, vocab)?;
    update_c(psi, &surrogate, vocab)
}

/// Update by `∨∧Mod(mu)` over the whole of `vocab`. The result is always
/// equivalent to `mu` (for satisfiable `psi`).
pub fn update_c_triv(psi: &Formula, mu: &Formula, vocab: &Vocabulary) -> Result<ChangeResult> {
    vocab.check_covers(mu)?;
    let surrogate = enumerate_models(mu, vocab)?.to_dnf().to_formula();
    update_c(psi, &surrogate, vocab)
}

/// `∧_{p∈atoms} (p ∨ ¬p)`.
pub fn tautology_over(atoms: &AtomSet) -> Formula {
    Formula::conjunction(atoms.iter().map(|a| {
        let p = Formula::Var(a.clone());
        p.clone().or(p.negate())
    }))
}

/// Forgetting as an update by tautologies over the forgotten atoms.
pub fn forget(psi: &Formula, atoms: &AtomSet, vocab: &Vocabulary) -> Result<ChangeResult> {
    update_c(psi, &tautology_over(atoms), vocab)
}

/// Subset-minimal symmetric differences between models of `psi` and `mu`,
/// as bit masks.
fn minimal_differences(psi_models: &ModelSet, mu_models: &ModelSet) -> Vec<u64> {
    let all: BTreeSet<u64> = psi_models
        .bits()
        .flat_map(|a| mu_models.bits().map(move |b| a ^ b))
        .collect();
    all.iter()
        .copied()
        .filter(|&d| !all.iter().any(|&e| e != d && e & d == e))
        .collect()
}

/// Compositional revision: update images whose change from their source
/// model is a subset-minimal difference between `psi` and `mu`. Empty when
/// either side is unsatisfiable.
pub fn revise_c(psi: &Formula, mu: &Formula, vocab: &Vocabulary) -> Result<ChangeResult> {
    let psi_models = models_of(psi, mu, vocab)?;
    let mu_models = enumerate_models(mu, vocab)?;
    let minimal = minimal_differences(&psi_models, &mu_models);
    let kernel = UpdateKernel::update(mu, vocab)?;
    let mut out = ModelSet::empty(vocab);
    for w in psi_models.bits() {
        for w2 in kernel.image(w) {
            if minimal.contains(&(w ^ w2)) {
                out.insert_bits(w2);
            }
        }
    }
    Ok(ChangeResult::from_models(out))
}
