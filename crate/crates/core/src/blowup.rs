//! A family of inputs whose updated dnf encodes 3CNF satisfiability.
//!
//! `ψ_n` has one clause `γ_i ∨ ¬c_i` per 3-literal clause `γ_i` over
//! `X = {x1..xn}`, with a fresh selector atom `c_i`. `μ_n` is
//! `∧_i (¬x_i ∧ ¬y_i)`. For a 3CNF `β` over `X`, the interpretation `ω_β`
//! that turns on exactly the selectors of the clauses of `β` (and makes every
//! `x_i` and `y_i` false) satisfies the update of `ψ_n` by `μ_n` iff `β` is
//! satisfiable.
//!
//! Clause convention: for `n ≥ 3` the clauses are all sets of three literals
//! over distinct atoms. For `n < 3` a clause is a multiset of three literals
//! read as a set, tautologies dropped, so `n = 1` gives `{x1}` and `{¬x1}`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::formula::{Atom, Clause, Formula, Literal};
use crate::semantics::{Interpretation, Vocabulary, MAX_VOCAB_BITS};

/// Largest supported `n`.
pub const MAX_BLOWUP_N: usize = 4;

/// One member of the family.
#[derive(Debug, Clone)]
pub struct BlowupInstance {
    pub n: usize,
    pub psi: Formula,
    pub mu: Formula,
    /// `γ_i`, in the order of their selectors `c1, c2, ...`.
    pub clauses: Vec<Clause>,
    /// `X ∪ Y ∪ C`.
    pub vocab: Vocabulary,
}

pub fn x_atom(i: usize) -> Atom {
    Atom::new(format!("x{i}"))
}

pub fn y_atom(i: usize) -> Atom {
    Atom::new(format!("y{i}"))
}

pub fn c_atom(i: usize) -> Atom {
    Atom::new(format!("c{i}"))
}

fn is_tautology(literals: &BTreeSet<Literal>) -> bool {
    literals.iter().any(|l| literals.contains(&l.complement()))
}

/// The 3-literal clauses over `x1..xn` under the convention above, sorted.
pub fn three_literal_clauses(n: usize) -> Vec<Clause> {
    let literals: Vec<Literal> = (1..=n)
        .flat_map(|i| [Literal::new(x_atom(i), true), Literal::new(x_atom(i), false)])
        .collect();
    let mut out = BTreeSet::new();
    let k = literals.len();
    for a in 0..k {
        for b in a..k {
            for c in b..k {
                let set: BTreeSet<Literal> = [a, b, c].iter().map(|&i| literals[i].clone()).collect();
                if is_tautology(&set) {
                    continue;
                }
                if n >= 3 && set.len() != 3 {
                    continue;
                }
                out.insert(Clause::new(set));
            }
        }
    }
    out.into_iter().collect()
}

/// Builds `(ψ_n, μ_n)` for `1 ≤ n ≤ 4`.
pub fn gen_blowup(n: usize) -> Result<BlowupInstance> {
    if n == 0 || n > MAX_BLOWUP_N {
        return Err(Error::InstanceTooLarge { n, max: MAX_BLOWUP_N });
    }
    let clauses = three_literal_clauses(n);
    let psi = Formula::conjunction(
        clauses
            .iter()
            .enumerate()
            .map(|(i, gamma)| gamma.to_formula().or(Formula::Var(c_atom(i + 1)).negate())),
    );
    let mu = Formula::conjunction(
        (1..=n).flat_map(|i| [Formula::Var(x_atom(i)).negate(), Formula::Var(y_atom(i)).negate()]),
    );
    let atoms = (1..=n)
        .flat_map(|i| [x_atom(i), y_atom(i)])
        .chain((1..=clauses.len()).map(c_atom));
    let vocab = Vocabulary::with_cap(atoms, MAX_VOCAB_BITS)?;
    Ok(BlowupInstance {
        n,
        psi,
        mu,
        clauses,
        vocab,
    })
}

impl BlowupInstance {
    /// Selector index (0-based) of a clause of the family.
    pub fn selector_of(&self, clause: &Clause) -> Option<usize> {
        self.clauses.iter().position(|c| c == clause)
    }

    /// `ω_β`: selectors of `β`'s clauses true, everything else false.
    pub fn omega(&self, beta: &[Clause]) -> Result<Interpretation> {
        let mut bits = 0u64;
        for clause in beta {
            let i = self
                .selector_of(clause)
                .ok_or_else(|| Error::Invalid(format!("clause {} is not in the family", clause.to_formula())))?;
            let idx = self
                .vocab
                .index_of(&c_atom(i + 1))
                .expect("selector atoms are in the vocabulary");
            bits |= 1 << idx;
        }
        Ok(Interpretation::new(self.vocab.clone(), bits))
    }

    /// `m` clauses drawn uniformly, with repetition, from the family.
    pub fn random_beta(&self, seed: u64, m: usize) -> Vec<Clause> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut beta: Vec<Clause> = (0..m)
            .map(|_| self.clauses[rng.gen_range(0..self.clauses.len())].clone())
            .collect();
        beta.sort();
        beta.dedup();
        beta
    }
}

/// Satisfiability of a clause set over `x1..xn` by trying all assignments.
pub fn cnf_satisfiable(n: usize, beta: &[Clause]) -> bool {
    (0u64..1 << n).any(|assignment| {
        beta.iter().all(|clause| {
            clause.literals().iter().any(|l| match l {
                Literal::Top => true,
                Literal::Bot => false,
                Literal::Pos(a) | Literal::Neg(a) => {
                    let i: usize = a.as_str()[1..].parse().expect("atom of the form x<i>");
                    (assignment >> (i - 1) & 1 == 1) == l.is_positive()
                }
            })
        })
    })
}
