//! Reference operators written straight from their model-theoretic
//! definitions, with plain double loops over model sets. They share no code
//! with [`crate::change`] beyond model enumeration.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::error::Result;
use crate::formula::{Atom, AtomSet, Formula};
use crate::semantics::{diff, enumerate_models, Interpretation, ModelSet, Vocabulary};

/// How [`delta_min`] compares differences.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Minimality {
    Subset,
    Cardinality,
}

/// A set of interpretation differences, each an atom set.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DiffSet {
    pub pairs: BTreeSet<AtomSet>,
}

impl DiffSet {
    pub fn contains(&self, d: &AtomSet) -> bool {
        self.pairs.contains(d)
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

fn models(f: &Formula, vocab: &Vocabulary) -> Result<Vec<Interpretation>> {
    Ok(enumerate_models(f, vocab)?.iter().collect())
}

/// Winslett's possible models approach: for each model `w` of `psi`, the
/// models of `mu` whose difference from `w` is subset-minimal.
pub fn update_pma(psi: &Formula, mu: &Formula, vocab: &Vocabulary) -> Result<ModelSet> {
    let psi_models = models(psi, vocab)?;
    let mu_models = models(mu, vocab)?;
    let mut out = ModelSet::empty(vocab);
    for w in &psi_models {
        for candidate in &mu_models {
            let d = diff(w, candidate)?;
            let mut minimal = true;
            for other in &mu_models {
                let e = diff(w, other)?;
                if e != d && e.is_subset(&d) {
                    minimal = false;
                    break;
                }
            }
            if minimal {
                out.insert(candidate)?;
            }
        }
    }
    Ok(out)
}

/// Winslett's standard semantics: models of `mu` that differ from some model
/// of `psi` only on atoms of `mu`.
pub fn update_ss_models(psi: &Formula, mu: &Formula, vocab: &Vocabulary) -> Result<ModelSet> {
    let psi_models = models(psi, vocab)?;
    let mu_models = models(mu, vocab)?;
    let mu_atoms = mu.atoms();
    let mut out = ModelSet::empty(vocab);
    for w1 in &psi_models {
        for w2 in &mu_models {
            if diff(w1, w2)?.is_subset(&mu_atoms) {
                out.insert(w2)?;
            }
        }
    }
    Ok(out)
}

/// Minimal differences between models of `alpha` and models of `beta`.
/// Empty when either formula is unsatisfiable.
pub fn delta_min(alpha: &Formula, beta: &Formula, mode: Minimality, vocab: &Vocabulary) -> Result<DiffSet> {
    let a = models(alpha, vocab)?;
    let b = models(beta, vocab)?;
    let mut all = BTreeSet::new();
    for m1 in &a {
        for m2 in &b {
            all.insert(diff(m1, m2)?);
        }
    }
    let pairs = match mode {
        Minimality::Subset => all
            .iter()
            .filter(|d| !all.iter().any(|e| e != *d && e.is_subset(d)))
            .cloned()
            .collect(),
        Minimality::Cardinality => {
            let least = all.iter().map(|d| d.len()).min().unwrap_or(0);
            all.iter().filter(|d| d.len() == least).cloned().collect()
        }
    };
    Ok(DiffSet { pairs })
}

fn revise(psi: &Formula, mu: &Formula, mode: Minimality, vocab: &Vocabulary) -> Result<ModelSet> {
    let minimal = delta_min(psi, mu, mode, vocab)?;
    let psi_models = models(psi, vocab)?;
    let mut out = ModelSet::empty(vocab);
    for w2 in models(mu, vocab)? {
        for w in &psi_models {
            if minimal.contains(&diff(w, &w2)?) {
                out.insert(&w2)?;
                break;
            }
        }
    }
    Ok(out)
}

/// Satoh revision: models of `mu` at a subset-minimal difference from some
/// model of `psi`.
pub fn revise_satoh(psi: &Formula, mu: &Formula, vocab: &Vocabulary) -> Result<ModelSet> {
    revise(psi, mu, Minimality::Subset, vocab)
}

/// Dalal revision: models of `mu` at minimum Hamming distance from `psi`.
pub fn revise_dalal(psi: &Formula, mu: &Formula, vocab: &Vocabulary) -> Result<ModelSet> {
    revise(psi, mu, Minimality::Cardinality, vocab)
}

/// Boole's forgetting: `ψ[p/⊤] ∨ ψ[p/⊥]`, folded over `atoms` in name order.
pub fn forget_subst(psi: &Formula, atoms: &AtomSet) -> Formula {
    forget_subst_in_order(psi, atoms.iter())
}

/// [`forget_subst`] with an explicit atom order.
pub fn forget_subst_in_order<'a>(psi: &Formula, order: impl IntoIterator<Item = &'a Atom>) -> Formula {
    order.into_iter().fold(psi.clone(), |acc, p| {
        acc.substitute(p, &Formula::top())
            .or(acc.substitute(p, &Formula::bottom()))
    })
}
