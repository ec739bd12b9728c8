//! Symbolic update over disjunctive normal forms.
//!
//! The eliminant `∃P.ψ` of a dnf is obtained by deleting every literal over
//! `P` from every term. Updating `ψ` by `μ` then takes, for each term `t` of
//! `dnf(μ)`, the eliminant of `atoms(t)` in `ψ` conjoined with `t`. The
//! output is again a dnf, so it can feed the next update directly.

use alloc::vec::Vec;

use crate::formula::{AtomSet, DnfFormula, Formula, Term};

/// Something that can be read as a disjunctive normal form.
pub trait AsDnf {
    fn as_dnf(&self) -> DnfFormula;
}

impl AsDnf for Formula {
    fn as_dnf(&self) -> DnfFormula {
        self.to_dnf()
    }
}

impl AsDnf for DnfFormula {
    fn as_dnf(&self) -> DnfFormula {
        self.clone()
    }
}

impl<T: AsDnf + ?Sized> AsDnf for &T {
    fn as_dnf(&self) -> DnfFormula {
        (**self).as_dnf()
    }
}

fn strip(term: &Term, atoms: &AtomSet) -> Term {
    term.iter()
        .filter(|l| l.atom().is_none_or(|a| !atoms.contains(a)))
        .cloned()
        .collect()
}

/// `∃P.ψ` for a dnf `ψ`, keeping duplicates.
///
/// Unsatisfiable terms are dropped before stripping: deleting the clashing
/// literals of `b ∧ ¬b ∧ m` would otherwise leave the satisfiable `m`.
pub fn eliminant_raw(atoms: &AtomSet, psi: &DnfFormula) -> Vec<Term> {
    psi.terms()
        .iter()
        .filter(|t| t.is_consistent())
        .map(|t| strip(t, atoms))
        .collect()
}

/// `∃P.ψ`, canonicalized.
pub fn eliminant(atoms: &AtomSet, psi: impl AsDnf) -> DnfFormula {
    DnfFormula::new(eliminant_raw(atoms, &psi.as_dnf()))
}

/// The update procedure, output in the order the algorithm produces it and
/// without removing duplicate terms. Terms that become inconsistent when
/// `t` is conjoined are dropped.
pub fn update_raw(psi: impl AsDnf, mu: impl AsDnf) -> DnfFormula {
    let psi = psi.as_dnf();
    let mu = mu.as_dnf();
    let mut out = Vec::new();
    for t in mu.terms() {
        if !t.is_consistent() {
            continue;
        }
        for e in eliminant_raw(&t.atoms(), &psi) {
            let joined = e.join(t);
            if joined.is_consistent() {
                out.push(joined);
            }
        }
    }
    DnfFormula::from_raw(out)
}

/// The update procedure with the final disjunction deduplicated and sorted.
pub fn update_syntactic(psi: impl AsDnf, mu: impl AsDnf) -> DnfFormula {
    update_raw(psi, mu).canonicalize()
}

/// Input and output sizes of one update.
///
/// Sizes are AST node counts; term counts are reported separately.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeReport {
    pub input_psi_size: usize,
    pub input_mu_size: usize,
    pub output_size: usize,
    pub psi_terms: usize,
    pub mu_terms: usize,
    pub output_terms: usize,
}

pub fn size_report(psi: &Formula, mu: &Formula, output: &DnfFormula) -> SizeReport {
    SizeReport {
        input_psi_size: psi.node_count(),
        input_mu_size: mu.node_count(),
        output_size: output.node_count(),
        psi_terms: psi.to_dnf().len(),
        mu_terms: mu.to_dnf().len(),
        output_terms: output.len(),
    }
}

/// [`size_report`] for inputs already in dnf; sizes are those of their
/// formula renderings.
pub fn size_report_dnf(psi: &DnfFormula, mu: &DnfFormula, output: &DnfFormula) -> SizeReport {
    SizeReport {
        input_psi_size: psi.node_count(),
        input_mu_size: mu.node_count(),
        output_size: output.node_count(),
        psi_terms: psi.len(),
        mu_terms: mu.len(),
        output_terms: output.len(),
    }
}
