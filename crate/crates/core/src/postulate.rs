//! Executable KM update postulates, random instance generation and bounded
//! counterexample search.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::change;
use crate::error::{Error, Result};
use crate::formula::{Atom, Formula, Literal};
use crate::oracle;
use crate::semantics::{enumerate_models, prime_implicant_disjunction, Interpretation, ModelSet, Vocabulary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PostulateId {
    U1,
    U2,
    U3,
    U4,
    U5,
    U6,
    U7,
    U8,
    /// `ψ ⋄ μ ↔ (ψ ■ ¬μ) ∧ μ`
    Levi,
    /// `ψ ■ μ ↔ ψ ∨ (ψ ⋄ ¬μ)`
    Harper,
    /// `ψ ⋄ (μ1 ∨ μ2) ↔ (ψ ⋄ μ1) ∨ (ψ ⋄ μ2)`
    Disj,
}

impl PostulateId {
    pub const ALL: [PostulateId; 11] = [
        PostulateId::U1,
        PostulateId::U2,
        PostulateId::U3,
        PostulateId::U4,
        PostulateId::U5,
        PostulateId::U6,
        PostulateId::U7,
        PostulateId::U8,
        PostulateId::Levi,
        PostulateId::Harper,
        PostulateId::Disj,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PostulateId::U1 => "U1",
            PostulateId::U2 => "U2",
            PostulateId::U3 => "U3",
            PostulateId::U4 => "U4",
            PostulateId::U5 => "U5",
            PostulateId::U6 => "U6",
            PostulateId::U7 => "U7",
            PostulateId::U8 => "U8",
            PostulateId::Levi => "LEVI",
            PostulateId::Harper => "HARPER",
            PostulateId::Disj => "DISJ",
        }
    }

    /// Names of the instance formulas, in order.
    pub fn roles(self) -> &'static [&'static str] {
        match self {
            PostulateId::U1 | PostulateId::U2 | PostulateId::U3 => &["psi", "mu"],
            PostulateId::Levi | PostulateId::Harper => &["psi", "mu"],
            PostulateId::U4 => &["psi1", "psi2", "mu1", "mu2"],
            PostulateId::U5 => &["psi", "mu", "phi"],
            PostulateId::U6 | PostulateId::U7 | PostulateId::Disj => &["psi", "mu1", "mu2"],
            PostulateId::U8 => &["psi1", "psi2", "mu"],
        }
    }

    pub fn arity(self) -> usize {
        self.roles().len()
    }
}

impl fmt::Display for PostulateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PostulateId {
    type Err = Error;

    fn from_str(s: &str) -> Result<PostulateId> {
        PostulateId::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Invalid(alloc::format!("unknown postulate `{s}`")))
    }
}

/// The update operators the suite can exercise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Operator {
    /// Compositional update.
    Compositional,
    /// Compositional update that leaves `ψ` alone when `ψ ⊢ μ`.
    Guarded,
    /// Compositional update by the prime implicants of `μ`.
    PrimeImplicant,
    /// Compositional update by the models of `μ` over its own atoms.
    StandardCompositional,
    /// Compositional update by the models of `μ` over the whole vocabulary.
    Trivial,
    /// Winslett's PMA (reference).
    Pma,
    /// Winslett's standard semantics (reference).
    StandardSemantics,
}

impl Operator {
    pub const ALL: [Operator; 7] = [
        Operator::Compositional,
        Operator::Guarded,
        Operator::PrimeImplicant,
        Operator::StandardCompositional,
        Operator::Trivial,
        Operator::Pma,
        Operator::StandardSemantics,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Operator::Compositional => "compositional",
            Operator::Guarded => "guarded",
            Operator::PrimeImplicant => "pi",
            Operator::StandardCompositional => "ss",
            Operator::Trivial => "triv",
            Operator::Pma => "pma",
            Operator::StandardSemantics => "ss-models",
        }
    }

    pub fn update(self, psi: &Formula, mu: &Formula, vocab: &Vocabulary) -> Result<ModelSet> {
        Ok(match self {
            Operator::Compositional => change::update_c(psi, mu, vocab)?.models,
            Operator::Guarded => change::update_c_guarded(psi, mu, vocab)?.models,
            Operator::PrimeImplicant => change::update_c_pi(psi, mu, vocab)?.models,
            Operator::StandardCompositional => change::update_c_ss(psi, mu, vocab)?.models,
            Operator::Trivial => change::update_c_triv(psi, mu, vocab)?.models,
            Operator::Pma => oracle::update_pma(psi, mu, vocab)?,
            Operator::StandardSemantics => oracle::update_ss_models(psi, mu, vocab)?,
        })
    }

    /// The matching erasure. Only the compositional operator has one of its
    /// own; the others use `Mod(ψ) ∪ Mod(ψ ⋄ ¬μ)`.
    pub fn erase(self, psi: &Formula, mu: &Formula, vocab: &Vocabulary) -> Result<ModelSet> {
        match self {
            Operator::Compositional => Ok(change::erase_c_direct(psi, mu, vocab)?.models),
            _ => enumerate_models(psi, vocab)?.union(&self.update(psi, &mu.clone().negate(), vocab)?),
        }
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Operator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Operator> {
        let s = s.to_ascii_lowercase();
        let alias = match s.as_str() {
            "c" => "compositional",
            "ss-c" => "ss",
            other => other,
        };
        Operator::ALL
            .into_iter()
            .find(|o| o.name() == alias)
            .ok_or_else(|| Error::Invalid(alloc::format!("unknown operator `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    /// The postulate's antecedent did not hold.
    Vacuous,
}

impl Outcome {
    pub fn name(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Vacuous => "vacuous",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The instance that broke a postulate and, when there is one, a model on
/// which the two sides disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub formulas: Vec<(&'static str, Formula)>,
    pub model: Option<Interpretation>,
}

impl Witness {
    pub fn instance(&self) -> Vec<Formula> {
        self.formulas.iter().map(|(_, f)| f.clone()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub postulate: PostulateId,
    pub operator: Operator,
    pub outcome: Outcome,
    pub witness: Option<Witness>,
    pub trials: usize,
    pub seed: u64,
}

impl Verdict {
    /// Re-runs the postulate on the witness alone.
    pub fn recheck(&self) -> Result<Option<Outcome>> {
        match &self.witness {
            None => Ok(None),
            Some(w) => {
                let vocab = match &w.model {
                    Some(m) => m.vocab().clone(),
                    None => Vocabulary::covering(w.formulas.iter().map(|(_, f)| f))?,
                };
                Ok(Some(
                    check_in(self.postulate, self.operator, &w.instance(), &vocab)?.outcome,
                ))
            }
        }
    }
}

/// Result of comparing two model sets: the first model in exactly one of them.
fn first_difference(a: &ModelSet, b: &ModelSet) -> Result<Option<Interpretation>> {
    let left = a.difference(b)?;
    if let Some(w) = left.iter().next() {
        return Ok(Some(w));
    }
    Ok(b.difference(a)?.iter().next())
}

fn first_outside(a: &ModelSet, b: &ModelSet) -> Result<Option<Interpretation>> {
    Ok(a.difference(b)?.iter().next())
}

enum Judgement {
    Holds,
    Broken(Option<Interpretation>),
    Vacuous,
}

fn equal(a: &ModelSet, b: &ModelSet) -> Result<Judgement> {
    Ok(match first_difference(a, b)? {
        None => Judgement::Holds,
        Some(w) => Judgement::Broken(Some(w)),
    })
}

fn subset(a: &ModelSet, b: &ModelSet) -> Result<Judgement> {
    Ok(match first_outside(a, b)? {
        None => Judgement::Holds,
        Some(w) => Judgement::Broken(Some(w)),
    })
}

/// Checks one postulate on one instance over the atoms of the instance.
pub fn check(postulate: PostulateId, op: Operator, instance: &[Formula]) -> Result<Verdict> {
    let vocab = Vocabulary::covering(instance)?;
    check_in(postulate, op, instance, &vocab)
}

/// Checks one postulate on one instance over a caller-fixed vocabulary.
pub fn check_in(postulate: PostulateId, op: Operator, instance: &[Formula], vocab: &Vocabulary) -> Result<Verdict> {
    if instance.len() != postulate.arity() {
        return Err(Error::Arity {
            postulate: postulate.name(),
            expected: postulate.arity(),
            found: instance.len(),
        });
    }
    for f in instance {
        vocab.check_covers(f)?;
    }
    let models = |f: &Formula| enumerate_models(f, vocab);
    let update = |psi: &Formula, mu: &Formula| op.update(psi, mu, vocab);
    let f = instance;
    let judgement = match postulate {
        PostulateId::U1 => subset(&update(&f[0], &f[1])?, &models(&f[1])?)?,
        PostulateId::U2 => {
            let base = models(&f[0])?;
            if !base.is_subset(&models(&f[1])?)? {
                Judgement::Vacuous
            } else {
                equal(&update(&f[0], &f[1])?, &base)?
            }
        }
        PostulateId::U3 => {
            if models(&f[0])?.is_empty() || models(&f[1])?.is_empty() {
                Judgement::Vacuous
            } else if update(&f[0], &f[1])?.is_empty() {
                Judgement::Broken(None)
            } else {
                Judgement::Holds
            }
        }
        PostulateId::U4 => {
            if models(&f[0])? != models(&f[1])? || models(&f[2])? != models(&f[3])? {
                Judgement::Vacuous
            } else {
                equal(&update(&f[0], &f[2])?, &update(&f[1], &f[3])?)?
            }
        }
        PostulateId::U5 => {
            let lhs = update(&f[0], &f[1])?.intersection(&models(&f[2])?)?;
            let rhs = update(&f[0], &f[1].clone().and(f[2].clone()))?;
            subset(&lhs, &rhs)?
        }
        PostulateId::U6 => {
            let r1 = update(&f[0], &f[1])?;
            let r2 = update(&f[0], &f[2])?;
            if !r1.is_subset(&models(&f[2])?)? || !r2.is_subset(&models(&f[1])?)? {
                Judgement::Vacuous
            } else {
                equal(&r1, &r2)?
            }
        }
        PostulateId::U7 => {
            if models(&f[0])?.len() != 1 {
                Judgement::Vacuous
            } else {
                let lhs = update(&f[0], &f[1])?.intersection(&update(&f[0], &f[2])?)?;
                let rhs = update(&f[0], &f[1].clone().or(f[2].clone()))?;
                subset(&lhs, &rhs)?
            }
        }
        PostulateId::U8 => {
            let lhs = update(&f[0].clone().or(f[1].clone()), &f[2])?;
            let rhs = update(&f[0], &f[2])?.union(&update(&f[1], &f[2])?)?;
            equal(&lhs, &rhs)?
        }
        PostulateId::Levi => {
            let lhs = update(&f[0], &f[1])?;
            let rhs = op
                .erase(&f[0], &f[1].clone().negate(), vocab)?
                .intersection(&models(&f[1])?)?;
            equal(&lhs, &rhs)?
        }
        PostulateId::Harper => {
            let lhs = op.erase(&f[0], &f[1], vocab)?;
            let rhs = models(&f[0])?.union(&update(&f[0], &f[1].clone().negate())?)?;
            equal(&lhs, &rhs)?
        }
        PostulateId::Disj => {
            let lhs = update(&f[0], &f[1].clone().or(f[2].clone()))?;
            let rhs = update(&f[0], &f[1])?.union(&update(&f[0], &f[2])?)?;
            equal(&lhs, &rhs)?
        }
    };
    let (outcome, witness) = match judgement {
        Judgement::Holds => (Outcome::Pass, None),
        Judgement::Vacuous => (Outcome::Vacuous, None),
        Judgement::Broken(model) => (
            Outcome::Fail,
            Some(Witness {
                formulas: postulate
                    .roles()
                    .iter()
                    .copied()
                    .zip(instance.iter().cloned())
                    .collect(),
                model,
            }),
        ),
    };
    Ok(Verdict {
        postulate,
        operator: op,
        outcome,
        witness,
        trials: 1,
        seed: 0,
    })
}

/// Seeded random formulas over a fixed set of atoms.
#[derive(Debug, Clone)]
pub struct FormulaGen {
    rng: ChaCha8Rng,
    atoms: Vec<Atom>,
    max_depth: usize,
}

impl FormulaGen {
    pub fn new(seed: u64, vocab: &Vocabulary, max_depth: usize) -> Result<FormulaGen> {
        if vocab.is_empty() {
            return Err(Error::EmptyVocabulary);
        }
        Ok(FormulaGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            atoms: vocab.atoms().to_vec(),
            max_depth,
        })
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn max_depth(&self) -> usize {
        self.max_depth
    }

    fn leaf(&mut self) -> Formula {
        if self.rng.gen_ratio(1, 12) {
            Formula::Const(self.rng.gen_bool(0.5))
        } else {
            let i = self.rng.gen_range(0..self.atoms.len());
            Formula::Var(self.atoms[i].clone())
        }
    }

    fn grow(&mut self, depth: usize) -> Formula {
        if depth == 0 {
            return self.leaf();
        }
        match self.rng.gen_range(0..20) {
            0..=6 => self.leaf(),
            7..=10 => self.grow(depth - 1).negate(),
            11..=15 => {
                let l = self.grow(depth - 1);
                l.and(self.grow(depth - 1))
            }
            _ => {
                let l = self.grow(depth - 1);
                l.or(self.grow(depth - 1))
            }
        }
    }

    /// A formula of depth at most `max_depth`.
    pub fn formula(&mut self) -> Formula {
        let d = self.max_depth;
        self.grow(d)
    }

    /// A conjunction of one literal per atom: a formula with exactly one model.
    pub fn complete(&mut self) -> Formula {
        let atoms = self.atoms.clone();
        Formula::conjunction(
            atoms
                .into_iter()
                .map(|a| Literal::new(a, self.rng.gen_bool(0.5)).to_formula()),
        )
    }

    /// A formula logically equivalent to `f`, usually with different syntax.
    pub fn equivalent_variant(&mut self, f: &Formula) -> Formula {
        match self.rng.gen_range(0..9) {
            0 => f.to_nnf(),
            1 => f.to_dnf().to_formula(),
            2 => f.to_cnf().to_formula(),
            3 => prime_implicant_disjunction(f, usize::MAX).expect("random formulas are small"),
            4 => {
                let g = self.formula();
                f.clone().or(f.clone().and(g))
            }
            5 => {
                let g = self.formula();
                f.clone().and(f.clone().or(g))
            }
            6 => f.clone().negate().negate(),
            7 => commute(f),
            _ => {
                // f ∨ (f ∧ g), with g a fresh literal over the vocabulary.
                let a = self.atoms[self.rng.gen_range(0..self.atoms.len())].clone();
                let lit = Literal::new(a, self.rng.gen_bool(0.5)).to_formula();
                f.clone().and(lit.clone()).or(f.clone())
            }
        }
    }
}

fn commute(f: &Formula) -> Formula {
    match f {
        Formula::Const(_) | Formula::Var(_) => f.clone(),
        Formula::Not(g) => commute(g).negate(),
        Formula::And(l, r) => commute(r).and(commute(l)),
        Formula::Or(l, r) => commute(r).or(commute(l)),
    }
}

/// A reproducible random formula over `vocab` with depth at most `max_depth`.
pub fn random_formula(seed: u64, vocab: &Vocabulary, max_depth: usize) -> Result<Formula> {
    Ok(FormulaGen::new(seed, vocab, max_depth)?.formula())
}

/// Seed for trial `trial` of a search started from `seed`.
pub fn trial_seed(seed: u64, trial: usize) -> u64 {
    // splitmix64 finalizer
    let mut z = seed ^ (trial as u64).wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A random instance shaped for `postulate`. Antecedents are made to hold
/// often: `μ` extends `ψ` for U2, equivalent rewrites feed U4 and U6, and
/// U7 gets a complete `ψ`.
pub fn random_instance(postulate: PostulateId, gen: &mut FormulaGen) -> Vec<Formula> {
    match postulate {
        PostulateId::U1 | PostulateId::U3 | PostulateId::Levi | PostulateId::Harper => {
            alloc::vec![gen.formula(), gen.formula()]
        }
        PostulateId::U2 => {
            let psi = gen.formula();
            let mu = if gen.rng().gen_bool(0.75) {
                let extra = gen.formula();
                if gen.rng().gen_bool(0.5) {
                    psi.clone().or(extra)
                } else {
                    extra.or(psi.clone())
                }
            } else {
                gen.formula()
            };
            alloc::vec![psi, mu]
        }
        PostulateId::U4 => {
            let psi1 = gen.formula();
            let psi2 = gen.equivalent_variant(&psi1);
            let mu1 = gen.formula();
            let mu2 = gen.equivalent_variant(&mu1);
            alloc::vec![psi1, psi2, mu1, mu2]
        }
        PostulateId::U5 | PostulateId::U8 | PostulateId::Disj => {
            alloc::vec![gen.formula(), gen.formula(), gen.formula()]
        }
        PostulateId::U6 => {
            let psi = gen.formula();
            let mu1 = gen.formula();
            let mu2 = if gen.rng().gen_bool(0.75) {
                gen.equivalent_variant(&mu1)
            } else {
                gen.formula()
            };
            alloc::vec![psi, mu1, mu2]
        }
        PostulateId::U7 => {
            let psi = gen.complete();
            alloc::vec![psi, gen.formula(), gen.formula()]
        }
    }
}

/// Default formula depth used by [`search_counterexample`].
pub const DEFAULT_SEARCH_DEPTH: usize = 4;

/// The instance used for one trial of a search.
pub fn trial_instance(
    postulate: PostulateId,
    vocab: &Vocabulary,
    seed: u64,
    trial: usize,
    max_depth: usize,
) -> Result<Vec<Formula>> {
    let mut gen = FormulaGen::new(trial_seed(seed, trial), vocab, max_depth)?;
    Ok(random_instance(postulate, &mut gen))
}

/// Runs `trials` random instances and returns the first failure, or an
/// aggregate verdict: pass if any trial passed, vacuous otherwise.
pub fn search_counterexample(
    postulate: PostulateId,
    op: Operator,
    vocab: &Vocabulary,
    trials: usize,
    seed: u64,
) -> Result<Verdict> {
    search_counterexample_with_depth(postulate, op, vocab, trials, seed, DEFAULT_SEARCH_DEPTH)
}

pub fn search_counterexample_with_depth(
    postulate: PostulateId,
    op: Operator,
    vocab: &Vocabulary,
    trials: usize,
    seed: u64,
    max_depth: usize,
) -> Result<Verdict> {
    if trials == 0 {
        return Err(Error::Invalid("trials must be at least 1".into()));
    }
    let mut outcomes = Vec::with_capacity(trials);
    for trial in 0..trials {
        let instance = trial_instance(postulate, vocab, seed, trial, max_depth)?;
        let verdict = check_in(postulate, op, &instance, vocab)?;
        let failed = verdict.outcome == Outcome::Fail;
        outcomes.push(verdict);
        if failed {
            break;
        }
    }
    Ok(aggregate(postulate, op, outcomes, seed))
}

/// Folds per-trial verdicts (in trial order) into one search verdict.
pub fn aggregate(postulate: PostulateId, op: Operator, verdicts: Vec<Verdict>, seed: u64) -> Verdict {
    let mut any_pass = false;
    for (i, v) in verdicts.iter().enumerate() {
        match v.outcome {
            Outcome::Fail => {
                return Verdict {
                    trials: i + 1,
                    seed,
                    ..v.clone()
                }
            }
            Outcome::Pass => any_pass = true,
            Outcome::Vacuous => {}
        }
    }
    Verdict {
        postulate,
        operator: op,
        outcome: if any_pass { Outcome::Pass } else { Outcome::Vacuous },
        witness: None,
        trials: verdicts.len(),
        seed,
    }
}

/// A hand-picked instance with its expected outcome.
#[derive(Debug, Clone)]
pub struct CuratedCase {
    pub postulate: PostulateId,
    pub operator: Operator,
    pub instance: Vec<Formula>,
    pub expected: Outcome,
}

fn parse_all(texts: &[&str]) -> Vec<Formula> {
    texts
        .iter()
        .map(|t| Formula::parse(t).expect("curated formula parses"))
        .collect()
}

/// The known counterexamples for the compositional operators.
pub fn curated_counterexamples() -> Vec<CuratedCase> {
    let case = |postulate, operator, texts: &[&str]| CuratedCase {
        postulate,
        operator,
        instance: parse_all(texts),
        expected: Outcome::Fail,
    };
    alloc::vec![
        case(
            PostulateId::U2,
            Operator::Compositional,
            &["(b & !m) | (!b & m)", "b | m"]
        ),
        case(
            PostulateId::U4,
            Operator::Compositional,
            &["a", "a", "(!a & b) | b", "b"]
        ),
        case(PostulateId::U6, Operator::Compositional, &["a | b", "a | !a", "true"]),
        case(
            PostulateId::U7,
            Operator::PrimeImplicant,
            &["a & b & c & d", "(a & d) | (!c & d)", "(!a & d) | (!c & d)"],
        ),
    ]
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} trials={} seed={}",
            self.postulate, self.operator, self.outcome, self.trials, self.seed
        )?;
        if let Some(w) = &self.witness {
            for (role, formula) in &w.formulas {
                write!(f, " {role}=[{formula}]")?;
            }
            if let Some(m) = &w.model {
                write!(f, " model=[{m}]")?;
            }
        }
        Ok(())
    }
}

/// Renders a witness role list for diagnostics.
pub fn describe_instance(postulate: PostulateId, instance: &[Formula]) -> String {
    let mut out = String::new();
    for (role, f) in postulate.roles().iter().zip(instance) {
        if !out.is_empty() {
            out.push_str(", ");
        }
        out.push_str(role);
        out.push('=');
        out.push_str(&f.to_string());
    }
    out
}
