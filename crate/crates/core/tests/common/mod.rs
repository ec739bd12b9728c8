//! Randomized checks of the operator identities, shared by the property
//! tests of this crate and the acceptance runner.
//!
//! Each check draws its own formulas from a seeded generator over a given
//! vocabulary and reports the first disagreement as an error string.

#![allow(dead_code)]

use beliefkit_core::change::{
    el, el_with, erase_c, erase_c_direct, forget, revise_c, tautology_over, ul, ul_with, update_c, update_c_pi,
    update_c_ss, update_c_triv, UpdateKernel,
};
use beliefkit_core::oracle::{forget_subst, revise_dalal, revise_satoh, update_pma, update_ss_models};
use beliefkit_core::postulate::{trial_seed, FormulaGen};
use beliefkit_core::semantics::{dnf_models, enumerate_models, holds};
use beliefkit_core::syntactic::{eliminant, update_raw, update_syntactic};
use beliefkit_core::{AtomSet, Formula, Interpretation, Literal, ModelSet, Term, Vocabulary};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Outcome = Result<(), String>;
pub type Check = fn(&mut FormulaGen, &Vocabulary) -> Outcome;

const NAMES: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

/// Instance parameters for trial `i`: 3 to 6 atoms, depth 2 to 6.
pub fn instance(seed: u64, i: usize) -> (FormulaGen, Vocabulary) {
    let s = trial_seed(seed, i);
    let atoms = 3 + (s % 4) as usize;
    let depth = 2 + ((s >> 8) % 5) as usize;
    let vocab = Vocabulary::from_names(&NAMES[..atoms]).unwrap();
    let gen = FormulaGen::new(s, &vocab, depth).unwrap();
    (gen, vocab)
}

/// Runs `check` on `count` instances; returns the number run or the first error.
pub fn run(check: Check, seed: u64, count: usize) -> Result<usize, String> {
    for i in 0..count {
        let (mut gen, vocab) = instance(seed, i);
        check(&mut gen, &vocab).map_err(|e| format!("instance {i}: {e}"))?;
    }
    Ok(count)
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn expect_eq(what: &str, a: &ModelSet, b: &ModelSet) -> Outcome {
    if a == b {
        Ok(())
    } else {
        Err(format!("{what}: {:?} != {:?}", a.lines(), b.lines()))
    }
}

fn expect_subset(what: &str, a: &ModelSet, b: &ModelSet) -> Outcome {
    if a.is_subset(b).map_err(err)? {
        Ok(())
    } else {
        Err(format!("{what}: {:?} not within {:?}", a.lines(), b.lines()))
    }
}

fn models(f: &Formula, v: &Vocabulary) -> Result<ModelSet, String> {
    enumerate_models(f, v).map_err(err)
}

fn random_model(gen: &mut FormulaGen, v: &Vocabulary) -> Interpretation {
    let bits = gen.rng().gen_range(0..v.size());
    Interpretation::new(v.clone(), bits)
}

fn random_set(gen: &mut FormulaGen) -> Vec<Formula> {
    let n = gen.rng().gen_range(1..=3);
    (0..n).map(|_| gen.formula()).collect()
}

fn random_atoms(gen: &mut FormulaGen, v: &Vocabulary) -> AtomSet {
    v.atoms().iter().filter(|_| gen.rng().gen_bool(0.4)).cloned().collect()
}

fn random_consistent_term(gen: &mut FormulaGen, v: &Vocabulary) -> Term {
    let mut t = Term::top();
    for a in v.atoms() {
        if gen.rng().gen_bool(0.5) {
            t.insert(Literal::new(a.clone(), gen.rng().gen_bool(0.5)));
        }
    }
    t
}

/// Rotates every left-nested `(x ∘ y) ∘ z` into `x ∘ (y ∘ z)`.
pub fn reassociate(f: &Formula) -> Formula {
    match f {
        Formula::Const(_) | Formula::Var(_) => f.clone(),
        Formula::Not(g) => reassociate(g).negate(),
        Formula::And(l, r) => match l.as_ref() {
            Formula::And(x, y) => reassociate(x).and(reassociate(y).and(reassociate(r))),
            _ => reassociate(l).and(reassociate(r)),
        },
        Formula::Or(l, r) => match l.as_ref() {
            Formula::Or(x, y) => reassociate(x).or(reassociate(y).or(reassociate(r))),
            _ => reassociate(l).or(reassociate(r)),
        },
    }
}

fn image(psi: &ModelSet, mu: &Formula, v: &Vocabulary) -> Result<ModelSet, String> {
    let mut out = ModelSet::empty(v);
    for w in psi.iter() {
        out = out
            .union(&ul(&w, std::slice::from_ref(mu)).map_err(err)?)
            .map_err(err)?;
    }
    Ok(out)
}

/// Decomposition order, member order and bracketing do not change `UL`.
pub fn ul_order_invariance(gen: &mut FormulaGen, v: &Vocabulary) -> Outcome {
    let w = random_model(gen, v);
    let mut g = random_set(gen);
    let base = ul(&w, &g).map_err(err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(gen.rng().gen());
    let chosen = ul_with(&w, &g, &mut |n| rng.gen_range(0..n)).map_err(err)?;
    expect_eq("random decomposition order", &base, &chosen)?;
    let regrouped: Vec<Formula> = g.iter().map(reassociate).collect();
    expect_eq("reassociated members", &base, &ul(&w, &regrouped).map_err(err)?)?;
    g.shuffle(gen.rng());
    expect_eq("permuted members", &base, &ul(&w, &g).map_err(err)?)
}

/// `UL(w, G) = UL(w, {nnf(∧G)}) = UL(w, {dnf(∧G)})`.
pub fn ul_normal_form_invariance(gen: &mut FormulaGen, v: &Vocabulary) -> Outcome {
    let w = random_model(gen, v);
    let g = random_set(gen);
    let conj = Formula::conjunction(g.iter().cloned());
    let base = ul(&w, &g).map_err(err)?;
    expect_eq("nnf", &base, &ul(&w, &[conj.to_nnf()]).map_err(err)?)?;
    expect_eq("dnf", &base, &ul(&w, &[conj.to_dnf().to_formula()]).map_err(err)?)
}

/// Every member of `UL(w, G)` satisfies every member of `G`.
pub fn ul_soundness(gen: &mut FormulaGen, v: &Vocabulary) -> Outcome {
    let w = random_model(gen, v);
    let g = random_set(gen);
    for m in ul(&w, &g).map_err(err)?.iter() {
        for f in &g {
            if !holds(&m, f).map_err(err)? {
                return Err(format!("{m} does not satisfy {f}"));
            }
        }
    }
    Ok(())
}

/// `UL(w, G)` is empty exactly when `∧G` is unsatisfiable.
pub fn ul_empty_iff_unsat(gen: &mut FormulaGen, v: &Vocabulary) -> Outcome {
    let w = random_model(gen, v);
    let g = random_set(gen);
    let empty = ul(&w, &g).map_err(err)?.is_empty();
    let unsat = models(&Formula::conjunction(g.iter().cloned()), v)?.is_empty();
    if empty == unsat {
        Ok(())
    } else {
        Err(format!("empty={empty} unsat={unsat} for {g:?}"))
    }
}

/// `Mod(ψ ∧ μ) ⊆ Mod(ψ ⋄ μ)`.
pub fn update_keeps_conjunction(gen: &mut FormulaGen, v: &Vocabulary) -> Outcome {
    let psi = gen.formula();
    let mu = gen.formula();
    let both = models(&psi.clone().and(mu.clone()), v)?;
    expect_subset("psi & mu", &both, &update_c(&psi, &mu, v).map_err(err)?.models)
}

/// Update and erasure define each other.
pub fn update_erase_identities(gen: &mut FormulaGen, v: &Vocabulary) -> Outcome {
    let psi = gen.formula();
    let mu = gen.formula();
    let not_mu = mu.clone().negate();
    let updated = update_c(&psi, &mu, v).map_err(err)?.models;
    let erased = erase_c(&psi, &not_mu, v).map_err(err)?.models;
    expect_eq(
        "update via erase",
        &updated,
        &erased.intersection(&models(&mu, v)?).map_err(err)?,
    )?;
    let direct = erase_c_direct(&psi, &mu, v).map_err(err)?.models;
    let via_update = models(&psi, v)?
        .union(&update_c(&psi, &not_mu, v).map_err(err)?.models)
        .map_err(err)?;
    expect_eq("erase via update", &direct, &via_update)
}

/// `EL` against `UL`, its normal-form invariance, and the two erasures.
///
/// A set is read disjunctively by `EL`, so the general identity uses `∨G`;
/// for a single formula this is the same as `∧G`.
pub fn el_equivalences(gen: &mut FormulaGen, v: &Vocabulary) -> Outcome {
    let w = random_model(gen, v);
    let g = random_set(gen);
    let disj = Formula::disjunction(g.iter().cloned());
    let base = el(&w, &g).map_err(err)?;
    expect_eq(
        "el vs ul of negation",
        &base,
        &ul(&w, &[disj.clone().negate()]).map_err(err)?,
    )?;
    expect_eq("el nnf", &base, &el(&w, &[disj.to_nnf()]).map_err(err)?)?;
    expect_eq("el cnf", &base, &el(&w, &[disj.to_cnf().to_formula()]).map_err(err)?)?;
    let mut rng = ChaCha8Rng::seed_from_u64(gen.rng().gen());
    expect_eq(
        "el order",
        &base,
        &el_with(&w, &g, &mut |n| rng.gen_range(0..n)).map_err(err)?,
    )?;

    let f = g[0].clone();
    let single = el(&w, std::slice::from_ref(&f)).map_err(err)?;
    expect_eq(
        "singleton el vs ul",
        &single,
        &ul(&w, &[f.clone().negate()]).map_err(err)?,
    )?;
    expect_eq(
        "singleton el cnf",
        &single,
        &el(&w, &[f.to_cnf().to_formula()]).map_err(err)?,
    )?;

    let psi = gen.formula();
    expect_eq(
        "erasures",
        &erase_c(&psi, &f, v).map_err(err)?.models,
        &erase_c_direct(&psi, &f, v).map_err(err)?.models,
    )
}

/// Compositional revision coincides with Satoh's; Dalal's lies within it.
pub fn revision_matches_satoh(gen: &mut FormulaGen, v: &Vocabulary) -> Outcome {
    let psi = gen.formula();
    let mu = gen.formula();
    let satoh = revise_satoh(&psi, &mu, v).map_err(err)?;
    expect_eq("revise", &revise_c(&psi, &mu, v).map_err(err)?.models, &satoh)?;
    expect_subset("dalal", &revise_dalal(&psi, &mu, v).map_err(err)?, &satoh)
}

/// `ψ ⋄ (μ1 ∨ μ2) = (ψ ⋄ μ1) ∨ (ψ ⋄ μ2)`, hence the intersection is inside.
pub fn update_distributes_over_disjunction(gen: &mut FormulaGen, v: &Vocabulary) -> Outcome {
    let psi = gen.formula();
    let mu1 = gen.formula();
    let mu2 = gen.formula();
    let joint = update_c(&psi, &mu1.clone().or(mu2.clone()), v).map_err(err)?.models;
    let r1 = update_c(&psi, &mu1, v).map_err(err)?.models;
    let r2 = update_c(&psi, &mu2, v).map_err(err)?.models;
    expect_eq("disjunction", &joint, &r1.union(&r2).map_err(err)?)?;
    expect_subset("intersection", &r1.intersection(&r2).map_err(err)?, &joint)
}

/// Prime-implicant update ignores the syntax of `μ`.
pub fn pi_update_syntax_independent(gen: &mut FormulaGen, v: &Vocabulary) -> Outcome {
    let psi = gen.formula();
    let mu1 = gen.formula();
    let mu2 = gen.equivalent_variant(&mu1);
    expect_eq(
        &format!("pi update by {mu1} vs {mu2}"),
        &update_c_pi(&psi, &mu1, v).map_err(err)?.models,
        &update_c_pi(&psi, &mu2, v).map_err(err)?.models,
    )
}

/// Update by the models of `μ` over its own atoms is the standard semantics.
pub fn ss_update_matches_reference(gen: &mut FormulaGen, v: &Vocabulary) -> Outcome {
    let psi = gen.formula();
    let mu = gen.formula();
    expect_eq(
        "ss",
        &update_c_ss(&psi, &mu, v).map_err(err)?.models,
        &update_ss_models(&psi, &mu, v).map_err(err)?,
    )
}

/// Forgetting by tautology update, by substitution, and by standard
/// semantics agree, and the result is closed under duals of forgotten atoms.
pub fn forget_routes_agree(gen: &mut FormulaGen, v: &Vocabulary) -> Outcome {
    let psi = gen.formula();
    let atoms = random_atoms(gen, v);
    let by_update = forget(&psi, &atoms, v).map_err(err)?.models;
    let by_subst = models(&forget_subst(&psi, &atoms), v)?;
    let taut = tautology_over(&atoms);
    let by_ss = update_c_ss(&psi, &taut, v).map_err(err)?.models;
    expect_eq("update vs substitution", &by_update, &by_subst)?;
    expect_eq("update vs ss", &by_update, &by_ss)?;
    expect_eq("ss reference", &by_ss, &update_ss_models(&psi, &taut, v).map_err(err)?)?;
    for w in by_update.iter() {
        for p in &atoms {
            if !by_update.contains(&w.dual(p).map_err(err)?) {
                return Err(format!("{w} kept but its {p}-dual dropped"));
            }
        }
    }
    Ok(())
}

/// Equivalent knowledge bases, and update formulas with identical nnf or
/// dnf, give the same update.
pub fn equivalent_substitution(gen: &mut FormulaGen, v: &Vocabulary) -> Outcome {
    let psi1 = gen.formula();
    let psi2 = gen.equivalent_variant(&psi1);
    let mu = gen.formula();
    let r = update_c(&psi1, &mu, v).map_err(err)?.models;
    expect_eq("left argument", &r, &update_c(&psi2, &mu, v).map_err(err)?.models)?;
    let candidates = [
        mu.to_nnf(),
        mu.clone().negate().negate(),
        mu.to_dnf().to_formula(),
        gen.equivalent_variant(&mu),
    ];
    for mu2 in candidates {
        if mu2.to_nnf() == mu.to_nnf() || mu2.to_dnf() == mu.to_dnf() {
            expect_eq(
                &format!("right argument {mu} vs {mu2}"),
                &r,
                &update_c(&psi1, &mu2, v).map_err(err)?.models,
            )?;
        }
    }
    Ok(())
}

/// Update by all full models of `μ` just yields `μ`.
pub fn trivial_update(gen: &mut FormulaGen, v: &Vocabulary) -> Outcome {
    let psi = gen.formula();
    let mu = gen.formula();
    let expected = if models(&psi, v)?.is_empty() {
        ModelSet::empty(v)
    } else {
        models(&mu, v)?
    };
    expect_eq("triv", &update_c_triv(&psi, &mu, v).map_err(err)?.models, &expected)
}

/// `(∃atoms(μ).ψ) ∧ μ` is the standard semantics update.
pub fn eliminant_gives_standard_semantics(gen: &mut FormulaGen, v: &Vocabulary) -> Outcome {
    let psi = gen.formula();
    let mu = gen.formula();
    let e = dnf_models(&eliminant(&mu.atoms(), &psi), v).map_err(err)?;
    expect_eq(
        "eliminant and mu",
        &e.intersection(&models(&mu, v)?).map_err(err)?,
        &update_ss_models(&psi, &mu, v).map_err(err)?,
    )
}

/// The dnf eliminant agrees with substitution.
pub fn eliminant_matches_substitution(gen: &mut FormulaGen, v: &Vocabulary) -> Outcome {
    let psi = gen.formula();
    let atoms = random_atoms(gen, v);
    expect_eq(
        "eliminant",
        &dnf_models(&eliminant(&atoms, &psi), v).map_err(err)?,
        &models(&forget_subst(&psi, &atoms), v)?,
    )
}

/// For a consistent term `t`, `(∃atoms(t).ψ) ∧ t` is the `UL` image of `ψ`.
pub fn eliminant_term_image(gen: &mut FormulaGen, v: &Vocabulary) -> Outcome {
    let psi = gen.formula();
    let t = random_consistent_term(gen, v);
    let lhs = dnf_models(&eliminant(&t.atoms(), &psi), v)
        .map_err(err)?
        .intersection(&models(&t.to_formula(), v)?)
        .map_err(err)?;
    expect_eq(
        &format!("term {t}"),
        &lhs,
        &image(&models(&psi, v)?, &t.to_formula(), v)?,
    )
}

/// The symbolic update agrees with the semantic one.
pub fn syntactic_matches_semantic(gen: &mut FormulaGen, v: &Vocabulary) -> Outcome {
    let psi = gen.formula();
    let mu = gen.formula();
    let semantic = update_c(&psi, &mu, v).map_err(err)?.models;
    let symbolic = update_syntactic(&psi, &mu);
    expect_eq("syntactic", &dnf_models(&symbolic, v).map_err(err)?, &semantic)?;
    expect_eq("raw", &dnf_models(&update_raw(&psi, &mu), v).map_err(err)?, &semantic)?;
    let kernel = UpdateKernel::update(&mu, v).map_err(err)?;
    expect_eq("kernel", &kernel.image_of(&models(&psi, v)?), &semantic)
}

/// PMA lies within the standard semantics and never changes a `ψ` that
/// already entails `μ`.
pub fn pma_reference_properties(gen: &mut FormulaGen, v: &Vocabulary) -> Outcome {
    let psi = gen.formula();
    let mu = gen.formula();
    let pma = update_pma(&psi, &mu, v).map_err(err)?;
    expect_subset("pma within ss", &pma, &update_ss_models(&psi, &mu, v).map_err(err)?)?;
    let weaker = psi.clone().or(mu);
    expect_eq("pma U2", &update_pma(&psi, &weaker, v).map_err(err)?, &models(&psi, v)?)
}

/// Every randomized identity with its name, in a fixed order.
pub const PROPERTIES: &[(&str, Check)] = &[
    ("ul-order-invariance", ul_order_invariance),
    ("ul-normal-form-invariance", ul_normal_form_invariance),
    ("ul-soundness", ul_soundness),
    ("ul-empty-iff-unsat", ul_empty_iff_unsat),
    ("update-keeps-conjunction", update_keeps_conjunction),
    ("update-erase-identities", update_erase_identities),
    ("el-equivalences", el_equivalences),
    ("revision-matches-satoh", revision_matches_satoh),
    (
        "update-distributes-over-disjunction",
        update_distributes_over_disjunction,
    ),
    ("pi-update-syntax-independent", pi_update_syntax_independent),
    ("ss-update-matches-reference", ss_update_matches_reference),
    ("forget-routes-agree", forget_routes_agree),
    ("equivalent-substitution", equivalent_substitution),
    ("trivial-update", trivial_update),
    ("eliminant-gives-standard-semantics", eliminant_gives_standard_semantics),
    ("eliminant-matches-substitution", eliminant_matches_substitution),
    ("eliminant-term-image", eliminant_term_image),
    ("syntactic-matches-semantic", syntactic_matches_semantic),
    ("pma-reference-properties", pma_reference_properties),
];

/// `UL(w, {a ∨ (b ∧ c)})` differs from `UL` of its cnf at the all-false model.
pub fn cnf_counterexample_fires() -> Outcome {
    let v = Vocabulary::from_names(&["a", "b", "c"]).unwrap();
    let f = Formula::parse("a | (b & c)").unwrap();
    let w = Interpretation::new(v.clone(), 0);
    let direct = ul(&w, std::slice::from_ref(&f)).map_err(err)?;
    let via_cnf = ul(&w, &[f.to_cnf().to_formula()]).map_err(err)?;
    if direct != via_cnf {
        Ok(())
    } else {
        Err(format!("cnf gave the same image {:?}", direct.lines()))
    }
}
