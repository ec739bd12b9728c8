use beliefkit_core::semantics::{
    diff, enumerate_models, equivalent_in, prime_implicant_disjunction, prime_implicants, restrict,
};
use beliefkit_core::{Atom, AtomSet, Formula, Interpretation, Literal, Term, Vocabulary};
use proptest::prelude::*;

const NAMES: [&str; 5] = ["a", "b", "c", "d", "e"];

fn vocab() -> Vocabulary {
    Vocabulary::from_names(&NAMES).unwrap()
}

fn leaf() -> impl Strategy<Value = Formula> {
    prop_oneof![
        8 => proptest::sample::select(&NAMES[..]).prop_map(Formula::var),
        1 => any::<bool>().prop_map(Formula::Const),
    ]
}

fn formula() -> impl Strategy<Value = Formula> {
    leaf().prop_recursive(5, 48, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::negate),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| l.and(r)),
            (inner.clone(), inner).prop_map(|(l, r)| l.or(r)),
        ]
    })
}

fn interpretation() -> impl Strategy<Value = Interpretation> {
    (0u64..32).prop_map(|bits| Interpretation::new(vocab(), bits))
}

fn reference_depth(f: &Formula) -> usize {
    match f {
        Formula::Const(_) | Formula::Var(_) => 0,
        Formula::Not(g) => 1 + reference_depth(g),
        Formula::And(l, r) | Formula::Or(l, r) => 1 + reference_depth(l).max(reference_depth(r)),
    }
}

fn reference_atoms(f: &Formula, out: &mut AtomSet) {
    match f {
        Formula::Const(_) => {}
        Formula::Var(a) => {
            out.insert(a.clone());
        }
        Formula::Not(g) => reference_atoms(g, out),
        Formula::And(l, r) | Formula::Or(l, r) => {
            reference_atoms(l, out);
            reference_atoms(r, out);
        }
    }
}

/// Truth value by direct recursion, independent of the compiled evaluator.
fn eval(f: &Formula, w: &Interpretation) -> bool {
    match f {
        Formula::Const(b) => *b,
        Formula::Var(a) => w.value(a).unwrap(),
        Formula::Not(g) => !eval(g, w),
        Formula::And(l, r) => eval(l, w) && eval(r, w),
        Formula::Or(l, r) => eval(l, w) || eval(r, w),
    }
}

fn entails_term(t: &Term, f: &Formula, v: &Vocabulary) -> bool {
    v.all_interpretations()
        .filter(|w| t.iter().all(|l| w.literals().contains(l)))
        .all(|w| eval(f, &w))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn parse_render_round_trip(f in formula()) {
        let text = f.render();
        let back = Formula::parse(&text).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(back.render(), text);
    }

    #[test]
    fn normal_forms_are_equivalent(f in formula()) {
        let v = vocab();
        prop_assert!(equivalent_in(&f, &f.to_nnf(), &v).unwrap());
        prop_assert!(equivalent_in(&f, &f.to_dnf().to_formula(), &v).unwrap());
        prop_assert!(equivalent_in(&f, &f.to_cnf().to_formula(), &v).unwrap());
    }

    #[test]
    fn normal_forms_are_deterministic(f in formula()) {
        let g = Formula::parse(&f.render()).unwrap();
        prop_assert_eq!(f.to_nnf().render(), g.to_nnf().render());
        prop_assert_eq!(f.to_dnf().to_string(), g.to_dnf().to_string());
        prop_assert_eq!(f.to_cnf().to_string(), g.to_cnf().to_string());
        prop_assert!(f.to_dnf().is_canonical());
    }

    #[test]
    fn structural_recursions(f in formula(), g in formula(), i in 0usize..5) {
        prop_assert_eq!(f.depth(), reference_depth(&f));
        let mut atoms = AtomSet::new();
        reference_atoms(&f, &mut atoms);
        prop_assert_eq!(f.atoms(), atoms);
        let p = Atom::new(NAMES[i]);
        let s = f.substitute(&p, &g);
        for w in vocab().all_interpretations() {
            let mut bits = w.bits() & !(1 << i);
            if eval(&g, &w) {
                bits |= 1 << i;
            }
            let shifted = Interpretation::new(vocab(), bits);
            prop_assert_eq!(eval(&s, &w), eval(&f, &shifted));
        }
    }

    #[test]
    fn models_partition(f in formula()) {
        let v = vocab();
        let pos = enumerate_models(&f, &v).unwrap();
        let neg = enumerate_models(&f.clone().negate(), &v).unwrap();
        prop_assert!(pos.intersection(&neg).unwrap().is_empty());
        prop_assert_eq!(pos.len() + neg.len(), 32);
        for w in v.all_interpretations() {
            prop_assert_eq!(pos.contains(&w), eval(&f, &w));
        }
    }

    #[test]
    fn restrict_drops_mentioned_atoms(w in interpretation(), f in formula()) {
        let g: Vec<Literal> = f.to_dnf().terms().iter().flat_map(|t| t.iter().cloned()).collect();
        let mentioned: AtomSet = g.iter().filter_map(Literal::atom).cloned().collect();
        for l in restrict(&w, &g) {
            prop_assert!(l.atom().is_some_and(|a| !mentioned.contains(a)));
        }
    }

    #[test]
    fn diff_is_a_metric_skeleton(w1 in interpretation(), w2 in interpretation()) {
        let d = diff(&w1, &w2).unwrap();
        prop_assert_eq!(&d, &diff(&w2, &w1).unwrap());
        prop_assert_eq!(d.is_empty(), w1 == w2);
        prop_assert_eq!(d.len(), (w1.bits() ^ w2.bits()).count_ones() as usize);
    }

    #[test]
    fn prime_implicants_are_prime_and_cover(f in formula()) {
        let v = vocab();
        let pis = prime_implicants(&f).unwrap();
        for t in &pis {
            if t.contains(&Literal::Top) {
                // The limiting case: a tautology has the single implicant {TOP}.
                prop_assert_eq!(pis.len(), 1);
                prop_assert_eq!(t.len(), 1);
                prop_assert!(entails_term(&Term::top(), &f, &v));
                continue;
            }
            prop_assert!(t.is_consistent());
            prop_assert!(entails_term(t, &f, &v));
            for l in t.iter() {
                let smaller: Term = t.iter().filter(|m| *m != l).cloned().collect();
                prop_assert!(!entails_term(&smaller, &f, &v), "{} is not prime", t);
            }
        }
        let cover = prime_implicant_disjunction(&f, 24).unwrap();
        prop_assert!(equivalent_in(&cover, &f, &v).unwrap());
    }
}

#[test]
fn unsatisfiable_formula_has_no_prime_implicants() {
    let f = Formula::parse("a & !a").unwrap();
    assert!(prime_implicants(&f).unwrap().is_empty());
    assert_eq!(prime_implicant_disjunction(&f, 24).unwrap(), Formula::bottom());
}
