mod common;

use common::{cnf_counterexample_fires, run, PROPERTIES};

const INSTANCES: usize = 300;

fn check(name: &str) {
    let (_, f) = PROPERTIES.iter().find(|(n, _)| *n == name).unwrap();
    if let Err(e) = run(*f, 0x5eed, INSTANCES) {
        panic!("{name}: {e}");
    }
}

macro_rules! identity_tests {
    ($($test:ident => $name:literal,)*) => {
        $(#[test] fn $test() { check($name); })*

        #[test]
        fn every_property_has_a_test() {
            let named = [$($name),*];
            for (name, _) in PROPERTIES {
                assert!(named.contains(name), "{name} has no test");
            }
        }
    };
}

identity_tests! {
    ul_order_invariance => "ul-order-invariance",
    ul_normal_form_invariance => "ul-normal-form-invariance",
    ul_soundness => "ul-soundness",
    ul_empty_iff_unsat => "ul-empty-iff-unsat",
    update_keeps_conjunction => "update-keeps-conjunction",
    update_erase_identities => "update-erase-identities",
    el_equivalences => "el-equivalences",
    revision_matches_satoh => "revision-matches-satoh",
    update_distributes_over_disjunction => "update-distributes-over-disjunction",
    pi_update_syntax_independent => "pi-update-syntax-independent",
    ss_update_matches_reference => "ss-update-matches-reference",
    forget_routes_agree => "forget-routes-agree",
    equivalent_substitution => "equivalent-substitution",
    trivial_update => "trivial-update",
    eliminant_gives_standard_semantics => "eliminant-gives-standard-semantics",
    eliminant_matches_substitution => "eliminant-matches-substitution",
    eliminant_term_image => "eliminant-term-image",
    syntactic_matches_semantic => "syntactic-matches-semantic",
    pma_reference_properties => "pma-reference-properties",
}

#[test]
fn cnf_is_not_a_safe_rewrite() {
    cnf_counterexample_fires().unwrap();
}
