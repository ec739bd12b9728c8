use beliefkit_core::blowup::{cnf_satisfiable, gen_blowup};
use beliefkit_core::change::update_c;
use beliefkit_core::semantics::holds_dnf;
use beliefkit_core::syntactic::update_syntactic;

#[test]
fn omega_membership_matches_satisfiability_at_n2() {
    let inst = gen_blowup(2).unwrap();
    let symbolic = update_syntactic(&inst.psi, &inst.mu);
    let semantic = update_c(&inst.psi, &inst.mu, &inst.vocab).unwrap().models;
    let mut seen = [false; 2];
    for seed in 0..40 {
        let beta = inst.random_beta(seed, 1 + seed as usize % 8);
        let sat = cnf_satisfiable(2, &beta);
        let omega = inst.omega(&beta).unwrap();
        assert_eq!(holds_dnf(&omega, &symbolic).unwrap(), sat, "seed {seed}");
        assert_eq!(semantic.contains(&omega), sat, "seed {seed}");
        seen[sat as usize] = true;
    }
    assert!(seen[0] && seen[1], "both satisfiable and unsatisfiable cases drawn");
}

#[test]
fn family_sizes_grow() {
    let sizes: Vec<usize> = (1..=4).map(|n| gen_blowup(n).unwrap().psi.node_count()).collect();
    assert!(sizes.windows(2).all(|w| w[0] < w[1]), "{sizes:?}");
    let mus: Vec<usize> = (1..=4).map(|n| gen_blowup(n).unwrap().mu.node_count()).collect();
    assert_eq!(mus, [5, 11, 17, 23]);
}
