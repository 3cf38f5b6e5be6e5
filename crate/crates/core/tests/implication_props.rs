mod common;

use common::strategies::{atom_of, subset};
use indepkit_core::atom::{Atom, ConstraintSet, Modality};
use indepkit_core::implication::{
    closure, constants_of, derives, implies_cia, implies_ia, implies_pia_star, search_counterexample, Bounds,
    RuleSystem,
};
use indepkit_core::AttrSet;
use proptest::prelude::*;

fn set(n: usize, atoms: Vec<Atom>) -> ConstraintSet {
    ConstraintSet::from_atoms(common::vocab(n), atoms).unwrap()
}

fn atoms(n: usize, m: Modality, max: usize) -> impl Strategy<Value = Vec<Atom>> {
    proptest::collection::vec(atom_of(n, m), 0..=max)
}

fn mixed_atoms(n: usize, max: usize) -> impl Strategy<Value = Vec<Atom>> {
    let one = prop_oneof![atom_of(n, Modality::Certain), atom_of(n, Modality::Possible)];
    proptest::collection::vec(one, 0..=max)
}

proptest! {
    #![proptest_config(common::config(200))]

    #[test]
    fn derivations_verify_and_are_sound(
        (sigma, goal) in mixed_atoms(3, 3).prop_flat_map(|s| {
            (Just(s), prop_oneof![atom_of(3, Modality::Certain), atom_of(3, Modality::Possible)])
        })
    ) {
        let sigma = set(3, sigma);
        let system = RuleSystem::mixed();
        if let Some(d) = derives(&sigma, &goal, system).unwrap() {
            prop_assert_eq!(d.goal(), Some(&goal));
            prop_assert!(d.verify(&sigma, system).is_ok());
            let found = search_counterexample(&sigma, &goal, Bounds::new(3, 3, 2)).unwrap();
            prop_assert!(found.is_none(), "derived atom has a counterexample: {:?}", found);
        }
    }

    #[test]
    fn plain_derivations_are_sound((sigma, goal) in (atoms(4, Modality::Plain, 3), atom_of(4, Modality::Plain))) {
        let sigma = set(4, sigma);
        if implies_ia(&sigma, &goal).unwrap() {
            prop_assert!(search_counterexample(&sigma, &goal, Bounds::new(4, 6, 2)).unwrap().is_none());
        }
    }

    #[test]
    fn certain_non_implication_has_small_witness(
        (sigma, goal) in (atoms(5, Modality::Certain, 3), atom_of(5, Modality::Certain))
    ) {
        let sigma = set(5, sigma);
        if !implies_cia(&sigma, &goal).unwrap() {
            let w = search_counterexample(&sigma, &goal, Bounds::new(5, 16, 2)).unwrap();
            let w = w.expect("non-implied certain atom has a witness within bounds");
            for a in sigma.iter() {
                prop_assert!(common::brute(&w, a));
            }
            prop_assert!(!common::brute(&w, &goal));
        }
    }

    #[test]
    fn closure_is_monotone_and_idempotent(
        (small, extra) in (atoms(4, Modality::Possible, 3), atoms(4, Modality::Possible, 2))
    ) {
        let system = RuleSystem::i_p();
        let a = set(4, small.clone());
        let mut all = small;
        all.extend(extra);
        let b = set(4, all);
        let ca = closure(&a, system).unwrap();
        let cb = closure(&b, system).unwrap();
        for atom in ca.atoms() {
            if atom.attributes().is_subset(b.attributes()) {
                prop_assert!(cb.contains(atom));
            }
        }
        let again = closure(&ca.to_constraint_set(a.vocabulary()).unwrap(), system).unwrap();
        prop_assert_eq!(again.len(), ca.len());
        for atom in again.atoms() {
            prop_assert!(ca.contains(atom));
        }
    }

    #[test]
    fn pia_star_matches_possible_rules(
        (sigma, goal) in (atoms(5, Modality::Possible, 4), atom_of(5, Modality::Possible))
    ) {
        prop_assume!(goal.is_pia_star().unwrap());
        let sigma = set(5, sigma);
        let direct = implies_pia_star(&sigma, &goal).unwrap();
        let derived = derives(&sigma, &goal, RuleSystem::i_p()).unwrap().is_some();
        prop_assert_eq!(direct, derived);
    }

    #[test]
    fn constants_match_closure(sigma in atoms(5, Modality::Possible, 4)) {
        let sigma = set(5, sigma);
        let k = constants_of(&sigma);
        for a in sigma.attributes().iter() {
            let single = AttrSet::singleton(a);
            let derived = derives(&sigma, &Atom::possible(single, single), RuleSystem::i_p()).unwrap().is_some();
            prop_assert_eq!(k.contains(a), derived, "attribute {}", a);
        }
    }

    #[test]
    fn closure_of_empty_set_is_trivial(n in 1usize..5, x in subset(4)) {
        let sigma = set(n, Vec::new());
        let c = closure(&sigma, RuleSystem::i()).unwrap();
        for atom in c.atoms() {
            prop_assert!(atom.lhs.is_empty() || atom.rhs.is_empty());
        }
        let _ = x;
    }
}
