//! Acceptance suite. Each criterion runs in isolation and prints one
//! `PASS` or `FAIL` line with its wall time; the process fails if any
//! criterion fails or runs over its time limit.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use indepkit_core::atom::{Atom, ConstraintSet, Modality};
use indepkit_core::check::{
    check, check_cia_fast, check_cia_oracle, check_pia, check_pia_oracle, check_pia_unary, pia_counting_bound, Strategy,
};
use indepkit_core::constructions::{
    cnf_to_relation, example_formula, exchange_failure_grounding_ab, exchange_failure_grounding_abc,
    exchange_failure_relation, parity_relation, pia_separating_family, sat_via_pia, separating_family_rows, CnfFormula,
};
use indepkit_core::implication::{
    derives, implies_cia, implies_mixed_disjoint, implies_pia_star, search_counterexample, Bounds, RuleSystem,
};
use indepkit_core::parse::{parse_atom, parse_constraints_strict};
use indepkit_core::relation::{AttrSet, Relation, RelationBuilder, Schema, Tuple, Vocabulary};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const ORACLE: Strategy = Strategy::Oracle { bound: 1 << 20 };

fn household() -> Relation {
    let mut b = RelationBuilder::new(["a", "e", "s", "r", "g"]).unwrap();
    b.row_marked(&["25", "bachelor", "not-in-family", "white", "male"], 1)
        .unwrap();
    b.row_marked(&["25", "*", "in-family", "white", "male"], 1).unwrap();
    b.row_marked(&["27", "*", "not-in-family", "white", "female"], 1)
        .unwrap();
    b.row_marked(&["*", "graduate", "in-family", "*", "female"], 1).unwrap();
    b.build().unwrap()
}

fn holds(r: &Relation, atom: &str) -> bool {
    let a = parse_atom(atom, r.schema().vocabulary()).unwrap();
    let fast = check(r, &a, Strategy::Fast).unwrap().verdict;
    let slow = check(r, &a, ORACLE).unwrap().verdict;
    assert_eq!(fast, slow, "fast and oracle checkers disagree on {atom}");
    fast
}

fn sigma(vocab: &Vocabulary, text: &str) -> ConstraintSet {
    parse_constraints_strict(text, vocab).unwrap()
}

fn running_example() {
    let r = household();
    assert!(holds(&r, "s _||_ g"));
    assert!(holds(&r, "s _||_c g"));
    assert!(holds(&r, "s _||_p g"));
    assert!(!holds(&r, "e _||_c s"));
    assert!(!holds(&r, "r _||_c r"));
    assert!(holds(&r, "e _||_p s"));
    assert!(holds(&r, "r _||_p r"));
}

fn implication_triple() {
    let v = Vocabulary::new(["e", "s", "g"]).unwrap();
    let goal_c = parse_atom("e _||_c s,g", &v).unwrap();
    assert!(implies_cia(&sigma(&v, "e _||_c s\ne,s _||_c g"), &goal_c).unwrap());

    let s_p = sigma(&v, "e _||_p s\ne,s _||_p g");
    let goal_p = parse_atom("e _||_p s,g", &v).unwrap();
    assert!(!implies_pia_star(&s_p, &goal_p).unwrap());
    let r = search_counterexample(&s_p, &goal_p, Bounds::new(3, 8, 2))
        .unwrap()
        .expect("a counterexample within bounds");
    for a in s_p.iter() {
        assert!(check(&r, a, Strategy::Fast).unwrap().verdict);
        assert!(check(&r, a, ORACLE).unwrap().verdict);
        assert!(common::brute(&r, a));
    }
    assert!(!check(&r, &goal_p, Strategy::Fast).unwrap().verdict);
    assert!(!common::brute(&r, &goal_p));

    let mixed = sigma(&v, "e _||_c s\ne,s _||_p g");
    let d = derives(&mixed, &goal_p, RuleSystem::mixed())
        .unwrap()
        .expect("derivation");
    d.verify(&mixed, RuleSystem::mixed()).unwrap();
    assert!(implies_mixed_disjoint(&mixed, &goal_p).unwrap().holds);
}

fn exchange_fixture() {
    let r = exchange_failure_relation();
    let schema = r.schema().clone();
    let t = |rows: &[[&str; 3]]| {
        Relation::from_rows(
            schema.clone(),
            rows.iter().map(|row| {
                let cells = row
                    .iter()
                    .enumerate()
                    .map(|(a, c)| if *c == "*" { None } else { schema.value_index(a, c) })
                    .collect();
                (Tuple(cells), 1)
            }),
        )
        .unwrap()
    };
    assert_eq!(
        r,
        t(&[["0", "0", "0"], ["*", "1", "0"], ["*", "0", "1"], ["1", "1", "1"]])
    );
    let r1 = t(&[["0", "0", "0"], ["0", "1", "0"], ["1", "0", "1"], ["1", "1", "1"]]);
    let r2 = t(&[["0", "0", "0"], ["1", "1", "0"], ["0", "0", "1"], ["1", "1", "1"]]);
    assert_eq!(exchange_failure_grounding_ab(), r1);
    assert_eq!(exchange_failure_grounding_abc(), r2);
    assert!(r.is_grounded_by(&r1) && r.is_grounded_by(&r2));
    assert!(holds(&r1, "A _||_ B"));
    assert!(holds(&r2, "A,B _||_ C"));

    assert!(holds(&r, "A _||_p B"));
    assert!(holds(&r, "A,B _||_p C"));
    assert!(!holds(&r, "A _||_p B,C"));
    assert_eq!(r.count_groundings(), 4);
}

fn mixed_rules_incomplete() {
    let v = Vocabulary::new(["A", "B", "C"]).unwrap();
    let full = sigma(&v, "A _||_p A\nB _||_p B\nC _||_p C\nA _||_c C\nB _||_c C");
    let goal = parse_atom("A,B _||_c C", &v).unwrap();
    assert!(derives(&full, &goal, RuleSystem::mixed()).unwrap().is_none());

    let certain = sigma(&v, "A _||_c C\nB _||_c C");
    let r = search_counterexample(&certain, &goal, Bounds::default())
        .unwrap()
        .expect("a counterexample");
    assert_eq!(r.total_multiplicity(), 4);
    for a in certain.iter() {
        assert!(common::brute(&r, a));
    }
    assert!(!common::brute(&r, &goal));
}

fn oracle_equivalence() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0005);
    let mut unary = 0;
    for _ in 0..600 {
        let r = common::random_relation(&mut rng, 4, 5, 2, 3, 1 << 16);
        let n = r.schema().arity();
        for _ in 0..4 {
            let x = common::random_subset(&mut rng, n, 0.5);
            let y = common::random_subset(&mut rng, n, 0.5);
            let cia = check_cia_fast(&r, x, y).unwrap();
            assert_eq!(cia, check_cia_oracle(&r, x, y).unwrap(), "CIA {x:?} {y:?} on {r:?}");
            assert_eq!(cia, common::brute_cia(&r, x, y));
            let pia = check_pia(&r, x, y).unwrap().verdict;
            assert_eq!(
                pia,
                check_pia_oracle(&r, x, y).unwrap().verdict,
                "PIA {x:?} {y:?} on {r:?}"
            );
            assert_eq!(pia, common::brute_pia(&r, x, y));
        }
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        let (x, y) = (AttrSet::singleton(a), AttrSet::singleton(b));
        let flow = check_pia_unary(&r, x, y).unwrap().verdict;
        assert_eq!(
            flow,
            check_pia_oracle(&r, x, y).unwrap().verdict,
            "unary {a} {b} on {r:?}"
        );
        unary += 1;
    }
    assert!(unary >= 500);
}

fn parse_reduction_row(schema: &Schema, v: &str, p: &str, c: &str) -> Tuple {
    let cell = |a: usize, s: &str| {
        if s == "*" {
            None
        } else {
            Some(schema.value_index(a, s).unwrap_or_else(|| panic!("{s} not in domain")))
        }
    };
    Tuple(vec![cell(0, v), cell(1, p), cell(2, c)])
}

fn sat_round_trip() {
    let (r, atom) = cnf_to_relation(&example_formula()).unwrap();
    assert_eq!(r.total_multiplicity(), 36);
    let expected: &[(&str, &str, &str, u64)] = &[
        ("*", "+", "p1", 1),
        ("*", "-", "p1", 1),
        ("p2", "*", "p1", 1),
        ("~p2", "*", "p1", 1),
        ("p3", "*", "p1", 1),
        ("~p3", "*", "p1", 1),
        ("p1", "*", "p2", 1),
        ("~p1", "*", "p2", 1),
        ("*", "+", "p2", 1),
        ("*", "-", "p2", 1),
        ("p3", "*", "p2", 1),
        ("~p3", "*", "p2", 1),
        ("p1", "*", "p3", 1),
        ("~p1", "*", "p3", 1),
        ("p2", "*", "p3", 1),
        ("~p2", "*", "p3", 1),
        ("*", "+", "p3", 1),
        ("*", "-", "p3", 1),
        ("p1", "*", "c1", 1),
        ("~p1", "*", "c1", 1),
        ("~p2", "*", "c1", 1),
        ("~p3", "*", "c1", 1),
        ("*", "*", "c1", 1),
        ("*", "+", "c1", 1),
        ("~p1", "*", "c2", 1),
        ("p2", "*", "c2", 1),
        ("~p3", "*", "c2", 1),
        ("*", "*", "c2", 2),
        ("*", "+", "c2", 1),
        ("p1", "*", "c3", 1),
        ("~p1", "*", "c3", 1),
        ("p2", "*", "c3", 1),
        ("~p2", "*", "c3", 1),
        ("p3", "*", "c3", 1),
        ("*", "+", "c3", 1),
    ];
    let schema = r.schema().clone();
    let table = Relation::from_rows(
        schema.clone(),
        expected
            .iter()
            .map(|(v, p, c, m)| (parse_reduction_row(&schema, v, p, c), *m)),
    )
    .unwrap();
    assert_eq!(r, table);
    assert!(check_pia(&r, atom.lhs, atom.rhs).unwrap().verdict);
    assert!(sat_via_pia(&example_formula()).unwrap());

    let mut rng = StdRng::seed_from_u64(0x5eed_0006);
    let (mut sat, mut unsat) = (0, 0);
    for _ in 0..100 {
        let (n, clauses) = common::random_cnf(&mut rng, 4, 4, 3);
        let expect = common::brute_sat(n, &clauses);
        let phi = CnfFormula::new(n, clauses).unwrap();
        assert_eq!(sat_via_pia(&phi).unwrap(), expect, "{phi}");
        if expect {
            sat += 1;
        } else {
            unsat += 1;
        }
    }
    println!("    random formulas: {sat} satisfiable, {unsat} unsatisfiable");
}

/// Partitions `(V, W)` of `X ∪ Y` with `|V| ≥ |W| ≥ 1` and `V ∉ {X, Y}`.
fn family_atoms(k: usize, m: usize) -> Vec<(AttrSet, AttrSet)> {
    let x = AttrSet::prefix(k);
    let xy = AttrSet::prefix(k + m);
    let y = xy - x;
    xy.subsets()
        .filter(|&v| {
            let w = xy - v;
            !w.is_empty() && v.len() >= w.len() && v != x && v != y && w != x && w != y
        })
        .map(|v| (v, xy - v))
        .collect()
}

fn separating_family() {
    for (k, m) in [(2, 1), (2, 2), (3, 2)] {
        let start = Instant::now();
        let r = pia_separating_family(k, m, 1).unwrap();
        assert_eq!(r.total_multiplicity(), separating_family_rows(k, m));
        let expect = if m == 1 {
            (1 << (k + 1)) - 1
        } else {
            (1 << k) * ((1 << m) - 1) - 1
        };
        assert_eq!(r.total_multiplicity(), expect);
        let x = AttrSet::prefix(k);
        let y = AttrSet::prefix(k + m) - x;
        assert!(!pia_counting_bound(&r, x, y).unwrap());
        assert!(!check_pia(&r, x, y).unwrap().verdict);
        let atoms = family_atoms(k, m);
        assert!(!atoms.is_empty());
        println!(
            "    k = {k}, m = {m}: {} rows, {} satisfied atoms checked",
            r.total_multiplicity(),
            atoms.len()
        );
        for (v, w) in atoms {
            assert!(
                check_pia(&r, v, w).unwrap().verdict,
                "k = {k}, m = {m}: {v:?} _||_p {w:?}"
            );
        }
        if (k, m) == (2, 2) {
            let sizes: Vec<usize> = family_atoms(k, m).iter().map(|(v, _)| v.len()).collect();
            assert!(sizes.contains(&(k + 1)) && sizes.contains(&k));
        }
        assert!(start.elapsed() < Duration::from_secs(60), "k = {k}, m = {m} too slow");
    }
}

fn parity() {
    let v = Vocabulary::new(["X", "Y", "Z"]).unwrap();
    let (x, y, z) = (AttrSet::singleton(0), AttrSet::singleton(1), AttrSet::singleton(2));
    let r = parity_relation(&v, x, y, z, 0).unwrap();
    assert!(!check_cia_oracle(&r, x, y).unwrap());
    assert!(!common::brute_cia(&r, x, y));
    assert!(!check_cia_fast(&r, x, y).unwrap());
    for (a, b) in [(x, y), (y, x)] {
        assert!(check_pia_oracle(&r, a, b).unwrap().verdict);
        assert!(common::brute_pia(&r, a, b));
    }
}

fn decider_cross_validation() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0009);
    let (mut certain_true, mut star_true, mut mixed_true) = (0, 0, 0);
    for round in 0..320 {
        let n = rng.gen_range(2..=5);
        let size = rng.gen_range(1..=4);

        let s = common::random_set(&mut rng, n, size, |g| {
            common::random_atom(g, n, Modality::Certain, false)
        });
        let goal = common::random_atom(&mut rng, n, Modality::Certain, false);
        let a = implies_cia(&s, &goal).unwrap();
        let b = derives(&s, &goal, RuleSystem::i_c()).unwrap().is_some();
        assert_eq!(a, b, "round {round}: certain");
        certain_true += a as usize;

        let s = common::random_set(&mut rng, n, size, |g| {
            common::random_atom(g, n, Modality::Possible, false)
        });
        let goal = loop {
            let g = common::random_atom(&mut rng, n, Modality::Possible, false);
            if g.is_pia_star().unwrap() {
                break g;
            }
        };
        let a = implies_pia_star(&s, &goal).unwrap();
        let b = derives(&s, &goal, RuleSystem::i_p()).unwrap().is_some();
        assert_eq!(a, b, "round {round}: possible");
        star_true += a as usize;

        let s = common::random_set(&mut rng, n, size, |g| {
            let m = if g.gen_bool(0.5) {
                Modality::Certain
            } else {
                Modality::Possible
            };
            common::random_atom(g, n, m, true)
        });
        let goal = common::random_atom(&mut rng, n, Modality::Certain, true);
        let a = implies_mixed_disjoint(&s, &goal).unwrap().holds;
        let b = derives(&s, &goal, RuleSystem::mixed_disjoint()).unwrap().is_some();
        assert_eq!(a, b, "round {round}: mixed");
        mixed_true += a as usize;
    }
    println!("    implied: certain {certain_true}, possible {star_true}, mixed {mixed_true} of 320 each");
}

fn structural_properties() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0010);
    let mut groundings = 0u128;
    for _ in 0..1200 {
        let r = common::random_relation(&mut rng, 4, 5, 3, 3, 1 << 12);
        let n = r.schema().arity();
        let x = common::random_subset(&mut rng, n, 0.5);
        let y = common::random_subset(&mut rng, n, 0.5);
        let z = common::random_subset(&mut rng, n, 0.5);
        let ia = check(&r, &Atom::plain(x, y), Strategy::Fast).unwrap().verdict;
        let cia = check_cia_fast(&r, x, y).unwrap();
        let pia = check_pia(&r, x, y).unwrap().verdict;

        // certain implies possible; on complete data the three agree
        assert!(!cia || pia);
        assert!(!ia || cia);
        if r.is_complete() {
            assert_eq!(ia, cia);
            assert_eq!(ia, pia);
        }

        assert_eq!(cia, check_cia_fast(&r, y, x).unwrap());
        assert_eq!(pia, check_pia(&r, y, x).unwrap().verdict);

        let yz = y | z;
        if check_cia_fast(&r, x, yz).unwrap() {
            assert!(cia);
        }
        if check_pia(&r, x, yz).unwrap().verdict {
            assert!(pia);
        }

        let mut expect: u128 = 1;
        for (t, m) in r.rows() {
            for a in 0..n {
                if t.get(a).is_none() {
                    expect *= (r.schema().domain_size(a) as u128).pow(*m as u32);
                }
            }
        }
        assert_eq!(r.count_groundings(), expect);
        let mut counted = 0u128;
        common::any_grounding(&r, |_| {
            counted += 1;
            false
        });
        assert_eq!(counted, expect);

        let p = r.project(x).unwrap();
        assert_eq!(p.total_multiplicity(), r.total_multiplicity());
        groundings += counted;
    }
    println!("    1200 relations, {groundings} groundings enumerated");
}

struct Criterion {
    name: &'static str,
    limit: Duration,
    run: fn(),
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            name: "running example checks",
            limit: Duration::from_secs(1),
            run: running_example,
        },
        Criterion {
            name: "implication triple",
            limit: Duration::from_secs(5),
            run: implication_triple,
        },
        Criterion {
            name: "exchange failure fixture",
            limit: Duration::from_secs(1),
            run: exchange_fixture,
        },
        Criterion {
            name: "incomplete mixed rules and 4-row witness",
            limit: Duration::from_secs(10),
            run: mixed_rules_incomplete,
        },
        Criterion {
            name: "fast checkers agree with oracles",
            limit: Duration::from_secs(180),
            run: oracle_equivalence,
        },
        Criterion {
            name: "SAT round trip",
            limit: Duration::from_secs(120),
            run: sat_round_trip,
        },
        Criterion {
            name: "separating family",
            limit: Duration::from_secs(180),
            run: separating_family,
        },
        Criterion {
            name: "parity construction",
            limit: Duration::from_secs(10),
            run: parity,
        },
        Criterion {
            name: "decider cross-validation",
            limit: Duration::from_secs(180),
            run: decider_cross_validation,
        },
        Criterion {
            name: "structural properties",
            limit: Duration::from_secs(120),
            run: structural_properties,
        },
    ];
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(c.run));
        let took = start.elapsed();
        let status = match outcome {
            Ok(()) if took <= c.limit => "PASS",
            Ok(()) => "FAIL (over time limit)",
            Err(_) => "FAIL",
        };
        if status != "PASS" {
            failed += 1;
        }
        println!(
            "criterion {:>2} {:<44} {status}  {:.3}s (limit {}s)",
            i + 1,
            c.name,
            took.as_secs_f64(),
            c.limit.as_secs()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
