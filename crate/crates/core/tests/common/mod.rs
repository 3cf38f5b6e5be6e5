//! Shared generators and brute-force reference implementations.
//!
//! Nothing here calls the library's checkers: groundings are enumerated
//! directly from the rows and the domain sizes.

#![allow(dead_code)]

use std::collections::BTreeSet;

use indepkit_core::atom::{Atom, ConstraintSet, Modality};
use indepkit_core::relation::{AttrSet, Cell, Relation, Schema, Tuple, Vocabulary};
use rand::rngs::StdRng;
use rand::Rng;

pub const NAMES: [&str; 6] = ["A", "B", "C", "D", "E", "F"];

/// Random relation with `1..=max_attrs` attributes, up to `max_distinct`
/// distinct tuples of multiplicity `1..=max_mult`, and `2..=max_dom` values
/// per attribute, redrawn until it has at most `max_groundings` groundings.
pub fn random_relation(
    rng: &mut StdRng,
    max_attrs: usize,
    max_distinct: usize,
    max_mult: u64,
    max_dom: usize,
    max_groundings: u128,
) -> Relation {
    loop {
        let n = rng.gen_range(1..=max_attrs);
        let d = rng.gen_range(2..=max_dom);
        let schema = Schema::uniform(NAMES[..n].iter().copied(), d).unwrap();
        let null_rate = rng.gen_range(0.0..0.6);
        let rows: Vec<(Tuple, u64)> = (0..rng.gen_range(1..=max_distinct))
            .map(|_| {
                let cells = (0..n)
                    .map(|_| {
                        if rng.gen_bool(null_rate) {
                            None
                        } else {
                            Some(rng.gen_range(0..d as u32))
                        }
                    })
                    .collect();
                (Tuple(cells), rng.gen_range(1..=max_mult))
            })
            .collect();
        let r = Relation::from_rows(schema, rows).unwrap();
        if r.count_groundings() <= max_groundings {
            return r;
        }
    }
}

pub fn random_subset(rng: &mut StdRng, n: usize, p: f64) -> AttrSet {
    AttrSet::from_indices((0..n).filter(|_| rng.gen_bool(p)))
}

pub fn random_nonempty_subset(rng: &mut StdRng, n: usize) -> AttrSet {
    loop {
        let s = random_subset(rng, n, 0.4);
        if !s.is_empty() {
            return s;
        }
    }
}

fn indices(s: AttrSet) -> Vec<usize> {
    s.iter().collect()
}

/// Every copy of every tuple as a separate row.
fn copies(r: &Relation) -> Vec<Vec<Cell>> {
    r.rows()
        .iter()
        .flat_map(|(t, m)| std::iter::repeat_n(t.cells().to_vec(), *m as usize))
        .collect()
}

/// Calls `f` on every grounding until it returns `true`; reports whether it did.
pub fn any_grounding(r: &Relation, mut f: impl FnMut(&[Vec<u32>]) -> bool) -> bool {
    let rows = copies(r);
    let holes: Vec<(usize, usize, u32)> = rows
        .iter()
        .enumerate()
        .flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, c)| c.is_none())
                .map(move |(a, _)| (i, a))
                .collect::<Vec<_>>()
        })
        .map(|(i, a)| (i, a, r.schema().domain_size(a) as u32))
        .collect();
    let mut ground: Vec<Vec<u32>> = rows
        .iter()
        .map(|row| row.iter().map(|c| c.unwrap_or(0)).collect())
        .collect();
    let mut digits = vec![0u32; holes.len()];
    loop {
        for (k, &(i, a, _)) in holes.iter().enumerate() {
            ground[i][a] = digits[k];
        }
        if f(&ground) {
            return true;
        }
        let mut k = 0;
        loop {
            if k == holes.len() {
                return false;
            }
            digits[k] += 1;
            if digits[k] < holes[k].2 {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

/// `X ⊥ Y` on complete rows: the distinct `XY` values form the product of
/// the distinct `X` and `Y` values.
pub fn ia_rows(rows: &[Vec<u32>], x: AttrSet, y: AttrSet) -> bool {
    let (xi, yi) = (indices(x), indices(y));
    let proj = |row: &Vec<u32>, ix: &[usize]| ix.iter().map(|&a| row[a]).collect::<Vec<u32>>();
    let xs: BTreeSet<Vec<u32>> = rows.iter().map(|r| proj(r, &xi)).collect();
    let ys: BTreeSet<Vec<u32>> = rows.iter().map(|r| proj(r, &yi)).collect();
    let xys: BTreeSet<(Vec<u32>, Vec<u32>)> = rows.iter().map(|r| (proj(r, &xi), proj(r, &yi))).collect();
    xys.len() == xs.len() * ys.len()
}

/// Plain independence: the `XY` columns are complete and independent.
pub fn brute_ia(r: &Relation, x: AttrSet, y: AttrSet) -> bool {
    let xy = x | y;
    let rows = copies(r);
    if rows.iter().any(|row| xy.iter().any(|a| row[a].is_none())) {
        return false;
    }
    let ground: Vec<Vec<u32>> = rows
        .iter()
        .map(|row| row.iter().map(|c| c.unwrap_or(u32::MAX)).collect())
        .collect();
    ia_rows(&ground, x, y)
}

pub fn brute_pia(r: &Relation, x: AttrSet, y: AttrSet) -> bool {
    any_grounding(r, |g| ia_rows(g, x, y))
}

pub fn brute_cia(r: &Relation, x: AttrSet, y: AttrSet) -> bool {
    !any_grounding(r, |g| !ia_rows(g, x, y))
}

pub fn brute(r: &Relation, atom: &Atom) -> bool {
    match atom.modality {
        Modality::Plain => brute_ia(r, atom.lhs, atom.rhs),
        Modality::Possible => brute_pia(r, atom.lhs, atom.rhs),
        Modality::Certain => brute_cia(r, atom.lhs, atom.rhs),
    }
}

/// Random CNF over `1..=max_vars` variables with `0..=max_clauses` clauses
/// of width `1..=max_width`.
pub fn random_cnf(rng: &mut StdRng, max_vars: u32, max_clauses: usize, max_width: usize) -> (u32, Vec<Vec<i32>>) {
    let n = rng.gen_range(1..=max_vars);
    let clauses = (0..rng.gen_range(0..=max_clauses))
        .map(|_| {
            (0..rng.gen_range(1..=max_width))
                .map(|_| {
                    let v = rng.gen_range(1..=n) as i32;
                    if rng.gen_bool(0.5) {
                        v
                    } else {
                        -v
                    }
                })
                .collect()
        })
        .collect();
    (n, clauses)
}

pub fn brute_sat(n: u32, clauses: &[Vec<i32>]) -> bool {
    (0..1u32 << n).any(|s| {
        clauses
            .iter()
            .all(|c| c.iter().any(|&l| ((s >> (l.unsigned_abs() - 1)) & 1 == 1) == (l > 0)))
    })
}

pub fn vocab(n: usize) -> Vocabulary {
    Vocabulary::new(NAMES[..n].iter().copied()).unwrap()
}

/// Random atom of modality `m` over `n` attributes; `disjoint` forces
/// disjoint sides.
pub fn random_atom(rng: &mut StdRng, n: usize, m: Modality, disjoint: bool) -> Atom {
    let x = random_subset(rng, n, 0.4);
    let mut y = random_subset(rng, n, 0.4);
    if disjoint {
        y = y - x;
    }
    Atom::new(x, y, m)
}

pub fn random_set(rng: &mut StdRng, n: usize, size: usize, mut atom: impl FnMut(&mut StdRng) -> Atom) -> ConstraintSet {
    let atoms: Vec<Atom> = (0..size).map(|_| atom(rng)).collect();
    ConstraintSet::from_atoms(vocab(n), atoms).unwrap()
}

pub mod strategies {
    use indepkit_core::atom::{Atom, Modality};
    use indepkit_core::relation::{AttrSet, Relation, Schema, Tuple};
    use proptest::prelude::*;

    /// Relations with `1..=max_attrs` attributes over a uniform domain of
    /// `2..=max_dom` values, at most `max_rows` distinct rows, and at most
    /// `max_groundings` groundings.
    pub fn relation(
        max_attrs: usize,
        max_rows: usize,
        max_mult: u64,
        max_dom: usize,
        max_groundings: u128,
    ) -> impl Strategy<Value = Relation> {
        (1..=max_attrs, 2..=max_dom)
            .prop_flat_map(move |(n, d)| {
                let cell = prop_oneof![2 => (0..d as u32).prop_map(Some), 1 => Just(None)];
                let row = (proptest::collection::vec(cell, n), 1..=max_mult);
                (Just(n), Just(d), proptest::collection::vec(row, 0..=max_rows))
            })
            .prop_map(|(n, d, rows)| {
                let schema = Schema::uniform(super::NAMES[..n].iter().copied(), d).unwrap();
                Relation::from_rows(schema, rows.into_iter().map(|(c, m)| (Tuple(c), m))).unwrap()
            })
            .prop_filter("too many groundings", move |r| r.count_groundings() <= max_groundings)
    }

    pub fn subset(n: usize) -> impl Strategy<Value = AttrSet> {
        (0u64..1 << n).prop_map(AttrSet::from_bits)
    }

    /// A relation together with three attribute sets over its schema.
    pub fn relation_and_sets(
        max_attrs: usize,
        max_rows: usize,
        max_groundings: u128,
    ) -> impl Strategy<Value = (Relation, AttrSet, AttrSet, AttrSet)> {
        relation(max_attrs, max_rows, 2, 3, max_groundings).prop_flat_map(|r| {
            let n = r.schema().arity();
            (Just(r), subset(n), subset(n), subset(n))
        })
    }

    pub fn modality() -> impl Strategy<Value = Modality> {
        prop_oneof![Just(Modality::Plain), Just(Modality::Possible), Just(Modality::Certain)]
    }

    pub fn atom(n: usize) -> impl Strategy<Value = Atom> {
        (subset(n), subset(n), modality()).prop_map(|(x, y, m)| Atom::new(x, y, m))
    }

    pub fn atom_of(n: usize, m: Modality) -> impl Strategy<Value = Atom> {
        (subset(n), subset(n)).prop_map(move |(x, y)| Atom::new(x, y, m))
    }
}

/// Proptest settings for integration tests, which have no source root to
/// persist failures next to.
pub fn config(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases,
        failure_persistence: None,
        ..Default::default()
    }
}
