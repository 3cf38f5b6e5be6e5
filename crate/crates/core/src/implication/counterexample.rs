//! Bounded search for relations that satisfy a constraint set and violate a
//! goal atom.
//!
//! Candidates are visited by number of rows, then by number of nulls, then
//! lexicographically, so the first witness found is the least one.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::atom::{Atom, ConstraintSet, Modality};
use crate::check::{check, Strategy};
use crate::error::{Error, Result};
use crate::relation::{AttrSet, Cell, Relation, Schema, Tuple};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    /// Largest number of attributes occurring in the query.
    pub max_attributes: usize,
    /// Largest total multiplicity of a candidate.
    pub max_rows: usize,
    /// Values per attribute, not counting the null marker.
    pub domain_size: usize,
    /// Candidates examined before giving up with an error.
    pub max_candidates: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_attributes: 5,
            max_rows: 16,
            domain_size: 2,
            max_candidates: 2_000_000,
        }
    }
}

impl Bounds {
    pub fn new(max_attributes: usize, max_rows: usize, domain_size: usize) -> Self {
        Bounds {
            max_attributes,
            max_rows,
            domain_size,
            ..Bounds::default()
        }
    }

    pub fn with_max_candidates(mut self, n: u64) -> Self {
        self.max_candidates = n;
        self
    }
}

/// Result of a completed search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub witness: Option<Relation>,
    pub candidates: u64,
}

/// Looks for a relation that satisfies every atom of `sigma` and violates
/// `goal`. `None` only says that no such relation exists within `bounds`.
///
/// When every atom is plain or every atom is certain, candidates are
/// complete relations; plain atoms are always read over complete relations.
/// Otherwise candidates may contain nulls.
pub fn search_counterexample(sigma: &ConstraintSet, goal: &Atom, bounds: Bounds) -> Result<Option<Relation>> {
    Ok(search(sigma, goal, bounds)?.witness)
}

/// [`search_counterexample`] that also reports how many candidates it visited.
pub fn search(sigma: &ConstraintSet, goal: &Atom, bounds: Bounds) -> Result<SearchOutcome> {
    let vocab = sigma.vocabulary();
    vocab.check(goal.attributes())?;
    if bounds.domain_size < 2 {
        return Err(Error::InvalidParameter(String::from(
            "counterexample domain size must be at least 2",
        )));
    }
    if bounds.max_rows == 0 {
        return Err(Error::InvalidParameter(String::from(
            "counterexample row bound must be positive",
        )));
    }
    let universe = sigma.attributes() | goal.attributes();
    if universe.len() > bounds.max_attributes {
        return Err(Error::UniverseTooLarge {
            size: universe.len(),
            limit: bounds.max_attributes,
        });
    }
    let schema = Schema::uniform(vocab.names().iter().cloned(), bounds.domain_size)?;
    let atoms = sigma.atoms();
    let complete = atoms.iter().chain([goal]).all(|a| a.modality == Modality::Plain)
        || atoms.iter().chain([goal]).all(|a| a.modality == Modality::Certain);
    let mut s = Search {
        schema,
        universe,
        cols: universe.iter().collect(),
        atoms,
        goal,
        tuples: tuple_space(universe.len(), bounds.domain_size, complete),
        complete,
        domain: bounds.domain_size,
        budget: bounds.max_candidates,
        candidates: 0,
        chosen: Vec::new(),
    };
    let witness = s.run(bounds.max_rows)?;
    Ok(SearchOutcome {
        witness,
        candidates: s.candidates,
    })
}

/// Tuples over `k` columns, ordered by null count and then lexicographically
/// with values before the null marker.
fn tuple_space(k: usize, d: usize, complete: bool) -> Vec<Vec<Cell>> {
    let alphabet: Vec<Cell> = (0..d as u32)
        .map(Some)
        .chain(if complete { None } else { Some(None) })
        .collect();
    let mut out: Vec<Vec<Cell>> = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                alphabet.iter().map(move |c| {
                    let mut t = t.clone();
                    t.push(*c);
                    t
                })
            })
            .collect();
    }
    out.sort_by_key(|t| {
        (
            t.iter().filter(|c| c.is_none()).count(),
            t.iter().map(|c| c.map_or(u32::MAX, |v| v)).collect::<Vec<_>>(),
        )
    });
    out
}

fn nulls(t: &[Cell]) -> usize {
    t.iter().filter(|c| c.is_none()).count()
}

struct Search<'a> {
    schema: Schema,
    universe: AttrSet,
    cols: Vec<usize>,
    atoms: &'a [Atom],
    goal: &'a Atom,
    tuples: Vec<Vec<Cell>>,
    complete: bool,
    domain: usize,
    budget: u64,
    candidates: u64,
    chosen: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self, max_rows: usize) -> Result<Option<Relation>> {
        let k = self.cols.len();
        for rows in 1..=max_rows {
            if self.complete {
                // Renaming values column by column maps any row to the
                // all-zero tuple, so one row can be fixed.
                if rows > self.tuples.len() {
                    break;
                }
                self.chosen.clear();
                self.chosen.push(0);
                if let Some(r) = self.sets(1, rows - 1)? {
                    return Ok(Some(r));
                }
            } else {
                for budget in 0..=rows * k {
                    self.chosen.clear();
                    if let Some(r) = self.multisets(0, rows, budget)? {
                        return Ok(Some(r));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Sets of distinct tuples drawn from `start..` in increasing order.
    fn sets(&mut self, start: usize, left: usize) -> Result<Option<Relation>> {
        if left == 0 {
            return self.visit();
        }
        for i in start..=self.tuples.len() - left {
            self.chosen.push(i);
            let found = self.sets(i + 1, left - 1)?;
            self.chosen.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    /// Multisets of `left` tuples from `start..` using exactly `nulls_left`
    /// nulls in total.
    fn multisets(&mut self, start: usize, left: usize, nulls_left: usize) -> Result<Option<Relation>> {
        if left == 0 {
            return if nulls_left == 0 { self.visit() } else { Ok(None) };
        }
        if nulls_left > left * self.cols.len() {
            return Ok(None);
        }
        for i in start..self.tuples.len() {
            let n = nulls(&self.tuples[i]);
            if n > nulls_left {
                break;
            }
            self.chosen.push(i);
            let found = self.multisets(i, left - 1, nulls_left - n)?;
            self.chosen.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    /// Each column must use the values `0..j` for some `j`; every relation
    /// is a renaming of one that does.
    fn canonical(&self) -> bool {
        (0..self.cols.len()).all(|c| {
            let mut used = vec![false; self.domain];
            for &i in &self.chosen {
                if let Some(v) = self.tuples[i][c] {
                    used[v as usize] = true;
                }
            }
            used.windows(2).all(|w| w[0] || !w[1])
        })
    }

    fn visit(&mut self) -> Result<Option<Relation>> {
        if !self.canonical() {
            return Ok(None);
        }
        if self.candidates >= self.budget {
            return Err(Error::SearchBudgetExceeded {
                candidates: self.candidates,
            });
        }
        self.candidates += 1;
        let r = self.relation()?;
        if check(&r, self.goal, Strategy::Fast)?.verdict {
            return Ok(None);
        }
        for a in self.atoms {
            if !check(&r, a, Strategy::Fast)?.verdict {
                return Ok(None);
            }
        }
        Ok(Some(r))
    }

    fn relation(&self) -> Result<Relation> {
        let arity = self.schema.arity();
        let rows = self.chosen.iter().map(|&i| {
            let mut cells: Vec<Cell> = vec![Some(0); arity];
            for (c, &col) in self.cols.iter().enumerate() {
                cells[col] = self.tuples[i][c];
            }
            (Tuple(cells), 1)
        });
        debug_assert!(self.universe.span() <= arity);
        Relation::from_rows(self.schema.clone(), rows)
    }
}
