//! Closure of a constraint set under a rule system, by forward saturation.
//!
//! Atoms are processed in breadth-first order. Every atom remembers the rule
//! and premises that first produced it, so derivations can be read back.
//! The rules never mention attributes outside their premises, so the
//! search stays inside the attributes of the input (plus `∅`, from trivial
//! independence).

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::atom::{Atom, ConstraintSet, Modality};
use crate::error::{Error, Result};
use crate::implication::derivation::{Derivation, Justification, Step};
use crate::implication::rules::{Rule, RuleSystem};
use crate::relation::{AttrSet, Vocabulary};

pub const DEFAULT_UNIVERSE_LIMIT: usize = 12;

/// The atoms derivable from a constraint set, with backpointers.
#[derive(Debug, Clone)]
pub struct Closure {
    universe: AttrSet,
    index: BTreeMap<Atom, usize>,
    steps: Vec<Step>,
}

impl Closure {
    pub fn universe(&self) -> AttrSet {
        self.universe
    }

    pub fn contains(&self, atom: &Atom) -> bool {
        self.index.contains_key(atom)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Atoms in the order they were derived.
    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.steps.iter().map(|s| &s.atom)
    }

    pub fn to_constraint_set(&self, vocab: &Vocabulary) -> Result<ConstraintSet> {
        ConstraintSet::from_atoms(vocab.clone(), self.atoms().copied())
    }

    /// A derivation of `goal` using only the steps it depends on.
    pub fn derivation(&self, goal: &Atom) -> Option<Derivation> {
        let root = *self.index.get(goal)?;
        let mut needed = BTreeSet::new();
        let mut stack = vec![root];
        while let Some(k) = stack.pop() {
            if needed.insert(k) {
                if let Justification::Rule { premises, .. } = &self.steps[k].justification {
                    stack.extend(premises.iter().copied());
                }
            }
        }
        let renumber: BTreeMap<usize, usize> = needed.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let steps = needed
            .iter()
            .map(|&k| {
                let s = &self.steps[k];
                let justification = match &s.justification {
                    Justification::Premise => Justification::Premise,
                    Justification::Rule { rule, premises } => Justification::Rule {
                        rule: *rule,
                        premises: premises.iter().map(|p| renumber[p]).collect(),
                    },
                };
                Step {
                    atom: s.atom,
                    justification,
                }
            })
            .collect();
        Some(Derivation { steps })
    }
}

/// Saturation settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Saturation {
    /// Largest attribute universe accepted.
    pub limit: usize,
}

impl Default for Saturation {
    fn default() -> Self {
        Saturation {
            limit: DEFAULT_UNIVERSE_LIMIT,
        }
    }
}

impl Saturation {
    pub fn new(limit: usize) -> Self {
        Saturation { limit }
    }

    /// Closure over `universe`, which must cover the attributes of `sigma`.
    pub fn closure_over(&self, sigma: &ConstraintSet, system: RuleSystem, universe: AttrSet) -> Result<Closure> {
        self.run(sigma, system, universe | sigma.attributes(), None)
    }

    pub fn closure(&self, sigma: &ConstraintSet, system: RuleSystem) -> Result<Closure> {
        self.closure_over(sigma, system, AttrSet::EMPTY)
    }

    /// A derivation of `goal` when it lies in the closure. Saturation stops
    /// as soon as the goal appears.
    pub fn derives(&self, sigma: &ConstraintSet, goal: &Atom, system: RuleSystem) -> Result<Option<Derivation>> {
        let universe = sigma.attributes() | goal.attributes();
        sigma.vocabulary().check(universe)?;
        let c = self.run(sigma, system, universe, Some(*goal))?;
        Ok(c.derivation(goal))
    }

    fn run(&self, sigma: &ConstraintSet, system: RuleSystem, universe: AttrSet, goal: Option<Atom>) -> Result<Closure> {
        if universe.len() > self.limit {
            return Err(Error::UniverseTooLarge {
                size: universe.len(),
                limit: self.limit,
            });
        }
        let mut s = Saturator::new(system, goal);
        for a in sigma {
            if s.add(*a, Justification::Premise) {
                return Ok(s.finish(universe));
            }
        }
        for m in Modality::ALL {
            if system.contains(Rule::Trivial(m)) {
                for x in universe.subsets() {
                    let just = Justification::Rule {
                        rule: Rule::Trivial(m),
                        premises: Vec::new(),
                    };
                    if s.add(Atom::new(x, AttrSet::EMPTY, m), just) {
                        return Ok(s.finish(universe));
                    }
                }
            }
        }
        s.saturate();
        Ok(s.finish(universe))
    }
}

/// [`Saturation::closure`] with the default universe limit.
pub fn closure(sigma: &ConstraintSet, system: RuleSystem) -> Result<Closure> {
    Saturation::default().closure(sigma, system)
}

/// [`Saturation::derives`] with the default universe limit.
pub fn derives(sigma: &ConstraintSet, goal: &Atom, system: RuleSystem) -> Result<Option<Derivation>> {
    Saturation::default().derives(sigma, goal, system)
}

struct Saturator {
    system: RuleSystem,
    exchanges: Vec<(Rule, Modality, Modality, Modality)>,
    goal: Option<Atom>,
    index: BTreeMap<Atom, usize>,
    steps: Vec<Step>,
    queue: VecDeque<usize>,
    // processed atoms, indexed for the two-premise rules
    by_lhs: BTreeMap<(Modality, AttrSet), Vec<Atom>>,
    by_union: BTreeMap<(Modality, AttrSet), Vec<Atom>>,
    constancy: BTreeMap<Modality, Vec<Atom>>,
    processed: BTreeMap<Modality, Vec<Atom>>,
}

impl Saturator {
    fn new(system: RuleSystem, goal: Option<Atom>) -> Self {
        let exchanges = system
            .rules()
            .filter_map(|r| r.exchange_signature().map(|(a, b, c)| (r, a, b, c)))
            .collect();
        Saturator {
            system,
            exchanges,
            goal,
            index: BTreeMap::new(),
            steps: Vec::new(),
            queue: VecDeque::new(),
            by_lhs: BTreeMap::new(),
            by_union: BTreeMap::new(),
            constancy: BTreeMap::new(),
            processed: BTreeMap::new(),
        }
    }

    /// Records `atom` if new; returns true once the goal is present.
    fn add(&mut self, atom: Atom, justification: Justification) -> bool {
        if !self.index.contains_key(&atom) {
            self.index.insert(atom, self.steps.len());
            self.queue.push_back(self.steps.len());
            self.steps.push(Step { atom, justification });
        }
        self.goal.is_some_and(|g| g == atom)
    }

    fn finish(self, universe: AttrSet) -> Closure {
        Closure {
            universe,
            index: self.index,
            steps: self.steps,
        }
    }

    fn saturate(&mut self) {
        while let Some(k) = self.queue.pop_front() {
            let a = self.steps[k].atom;
            let m = a.modality;
            self.by_lhs.entry((m, a.lhs)).or_default().push(a);
            self.by_union.entry((m, a.lhs | a.rhs)).or_default().push(a);
            self.processed.entry(m).or_default().push(a);
            if a.is_constancy() {
                self.constancy.entry(m).or_default().push(a);
            }

            let mut out: Vec<(Atom, Rule, Vec<Atom>)> = Vec::new();
            if self.system.contains(Rule::Symmetry(m)) {
                out.push((a.swapped(), Rule::Symmetry(m), vec![a]));
            }
            if self.system.contains(Rule::Decomposition(m)) {
                for i in a.rhs {
                    let c = Atom::new(a.lhs, a.rhs - AttrSet::singleton(i), m);
                    out.push((c, Rule::Decomposition(m), vec![a]));
                }
            }
            if self.system.contains(Rule::Constancy(m)) {
                if a.is_constancy() {
                    for b in self.processed.get(&m).into_iter().flatten() {
                        let c = Atom::new(a.lhs | b.lhs, b.rhs, m);
                        out.push((c, Rule::Constancy(m), vec![a, *b]));
                    }
                }
                for k in self.constancy.get(&m).into_iter().flatten() {
                    let c = Atom::new(k.lhs | a.lhs, a.rhs, m);
                    out.push((c, Rule::Constancy(m), vec![*k, a]));
                }
            }
            for &(rule, m1, m2, mc) in &self.exchanges {
                if m == m1 {
                    for b in self.by_lhs.get(&(m2, a.lhs | a.rhs)).into_iter().flatten() {
                        let c = Atom::new(a.lhs, a.rhs | b.rhs, mc);
                        out.push((c, rule, vec![a, *b]));
                    }
                }
                if m == m2 {
                    for b in self.by_union.get(&(m1, a.lhs)).into_iter().flatten() {
                        let c = Atom::new(b.lhs, b.rhs | a.rhs, mc);
                        out.push((c, rule, vec![*b, a]));
                    }
                }
            }

            for (c, rule, premises) in out {
                if self.index.contains_key(&c) {
                    continue;
                }
                let premises = premises.iter().map(|p| self.index[p]).collect();
                if self.add(c, Justification::Rule { rule, premises }) {
                    self.queue.clear();
                    return;
                }
            }
        }
    }
}
