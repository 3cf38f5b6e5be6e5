//! Derivations: sequences of atoms, each a premise or a rule application.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::atom::{Atom, ConstraintSet, Notation};
use crate::implication::rules::{Rule, RuleSystem};
use crate::relation::Vocabulary;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    Premise,
    /// Rule application; `premises` index earlier steps in rule order.
    Rule {
        rule: Rule,
        premises: Vec<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub atom: Atom,
    pub justification: Justification,
}

/// A checked sequence of steps whose last step is the derived atom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub steps: Vec<Step>,
}

/// Why [`Derivation::verify`] rejected a derivation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvalidStep {
    pub step: usize,
    pub reason: &'static str,
}

impl fmt::Display for InvalidStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step {}: {}", self.step + 1, self.reason)
    }
}

impl Derivation {
    pub fn goal(&self) -> Option<&Atom> {
        self.steps.last().map(|s| &s.atom)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Rule applications only, in order.
    pub fn rules_used(&self) -> Vec<Rule> {
        self.steps
            .iter()
            .filter_map(|s| match &s.justification {
                Justification::Rule { rule, .. } => Some(*rule),
                Justification::Premise => None,
            })
            .collect()
    }

    /// Re-checks every step against `sigma` and the schemas of `system`.
    pub fn verify(&self, sigma: &ConstraintSet, system: RuleSystem) -> Result<(), InvalidStep> {
        if self.steps.is_empty() {
            return Err(InvalidStep {
                step: 0,
                reason: "empty derivation",
            });
        }
        for (k, step) in self.steps.iter().enumerate() {
            let bad = |reason| Err(InvalidStep { step: k, reason });
            match &step.justification {
                Justification::Premise => {
                    if !sigma.contains(&step.atom) {
                        return bad("premise is not in the constraint set");
                    }
                }
                Justification::Rule { rule, premises } => {
                    if !system.contains(*rule) {
                        return bad("rule is not part of the rule system");
                    }
                    if premises.iter().any(|&p| p >= k) {
                        return bad("premise refers to a later step");
                    }
                    let atoms: Vec<Atom> = premises.iter().map(|&p| self.steps[p].atom).collect();
                    if !rule.applies(&atoms, &step.atom) {
                        return bad("rule does not yield this atom");
                    }
                }
            }
        }
        Ok(())
    }

    /// One line per step: number, atom, justification.
    pub fn render_steps(&self, vocab: &Vocabulary, notation: Notation) -> String {
        let mut out = String::new();
        for (k, s) in self.steps.iter().enumerate() {
            let just = match &s.justification {
                Justification::Premise => String::from("premise"),
                Justification::Rule { rule, premises } => {
                    let refs: Vec<String> = premises.iter().map(|p| format!("{}", p + 1)).collect();
                    if refs.is_empty() {
                        format!("{rule}")
                    } else {
                        format!("{rule} from {}", refs.join(", "))
                    }
                }
            };
            out.push_str(&format!(
                "{:>3}. {}    [{}]\n",
                k + 1,
                s.atom.render(vocab, notation),
                just
            ));
        }
        out
    }

    /// Indented proof tree rooted at the goal; premises of a rule are nested
    /// one level deeper.
    pub fn render_tree(&self, vocab: &Vocabulary, notation: Notation) -> String {
        let mut out = String::new();
        if let Some(last) = self.steps.len().checked_sub(1) {
            self.tree_node(last, 0, vocab, notation, &mut out);
        }
        out
    }

    fn tree_node(&self, k: usize, depth: usize, vocab: &Vocabulary, notation: Notation, out: &mut String) {
        let step = &self.steps[k];
        for _ in 0..depth {
            out.push_str("  ");
        }
        out.push_str(&step.atom.render(vocab, notation));
        match &step.justification {
            Justification::Premise => out.push_str("    [premise]\n"),
            Justification::Rule { rule, premises } => {
                out.push_str(&format!("    [{rule}]\n"));
                for &p in premises {
                    self.tree_node(p, depth + 1, vocab, notation, out);
                }
            }
        }
    }
}
