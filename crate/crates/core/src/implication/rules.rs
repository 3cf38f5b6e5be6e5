//! Inference rules and rule systems.

use core::fmt;
use core::ops::BitOr;

use crate::atom::{Atom, Modality};

/// One inference rule. Single-modality rules carry the modality of all of
/// their atoms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    /// `X ⊥ ∅`
    Trivial(Modality),
    /// `X ⊥ Y` gives `Y ⊥ X`
    Symmetry(Modality),
    /// `X ⊥ X` and `Y ⊥ Z` give `XY ⊥ Z`
    Constancy(Modality),
    /// `X ⊥ YZ` gives `X ⊥ Y`
    Decomposition(Modality),
    /// `X ⊥ Y` and `XY ⊥ Z` give `X ⊥ YZ`
    Exchange(Modality),
    /// `X ⊥_p Y` and `XY ⊥_c Z` give `X ⊥_p YZ`
    ExchangePc,
    /// `X ⊥_c Y` and `XY ⊥_p Z` give `X ⊥_p YZ`
    ExchangeCp,
}

impl Rule {
    pub const ALL: [Rule; 17] = {
        use Modality::*;
        [
            Rule::Trivial(Plain),
            Rule::Symmetry(Plain),
            Rule::Constancy(Plain),
            Rule::Decomposition(Plain),
            Rule::Exchange(Plain),
            Rule::Trivial(Certain),
            Rule::Symmetry(Certain),
            Rule::Constancy(Certain),
            Rule::Decomposition(Certain),
            Rule::Exchange(Certain),
            Rule::Trivial(Possible),
            Rule::Symmetry(Possible),
            Rule::Constancy(Possible),
            Rule::Decomposition(Possible),
            Rule::Exchange(Possible),
            Rule::ExchangePc,
            Rule::ExchangeCp,
        ]
    };

    fn bit(self) -> u32 {
        let k = Rule::ALL.iter().position(|r| *r == self).expect("listed rule");
        1 << k
    }

    pub fn name(self) -> &'static str {
        use Modality::*;
        match self {
            Rule::Trivial(Plain) => "T",
            Rule::Trivial(Certain) => "T_c",
            Rule::Trivial(Possible) => "T_p",
            Rule::Symmetry(Plain) => "S",
            Rule::Symmetry(Certain) => "S_c",
            Rule::Symmetry(Possible) => "S_p",
            Rule::Constancy(Plain) => "C",
            Rule::Constancy(Certain) => "C_c",
            Rule::Constancy(Possible) => "C_p",
            Rule::Decomposition(Plain) => "D",
            Rule::Decomposition(Certain) => "D_c",
            Rule::Decomposition(Possible) => "D_p",
            Rule::Exchange(Plain) => "E",
            Rule::Exchange(Certain) => "E_c",
            Rule::Exchange(Possible) => "E_p",
            Rule::ExchangePc => "E_pc",
            Rule::ExchangeCp => "E_cp",
        }
    }

    pub fn from_name(name: &str) -> Option<Rule> {
        Rule::ALL.iter().copied().find(|r| r.name() == name)
    }

    pub fn arity(self) -> usize {
        match self {
            Rule::Trivial(_) => 0,
            Rule::Symmetry(_) | Rule::Decomposition(_) => 1,
            _ => 2,
        }
    }

    /// Modalities of the (first, second) premises of an exchange-shaped rule
    /// and of its conclusion.
    pub(crate) fn exchange_signature(self) -> Option<(Modality, Modality, Modality)> {
        match self {
            Rule::Exchange(m) => Some((m, m, m)),
            Rule::ExchangePc => Some((Modality::Possible, Modality::Certain, Modality::Possible)),
            Rule::ExchangeCp => Some((Modality::Certain, Modality::Possible, Modality::Possible)),
            _ => None,
        }
    }

    /// True when `conclusion` follows from `premises` (in order) by this rule.
    pub fn applies(self, premises: &[Atom], conclusion: &Atom) -> bool {
        if premises.len() != self.arity() {
            return false;
        }
        match self {
            Rule::Trivial(m) => conclusion.modality == m && conclusion.rhs.is_empty(),
            Rule::Symmetry(m) => {
                let a = premises[0];
                a.modality == m && *conclusion == a.swapped()
            }
            Rule::Decomposition(m) => {
                let a = premises[0];
                a.modality == m
                    && conclusion.modality == m
                    && conclusion.lhs == a.lhs
                    && conclusion.rhs.is_subset(a.rhs)
            }
            Rule::Constancy(m) => {
                let (c, a) = (premises[0], premises[1]);
                c.modality == m
                    && a.modality == m
                    && conclusion.modality == m
                    && c.is_constancy()
                    && conclusion.lhs == c.lhs | a.lhs
                    && conclusion.rhs == a.rhs
            }
            _ => {
                let (m1, m2, m) = self.exchange_signature().expect("exchange rule");
                let (a, b) = (premises[0], premises[1]);
                a.modality == m1
                    && b.modality == m2
                    && conclusion.modality == m
                    && b.lhs == a.lhs | a.rhs
                    && conclusion.lhs == a.lhs
                    && conclusion.rhs == a.rhs | b.rhs
            }
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A set of rules.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct RuleSystem(u32);

impl RuleSystem {
    pub const EMPTY: RuleSystem = RuleSystem(0);

    pub fn of<I: IntoIterator<Item = Rule>>(rules: I) -> Self {
        rules.into_iter().fold(RuleSystem::EMPTY, |s, r| s.with(r))
    }

    /// Trivial independence, symmetry, constancy, decomposition and exchange
    /// for one modality.
    pub fn independence(m: Modality) -> Self {
        RuleSystem::of([
            Rule::Trivial(m),
            Rule::Symmetry(m),
            Rule::Constancy(m),
            Rule::Decomposition(m),
            Rule::Exchange(m),
        ])
    }

    /// Rules for plain atoms.
    pub fn i() -> Self {
        RuleSystem::independence(Modality::Plain)
    }

    /// Rules for certain atoms.
    pub fn i_c() -> Self {
        RuleSystem::independence(Modality::Certain)
    }

    /// Rules for possible atoms; exchange is unsound here and left out.
    pub fn i_p() -> Self {
        RuleSystem::independence(Modality::Possible).without(Rule::Exchange(Modality::Possible))
    }

    /// The two mixed exchange rules.
    pub fn j_pc() -> Self {
        RuleSystem::of([Rule::ExchangePc, Rule::ExchangeCp])
    }

    /// Certain, possible and mixed rules together.
    pub fn mixed() -> Self {
        RuleSystem::i_c() | RuleSystem::i_p() | RuleSystem::j_pc()
    }

    /// [`mixed`](Self::mixed) without the constancy rules, complete for
    /// certain conclusions from disjoint atoms.
    pub fn mixed_disjoint() -> Self {
        RuleSystem::mixed()
            .without(Rule::Constancy(Modality::Certain))
            .without(Rule::Constancy(Modality::Possible))
    }

    pub fn with(self, rule: Rule) -> Self {
        RuleSystem(self.0 | rule.bit())
    }

    pub fn without(self, rule: Rule) -> Self {
        RuleSystem(self.0 & !rule.bit())
    }

    pub fn contains(self, rule: Rule) -> bool {
        self.0 & rule.bit() != 0
    }

    pub fn rules(self) -> impl Iterator<Item = Rule> {
        Rule::ALL.into_iter().filter(move |r| self.contains(*r))
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Looks up a system by name: `I`, `I_c`, `I_p`, `J_pc`, `mixed`,
    /// `mixed_disjoint`, or a `+`-separated union of these.
    pub fn from_name(name: &str) -> Option<Self> {
        let mut out = RuleSystem::EMPTY;
        for part in name.split('+') {
            out = out
                | match part.trim() {
                    "I" => RuleSystem::i(),
                    "I_c" => RuleSystem::i_c(),
                    "I_p" => RuleSystem::i_p(),
                    "J_pc" => RuleSystem::j_pc(),
                    "mixed" => RuleSystem::mixed(),
                    "mixed_disjoint" => RuleSystem::mixed_disjoint(),
                    _ => return None,
                };
        }
        Some(out)
    }
}

impl BitOr for RuleSystem {
    type Output = RuleSystem;
    fn bitor(self, rhs: RuleSystem) -> RuleSystem {
        RuleSystem(self.0 | rhs.0)
    }
}
