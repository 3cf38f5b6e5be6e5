//! Independence atoms `X ⊥ Y` with a modality, and sets of them.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::relation::{AttrSet, Vocabulary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Modality {
    Plain,
    Possible,
    Certain,
}

impl Modality {
    pub const ALL: [Modality; 3] = [Modality::Plain, Modality::Possible, Modality::Certain];

    pub fn name(self) -> &'static str {
        match self {
            Modality::Plain => "plain",
            Modality::Possible => "possible",
            Modality::Certain => "certain",
        }
    }

    /// Suffix used by the operator tokens (`_||_p`, `⊥c`, …).
    pub fn suffix(self) -> &'static str {
        match self {
            Modality::Plain => "",
            Modality::Possible => "p",
            Modality::Certain => "c",
        }
    }
}

impl fmt::Display for Modality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Symbol set used when rendering atoms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Notation {
    #[default]
    Ascii,
    Unicode,
}

/// `lhs ⊥ rhs` under a modality.
///
/// Equality compares the two sides as sets but keeps their order: `X ⊥ Y`
/// and `Y ⊥ X` are different atoms related by the symmetry rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub modality: Modality,
    pub lhs: AttrSet,
    pub rhs: AttrSet,
}

impl Atom {
    pub const fn new(lhs: AttrSet, rhs: AttrSet, modality: Modality) -> Self {
        Atom { modality, lhs, rhs }
    }

    pub const fn plain(lhs: AttrSet, rhs: AttrSet) -> Self {
        Atom::new(lhs, rhs, Modality::Plain)
    }

    pub const fn possible(lhs: AttrSet, rhs: AttrSet) -> Self {
        Atom::new(lhs, rhs, Modality::Possible)
    }

    pub const fn certain(lhs: AttrSet, rhs: AttrSet) -> Self {
        Atom::new(lhs, rhs, Modality::Certain)
    }

    /// The plain atom over the same sides.
    pub fn ind(self) -> Atom {
        Atom::plain(self.lhs, self.rhs)
    }

    pub fn with_modality(self, modality: Modality) -> Atom {
        Atom { modality, ..self }
    }

    pub fn swapped(self) -> Atom {
        Atom::new(self.rhs, self.lhs, self.modality)
    }

    pub fn attributes(self) -> AttrSet {
        self.lhs | self.rhs
    }

    pub fn is_disjoint(self) -> bool {
        self.lhs.is_disjoint(self.rhs)
    }

    /// `X ⊥ X`, which states that `X` is constant.
    pub fn is_constancy(self) -> bool {
        self.lhs == self.rhs
    }

    pub fn is_unary(self) -> bool {
        self.lhs.len() == 1 && self.rhs.len() == 1
    }

    /// Membership in the possible-atom fragment with a singleton side or
    /// side sizes differing by at most one.
    pub fn is_pia_star(self) -> Result<bool> {
        if self.modality != Modality::Possible {
            return Err(Error::ModalityMismatch {
                expected: Modality::Possible,
                found: self.modality,
            });
        }
        let (x, y) = (self.lhs.len(), self.rhs.len());
        Ok(x == 1 || y == 1 || x.abs_diff(y) <= 1)
    }

    pub fn render(self, vocab: &Vocabulary, notation: Notation) -> String {
        let mut out = vocab.render(self.lhs);
        out.push(' ');
        out.push_str(match notation {
            Notation::Ascii => "_||_",
            Notation::Unicode => "⊥",
        });
        out.push_str(self.modality.suffix());
        out.push(' ');
        out.push_str(&vocab.render(self.rhs));
        out
    }

    pub fn display<'a>(&self, vocab: &'a Vocabulary) -> AtomDisplay<'a> {
        AtomDisplay {
            atom: *self,
            vocab,
            notation: Notation::Ascii,
        }
    }
}

pub struct AtomDisplay<'a> {
    atom: Atom,
    vocab: &'a Vocabulary,
    notation: Notation,
}

impl AtomDisplay<'_> {
    pub fn notation(mut self, notation: Notation) -> Self {
        self.notation = notation;
        self
    }
}

impl fmt::Display for AtomDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.atom.render(self.vocab, self.notation))
    }
}

/// Duplicate-free list of atoms over one vocabulary, in insertion order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConstraintSet {
    vocab: Vocabulary,
    atoms: Vec<Atom>,
}

impl ConstraintSet {
    pub fn new(vocab: Vocabulary) -> Self {
        ConstraintSet {
            vocab,
            atoms: Vec::new(),
        }
    }

    pub fn from_atoms<I: IntoIterator<Item = Atom>>(vocab: Vocabulary, atoms: I) -> Result<Self> {
        let mut s = ConstraintSet::new(vocab);
        for a in atoms {
            s.insert(a)?;
        }
        Ok(s)
    }

    /// Adds `atom` unless already present; returns whether it was new.
    pub fn insert(&mut self, atom: Atom) -> Result<bool> {
        self.vocab.check(atom.attributes())?;
        if self.atoms.contains(&atom) {
            return Ok(false);
        }
        self.atoms.push(atom);
        Ok(true)
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocab
    }

    pub(crate) fn vocabulary_mut(&mut self) -> &mut Vocabulary {
        &mut self.vocab
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn contains(&self, atom: &Atom) -> bool {
        self.atoms.contains(atom)
    }

    pub fn attributes(&self) -> AttrSet {
        self.atoms.iter().fold(AttrSet::EMPTY, |s, a| s | a.attributes())
    }

    /// Element-wise [`Atom::ind`]; may shrink when atoms collapse.
    pub fn ind(&self) -> ConstraintSet {
        let mut out = ConstraintSet::new(self.vocab.clone());
        for a in &self.atoms {
            out.insert(a.ind()).expect("same vocabulary");
        }
        out
    }

    /// The atoms of one modality.
    pub fn filter(&self, modality: Modality) -> ConstraintSet {
        ConstraintSet {
            vocab: self.vocab.clone(),
            atoms: self.atoms.iter().copied().filter(|a| a.modality == modality).collect(),
        }
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Atom> {
        self.atoms.iter()
    }
}

impl<'a> IntoIterator for &'a ConstraintSet {
    type Item = &'a Atom;
    type IntoIter = core::slice::Iter<'a, Atom>;
    fn into_iter(self) -> Self::IntoIter {
        self.atoms.iter()
    }
}
