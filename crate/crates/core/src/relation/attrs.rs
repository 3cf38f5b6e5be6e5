use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{BitAnd, BitOr, Sub};

use crate::error::{Error, Result};

/// Upper bound on the number of attributes a schema or vocabulary can hold.
pub const MAX_ATTRIBUTES: usize = 64;

/// A set of attribute positions within one [`Vocabulary`].
///
/// Stored as a bitmask, so set algebra is constant time and iteration
/// always runs in ascending position order.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AttrSet(u64);

impl AttrSet {
    pub const EMPTY: AttrSet = AttrSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        AttrSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The first `n` positions.
    pub fn prefix(n: usize) -> Self {
        debug_assert!(n <= MAX_ATTRIBUTES);
        if n >= 64 {
            AttrSet(u64::MAX)
        } else {
            AttrSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(index: usize) -> Self {
        debug_assert!(index < MAX_ATTRIBUTES);
        AttrSet(1u64 << index)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices.into_iter().fold(AttrSet::EMPTY, |s, i| s.with(i))
    }

    pub fn with(self, index: usize) -> Self {
        self | AttrSet::singleton(index)
    }

    pub fn contains(self, index: usize) -> bool {
        index < 64 && self.0 & (1u64 << index) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: AttrSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: AttrSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Highest position plus one, or 0 for the empty set.
    pub fn span(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    pub fn iter(self) -> AttrIter {
        AttrIter(self.0)
    }

    /// Every subset of `self`, including the empty set and `self`.
    pub fn subsets(self) -> Subsets {
        Subsets {
            full: self.0,
            next: Some(0),
        }
    }
}

impl BitOr for AttrSet {
    type Output = AttrSet;
    fn bitor(self, rhs: AttrSet) -> AttrSet {
        AttrSet(self.0 | rhs.0)
    }
}

impl BitAnd for AttrSet {
    type Output = AttrSet;
    fn bitand(self, rhs: AttrSet) -> AttrSet {
        AttrSet(self.0 & rhs.0)
    }
}

impl Sub for AttrSet {
    type Output = AttrSet;
    fn sub(self, rhs: AttrSet) -> AttrSet {
        AttrSet(self.0 & !rhs.0)
    }
}

impl fmt::Debug for AttrSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for AttrSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        AttrSet::from_indices(iter)
    }
}

impl IntoIterator for AttrSet {
    type Item = usize;
    type IntoIter = AttrIter;
    fn into_iter(self) -> AttrIter {
        self.iter()
    }
}

pub struct AttrIter(u64);

impl Iterator for AttrIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for AttrIter {}

/// Enumerates submasks in increasing numeric order.
pub struct Subsets {
    full: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = AttrSet;

    fn next(&mut self) -> Option<AttrSet> {
        let cur = self.next?;
        self.next = if cur == self.full {
            None
        } else {
            // next submask above `cur`
            Some((cur | !self.full).wrapping_add(1) & self.full)
        };
        Some(AttrSet(cur))
    }
}

/// Ordered list of distinct, non-empty attribute names.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Vocabulary {
    names: Vec<String>,
}

impl Vocabulary {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut v = Vocabulary::default();
        for name in names {
            let name = name.into();
            if v.index_of(&name).is_some() {
                return Err(Error::DuplicateAttribute(name));
            }
            v.intern(&name)?;
        }
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Returns the position of `name`, appending it when unseen.
    pub fn intern(&mut self, name: &str) -> Result<usize> {
        if name.is_empty() {
            return Err(Error::EmptyAttributeName);
        }
        if let Some(i) = self.index_of(name) {
            return Ok(i);
        }
        if self.names.len() == MAX_ATTRIBUTES {
            return Err(Error::TooManyAttributes {
                count: self.names.len() + 1,
                max: MAX_ATTRIBUTES,
            });
        }
        self.names.push(name.to_string());
        Ok(self.names.len() - 1)
    }

    pub fn all(&self) -> AttrSet {
        AttrSet::prefix(self.names.len())
    }

    pub fn set<'a, I: IntoIterator<Item = &'a str>>(&self, names: I) -> Result<AttrSet> {
        names.into_iter().try_fold(AttrSet::EMPTY, |s, n| {
            self.index_of(n)
                .map(|i| s.with(i))
                .ok_or_else(|| Error::UnknownAttribute(n.to_string()))
        })
    }

    pub fn check(&self, set: AttrSet) -> Result<()> {
        if set.is_subset(self.all()) {
            Ok(())
        } else {
            Err(Error::AttributeOutOfRange(set.span() - 1))
        }
    }

    /// Comma-separated names, or `{}` for the empty set.
    pub fn render(&self, set: AttrSet) -> String {
        if set.is_empty() {
            return "{}".to_string();
        }
        let mut out = String::new();
        for (k, i) in set.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            out.push_str(self.name(i));
        }
        out
    }
}
