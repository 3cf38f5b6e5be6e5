//! Incomplete relations: schemas with finite domains, tuples that may hold
//! the null marker, multisets of tuples, projection and groundings.
//!
//! Values are stored as positions into the attribute's domain list; the
//! null marker is `None`. A [`Relation`] keeps each distinct tuple once,
//! together with a positive multiplicity, in first-insertion order.

mod attrs;
mod grounding;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

pub use attrs::{AttrIter, AttrSet, Subsets, Vocabulary, MAX_ATTRIBUTES};
pub use grounding::Groundings;

use crate::error::{Error, Result};

/// A single cell: a domain position, or `None` for the null marker.
pub type Cell = Option<u32>;

/// Attribute names plus a finite list of non-null values per attribute.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schema {
    vocab: Vocabulary,
    domains: Vec<Vec<String>>,
}

impl Schema {
    pub fn new(vocab: Vocabulary, domains: Vec<Vec<String>>) -> Result<Self> {
        if domains.len() != vocab.len() {
            return Err(Error::ArityMismatch {
                expected: vocab.len(),
                found: domains.len(),
            });
        }
        for (i, dom) in domains.iter().enumerate() {
            if dom.len() < 2 {
                return Err(Error::DomainTooSmall {
                    attribute: vocab.name(i).to_string(),
                    size: dom.len(),
                });
            }
            for (k, v) in dom.iter().enumerate() {
                if dom[..k].contains(v) {
                    return Err(Error::DuplicateDomainValue {
                        attribute: vocab.name(i).to_string(),
                        value: v.clone(),
                    });
                }
            }
        }
        Ok(Schema { vocab, domains })
    }

    /// Every attribute gets the same domain `0, 1, …, size-1`.
    pub fn uniform<I, S>(names: I, size: usize) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let vocab = Vocabulary::new(names)?;
        let dom: Vec<String> = (0..size).map(|v| v.to_string()).collect();
        let domains = (0..vocab.len()).map(|_| dom.clone()).collect();
        Schema::new(vocab, domains)
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn arity(&self) -> usize {
        self.vocab.len()
    }

    pub fn attributes(&self) -> AttrSet {
        self.vocab.all()
    }

    pub fn domain(&self, attr: usize) -> &[String] {
        &self.domains[attr]
    }

    pub fn domain_size(&self, attr: usize) -> usize {
        self.domains[attr].len()
    }

    pub fn value_index(&self, attr: usize, value: &str) -> Option<u32> {
        self.domains[attr].iter().position(|v| v == value).map(|p| p as u32)
    }

    pub fn value(&self, attr: usize, cell: Cell) -> Option<&str> {
        cell.map(|v| self.domains[attr][v as usize].as_str())
    }

    pub fn set<'a, I: IntoIterator<Item = &'a str>>(&self, names: I) -> Result<AttrSet> {
        self.vocab.set(names)
    }

    /// The schema over the attributes of `x`, in their original order.
    pub fn restrict(&self, x: AttrSet) -> Result<Schema> {
        self.vocab.check(x)?;
        let vocab = Vocabulary::new(x.iter().map(|i| self.vocab.name(i).to_string()))?;
        let domains = x.iter().map(|i| self.domains[i].clone()).collect();
        Ok(Schema { vocab, domains })
    }
}

/// One row of a relation, cells in schema order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tuple(pub Vec<Cell>);

impl Tuple {
    pub fn cells(&self) -> &[Cell] {
        &self.0
    }

    pub fn get(&self, attr: usize) -> Cell {
        self.0[attr]
    }

    pub fn is_complete(&self) -> bool {
        self.0.iter().all(Option::is_some)
    }

    pub fn null_count(&self) -> usize {
        self.0.iter().filter(|c| c.is_none()).count()
    }

    /// Cells of the attributes in `x`, ascending by position.
    pub fn project(&self, x: AttrSet) -> Tuple {
        Tuple(x.iter().map(|i| self.0[i]).collect())
    }

    /// True when `grounded` is complete and agrees with `self` on every
    /// non-null cell.
    pub fn is_grounded_by(&self, grounded: &Tuple) -> bool {
        self.0.len() == grounded.0.len()
            && self
                .0
                .iter()
                .zip(&grounded.0)
                .all(|(c, g)| g.is_some() && (c.is_none() || c == g))
    }

    /// Both tuples admit a common grounding.
    pub fn is_compatible(&self, other: &Tuple) -> bool {
        self.0
            .iter()
            .zip(&other.0)
            .all(|(a, b)| a.is_none() || b.is_none() || a == b)
    }
}

/// A finite multiset of tuples over a [`Schema`].
#[derive(Debug, Clone)]
pub struct Relation {
    schema: Schema,
    rows: Vec<(Tuple, u64)>,
}

impl PartialEq for Relation {
    /// Multiset equality; row order is irrelevant.
    fn eq(&self, other: &Self) -> bool {
        self.schema == other.schema && self.sorted_rows() == other.sorted_rows()
    }
}

impl Eq for Relation {}

impl Relation {
    pub fn empty(schema: Schema) -> Self {
        Relation {
            schema,
            rows: Vec::new(),
        }
    }

    /// Builds a relation, merging repeated tuples into one entry.
    pub fn from_rows<I>(schema: Schema, rows: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Tuple, u64)>,
    {
        let mut r = Relation::empty(schema);
        let mut index: BTreeMap<Tuple, usize> = BTreeMap::new();
        for (t, m) in rows {
            r.validate(&t)?;
            if m == 0 {
                return Err(Error::ZeroMultiplicity);
            }
            match index.get(&t) {
                Some(&k) => r.rows[k].1 += m,
                None => {
                    index.insert(t.clone(), r.rows.len());
                    r.rows.push((t, m));
                }
            }
        }
        Ok(r)
    }

    fn validate(&self, t: &Tuple) -> Result<()> {
        if t.0.len() != self.schema.arity() {
            return Err(Error::ArityMismatch {
                expected: self.schema.arity(),
                found: t.0.len(),
            });
        }
        for (i, c) in t.0.iter().enumerate() {
            if let Some(v) = c {
                if *v as usize >= self.schema.domain_size(i) {
                    return Err(Error::ValueNotInDomain {
                        attribute: self.schema.vocab.name(i).to_string(),
                        value: format!("#{v}"),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn schema(&self) -> &Schema {
        &self.schema
    }

    pub fn rows(&self) -> &[(Tuple, u64)] {
        &self.rows
    }

    pub fn distinct_len(&self) -> usize {
        self.rows.len()
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.rows.iter().map(|(_, m)| m).sum()
    }

    pub fn multiplicity(&self, t: &Tuple) -> u64 {
        self.rows.iter().find(|(s, _)| s == t).map_or(0, |(_, m)| *m)
    }

    pub fn is_complete(&self) -> bool {
        self.rows.iter().all(|(t, _)| t.is_complete())
    }

    fn sorted_rows(&self) -> Vec<(Tuple, u64)> {
        let mut rows = self.rows.clone();
        rows.sort();
        rows
    }

    /// Projection onto `x` with multiplicities summed over merged tuples.
    ///
    /// The result is over `schema.restrict(x)`, so attribute positions are
    /// renumbered.
    pub fn project(&self, x: AttrSet) -> Result<Relation> {
        let schema = self.schema.restrict(x)?;
        Relation::from_rows(schema, self.rows.iter().map(|(t, m)| (t.project(x), *m)))
    }

    /// Distinct projections onto `x` with summed multiplicities, without
    /// building a new schema. Cells are in ascending position order of `x`.
    pub fn project_rows(&self, x: AttrSet) -> Vec<(Tuple, u64)> {
        let mut out: Vec<(Tuple, u64)> = Vec::new();
        let mut index: BTreeMap<Tuple, usize> = BTreeMap::new();
        for (t, m) in &self.rows {
            let p = t.project(x);
            match index.get(&p) {
                Some(&k) => out[k].1 += m,
                None => {
                    index.insert(p.clone(), out.len());
                    out.push((p, *m));
                }
            }
        }
        out
    }

    /// Number of groundings counted per tuple copy: the product over every
    /// null cell of every copy of its attribute's domain size. Saturates at
    /// `u128::MAX`.
    pub fn count_groundings(&self) -> u128 {
        let mut total: u128 = 1;
        for (t, m) in &self.rows {
            for (i, c) in t.0.iter().enumerate() {
                if c.is_none() {
                    let d = self.schema.domain_size(i) as u128;
                    for _ in 0..*m {
                        total = total.saturating_mul(d);
                    }
                }
            }
        }
        total
    }

    /// Streams every grounding in lexicographic order of (tuple, copy,
    /// attribute, domain value). With a limit, the stream stops after that
    /// many relations and reports whether more remained.
    pub fn groundings(&self, limit: Option<u64>) -> Groundings<'_> {
        Groundings::new(self, limit)
    }

    /// True when `g` is a grounding of `self`: complete, same total
    /// multiplicity, and the copies of `g` can be matched one-to-one with
    /// the copies of `self` so that every copy grounds its partner.
    pub fn is_grounded_by(&self, g: &Relation) -> bool {
        if self.schema != g.schema || !g.is_complete() || self.total_multiplicity() != g.total_multiplicity() {
            return false;
        }
        // Bipartite b-matching between copies; sizes are small in practice.
        let left: Vec<(&Tuple, u64)> = self.rows.iter().map(|(t, m)| (t, *m)).collect();
        let right: Vec<(&Tuple, u64)> = g.rows.iter().map(|(t, m)| (t, *m)).collect();
        crate::check::flow::b_matching_saturates(&left, &right, |a, b| a.is_grounded_by(b))
    }

    /// Cell text, `None` for the null marker.
    pub fn cell_text(&self, attr: usize, cell: Cell) -> Option<&str> {
        self.schema.value(attr, cell)
    }
}

/// Builds relations from textual cells, declaring or inferring domains.
///
/// Inferred domains list the observed values in first-occurrence order,
/// padded with fresh `_v1`, `_v2`, … values up to two non-null values, plus
/// one further fresh value per null cell copy in the column.
#[derive(Debug, Clone)]
pub struct RelationBuilder {
    vocab: Vocabulary,
    declared: Vec<Option<Vec<String>>>,
    rows: Vec<(Vec<Option<String>>, u64)>,
}

impl RelationBuilder {
    pub fn new<I, S>(attributes: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let vocab = Vocabulary::new(attributes)?;
        let declared = (0..vocab.len()).map(|_| None).collect();
        Ok(RelationBuilder {
            vocab,
            declared,
            rows: Vec::new(),
        })
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocab
    }

    pub fn declare_domain<I, S>(&mut self, attribute: &str, values: I) -> Result<&mut Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let i = self
            .vocab
            .index_of(attribute)
            .ok_or_else(|| Error::UnknownAttribute(attribute.to_string()))?;
        self.declared[i] = Some(values.into_iter().map(Into::into).collect());
        Ok(self)
    }

    pub fn row<I, S>(&mut self, cells: I, multiplicity: u64) -> Result<&mut Self>
    where
        I: IntoIterator<Item = Option<S>>,
        S: Into<String>,
    {
        let cells: Vec<Option<String>> = cells.into_iter().map(|c| c.map(Into::into)).collect();
        if cells.len() != self.vocab.len() {
            return Err(Error::ArityMismatch {
                expected: self.vocab.len(),
                found: cells.len(),
            });
        }
        if multiplicity == 0 {
            return Err(Error::ZeroMultiplicity);
        }
        self.rows.push((cells, multiplicity));
        Ok(self)
    }

    /// Like [`row`](Self::row), reading the literal `*` as the null marker.
    pub fn row_marked(&mut self, cells: &[&str], multiplicity: u64) -> Result<&mut Self> {
        self.row(
            cells.iter().map(|c| if *c == "*" { None } else { Some(*c) }),
            multiplicity,
        )
    }

    pub fn build(&self) -> Result<Relation> {
        let mut domains = Vec::with_capacity(self.vocab.len());
        for (i, declared) in self.declared.iter().enumerate() {
            let dom = match declared {
                Some(d) => {
                    for (cells, _) in &self.rows {
                        if let Some(v) = &cells[i] {
                            if !d.contains(v) {
                                return Err(Error::ValueNotInDomain {
                                    attribute: self.vocab.name(i).to_string(),
                                    value: v.clone(),
                                });
                            }
                        }
                    }
                    d.clone()
                }
                None => self.infer_domain(i),
            };
            domains.push(dom);
        }
        let schema = Schema::new(self.vocab.clone(), domains)?;
        let rows: Vec<(Tuple, u64)> = self
            .rows
            .iter()
            .map(|(cells, m)| {
                let t = cells
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c.as_ref().and_then(|v| schema.value_index(i, v)))
                    .collect();
                (Tuple(t), *m)
            })
            .collect();
        Relation::from_rows(schema, rows)
    }

    fn infer_domain(&self, attr: usize) -> Vec<String> {
        let mut observed: Vec<String> = Vec::new();
        let mut nulls = 0u64;
        for (cells, m) in &self.rows {
            match &cells[attr] {
                Some(v) => {
                    if !observed.contains(v) {
                        observed.push(v.clone());
                    }
                }
                None => nulls += m,
            }
        }
        let target = observed.len().max(2) + nulls as usize;
        let mut dom = observed;
        let mut k = 1;
        while dom.len() < target {
            let fresh = format!("_v{k}");
            k += 1;
            if !dom.contains(&fresh) {
                dom.push(fresh);
            }
        }
        dom
    }
}
