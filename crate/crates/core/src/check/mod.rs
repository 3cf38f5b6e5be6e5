//! Model checking of plain, possible and certain independence atoms.
//!
//! Two families of checkers are provided: brute-force oracles that walk
//! every grounding ([`oracle`]), and direct procedures ([`check_ia`],
//! [`cia::check_cia_fast`], [`unary::check_pia_unary`],
//! [`search::check_pia`]). [`check`] dispatches on the atom's modality.

pub mod cia;
pub mod flow;
pub mod oracle;
pub mod search;
pub mod unary;

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

pub use cia::{check_cia_fast, is_certainly_constant};
pub use flow::{FlowNetwork, MaxFlow};
pub use oracle::{check_cia_oracle, check_pia_oracle, Oracle, DEFAULT_ORACLE_BOUND};
pub use search::check_pia;
pub use unary::{build_flow_network, check_pia_unary, pia_counting_bound, UnaryNetwork};

use crate::atom::{Atom, Modality};
use crate::error::Result;
use crate::relation::{AttrSet, Relation, Tuple};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Oracle,
    IaDirect,
    CiaFast,
    PiaFlow,
    PiaSearch,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::IaDirect => "ia_direct",
            Method::CiaFast => "cia_fast",
            Method::PiaFlow => "pia_flow",
            Method::PiaSearch => "pia_search",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CheckStats {
    /// Groundings, search nodes or candidate host pairs visited.
    pub explored: u64,
    /// Value of the deciding max-flow, when one was computed.
    pub flow: Option<u64>,
}

/// Verdict of a checker plus supporting evidence.
///
/// `witness` is a satisfying grounding for a possible atom that holds, or a
/// violating grounding for a certain atom refuted by the oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub verdict: bool,
    pub method: Method,
    pub witness: Option<Relation>,
    pub stats: CheckStats,
}

impl CheckReport {
    pub(crate) fn plain(verdict: bool, method: Method) -> Self {
        CheckReport {
            verdict,
            method,
            witness: None,
            stats: CheckStats::default(),
        }
    }
}

/// Checker selection for [`check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Direct procedures; never enumerates groundings.
    #[default]
    Fast,
    /// Grounding enumeration, failing above the given number of groundings.
    Oracle { bound: u64 },
}

/// Checks `atom` against `r`.
pub fn check(r: &Relation, atom: &Atom, strategy: Strategy) -> Result<CheckReport> {
    let (x, y) = (atom.lhs, atom.rhs);
    match (atom.modality, strategy) {
        (Modality::Plain, _) => Ok(CheckReport::plain(check_ia(r, x, y)?, Method::IaDirect)),
        (Modality::Certain, Strategy::Fast) => Ok(CheckReport::plain(check_cia_fast(r, x, y)?, Method::CiaFast)),
        (Modality::Possible, Strategy::Fast) => {
            if atom.is_unary() && atom.is_disjoint() {
                check_pia_unary(r, x, y)
            } else {
                check_pia(r, x, y)
            }
        }
        (Modality::Certain, Strategy::Oracle { bound }) => Oracle::new(bound).cia(r, x, y),
        (Modality::Possible, Strategy::Oracle { bound }) => Oracle::new(bound).pia(r, x, y),
    }
}

/// Plain independence: `r(XY)` is complete and its `(X, Y)` pairs form the
/// product of the two projections.
pub fn check_ia(r: &Relation, x: AttrSet, y: AttrSet) -> Result<bool> {
    let vocab = r.schema().vocabulary();
    vocab.check(x)?;
    vocab.check(y)?;
    Ok(ia_holds(r.rows(), x, y))
}

pub(crate) fn ia_holds(rows: &[(Tuple, u64)], x: AttrSet, y: AttrSet) -> bool {
    let xy = x | y;
    if rows.iter().any(|(t, _)| xy.iter().any(|i| t.get(i).is_none())) {
        return false;
    }
    let mut px = BTreeSet::new();
    let mut py = BTreeSet::new();
    let mut pairs = BTreeSet::new();
    for (t, _) in rows {
        let (a, b) = (t.project(x), t.project(y));
        px.insert(a.clone());
        py.insert(b.clone());
        pairs.insert((a, b));
    }
    pairs.len() == px.len() * py.len()
}

/// Positions of `set` relative to the ascending listing of `within`.
pub(crate) fn remap(set: AttrSet, within: AttrSet) -> AttrSet {
    within
        .iter()
        .enumerate()
        .filter(|(_, i)| set.contains(*i))
        .map(|(k, _)| k)
        .collect()
}

/// One grounded copy of `t`: cells of `xy` come from `ground` (listed in
/// ascending attribute order), remaining nulls take the first domain value.
pub(crate) fn fill_copy(t: &Tuple, xy: AttrSet, ground: &[Option<u32>]) -> Tuple {
    let mut k = 0;
    let cells = t
        .cells()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            if xy.contains(i) {
                k += 1;
                ground[k - 1].or(*c).or(Some(0))
            } else {
                c.or(Some(0))
            }
        })
        .collect();
    Tuple(cells)
}

/// Extends a grounding `g` of `r(XY)` to a grounding of `r`.
pub(crate) fn lift_grounding(r: &Relation, xy: AttrSet, g: &Relation) -> Relation {
    let left: Vec<(Tuple, u64)> = r.rows().iter().map(|(t, m)| (t.project(xy), *m)).collect();
    let right: Vec<(Tuple, u64)> = g.rows().to_vec();
    let matching = flow::b_matching(&left, &right, |l, g| l.is_grounded_by(g)).expect("g grounds the projection of r");
    let mut rows = Vec::new();
    for ((t, _), pairs) in r.rows().iter().zip(matching) {
        for (j, copies) in pairs {
            rows.push((fill_copy(t, xy, right[j].0.cells()), copies));
        }
    }
    Relation::from_rows(r.schema().clone(), rows).expect("lifted rows stay inside the schema")
}
