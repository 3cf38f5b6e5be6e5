//! Certain independence without grounding enumeration.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::check::{check_ia, remap};
use crate::error::Result;
use crate::relation::{AttrSet, Relation, Tuple};

/// Every grounding of `r` is constant on `X`.
///
/// A relation of total multiplicity at most one has only single-row
/// groundings and is therefore constant on every `X`.
pub fn is_certainly_constant(r: &Relation, x: AttrSet) -> Result<bool> {
    r.schema().vocabulary().check(x)?;
    if r.total_multiplicity() <= 1 {
        return Ok(true);
    }
    let mut seen = BTreeSet::new();
    for (t, _) in r.rows() {
        let p = t.project(x);
        if !p.is_complete() {
            return Ok(false);
        }
        seen.insert(p);
    }
    Ok(seen.len() == 1)
}

/// `X ⊥_c Y` holds iff one side is certainly constant, or both of these
/// hold:
///
/// 1. every complete `X` value and complete `Y` value of `r` occur together
///    in some row complete on `XY`;
/// 2. every grounding of every row of `r(XY)` is already a row of `r(XY)`.
///
/// The second condition usually forces `r(XY)` to be complete, except when
/// the complete rows already use every domain value a null could take.
pub fn check_cia_fast(r: &Relation, x: AttrSet, y: AttrSet) -> Result<bool> {
    check_ia(r, x, y)?;
    if r.total_multiplicity() <= 1 {
        return Ok(true);
    }
    if is_certainly_constant(r, x)? || is_certainly_constant(r, y)? {
        return Ok(true);
    }
    let xy = x | y;
    let rows = r.project_rows(xy);
    let (x, y) = (remap(x, xy), remap(y, xy));
    let complete: BTreeSet<&Tuple> = rows.iter().map(|(t, _)| t).filter(|t| t.is_complete()).collect();
    let xs: BTreeSet<Tuple> = rows
        .iter()
        .map(|(t, _)| t.project(x))
        .filter(|t| t.is_complete())
        .collect();
    let ys: BTreeSet<Tuple> = rows
        .iter()
        .map(|(t, _)| t.project(y))
        .filter(|t| t.is_complete())
        .collect();
    let pairs = complete
        .iter()
        .filter(|t| xs.contains(&t.project(x)) && ys.contains(&t.project(y)))
        .count();
    if pairs != xs.len() * ys.len() {
        return Ok(false);
    }
    let sizes: Vec<usize> = xy.iter().map(|a| r.schema().domain_size(a)).collect();
    Ok(rows.iter().all(|(t, _)| {
        let mut groundings: u128 = 1;
        for (c, d) in t.cells().iter().zip(&sizes) {
            if c.is_none() {
                groundings = groundings.saturating_mul(*d as u128);
            }
        }
        groundings <= complete.len() as u128
            && complete.iter().filter(|g| t.is_grounded_by(g)).count() as u128 == groundings
    }))
}
