//! Reference checkers that enumerate groundings.
//!
//! Only the projection onto `XY` is grounded: the other columns do not
//! influence the verdict. Witnesses are extended back to the full schema
//! with the first domain value in every remaining null cell.

use crate::check::{ia_holds, lift_grounding, remap, CheckReport, CheckStats, Method};
use crate::error::{Error, Result};
use crate::relation::{AttrSet, Relation};

pub const DEFAULT_ORACLE_BOUND: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    pub bound: u64,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            bound: DEFAULT_ORACLE_BOUND,
        }
    }
}

impl Oracle {
    pub fn new(bound: u64) -> Self {
        Oracle { bound }
    }

    fn prepare(&self, r: &Relation, x: AttrSet, y: AttrSet) -> Result<(Relation, AttrSet, AttrSet)> {
        let vocab = r.schema().vocabulary();
        vocab.check(x)?;
        vocab.check(y)?;
        let xy = x | y;
        let p = r.project(xy)?;
        let groundings = p.count_groundings();
        if groundings > self.bound as u128 {
            return Err(Error::OracleInfeasible {
                groundings,
                bound: self.bound,
            });
        }
        Ok((p, remap(x, xy), remap(y, xy)))
    }

    /// Certain independence: every grounding satisfies `X ⊥ Y`. A refuted
    /// atom comes with the first violating grounding.
    pub fn cia(&self, r: &Relation, x: AttrSet, y: AttrSet) -> Result<CheckReport> {
        let (p, xs, ys) = self.prepare(r, x, y)?;
        let mut explored = 0;
        for g in p.groundings(None) {
            explored += 1;
            if !ia_holds(g.rows(), xs, ys) {
                return Ok(CheckReport {
                    verdict: false,
                    method: Method::Oracle,
                    witness: Some(lift_grounding(r, x | y, &g)),
                    stats: CheckStats { explored, flow: None },
                });
            }
        }
        Ok(CheckReport {
            verdict: true,
            method: Method::Oracle,
            witness: None,
            stats: CheckStats { explored, flow: None },
        })
    }

    /// Possible independence: some grounding satisfies `X ⊥ Y`, reported as
    /// the witness.
    pub fn pia(&self, r: &Relation, x: AttrSet, y: AttrSet) -> Result<CheckReport> {
        let (p, xs, ys) = self.prepare(r, x, y)?;
        let mut explored = 0;
        for g in p.groundings(None) {
            explored += 1;
            if ia_holds(g.rows(), xs, ys) {
                return Ok(CheckReport {
                    verdict: true,
                    method: Method::Oracle,
                    witness: Some(lift_grounding(r, x | y, &g)),
                    stats: CheckStats { explored, flow: None },
                });
            }
        }
        Ok(CheckReport {
            verdict: false,
            method: Method::Oracle,
            witness: None,
            stats: CheckStats { explored, flow: None },
        })
    }
}

/// [`Oracle::cia`] with the default bound, verdict only.
pub fn check_cia_oracle(r: &Relation, x: AttrSet, y: AttrSet) -> Result<bool> {
    Ok(Oracle::default().cia(r, x, y)?.verdict)
}

/// [`Oracle::pia`] with the default bound.
pub fn check_pia_oracle(r: &Relation, x: AttrSet, y: AttrSet) -> Result<CheckReport> {
    Oracle::default().pia(r, x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::check_ia;
    use crate::check::tests::household;

    #[test]
    fn household_verdicts() {
        let r = household();
        let v = r.schema().vocabulary().clone();
        let s = |n: &str| v.set([n]).unwrap();
        assert!(check_cia_oracle(&r, s("s"), s("g")).unwrap());
        assert!(!check_cia_oracle(&r, s("e"), s("s")).unwrap());
        assert!(!check_cia_oracle(&r, s("r"), s("r")).unwrap());

        let rep = check_pia_oracle(&r, s("e"), s("s")).unwrap();
        assert!(rep.verdict);
        let w = rep.witness.unwrap();
        assert!(r.is_grounded_by(&w));
        assert!(check_ia(&w, s("e"), s("s")).unwrap());
        assert!(check_pia_oracle(&r, s("r"), s("r")).unwrap().verdict);
    }

    #[test]
    fn refuted_certain_atom_has_violating_grounding() {
        let r = household();
        let v = r.schema().vocabulary().clone();
        let e = v.set(["e"]).unwrap();
        let s = v.set(["s"]).unwrap();
        let rep = Oracle::default().cia(&r, e, s).unwrap();
        let w = rep.witness.unwrap();
        assert!(r.is_grounded_by(&w));
        assert!(!check_ia(&w, e, s).unwrap());
    }

    #[test]
    fn bound_is_enforced() {
        let r = household();
        let all = r.schema().attributes();
        assert!(matches!(
            Oracle::new(2).pia(&r, all, all),
            Err(Error::OracleInfeasible { .. })
        ));
    }
}
