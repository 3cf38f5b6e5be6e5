//! Exact decision of `X ⊥_p Y` for arbitrary attribute sets.
//!
//! Shared attributes `O = X ∩ Y` must be constant, which is possible iff
//! each such column holds at most one distinct non-null value. What remains
//! is `X' ⊥_p Y'` with disjoint sides.
//!
//! A grounding satisfies `X' ⊥ Y'` iff its `X'`-values `A` and `Y'`-values
//! `B` have every cell of `A × B` realised by some row. So the search picks
//! host sets: `A` must contain every complete `X'`-part and, for every
//! incomplete `X'`-part, some compatible complete tuple (likewise `B`).
//! Given `A` and `B`, a max-flow from rows to cells decides whether the rows
//! can cover `A × B`; rows that are not needed for coverage are grounded to
//! any compatible cell.
//!
//! Two reductions keep the host search small without losing answers:
//!
//! * Values of a column that do not occur in it can be renamed to a value
//!   that does, which keeps both the grounding and the independence. Hosts
//!   are therefore built from observed values only.
//! * A host compatible with a superset of the incomplete parts of another
//!   host can replace it. Only maximal hosts are branched on.
//!
//! Any host set that still hosts every part after dropping members stays
//! feasible, so the branch-and-bound only needs `|A| · |B|` at most the
//! number of rows.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::check::flow::FlowNetwork;
use crate::check::unary::pia_counting_bound;
use crate::check::{CheckReport, CheckStats, Method};
use crate::error::Result;
use crate::relation::{AttrSet, Relation, Tuple};

/// Possible independence with a satisfying grounding on success.
pub fn check_pia(r: &Relation, x: AttrSet, y: AttrSet) -> Result<CheckReport> {
    r.schema().vocabulary().check(x | y)?;
    let mut stats = CheckStats::default();
    let verdict = |v: bool, witness, stats| CheckReport {
        verdict: v,
        method: Method::PiaSearch,
        witness,
        stats,
    };

    let overlap = x & y;
    let mut constants: Vec<(usize, u32)> = Vec::new();
    for a in overlap {
        let vals: BTreeSet<u32> = r.rows().iter().filter_map(|(t, _)| t.get(a)).collect();
        if vals.len() > 1 {
            return Ok(verdict(false, None, stats));
        }
        constants.push((a, vals.first().copied().unwrap_or(0)));
    }
    let (xs, ys) = (x - overlap, y - overlap);
    let constant_of = |a: usize| constants.iter().find(|(b, _)| *b == a).map(|(_, v)| *v);

    if xs.is_empty() || ys.is_empty() || r.total_multiplicity() == 0 {
        let w = ground(r, |t, i| t.get(i).or(constant_of(i)).or(Some(0)));
        return Ok(verdict(true, Some(w), stats));
    }
    if !pia_counting_bound(r, xs, ys)? {
        return Ok(verdict(false, None, stats));
    }

    let core = Core::new(r, xs, ys);
    let n = r.total_multiplicity();
    let host_a = core
        .x
        .host_sets(n / core.y.complete.len().max(1) as u64, &mut stats.explored);
    let host_b = core
        .y
        .host_sets(n / core.x.complete.len().max(1) as u64, &mut stats.explored);

    let mut pairs: Vec<(u64, usize, usize)> = Vec::new();
    for (i, a) in host_a.iter().enumerate() {
        for (j, b) in host_b.iter().enumerate() {
            let cells = (a.len() * b.len()) as u64;
            if cells <= n {
                pairs.push((cells, i, j));
            }
        }
    }
    pairs.sort_unstable();

    for (cells, i, j) in pairs {
        stats.explored += 1;
        let (a, b) = (&host_a[i], &host_b[j]);
        if let Some(assign) = core.cover(a, b, cells) {
            stats.flow = Some(cells);
            let witness = core.witness(r, a, b, assign, &constants);
            return Ok(verdict(true, Some(witness), stats));
        }
    }
    Ok(verdict(false, None, stats))
}

fn ground(r: &Relation, cell: impl Fn(&Tuple, usize) -> Option<u32>) -> Relation {
    let rows = r
        .rows()
        .iter()
        .map(|(t, m)| (Tuple((0..t.cells().len()).map(|i| cell(t, i)).collect()), *m));
    Relation::from_rows(r.schema().clone(), rows).expect("grounding stays inside the schema")
}

/// The distinct parts of one side of the atom.
struct Side {
    attrs: AttrSet,
    complete: Vec<Tuple>,
    partial: Vec<Tuple>,
    /// Observed non-null values per attribute of the side, or `[0]` for an
    /// all-null column.
    candidates: Vec<Vec<u32>>,
}

impl Side {
    fn new(r: &Relation, attrs: AttrSet) -> Self {
        let parts: BTreeSet<Tuple> = r.rows().iter().map(|(t, _)| t.project(attrs)).collect();
        let (complete, partial): (Vec<Tuple>, Vec<Tuple>) = parts.into_iter().partition(Tuple::is_complete);
        let candidates = attrs
            .iter()
            .map(|a| {
                let vals: BTreeSet<u32> = r.rows().iter().filter_map(|(t, _)| t.get(a)).collect();
                if vals.is_empty() {
                    vec![0]
                } else {
                    vals.into_iter().collect()
                }
            })
            .collect();
        Side {
            attrs,
            complete,
            partial,
            candidates,
        }
    }

    /// Groundings of `part` over the candidate values, in lexicographic order.
    fn groundings(&self, part: &Tuple) -> Vec<Tuple> {
        let mut out = vec![part.clone()];
        for (k, c) in part.cells().iter().enumerate() {
            if c.is_none() {
                out = out
                    .into_iter()
                    .flat_map(|t| {
                        self.candidates[k].iter().map(move |&v| {
                            let mut t = t.clone();
                            t.0[k] = Some(v);
                            t
                        })
                    })
                    .collect();
            }
        }
        out
    }

    fn hosted(&self, part: &Tuple, hosts: &[Tuple]) -> bool {
        hosts.iter().any(|h| part.is_compatible(h))
    }

    /// Host sets that are minimal among those found, each sorted.
    fn host_sets(&self, max_len: u64, explored: &mut u64) -> Vec<Vec<Tuple>> {
        let mut found = BTreeSet::new();
        let mut hosts = self.complete.clone();
        self.extend(&mut hosts, max_len as usize, &mut found, explored);
        let found: Vec<Vec<Tuple>> = found.into_iter().collect();
        let is_superset = |big: &Vec<Tuple>, small: &Vec<Tuple>| {
            big.len() > small.len() && small.iter().all(|t| big.binary_search(t).is_ok())
        };
        found
            .iter()
            .filter(|s| !found.iter().any(|o| is_superset(s, o)))
            .cloned()
            .collect()
    }

    fn extend(&self, hosts: &mut Vec<Tuple>, max_len: usize, found: &mut BTreeSet<Vec<Tuple>>, explored: &mut u64) {
        *explored += 1;
        let open: Vec<&Tuple> = self.partial.iter().filter(|p| !self.hosted(p, hosts)).collect();
        if open.is_empty() {
            let mut set = hosts.clone();
            set.sort();
            set.dedup();
            found.insert(set);
            return;
        }
        if hosts.len() >= max_len {
            return;
        }
        let branching = |p: &Tuple| -> usize {
            p.cells()
                .iter()
                .enumerate()
                .filter(|(_, c)| c.is_none())
                .map(|(k, _)| self.candidates[k].len())
                .product()
        };
        let part = open.iter().min_by_key(|p| branching(p)).expect("open is non-empty");

        let options = self.groundings(part);
        let masks: Vec<Vec<bool>> = options
            .iter()
            .map(|g| self.partial.iter().map(|p| p.is_compatible(g)).collect())
            .collect();
        let dominated = |i: usize, j: usize| -> bool {
            // option i is no better than option j
            masks[i].iter().zip(&masks[j]).all(|(a, b)| !a || *b)
        };
        for i in 0..options.len() {
            let beaten = (0..options.len()).any(|j| j != i && dominated(i, j) && (!dominated(j, i) || j < i));
            if beaten {
                continue;
            }
            hosts.push(options[i].clone());
            self.extend(hosts, max_len, found, explored);
            hosts.pop();
        }
    }
}

/// The disjoint core `X' ⊥_p Y'` of an atom.
struct Core {
    x: Side,
    y: Side,
    /// Distinct `(X'-part, Y'-part)` pairs with summed multiplicities.
    rows: Vec<(Tuple, Tuple, u64)>,
    index: BTreeMap<(Tuple, Tuple), usize>,
}

impl Core {
    fn new(r: &Relation, xs: AttrSet, ys: AttrSet) -> Self {
        let mut rows: Vec<(Tuple, Tuple, u64)> = Vec::new();
        let mut index: BTreeMap<(Tuple, Tuple), usize> = BTreeMap::new();
        for (t, m) in r.rows() {
            let key = (t.project(xs), t.project(ys));
            match index.get(&key) {
                Some(&k) => rows[k].2 += m,
                None => {
                    index.insert(key.clone(), rows.len());
                    rows.push((key.0, key.1, *m));
                }
            }
        }
        Core {
            x: Side::new(r, xs),
            y: Side::new(r, ys),
            rows,
            index,
        }
    }

    /// Max-flow from rows to the cells of `a × b`. On success, returns the
    /// cells (as `(i, j)` index pairs) assigned to each row.
    fn cover(&self, a: &[Tuple], b: &[Tuple], cells: u64) -> Option<Vec<Vec<(usize, usize)>>> {
        let rows = self.rows.len();
        let sink = 1 + rows + a.len() * b.len();
        let mut net = FlowNetwork::new(sink + 1, 0, sink).expect("distinct endpoints");
        for (k, (_, _, m)) in self.rows.iter().enumerate() {
            net.add_edge(0, 1 + k, *m).expect("valid edge");
        }
        let mut middle = Vec::new();
        for (k, (px, py, _)) in self.rows.iter().enumerate() {
            for (i, ha) in a.iter().enumerate() {
                if !px.is_compatible(ha) {
                    continue;
                }
                for (j, hb) in b.iter().enumerate() {
                    if py.is_compatible(hb) {
                        let cell = 1 + rows + i * b.len() + j;
                        let e = net.add_edge(1 + k, cell, 1).expect("valid edge");
                        middle.push((k, i, j, e));
                    }
                }
            }
        }
        for c in 0..a.len() * b.len() {
            net.add_edge(1 + rows + c, sink, 1).expect("valid edge");
        }
        let flow = net.max_flow();
        if flow.value != cells {
            return None;
        }
        let mut assign = vec![Vec::new(); rows];
        for (k, i, j, e) in middle {
            if flow.flows[e] > 0 {
                assign[k].push((i, j));
            }
        }
        Some(assign)
    }

    fn witness(
        &self,
        r: &Relation,
        a: &[Tuple],
        b: &[Tuple],
        mut assign: Vec<Vec<(usize, usize)>>,
        constants: &[(usize, u32)],
    ) -> Relation {
        let (xs, ys) = (self.x.attrs, self.y.attrs);
        let mut out = Vec::new();
        for (t, m) in r.rows() {
            let k = self.index[&(t.project(xs), t.project(ys))];
            let (px, py, _) = &self.rows[k];
            let fallback = (
                a.iter().position(|h| px.is_compatible(h)).expect("a hosts every part"),
                b.iter().position(|h| py.is_compatible(h)).expect("b hosts every part"),
            );
            for _ in 0..*m {
                let (i, j) = assign[k].pop().unwrap_or(fallback);
                let mut cells = t.cells().to_vec();
                for (pos, attr) in xs.iter().enumerate() {
                    cells[attr] = a[i].get(pos);
                }
                for (pos, attr) in ys.iter().enumerate() {
                    cells[attr] = b[j].get(pos);
                }
                for &(attr, v) in constants {
                    cells[attr] = Some(v);
                }
                for c in cells.iter_mut() {
                    if c.is_none() {
                        *c = Some(0);
                    }
                }
                out.push((Tuple(cells), 1));
            }
        }
        Relation::from_rows(r.schema().clone(), out).expect("grounding stays inside the schema")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::check_ia;
    use crate::check::oracle::check_pia_oracle;
    use crate::check::tests::household;
    use crate::relation::RelationBuilder;

    fn exchange_failure() -> Relation {
        let mut b = RelationBuilder::new(["A", "B", "C"]).unwrap();
        for row in [["0", "0", "0"], ["*", "1", "0"], ["*", "0", "1"], ["1", "1", "1"]] {
            b.row_marked(&row, 1).unwrap();
        }
        for a in ["A", "B", "C"] {
            b.declare_domain(a, ["0", "1"]).unwrap();
        }
        b.build().unwrap()
    }

    fn assert_witness(r: &Relation, x: AttrSet, y: AttrSet) {
        let rep = check_pia(r, x, y).unwrap();
        assert!(rep.verdict);
        let w = rep.witness.unwrap();
        assert!(r.is_grounded_by(&w));
        assert!(check_ia(&w, x, y).unwrap());
    }

    #[test]
    fn exchange_failure_verdicts() {
        let r = exchange_failure();
        let s = |n: &[&str]| r.schema().set(n.iter().copied()).unwrap();
        assert!(!check_pia(&r, s(&["A"]), s(&["B", "C"])).unwrap().verdict);
        assert_witness(&r, s(&["A"]), s(&["B"]));
        assert_witness(&r, s(&["A", "B"]), s(&["C"]));
    }

    #[test]
    fn household_verdicts() {
        let r = household();
        let s = |n: &str| r.schema().set([n]).unwrap();
        assert_witness(&r, s("e"), s("s"));
        assert_witness(&r, s("r"), s("r"));
        assert_witness(&r, s("s"), s("g"));
        assert!(!check_pia(&r, s("a"), s("a")).unwrap().verdict);
    }

    #[test]
    fn overlap_needs_constant_columns() {
        let mut b = RelationBuilder::new(["A", "B", "C"]).unwrap();
        b.row_marked(&["0", "*", "0"], 1).unwrap();
        b.row_marked(&["1", "0", "1"], 1).unwrap();
        b.row_marked(&["0", "0", "1"], 1).unwrap();
        b.row_marked(&["1", "*", "0"], 1).unwrap();
        let r = b.build().unwrap();
        let s = |n: &[&str]| r.schema().set(n.iter().copied()).unwrap();
        assert_witness(&r, s(&["A", "B"]), s(&["B", "C"]));
        assert!(!check_pia(&r, s(&["A", "C"]), s(&["C"])).unwrap().verdict);
        let oracle = check_pia_oracle(&r, s(&["A", "B"]), s(&["B", "C"])).unwrap();
        assert!(oracle.verdict);
    }
}
