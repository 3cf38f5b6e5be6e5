//! Possible independence between two single attributes, decided by max-flow.
//!
//! With `r_×` the product of the non-null values of columns `A` and `B`,
//! the network has a source, one node per distinct tuple of `r(AB)`, one
//! node per cell of `r_×`, and a sink. The source feeds each tuple up to
//! its multiplicity, a tuple sends one unit to each cell that grounds it,
//! and each cell passes one unit to the sink. `A ⊥_p B` holds exactly when
//! the maximum flow saturates every cell.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::check::flow::FlowNetwork;
use crate::check::{CheckReport, CheckStats, Method};
use crate::error::{Error, Result};
use crate::relation::{AttrSet, Cell, Relation, Tuple};

/// The network for `A ⊥_p B` with its node labels.
#[derive(Debug, Clone)]
pub struct UnaryNetwork {
    pub network: FlowNetwork,
    /// Distinct `(A, B)` tuples with multiplicities; tuple `i` is node `1 + i`.
    pub tuples: Vec<(Tuple, u64)>,
    /// Cells of `r_×`; cell `j` is node `1 + tuples.len() + j`.
    pub products: Vec<(u32, u32)>,
}

impl UnaryNetwork {
    pub fn tuple_node(&self, i: usize) -> usize {
        1 + i
    }

    pub fn product_node(&self, j: usize) -> usize {
        1 + self.tuples.len() + j
    }
}

fn column_values(r: &Relation, attr: usize) -> Vec<u32> {
    let set: BTreeSet<u32> = r.rows().iter().filter_map(|(t, _)| t.get(attr)).collect();
    set.into_iter().collect()
}

fn grounds(cell: Cell, v: u32) -> bool {
    cell.is_none_or(|c| c == v)
}

pub fn build_flow_network(r: &Relation, a: usize, b: usize) -> Result<UnaryNetwork> {
    r.schema()
        .vocabulary()
        .check(AttrSet::singleton(a) | AttrSet::singleton(b))?;
    if a == b {
        return Err(Error::InvalidParameter("the two attributes must differ".into()));
    }
    let (va, vb) = (column_values(r, a), column_values(r, b));
    if va.is_empty() || vb.is_empty() {
        return Err(Error::InvalidParameter("both columns need a non-null value".into()));
    }

    let mut tuples: Vec<(Tuple, u64)> = Vec::new();
    for (t, m) in r.rows() {
        let p = Tuple(vec![t.get(a), t.get(b)]);
        match tuples.iter_mut().find(|(s, _)| *s == p) {
            Some(entry) => entry.1 += m,
            None => tuples.push((p, *m)),
        }
    }
    let products: Vec<(u32, u32)> = va.iter().flat_map(|&x| vb.iter().map(move |&y| (x, y))).collect();

    let sink = 1 + tuples.len() + products.len();
    let mut network = FlowNetwork::new(sink + 1, 0, sink)?;
    for (i, (_, m)) in tuples.iter().enumerate() {
        network.add_edge(0, 1 + i, *m)?;
    }
    for (i, (t, _)) in tuples.iter().enumerate() {
        for (j, &(x, y)) in products.iter().enumerate() {
            if grounds(t.get(0), x) && grounds(t.get(1), y) {
                network.add_edge(1 + i, 1 + tuples.len() + j, 1)?;
            }
        }
    }
    for j in 0..products.len() {
        network.add_edge(1 + tuples.len() + j, sink, 1)?;
    }
    Ok(UnaryNetwork {
        network,
        tuples,
        products,
    })
}

fn single(set: AttrSet) -> Result<usize> {
    if set.len() != 1 {
        return Err(Error::NotUnary);
    }
    Ok(set.iter().next().expect("one element"))
}

/// Grounds every null with `fill(attr)`.
fn ground_all(r: &Relation, fill: impl Fn(usize) -> u32) -> Relation {
    let rows = r.rows().iter().map(|(t, m)| {
        let cells = t.cells().iter().enumerate().map(|(i, c)| c.or(Some(fill(i)))).collect();
        (Tuple(cells), *m)
    });
    Relation::from_rows(r.schema().clone(), rows).expect("grounding stays inside the schema")
}

/// `A ⊥_p B` for single attributes, with a satisfying grounding on success.
pub fn check_pia_unary(r: &Relation, x: AttrSet, y: AttrSet) -> Result<CheckReport> {
    r.schema().vocabulary().check(x | y)?;
    let (a, b) = (single(x)?, single(y)?);
    let report = |verdict, witness, flow| CheckReport {
        verdict,
        method: Method::PiaFlow,
        witness,
        stats: CheckStats { explored: 0, flow },
    };

    if a == b {
        let vals = column_values(r, a);
        if vals.len() > 1 {
            return Ok(report(false, None, None));
        }
        let c = vals.first().copied().unwrap_or(0);
        let w = ground_all(r, |i| if i == a { c } else { 0 });
        return Ok(report(true, Some(w), None));
    }
    if column_values(r, a).is_empty() || column_values(r, b).is_empty() {
        return Ok(report(true, Some(ground_all(r, |_| 0)), None));
    }

    let net = build_flow_network(r, a, b)?;
    let flow = net.network.max_flow();
    if flow.value != net.products.len() as u64 {
        return Ok(report(false, None, Some(flow.value)));
    }

    // cells matched to each distinct (A, B) tuple
    let mut matched: Vec<Vec<usize>> = vec![Vec::new(); net.tuples.len()];
    for (e, f) in net.network.edges().iter().zip(&flow.flows) {
        let (from, to) = (e.from, e.to);
        if *f > 0 && from >= 1 && from <= net.tuples.len() && to != net.network.sink() {
            matched[from - 1].push(to - 1 - net.tuples.len());
        }
    }
    let mut rows = Vec::new();
    for (t, m) in r.rows() {
        let i = net
            .tuples
            .iter()
            .position(|(s, _)| s.get(0) == t.get(a) && s.get(1) == t.get(b))
            .expect("every row projects to a network tuple");
        let fallback = net
            .products
            .iter()
            .position(|&(p, q)| grounds(t.get(a), p) && grounds(t.get(b), q))
            .expect("non-null values come from the columns");
        for _ in 0..*m {
            let j = matched[i].pop().unwrap_or(fallback);
            let (p, q) = net.products[j];
            let cells = t
                .cells()
                .iter()
                .enumerate()
                .map(|(k, c)| match k {
                    _ if k == a => Some(p),
                    _ if k == b => Some(q),
                    _ => c.or(Some(0)),
                })
                .collect();
            rows.push((Tuple(cells), 1));
        }
    }
    let witness = Relation::from_rows(r.schema().clone(), rows)?;
    Ok(report(true, Some(witness), Some(flow.value)))
}

/// Necessary condition for `X ⊥_p Y` with disjoint sides: the distinct
/// complete `X`-values times the distinct complete `Y`-values cannot exceed
/// the number of rows. Returns false when the atom is refuted.
pub fn pia_counting_bound(r: &Relation, x: AttrSet, y: AttrSet) -> Result<bool> {
    r.schema().vocabulary().check(x | y)?;
    if !x.is_disjoint(y) {
        return Err(Error::OverlappingSides);
    }
    let complete = |s: AttrSet| -> u128 {
        r.rows()
            .iter()
            .map(|(t, _)| t.project(s))
            .filter(Tuple::is_complete)
            .collect::<BTreeSet<_>>()
            .len() as u128
    };
    Ok(complete(x) * complete(y) <= r.total_multiplicity() as u128)
}
