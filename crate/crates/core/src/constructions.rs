//! Generators for the witness relations used in the independence proofs,
//! and the reduction from CNF satisfiability to possible independence.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::atom::Atom;
use crate::check::check_pia;
use crate::error::{Error, Result};
use crate::relation::{AttrSet, Cell, Relation, Schema, Tuple, Vocabulary};

fn binary(names: &[&str]) -> Schema {
    Schema::uniform(names.iter().copied(), 2).expect("valid names")
}

fn rows(schema: Schema, rows: &[(&[Cell], u64)]) -> Relation {
    Relation::from_rows(schema, rows.iter().map(|(t, m)| (Tuple(t.to_vec()), *m))).expect("valid rows")
}

const O: Cell = Some(0);
const I: Cell = Some(1);
const N: Cell = None;

/// Four rows over `A, B, C` that satisfy `A ⊥_p B` and `AB ⊥_p C` but not
/// `A ⊥_p BC`.
pub fn exchange_failure_relation() -> Relation {
    rows(
        binary(&["A", "B", "C"]),
        &[(&[O, O, O], 1), (&[N, I, O], 1), (&[N, O, I], 1), (&[I, I, I], 1)],
    )
}

/// The grounding of [`exchange_failure_relation`] that satisfies `A ⊥ B`.
pub fn exchange_failure_grounding_ab() -> Relation {
    rows(
        binary(&["A", "B", "C"]),
        &[(&[O, O, O], 1), (&[O, I, O], 1), (&[I, O, I], 1), (&[I, I, I], 1)],
    )
}

/// The grounding of [`exchange_failure_relation`] that satisfies `AB ⊥ C`.
pub fn exchange_failure_grounding_abc() -> Relation {
    rows(
        binary(&["A", "B", "C"]),
        &[(&[O, O, O], 1), (&[I, I, O], 1), (&[O, O, I], 1), (&[I, I, I], 1)],
    )
}

/// Number of rows of [`pia_separating_family`].
pub fn separating_family_rows(k: usize, m: usize) -> u64 {
    if m == 1 {
        (1u64 << (k + 1)) - 1
    } else {
        (1u64 << k) * ((1u64 << m) - 1) - 1
    }
}

/// Largest `k` accepted by [`pia_separating_family`].
pub const MAX_FAMILY_WIDTH: usize = 20;

/// Relation over `X1..Xk, Y1..Ym, Z1..Zn` violating `X ⊥_p Y` while
/// satisfying every possible atom that does not derive it.
///
/// The first `2^k` rows list `{0,1}^k` on `X`. For `m ≥ 2` the first
/// `2^m - 1` of them list every `Y` value except all ones; for `m = 1` the
/// first two carry `Y = 0` and `Y = 1`. Other `Y` cells are null, all-null
/// rows pad the total, and every `Z` column is 0.
pub fn pia_separating_family(k: usize, m: usize, extra: usize) -> Result<Relation> {
    if m == 0 || k < m {
        return Err(Error::InvalidParameter(format!(
            "separating family needs k >= m >= 1, got k = {k}, m = {m}"
        )));
    }
    if k > MAX_FAMILY_WIDTH || k + m + extra > crate::relation::MAX_ATTRIBUTES {
        return Err(Error::InvalidParameter(format!(
            "separating family too large: k = {k}, m = {m}, extra = {extra}"
        )));
    }
    let names: Vec<String> = (1..=k)
        .map(|i| format!("X{i}"))
        .chain((1..=m).map(|i| format!("Y{i}")))
        .chain((1..=extra).map(|i| format!("Z{i}")))
        .collect();
    let schema = Schema::uniform(names, 2)?;
    let bits = |v: usize, width: usize| (0..width).rev().map(move |b| Some(((v >> b) & 1) as u32));
    let labelled = if m == 1 { 2 } else { (1 << m) - 1 };
    let mut out: Vec<(Tuple, u64)> = Vec::new();
    for x in 0..1usize << k {
        let mut cells: Vec<Cell> = bits(x, k).collect();
        if x < labelled {
            cells.extend(bits(x, m));
        } else {
            cells.extend(core::iter::repeat_n(None, m));
        }
        cells.extend(core::iter::repeat_n(Some(0), extra));
        out.push((Tuple(cells), 1));
    }
    let pad = separating_family_rows(k, m) - (1u64 << k);
    if pad > 0 {
        let mut cells: Vec<Cell> = vec![None; k + m];
        cells.extend(core::iter::repeat_n(Some(0), extra));
        out.push((Tuple(cells), pad));
    }
    Relation::from_rows(schema, out)
}

/// Relation over `vocab` violating `X ⊥_c Y` while satisfying every
/// disjoint possible atom over `XY` with both sides non-empty.
///
/// Complete rows over binary `XY` and constant `Z` have `A1` equal to the
/// parity of the other columns; each is repeated with `A1` null.
pub fn parity_relation(vocab: &Vocabulary, x: AttrSet, y: AttrSet, z: AttrSet, a1: usize) -> Result<Relation> {
    vocab.check(x | y | z)?;
    if x.is_empty() || y.is_empty() || !x.is_disjoint(y) || !z.is_disjoint(x | y) {
        return Err(Error::InvalidParameter(String::from(
            "parity relation needs disjoint X, Y, Z with X and Y non-empty",
        )));
    }
    if x | y | z != vocab.all() {
        return Err(Error::InvalidParameter(String::from(
            "parity relation needs X, Y, Z to cover the vocabulary",
        )));
    }
    if !x.contains(a1) {
        return Err(Error::InvalidParameter(String::from("A1 must belong to X")));
    }
    let free: Vec<usize> = (x | y).iter().filter(|&a| a != a1).collect();
    if free.len() > MAX_FAMILY_WIDTH {
        return Err(Error::InvalidParameter(String::from("parity relation too large")));
    }
    let schema = Schema::new(
        vocab.clone(),
        (0..vocab.len())
            .map(|_| vec![String::from("0"), String::from("1")])
            .collect(),
    )?;
    let mut r1 = Vec::new();
    for v in 0..1usize << free.len() {
        let mut cells: Vec<Cell> = vec![Some(0); vocab.len()];
        let mut parity = 0;
        for (b, &a) in free.iter().enumerate() {
            let bit = ((v >> (free.len() - 1 - b)) & 1) as u32;
            cells[a] = Some(bit);
            parity ^= bit;
        }
        cells[a1] = Some(parity);
        r1.push(Tuple(cells));
    }
    let r2: Vec<Tuple> = r1
        .iter()
        .map(|t| {
            let mut t = t.clone();
            t.0[a1] = None;
            t
        })
        .collect();
    Relation::from_rows(schema, r1.into_iter().chain(r2).map(|t| (t, 1)))
}

/// Complete relation over `vocab` with `B` taking both values and every
/// other column constant 0. It violates `B ⊥_p B` and satisfies every
/// possible atom one of whose sides avoids `B`.
pub fn constancy_counterexample(vocab: &Vocabulary, b: usize, r: AttrSet) -> Result<Relation> {
    vocab.check(r)?;
    if !r.contains(b) {
        return Err(Error::InvalidParameter(String::from("B must belong to R")));
    }
    let schema = Schema::new(
        vocab.clone(),
        (0..vocab.len())
            .map(|_| vec![String::from("0"), String::from("1")])
            .collect(),
    )?;
    let rows = (0..2u32).map(|v| {
        let mut cells: Vec<Cell> = vec![Some(0); vocab.len()];
        cells[b] = Some(v);
        (Tuple(cells), 1)
    });
    Relation::from_rows(schema, rows)
}

/// A formula in conjunctive normal form. Literals are non-zero integers:
/// `v` for variable `v` and `-v` for its negation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    variables: u32,
    clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn new(variables: u32, clauses: Vec<Vec<i32>>) -> Result<Self> {
        for (i, c) in clauses.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::InvalidCnf(format!("clause {} is empty", i + 1)));
            }
            for &l in c {
                if l == 0 || l.unsigned_abs() > variables {
                    return Err(Error::InvalidCnf(format!(
                        "literal {l} in clause {} is out of range 1..={variables}",
                        i + 1
                    )));
                }
            }
        }
        Ok(CnfFormula { variables, clauses })
    }

    pub fn variables(&self) -> u32 {
        self.variables
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    /// Variables occurring in some clause, ascending.
    pub fn occurring(&self) -> Vec<u32> {
        let mut vs: Vec<u32> = self.clauses.iter().flatten().map(|l| l.unsigned_abs()).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Whether `assignment` (bit `v - 1` is variable `v`) satisfies every clause.
    pub fn satisfied_by(&self, assignment: u64) -> bool {
        self.clauses.iter().all(|c| {
            c.iter().any(|&l| {
                let bit = (assignment >> (l.unsigned_abs() - 1)) & 1 == 1;
                bit == (l > 0)
            })
        })
    }

    /// Satisfiability by trying every assignment; for small formulas.
    pub fn brute_force_sat(&self) -> bool {
        assert!(self.variables <= 24, "too many variables to enumerate");
        (0..1u64 << self.variables).any(|a| self.satisfied_by(a))
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clauses.is_empty() {
            return f.write_str("true");
        }
        for (i, c) in self.clauses.iter().enumerate() {
            if i > 0 {
                f.write_str(" & ")?;
            }
            f.write_str("(")?;
            for (j, &l) in c.iter().enumerate() {
                if j > 0 {
                    f.write_str(" | ")?;
                }
                f.write_str(&literal_name(l))?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// `p3` for `3`, `~p3` for `-3`.
pub fn literal_name(l: i32) -> String {
    if l < 0 {
        format!("~p{}", -l)
    } else {
        format!("p{l}")
    }
}

fn pad_domain(mut dom: Vec<String>) -> Vec<String> {
    let mut k = 0;
    while dom.len() < 2 {
        dom.push(format!("_v{k}"));
        k += 1;
    }
    dom
}

/// Relation over `V, P, C` that satisfies `VP ⊥_p C` exactly when `phi`
/// is satisfiable, together with that atom.
///
/// `V` holds literals over the occurring variables, `P` is `+` or `-`, and
/// `C` names a variable block (`pN`) or a clause block (`c1`, `c2`, …).
pub fn cnf_to_relation(phi: &CnfFormula) -> Result<(Relation, Atom)> {
    let vars = phi.occurring();
    let lit_index = |l: i32| -> u32 {
        let k = vars.iter().position(|&v| v == l.unsigned_abs()).expect("occurring") as u32;
        2 * k + u32::from(l < 0)
    };
    let var_block = |v: usize| Some(v as u32);
    let clause_block = |i: usize| Some((vars.len() + i) as u32);
    const PLUS: Cell = Some(0);
    const MINUS: Cell = Some(1);

    let v_dom: Vec<String> = vars
        .iter()
        .flat_map(|&v| [literal_name(v as i32), literal_name(-(v as i32))])
        .collect();
    let c_dom: Vec<String> = vars
        .iter()
        .map(|&v| literal_name(v as i32))
        .chain((1..=phi.clauses.len()).map(|i| format!("c{i}")))
        .collect();
    let vocab = Vocabulary::new(["V", "P", "C"])?;
    let schema = Schema::new(
        vocab,
        vec![
            pad_domain(v_dom),
            vec![String::from("+"), String::from("-")],
            pad_domain(c_dom),
        ],
    )?;

    let mut out: Vec<(Tuple, u64)> = Vec::new();
    let mut push = |v: Cell, p: Cell, c: Cell, m: u64| {
        if m > 0 {
            out.push((Tuple(vec![v, p, c]), m));
        }
    };
    for (pi, &p) in vars.iter().enumerate() {
        for &q in &vars {
            if q == p {
                push(None, PLUS, var_block(pi), 1);
                push(None, MINUS, var_block(pi), 1);
            } else {
                push(Some(lit_index(q as i32)), None, var_block(pi), 1);
                push(Some(lit_index(-(q as i32))), None, var_block(pi), 1);
            }
        }
    }
    for (i, clause) in phi.clauses.iter().enumerate() {
        // A clause is a set of literals; repeats would leave spare rows.
        let mut clause = clause.clone();
        let mut seen = Vec::new();
        clause.retain(|l| {
            let fresh = !seen.contains(l);
            seen.push(*l);
            fresh
        });
        for &v in &vars {
            let lits: Vec<i32> = clause.iter().copied().filter(|l| l.unsigned_abs() == v).collect();
            if lits.is_empty() {
                push(Some(lit_index(v as i32)), None, clause_block(i), 1);
                push(Some(lit_index(-(v as i32))), None, clause_block(i), 1);
            } else {
                for l in lits {
                    push(Some(lit_index(-l)), None, clause_block(i), 1);
                }
            }
        }
        push(None, None, clause_block(i), clause.len() as u64 - 1);
        push(None, PLUS, clause_block(i), 1);
    }
    let relation = Relation::from_rows(schema, out)?;
    let atom = Atom::possible(AttrSet::from_indices([0, 1]), AttrSet::singleton(2));
    Ok((relation, atom))
}

/// Decides satisfiability of `phi` by checking `VP ⊥_p C` on its reduction.
pub fn sat_via_pia(phi: &CnfFormula) -> Result<bool> {
    let (r, atom) = cnf_to_relation(phi)?;
    Ok(check_pia(&r, atom.lhs, atom.rhs)?.verdict)
}

/// The three-clause formula `(p2 | p3) & (p1 | ~p2 | p3) & (~p3)`.
pub fn example_formula() -> CnfFormula {
    CnfFormula::new(3, vec![vec![2, 3], vec![1, -2, 3], vec![-3]]).expect("valid formula")
}

/// Renders a cell of a generated relation, `*` for null.
pub fn cell_text(r: &Relation, attr: usize, cell: Cell) -> String {
    r.cell_text(attr, cell).unwrap_or("*").to_string()
}
