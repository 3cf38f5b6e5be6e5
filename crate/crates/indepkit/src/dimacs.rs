//! DIMACS CNF: `c` comment lines, a `p cnf <vars> <clauses>` header and
//! clauses of non-zero literals each terminated by `0`. A line starting with
//! `%` ends the input.

use std::fmt::Write as _;

use anyhow::{anyhow, bail, Context, Result};
use indepkit_core::constructions::CnfFormula;

pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(u32, usize)> = None;
    let mut clauses: Vec<Vec<i32>> = Vec::new();
    let mut open: Vec<i32> = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        let at = || format!("line {}", n + 1);
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                bail!("{}: second problem line", at());
            }
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 4 || f[0] != "p" || f[1] != "cnf" {
                bail!("{}: expected `p cnf <variables> <clauses>`", at());
            }
            let vars = f[2].parse().with_context(at)?;
            let count = f[3].parse().with_context(at)?;
            header = Some((vars, count));
            continue;
        }
        if header.is_none() {
            bail!("{}: clause before the `p cnf` line", at());
        }
        for tok in line.split_whitespace() {
            let lit: i32 = tok.parse().map_err(|_| anyhow!("{}: `{tok}` is not a literal", at()))?;
            if lit == 0 {
                if open.is_empty() {
                    bail!("{}: empty clause", at());
                }
                clauses.push(std::mem::take(&mut open));
            } else {
                open.push(lit);
            }
        }
    }
    let (vars, count) = header.ok_or_else(|| anyhow!("missing `p cnf` line"))?;
    if !open.is_empty() {
        // a final clause without its terminating 0
        clauses.push(open);
    }
    if clauses.len() != count {
        bail!("header declares {count} clauses, found {}", clauses.len());
    }
    Ok(CnfFormula::new(vars, clauses)?)
}

pub fn write_dimacs(phi: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", phi.variables(), phi.clauses().len());
    for c in phi.clauses() {
        for l in c {
            write!(out, "{l} ").unwrap();
        }
        out.push_str("0\n");
    }
    out
}
