//! Subcommand bodies. Each returns the text to print and a status; the
//! front end turns the status into an exit code.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Result};
use indepkit_core::check::{check, CheckReport, Strategy};
use indepkit_core::constructions::{cnf_to_relation, sat_via_pia, CnfFormula};
use indepkit_core::implication::counterexample::search;
use indepkit_core::implication::{self, Completeness, Derivation, Justification, RuleSystem, Saturation};
use indepkit_core::parse::{parse_atom, parse_atom_interning, parse_constraints};
use indepkit_core::{Atom, ConstraintSet, Error, Modality, Notation, ParseError, Relation, Vocabulary};
use serde_json::{json, Value};

use crate::config::{Format, RunConfig};
use crate::table::{self, Domains};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Holds,
    Fails,
    /// Nothing to decide, e.g. a generated relation.
    Done,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub status: Status,
}

impl Outcome {
    fn new(stdout: String, status: Status) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            status,
        }
    }

    fn verdict(holds: bool) -> Status {
        if holds {
            Status::Holds
        } else {
            Status::Fails
        }
    }
}

fn json_out(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

fn atom_error(text: &str, e: ParseError) -> anyhow::Error {
    anyhow!("atom `{text}`, column {}: {}", e.column, e.message)
}

fn file_error(path: &Path, e: ParseError) -> anyhow::Error {
    anyhow!("{}:{}:{}: {}", path.display(), e.line, e.column, e.message)
}

/// Reads a constraint file and the goal atom over one shared vocabulary.
pub fn load_query(path: &Path, goal: Option<&str>) -> Result<(ConstraintSet, Option<Atom>)> {
    let text = table::read_input(path)?;
    let sigma = parse_constraints(&text, Vocabulary::default()).map_err(|e| file_error(path, e))?;
    let Some(goal) = goal else {
        return Ok((sigma, None));
    };
    let mut vocab = sigma.vocabulary().clone();
    let atom = parse_atom_interning(goal, &mut vocab).map_err(|e| atom_error(goal, e))?;
    let sigma = ConstraintSet::from_atoms(vocab, sigma.atoms().iter().copied())?;
    Ok((sigma, Some(atom)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum MethodChoice {
    /// The direct procedures
    Auto,
    Fast,
    /// Enumerate groundings
    Oracle,
}

pub fn cmd_check(
    cfg: &RunConfig,
    relation: &Path,
    domains: Option<&Path>,
    atom: &str,
    method: MethodChoice,
) -> Result<Outcome> {
    let r = table::load_relation(relation, domains)?;
    let a = parse_atom(atom, r.schema().vocabulary()).map_err(|e| atom_error(atom, e))?;
    let strategy = match method {
        MethodChoice::Auto | MethodChoice::Fast => Strategy::Fast,
        MethodChoice::Oracle => Strategy::Oracle {
            bound: cfg.oracle_bound,
        },
    };
    let report = check(&r, &a, strategy)?;
    let status = Outcome::verdict(report.verdict);
    let vocab = r.schema().vocabulary();
    let out = match cfg.format {
        Format::Json => json_out(check_json(&report, &a, vocab)),
        Format::Text => check_text(&report, &a, vocab, cfg.notation),
    };
    Ok(Outcome::new(out, status))
}

pub fn check_json(report: &CheckReport, atom: &Atom, vocab: &Vocabulary) -> Value {
    json!({
        "atom": atom.render(vocab, Notation::Ascii),
        "verdict": report.verdict,
        "method": report.method.name(),
        "stats": {"explored": report.stats.explored, "flow": report.stats.flow},
        "witness": report.witness.as_ref().map(table::write_relation),
    })
}

fn check_text(report: &CheckReport, atom: &Atom, vocab: &Vocabulary, n: Notation) -> String {
    let mut s = format!(
        "{}: {}\nmethod: {}\n",
        atom.render(vocab, n),
        if report.verdict { "holds" } else { "fails" },
        report.method
    );
    if report.stats.explored > 0 {
        writeln!(s, "explored: {}", report.stats.explored).unwrap();
    }
    if let Some(f) = report.stats.flow {
        writeln!(s, "flow: {f}").unwrap();
    }
    if let Some(w) = &report.witness {
        s.push_str("witness:\n");
        s.push_str(&table::write_relation(w));
    }
    s
}

/// Where a negative `implies` answer sends its counterexample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CounterexampleTo {
    Stdout,
    File(PathBuf),
}

pub fn cmd_implies(
    cfg: &RunConfig,
    constraints: &Path,
    goal: &str,
    sound_only: bool,
    counterexample: Option<CounterexampleTo>,
) -> Result<Outcome> {
    let (sigma, goal) = load_query(constraints, Some(goal))?;
    let goal = goal.expect("goal requested");
    let vocab = sigma.vocabulary().clone();
    let answer = implication::implies(&sigma, &goal, Saturation::new(cfg.saturation_limit))?;
    if answer.completeness == Completeness::SoundOnly && !sound_only {
        bail!(
            "no complete procedure covers `{}` under these constraints; \
             pass --sound-only to accept an answer that only reports derivability",
            goal.render(&vocab, Notation::Ascii)
        );
    }
    let mut found: Option<Relation> = None;
    let mut note: Option<String> = None;
    if let (false, Some(_)) = (answer.holds, &counterexample) {
        match search(&sigma, &goal, cfg.search) {
            Ok(o) => {
                found = o.witness;
                if found.is_none() {
                    let b = cfg.search;
                    note = Some(format!(
                        "no counterexample with at most {} attributes, {} rows and {} values per attribute",
                        b.max_attributes, b.max_rows, b.domain_size
                    ));
                }
            }
            Err(Error::SearchBudgetExceeded { candidates }) => {
                note = Some(format!("counterexample search stopped after {candidates} candidates"));
            }
            Err(e) => note = Some(format!("counterexample search failed: {e}")),
        }
    }
    if let (Some(w), Some(CounterexampleTo::File(p))) = (&found, &counterexample) {
        table::save_relation(w, p, &table::sidecar_path(p))?;
    }
    let status = Outcome::verdict(answer.holds);
    let out = match cfg.format {
        Format::Json => {
            let mut v = json!({
                "goal": goal.render(&vocab, Notation::Ascii),
                "implied": answer.holds,
                "completeness": answer.completeness.name(),
            });
            if counterexample.is_some() && !answer.holds {
                v["counterexample"] = match (&found, &counterexample) {
                    (Some(_), Some(CounterexampleTo::File(p))) => json!({
                        "file": p.display().to_string(),
                        "domains": table::sidecar_path(p).display().to_string(),
                    }),
                    (Some(w), _) => relation_json(w),
                    (None, _) => Value::Null,
                };
                if let Some(n) = &note {
                    v["note"] = json!(n);
                }
            }
            json_out(v)
        }
        Format::Text => {
            let mut s = format!(
                "{}: {} ({})\n",
                goal.render(&vocab, cfg.notation),
                if answer.holds { "implied" } else { "not implied" },
                answer.completeness
            );
            match (&found, &counterexample) {
                (Some(_), Some(CounterexampleTo::File(p))) => {
                    writeln!(s, "counterexample: {}", p.display()).unwrap();
                }
                (Some(w), _) => {
                    s.push_str("counterexample:\n");
                    s.push_str(&table::write_relation(w));
                    writeln!(s, "domains: {}", Domains::of(w).to_value()).unwrap();
                }
                (None, _) => {}
            }
            if let Some(n) = note {
                writeln!(s, "{n}").unwrap();
            }
            s
        }
    };
    Ok(Outcome::new(out, status))
}

/// The rule system matching the modalities in use, with its name.
pub fn default_system(atoms: &[Atom]) -> Result<(RuleSystem, &'static str)> {
    let has = |m: Modality| atoms.iter().any(|a| a.modality == m);
    match (has(Modality::Plain), has(Modality::Certain), has(Modality::Possible)) {
        (true, false, false) => Ok((RuleSystem::i(), "I")),
        (true, _, _) => bail!("plain atoms cannot be mixed with possible or certain atoms"),
        (false, true, true) => Ok((RuleSystem::mixed(), "mixed")),
        (false, false, true) => Ok((RuleSystem::i_p(), "I_p")),
        (false, _, false) => Ok((RuleSystem::i_c(), "I_c")),
    }
}

fn pick_system(named: Option<&str>, atoms: &[Atom]) -> Result<(RuleSystem, String)> {
    match named {
        Some(n) => RuleSystem::from_name(n).map(|s| (s, n.to_string())).ok_or_else(|| {
            anyhow!("unknown rule system `{n}`; use I, I_c, I_p, J_pc, mixed, mixed_disjoint or a `+` of them")
        }),
        None => default_system(atoms).map(|(s, n)| (s, n.to_string())),
    }
}

pub fn cmd_closure(cfg: &RunConfig, constraints: &Path, system: Option<&str>, nontrivial: bool) -> Result<Outcome> {
    let (sigma, _) = load_query(constraints, None)?;
    let (sys, name) = pick_system(system, sigma.atoms())?;
    let c = Saturation::new(cfg.saturation_limit).closure(&sigma, sys)?;
    let vocab = sigma.vocabulary();
    let atoms: Vec<&Atom> = c
        .atoms()
        .filter(|a| !nontrivial || !(a.lhs.is_empty() || a.rhs.is_empty()))
        .collect();
    let out = match cfg.format {
        Format::Json => json_out(json!({
            "system": name,
            "universe": vocab.render(c.universe()),
            "atoms": atoms.iter().map(|a| a.render(vocab, Notation::Ascii)).collect::<Vec<_>>(),
        })),
        Format::Text => atoms.iter().map(|a| a.render(vocab, cfg.notation) + "\n").collect(),
    };
    Ok(Outcome::new(out, Status::Done))
}

pub fn derivation_json(d: &Derivation, vocab: &Vocabulary) -> Value {
    let steps: Vec<Value> = d
        .steps
        .iter()
        .map(|s| match &s.justification {
            Justification::Premise => json!({
                "atom": s.atom.render(vocab, Notation::Ascii),
                "rule": "premise",
                "premises": [],
            }),
            Justification::Rule { rule, premises } => json!({
                "atom": s.atom.render(vocab, Notation::Ascii),
                "rule": rule.name(),
                "premises": premises.iter().map(|p| p + 1).collect::<Vec<_>>(),
            }),
        })
        .collect();
    Value::from(steps)
}

pub fn cmd_derive(
    cfg: &RunConfig,
    constraints: &Path,
    goal: &str,
    system: Option<&str>,
    steps: bool,
) -> Result<Outcome> {
    let (sigma, goal) = load_query(constraints, Some(goal))?;
    let goal = goal.expect("goal requested");
    let mut all = sigma.atoms().to_vec();
    all.push(goal);
    let (sys, name) = pick_system(system, &all)?;
    let d = Saturation::new(cfg.saturation_limit).derives(&sigma, &goal, sys)?;
    let vocab = sigma.vocabulary();
    let status = Outcome::verdict(d.is_some());
    let out = match cfg.format {
        Format::Json => json_out(json!({
            "goal": goal.render(vocab, Notation::Ascii),
            "system": name,
            "derivable": d.is_some(),
            "steps": d.as_ref().map(|d| derivation_json(d, vocab)),
        })),
        Format::Text => match &d {
            Some(d) if steps => d.render_steps(vocab, cfg.notation),
            Some(d) => d.render_tree(vocab, cfg.notation),
            None => format!("{}: not derivable in {name}\n", goal.render(vocab, cfg.notation)),
        },
    };
    Ok(Outcome::new(out, status))
}

pub fn relation_json(r: &Relation) -> Value {
    json!({"csv": table::write_relation(r), "domains": Domains::of(r).to_value()})
}

/// Destination of a generated relation.
#[derive(Debug, Clone, Default, PartialEq, Eq, clap::Args)]
pub struct OutputArgs {
    /// Write the CSV here, with the domains next to it
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Write the domains here
    #[arg(long, global = true, value_name = "FILE")]
    pub domains: Option<PathBuf>,
}

/// Prints or saves a generated relation and the atom it was built for.
pub fn emit_relation(
    cfg: &RunConfig,
    r: &Relation,
    atom: Option<&Atom>,
    extra: Option<(&str, bool)>,
    dest: &OutputArgs,
) -> Result<Outcome> {
    let vocab = r.schema().vocabulary();
    let dom_path = dest
        .domains
        .clone()
        .or_else(|| dest.out.as_deref().map(table::sidecar_path));
    if let Some(p) = &dest.out {
        std::fs::write(p, table::write_relation(r)).map_err(|e| anyhow!("cannot write {}: {e}", p.display()))?;
    }
    if let Some(p) = &dom_path {
        std::fs::write(p, Domains::of(r).to_json()).map_err(|e| anyhow!("cannot write {}: {e}", p.display()))?;
    }
    let status = match extra {
        Some((_, v)) => Outcome::verdict(v),
        None => Status::Done,
    };
    Ok(match cfg.format {
        Format::Json => {
            let mut v = relation_json(r);
            if let Some(a) = atom {
                v["atom"] = json!(a.render(vocab, Notation::Ascii));
            }
            v["rows"] = json!(r.total_multiplicity());
            if let Some((k, b)) = extra {
                v[k] = json!(b);
            }
            Outcome::new(json_out(v), status)
        }
        Format::Text => {
            let mut head = String::new();
            if let Some(a) = atom {
                writeln!(head, "atom: {}", a.render(vocab, cfg.notation)).unwrap();
            }
            if let Some((k, b)) = extra {
                writeln!(head, "{k}: {b}").unwrap();
            }
            match &dest.out {
                Some(p) => {
                    let mut s = format!("relation: {} ({} rows)\n", p.display(), r.total_multiplicity());
                    if let Some(d) = &dom_path {
                        writeln!(s, "domains: {}", d.display()).unwrap();
                    }
                    s.push_str(&head);
                    Outcome::new(s, status)
                }
                None => Outcome {
                    stdout: table::write_relation(r),
                    stderr: head,
                    status,
                },
            }
        }
    })
}

pub fn cmd_from_cnf(cfg: &RunConfig, path: &Path, decide: bool, dest: &OutputArgs) -> Result<Outcome> {
    let phi: CnfFormula =
        crate::dimacs::parse_dimacs(&table::read_input(path)?).map_err(|e| anyhow!("{}: {e:#}", path.display()))?;
    let (r, atom) = cnf_to_relation(&phi)?;
    let sat = if decide { Some(sat_via_pia(&phi)?) } else { None };
    emit_relation(cfg, &r, Some(&atom), sat.map(|b| ("satisfiable", b)), dest)
}
