//! Command-line interface.

use std::ffi::OsString;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};
use indepkit_core::constructions::{
    cnf_to_relation, constancy_counterexample, example_formula, exchange_failure_grounding_ab,
    exchange_failure_grounding_abc, exchange_failure_relation, parity_relation, pia_separating_family, CnfFormula,
};
use indepkit_core::{AttrSet, Vocabulary};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::commands::{self, CounterexampleTo, MethodChoice, Outcome, OutputArgs, Status};
use crate::config::{Format, Overrides, RunConfig};

#[derive(Debug, Parser)]
#[command(
    name = "indepkit",
    version,
    about = "Possible and certain independence in relations with nulls"
)]
pub struct Cli {
    #[command(flatten)]
    pub settings: Overrides,
    /// Exit 0 when the answer holds, 1 when it fails, 2 on errors
    #[arg(long, global = true)]
    pub exit_status: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check an atom against a relation
    Check {
        relation: PathBuf,
        atom: String,
        /// JSON domain file
        #[arg(long, value_name = "FILE")]
        domains: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = MethodChoice::Auto)]
        method: MethodChoice,
    },
    /// Decide whether a constraint file implies an atom
    Implies {
        constraints: PathBuf,
        atom: String,
        /// Accept derivability answers outside the complete fragments
        #[arg(long)]
        sound_only: bool,
        /// Search for a counterexample when not implied; print it, or write it to FILE
        #[arg(long, value_name = "FILE", num_args = 0..=1, default_missing_value = "-")]
        counterexample: Option<PathBuf>,
    },
    /// List every atom derivable from a constraint file
    Closure {
        constraints: PathBuf,
        /// Rule system, e.g. I_c or I_p+J_pc
        #[arg(long)]
        system: Option<String>,
        /// Omit atoms with an empty side
        #[arg(long)]
        nontrivial: bool,
    },
    /// Print a derivation of an atom
    Derive {
        constraints: PathBuf,
        atom: String,
        #[arg(long)]
        system: Option<String>,
        /// Numbered steps instead of a tree
        #[arg(long)]
        steps: bool,
    },
    /// Generate a relation from one of the built-in constructions
    Witness {
        #[command(subcommand)]
        kind: Construction,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Encode a DIMACS CNF file as a relation and a possible atom
    FromCnf {
        cnf: PathBuf,
        /// Also decide the possible atom, which holds exactly when the formula is satisfiable
        #[arg(long)]
        decide: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Grounding {
    /// Satisfies A,B _||_ C
    Ab,
    /// Satisfies A _||_ B
    Abc,
}

#[derive(Debug, Subcommand)]
pub enum Construction {
    /// A _||_p B and A,B _||_p C hold, A _||_p B,C fails
    ExchangeFailure {
        /// One of its groundings instead
        #[arg(long, value_enum)]
        grounding: Option<Grounding>,
    },
    /// Violates X _||_p Y over X1..Xk, Y1..Ym, Z1..Zn and every weaker-looking atom holds
    SeparatingFamily {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        extra: usize,
    },
    /// Violates X _||_c Y, satisfies disjoint possible atoms over X,Y
    Parity {
        #[arg(long, default_value_t = 1)]
        x: usize,
        #[arg(long, default_value_t = 1)]
        y: usize,
        #[arg(long, default_value_t = 1)]
        z: usize,
    },
    /// Violates B _||_p B, satisfies possible atoms with a side avoiding B
    Constancy {
        #[arg(long, default_value_t = 3)]
        attributes: usize,
    },
    /// The reduction applied to (p2 | p3) & (p1 | ~p2 | p3) & ~p3
    CnfExample,
    /// A random DIMACS formula, for feeding into from-cnf
    RandomCnf {
        #[arg(long, default_value_t = 4)]
        variables: u32,
        #[arg(long, default_value_t = 4)]
        clauses: usize,
        #[arg(long, default_value_t = 3)]
        width: usize,
    },
}

fn names(prefix: &str, n: usize) -> impl Iterator<Item = String> + '_ {
    (1..=n).map(move |i| format!("{prefix}{i}"))
}

fn random_cnf(seed: u64, variables: u32, clauses: usize, width: usize) -> Result<CnfFormula> {
    if variables == 0 || width == 0 {
        anyhow::bail!("random formulas need at least one variable and clause width 1");
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let cs = (0..clauses)
        .map(|_| {
            (0..rng.gen_range(1..=width))
                .map(|_| {
                    let v = rng.gen_range(1..=variables) as i32;
                    if rng.gen_bool(0.5) {
                        v
                    } else {
                        -v
                    }
                })
                .collect()
        })
        .collect();
    Ok(CnfFormula::new(variables, cs)?)
}

fn witness(cfg: &RunConfig, kind: &Construction, output: &OutputArgs) -> Result<Outcome> {
    let r = match *kind {
        Construction::ExchangeFailure { grounding } => match grounding {
            None => exchange_failure_relation(),
            Some(Grounding::Ab) => exchange_failure_grounding_ab(),
            Some(Grounding::Abc) => exchange_failure_grounding_abc(),
        },
        Construction::SeparatingFamily { k, m, extra } => pia_separating_family(k, m, extra)?,
        Construction::Parity { x, y, z } => {
            let v = Vocabulary::new(names("X", x).chain(names("Y", y)).chain(names("Z", z)))?;
            let xs = AttrSet::prefix(x);
            let ys = AttrSet::prefix(x + y) - xs;
            parity_relation(&v, xs, ys, v.all() - xs - ys, 0)?
        }
        Construction::Constancy { attributes } => {
            if attributes == 0 {
                anyhow::bail!("constancy counterexample needs at least one attribute");
            }
            let v = Vocabulary::new(std::iter::once("B".to_string()).chain(names("A", attributes - 1)))?;
            constancy_counterexample(&v, 0, v.all())?
        }
        Construction::CnfExample => {
            let (r, atom) = cnf_to_relation(&example_formula())?;
            return commands::emit_relation(cfg, &r, Some(&atom), None, output);
        }
        Construction::RandomCnf {
            variables,
            clauses,
            width,
        } => {
            let text = crate::dimacs::write_dimacs(&random_cnf(cfg.seed, variables, clauses, width)?);
            if let Some(p) = &output.out {
                std::fs::write(p, &text)?;
            }
            let stdout = match (cfg.format, &output.out) {
                (Format::Json, _) => serde_json::json!({ "dimacs": text }).to_string() + "\n",
                (Format::Text, Some(p)) => format!("formula: {}\n", p.display()),
                (Format::Text, None) => text,
            };
            return Ok(Outcome {
                stdout,
                stderr: String::new(),
                status: Status::Done,
            });
        }
    };
    commands::emit_relation(cfg, &r, None, None, output)
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    let cfg = RunConfig::resolve(&cli.settings)?;
    match &cli.command {
        Command::Check {
            relation,
            atom,
            domains,
            method,
        } => commands::cmd_check(&cfg, relation, domains.as_deref(), atom, *method),
        Command::Implies {
            constraints,
            atom,
            sound_only,
            counterexample,
        } => {
            let to = counterexample.as_ref().map(|p| {
                if p.as_os_str() == "-" {
                    CounterexampleTo::Stdout
                } else {
                    CounterexampleTo::File(p.clone())
                }
            });
            commands::cmd_implies(&cfg, constraints, atom, *sound_only, to)
        }
        Command::Closure {
            constraints,
            system,
            nontrivial,
        } => commands::cmd_closure(&cfg, constraints, system.as_deref(), *nontrivial),
        Command::Derive {
            constraints,
            atom,
            system,
            steps,
        } => commands::cmd_derive(&cfg, constraints, atom, system.as_deref(), *steps),
        Command::Witness { kind, output } => witness(&cfg, kind, output),
        Command::FromCnf { cnf, decide, output } => commands::cmd_from_cnf(&cfg, cnf, *decide, output),
    }
}

pub fn exit_code(status: Status, exit_status: bool) -> u8 {
    match (status, exit_status) {
        (Status::Fails, true) => 1,
        _ => 0,
    }
}

/// Parses `args`, runs the command and reports the exit code.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::parse_from(args);
    match execute(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.stdout.as_bytes());
            let _ = stdout.flush();
            eprint!("{}", out.stderr);
            ExitCode::from(exit_code(out.status, cli.exit_status))
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
