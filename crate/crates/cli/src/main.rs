use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use equirank::equivariant::DEFAULT_CLOSURE_CAP;
use equirank::group::DEFAULT_GROUP_BUDGET;
use equirank::gset::DEFAULT_GSET_CELLS;
use equirank::notation::{parse_alphabet, parse_group, parse_gset, parse_rule, BuiltGSet};
use equirank::{Analysis, Error, FiniteGroup};
use serde_json::Value;

mod report;

#[derive(Parser, Debug)]
#[command(
    name = "equirank",
    version,
    about = "Boxes, orbit counts and relative rank of End_G(X) for finite G-sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Cap on enumerated maps and on monoid closure sizes.
    #[arg(long, global = true, default_value_t = DEFAULT_CLOSURE_CAP, value_parser = parse_budget)]
    budget: usize,

    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Subgroups, conjugacy classes, normalizers, class order graph and Möbius values.
    Lattice { group: String },
    /// Box decomposition with orbit counts.
    Boxes {
        group: String,
        gset: String,
        /// Render the box table with integer point codes.
        #[arg(long)]
        paper_layout: bool,
    },
    /// Orders of End_G(X) and Aut_G(X) by enumeration.
    Enumerate {
        group: String,
        gset: String,
        #[arg(long)]
        aut_only: bool,
        /// Include every image array.
        #[arg(long)]
        maps: bool,
    },
    /// Relative rank of End_G(X) modulo Aut_G(X) with the generating set V.
    Rank {
        group: String,
        gset: String,
        /// Also run enumeration, closure and irredundancy checks within the budget.
        #[arg(long)]
        verify: bool,
    },
    /// Apply a local rule on the full shift A^G.
    Ca {
        group: String,
        /// Alphabet size, written q=<n>.
        alphabet: String,
        /// <memory set>:<rule table>, e.g. 0,1:0110.
        #[arg(long)]
        rule: String,
    },
    /// Run every property check and fail if any fails.
    Verify { group: String, gset: String },
}

fn parse_budget(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("budget must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

/// Exit status 4: a property check failed.
const PROPERTY_FAILURE: u8 = 4;

struct Outcome {
    value: Value,
    text: Option<String>,
    passed: bool,
}

impl Outcome {
    fn json(value: Value) -> Self {
        Outcome {
            value,
            text: None,
            passed: true,
        }
    }
}

fn load(group: &str, gset: &str) -> Result<(Arc<FiniteGroup>, BuiltGSet), Error> {
    let gs = parse_group(group)?;
    let xs = parse_gset(gset)?;
    let g = Arc::new(gs.build(DEFAULT_GROUP_BUDGET)?);
    let x = xs.build(&g, DEFAULT_GSET_CELLS)?;
    Ok((g, x))
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let cap = cli.budget;
    match &cli.command {
        Command::Lattice { group } => {
            let g = Arc::new(parse_group(group)?.build(DEFAULT_GROUP_BUDGET)?);
            Ok(Outcome::json(report::lattice(group, g)?))
        }
        Command::Boxes {
            group,
            gset,
            paper_layout,
        } => {
            let (_, x) = load(group, gset)?;
            let a = Analysis::new(x.into_gset())?;
            let value = report::boxes(&a)?;
            let text = (*paper_layout).then(|| equirank::layout::render_boxes(&a));
            Ok(Outcome {
                value,
                text,
                passed: true,
            })
        }
        Command::Enumerate {
            group,
            gset,
            aut_only,
            maps,
        } => {
            let (_, x) = load(group, gset)?;
            let a = Analysis::new(x.into_gset())?;
            Ok(Outcome::json(report::enumerate(&a, *aut_only, *maps, cap)?))
        }
        Command::Rank {
            group,
            gset,
            verify,
        } => {
            let (_, x) = load(group, gset)?;
            let shift = x.shift().cloned();
            let a = Analysis::new(x.into_gset())?;
            let (value, passed) = report::rank(&a, shift.as_ref(), *verify, cap)?;
            Ok(Outcome {
                value,
                text: None,
                passed,
            })
        }
        Command::Ca {
            group,
            alphabet,
            rule,
        } => {
            let g = parse_group(group)?;
            let q = parse_alphabet(alphabet, 0)?;
            let g = Arc::new(g.build(DEFAULT_GROUP_BUDGET)?);
            let (memory, table) = parse_rule(rule, &g)?;
            let space = equirank::shift::ShiftSpace::build(g, q)?;
            Ok(Outcome::json(report::ca(&space, &memory, table)?))
        }
        Command::Verify { group, gset } => {
            let (_, x) = load(group, gset)?;
            let shift = x.shift().cloned();
            let a = Analysis::new(x.into_gset())?;
            let (value, passed) = report::verify(&a, shift.as_ref(), cap);
            Ok(Outcome {
                value,
                text: None,
                passed,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let text = match (&outcome.text, cli.output) {
                (Some(t), _) => t.clone(),
                (None, Output::Table) => report::render_table(&outcome.value),
                (None, Output::Json) => {
                    serde_json::to_string_pretty(&outcome.value).expect("serializable") + "\n"
                }
            };
            // a closed pipe on stdout is not an error worth reporting
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(PROPERTY_FAILURE)
            }
        }
        Err(e) => {
            eprintln!("equirank: error[{}]: {e}", e.code());
            ExitCode::from(e.exit_status() as u8)
        }
    }
}
