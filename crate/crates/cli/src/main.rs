//! `crystallo`: command-line front end of the workbench.
//!
//! Exit codes: 0 result computed (including FAILS and REFUTED verdicts),
//! 1 usage error, 2 input rejected, 3 search budget exhausted.

mod commands;
mod inputs;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use crystallo::congruences::{LatticeLaw, DEFAULT_PRINCIPAL_CAP};
use crystallo::DEFAULT_BUDGET;

use commands::Output;
use inputs::Scope;

#[derive(Parser)]
#[command(name = "crystallo", version, about = "Finite universal-algebra workbench")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Search node budget.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Worker threads (output does not depend on it).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Parse spec files and check every algebra against its variety.
    Validate {
        #[arg(required = true)]
        files: Vec<String>,
    },
    /// Check an algebra against the equations of a variety.
    Check {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        variety: Option<String>,
        /// Variety file whose equations are checked instead.
        #[arg(long)]
        equations: Option<String>,
    },
    /// List the congruence lattice.
    Congruences {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        variety: Option<String>,
        /// Largest number of element pairs to generate principal congruences from.
        #[arg(long, default_value_t = DEFAULT_PRINCIPAL_CAP)]
        cap: usize,
    },
    /// Check modularity and distributivity laws of the congruence lattice.
    Laws {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        variety: Option<String>,
        /// modular, distributive or weakly-distributive; all when omitted.
        #[arg(long = "law")]
        laws: Vec<LatticeLaw>,
    },
    /// Check the Shifting Lemma on the congruence lattice.
    Shifting {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        variety: Option<String>,
    },
    /// Check the hyperextensibility condition on the product span of two pointed algebras.
    ChyperSpan {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        variety: Option<String>,
    },
    /// Enumerate internal structures on an algebra.
    Internal {
        #[arg(long)]
        algebra: String,
        /// Built-in structure name or a variety file.
        #[arg(long)]
        structure: String,
        #[arg(long)]
        variety: Option<String>,
        /// Use the exhaustive oracle instead of the propagating search.
        #[arg(long)]
        brute_force: bool,
    },
    /// Find the cooperator of two subobjects of a pointed algebra.
    Cooperator {
        #[arg(long)]
        algebra: String,
        /// Elements of the first subobject, comma separated; whole algebra when omitted.
        #[arg(long)]
        u: Option<String>,
        #[arg(long)]
        v: Option<String>,
        #[arg(long)]
        variety: Option<String>,
    },
    /// Count internal structures over a sample set and render a verdict.
    Report {
        #[arg(long)]
        samples: String,
        #[arg(long)]
        structure: String,
        /// Variety the samples must satisfy.
        #[arg(long)]
        variety: Option<String>,
        /// Also include every model of the variety of this size.
        #[arg(long)]
        models: Option<usize>,
    },
    /// Enumerate internal category structures on reflexive graphs.
    Graphs {
        #[arg(long)]
        algebra: String,
        /// congruences, nabla, delta, or explicit pairs like 0-1,1-0.
        #[arg(long, default_value = "congruences")]
        relation: String,
        #[arg(long)]
        variety: Option<String>,
    },
    /// Build an algebra with h, w, m or a, or a named sample.
    Construct {
        #[arg(long)]
        functor: Option<String>,
        /// Algebra argument of h or m.
        #[arg(long)]
        input: Option<String>,
        /// Prime for w or a.
        #[arg(long)]
        p: Option<usize>,
        /// Dimension for w or a.
        #[arg(long, default_value_t = 1)]
        d: usize,
        /// A named sample such as Z3, Klein, hZ2, wF3_1, D3, B2.
        #[arg(long)]
        sample: Option<String>,
    },
    /// Pad a type 2k+1 hyperextensible presentation to type 2k+3.
    PadChyper {
        #[arg(long)]
        variety: String,
        #[arg(long, default_value_t = 1)]
        times: usize,
        /// Models for the semantic fallback.
        #[arg(long)]
        models: Option<String>,
    },
    /// Enumerate the models of a variety of a given size.
    Models {
        #[arg(long)]
        variety: String,
        #[arg(long)]
        size: usize,
        /// Keep one model per isomorphism class.
        #[arg(long)]
        canonical: bool,
        /// Print at most this many models.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Look for a binary term with x+0 = x = 0+x on a pointed algebra.
    Jt {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        variety: Option<String>,
        /// Maximum number of binary term operations to generate.
        #[arg(long, default_value_t = 100_000)]
        limit: usize,
    },
}

pub enum Failure {
    Usage(String),
    Input(anyhow::Error),
    Budget(String),
}

impl Failure {
    pub fn from_core(e: impl Into<crystallo::Error>) -> Self {
        let e = e.into();
        if e.is_budget() {
            Failure::Budget(e.to_string())
        } else {
            Failure::Input(e.into())
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let budget = cli.budget;
    let scope = |v: &Option<String>| Scope::new(v.as_deref());
    Ok(match &cli.command {
        Command::Validate { files } => commands::validate(files)?,
        Command::Check {
            algebra,
            variety,
            equations,
        } => commands::check(&scope(variety)?, algebra, equations.as_deref())?,
        Command::Congruences { algebra, variety, cap } => commands::congruences(&scope(variety)?, algebra, *cap)?,
        Command::Laws { algebra, variety, laws } => commands::laws(&scope(variety)?, algebra, laws)?,
        Command::Shifting { algebra, variety } => commands::shifting(&scope(variety)?, algebra)?,
        Command::ChyperSpan { left, right, variety } => commands::chyper_span(&scope(variety)?, left, right)?,
        Command::Internal {
            algebra,
            structure,
            variety,
            brute_force,
        } => commands::internal(&scope(variety)?, algebra, structure, *brute_force, budget)?,
        Command::Cooperator { algebra, u, v, variety } => {
            commands::cooperator_cmd(&scope(variety)?, algebra, u.as_deref(), v.as_deref(), budget)?
        }
        Command::Report {
            samples,
            structure,
            variety,
            models,
        } => commands::report(&scope(variety)?, samples, structure, *models, budget)?,
        Command::Graphs {
            algebra,
            relation,
            variety,
        } => commands::graphs(&scope(variety)?, algebra, relation, budget)?,
        Command::Construct {
            functor,
            input,
            p,
            d,
            sample,
        } => commands::construct(&scope(&None)?, functor.as_deref(), input.as_deref(), *p, *d, sample.as_deref())?,
        Command::PadChyper { variety, times, models } => {
            commands::pad(&scope(&None)?, variety, *times, models.as_deref())?
        }
        Command::Models {
            variety,
            size,
            canonical,
            limit,
        } => commands::models(variety, *size, *canonical, *limit, budget)?,
        Command::Jt { algebra, variety, limit } => commands::jt(&scope(variety)?, algebra, *limit)?,
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Check { .. } => "check",
        Command::Congruences { .. } => "congruences",
        Command::Laws { .. } => "laws",
        Command::Shifting { .. } => "shifting",
        Command::ChyperSpan { .. } => "chyper-span",
        Command::Internal { .. } => "internal",
        Command::Cooperator { .. } => "cooperator",
        Command::Report { .. } => "report",
        Command::Graphs { .. } => "graphs",
        Command::Construct { .. } => "construct",
        Command::PadChyper { .. } => "pad-chyper",
        Command::Models { .. } => "models",
        Command::Jt { .. } => "jt",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Some(n) = cli.jobs {
        if n == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(1);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(out) => {
            let body = match cli.format {
                Format::Json => {
                    let doc = serde_json::json!({ "command": command_name(&cli.command), "result": out.json });
                    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
                }
                Format::Text => out.text,
            };
            // A closed pipe downstream is not our failure.
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            ExitCode::from(out.code as u8)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
