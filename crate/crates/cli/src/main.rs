mod commands;
mod paperlab;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use unialg::homsearch::SearchBudget;
use unialg::prevariety::Budgets;
use unialg::srs::KbBudget;

use report::{Outcome, Report};

#[derive(Parser)]
#[command(name = "unialg", version, about = "Finite algebras, prevarieties and related experiments")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(flatten)]
    budgets: BudgetArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct BudgetArgs {
    /// Search nodes per homomorphism search.
    #[arg(long, global = true)]
    max_nodes: Option<u64>,
    /// Index size times carrier size allowed in a product closure.
    #[arg(long, global = true)]
    max_product_cells: Option<usize>,
    /// Largest carrier a construction may produce.
    #[arg(long, global = true)]
    max_carrier: Option<usize>,
    /// Largest carrier for congruence enumeration.
    #[arg(long, global = true)]
    congruence_bound: Option<usize>,
    /// Map families enumerated per check.
    #[arg(long, global = true)]
    max_families: Option<usize>,
    /// Candidate tables visited by enumerations.
    #[arg(long, global = true)]
    max_candidates: Option<usize>,
    /// Rules allowed during completion.
    #[arg(long, global = true)]
    max_rules: Option<usize>,
    /// Longest rule side allowed during completion.
    #[arg(long, global = true)]
    max_word_len: Option<usize>,
}

impl BudgetArgs {
    fn budgets(&self) -> Budgets {
        let d = Budgets::default();
        Budgets {
            max_product_cells: self.max_product_cells.unwrap_or(d.max_product_cells),
            max_carrier: self.max_carrier.unwrap_or(d.max_carrier),
            congruence_bound: self.congruence_bound.unwrap_or(d.congruence_bound),
            max_families: self.max_families.unwrap_or(d.max_families),
            max_candidates: self.max_candidates.unwrap_or(d.max_candidates),
            search: SearchBudget {
                max_nodes: self.max_nodes.unwrap_or(d.search.max_nodes),
                ..d.search
            },
        }
    }

    fn kb(&self) -> KbBudget {
        let d = KbBudget::default();
        KbBudget {
            max_rules: self.max_rules.unwrap_or(d.max_rules),
            max_word_len: self.max_word_len.unwrap_or(d.max_word_len),
        }
    }
}

/// Generators of the prevariety SP(Y).
#[derive(Args, Debug, Clone)]
struct Gens {
    /// Algebra file of a generator; repeat for each one.
    #[arg(long = "gen", value_name = "FILE", required = true)]
    gens: Vec<PathBuf>,
}

/// Where an amalgam context comes from.
#[derive(Args, Debug, Clone)]
struct AmalgamSource {
    /// Context file with two factor groups, a base group and embeddings.
    #[arg(long, value_name = "FILE", conflicts_with = "sym")]
    ctx: Option<PathBuf>,
    /// Use Sym(N) amalgamated with itself over the stabilizer of the last point.
    #[arg(long, value_name = "N", default_value_t = 3)]
    sym: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Free algebra of SP(Y) on N generators.
    Free {
        #[command(flatten)]
        gens: Gens,
        #[arg(short = 'n', long, default_value_t = 1)]
        n: usize,
        /// Also test isomorphism with this algebra.
        #[arg(long, value_name = "FILE")]
        compare: Option<PathBuf>,
        /// Write the algebra to this file.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Coproduct in SP(Y) of the given algebras.
    Coproduct {
        #[command(flatten)]
        gens: Gens,
        #[arg(required = true)]
        factors: Vec<PathBuf>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Whether the algebras are compatible (all coprojections one-to-one).
    Compatible {
        #[command(flatten)]
        gens: Gens,
        #[arg(required = true)]
        factors: Vec<PathBuf>,
    },
    /// Whether A is comfortable with B.
    Comfortable {
        #[command(flatten)]
        gens: Gens,
        a: PathBuf,
        b: PathBuf,
    },
    /// Whether subalgebras of an algebra are independent.
    Independent {
        #[command(flatten)]
        gens: Gens,
        ambient: PathBuf,
        /// Comma-separated elements of one subalgebra; repeat per subalgebra.
        #[arg(long = "subset", value_name = "ELEMS", required = true)]
        subsets: Vec<String>,
    },
    /// Subdirect irreducibility.
    Si { file: PathBuf },
    /// Subdirect irreducibility relative to SP(Y).
    RelSi {
        #[command(flatten)]
        gens: Gens,
        file: PathBuf,
    },
    /// Membership in SP(Y).
    Member {
        #[command(flatten)]
        gens: Gens,
        file: PathBuf,
    },
    /// Fewest compatible blocks covering the algebras.
    Cover {
        #[command(flatten)]
        gens: Gens,
        #[arg(required = true)]
        factors: Vec<PathBuf>,
    },
    /// Whether a quasi-identity holds, e.g. `a^2 x = x => a^2 y = y`.
    Qid { file: PathBuf, formula: String },
    /// Bounded amalgamation check over members with at most K elements.
    AmalgCheck {
        #[command(flatten)]
        gens: Gens,
        #[arg(short = 'k', long, default_value_t = 3)]
        k: usize,
        /// Also amalgamate over the empty algebra.
        #[arg(long)]
        include_empty_base: bool,
    },
    /// Knuth-Bendix completion of a presentation file.
    Kb { file: PathBuf },
    /// Normal forms of words modulo a presentation.
    Reduce {
        file: PathBuf,
        #[arg(required = true)]
        words: Vec<String>,
    },
    /// Normal form of a word `F:E ..` in an amalgamated free product.
    AmalgamNf {
        #[command(flatten)]
        source: AmalgamSource,
        #[arg(required = true, value_name = "F:E")]
        letters: Vec<String>,
    },
    /// Torsion in left cosets of the amalgamated subgroup.
    AmalgamScan {
        #[command(flatten)]
        source: AmalgamSource,
        /// Scan every alternating string up to this length.
        #[arg(long, default_value_t = 4)]
        max_len: usize,
        /// Scan only the coset of this string, given as `F:E ..`.
        #[arg(long, value_name = "STRING")]
        sigma: Option<String>,
    },
    /// Run a fixture suite of checked claims.
    Paperlab {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(paperlab::SUITES))]
        suite: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = commands::run(&cli);
    let (report, code) = match result {
        Ok(r) => {
            let code = r.outcome.code();
            (r, code)
        }
        Err(e) => {
            let outcome = Outcome::from_error(&e);
            let mut r = Report::new(outcome);
            r.line(format!("error: {}", e));
            r.set("error", e.to_string());
            (r, outcome.code())
        }
    };
    report.print(cli.json);
    ExitCode::from(code)
}
