use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use descent_core::scenario::{catalog_listing, parse_scenario, run_scenario, RunOptions};
use descent_core::verify::{run_suite, Suite, VerifyOptions, VerifyReport};
use descent_core::{Budget, Error};

/// Exact finite-group Galois descent: scenarios, catalog and property sweeps.
#[derive(Parser)]
#[command(name = "descent", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a JSON scenario file and print the report.
    Run {
        file: PathBuf,
        /// Execute tasks in parallel; report order is unchanged.
        #[arg(long)]
        parallel: bool,
        /// Add per-task wall-clock timings (makes the output nondeterministic).
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        budget: BudgetFlags,
    },
    /// List catalog groups with their orders, centers and automorphism groups.
    Catalog,
    /// Run the property suites over the catalog sweep.
    Verify {
        #[command(flatten)]
        budget: BudgetFlags,
        /// Restrict the sweep to abelian kernels.
        #[arg(long)]
        abelian_only: bool,
        /// Run only the given suite numbers (1-8); repeatable.
        #[arg(long = "suite", value_parser = clap::value_parser!(u8).range(1..=8))]
        suites: Vec<u8>,
    },
}

#[derive(Args)]
struct BudgetFlags {
    /// Largest total group order; also filters the verify sweep.
    #[arg(long)]
    max_total_order: Option<usize>,
    /// Largest number of candidates a homomorphism search may try.
    #[arg(long)]
    max_hom_search: Option<u64>,
}

impl BudgetFlags {
    fn apply(&self, mut budget: Budget) -> Budget {
        if let Some(n) = self.max_total_order {
            budget.max_total_order = n;
        }
        if let Some(n) = self.max_hom_search {
            budget.max_hom_search = n;
        }
        budget
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let code = match cli.command {
        Command::Run {
            file,
            parallel,
            timings,
            budget,
        } => run(&file, RunOptions { parallel, timings }, &budget),
        Command::Catalog => catalog(),
        Command::Verify {
            budget,
            abelian_only,
            suites,
        } => verify(
            VerifyOptions {
                budget: budget.apply(Budget::default()),
                abelian_only,
            },
            &suites,
        ),
    };
    ExitCode::from(code as u8)
}

fn run(file: &PathBuf, options: RunOptions, flags: &BudgetFlags) -> i32 {
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", file.display());
            return 1;
        }
    };
    let scenario = match parse_scenario(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {}: {e}", file.display());
            return 1;
        }
    };
    let budget = flags.apply(scenario.budget.unwrap_or_default());
    let report = run_scenario(&scenario, budget, options);
    emit(&format!("{}\n", report.to_pretty_string()));
    for outcome in &report.outcomes {
        if let Err(e) = &outcome.result {
            eprintln!(
                "task {} ({}) failed: {}",
                outcome.index, outcome.kind, e.error
            );
        }
    }
    report.exit_code()
}

fn catalog() -> i32 {
    match catalog_listing(&Budget::default()) {
        Ok(text) => {
            emit(&text);
            0
        }
        Err(e) => report_error(&e),
    }
}

fn verify(options: VerifyOptions, selected: &[u8]) -> i32 {
    let suites: Vec<Suite> = Suite::ALL
        .into_iter()
        .filter(|s| selected.is_empty() || selected.contains(&s.criterion()))
        .collect();
    let outcomes = suites.iter().map(|&s| run_suite(s, &options)).collect();
    match outcomes {
        Ok(suites) => {
            let report = VerifyReport { options, suites };
            emit(&format!("{}\n", report.to_pretty_string()));
            report.exit_code()
        }
        Err(e) => report_error(&e),
    }
}

fn report_error(e: &Error) -> i32 {
    eprintln!("error: {e}");
    e.category().exit_code()
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}
