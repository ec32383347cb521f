use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hom_magma::algebra::{
    cross_check_grid, cross_check_sample, randomized_bilinear_check, randomized_sweep,
    AlgebraPredicate, HomAlgebra,
};
use hom_magma::enumerate::{classify, count_classes, enumerate_tables, ClassifyOptions};
use hom_magma::fixture::PaperFixture;
use hom_magma::iso::burnside_class_count;
use hom_magma::predicates::check;
use hom_magma::report::{write_classes, write_outcome, Format};
use hom_magma::verify::{verify_all, Status, VerificationOutcome};
use hom_magma::{Limits, PartialMagma, PartialMap, PredicateKind};

type CliResult<T> = Result<T, Box<dyn std::error::Error + Send + Sync>>;

/// Enumerate and classify finite partial magmas, compute their twisting
/// maps, and check the reference tables for order 2.
#[derive(Parser, Debug)]
#[command(name = "hom-magma", version)]
struct Cli {
    /// Worker threads for parallel stages (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List every table of an order, one code per line.
    Enumerate {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        totals_only: bool,
        /// Print only the number of tables.
        #[arg(long)]
        count_only: bool,
        #[command(flatten)]
        output: OutputArg,
    },
    /// Classify all tables of an order up to isomorphism.
    Classify {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        totals_only: bool,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        /// Print only the number of classes.
        #[arg(long)]
        count_only: bool,
        #[command(flatten)]
        output: OutputArg,
    },
    /// Evaluate one predicate for one table and partial map.
    Check {
        #[arg(long)]
        table: PartialMagma,
        /// Required except for the associativity kinds.
        #[arg(long)]
        alpha: Option<PartialMap>,
        #[arg(long)]
        kind: PredicateKind,
    },
    /// Compare computed order-2 results with the reference data.
    VerifyPaper,
    /// Compare algebra-level and magma-level predicates.
    AlgebraCheck {
        #[arg(long, default_value_t = 2)]
        order: usize,
        /// Check a single table (needs --alpha).
        #[arg(long, requires = "alpha")]
        table: Option<PartialMagma>,
        #[arg(long, requires = "table")]
        alpha: Option<PartialMap>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random vector tuples per instance; sampled pairs at orders above 2.
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Write the full verification outcome.
    Report {
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        #[command(flatten)]
        output: OutputArg,
    },
}

#[derive(Args, Debug)]
struct OutputArg {
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

impl OutputArg {
    fn write(&self, bytes: &[u8]) -> io::Result<()> {
        match &self.output {
            Some(path) => fs::write(path, bytes),
            None => {
                let mut out = io::stdout().lock();
                out.write_all(bytes)?;
                out.flush()
            }
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Markdown,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
            FormatArg::Markdown => Format::Markdown,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = cli.jobs {
        builder = builder.num_threads(jobs as usize);
    }
    let result = builder
        .build()
        .map_err(Into::into)
        .and_then(|pool| pool.install(|| run(cli.command)));
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn exit_for(all_match: bool) -> ExitCode {
    if all_match {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}

fn log_done(what: &str, start: Instant) {
    eprintln!(
        "{what} in {:.2?} on {} threads",
        start.elapsed(),
        rayon::current_num_threads()
    );
}

fn run(command: Command) -> CliResult<ExitCode> {
    let limits = Limits::default();
    let start = Instant::now();
    match command {
        Command::Enumerate {
            order,
            totals_only,
            count_only,
            output,
        } => {
            let tables = enumerate_tables(order, totals_only, &limits)?;
            let mut text = String::new();
            if count_only {
                text = format!("{}\n", tables.count());
            } else {
                for m in tables {
                    text.push_str(m.code().as_str());
                    text.push('\n');
                }
            }
            output.write(text.as_bytes())?;
            log_done("enumerate", start);
        }
        Command::Classify {
            order,
            totals_only,
            format,
            count_only,
            output,
        } => {
            if count_only {
                let count = count_classes(order, totals_only, &limits)?;
                output.write(format!("{count}\n").as_bytes())?;
                log_done("classify", start);
                if let Ok(b) = burnside_class_count(order, totals_only) {
                    eprintln!("orbit count by fixed points: {b}");
                }
            } else {
                let options = ClassifyOptions {
                    totals_only,
                    limits,
                };
                let report = classify(order, &options)?;
                output.write(&write_classes(&report, format.into())?)?;
                log_done("classify", start);
                eprintln!("{} classes", report.classes.len());
            }
        }
        Command::Check { table, alpha, kind } => {
            let alpha = match alpha {
                Some(a) => a,
                None if !kind.uses_alpha() => PartialMap::identity(table.order())?,
                None => return Err(format!("--alpha is required for {kind}").into()),
            };
            let verdict = check(&table, &alpha, kind)?;
            println!("{}", verdict.holds());
            if let Some(w) = verdict.witness() {
                println!("witness: {w}");
            }
        }
        Command::VerifyPaper => {
            let outcome = verify_all(&PaperFixture::embedded(), &limits)?;
            print_verification(&outcome);
            log_done("verify-paper", start);
            return Ok(exit_for(outcome.all_match()));
        }
        Command::AlgebraCheck {
            order,
            table,
            alpha,
            seed,
            trials,
        } => {
            let ok = match (table, alpha) {
                (Some(table), Some(alpha)) => algebra_single(table, alpha, seed, trials)?,
                _ => algebra_grid(order, seed, trials, &limits)?,
            };
            log_done("algebra-check", start);
            return Ok(exit_for(ok));
        }
        Command::Report { format, output } => {
            let outcome = verify_all(&PaperFixture::embedded(), &limits)?;
            output.write(&write_outcome(&outcome, format.into())?)?;
            log_done("report", start);
            return Ok(exit_for(outcome.all_match()));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn print_verification(outcome: &VerificationOutcome) {
    for c in &outcome.checks {
        println!("{c}");
    }
    println!();
    let fixture = PaperFixture::embedded();
    for (name, claim) in [
        ("partially associative", &fixture.partially_associative),
        ("associative", &fixture.associative),
    ] {
        let computed = outcome
            .checks
            .iter()
            .find(|c| c.subject == format!("{name} items"))
            .map(|c| c.computed.clone())
            .unwrap_or_default();
        println!("{name}:");
        println!(
            "  claimed:  {} cases, listed items ({}): {}",
            claim.stated_count,
            claim.items.len(),
            claim
                .items
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        );
        println!(
            "  computed: ({}): {computed}",
            computed.split_whitespace().count()
        );
    }
    if let Some(grid) = outcome
        .checks
        .iter()
        .find(|c| c.section == "algebra-equivalence" && c.detail.is_some())
    {
        println!("{}", grid.detail.as_deref().unwrap_or_default());
    }
    if !outcome.notes.is_empty() {
        println!("\nnotes:");
        for n in &outcome.notes {
            println!("  {n}");
        }
    }
    println!(
        "\n{} checks: {} MATCH, {} MISMATCH",
        outcome.checks.len(),
        outcome.count(Status::Match),
        outcome.count(Status::Mismatch)
    );
}

fn algebra_single(
    table: PartialMagma,
    alpha: PartialMap,
    seed: u64,
    trials: usize,
) -> CliResult<bool> {
    let h = HomAlgebra::new(table.clone(), alpha.clone())?;
    let mut ok = true;
    for pred in AlgebraPredicate::ALL {
        let violation = h.first_violation(pred);
        let magma = check(&table, &alpha, pred.counterpart())?.holds();
        let agree = violation.is_none() == magma;
        ok &= agree;
        print!(
            "{:<26} {:<5}  {:<18} {:<5}  {}",
            pred.name(),
            violation.is_none(),
            pred.counterpart().name(),
            magma,
            if agree { "agree" } else { "DISAGREE" }
        );
        match violation {
            Some(v) => println!("  ({v})"),
            None => println!(),
        }
    }
    let random = randomized_bilinear_check(&h, trials, seed);
    println!("randomized check, {trials} trials, seed {seed}: {random}");
    Ok(ok && random)
}

fn algebra_grid(order: usize, seed: u64, trials: usize, limits: &Limits) -> CliResult<bool> {
    let grid = if order <= 2 {
        cross_check_grid(order, limits)?
    } else {
        cross_check_sample(order, trials, seed)?
    };
    for c in &grid.outcome.checks {
        println!("{c}");
    }
    for n in &grid.outcome.notes {
        println!("{n}");
    }
    println!("{}/{} equivalences hold", grid.agreeing_pairs, grid.pairs);
    let mut ok = grid.all_agree();
    if order <= 2 {
        let sweep = randomized_sweep(order, trials, seed, limits)?;
        println!(
            "randomized check: {} instances, {} sampled identities, {} failures (seed {seed}, {trials} trials)",
            sweep.instances,
            sweep.identities_checked,
            sweep.failures.len()
        );
        for (t, a) in &sweep.failures {
            println!("  failed: table {t} alpha {a}");
        }
        ok &= sweep.failures.is_empty();
    }
    Ok(ok)
}
