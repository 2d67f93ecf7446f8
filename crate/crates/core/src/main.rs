use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use deltagroup::catalog::{self, bundled_desk_catalog, validate_catalog, Catalog, SynthOptions};
use deltagroup::census::{run_census, verify_bound, verify_catalog};
use deltagroup::constructors::{build, GroupSpec};
use deltagroup::invariants::{order_census, DeltaReport};
use deltagroup::report::{emit_report, Format};
use deltagroup::{oracle, Error};

/// Cyclic-subgroup deficiency census for small groups.
#[derive(Parser)]
#[command(name = "deltagroup", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bucket catalog groups by Δ and print the per-δ tables.
    Census {
        /// Catalog file; the bundled catalog (orders up to 40) if omitted.
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long)]
        delta_max: u64,
        #[arg(long, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the Δ report of one constructed group, e.g. `C3:C4@2`.
    Delta {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Check |G| <= 8Δ, Miller's bound and the totient identities.
    Verify {
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Catalog maintenance.
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Exhaustive Cayley-table enumeration for small orders.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// Re-close every entry and check class counts of complete orders.
    Validate { file: PathBuf },
    /// Build every group up to an order as cyclic extensions.
    Synthesize {
        #[arg(long)]
        max_order: usize,
        /// Catalog whose ids and names are copied onto matching classes.
        #[arg(long)]
        reference: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// List every group of order N (1 to 10) up to isomorphism.
    Enumerate { n: usize },
}

enum Failure {
    Violations,
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Input(e.to_string())
    }
}

fn load(path: Option<&Path>) -> Result<Catalog, Failure> {
    match path {
        Some(p) => Catalog::read(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => Ok(bundled_desk_catalog()),
    }
}

fn output(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Census {
            catalog,
            delta_max,
            format,
            out,
        } => {
            if delta_max == 0 {
                return Err(Failure::Input("--delta-max must be at least 1".into()));
            }
            let catalog = load(catalog.as_deref())?;
            let result = run_census(&catalog, delta_max)?;
            output(&emit_report(&result, format), out.as_deref())?;
            let violations = verify_bound(&result);
            for v in &violations {
                eprintln!("violation: {v}");
            }
            if !violations.is_empty() {
                return Err(Failure::Violations);
            }
        }
        Command::Delta { group, format } => {
            let spec: GroupSpec = group.parse()?;
            let g = build(&spec)?;
            let report = DeltaReport::compute(&g)?;
            match format {
                Format::Structured => {
                    let doc = serde_json::json!({
                        "group": spec.to_string(),
                        "report": report,
                        "order_census": order_census(&g).counts,
                    });
                    println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                }
                Format::Text => {
                    println!("group: {spec}");
                    println!("order: {}", report.group_order);
                    println!("cyclic subgroups: {}", report.cyclic_count);
                    println!("delta: {}", report.delta);
                    println!("i2: {}", report.i2);
                    println!("bound |G| <= 8 delta: {}", if report.bound_ok { "ok" } else { "violated" });
                    println!("equality case: {}", if report.equality_case { "yes" } else { "no" });
                }
            }
            if !report.bound_ok {
                return Err(Failure::Violations);
            }
        }
        Command::Verify { catalog } => {
            let catalog = load(catalog.as_deref())?;
            let report = verify_catalog(&catalog)?;
            println!("groups checked: {}", report.groups);
            let fmt_ids = |ids: &[deltagroup::GroupId]| ids.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ");
            println!("equality cases |G| = 8 delta: {}", fmt_ids(&report.equality_cases));
            println!("equality cases i2 = 3|G|/4: {}", fmt_ids(&report.miller_equality_cases));
            for (label, vs) in [("bound", &report.bound), ("miller", &report.miller), ("star", &report.star)] {
                println!("{label} violations: {}", vs.len());
                for v in vs {
                    println!("  {v}");
                }
            }
            if !report.is_clean() {
                return Err(Failure::Violations);
            }
        }
        Command::Catalog(CatalogCommand::Validate { file }) => {
            let catalog = load(Some(&file))?;
            let diagnostics = validate_catalog(&catalog);
            for d in &diagnostics {
                println!("{d}");
            }
            println!(
                "{} entries, {} diagnostics",
                catalog.entries.len(),
                diagnostics.len()
            );
            if !diagnostics.is_empty() {
                return Err(Failure::Violations);
            }
        }
        Command::Catalog(CatalogCommand::Synthesize {
            max_order,
            reference,
            out,
        }) => {
            let reference = reference.map(|p| load(Some(&p))).transpose()?;
            let (catalog, report) = catalog::synthesize(&SynthOptions { max_order, reference })?;
            for (n, classes) in &report.classes {
                eprintln!("order {n}: {classes} classes from {} extensions", report.candidates[n]);
            }
            output(&catalog.write(), out.as_deref())?;
        }
        Command::Oracle(OracleCommand::Enumerate { n }) => {
            let groups = oracle::enumerate_order(n)?;
            println!("{} groups of order {n}", groups.len());
            for (i, g) in groups.iter().enumerate() {
                let r = DeltaReport::compute(g)?;
                let abelian = deltagroup::iso::fingerprint(g).abelian;
                println!(
                    "#{}: delta {}, {} cyclic subgroups, {}",
                    i + 1,
                    r.delta,
                    r.cyclic_count,
                    if abelian { "abelian" } else { "nonabelian" }
                );
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violations) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
