//! `sg-galois`: analyze finite pre-special groups and their Galois groups.
//!
//! Subcommands: validate | info | galois | orderings | standard |
//! cohomology | catalog-list. Inputs come from the built-in catalog
//! (`--catalog FAN2`) or a JSON file (`--file psg.json`). All randomized
//! checks are seeded (`--seed`, default 0) so output is reproducible.
//!
//! Exit codes: 0 success, 1 domain failure (invalid axioms or a violated
//! property), 2 usage or parse error, 3 guardrail exceeded.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sg_core::{galois::DEFAULT_MAX_ORDER_LOG2, Error, Psg};

use sg_galois::formats;

#[derive(Parser)]
#[command(name = "sg-galois", version, about = "Galois groups of finite pre-special groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Built-in instance name (see `catalog-list`).
    #[arg(long, conflicts_with = "file")]
    catalog: Option<String>,
    /// JSON file with a PSG definition.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Emit the report as JSON.
    #[arg(long)]
    json: bool,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Override the order guardrail, as an exponent of 2.
    #[arg(long)]
    max_order: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the pre-special-group axioms, reporting every violation.
    Validate {
        #[command(flatten)]
        input: InputArgs,
        /// Additionally require 3-transitivity (special groups).
        #[arg(long)]
        require_special: bool,
    },
    /// Basic facts: order, k-theory dimension, reality, orderings count.
    Info {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Full structure report for Gal(G).
    Galois {
        #[command(flatten)]
        input: InputArgs,
        /// Run the standardness decision procedure.
        #[arg(long)]
        standard: bool,
        /// Run K random base-change invariance checks.
        #[arg(long, default_value_t = 0)]
        bases: usize,
    },
    /// Orderings on both sides of the correspondence.
    Orderings {
        #[command(flatten)]
        input: InputArgs,
    },
    /// The standardness decision procedure with witnesses.
    Standard {
        #[command(flatten)]
        input: InputArgs,
    },
    /// H^0, H^1, optional H^2, and the k2-to-cup-product experiment.
    Cohomology {
        #[command(flatten)]
        input: InputArgs,
    },
    /// List the built-in catalog.
    CatalogList {
        #[arg(long)]
        json: bool,
    },
}

/// Failures carrying their process exit code.
enum Failure {
    /// Parse/usage trouble (exit 2).
    Input(String),
    /// Domain failure: invalid group or violated property (exit 1).
    Domain(String),
    /// Guardrail exceeded (exit 3).
    Guardrail(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Domain(_) => 1,
            Failure::Guardrail(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Domain(m) | Failure::Guardrail(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match &e {
            Error::Guardrail { .. } => Failure::Guardrail(e.to_string()),
            Error::UnknownCatalog(_) | Error::MalformedValueSets(_) => {
                Failure::Input(e.to_string())
            }
            _ => Failure::Domain(e.to_string()),
        }
    }
}

fn load(input: &InputArgs) -> Result<Psg, Failure> {
    match (&input.catalog, &input.file) {
        (Some(name), None) => Ok(formats::load_catalog(name)?),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
            let file: formats::PsgFile = serde_json::from_str(&text)
                .map_err(|e| Failure::Input(format!("cannot parse {}: {e}", path.display())))?;
            if formats::shadows_catalog(&file.name) {
                eprintln!(
                    "warning: file defines '{}', which shadows a catalog name; the file wins",
                    file.name
                );
            }
            Ok(file.into_psg()?)
        }
        _ => Err(Failure::Input(
            "exactly one of --catalog or --file is required".into(),
        )),
    }
}

fn emit<T: serde::Serialize>(json: bool, dto: &T, text: impl FnOnce()) {
    if json {
        println!("{}", serde_json::to_string_pretty(dto).expect("report serializes"));
    } else {
        text();
    }
}

fn limit_of(input: &InputArgs) -> u32 {
    input.max_order.unwrap_or(DEFAULT_MAX_ORDER_LOG2)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Validate {
            input,
            require_special,
        } => {
            let p = load(&input)?;
            let report = p.validate();
            let special = if require_special {
                Some(p.validate_special().map_err(Failure::from)?.is_valid())
            } else {
                None
            };
            let dto = formats::ValidationDto {
                name: p.name().to_string(),
                basis_size: p.basis_size(),
                valid: report.is_valid(),
                special,
                violations: report.violations.iter().map(|v| v.to_string()).collect(),
            };
            emit(input.json, &dto, || {
                println!("{}: n = {}", dto.name, dto.basis_size);
                if dto.valid {
                    println!("valid pre-special group");
                } else {
                    println!("INVALID: {} violation(s)", dto.violations.len());
                    for v in &dto.violations {
                        println!("  - {v}");
                    }
                }
                match dto.special {
                    Some(true) => println!("3-transitivity holds (special group)"),
                    Some(false) => println!("3-transitivity FAILS (pre-special only)"),
                    None => {}
                }
            });
            if !dto.valid || dto.special == Some(false) {
                return Err(Failure::Domain("validation failed".into()));
            }
            Ok(())
        }
        Command::Info { input } => {
            let p = load(&input)?;
            let dto = formats::build_info(&p);
            emit(input.json, &dto, || {
                println!("{}", dto.name);
                println!("  basis size:     {}", dto.basis_size);
                println!("  group order:    {}", dto.group_order);
                println!("  -1:             {}", dto.minus_one);
                println!("  valid PSG:      {}", dto.valid);
                println!("  k-stable:       {}", dto.k_stable);
                println!("  dim k2:         {}", dto.k2_dim);
                println!("  pythagorean:    {}", dto.pythagorean);
                println!("  formally real:  {}", dto.formally_real);
                println!("  orderings:      {}", dto.ordering_count);
            });
            Ok(())
        }
        Command::Galois {
            input,
            standard,
            bases,
        } => {
            let p = load(&input)?;
            require_valid(&p)?;
            let dto = formats::build_galois(&p, limit_of(&input), standard, bases, input.seed)?;
            emit(input.json, &dto, || {
                println!("Galois group of {}", dto.name);
                println!("  order:              {} (2^{})", dto.order, dto.order_log2);
                println!("  fingerprint:        {}", dto.fingerprint);
                println!("  dim k2:             {}", dto.k2_dim);
                println!("  maximal subgroups:  {}", dto.maximal_count);
                println!(
                    "  involution cosets:  [{}] (classes: {:?})",
                    dto.involution_cosets.join(", "),
                    dto.involution_class_counts
                );
                println!("  orderings:          [{}]", dto.orderings.join(", "));
                println!("  formally real:      {}", dto.formally_real);
                println!("  pythagorean:        {}", dto.pythagorean);
                if let Some(s) = &dto.standard {
                    println!("  standard:           {}", s.standard);
                }
                if let Some(trials) = &dto.base_change_trials_passed {
                    let ok = trials.iter().filter(|t| **t).count();
                    println!("  base changes:       {ok}/{} passed", trials.len());
                }
            });
            let trials_ok = dto
                .base_change_trials_passed
                .as_ref()
                .is_none_or(|t| t.iter().all(|x| *x));
            let standard_ok = dto.standard.as_ref().is_none_or(|s| s.standard);
            if !trials_ok || !standard_ok {
                return Err(Failure::Domain("a structural check failed".into()));
            }
            Ok(())
        }
        Command::Orderings { input } => {
            let p = load(&input)?;
            require_valid(&p)?;
            let dto = formats::build_orderings(&p)?;
            emit(input.json, &dto, || {
                println!("orderings of {}", dto.name);
                println!("  value-set side:  [{}]", dto.psg_orderings.join(", "));
                println!("  galois side:     [{}]", dto.galois_orderings.join(", "));
                println!("  agree:           {}", dto.agree);
            });
            if !dto.agree {
                return Err(Failure::Domain("ordering correspondence failed".into()));
            }
            Ok(())
        }
        Command::Standard { input } => {
            let p = load(&input)?;
            require_valid(&p)?;
            let dto = formats::build_standard(&p)?;
            emit(input.json, &dto, || {
                println!("standard: {}", dto.standard);
                println!("  Z4 witnesses:  [{}]", dto.z4_witnesses.join(", "));
                println!("  D4 witnesses:  [{}]", dto.d4_witnesses.join(", "));
                if !dto.failures.is_empty() {
                    println!("  failures:      [{}]", dto.failures.join(", "));
                }
            });
            if !dto.standard {
                return Err(Failure::Domain("not standard".into()));
            }
            Ok(())
        }
        Command::Cohomology { input } => {
            let p = load(&input)?;
            require_valid(&p)?;
            let dto = formats::build_cohomology(&p)?;
            emit(input.json, &dto, || {
                println!("cohomology of Gal({})", dto.name);
                println!("  |H^0|:   {}", dto.h0);
                println!("  dim H^1: {}", dto.h1_dim);
                match dto.h2_dim {
                    Some(d) => println!("  dim H^2: {d}"),
                    None => println!("  dim H^2: skipped (order above guardrail)"),
                }
                if dto.relation_pairs.is_empty() {
                    println!("  no nontrivial relation pairs");
                } else {
                    println!("  relation pairs (a, b, cup vanishes in H^2):");
                    for o in &dto.relation_pairs {
                        println!("    ({}, {}) -> {}", o.a, o.b, o.cup_is_coboundary);
                    }
                }
                println!("  k2 map well-defined: {}", dto.k2_map_well_defined);
            });
            Ok(())
        }
        Command::CatalogList { json } => {
            let entries = formats::catalog_entries();
            if json {
                let list: Vec<serde_json::Value> = entries
                    .iter()
                    .map(|(n, d)| serde_json::json!({ "name": n, "description": d }))
                    .collect();
                println!("{}", serde_json::to_string_pretty(&list).expect("serializes"));
            } else {
                for (n, d) in entries {
                    println!("{n:14} {d}");
                }
            }
            Ok(())
        }
    }
}

fn require_valid(p: &Psg) -> Result<(), Failure> {
    let report = p.validate();
    if !report.is_valid() {
        return Err(Failure::Domain(format!(
            "input is not a valid pre-special group ({} violations; run `validate`)",
            report.violations.len()
        )));
    }
    Ok(())
}

fn main() -> ExitCode {
    // Die quietly when the consumer of a pipe goes away (e.g. `| head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
