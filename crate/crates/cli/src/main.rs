use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use sncdual::snc::{
    blowup, divisorialize, dual_complex, gen_random, make_simplicial, validate_config, RandomConfigParams,
    SncConfiguration,
};
use sncdual::weight::{
    build_e1, isolated_resolution_e1, kunneth_product, w0, weight_table, IsolatedResolution, LocalSystem, WeightTable,
};
use sncdual::{betti, Error, QuasiComplex, Violation};

/// Dual complexes, blow-ups and weight tables of simple normal crossing configurations.
#[derive(Parser, Debug)]
#[command(name = "sncdual", version)]
struct Cli {
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a configuration and list its violations.
    Validate { input: PathBuf },
    /// Dual complex of a configuration.
    DualComplex { input: PathBuf },
    /// Rational Betti numbers of a complex, or of the dual complex of a configuration.
    Betti {
        #[arg(long)]
        reduced: bool,
        input: PathBuf,
    },
    /// Blow up a component or stratum.
    Blowup {
        #[arg(long)]
        center: String,
        input: PathBuf,
    },
    /// Blow up an SNC divisor until its dual complex is simplicial.
    MakeSimplicial { input: PathBuf },
    /// Blow up until every component is a divisor.
    Divisorialize { input: PathBuf },
    /// Weight table of a configuration, or of an isolated-singularity resolution.
    Weights {
        /// Local system for a configuration; defaults to the constant one.
        #[arg(long)]
        local_system: Option<PathBuf>,
        #[arg(long)]
        dim_bound: Option<usize>,
        input: PathBuf,
    },
    /// Dimensions of W0 H^i, the Betti numbers of the dual complex.
    W0 { input: PathBuf },
    /// Product of two weight tables.
    Kunneth { first: PathBuf, second: PathBuf },
    /// Deterministic random valid configuration.
    GenRandom {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        max_ambient_dim: Option<usize>,
        #[arg(long)]
        max_components: Option<usize>,
        #[arg(long)]
        max_strata: Option<usize>,
    },
}

enum Failure {
    /// Exit 1: the input is well formed but the request fails on its content.
    Violations(Vec<Violation>),
    /// Exit 2: unreadable or malformed input, bad arguments.
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e.violations() {
            Some(v) => Failure::Violations(v),
            None => Failure::Usage(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn config(path: &Path) -> Result<SncConfiguration, Failure> {
    SncConfiguration::from_json(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn has_key(v: &Value, key: &str) -> bool {
    v.as_object().is_some_and(|o| o.contains_key(key))
}

fn parse_failure(path: &Path, e: Error) -> Failure {
    match e {
        Error::Format(_) | Error::Json(_) => Failure::Usage(format!("{}: {e}", path.display())),
        other => other.into(),
    }
}

fn run(cli: &Cli) -> Result<Value, Failure> {
    match &cli.command {
        Command::Validate { input } => {
            let report = validate_config(&config(input)?);
            if report.is_valid() {
                Ok(json!({ "valid": true, "violations": [] }))
            } else {
                Err(Failure::Violations(report.violations))
            }
        }
        Command::DualComplex { input } => {
            let k = dual_complex(&config(input)?)?;
            Ok(serde_json::from_str(&k.to_json()).expect("valid json"))
        }
        Command::Betti { reduced, input } => {
            let doc = read_json(input)?;
            let k = if has_key(&doc, "components") {
                dual_complex(&config(input)?)?
            } else {
                QuasiComplex::from_json(&read(input)?).map_err(|e| parse_failure(input, e))?
            };
            Ok(to_value(&betti(&k, *reduced)?.betti))
        }
        Command::Blowup { center, input } => {
            let (c, step) = blowup(&config(input)?, center)?;
            Ok(json!({ "config": c, "step": step }))
        }
        Command::MakeSimplicial { input } => {
            let (c, steps) = make_simplicial(&config(input)?)?;
            Ok(json!({ "config": c, "steps": steps }))
        }
        Command::Divisorialize { input } => {
            let (c, steps) = divisorialize(&config(input)?)?;
            Ok(json!({ "config": c, "steps": steps }))
        }
        Command::Weights { local_system, dim_bound, input } => {
            let doc = read_json(input)?;
            let table = if has_key(&doc, "exceptional") {
                if local_system.is_some() {
                    return Err(Failure::Usage("a resolution document carries its own local system".into()));
                }
                let r = IsolatedResolution::from_json(&read(input)?).map_err(|e| parse_failure(input, e))?;
                let bound = dim_bound.unwrap_or(r.exceptional.ambient_dim);
                weight_table(&isolated_resolution_e1(&r)?, bound)?
            } else {
                let c = config(input)?;
                let l = match local_system {
                    Some(path) => LocalSystem::from_json(&read(path)?).map_err(|e| parse_failure(path, e))?,
                    None => LocalSystem::trivial(
                        c.components.iter().map(|x| x.id.clone()).chain(
                            c.strata.iter().filter(|s| !s.is_free()).map(|s| s.id.clone()),
                        ),
                    ),
                };
                let bound = dim_bound.unwrap_or_else(|| c.components.iter().map(|x| x.dim).max().unwrap_or(0));
                weight_table(&build_e1(&c, &l)?, bound)?
            };
            Ok(to_value(&table))
        }
        Command::W0 { input } => Ok(to_value(&w0(&config(input)?)?.betti)),
        Command::Kunneth { first, second } => {
            let load = |p: &Path| WeightTable::from_json(&read(p)?).map_err(|e| parse_failure(p, e));
            Ok(to_value(&kunneth_product(&load(first)?, &load(second)?)))
        }
        Command::GenRandom { seed, max_ambient_dim, max_components, max_strata } => {
            let mut params = RandomConfigParams::new(*seed);
            if let Some(n) = max_ambient_dim {
                params.max_ambient_dim = *n;
            }
            if let Some(n) = max_components {
                params.max_components = *n;
            }
            if let Some(n) = max_strata {
                params.max_strata = *n;
            }
            Ok(to_value(&gen_random(&params)?))
        }
    }
}

fn render(v: &Value, pretty: bool) -> String {
    let mut s = if pretty { serde_json::to_string_pretty(v) } else { serde_json::to_string(v) }.expect("serializable");
    s.push('\n');
    s
}

fn emit(cli: &Cli, text: &str) -> Result<(), String> {
    match &cli.output {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
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
    let (text, code) = match run(&cli) {
        Ok(v) => (render(&v, cli.pretty), 0),
        Err(Failure::Violations(v)) => (render(&json!({ "valid": false, "violations": v }), cli.pretty), 1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    if let Err(msg) = emit(&cli, &text) {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
