//! `segre`: separability checks, entanglement measures and the Segre and
//! Plücker polynomial systems from the command line.
//!
//! Exit status is 0 on success, 1 when the input is well formed but the
//! requested object does not exist (for example `factor` on an entangled
//! state), and 2 when the input itself is malformed.

use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use segre_core::io::{self, JsonScalar};
use segre_core::{
    concurrence2, flatten, generalized_concurrence, is_bipartite_separable, is_bipartite_separable_exact,
    is_fully_separable, is_fully_separable_exact, local_factors, pluecker_coordinates, pluecker_measure,
    pluecker_relations, segre_generators, segre_map, Bipartition, Complex64, Error, GaussRat, PureState,
    DEFAULT_MAX_AMPS, DEFAULT_MAX_CHOOSE, DEFAULT_TOL,
};
use serde_json::json;

#[derive(Parser)]
#[command(name = "segre", version, about = "Segre and Plücker tools for multipartite pure states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Test full separability, or separability across one bipartition.
    CheckSeparable {
        #[command(flatten)]
        input: StateArgs,
        /// Modes on the left side of the cut, e.g. `1,3`.
        #[arg(long)]
        partition: Option<String>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Decide exactly over Gaussian rationals.
        #[arg(long)]
        exact: bool,
    },
    /// Two-qubit concurrence `2|a00 a11 - a01 a10| / |a|^2`.
    Concurrence {
        #[command(flatten)]
        input: StateArgs,
    },
    /// Minor-sum concurrence with its per-bipartition terms.
    GenConcurrence {
        #[command(flatten)]
        input: StateArgs,
    },
    /// Plücker measure of a multi-qubit state at a pivot qubit.
    PlueckerMeasure {
        #[command(flatten)]
        input: StateArgs,
        #[arg(long, default_value_t = 1)]
        pivot: usize,
        /// Print the Plücker coordinates of the pivot flattening instead.
        #[arg(long)]
        coords: bool,
        /// With `--coords`, compute them exactly.
        #[arg(long)]
        exact: bool,
    },
    /// Quadrics generating the ideal of the Segre variety.
    SegreIdeal {
        /// Local dimensions, e.g. `2,2,3`.
        #[arg(long)]
        dims: String,
        #[arg(long, default_value_t = DEFAULT_MAX_AMPS)]
        max_amps: usize,
    },
    /// Quadratic Plücker relations of G(k, n).
    PlueckerRelations {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_CHOOSE)]
        max_choose: usize,
    },
    /// Product state of the given local factors.
    SegreMap {
        /// File holding `{"factors":[[[re,im],...],...]}`.
        #[arg(long)]
        factors: PathBuf,
        #[arg(long)]
        exact: bool,
    },
    /// Local factors of a product state.
    Factor {
        #[command(flatten)]
        input: StateArgs,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        exact: bool,
    },
}

#[derive(Args)]
struct StateArgs {
    /// State file `{"dims":[...],"amps":[[re,im],...]}`.
    #[arg(long)]
    state: PathBuf,
    #[arg(long, default_value_t = DEFAULT_MAX_AMPS)]
    max_amps: usize,
}

enum Failure {
    /// Exit 1.
    Domain(String),
    /// Exit 2.
    Input(String),
}

fn input(field: &str, e: impl Display) -> Failure {
    Failure::Input(format!("{field}: {e}"))
}

fn core(field: &str, e: Error) -> Failure {
    match e {
        Error::NotProduct { .. } | Error::MissingVariable(_) => Failure::Domain(format!("{field}: {e}")),
        _ => input(field, e),
    }
}

fn read(path: &Path, field: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| input(field, format!("{}: {e}", path.display())))
}

fn load<T: JsonScalar>(args: &StateArgs) -> Result<PureState<T>, Failure> {
    let text = read(&args.state, "state")?;
    io::parse_state(&text, args.max_amps).map_err(|e| input("state", e))
}

fn partition(text: &Option<String>, modes: usize) -> Result<Option<Bipartition>, Failure> {
    text.as_deref()
        .map(|t| io::parse_partition(t, modes).map_err(|e| Failure::Input(e.to_string())))
        .transpose()
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::CheckSeparable {
            input: args,
            partition: part,
            tol,
            exact,
        } => {
            let (separable, left) = if exact {
                let s = load::<GaussRat>(&args)?;
                match partition(&part, s.num_modes())? {
                    Some(b) => (is_bipartite_separable_exact(&s, &b).map_err(|e| core("partition", e))?, Some(b)),
                    None => (is_fully_separable_exact(&s), None),
                }
            } else {
                let s = load::<Complex64>(&args)?;
                match partition(&part, s.num_modes())? {
                    Some(b) => (is_bipartite_separable(&s, &b, tol).map_err(|e| core("partition", e))?, Some(b)),
                    None => (is_fully_separable(&s, tol), None),
                }
            };
            Ok(match left {
                Some(b) => json!({ "separable": separable, "partition": b.left() }).to_string(),
                None => json!({ "separable": separable }).to_string(),
            })
        }
        Command::Concurrence { input: args } => {
            let s = load::<Complex64>(&args)?;
            let value = concurrence2(&s).map_err(|e| core("dims", e))?;
            Ok(json!({ "value": value }).to_string())
        }
        Command::GenConcurrence { input: args } => {
            let s = load::<Complex64>(&args)?;
            Ok(io::report_to_json(&generalized_concurrence(&s)))
        }
        Command::PlueckerMeasure {
            input: args,
            pivot,
            coords,
            exact,
        } => {
            if coords {
                return if exact {
                    pivot_coords(&load::<GaussRat>(&args)?, pivot)
                } else {
                    pivot_coords(&load::<Complex64>(&args)?, pivot)
                };
            }
            let s = load::<Complex64>(&args)?;
            let value = pluecker_measure(&s, pivot).map_err(|e| core("pivot", e))?;
            Ok(json!({
                "value": value,
                "pivot": pivot,
                "convention": segre_core::grassmann::PLUECKER_MEASURE_CONVENTION,
            })
            .to_string())
        }
        Command::SegreIdeal { dims, max_amps } => {
            let dims = io::parse_index_list(&dims, "dims").map_err(|e| Failure::Input(e.to_string()))?;
            let ideal = segre_generators(&dims, max_amps).map_err(|e| core("dims", e))?;
            Ok(lines(ideal.generators()))
        }
        Command::PlueckerRelations { k, n, max_choose } => {
            let rels = pluecker_relations(k, n, max_choose).map_err(|e| core("k", e))?;
            Ok(lines(rels.iter().map(|r| &r.poly)))
        }
        Command::SegreMap { factors, exact } => {
            let text = read(&factors, "factors")?;
            if exact {
                map_factors::<GaussRat>(&text)
            } else {
                map_factors::<Complex64>(&text)
            }
        }
        Command::Factor { input: args, tol, exact } => {
            if exact {
                factor(&load::<GaussRat>(&args)?, tol)
            } else {
                factor(&load::<Complex64>(&args)?, tol)
            }
        }
    }
}

fn pivot_coords<T: JsonScalar>(s: &PureState<T>, pivot: usize) -> Result<String, Failure> {
    let b = Bipartition::new(vec![pivot], s.num_modes()).map_err(|e| core("pivot", e))?;
    let f = flatten(s, &b).map_err(|e| core("pivot", e))?;
    let ps = pluecker_coordinates(&f).map_err(|e| core("state", e))?;
    Ok(io::pluecker_to_json(&ps))
}

fn map_factors<T: JsonScalar>(text: &str) -> Result<String, Failure> {
    let factors = io::parse_factors::<T>(text).map_err(|e| input("factors", e))?;
    let s = segre_map(&factors).map_err(|e| core("factors", e))?;
    Ok(io::state_to_json(&s))
}

fn factor<T: JsonScalar>(s: &PureState<T>, tol: f64) -> Result<String, Failure> {
    let factors = local_factors(s, tol).map_err(|e| core("state", e))?;
    Ok(io::factors_to_json(&factors))
}

fn lines<'a, P: Display + 'a>(items: impl IntoIterator<Item = &'a P>) -> String {
    items.into_iter().map(|p| p.to_string()).collect::<Vec<_>>().join("\n")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            if !out.is_empty() {
                println!("{out}");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("segre: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("segre: {msg}");
            ExitCode::from(2)
        }
    }
}
