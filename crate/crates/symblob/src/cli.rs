//! Batch command-line front end. All heavy lifting lives in the library; the
//! binary only parses arguments and dispatches.

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::algebra::{build_table, load_or_build_table};
use crate::diagram::enumerate::{enumerate_basis, Flavor};
use crate::diagram::quotient::SymplecticQuotient;
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::iso::{verify_isomorphism, Context};
use crate::presented::enumerate::{default_cap, word_span_dimension, PresentedAlgebra};
use crate::presented::rewrite::RuleSet;
use crate::presented::TraceWord;
use crate::render::{render_diagram, render_word, Format};
use crate::scalar::{set_fp_prime, Field, Fp, ParameterSet, Rat};

#[derive(Parser)]
#[command(
    name = "symblob",
    version,
    about = "Exact workbench for the symplectic blob algebra: diagrams, presentation, certificates"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Parameter overrides, e.g. "delta=2,kappaLR=13" (values are integer fractions).
    #[arg(long, global = true)]
    params: Option<String>,
    /// Coefficient backend: "rational", "fp" or "fp:<prime>".
    #[arg(long, global = true, default_value = "rational")]
    backend: String,
    /// Table cache directory (defaults to $SYMBLOB_CACHE_DIR when set).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Seed for randomized choices; always printed when used.
    #[arg(long, global = true, default_value_t = 0xC0FFEE)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension of an algebra at size n.
    Dim {
        #[arg(long)]
        n: u16,
        #[arg(long)]
        flavor: String,
        /// For the presented flavor: compute via the independent word-span
        /// oracle with this length cap instead of the reduced-class closure.
        #[arg(long)]
        oracle_cap: Option<usize>,
    },
    /// Canonical basis encodings, one per line.
    Basis {
        #[arg(long)]
        n: u16,
        #[arg(long)]
        flavor: String,
    },
    /// Product of two elements (words for presented/symplectic, basis
    /// indices for the diagram flavors).
    Mul {
        #[arg(long)]
        n: u16,
        #[arg(long)]
        flavor: String,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Normal form of a word under the defining relations.
    Nf {
        #[arg(long)]
        n: u16,
        #[arg(long)]
        word: String,
    },
    /// Commuting-block normal form of a word.
    Cf {
        #[arg(long)]
        n: u16,
        #[arg(long)]
        word: String,
    },
    /// Enumerate the reduced classes.
    Reduced {
        #[arg(long)]
        n: u16,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long)]
        list: bool,
    },
    /// Run the isomorphism certificate and print it as JSON.
    Verify {
        #[arg(long)]
        n: u16,
        /// Skip the rescaling clause.
        #[arg(long)]
        skip_rescaling: bool,
        /// Use a seeded random parameter point instead of the given one.
        #[arg(long)]
        random_point: bool,
    },
    /// Build (or load from cache) a structure table and print its JSON.
    Tables {
        #[arg(long)]
        n: u16,
        #[arg(long)]
        flavor: String,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a word stack (or a diagram encoding) as ascii or svg.
    Render {
        #[arg(long)]
        n: u16,
        #[arg(long)]
        word: Option<String>,
        #[arg(long)]
        diagram: Option<String>,
        #[arg(long, default_value = "ascii")]
        format: String,
    },
}

pub fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Parse(_)
        | Error::BadScalar(_)
        | Error::UnknownParameter(_)
        | Error::ZeroParameter(_)
        | Error::LetterOutOfRange(..) => 2,
        _ => 1,
    }
}

pub fn run() -> u8 {
    let cli = Cli::parse();
    let backend = cli.backend.clone();
    let outcome = if backend == "rational" {
        execute::<Rat>(cli)
    } else if backend == "fp" || backend.starts_with("fp:") {
        if let Some(prime) = backend.strip_prefix("fp:") {
            match prime
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad prime `{prime}`")))
            {
                Ok(p) => {
                    if let Err(e) = set_fp_prime(p) {
                        eprintln!("error: {e}");
                        return 2;
                    }
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    return 2;
                }
            }
        }
        execute::<Fp>(cli)
    } else {
        eprintln!("error: unknown backend `{backend}`");
        return 2;
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn cache_dir(cli: &Cli) -> Option<PathBuf> {
    cli.cache_dir
        .clone()
        .or_else(|| std::env::var_os("SYMBLOB_CACHE_DIR").map(PathBuf::from))
}

fn execute<F: Field>(cli: Cli) -> Result<u8> {
    let params: ParameterSet<F> = match &cli.params {
        Some(spec) => ParameterSet::parse(spec)?,
        None => ParameterSet::default_point(),
    };
    match &cli.command {
        Command::Dim {
            n,
            flavor,
            oracle_cap,
        } => {
            let flavor: Flavor = flavor.parse()?;
            let dim = match flavor {
                Flavor::Symplectic => SymplecticQuotient::build(*n, &params)?.dim(),
                Flavor::Presented => match oracle_cap {
                    Some(cap) => word_span_dimension(*n, &params, *cap)?,
                    None => PresentedAlgebra::build(*n, &params, default_cap(*n))?.dim(),
                },
                other => enumerate_basis(*n, other)?.len(),
            };
            println!("{dim}");
            Ok(0)
        }
        Command::Basis { n, flavor } => {
            let flavor: Flavor = flavor.parse()?;
            match flavor {
                Flavor::Symplectic => {
                    for d in SymplecticQuotient::build(*n, &params)?.reps {
                        println!("{}", d.encode());
                    }
                }
                Flavor::Presented => {
                    let alg = PresentedAlgebra::build(*n, &params, default_cap(*n))?;
                    for w in &alg.classes.reps {
                        println!("{w}");
                    }
                }
                other => {
                    for d in enumerate_basis(*n, other)? {
                        println!("{}", d.encode());
                    }
                }
            }
            Ok(0)
        }
        Command::Mul {
            n,
            flavor,
            lhs,
            rhs,
        } => {
            let flavor: Flavor = flavor.parse()?;
            match flavor {
                Flavor::Presented => {
                    let rules = RuleSet::new(*n, &params)?;
                    let a = TraceWord::parse(*n, lhs)?;
                    let b = TraceWord::parse(*n, rhs)?;
                    let (s, w) = rules.rewrite(&a.concat(&b)?);
                    println!("{} · {}", s, w);
                }
                Flavor::Symplectic => {
                    let ctx = Context::build(*n, &params)?;
                    let a = TraceWord::parse(*n, lhs)?;
                    let b = TraceWord::parse(*n, rhs)?;
                    let (s, d) = ctx.phi(&a.concat(&b)?)?;
                    println!("{} · {}", s, d.encode());
                }
                other => {
                    let basis = enumerate_basis(*n, other)?;
                    let parse_idx = |t: &str| -> Result<usize> {
                        let i: usize = t
                            .trim()
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad index `{t}`")))?;
                        if i >= basis.len() {
                            return Err(Error::Parse(format!(
                                "index {i} out of range (dimension {})",
                                basis.len()
                            )));
                        }
                        Ok(i)
                    };
                    let a = parse_idx(lhs)?;
                    let b = parse_idx(rhs)?;
                    let (s, d) = crate::diagram::concat::multiply(&basis[a], &basis[b], &params)?;
                    println!("{} · {}", s, d.encode());
                }
            }
            Ok(0)
        }
        Command::Nf { n, word } => {
            let rules = RuleSet::new(*n, &params)?;
            let w = TraceWord::parse(*n, word)?;
            let (s, r) = rules.rewrite(&w);
            println!("{} · {}", s, r);
            Ok(0)
        }
        Command::Cf { n, word } => {
            let w = TraceWord::parse(*n, word)?;
            println!("{}", w.cartier_foata());
            Ok(0)
        }
        Command::Reduced { n, cap, list } => {
            let rules = RuleSet::new(*n, &params)?;
            let cap = cap.unwrap_or_else(|| default_cap(*n));
            let classes = crate::presented::enumerate::enumerate_reduced(&rules, cap)?;
            println!("{}", classes.len());
            if *list {
                for w in &classes.reps {
                    println!("{w}");
                }
            }
            Ok(0)
        }
        Command::Verify {
            n,
            skip_rescaling,
            random_point,
        } => {
            let params = if *random_point {
                println!("seed: {}", cli.seed);
                let p: ParameterSet<F> = ParameterSet::random_point(cli.seed);
                eprintln!(
                    "random point: {}",
                    p.as_strings()
                        .iter()
                        .map(|(k, v)| format!("{k}={v}"))
                        .collect::<Vec<_>>()
                        .join(",")
                );
                p
            } else {
                params
            };
            let cert = verify_isomorphism(*n, &params, !skip_rescaling)?;
            println!("{}", serde_json::to_string_pretty(&cert.to_json())?);
            Ok(if cert.pass() { 0 } else { 1 })
        }
        Command::Tables { n, flavor, out } => {
            let flavor: Flavor = flavor.parse()?;
            let dir = cache_dir(&cli);
            let (doc, _cached) = match dir {
                Some(dir) => load_or_build_table(Some(&dir), *n, flavor, &params)?,
                None => (build_table(*n, flavor, &params)?.to_json(), false),
            };
            let text = serde_json::to_string_pretty(&doc)?;
            match out {
                Some(path) => std::fs::write(path, text)?,
                None => println!("{text}"),
            }
            Ok(0)
        }
        Command::Render {
            n,
            word,
            diagram,
            format,
        } => {
            let format: Format = format.parse()?;
            let doc = match (word, diagram) {
                (Some(word), None) => {
                    let w = TraceWord::parse(*n, word)?;
                    render_word(&w, format)?
                }
                (None, Some(encoding)) => {
                    let d = Diagram::decode(encoding)?;
                    render_diagram(&d, format)?
                }
                _ => {
                    return Err(Error::Parse(
                        "render needs exactly one of --word or --diagram".into(),
                    ))
                }
            };
            println!("{doc}");
            Ok(0)
        }
    }
}
