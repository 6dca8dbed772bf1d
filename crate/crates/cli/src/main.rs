//! `codeprops`: decision procedures for code properties of regular languages,
//! with witness output.
//!
//! Exit codes: 0 positive verdict, 1 negative verdict (witness printed),
//! 2 usage or parse error, 3 internal error (a witness failed re-validation).

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use codeprops::{
    build_fixed_property, build_trajectory_property, build_transducer_property, construct_language,
    maximal_witness, non_functional_witness, parse_nfa, parse_transducer,
    satisfies_witness, ud_is_maximal, ud_satisfies_witness, CodeProperty, FixedProperty, Nfa,
    PropertyKind, SatisfactionWitness, UdWitness, Word,
};

#[derive(Parser)]
#[command(name = "codeprops", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct PropertySpec {
    /// One of: prefix, suffix, infix, outfix, hypercode
    #[arg(long, conflicts_with_all = ["trajectory", "trans"])]
    fixed: Option<String>,
    /// Trajectory regular expression over {0,1}
    #[arg(long, conflicts_with = "trans")]
    trajectory: Option<String>,
    /// File containing a describing transducer
    #[arg(long, requires = "kind")]
    trans: Option<PathBuf>,
    /// Kind of the transducer property: input-altering, error-detecting, error-correcting
    #[arg(long)]
    kind: Option<String>,
    /// Alphabet for fixed/trajectory properties, one character per symbol
    #[arg(long, default_value = "ab")]
    alphabet: String,
}

#[derive(Subcommand)]
enum Command {
    /// Does the language satisfy the property?
    Satisfies {
        #[command(flatten)]
        property: PropertySpec,
        /// Automaton file for the language
        #[arg(long)]
        aut: PathBuf,
    },
    /// Is the (satisfying) language maximal for the property?
    Maximal {
        #[command(flatten)]
        property: PropertySpec,
        #[arg(long)]
        aut: PathBuf,
        /// Universe automaton (default: all words over the property alphabet)
        #[arg(long)]
        universe: Option<PathBuf>,
    },
    /// Is the transducer functional?
    Functional {
        #[arg(long)]
        trans: PathBuf,
    },
    /// Is the language a uniquely decipherable code?
    UdSatisfies {
        #[arg(long)]
        aut: PathBuf,
    },
    /// Is the UD code maximal?
    UdMaximal {
        #[arg(long)]
        aut: PathBuf,
    },
    /// Randomly grow a language satisfying the property
    Construct {
        #[command(flatten)]
        property: PropertySpec,
        /// Number of words to aim for
        #[arg(long)]
        n: usize,
        /// Word length
        #[arg(long)]
        len: usize,
        #[arg(long, default_value_t = 100)]
        max_trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

const EXIT_NEGATIVE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

fn internal(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_INTERNAL, message: message.into() }
}

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn load_nfa(path: &PathBuf) -> Result<Nfa, Failure> {
    parse_nfa(&read_file(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn build_property(spec: &PropertySpec) -> Result<CodeProperty, Failure> {
    let alphabet = codeprops::alphabet(&spec.alphabet);
    if let Some(name) = &spec.fixed {
        let f = FixedProperty::parse(name)
            .ok_or_else(|| usage(format!("unknown fixed property `{name}`")))?;
        return Ok(build_fixed_property(f, &alphabet));
    }
    if let Some(expr) = &spec.trajectory {
        return build_trajectory_property(expr, &alphabet).map_err(|e| usage(e.to_string()));
    }
    if let Some(path) = &spec.trans {
        let t = parse_transducer(&read_file(path)?)
            .map_err(|e| usage(format!("{}: {e}", path.display())))?;
        let kind = match spec.kind.as_deref() {
            Some("input-altering") => PropertyKind::InputAltering,
            Some("error-detecting") => PropertyKind::ErrorDetecting,
            Some("error-correcting") => PropertyKind::ErrorCorrecting,
            other => return Err(usage(format!("invalid --kind {other:?}"))),
        };
        return build_transducer_property(kind, &t).map_err(|e| usage(e.to_string()));
    }
    Err(usage("a property requires --fixed, --trajectory, or --trans"))
}

/// Re-validate a satisfaction witness before printing it.
fn validate_satisfaction(
    p: &CodeProperty,
    a: &Nfa,
    w: &SatisfactionWitness,
) -> Result<(), Failure> {
    let t = p.transducer();
    let ok = match w {
        SatisfactionWitness::Pair(u, v) => {
            let relation = match p.kind() {
                PropertyKind::InputAltering | PropertyKind::ErrorDetecting => {
                    t.eval_pair(u, v) || t.eval_pair(v, u)
                }
                PropertyKind::ErrorCorrecting => false,
            };
            a.accepts(u) && a.accepts(v) && relation
        }
        SatisfactionWitness::Triple(z, u, v) => {
            a.accepts(u) && a.accepts(v) && u != v && t.eval_pair(u, z) && t.eval_pair(v, z)
        }
    };
    if ok {
        Ok(())
    } else {
        Err(internal("satisfaction witness failed re-validation"))
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Satisfies { property, aut } => {
            let p = build_property(&property)?;
            let a = load_nfa(&aut)?;
            match satisfies_witness(&p, &a).map_err(|e| usage(e.to_string()))? {
                None => {
                    println!("SATISFIED");
                    Ok(0)
                }
                Some(w) => {
                    validate_satisfaction(&p, &a.eliminate_epsilon(), &w)?;
                    println!("NOT SATISFIED");
                    match &w {
                        SatisfactionWitness::Pair(u, v) => {
                            println!("{u}");
                            println!("{v}");
                        }
                        SatisfactionWitness::Triple(z, u, v) => {
                            println!("{z}");
                            println!("{u}");
                            println!("{v}");
                        }
                    }
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Command::Maximal { property, aut, universe } => {
            let p = build_property(&property)?;
            let a = load_nfa(&aut)?;
            let b = universe.as_ref().map(load_nfa).transpose()?;
            match maximal_witness(&p, &a, b.as_ref()).map_err(|e| usage(e.to_string()))? {
                None => {
                    println!("MAXIMAL");
                    Ok(0)
                }
                Some(w) => {
                    // adding the witness must keep the property satisfied
                    let extended =
                        a.eliminate_epsilon().union(&Nfa::for_word(&w, p.alphabet().clone()));
                    match satisfies_witness(&p, &extended) {
                        Ok(None) => {}
                        _ => return Err(internal("maximality witness failed re-validation")),
                    }
                    println!("NOT MAXIMAL witness: {w}");
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Command::Functional { trans } => {
            let t = parse_transducer(&read_file(&trans)?)
                .map_err(|e| usage(format!("{}: {e}", trans.display())))?;
            match non_functional_witness(&t) {
                None => {
                    println!("FUNCTIONAL");
                    Ok(0)
                }
                Some((w, z, z2)) => {
                    if z == z2 || !t.eval_pair(&w, &z) || !t.eval_pair(&w, &z2) {
                        return Err(internal("functionality witness failed re-validation"));
                    }
                    println!("NOT FUNCTIONAL");
                    println!("{w}");
                    println!("{z}");
                    println!("{z2}");
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Command::UdSatisfies { aut } => {
            let a = load_nfa(&aut)?;
            match ud_satisfies_witness(&a).map_err(|e| usage(e.to_string()))? {
                None => {
                    println!("SATISFIED");
                    Ok(0)
                }
                Some(w) => {
                    let valid = w.left != w.right
                        && UdWitness::concatenation(&w.left)
                            == UdWitness::concatenation(&w.right)
                        && w.left.iter().chain(&w.right).all(|f| a.accepts(f));
                    if !valid {
                        return Err(internal("UD witness failed re-validation"));
                    }
                    println!("NOT SATISFIED");
                    println!("{}", bracketed(&w.left));
                    println!("{}", bracketed(&w.right));
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Command::UdMaximal { aut } => {
            let a = load_nfa(&aut)?;
            if ud_is_maximal(&a).map_err(|e| usage(e.to_string()))? {
                println!("MAXIMAL");
                Ok(0)
            } else {
                println!("NOT MAXIMAL");
                Ok(EXIT_NEGATIVE)
            }
        }
        Command::Construct { property, n, len, max_trials, seed } => {
            let p = build_property(&property)?;
            let language: BTreeSet<Word> = construct_language(&p, n, len, max_trials, seed);
            let a = Nfa::from_words(language.iter(), p.alphabet().clone());
            if !language.is_empty() && !matches!(satisfies_witness(&p, &a), Ok(None)) {
                return Err(internal("constructed language failed re-validation"));
            }
            for w in &language {
                println!("{w}");
            }
            Ok(0)
        }
    }
}

fn bracketed(words: &[Word]) -> String {
    let items: Vec<String> = words.iter().map(|w| w.to_string()).collect();
    format!("[{}]", items.join(", "))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
