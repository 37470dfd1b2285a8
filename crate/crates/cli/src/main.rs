use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use lawvere::catalog;
use lawvere::correspondence::{composite_correspondence_check, roundtrip_check};
use lawvere::distlaw::{check_law_axioms, check_yang_baxter};
use lawvere::factorization::{check_fs_over_F, check_strict_fs, factorize};
use lawvere::fixtures::run_fixtures;
use lawvere::pool::deep;
use lawvere::profcat::json::{check_coend_file, CoendFile};
use lawvere::profcat::{verify_keyprop, FiniteCategory};
use lawvere::report::Report;
use lawvere::sampler::Sampler;
use lawvere::syntax::{parse_term_with, print_term, Alphabet};
use lawvere::term::{enumerate_terms, TheorySpec};
use lawvere::theory::{LawvereTheory, TheoryMorphism};

/// Executable Lawvere theories, distributive laws and factorization systems.
///
/// Terms are written with letters a, b, c, … for variables (x, y, z, … in the
/// second argument of `compose`), juxtaposition or `*` for multiplication,
/// `+` and `-` for the abelian group, `0` and `1` for constants, `^n` for
/// powers and integer coefficients such as `2ab`. Tuples are comma separated.
#[derive(Parser, Debug)]
#[command(name = "lawvere", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Output {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Also write the output to this file.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Sampling {
    /// Samples per check.
    #[arg(long, env = "LAWVERE_SAMPLES", default_value_t = 500)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Height bound of each layer of a sampled term.
    #[arg(long, default_value_t = 3)]
    max_depth: usize,
    /// Bound on the number of free variables of a sample.
    #[arg(long, default_value_t = 4)]
    max_arity: usize,
}

impl Sampling {
    fn sampler(&self) -> Sampler {
        Sampler {
            seed: self.seed,
            samples: self.samples,
            max_depth: self.max_depth,
            max_arity: self.max_arity,
            ..Sampler::default()
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compose two tuples of terms: `--then` after `--first`.
    Compose {
        #[arg(long)]
        theory: String,
        /// Number of variables of the first tuple; defaults to the largest letter used.
        #[arg(long)]
        arity: Option<usize>,
        /// f: k → n, a tuple of n terms in a, b, c, …
        #[arg(long)]
        first: String,
        /// g: n → m, a tuple of m terms in x, y, z, …
        #[arg(long)]
        then: String,
        #[command(flatten)]
        out: Output,
    },
    /// Canonical factorization of a morphism of a composite theory.
    Factorize {
        #[arg(long)]
        theory: String,
        /// A tuple of terms.
        #[arg(long)]
        morphism: String,
        #[arg(long)]
        arity: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Sampled check of the four axioms of a distributive law and naturality.
    CheckLaw {
        #[arg(long)]
        law: String,
        #[command(flatten)]
        sampling: Sampling,
        #[command(flatten)]
        out: Output,
    },
    /// Sampled check of the hexagons of a distributive series.
    CheckYb {
        #[arg(long)]
        series: String,
        #[command(flatten)]
        sampling: Sampling,
        #[command(flatten)]
        out: Output,
    },
    /// Factorization system over finite sets on a composite theory, or a
    /// strict factorization system on a built-in finite category.
    CheckFs {
        #[arg(long, required_unless_present = "strict")]
        theory: Option<String>,
        #[arg(long, default_value_t = 2)]
        arity: usize,
        /// Bound on term size.
        #[arg(long, default_value_t = 5)]
        size: usize,
        /// `chain` or `iso-pair`.
        #[arg(long, conflicts_with = "theory")]
        strict: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Coend composition of the profunctors in a JSON file, or the
    /// composite of PF and the multiplication for a built-in monad.
    CheckCoend {
        #[arg(long, required_unless_present = "monad")]
        file: Option<PathBuf>,
        #[arg(long, conflicts_with = "file")]
        monad: Option<String>,
        #[arg(long, default_value_t = 3)]
        bound: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Monad to Lawvere theory and back.
    Roundtrip {
        /// identity, pointed or free-monoid
        #[arg(long)]
        monad: String,
        /// Largest finite set X.
        #[arg(long, default_value_t = 3)]
        bound: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Composite theory of a law against the table of its composite monad.
    Correspond {
        #[arg(long)]
        law: String,
        #[arg(long, default_value_t = 2)]
        arity: usize,
        #[arg(long, default_value_t = 5)]
        size: usize,
        #[command(flatten)]
        sampling: Sampling,
        #[command(flatten)]
        out: Output,
    },
    /// Normal forms of a theory with at most `--size` nodes.
    Enumerate {
        #[arg(long)]
        theory: String,
        #[arg(long, default_value_t = 1)]
        arity: usize,
        #[arg(long, default_value_t = 3)]
        size: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Run every named regression fixture.
    Fixtures {
        #[command(flatten)]
        out: Output,
    },
}

/// Input errors; reported with exit code 2.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Usage {
        Usage(e.to_string())
    }
}

enum Outcome {
    Report(Report),
    Value { text: String, json: String },
}

fn theory(name: &str) -> Result<TheorySpec, Usage> {
    catalog::theory(name).ok_or_else(|| Usage(format!("unknown theory `{name}`; one of {}", catalog::THEORIES.join(", "))))
}

fn split_tuple(text: &str) -> Vec<&str> {
    text.split(',').map(str::trim).collect()
}

/// One more than the largest variable letter in `text`.
fn infer_arity(text: &str) -> usize {
    text.chars().filter(char::is_ascii_lowercase).map(|c| (c as u8 - b'a') as usize + 1).max().unwrap_or(0)
}

fn parse_tuple(text: &str, spec: &TheorySpec, arity: usize, alphabet: Alphabet) -> Result<Vec<lawvere::term::Term>, Usage> {
    split_tuple(text)
        .into_iter()
        .map(|part| parse_term_with(part, spec, arity, alphabet).map_err(|e| Usage(format!("`{part}`: {e}"))))
        .collect()
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

fn run(command: &Command) -> Result<Outcome, Usage> {
    Ok(match command {
        Command::Compose { theory: name, arity, first, then, .. } => {
            let spec = theory(name)?;
            let k = arity.unwrap_or_else(|| infer_arity(first));
            let f_terms = parse_tuple(first, &spec, k, Alphabet::Abc)?;
            let g_terms = parse_tuple(then, &spec, f_terms.len(), Alphabet::Xyz)?;
            let law = LawvereTheory::new(spec);
            let f = law.morphism(k, f_terms)?;
            let g = law.morphism(f.target, g_terms)?;
            let h = law.compose(&g, &f)?;
            Outcome::Value { text: h.to_string(), json: json(&h.to_json()) }
        }
        Command::Factorize { theory: name, morphism, arity, .. } => {
            let spec = theory(name)?;
            let k = arity.unwrap_or_else(|| infer_arity(morphism));
            let f = TheoryMorphism::from_parts(k, parse_tuple(morphism, &spec, k, Alphabet::Abc)?);
            let p = factorize(&spec, &f)?;
            Outcome::Value {
                text: format!(
                    "middle {}\nleft {}\nright {}",
                    p.middle,
                    p.left.display(Alphabet::Abc),
                    p.right.display(Alphabet::Xyz)
                ),
                json: json(&p.to_json()),
            }
        }
        Command::CheckLaw { law, sampling, .. } => {
            let l = catalog::law(law)
                .ok_or_else(|| Usage(format!("unknown law `{law}`; one of {}", catalog::LAWS.join(", "))))?;
            Outcome::Report(check_law_axioms(&l, &sampling.sampler()))
        }
        Command::CheckYb { series, sampling, .. } => {
            let s = catalog::series(series)
                .ok_or_else(|| Usage(format!("unknown series `{series}`; one of {}", catalog::SERIES.join(", "))))?;
            Outcome::Report(check_yang_baxter(&s, &sampling.sampler()))
        }
        Command::CheckFs { theory: name, arity, size, strict, .. } => match (strict, name) {
            (Some(example), _) => Outcome::Report(strict_example(example)?),
            (None, Some(name)) => {
                let spec = theory(name)?;
                if spec.layers().is_none() {
                    return Err(Usage(format!("`{name}` is not a composite theory")));
                }
                Outcome::Report(deep(|| check_fs_over_F(&spec, *arity, *size)))
            }
            (None, None) => return Err(Usage("one of --theory or --strict is required".into())),
        },
        Command::CheckCoend { file, monad, bound, .. } => match (file, monad) {
            (Some(path), _) => {
                let text = fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
                let parsed: CoendFile = serde_json::from_str(&text)?;
                Outcome::Report(check_coend_file(&parsed)?)
            }
            (None, Some(name)) => {
                let m = monad_by_name(name, *bound)?;
                Outcome::Report(verify_keyprop(m.as_ref(), *bound, *bound))
            }
            (None, None) => return Err(Usage("one of --file or --monad is required".into())),
        },
        Command::Roundtrip { monad, bound, .. } => {
            // stability is confirmed one truncation level above the largest X
            let m = monad_by_name(monad, bound + 1)?;
            Outcome::Report(roundtrip_check(m.as_ref(), *bound))
        }
        Command::Correspond { law, arity, size, sampling, .. } => {
            let l = catalog::law(law)
                .ok_or_else(|| Usage(format!("unknown law `{law}`; one of {}", catalog::LAWS.join(", "))))?;
            Outcome::Report(deep(|| composite_correspondence_check(&l, *arity, *size, &sampling.sampler())))
        }
        Command::Enumerate { theory: name, arity, size, .. } => {
            let spec = theory(name)?;
            let terms: Vec<String> = enumerate_terms(&spec, *arity, *size)?.iter().map(print_term).collect();
            Outcome::Value { text: terms.join("\n"), json: json(&terms) }
        }
        Command::Fixtures { .. } => Outcome::Report(run_fixtures()),
    })
}

fn monad_by_name(name: &str, bound: usize) -> Result<Box<dyn lawvere::monad::FinitaryMonad>, Usage> {
    catalog::monad(name, bound)
        .ok_or_else(|| Usage(format!("unknown monad `{name}`; one of {}", catalog::MONADS.join(", "))))
}

fn strict_example(name: &str) -> Result<Report, Usage> {
    let (c, l, r) = match name {
        // identities and 0<1 on the left, identities and 1<2 on the right
        "chain" => (FiniteCategory::chain(3), vec!["0<1"], vec!["1<2"]),
        // every morphism lies in both classes
        "iso-pair" => (FiniteCategory::iso_pair(), vec!["u", "v"], vec!["u", "v"]),
        _ => return Err(Usage(format!("unknown strict example `{name}`; one of chain, iso-pair"))),
    };
    let class = |names: Vec<&str>| -> Result<Vec<usize>, Usage> {
        let mut ids = c.identities().to_vec();
        for n in names {
            ids.push(c.find_morphism(n).ok_or_else(|| Usage(format!("no morphism {n}")))?);
        }
        Ok(ids)
    };
    let (l, r) = (class(l)?, class(r)?);
    Ok(check_strict_fs(&c, &l, &r))
}

fn output(command: &Command) -> &Output {
    match command {
        Command::Compose { out, .. }
        | Command::Factorize { out, .. }
        | Command::CheckLaw { out, .. }
        | Command::CheckYb { out, .. }
        | Command::CheckFs { out, .. }
        | Command::CheckCoend { out, .. }
        | Command::Roundtrip { out, .. }
        | Command::Correspond { out, .. }
        | Command::Enumerate { out, .. }
        | Command::Fixtures { out } => out,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = output(&cli.command);
    let (text, code) = match run(&cli.command) {
        Ok(Outcome::Report(report)) => {
            let code = if report.passed() { 0 } else { 1 };
            (if out.json { report.to_json() } else { report.to_string().trim_end().to_string() }, code)
        }
        Ok(Outcome::Value { text, json }) => (if out.json { json } else { text }, 0),
        Err(Usage(message)) => {
            eprintln!("error: {message}");
            return ExitCode::from(2);
        }
    };
    // a closed pipe is not an error worth reporting
    let _ = writeln!(std::io::stdout(), "{text}");
    if let Some(path) = &out.output {
        if let Err(e) = fs::write(path, format!("{text}\n")) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(code)
}
