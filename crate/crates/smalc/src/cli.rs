//! The `smalc` command line.
//!
//! Exit codes: 0 proved / holds / pass, 1 refuted / countermodel found /
//! fail, 2 budget exhausted, 3 input error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use smalc_core::calculus::{check_derivation, prove, Mode, ProofResult, SearchBudget, SearchStats};
use smalc_core::grammar::{parse_sentence, ParseOutcome};
use smalc_core::quantale::{all_conuclei, ConucleusMap, FiniteQuantale};
use smalc_core::representation::{build_relational, transport_conucleus};
use smalc_core::semantics::{holds, interpret, CountermodelBudget, CountermodelOutcome};
use smalc_core::syntax::{parse_sequent, Sequent, Signature};

use crate::formats::{
    load_lexicon, load_signature, parse_conucleus, parse_derivation, parse_model, parse_quantale, print_derivation,
    print_model, print_quantale, read_file, FormatError,
};
use crate::parallel;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

/// Conuclei are transported exhaustively up to this carrier size.
const ALL_CONUCLEI_LIMIT: usize = 6;

#[derive(Debug, Parser)]
#[command(name = "smalc", version, about = "Lambek calculus with subexponentials: proofs, models, grammars")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Signature file; the empty signature when omitted.
    #[arg(long)]
    pub sig: Option<PathBuf>,
    /// L, Lstar or L1.
    #[arg(long, default_value = "L1")]
    pub mode: Mode,
    /// Worker threads; 0 means one per CPU.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct Budget {
    #[arg(long, default_value_t = 40)]
    pub budget_depth: u32,
    #[arg(long, default_value_t = 3)]
    pub budget_contr: u32,
    #[arg(long, default_value_t = 1_000_000)]
    pub budget_nodes: u64,
}

impl Budget {
    fn get(&self) -> SearchBudget {
        SearchBudget {
            max_depth: self.budget_depth,
            max_contractions_per_branch: self.budget_contr,
            max_nodes: self.budget_nodes,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Search for a cut-free derivation of a sequent.
    Prove {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        budget: Budget,
        /// Also write the derivation here.
        #[arg(long)]
        out: Option<PathBuf>,
        sequent: String,
    },
    /// Verify a derivation file.
    Check {
        #[command(flatten)]
        common: Common,
        derivation: PathBuf,
    },
    /// Evaluate a sequent in a model file.
    Model {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        model: PathBuf,
        sequent: String,
    },
    /// Search finite unital quantales for a refuting model.
    Countermodel {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 6)]
        max_size: usize,
        /// Cap on (model, valuation) evaluations.
        #[arg(long, default_value_t = 100_000_000)]
        max_checks: u64,
        /// Write the witness model file here.
        #[arg(long)]
        out: Option<PathBuf>,
        sequent: String,
    },
    /// Build the relational representation of a quantale and transport its
    /// conuclei.
    Represent {
        #[arg(long)]
        quantale: PathBuf,
        /// Conucleus files to transport; without any, every conucleus is
        /// transported on carriers of at most six elements.
        #[arg(long)]
        conucleus: Vec<PathBuf>,
    },
    /// Parse a sentence with a lexicon.
    Parse {
        #[arg(long)]
        lexicon: PathBuf,
        #[arg(long, default_value = "L1")]
        mode: Mode,
        #[command(flatten)]
        budget: Budget,
        #[arg(required = true)]
        words: Vec<String>,
    },
    /// Print every quantale up to a size, up to isomorphism.
    Enumerate {
        #[arg(long)]
        max_size: usize,
        /// Only unital quantales.
        #[arg(long)]
        unital: bool,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Write one file per quantale into this directory instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("{0}")]
    Input(String),
    #[error("{0}: {1}")]
    Io(String, std::io::Error),
}

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn signature(path: &Option<PathBuf>) -> Result<Signature, CliError> {
    match path {
        Some(p) => Ok(load_signature(p)?),
        None => Ok(Signature::empty()),
    }
}

fn sequent(text: &str) -> Result<Sequent, CliError> {
    parse_sequent(text).map_err(|e| CliError::Input(format!("sequent: {}", e)))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(path.display().to_string(), e))
}

fn stats_line(s: &SearchStats, budget: bool) -> String {
    let line = format!(
        "nodes={} iterations={} depth_bound={} contraction_bound={}",
        s.nodes, s.iterations, s.depth_bound, s.contraction_bound
    );
    if !budget {
        return line;
    }
    let mut hit = Vec::new();
    for (b, name) in [(s.hit_depth, "depth"), (s.hit_contractions, "contractions"), (s.hit_nodes, "nodes")] {
        if b {
            hit.push(name);
        }
    }
    format!("{} limits_hit={}", line, hit.join(","))
}

/// Runs one invocation, writing the report to `out` and diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{}", e.render()) } else { write!(out, "{}", e.render()) };
            return code;
        }
    };
    let mut report = String::new();
    let result = execute(cli.command, &mut report);
    let _ = out.write_all(report.as_bytes());
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e);
            EXIT_INPUT
        }
    }
}

fn execute(command: Command, out: &mut String) -> Result<i32, CliError> {
    match command {
        Command::Prove {
            common,
            budget,
            out: path,
            sequent: text,
        } => {
            let sig = signature(&common.sig)?;
            let goal = sequent(&text)?;
            match prove(&goal, &sig, common.mode, budget.get()).map_err(input)? {
                ProofResult::Proved(d) => {
                    let tree = print_derivation(&d);
                    writeln!(out, "Proved").unwrap();
                    out.push_str(&tree);
                    if let Some(p) = path {
                        write_file(&p, &tree)?;
                    }
                    Ok(EXIT_OK)
                }
                ProofResult::NotProvedExhausted(s) => {
                    writeln!(out, "NotProvedExhausted\n{}", stats_line(&s, false)).unwrap();
                    Ok(EXIT_REFUTED)
                }
                ProofResult::NotProvedBudget(s) => {
                    writeln!(out, "NotProvedBudget\n{}", stats_line(&s, true)).unwrap();
                    Ok(EXIT_BUDGET)
                }
            }
        }
        Command::Check { common, derivation } => {
            let sig = signature(&common.sig)?;
            let d = parse_derivation(&read_file(&derivation)?).map_err(|e| e.in_file(&derivation))?;
            match check_derivation(&d, &sig, common.mode) {
                Ok(()) => {
                    writeln!(out, "valid {} :: {}", common.mode, d.conclusion).unwrap();
                    Ok(EXIT_OK)
                }
                Err(errors) => {
                    writeln!(out, "invalid").unwrap();
                    for e in errors {
                        writeln!(out, "{}", e).unwrap();
                    }
                    Ok(EXIT_REFUTED)
                }
            }
        }
        Command::Model {
            common,
            model,
            sequent: text,
        } => {
            let sig = signature(&common.sig)?;
            let seq = sequent(&text)?;
            let m = parse_model(&sig, &read_file(&model)?).map_err(|e| e.in_file(&model))?;
            let q = m.model.quantale();
            let mut lhs = q.unit().expect("models are unital");
            for a in &seq.antecedent {
                lhs = q.mult(lhs, interpret(&m.model, &m.valuation, a).map_err(input)?);
            }
            let rhs = interpret(&m.model, &m.valuation, &seq.succedent).map_err(input)?;
            let ok = holds(&m.model, &m.valuation, &seq).map_err(input)?;
            writeln!(out, "antecedent={} succedent={}", lhs, rhs).unwrap();
            writeln!(out, "{}", if ok { "holds" } else { "refuted" }).unwrap();
            Ok(if ok { EXIT_OK } else { EXIT_REFUTED })
        }
        Command::Countermodel {
            common,
            max_size,
            max_checks,
            out: path,
            sequent: text,
        } => {
            let sig = signature(&common.sig)?;
            let seq = sequent(&text)?;
            if max_checks == 0 {
                return Err(CliError::Input("--max-checks must be positive".into()));
            }
            let budget = CountermodelBudget { max_checks };
            let outcome = parallel::pool(common.jobs)
                .install(|| parallel::find_countermodel(&seq, &sig, max_size, budget))
                .map_err(input)?;
            match outcome {
                CountermodelOutcome::Found { witness, checks } => {
                    let text = print_model(&witness.model, &witness.valuation);
                    writeln!(out, "countermodel size={} checks={}", witness.model.quantale().size(), checks).unwrap();
                    out.push_str(&text);
                    if let Some(p) = path {
                        write_file(&p, &text)?;
                    }
                    Ok(EXIT_REFUTED)
                }
                CountermodelOutcome::NoneFound { checks } => {
                    writeln!(out, "no countermodel up to size {} checks={}", max_size, checks).unwrap();
                    Ok(EXIT_OK)
                }
                CountermodelOutcome::Budget { checks } => {
                    writeln!(out, "budget exhausted checks={}", checks).unwrap();
                    Ok(EXIT_BUDGET)
                }
            }
        }
        Command::Represent { quantale, conucleus } => {
            let q = Arc::new(parse_quantale(&read_file(&quantale)?).map_err(|e| e.in_file(&quantale))?);
            let (rq, report) = build_relational(&q).map_err(input)?;
            let conuclei: Vec<ConucleusMap> = if conucleus.is_empty() {
                if q.size() <= ALL_CONUCLEI_LIMIT {
                    all_conuclei(&q)
                } else {
                    Vec::new()
                }
            } else {
                conucleus
                    .iter()
                    .map(|p| parse_conucleus(&q, &read_file(p)?).map_err(|e| e.in_file(p)))
                    .collect::<Result<_, _>>()?
            };
            let mut transport_ok = true;
            for i in &conuclei {
                match transport_conucleus(&rq, i) {
                    Ok(_) => writeln!(out, "transport {} ✓", i).unwrap(),
                    Err(e) => {
                        transport_ok = false;
                        writeln!(out, "transport {} ✗ {}", i, e).unwrap();
                    }
                }
            }
            writeln!(out, "{}", report).unwrap();
            Ok(if report.passed() && transport_ok { EXIT_OK } else { EXIT_REFUTED })
        }
        Command::Parse {
            lexicon,
            mode,
            budget,
            words,
        } => {
            let lex = load_lexicon(&lexicon)?;
            let words: Vec<&str> = words.iter().flat_map(|w| w.split_whitespace()).collect();
            match parse_sentence(&words, &lex, mode, budget.get()).map_err(input)? {
                ParseOutcome::Proved { assignment, derivation } => {
                    writeln!(out, "Proved {}", lex.target()).unwrap();
                    for (w, t) in words.iter().zip(&assignment) {
                        writeln!(out, "{} : {}", w, t).unwrap();
                    }
                    out.push_str(&print_derivation(&derivation));
                    Ok(EXIT_OK)
                }
                ParseOutcome::NotProved {
                    exhausted, assignments, ..
                } => {
                    writeln!(
                        out,
                        "{} assignments={}",
                        if exhausted { "NotProvedExhausted" } else { "NotProvedBudget" },
                        assignments
                    )
                    .unwrap();
                    Ok(if exhausted { EXIT_REFUTED } else { EXIT_BUDGET })
                }
            }
        }
        Command::Enumerate {
            max_size,
            unital,
            jobs,
            out: dir,
        } => {
            if max_size > smalc_core::semantics::MAX_LATTICE {
                return Err(CliError::Input(format!(
                    "--max-size is at most {}",
                    smalc_core::semantics::MAX_LATTICE
                )));
            }
            let qs: Vec<FiniteQuantale> =
                parallel::pool(jobs).install(|| parallel::enumerate_quantales(max_size, unital));
            if let Some(dir) = &dir {
                std::fs::create_dir_all(dir).map_err(|e| CliError::Io(dir.display().to_string(), e))?;
            }
            for (k, q) in qs.iter().enumerate() {
                let text = print_quantale(q);
                match &dir {
                    Some(d) => write_file(&d.join(format!("q{:05}.qnt", k)), &text)?,
                    None => writeln!(out, "# {}\n{}", k, text).unwrap(),
                }
            }
            writeln!(out, "# total {}", qs.len()).unwrap();
            Ok(EXIT_OK)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut o = Vec::new();
        let mut e = Vec::new();
        let code = run(std::iter::once("smalc").chain(args.iter().copied()), &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn prove_exit_codes() {
        let (c, o, _) = call(&["prove", "a, a\\b -> b"]);
        assert_eq!(c, EXIT_OK);
        assert_eq!(o, "Proved\nLDivL :: a, a\\b -> b\n  Ax :: a -> a\n  Ax :: b -> b\n");
        assert_eq!(call(&["prove", "a -> b"]).0, EXIT_REFUTED);
        assert_eq!(call(&["prove", "a ->"]).0, EXIT_INPUT);
        assert_eq!(call(&["prove", "--budget-depth", "0", "a -> a"]).0, EXIT_INPUT);
        assert_eq!(call(&["frobnicate"]).0, EXIT_INPUT);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn enumerate_counts() {
        let (c, o, _) = call(&["enumerate", "--max-size", "3", "--unital"]);
        assert_eq!(c, EXIT_OK);
        assert!(o.ends_with("# total 5\n"), "{}", o);
    }
}
