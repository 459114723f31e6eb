//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use smalc::formats::{load_lexicon, load_signature, parse_derivation, parse_model, print_model, read_file};
use smalc::parallel;
use smalc_core::calculus::{check_derivation, prove, replay_without_cut, Derivation, Mode, ProofResult, RuleId, SearchBudget};
use smalc_core::grammar::parse_sentence;
use smalc_core::quantale::lemmas::{check_quantale, hom_image};
use smalc_core::quantale::{all_conuclei, all_homomorphisms, all_subquantales, ConHom, FiniteQuantale, QuantaleHom};
use smalc_core::representation::{build_relational, functor_laws, transport_conucleus, transport_homomorphism};
use smalc_core::semantics::{
    all_interpretations, enumerate_quantales, find_countermodel, CountermodelBudget, CountermodelOutcome,
};
use smalc_core::syntax::{parse_sequent, SetName, Sequent, Signature};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn data(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(rel)
}

fn fixture(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(rel)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn seq(s: &str) -> Sequent {
    parse_sequent(s).unwrap()
}

fn golden() -> Result<(Signature, Vec<(String, Derivation)>), String> {
    let sig = load_signature(&data("golden/golden.sig")).map_err(|e| e.to_string())?;
    let mut paths: Vec<PathBuf> = std::fs::read_dir(data("golden"))
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "der"))
        .collect();
    paths.sort();
    let mut out = Vec::new();
    for p in paths {
        let d = parse_derivation(&read_file(&p).map_err(|e| e.to_string())?).map_err(|e| e.in_file(&p).to_string())?;
        out.push((p.file_stem().unwrap().to_string_lossy().into_owned(), d));
    }
    Ok((sig, out))
}

fn golden_derivations() -> Outcome {
    let (sig, corpus) = golden()?;
    for name in [
        "reduction_left",
        "reduction_right",
        "distributivity_1",
        "distributivity_4",
        "dereliction",
        "promotion",
        "derived_exchange",
    ] {
        ensure(corpus.iter().any(|(n, _)| n == name), || format!("missing golden derivation {}", name))?;
    }
    for (name, d) in &corpus {
        check_derivation(d, &sig, Mode::L1).map_err(|e| format!("{}: {:?}", name, e))?;
        match prove(&d.conclusion, &sig, Mode::L1, SearchBudget::default()).map_err(|e| e.to_string())? {
            ProofResult::Proved(p) => {
                ensure(p.is_cut_free(), || format!("{}: search used cut", name))?;
                check_derivation(&p, &sig, Mode::L1).map_err(|e| format!("{} re-found: {:?}", name, e))?;
            }
            r => return Err(format!("{}: not re-found: {:?}", name, r)),
        }
    }
    let promotion_up = seq("!{s}a -> !{t}a");
    ensure(
        matches!(prove(&promotion_up, &sig, Mode::L1, SearchBudget::default()), Ok(ProofResult::NotProvedExhausted(_))),
        || "promotion against the order was proved".into(),
    )?;
    Ok(format!("{} derivations checked and re-found", corpus.len()))
}

fn non_theorems() -> Outcome {
    let sig = load_signature(&data("disc.sig")).map_err(|e| e.to_string())?;
    let mut sizes = Vec::new();
    for (k, text) in [(2, "(a|b)&(a|c) -> a|(b&c)"), (3, "a&(b|c) -> (a&b)|(a&c)")] {
        let goal = seq(text);
        let r = prove(&goal, &sig, Mode::L1, SearchBudget::default()).map_err(|e| e.to_string())?;
        ensure(matches!(r, ProofResult::NotProvedExhausted(_)), || format!("item {}: {:?}", k, r))?;
        let outcome = parallel::find_countermodel(&goal, &sig, 6, CountermodelBudget::default()).map_err(|e| e.to_string())?;
        let CountermodelOutcome::Found { witness, .. } = outcome else {
            return Err(format!("item {}: no witness: {:?}", k, outcome));
        };
        let size = witness.model.quantale().size();
        // minimality: nothing smaller refutes it
        let smaller = find_countermodel(&goal, &sig, size - 1, CountermodelBudget::default()).map_err(|e| e.to_string())?;
        ensure(matches!(smaller, CountermodelOutcome::NoneFound { .. }), || format!("item {}: smaller witness exists", k))?;
        // recorded oracle output
        let rec_path = fixture(&format!("distributivity_{}.mdl", k));
        let recorded = parse_model(&Signature::empty(), &read_file(&rec_path).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        ensure(
            recorded.model.quantale() == witness.model.quantale() && recorded.valuation == witness.valuation,
            || format!("item {}: witness differs from {}", k, rec_path.display()),
        )?;
        // re-validate through the command line
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let file = dir.path().join("witness.mdl");
        std::fs::write(&file, print_model(&witness.model, &witness.valuation)).map_err(|e| e.to_string())?;
        let status = Command::new(env!("CARGO_BIN_EXE_smalc"))
            .args(["model", "--sig"])
            .arg(data("disc.sig"))
            .arg("--model")
            .arg(&file)
            .arg(text)
            .output()
            .map_err(|e| e.to_string())?;
        ensure(status.status.code() == Some(1), || format!("item {}: `model` exit {:?}", k, status.status.code()))?;
        sizes.push(size);
    }
    Ok(format!("witness sizes {:?}, minimal and re-validated", sizes))
}

fn soundness_sweep() -> Outcome {
    let (sig, corpus) = golden()?;
    let corpus: Vec<Derivation> = corpus.into_iter().map(|(_, d)| d).collect();
    let models: Vec<_> = enumerate_quantales(3, true)
        .into_iter()
        .flat_map(|q| all_interpretations(&Arc::new(q), &sig))
        .collect();
    let report = parallel::soundness_sweep(&corpus, &sig, Mode::L1, &models).map_err(|e| e.to_string())?;
    ensure(report.violations.is_empty(), || format!("violations: {:?}", report.violations))?;
    Ok(format!("{} models, {} checks, 0 violations", models.len(), report.checks))
}

fn lemma_suite() -> Outcome {
    let qs: Vec<Arc<FiniteQuantale>> = enumerate_quantales(4, false).into_iter().map(Arc::new).collect();
    let mut bad = Vec::new();
    for q in &qs {
        bad.extend(check_quantale(q));
    }
    // homomorphic images of subquantales, over every pair
    let mut homs = 0;
    for a in &qs {
        let subs = all_subquantales(a);
        for b in &qs {
            for f in all_homomorphisms(a, b) {
                homs += 1;
                for s in &subs {
                    if let Err(c) = hom_image(&f, s) {
                        bad.push(c);
                    }
                }
            }
        }
    }
    ensure(bad.is_empty(), || format!("counterexamples: {:?}", bad))?;
    Ok(format!("{} quantales, {} homomorphisms, 0 counterexamples", qs.len(), homs))
}

fn representation() -> Outcome {
    let qs: Vec<Arc<FiniteQuantale>> = enumerate_quantales(4, true).into_iter().map(Arc::new).collect();
    let mut transports = 0;
    for q in &qs {
        let (rq, report) = build_relational(q).map_err(|e| e.to_string())?;
        ensure(report.passed(), || format!("representation fails:\n{}", report))?;
        for i in all_conuclei(q) {
            transport_conucleus(&rq, &i).map_err(|e| format!("conucleus {}: {}", i, e))?;
            transports += 1;
        }
    }
    let small: Vec<&Arc<FiniteQuantale>> = qs.iter().filter(|q| q.size() <= 3).collect();
    let mut pairs = 0;
    let mut squares = 0;
    for a in &small {
        for b in &small {
            let fs = all_homomorphisms(a, b);
            for f in &fs {
                for c in &small {
                    for g in all_homomorphisms(b, c) {
                        ensure(functor_laws(f, &g).map_err(|e| e.to_string())?, || "functor law fails".into())?;
                        pairs += 1;
                    }
                }
                for i1 in all_conuclei(a) {
                    for i2 in all_conuclei(b) {
                        if let Ok(h) = ConHom::new(f.clone(), i1.clone(), i2.clone()) {
                            transport_homomorphism(&h).map_err(|e| e.to_string())?;
                            squares += 1;
                        }
                    }
                }
            }
        }
    }
    let id_ok = small.iter().all(|q| {
        let id = QuantaleHom::identity((*q).clone());
        functor_laws(&id, &id) == Ok(true)
    });
    ensure(id_ok, || "identity lift fails".into())?;
    Ok(format!(
        "{} quantales, {} conuclei transported, {} hom pairs, {} conucleus squares",
        qs.len(),
        transports,
        pairs,
        squares
    ))
}

fn linguistics() -> Outcome {
    let budget = SearchBudget::default();
    let parse = |lex: &smalc_core::grammar::Lexicon, words: &str| {
        let w: Vec<&str> = words.split_whitespace().collect();
        parse_sentence(&w, lex, Mode::L1, budget).map_err(|e| e.to_string())
    };
    let wilde = load_lexicon(&data("wilde.lex")).map_err(|e| e.to_string())?;
    let sentence = "The Thames nocturne of blue and gold Changed to Harmony in grey";
    ensure(parse(&wilde, sentence)?.is_proved(), || "Wilde sentence does not parse".into())?;
    // "blue" and "gold" swapped with their neighbours
    let permuted = "The Thames nocturne of and blue gold Changed to Harmony in grey";
    ensure(!parse(&wilde, permuted)?.is_proved(), || "permuted sentence parses".into())?;

    let medial = load_lexicon(&data("medial.lex")).map_err(|e| e.to_string())?;
    let m = "the young lady whom Childe Harold met before his pilgrimage";
    ensure(parse(&medial, m)?.is_proved(), || "medial extraction fails".into())?;
    let no_e = medial
        .signature()
        .without_membership(SetName::E, "e")
        .map_err(|e| format!("{:?}", e))?;
    ensure(!parse(&medial.with_signature(no_e), m)?.is_proved(), || "medial extraction holds without E".into())?;

    let parasitic = load_lexicon(&data("parasitic.lex")).map_err(|e| e.to_string())?;
    let p = "the letter that Werther sent without reading";
    ensure(parse(&parasitic, p)?.is_proved(), || "parasitic extraction fails".into())?;
    let no_c = parasitic
        .signature()
        .without_membership(SetName::C, "c")
        .map_err(|e| format!("{:?}", e))?;
    ensure(!parse(&parasitic.with_signature(no_c), p)?.is_proved(), || "parasitic extraction holds without C".into())?;
    Ok("Wilde parses, permutation fails, medial needs E, parasitic needs C".into())
}

/// `left` proves `Γ -> A`; cut it into the first `A` of `right`'s antecedent.
fn cut(left: Derivation, right: Derivation) -> Derivation {
    let a = &left.conclusion.succedent;
    let r = right
        .conclusion
        .antecedent
        .iter()
        .position(|f| f == a)
        .expect("cut formula occurs in the right premise");
    let mut ant = right.conclusion.antecedent[..r].to_vec();
    ant.extend(left.conclusion.antecedent.iter().cloned());
    ant.extend(right.conclusion.antecedent[r + 1..].iter().cloned());
    let conclusion = Sequent::new(ant, right.conclusion.succedent.clone());
    Derivation::new(RuleId::Cut, conclusion, vec![left, right])
}

fn cut_replay() -> Outcome {
    let (sig, _) = golden()?;
    let budget = SearchBudget::default();
    let pf = |s: &str| -> Result<Derivation, String> {
        match prove(&seq(s), &sig, Mode::L1, budget).map_err(|e| e.to_string())? {
            ProofResult::Proved(d) => Ok(d),
            r => Err(format!("premise {} not proved: {:?}", s, r)),
        }
    };
    let pairs = [
        ("a, a\\b -> b", "b, b\\c -> c"),
        ("b/a, a -> b", "c/b, b -> c"),
        ("a -> b/(a\\b)", "b/(a\\b), a\\b -> b"),
        ("a, b -> a*b", "a*b, (a*b)\\c -> c"),
        ("a&b -> a", "a, a\\c -> c"),
        ("a -> a|b", "a|b -> b|a"),
        ("!{s}a -> a", "a, a\\b -> b"),
        ("!{t}a -> !{s}a", "!{s}a -> a"),
        ("a/b, b/c -> a/c", "a/c, c -> a"),
        ("1, a -> a", "a, a\\b -> b"),
        ("-> 1", "1, a -> a"),
        ("a -> (b/a)\\b", "b/a, (b/a)\\b -> b"),
        ("a|(b&c) -> (a|b)&(a|c)", "(a|b)&(a|c) -> a|b"),
        ("(a&b)|(a&c) -> a&(b|c)", "a&(b|c) -> a"),
        ("b, c, !{u}a -> (b*!{u}a)*c", "(b*!{u}a)*c, ((b*!{u}a)*c)\\d -> d"),
        ("!{u}a -> !{u}a*!{u}a", "!{u}a*!{u}a -> a*a"),
        ("(a*b)*c -> a*(b*c)", "a*(b*c), (a*(b*c))\\d -> d"),
        ("a -> a&a", "a&a, (a&a)\\b -> b"),
        ("!{u}a, b -> b", "b, b\\c -> c"),
    ];
    let mut corpus: Vec<Derivation> = Vec::new();
    for (l, r) in pairs {
        corpus.push(cut(pf(l)?, pf(r)?));
    }
    // a cut whose left premise is itself a cut
    corpus.push(cut(corpus[0].clone(), pf("c, c\\d -> d")?));
    ensure(corpus.len() == 20, || format!("{} cut derivations", corpus.len()))?;
    for d in &corpus {
        ensure(d.uses_rule(RuleId::Cut), || "no cut".into())?;
        match replay_without_cut(d, &sig, Mode::L1, budget).map_err(|e| format!("{}: {}", d.conclusion, e))? {
            ProofResult::Proved(p) => ensure(p.is_cut_free() && p.conclusion == d.conclusion, || "bad replay".into())?,
            r => return Err(format!("{}: {:?}", d.conclusion, r)),
        }
    }
    Ok(format!("{} cut derivations replayed cut-free", corpus.len()))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 golden derivations", golden_derivations, Duration::from_secs(5)),
        ("2 non-theorems", non_theorems, Duration::from_secs(600)),
        ("3 soundness sweep", soundness_sweep, Duration::from_secs(600)),
        ("4 algebra lemmas", lemma_suite, Duration::from_secs(600)),
        ("5 representation", representation, Duration::from_secs(900)),
        ("6 linguistics", linguistics, Duration::from_secs(30)),
        ("7 cut replay", cut_replay, Duration::from_secs(600)),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, run, limit) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let result = result.and_then(|msg| {
            if took <= limit {
                Ok(msg)
            } else {
                Err(format!("{} but took {:.1?} (limit {:?})", msg, took, limit))
            }
        });
        match result {
            Ok(msg) => println!("criterion {}: PASS ({:.2?}) {}", name, took, msg),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL ({:.2?}) {}", name, took, msg);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
