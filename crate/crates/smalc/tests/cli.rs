use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(rel)
}

fn smalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_smalc")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn prove_reduction() {
    let sig = data("disc.sig");
    let o = smalc(&["prove", "--sig", sig.to_str().unwrap(), "a, a\\b -> b"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("LDivL :: a, a\\b -> b"));
}

#[test]
fn emitted_proof_checks() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("p.der");
    let sig = data("golden/golden.sig");
    let sig = sig.to_str().unwrap();
    let o = smalc(&["prove", "--sig", sig, "--out", out.to_str().unwrap(), "b, c, !{u}a -> (b*!{u}a)*c"]);
    assert_eq!(o.status.code(), Some(0));
    let o = smalc(&["check", "--sig", sig, out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    // the same derivation is invalid in a signature without exchange for u
    let bare = dir.path().join("bare.sig");
    std::fs::write(&bare, "index s\nindex t\nindex u\n").unwrap();
    let o = smalc(&["check", "--sig", bare.to_str().unwrap(), out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn countermodel_witness_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.mdl");
    let sig = data("disc.sig");
    let sig = sig.to_str().unwrap();
    let goal = "(a|b)&(a|c) -> a|(b&c)";
    let o = smalc(&["countermodel", "--sig", sig, "--max-size", "6", "--out", out.to_str().unwrap(), goal]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("countermodel size=5"));
    let o = smalc(&["model", "--sig", sig, "--model", out.to_str().unwrap(), goal]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).ends_with("refuted\n"));
    let o = smalc(&["model", "--sig", sig, "--model", out.to_str().unwrap(), "a&b -> a"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn countermodel_budget_and_none() {
    let o = smalc(&["countermodel", "--max-size", "6", "--max-checks", "10", "(a|b)&(a|c) -> a|(b&c)"]);
    assert_eq!(o.status.code(), Some(2));
    let o = smalc(&["countermodel", "--max-size", "3", "a, a\\b -> b"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn output_is_independent_of_workers() {
    for args in [
        &["countermodel", "--max-size", "5", "a&(b|c) -> (a&b)|(a&c)"][..],
        &["enumerate", "--max-size", "4"][..],
    ] {
        let mut one: Vec<&str> = args.to_vec();
        one.extend(["--jobs", "1"]);
        let mut many: Vec<&str> = args.to_vec();
        many.extend(["--jobs", "4"]);
        assert_eq!(smalc(&one).stdout, smalc(&many).stdout);
    }
}

#[test]
fn represent_two_chain() {
    let o = smalc(&["represent", "--quantale", data("q2.qnt").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim_end().ends_with("REPRESENTATION size=2 status=pass"));
}

#[test]
fn parse_wilde() {
    let lex = data("wilde.lex");
    let mut args = vec!["parse", "--lexicon", lex.to_str().unwrap()];
    args.extend("The Thames nocturne of blue and gold Changed to Harmony in grey".split(' '));
    let o = smalc(&args);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("Proved s\nThe : (np/n)/np\n"));
}

#[test]
fn enumerate_to_directory() {
    let dir = tempfile::tempdir().unwrap();
    let o = smalc(&["enumerate", "--max-size", "3", "--unital", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 5);
    let first = dir.path().join("q00000.qnt");
    let o = smalc(&["represent", "--quantale", first.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn input_errors_carry_position() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.sig");
    std::fs::write(&bad, "index s\nfrobnicate s\n").unwrap();
    let o = smalc(&["prove", "--sig", bad.to_str().unwrap(), "a -> a"]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("bad.sig:2: unknown directive `frobnicate`"), "{}", err);
    assert_eq!(smalc(&["prove", "a, -> a"]).status.code(), Some(3));
    assert_eq!(smalc(&["model", "--model", "/nonexistent", "a -> a"]).status.code(), Some(3));
}
