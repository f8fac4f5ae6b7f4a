use std::path::PathBuf;

use nel_kernel::cli::{run, EXIT_FAIL, EXIT_OK, EXIT_USAGE};

fn corpus(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("corpus")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn nel(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("nel").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn write_tmp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn check_accepts_the_corpus() {
    let (code, out, _) = nel(&["check", &corpus("lambda.nel")]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("5/5 derivations check"), "{out}");
    let (code, _, _) = nel(&["check", &corpus("lambda_neol.nel"), "--theory", "lambda"]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn check_reports_a_broken_derivation() {
    let dir = tempfile::tempdir().unwrap();
    let src = std::fs::read_to_string(corpus("lambda.nel")).unwrap();
    // The η axiom does not prove the β2 goal.
    let broken = src.replacen(
        "derivation eta_symm in lambda : ({a} # x : tm) |- x ~ lam[a] app(x, var[a]) : tm :=\n  symm(",
        "derivation eta_symm in lambda : ({a} # x : tm) |- x ~ lam[a] app(x, var[a]) : tm :=\n  trans(axiom(eta),",
        1,
    );
    assert_ne!(broken, src);
    let path = write_tmp(&dir, "broken.nel", &broken);
    let (code, out, _) = nel(&["check", &path, "--format", "json"]);
    assert_eq!(code, EXIT_FAIL, "{out}");
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["ok"], false);
    let failed: Vec<_> = report["derivations"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|d| d["ok"] == false)
        .collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0]["name"], "eta_symm");
    assert!(failed[0]["line"].as_u64().unwrap() > 0);
}

#[test]
fn parse_errors_exit_with_two_and_a_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_tmp(&dir, "bad.nel", "sort tm;\nop lam[1] : (tm) -> tm\n");
    let (code, _, err) = nel(&["check", &path]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("bad.nel:3:1"), "{err}");

    let (code, _, err) = nel(&[
        "decide",
        "(x : tm) |- y ~ x : tm",
        "--sig",
        &corpus("lambda.nel"),
    ]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("not bound"), "{err}");

    let (code, _, _) = nel(&["check", &corpus("lambda.nel"), "--theory", "nope"]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _, _) = nel(&["frobnicate"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn decide_prints_verdicts_and_certificates() {
    let sig = corpus("lambda.nel");
    let (code, out, _) = nel(&[
        "decide",
        "({a b} # x : tm) |- (a b) x ~ x : tm",
        "--sig",
        &sig,
        "--certify",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(
        out,
        "true\nweak{({a b} # x : tm)}(\n  susp{(a b) x ~ x : tm}\n)\n"
    );

    let (code, out, _) = nel(&[
        "decide",
        "(x : tm) |- {a} # lam[a] x : tm",
        "--sig",
        &sig,
        "--format",
        "json",
    ]);
    assert_eq!(code, EXIT_FAIL);
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["verdict"], false);

    let (code, out, _) = nel(&[
        "decide",
        "({a} # x : tm) |- {a} # lam[b] x : tm",
        "--sig",
        &sig,
        "--certify",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(
        out.starts_with("true\n") && out.contains("atm-elim"),
        "{out}"
    );
}

#[test]
fn compile_writes_the_translated_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("out.nel");
    let (code, _, err) = nel(&[
        "compile",
        &corpus("lambda.nel"),
        "-o",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    let written = std::fs::read_to_string(out_path).unwrap();
    assert_eq!(
        written,
        std::fs::read_to_string(corpus("lambda_neol.nel")).unwrap()
    );

    // Compiling compiled output changes nothing.
    let (code, again, _) = nel(&["compile", &corpus("lambda_neol.nel")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(again, written);
}

#[test]
fn search_finds_axioms_and_reports_failure() {
    let th = corpus("lambda.nel");
    let (code, out, _) = nel(&[
        "search",
        "(x : tm) |- {a} # lam[a] x : tm",
        "--theory",
        &th,
        "--depth",
        "2",
    ]);
    assert_eq!((code, out.as_str()), (EXIT_OK, "axiom(alpha)\n"));

    let (code, out, _) = nel(&[
        "search",
        "(x : tm) |- (a b) x ~ x : tm",
        "--theory",
        &th,
        "--depth",
        "3",
        "--atoms",
        "0",
        "--perm-len",
        "0",
    ]);
    assert_eq!((code, out.as_str()), (EXIT_FAIL, "not found\n"));
}
