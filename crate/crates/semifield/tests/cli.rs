use std::process::Command;

use semifield::cli::{check_decide_record, run};
use semifield::corpus::read_corpus;
use semifield::record::{parse_records, RunRecord};
use semifield_core::decide::verify_diagram;
use semifield_core::terms::{parse, Signature};
use semifield_core::translate::{ell_to_basic, BasicInequation, Quasiequation, SimpleInequation};

/// Run in-process; returns (exit code, stdout, stderr).
fn sf(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["semifield".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(&argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn records(args: &[&str]) -> Vec<RunRecord> {
    let mut with_json = vec!["--json"];
    with_json.extend_from_slice(args);
    let (code, out, err) = sf(&with_json);
    assert_eq!(code, 0, "{args:?}: {err}");
    parse_records(&out).unwrap()
}

fn temp(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("semifield-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_semifield");
    let code = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(
        code(&["decide", "--class", "semifield", "x <= e \\/ x^2"]),
        Some(0)
    );
    assert_eq!(code(&["decide", "--class", "semifield", "x <= y"]), Some(0));
    assert_eq!(code(&["decide", "x <="]), Some(1));
    assert_eq!(code(&["frobnicate"]), Some(1));
    assert_eq!(code(&["decide", "--class", "nowhere", "x <= x"]), Some(1));
    assert_eq!(
        code(&["decide", "--nodes", "1", "e <= x \\/ x^-1"]),
        Some(2)
    );
    assert_eq!(code(&["--help"]), Some(0));
}

#[test]
fn budget_errors_are_reported_as_records() {
    let (code, out, _) = sf(&["--json", "decide", "--nodes", "1", "e <= x \\/ x^-1"]);
    assert_eq!(code, 2);
    let recs = parse_records(&out).unwrap();
    assert_eq!(recs[0].get("error").unwrap()["kind"], "budget");
}

#[test]
fn spec_examples() {
    let r = &records(&["decide", "--class", "semifield", "x <= e \\/ x^2"])[0];
    assert_eq!(r.get("status").unwrap(), "valid");
    let r = &records(&["decide", "--class", "semifield", "x <= y"])[0];
    assert_eq!(r.get("status").unwrap(), "invalid");
    assert!(!r.get("certificate").unwrap().is_null());
    check_decide_record(r).unwrap();
    let r = &records(&["witness", "--n", "3"])[0];
    assert_eq!(r.get("inequation").unwrap(), "x <= e \\/ x^3");
    assert_eq!(r.get("assignment").unwrap()["x"], "a");
    let (code, out, _) = sf(&["witness", "--n", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("fails in flat(Z3) at x = a"), "{out}");
}

#[test]
fn gen_is_deterministic_and_parseable() {
    let args = [
        "gen",
        "--seed",
        "1",
        "--count",
        "10",
        "--vars",
        "2",
        "--max-len",
        "4",
    ];
    let (c1, a, _) = sf(&args);
    let (c2, b, _) = sf(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    let corpus = read_corpus(&a, Signature::Monoid).unwrap();
    assert_eq!(corpus.entries.len(), 10);
    let (_, other, _) = sf(&[
        "gen",
        "--seed",
        "2",
        "--count",
        "10",
        "--vars",
        "2",
        "--max-len",
        "4",
    ]);
    assert_ne!(a, other);

    // Same through the binary, written to a file.
    let bin = env!("CARGO_BIN_EXE_semifield");
    let files: Vec<String> = (0..2)
        .map(|i| {
            let path = temp(&format!("gen{i}.txt"), "");
            let status = Command::new(bin)
                .args(["gen", "--seed", "1", "--count", "10", "-o"])
                .arg(&path)
                .output()
                .unwrap()
                .status;
            assert!(status.success());
            std::fs::read_to_string(path).unwrap()
        })
        .collect();
    assert_eq!(files[0], files[1]);
}

#[test]
fn lgroup_corpus_reduces() {
    for kind in ["lgroup", "shaped", "basic"] {
        let (code, text, err) = sf(&[
            "gen",
            "--seed",
            "5",
            "--kind",
            kind,
            "--vars",
            "3",
            "--max-len",
            "6",
            "--count",
            "40",
        ]);
        assert_eq!(code, 0, "{err}");
        let corpus = read_corpus(&text, Signature::Monoid).unwrap();
        assert_eq!(corpus.entries.len(), 40);
        for e in &corpus.entries {
            assert_eq!(e.statement.signature, Signature::Lgroup);
            let t = ell_to_basic(&e.statement).unwrap();
            assert!(!t.is_empty());
        }
    }
    let (code, _, err) = sf(&["gen", "--kind", "basic", "--signature", "semiring"]);
    assert_eq!(code, 1, "{err}");
}

#[test]
fn translations_reparse() {
    let cases: &[(&[&str], &dyn Fn(&str))] = &[
        (&["translate", "simple", "e <= x*(y \\/ z) \\/ e"], &|s| {
            SimpleInequation::parse(s).unwrap();
        }),
        (&["translate", "star", "x <= e \\/ y^-1*x"], &|s| {
            SimpleInequation::parse(s).unwrap();
        }),
        (
            &["translate", "star", "--literal", "x <= e \\/ x^-1"],
            &|s| {
                SimpleInequation::parse(s).unwrap();
            },
        ),
        (
            &["translate", "basic", "x /\\ y <= (x \\/ y^-1) /\\ e"],
            &|s| {
                BasicInequation::parse(s).unwrap();
            },
        ),
        (&["translate", "quasi", "x <= y \\/ x*y \\/ e"], &|s| {
            Quasiequation::parse(s).unwrap();
        }),
        (&["translate", "efree", "e <= x \\/ e"], &|s| {
            SimpleInequation::parse(s).unwrap();
        }),
        (&["translate", "zero", "(x*0) \\/ y <= 0 \\/ x"], &|s| {
            parse(s, Signature::Semiring0).unwrap();
        }),
        (&["translate", "zero", "x*(0 \\/ y)"], &|s| {
            parse(s, Signature::Semiring0).unwrap();
        }),
        (&["translate", "rightreg", "x <= y \\/ x^2"], &|s| {
            SimpleInequation::parse(s).unwrap();
        }),
    ];
    for (args, reparse) in cases {
        let recs = records(args);
        assert_eq!(recs.len(), 1);
        let outs = recs[0].get("output").unwrap().as_array().unwrap();
        let sizes = recs[0].get("size_out").unwrap().as_array().unwrap();
        assert_eq!(outs.len(), sizes.len());
        assert!(!outs.is_empty(), "{args:?}");
        for o in outs {
            reparse(o.as_str().unwrap());
        }
        assert!(RunRecord::replays(&recs), "{args:?}");
    }
}

#[test]
fn certificates_reverify_from_records() {
    let statements: &[(&str, &str)] = &[
        ("lgroup", "e <= x"),
        ("lgroup", "e <= x /\\ y"),
        ("lgroup", "x*y = y*x"),
        ("dlmonoid", "e <= x /\\ y"),
        ("semifield", "x*y <= y*x \\/ x^2"),
        ("semifield_efree", "x*y <= y*x"),
        ("commutative", "x <= e \\/ y"),
        ("semifield0", "x <= 0 \\/ y"),
    ];
    for (class, st) in statements {
        let recs = records(&["decide", "--class", class, st]);
        let r = &recs[0];
        assert_eq!(r.get("status").unwrap(), "invalid", "{class} {st}");
        check_decide_record(r).unwrap_or_else(|e| panic!("{class} {st}: {e}"));
        assert!(RunRecord::replays(&recs));
    }
    // A tampered certificate is caught.
    let mut r = records(&["decide", "e <= x"]).remove(0);
    r.body.get_mut("certificate").unwrap()["diagram"]["maps"]["x"] = serde_json::json!([[0, 1]]);
    assert!(check_decide_record(&r).is_err());
}

#[test]
fn order_certificates_refute_the_positive_cone_inequation() {
    let recs = records(&["order", "group", "x*y^-1", "y"]);
    let r = &recs[0];
    assert_eq!(r.get("exists").unwrap(), true);
    let words: Vec<String> =
        serde_json::from_value(r.get("reduced_words").unwrap().clone()).unwrap();
    let target = BasicInequation::parse(&format!("e <= {}", words.join(" \\/ "))).unwrap();
    let d = serde_json::from_value(r.get("certificate").unwrap().clone()).unwrap();
    verify_diagram(&d, &target).unwrap();
    let r = &records(&["order", "monoid", "x<x"])[0];
    assert_eq!(r.get("exists").unwrap(), false);
    let r = &records(&["order", "monoid", "x*y<y*x"])[0];
    assert_eq!(r.get("exists").unwrap(), true);
    let (code, _, _) = sf(&["order", "monoid", "x<=y"]);
    assert_eq!(code, 1);
}

#[test]
fn model_commands() {
    let r = &records(&["model", "check", "--algebra", "flat-zn:5", "x <= e \\/ x^5"])[0];
    assert_eq!(r.get("holds").unwrap(), false);
    assert_eq!(r.get("witness").unwrap()["x"], "a");
    let r = &records(&["model", "check", "--algebra", "o:3", "x /\\ y <= x \\/ y"])[0];
    assert_eq!(r.get("holds").unwrap(), true);
    let r = &records(&["model", "quasi", "--in", "Zn:2", "e = x^2 => e = x"])[0];
    assert_eq!(r.get("holds").unwrap(), false);
    let r = &records(&["model", "quasi", "--in", "Z", "e = x^2 => e = x"])[0];
    assert_eq!(r.get("holds").unwrap(), true);

    // Exported tables load back as an algebra.
    let r = &records(&["model", "export", "--algebra", "flat-zn:4"])[0];
    let path = temp("z4.json", &r.get("algebra").unwrap().to_string());
    let spec = format!("file:{}", path.display());
    let a = &records(&["model", "check", "--algebra", &spec, "x <= e \\/ x^4"])[0];
    assert_eq!(a.get("holds").unwrap(), false);
    assert_eq!(
        sf(&["model", "check", "--algebra", "flat-zn:0", "x <= x"]).0,
        1
    );
}

#[test]
fn timings_are_opt_in() {
    let quiet = &records(&["decide", "e <= x \\/ x^-1"])[0];
    assert!(quiet.elapsed_ms.is_none());
    let timed = &records(&["--timings", "decide", "e <= x \\/ x^-1"])[0];
    assert!(timed.elapsed_ms.is_some());
    let (_, text, _) = sf(&["decide", "e <= x \\/ x^-1"]);
    assert!(!text.contains("elapsed"));
}

#[test]
fn bench_reports() {
    let empty = temp("empty.txt", "# signature: lgroup\n");
    let (code, out, err) = sf(&["--json", "bench", empty.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let recs = parse_records(&out).unwrap();
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0].get("summary").unwrap()["rows"], 0);

    let (_, corpus, _) = sf(&[
        "gen",
        "--seed",
        "3",
        "--kind",
        "basic",
        "--vars",
        "3",
        "--joinands",
        "3",
        "--max-len",
        "4",
        "--count",
        "100",
    ]);
    let path = temp("basic.txt", &corpus);
    let (code, out, err) = sf(&["--json", "bench", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let recs = parse_records(&out).unwrap();
    assert_eq!(recs.len(), 101);
    let summary = &recs[100].get("summary").unwrap();
    assert_eq!(summary["rows"], 100);
    assert!(summary["max_star_ratio"].as_f64().unwrap() <= 1.0);
    assert!(summary["max_basic_ratio"].as_f64().unwrap() <= 1.0);
    let counted = ["valid", "invalid", "budget", "errors"]
        .iter()
        .map(|k| summary[k].as_u64().unwrap())
        .sum::<u64>();
    assert_eq!(counted, 100);
    assert_eq!(summary["errors"], 0);
    assert!(RunRecord::replays(&recs));

    let (code, text, _) = sf(&["bench", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(text.contains("rows 100:"), "{text}");
    assert_eq!(sf(&["bench", "/nonexistent/corpus.txt"]).0, 1);
}
