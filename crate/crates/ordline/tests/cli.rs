//! Integration tests for the command-line surface: determinism, exit codes,
//! and the round-trip property that every emitted artifact re-verifies when
//! fed back in.

use ordline::cli::run;

fn run_cli(args: &[&str]) -> (String, i32) {
    let mut full = vec!["ordline"];
    full.extend_from_slice(args);
    run(full)
}

fn fixture(name: &str) -> String {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_str()
        .unwrap()
        .to_owned()
}

fn temp_dir(test: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("ordline-it-{}-{test}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn repeated_runs_are_byte_identical() {
    let commands: Vec<Vec<&str>> = vec![
        vec!["reduce", "--word", "a b a^-1 a b^-1 b"],
        vec!["violate", "--word", "a^-1 b a^2"],
        vec!["violate", "--corpus", "5", "--seed", "42"],
        vec!["no-law", "--word", "a b a^-1 b^-1"],
        vec!["gen-witness", "--k", "2"],
    ];
    for args in commands {
        let (a, ca) = run_cli(&args);
        let (b, cb) = run_cli(&args);
        assert_eq!(ca, cb);
        assert_eq!(a, b, "non-deterministic output for {args:?}");
    }
}

#[test]
fn corpus_depends_on_seed() {
    let (a, _) = run_cli(&["violate", "--corpus", "3", "--seed", "1"]);
    let (b, _) = run_cli(&["violate", "--corpus", "3", "--seed", "2"]);
    assert_ne!(a, b);
}

#[test]
fn emitted_certificates_reverify() {
    let dir = temp_dir("certs");
    for k in ["1", "3"] {
        let path = dir.join(format!("cert-k{k}.json"));
        let (out, code) = run_cli(&["gen-witness", "--k", k, "--out", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{out}");
        let (out, code) = run_cli(&["verify-cert", path.to_str().unwrap()]);
        assert_eq!((out.as_str(), code), ("ok\n", 0));
    }
    // the no-law certificate also re-verifies and replays
    let path = dir.join("nolaw.json");
    let (out, code) =
        run_cli(&["no-law", "--word", "a b a^-1 b^-1", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    let (out, code) = run_cli(&["verify-cert", path.to_str().unwrap()]);
    assert_eq!((out.as_str(), code), ("ok\n", 0));
    let (out, code) = run_cli(&["word-image", path.to_str().unwrap(), "--word", "a b a^-1 b^-1"]);
    assert_eq!(code, 0, "{out}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn emitted_violation_order_loads_and_fails_check_w() {
    let dir = temp_dir("violation");
    let path = dir.join("violation-order.json");
    let (out, code) =
        run_cli(&["violate", "--word", "a^-1 b a", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    // the emitted order fails the W-property at radius 1, by construction
    let (out, code) = run_cli(&[
        "order",
        "check-w",
        path.to_str().unwrap(),
        "--word",
        "a^-1 b a",
        "--radius",
        "1",
    ]);
    assert_eq!(code, 1);
    assert!(out.contains("counterexample"), "{out}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn shipped_fixtures_answer_correctly() {
    let (out, code) = run_cli(&["verify-cert", &fixture("translation_cert.json")]);
    assert_eq!((out.as_str(), code), ("ok\n", 0));

    let (out, code) = run_cli(&["classify", &fixture("bs12_action.json"), "--depth", "8"]);
    assert_eq!(code, 0);
    assert!(out.contains("verdict: TypeIII"), "{out}");

    let (out, code) = run_cli(&["classify", &fixture("schottky_lift_action.json"), "--depth", "8"]);
    assert_eq!(code, 0);
    assert!(out.contains("verdict: TypeII"), "{out}");
    assert!(out.contains("period 1"), "{out}");

    let (out, code) = run_cli(&["classify", &fixture("translations_action.json"), "--depth", "8"]);
    assert_eq!(code, 0);
    assert!(out.contains("verdict: TypeI"), "{out}");

    let (out, code) = run_cli(&["classify", &fixture("inconclusive_action.json"), "--depth", "6"]);
    assert_eq!(code, 0);
    assert!(out.contains("verdict: Inconclusive"), "{out}");

    let (out, code) = run_cli(&[
        "order",
        "check-w",
        &fixture("abelian_order.json"),
        "--word",
        "a^-1 b a",
        "--radius",
        "4",
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("pass"), "{out}");

    let (out, code) = run_cli(&[
        "order",
        "dist",
        &fixture("abelian_order.json"),
        &fixture("translations_order.json"),
        "--radius",
        "5",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("1/3"), "{out}");

    // identical orders saturate the resolution and report a bound
    let (out, code) = run_cli(&[
        "order",
        "dist",
        &fixture("abelian_order.json"),
        &fixture("abelian_order.json"),
        "--radius",
        "5",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("<= 1/6"), "{out}");

    let (out, code) = run_cli(&[
        "order",
        "resilient",
        &fixture("thompson_order.json"),
        "--radius",
        "3",
        "--n-max",
        "5",
    ]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("resilient pair"), "{out}");
    assert!(out.contains("re-verified"), "{out}");
}

#[test]
fn fixture_files_are_in_canonical_form() {
    // parse-then-serialize reproduces each shipped fixture byte for byte
    for name in [
        "translation_cert.json",
        "intertwined_k2_cert.json",
        "abelian_order.json",
        "translations_order.json",
        "thompson_order.json",
        "translations_action.json",
        "bs12_action.json",
        "schottky_lift_action.json",
        "inconclusive_action.json",
    ] {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        let reserialized = serde_json::to_string_pretty(&value).unwrap() + "\n";
        assert_eq!(text, reserialized, "{name} is not canonical");
    }
}
