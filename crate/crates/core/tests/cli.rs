use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["kacspin"];
    argv.extend_from_slice(args);
    let code = kacspin::cli::run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out, _) = run(args);
    (code, serde_json::from_str(&out).unwrap_or(Value::Null))
}

#[test]
fn parse_reports_cartan_matrix() {
    let (code, v) = json(&["parse", "--diagram", "K4"]);
    assert_eq!(code, 0);
    assert!(v.to_string().contains("-1"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["parse", "--diagram", "A3"]).0, 0);
    assert_eq!(run(&["parse", "--diagram", "nosuchpreset"]).0, 2);
    assert_eq!(run(&["rep", "--diagram", "B2"]).0, 3);
    assert_eq!(run(&["rep", "--diagram", "cycle3", "--level", "7/2"]).0, 3);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["verify", "--diagram", "A3", "--checks", "nonsense"]).0, 2);
    assert_eq!(run(&["verify", "--diagram", "A3", "--level", "1/2", "--checks", "axioms", "--inject-sign-flip", "1"]).0, 1);
}

#[test]
fn errors_are_json_on_stdout() {
    let (code, v) = json(&["parse", "--diagram", "nosuchpreset"]);
    assert_eq!(code, 2);
    assert!(v["error"]["kind"].is_string());
    assert!(v["error"]["message"].is_string());
}

#[test]
fn exp_two_pi_is_minus_identity() {
    let (code, v) = json(&["exp", "--diagram", "A2", "--level", "3/2", "--i", "1", "--phi", "2pi"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"], "\u{2212}Id");
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["verify", "--diagram", "A3", "--level", "3/2", "--checks", "all", "--seed", "7"][..],
        &["transport", "--diagram", "K4", "--level", "1/2", "--max-height", "3"][..],
        &["witness", "--diagram", "cycle3", "--level", "3/2"][..],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.0, 0, "{args:?}");
        assert_eq!(a.1, b.1, "{args:?}");
    }
}

#[test]
fn csv_and_pretty() {
    let (code, out, _) = run(&["export", "--diagram", "A2", "--level", "1/2", "--format", "csv"]);
    assert_eq!(code, 0);
    assert!(out.lines().count() > 1);
    assert!(out.contains(','));

    let (code, out, _) = run(&["rep", "--diagram", "A3", "--pretty"]);
    assert_eq!(code, 0);
    assert!(serde_json::from_str::<Value>(&out).is_err());

    // no matrices to print
    assert_eq!(run(&["roots", "--diagram", "A3", "--format", "csv"]).0, 2);
    assert_eq!(run(&["rep", "--diagram", "A3", "--pretty", "--format", "json"]).0, 2);
}

#[test]
fn help_succeeds() {
    let (code, out, err) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!((out + &err).contains("verify"));
}

#[test]
fn dsl_file_and_out_path() {
    let dir = std::env::temp_dir().join(format!("kacspin-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let dsl = dir.join("square.kac");
    std::fs::write(&dsl, "rank = 4; edges = 1-2, 2-3, 3-4, 4-1\n").unwrap();
    let out = dir.join("roots.json");
    let (code, _, _) = run(&["roots", "--diagram", dsl.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(!v.is_null());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn inline_dsl_matches_preset() {
    let a = run(&["parse", "--diagram", "rank = 3; edges = 1-2, 2-3, 3-1"]);
    assert_eq!(a.0, 0);
    let b = run(&["roots", "--diagram", "rank = 3; edges = 1-2, 2-3, 3-1", "--max-height", "3"]);
    let c = run(&["roots", "--diagram", "cycle3", "--max-height", "3"]);
    assert_eq!(b.0, 0);
    let (vb, vc): (Value, Value) = (serde_json::from_str(&b.1).unwrap(), serde_json::from_str(&c.1).unwrap());
    assert!(vb["roots"].is_array());
    assert_eq!(vb["roots"], vc["roots"]);
}

#[test]
fn explicit_inapplicable_check_is_unsupported() {
    // the 7/2 suite needs a regular diagram
    assert_eq!(run(&["verify", "--diagram", "cycle3", "--level", "7/2", "--checks", "f-square"]).0, 3);
}

#[test]
fn large_rep_summary_stays_factored() {
    assert_eq!(run(&["rep", "--diagram", "E10", "--level", "3/2"]).0, 0);
    assert_eq!(run(&["rep", "--diagram", "E10", "--level", "3/2", "--matrices"]).0, 3);
    assert_eq!(run(&["export", "--diagram", "E10", "--level", "5/2"]).0, 3);
}
