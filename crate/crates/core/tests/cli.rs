use isobound::cli::run;
use serde_json::Value;

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("isobound").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--output", "json"];
    full.extend_from_slice(args);
    let (code, out, err) = cli(&full);
    assert_eq!(code, 0, "stderr: {err}");
    serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}"))
}

#[test]
fn hypercube_bound_total() {
    let v = json(&["bound", "complete:2^10", "--size", "16"]);
    let total = v["theorem"]["bound_total"].as_f64().unwrap();
    assert!((total - 96.0).abs() < 1e-9);
    let fams: Vec<&str> = v["closed_forms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["report"]["family"].as_str().unwrap())
        .collect();
    assert!(fams.contains(&"hamming"), "{fams:?}");
}

#[test]
fn bound_accepts_log_size_expressions() {
    let a = json(&["bound", "path:5", "x", "path:5", "--log-size", "2*log(2)"]);
    let b = json(&["bound", "path:5^2", "--size", "4"]);
    let pa = a["theorem"]["bound_per_vertex"].as_f64().unwrap();
    let pb = b["theorem"]["bound_per_vertex"].as_f64().unwrap();
    assert!((pa - pb).abs() < 1e-12);
}

#[test]
fn profile_csv() {
    let (code, out, _) = cli(&["--output", "csv", "profile", "path:3"]);
    assert_eq!(code, 0);
    assert_eq!(out, "k,min_boundary,i_k_num,i_k_den,witness\n1,1,1,1,1\n2,1,1,2,3\n3,0,0,1,7\n");
}

#[test]
fn minorant_reports_chord_data() {
    let v = json(&["minorant", "cycle:5"]);
    assert_eq!(v["regular_summary"]["k_star"], 2);
    let y = v["regular_summary"]["y_g"].as_f64().unwrap();
    // i_2(C_5) = 1
    assert!((y - 5f64.ln() / (2.5f64).ln()).abs() < 1e-12);
    let v = json(&["minorant", "path:4"]);
    assert!(v["regular_summary"].is_null());
}

#[test]
fn verify_and_certificates() {
    let v = json(&["verify", "path:3", "x", "cycle:4"]);
    assert_eq!(v["all_valid"], true);
    let v = json(&["verify", "cycle:4", "x", "path:4", "--sizes", "1,8,16"]);
    assert_eq!(v["report"]["rows"].as_array().unwrap().len(), 3);

    let v = json(&["certify-q71", "cycle:5", "--power", "2"]);
    assert!(v["residual"].as_f64().unwrap() > 0.2);

    let v = json(&["certify-q72", "cycle:5"]);
    assert_eq!(v["result"], "certificate");
    let (code, out, _) = cli(&["certify-q72", "complete:5"]);
    assert_eq!(code, 0);
    assert!(out.contains("y_G = d"));
}

#[test]
fn compare_csv_has_header_and_samples() {
    let (code, out, _) = cli(&["compare", "cycle:6^3", "--samples", "7"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "log_size,ours,bl,ratio");
    assert_eq!(lines.len(), 8);
}

#[test]
fn exit_codes() {
    let (code, _, err) = cli(&["profile", "cube:3"]);
    assert_eq!(code, 2);
    assert!(err.contains("complete:M"));
    assert_eq!(cli(&["bound", "path:3", "--size", "4"]).0, 2);
    assert_eq!(cli(&["minorant"]).0, 2);
    assert_eq!(cli(&["certify-q71", "path:4", "--power", "2"]).0, 1);
    assert_eq!(cli(&["certify-q72", "path:4"]).0, 1);
    assert_eq!(cli(&["--max-vertices", "100", "verify", "path:3^5", "--sizes", "1"]).0, 2);
    assert_eq!(cli(&["--threads", "2", "profile", "petersen"]).0, 0);
}

#[test]
fn file_graphs() {
    let dir = std::env::temp_dir().join(format!("isobound-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("k4.txt");
    std::fs::write(&good, "# K_4\n4\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n").unwrap();
    let v = json(&["profile", &format!("file:{}", good.display())]);
    assert_eq!(v["entries"].as_array().unwrap().len(), 4);
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "3\n0 1\n1 1\n").unwrap();
    let (code, _, err) = cli(&["profile", &format!("file:{}", bad.display())]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3"), "{err}");
}
