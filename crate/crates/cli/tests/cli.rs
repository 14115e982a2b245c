use assert_cmd::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::cargo_bin("knotcolor").unwrap().args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn value<'a>(stdout: &'a str, key: &str) -> Option<&'a str> {
    stdout
        .lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(": ")))
}

#[test]
fn figure8_five_colorings() {
    let (code, out, _) = run(&["invariants", "--name", "figure8", "--colorings", "5"]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "col_5"), Some("25"));
}

#[test]
fn unknot_all() {
    let (code, out, _) = run(&["invariants", "--name", "unknot", "--all"]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "tri"), Some("3"));
    assert_eq!(value(&out, "lk"), Some("0"));
    assert_eq!(value(&out, "jones_zeta"), Some("1"));
    assert_eq!(value(&out, "coloring_group"), Some("Z"));
}

#[test]
fn square_knot_zeta_and_bound() {
    let (code, out, _) = run(&["invariants", "--name", "square_knot", "--jones-zeta", "--bound", "3"]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "jones_zeta"), Some("3"));
    assert_eq!(value(&out, "unknotting_lower"), Some("2"));
}

#[test]
fn pd_input_and_structured_output() {
    let (code, out, _) = run(&[
        "invariants",
        "--pd",
        "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]",
        "--kfold",
        "3",
        "2",
        "--format",
        "structured",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["diagram"].as_str().unwrap().starts_with("code:"));
    let inv = v["invariants"].as_array().unwrap();
    let kf = inv.iter().find(|e| e["name"] == "kfold(3,2)").unwrap();
    // H_1 of the 3-fold cover of the trefoil is Z_2², plus (Z_2)^2
    assert_eq!(kf["value"], "16");
}

#[test]
fn file_input() {
    let dir = std::env::temp_dir().join(format!("knotcolor-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("hopf.pd");
    std::fs::write(&path, "# negative Hopf link\nX[4,1,3,2] X[2,3,1,4]\n").unwrap();
    let (code, out, _) = run(&["invariants", "--file", path.to_str().unwrap(), "--all"]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "lk"), Some("-1"));
    assert_eq!(value(&out, "tri"), Some("3"));
    assert_eq!(value(&out, "det"), Some("2"));
}

#[test]
fn exit_codes() {
    let (code, _, err) = run(&["invariants", "--pd", "X[1,4,2,5] X[3,6,4"]);
    assert_eq!(code, 1);
    assert!(err.contains("offset 12"), "{err}");
    assert_eq!(run(&["invariants", "--name", "no_such_knot"]).0, 1);
    let (code, _, err) = run(&["invariants", "--name", "torus2_n(9)", "--q", "--cap", "5"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn cap_from_environment() {
    let out = Command::cargo_bin("knotcolor")
        .unwrap()
        .env("KNOT_CAP", "2")
        .args(["invariants", "--name", "trefoil", "--homfly"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn moves_curl_keeps_tri() {
    let (code, out, _) = run(&["moves", "--name", "trefoil", "--moves", "r1+ e1"]);
    assert_eq!(code, 0);
    let row = out.lines().find(|l| l.starts_with("tri ")).unwrap();
    assert_eq!(row.split_whitespace().collect::<Vec<_>>(), ["tri", "9", "9"]);
    let crossings = out.lines().find(|l| l.starts_with("crossings")).unwrap();
    assert!(crossings.contains(" 4"));
}

#[test]
fn moves_n_move_on_twist_chain() {
    let (code, out, _) = run(&["moves", "--name", "twist_chain(1)", "--moves", "nmove 2 e1 e2"]);
    assert_eq!(code, 0);
    let (_, want, _) = run(&["invariants", "--name", "twist_chain(3)", "--all"]);
    let result = value(&out, "result").unwrap();
    let (_, got, _) = run(&["invariants", "--pd", result, "--all"]);
    let strip = |s: &str| s.lines().skip(1).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&got), strip(&want));
}

#[test]
fn moves_error_reports_line() {
    let (code, _, err) = run(&["moves", "--name", "trefoil", "--moves", "r3 e9"]);
    assert_eq!(code, 1);
    assert!(err.contains("line 1"), "{err}");
}

#[test]
fn verify_scopes() {
    let (code, out, _) = run(&["verify", "--scope", "coloring", "--seeds", "1,2,3"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("0 failing groups"));
    let (code, out, _) = run(&["verify", "--scope", "polynomials", "--verbose"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("Q_{17}"));
    let (code, out, _) = run(&["verify", "--scope", "statmech", "--verbose"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("k = 2: Yang–Baxter") && out.contains("k = 3: Yang–Baxter"));
    assert_eq!(run(&["verify", "--scope", "nonsense"]).0, 1);
}

#[test]
fn output_is_deterministic() {
    let args = ["invariants", "--name", "borromean", "--all", "--format", "structured"];
    assert_eq!(run(&args).1, run(&args).1);
}
