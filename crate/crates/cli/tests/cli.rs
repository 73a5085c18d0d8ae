//! End-to-end tests through the command-line entry point.

use delpezzo_cli::format::spectrum_from_csv;
use delpezzo_cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["delpezzo".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(&argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn cohom_prints_triple_and_chi() {
    let (code, out, err) = call(&["cohom", "P1xP1", "O(3,-2)"]);
    assert_eq!(code, 0, "stderr: {err}");
    assert_eq!(out, "0 4 0  chi=-4\n");
}

#[test]
fn cohom_works_on_every_surface() {
    for (surface, divisor, expected) in [
        ("P2", "O(-3)", "0 0 1  chi=1\n"),
        ("Bl1", "O(-1;-1)", "0 1 0  chi=-1\n"),
        ("Bl2", "O(3;-3,-1)", "3 0 0  chi=3\n"),
        ("Bl3", "O(0;0,0,0)", "1 0 0  chi=1\n"),
    ] {
        let (code, out, _) = call(&["cohom", surface, divisor]);
        assert_eq!(code, 0);
        assert_eq!(out, expected, "on {surface} {divisor}");
    }
}

#[test]
fn spectrum_table_mirrors_published_layout() {
    let (code, out, _) = call(&["spectrum", "P2", "omega(2)", "--window", "-4..0"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].contains("p=-4"));
    assert!(lines[1].starts_with("q=2"));
    assert!(lines[2].starts_with("q=1"));
    assert!(lines[3].starts_with("q=0"));
    // The q=1 row carries the single 1 at p = -2.
    assert_eq!(
        lines[2].split_whitespace().collect::<Vec<_>>(),
        vec!["q=1", "0", "0", "1", "0", "0"]
    );
}

#[test]
fn spectrum_csv_round_trips() {
    let (code, out, _) = call(&[
        "spectrum",
        "P2",
        "ker(omega(3)^2 -> O(2)^2)",
        "--window",
        "-6..2",
        "--assume",
        "h0:t<=-1:0:initialized vanishing",
        "--format",
        "csv",
    ]);
    assert_eq!(code, 0);
    assert!(out.starts_with("twist,h0,h1,h2\n"));
    let sp = spectrum_from_csv(&out).unwrap();
    assert_eq!(sp.window.lo, -6);
    assert_eq!(sp.window.hi, 2);
    assert_eq!(sp.exact(-3, 1).unwrap(), 2);
    assert_eq!(sp.exact(-2, 1).unwrap(), 2);
}

#[test]
fn inconsistent_assumption_is_reported() {
    let (code, _, err) = call(&[
        "spectrum",
        "P2",
        "omega(2)",
        "--window",
        "-3..-1",
        "--assume",
        "h1:t=-2:0:wrong on purpose",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("inconsistency at twist -2, h1"), "stderr: {err}");
}

#[test]
fn classify_lists_the_rulings() {
    let (code, out, _) = call(&["classify", "lines", "P1xP1", "--l", "5"]);
    assert_eq!(code, 0);
    assert_eq!(out, "O(0,6)\nO(6,0)\n");

    let (code, out, _) = call(&["classify", "lines", "P2", "--l", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out, "(none)\n");
}

#[test]
fn verify_match_exits_zero_with_one_line_per_l() {
    let (code, out, _) = call(&["verify", "Q-LINES", "--l-max", "12"]);
    assert_eq!(code, 0);
    let match_lines = out.lines().filter(|l| l.starts_with("[match]")).count();
    assert_eq!(match_lines, 12);
    assert!(out.trim_end().ends_with("verdict: match"));
}

#[test]
fn verify_mismatch_exits_one() {
    let (code, out, _) = call(&["verify", "Q-EXT", "--l-max", "3"]);
    assert_eq!(code, 1);
    assert!(out.contains("verdict: mismatch"));
    assert!(out.contains("counterexample"));
}

#[test]
fn verify_unknown_id_exits_two() {
    let (code, _, err) = call(&["verify", "NOPE"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown verification id"));
}

#[test]
fn verify_json_is_machine_readable() {
    let (code, out, _) = call(&["verify", "P2-1AWAY", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["id"], "P2-1AWAY");
    assert_eq!(v["verdict"], "match");
    assert!(v["details"].as_array().unwrap().len() > 5);
}

#[test]
fn verify_all_runs_the_whole_registry() {
    let (code, out, _) = call(&["verify", "all", "--l-max", "2", "--format", "json"]);
    // Q-EXT mismatches, so the run exits 1.
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), delpezzo_core::REGISTRY.len());
    let mismatches: Vec<&str> = reports
        .iter()
        .filter(|r| r["verdict"] == "mismatch")
        .map(|r| r["id"].as_str().unwrap())
        .collect();
    assert_eq!(mismatches, vec!["Q-EXT"]);
}

#[test]
fn output_is_deterministic() {
    let first = call(&["verify", "Q-1AWAY", "--format", "json"]);
    let second = call(&["verify", "Q-1AWAY", "--format", "json"]);
    assert_eq!(first, second);
    let a = call(&["spectrum", "P1xP1", "ext(O(3,0), O(0,3))", "--l-max", "4", "--format", "csv"]);
    let b = call(&["spectrum", "P1xP1", "ext(O(3,0), O(0,3))", "--l-max", "4", "--format", "csv"]);
    assert_eq!(a, b);
}

#[test]
fn quiver_commands() {
    let (code, out, _) = call(&["quiver", "euler", "--shape", "kronecker3", "--dim", "l,l+2", "--l", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out, "-11\n");

    let (code, out, _) = call(&[
        "quiver", "moduli", "--shape", "beilinsonQ", "--dim", "2l,l+1,l+1", "--l", "2", "--m", "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out, "127\n");

    let (code, out, _) = call(&["quiver", "euler", "--arrows", "0>1,0>1,0>1", "--dim", "2,4"]);
    assert_eq!(code, 0);
    assert_eq!(out, "-4\n");

    // l-expressions need --l.
    let (code, _, err) = call(&["quiver", "euler", "--shape", "kronecker3", "--dim", "l,l+2"]);
    assert_eq!(code, 2);
    assert!(err.contains("no --l"));
}

#[test]
fn usage_errors_exit_two() {
    let (code, _, err) = call(&["cohom", "P1xP1", "O(1)"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());

    let (code, _, _) = call(&["nonsense"]);
    assert_eq!(code, 2);

    let (code, _, err) = call(&["spectrum", "P1xP1", "omega(2)"]);
    assert_eq!(code, 2);
    assert!(err.contains("omega"));
}

#[test]
fn default_window_is_applied() {
    let (code, out, _) = call(&["spectrum", "P2", "omega(2)", "--l-max", "3", "--format", "csv"]);
    assert_eq!(code, 0);
    // c = 1, so the default window is [-14, 14].
    assert!(out.lines().nth(1).unwrap().starts_with("-14,"));
    assert_eq!(out.lines().count(), 1 + 29);
}
