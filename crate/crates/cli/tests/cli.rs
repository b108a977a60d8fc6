use std::process::{Command, Output};

fn covforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_covforge"))
        .args(args)
        .env_remove("COVFORGE_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn line_with<'a>(text: &'a str, prefix: &str) -> &'a str {
    text.lines().find(|l| l.starts_with(prefix)).unwrap_or_else(|| panic!("no {prefix:?} line in\n{text}"))
}

#[test]
fn molien_coefficients() {
    let cases: [(&[&str], &str); 3] = [
        (&["--group", "td", "--initial", "A1,E,F2,F2", "--final", "F2", "--order", "4"], "0,2,7,25,69"),
        (&["--group", "ci", "--initial", "A2,A2,A2", "--final", "A1", "--order", "4"], "1,0,6,0,15"),
        (&["--group", "td", "--initial", "A1", "--final", "A1", "--order", "3"], "1,1,1,1"),
    ];
    for (args, want) in cases {
        let mut full = vec!["molien"];
        full.extend_from_slice(args);
        let o = covforge(&full);
        assert!(o.status.success());
        let s = stdout(&o);
        assert_eq!(line_with(&s, "coefficients:"), format!("coefficients: {want}"));
    }
}

#[test]
fn molien_canonical_form_and_json() {
    let o = covforge(&["molien", "--initial", "A1,E,F2,F2", "--final", "F2", "--order", "2"]);
    let s = stdout(&o);
    assert!(line_with(&s, "canonical:").contains("3t^13)/((1-t) (1-t^2)^3 (1-t^3)^3 (1-t^4)^2)"));
    let o = covforge(&["molien", "--group", "ci", "--final", "A2", "--order", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["coefficients"], serde_json::json!(["0", "3", "0", "10"]));
    assert_eq!(v["molien"]["denominator"], serde_json::json!([[0, 2], [0, 2], [0, 2]]));
}

#[test]
fn basis_summaries() {
    let dir = tempfile::tempdir().unwrap();
    let f2 = dir.path().join("f2.json");
    let o = covforge(&["basis", "--group", "td", "--initial", "A1,E,F2,F2", "--final", "F2", "-o", f2.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("2 5 12 23 41 60 71 71 60 45 27 12 3; total 432"));
    assert!(f2.exists());

    let o = covforge(&["basis", "--group", "ci", "--initial", "A2,A2,A2", "--final", "A2"]);
    assert!(stdout(&o).contains("total 4"));

    let o = covforge(&["basis", "--group", "td", "--initial", "F2", "--final", "A2"]);
    assert!(stdout(&o).contains("numerators by degree from 6: 1; total 1"));

    let o = covforge(&["enumerate", "--basis", f2.to_str().unwrap(), "--partner", "x", "--dmax", "4"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(line_with(&s, "total"), "total 103");
    assert_eq!(line_with(&s, "degree 3:"), "degree 3: 25");
}

#[test]
fn basis_text_output() {
    let o = covforge(&["basis", "--group", "ci", "--final", "A2", "--format", "text", "-o", "-"]);
    let s = stdout(&o);
    assert!(s.starts_with("# group Ci; initial A2,A2,A2; final A2\n# variables x1 x2 x3\n"));
    assert_eq!(s.lines().filter(|l| l.starts_with('g')).count(), 4);
}

#[test]
fn enumerate_counts() {
    let o = covforge(&["enumerate", "--dmax", "0", "--final", "A1"]);
    assert_eq!(line_with(&stdout(&o), "total"), "total 1");

    let o = covforge(&["enumerate", "--group", "ci", "--final", "A2", "--dmax", "5"]);
    let s = stdout(&o);
    for (d, n) in [(1, 3), (2, 0), (3, 10), (5, 21)] {
        assert_eq!(line_with(&s, &format!("degree {d}:")), format!("degree {d}: {n}"));
    }
}

#[test]
fn verify_passes() {
    let o = covforge(&["verify", "--group", "ci", "--dmax", "8"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["triples"].as_array().unwrap().len(), 2 * 9);

    let o = covforge(&["verify", "--group", "td", "--initial", "A1,E,F2,F2", "--final", "all", "--dmax", "5"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let triples = v["triples"].as_array().unwrap();
    assert_eq!(triples.len(), 5 * 6);
    assert!(triples.iter().all(|t| t["ok"] == true && t["molien"].as_str().and_then(|m| m.parse::<u64>().ok()) == t["oracle"].as_u64()));
}

#[test]
fn injected_cg_fault_fails_verification() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..3 {
        let seed: u64 = rng.gen();
        let o = covforge(&["verify", "--dmax", "2", "--inject-cg-fault", &seed.to_string()]);
        assert_eq!(o.status.code(), Some(1), "seed {seed}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("verification failed"));
    }
}

#[test]
fn config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("group.json");
    std::fs::write(&bad, "{\"name\": \"X\", \"elements\": [").unwrap();
    let o = covforge(&["verify", "--group", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("malformed group file"));

    let o = covforge(&["molien", "--final", "G7"]);
    assert_eq!(o.status.code(), Some(2));
    let o = covforge(&["basis", "--initial", "A1,,E"]);
    assert_eq!(o.status.code(), Some(2));
    let o = covforge(&["enumerate", "--final", "F2", "--partner", "w"]);
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_covforge"))
        .args(["molien"])
        .env("COVFORGE_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn thread_count_does_not_change_output() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_covforge"))
            .args(["basis", "--initial", "E,F2", "--final", "F1", "-o", "-"])
            .env("COVFORGE_THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn user_group_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c2.json");
    std::fs::write(
        &path,
        r#"{"name":"C2","elements":["e","r"],"multiplication":[[0,1],[1,0]],
            "irreps":[{"label":"A","matrices":[[[1]],[[1]]]},{"label":"B","matrices":[[[1]],[[-1]]]}]}"#,
    )
    .unwrap();
    let g = path.to_str().unwrap();
    let o = covforge(&["molien", "--group", g, "--initial", "B,B", "--final", "B", "--order", "3"]);
    assert_eq!(line_with(&stdout(&o), "coefficients:"), "coefficients: 0,2,0,4");
    // Molien series work for any group; bases need tabulated elementary layers.
    let o = covforge(&["verify", "--group", g, "--initial", "B,B", "--dmax", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no tabulated elementary basis"));
    let o = covforge(&["molien", "--group", g]);
    assert_eq!(o.status.code(), Some(2));
}
