use std::process::{Command, Output};

fn compsafe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_compsafe"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = compsafe(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn analyze_presets() {
    let rows = csv_rows(&stdout(&["analyze", "--preset", "section51", "--player", "1", "--format", "csv"]));
    assert_eq!(rows[0][3], "50");
    assert_eq!(rows[0][6], "52");
    assert_eq!(rows[0][7], "no");

    let rows = csv_rows(&stdout(&["analyze", "--preset", "aumann", "--format", "csv"]));
    for row in &rows {
        assert_eq!((row[3].as_str(), row[6].as_str(), row[7].as_str()), ("3", "3", "yes"));
    }

    let rows = csv_rows(&stdout(&["--format", "csv", "analyze", "--preset", "leader", "--params", "1,1,1,1"]));
    assert_eq!((rows[0][3].as_str(), rows[0][6].as_str()), ("1/2", "1/2"));

    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["analyze", "--preset", "loadbalance", "--format", "json"])).unwrap();
    assert_eq!(json["players"][0]["safety_strategy"], serde_json::json!(["4/9", "5/9"]));
    assert_eq!(json["players"][0]["safety_value"], "2/3");
    assert_eq!(json["mixed_equilibrium"]["p"], "2/3");
}

#[test]
fn analyze_game_file_and_errors() {
    let dir = std::env::temp_dir().join(format!("compsafe-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.json");
    std::fs::write(
        &good,
        r#"{"strategies": [["r1","r2"],["c1","c2"]], "u1": [["2",4],["6","0"]], "u2": [[6,2],[0,4]]}"#,
    )
    .unwrap();
    let rows = csv_rows(&stdout(&["analyze", "--game", good.to_str().unwrap(), "--format", "csv"]));
    assert_eq!(rows[0][1], "3/4 1/4");

    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"strategies": [["r1","r2"],["c1","c2"]], "u1": [["2",4],["6","zero"]], "u2": [[6,2],[0,4]]}"#).unwrap();
    let out = compsafe(&["analyze", "--game", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("$.u1[1][1]"));

    let out = compsafe(&["analyze", "--game", dir.join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(compsafe(&["analyze"]).status.code(), Some(2));
    assert_eq!(compsafe(&["analyze", "--preset", "leader", "--params", "1,0,1,1"]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn set_theoretic_vote() {
    let rows = csv_rows(&stdout(&["set-theoretic", "--preset", "vote", "--format", "csv"]));
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0][1], "1/3 1/3 1/3");
    assert_eq!((rows[0][4].as_str(), rows[0][5].as_str(), rows[0][6].as_str()), ("4/3", "4/3", "yes"));
    let out = compsafe(&["set-theoretic", "--preset", "pure-safety"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn loadbalance_tables() {
    let text = stdout(&["loadbalance", "--alphas", "1,0.5", "--n", "10000", "--format", "csv"]);
    assert!(text.starts_with("n,nash_bound,guaranteed,ratio,limit_ratio,exhaustive\n"));
    let ratio: f64 = csv_rows(&text)[0][3].parse().unwrap();
    assert!((ratio - 1.125).abs() <= 0.01 * 1.125);

    let rows = csv_rows(&stdout(&["loadbalance", "--alphas", "1,1", "--format", "csv"]));
    let last: f64 = rows.last().unwrap()[3].parse().unwrap();
    assert!((last - 1.0).abs() < 1e-3);

    let rows = csv_rows(&stdout(&["loadbalance", "--alphas", "1,0.6,0.3", "--n", "10000", "--format", "csv"]));
    let ratio: f64 = rows[0][3].parse().unwrap();
    let k = (1.0 + 0.6 + 0.3) / 3.0 / 0.3;
    assert!(ratio <= k * 1.01);

    assert_eq!(compsafe(&["loadbalance", "--alphas", "1,0.5,0.2", "--n", "2"]).status.code(), Some(2));
    assert_eq!(compsafe(&["loadbalance", "--alphas", "0.5,1"]).status.code(), Some(2));
}

#[test]
fn auction_tables() {
    let text = stdout(&["auction", "--n", "1000000", "--v", "1", "--format", "csv"]);
    assert!(text.starts_with("n,v,eq_bid,eq_payoff,safety_bid,guaranteed,ratio,mc_mean,mc_stderr\n"));
    let ratio: f64 = csv_rows(&text)[0][6].parse().unwrap();
    assert!((ratio - std::f64::consts::E).abs() < 1e-5);

    let rows = csv_rows(&stdout(&["auction", "--n", "2", "--v", "1", "--format", "csv"]));
    assert_eq!(rows[0][6], "2");

    let rows = csv_rows(&stdout(&["auction", "--v", "0", "--samples", "2000", "--format", "csv"]));
    for row in rows {
        for col in [2, 3, 4, 5, 7] {
            assert_eq!(row[col].parse::<f64>().unwrap(), 0.0);
        }
    }
    assert_eq!(compsafe(&["auction", "--v", "1.2"]).status.code(), Some(2));
    assert_eq!(compsafe(&["auction", "--samples", "5"]).status.code(), Some(2));
}

#[test]
fn seeded_output_is_reproducible() {
    let args = ["auction", "--n", "3,4", "--v", "0.8", "--samples", "20000", "--seed", "7", "--format", "csv"];
    assert_eq!(stdout(&args), stdout(&args));
    let other = ["auction", "--n", "3,4", "--v", "0.8", "--samples", "20000", "--seed", "8", "--format", "csv"];
    assert_ne!(stdout(&args), stdout(&other));
}

#[test]
fn check_and_output_file() {
    let path = std::env::temp_dir().join(format!("compsafe-check-{}.json", std::process::id()));
    let out = compsafe(&["check", "--format", "json", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let checks = json.as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["passed"] == true));
    std::fs::remove_file(&path).unwrap();
}
