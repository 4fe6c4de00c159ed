use std::process::Command;

fn wvg(args: &[&str]) -> (i32, String, String) {
    wvg_env(args, &[])
}

fn wvg_env(args: &[&str], env: &[(&str, &str)]) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_wvg"));
    cmd.args(args).env_remove("WVG_ENUM_LIMIT");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn index_table_has_one_row_per_player() {
    let (code, out, _) = wvg(&["index", "-g", "[4;2,2,1,1]", "--format", "table"]);
    assert_eq!(code, 0);
    let etas: Vec<&str> = out
        .lines()
        .skip(1)
        .map(|l| l.split('\t').nth(2).unwrap())
        .collect();
    assert_eq!(etas, ["4", "4", "2", "2"]);
}

#[test]
fn methods_agree_byte_for_byte() {
    for format in ["human", "json", "table"] {
        let a = wvg(&[
            "index",
            "-g",
            "[9;3,3,2,1,1,1]",
            "--method",
            "enum",
            "--format",
            format,
        ]);
        let b = wvg(&[
            "index",
            "-g",
            "[9;3,3,2,1,1,1]",
            "--method",
            "dp",
            "--format",
            format,
        ]);
        assert_eq!(a.0, 0);
        assert_eq!(a, b);
    }
}

#[test]
fn output_is_deterministic() {
    let args = [
        "paradox",
        "-g",
        "[9;3,3,2,1,1,1]",
        "--player",
        "1",
        "--format",
        "json",
    ];
    assert_eq!(wvg(&args), wvg(&args));
}

#[test]
fn annexation_report() {
    let (code, out, _) = wvg(&[
        "annex",
        "-g",
        "[13;7,6,1,1,1,1,1,1]",
        "--player",
        "1",
        "--targets",
        "3",
        "--digits",
        "5",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("before: 65/134 (0.48507)"), "{out}");
    assert!(out.contains("after: 11/23 (0.47826)"), "{out}");
    assert!(out.contains("verdict: not beneficial\n"), "{out}");
    assert!(
        out.contains("resulting game: [13; 8, 6, 1, 1, 1, 1, 1]"),
        "{out}"
    );
}

#[test]
fn json_report_keeps_exact_values() {
    let (code, out, _) = wvg(&[
        "merge",
        "-g",
        "[10;8,8,1,1,1]",
        "--members",
        "4,5",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["after"]["numerator"], "1");
    assert_eq!(v["after"]["denominator"], "3");
    assert_eq!(v["before"]["denominator"], "7");
    assert_eq!(v["beneficial"], true);
}

#[test]
fn split_with_explicit_parts_and_search() {
    let (code, out, _) = wvg(&[
        "split",
        "-g",
        "[10;8,8,2]",
        "--player",
        "3",
        "--parts",
        "1,1",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("verdict: not beneficial (neutral)"), "{out}");
    let (code, out, _) = wvg(&[
        "split",
        "-g",
        "[8;2,1,1,1,1,1,1,1,1]",
        "--player",
        "1",
        "--max-parts",
        "2",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("split player 1 into (1, 1)"), "{out}");
    let (code, _, err) = wvg(&[
        "split",
        "-g",
        "[3;2,1,1,1]",
        "--player",
        "2",
        "--max-parts",
        "2",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("error"));
}

#[test]
fn shapley_annexation_is_beneficial() {
    let (code, out, _) = wvg(&[
        "annex",
        "-g",
        "[6;2,2,2]",
        "--player",
        "1",
        "--targets",
        "2",
        "--index",
        "ss",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("before: 1/3 (0.333333)") && out.contains("after: 1/2 (0.500000)"));
}

#[test]
fn probabilistic_banzhaf_warns() {
    let (_, out, _) = wvg(&[
        "split",
        "-g",
        "[5;2,2,2]",
        "--player",
        "1",
        "--parts",
        "1,1",
        "--index",
        "bz-prob",
    ]);
    assert!(out.contains("warning"));
}

#[test]
fn invalid_games_exit_1() {
    for g in ["[0;1,1]", "[7;2,2,2]", "[1;1,-1]", "[1;]", "[5;2,x]"] {
        let (code, out, err) = wvg(&["index", "-g", g]);
        assert_eq!(code, 1, "{g}");
        assert!(out.is_empty() && err.starts_with("error:"), "{g}: {err}");
    }
    let (code, _, _) = wvg(&["merge", "-g", "[5;2,2,2]", "--members", "1"]);
    assert_eq!(code, 1);
    let (code, _, _) = wvg(&[
        "annex",
        "-g",
        "[5;2,2,2]",
        "--player",
        "4",
        "--targets",
        "1",
    ]);
    assert_eq!(code, 1);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(wvg(&[]).0, 2);
    assert_eq!(wvg(&["index"]).0, 2);
    assert_eq!(wvg(&["index", "-g", "[5;2,2,2]", "--method", "magic"]).0, 2);
    assert_eq!(wvg(&["split", "-g", "[5;2,2,2]", "--player", "1"]).0, 2);
    assert_eq!(wvg(&["index", "-g", "@/nonexistent/game.txt"]).0, 2);
    assert_eq!(
        wvg_env(&["index", "-g", "[5;2,2,2]"], &[("WVG_ENUM_LIMIT", "lots")]).0,
        2
    );
}

#[test]
fn enumeration_limit_from_environment() {
    let args = ["index", "-g", "[5;2,2,2]", "--method", "enum"];
    assert_eq!(wvg_env(&args, &[("WVG_ENUM_LIMIT", "3")]).0, 0);
    let (code, _, err) = wvg_env(&args, &[("WVG_ENUM_LIMIT", "2")]);
    assert_eq!(code, 1);
    assert!(err.contains("limited to 2"), "{err}");
}

#[test]
fn game_from_file_and_json() {
    let dir = std::env::temp_dir().join(format!("wvg-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("game.json");
    std::fs::write(
        &path,
        r#"{"quota": "5", "weights": [2, 2, 2], "labels": ["a", "b", "c"]}"#,
    )
    .unwrap();
    let (code, out, _) = wvg(&["index", "-g", &format!("@{}", path.display())]);
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(code, 0);
    assert!(out.starts_with("game: [5; 2, 2, 2]"));
}

#[test]
fn generators() {
    assert_eq!(wvg(&["gen", "tight", "--n", "3"]).1, "[3; 2, 1, 1, 1]\n");
    assert_eq!(wvg(&["gen", "dictator", "--n", "4"]).1, "[6; 8, 1, 1, 1]\n");
    assert_eq!(
        wvg(&["gen", "unanimity", "--weights", "1,2"]).1,
        "[3; 1, 2]\n"
    );
    assert_eq!(
        wvg(&["gen", "reduction", "--variant", "merge", "--values", "1,1"]).1,
        "[10; 8, 8, 1, 1, 1]\nfocus: merge {4,5}\n"
    );
    let a = wvg(&["gen", "random", "--n", "6", "--seed", "7"]);
    assert_eq!(a, wvg(&["gen", "random", "--n", "6", "--seed", "7"]));
    assert_eq!(wvg(&["gen", "dictator", "--n", "5"]).0, 1);
}

#[test]
fn generated_game_round_trips_through_index() {
    let (_, json, _) = wvg(&[
        "gen", "random", "--n", "5", "--seed", "3", "--format", "json",
    ]);
    let (_, bracket, _) = wvg(&["gen", "random", "--n", "5", "--seed", "3"]);
    let a = wvg(&["index", "-g", json.trim()]);
    let b = wvg(&["index", "-g", bracket.trim()]);
    assert_eq!(a.0, 0);
    assert_eq!(a, b);
}

#[test]
fn paradox_and_advice() {
    let (_, out, _) = wvg(&[
        "paradox",
        "-g",
        "[9;3,3,2,1,1,1]",
        "--player",
        "1",
        "--format",
        "table",
    ]);
    assert!(
        out.lines().any(|l| l.starts_with("2\t3\t3\t2\t2/5\t7/17")),
        "{out}"
    );
    let (_, out, _) = wvg(&["paradox", "-g", "[6;2,2,2]", "--player", "1"]);
    assert!(out.starts_with("no annexation paradox"));
    let (code, out, _) = wvg(&[
        "advise",
        "-g",
        "[9;3,3,2,1,1,1]",
        "--player",
        "1",
        "--budget",
        "2",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("player 1 annexes {3}"), "{out}");
}

#[test]
fn bench_prints_a_row_per_size() {
    let (code, out, _) = wvg(&["bench", "--players", "4,6", "--max-weight", "10"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 3);
}
