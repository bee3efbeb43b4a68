use std::process::{Command, Output};

fn galilei(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_galilei")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8")
}

#[test]
fn sixj_prints_exact_value_first() {
    for (args, expected) in [
        (["2", "3/2", "3/2", "3/2", "2", "3/2"], "0"),
        (["2", "3", "2", "2", "1", "2"], "0"),
        (["0", "1", "1", "1", "1", "1"], "-1/3"),
    ] {
        let out = galilei(&[&["sixj"][..], &args[..]].concat());
        assert!(out.status.success());
        assert_eq!(stdout(&out).lines().next(), Some(expected));
    }
}

#[test]
fn sixj_rejects_bad_input() {
    assert_eq!(galilei(&["sixj", "1", "2", "0.5", "1", "1", "1"]).status.code(), Some(2));
    assert_eq!(galilei(&["sixj", "1", "2"]).status.code(), Some(2));
}

#[test]
fn verify_passes_on_the_listed_cases() {
    for args in [&["verify", "--case", "6"][..], &["verify", "--case", "4", "--a", "3", "--m", "1"]] {
        let out = galilei(args);
        assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
        assert_eq!(stdout(&out).lines().filter(|l| l.starts_with("pass")).count(), 4);
    }
}

#[test]
fn verify_rejects_bad_parameters() {
    let out = galilei(&["verify", "--case", "6", "--m", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("case 6 requires m = 3"));
    assert_eq!(galilei(&["verify", "--case", "7"]).status.code(), Some(2));
}

#[test]
fn classify_length3_markdown_has_four_rows_for_m3() {
    let out = galilei(&["classify", "--m", "3", "--bound", "12", "--length", "3", "--format", "md"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().filter(|l| l.starts_with("| 3 |")).count(), 4);
}

#[test]
fn classify_length4_reports_nonexistence() {
    let out = galilei(&["classify", "--m", "5", "--bound", "12", "--length", "4", "--format", "md"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("no faithful uniserial modules"));
}

#[test]
fn classify_rejects_even_m_and_unknown_flags() {
    let out = galilei(&["classify", "--m", "2", "--length", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("h_n requires odd m = 2n−1"));
    assert_eq!(galilei(&["classify", "--m", "3", "--frobnicate"]).status.code(), Some(2));
    assert_eq!(galilei(&["classify", "--m", "3", "--length", "7"]).status.code(), Some(2));
}

#[test]
fn classify_output_is_byte_identical_across_runs() {
    let dir = std::env::temp_dir().join(format!("galilei-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let paths = [dir.join("a.csv"), dir.join("b.csv")];
    for p in &paths {
        let out = galilei(&["classify", "--m", "1", "--bound", "8", "--format", "csv", "--out", p.to_str().unwrap()]);
        assert!(out.status.success());
    }
    assert_eq!(std::fs::read(&paths[0]).unwrap(), std::fs::read(&paths[1]).unwrap());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn construct_emits_generator_json() {
    let out = galilei(&["construct", "--case", "6"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["socle"], serde_json::json!([4, 3, 4]));
    assert_eq!(v["generators"]["z"]["entries"].as_array().unwrap().len(), 14);
    assert_eq!(v["generators"]["z"]["entries"][0][9], "6");
}
