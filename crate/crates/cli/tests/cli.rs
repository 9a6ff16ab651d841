use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn example(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples").join(name)
}

fn pubgoods(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pubgoods")).args(args).output().unwrap()
}

fn run_on(verb: &str, scenario: &Path, extra: &[&str]) -> Output {
    let mut args = vec![verb, "--scenario", scenario.to_str().unwrap()];
    args.extend_from_slice(extra);
    pubgoods(&args)
}

fn write_scenario(dir: &tempfile::TempDir, text: &str) -> PathBuf {
    let path = dir.path().join("scenario.toml");
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn success_exits_zero() {
    let out = run_on("nash", &example("roommates_2.toml"), &[]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("[nash]"));
}

#[test]
fn missing_file_exits_two() {
    let out = run_on("report", Path::new("/nonexistent/scenario.toml"), &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn validation_error_exits_two_and_names_field() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_scenario(
        &dir,
        "kind = \"contribution\"\n[[agents]]\nendowment = 10.0\npublic_weight = 1.5\n",
    );
    let out = run_on("report", &path, &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("agents[0].public_weight"));
}

#[test]
fn malformed_file_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_scenario(&dir, "kind = \"contribution\"\nagents = [[[\n");
    assert_eq!(run_on("report", &path, &[]).status.code(), Some(2));
}

#[test]
fn wrong_verb_exits_two() {
    assert_eq!(run_on("vote", &example("fiscal_log.toml"), &[]).status.code(), Some(2));
    assert_eq!(run_on("mechanism", &example("roommates_2.toml"), &[]).status.code(), Some(2));
}

#[test]
fn bad_flags_exit_two() {
    assert_eq!(pubgoods(&["report"]).status.code(), Some(2));
    let s = example("roommates_2.toml");
    assert_eq!(run_on("report", &s, &["--format", "xml"]).status.code(), Some(2));
    assert_eq!(run_on("report", &s, &["--grid-step", "-1"]).status.code(), Some(2));
}

#[test]
fn computation_error_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    // the decisive voter wants a tax rate above 1
    let path = write_scenario(
        &dir,
        "kind = \"fiscal\"\nincomes = [1.0, 1.0, 7.0]\nbenefit = { family = \"log\", scale = 2.0 }\n",
    );
    let out = run_on("fiscal", &path, &[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("infeasible"));

    let even = write_scenario(
        &dir,
        "kind = \"fiscal\"\nincomes = [1.0, 2.0]\nbenefit = { family = \"log\", scale = 1.0 }\n",
    );
    assert_eq!(run_on("fiscal", &even, &[]).status.code(), Some(1));
}

#[test]
fn truthfulness_budget_exceeded_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_scenario(
        &dir,
        "kind = \"mechanism\"\nvaluations = [1.0, 2.0, 3.0, 4.0]\nconvention = \"GROVES_ALIGNED\"\n\
         [truthfulness]\nmin = -5.0\nmax = 5.0\nstep = 0.5\n",
    );
    assert_eq!(run_on("mechanism", &path, &[]).status.code(), Some(0));
    assert_eq!(run_on("mechanism", &path, &["--grid-step", "0.1"]).status.code(), Some(1));
}

#[test]
fn output_is_deterministic_in_every_format() {
    for name in ["roommates_3.toml", "groves_literal.toml", "condorcet_paradox.toml", "fiscal_log.toml"] {
        for format in ["table", "csv", "jsonl"] {
            let a = run_on("report", &example(name), &["--format", format]);
            let b = run_on("report", &example(name), &["--format", format]);
            assert_eq!(a.status.code(), Some(0), "{name} {format}");
            assert_eq!(a.stdout, b.stdout, "{name} {format}");
        }
    }
}

#[test]
fn csv_dialect() {
    let out = run_on("report", &example("roommates_2.toml"), &["--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains('\r'));
    assert!(text.starts_with("key,value\n"));
    assert!(text.contains("\nagent,endowment,public_weight,contribution,private,utility,mrs\n"));
    // full precision, dot decimal separator
    assert!(text.contains("efficient_public_total,6.666666666666666\n"));
}

#[test]
fn jsonl_records_parse() {
    let out = run_on("report", &example("single_peaked.toml"), &["--format", "jsonl"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let records: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(records[0]["record"], "title");
    assert!(records
        .iter()
        .any(|r| r["key"] == "median_voter" && r["value"] == "Jones"));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("report.csv");
    let s = example("lindahl_2.toml");
    let out = run_on("lindahl", &s, &["--format", "csv", "--out", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let direct = run_on("lindahl", &s, &["--format", "csv"]);
    assert_eq!(std::fs::read(&target).unwrap(), direct.stdout);

    let unwritable = dir.path().join("missing").join("report.csv");
    let out = run_on("lindahl", &s, &["--out", unwritable.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_passes_on_every_bundled_scenario() {
    let mut files: Vec<PathBuf> = std::fs::read_dir(example(""))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .collect();
    files.sort();
    for file in files {
        let out = run_on("report", &file, &["--verify"]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}: {}",
            file.display(),
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(String::from_utf8(out.stdout).unwrap().contains("verified"), "{}", file.display());
    }
}

#[test]
fn three_roommates_flag_printed_figures() {
    let out = run_on("report", &example("roommates_3.toml"), &[]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("nash_utility               6.803      6.120  differs"));
    assert!(text.contains("nash_contribution          1.429      1.430  matches"));
    assert!(text.contains("note: erratum:"));
}

#[test]
fn paradox_reports_cycle() {
    let out = run_on("vote", &example("condorcet_paradox.toml"), &[]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("no Condorcet winner; cycle A→B→C→A"));
}
