use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn regkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_regkit"))
        .args(args)
        .env_remove("REGKIT_SEED")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scenes() -> String {
    data("fixtures.scenes.json").display().to_string()
}

fn res() -> String {
    data("fixtures.res.json").display().to_string()
}

#[test]
fn profile_fixture_row() {
    let o = regkit(&["profile", "--scenes", &scenes()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("trial_id,m,n_minimal,n_numerical"));
    assert_eq!(lines.next(), Some("FX1,1,2,0"));
}

#[test]
fn generate_incremental() {
    let o = regkit(&["generate", "--algo", "IA-COS", "--scenes", &scenes(), "--domain", "furniture"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("FX1,IA-COS,\"COLOUR=green, TYPE=chair\",true"));
}

#[test]
fn evaluate_empty_corpus_is_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, "[]").unwrap();
    let e = empty.display().to_string();
    let o = regkit(&["evaluate", "--algo", "FB+TYPE", "--group", "domain,position", "--scenes", &e, "--res", &e]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "corpus,domain,position,algorithm,n,mean_dice,sd,prp\n");
}

#[test]
fn validation_findings_exit_one() {
    let o = regkit(&["validate", "--scenes", &scenes(), "--res", &res()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("no value for hasShirt"));
    let o = regkit(&["validate", "--scenes", &scenes(), "--res", &res(), "--domain", "furniture"]);
    assert_eq!(o.status.code(), Some(0), "FX1 and its expressions are well-formed");
    assert_eq!(stdout(&o), "");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(regkit(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(regkit(&["generate", "--scenes", &scenes()]).status.code(), Some(2));
    assert_eq!(regkit(&["generate", "--scenes", &scenes(), "--algo", "IA-XYZ"]).status.code(), Some(2));
    assert_eq!(regkit(&["sweep", "--scenes", &scenes(), "--runs", "0"]).status.code(), Some(2));
    assert_eq!(regkit(&["stats", "tukey"]).status.code(), Some(2));
}

#[test]
fn missing_input_exits_one() {
    assert_eq!(regkit(&["profile", "--scenes", "/nonexistent/x.json"]).status.code(), Some(1));
}

#[test]
fn output_is_atomic() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("out.csv");
    let t = target.display().to_string();
    let o = regkit(&["profile", "--scenes", &scenes(), "--output", &t]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(&target).unwrap().starts_with("trial_id,"));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "[{").unwrap();
    let fresh = dir.path().join("never.csv");
    let o = regkit(&["profile", "--scenes", &bad.display().to_string(), "--output", &fresh.display().to_string()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!fresh.exists());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 2, "no stray temporary files");
}

#[test]
fn repeated_runs_are_identical() {
    let args = [
        "sweep", "--scenes", &scenes(), "--res", &res(), "--runs", "30", "--seed", "11", "--jobs", "1",
    ];
    let a = regkit(&args);
    let b = regkit(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let mut parallel = args.to_vec();
    *parallel.last_mut().unwrap() = "4";
    assert_eq!(regkit(&parallel).stdout, a.stdout);
    assert!(stdout(&a).starts_with("p,mean_dice,runs,seed\n0,"));
    assert_eq!(stdout(&a).lines().count(), 12);
}

#[test]
fn seed_from_environment() {
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_regkit"));
        c.args(["evaluate", "--scenes", &scenes(), "--res", &res(), "--algo", "FB@p=0.5"]);
        c.args(extra);
        match env {
            Some(v) => c.env("REGKIT_SEED", v),
            None => c.env_remove("REGKIT_SEED"),
        };
        c.output().unwrap().stdout
    };
    let from_env = run(Some("42"), &[]);
    assert_eq!(from_env, run(None, &["--seed", "42"]));
    assert!(String::from_utf8(from_env).unwrap().contains("FB@p=0.5@seed=42"));
}

#[test]
fn output_formats() {
    let md = regkit(&["classify", "--summary", "--format", "markdown", "--scenes", &scenes(), "--res", &res()]);
    assert!(stdout(&md).contains("| furniture | 5 | 1 | 1 | 1 | 0 | 1 | 0 | 1 |"));
    let rec = regkit(&["profile", "--format", "records", "--scenes", &scenes()]);
    let first = stdout(&rec).lines().next().unwrap().to_string();
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["trial_id"], "FX1");
    assert_eq!(v["n_minimal"], "2");
    assert_eq!(regkit(&["profile", "--format", "csv", "--format", "markdown", "--scenes", &scenes()]).status.code(), Some(2));
}

#[test]
fn trial_filter() {
    let overlap = data("mtuna_etuna_overlap.tsv").display().to_string();
    let o = regkit(&["profile", "--scenes", &scenes(), "--trials", &overlap]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "trial_id,m,n_minimal,n_numerical\n");
    assert!(String::from_utf8_lossy(&o.stderr).contains("trial 1 "));
}

#[test]
fn stats_one_line_records() {
    let o = regkit(&["stats", "chi2", "--table", "30,70,50,50"]);
    assert_eq!(stdout(&o), "test=chi2 statistic=8.333333333333334 df=1 p=0.003892417122778623\n");
    let o = regkit(&["stats", "anova", "--group", "1,2,3", "--group", "2,3,4"]);
    assert!(stdout(&o).starts_with("test=anova statistic=1.5 df=1,4 p=0.2878"));
    let o = regkit(&["stats", "anova", "--group", "1", "--group", "2"]);
    assert_eq!(o.status.code(), Some(1));
}
