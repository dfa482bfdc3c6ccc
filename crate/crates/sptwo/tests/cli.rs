use std::process::{Command, Output};

use serde_json::Value;

fn sptwo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sptwo"))
        .args(args)
        .env_remove("SPTWO_THREADS")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn cpl_table_rows() {
    let o = sptwo(&["cpl", "--lmax", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with(&format!(
        "# sptwo {}\n# seed=0\n",
        env!("CARGO_PKG_VERSION")
    )));
    assert!(text.lines().any(|l| l == "0.5,0.5,0.707106781186548"));
    assert!(text.lines().any(|l| l == "0,0,1"));
    let rows = text.lines().filter(|l| !l.starts_with('#')).count();
    assert_eq!(rows, 1 + (1..=21).sum::<usize>());
}

#[test]
fn oracle_methods_agree_with_recurrence() {
    let base = stdout(&sptwo(&["cpl", "--lmax", "4"]));
    for method in ["integral", "group"] {
        let other = stdout(&sptwo(&["cpl", "--lmax", "4", "--method", method]));
        let values = |t: &str| -> Vec<f64> {
            t.lines()
                .filter(|l| !l.starts_with('#'))
                .skip(1)
                .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
                .collect()
        };
        for (a, b) in values(&base).iter().zip(values(&other)) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}

#[test]
fn byte_identical_across_runs_and_threads() {
    let args = ["quasi", "--defect-sweep", "300", "--seed", "7"];
    let a = sptwo(&args);
    let b = sptwo(&args);
    let mut threaded = args.to_vec();
    threaded.extend(["--threads", "3"]);
    let c = sptwo(&threaded);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    assert!(stdout(&a).lines().any(|l| l.starts_with("# max_defect=")));
    let other_seed = sptwo(&["quasi", "--defect-sweep", "300", "--seed", "8"]);
    assert_ne!(a.stdout, other_seed.stdout);
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("kak.csv");
    let args = ["kak", "--random", "--trials", "20", "--seed", "3"];
    let direct = sptwo(&args);
    let mut to_file = args.to_vec();
    to_file.extend(["-o", path.to_str().unwrap()]);
    let o = sptwo(&to_file);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
}

#[test]
fn json_mirrors_csv() {
    let csv = stdout(&sptwo(&[
        "envelope", "--s1", "0.3", "--s2", "0.4", "--sweep", "--steps", "3",
    ]));
    let json = sptwo(&[
        "envelope", "--s1", "0.3", "--s2", "0.4", "--sweep", "--steps", "3", "--format", "json",
    ]);
    assert_eq!(json.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&json.stdout).unwrap();
    let rows: Vec<&str> = csv
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .collect();
    let jrows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), jrows.len());
    for (line, row) in rows.iter().zip(jrows) {
        let cells: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        let fields = ["beta", "gamma", "epsilon"].map(|k| row[k].as_f64().unwrap());
        assert_eq!(cells, fields);
    }
    let keys: Vec<&String> = jrows[0].as_object().unwrap().keys().collect();
    assert_eq!(keys, ["beta", "gamma", "epsilon"]);
}

#[test]
fn input_errors_exit_two() {
    for args in [
        vec!["frobnicate"],
        vec!["kak", "1", "2", "3"],
        vec![
            "kak", "1", "0", "0", "0", "0", "1", "0", "0", "0", "0", "1", "0", "0", "0", "0", "x",
        ],
        vec![
            "kak", "2", "0", "0", "0", "0", "1", "0", "0", "0", "0", "1", "0", "0", "0", "0", "1",
        ],
        vec!["cpl", "--tol", "-1"],
        vec!["cpl", "--lmax", "0.3"],
        vec!["schatten", "--kind", "S", "--q", "3"],
        vec![
            "envelope",
            "--p",
            "3",
            "--preset-q",
            "20",
            "--beta",
            "1",
            "--gamma",
            "0",
        ],
    ] {
        let o = sptwo(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn unreachable_tolerance_exits_two_with_partial_row() {
    let o = sptwo(&["schatten", "--kind", "S", "--q", "12", "--lmax", "2048"]);
    assert_eq!(o.status.code(), Some(2));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("12,0,1.5707963267949,")));
    assert!(text.contains("# certified=false"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("relative target"));
}

#[test]
fn certified_norm_exits_zero() {
    let o = sptwo(&["schatten", "--kind", "S", "--q", "40", "--theta2", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("# certified=true"));
    let o = sptwo(&["schatten", "--kind", "T", "--q", "inf", "--theta1", "0.1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("# lower_bound="));
}

#[test]
fn violated_checks_exit_one() {
    let o = sptwo(&["bounds-cpl", "--lmax", "20", "--slack=-1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("# excess="));
    let o = sptwo(&["ridge", "--max", "4", "--step", "0.5", "--slack", "0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(sptwo(&["--help"]).status.code(), Some(0));
    assert_eq!(sptwo(&["--version"]).status.code(), Some(0));
}
