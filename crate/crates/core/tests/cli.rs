use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const EXE: &str = env!("CARGO_BIN_EXE_fracsrc");

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn run(args: &[&str], out: &Path) -> Output {
    Command::new(EXE)
        .arg("run")
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

/// Cells equal as strings, or as floats within 1e-9 relative.
fn assert_csv_close(actual: &str, expected: &str) {
    let (a, e) = (rows(actual), rows(expected));
    assert_eq!(a.len(), e.len(), "row count");
    assert_eq!(a[0], e[0], "header");
    for (ra, re) in a.iter().zip(&e).skip(1) {
        assert_eq!(ra.len(), re.len());
        for (ca, ce) in ra.iter().zip(re) {
            if ca == ce {
                continue;
            }
            let (x, y): (f64, f64) = (ca.parse().unwrap(), ce.parse().unwrap());
            assert!((x - y).abs() <= 1e-9 * y.abs(), "{ca} vs {ce}");
        }
    }
}

#[test]
fn tiny_config_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = golden("tiny.toml");
    let out = run(&["--config", cfg.to_str().unwrap()], dir.path());
    assert!(out.status.success(), "{}", stderr(&out));

    let errors = std::fs::read_to_string(dir.path().join("errors.csv")).unwrap();
    let summary = std::fs::read_to_string(dir.path().join("summary.csv")).unwrap();
    assert_csv_close(&errors, &std::fs::read_to_string(golden("errors.csv")).unwrap());
    assert_csv_close(&summary, &std::fs::read_to_string(golden("summary.csv")).unwrap());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), summary);
    assert!(!dir.path().join("signals_1e-1_3.csv").exists());
}

#[test]
fn golden_rows_are_self_consistent() {
    let errors = std::fs::read_to_string(golden("errors.csv")).unwrap();
    let table = rows(&errors);
    assert_eq!(
        table[0].join(","),
        "epsilon,seed,filter,mu,delta,delta_max,rel_err,theory_bound"
    );
    // 2 eps × 2 seeds × {naive, r1, r3}
    assert_eq!(table.len(), 1 + 12);
    let f = |s: &str| s.parse::<f64>().unwrap();
    for r in &table[1..] {
        let (delta, delta_max) = (f(&r[4]), f(&r[5]));
        assert_eq!(delta_max, 1.0 + delta);
        if r[2] == "naive" {
            assert!(r[3].is_empty() && r[7].is_empty());
        } else {
            let mu = f(&r[3]);
            assert!((mu - (delta / delta_max).powf(0.25)).abs() < 1e-15);
            assert!(f(&r[7]) > 0.0);
        }
    }
    // the same draws are scaled across noise levels
    let delta_of = |eps: &str, seed: &str| {
        table[1..]
            .iter()
            .find(|r| r[0].starts_with(eps) && r[1] == seed)
            .map(|r| f(&r[4]))
            .unwrap()
    };
    for seed in ["3", "11"] {
        let ratio = delta_of("1.0000000000000001e-1", seed) / delta_of("1.0000000000000000e-3", seed);
        assert!((ratio - 100.0).abs() < 1e-10);
    }
}

#[test]
fn example_one_writes_table_layout() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["--example", "1"], dir.path());
    assert!(out.status.success(), "{}", stderr(&out));
    let summary = std::fs::read_to_string(dir.path().join("summary.csv")).unwrap();
    let table = rows(&summary);
    assert_eq!(table[0], ["epsilon", "r1", "r2", "r3"]);
    assert_eq!(table.len(), 6);
    assert!(table.iter().all(|r| r.len() == 4));

    let errors = std::fs::read_to_string(dir.path().join("errors.csv")).unwrap();
    assert_eq!(errors.lines().count(), 1 + 5 * 20 * 4);

    let signals: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.starts_with("signals_"))
        .collect();
    assert_eq!(signals.len(), 100);
    let dump = std::fs::read_to_string(dir.path().join("signals_1e-3_7.csv")).unwrap();
    assert_eq!(
        dump.lines().next().unwrap(),
        "t,f_true,y,y_noisy,f_naive,f_r1,f_r2,f_r3"
    );
    assert_eq!(dump.lines().count(), 257);
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = golden("tiny.toml");
    let out = run(
        &[
            "--config",
            cfg.to_str().unwrap(),
            "--filters",
            "r2",
            "--seeds",
            "1",
            "--eps",
            "0.5",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let summary = std::fs::read_to_string(dir.path().join("summary.csv")).unwrap();
    assert_eq!(rows(&summary)[0], ["epsilon", "r2"]);
    let errors = std::fs::read_to_string(dir.path().join("errors.csv")).unwrap();
    assert_eq!(errors.lines().count(), 1 + 2);
}

#[test]
fn config_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["--example", "1", "--n", "100"],
        vec!["--example", "1", "--filters", "r9"],
        vec!["--example", "2", "--alpha", "1.5"],
        vec!["--example", "1", "--eps", "-0.1"],
        vec!["--example", "3"],
    ] {
        let out = run(&args, dir.path());
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
    }

    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "example = 1\nn = 32\npad = 3\n").unwrap();
    let out = run(&["--config", bad.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("bad.toml:3"), "{}", stderr(&out));

    std::fs::write(&bad, "example = 1\nwidth = 3\n").unwrap();
    let out = run(&["--config", bad.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(!dir.path().join("errors.csv").exists());
}
