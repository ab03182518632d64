use std::path::Path;
use std::process::{Command, Output};

use mu_tau::report::Report;

fn mu_tau(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mu-tau"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn verify(dir: &Path, name: &str, extra: &[&str]) -> (Output, Vec<u8>) {
    let path = dir.join(name);
    let mut args = vec!["verify", "--output", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    let out = mu_tau(&args);
    let bytes = std::fs::read(&path).unwrap_or_default();
    (out, bytes)
}

#[test]
fn verify_reports_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--suite", "propagation", "--grid", "2", "--seed", "11"];
    let (a_out, a) = verify(dir.path(), "a.json", &args);
    let (_, b) = verify(dir.path(), "b.json", &args);
    assert_eq!(
        a_out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&a_out.stderr)
    );
    assert!(!a.is_empty());
    assert_eq!(a, b);
    let summary = String::from_utf8(a_out.stdout).unwrap();
    assert!(summary.contains("0 fail"), "{summary}");
}

#[test]
fn report_header_embeds_the_effective_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(
        &cfg,
        "# flat config\nseed = 5\ngrid = 1\nsuite = thm2\nformat = csv\n",
    )
    .unwrap();
    let (out, bytes) = verify(
        dir.path(),
        "r.csv",
        &["--config", cfg.to_str().unwrap(), "--seed", "9"],
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report = Report::parse(&String::from_utf8(bytes).unwrap()).unwrap();
    let get = |k: &str| {
        report
            .header
            .iter()
            .find(|(key, _)| key == k)
            .map(|(_, v)| v.as_str())
    };
    assert_eq!(get("seed"), Some("9"), "flags override the file");
    assert_eq!(get("grid"), Some("1"), "file overrides defaults");
    assert_eq!(get("suite"), Some("thm2"));
    assert_eq!(get("tau"), Some("0,1"));
    assert_eq!(get("precision"), Some("auto"));
    assert!(report.records.iter().all(|r| r.suite == "thm2"));
}

#[test]
fn weyl_suite_exits_with_failure() {
    let dir = tempfile::tempdir().unwrap();
    let (out, bytes) = verify(
        dir.path(),
        "w.txt",
        &["--suite", "weyl", "--grid", "3", "--format", "text"],
    );
    assert_eq!(out.status.code(), Some(1));
    let report = Report::parse(&String::from_utf8(bytes).unwrap()).unwrap();
    let failing: Vec<_> = report
        .records
        .iter()
        .filter(|r| r.is_failure())
        .map(|r| r.equation.as_str())
        .collect();
    assert_eq!(failing, ["r0 iota = iota r1"; 3]);
}

#[test]
fn report_diff_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let base = ["--suite", "propagation", "--grid", "1"];
    verify(dir.path(), "a.json", &base);
    verify(
        dir.path(),
        "b.csv",
        &[&base[..], &["--format", "csv"]].concat(),
    );
    verify(
        dir.path(),
        "c.json",
        &[&base[..], &["--tol", "1e-12"]].concat(),
    );
    let p = |n: &str| dir.path().join(n).to_str().unwrap().to_string();

    let same = mu_tau(&["report-diff", &p("a.json"), &p("b.csv")]);
    assert_eq!(same.status.code(), Some(0));
    assert!(same.stdout.is_empty());

    let tol = mu_tau(&["report-diff", &p("a.json"), &p("c.json")]);
    assert_eq!(tol.status.code(), Some(1));
    let text = String::from_utf8(tol.stdout).unwrap();
    assert_eq!(text.lines().count(), 48);
    assert!(text.lines().all(|l| l.contains("tolerance]")), "{text}");

    std::fs::write(
        dir.path().join("bad.json"),
        "{\"config\":{}}\n{\"suite\": 3}\n",
    )
    .unwrap();
    let bad = mu_tau(&["report-diff", &p("a.json"), &p("bad.json")]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn eval_prints_value_and_certificate() {
    let out = mu_tau(&[
        "eval",
        "mu-tilde",
        "--tau",
        "0.1,1.2",
        "--u",
        "0.2,0.1",
        "--v",
        "-0.3,0.05",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for key in [
        "value = ",
        "precision = 53 bits",
        "terms = ",
        "tail_bound = ",
    ] {
        assert!(text.contains(key), "{text}");
    }
    let xi = mu_tau(&["eval", "xi", "--n", "-2"]);
    assert_eq!(xi.status.code(), Some(2));
    let usage = mu_tau(&["verify", "--grid", "0"]);
    assert_eq!(usage.status.code(), Some(2));
}
