//! The installed binary: exit codes, outputs and report files.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use fusionlab::theorems::{SweepReport, TheoremReport, Verdict};

fn fusionlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fusionlab"))
        .args(args)
        .env_remove("FUSIONLAB_JOBS")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) {
    fs::write(dir.join(name), text).unwrap();
}

#[test]
fn analyze_reports_structure() {
    let o = fusionlab(&[
        "analyze",
        "builtin:S4",
        "--lattice",
        "--char-subgroups",
        "--supplements",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("group S4 of order 24"));
    assert!(text.contains("subgroups: 30 in 11 conjugacy classes"));
    assert!(text.contains("weakly_s_phi_supplemented"));
}

#[test]
fn check_exit_codes() {
    let o = fusionlab(&["check", "thm_main", "builtin:S3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("hypothesis true, conclusion true"));

    let o = fusionlab(&["check", "no_such_theorem", "builtin:S3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown theorem id"));

    let o = fusionlab(&["check", "thm_main", "builtin:Nope"]);
    assert_eq!(o.status.code(), Some(2));

    let o = fusionlab(&["check", "lem_2_1", "builtin:S4", "--max-subgroups", "10"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn check_json_round_trips() {
    let o = fusionlab(&["check", "thm_main", "builtin:A4", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let report: TheoremReport = serde_json::from_str(&text).unwrap();
    assert_eq!(report.group, "A4");
    assert!(!report.instances[0].hypothesis);
    let again = serde_json::to_string_pretty(&report).unwrap() + "\n";
    assert_eq!(again, text);
}

#[test]
fn input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.grp");
    let o = fusionlab(&["analyze", missing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("file not found"));

    write(dir.path(), "bad.grp", "format perm\ndegree 3\ngen (1 2\n");
    let o = fusionlab(&["analyze", dir.path().join("bad.grp").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"));

    let o = fusionlab(&["fusion", "builtin:S3", "-p", "5"]);
    assert_eq!(o.status.code(), Some(2));

    let o = fusionlab(&["analyze", "builtin:S5", "--max-order", "60"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn group_files_are_analyzed() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "s3.grp",
        "# symmetric group\nformat perm\ndegree 3\ngen (1 2)\ngen (1 2 3)\n",
    );
    write(
        dir.path(),
        "c2.grp",
        "format table\norder 2\nrow 0 1\nrow 1 0\n",
    );
    let o = fusionlab(&[
        "fusion",
        dir.path().join("s3.grp").to_str().unwrap(),
        "-p",
        "3",
        "--supersolvable",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = fusionlab(&["analyze", dir.path().join("c2.grp").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("group c2 of order 2"));
}

#[test]
fn sweep_directory_corpus() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "s3.grp",
        "format perm\ndegree 3\ngen (1 2)\ngen (1 2 3)\n",
    );
    write(
        dir.path(),
        "a4.grp",
        "format perm\ndegree 4\ngen (1 2 3)\ngen (2 3 4)\n",
    );
    write(dir.path(), "notes.txt", "not a group\n");
    let json = dir.path().join("report.json");
    let o = fusionlab(&[
        "sweep",
        "--corpus",
        dir.path().to_str().unwrap(),
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: SweepReport = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    let names: Vec<&str> = report.groups.iter().map(|g| g.group.as_str()).collect();
    assert_eq!(names, ["a4", "s3"]);
    assert_eq!(report.verdict, Verdict::Pass);
}

#[test]
fn sweep_reports_are_deterministic_across_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for jobs in ["1", "4"] {
        let json = dir.path().join(format!("r{jobs}.json"));
        let md = dir.path().join(format!("r{jobs}.md"));
        let o = fusionlab(&[
            "sweep",
            "--jobs",
            jobs,
            "--json",
            json.to_str().unwrap(),
            "--markdown",
            md.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        assert!(o.stdout.is_empty());
        outputs.push((fs::read(&json).unwrap(), fs::read(&md).unwrap()));
    }
    assert_eq!(outputs[0], outputs[1]);

    let text = String::from_utf8(outputs[0].0.clone()).unwrap();
    let report: SweepReport = serde_json::from_str(&text).unwrap();
    assert_eq!(report.totals.groups, 61);
    assert_eq!(serde_json::to_string_pretty(&report).unwrap() + "\n", text);
}

#[test]
fn sweep_limits() {
    let o = fusionlab(&["sweep", "--max-subgroups", "20"]);
    assert_eq!(o.status.code(), Some(0));
    let o = fusionlab(&["sweep", "--max-subgroups", "20", "--strict-limits"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("skipped"));
}

#[test]
fn jobs_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_fusionlab"))
        .args(["sweep", "--max-order", "12"])
        .env("FUSIONLAB_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}
