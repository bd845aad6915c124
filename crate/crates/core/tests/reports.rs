//! Sweep reports through the library API.

use fusionlab::corpus::{builtin, builtin_corpus};
use fusionlab::theorems::{sweep, Fault, SweepConfig, SweepReport, TheoremId, Verdict};

fn default_sweep(cfg: &SweepConfig) -> SweepReport {
    sweep(&builtin_corpus().unwrap(), cfg).unwrap()
}

#[test]
fn builtin_sweep_is_clean_and_complete() {
    let r = default_sweep(&SweepConfig::default());
    assert_eq!(r.verdict, Verdict::Pass);
    assert_eq!(r.totals.groups, 61);
    assert_eq!(r.totals.skipped_groups, 0);
    assert_eq!(r.corpus_version, "fusionlab-corpus-1");
    let mut names: Vec<&str> = r.groups.iter().map(|g| g.group.as_str()).collect();
    let sorted = {
        let mut s = names.clone();
        s.sort();
        s
    };
    assert_eq!(names, sorted);
    names.dedup();
    assert_eq!(names.len(), 61);
    for g in &r.groups {
        assert_eq!(g.reports.len(), TheoremId::ALL.len(), "{}", g.group);
        assert!(g.elapsed_ms.is_none());
        for rep in &g.reports {
            assert!(
                rep.hypothesis_hits <= rep.instantiations,
                "{} {}",
                g.group,
                rep.theorem_id
            );
        }
    }
}

#[test]
fn json_round_trip_is_byte_identical() {
    let r = default_sweep(&SweepConfig::default());
    let text = r.to_json();
    let back: SweepReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, r);
    assert_eq!(back.to_json(), text);
    assert!(text.ends_with("}\n"));
}

#[test]
fn reports_do_not_depend_on_jobs() {
    let one = default_sweep(&SweepConfig {
        jobs: 1,
        ..SweepConfig::default()
    });
    let many = default_sweep(&SweepConfig {
        jobs: 8,
        ..SweepConfig::default()
    });
    assert_eq!(one.to_json(), many.to_json());
    assert_eq!(one.to_markdown(), many.to_markdown());
}

#[test]
fn timings_are_opt_in() {
    let corpus = [builtin("S3").unwrap()];
    let r = sweep(
        &corpus,
        &SweepConfig {
            record_timings: true,
            ..SweepConfig::default()
        },
    )
    .unwrap();
    assert!(r.groups[0].elapsed_ms.is_some());
    assert!(r.to_json().contains("elapsed_ms"));
}

#[test]
fn fault_injection_is_detected() {
    let r = default_sweep(&SweepConfig {
        fault: Some(Fault::WeaklySPhiAlwaysTrue),
        ..SweepConfig::default()
    });
    assert_eq!(r.verdict, Verdict::Fail);
    let a4 = r.group("A4").unwrap().report(TheoremId::ThmMain).unwrap();
    assert_eq!(a4.violations.len(), 1);
    assert!(a4.violations[0].detail.contains("not supersolvable"));
    assert!(!a4.violations[0].witnesses.is_empty());
    assert!(r.to_markdown().contains("**FAIL**"));
    assert!(r.to_json().contains("weakly_s_phi_always_true"));
}

#[test]
fn subgroup_limit_skips_instead_of_failing() {
    let r = default_sweep(&SweepConfig {
        max_subgroups: 12,
        ..SweepConfig::default()
    });
    assert_eq!(r.verdict, Verdict::Pass);
    assert!(r.hit_resource_limit());
    let s4 = r.group("S4").unwrap();
    assert!(s4.reports.is_empty());
    assert!(s4.skipped[0].contains("limit"));
    assert!(r.group("C2").unwrap().skipped.is_empty());
}

#[test]
fn order_limit_skips_large_groups() {
    let r = default_sweep(&SweepConfig {
        max_order: 60,
        ..SweepConfig::default()
    });
    for name in ["S5", "A5xC2", "C5^2:C3"] {
        assert!(!r.group(name).unwrap().skipped.is_empty(), "{name}");
    }
    assert!(r.group("A5").unwrap().skipped.is_empty());
}

#[test]
fn strict_thm_3_2_reading_is_recorded() {
    let cfg = SweepConfig {
        thm_3_2_strict: true,
        ..SweepConfig::default()
    };
    let r = default_sweep(&cfg);
    assert!(r.config.thm_3_2_strict);
    assert!(r.to_json().contains("\"thm_3_2_strict\": true"));
}
