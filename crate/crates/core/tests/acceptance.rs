//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Exits 0 after printing every line so `cargo test` stays usable; set
//! `ACCEPTANCE_STRICT=1` to exit 1 when any criterion fails.

mod oracle;

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use fusionlab::char_subgroups::{fitting, frattini, generalized_fitting};
use fusionlab::corpus::{builtin, builtin_corpus};
use fusionlab::fusion::fusion_system;
use fusionlab::group::prime_divisors;
use fusionlab::lattice::{all_subgroups, sylow_subgroups};
use fusionlab::supplements::{supplementation_profile, Property};
use fusionlab::theorems::{check_group, sweep, Fault, SweepConfig, SweepReport, TheoremId};
use fusionlab::{ElementSet, Group, SubId, SubgroupLattice};
use oracle::Set;

const HIERARCHY_MAX_ORDER: usize = 60;
const LEMMA_2_1_MAX_ORDER: usize = 48;
/// Groups small enough for the naive supplementation oracle.
const NAIVE_SUPPLEMENT_MAX_ORDER: usize = 24;
const FRATTINI_ORACLE_MAX_ORDER: usize = 24;
const S4_SUBGROUPS: usize = 30;
const MIN_NON_VACUOUS_MAIN: usize = 5;
const MIN_FAILING_VACUOUS_MAIN: usize = 2;
const ANALYZE_S4_BUDGET: Duration = Duration::from_secs(1);
const SWEEP_BUDGET: Duration = Duration::from_secs(600);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn lattice(name: &str) -> SubgroupLattice {
    all_subgroups(&builtin(name).unwrap()).unwrap()
}

fn as_set(lat: &SubgroupLattice, id: SubId) -> Set {
    lat.set(id).iter().collect()
}

fn lattice_sets(lat: &SubgroupLattice) -> BTreeSet<Set> {
    lat.ids().map(|id| as_set(lat, id)).collect()
}

fn by_labels(lat: &SubgroupLattice, labels: &[&str]) -> SubId {
    let g = lat.group();
    let elems = labels
        .iter()
        .map(|s| (0..g.order()).find(|&x| g.label(x) == *s).unwrap());
    lat.lookup(&ElementSet::from_indices(g.order(), elems))
        .unwrap()
}

fn corpus_upto(max: usize) -> Vec<Group> {
    builtin_corpus()
        .unwrap()
        .into_iter()
        .filter(|g| g.order() <= max)
        .collect()
}

fn clean_check(id: TheoremId, groups: &[Group]) -> (u64, u64, usize, Vec<String>) {
    let cfg = SweepConfig::default();
    let (mut inst, mut hits, mut viol, mut bad) = (0, 0, 0, Vec::new());
    for g in groups {
        let r = check_group(id, g, &cfg).unwrap();
        inst += r.instantiations;
        hits += r.hypothesis_hits;
        viol += r.violations.len();
        if !r.violations.is_empty() || !r.skipped.is_empty() {
            bad.push(g.id().to_string());
        }
    }
    (inst, hits, viol, bad)
}

fn hierarchy_suite() -> Outcome {
    let groups = corpus_upto(HIERARCHY_MAX_ORDER);
    let (inst, _, viol, bad) = clean_check(TheoremId::Hierarchy, &groups);
    // The engine's verdicts on the two ends of the chain must match the
    // naive definitions.
    let mut mismatches = Vec::new();
    let mut naive_breaks = 0;
    for g in groups
        .iter()
        .filter(|g| g.order() <= NAIVE_SUPPLEMENT_MAX_ORDER)
    {
        let lat = all_subgroups(g).unwrap();
        let all = oracle::all_subgroups(g);
        for id in lat.ids() {
            let h = as_set(&lat, id);
            let prof = supplementation_profile(lat.whole(), id);
            let comp = oracle::is_complemented(g, &all, &h);
            let wsp = oracle::is_weakly_s_phi_supplemented(g, &all, &h);
            if comp && !wsp {
                naive_breaks += 1;
            }
            if comp != prof.holds(Property::Complemented)
                || wsp != prof.holds(Property::WeaklySPhiSupplemented)
            {
                mismatches.push(format!("{} {}", g.id(), lat.describe(id)));
            }
        }
    }
    outcome(
        viol == 0 && bad.is_empty() && inst > 0 && mismatches.is_empty() && naive_breaks == 0,
        format!(
            "{} groups, {inst} implications, {viol} violations, {} oracle mismatches",
            groups.len(),
            mismatches.len()
        ),
    )
}

fn lemma_2_1_suite() -> Outcome {
    let groups = corpus_upto(LEMMA_2_1_MAX_ORDER);
    let (inst, hits, viol, bad) = clean_check(TheoremId::Lem21, &groups);
    outcome(
        viol == 0 && bad.is_empty() && hits > 0,
        format!(
            "{} groups, {inst} tuples, {hits} hits, {viol} violations",
            groups.len()
        ),
    )
}

fn lemma_2_2_suite() -> Outcome {
    let groups = builtin_corpus().unwrap();
    let (inst, hits, viol, bad) = clean_check(TheoremId::Lem22, &groups);
    let mut spots = Vec::new();
    let mut spot =
        |name: &str, label: &str, got: SubId, lat: &SubgroupLattice, naive: Set, want: usize| {
            let ok = as_set(lat, got) == naive && naive.len() == want;
            spots.push((format!("{label}({name}) order {}", naive.len()), ok));
        };
    let a4 = lattice("A4");
    let all = oracle::all_subgroups(a4.group());
    let got = generalized_fitting(a4.whole());
    spot(
        "A4",
        "F*",
        got,
        &a4,
        oracle::generalized_fitting(a4.group(), &all),
        4,
    );
    let s5 = lattice("S5");
    let all = oracle::all_subgroups(s5.group());
    let got = generalized_fitting(s5.whole());
    spot(
        "S5",
        "F*",
        got,
        &s5,
        oracle::generalized_fitting(s5.group(), &all),
        60,
    );
    let s4 = lattice("S4");
    let all = oracle::all_subgroups(s4.group());
    let got = fitting(s4.whole());
    let naive = oracle::fitting(s4.group(), &all);
    let klein = naive.iter().all(|&x| s4.group().element_order(x) <= 2);
    spot("S4", "F", got, &s4, naive, 4);
    let spots_ok = spots.iter().all(|(_, ok)| *ok) && klein;
    let listed: Vec<String> = spots
        .iter()
        .map(|(s, ok)| format!("{s}{}", if *ok { "" } else { " MISMATCH" }))
        .collect();
    outcome(
        viol == 0 && bad.is_empty() && hits > 0 && spots_ok,
        format!(
            "{} groups, {inst} tuples, {viol} violations; {}",
            groups.len(),
            listed.join(", ")
        ),
    )
}

const THEOREMS: [TheoremId; 6] = [
    TheoremId::Thm31,
    TheoremId::Thm32,
    TheoremId::Thm33,
    TheoremId::Thm34,
    TheoremId::ThmMain,
    TheoremId::Cor42,
];

fn theorem_sweep(report: &SweepReport) -> Outcome {
    let viol: usize = report
        .violations()
        .filter(|(r, _)| THEOREMS.contains(&r.theorem_id))
        .count();
    let main = |name: &str| {
        report
            .group(name)
            .and_then(|g| g.report(TheoremId::ThmMain))
            .and_then(|r| r.instances.first().cloned())
    };
    let mut problems = Vec::new();
    let mut non_vacuous = 0;
    for (name, p) in [
        ("S3", 2),
        ("S3xC2", 2),
        ("V4", 2),
        ("C7:C3", 3),
        ("C5^2:C3", 3),
    ] {
        match main(name) {
            Some(i) if i.hypothesis && i.conclusion && i.parameters["p"] == p.to_string() => {
                non_vacuous += 1
            }
            other => problems.push(format!("{name}: {other:?}")),
        }
    }
    let mut failing_vacuous = 0;
    for (name, needs_exponent_note) in [("A4", false), ("S4", true)] {
        match main(name) {
            Some(i)
                if !i.hypothesis
                    && !i.conclusion
                    && (!needs_exponent_note
                        || i.note.as_deref().is_some_and(|n| n.contains("exp(S)"))) =>
            {
                failing_vacuous += 1
            }
            other => problems.push(format!("{name}: {other:?}")),
        }
    }
    let skipped = report.totals.skipped_groups;
    outcome(
        viol == 0
            && skipped == 0
            && non_vacuous >= MIN_NON_VACUOUS_MAIN
            && failing_vacuous >= MIN_FAILING_VACUOUS_MAIN,
        format!(
            "{} groups, {viol} violations, thm_main non-vacuous {non_vacuous}/5, \
             failing-vacuous {failing_vacuous}/2{}",
            report.totals.groups,
            if problems.is_empty() {
                String::new()
            } else {
                format!("; {}", problems.join("; "))
            }
        ),
    )
}

fn naive_strongly_closed(g: &Group, s: &Set, all: &BTreeSet<Set>) -> Vec<Set> {
    oracle::subgroups_of(all, s)
        .filter(|p| {
            p.iter().all(|&x| {
                (0..g.order()).all(|y| {
                    let c = g.mul(g.mul(g.inv(y), x), y);
                    !s.contains(&c) || p.contains(&c)
                })
            })
        })
        .cloned()
        .collect()
}

fn naive_supersolvable_fusion(g: &Group, s: &Set, all: &BTreeSet<Set>) -> bool {
    let closed = naive_strongly_closed(g, s, all);
    let mut reach: BTreeSet<Set> = [oracle::closure(g, [])].into_iter().collect();
    let mut frontier: Vec<Set> = reach.iter().cloned().collect();
    while let Some(q) = frontier.pop() {
        for r in &closed {
            let cyclic_over = r.len() > q.len()
                && q.is_subset(r)
                && r.iter()
                    .any(|&x| oracle::closure(g, q.iter().copied().chain([x])) == *r);
            if cyclic_over && reach.insert(r.clone()) {
                frontier.push(r.clone());
            }
        }
    }
    reach.contains(s)
}

fn fusion_spot_checks() -> Outcome {
    let mut lines = Vec::new();
    let s4 = lattice("S4");
    let f = fusion_system(s4.whole(), 2).unwrap();

    // E*: two Klein fours and D8.
    let ess = f.essential_star().unwrap();
    let klein = ess
        .iter()
        .filter(|&&q| s4.order_of(q) == 4 && s4.whole().restrict(q).exponent() == 2)
        .count();
    let has_s = ess.contains(&f.sylow());
    let ess_ok = ess.len() == 3 && klein == 2 && has_s;
    let mut described: Vec<String> = ess.iter().map(|&q| s4.describe(q)).collect();
    for &q in f.objects() {
        if s4.order_of(q) == 4 && s4.whole().restrict(q).exponent() == 2 && !ess.contains(&q) {
            let out = f.out_f(q).unwrap();
            described.push(format!(
                "excluded {} with |Out_F| = {}",
                s4.describe(q),
                out.order()
            ));
        }
    }
    lines.push((
        ess_ok,
        format!(
            "essential_star(S4,2) has {} members [{}], expected two Klein fours and D8",
            ess.len(),
            described.join("; ")
        ),
    ));

    // Out_F of the double-transposition Klein four, against the naive count
    // of distinct conjugation actions.
    let v = by_labels(&s4, &["()", "(1 2)(3 4)", "(1 3)(2 4)", "(1 4)(2 3)"]);
    let out = f.out_f(v).unwrap();
    let g = s4.group();
    let vs = as_set(&s4, v);
    let actions: BTreeSet<Vec<usize>> = (0..g.order())
        .filter(|&x| oracle::conj_set(g, &vs, x) == vs)
        .map(|x| vs.iter().map(|&a| g.mul(g.mul(g.inv(x), a), x)).collect())
        .collect();
    let out_ok = out.order() == 6 && !out.is_abelian() && actions.len() == 6;
    lines.push((
        out_ok,
        format!(
            "|Out_F(V4)| = {} (naive {}), abelian {}",
            out.order(),
            actions.len(),
            out.is_abelian()
        ),
    ));

    // Strongly closed subgroups of F_{D8}(S4).
    let all = oracle::all_subgroups(g);
    let s = as_set(&s4, f.sylow());
    let closed = f.strongly_closed_subgroups();
    let naive = naive_strongly_closed(g, &s, &all);
    let closed_sets: BTreeSet<Set> = closed.iter().map(|&q| as_set(&s4, q)).collect();
    let naive_sets: BTreeSet<Set> = naive.into_iter().collect();
    let closed_ok = closed.len() == 3 && closed_sets == naive_sets;
    lines.push((
        closed_ok,
        format!(
            "strongly closed in F_D8(S4): {} (naive {})",
            closed.len(),
            naive_sets.len()
        ),
    ));

    for (name, p, want) in [("A4", 2, false), ("S3", 2, true)] {
        let lat = lattice(name);
        let f = fusion_system(lat.whole(), p).unwrap();
        let got = f.is_supersolvable_fusion();
        let all = oracle::all_subgroups(lat.group());
        let naive = naive_supersolvable_fusion(lat.group(), &as_set(&lat, f.sylow()), &all);
        lines.push((
            got == want && naive == want,
            format!("supersolvable F({name},{p}) = {got} (naive {naive})"),
        ));
    }

    let pass = lines.iter().all(|(ok, _)| *ok);
    let detail: Vec<String> = lines
        .into_iter()
        .map(|(ok, s)| format!("{}{s}", if ok { "" } else { "[x] " }))
        .collect();
    outcome(pass, detail.join("; "))
}

fn oracle_equivalences() -> Outcome {
    let mut notes = Vec::new();
    let s4 = lattice("S4");
    let subsets = oracle::subgroups_by_subsets(s4.group(), 4);
    let lattice_ok = s4.len() == S4_SUBGROUPS && lattice_sets(&s4) == subsets;
    notes.push(format!(
        "S4: {} subgroups, subset oracle {}",
        s4.len(),
        subsets.len()
    ));

    let mut phi_bad = Vec::new();
    let mut phi_groups = 0;
    for g in corpus_upto(FRATTINI_ORACLE_MAX_ORDER) {
        let lat = all_subgroups(&g).unwrap();
        let all = oracle::all_subgroups(&g);
        if lattice_sets(&lat) != all {
            phi_bad.push(format!("{} lattice", g.id()));
        }
        if as_set(&lat, frattini(lat.whole())) != oracle::non_generators(&g, &all) {
            phi_bad.push(g.id().to_string());
        }
        phi_groups += 1;
    }
    notes.push(format!("Phi = non-generators on {phi_groups} groups"));

    let mut sylow_bad = Vec::new();
    let mut pairs = 0;
    for g in builtin_corpus().unwrap() {
        let lat = all_subgroups(&g).unwrap();
        for p in prime_divisors(g.order()) {
            let sylows = sylow_subgroups(lat.whole(), p);
            let mut pp = 1;
            while g.order() % (pp * p) == 0 {
                pp *= p;
            }
            let by_order = lat.ids().filter(|&h| lat.order_of(h) == pp).count();
            if sylows.len() % p != 1 || sylows.len() != by_order {
                sylow_bad.push(format!("{} p={p}: {}", g.id(), sylows.len()));
            }
            pairs += 1;
        }
    }
    notes.push(format!(
        "Sylow counts = 1 mod p on {pairs} group/prime pairs"
    ));
    if !phi_bad.is_empty() {
        notes.push(format!("Phi mismatches: {}", phi_bad.join(", ")));
    }
    if !sylow_bad.is_empty() {
        notes.push(format!("Sylow failures: {}", sylow_bad.join(", ")));
    }
    outcome(
        lattice_ok && phi_bad.is_empty() && sylow_bad.is_empty(),
        notes.join("; "),
    )
}

fn fault_injection() -> Outcome {
    let cfg = SweepConfig {
        fault: Some(Fault::WeaklySPhiAlwaysTrue),
        ..SweepConfig::default()
    };
    let report = sweep(&builtin_corpus().unwrap(), &cfg).unwrap();
    let a4 = report
        .group("A4")
        .and_then(|g| g.report(TheoremId::ThmMain))
        .map_or(0, |r| r.violations.len());
    outcome(
        report.totals.violations >= 1 && a4 >= 1,
        format!(
            "{} violations with the fault injected, {a4} on A4 thm_main",
            report.totals.violations
        ),
    )
}

fn performance(sweep_time: Duration) -> Outcome {
    let start = Instant::now();
    let status = Command::new(env!("CARGO_BIN_EXE_fusionlab"))
        .args(["analyze", "builtin:S4", "--lattice", "--supplements"])
        .output()
        .is_ok_and(|o| o.status.success());
    let analyze = start.elapsed();
    outcome(
        status && analyze < ANALYZE_S4_BUDGET && sweep_time < SWEEP_BUDGET,
        format!(
            "analyze S4 {:.3}s (< {:?}), full sweep {:.2}s (< {:?})",
            analyze.as_secs_f64(),
            ANALYZE_S4_BUDGET,
            sweep_time.as_secs_f64(),
            SWEEP_BUDGET
        ),
    )
}

fn main() {
    let start = Instant::now();
    let report = sweep(&builtin_corpus().unwrap(), &SweepConfig::default()).unwrap();
    let sweep_time = start.elapsed();

    let results = [
        ("1 hierarchy", hierarchy_suite()),
        ("2 lemma 2.1", lemma_2_1_suite()),
        ("3 lemma 2.2", lemma_2_2_suite()),
        ("4 theorem sweep", theorem_sweep(&report)),
        ("5 fusion spot checks", fusion_spot_checks()),
        ("6 oracle equivalences", oracle_equivalences()),
        ("7 fault injection", fault_injection()),
        ("8 performance", performance(sweep_time)),
    ];
    let mut passed = 0;
    for (name, o) in &results {
        if o.pass {
            passed += 1;
        }
        println!(
            "{} {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!("acceptance: {passed}/{} criteria passed", results.len());
    let strict = std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    if strict && passed != results.len() {
        std::process::exit(1);
    }
}
