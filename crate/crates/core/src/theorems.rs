//! Exhaustive audit of the supplementation and fusion results on concrete
//! groups.
//!
//! Each check enumerates every parameter tuple its statement quantifies
//! over, counts the tuples where the hypothesis holds, and records a
//! violation whenever the conclusion then fails. A clean report means "no
//! counterexample in this group", nothing more.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::char_subgroups::{fitting, generalized_fitting, layer, p_core, u_hypercenter};
use crate::corpus::CORPUS_VERSION;
use crate::error::{Error, Result};
use crate::fusion::{fusion_system, fusion_system_on};
use crate::group::{gcd, is_prime, p_part, prime_divisors, Group, DEFAULT_MAX_ORDER};
use crate::lattice::{
    chief_series, factor_orders, first_sylow, is_p_subgroup, normal_subgroups, sylow_subgroups,
    SubId, SubgroupLattice, View, DEFAULT_MAX_SUBGROUPS,
};
use crate::props::{
    is_nilpotent, is_p_nilpotent, is_solvable, quotient_is_nilpotent, quotient_is_p_nilpotent,
};
use crate::supplements::{
    has_supersoluble_supplement, supplementation_profile, supplements_of, weakly_s_phi_witness,
    Property,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    #[serde(rename = "thm_3_1")]
    Thm31,
    #[serde(rename = "thm_3_2")]
    Thm32,
    #[serde(rename = "thm_3_3")]
    Thm33,
    #[serde(rename = "thm_3_4")]
    Thm34,
    #[serde(rename = "thm_main")]
    ThmMain,
    #[serde(rename = "cor_4_2")]
    Cor42,
    #[serde(rename = "lem_2_1")]
    Lem21,
    #[serde(rename = "lem_2_2")]
    Lem22,
    #[serde(rename = "lem_2_3")]
    Lem23,
    #[serde(rename = "lem_2_4")]
    Lem24,
    #[serde(rename = "hierarchy")]
    Hierarchy,
}

impl TheoremId {
    pub const ALL: [TheoremId; 11] = [
        TheoremId::Thm31,
        TheoremId::Thm32,
        TheoremId::Thm33,
        TheoremId::Thm34,
        TheoremId::ThmMain,
        TheoremId::Cor42,
        TheoremId::Lem21,
        TheoremId::Lem22,
        TheoremId::Lem23,
        TheoremId::Lem24,
        TheoremId::Hierarchy,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Thm31 => "thm_3_1",
            TheoremId::Thm32 => "thm_3_2",
            TheoremId::Thm33 => "thm_3_3",
            TheoremId::Thm34 => "thm_3_4",
            TheoremId::ThmMain => "thm_main",
            TheoremId::Cor42 => "cor_4_2",
            TheoremId::Lem21 => "lem_2_1",
            TheoremId::Lem22 => "lem_2_2",
            TheoremId::Lem23 => "lem_2_3",
            TheoremId::Lem24 => "lem_2_4",
            TheoremId::Hierarchy => "hierarchy",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<TheoremId> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| {
                let known: Vec<&str> = TheoremId::ALL.iter().map(|t| t.as_str()).collect();
                Error::Parameter(format!(
                    "unknown theorem id `{s}` (known: {})",
                    known.join(", ")
                ))
            })
    }
}

/// Deliberate corruption of a predicate, used to show the audit can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fault {
    WeaklySPhiAlwaysTrue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub max_order: usize,
    pub max_subgroups: usize,
    pub hierarchy_max_order: usize,
    pub lemma_2_1_max_order: usize,
    /// Scope Theorem 3.2's order-4 clause to all of `G` instead of `F*(N)`.
    pub thm_3_2_strict: bool,
    pub fault: Option<Fault>,
    /// Worker threads; 0 picks the default. Never affects report content.
    #[serde(skip)]
    pub jobs: usize,
    #[serde(skip)]
    pub record_timings: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            max_order: DEFAULT_MAX_ORDER,
            max_subgroups: DEFAULT_MAX_SUBGROUPS,
            hierarchy_max_order: 60,
            lemma_2_1_max_order: 48,
            thm_3_2_strict: false,
            fault: None,
            jobs: 0,
            record_timings: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub parameters: BTreeMap<String, String>,
    pub detail: String,
    /// Subgroups the failure is about.
    pub subgroups: Vec<String>,
    /// Supplements examined for the hypothesis, `H -> T` per line.
    pub witnesses: Vec<String>,
}

/// One evaluated parameter tuple, kept for the checks with few tuples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub parameters: BTreeMap<String, String>,
    pub hypothesis: bool,
    pub conclusion: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem_id: TheoremId,
    pub group: String,
    pub order: usize,
    pub instantiations: u64,
    pub hypothesis_hits: u64,
    pub violations: Vec<Violation>,
    pub skipped: Vec<String>,
    pub notes: Vec<String>,
    pub instances: Vec<Instance>,
}

impl TheoremReport {
    pub fn new(theorem_id: TheoremId, group: &Group) -> TheoremReport {
        TheoremReport {
            theorem_id,
            group: group.id().to_string(),
            order: group.order(),
            instantiations: 0,
            hypothesis_hits: 0,
            violations: Vec::new(),
            skipped: Vec::new(),
            notes: Vec::new(),
            instances: Vec::new(),
        }
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    /// Hypothesis held in some instantiation.
    pub fn non_vacuous(&self) -> bool {
        self.hypothesis_hits > 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupAudit {
    pub group: String,
    pub order: usize,
    pub skipped: Vec<String>,
    pub reports: Vec<TheoremReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl GroupAudit {
    pub fn report(&self, id: TheoremId) -> Option<&TheoremReport> {
        self.reports.iter().find(|r| r.theorem_id == id)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub groups: usize,
    pub skipped_groups: usize,
    pub instantiations: u64,
    pub hypothesis_hits: u64,
    pub violations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub corpus_version: String,
    pub config: SweepConfig,
    pub groups: Vec<GroupAudit>,
    pub totals: Totals,
    pub verdict: Verdict,
}

impl SweepReport {
    pub fn group(&self, name: &str) -> Option<&GroupAudit> {
        self.groups.iter().find(|g| g.group == name)
    }

    pub fn violations(&self) -> impl Iterator<Item = (&TheoremReport, &Violation)> {
        self.groups
            .iter()
            .flat_map(|g| g.reports.iter())
            .flat_map(|r| r.violations.iter().map(move |v| (r, v)))
    }

    /// Some group or check was cut short by a resource limit.
    pub fn hit_resource_limit(&self) -> bool {
        self.groups
            .iter()
            .any(|g| !g.skipped.is_empty() || g.reports.iter().any(|r| !r.skipped.is_empty()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str("# Audit report\n\n");
        out.push_str(&format!(
            "- corpus: `{}`\n- groups: {} ({} skipped)\n- instantiations: {}\n- hypothesis hits: {}\n- violations: {}\n- verdict: **{}**\n\n",
            self.corpus_version,
            self.totals.groups,
            self.totals.skipped_groups,
            self.totals.instantiations,
            self.totals.hypothesis_hits,
            self.totals.violations,
            match self.verdict {
                Verdict::Pass => "PASS",
                Verdict::Fail => "FAIL",
            }
        ));
        out.push_str("Cells are `hits/instantiations`; `!n` marks n violations, `-` an unchecked theorem.\n\n");
        out.push_str("| group | order |");
        for id in TheoremId::ALL {
            out.push_str(&format!(" {id} |"));
        }
        out.push_str("\n|---|---|");
        for _ in TheoremId::ALL {
            out.push_str("---|");
        }
        out.push('\n');
        for g in &self.groups {
            out.push_str(&format!("| {} | {} |", g.group, g.order));
            for id in TheoremId::ALL {
                let cell = match g.report(id) {
                    None => "-".to_string(),
                    Some(r) if r.violations.is_empty() => {
                        format!("{}/{}", r.hypothesis_hits, r.instantiations)
                    }
                    Some(r) => format!(
                        "{}/{} !{}",
                        r.hypothesis_hits,
                        r.instantiations,
                        r.violations.len()
                    ),
                };
                out.push_str(&format!(" {cell} |"));
            }
            out.push('\n');
        }
        let violations: Vec<_> = self.violations().collect();
        if !violations.is_empty() {
            out.push_str("\n## Violations\n");
            for (r, v) in violations {
                out.push_str(&format!(
                    "\n### {} in {}\n\n{}\n\n",
                    r.theorem_id, r.group, v.detail
                ));
                for (k, val) in &v.parameters {
                    out.push_str(&format!("- {k} = {val}\n"));
                }
                for s in &v.subgroups {
                    out.push_str(&format!("- subgroup: {s}\n"));
                }
                for w in &v.witnesses {
                    out.push_str(&format!("- witness: {w}\n"));
                }
            }
        }
        let mut skips = Vec::new();
        for g in &self.groups {
            for s in &g.skipped {
                skips.push(format!("{}: {s}", g.group));
            }
            for r in &g.reports {
                for s in &r.skipped {
                    skips.push(format!("{} {}: {s}", g.group, r.theorem_id));
                }
            }
        }
        if !skips.is_empty() {
            out.push_str("\n## Skipped\n\n");
            for s in skips {
                out.push_str(&format!("- {s}\n"));
            }
        }
        out
    }
}

fn params<const N: usize>(pairs: [(&str, String); N]) -> BTreeMap<String, String> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn is_cyclic(lat: &SubgroupLattice, h: SubId) -> bool {
    let g = lat.group();
    let n = lat.order_of(h);
    lat.set(h).iter().any(|x| g.element_order(x) == n)
}

fn of_order(lat: &SubgroupLattice, within: SubId, n: usize) -> Vec<SubId> {
    lat.below(within)
        .iter()
        .copied()
        .filter(|&h| lat.order_of(h) == n)
        .collect()
}

fn cyclic_of_order(lat: &SubgroupLattice, within: SubId, n: usize) -> Vec<SubId> {
    of_order(lat, within, n)
        .into_iter()
        .filter(|&h| is_cyclic(lat, h))
        .collect()
}

fn prime_order_subgroups(lat: &SubgroupLattice, within: SubId) -> Vec<SubId> {
    lat.below(within)
        .iter()
        .copied()
        .filter(|&h| is_prime(lat.order_of(h)))
        .collect()
}

/// Runs the checks for one group over a prebuilt lattice.
pub struct Auditor<'a> {
    lat: &'a SubgroupLattice,
    cfg: &'a SweepConfig,
    wsp_cache: RefCell<HashMap<(SubId, SubId), Option<SubId>>>,
}

impl<'a> Auditor<'a> {
    pub fn new(lat: &'a SubgroupLattice, cfg: &'a SweepConfig) -> Auditor<'a> {
        Auditor {
            lat,
            cfg,
            wsp_cache: RefCell::new(HashMap::new()),
        }
    }

    fn faulty(&self) -> bool {
        self.cfg.fault == Some(Fault::WeaklySPhiAlwaysTrue)
    }

    /// Witness supplement for weak SΦ-supplementation of `h` in `v`.
    fn wsp(&self, v: View<'_>, h: SubId) -> Option<SubId> {
        if self.faulty() {
            return Some(v.ambient());
        }
        let key = (v.ambient(), h);
        if let Some(&w) = self.wsp_cache.borrow().get(&key) {
            return w;
        }
        let w = weakly_s_phi_witness(v, h);
        self.wsp_cache.borrow_mut().insert(key, w);
        w
    }

    /// Same predicate on a lattice other than the audited one.
    fn wsp_elsewhere(&self, v: View<'_>, h: SubId) -> bool {
        self.faulty() || weakly_s_phi_witness(v, h).is_some()
    }

    fn d(&self, h: SubId) -> String {
        self.lat.describe(h)
    }

    fn witness_lines(&self, v: View<'_>, hs: &[SubId]) -> Vec<String> {
        hs.iter()
            .map(|&h| match self.wsp(v, h) {
                Some(t) => format!("{} -> {}", self.d(h), self.d(t)),
                None => format!(
                    "{} -> none among {} supplements",
                    self.d(h),
                    supplements_of(v, h).len()
                ),
            })
            .collect()
    }

    fn report(&self, id: TheoremId) -> TheoremReport {
        TheoremReport::new(id, self.lat.group())
    }

    fn smallest_prime(&self) -> Option<usize> {
        prime_divisors(self.lat.group().order()).into_iter().next()
    }

    pub fn check(&self, id: TheoremId) -> TheoremReport {
        match id {
            TheoremId::Thm31 => self.thm_3_1(),
            TheoremId::Thm32 => self.thm_3_2(),
            TheoremId::Thm33 => self.thm_3_3(),
            TheoremId::Thm34 => self.thm_3_4(),
            TheoremId::ThmMain => self.thm_main(false),
            TheoremId::Cor42 => self.thm_main(true),
            TheoremId::Lem21 => self.lem_2_1(),
            TheoremId::Lem22 => self.lem_2_2(),
            TheoremId::Lem23 => self.lem_2_3(),
            TheoremId::Lem24 => self.lem_2_4(),
            TheoremId::Hierarchy => self.hierarchy(),
        }
    }

    pub fn check_all(&self) -> Vec<TheoremReport> {
        TheoremId::ALL
            .into_iter()
            .map(|id| self.check(id))
            .collect()
    }

    /// `G/N` p-nilpotent, order-p subgroups of `N` central, cyclic order-4
    /// subgroups of `N` weakly SΦ-supplemented (p = 2) ⇒ `G` p-nilpotent.
    fn thm_3_1(&self) -> TheoremReport {
        let lat = self.lat;
        let v = lat.whole();
        let mut r = self.report(TheoremId::Thm31);
        r.notes
            .push("the order-4 clause applies only when p = 2".into());
        let z = v.center();
        let normals = normal_subgroups(v, false);
        for p in prime_divisors(v.order()) {
            let conclusion = is_p_nilpotent(v, p);
            for &n in &normals {
                if !quotient_is_p_nilpotent(v, n, p) {
                    continue;
                }
                r.instantiations += 1;
                if !of_order(lat, n, p).into_iter().all(|m| lat.is_le(m, z)) {
                    continue;
                }
                let fours = if p == 2 {
                    cyclic_of_order(lat, n, 4)
                } else {
                    Vec::new()
                };
                if !fours.iter().all(|&c| self.wsp(v, c).is_some()) {
                    continue;
                }
                r.hypothesis_hits += 1;
                if !conclusion {
                    r.violations.push(Violation {
                        parameters: params([("p", p.to_string()), ("N", self.d(n))]),
                        detail: format!("hypothesis holds but G is not {p}-nilpotent"),
                        subgroups: vec![self.d(n), self.d(z)],
                        witnesses: self.witness_lines(v, &fours),
                    });
                }
            }
        }
        r
    }

    /// `G/N` nilpotent, prime-order subgroups of `F*(N)` central, cyclic
    /// order-4 subgroups weakly SΦ-supplemented ⇒ `G` nilpotent.
    fn thm_3_2(&self) -> TheoremReport {
        let lat = self.lat;
        let v = lat.whole();
        let mut r = self.report(TheoremId::Thm32);
        let strict = self.cfg.thm_3_2_strict;
        r.notes.push(
            "reading A (default): the order-4 clause ranges over cyclic subgroups of F*(N)".into(),
        );
        r.notes.push(
            "reading B (strict): the order-4 clause ranges over all cyclic subgroups of G".into(),
        );
        r.notes.push(format!(
            "this run uses reading {}",
            if strict { "B" } else { "A" }
        ));
        let z = v.center();
        let conclusion = is_nilpotent(v);
        let all_fours = cyclic_of_order(lat, lat.top(), 4);
        for n in normal_subgroups(v, false) {
            if !quotient_is_nilpotent(v, n) {
                continue;
            }
            r.instantiations += 1;
            let fstar = generalized_fitting(v.restrict(n));
            if !prime_order_subgroups(lat, fstar)
                .into_iter()
                .all(|m| lat.is_le(m, z))
            {
                continue;
            }
            let fours = if strict {
                all_fours.clone()
            } else {
                cyclic_of_order(lat, fstar, 4)
            };
            if !fours.iter().all(|&c| self.wsp(v, c).is_some()) {
                continue;
            }
            r.hypothesis_hits += 1;
            if !conclusion {
                r.violations.push(Violation {
                    parameters: params([("N", self.d(n)), ("F*(N)", self.d(fstar))]),
                    detail: "hypothesis holds but G is not nilpotent".into(),
                    subgroups: vec![self.d(fstar), self.d(z)],
                    witnesses: self.witness_lines(v, &fours),
                });
            }
        }
        r
    }

    /// Odd smallest prime p: `G` p-nilpotent iff every order-p subgroup of a
    /// Sylow p-subgroup lacking a supersoluble supplement is weakly
    /// SΦ-supplemented. Both directions are checked per Sylow subgroup.
    fn thm_3_3(&self) -> TheoremReport {
        let lat = self.lat;
        let v = lat.whole();
        let mut r = self.report(TheoremId::Thm33);
        let p = match self.smallest_prime() {
            Some(p) if p != 2 => p,
            _ => {
                r.notes
                    .push("applies only when the smallest prime divisor is odd".into());
                return r;
            }
        };
        r.notes.push(
            "equivalence: a violation is any instantiation where the two sides differ".into(),
        );
        let conclusion = is_p_nilpotent(v, p);
        for s in sylow_subgroups(v, p) {
            r.instantiations += 1;
            let minimal = of_order(lat, s, p);
            let failing: Vec<SubId> = minimal
                .iter()
                .copied()
                .filter(|&h| !has_supersoluble_supplement(v, h) && self.wsp(v, h).is_none())
                .collect();
            let hypothesis = failing.is_empty();
            if hypothesis {
                r.hypothesis_hits += 1;
            }
            let parameters = params([("p", p.to_string()), ("P", self.d(s))]);
            r.instances.push(Instance {
                parameters: parameters.clone(),
                hypothesis,
                conclusion,
                note: None,
            });
            if hypothesis != conclusion {
                let detail = if hypothesis {
                    format!("every order-{p} subgroup is covered but G is not {p}-nilpotent")
                } else {
                    format!("G is {p}-nilpotent but some order-{p} subgroup is not covered")
                };
                r.violations.push(Violation {
                    parameters,
                    detail,
                    subgroups: failing.iter().map(|&h| self.d(h)).collect(),
                    witnesses: self.witness_lines(v, &failing),
                });
            }
        }
        r
    }

    /// Normal p-subgroups of exponent p whose minimal subgroups are covered
    /// have only cyclic chief factors below them.
    fn thm_3_4(&self) -> TheoremReport {
        let lat = self.lat;
        let v = lat.whole();
        let mut r = self.report(TheoremId::Thm34);
        r.notes.push(
            "\"not containing a supersoluble supplement\" is read as \"not having one\"".into(),
        );
        let Some(p) = self.smallest_prime() else {
            return r;
        };
        let zu = u_hypercenter(v);
        for pn in normal_subgroups(v, false) {
            if pn == lat.trivial() || !is_p_subgroup(lat, pn, p) || v.restrict(pn).exponent() != p {
                continue;
            }
            r.instantiations += 1;
            let minimal = of_order(lat, pn, p);
            let failing: Vec<SubId> = minimal
                .iter()
                .copied()
                .filter(|&h| !has_supersoluble_supplement(v, h) && self.wsp(v, h).is_none())
                .collect();
            let hypothesis = failing.is_empty();
            let series = chief_series(v, Some(pn)).expect("normal subgroup");
            let top = series
                .iter()
                .position(|&s| s == pn)
                .expect("series passes P");
            let factors = factor_orders(lat, &series[..=top]);
            let conclusion = factors.iter().all(|&f| is_prime(f));
            let parameters = params([("p", p.to_string()), ("P", self.d(pn))]);
            if conclusion != lat.is_le(pn, zu) {
                r.violations.push(Violation {
                    parameters: parameters.clone(),
                    detail: "chief factors below P disagree with the hypercenter test".into(),
                    subgroups: vec![self.d(pn), self.d(zu)],
                    witnesses: Vec::new(),
                });
            }
            r.instances.push(Instance {
                parameters: parameters.clone(),
                hypothesis,
                conclusion,
                note: Some(format!("chief factor orders below P: {factors:?}")),
            });
            if !hypothesis {
                continue;
            }
            r.hypothesis_hits += 1;
            if !conclusion {
                r.violations.push(Violation {
                    parameters,
                    detail: format!("non-cyclic chief factor below P: orders {factors:?}"),
                    subgroups: series[..=top].iter().map(|&s| self.d(s)).collect(),
                    witnesses: self.witness_lines(v, &minimal),
                });
            }
        }
        r
    }

    /// `exp(S) = p` and every minimal subgroup of `S` weakly SΦ-supplemented
    /// ⇒ `F_S(G)` supersolvable (`thm_main`) and `G` p-nilpotent (`cor_4_2`).
    fn thm_main(&self, corollary: bool) -> TheoremReport {
        let lat = self.lat;
        let v = lat.whole();
        let id = if corollary {
            TheoremId::Cor42
        } else {
            TheoremId::ThmMain
        };
        let mut r = self.report(id);
        let Some(p) = self.smallest_prime() else {
            return r;
        };
        let s = first_sylow(v, p);
        let exponent = v.restrict(s).exponent();
        let minimal = of_order(lat, s, p);
        let failing: Vec<SubId> = minimal
            .iter()
            .copied()
            .filter(|&h| self.wsp(v, h).is_none())
            .collect();
        let hypothesis = exponent == p && failing.is_empty();
        let (conclusion, chain) = if corollary {
            (is_p_nilpotent(v, p), None)
        } else {
            let f = fusion_system(v, p).expect("p divides |G|");
            let chain = f.supersolvable_chain();
            (chain.is_some(), chain)
        };
        r.instantiations = 1;
        let parameters = params([("p", p.to_string()), ("S", self.d(s))]);
        let note = if exponent != p {
            Some(format!(
                "exp(S) = {exponent} != {p}: hypothesis fails, vacuous"
            ))
        } else if !failing.is_empty() {
            Some(format!(
                "{} minimal subgroup(s) of S not weakly SPhi-supplemented: vacuous",
                failing.len()
            ))
        } else {
            chain.as_ref().map(|c| {
                let orders: Vec<String> = c.iter().map(|&x| lat.order_of(x).to_string()).collect();
                format!("strongly closed chain orders: {}", orders.join(" < "))
            })
        };
        r.instances.push(Instance {
            parameters: parameters.clone(),
            hypothesis,
            conclusion,
            note,
        });
        if hypothesis {
            r.hypothesis_hits = 1;
            if !conclusion {
                let detail = if corollary {
                    format!("hypothesis holds but G is not {p}-nilpotent")
                } else {
                    "hypothesis holds but the fusion system is not supersolvable".to_string()
                };
                r.violations.push(Violation {
                    parameters,
                    detail,
                    subgroups: vec![self.d(s)],
                    witnesses: self.witness_lines(v, &minimal),
                });
            }
        }
        r
    }

    /// Inheritance of weak SΦ-supplementation by intermediate subgroups and
    /// quotients.
    fn lem_2_1(&self) -> TheoremReport {
        let lat = self.lat;
        let v = lat.whole();
        let g = lat.group();
        let mut r = self.report(TheoremId::Lem21);
        if g.order() > self.cfg.lemma_2_1_max_order {
            r.notes.push(format!(
                "out of scope: order {} exceeds {}",
                g.order(),
                self.cfg.lemma_2_1_max_order
            ));
            return r;
        }
        // part 1: H ≤ K ≤ G
        for k in lat.ids() {
            let kv = lat.view(k);
            for &h in lat.below(k) {
                r.instantiations += 1;
                if self.wsp(v, h).is_none() {
                    continue;
                }
                r.hypothesis_hits += 1;
                if self.wsp(kv, h).is_none() {
                    r.violations.push(Violation {
                        parameters: params([
                            ("part", "1".into()),
                            ("H", self.d(h)),
                            ("K", self.d(k)),
                        ]),
                        detail: "weakly SPhi-supplemented in G but not in K".into(),
                        subgroups: vec![self.d(h), self.d(k)],
                        witnesses: self.witness_lines(v, &[h]),
                    });
                }
            }
        }
        // parts 2 and 3: images in G/N
        for n in normal_subgroups(v, false) {
            let (q, hom) = g.quotient_group(lat.get(n)).expect("normal subgroup");
            let ql = match SubgroupLattice::build(&q, self.cfg.max_subgroups) {
                Ok(ql) => ql,
                Err(e) => {
                    r.skipped.push(format!("quotient by {}: {e}", self.d(n)));
                    continue;
                }
            };
            let image = |h: SubId| ql.id_of(&hom.image_of(lat.set(h), q.order()));
            for h in lat.ids() {
                let part = if lat.is_le(n, h) {
                    "2"
                } else if gcd(lat.order_of(n), lat.order_of(h)) == 1 {
                    "3"
                } else {
                    continue;
                };
                r.instantiations += 1;
                if self.wsp(v, h).is_none() {
                    continue;
                }
                r.hypothesis_hits += 1;
                let img = image(h);
                if !self.wsp_elsewhere(ql.whole(), img) {
                    r.violations.push(Violation {
                        parameters: params([
                            ("part", part.into()),
                            ("H", self.d(h)),
                            ("N", self.d(n)),
                        ]),
                        detail: "image in G/N is not weakly SPhi-supplemented".into(),
                        subgroups: vec![self.d(h), ql.describe(img)],
                        witnesses: self.witness_lines(v, &[h]),
                    });
                }
            }
        }
        r
    }

    /// Generalized Fitting subgroup identities.
    fn lem_2_2(&self) -> TheoremReport {
        let lat = self.lat;
        let v = lat.whole();
        let g = lat.group();
        let mut r = self.report(TheoremId::Lem22);
        let fstar = generalized_fitting(v);
        let normals = normal_subgroups(v, false);
        let record = |r: &mut TheoremReport, ok: bool, part: &str, x: SubId, detail: &str| {
            r.instantiations += 1;
            r.hypothesis_hits += 1;
            if !ok {
                r.violations.push(Violation {
                    parameters: params([("part", part.into()), ("N", self.d(x))]),
                    detail: detail.into(),
                    subgroups: vec![self.d(x)],
                    witnesses: Vec::new(),
                });
            }
        };
        for &n in &normals {
            let nv = v.restrict(n);
            let fs_n = generalized_fitting(nv);
            let f_n = fitting(nv);
            record(
                &mut r,
                fs_n == lat.meet(n, fstar),
                "1",
                n,
                "F*(N) differs from N ∩ F*(G)",
            );
            // part 2 as an implication: count only solvable F*(N)
            r.instantiations += 1;
            if is_solvable(v.restrict(fs_n)) {
                r.hypothesis_hits += 1;
                if fs_n != f_n {
                    r.violations.push(Violation {
                        parameters: params([("part", "2".into()), ("N", self.d(n))]),
                        detail: "F*(N) is soluble but differs from F(N)".into(),
                        subgroups: vec![self.d(fs_n), self.d(f_n)],
                        witnesses: Vec::new(),
                    });
                }
            }
            record(
                &mut r,
                lat.is_le(f_n, fs_n) && generalized_fitting(v.restrict(fs_n)) == fs_n,
                "3",
                n,
                "F(N) ≤ F*(N) = F*(F*(N)) fails",
            );
            let e_n = layer(nv);
            record(
                &mut r,
                lat.is_le(e_n, nv.centralizer(lat.set(f_n))),
                "[E,F]",
                n,
                "E(N) does not centralize F(N)",
            );
        }
        // part 4: central p-subgroups
        let z = v.center();
        for &pn in &normals {
            let order = lat.order_of(pn);
            let central_p = lat.is_le(pn, z) && order > 1 && prime_divisors(order).len() == 1;
            if !central_p {
                continue;
            }
            let (q, hom) = g.quotient_group(lat.get(pn)).expect("normal subgroup");
            let ql = match SubgroupLattice::build(&q, self.cfg.max_subgroups) {
                Ok(ql) => ql,
                Err(e) => {
                    r.skipped.push(format!("quotient by {}: {e}", self.d(pn)));
                    continue;
                }
            };
            let expected = ql.id_of(&hom.image_of(lat.set(fstar), q.order()));
            let actual = generalized_fitting(ql.whole());
            r.instantiations += 1;
            r.hypothesis_hits += 1;
            if expected != actual {
                r.violations.push(Violation {
                    parameters: params([("part", "4".into()), ("P", self.d(pn))]),
                    detail: "F*(G/P) differs from F*(G)/P".into(),
                    subgroups: vec![ql.describe(actual), ql.describe(expected)],
                    witnesses: Vec::new(),
                });
            }
        }
        r
    }

    /// Supersolvable normalizer subsystems on `E*_F` force a supersolvable
    /// fusion system.
    fn lem_2_3(&self) -> TheoremReport {
        let v = self.lat.whole();
        let mut r = self.report(TheoremId::Lem23);
        for p in prime_divisors(v.order()) {
            let f = fusion_system(v, p).expect("p divides |G|");
            let star = match f.essential_star() {
                Ok(s) => s,
                Err(e) => {
                    r.skipped.push(format!("p = {p}: {e}"));
                    continue;
                }
            };
            r.instantiations += 1;
            let mut failing = Vec::new();
            for &q in &star {
                match f.normalizer_fusion_system(q) {
                    Ok(nf) if nf.is_supersolvable_fusion() => {}
                    Ok(_) => failing.push(q),
                    Err(e) => {
                        r.skipped.push(format!("p = {p}, Q = {}: {e}", self.d(q)));
                        failing.push(q);
                    }
                }
            }
            let hypothesis = failing.is_empty();
            let conclusion = f.is_supersolvable_fusion();
            r.instances.push(Instance {
                parameters: params([("p", p.to_string())]),
                hypothesis,
                conclusion,
                note: Some(format!("|E*| = {}", star.len())),
            });
            if hypothesis {
                r.hypothesis_hits += 1;
                if !conclusion {
                    r.violations.push(Violation {
                        parameters: params([("p", p.to_string())]),
                        detail: "every N_F(Q) on E* is supersolvable but F is not".into(),
                        subgroups: star.iter().map(|&q| self.d(q)).collect(),
                        witnesses: Vec::new(),
                    });
                }
            }
        }
        r
    }

    /// Supersolvable fusion on proper subgroups above `O_p(G)` plus
    /// `O_p(G) ≤ Z_𝔘(G)` force a supersolvable `F_S(G)`.
    fn lem_2_4(&self) -> TheoremReport {
        let lat = self.lat;
        let v = lat.whole();
        let mut r = self.report(TheoremId::Lem24);
        let zu = u_hypercenter(v);
        for p in prime_divisors(v.order()) {
            r.instantiations += 1;
            let s = first_sylow(v, p);
            let op = p_core(v, p);
            let mut hypothesis = lat.is_le(op, zu);
            let mut examined = 0usize;
            if hypothesis {
                for h in lat.ids().filter(|&h| h != lat.top()) {
                    let sh = lat.meet(s, h);
                    if !lat.is_lt(op, sh) || lat.order_of(sh) != p_part(lat.order_of(h), p) {
                        continue;
                    }
                    examined += 1;
                    let sub = fusion_system_on(lat.view(h), p, sh).expect("Sylow of H");
                    if !sub.is_supersolvable_fusion() {
                        hypothesis = false;
                        break;
                    }
                }
            }
            let conclusion = fusion_system(v, p)
                .expect("p divides |G|")
                .is_supersolvable_fusion();
            r.instances.push(Instance {
                parameters: params([("p", p.to_string())]),
                hypothesis,
                conclusion,
                note: Some(format!("{examined} proper subgroup(s) examined")),
            });
            if hypothesis {
                r.hypothesis_hits += 1;
                if !conclusion {
                    r.violations.push(Violation {
                        parameters: params([("p", p.to_string())]),
                        detail: "hypothesis holds but F_S(G) is not supersolvable".into(),
                        subgroups: vec![self.d(op), self.d(zu)],
                        witnesses: Vec::new(),
                    });
                }
            }
        }
        r
    }

    /// The implications between the supplementation properties.
    fn hierarchy(&self) -> TheoremReport {
        const CHAINS: [(Property, Property); 6] = [
            (Property::Complemented, Property::CSupplemented),
            (Property::CSupplemented, Property::WeaklyCPhiSupplemented),
            (
                Property::WeaklyCPhiSupplemented,
                Property::WeaklySPhiSupplemented,
            ),
            (Property::Complemented, Property::SPhiSupplemented),
            (Property::SPhiSupplemented, Property::WeaklySPhiSupplemented),
            (
                Property::WeaklySSupplemented,
                Property::WeaklySPhiSupplemented,
            ),
        ];
        let lat = self.lat;
        let v = lat.whole();
        let mut r = self.report(TheoremId::Hierarchy);
        r.notes
            .push("\"weakly Phi-supplemented\" is identified with s_phi_supplemented".into());
        if lat.group().order() > self.cfg.hierarchy_max_order {
            r.notes.push(format!(
                "out of scope: order {} exceeds {}",
                lat.group().order(),
                self.cfg.hierarchy_max_order
            ));
            return r;
        }
        for h in lat.ids() {
            let prof = supplementation_profile(v, h);
            for (from, to) in CHAINS {
                r.instantiations += 1;
                if !prof.holds(from) {
                    continue;
                }
                r.hypothesis_hits += 1;
                if !prof.holds(to) {
                    r.violations.push(Violation {
                        parameters: params([
                            ("H", self.d(h)),
                            ("implication", format!("{from} => {to}")),
                        ]),
                        detail: format!("{from} holds but {to} does not"),
                        subgroups: vec![self.d(h)],
                        witnesses: vec![format!(
                            "{from} via {}",
                            self.d(prof.witness(from).expect("holds"))
                        )],
                    });
                }
            }
        }
        r
    }
}

/// Every check on one group; resource limits become skips.
pub fn audit_group(g: &Group, cfg: &SweepConfig) -> GroupAudit {
    let start = Instant::now();
    let mut audit = GroupAudit {
        group: g.id().to_string(),
        order: g.order(),
        skipped: Vec::new(),
        reports: Vec::new(),
        elapsed_ms: None,
    };
    if g.order() > cfg.max_order {
        audit.skipped.push(
            Error::ResourceLimit {
                group: g.id().to_string(),
                what: "group order",
                limit: cfg.max_order,
            }
            .to_string(),
        );
    } else {
        match SubgroupLattice::build(g, cfg.max_subgroups) {
            Ok(lat) => audit.reports = Auditor::new(&lat, cfg).check_all(),
            Err(e) => audit.skipped.push(e.to_string()),
        }
    }
    if cfg.record_timings {
        audit.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    audit
}

/// A single check on one group.
pub fn check_group(id: TheoremId, g: &Group, cfg: &SweepConfig) -> Result<TheoremReport> {
    if g.order() > cfg.max_order {
        return Err(Error::ResourceLimit {
            group: g.id().to_string(),
            what: "group order",
            limit: cfg.max_order,
        });
    }
    let lat = SubgroupLattice::build(g, cfg.max_subgroups)?;
    Ok(Auditor::new(&lat, cfg).check(id))
}

/// Audits every group in parallel and merges the results by group name.
pub fn sweep(corpus: &[Group], cfg: &SweepConfig) -> Result<SweepReport> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if cfg.jobs > 0 {
        builder = builder.num_threads(cfg.jobs);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Parameter(format!("thread pool: {e}")))?;
    let mut groups: Vec<GroupAudit> =
        pool.install(|| corpus.par_iter().map(|g| audit_group(g, cfg)).collect());
    groups.sort_by(|a, b| a.group.cmp(&b.group));
    let mut totals = Totals {
        groups: groups.len(),
        ..Totals::default()
    };
    for g in &groups {
        if !g.skipped.is_empty() {
            totals.skipped_groups += 1;
        }
        for r in &g.reports {
            totals.instantiations += r.instantiations;
            totals.hypothesis_hits += r.hypothesis_hits;
            totals.violations += r.violations.len();
        }
    }
    let verdict = if totals.violations == 0 {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(SweepReport {
        corpus_version: CORPUS_VERSION.to_string(),
        config: cfg.clone(),
        groups,
        totals,
        verdict,
    })
}
