//! Subgroup lattice enumeration and the structure read off it: maximal,
//! minimal, normal, Sylow and subnormal subgroups and chief series.
//!
//! A [`View`] treats any member of the lattice as a group in its own right,
//! so "the Sylow subgroups of `H`" or "the normal subgroups of `N`" are
//! answered from the parent lattice without re-enumerating.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::group::{is_p_power, p_part, prime_divisors, Group, Subgroup};

pub const DEFAULT_MAX_SUBGROUPS: usize = 100_000;

/// Index of a subgroup in its lattice's canonical order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubId(usize);

impl SubId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Debug for SubId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl fmt::Display for SubId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

pub struct SubgroupLattice {
    group: Group,
    subgroups: Vec<Subgroup>,
    gens: Vec<Vec<usize>>,
    index: HashMap<ElementSet, SubId>,
    normal: Vec<bool>,
    class_of: Vec<usize>,
    classes: Vec<Vec<SubId>>,
    below: Vec<OnceLock<Vec<SubId>>>,
    pub(crate) frattini_cache: Vec<OnceLock<SubId>>,
    pub(crate) supersolvable_cache: Vec<OnceLock<bool>>,
    pub(crate) s_permutable_cache: Vec<OnceLock<Vec<bool>>>,
}

impl fmt::Debug for SubgroupLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SubgroupLattice({}, {} subgroups)",
            self.group.id(),
            self.subgroups.len()
        )
    }
}

/// Every subgroup of `g` with the default subgroup limit.
pub fn all_subgroups(g: &Group) -> Result<SubgroupLattice> {
    SubgroupLattice::build(g, DEFAULT_MAX_SUBGROUPS)
}

impl SubgroupLattice {
    /// Seeds with the cyclic subgroups and joins each listed subgroup with
    /// each cyclic subgroup until nothing new appears.
    pub fn build(g: &Group, max_subgroups: usize) -> Result<SubgroupLattice> {
        let n = g.order();
        let limit = |count: usize| -> Result<()> {
            if count > max_subgroups {
                Err(Error::ResourceLimit {
                    group: g.id().to_string(),
                    what: "subgroup count",
                    limit: max_subgroups,
                })
            } else {
                Ok(())
            }
        };
        let mut subs: Vec<(ElementSet, Vec<usize>)> = Vec::new();
        let mut seen: HashMap<ElementSet, usize> = HashMap::new();
        let mut cyclic: Vec<(usize, usize)> = Vec::new(); // (generator, lattice slot)
        for x in 0..n {
            let c = g.generated_by(&[x]).into_set();
            if !seen.contains_key(&c) {
                seen.insert(c.clone(), subs.len());
                cyclic.push((x, subs.len()));
                let gens = if x == 0 { vec![] } else { vec![x] };
                subs.push((c, gens));
                limit(subs.len())?;
            }
        }
        let mut i = 0;
        while i < subs.len() {
            for &(x, _) in &cyclic {
                if subs[i].0.contains(x) {
                    continue;
                }
                let mut gens = subs[i].1.clone();
                gens.push(x);
                let joined = g.generated_by(&gens).into_set();
                if !seen.contains_key(&joined) {
                    seen.insert(joined.clone(), subs.len());
                    subs.push((joined, gens));
                    limit(subs.len())?;
                }
            }
            i += 1;
        }
        subs.sort_by(|a, b| a.0.cmp(&b.0));
        let count = subs.len();
        let mut subgroups = Vec::with_capacity(count);
        let mut gens = Vec::with_capacity(count);
        let mut index = HashMap::with_capacity(count);
        for (k, (set, gs)) in subs.into_iter().enumerate() {
            index.insert(set.clone(), SubId(k));
            subgroups.push(Subgroup::from_closed(set));
            gens.push(gs);
        }
        let mut lat = SubgroupLattice {
            group: g.clone(),
            subgroups,
            gens,
            index,
            normal: Vec::new(),
            class_of: Vec::new(),
            classes: Vec::new(),
            below: (0..count).map(|_| OnceLock::new()).collect(),
            frattini_cache: (0..count).map(|_| OnceLock::new()).collect(),
            supersolvable_cache: (0..count).map(|_| OnceLock::new()).collect(),
            s_permutable_cache: (0..count).map(|_| OnceLock::new()).collect(),
        };
        lat.annotate_conjugacy();
        Ok(lat)
    }

    fn annotate_conjugacy(&mut self) {
        let count = self.subgroups.len();
        let ggens = self.group.generators().to_vec();
        let mut class_of = vec![usize::MAX; count];
        let mut classes = Vec::new();
        for start in 0..count {
            if class_of[start] != usize::MAX {
                continue;
            }
            let c = classes.len();
            let mut orbit = vec![SubId(start)];
            class_of[start] = c;
            let mut k = 0;
            while k < orbit.len() {
                let cur = orbit[k];
                for &g in &ggens {
                    let next = self.conjugate(cur, g);
                    if class_of[next.0] == usize::MAX {
                        class_of[next.0] = c;
                        orbit.push(next);
                    }
                }
                k += 1;
            }
            orbit.sort();
            classes.push(orbit);
        }
        self.normal = (0..count)
            .map(|i| classes[class_of[i]].len() == 1)
            .collect();
        self.class_of = class_of;
        self.classes = classes;
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = SubId> + '_ {
        (0..self.subgroups.len()).map(SubId)
    }

    pub fn get(&self, id: SubId) -> &Subgroup {
        &self.subgroups[id.0]
    }

    pub fn set(&self, id: SubId) -> &ElementSet {
        self.subgroups[id.0].elements()
    }

    pub fn order_of(&self, id: SubId) -> usize {
        self.subgroups[id.0].order()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    /// A small generating set recorded during enumeration.
    pub fn generators_of(&self, id: SubId) -> &[usize] {
        &self.gens[id.0]
    }

    pub fn trivial(&self) -> SubId {
        SubId(0)
    }

    pub fn top(&self) -> SubId {
        SubId(self.subgroups.len() - 1)
    }

    pub fn lookup(&self, set: &ElementSet) -> Option<SubId> {
        self.index.get(set).copied()
    }

    /// Lattice id of a set known to be a subgroup.
    pub fn id_of(&self, set: &ElementSet) -> SubId {
        self.lookup(set)
            .expect("set is a subgroup, so it is listed in the lattice")
    }

    pub fn generate(&self, elements: &[usize]) -> SubId {
        self.id_of(self.group.generated_by(elements).elements())
    }

    pub fn join(&self, a: SubId, b: SubId) -> SubId {
        if self.is_le(a, b) {
            return b;
        }
        if self.is_le(b, a) {
            return a;
        }
        let mut gens = self.gens[a.0].clone();
        gens.extend_from_slice(&self.gens[b.0]);
        self.generate(&gens)
    }

    pub fn join_all<I: IntoIterator<Item = SubId>>(&self, ids: I) -> SubId {
        ids.into_iter()
            .fold(self.trivial(), |acc, x| self.join(acc, x))
    }

    pub fn meet(&self, a: SubId, b: SubId) -> SubId {
        self.id_of(&self.set(a).intersection(self.set(b)))
    }

    pub fn meet_all<I: IntoIterator<Item = SubId>>(&self, within: SubId, ids: I) -> SubId {
        ids.into_iter().fold(within, |acc, x| self.meet(acc, x))
    }

    /// `AB` when it is a subgroup.
    pub fn product(&self, a: SubId, b: SubId) -> Option<SubId> {
        self.lookup(&self.group.product_set(self.set(a), self.set(b)))
    }

    pub fn is_le(&self, a: SubId, b: SubId) -> bool {
        self.set(a).is_subset(self.set(b))
    }

    pub fn is_lt(&self, a: SubId, b: SubId) -> bool {
        a != b && self.is_le(a, b)
    }

    pub fn conjugate(&self, a: SubId, g: usize) -> SubId {
        self.id_of(&self.group.conjugate_set(self.set(a), g))
    }

    /// Whether every element of `by` normalizes `a`.
    pub fn normalized_by(&self, a: SubId, by: &[usize]) -> bool {
        let s = self.set(a);
        by.iter()
            .all(|&g| s.iter().all(|x| s.contains(self.group.conj(x, g))))
    }

    /// Normality in the whole group.
    pub fn is_normal(&self, a: SubId) -> bool {
        self.normal[a.0]
    }

    pub fn conjugacy_class(&self, a: SubId) -> &[SubId] {
        &self.classes[self.class_of[a.0]]
    }

    pub fn conjugacy_classes(&self) -> &[Vec<SubId>] {
        &self.classes
    }

    /// Subgroups contained in `a`, ascending canonical order.
    pub fn below(&self, a: SubId) -> &[SubId] {
        self.below[a.0].get_or_init(|| {
            let s = self.set(a);
            (0..=a.0)
                .map(SubId)
                .filter(|&b| self.set(b).is_subset(s))
                .collect()
        })
    }

    /// All `(a, b)` with `a ≤ b`.
    pub fn inclusion_pairs(&self) -> Vec<(SubId, SubId)> {
        self.ids()
            .flat_map(|b| self.below(b).iter().map(move |&a| (a, b)))
            .collect()
    }

    pub fn view(&self, ambient: SubId) -> View<'_> {
        View { lat: self, ambient }
    }

    pub fn whole(&self) -> View<'_> {
        self.view(self.top())
    }

    pub fn describe(&self, id: SubId) -> String {
        format!(
            "{id} (order {}) {}",
            self.order_of(id),
            self.group.describe(self.set(id))
        )
    }
}

/// A subgroup of the lattice treated as a group in its own right.
#[derive(Clone, Copy)]
pub struct View<'a> {
    lat: &'a SubgroupLattice,
    ambient: SubId,
}

impl fmt::Debug for View<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "View({} in {})", self.ambient, self.lat.group.id())
    }
}

impl<'a> View<'a> {
    pub fn lattice(&self) -> &'a SubgroupLattice {
        self.lat
    }

    pub fn group(&self) -> &'a Group {
        &self.lat.group
    }

    pub fn ambient(&self) -> SubId {
        self.ambient
    }

    pub fn order(&self) -> usize {
        self.lat.order_of(self.ambient)
    }

    pub fn set(&self) -> &'a ElementSet {
        self.lat.set(self.ambient)
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + 'a {
        self.lat.set(self.ambient).iter()
    }

    /// Generators of the ambient subgroup.
    pub fn generators(&self) -> &'a [usize] {
        self.lat.generators_of(self.ambient)
    }

    /// Subgroups of the ambient, ascending canonical order.
    pub fn subgroups(&self) -> &'a [SubId] {
        self.lat.below(self.ambient)
    }

    pub fn restrict(&self, to: SubId) -> View<'a> {
        debug_assert!(self.lat.is_le(to, self.ambient));
        View {
            lat: self.lat,
            ambient: to,
        }
    }

    pub fn trivial(&self) -> SubId {
        self.lat.trivial()
    }

    pub fn is_normal(&self, a: SubId) -> bool {
        if self.ambient == self.lat.top() {
            return self.lat.is_normal(a);
        }
        self.lat.normalized_by(a, self.generators())
    }

    pub fn conjugates(&self, a: SubId) -> Vec<SubId> {
        let mut out: Vec<SubId> = self.elements().map(|g| self.lat.conjugate(a, g)).collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn normalizer(&self, a: SubId) -> SubId {
        self.lat.id_of(
            self.group()
                .normalizer_in(self.set(), self.lat.get(a))
                .elements(),
        )
    }

    pub fn centralizer(&self, a: &ElementSet) -> SubId {
        self.lat
            .id_of(self.group().centralizer_in(self.set(), a).elements())
    }

    pub fn center(&self) -> SubId {
        self.centralizer(self.set())
    }

    pub fn is_abelian(&self) -> bool {
        self.center() == self.ambient
    }

    pub fn exponent(&self) -> usize {
        self.group().exponent(self.set())
    }

    pub fn derived_subgroup(&self) -> SubId {
        let gens = self.generators();
        // normal closure of commutators of generators
        let mut comms = Vec::new();
        for &a in gens {
            for &b in gens {
                comms.push(self.group().commutator(a, b));
            }
        }
        self.normal_closure_of_elements(&comms)
    }

    fn normal_closure_of_elements(&self, elems: &[usize]) -> SubId {
        let mut current = self.lat.generate(elems);
        loop {
            let mut gens = self.lat.generators_of(current).to_vec();
            for &x in self.lat.generators_of(current) {
                for &g in self.generators() {
                    gens.push(self.group().conj(x, g));
                }
            }
            let next = self.lat.generate(&gens);
            if next == current {
                return current;
            }
            current = next;
        }
    }

    /// Smallest normal subgroup of the ambient containing `a`.
    pub fn normal_closure(&self, a: SubId) -> SubId {
        let gens = self.lat.generators_of(a).to_vec();
        self.normal_closure_of_elements(&gens)
    }

    /// Largest normal subgroup of the ambient contained in `a`.
    pub fn core(&self, a: SubId) -> SubId {
        let set = self.elements().fold(self.lat.set(a).clone(), |acc, g| {
            acc.intersection(&self.group().conjugate_set(self.lat.set(a), g))
        });
        self.lat.id_of(&set)
    }

    pub fn maximal_subgroups(&self) -> Vec<SubId> {
        maximal_subgroups(*self)
    }
}

/// Proper subgroups of the ambient with nothing strictly between them and it.
pub fn maximal_subgroups(v: View<'_>) -> Vec<SubId> {
    let lat = v.lattice();
    let proper: Vec<SubId> = v
        .subgroups()
        .iter()
        .copied()
        .filter(|&s| s != v.ambient())
        .collect();
    proper
        .iter()
        .copied()
        .filter(|&m| {
            !proper
                .iter()
                .any(|&k| k != m && lat.order_of(k) > lat.order_of(m) && lat.is_le(m, k))
        })
        .collect()
}

/// Prime-order subgroups.
pub fn minimal_subgroups(v: View<'_>) -> Vec<SubId> {
    let lat = v.lattice();
    v.subgroups()
        .iter()
        .copied()
        .filter(|&s| crate::group::is_prime(lat.order_of(s)))
        .collect()
}

pub fn normal_subgroups(v: View<'_>, minimal_only: bool) -> Vec<SubId> {
    let normals: Vec<SubId> = v
        .subgroups()
        .iter()
        .copied()
        .filter(|&s| v.is_normal(s))
        .collect();
    if !minimal_only {
        return normals;
    }
    let lat = v.lattice();
    let trivial = v.trivial();
    normals
        .iter()
        .copied()
        .filter(|&n| n != trivial)
        .filter(|&n| {
            !normals
                .iter()
                .any(|&m| m != trivial && m != n && lat.is_le(m, n))
        })
        .collect()
}

/// All Sylow `p`-subgroups; the trivial subgroup alone when `p ∤ |G|`.
pub fn sylow_subgroups(v: View<'_>, p: usize) -> Vec<SubId> {
    let lat = v.lattice();
    let target = p_part(v.order(), p);
    let out: Vec<SubId> = v
        .subgroups()
        .iter()
        .copied()
        .filter(|&s| lat.order_of(s) == target)
        .collect();
    debug_assert!(out.len() % p == 1 % p && v.order().is_multiple_of(out.len()));
    out
}

/// First Sylow `p`-subgroup in canonical order.
pub fn first_sylow(v: View<'_>, p: usize) -> SubId {
    let lat = v.lattice();
    let target = p_part(v.order(), p);
    *v.subgroups()
        .iter()
        .find(|&&s| lat.order_of(s) == target)
        .expect("Sylow subgroups exist")
}

pub fn is_p_subgroup(lat: &SubgroupLattice, a: SubId, p: usize) -> bool {
    is_p_power(lat.order_of(a), p)
}

/// Chief series `1 = N_0 < … < N_t = G`, each step a canonically smallest
/// minimal normal subgroup of the current quotient. With `through`, the
/// series first climbs to that normal subgroup.
pub fn chief_series(v: View<'_>, through: Option<SubId>) -> Result<Vec<SubId>> {
    let lat = v.lattice();
    let normals = normal_subgroups(v, false);
    if let Some(t) = through {
        if !normals.contains(&t) {
            return Err(Error::Precondition(format!(
                "{} is not normal in {}",
                lat.describe(t),
                v.ambient()
            )));
        }
    }
    let mut series = vec![v.trivial()];
    let targets: Vec<SubId> = match through {
        Some(t) => vec![t, v.ambient()],
        None => vec![v.ambient()],
    };
    for target in targets {
        loop {
            let cur = *series.last().expect("series starts at 1");
            if cur == target {
                break;
            }
            let candidates: Vec<SubId> = normals
                .iter()
                .copied()
                .filter(|&m| lat.is_lt(cur, m) && lat.is_le(m, target))
                .collect();
            let next = candidates
                .iter()
                .copied()
                .find(|&m| !candidates.iter().any(|&k| k != m && lat.is_le(k, m)))
                .expect("target itself is a candidate");
            series.push(next);
        }
    }
    Ok(series)
}

/// Orders `|N_{i+1}/N_i|` of consecutive series terms.
pub fn factor_orders(lat: &SubgroupLattice, series: &[SubId]) -> Vec<usize> {
    series
        .windows(2)
        .map(|w| lat.order_of(w[1]) / lat.order_of(w[0]))
        .collect()
}

/// Subnormal subgroups, found by normal-closure descent: `H` is subnormal
/// iff repeatedly taking the normal closure of `H` in the previous term
/// reaches `H`.
pub fn subnormal_subgroups(v: View<'_>) -> Vec<SubId> {
    v.subgroups()
        .iter()
        .copied()
        .filter(|&h| is_subnormal(v, h))
        .collect()
}

pub fn is_subnormal(v: View<'_>, h: SubId) -> bool {
    let mut current = v.ambient();
    loop {
        if current == h {
            return true;
        }
        let next = v.restrict(current).normal_closure(h);
        if next == current {
            return false;
        }
        current = next;
    }
}

/// Primes dividing the ambient order.
pub fn primes(v: View<'_>) -> Vec<usize> {
    prime_divisors(v.order())
}
