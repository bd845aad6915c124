//! Naive reference implementations working straight from the Cayley table.
//! Nothing here calls into the lattice engine.

#![allow(dead_code)]

use std::collections::BTreeSet;

use fusionlab::Group;

pub type Set = BTreeSet<usize>;

pub fn closure(g: &Group, seed: impl IntoIterator<Item = usize>) -> Set {
    let mut set: Set = seed.into_iter().collect();
    set.insert(0);
    loop {
        let mut grown = set.clone();
        for &a in &set {
            for &b in &set {
                grown.insert(g.mul(a, b));
            }
        }
        if grown.len() == set.len() {
            return set;
        }
        set = grown;
    }
}

/// Every subgroup, by repeatedly adjoining single elements to known ones.
pub fn all_subgroups(g: &Group) -> BTreeSet<Set> {
    let mut found: BTreeSet<Set> = BTreeSet::new();
    let mut frontier = vec![closure(g, [])];
    found.insert(frontier[0].clone());
    while let Some(h) = frontier.pop() {
        for x in 0..g.order() {
            if h.contains(&x) {
                continue;
            }
            let k = closure(g, h.iter().copied().chain([x]));
            if found.insert(k.clone()) {
                frontier.push(k);
            }
        }
    }
    found
}

/// Subgroups generated by at most `k` elements, by brute force over subsets.
pub fn subgroups_by_subsets(g: &Group, k: usize) -> BTreeSet<Set> {
    fn rec(g: &Group, start: usize, chosen: &mut Vec<usize>, k: usize, out: &mut BTreeSet<Set>) {
        out.insert(closure(g, chosen.iter().copied()));
        if chosen.len() == k {
            return;
        }
        for x in start..g.order() {
            chosen.push(x);
            rec(g, x + 1, chosen, k, out);
            chosen.pop();
        }
    }
    let mut out = BTreeSet::new();
    rec(g, 1, &mut Vec::new(), k, &mut out);
    out
}

pub fn conj_set(g: &Group, h: &Set, x: usize) -> Set {
    h.iter().map(|&a| g.mul(g.mul(g.inv(x), a), x)).collect()
}

/// `h` normal in `within`.
pub fn normal_in(g: &Group, h: &Set, within: &Set) -> bool {
    within.iter().all(|&x| conj_set(g, h, x) == *h)
}

pub fn product(g: &Group, a: &Set, b: &Set) -> Set {
    a.iter()
        .flat_map(|&x| b.iter().map(move |&y| g.mul(x, y)))
        .collect()
}

pub fn centralizer(g: &Group, within: &Set, of: &Set) -> Set {
    within
        .iter()
        .copied()
        .filter(|&x| of.iter().all(|&a| g.mul(x, a) == g.mul(a, x)))
        .collect()
}

pub fn subgroups_of<'a>(all: &'a BTreeSet<Set>, h: &'a Set) -> impl Iterator<Item = &'a Set> + 'a {
    all.iter().filter(move |k| k.is_subset(h))
}

/// Nilpotent iff the upper central series reaches the whole subgroup.
pub fn is_nilpotent(g: &Group, h: &Set) -> bool {
    let mut z: Set = [0].into_iter().collect();
    loop {
        // Z_{i+1} = { x : [x, y] ∈ Z_i for all y ∈ h }
        let next: Set = h
            .iter()
            .copied()
            .filter(|&x| h.iter().all(|&y| z.contains(&g.commutator(x, y))))
            .collect();
        if next == *h {
            return true;
        }
        if next.len() == z.len() {
            return false;
        }
        z = next;
    }
}

pub fn derived(g: &Group, h: &Set) -> Set {
    closure(
        g,
        h.iter()
            .flat_map(|&x| h.iter().map(move |&y| g.commutator(x, y))),
    )
}

/// Largest normal nilpotent subgroup, checked to contain every other one.
pub fn fitting(g: &Group, all: &BTreeSet<Set>) -> Set {
    let whole: Set = (0..g.order()).collect();
    let cands: Vec<&Set> = all
        .iter()
        .filter(|h| normal_in(g, h, &whole) && is_nilpotent(g, h))
        .collect();
    let best = (*cands.iter().max_by_key(|h| h.len()).unwrap()).clone();
    assert!(cands.iter().all(|h| h.is_subset(&best)));
    best
}

/// Subnormal via the descending normal-closure series.
pub fn is_subnormal(g: &Group, h: &Set) -> bool {
    let mut cur: Set = (0..g.order()).collect();
    loop {
        if cur == *h {
            return true;
        }
        let closure_in = closure(
            g,
            cur.iter()
                .flat_map(|&x| h.iter().map(move |&a| conj(g, a, x))),
        );
        if closure_in == cur {
            return false;
        }
        cur = closure_in;
    }
}

fn conj(g: &Group, a: usize, x: usize) -> usize {
    g.mul(g.mul(g.inv(x), a), x)
}

/// Perfect, and every normal subgroup is central or supplements the center.
pub fn is_quasisimple(g: &Group, h: &Set, all: &BTreeSet<Set>) -> bool {
    if h.len() == 1 || derived(g, h) != *h {
        return false;
    }
    let z = centralizer(g, h, h);
    subgroups_of(all, h)
        .filter(|n| normal_in(g, n, h))
        .all(|n| n.is_subset(&z) || closure(g, n.iter().chain(z.iter()).copied()) == *h)
}

/// `F*(G) = E(G)F(G)` with `E(G)` generated by the subnormal quasisimple
/// subgroups.
pub fn generalized_fitting(g: &Group, all: &BTreeSet<Set>) -> Set {
    let f = fitting(g, all);
    let comps: Vec<&Set> = all
        .iter()
        .filter(|h| is_quasisimple(g, h, all) && is_subnormal(g, h))
        .collect();
    closure(
        g,
        f.iter()
            .copied()
            .chain(comps.into_iter().flatten().copied()),
    )
}

/// Elements that can be dropped from every generating set.
pub fn non_generators(g: &Group, all: &BTreeSet<Set>) -> Set {
    let n = g.order();
    (0..n)
        .filter(|&x| {
            all.iter()
                .all(|h| h.len() == n || closure(g, h.iter().copied().chain([x])).len() < n)
        })
        .collect()
}

/// `A` permutes with every Sylow subgroup: `AQ` is closed.
pub fn is_s_permutable(g: &Group, a: &Set, sylows: &[Set]) -> bool {
    sylows.iter().all(|q| {
        let aq = product(g, a, q);
        closure(g, aq.iter().copied()) == aq
    })
}

pub fn sylows(g: &Group, all: &BTreeSet<Set>) -> Vec<Set> {
    let n = g.order();
    let mut out = Vec::new();
    for p in (2..=n).filter(|p| n.is_multiple_of(*p) && (2..*p).all(|d| p % d != 0)) {
        let mut pp = 1;
        while n.is_multiple_of(pp * p) {
            pp *= p;
        }
        out.extend(all.iter().filter(|h| h.len() == pp).cloned());
    }
    out
}

/// Intersection of the maximal subgroups of `h` (`h` itself if trivial).
pub fn frattini(all: &BTreeSet<Set>, h: &Set) -> Set {
    let subs: Vec<&Set> = subgroups_of(all, h).filter(|k| k.len() < h.len()).collect();
    let maximal: Vec<&Set> = subs
        .iter()
        .copied()
        .filter(|k| !subs.iter().any(|m| k.len() < m.len() && k.is_subset(m)))
        .collect();
    let mut out = h.clone();
    for m in maximal {
        out = out.intersection(m).copied().collect();
    }
    out
}

/// Some `T` with `G = HT` and `H ∩ T ≤ Φ(H)H_sG`.
pub fn is_weakly_s_phi_supplemented(g: &Group, all: &BTreeSet<Set>, h: &Set) -> bool {
    let sylows = sylows(g, all);
    let hs = closure(
        g,
        subgroups_of(all, h)
            .filter(|a| is_s_permutable(g, a, &sylows))
            .flatten()
            .copied(),
    );
    let bound = closure(g, frattini(all, h).into_iter().chain(hs));
    all.iter().any(|t| {
        product(g, h, t).len() == g.order() && h.intersection(t).all(|x| bound.contains(x))
    })
}

pub fn is_complemented(g: &Group, all: &BTreeSet<Set>, h: &Set) -> bool {
    all.iter()
        .any(|t| product(g, h, t).len() == g.order() && h.intersection(t).count() == 1)
}
