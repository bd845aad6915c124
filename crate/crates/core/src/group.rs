//! Finite groups as multiplication tables, plus the element and subgroup
//! arithmetic everything else is built on.
//!
//! Conventions: the identity is element 0, `mul(a, b)` is `a·b` with `a`
//! applied first when elements are permutations, and conjugation is
//! `x^g = g⁻¹·x·g`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::perm::Perm;

pub const DEFAULT_MAX_ORDER: usize = 5000;

/// Orders up to this bound get an exhaustive associativity check.
pub const FULL_ASSOCIATIVITY_LIMIT: usize = 512;

#[derive(Clone)]
pub struct Group {
    id: Arc<str>,
    order: usize,
    table: Arc<[u32]>,
    inverse: Arc<[u32]>,
    labels: Arc<[String]>,
    generators: Arc<[usize]>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({}, order {})", self.id, self.order)
    }
}

/// A subgroup of some parent group, kept as its member set.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Subgroup(ElementSet);

impl Subgroup {
    /// Validates closure and the Lagrange condition.
    pub fn new(group: &Group, members: ElementSet) -> Result<Subgroup> {
        if members.universe() != group.order() || !members.contains(0) {
            return Err(Error::Precondition(
                "subgroup must contain the identity".into(),
            ));
        }
        for a in &members {
            if !members.contains(group.inv(a)) {
                return Err(Error::Precondition(format!(
                    "set not closed under inverse at {}",
                    group.label(a)
                )));
            }
            for b in &members {
                if !members.contains(group.mul(a, b)) {
                    return Err(Error::Precondition(format!(
                        "set not closed under product at {}·{}",
                        group.label(a),
                        group.label(b)
                    )));
                }
            }
        }
        if !group.order().is_multiple_of(members.len()) {
            return Err(Error::Precondition(
                "subgroup order does not divide group order".into(),
            ));
        }
        Ok(Subgroup(members))
    }

    pub(crate) fn from_closed(members: ElementSet) -> Subgroup {
        Subgroup(members)
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn elements(&self) -> &ElementSet {
        &self.0
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.contains(x)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn into_set(self) -> ElementSet {
        self.0
    }
}

/// A homomorphism between two groups, given by its image array.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    pub source: Arc<str>,
    pub target: Arc<str>,
    pub image: Vec<usize>,
}

impl GroupHom {
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn image_of(&self, set: &ElementSet, target_order: usize) -> ElementSet {
        ElementSet::from_indices(target_order, set.iter().map(|x| self.image[x]))
    }

    pub fn preimage_of(&self, set: &ElementSet) -> ElementSet {
        ElementSet::from_indices(
            self.image.len(),
            (0..self.image.len()).filter(|&x| set.contains(self.image[x])),
        )
    }

    /// Checks `image[a·b] = image[a]·image[b]` on every pair of the source.
    pub fn is_homomorphism(&self, source: &Group, target: &Group) -> bool {
        if self.image.len() != source.order() {
            return false;
        }
        (0..source.order()).all(|a| {
            (0..source.order())
                .all(|b| self.image[source.mul(a, b)] == target.mul(self.image[a], self.image[b]))
        })
    }
}

fn check_limit(id: &str, n: usize, max_order: usize) -> Result<()> {
    if n > max_order {
        return Err(Error::ResourceLimit {
            group: id.to_string(),
            what: "group order",
            limit: max_order,
        });
    }
    Ok(())
}

impl Group {
    /// Closes `generators` under a multiplication, enumerating elements by
    /// BFS from `identity` with generators applied in input order.
    pub fn from_closure<T, M, L>(
        id: &str,
        identity: T,
        generators: &[T],
        mul: M,
        label: L,
        max_order: usize,
    ) -> Result<Group>
    where
        T: Clone + Eq + Hash,
        M: Fn(&T, &T) -> T,
        L: Fn(&T) -> String,
    {
        let ng = generators.len();
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::from([(identity, 0)]);
        // parent[b] = (b', i) with b = b'·gen_i
        let mut parent = vec![(0usize, 0usize)];
        let mut right: Vec<usize> = Vec::new();
        let mut i = 0;
        while i < elems.len() {
            for (gi, g) in generators.iter().enumerate() {
                let y = mul(&elems[i], g);
                let idx = match index.get(&y) {
                    Some(&j) => j,
                    None => {
                        let j = elems.len();
                        check_limit(id, j + 1, max_order)?;
                        index.insert(y.clone(), j);
                        elems.push(y);
                        parent.push((i, gi));
                        j
                    }
                };
                right.push(idx);
            }
            i += 1;
        }
        let n = elems.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            let row = &mut table[a * n..(a + 1) * n];
            row[0] = a as u32;
            for b in 1..n {
                let (pb, gi) = parent[b];
                row[b] = right[row[pb] as usize * ng + gi] as u32;
            }
        }
        let labels = elems.iter().map(label).collect();
        let gens: Vec<usize> = (0..ng).map(|gi| right[gi]).filter(|&g| g != 0).collect();
        let group = Group::assemble(id, n, table, labels, Some(gens))?;
        group.check_associativity(false)?;
        Ok(group)
    }

    /// Closure of permutation generators on `{1..degree}`, labelled in cycle notation.
    pub fn from_permutation_generators(
        id: &str,
        degree: usize,
        generators: &[Perm],
        max_order: usize,
    ) -> Result<Group> {
        for g in generators {
            if g.degree() != degree {
                return Err(Error::Parameter(format!(
                    "generator {g} has degree {} but {degree} was declared",
                    g.degree()
                )));
            }
        }
        Group::from_closure(
            id,
            Perm::identity(degree),
            generators,
            |a, b| a.then(b),
            |p| p.to_string(),
            max_order,
        )
    }

    /// Validates a full Cayley table (identity at 0, inverses, associativity).
    pub fn from_cayley_table(id: &str, rows: &[Vec<usize>]) -> Result<Group> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::MalformedTable("empty table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedTable(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for &x in row {
                if x >= n {
                    return Err(Error::MalformedTable(format!(
                        "entry {x} in row {i} out of range"
                    )));
                }
                table.push(x as u32);
            }
        }
        let labels = (0..n).map(|i| format!("g{i}")).collect();
        let group = Group::assemble(id, n, table, labels, None)?;
        group.check_associativity(true)?;
        Ok(group)
    }

    /// Identity and inverse checks, then derives the inverse array.
    fn assemble(
        id: &str,
        n: usize,
        table: Vec<u32>,
        labels: Vec<String>,
        generators: Option<Vec<usize>>,
    ) -> Result<Group> {
        for a in 0..n {
            if table[a] as usize != a || table[a * n] as usize != a {
                return Err(Error::MalformedTable(format!(
                    "element 0 is not an identity (fails at {a})"
                )));
            }
        }
        let mut inverse = vec![0u32; n];
        for a in 0..n {
            let row = &table[a * n..(a + 1) * n];
            let b = row
                .iter()
                .position(|&x| x == 0)
                .ok_or_else(|| Error::MalformedTable(format!("no inverse for {a}")))?;
            if table[b * n + a] != 0 {
                return Err(Error::MalformedTable(format!(
                    "right inverse {b} of {a} is not a left inverse"
                )));
            }
            inverse[a] = b as u32;
        }
        let mut group = Group {
            id: Arc::from(id),
            order: n,
            table: table.into(),
            inverse: inverse.into(),
            labels: labels.into(),
            generators: Arc::from(Vec::new()),
        };
        let gens = match generators {
            Some(g) => g,
            None => group.greedy_generators(),
        };
        group.generators = gens.into();
        Ok(group)
    }

    /// Exhaustive up to [`FULL_ASSOCIATIVITY_LIMIT`] when `exhaustive`,
    /// otherwise `10·order` deterministic random triples.
    pub fn check_associativity(&self, exhaustive: bool) -> Result<()> {
        let n = self.order;
        let fail = |a: usize, b: usize, c: usize| {
            Error::MalformedTable(format!("associativity fails for triple ({a}, {b}, {c})"))
        };
        if exhaustive && n <= FULL_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    for c in 0..n {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return Err(fail(a, b, c));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ n as u64);
            for _ in 0..10 * n {
                let (a, b, c) = (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                );
                if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                    return Err(fail(a, b, c));
                }
            }
        }
        Ok(())
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = ElementSet::singleton(self.order, 0);
        for x in 0..self.order {
            if !current.contains(x) {
                gens.push(x);
                current = self.closure(&current, &gens);
            }
        }
        gens
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn id_arc(&self) -> Arc<str> {
        self.id.clone()
    }

    pub fn with_id(mut self, id: &str) -> Group {
        self.id = Arc::from(id);
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `g⁻¹·x·g`.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// A generating set fixed at construction.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn table_row(&self, a: usize) -> Vec<usize> {
        (0..self.order).map(|b| self.mul(a, b)).collect()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|&a| {
            self.generators
                .iter()
                .all(|&b| self.mul(a, b) == self.mul(b, a))
        })
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup(ElementSet::full(self.order))
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup(ElementSet::singleton(self.order, 0))
    }

    /// Smallest subgroup containing `start` and `extra`, where `start` is
    /// already closed or a seed containing the identity.
    fn closure(&self, start: &ElementSet, extra: &[usize]) -> ElementSet {
        let mut members = start.clone();
        members.insert(0);
        let mut gens: Vec<usize> = extra.to_vec();
        gens.extend(start.iter().filter(|&x| x != 0));
        gens.sort_unstable();
        gens.dedup();
        let mut queue: VecDeque<usize> = members.iter().collect();
        for &g in extra {
            if members.insert(g) {
                queue.push_back(g);
            }
        }
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.mul(x, g);
                if members.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        members
    }

    /// Closure of a seed under product (inverses follow in a finite group).
    pub fn generated_subgroup(&self, seed: &ElementSet) -> Subgroup {
        let gens: Vec<usize> = seed.iter().filter(|&x| x != 0).collect();
        Subgroup(self.closure(&ElementSet::singleton(self.order, 0), &gens))
    }

    pub fn generated_by(&self, elements: &[usize]) -> Subgroup {
        Subgroup(self.closure(&ElementSet::singleton(self.order, 0), elements))
    }

    /// `⟨H, extra⟩` for a subgroup `H`.
    pub fn extend_subgroup(&self, h: &Subgroup, extra: &[usize]) -> Subgroup {
        if extra.iter().all(|&x| h.contains(x)) {
            return h.clone();
        }
        Subgroup(self.closure(h.elements(), extra))
    }

    pub fn product_set(&self, a: &ElementSet, b: &ElementSet) -> ElementSet {
        let mut out = ElementSet::empty(self.order);
        for x in a {
            for y in b {
                out.insert(self.mul(x, y));
            }
        }
        out
    }

    pub fn conjugate_set(&self, a: &ElementSet, g: usize) -> ElementSet {
        ElementSet::from_indices(self.order, a.iter().map(|x| self.conj(x, g)))
    }

    pub fn conjugate_subgroup(&self, a: &Subgroup, g: usize) -> Subgroup {
        Subgroup(self.conjugate_set(a.elements(), g))
    }

    /// Elements of `within` commuting with every element of `a`.
    pub fn centralizer_in(&self, within: &ElementSet, a: &ElementSet) -> Subgroup {
        let members: Vec<usize> = a.iter().collect();
        Subgroup(ElementSet::from_indices(
            self.order,
            within
                .iter()
                .filter(|&g| members.iter().all(|&x| self.mul(g, x) == self.mul(x, g))),
        ))
    }

    pub fn centralizer(&self, a: &ElementSet) -> Subgroup {
        self.centralizer_in(&ElementSet::full(self.order), a)
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer(&ElementSet::full(self.order))
    }

    /// Elements of `within` normalizing `a`.
    pub fn normalizer_in(&self, within: &ElementSet, a: &Subgroup) -> Subgroup {
        Subgroup(ElementSet::from_indices(
            self.order,
            within
                .iter()
                .filter(|&g| a.elements().iter().all(|x| a.contains(self.conj(x, g)))),
        ))
    }

    pub fn normalizer(&self, a: &Subgroup) -> Subgroup {
        self.normalizer_in(&ElementSet::full(self.order), a)
    }

    pub fn is_normal(&self, a: &Subgroup) -> bool {
        self.generators
            .iter()
            .all(|&g| a.elements().iter().all(|x| a.contains(self.conj(x, g))))
    }

    /// Lcm of element orders over `set`.
    pub fn exponent(&self, set: &ElementSet) -> usize {
        set.iter()
            .map(|x| self.element_order(x))
            .fold(1, |acc, k| acc / gcd(acc, k) * k)
    }

    /// `G/N`, cosets indexed by their smallest member and sorted by it.
    pub fn quotient_group(&self, n: &Subgroup) -> Result<(Group, GroupHom)> {
        if n.elements().universe() != self.order || !self.is_normal(n) {
            return Err(Error::Precondition(format!(
                "subgroup of order {} is not normal in {}",
                n.order(),
                self.id
            )));
        }
        let mut rep = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for a in 0..self.order {
            if rep[a] != usize::MAX {
                continue;
            }
            // a is the smallest member of its coset since cosets are visited in index order
            for m in n.elements() {
                rep[self.mul(a, m)] = a;
            }
            reps.push(a);
        }
        let q = reps.len();
        let mut slot = vec![0usize; self.order];
        for (i, &r) in reps.iter().enumerate() {
            slot[r] = i;
        }
        let image: Vec<usize> = (0..self.order).map(|a| slot[rep[a]]).collect();
        let mut table = Vec::with_capacity(q * q);
        for &a in &reps {
            for &b in &reps {
                table.push(image[self.mul(a, b)] as u32);
            }
        }
        let id = format!("{}/{}", self.id, n.order());
        let labels = reps
            .iter()
            .map(|&r| format!("[{}]", self.label(r)))
            .collect();
        let gens: Vec<usize> = self
            .generators
            .iter()
            .map(|&g| image[g])
            .filter(|&g| g != 0)
            .collect();
        let quotient = Group::assemble(&id, q, table, labels, Some(gens))?;
        let hom = GroupHom {
            source: self.id.clone(),
            target: quotient.id.clone(),
            image,
        };
        Ok((quotient, hom))
    }

    /// `H` as a group in its own right (members in ascending index order)
    /// together with the embedding into `self`.
    pub fn subgroup_as_group(&self, h: &Subgroup, id: &str) -> (Group, GroupHom) {
        let members = h.elements().to_vec();
        let k = members.len();
        let mut slot = vec![usize::MAX; self.order];
        for (i, &x) in members.iter().enumerate() {
            slot[x] = i;
        }
        let mut table = Vec::with_capacity(k * k);
        for &a in &members {
            for &b in &members {
                table.push(slot[self.mul(a, b)] as u32);
            }
        }
        let labels = members.iter().map(|&x| self.label(x).to_string()).collect();
        let sub = Group::assemble(id, k, table, labels, None)
            .expect("restriction of a valid group table is a group");
        let hom = GroupHom {
            source: sub.id.clone(),
            target: self.id.clone(),
            image: members,
        };
        (sub, hom)
    }

    /// Direct product with elements `(a, b)` at index `a·|B| + b`.
    pub fn direct_product(&self, other: &Group, id: &str) -> Group {
        let (n, m) = (self.order, other.order);
        let total = n * m;
        let mut table = Vec::with_capacity(total * total);
        for x in 0..total {
            for y in 0..total {
                let a = self.mul(x / m, y / m);
                let b = other.mul(x % m, y % m);
                table.push((a * m + b) as u32);
            }
        }
        let labels = (0..total)
            .map(|x| format!("({}, {})", self.label(x / m), other.label(x % m)))
            .collect();
        let mut gens: Vec<usize> = self.generators.iter().map(|&g| g * m).collect();
        gens.extend(other.generators.iter().copied());
        gens.retain(|&g| g != 0);
        Group::assemble(id, total, table, labels, Some(gens))
            .expect("direct product of groups is a group")
    }

    pub fn describe(&self, set: &ElementSet) -> String {
        let items: Vec<&str> = set.iter().map(|x| self.label(x)).collect();
        format!("{{{}}}", items.join(", "))
    }
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Distinct prime divisors in ascending order.
pub fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && prime_divisors(n) == [n]
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: usize, p: usize) -> usize {
    let mut out = 1;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        out *= p;
    }
    out
}

pub fn is_p_power(n: usize, p: usize) -> bool {
    p_part(n, p) == n
}
