//! Global structural predicates of a group (or of any subgroup through a
//! [`View`]).

use crate::group::{is_prime, p_part, prime_divisors};
use crate::lattice::{chief_series, factor_orders, normal_subgroups, sylow_subgroups, SubId, View};

/// Every Sylow subgroup is normal.
pub fn is_nilpotent(v: View<'_>) -> bool {
    prime_divisors(v.order())
        .into_iter()
        .all(|p| sylow_subgroups(v, p).len() == 1)
}

/// A normal subgroup of index `p^a` (the normal `p`-complement) exists.
pub fn is_p_nilpotent(v: View<'_>, p: usize) -> bool {
    let lat = v.lattice();
    let complement = v.order() / p_part(v.order(), p);
    v.subgroups()
        .iter()
        .any(|&n| lat.order_of(n) == complement && v.is_normal(n))
}

/// Every chief factor has prime order.
pub fn is_supersolvable(v: View<'_>) -> bool {
    let lat = v.lattice();
    *lat.supersolvable_cache[v.ambient().index()].get_or_init(|| {
        let series = chief_series(v, None).expect("no `through` constraint");
        factor_orders(lat, &series).into_iter().all(is_prime)
    })
}

/// The derived series reaches the trivial subgroup.
pub fn is_solvable(v: View<'_>) -> bool {
    let mut current = v;
    loop {
        if current.ambient() == v.trivial() {
            return true;
        }
        let next = current.derived_subgroup();
        if next == current.ambient() {
            return false;
        }
        current = v.restrict(next);
    }
}

/// The Sylow `p`-subgroup is normal.
pub fn is_p_closed(v: View<'_>, p: usize) -> bool {
    sylow_subgroups(v, p).len() == 1
}

pub fn is_perfect(v: View<'_>) -> bool {
    v.derived_subgroup() == v.ambient()
}

/// Perfect, nontrivial, and every normal subgroup is central or everything.
pub fn is_quasisimple(v: View<'_>) -> bool {
    if v.order() == 1 || !is_perfect(v) {
        return false;
    }
    let lat = v.lattice();
    let center = v.center();
    normal_subgroups(v, false)
        .into_iter()
        .all(|n| n == v.ambient() || lat.is_le(n, center))
}

/// `G/N` is nilpotent, decided on the lattice: the image of each Sylow
/// subgroup is normal iff `PN ⊴ G`.
pub fn quotient_is_nilpotent(v: View<'_>, n: SubId) -> bool {
    let lat = v.lattice();
    let index = v.order() / lat.order_of(n);
    prime_divisors(index).into_iter().all(|p| {
        let sylow = crate::lattice::first_sylow(v, p);
        v.is_normal(lat.join(sylow, n))
    })
}

/// `G/N` is `p`-nilpotent: some normal `M ≥ N` has `|G:M| = |G:N|_p`.
pub fn quotient_is_p_nilpotent(v: View<'_>, n: SubId, p: usize) -> bool {
    let lat = v.lattice();
    let index = v.order() / lat.order_of(n);
    let target = v.order() / p_part(index, p);
    v.subgroups()
        .iter()
        .any(|&m| lat.order_of(m) == target && lat.is_le(n, m) && v.is_normal(m))
}
