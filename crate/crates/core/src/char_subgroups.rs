//! Characteristic subgroups: Frattini, normal core, `O_p`, Fitting, layer,
//! generalized Fitting, 𝔘-hypercenter and nilpotent residual.

use crate::group::{is_prime, prime_divisors};
use crate::lattice::{
    maximal_subgroups, normal_subgroups, subnormal_subgroups, sylow_subgroups, SubId, View,
};
use crate::props::{is_nilpotent, is_quasisimple, quotient_is_nilpotent};

/// Intersection of the maximal subgroups; the trivial group is its own
/// Frattini subgroup.
pub fn frattini(v: View<'_>) -> SubId {
    let lat = v.lattice();
    *lat.frattini_cache[v.ambient().index()]
        .get_or_init(|| lat.meet_all(v.ambient(), maximal_subgroups(v)))
}

/// `H_G`: the intersection of all conjugates of `h`.
pub fn normal_core(v: View<'_>, h: SubId) -> SubId {
    v.core(h)
}

/// `O_p`: intersection of the Sylow `p`-subgroups.
pub fn p_core(v: View<'_>, p: usize) -> SubId {
    v.lattice().meet_all(v.ambient(), sylow_subgroups(v, p))
}

/// `F(G)`: product of the `O_p` over primes dividing the order.
pub fn fitting(v: View<'_>) -> SubId {
    let lat = v.lattice();
    let f = lat.join_all(prime_divisors(v.order()).into_iter().map(|p| p_core(v, p)));
    debug_assert!(is_nilpotent(v.restrict(f)));
    f
}

/// Subnormal quasisimple subgroups, and the subgroup `E(G)` they generate.
pub fn components_and_layer(v: View<'_>) -> (Vec<SubId>, SubId) {
    let lat = v.lattice();
    let components: Vec<SubId> = subnormal_subgroups(v)
        .into_iter()
        .filter(|&h| is_quasisimple(v.restrict(h)))
        .collect();
    let layer = lat.join_all(components.iter().copied());
    (components, layer)
}

pub fn layer(v: View<'_>) -> SubId {
    components_and_layer(v).1
}

/// `F*(G) = E(G)F(G)`.
pub fn generalized_fitting(v: View<'_>) -> SubId {
    let lat = v.lattice();
    lat.join(layer(v), fitting(v))
}

/// `Z_𝔘(G)`: iterated preimage of the product of prime-order minimal normal
/// subgroups of the current quotient.
pub fn u_hypercenter(v: View<'_>) -> SubId {
    let lat = v.lattice();
    let normals = normal_subgroups(v, false);
    let mut current = v.trivial();
    loop {
        // minimal normal subgroups of G/current correspond to normal M > current
        // minimal over it; the factor has prime order iff |M : current| is prime
        let above: Vec<SubId> = normals
            .iter()
            .copied()
            .filter(|&m| lat.is_lt(current, m))
            .collect();
        let prime_steps: Vec<SubId> = above
            .iter()
            .copied()
            .filter(|&m| !above.iter().any(|&k| k != m && lat.is_le(k, m)))
            .filter(|&m| is_prime(lat.order_of(m) / lat.order_of(current)))
            .collect();
        let next = prime_steps
            .into_iter()
            .fold(current, |acc, m| lat.join(acc, m));
        if next == current {
            return current;
        }
        current = next;
    }
}

/// `G^𝔑`: intersection of the normal subgroups with nilpotent quotient.
pub fn nilpotent_residual(v: View<'_>) -> SubId {
    let lat = v.lattice();
    let residual = lat.meet_all(
        v.ambient(),
        normal_subgroups(v, false)
            .into_iter()
            .filter(|&n| quotient_is_nilpotent(v, n)),
    );
    debug_assert!(quotient_is_nilpotent(v, residual));
    residual
}
