//! S-permutability, `H_sG`, and the supplementation properties.
//!
//! Every quantifier runs over the full lattice; `T = G` is always a
//! candidate supplement.

use std::fmt;

use serde::Serialize;

use crate::char_subgroups::frattini;
use crate::group::prime_divisors;
use crate::lattice::{sylow_subgroups, SubId, View};
use crate::props::is_supersolvable;

/// `AQ = QA` for every Sylow subgroup `Q` of the ambient. `AQ` is a
/// subgroup exactly when `|A||Q|/|A∩Q| = |⟨A,Q⟩|`.
pub fn is_s_permutable(v: View<'_>, a: SubId) -> bool {
    let lat = v.lattice();
    let below = v.subgroups();
    let flags = lat.s_permutable_cache[v.ambient().index()].get_or_init(|| {
        let sylows: Vec<SubId> = prime_divisors(v.order())
            .into_iter()
            .flat_map(|p| sylow_subgroups(v, p))
            .collect();
        below
            .iter()
            .map(|&s| {
                sylows.iter().all(|&q| {
                    let product = lat.order_of(s) * lat.order_of(q) / lat.order_of(lat.meet(s, q));
                    product == lat.order_of(lat.join(s, q))
                })
            })
            .collect()
    });
    let pos = below.binary_search(&a).expect("subgroup of the ambient");
    flags[pos]
}

/// `H_sG`: generated by the subgroups of `h` that are S-permutable in the
/// ambient.
pub fn s_permutable_closure(v: View<'_>, h: SubId) -> SubId {
    let lat = v.lattice();
    lat.join_all(
        lat.below(h)
            .iter()
            .copied()
            .filter(|&k| is_s_permutable(v, k)),
    )
}

/// Every `T` with `HT = G`, i.e. `|H||T|/|H∩T| = |G|`.
pub fn supplements_of(v: View<'_>, h: SubId) -> Vec<SubId> {
    let lat = v.lattice();
    let oh = lat.order_of(h);
    v.subgroups()
        .iter()
        .copied()
        .filter(|&t| oh * lat.order_of(t) == v.order() * lat.order_of(lat.meet(h, t)))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Complemented,
    CSupplemented,
    SPhiSupplemented,
    WeaklySSupplemented,
    WeaklyCPhiSupplemented,
    WeaklySPhiSupplemented,
    HasSupersolubleSupplement,
}

impl Property {
    pub const ALL: [Property; 7] = [
        Property::Complemented,
        Property::CSupplemented,
        Property::SPhiSupplemented,
        Property::WeaklySSupplemented,
        Property::WeaklyCPhiSupplemented,
        Property::WeaklySPhiSupplemented,
        Property::HasSupersolubleSupplement,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Complemented => "complemented",
            Property::CSupplemented => "c_supplemented",
            Property::SPhiSupplemented => "s_phi_supplemented",
            Property::WeaklySSupplemented => "weakly_s_supplemented",
            Property::WeaklyCPhiSupplemented => "weakly_c_phi_supplemented",
            Property::WeaklySPhiSupplemented => "weakly_s_phi_supplemented",
            Property::HasSupersolubleSupplement => "has_supersoluble_supplement",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Everything known about how `subject` is supplemented in `ambient`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupplementProfile {
    pub subject: SubId,
    pub ambient: SubId,
    pub h_core: SubId,
    pub h_s_closure: SubId,
    pub frattini_h: SubId,
    /// Indexed like [`Property::ALL`]; `Some(T)` when the property holds.
    pub witnesses: [Option<SubId>; 7],
}

impl SupplementProfile {
    pub fn holds(&self, p: Property) -> bool {
        self.witness(p).is_some()
    }

    pub fn witness(&self, p: Property) -> Option<SubId> {
        self.witnesses[p as usize]
    }
}

/// Evaluates every property by an independent scan over the supplements.
pub fn supplementation_profile(v: View<'_>, h: SubId) -> SupplementProfile {
    let lat = v.lattice();
    let h_core = v.core(h);
    let h_s_closure = s_permutable_closure(v, h);
    let frattini_h = frattini(v.restrict(h));
    let phi_s = lat.join(frattini_h, h_s_closure);
    let phi_core = lat.join(frattini_h, h_core);
    let sups = supplements_of(v, h);
    let find = |bound: SubId| {
        sups.iter()
            .copied()
            .find(|&t| lat.is_le(lat.meet(h, t), bound))
    };
    let trivial = v.trivial();
    let witnesses = [
        find(trivial),
        find(h_core),
        find(frattini_h),
        find(h_s_closure),
        find(phi_core),
        find(phi_s),
        sups.iter()
            .copied()
            .find(|&t| is_supersolvable(v.restrict(t))),
    ];
    SupplementProfile {
        subject: h,
        ambient: v.ambient(),
        h_core,
        h_s_closure,
        frattini_h,
        witnesses,
    }
}

pub fn has_supersoluble_supplement(v: View<'_>, h: SubId) -> bool {
    supplements_of(v, h)
        .into_iter()
        .any(|t| is_supersolvable(v.restrict(t)))
}

/// Some `T` with `G = HT` and `H ∩ T ≤ Φ(H)H_sG`.
pub fn is_weakly_s_phi_supplemented(v: View<'_>, h: SubId) -> bool {
    weakly_s_phi_witness(v, h).is_some()
}

/// The first supplement (canonical order) witnessing weak SΦ-supplementation.
pub fn weakly_s_phi_witness(v: View<'_>, h: SubId) -> Option<SubId> {
    let lat = v.lattice();
    let bound = lat.join(frattini(v.restrict(h)), s_permutable_closure(v, h));
    supplements_of(v, h)
        .into_iter()
        .find(|&t| lat.is_le(lat.meet(h, t), bound))
}
