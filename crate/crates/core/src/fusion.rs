//! The fusion system `F_S(G)` of a group on a Sylow `p`-subgroup.
//!
//! Morphisms are conjugation maps `x ↦ x^g` between subgroups of `S`, so
//! every question reduces to conjugation inside the ambient group.

use std::collections::HashSet;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::group::{p_part, Group};
use crate::lattice::{all_subgroups, first_sylow, SubId, View};

#[derive(Clone, Debug)]
pub struct FusionSystem<'a> {
    view: View<'a>,
    prime: usize,
    sylow: SubId,
    /// For `x ∈ S` (indexed by group element), the conjugates of `x` in `S`.
    fused: Vec<Option<ElementSet>>,
}

/// The restriction to `source` of conjugation by `witness`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionMorphism {
    pub source: SubId,
    pub target: SubId,
    pub witness: usize,
    /// Images of the members of `source`, in ascending element order.
    pub images: Vec<usize>,
}

impl FusionMorphism {
    pub fn is_identity(&self, members: &ElementSet) -> bool {
        members.iter().zip(&self.images).all(|(x, &y)| x == y)
    }
}

/// `F_S(G)` with `S` the first Sylow `p`-subgroup in canonical order.
pub fn fusion_system(v: View<'_>, p: usize) -> Result<FusionSystem<'_>> {
    if p < 2 || !v.order().is_multiple_of(p) {
        return Err(Error::Precondition(format!(
            "{p} does not divide the group order {}",
            v.order()
        )));
    }
    Ok(FusionSystem::over(v, p, first_sylow(v, p)))
}

/// `F_T(H)` for an explicitly chosen Sylow subgroup `T` of the view's ambient.
pub fn fusion_system_on(v: View<'_>, p: usize, sylow: SubId) -> Result<FusionSystem<'_>> {
    let lat = v.lattice();
    if !lat.is_le(sylow, v.ambient()) || lat.order_of(sylow) != p_part(v.order(), p) {
        return Err(Error::Precondition(format!(
            "{sylow} is not a Sylow {p}-subgroup of {}",
            v.ambient()
        )));
    }
    Ok(FusionSystem::over(v, p, sylow))
}

impl<'a> FusionSystem<'a> {
    fn over(view: View<'a>, prime: usize, sylow: SubId) -> FusionSystem<'a> {
        let lat = view.lattice();
        let g = view.group();
        let s = lat.set(sylow);
        debug_assert_eq!(s.len(), p_part(view.order(), prime));
        let mut fused: Vec<Option<ElementSet>> = vec![None; g.order()];
        for x in s.iter() {
            if fused[x].is_some() {
                continue;
            }
            let class = ElementSet::from_indices(
                g.order(),
                view.elements()
                    .map(|h| g.conj(x, h))
                    .filter(|&y| s.contains(y)),
            );
            // fusion in S is an equivalence relation: share the class
            for y in class.iter() {
                fused[y] = Some(class.clone());
            }
        }
        FusionSystem {
            view,
            prime,
            sylow,
            fused,
        }
    }

    pub fn view(&self) -> View<'a> {
        self.view
    }

    pub fn prime(&self) -> usize {
        self.prime
    }

    pub fn sylow(&self) -> SubId {
        self.sylow
    }

    /// Every subgroup of `S`, canonical order.
    pub fn objects(&self) -> &'a [SubId] {
        self.view.lattice().below(self.sylow)
    }

    fn check_object(&self, p: SubId) -> Result<()> {
        if self.view.lattice().is_le(p, self.sylow) {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "subgroup {p} is not contained in the Sylow subgroup {}",
                self.sylow
            )))
        }
    }

    fn s_view(&self) -> View<'a> {
        self.view.restrict(self.sylow)
    }

    /// `P^F`: the conjugates of `p` that lie in `S`.
    pub fn f_conjugacy_class(&self, p: SubId) -> Result<Vec<SubId>> {
        self.check_object(p)?;
        let lat = self.view.lattice();
        let mut out: Vec<SubId> = self
            .view
            .elements()
            .map(|g| lat.conjugate(p, g))
            .filter(|&q| lat.is_le(q, self.sylow))
            .collect();
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// `Hom_F(P, Q)`, deduplicated by image array; witnesses are the
    /// smallest inducing elements.
    pub fn morphism_set(&self, p: SubId, q: SubId) -> Result<Vec<FusionMorphism>> {
        self.check_object(p)?;
        self.check_object(q)?;
        let lat = self.view.lattice();
        let g = self.view.group();
        let members = lat.set(p);
        let target = lat.set(q);
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for w in self.view.elements() {
            let images: Vec<usize> = members.iter().map(|x| g.conj(x, w)).collect();
            if images.iter().all(|&y| target.contains(y)) && seen.insert(images.clone()) {
                out.push(FusionMorphism {
                    source: p,
                    target: q,
                    witness: w,
                    images,
                });
            }
        }
        Ok(out)
    }

    /// No element of `p` is fused to an element of `S` outside `p`.
    pub fn is_strongly_f_closed(&self, p: SubId) -> Result<bool> {
        self.check_object(p)?;
        let members = self.view.lattice().set(p);
        Ok(members.iter().all(|x| {
            self.fused[x]
                .as_ref()
                .expect("element of S")
                .is_subset(members)
        }))
    }

    /// All strongly `F`-closed subgroups, canonical order (includes `1` and `S`).
    pub fn strongly_closed_subgroups(&self) -> Vec<SubId> {
        let out: Vec<SubId> = self
            .objects()
            .iter()
            .copied()
            .filter(|&p| self.is_strongly_f_closed(p).expect("object"))
            .collect();
        debug_assert!(out.iter().all(|&p| self.s_view().is_normal(p)));
        out
    }

    pub fn is_fully_normalized(&self, p: SubId) -> Result<bool> {
        let lat = self.view.lattice();
        let s = self.s_view();
        let own = lat.order_of(s.normalizer(p));
        Ok(self
            .f_conjugacy_class(p)?
            .into_iter()
            .all(|q| lat.order_of(s.normalizer(q)) <= own))
    }

    /// `C_S(Q) ≤ Q` for every `Q ∈ P^F`.
    pub fn is_f_centric(&self, p: SubId) -> Result<bool> {
        let lat = self.view.lattice();
        let s = self.s_view();
        Ok(self
            .f_conjugacy_class(p)?
            .into_iter()
            .all(|q| lat.is_le(s.centralizer(lat.set(q)), q)))
    }

    /// `Out_F(Q) ≅ N_G(Q) / Q·C_G(Q)`.
    pub fn out_f(&self, q: SubId) -> Result<Group> {
        self.check_object(q)?;
        let lat = self.view.lattice();
        let g = self.view.group();
        let n = self.view.normalizer(q);
        let c = self.view.centralizer(lat.set(q));
        let qc = lat.join(q, c);
        let (ng, embed) = g.subgroup_as_group(lat.get(n), &format!("N({q})"));
        let inner = embed.preimage_of(lat.set(qc));
        let inner = crate::group::Subgroup::new(&ng, inner)?;
        let (out, _) = ng.quotient_group(&inner)?;
        Ok(out.with_id(&format!("Out_F({q})")))
    }

    /// `E*_F`: the essential subgroups together with `S`.
    pub fn essential_star(&self) -> Result<Vec<SubId>> {
        let mut out = Vec::new();
        for &q in self.objects() {
            if q == self.sylow
                || (self.is_f_centric(q)?
                    && self.is_fully_normalized(q)?
                    && has_strongly_p_embedded(&self.out_f(q)?, self.prime)?)
            {
                out.push(q);
            }
        }
        Ok(out)
    }

    /// A chain `1 = S_0 < … < S_n = S` of strongly closed subgroups with
    /// cyclic factors, found depth-first in canonical order.
    pub fn supersolvable_chain(&self) -> Option<Vec<SubId>> {
        let closed = self.strongly_closed_subgroups();
        let mut dead = HashSet::new();
        let mut chain = vec![self.view.trivial()];
        if self.extend_chain(&closed, &mut chain, &mut dead) {
            Some(chain)
        } else {
            None
        }
    }

    fn extend_chain(
        &self,
        closed: &[SubId],
        chain: &mut Vec<SubId>,
        dead: &mut HashSet<SubId>,
    ) -> bool {
        let lat = self.view.lattice();
        let cur = *chain.last().expect("nonempty chain");
        if cur == self.sylow {
            return true;
        }
        if dead.contains(&cur) {
            return false;
        }
        for &next in closed {
            if lat.is_lt(cur, next) && cyclic_over(self.view, cur, next) {
                chain.push(next);
                if self.extend_chain(closed, chain, dead) {
                    return true;
                }
                chain.pop();
            }
        }
        dead.insert(cur);
        false
    }

    pub fn is_supersolvable_fusion(&self) -> bool {
        self.supersolvable_chain().is_some()
    }

    /// `N_F(Q) = F_{N_S(Q)}(N_G(Q))` for fully normalized `Q`.
    pub fn normalizer_fusion_system(&self, q: SubId) -> Result<FusionSystem<'a>> {
        if !self.is_fully_normalized(q)? {
            return Err(Error::Precondition(format!("{q} is not fully normalized")));
        }
        let lat = self.view.lattice();
        let n = self.view.normalizer(q);
        let ns = lat.meet(n, self.sylow);
        if lat.order_of(ns) != p_part(lat.order_of(n), self.prime) {
            return Err(Error::Precondition(format!(
                "N_S({q}) is not a Sylow subgroup of N_G({q})"
            )));
        }
        Ok(FusionSystem::over(self.view.restrict(n), self.prime, ns))
    }
}

/// `upper / lower` is cyclic (with `lower ⊴ upper`).
fn cyclic_over(v: View<'_>, lower: SubId, upper: SubId) -> bool {
    let lat = v.lattice();
    lat.set(upper).iter().any(|x| {
        let mut gens = lat.generators_of(lower).to_vec();
        gens.push(x);
        lat.generate(&gens) == upper
    })
}

/// A proper `H < X` with `p | |H|` and `p ∤ |H ∩ H^g|` for all `g ∉ H`.
pub fn has_strongly_p_embedded(x: &Group, p: usize) -> Result<bool> {
    if !x.order().is_multiple_of(p) {
        return Ok(false);
    }
    let lat = all_subgroups(x)?;
    let found = lat.ids().any(|h| {
        if h == lat.top() || lat.order_of(h) % p != 0 {
            return false;
        }
        let members = lat.set(h);
        (0..x.order())
            .filter(|&g| !members.contains(g))
            .all(|g| members.intersection_len(&x.conjugate_set(members, g)) % p != 0)
    });
    Ok(found)
}
