//! Generated prerings, global katakernels and the induced action on the
//! quotient by the bi-katakernel.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use super::{Endogeny, EndogenySet};
use crate::error::{Error, Result};
use crate::group::Quotient;
use crate::hom::Hom;
use crate::subgroup::Subgroup;

/// Closure of `gens ∪ {0, 1, −1}` under `+`, `−` and `∘`, in breadth-first
/// order. Fails once more than `cap` elements have been produced.
pub fn prering_closure(gens: &EndogenySet, cap: usize) -> Result<EndogenySet> {
    let a = gens.ambient();
    let bound = gens.bound();
    let one = Endogeny::identity(a, bound);
    let mut elems: Vec<Endogeny> = Vec::new();
    let mut seen: BTreeSet<Subgroup> = BTreeSet::new();
    let mut push = |e: Endogeny, elems: &mut Vec<Endogeny>| -> Result<()> {
        if seen.insert(e.graph.clone()) {
            if elems.len() >= cap {
                return Err(Error::ClosureCapExceeded(cap));
            }
            elems.push(e);
        }
        Ok(())
    };
    push(Endogeny::zero(a, bound), &mut elems)?;
    push(one.clone(), &mut elems)?;
    push(one.neg(), &mut elems)?;
    for g in gens.elements() {
        push(g.clone(), &mut elems)?;
    }
    let mut i = 0;
    while i < elems.len() {
        let x = elems[i].clone();
        push(x.neg(), &mut elems)?;
        for j in 0..=i {
            let y = elems[j].clone();
            push(x.add(&y)?, &mut elems)?;
            push(x.compose(&y)?, &mut elems)?;
            push(y.compose(&x)?, &mut elems)?;
        }
        i += 1;
    }
    EndogenySet::new(a, bound, elems)
}

/// `Kat` of the prering generated by `gens`, as the least subgroup containing
/// every `kat g` and closed under every `g[·]`.
pub fn global_kat(gens: &EndogenySet) -> Result<Subgroup> {
    let a = gens.ambient();
    let mut k = Subgroup::trivial(a);
    for g in gens.elements() {
        k = k.plus(g.kat());
    }
    loop {
        if !gens.bound().is_negligible(&k) {
            return Err(Error::KatakernelExceedsBound);
        }
        let mut next = k.clone();
        for g in gens.elements() {
            next = next.plus(&g.image_of(&k));
        }
        if next == k {
            return Ok(k);
        }
        k = next;
    }
}

/// `Kat(Γ, Δ) = Kat(Γ) + Kat(Δ)`.
pub fn bikat(gamma: &EndogenySet, delta: &EndogenySet) -> Result<Subgroup> {
    if gamma.ambient() != delta.ambient() || gamma.bound() != delta.bound() {
        return Err(Error::mismatch("prerings on different groups"));
    }
    let k = global_kat(gamma)?.plus(&global_kat(delta)?);
    if !gamma.bound().is_negligible(&k) {
        return Err(Error::KatakernelExceedsBound);
    }
    Ok(k)
}

/// Honest endomorphisms of `A / Kat(Γ, Δ)` induced by the generators.
#[derive(Clone, Debug)]
pub struct InducedAction {
    pub bikat: Subgroup,
    pub quotient: Quotient,
    pub gamma: Vec<Hom>,
    pub delta: Vec<Hom>,
}

pub fn induced_action(gamma: &EndogenySet, delta: &EndogenySet) -> Result<InducedAction> {
    for (i, g) in gamma.elements().iter().enumerate() {
        for (j, d) in delta.elements().iter().enumerate() {
            if !g.sharp_commutes(d)? {
                return Err(Error::NotSharplyCommuting(format!(
                    "gamma generator {i} and delta generator {j}"
                )));
            }
        }
    }
    let k = bikat(gamma, delta)?;
    for g in gamma.elements().iter().chain(delta.elements()) {
        if !g.image_of(&k).le(&k) {
            return Err(Error::HypothesisViolation {
                reason: "bi-katakernel is not fully invariant".into(),
                witness: None,
            });
        }
    }
    let q = k.quotient();
    let qa = q.target().ambient();
    let induce = |g: &Endogeny| -> Result<Hom> {
        let images = (0..qa.rank())
            .map(|t| q.map(&g.image_rep(&q.lift(&qa.unit(t)))))
            .collect();
        let h = Hom::new(&qa, &qa, images)?;
        // The pushed-forward graph must be the graph of h: its fiber over 0 is trivial.
        for (x, y) in g.graph_generators() {
            if h.apply(&q.map(&x)) != q.map(&y) {
                return Err(Error::HypothesisViolation {
                    reason: "induced relation has a nontrivial katakernel".into(),
                    witness: None,
                });
            }
        }
        Ok(h)
    };
    let gh: Vec<Hom> = gamma.elements().iter().map(induce).collect::<Result<_>>()?;
    let dh: Vec<Hom> = delta.elements().iter().map(induce).collect::<Result<_>>()?;
    for (i, g) in gh.iter().enumerate() {
        for (j, d) in dh.iter().enumerate() {
            if g.compose(d) != d.compose(g) {
                return Err(Error::NotSharplyCommuting(format!(
                    "induced maps of gamma {i} and delta {j} do not commute"
                )));
            }
        }
    }
    Ok(InducedAction {
        bikat: k,
        quotient: q,
        gamma: gh,
        delta: dh,
    })
}
