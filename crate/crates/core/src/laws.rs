//! Executable laws of the endogeny calculus. Each function evaluates a
//! group of laws on concrete inputs and records what failed; a violation is
//! always a library bug or a violated hypothesis, never an expected outcome.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::dimension::{connectedness_lemma_check, dimension_lemma_check, kernel_component_check, SplitGroup};
use crate::endogeny::{bikat, global_kat, induced_action, prering_closure, Endogeny, EndogenySet};
use crate::error::{Error, Result};
use crate::oracle::{dense_subgroup, DenseEndogeny, DenseGroup, PAIR_CAP};
use crate::subgroup::Subgroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub law: &'static str,
    pub detail: String,
}

/// A named boolean that is reported but is not a law.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fact {
    pub name: &'static str,
    pub value: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Checks {
    pub evaluated: usize,
    /// Laws whose hypotheses failed or whose operations left the bound.
    pub skipped: usize,
    pub violations: Vec<Violation>,
    pub facts: Vec<Fact>,
}

impl Checks {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn check(&mut self, law: &'static str, holds: bool) {
        self.evaluated += 1;
        if !holds {
            self.violations.push(Violation { law, detail: String::new() });
        }
    }

    pub fn check_with(&mut self, law: &'static str, holds: bool, detail: impl FnOnce() -> String) {
        self.evaluated += 1;
        if !holds {
            self.violations.push(Violation { law, detail: detail() });
        }
    }

    pub fn fact(&mut self, name: &'static str, value: bool) {
        self.facts.push(Fact { name, value });
    }

    pub fn merge(&mut self, other: Checks) {
        self.evaluated += other.evaluated;
        self.skipped += other.skipped;
        self.violations.extend(other.violations);
        self.facts.extend(other.facts);
    }

    /// Runs `f`, turning a bound overflow into a skip and any other error
    /// into a violation of `law`.
    pub fn guard(&mut self, law: &'static str, f: impl FnOnce(&mut Checks) -> Result<()>) {
        let mut inner = Checks::new();
        match f(&mut inner) {
            Ok(()) => self.merge(inner),
            Err(Error::KatakernelExceedsBound) => {
                self.merge(inner);
                self.skipped += 1;
            }
            Err(e) => {
                self.merge(inner);
                self.evaluated += 1;
                self.violations.push(Violation {
                    law,
                    detail: format!("{e}"),
                });
            }
        }
    }
}

fn show(g: &Endogeny) -> String {
    let gens: Vec<_> = g
        .graph_generators()
        .into_iter()
        .map(|(a, b)| (a.coords, b.coords))
        .collect();
    format!("{:?} on {:?}", gens, g.source().moduli())
}

/// Prering laws and the katakernel identities on `(γ1, γ2, δ)`.
pub fn prering_laws(g1: &Endogeny, g2: &Endogeny, d: &Endogeny) -> Checks {
    let mut c = Checks::new();
    let a = g1.source();
    let bound = g1.bound();
    let zero = Endogeny::zero(a, bound);
    let one = Endogeny::identity(a, bound);
    c.guard("prering-operation", |c| {
        let ctx = || format!("g1 = {}, g2 = {}, d = {}", show(g1), show(g2), show(d));
        c.check_with("add-associative", g1.add(g2)?.add(d)? == g1.add(&g2.add(d)?)?, ctx);
        c.check_with("add-commutative", g1.add(g2)? == g2.add(g1)?, ctx);
        c.check_with("add-neutral", g1.add(&zero)? == *g1, ctx);
        c.check_with("sub-self-is-z-kat", g1.sub(g1)? == Endogeny::z(g1.kat(), bound)?, ctx);
        c.check_with("compose-associative", g1.compose(g2)?.compose(d)? == g1.compose(&g2.compose(d)?)?, ctx);
        c.check_with("compose-neutral", one.compose(g1)? == *g1 && g1.compose(&one)? == *g1, ctx);
        c.check_with(
            "right-distributive",
            g1.compose(&g2.add(d)?)? == g1.compose(g2)?.add(&g1.compose(d)?)?,
            ctx,
        );
        let lhs = g1.add(g2)?.compose(d)?;
        let rhs = g1.compose(d)?.add(&g2.compose(d)?)?;
        c.check_with("left-distributive-lower", lhs.graph().le(rhs.graph()), ctx);
        let correction = Endogeny::z(&g2.apply_set(d.kat())?, bound)?;
        c.check_with("left-distributive-upper", rhs.graph().le(lhs.add(&correction)?.graph()), ctx);
        c.check_with("kat-of-sum", *g1.add(g2)?.kat() == g1.kat().plus(g2.kat()), ctx);
        c.check_with("kat-of-product", *g1.compose(g2)?.kat() == g1.apply_set(g2.kat())?, ctx);
        Ok(())
    });
    c
}

/// `∼` is an equivalence, a congruence for `+` and `∘`, and `+`
/// distributes over `∘` on both sides modulo `∼`. Requires `g1 ∼ g1p` and
/// `g2 ∼ g2p`; the preorder `⪯` must induce `∼`.
pub fn equivalence_laws(g1: &Endogeny, g1p: &Endogeny, g2: &Endogeny, g2p: &Endogeny, d: &Endogeny) -> Checks {
    let mut c = Checks::new();
    c.guard("equivalence-operation", |c| {
        let ctx = || format!("g1 = {}, g1' = {}, g2 = {}, g2' = {}", show(g1), show(g1p), show(g2), show(g2p));
        if !(g1.equivalent(g1p)? && g2.equivalent(g2p)?) {
            c.skipped += 1;
            return Ok(());
        }
        c.check("reflexive", g1.equivalent(g1)?);
        c.check_with("symmetric", g1p.equivalent(g1)?, ctx);
        let far = g1p.add(&Endogeny::z(g2.kat(), g1.bound())?)?;
        c.check_with("transitive", !g1.equivalent(g1p)? || !g1p.equivalent(&far)? || g1.equivalent(&far)?, ctx);
        c.check_with("congruent-add", g1.add(g2)?.equivalent(&g1p.add(g2p)?)?, ctx);
        c.check_with("congruent-compose", g1.compose(g2)?.equivalent(&g1p.compose(g2p)?)?, ctx);
        c.check_with(
            "left-distributive-mod-equivalence",
            g1.add(g2)?.compose(d)?.equivalent(&g1.compose(d)?.add(&g2.compose(d)?)?)?,
            ctx,
        );
        c.check_with(
            "right-distributive-mod-equivalence",
            d.compose(&g1.add(g2)?)?.equivalent(&d.compose(g1)?.add(&d.compose(g2)?)?)?,
            ctx,
        );
        for (x, y) in [(g1, g1p), (g1, g2), (g2, d), (g1p, g2p)] {
            let both = x.preceq(y)? && y.preceq(x)?;
            c.check_with("preorder-induces-equivalence", both == x.equivalent(y)?, ctx);
        }
        c.check_with("preceq-reflexive", g1.preceq(g1)?, ctx);
        Ok(())
    });
    c
}

/// Closure of sharp commutation for `γ` against `δ1, δ2`, and
/// `δ[kat γ] ≤ kat γ + kat δ`.
pub fn sharp_laws(g: &Endogeny, d1: &Endogeny, d2: &Endogeny) -> Checks {
    let mut c = Checks::new();
    c.guard("sharp-operation", |c| {
        let s1 = g.sharp_commutes(d1)?;
        let s2 = g.sharp_commutes(d2)?;
        c.fact("sharp-commutes-1", s1);
        c.fact("sharp-commutes-2", s2);
        let ctx = || format!("g = {}, d1 = {}, d2 = {}", show(g), show(d1), show(d2));
        c.check_with("sharp-symmetric", s1 == d1.sharp_commutes(g)?, ctx);
        if s1 {
            let lhs = d1.apply_set(g.kat())?;
            c.check_with("kat-weakly-invariant", lhs.le(&g.kat().plus(d1.kat())), ctx);
            c.check_with("sharp-closed-under-negation", g.sharp_commutes(&d1.neg())?, ctx);
        }
        if s1 && s2 {
            c.check_with("sharp-closed-under-sum", g.sharp_commutes(&d1.add(d2)?)?, ctx);
            c.check_with("sharp-closed-under-product", g.sharp_commutes(&d1.compose(d2)?)?, ctx);
        } else {
            c.skipped += 1;
        }
        Ok(())
    });
    c
}

/// Subgroups worth testing for invariance: the canonical ones attached to
/// both endogenies and any extra candidates.
pub fn candidate_subgroups(g: &Endogeny, d: &Endogeny, extra: &[Subgroup]) -> Vec<Subgroup> {
    let a = g.source();
    let mut out = alloc::vec![
        Subgroup::trivial(a),
        Subgroup::whole(a),
        g.kat().clone(),
        d.kat().clone(),
        g.ker(),
        d.ker(),
        g.im(),
        d.im(),
    ];
    out.extend(extra.iter().cloned());
    out.sort();
    out.dedup();
    out
}

/// For sharply commuting `γ, δ`: weak invariance laws on every candidate,
/// kernel invariance when `γ` is a morphism, the sum and intersection
/// remarks, and commutation modulo `∼` after restriction to common weakly
/// invariant candidates.
pub fn invariance_laws(g: &Endogeny, d: &Endogeny, candidates: &[Subgroup]) -> Checks {
    let mut c = Checks::new();
    c.guard("invariance-operation", |c| {
        let sharp = g.sharp_commutes(d)?;
        c.fact("sharp-commutes", sharp);
        let ctx = |b: &Subgroup| format!("g = {}, d = {}, B = {:?}", show(g), show(d), gens(b));
        let mut weak_g = Vec::new();
        let mut full_g = Vec::new();
        for b in candidates {
            if g.weakly_invariant(b)? {
                weak_g.push(b);
            }
            if g.fully_invariant(b)? {
                full_g.push(b);
            }
        }
        for (i, b1) in weak_g.iter().enumerate() {
            for b2 in &weak_g[i + 1..] {
                c.check_with("weak-invariance-closed-under-sum", g.weakly_invariant(&b1.plus(b2))?, || ctx(b1));
            }
        }
        for (i, b1) in full_g.iter().enumerate() {
            for b2 in &full_g[i + 1..] {
                c.check_with("full-invariance-closed-under-sum", g.fully_invariant(&b1.plus(b2))?, || ctx(b1));
                c.check_with(
                    "full-invariance-closed-under-intersection",
                    g.fully_invariant(&b1.meet(b2))?,
                    || ctx(b1),
                );
            }
        }
        if !sharp {
            c.skipped += 1;
            return Ok(());
        }
        for b in &weak_g {
            let image = d.apply_set(b)?;
            c.check_with("invariance-lemma", g.weakly_invariant(&image)?, || ctx(b));
        }
        if g.is_morphism() {
            c.check_with("kernel-fully-invariant-under-morphism", g.fully_invariant(&d.ker())?, || {
                ctx(&d.ker())
            });
        }
        for b in &weak_g {
            if !d.weakly_invariant(b)? {
                continue;
            }
            let (rg, iso) = g.restrict(b)?;
            let (rd, _) = d.restrict(b)?;
            let kb = g.kat().meet(b);
            let inside = rg.kat().generators().iter().all(|k| kb.has(&iso.embed(k)));
            c.check_with("restriction-kat-bound", inside, || ctx(b));
            let gd = rg.compose(&rd)?;
            let dg = rd.compose(&rg)?;
            c.check_with("restrictions-commute-modulo-equivalence", gd.equivalent(&dg)?, || ctx(b));
        }
        Ok(())
    });
    c
}

fn gens(b: &Subgroup) -> Vec<Vec<i64>> {
    b.generators().into_iter().map(|g| g.coords).collect()
}

/// Invariance of the katakernels and their preimages, and the induced action, over the
/// generated prerings when they fit in `cap` and over generators with their
/// pairwise sums and products otherwise.
pub fn katakernel_laws(gamma: &EndogenySet, delta: &EndogenySet, cap: usize) -> Checks {
    let mut c = Checks::new();
    c.guard("katakernel-operation", |c| {
        for g in gamma.elements() {
            for d in delta.elements() {
                if !g.sharp_commutes(d)? {
                    c.skipped += 1;
                    c.fact("sharp-commutes", false);
                    return Ok(());
                }
            }
        }
        let (gs, full_g) = sample(gamma, cap)?;
        let (ds, full_d) = sample(delta, cap)?;
        c.fact("full-closure", full_g && full_d);
        let kg = global_kat(gamma)?;
        let k = bikat(gamma, delta)?;
        if full_g {
            let direct = gs.iter().fold(Subgroup::trivial(gamma.ambient()), |acc, g| acc.plus(g.kat()));
            c.check("global-kat-matches-closure", direct == kg);
        }
        for g in &gs {
            c.check("kat-fully-invariant", g.fully_invariant(&kg)?);
            c.check("bikat-fully-invariant", g.fully_invariant(&k)?);
            let pre = g.preimage(&k)?;
            // Maps fixing a subgroup form a subring, so Δ's generators decide this.
            for d in delta.elements() {
                c.check("preimage-of-bikat-fully-invariant", d.fully_invariant(&pre)?);
            }
        }
        for d in &ds {
            c.check("bikat-fully-invariant", d.fully_invariant(&k)?);
        }
        let induced = induced_action(gamma, delta)?;
        let commute = induced
            .gamma
            .iter()
            .all(|g| induced.delta.iter().all(|d| g.compose(d) == d.compose(g)));
        c.check("induced-maps-commute", commute);
        Ok(())
    });
    c
}

fn sample(gens: &EndogenySet, cap: usize) -> Result<(Vec<Endogeny>, bool)> {
    match prering_closure(gens, cap) {
        Ok(c) => Ok((c.elements().to_vec(), true)),
        Err(Error::ClosureCapExceeded(_)) => {
            let g = gens.elements();
            let mut out = g.to_vec();
            for (i, a) in g.iter().enumerate() {
                for b in &g[i..] {
                    out.push(a.add(b)?);
                    out.push(a.compose(b)?);
                    out.push(b.compose(a)?);
                }
            }
            Ok((out, false))
        }
        Err(e) => Err(e),
    }
}

/// Dimension laws for `γ` and connectedness laws for each `B`.
pub fn dimension_laws(s: &SplitGroup, g: &Endogeny, bs: &[Subgroup]) -> Checks {
    let mut c = Checks::new();
    c.guard("dimension-operation", |c| {
        let d = dimension_lemma_check(s, g)?;
        c.check_with("dimension-lemma", d.holds, || format!("{d:?} for {}", show(g)));
        for b in bs {
            c.check_with("connectedness-lemma", connectedness_lemma_check(s, g, b)?, || {
                format!("g = {}, B = {:?}", show(g), gens(b))
            });
        }
        Ok(())
    });
    c
}

/// Connectedness of `γ[B]` for `B` and `B°`, plus the kernel-component
/// conjecture for sharply commuting `(γ, δ)`, which is reported as a fact.
pub fn connectedness_laws(s: &SplitGroup, g: &Endogeny, d: &Endogeny, bs: &[Subgroup]) -> Checks {
    let mut c = Checks::new();
    c.guard("connectedness-operation", |c| {
        for b in bs {
            c.check("connectedness-lemma", connectedness_lemma_check(s, g, b)?);
            let b0 = s.connected_component(b)?;
            c.check("component-is-idempotent", s.connected_component(&b0)? == b0);
            c.check("component-has-full-dimension", s.dim(&b0)? == s.dim(b)?);
        }
        if let Some(v) = kernel_component_check(s, g, d)? {
            c.fact("kernel-component-weakly-invariant", v);
        }
        Ok(())
    });
    c
}

/// Compares every lattice operation on `(γ1, γ2)` and the subgroups `bs`
/// with literal set computations.
pub fn oracle_agreement(g1: &Endogeny, g2: &Endogeny, bs: &[Subgroup]) -> Checks {
    let mut c = Checks::new();
    c.guard("oracle-operation", |c| {
        let a = g1.source();
        let group = DenseGroup::new(a.moduli(), PAIR_CAP)?;
        let ds = |h: &Subgroup| dense_subgroup(&group, h);
        let o1 = DenseEndogeny::from_core(g1)?;
        let o2 = DenseEndogeny::from_core(g2)?;
        let n_max = ds(g1.bound().n_max());
        c.check("oracle-global", o1.is_global() && o2.is_global());
        c.check("oracle-kat", o1.kat() == ds(g1.kat()));
        c.check("oracle-ker", o1.ker() == ds(&g1.ker()));
        c.check("oracle-im", o1.im() == ds(&g1.im()));
        c.check("oracle-graph-order", o1.pairs().count() as u128 == g1.graph().order());
        let images = |o: &DenseEndogeny, g: &Endogeny| -> Result<bool> {
            for x in 0..group.order() {
                let e = a.element(&group.decode(x))?;
                let coset = g.apply(&e)?;
                let want = group.set_sum(&single(&group, group.encode(&coset.representative().coords)), &ds(coset.subgroup()));
                if o.image(x) != want {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        c.check("oracle-apply", images(&o1, g1)?);
        match g1.add(g2) {
            Ok(s) => c.check("oracle-add", o1.add(&o2).same_pairs_as(s.graph())?),
            Err(Error::KatakernelExceedsBound) => c.check("oracle-add-bound", !ds(&g1.kat().plus(g2.kat())).is_subset(&n_max)),
            Err(e) => return Err(e),
        }
        c.check("oracle-neg", o1.neg().same_pairs_as(g1.neg().graph())?);
        match g1.compose(g2) {
            Ok(p) => c.check("oracle-compose", o1.compose(&o2).same_pairs_as(p.graph())?),
            Err(Error::KatakernelExceedsBound) => c.check("oracle-compose-bound", !o1.compose(&o2).kat().is_subset(&n_max)),
            Err(e) => return Err(e),
        }
        c.check("oracle-sharp", o1.sharp_commutes(&o2) == g1.sharp_commutes(g2)?);
        let eq = o1.equivalent(&o2, &n_max, 1 << 16)?.is_some();
        c.check("oracle-equivalent", eq == g1.equivalent(g2)?);
        for b in bs {
            let db = ds(b);
            c.check("oracle-subgroup-order", db.count() as u128 == b.order());
            c.check("oracle-apply-set", o1.apply_set(&db) == ds(&g1.apply_set(b)?));
            c.check("oracle-preimage", o1.preimage(&db) == ds(&g1.preimage(b)?));
            c.check("oracle-weakly-invariant", o1.weakly_invariant(&db) == g1.weakly_invariant(b)?);
            c.check("oracle-fully-invariant", o1.fully_invariant(&db) == g1.fully_invariant(b)?);
            for b2 in bs {
                let d2 = ds(b2);
                c.check("oracle-sum", group.sum(&db, &d2) == ds(&b.plus(b2)));
                c.check("oracle-intersection", db.and(&d2) == ds(&b.meet(b2)));
                c.check("oracle-inclusion", db.is_subset(&d2) == b.le(b2));
            }
            if g1.weakly_invariant(b)? {
                let (rho, iso) = g1.restrict(b)?;
                let lit = o1.restrict(&db)?;
                let mut same = lit.pairs().count() as u128 == rho.graph().order();
                for (x, y) in rho.graph_generators() {
                    let (x, y) = (iso.embed(&x), iso.embed(&y));
                    same &= lit.contains(group.encode(&x.coords), group.encode(&y.coords));
                }
                c.check("oracle-restrict", same);
            }
        }
        Ok(())
    });
    c
}

fn single(group: &DenseGroup, x: usize) -> crate::oracle::DenseSet {
    let mut s = crate::oracle::DenseSet::empty(group.order());
    s.insert(x);
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endogeny::NegligibilityBound;
    use crate::group::Ambient;
    use crate::instances::{characteristic_bounds, random_endogeny, random_negligible, random_sharp_family, Rng};

    #[test]
    fn laws_hold_on_a_few_random_inputs() {
        let a = Ambient::new(alloc::vec![2, 4]).unwrap();
        let mut rng = Rng::new(3);
        for f in characteristic_bounds(&a) {
            let bound = NegligibilityBound::new(f);
            for _ in 0..5 {
                let g1 = random_endogeny(&a, &bound, &mut rng).unwrap();
                let g2 = random_endogeny(&a, &bound, &mut rng).unwrap();
                let d = random_endogeny(&a, &bound, &mut rng).unwrap();
                let c = prering_laws(&g1, &g2, &d);
                assert!(c.ok(), "{:?}", c.violations);
                let g1p = g1.add(&random_negligible(&a, &bound, &mut rng).unwrap()).unwrap();
                let g2p = g2.add(&random_negligible(&a, &bound, &mut rng).unwrap()).unwrap();
                let c = equivalence_laws(&g1, &g1p, &g2, &g2p, &d);
                assert!(c.ok() && c.skipped == 0, "{:?}", c);
                let c = oracle_agreement(&g1, &g2, &candidate_subgroups(&g1, &g2, &[]));
                assert!(c.ok(), "{:?}", c.violations);
                let fam = random_sharp_family(&a, &bound, 3, &mut rng, 64).unwrap();
                let c = sharp_laws(&fam[0], &fam[1], &fam[2]);
                assert!(c.ok(), "{:?}", c.violations);
                let c = invariance_laws(&fam[0], &fam[1], &candidate_subgroups(&fam[0], &fam[1], &[]));
                assert!(c.ok(), "{:?}", c.violations);
            }
        }
    }

    #[test]
    fn swap_against_z_f_is_recorded_not_failed() {
        let a = Ambient::new(alloc::vec![2, 2]).unwrap();
        let bound = NegligibilityBound::new(Subgroup::whole(&a));
        let f = Subgroup::generated(&a, &[a.element(&[1, 0]).unwrap()]).unwrap();
        let z = Endogeny::z(&f, &bound).unwrap();
        let swap = Endogeny::pullback(&a, &Subgroup::trivial(&a), &[a.unit(1), a.unit(0)], &bound).unwrap();
        let c = sharp_laws(&z, &swap, &swap);
        assert!(c.ok());
        assert_eq!(c.facts[0], Fact { name: "sharp-commutes-1", value: false });
    }
}
