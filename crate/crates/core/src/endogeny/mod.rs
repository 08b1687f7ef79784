//! Endogenies: subgroups `γ ≤ A × B` with full first projection and a
//! negligible fiber over zero.
//!
//! Every endogeny is kept as its canonical graph lattice together with the
//! katakernel and one representative image per unit vector of the source.
//! Since `γ[a] = rep(a) + kat γ` with `rep` additive modulo `kat γ`, all the
//! prering operations reduce to arithmetic on representatives.

mod prering;

pub use prering::{bikat, global_kat, induced_action, prering_closure, InducedAction};

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::{concat, Ambient, GroupElement};
use crate::hom::Hom;
use crate::lattice::Lattice;
use crate::subgroup::{Coset, Subgroup, SubgroupIso};

/// The largest subgroup counted as "finite". A subgroup is negligible iff it
/// lies below `n_max`.
///
/// Composition only stays inside the bound when `n_max` is fully invariant
/// under the endogenies in play; multiples `mA` and the torsion part of a
/// split group are, for every endogeny with negligible katakernel.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NegligibilityBound {
    n_max: Subgroup,
}

impl NegligibilityBound {
    pub fn new(n_max: Subgroup) -> Self {
        NegligibilityBound { n_max }
    }

    /// Only the trivial subgroup is negligible: the endomorphism regime.
    pub fn zero(ambient: &Ambient) -> Self {
        NegligibilityBound {
            n_max: Subgroup::trivial(ambient),
        }
    }

    pub fn ambient(&self) -> &Ambient {
        self.n_max.ambient()
    }

    pub fn n_max(&self) -> &Subgroup {
        &self.n_max
    }

    pub fn is_negligible(&self, h: &Subgroup) -> bool {
        h.ambient() == self.n_max.ambient() && h.le(&self.n_max)
    }
}

#[derive(Clone, Debug)]
pub struct Endogeny {
    source: Ambient,
    target: Ambient,
    graph: Subgroup,
    kat: Subgroup,
    reps: Vec<GroupElement>,
    bound: NegligibilityBound,
}

impl PartialEq for Endogeny {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph && self.bound == other.bound
    }
}

impl Eq for Endogeny {}

impl PartialOrd for Endogeny {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Endogeny {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        (&self.graph, &self.bound).cmp(&(&other.graph, &other.bound))
    }
}

impl core::hash::Hash for Endogeny {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        self.graph.hash(state);
        self.bound.hash(state);
    }
}

impl Endogeny {
    /// Builds the subgroup generated by `gens` and checks that it is an
    /// endogeny with respect to `bound`.
    pub fn validate(
        source: &Ambient,
        target: &Ambient,
        gens: &[(GroupElement, GroupElement)],
        bound: &NegligibilityBound,
    ) -> Result<Self> {
        if bound.ambient() != target {
            return Err(Error::mismatch(format!(
                "bound lives in {}, target is {}",
                bound.ambient(),
                target
            )));
        }
        for (a, b) in gens {
            source.check(a)?;
            target.check(b)?;
        }
        let amb = source.product(target);
        let flat: Vec<GroupElement> = gens.iter().map(|(a, b)| concat(a, b)).collect();
        let graph = Subgroup::generated_unchecked(&amb, flat.iter().map(|g| &g.coords[..]));
        let e = Self::from_graph(source, target, graph, bound)?;
        if !bound.is_negligible(&e.kat) {
            return Err(Error::KatakernelExceedsBound);
        }
        Ok(e)
    }

    fn from_graph(
        source: &Ambient,
        target: &Ambient,
        graph: Subgroup,
        bound: &NegligibilityBound,
    ) -> Result<Self> {
        let r = source.rank();
        let lat = graph.lattice();
        if lat.pivots().take(r).any(|p| p != 1) {
            return Err(Error::NotGlobal);
        }
        let kat = Subgroup::from_lattice(target, lat.fiber(r));
        // Row j reads (e_j + Σ_{k>j} x_k e_k, y_j); solve for rep(e_j) bottom-up.
        let mut reps: Vec<GroupElement> = alloc::vec![target.zero(); r];
        for j in (0..r).rev() {
            let row = &lat.rows()[j];
            let mut y = GroupElement::new(row[r..].to_vec());
            for k in j + 1..r {
                if row[k] != 0 {
                    y = target.sub(&y, &target.scale(row[k], &reps[k]));
                }
            }
            reps[j] = kat.reduce(&y);
        }
        Ok(Endogeny {
            source: source.clone(),
            target: target.clone(),
            graph,
            kat,
            reps,
            bound: bound.clone(),
        })
    }

    /// The endogeny with graph generated by `(e_j, reps_j)` and `{0} × kat`.
    /// Requires `m_j · reps_j ∈ kat`; the katakernel is recomputed from the graph.
    pub(crate) fn from_reps(
        source: &Ambient,
        target: &Ambient,
        reps: &[GroupElement],
        kat: &Subgroup,
        bound: &NegligibilityBound,
    ) -> Self {
        let amb = source.product(target);
        let mut gens: Vec<Vec<i64>> = reps
            .iter()
            .enumerate()
            .map(|(j, b)| concat(&source.unit(j), b).coords)
            .collect();
        for k in kat.generators() {
            gens.push(concat(&source.zero(), &k).coords);
        }
        let graph = Subgroup::from_lattice(&amb, Lattice::generated(amb.moduli(), &gens));
        Self::from_graph(source, target, graph, bound).expect("graph built from representatives is global")
    }

    pub fn from_hom(f: &Hom, bound: &NegligibilityBound) -> Result<Self> {
        if bound.ambient() != f.target() {
            return Err(Error::mismatch("bound and morphism target differ"));
        }
        Ok(Self::from_reps(
            f.source(),
            f.target(),
            f.images(),
            &Subgroup::trivial(f.target()),
            bound,
        ))
    }

    pub fn identity(a: &Ambient, bound: &NegligibilityBound) -> Self {
        Self::from_reps(a, a, &Hom::identity(a).images().to_vec(), &Subgroup::trivial(a), bound)
    }

    pub fn zero(a: &Ambient, bound: &NegligibilityBound) -> Self {
        Self::z(&Subgroup::trivial(a), bound).expect("trivial subgroup is negligible")
    }

    /// `z_F`, the endogeny with graph `A × F`.
    pub fn z(f: &Subgroup, bound: &NegligibilityBound) -> Result<Self> {
        let a = f.ambient();
        if bound.ambient() != a {
            return Err(Error::mismatch("bound and subgroup ambient differ"));
        }
        if !bound.is_negligible(f) {
            return Err(Error::KatakernelExceedsBound);
        }
        let reps: Vec<GroupElement> = (0..a.rank()).map(|_| a.zero()).collect();
        Ok(Self::from_reps(a, a, &reps, f, bound))
    }

    /// Pullback of `g: A → B/F` along `B → B/F`: `{(a, b) : b + F = g(a)}`.
    /// `g` is given by the representatives of its values on unit vectors.
    pub fn pullback(
        source: &Ambient,
        f: &Subgroup,
        lifted_images: &[GroupElement],
        bound: &NegligibilityBound,
    ) -> Result<Self> {
        let target = f.ambient();
        if !bound.is_negligible(f) {
            return Err(Error::KatakernelExceedsBound);
        }
        for (j, b) in lifted_images.iter().enumerate() {
            target.check(b)?;
            if !f.has(&target.scale(source.moduli()[j] as i64, b)) {
                return Err(Error::invalid("images do not define a morphism into the quotient"));
            }
        }
        Ok(Self::from_reps(source, target, lifted_images, f, bound))
    }

    pub fn source(&self) -> &Ambient {
        &self.source
    }

    pub fn target(&self) -> &Ambient {
        &self.target
    }

    pub fn bound(&self) -> &NegligibilityBound {
        &self.bound
    }

    pub fn graph(&self) -> &Subgroup {
        &self.graph
    }

    /// Canonical generators of the graph as pairs.
    pub fn graph_generators(&self) -> Vec<(GroupElement, GroupElement)> {
        let r = self.source.rank();
        self.graph
            .generators()
            .iter()
            .map(|g| self.graph.ambient().split_at(r, g))
            .collect()
    }

    /// `rep(e_j)` for each unit vector, reduced modulo the katakernel.
    pub fn representatives(&self) -> &[GroupElement] {
        &self.reps
    }

    pub fn kat(&self) -> &Subgroup {
        &self.kat
    }

    pub fn is_morphism(&self) -> bool {
        self.kat.is_trivial()
    }

    /// The underlying morphism when the katakernel is trivial.
    pub fn as_hom(&self) -> Option<Hom> {
        self.is_morphism()
            .then(|| Hom::new_unchecked(&self.source, &self.target, self.reps.clone()))
    }

    /// One element of `γ[a]`.
    pub fn image_rep(&self, a: &GroupElement) -> GroupElement {
        Hom::new_unchecked(&self.source, &self.target, self.reps.clone()).apply(a)
    }

    pub fn apply(&self, a: &GroupElement) -> Result<Coset> {
        self.source.check(a)?;
        Coset::new(&self.image_rep(a), &self.kat)
    }

    /// `γ[S]`.
    pub fn apply_set(&self, s: &Subgroup) -> Result<Subgroup> {
        if s.ambient() != &self.source {
            return Err(Error::mismatch("subset of the wrong group"));
        }
        Ok(self.image_of(s))
    }

    pub(crate) fn image_of(&self, s: &Subgroup) -> Subgroup {
        let mut gens: Vec<GroupElement> = s.generators().iter().map(|g| self.image_rep(g)).collect();
        gens.extend(self.kat.generators());
        Subgroup::generated_unchecked(&self.target, gens.iter().map(|g| &g.coords[..]))
    }

    /// `γ^{-1}[S] = {a : γ[a] ∩ S ≠ ∅}`.
    pub fn preimage(&self, s: &Subgroup) -> Result<Subgroup> {
        if s.ambient() != &self.target {
            return Err(Error::mismatch("subset of the wrong group"));
        }
        Ok(self.preimage_of(s))
    }

    pub(crate) fn preimage_of(&self, s: &Subgroup) -> Subgroup {
        // Target-first coordinates; the fiber over target zero of
        // ⟨(rep_j, e_j), (k, 0), (s, 0)⟩ is {a : rep(a) ∈ S + kat}.
        let amb = self.target.product(&self.source);
        let zs = self.source.zero();
        let mut gens: Vec<Vec<i64>> = self
            .reps
            .iter()
            .enumerate()
            .map(|(j, b)| concat(b, &self.source.unit(j)).coords)
            .collect();
        for k in self.kat.generators().iter().chain(s.generators().iter()) {
            gens.push(concat(k, &zs).coords);
        }
        let lat = Lattice::generated(amb.moduli(), &gens);
        Subgroup::from_lattice(&self.source, lat.fiber(self.target.rank()))
    }

    pub fn im(&self) -> Subgroup {
        self.image_of(&Subgroup::whole(&self.source))
    }

    /// `ker γ = γ^{-1}[kat γ]`.
    pub fn ker(&self) -> Subgroup {
        self.preimage_of(&Subgroup::trivial(&self.target))
    }

    fn same_shape(&self, other: &Endogeny) -> Result<()> {
        if self.source != other.source || self.target != other.target || self.bound != other.bound {
            return Err(Error::mismatch("endogenies with different source, target or bound"));
        }
        Ok(())
    }

    fn checked(self) -> Result<Self> {
        if self.bound.is_negligible(&self.kat) {
            Ok(self)
        } else {
            Err(Error::KatakernelExceedsBound)
        }
    }

    pub(crate) fn add_unchecked(&self, other: &Endogeny) -> Endogeny {
        let reps: Vec<GroupElement> = self
            .reps
            .iter()
            .zip(&other.reps)
            .map(|(a, b)| self.target.add(a, b))
            .collect();
        let kat = self.kat.plus(&other.kat);
        Self::from_reps(&self.source, &self.target, &reps, &kat, &self.bound)
    }

    pub fn add(&self, other: &Endogeny) -> Result<Endogeny> {
        self.same_shape(other)?;
        self.add_unchecked(other).checked()
    }

    pub fn neg(&self) -> Endogeny {
        let reps: Vec<GroupElement> = self.reps.iter().map(|a| self.target.neg(a)).collect();
        Self::from_reps(&self.source, &self.target, &reps, &self.kat, &self.bound)
    }

    pub fn sub(&self, other: &Endogeny) -> Result<Endogeny> {
        self.add(&other.neg())
    }

    pub(crate) fn sub_unchecked(&self, other: &Endogeny) -> Endogeny {
        self.add_unchecked(&other.neg())
    }

    /// `self ∘ other`, applying `other` first.
    pub(crate) fn compose_unchecked(&self, other: &Endogeny) -> Endogeny {
        let reps: Vec<GroupElement> = other.reps.iter().map(|b| self.image_rep(b)).collect();
        let kat = self.image_of(&other.kat);
        Self::from_reps(&other.source, &self.target, &reps, &kat, &self.bound)
    }

    pub fn compose(&self, other: &Endogeny) -> Result<Endogeny> {
        if other.target != self.source {
            return Err(Error::mismatch("composition of non-matching endogenies"));
        }
        self.compose_unchecked(other).checked()
    }

    /// `γ1 ∼ γ2`: some negligible `F` has `γ1[a] + F = γ2[a] + F` for all
    /// `a`. Since negligible subgroups are exactly those below `n_max`, the
    /// largest candidate `F = n_max` decides this.
    pub fn equivalent(&self, other: &Endogeny) -> Result<bool> {
        self.same_shape(other)?;
        let n = self.bound.n_max();
        Ok(self
            .reps
            .iter()
            .zip(&other.reps)
            .all(|(a, b)| n.has(&self.target.sub(a, b))))
    }

    /// `γ1 ⪯ γ2` iff `γ1 ≤ γ2 + ({0} × n_max)`.
    pub fn preceq(&self, other: &Endogeny) -> Result<bool> {
        self.same_shape(other)?;
        let kat = other.kat.plus(self.bound.n_max());
        let blurred = Self::from_reps(&other.source, &other.target, &other.reps, &kat, &other.bound);
        Ok(self.graph.le(&blurred.graph))
    }

    /// `im(γδ − δγ) ≤ kat γ + kat δ`.
    pub fn sharp_commutes(&self, other: &Endogeny) -> Result<bool> {
        if self.source != self.target {
            return Err(Error::mismatch("sharp commutation needs endogenies of one group"));
        }
        self.same_shape(other)?;
        let sigma = self
            .compose_unchecked(other)
            .sub_unchecked(&other.compose_unchecked(self));
        Ok(sigma.im().le(&self.kat.plus(&other.kat)))
    }

    /// `γ[B] ≤ B + kat γ`.
    pub fn weakly_invariant(&self, b: &Subgroup) -> Result<bool> {
        Ok(self.apply_set(b)?.le(&b.plus(&self.kat)))
    }

    /// `γ[B] ≤ B`.
    pub fn fully_invariant(&self, b: &Subgroup) -> Result<bool> {
        Ok(self.apply_set(b)?.le(b))
    }

    /// `ρ_B(γ) = γ ∩ B²`, written in the coordinates of the canonical group
    /// isomorphic to `B`; the isomorphism is returned alongside.
    pub fn restrict(&self, b: &Subgroup) -> Result<(Endogeny, SubgroupIso)> {
        if self.source != self.target {
            return Err(Error::mismatch("restriction needs an endogeny of one group"));
        }
        if !self.weakly_invariant(b)? {
            return Err(Error::NotWeaklyInvariant);
        }
        let iso = b.as_group()?;
        let bb = iso.group().ambient();
        let meet = self.graph.meet(&b.product(b));
        let r = self.source.rank();
        let mut gens = Vec::new();
        for g in meet.generators() {
            let (x, y) = meet.ambient().split_at(r, &g);
            gens.push((iso.coords(&x)?, iso.coords(&y)?));
        }
        let nb = self.bound.n_max().meet(b);
        let mut ngens = Vec::new();
        for g in nb.generators() {
            ngens.push(iso.coords(&g)?);
        }
        let bound = NegligibilityBound::new(Subgroup::generated(&bb, &ngens)?);
        let rho = Endogeny::validate(&bb, &bb, &gens, &bound)?;
        Ok((rho, iso))
    }
}

/// A finite family of endogenies of one group sharing one bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndogenySet {
    ambient: Ambient,
    bound: NegligibilityBound,
    elements: Vec<Endogeny>,
}

impl EndogenySet {
    pub fn new(ambient: &Ambient, bound: &NegligibilityBound, elements: Vec<Endogeny>) -> Result<Self> {
        if bound.ambient() != ambient {
            return Err(Error::mismatch("bound on a different group"));
        }
        for e in &elements {
            if e.source() != ambient || e.target() != ambient || e.bound() != bound {
                return Err(Error::mismatch("member with different ambient or bound"));
            }
        }
        Ok(EndogenySet {
            ambient: ambient.clone(),
            bound: bound.clone(),
            elements,
        })
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn bound(&self) -> &NegligibilityBound {
        &self.bound
    }

    pub fn elements(&self) -> &[Endogeny] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

#[cfg(test)]
mod tests;
