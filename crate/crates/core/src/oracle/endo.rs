//! Endogenies as literal sets of pairs.

use alloc::vec::Vec;

use super::dense::{DenseGroup, DenseSet};
use crate::endogeny::Endogeny;
use crate::error::{Error, Result};
use crate::subgroup::Subgroup;

/// Default ceiling on `|A| · |B|` for pair sets.
pub const PAIR_CAP: usize = 1 << 24;

/// A relation `γ ≤ A × B`, pair `(a, b)` stored at index `a · |B| + b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseEndogeny {
    source: DenseGroup,
    target: DenseGroup,
    pairs: DenseSet,
}

impl DenseEndogeny {
    fn product(source: &DenseGroup, target: &DenseGroup) -> Result<DenseGroup> {
        let mut m = source.moduli().to_vec();
        m.extend_from_slice(target.moduli());
        DenseGroup::new(&m, PAIR_CAP)
    }

    /// The subgroup of `A × B` generated by the given pairs.
    pub fn generated(source: &DenseGroup, target: &DenseGroup, gens: &[(usize, usize)]) -> Result<Self> {
        let prod = Self::product(source, target)?;
        let idx: Vec<usize> = gens.iter().map(|&(a, b)| a * target.order() + b).collect();
        Ok(DenseEndogeny {
            source: source.clone(),
            target: target.clone(),
            pairs: prod.generated(&idx),
        })
    }

    /// Reads the graph generators of a lattice-backed endogeny.
    pub fn from_core(e: &Endogeny) -> Result<Self> {
        let s = DenseGroup::new(e.source().moduli(), PAIR_CAP)?;
        let t = DenseGroup::new(e.target().moduli(), PAIR_CAP)?;
        let gens: Vec<(usize, usize)> = e
            .graph_generators()
            .iter()
            .map(|(a, b)| (s.encode(&a.coords), t.encode(&b.coords)))
            .collect();
        Self::generated(&s, &t, &gens)
    }

    /// The literal set `{(a, b) : b − g(a) ∈ F}`.
    pub fn pullback(source: &DenseGroup, target: &DenseGroup, g: &[usize], f: &DenseSet) -> Result<Self> {
        Self::product(source, target)?;
        let mut pairs = DenseSet::empty(source.order() * target.order());
        for a in 0..source.order() {
            let ga = hom_apply(source, target, g, a);
            for x in f.iter() {
                pairs.insert(a * target.order() + target.add(ga, x));
            }
        }
        Ok(DenseEndogeny {
            source: source.clone(),
            target: target.clone(),
            pairs,
        })
    }

    fn from_fibers(source: &DenseGroup, target: &DenseGroup, fibers: &[DenseSet]) -> Self {
        let mut pairs = DenseSet::empty(source.order() * target.order());
        for (a, fib) in fibers.iter().enumerate() {
            for b in fib.iter() {
                pairs.insert(a * target.order() + b);
            }
        }
        DenseEndogeny {
            source: source.clone(),
            target: target.clone(),
            pairs,
        }
    }

    pub fn source(&self) -> &DenseGroup {
        &self.source
    }

    pub fn target(&self) -> &DenseGroup {
        &self.target
    }

    pub fn pairs(&self) -> &DenseSet {
        &self.pairs
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.pairs.contains(a * self.target.order() + b)
    }

    /// `γ[a] = {b : (a, b) ∈ γ}`.
    pub fn image(&self, a: usize) -> DenseSet {
        let n = self.target.order();
        let mut out = DenseSet::empty(n);
        for i in self.pairs.range(a * n, (a + 1) * n) {
            out.insert(i - a * n);
        }
        out
    }

    fn fibers(&self) -> Vec<DenseSet> {
        (0..self.source.order()).map(|a| self.image(a)).collect()
    }

    pub fn is_global(&self) -> bool {
        (0..self.source.order()).all(|a| !self.image(a).is_empty())
    }

    pub fn kat(&self) -> DenseSet {
        self.image(0)
    }

    pub fn apply_set(&self, s: &DenseSet) -> DenseSet {
        let mut out = DenseSet::empty(self.target.order());
        for a in s.iter() {
            out.union_with(&self.image(a));
        }
        out
    }

    pub fn preimage(&self, s: &DenseSet) -> DenseSet {
        let mut out = DenseSet::empty(self.source.order());
        for a in 0..self.source.order() {
            if !self.image(a).and(s).is_empty() {
                out.insert(a);
            }
        }
        out
    }

    pub fn im(&self) -> DenseSet {
        self.apply_set(&self.source.whole())
    }

    pub fn ker(&self) -> DenseSet {
        self.preimage(&self.kat())
    }

    /// `{(a, b1 + b2) : (a, b1) ∈ γ1, (a, b2) ∈ γ2}`.
    pub fn add(&self, other: &Self) -> Self {
        let fibers: Vec<DenseSet> = self
            .fibers()
            .iter()
            .zip(other.fibers())
            .map(|(x, y)| self.target.set_sum(x, &y))
            .collect();
        Self::from_fibers(&self.source, &self.target, &fibers)
    }

    /// `{(a, −b) : (a, b) ∈ γ}`.
    pub fn neg(&self) -> Self {
        let mut pairs = DenseSet::empty(self.source.order() * self.target.order());
        for a in 0..self.source.order() {
            for b in self.image(a).iter() {
                pairs.insert(a * self.target.order() + self.target.neg(b));
            }
        }
        DenseEndogeny {
            source: self.source.clone(),
            target: self.target.clone(),
            pairs,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// `{(a, c) : ∃b (a, b) ∈ other, (b, c) ∈ self}`.
    pub fn compose(&self, other: &Self) -> Self {
        let mine = self.fibers();
        let fibers: Vec<DenseSet> = other
            .fibers()
            .iter()
            .map(|mid| {
                let mut out = DenseSet::empty(self.target.order());
                for b in mid.iter() {
                    out.union_with(&mine[b]);
                }
                out
            })
            .collect();
        Self::from_fibers(&other.source, &self.target, &fibers)
    }

    /// The graph `A × F`.
    pub fn z(group: &DenseGroup, f: &DenseSet) -> Self {
        let fibers: Vec<DenseSet> = (0..group.order()).map(|_| f.clone()).collect();
        Self::from_fibers(group, group, &fibers)
    }

    pub fn identity(group: &DenseGroup) -> Self {
        let fibers: Vec<DenseSet> = (0..group.order())
            .map(|a| {
                let mut s = DenseSet::empty(group.order());
                s.insert(a);
                s
            })
            .collect();
        Self::from_fibers(group, group, &fibers)
    }

    /// `γ1[a] + F = γ2[a] + F` for every `a`.
    pub fn agree_modulo(&self, other: &Self, f: &DenseSet) -> bool {
        (0..self.source.order()).all(|a| {
            self.target.set_sum(&self.image(a), f) == self.target.set_sum(&other.image(a), f)
        })
    }

    /// Searches every subgroup `F ≤ n_max` for a witness of `γ1 ∼ γ2`.
    /// Past `budget` subgroups only `F = n_max` is tried, which is enough:
    /// a witness stays one after adding `n_max` to it.
    pub fn equivalent(&self, other: &Self, n_max: &DenseSet, budget: usize) -> Result<Option<DenseSet>> {
        match self.target.subgroups_below(n_max, budget) {
            Ok(subs) => Ok(subs.into_iter().find(|f| self.agree_modulo(other, f))),
            Err(Error::BudgetExceeded(_)) => Ok(self.agree_modulo(other, n_max).then(|| n_max.clone())),
            Err(e) => Err(e),
        }
    }

    /// `im(γδ − δγ) ⊆ kat γ + kat δ`, all sets computed literally.
    pub fn sharp_commutes(&self, other: &Self) -> bool {
        let sigma = self.compose(other).sub(&other.compose(self));
        let k = self.target.sum(&self.kat(), &other.kat());
        sigma.im().is_subset(&k)
    }

    pub fn weakly_invariant(&self, b: &DenseSet) -> bool {
        let bk = self.target.set_sum(b, &self.kat());
        self.apply_set(b).is_subset(&bk)
    }

    pub fn fully_invariant(&self, b: &DenseSet) -> bool {
        self.apply_set(b).is_subset(b)
    }

    /// `γ ∩ (B × B)`, still as pairs of the ambient group.
    pub fn restrict(&self, b: &DenseSet) -> Result<Self> {
        if !self.weakly_invariant(b) {
            return Err(Error::NotWeaklyInvariant);
        }
        let fibers: Vec<DenseSet> = (0..self.source.order())
            .map(|a| {
                if b.contains(a) {
                    self.image(a).and(b)
                } else {
                    DenseSet::empty(self.target.order())
                }
            })
            .collect();
        Ok(Self::from_fibers(&self.source, &self.target, &fibers))
    }

    /// Compares against the element set of a lattice-backed subgroup of `A × B`.
    pub fn same_pairs_as(&self, graph: &Subgroup) -> Result<bool> {
        let prod = Self::product(&self.source, &self.target)?;
        let gens: Vec<usize> = graph.generators().iter().map(|g| prod.encode(&g.coords)).collect();
        Ok(prod.generated(&gens) == self.pairs)
    }
}

/// `g(a)` for a homomorphism given by the images of the unit vectors.
pub fn hom_apply(source: &DenseGroup, target: &DenseGroup, g: &[usize], a: usize) -> usize {
    let coords = source.decode(a);
    let mut acc = 0;
    for (c, &img) in coords.iter().zip(g) {
        acc = target.add(acc, target.times(*c, img));
    }
    acc
}

/// Dense image of a core subgroup.
pub fn dense_subgroup(group: &DenseGroup, h: &Subgroup) -> DenseSet {
    let gens: Vec<usize> = h.generators().iter().map(|g| group.encode(&g.coords)).collect();
    group.generated(&gens)
}

/// Literal closure of `gens ∪ {0, 1, −1}` under `+`, `−`, `∘`.
pub fn closure(group: &DenseGroup, gens: &[DenseEndogeny], cap: usize) -> Result<Vec<DenseEndogeny>> {
    let id = DenseEndogeny::identity(group);
    let mut elems: Vec<DenseEndogeny> = Vec::new();
    let push = |e: DenseEndogeny, elems: &mut Vec<DenseEndogeny>| -> Result<()> {
        if !elems.contains(&e) {
            if elems.len() >= cap {
                return Err(Error::ClosureCapExceeded(cap));
            }
            elems.push(e);
        }
        Ok(())
    };
    push(DenseEndogeny::z(group, &group.trivial()), &mut elems)?;
    push(id.neg(), &mut elems)?;
    push(id, &mut elems)?;
    for g in gens {
        push(g.clone(), &mut elems)?;
    }
    let mut i = 0;
    while i < elems.len() {
        let x = elems[i].clone();
        push(x.neg(), &mut elems)?;
        for j in 0..=i {
            let y = elems[j].clone();
            push(x.add(&y), &mut elems)?;
            push(x.compose(&y), &mut elems)?;
            push(y.compose(&x), &mut elems)?;
        }
        i += 1;
    }
    Ok(elems)
}

/// All-pairs helper for tests: the sum of the katakernels of a family.
pub fn kat_sum(group: &DenseGroup, family: &[DenseEndogeny]) -> DenseSet {
    let mut k = group.trivial();
    for e in family {
        k = group.sum(&k, &e.kat());
    }
    k
}
