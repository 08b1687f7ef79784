//! Subgroups of a cyclic presentation, stored as canonical lattices.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::{concat, Ambient, FinAbGroup, GroupElement, Quotient};
use crate::lattice::{smith_columns, Lattice};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    ambient: Ambient,
    lat: Lattice,
}

impl Subgroup {
    pub fn trivial(ambient: &Ambient) -> Self {
        Subgroup {
            ambient: ambient.clone(),
            lat: Lattice::relations(ambient.moduli()),
        }
    }

    pub fn whole(ambient: &Ambient) -> Self {
        Subgroup {
            ambient: ambient.clone(),
            lat: Lattice::full(ambient.moduli()),
        }
    }

    pub fn generated(ambient: &Ambient, gens: &[GroupElement]) -> Result<Self> {
        for g in gens {
            ambient.check(g)?;
        }
        Ok(Self::generated_unchecked(ambient, gens.iter().map(|g| &g.coords[..])))
    }

    /// Generators given as raw coordinate slices of the right length; they are
    /// reduced modulo the ambient moduli.
    pub(crate) fn generated_unchecked<'a, I>(ambient: &Ambient, gens: I) -> Self
    where
        I: IntoIterator<Item = &'a [i64]>,
    {
        Subgroup {
            ambient: ambient.clone(),
            lat: Lattice::generated(ambient.moduli(), gens),
        }
    }

    pub(crate) fn from_lattice(ambient: &Ambient, lat: Lattice) -> Self {
        debug_assert_eq!(lat.dim(), ambient.rank());
        Subgroup { ambient: ambient.clone(), lat }
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lat
    }

    /// Canonical generating set: the normal-form rows that are not relations.
    pub fn generators(&self) -> Vec<GroupElement> {
        let m = self.ambient.moduli();
        self.lat
            .rows()
            .iter()
            .enumerate()
            .filter(|(i, row)| row[*i] as u64 != m[*i])
            .map(|(_, row)| GroupElement::new(row.clone()))
            .collect()
    }

    pub fn order(&self) -> u128 {
        self.lat.order()
    }

    pub fn index(&self) -> u128 {
        self.lat.index()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.lat.is_full()
    }

    fn same_ambient(&self, other: &Subgroup) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::mismatch(format!(
                "subgroups of {} and {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn contains(&self, a: &GroupElement) -> Result<bool> {
        self.ambient.check(a)?;
        Ok(self.lat.contains(&a.coords))
    }

    pub(crate) fn has(&self, a: &GroupElement) -> bool {
        self.lat.contains(&a.coords)
    }

    pub fn leq(&self, other: &Subgroup) -> Result<bool> {
        self.same_ambient(other)?;
        Ok(self.lat.leq(&other.lat))
    }

    pub(crate) fn le(&self, other: &Subgroup) -> bool {
        self.lat.leq(&other.lat)
    }

    pub fn sum(&self, other: &Subgroup) -> Result<Subgroup> {
        self.same_ambient(other)?;
        Ok(self.plus(other))
    }

    pub(crate) fn plus(&self, other: &Subgroup) -> Subgroup {
        Subgroup {
            ambient: self.ambient.clone(),
            lat: self.lat.sum(&other.lat),
        }
    }

    pub fn intersect(&self, other: &Subgroup) -> Result<Subgroup> {
        self.same_ambient(other)?;
        Ok(self.meet(other))
    }

    pub(crate) fn meet(&self, other: &Subgroup) -> Subgroup {
        Subgroup {
            ambient: self.ambient.clone(),
            lat: self.lat.intersect(&other.lat),
        }
    }

    /// `k·H`.
    pub fn scaled(&self, k: i64) -> Subgroup {
        Subgroup {
            ambient: self.ambient.clone(),
            lat: self.lat.scaled(k),
        }
    }

    /// `H × K` inside the product ambient.
    pub fn product(&self, other: &Subgroup) -> Subgroup {
        let amb = self.ambient.product(&other.ambient);
        let zl = self.ambient.zero();
        let zr = other.ambient.zero();
        let gens: Vec<GroupElement> = self
            .generators()
            .iter()
            .map(|g| concat(g, &zr))
            .chain(other.generators().iter().map(|g| concat(&zl, g)))
            .collect();
        Subgroup::generated_unchecked(&amb, gens.iter().map(|g| &g.coords[..]))
    }

    /// `A/H` in canonical form with the projection map.
    pub fn quotient(&self) -> Quotient {
        Quotient::of(&self.lat, &self.ambient).expect("subgroup lattices are nonsingular")
    }

    /// An isomorphism between `H` and a canonical group.
    pub fn as_group(&self) -> Result<SubgroupIso> {
        SubgroupIso::new(self)
    }

    /// Canonical coset representative of `a + H`.
    pub fn reduce(&self, a: &GroupElement) -> GroupElement {
        let r = self.ambient.rank();
        let m = self.ambient.moduli();
        let mut v: Vec<i128> = a.coords.iter().map(|&x| x as i128).collect();
        for i in 0..r {
            let row = &self.lat.rows()[i];
            let p = row[i] as i128;
            let q = v[i].div_euclid(p);
            if q != 0 {
                for k in i..r {
                    v[k] = (v[k] - q * row[k] as i128).rem_euclid(m[k] as i128);
                }
            }
        }
        self.ambient.reduce(&v)
    }

    /// All elements, enumerated through the canonical isomorphism.
    pub fn elements(&self) -> Result<Vec<GroupElement>> {
        let iso = self.as_group()?;
        Ok(iso.group().ambient().elements().map(|y| iso.embed(&y)).collect())
    }
}

/// `rep + H`, stored with the canonical representative so that equality is
/// structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coset {
    representative: GroupElement,
    subgroup: Subgroup,
}

impl Coset {
    pub fn new(representative: &GroupElement, subgroup: &Subgroup) -> Result<Self> {
        subgroup.ambient().check(representative)?;
        Ok(Coset {
            representative: subgroup.reduce(representative),
            subgroup: subgroup.clone(),
        })
    }

    pub fn representative(&self) -> &GroupElement {
        &self.representative
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn contains(&self, a: &GroupElement) -> Result<bool> {
        let amb = self.subgroup.ambient();
        amb.check(a)?;
        Ok(self.subgroup.has(&amb.sub(a, &self.representative)))
    }
}

/// `H ≅ ⊕ Z/s_i`, computed from the normal form `Λ_H` of `H`: with `Λ_H = Z^r B`
/// the relation lattice pulls back to `M = {c : cB ∈ diag(m)Z^r}` and
/// `H ≅ Z^r/M`.
#[derive(Clone, Debug)]
pub struct SubgroupIso {
    sub: Subgroup,
    group: FinAbGroup,
    v: Vec<Vec<i128>>,
    v_inv: Vec<Vec<i128>>,
    keep: Vec<usize>,
}

impl SubgroupIso {
    fn new(sub: &Subgroup) -> Result<Self> {
        let r = sub.ambient.rank();
        if r == 0 {
            return Ok(SubgroupIso {
                sub: sub.clone(),
                group: FinAbGroup::trivial(),
                v: Vec::new(),
                v_inv: Vec::new(),
                keep: Vec::new(),
            });
        }
        let m = sub.ambient.moduli();
        let mut rel = Vec::with_capacity(r);
        for i in 0..r {
            let mut t = vec![0i128; r];
            t[i] = m[i] as i128;
            let c = sub
                .lat
                .coefficients(&t)
                .ok_or_else(|| Error::invalid("relation outside subgroup lattice"))?;
            rel.push(c);
        }
        let (d, v, v_inv) = smith_columns(&rel)?;
        let keep: Vec<usize> = (0..r).filter(|&i| d[i] != 1).collect();
        let factors: Vec<u64> = keep.iter().map(|&i| d[i] as u64).collect();
        let group = FinAbGroup::from_invariant_factors(&factors)?;
        Ok(SubgroupIso {
            sub: sub.clone(),
            group,
            v,
            v_inv,
            keep,
        })
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.sub
    }

    /// Coordinates of `a ∈ H` in the canonical group.
    pub fn coords(&self, a: &GroupElement) -> Result<GroupElement> {
        let x: Vec<i128> = a.coords.iter().map(|&c| c as i128).collect();
        let c = self
            .sub
            .lat
            .coefficients(&x)
            .ok_or_else(|| Error::invalid(format!("{:?} is not in the subgroup", a.coords)))?;
        let r = c.len();
        let coords = self
            .keep
            .iter()
            .zip(self.group.invariant_factors())
            .map(|(&i, &d)| {
                let d = d as i128;
                let s: i128 = (0..r).map(|k| (c[k].rem_euclid(d) * self.v[k][i].rem_euclid(d)) % d).sum();
                s.rem_euclid(d) as i64
            })
            .collect();
        Ok(GroupElement::new(coords))
    }

    /// The element of `H` with canonical coordinates `y`.
    pub fn embed(&self, y: &GroupElement) -> GroupElement {
        let r = self.sub.ambient.rank();
        let mut c = vec![0i128; r];
        for (t, &i) in self.keep.iter().enumerate() {
            for (j, cj) in c.iter_mut().enumerate() {
                *cj += y.coords[t] as i128 * self.v_inv[i][j];
            }
        }
        let m = self.sub.ambient.moduli();
        let mut x = vec![0i128; r];
        for (k, &ck) in c.iter().enumerate() {
            let row = &self.sub.lat.rows()[k];
            for j in k..r {
                let mj = m[j] as i128;
                x[j] = (x[j] + ck.rem_euclid(mj) * row[j] as i128).rem_euclid(mj);
            }
        }
        self.sub.ambient.reduce(&x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn amb(m: &[u64]) -> Ambient {
        Ambient::new(m.to_vec()).unwrap()
    }

    fn sg(a: &Ambient, gens: &[&[i64]]) -> Subgroup {
        let gens: Vec<GroupElement> = gens.iter().map(|g| a.element(g).unwrap()).collect();
        Subgroup::generated(a, &gens).unwrap()
    }

    #[test]
    fn generated_orders() {
        let z4 = amb(&[4]);
        let h = sg(&z4, &[&[2]]);
        assert_eq!(h.order(), 2);
        assert!(h.contains(&z4.element(&[2]).unwrap()).unwrap());
        let a = amb(&[2, 4]);
        assert_eq!(sg(&a, &[&[1, 2]]).order(), 2);
        assert_eq!(sg(&a, &[&[0, 1]]).order(), 4);
        assert_eq!(sg(&a, &[&[1, 1]]).order(), 4);
        assert_eq!(Subgroup::trivial(&a).index(), 8);
        assert!(sg(&a, &[]).is_trivial());
    }

    #[test]
    fn sums_and_meets() {
        let k = amb(&[2, 2]);
        let x = sg(&k, &[&[1, 0]]);
        let y = sg(&k, &[&[0, 1]]);
        let d = sg(&k, &[&[1, 1]]);
        assert!(x.sum(&y).unwrap().is_whole());
        assert!(x.intersect(&d).unwrap().is_trivial());
        let a = amb(&[2, 4]);
        let m = sg(&a, &[&[1, 1]]).intersect(&sg(&a, &[&[0, 1]])).unwrap();
        assert_eq!(m, sg(&a, &[&[0, 2]]));
        assert!(x.sum(&sg(&a, &[])).is_err());
    }

    #[test]
    fn quotients() {
        let z4 = amb(&[4]);
        let q = sg(&z4, &[&[2]]).quotient();
        assert_eq!(q.target().invariant_factors(), &[2]);
        assert!(Subgroup::whole(&z4).quotient().target().invariant_factors().is_empty());
        let a = amb(&[2, 4]);
        let f = sg(&a, &[&[1, 2]]);
        let q = f.quotient();
        assert_eq!(q.target().invariant_factors(), &[4]);
        for x in a.elements() {
            assert_eq!(q.map(&x).is_zero(), f.has(&x));
            assert_eq!(q.map(&q.lift(&q.map(&x))), q.map(&x));
        }
    }

    #[test]
    fn subgroup_iso_roundtrip() {
        let a = amb(&[2, 4, 8]);
        let h = sg(&a, &[&[1, 2, 4], &[0, 1, 2]]);
        let iso = h.as_group().unwrap();
        assert_eq!(iso.group().order(), h.order());
        let elems = h.elements().unwrap();
        assert_eq!(elems.len() as u128, h.order());
        for y in iso.group().ambient().elements() {
            let x = iso.embed(&y);
            assert!(h.has(&x));
            assert_eq!(iso.coords(&x).unwrap(), y);
        }
    }

    #[test]
    fn cosets() {
        let a = amb(&[2, 4]);
        let h = sg(&a, &[&[0, 2]]);
        let c1 = Coset::new(&a.element(&[0, 1]).unwrap(), &h).unwrap();
        let c2 = Coset::new(&a.element(&[0, 3]).unwrap(), &h).unwrap();
        assert_eq!(c1, c2);
        assert!(c1.contains(&a.element(&[0, 3]).unwrap()).unwrap());
        assert!(!c1.contains(&a.element(&[1, 1]).unwrap()).unwrap());
    }
}
