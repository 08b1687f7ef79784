//! Finite abelian groups, their cyclic presentations and elements.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use alloc::format;

use crate::arith::{factorize, rem};
use crate::error::{Error, Result};
use crate::lattice::{smith_columns, Lattice, MAX_MODULUS};

/// A coordinate system `Z/m_1 ⊕ … ⊕ Z/m_r`.
///
/// Unlike [`FinAbGroup`] the moduli need not form a divisibility chain. Products
/// of groups and split groups `V ⊕ T` keep their block coordinates this way,
/// and every subgroup or endogeny lives inside some ambient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ambient {
    moduli: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub coords: Vec<i64>,
}

impl GroupElement {
    pub fn new(coords: Vec<i64>) -> Self {
        GroupElement { coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl Ambient {
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        if let Some(&m) = moduli.iter().find(|&&m| m == 0 || m >= MAX_MODULUS) {
            return Err(Error::invalid(format!("modulus {m} outside [1, 2^31)")));
        }
        Ok(Ambient { moduli })
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> u128 {
        self.moduli.iter().map(|&m| m as u128).product()
    }

    /// Least common multiple of the moduli.
    pub fn exponent(&self) -> u64 {
        self.moduli.iter().fold(1, |a, &m| crate::arith::lcm_u64(a, m))
    }

    /// Concatenated coordinates of `self ⊕ other`.
    pub fn product(&self, other: &Ambient) -> Ambient {
        let mut moduli = self.moduli.clone();
        moduli.extend_from_slice(&other.moduli);
        Ambient { moduli }
    }

    /// Canonical isomorphism type.
    pub fn iso_type(&self) -> FinAbGroup {
        FinAbGroup::canonical_of(&self.moduli)
    }

    /// Validates coordinates: right length and each in `[0, m_i)`.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(Error::invalid(format!(
                "element has {} coordinates, group has rank {}",
                coords.len(),
                self.rank()
            )));
        }
        for (&c, &m) in coords.iter().zip(&self.moduli) {
            if c < 0 || c as u64 >= m {
                return Err(Error::invalid(format!("coordinate {c} not in [0, {m})")));
            }
        }
        Ok(GroupElement::new(coords.to_vec()))
    }

    /// Reduces arbitrary integer coordinates into the group.
    pub fn reduce(&self, coords: &[i128]) -> GroupElement {
        debug_assert_eq!(coords.len(), self.rank());
        GroupElement::new(
            coords
                .iter()
                .zip(&self.moduli)
                .map(|(&c, &m)| rem(c, m as i128) as i64)
                .collect(),
        )
    }

    pub fn reduce_i64(&self, coords: &[i64]) -> GroupElement {
        let v: Vec<i128> = coords.iter().map(|&c| c as i128).collect();
        self.reduce(&v)
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement::new(vec![0; self.rank()])
    }

    pub fn unit(&self, j: usize) -> GroupElement {
        let mut c = vec![0; self.rank()];
        c[j] = (1 % self.moduli[j]) as i64;
        GroupElement::new(c)
    }

    pub fn contains(&self, a: &GroupElement) -> bool {
        a.coords.len() == self.rank()
            && a.coords.iter().zip(&self.moduli).all(|(&c, &m)| c >= 0 && (c as u64) < m)
    }

    pub fn check(&self, a: &GroupElement) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::invalid(format!("{:?} is not an element of {:?}", a.coords, self.moduli)))
        }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement::new(
            a.coords
                .iter()
                .zip(&b.coords)
                .zip(&self.moduli)
                .map(|((&x, &y), &m)| ((x as i128 + y as i128).rem_euclid(m as i128)) as i64)
                .collect(),
        )
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement::new(
            a.coords
                .iter()
                .zip(&self.moduli)
                .map(|(&x, &m)| ((-(x as i128)).rem_euclid(m as i128)) as i64)
                .collect(),
        )
    }

    pub fn scale(&self, k: i64, a: &GroupElement) -> GroupElement {
        GroupElement::new(
            a.coords
                .iter()
                .zip(&self.moduli)
                .map(|(&x, &m)| ((x as i128 * k as i128).rem_euclid(m as i128)) as i64)
                .collect(),
        )
    }

    /// Order of an element.
    pub fn element_order(&self, a: &GroupElement) -> u64 {
        a.coords.iter().zip(&self.moduli).fold(1, |acc, (&x, &m)| {
            let g = crate::arith::gcd_u64(x as u64, m);
            crate::arith::lcm_u64(acc, m / g)
        })
    }

    /// All elements in lexicographic order (last coordinate fastest).
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        let total = self.order();
        (0..total).map(move |mut idx| {
            let mut coords = vec![0i64; self.rank()];
            for i in (0..self.rank()).rev() {
                let m = self.moduli[i] as u128;
                coords[i] = (idx % m) as i64;
                idx /= m;
            }
            GroupElement::new(coords)
        })
    }

    /// Splits an element of `self ⊕ other` written in product coordinates.
    pub fn split_at(&self, split: usize, a: &GroupElement) -> (GroupElement, GroupElement) {
        (
            GroupElement::new(a.coords[..split].to_vec()),
            GroupElement::new(a.coords[split..].to_vec()),
        )
    }
}

pub fn concat(a: &GroupElement, b: &GroupElement) -> GroupElement {
    let mut c = a.coords.clone();
    c.extend_from_slice(&b.coords);
    GroupElement::new(c)
}

/// A finite abelian group in invariant-factor form `d_1 | d_2 | … | d_r`,
/// `d_1 ≥ 2`; the trivial group has no factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinAbGroup {
    factors: Vec<u64>,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        FinAbGroup { factors: Vec::new() }
    }

    /// Invariant-factor form of `⊕ Z/f_i`.
    pub fn new(factors: &[i64]) -> Result<Self> {
        if let Some(&f) = factors.iter().find(|&&f| f <= 0) {
            return Err(Error::invalid(format!("cyclic factor {f} must be positive")));
        }
        if let Some(&f) = factors.iter().find(|&&f| f as u64 >= MAX_MODULUS) {
            return Err(Error::invalid(format!("cyclic factor {f} too large")));
        }
        let moduli: Vec<u64> = factors.iter().map(|&f| f as u64).collect();
        Ok(Self::canonical_of(&moduli))
    }

    /// Accepts only a list that is already canonical.
    pub fn from_invariant_factors(factors: &[u64]) -> Result<Self> {
        let g = FinAbGroup::new(&factors.iter().map(|&f| f as i64).collect::<Vec<_>>())?;
        if g.factors != factors {
            return Err(Error::invalid(format!(
                "invariant factors {factors:?} are not canonical (expected {:?})",
                g.factors
            )));
        }
        Ok(g)
    }

    fn canonical_of(moduli: &[u64]) -> Self {
        // Collect prime-power parts per prime, then stack the largest powers.
        let mut per_prime: Vec<(u64, Vec<u32>)> = Vec::new();
        for &m in moduli {
            for (p, e) in factorize(m) {
                match per_prime.iter_mut().find(|(q, _)| *q == p) {
                    Some((_, es)) => es.push(e),
                    None => per_prime.push((p, vec![e])),
                }
            }
        }
        let len = per_prime.iter().map(|(_, es)| es.len()).max().unwrap_or(0);
        let mut factors = vec![1u64; len];
        for (p, mut es) in per_prime {
            es.sort_unstable();
            let offset = len - es.len();
            for (i, e) in es.into_iter().enumerate() {
                factors[offset + i] *= p.pow(e);
            }
        }
        FinAbGroup { factors }
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u128 {
        self.factors.iter().map(|&d| d as u128).product()
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn ambient(&self) -> Ambient {
        Ambient { moduli: self.factors.clone() }
    }

    /// Canonical form of `A ⊕ B` with the coordinate maps.
    pub fn direct_sum(&self, other: &FinAbGroup) -> DirectSum {
        let left = self.ambient();
        let right = other.ambient();
        let product = left.product(&right);
        let iso = Quotient::of(&Lattice::relations(product.moduli()), &product)
            .expect("relation lattice is diagonal and nonsingular");
        DirectSum { left, right, product, iso }
    }
}

impl core::fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<_> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// The map `Z^r/L → ⊕ Z/d_i` (canonical form) given by the Smith form of `L`,
/// together with a section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    source: Ambient,
    target: FinAbGroup,
    // column transform of the Smith form and its inverse
    v: Vec<Vec<i128>>,
    v_inv: Vec<Vec<i128>>,
    keep: Vec<usize>,
}

impl Quotient {
    /// Quotient of `source` by the subgroup whose preimage lattice is `lat`.
    pub fn of(lat: &Lattice, source: &Ambient) -> Result<Self> {
        let r = source.rank();
        if r == 0 {
            return Ok(Quotient {
                source: source.clone(),
                target: FinAbGroup::trivial(),
                v: Vec::new(),
                v_inv: Vec::new(),
                keep: Vec::new(),
            });
        }
        let a: Vec<Vec<i128>> = lat
            .rows()
            .iter()
            .map(|row| row.iter().map(|&x| x as i128).collect())
            .collect();
        let (d, v, v_inv) = smith_columns(&a)?;
        let keep: Vec<usize> = (0..r).filter(|&i| d[i] != 1).collect();
        let factors = keep.iter().map(|&i| d[i] as u64).collect();
        Ok(Quotient {
            source: source.clone(),
            target: FinAbGroup { factors },
            v,
            v_inv,
            keep,
        })
    }

    pub fn source(&self) -> &Ambient {
        &self.source
    }

    pub fn target(&self) -> &FinAbGroup {
        &self.target
    }

    pub fn map(&self, a: &GroupElement) -> GroupElement {
        let r = self.source.rank();
        let coords = self
            .keep
            .iter()
            .zip(self.target.invariant_factors())
            .map(|(&i, &d)| {
                let s: i128 = (0..r)
                    .map(|k| (a.coords[k] as i128 * self.v[k][i]).rem_euclid(d as i128))
                    .sum();
                rem(s, d as i128) as i64
            })
            .collect();
        GroupElement::new(coords)
    }

    /// A preimage of `y`.
    pub fn lift(&self, y: &GroupElement) -> GroupElement {
        let r = self.source.rank();
        let coords: Vec<i128> = (0..r)
            .map(|j| {
                let m = self.source.moduli()[j] as i128;
                let s: i128 = self
                    .keep
                    .iter()
                    .enumerate()
                    .map(|(t, &i)| (y.coords[t] as i128 * self.v_inv[i][j]).rem_euclid(m))
                    .sum();
                s
            })
            .collect();
        self.source.reduce(&coords)
    }
}

/// `A ⊕ B` in block coordinates plus the isomorphism onto its canonical form.
#[derive(Clone, Debug)]
pub struct DirectSum {
    left: Ambient,
    right: Ambient,
    product: Ambient,
    iso: Quotient,
}

impl DirectSum {
    pub fn group(&self) -> &FinAbGroup {
        self.iso.target()
    }

    pub fn inject_left(&self, a: &GroupElement) -> GroupElement {
        self.iso.map(&concat(a, &self.right.zero()))
    }

    pub fn inject_right(&self, b: &GroupElement) -> GroupElement {
        self.iso.map(&concat(&self.left.zero(), b))
    }

    pub fn project_left(&self, c: &GroupElement) -> GroupElement {
        let x = self.iso.lift(c);
        self.product.split_at(self.left.rank(), &x).0
    }

    pub fn project_right(&self, c: &GroupElement) -> GroupElement {
        let x = self.iso.lift(c);
        self.product.split_at(self.left.rank(), &x).1
    }
}

impl core::fmt::Display for Ambient {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let parts: Vec<_> = self.moduli.iter().map(|m| m.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(f: &[i64]) -> Vec<u64> {
        FinAbGroup::new(f).unwrap().invariant_factors().to_vec()
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(g(&[1]), Vec::<u64>::new());
        assert_eq!(g(&[2, 2]), vec![2, 2]);
        assert_eq!(g(&[4, 6]), vec![2, 12]);
        assert_eq!(g(&[2, 3]), vec![6]);
        assert_eq!(g(&[12, 18, 5]), vec![6, 180]);
        assert!(FinAbGroup::new(&[0]).is_err());
        assert!(FinAbGroup::new(&[-3]).is_err());
        assert!(FinAbGroup::from_invariant_factors(&[4, 2]).is_err());
    }

    #[test]
    fn direct_sums() {
        let two = FinAbGroup::new(&[2]).unwrap();
        let three = FinAbGroup::new(&[3]).unwrap();
        assert_eq!(two.direct_sum(&three).group().invariant_factors(), &[6]);
        assert_eq!(two.direct_sum(&two).group().invariant_factors(), &[2, 2]);
        let a = FinAbGroup::new(&[2, 4]).unwrap();
        let s = a.direct_sum(&two);
        assert_eq!(s.group().invariant_factors(), &[2, 2, 4]);
        for x in a.ambient().elements() {
            assert_eq!(s.project_left(&s.inject_left(&x)), x);
            assert!(s.project_right(&s.inject_left(&x)).is_zero());
        }
        for y in two.ambient().elements() {
            assert_eq!(s.project_right(&s.inject_right(&y)), y);
        }
    }

    #[test]
    fn element_arithmetic() {
        let a = Ambient::new(vec![2, 4]).unwrap();
        let x = a.element(&[1, 3]).unwrap();
        assert_eq!(a.add(&x, &x).coords, vec![0, 2]);
        assert_eq!(a.neg(&x).coords, vec![1, 1]);
        assert_eq!(a.element_order(&x), 4);
        assert!(a.element(&[2, 0]).is_err());
        assert!(a.element(&[0]).is_err());
        assert_eq!(a.elements().count(), 8);
    }
}
