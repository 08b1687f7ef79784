//! Groups as explicit element lists and subgroups as bitsets.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Default ceiling on the number of elements the oracle will enumerate.
pub const ORACLE_CAP: usize = 4096;

/// A subset of a dense group, one bit per element index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DenseSet {
    bits: Vec<u64>,
    len: usize,
}

impl DenseSet {
    pub fn empty(len: usize) -> Self {
        DenseSet {
            bits: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for w in s.bits.iter_mut() {
            *w = u64::MAX;
        }
        if len % 64 != 0 {
            if let Some(last) = s.bits.last_mut() {
                *last = (1 << (len % 64)) - 1;
            }
        }
        s
    }

    pub fn insert(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, i % 64);
        let fresh = self.bits[w] & (1 << b) == 0;
        self.bits[w] |= 1 << b;
        fresh
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.range(0, self.len)
    }

    /// Members in `start..end`, skipping empty words.
    pub fn range(&self, start: usize, end: usize) -> impl Iterator<Item = usize> + '_ {
        let end = end.min(self.len);
        let (w0, w1) = (start / 64, end.div_ceil(64));
        (w0..w1).flat_map(move |w| {
            let mut word = self.bits[w];
            core::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + b)
            })
        })
        .filter(move |&i| i >= start && i < end)
    }

    pub fn is_subset(&self, other: &DenseSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn and(&self, other: &DenseSet) -> DenseSet {
        DenseSet {
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a & b).collect(),
            len: self.len,
        }
    }

    pub fn union_with(&mut self, other: &DenseSet) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }
}

/// `Z/m_1 ⊕ … ⊕ Z/m_r` with elements indexed in mixed radix, last coordinate
/// fastest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseGroup {
    moduli: Vec<u64>,
    order: usize,
}

impl DenseGroup {
    pub fn new(moduli: &[u64], cap: usize) -> Result<Self> {
        let order: u128 = moduli.iter().map(|&m| m as u128).product();
        if order > cap as u128 {
            return Err(Error::CapExceeded {
                order: order.min(u64::MAX as u128) as u64,
                cap: cap as u64,
            });
        }
        Ok(DenseGroup {
            moduli: moduli.to_vec(),
            order: order as usize,
        })
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn encode(&self, coords: &[i64]) -> usize {
        let mut idx = 0usize;
        for (&c, &m) in coords.iter().zip(&self.moduli) {
            idx = idx * m as usize + c.rem_euclid(m as i64) as usize;
        }
        idx
    }

    pub fn decode(&self, mut idx: usize) -> Vec<i64> {
        let mut c = vec![0i64; self.moduli.len()];
        for i in (0..self.moduli.len()).rev() {
            let m = self.moduli[i] as usize;
            c[i] = (idx % m) as i64;
            idx /= m;
        }
        c
    }

    pub fn add(&self, mut x: usize, mut y: usize) -> usize {
        let (mut res, mut mul) = (0, 1);
        for &m in self.moduli.iter().rev() {
            let m = m as usize;
            res += ((x % m + y % m) % m) * mul;
            x /= m;
            y /= m;
            mul *= m;
        }
        res
    }

    pub fn neg(&self, x: usize) -> usize {
        self.times(-1, x)
    }

    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add(x, self.neg(y))
    }

    pub fn times(&self, k: i64, mut x: usize) -> usize {
        let (mut res, mut mul) = (0, 1);
        for &m in self.moduli.iter().rev() {
            let mi = m as i64;
            let d = (x % m as usize) as i64;
            res += ((d * k.rem_euclid(mi)) % mi) as usize * mul;
            x /= m as usize;
            mul *= m as usize;
        }
        res
    }

    /// `H + ⟨x⟩` as a union of cosets `H + kx`.
    pub fn extend(&self, h: &DenseSet, x: usize) -> DenseSet {
        let mut out = h.clone();
        let mut kx = x;
        while !h.contains(kx) {
            for y in h.iter() {
                out.insert(self.add(kx, y));
            }
            kx = self.add(kx, x);
        }
        out
    }

    /// Subgroup generated by `gens`, by repeated addition.
    pub fn generated(&self, gens: &[usize]) -> DenseSet {
        let mut set = DenseSet::empty(self.order);
        set.insert(0);
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.add(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    /// `⟨H ∪ K⟩`, adjoining one element at a time and skipping those
    /// already reached.
    pub fn sum(&self, h: &DenseSet, k: &DenseSet) -> DenseSet {
        let mut out = self.trivial();
        for x in h.iter().chain(k.iter()) {
            if !out.contains(x) {
                out = self.extend(&out, x);
            }
        }
        out
    }

    pub fn trivial(&self) -> DenseSet {
        self.generated(&[])
    }

    pub fn whole(&self) -> DenseSet {
        DenseSet::full(self.order)
    }

    /// `(s0, S − s0)` when `S − s0` is closed under addition, so that `S`
    /// is a coset of it.
    pub fn as_coset(&self, s: &DenseSet) -> Option<(usize, DenseSet)> {
        let s0 = s.first()?;
        let mut h = DenseSet::empty(self.order);
        for y in s.iter() {
            h.insert(self.sub(y, s0));
        }
        (self.sum(&h, &self.trivial()) == h).then_some((s0, h))
    }

    /// `{a + s : s ∈ S}` for every `a ∈ X`. When either side is a coset
    /// `c + H` the result is a union of translates of `H`, and a translate
    /// whose base point is already covered is skipped.
    pub fn set_sum(&self, x: &DenseSet, s: &DenseSet) -> DenseSet {
        let mut out = DenseSet::empty(self.order);
        let coset = self.as_coset(s).map(|c| (x, c)).or_else(|| self.as_coset(x).map(|c| (s, c)));
        if let Some((other, (c, h))) = coset {
            for a in other.iter() {
                let base = self.add(a, c);
                if !out.contains(base) {
                    for y in h.iter() {
                        out.insert(self.add(base, y));
                    }
                }
            }
            return out;
        }
        for a in x.iter() {
            for b in s.iter() {
                out.insert(self.add(a, b));
            }
        }
        out
    }

    /// Invariant factors of `G/H`, read off from the counts
    /// `#{x ∈ G/H : p^e x = 0}`.
    pub fn quotient_type(&self, h: &DenseSet) -> Vec<u64> {
        let index = self.order / h.count();
        let mut primes = Vec::new();
        let mut n = index;
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                primes.push(d);
                while n % d == 0 {
                    n /= d;
                }
            }
            d += 1;
        }
        if n > 1 {
            primes.push(n);
        }
        // Coset representatives: smallest index of each coset.
        let mut reps = Vec::new();
        let mut covered = DenseSet::empty(self.order);
        for x in 0..self.order {
            if !covered.contains(x) {
                reps.push(x);
                for y in h.iter() {
                    covered.insert(self.add(x, y));
                }
            }
        }
        let killed = |k: i64| reps.iter().filter(|&&x| h.contains(self.times(k, x))).count();
        // For each prime: number of cyclic factors of exponent ≥ e.
        let mut per_prime: Vec<(u64, Vec<u32>)> = Vec::new();
        for &p in &primes {
            let mut exps = Vec::new();
            let mut prev = 1usize;
            let mut pe = 1i64;
            let mut e = 0u32;
            loop {
                pe *= p as i64;
                e += 1;
                let c = killed(pe);
                if c == prev {
                    break;
                }
                let mut r = 0;
                let mut ratio = c / prev;
                while ratio > 1 {
                    ratio /= p;
                    r += 1;
                }
                exps.push((e, r));
                prev = c;
            }
            // exps[e-1].1 = number of factors with exponent ≥ e
            let mut list = Vec::new();
            for (i, &(e, r)) in exps.iter().enumerate() {
                let next = exps.get(i + 1).map_or(0, |x| x.1);
                for _ in 0..(r - next) {
                    list.push(e);
                }
            }
            list.sort_unstable();
            per_prime.push((p as u64, list));
        }
        let len = per_prime.iter().map(|(_, l)| l.len()).max().unwrap_or(0);
        let mut factors = vec![1u64; len];
        for (p, l) in per_prime {
            let off = len - l.len();
            for (i, e) in l.into_iter().enumerate() {
                factors[off + i] *= p.pow(e);
            }
        }
        factors
    }

    pub fn iso_type(&self) -> Vec<u64> {
        self.quotient_type(&self.trivial())
    }

    /// Every subgroup, found by adjoining one element at a time.
    pub fn all_subgroups(&self) -> Vec<DenseSet> {
        self.subgroups_below(&self.whole(), usize::MAX)
            .expect("unbounded search")
    }

    /// Every subgroup of `top`; fails once more than `budget` are found.
    pub fn subgroups_below(&self, top: &DenseSet, budget: usize) -> Result<Vec<DenseSet>> {
        let mut seen: BTreeSet<DenseSet> = BTreeSet::new();
        let start = self.trivial();
        seen.insert(start.clone());
        let mut queue = vec![start];
        let mut out = Vec::new();
        while let Some(h) = queue.pop() {
            let mut reached = h.clone();
            for x in top.iter() {
                if reached.contains(x) {
                    continue;
                }
                // H + ⟨x + h⟩ = H + ⟨x⟩, so the whole coset is done.
                for y in h.iter() {
                    reached.insert(self.add(x, y));
                }
                let k = self.extend(&h, x);
                if seen.insert(k.clone()) {
                    if seen.len() > budget {
                        return Err(Error::BudgetExceeded(alloc::format!("more than {budget} subgroups")));
                    }
                    queue.push(k);
                }
            }
            out.push(h);
        }
        out.sort();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subgroup_lattice_of_z4() {
        let g = DenseGroup::new(&[4], ORACLE_CAP).unwrap();
        let subs = g.all_subgroups();
        assert_eq!(subs.len(), 3);
        let orders: BTreeSet<usize> = subs.iter().map(|s| s.count()).collect();
        assert_eq!(orders.into_iter().collect::<Vec<_>>(), vec![1, 2, 4]);
    }

    #[test]
    fn iso_types_by_counting() {
        let g = DenseGroup::new(&[4, 6], ORACLE_CAP).unwrap();
        assert_eq!(g.iso_type(), vec![2, 12]);
        let g = DenseGroup::new(&[2, 4], ORACLE_CAP).unwrap();
        let h = g.generated(&[g.encode(&[1, 2])]);
        assert_eq!(g.quotient_type(&h), vec![4]);
        assert_eq!(g.quotient_type(&g.whole()), Vec::<u64>::new());
        let t = DenseGroup::new(&[1], ORACLE_CAP).unwrap();
        assert_eq!(t.iso_type(), Vec::<u64>::new());
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            DenseGroup::new(&[64, 128], ORACLE_CAP),
            Err(Error::CapExceeded { .. })
        ));
    }
}
