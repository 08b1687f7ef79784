//! Exhaustive enumeration: groups, homomorphisms, and bounded witness search.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::dense::{DenseGroup, DenseSet};
use super::endo::{hom_apply, DenseEndogeny};
use crate::arith::factorize;
use crate::error::{Error, Result};

/// Every abelian group of order at most `max_order`, as invariant factors,
/// sorted by order and then lexicographically.
pub fn abelian_groups(max_order: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for n in 1..=max_order {
        let mut lists: Vec<Vec<u64>> = vec![Vec::new()];
        for (p, e) in factorize(n) {
            let mut next = Vec::new();
            for part in partitions(e, e) {
                for base in &lists {
                    next.push(merge(base, p, &part));
                }
            }
            lists = next;
        }
        lists.sort();
        out.extend(lists);
    }
    out
}

/// Partitions of `n` into parts of size at most `max`, parts descending.
fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Multiplies the `p`-parts `p^part` into an ascending invariant-factor list.
fn merge(base: &[u64], p: u64, part: &[u32]) -> Vec<u64> {
    let len = base.len().max(part.len());
    let mut f = vec![1u64; len];
    let off = len - base.len();
    for (i, &d) in base.iter().enumerate() {
        f[off + i] *= d;
    }
    let off = len - part.len();
    for (i, &e) in part.iter().rev().enumerate() {
        f[off + i] *= p.pow(e);
    }
    f
}

/// Every homomorphism `A → B`, as the images of the unit vectors of `A`,
/// in lexicographic order of those images.
pub fn enumerate_homomorphisms(a: &DenseGroup, b: &DenseGroup, budget: usize) -> Result<Vec<Vec<usize>>> {
    let choices: Vec<Vec<usize>> = a
        .moduli()
        .iter()
        .map(|&m| (0..b.order()).filter(|&y| b.times(m as i64, y) == 0).collect())
        .collect();
    let total = choices.iter().try_fold(1usize, |acc, c| acc.checked_mul(c.len()));
    match total {
        Some(t) if t <= budget => {}
        _ => return Err(Error::BudgetExceeded(format!("more than {budget} homomorphisms"))),
    }
    let mut out = vec![Vec::new()];
    for c in &choices {
        let mut next = Vec::with_capacity(out.len() * c.len());
        for prefix in &out {
            for &y in c {
                let mut v = prefix.clone();
                v.push(y);
                next.push(v);
            }
        }
        out = next;
    }
    Ok(out)
}

/// Walks `space` in order and returns the first candidate satisfying
/// `pred`. Running out of budget before the space is exhausted is an error,
/// never a negative answer.
pub fn search_witness<T, I, P>(space: I, mut pred: P, budget: usize) -> Result<Option<T>>
where
    I: IntoIterator<Item = T>,
    P: FnMut(&T) -> bool,
{
    for (i, x) in space.into_iter().enumerate() {
        if i >= budget {
            return Err(Error::BudgetExceeded(format!("no witness among the first {budget} candidates")));
        }
        if pred(&x) {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// Two weakly γ-invariant subgroups whose intersection is not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionWitness {
    pub moduli: Vec<u64>,
    /// `kat γ`, also taken as the negligibility bound.
    pub kat: Vec<Vec<i64>>,
    /// Images of the unit vectors under a morphism lifting `γ`.
    pub images: Vec<Vec<i64>>,
    pub b1: Vec<Vec<i64>>,
    pub b2: Vec<Vec<i64>>,
}

/// Searches groups of order at most `max_order` for an endogeny `γ`
/// (pullback of a homomorphism blurred by a nonzero `F`) and subgroups `B1`,
/// `B2` with the intersection failure. `budget` bounds the number of
/// endogenies tried.
pub fn intersection_failure_witness(max_order: u64, budget: usize) -> Result<Option<IntersectionWitness>> {
    let mut tried = 0usize;
    for moduli in abelian_groups(max_order) {
        let g = DenseGroup::new(&moduli, usize::MAX)?;
        let subs = g.all_subgroups();
        let homs = enumerate_homomorphisms(&g, &g, usize::MAX)?;
        for f in subs.iter().filter(|f| f.count() > 1) {
            for h in &homs {
                tried += 1;
                if tried > budget {
                    return Err(Error::BudgetExceeded(format!("{budget} endogenies tried")));
                }
                let weak = |b: &DenseSet| {
                    let bf = g.set_sum(b, f);
                    b.iter().all(|x| bf.contains(hom_apply(&g, &g, h, x)))
                };
                let inv: Vec<&DenseSet> = subs.iter().filter(|b| weak(b)).collect();
                for (i, b1) in inv.iter().enumerate() {
                    for b2 in &inv[i + 1..] {
                        if !weak(&b1.and(b2)) {
                            let coords = |s: &DenseSet| s.iter().skip(1).map(|x| g.decode(x)).collect();
                            return Ok(Some(IntersectionWitness {
                                moduli: moduli.clone(),
                                kat: coords(f),
                                images: h.iter().map(|&y| g.decode(y)).collect(),
                                b1: coords(b1),
                                b2: coords(b2),
                            }));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Literal check of a witness with the set-comprehension endogeny.
pub fn verify_intersection_witness(w: &IntersectionWitness) -> Result<bool> {
    let g = DenseGroup::new(&w.moduli, usize::MAX)?;
    let set = |v: &[Vec<i64>]| g.generated(&v.iter().map(|c| g.encode(c)).collect::<Vec<_>>());
    let f = set(&w.kat);
    let images: Vec<usize> = w.images.iter().map(|c| g.encode(c)).collect();
    let gamma = DenseEndogeny::pullback(&g, &g, &images, &f)?;
    let (b1, b2) = (set(&w.b1), set(&w.b2));
    Ok(gamma.weakly_invariant(&b1) && gamma.weakly_invariant(&b2) && !gamma.weakly_invariant(&b1.and(&b2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::dense::ORACLE_CAP;

    #[test]
    fn small_group_counts() {
        let groups = abelian_groups(16);
        // 1,1,1,2,1,1,1,3,2,1,1,2,1,1,1,5
        assert_eq!(groups.len(), 25);
        assert!(groups.contains(&vec![2, 2, 4]));
        assert!(groups.contains(&vec![2, 6]));
        assert_eq!(groups[0], Vec::<u64>::new());
    }

    #[test]
    fn hom_counts() {
        let z2 = DenseGroup::new(&[2], ORACLE_CAP).unwrap();
        let z4 = DenseGroup::new(&[4], ORACLE_CAP).unwrap();
        assert_eq!(enumerate_homomorphisms(&z2, &z4, 100).unwrap().len(), 2);
        assert_eq!(enumerate_homomorphisms(&z4, &z2, 100).unwrap().len(), 2);
        let a = DenseGroup::new(&[2, 4], ORACLE_CAP).unwrap();
        assert_eq!(enumerate_homomorphisms(&a, &a, 100).unwrap().len(), 32);
        assert!(enumerate_homomorphisms(&a, &a, 31).is_err());
    }

    #[test]
    fn search_respects_budget() {
        assert_eq!(search_witness(0..10, |&x| x == 3, 100).unwrap(), Some(3));
        assert_eq!(search_witness(0..10, |&x| x == 30, 100).unwrap(), None);
        assert!(search_witness(0..10, |&x| x == 30, 5).is_err());
    }

    #[test]
    fn intersection_failure_exists_on_a_small_group() {
        let w = intersection_failure_witness(64, 1_000_000).unwrap().expect("witness");
        assert!(verify_intersection_witness(&w).unwrap());
        assert_eq!(w.moduli, vec![2, 2, 2]);
        assert_eq!(w.kat, vec![vec![0, 0, 1]]);
    }
}
