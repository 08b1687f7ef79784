//! Spin-up and common invariant subspaces.

use alloc::format;
use alloc::vec::Vec;

use super::algebra::MatrixAlgebra;
use super::fp::{projective_points, Echelon, Matrix, Subspace};
use crate::error::{Error, Result};

/// Above this many vectors the exhaustive sweep gives way to Norton's test.
pub const SPIN_EXHAUSTIVE: u64 = 1 << 16;

/// Largest null space swept point by point inside Norton's test.
const NULL_SWEEP: u64 = 1 << 12;

/// The smallest subspace containing `v` and invariant under `gens`.
pub fn spin(p: u32, v: &[u32], gens: &[Matrix]) -> Subspace {
    let n = v.len();
    let mut ech = Echelon::new(p, n);
    let mut queue = Vec::new();
    if ech.insert(v.to_vec()) {
        queue.push(v.to_vec());
    }
    while let Some(w) = queue.pop() {
        if ech.dim() == n {
            break;
        }
        for g in gens {
            let x = g.apply(&w);
            if ech.insert(x.clone()) {
                queue.push(x);
            }
        }
    }
    Subspace::span(p, n, ech.into_rows())
}

/// A nonzero proper subspace invariant under every matrix in `gens`, or
/// `None` when there is none.
///
/// Exhaustive over projective points when `p^n` is at most
/// [`SPIN_EXHAUSTIVE`]. Otherwise runs Norton's irreducibility test on
/// singular elements of the generated algebra; if no usable element turns
/// up the answer is `Inconclusive`.
pub fn common_invariant_subspace(p: u32, n: usize, gens: &[Matrix]) -> Result<Option<Subspace>> {
    let alg = MatrixAlgebra::generated(p, n, gens)?;
    if n <= 1 {
        return Ok(None);
    }
    let small = (p as u64).checked_pow(n as u32).is_some_and(|c| c <= SPIN_EXHAUSTIVE);
    if small {
        for v in projective_points(p, n) {
            let s = spin(p, &v, gens);
            if s.dim() < n {
                return Ok(Some(s));
            }
        }
        return Ok(None);
    }
    norton(&alg, gens)
}

fn norton(alg: &MatrixAlgebra, gens: &[Matrix]) -> Result<Option<Subspace>> {
    let (p, n) = (alg.p(), alg.n());
    let transposed: Vec<Matrix> = gens.iter().map(Matrix::transpose).collect();
    for theta in norton_candidates(alg) {
        let null = theta.kernel();
        if null.is_empty() {
            continue;
        }
        let d = null.len();
        if (p as u64).checked_pow(d as u32).is_none_or(|c| c > NULL_SWEEP) {
            continue;
        }
        let null_space = Subspace::span(p, n, null);
        for c in projective_points(p, d) {
            let v = combine(p, n, null_space.basis(), &c);
            let s = spin(p, &v, gens);
            if s.dim() < n {
                return Ok(Some(s));
            }
        }
        let tnull = theta.transpose().kernel();
        let w = &tnull[0];
        let s = spin(p, w, &transposed);
        if s.dim() < n {
            // The annihilator of a transpose-invariant subspace is invariant.
            return Ok(Some(s.annihilator()));
        }
        return Ok(None);
    }
    Err(Error::Inconclusive(format!(
        "no singular algebra element with a small null space in dimension {n} over F_{p}"
    )))
}

fn combine(p: u32, n: usize, basis: &[Vec<u32>], c: &[u32]) -> Vec<u32> {
    let mut v = alloc::vec![0u32; n];
    for (b, &ci) in basis.iter().zip(c) {
        for i in 0..n {
            v[i] = ((v[i] as u64 + ci as u64 * b[i] as u64) % p as u64) as u32;
        }
    }
    v
}

/// Basis elements, their shifts by scalars, and pairwise sums, in that
/// order, keeping only singular nonzero ones.
fn norton_candidates(alg: &MatrixAlgebra) -> impl Iterator<Item = Matrix> + '_ {
    let (p, n) = (alg.p(), alg.n());
    let basis = alg.basis();
    let shifts = basis.iter().flat_map(move |b| {
        (0..p).map(move |c| b.sub(&Matrix::identity(p, n).scale(c)))
    });
    let pairs = (0..basis.len()).flat_map(move |i| (i + 1..basis.len()).map(move |j| basis[i].add(&basis[j])));
    shifts.chain(pairs).filter(move |m| !m.is_zero() && m.rank() < n)
}

/// True when the generators of `alg` leave no nonzero proper subspace
/// invariant.
pub fn is_irreducible(alg: &MatrixAlgebra) -> Result<bool> {
    Ok(common_invariant_subspace(alg.p(), alg.n(), alg.spanning())?.is_none())
}
