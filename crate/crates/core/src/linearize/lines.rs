//! Lines of a matrix algebra, projections onto them, direct decomposition,
//! transporters between lines and lifting of locally central maps.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::algebra::MatrixAlgebra;
use super::fp::{Matrix, Subspace};
use crate::error::{Error, Result};

/// Ceiling on lines visited by the non-materialized search.
const LINE_ORBIT_CAP: usize = 4096;

/// A minimal nonzero image `γ[V]` of the algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub subspace: Subspace,
    pub witness: Matrix,
}

impl Line {
    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }
}

/// How the line list was certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LineCertificate {
    /// Every element of the algebra was inspected.
    Exhaustive,
    /// Minimal rank among sampled elements only.
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lines {
    pub k: usize,
    pub lines: Vec<Line>,
    pub certificate: LineCertificate,
}

/// All images of minimal positive rank, ordered by their canonical bases.
/// Exhaustive when the algebra has at most `cap` elements.
pub fn lines(alg: &MatrixAlgebra, cap: usize) -> Result<Lines> {
    if alg.order() <= cap as u128 {
        let alg = alg.clone().materialized(cap)?;
        return Ok(exhaustive_lines(alg.elements().unwrap()));
    }
    sampled_lines(alg)
}

fn exhaustive_lines(elements: &[Matrix]) -> Lines {
    let ranked: Vec<(usize, &Matrix)> = elements.iter().map(|m| (m.rank(), m)).collect();
    let k = ranked.iter().map(|r| r.0).filter(|&r| r > 0).min().unwrap_or(0);
    let mut found: BTreeMap<Subspace, Matrix> = BTreeMap::new();
    // Elements arrive sorted, so the first witness per image is the lex-min.
    for (r, m) in ranked {
        if r == k {
            found.entry(m.image()).or_insert_with(|| m.clone());
        }
    }
    Lines {
        k,
        lines: found.into_iter().map(|(subspace, witness)| Line { subspace, witness }).collect(),
        certificate: LineCertificate::Exhaustive,
    }
}

fn sampled_lines(alg: &MatrixAlgebra) -> Result<Lines> {
    let basis = alg.basis();
    let mut best: Option<Matrix> = None;
    let consider = |m: Matrix, best: &mut Option<Matrix>| {
        let r = m.rank();
        if r > 0 && best.as_ref().is_none_or(|b| r < b.rank()) {
            *best = Some(m);
        }
    };
    for (i, a) in basis.iter().enumerate() {
        consider(a.clone(), &mut best);
        for b in &basis[i..] {
            consider(a.mul(b), &mut best);
            consider(b.mul(a), &mut best);
        }
    }
    // Descend: multiply the current minimum by basis elements while the
    // rank drops without vanishing.
    loop {
        let cur = best.clone().ok_or_else(|| Error::HypothesisViolation {
            reason: "algebra has no nonzero element".into(),
            witness: None,
        })?;
        let r = cur.rank();
        for b in basis {
            consider(cur.mul(b), &mut best);
            consider(b.mul(&cur), &mut best);
        }
        if best.as_ref().unwrap().rank() == r {
            break;
        }
    }
    let seed = best.unwrap();
    let k = seed.rank();
    // Orbit of the first line under basis elements and their pairwise sums.
    let movers: Vec<Matrix> = (0..basis.len())
        .flat_map(|i| (i..basis.len()).map(move |j| if i == j { basis[i].clone() } else { basis[i].add(&basis[j]) }))
        .collect();
    let mut found: BTreeMap<Subspace, Matrix> = BTreeMap::new();
    let mut queue = alloc::vec![seed.clone()];
    found.insert(seed.image(), seed);
    while let Some(w) = queue.pop() {
        for b in &movers {
            let x = b.mul(&w);
            if x.rank() == k {
                let im = x.image();
                if !found.contains_key(&im) {
                    if found.len() >= LINE_ORBIT_CAP {
                        return Err(Error::SearchCapExceeded(format!("more than {LINE_ORBIT_CAP} lines")));
                    }
                    found.insert(im, x.clone());
                    queue.push(x);
                }
            }
        }
    }
    Ok(Lines {
        k,
        lines: found.into_iter().map(|(subspace, witness)| Line { subspace, witness }).collect(),
        certificate: LineCertificate::Sampled,
    })
}

/// `γ` restricted to an invariant subspace `L`, in the coordinates of `L`.
pub fn restrict(m: &Matrix, l: &Subspace) -> Matrix {
    l.coordinate_matrix().mul(m).mul(&l.basis_matrix())
}

/// `γ[L] = L'` with `γ|_L` injective.
fn maps_onto(m: &Matrix, from: &Subspace, to: &Subspace) -> bool {
    let im = from.image_under(m);
    im.dim() == from.dim() && im == *to
}

/// Multiplicative order of an invertible square matrix.
fn order_of(m: &Matrix) -> Result<u64> {
    let id = Matrix::identity(m.p(), m.nrows());
    let mut x = m.clone();
    // |GL_k(F_p)| < p^(k²) bounds every element order.
    let bound = (m.p() as u64).saturating_pow((m.nrows() * m.nrows()) as u32);
    let mut t = 1u64;
    while x != id {
        x = x.mul(m);
        t += 1;
        if t > bound {
            return Err(Error::invalid("matrix is not invertible"));
        }
    }
    Ok(t)
}

/// The lexicographically least element with image `to` mapping `from`
/// bijectively onto it, among all elements when materialized, otherwise
/// among `w · b` for basis elements `b` and the witness `w` of `to`.
fn find_map(alg: &MatrixAlgebra, from: &Subspace, to: &Line, cap: usize) -> Result<Option<Matrix>> {
    let fits = |m: &Matrix| m.rank() == to.dim() && maps_onto(m, from, &to.subspace);
    if alg.order() <= cap as u128 {
        let alg = alg.clone().materialized(cap)?;
        return Ok(alg.elements().unwrap().iter().find(|m| fits(m)).cloned());
    }
    let mut cands: Vec<Matrix> = alg.basis().iter().map(|b| to.witness.mul(b)).collect();
    cands.push(to.witness.clone());
    cands.sort();
    Ok(cands.into_iter().find(|m| fits(m)))
}

/// An idempotent element of `Γ` with image `L`, built as `γ0^t` where
/// `γ0` maps `L` onto itself bijectively and `t` is the order of `γ0|_L`;
/// this is `(γ0|_L)^{-1} ∘ γ0`. The result is checked against `delta`.
pub fn projection_onto_line(line: &Line, gamma: &MatrixAlgebra, delta: &[Matrix], cap: usize) -> Result<Matrix> {
    let l = &line.subspace;
    let pi = match find_map(gamma, l, line, cap)? {
        Some(g0) => {
            let t = order_of(&restrict(&g0, l))?;
            g0.pow(t)
        }
        None => solve_projection(line, gamma)?,
    };
    let ok = pi.mul(&pi) == pi && pi.image() == *l && delta.iter().all(|d| d.commutes_with(&pi));
    if !ok {
        return Err(Error::NoProjectionFound(format!("candidate onto {:?} fails its checks", l.basis())));
    }
    Ok(pi)
}

/// Linear solve for `x ∈ Γ` with `im x ⊆ L` and `x|_L = id`.
fn solve_projection(line: &Line, gamma: &MatrixAlgebra) -> Result<Matrix> {
    let l = &line.subspace;
    let (p, n) = (gamma.p(), gamma.n());
    let bm = l.basis_matrix();
    let ann = l.annihilator();
    let basis = gamma.basis();
    // One column per basis element; rows: entries of x·B − B, then w·x.
    let mut cols: Vec<Vec<u32>> = Vec::new();
    for b in basis {
        let mut col = b.mul(&bm).entries().to_vec();
        for w in ann.basis() {
            let wm = Matrix::from_columns(p, n, &[w.clone()]).transpose().mul(b);
            col.extend_from_slice(wm.entries());
        }
        cols.push(col);
    }
    let mut rhs = bm.entries().to_vec();
    rhs.extend(core::iter::repeat_n(0, ann.dim() * n));
    let a = Matrix::from_columns(p, rhs.len(), &cols);
    let c = a
        .solve(&rhs)
        .ok_or_else(|| Error::NoProjectionFound(format!("no projection onto {:?} in the algebra", l.basis())))?;
    let mut x = Matrix::zeros(p, n, n);
    for (ci, b) in c.iter().zip(basis) {
        x = x.add(&b.scale(*ci));
    }
    Ok(x)
}

/// Lines with orthogonal idempotents summing to the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub lines: Vec<Line>,
    pub projections: Vec<Matrix>,
}

impl Decomposition {
    /// Checks every structural invariant; the first failure is returned.
    pub fn verify(&self, k: usize, delta: &[Matrix]) -> core::result::Result<(), &'static str> {
        let Some(first) = self.projections.first() else {
            return Err("empty decomposition");
        };
        let (p, n) = (first.p(), first.nrows());
        let mut sum = Matrix::zeros(p, n, n);
        for (i, pi) in self.projections.iter().enumerate() {
            sum = sum.add(pi);
            if pi.mul(pi) != *pi {
                return Err("projection is not idempotent");
            }
            if pi.image() != self.lines[i].subspace || self.lines[i].dim() != k {
                return Err("projection image is not its line");
            }
            for (j, pj) in self.projections.iter().enumerate() {
                if i != j && !pi.mul(pj).is_zero() {
                    return Err("projections are not orthogonal");
                }
            }
            if !delta.iter().all(|d| d.commutes_with(pi)) {
                return Err("projection does not commute with delta");
            }
        }
        if sum != Matrix::identity(p, n) {
            return Err("projections do not sum to the identity");
        }
        Ok(())
    }
}

/// Greedy splitting: take the first line inside the current complement,
/// project onto it, and pass to `(1 − π)` of the complement.
pub fn decompose(gamma: &MatrixAlgebra, delta: &[Matrix], cap: usize) -> Result<Decomposition> {
    let all = lines(gamma, cap)?;
    if all.k == 0 {
        return Err(Error::HypothesisViolation {
            reason: "algebra is zero".into(),
            witness: None,
        });
    }
    let (p, n) = (gamma.p(), gamma.n());
    let id = Matrix::identity(p, n);
    let mut ph = id.clone();
    let mut out = Decomposition {
        lines: Vec::new(),
        projections: Vec::new(),
    };
    while !ph.is_zero() {
        let h = ph.image();
        let line = match all.lines.iter().find(|l| l.subspace.leq(&h)) {
            Some(l) => l.clone(),
            None => {
                let l = all
                    .lines
                    .iter()
                    .find(|l| !l.subspace.image_under(&ph).basis().is_empty())
                    .ok_or_else(|| Error::HypothesisViolation {
                        reason: "complement meets no line".into(),
                        witness: None,
                    })?;
                let w = ph.mul(&l.witness);
                if w.rank() != all.k {
                    return Err(Error::HypothesisViolation {
                        reason: "image of a line under a projection is not a line".into(),
                        witness: None,
                    });
                }
                Line {
                    subspace: w.image(),
                    witness: w,
                }
            }
        };
        let pl = projection_onto_line(&line, gamma, delta, cap)?;
        out.projections.push(pl.mul(&ph));
        out.lines.push(line);
        ph = id.sub(&pl).mul(&ph);
        if out.lines.len() > n {
            return Err(Error::HypothesisViolation {
                reason: "decomposition does not terminate".into(),
                witness: None,
            });
        }
    }
    Ok(out)
}

/// An invertible element of `Γ` carrying `l1` onto `l2`.
pub fn transporter(l1: &Line, l2: &Line, gamma: &MatrixAlgebra, delta: &[Matrix], cap: usize) -> Result<Matrix> {
    let (p, n) = (gamma.p(), gamma.n());
    let id = Matrix::identity(p, n);
    if l1.subspace == l2.subspace {
        return Ok(id);
    }
    let no = |why: &str| Error::NoTransporter(format!("{why}: {:?} to {:?}", l1.subspace.basis(), l2.subspace.basis()));
    let pi0 = projection_onto_line(l1, gamma, delta, cap)?;
    let g = find_map(gamma, &l1.subspace, l2, cap)?.ok_or_else(|| no("no element maps the lines"))?;
    let ker0 = Subspace::span(p, n, id.sub(&pi0).image().basis().to_vec());
    let gamma_el = if l2.subspace.intersect(&ker0).dim() == 0 {
        g.mul(&pi0).add(&id.sub(&pi0))
    } else {
        if !l2.subspace.leq(&ker0) {
            return Err(no("second line meets the complement partially"));
        }
        let pi2 = projection_onto_line(l2, gamma, delta, cap)?;
        let pi1 = pi2.mul(&id.sub(&pi0));
        let g2 = find_map(gamma, &l2.subspace, l1, cap)?.ok_or_else(|| no("no element maps back"))?;
        let t = order_of(&restrict(&g2.mul(&g), &l1.subspace))?;
        let h = g2.mul(&g).pow(t - 1).mul(&g2);
        pi1.mul(&g)
            .mul(&pi0)
            .add(&pi0.mul(&h).mul(&pi1))
            .add(&id.sub(&pi0).sub(&pi1))
    };
    if gamma_el.inverse().is_none() || !maps_onto(&gamma_el, &l1.subspace, &l2.subspace) {
        return Err(no("constructed element fails its checks"));
    }
    Ok(gamma_el)
}

/// `Γ_L = π_L Γ π_L` restricted to `L`, as a spanning set.
pub fn local_gamma(line: &Line, pi: &Matrix, gamma: &MatrixAlgebra) -> Vec<Matrix> {
    gamma.basis().iter().map(|g| restrict(&pi.mul(g), &line.subspace)).collect()
}

/// `Δ` restricted to the (Δ-invariant) line.
pub fn local_delta(line: &Line, delta: &[Matrix]) -> Vec<Matrix> {
    delta.iter().map(|d| restrict(d, &line.subspace)).collect()
}

/// Extends `φ`, given on `L` in the coordinates of `L`, to
/// `φ̂ = Σ γ_i Φ γ_i⁻¹ π_i` with `γ_i` a transporter from `L` to the
/// `i`-th line of `dec`.
pub fn lift_endomorphism(
    phi: &Matrix,
    line: &Line,
    dec: &Decomposition,
    gamma: &MatrixAlgebra,
    delta: &[Matrix],
    cap: usize,
) -> Result<Matrix> {
    let l = &line.subspace;
    let k = l.dim();
    if phi.nrows() != k || phi.ncols() != k {
        return Err(Error::invalid(format!("expected a {k}x{k} matrix on the line")));
    }
    let nlc = |why: &str| Error::NotLocallyCentral(why.into());
    let pi_l = projection_onto_line(line, gamma, delta, cap)?;
    let local = local_gamma(line, &pi_l, gamma);
    if !local.iter().chain(&local_delta(line, delta)).all(|x| x.commutes_with(phi)) {
        return Err(nlc("map does not commute with the local rings"));
    }
    let (p, n) = (gamma.p(), gamma.n());
    let big = l.basis_matrix().mul(phi).mul(&l.coordinate_matrix());
    let transport = |li: &Line| -> Result<(Matrix, Matrix)> {
        let g = transporter(line, li, gamma, delta, cap)?;
        let gi = g.inverse().ok_or_else(|| Error::NoTransporter("singular transporter".into()))?;
        Ok((g, gi))
    };
    let mut lifted = Matrix::zeros(p, n, n);
    for (i, (li, pi)) in dec.lines.iter().zip(&dec.projections).enumerate() {
        let (g, gi) = transport(li)?;
        let term = g.mul(&big).mul(&gi).mul(pi);
        // Second path through another line: the local map must not depend
        // on the chosen transporter.
        if let Some(lj) = dec.lines.iter().enumerate().find(|(j, _)| *j != i).map(|x| x.1) {
            let (g1, g1i) = transport(lj)?;
            let g2 = transporter(lj, li, gamma, delta, cap)?;
            let g2i = g2.inverse().ok_or_else(|| Error::NoTransporter("singular transporter".into()))?;
            let alt = g2.mul(&g1).mul(&big).mul(&g1i).mul(&g2i).mul(pi);
            if alt != term {
                return Err(nlc("transported map depends on the transporter"));
            }
        }
        lifted = lifted.add(&term);
    }
    if !gamma.spanning().iter().chain(delta).all(|x| x.commutes_with(&lifted)) {
        return Err(nlc("lift does not commute with both rings"));
    }
    if lifted.mul(&l.basis_matrix()) != l.basis_matrix().mul(phi) {
        return Err(nlc("lift does not restrict to the given map"));
    }
    Ok(lifted)
}
