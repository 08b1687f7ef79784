//! Field tests and extraction of the field of scalars of a commuting,
//! irreducible pair of matrix algebras.

use alloc::format;
use alloc::vec::Vec;

use super::algebra::MatrixAlgebra;
use super::fp::{unit, Echelon, Matrix};
use super::lines::{decompose, lift_endomorphism, lines, local_delta, local_gamma, projection_onto_line, Lines};
use super::poly::{is_irreducible, minimal_polynomial};
use super::spin::common_invariant_subspace;
use crate::error::{Error, Result};

/// Largest algebra swept element by element by [`is_field`].
pub const FIELD_EXHAUSTIVE: u128 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldReport {
    pub p: u32,
    pub n: usize,
    pub field_basis: Vec<Matrix>,
    /// `dim_{F_p} K`.
    pub degree: usize,
    pub order: u128,
    pub vs_dimension: usize,
    pub k_basis_of_v: Vec<Vec<u32>>,
}

impl FieldReport {
    /// Re-checks every report invariant against the input generators.
    pub fn verify(&self, gamma: &[Matrix], delta: &[Matrix]) -> core::result::Result<(), &'static str> {
        let k = MatrixAlgebra::generated(self.p, self.n, &self.field_basis).map_err(|_| "malformed field basis")?;
        if k.dim() != self.degree || (self.p as u128).pow(self.degree as u32) != self.order {
            return Err("order does not match the field basis");
        }
        if !k.is_commutative() {
            return Err("field is not commutative");
        }
        if !matches!(is_field(&k), Ok(true)) {
            return Err("field has a nonzero non-invertible element");
        }
        if self.n != self.degree * self.vs_dimension {
            return Err("n differs from degree times dimension");
        }
        if !gamma.iter().chain(delta).all(|g| k.commutes_with(g)) {
            return Err("field does not commute with the rings");
        }
        let mut ech = Echelon::new(self.p, self.n);
        for v in &self.k_basis_of_v {
            for b in k.basis() {
                ech.insert(b.apply(v));
            }
        }
        if self.k_basis_of_v.len() != self.vs_dimension || ech.dim() != self.n {
            return Err("vectors do not form a basis over the field");
        }
        Ok(())
    }
}

/// Whether a matrix algebra is a field: commutative, and some element has
/// an irreducible minimal polynomial of degree `dim`. A reducible minimal
/// polynomial proves the opposite. Candidates are the basis, then pairwise
/// sums, then every element when there are at most [`FIELD_EXHAUSTIVE`].
pub fn is_field(alg: &MatrixAlgebra) -> Result<bool> {
    if !alg.is_commutative() {
        return Ok(false);
    }
    let d = alg.dim();
    if d == 1 {
        return Ok(true);
    }
    let p = alg.p();
    let decide = |x: &Matrix| -> Option<bool> {
        let f = minimal_polynomial(x);
        if !is_irreducible(&f, p) {
            Some(false)
        } else if f.len() - 1 == d {
            Some(true)
        } else {
            None
        }
    };
    let basis = alg.basis();
    for x in basis {
        if let Some(v) = decide(x) {
            return Ok(v);
        }
    }
    for i in 0..d {
        for j in i + 1..d {
            if let Some(v) = decide(&basis[i].add(&basis[j])) {
                return Ok(v);
            }
        }
    }
    if alg.order() > FIELD_EXHAUSTIVE {
        return Err(Error::Inconclusive(format!(
            "no primitive element among {} sampled elements of an algebra of order {}",
            d + d * (d - 1) / 2,
            alg.order()
        )));
    }
    for idx in 0..alg.order() as u64 {
        let mut x = Matrix::zeros(p, alg.n(), alg.n());
        let mut rest = idx;
        for b in basis {
            x = x.add(&b.scale((rest % p as u64) as u32));
            rest /= p as u64;
        }
        if let Some(v) = decide(&x) {
            return Ok(v);
        }
    }
    // Every minimal polynomial irreducible forces a field, and finite
    // fields have primitive elements, so this is unreachable.
    Err(Error::FieldTestFailure("no primitive element in a reduced commutative algebra".into()))
}

fn check_pair(p: u32, n: usize, gamma: &[Matrix], delta: &[Matrix]) -> Result<()> {
    MatrixAlgebra::generated(p, n, gamma)?;
    MatrixAlgebra::generated(p, n, delta)?;
    for (i, g) in gamma.iter().enumerate() {
        for (j, d) in delta.iter().enumerate() {
            if !g.commutes_with(d) {
                return Err(Error::HypothesisViolation {
                    reason: format!("gamma generator {i} does not commute with delta generator {j}"),
                    witness: None,
                });
            }
        }
    }
    let all: Vec<Matrix> = gamma.iter().chain(delta).cloned().collect();
    if let Some(w) = common_invariant_subspace(p, n, &all)? {
        return Err(Error::HypothesisViolation {
            reason: format!("common invariant subspace of dimension {}", w.dim()),
            witness: Some(w.basis().to_vec()),
        });
    }
    Ok(())
}

/// The field of scalars of an irreducible commuting pair `(Γ, Δ)` on
/// `F_p^n`. Both rings are first replaced by their commutants' commutants.
/// Without proper lines the field is `Γ` itself; otherwise the field of the
/// first proper line is computed recursively and lifted to `V`.
pub fn extract_field(p: u32, n: usize, gamma: &[Matrix], delta: &[Matrix], cap: usize) -> Result<FieldReport> {
    check_pair(p, n, gamma, delta)?;
    let g = MatrixAlgebra::centralizer(p, n, delta)?;
    let d = MatrixAlgebra::centralizer(p, n, g.basis())?;
    let kbasis = extract(&g, &d, cap)?;
    let k = MatrixAlgebra::generated(p, n, &kbasis)?;
    match is_field(&k) {
        Ok(true) => {}
        Ok(false) => return Err(Error::FieldTestFailure(format!("extracted algebra of dimension {} is not a field", k.dim()))),
        Err(e) => return Err(e),
    }
    if let Some(x) = gamma.iter().chain(delta).find(|x| !k.commutes_with(x)) {
        return Err(Error::FieldTestFailure(format!("field does not commute with {:?}", x.to_rows())));
    }
    let mut ech = Echelon::new(p, n);
    let mut kv = Vec::new();
    for i in 0..n {
        let v = unit(n, i);
        if !ech.contains(&v) {
            for b in k.basis() {
                ech.insert(b.apply(&v));
            }
            kv.push(v);
        }
    }
    let report = FieldReport {
        p,
        n,
        field_basis: k.basis().to_vec(),
        degree: k.dim(),
        order: k.order(),
        vs_dimension: kv.len(),
        k_basis_of_v: kv,
    };
    if report.degree * report.vs_dimension != n {
        return Err(Error::FieldTestFailure(format!(
            "dimension {n} is not {} times {}",
            report.degree, report.vs_dimension
        )));
    }
    Ok(report)
}

fn proper(ls: &Lines, n: usize) -> bool {
    ls.k > 0 && ls.k < n
}

fn extract(gamma: &MatrixAlgebra, delta: &MatrixAlgebra, cap: usize) -> Result<Vec<Matrix>> {
    let n = gamma.n();
    let lg = lines(gamma, cap)?;
    if proper(&lg, n) {
        return descend(gamma, delta, &lg, cap);
    }
    let ld = lines(delta, cap)?;
    if proper(&ld, n) {
        return descend(delta, gamma, &ld, cap);
    }
    if !matches!(is_field(gamma), Ok(true)) {
        return Err(Error::FieldTestFailure(format!(
            "ring without proper lines is not a field (dimension {})",
            gamma.dim()
        )));
    }
    if !gamma.same_as(delta) {
        return Err(Error::FieldTestFailure("the two rings differ in the base case".into()));
    }
    Ok(gamma.basis().to_vec())
}

fn descend(gamma: &MatrixAlgebra, delta: &MatrixAlgebra, ls: &Lines, cap: usize) -> Result<Vec<Matrix>> {
    let p = gamma.p();
    let dspan = delta.basis();
    let line = &ls.lines[0];
    let dec = decompose(gamma, dspan, cap)?;
    let pi = projection_onto_line(line, gamma, dspan, cap)?;
    let k = line.dim();
    let gl = MatrixAlgebra::generated(p, k, &local_gamma(line, &pi, gamma))?;
    let dl = MatrixAlgebra::generated(p, k, &local_delta(line, dspan))?;
    if !MatrixAlgebra::centralizer(p, k, dl.basis())?.same_as(&gl) {
        return Err(Error::FieldTestFailure("local ring is not the commutant of the other".into()));
    }
    let dl = MatrixAlgebra::centralizer(p, k, gl.basis())?;
    let local = extract(&gl, &dl, cap)?;
    local
        .iter()
        .map(|phi| lift_endomorphism(phi, line, &dec, gamma, dspan, cap))
        .collect()
}
