//! Unital subalgebras of `Mat_n(F_p)`.

use alloc::format;
use alloc::vec::Vec;

use super::fp::{check_prime, Echelon, Matrix};
use crate::error::{Error, Result};

/// Default ceiling on materialized algebra elements.
pub const CLOSURE_CAP: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixAlgebra {
    p: u32,
    n: usize,
    generators: Vec<Matrix>,
    /// Flattened reduced row-echelon basis, unflattened.
    basis: Vec<Matrix>,
    elements: Option<Vec<Matrix>>,
}

fn check_shape(p: u32, n: usize, ms: &[Matrix]) -> Result<()> {
    check_prime(p)?;
    if n == 0 {
        return Err(Error::invalid("dimension 0"));
    }
    for m in ms {
        if m.p() != p || m.nrows() != n || m.ncols() != n {
            return Err(Error::invalid(format!(
                "expected {n}x{n} matrices over F_{p}, got {}x{} over F_{}",
                m.nrows(),
                m.ncols(),
                m.p()
            )));
        }
    }
    Ok(())
}

fn unflatten(p: u32, n: usize, rows: Vec<Vec<u32>>) -> Vec<Matrix> {
    rows.into_iter().map(|r| Matrix::from_data(p, n, n, r)).collect()
}

impl MatrixAlgebra {
    /// The unital algebra generated by `generators`, as a basis only: the
    /// span of `1` and the generators, saturated under right multiplication
    /// by the generators.
    pub fn generated(p: u32, n: usize, generators: &[Matrix]) -> Result<Self> {
        check_shape(p, n, generators)?;
        let mut ech = Echelon::new(p, n * n);
        let mut queue = Vec::new();
        let id = Matrix::identity(p, n);
        if ech.insert(id.entries().to_vec()) {
            queue.push(id);
        }
        while let Some(w) = queue.pop() {
            for g in generators {
                let x = w.mul(g);
                if ech.insert(x.entries().to_vec()) {
                    queue.push(x);
                }
            }
        }
        Ok(MatrixAlgebra {
            p,
            n,
            generators: generators.to_vec(),
            basis: unflatten(p, n, ech.into_rows()),
            elements: None,
        })
    }

    /// Closure with every element listed; fails above `cap` elements.
    pub fn closure(p: u32, n: usize, generators: &[Matrix], cap: usize) -> Result<Self> {
        Self::generated(p, n, generators)?.materialized(cap)
    }

    /// Every `X` with `XM = MX` for all `M ∈ s`.
    pub fn centralizer(p: u32, n: usize, s: &[Matrix]) -> Result<Self> {
        check_shape(p, n, s)?;
        // Unknown x_{ab} at index a·n + b; equation per (M, i, j).
        let nn = n * n;
        let mut rows: Vec<Vec<i64>> = Vec::new();
        for m in s {
            for i in 0..n {
                for j in 0..n {
                    let mut eq = alloc::vec![0i64; nn];
                    for k in 0..n {
                        eq[i * n + k] += m.get(k, j) as i64;
                        eq[k * n + j] -= m.get(i, k) as i64;
                    }
                    rows.push(eq);
                }
            }
        }
        let basis = if rows.is_empty() {
            (0..nn).map(|i| super::fp::unit(nn, i)).collect()
        } else {
            Matrix::from_rows(p, &rows)?.kernel()
        };
        let mut ech = Echelon::new(p, nn);
        for b in basis {
            ech.insert(b);
        }
        let basis = unflatten(p, n, ech.into_rows());
        Ok(MatrixAlgebra {
            p,
            n,
            generators: basis.clone(),
            basis,
            elements: None,
        })
    }

    /// Lists every element, sorted lexicographically by entries.
    pub fn materialized(mut self, cap: usize) -> Result<Self> {
        if self.elements.is_some() {
            return Ok(self);
        }
        let order = self.order();
        if order > cap as u128 {
            return Err(Error::ClosureCapExceeded(cap));
        }
        let mut elems = Vec::with_capacity(order as usize);
        for idx in 0..order as u64 {
            let mut acc = Matrix::zeros(self.p, self.n, self.n);
            let mut rest = idx;
            for b in &self.basis {
                let c = (rest % self.p as u64) as u32;
                rest /= self.p as u64;
                if c != 0 {
                    acc = acc.add(&b.scale(c));
                }
            }
            elems.push(acc);
        }
        elems.sort();
        self.elements = Some(elems);
        Ok(self)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn order(&self) -> u128 {
        (self.p as u128).saturating_pow(self.dim() as u32)
    }

    pub fn elements(&self) -> Option<&[Matrix]> {
        self.elements.as_deref()
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        let mut ech = Echelon::new(self.p, self.n * self.n);
        for b in &self.basis {
            ech.insert(b.entries().to_vec());
        }
        ech.contains(m.entries())
    }

    /// Same set of matrices.
    pub fn same_as(&self, other: &MatrixAlgebra) -> bool {
        self.p == other.p && self.n == other.n && self.basis == other.basis
    }

    pub fn is_commutative(&self) -> bool {
        self.basis
            .iter()
            .enumerate()
            .all(|(i, a)| self.basis[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    pub fn commutes_with(&self, m: &Matrix) -> bool {
        self.basis.iter().all(|b| b.commutes_with(m))
    }

    /// Spanning set suitable for invariance checks: the generators, or the
    /// basis when no generators were given.
    pub fn spanning(&self) -> &[Matrix] {
        if self.generators.is_empty() {
            &self.basis
        } else {
            &self.generators
        }
    }

    /// Conjugate `g A g⁻¹`.
    pub fn conjugated(&self, g: &Matrix, g_inv: &Matrix) -> Result<Self> {
        let gens: Vec<Matrix> = self.generators.iter().map(|x| g.mul(x).mul(g_inv)).collect();
        Self::generated(self.p, self.n, &gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u32, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(p, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn closures() {
        let a = MatrixAlgebra::closure(2, 2, &[], 100).unwrap();
        assert_eq!(a.elements().unwrap().len(), 2);
        let f4 = MatrixAlgebra::closure(2, 2, &[m(2, &[&[0, 1], &[1, 1]])], 100).unwrap();
        assert_eq!(f4.elements().unwrap().len(), 4);
        let full = MatrixAlgebra::closure(
            2,
            2,
            &[m(2, &[&[1, 0], &[0, 0]]), m(2, &[&[0, 1], &[0, 0]]), m(2, &[&[0, 0], &[1, 0]])],
            100,
        )
        .unwrap();
        assert_eq!(full.elements().unwrap().len(), 16);
        assert!(matches!(full.clone().materialized(16), Ok(_)));
        assert!(matches!(
            MatrixAlgebra::generated(2, 2, full.basis()).unwrap().materialized(15),
            Err(Error::ClosureCapExceeded(15))
        ));
    }

    #[test]
    fn centralizers() {
        let full = MatrixAlgebra::generated(2, 2, &[m(2, &[&[1, 0], &[0, 0]]), m(2, &[&[0, 1], &[1, 0]])]).unwrap();
        assert_eq!(full.dim(), 4);
        assert_eq!(MatrixAlgebra::centralizer(2, 2, full.basis()).unwrap().dim(), 1);
        let f4 = MatrixAlgebra::generated(2, 2, &[m(2, &[&[0, 1], &[1, 1]])]).unwrap();
        let c = MatrixAlgebra::centralizer(2, 2, f4.basis()).unwrap();
        assert!(c.same_as(&f4));
        assert_eq!(MatrixAlgebra::centralizer(3, 3, &[Matrix::identity(3, 3)]).unwrap().dim(), 9);
    }

    #[test]
    fn rejects_degenerate_input() {
        assert!(MatrixAlgebra::generated(2, 0, &[]).is_err());
        assert!(MatrixAlgebra::generated(4, 2, &[]).is_err());
    }
}
