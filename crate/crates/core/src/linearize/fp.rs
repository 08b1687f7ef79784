//! Dense matrices, vectors and subspaces over a prime field.
//!
//! Matrices act on column vectors. Subspaces are kept as the reduced
//! row-echelon basis of their vectors, which makes equality structural.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Largest supported characteristic; keeps every product inside a `u64`.
pub const MAX_PRIME: u32 = 1 << 16;

pub fn inv_mod(a: u32, p: u32) -> u32 {
    pow_mod(a, p - 2, p)
}

pub fn pow_mod(a: u32, mut e: u32, p: u32) -> u32 {
    let (mut b, mut r, m) = (a as u64 % p as u64, 1u64, p as u64);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r as u32
}

pub(crate) fn check_prime(p: u32) -> Result<()> {
    if p < 2 || p >= MAX_PRIME || !crate::arith::is_prime(p as u64) {
        return Err(Error::invalid(format!("{p} is not a supported prime")));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        Matrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    /// Builds a matrix from rows, reducing entries modulo `p`.
    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Result<Self> {
        check_prime(p)?;
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::invalid("ragged matrix"));
        }
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u32))
            .collect();
        Ok(Matrix {
            p,
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub(crate) fn from_data(p: u32, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Matrix { p, rows, cols, data }
    }

    /// The `n × k` matrix whose columns are `vectors`.
    pub fn from_columns(p: u32, n: usize, vectors: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(p, n, vectors.len());
        for (j, v) in vectors.iter().enumerate() {
            for i in 0..n {
                m.data[i * vectors.len() + j] = v[i];
            }
        }
        m
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.data[i * self.cols + j] = x % self.p;
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.p;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| (a + b) % p).collect();
        Matrix::from_data(p, self.rows, self.cols, data)
    }

    pub fn neg(&self) -> Matrix {
        let p = self.p;
        let data = self.data.iter().map(|&a| (p - a) % p).collect();
        Matrix::from_data(p, self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let (p, c) = (self.p as u64, c as u64);
        let data = self.data.iter().map(|&a| (a as u64 * c % p) as u32).collect();
        Matrix::from_data(self.p, self.rows, self.cols, data)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        debug_assert_eq!(self.cols, other.rows);
        let p = self.p as u64;
        let mut out = vec![0u64; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                let acc = &mut out[i * other.cols..(i + 1) * other.cols];
                for (x, &b) in acc.iter_mut().zip(orow) {
                    *x = (*x + a * b as u64) % p;
                }
            }
        }
        Matrix::from_data(self.p, self.rows, other.cols, out.into_iter().map(|x| x as u32).collect())
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.p, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        (0..self.rows)
            .map(|i| {
                let s = self.row(i).iter().zip(v).fold(0u64, |s, (&a, &b)| (s + a as u64 * b as u64) % p);
                s as u32
            })
            .collect()
    }

    pub fn commutes_with(&self, other: &Matrix) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// Reduced row-echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut ech = Echelon::new(self.p, self.cols);
        for i in 0..self.rows {
            ech.insert(self.row(i).to_vec());
        }
        let pivots = ech.pivots();
        let mut rows = ech.into_rows();
        rows.resize(self.rows, vec![0; self.cols]);
        let data = rows.into_iter().flatten().collect();
        (Matrix::from_data(self.p, self.rows, self.cols, data), pivots)
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.p, self.cols);
        for i in 0..self.rows {
            ech.insert(self.row(i).to_vec());
        }
        ech.dim()
    }

    /// Basis of `{v : Mv = 0}`, one vector per free column, in canonical
    /// (reduced) form.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let (r, pivots) = self.rref();
        let p = self.p;
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - r.get(i, free)) % p;
            }
            out.push(v);
        }
        out
    }

    /// Column space.
    pub fn image(&self) -> Subspace {
        Subspace::span(self.p, self.rows, (0..self.cols).map(|j| self.column(j)))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.p, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self.get(i, j);
            }
            aug.data[i * 2 * n + n + i] = 1 % self.p;
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(self.p, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.data[i * n + j] = r.get(i, n + j);
            }
        }
        Some(inv)
    }

    /// Some `x` with `Mx = b`, choosing zero for every free variable.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        let mut aug = Matrix::zeros(self.p, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.data[i * (self.cols + 1) + j] = self.get(i, j);
            }
            aug.data[i * (self.cols + 1) + self.cols] = b[i];
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(i, self.cols);
        }
        Some(x)
    }
}

/// Incrementally maintained reduced row-echelon basis.
#[derive(Clone, Debug)]
pub struct Echelon {
    p: u32,
    len: usize,
    rows: Vec<(usize, Vec<u32>)>,
}

impl Echelon {
    pub fn new(p: u32, len: usize) -> Self {
        Echelon {
            p,
            len,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(c, _)| *c).collect()
    }

    /// Reduces `v` against the basis.
    pub fn reduce(&self, v: &mut [u32]) {
        let p = self.p as u64;
        for (c, row) in &self.rows {
            let f = v[*c] as u64;
            if f != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = ((*x as u64 + (p - f) * r as u64) % p) as u32;
                }
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, mut v: Vec<u32>) -> bool {
        debug_assert_eq!(v.len(), self.len);
        self.reduce(&mut v);
        let Some(c) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let p = self.p as u64;
        let inv = inv_mod(v[c], self.p) as u64;
        for x in v.iter_mut() {
            *x = (*x as u64 * inv % p) as u32;
        }
        for (_, row) in self.rows.iter_mut() {
            let f = row[c] as u64;
            if f != 0 {
                for (x, &r) in row.iter_mut().zip(&v) {
                    *x = ((*x as u64 + (p - f) * r as u64) % p) as u32;
                }
            }
        }
        let at = self.rows.partition_point(|(pc, _)| *pc < c);
        self.rows.insert(at, (c, v));
        true
    }

    pub fn rows(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.rows.iter().map(|(_, r)| r)
    }

    pub fn into_rows(self) -> Vec<Vec<u32>> {
        self.rows.into_iter().map(|(_, r)| r).collect()
    }
}

/// A subspace of `F_p^n`, held as its reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    p: u32,
    n: usize,
    basis: Vec<Vec<u32>>,
}

impl Subspace {
    pub fn span<I: IntoIterator<Item = Vec<u32>>>(p: u32, n: usize, vectors: I) -> Self {
        let mut e = Echelon::new(p, n);
        for v in vectors {
            e.insert(v);
        }
        Subspace {
            p,
            n,
            basis: e.into_rows(),
        }
    }

    pub fn zero(p: u32, n: usize) -> Self {
        Subspace {
            p,
            n,
            basis: Vec::new(),
        }
    }

    pub fn whole(p: u32, n: usize) -> Self {
        Self::span(p, n, (0..n).map(|i| unit(n, i)))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|v| v.iter().position(|&x| x != 0).unwrap())
            .collect()
    }

    fn echelon(&self) -> Echelon {
        Echelon {
            p: self.p,
            len: self.n,
            rows: self.pivots().into_iter().zip(self.basis.iter().cloned()).collect(),
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.echelon().contains(v)
    }

    pub fn leq(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Self::span(self.p, self.n, self.basis.iter().chain(&other.basis).cloned())
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        // x = Σ a_i u_i = Σ b_j w_j: kernel of [U | −W].
        let (k, l) = (self.dim(), other.dim());
        let mut m = Matrix::zeros(self.p, self.n, k + l);
        for (j, u) in self.basis.iter().enumerate() {
            for i in 0..self.n {
                m.set(i, j, u[i]);
            }
        }
        for (j, w) in other.basis.iter().enumerate() {
            for i in 0..self.n {
                m.set(i, k + j, (self.p - w[i]) % self.p);
            }
        }
        let p = self.p as u64;
        let vecs = m.kernel().into_iter().map(|c| {
            let mut x = vec![0u32; self.n];
            for (j, u) in self.basis.iter().enumerate() {
                for i in 0..self.n {
                    x[i] = ((x[i] as u64 + c[j] as u64 * u[i] as u64) % p) as u32;
                }
            }
            x
        });
        Self::span(self.p, self.n, vecs.collect::<Vec<_>>())
    }

    pub fn is_invariant(&self, m: &Matrix) -> bool {
        let e = self.echelon();
        self.basis.iter().all(|v| e.contains(&m.apply(v)))
    }

    /// The image `M[S]`.
    pub fn image_under(&self, m: &Matrix) -> Subspace {
        Self::span(self.p, m.nrows(), self.basis.iter().map(|v| m.apply(v)))
    }

    /// The `n × k` matrix with the basis vectors as columns.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.p, self.n, &self.basis)
    }

    /// The `k × n` matrix reading off coordinates at the pivot positions;
    /// a left inverse of `basis_matrix` on the subspace.
    pub fn coordinate_matrix(&self) -> Matrix {
        let mut c = Matrix::zeros(self.p, self.dim(), self.n);
        for (i, pc) in self.pivots().into_iter().enumerate() {
            c.set(i, pc, 1);
        }
        c
    }

    /// The subspace `{x : w · x = 0 for all w ∈ self}`.
    pub fn annihilator(&self) -> Subspace {
        let rows: Vec<Vec<i64>> = self.basis.iter().map(|v| v.iter().map(|&x| x as i64).collect()).collect();
        if rows.is_empty() {
            return Self::whole(self.p, self.n);
        }
        let m = Matrix::from_rows(self.p, &rows).expect("valid prime");
        Self::span(self.p, self.n, m.kernel())
    }
}

pub fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// All vectors of `F_p^n` whose first nonzero entry is 1, in lexicographic
/// order.
pub fn projective_points(p: u32, n: usize) -> impl Iterator<Item = Vec<u32>> {
    (0..n).rev().flat_map(move |lead| {
        let tail = n - lead - 1;
        let count = (p as u64).pow(tail as u32);
        (0..count).map(move |mut idx| {
            let mut v = vec![0u32; n];
            v[lead] = 1;
            for i in (lead + 1..n).rev() {
                v[i] = (idx % p as u64) as u32;
                idx /= p as u64;
            }
            v
        })
    })
}

/// All vectors of `F_p^n`, lexicographically.
pub fn all_vectors(p: u32, n: usize) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(n as u32);
    (0..count).map(move |mut idx| {
        let mut v = vec![0u32; n];
        for i in (0..n).rev() {
            v[i] = (idx % p as u64) as u32;
            idx /= p as u64;
        }
        v
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u32, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(p, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn inverse_and_solve() {
        let a = m(5, &[&[1, 2], &[3, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(5, 2));
        assert!(m(2, &[&[1, 1], &[1, 1]]).inverse().is_none());
        let x = a.solve(&[1, 0]).unwrap();
        assert_eq!(a.apply(&x), vec![1, 0]);
    }

    #[test]
    fn kernel_and_rank() {
        let a = m(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 2, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        assert!(a.apply(&k[0]).iter().all(|&x| x == 0));
    }

    #[test]
    fn subspace_ops() {
        let u = Subspace::span(2, 2, vec![vec![1, 0]]);
        let w = Subspace::span(2, 2, vec![vec![1, 1]]);
        assert_eq!(u.intersect(&w).dim(), 0);
        assert_eq!(u.sum(&w), Subspace::whole(2, 2));
        assert_eq!(u.annihilator(), Subspace::span(2, 2, vec![vec![0, 1]]));
        let swap = m(2, &[&[0, 1], &[1, 0]]);
        assert!(w.is_invariant(&swap));
        assert!(!u.is_invariant(&swap));
    }

    #[test]
    fn point_counts() {
        assert_eq!(projective_points(2, 3).count(), 7);
        assert_eq!(projective_points(3, 2).count(), 4);
        assert_eq!(projective_points(2, 2).next().unwrap(), vec![0, 1]);
        assert_eq!(all_vectors(3, 2).count(), 9);
    }
}
