//! Integer lattices sandwiched between a diagonal relation lattice and `Z^r`.
//!
//! A subgroup of `Z/m_1 ⊕ … ⊕ Z/m_r` is the same thing as a lattice `L` with
//! `diag(m) Z^r ⊆ L ⊆ Z^r`. Such a lattice is full rank, so it has a unique
//! Hermite normal form. We store it row-wise: row `i` is zero before column
//! `i`, has a positive pivot dividing `m_i` in column `i`, and every entry
//! above a pivot lies in `[0, pivot)`. (This is the transpose of the
//! column-style lower-triangular convention; the data is identical.)
//!
//! Because the relation lattice is always contained in `L`, coordinate `j`
//! of any vector can be reduced modulo `m_j` without leaving the lattice,
//! which keeps every entry below `max(m)` during elimination.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{checked_add, checked_mul, rem, xgcd};
use crate::error::{Error, Result};

/// Largest modulus accepted; keeps all products inside `i128` without checks.
pub const MAX_MODULUS: u64 = 1 << 31;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lattice {
    moduli: Vec<i64>,
    rows: Vec<Vec<i64>>,
}

impl Lattice {
    /// The relation lattice `diag(m) Z^r` itself (the trivial subgroup).
    pub fn relations(moduli: &[u64]) -> Self {
        let r = moduli.len();
        let moduli: Vec<i64> = moduli.iter().map(|&m| m as i64).collect();
        let rows = (0..r)
            .map(|i| {
                let mut row = vec![0i64; r];
                row[i] = moduli[i];
                row
            })
            .collect();
        Lattice { moduli, rows }
    }

    /// The whole of `Z^r`.
    pub fn full(moduli: &[u64]) -> Self {
        let r = moduli.len();
        let rows = (0..r)
            .map(|i| {
                let mut row = vec![0i64; r];
                row[i] = 1;
                row
            })
            .collect();
        Lattice {
            moduli: moduli.iter().map(|&m| m as i64).collect(),
            rows,
        }
    }

    /// Lattice generated by `gens` together with the relations.
    pub fn generated<I, V>(moduli: &[u64], gens: I) -> Self
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[i64]>,
    {
        let mut lat = Lattice::relations(moduli);
        for g in gens {
            lat.insert(g.as_ref());
        }
        lat.normalize();
        lat
    }

    pub fn dim(&self) -> usize {
        self.moduli.len()
    }

    pub fn moduli(&self) -> &[i64] {
        &self.moduli
    }

    /// HNF rows (one per coordinate).
    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn pivots(&self) -> impl Iterator<Item = i64> + '_ {
        self.rows.iter().enumerate().map(|(i, r)| r[i])
    }

    /// `|L / diag(m)Z^r|`, the order of the subgroup.
    pub fn order(&self) -> u128 {
        self.moduli
            .iter()
            .zip(self.pivots())
            .map(|(&m, p)| (m / p) as u128)
            .product()
    }

    /// `|Z^r / L|`, the index of the subgroup.
    pub fn index(&self) -> u128 {
        self.pivots().map(|p| p as u128).product()
    }

    fn reduce_from(&self, v: &mut [i128], start: usize) {
        for j in start..v.len() {
            v[j] = rem(v[j], self.moduli[j] as i128);
        }
    }

    /// Adds one generator and restores the echelon shape (not the
    /// above-pivot reduction; call [`Lattice::normalize`] afterwards).
    fn insert(&mut self, g: &[i64]) {
        debug_assert_eq!(g.len(), self.dim());
        let r = self.dim();
        let mut v: Vec<i128> = g.iter().map(|&x| x as i128).collect();
        self.reduce_from(&mut v, 0);
        for i in 0..r {
            if v[i] == 0 {
                continue;
            }
            let row: Vec<i128> = self.rows[i].iter().map(|&x| x as i128).collect();
            let a = row[i];
            let b = v[i];
            let (g, s, t) = xgcd(a, b);
            let (ag, bg) = (a / g, b / g);
            let mut new_row = vec![0i128; r];
            let mut new_v = vec![0i128; r];
            for j in i..r {
                new_row[j] = s * row[j] + t * v[j];
                new_v[j] = ag * v[j] - bg * row[j];
            }
            new_row[i] = g;
            self.reduce_from(&mut new_row, i + 1);
            self.reduce_from(&mut new_v, i);
            self.rows[i] = new_row.iter().map(|&x| x as i64).collect();
            v = new_v;
        }
    }

    /// Reduces every above-pivot entry into `[0, pivot)`.
    fn normalize(&mut self) {
        let r = self.dim();
        for i in 0..r {
            let p = self.rows[i][i] as i128;
            for j in 0..i {
                let x = self.rows[j][i] as i128;
                let q = x.div_euclid(p);
                if q == 0 {
                    continue;
                }
                let mut row: Vec<i128> = self.rows[j].iter().map(|&x| x as i128).collect();
                for k in i..r {
                    row[k] -= q * self.rows[i][k] as i128;
                }
                self.reduce_from(&mut row, i + 1);
                self.rows[j] = row.iter().map(|&x| x as i64).collect();
            }
        }
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        let r = self.dim();
        let mut v: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        self.reduce_from(&mut v, 0);
        for i in 0..r {
            let p = self.rows[i][i] as i128;
            if v[i] % p != 0 {
                return false;
            }
            let c = v[i] / p;
            if c != 0 {
                for k in i..r {
                    v[k] -= c * self.rows[i][k] as i128;
                }
                self.reduce_from(&mut v, i);
            }
        }
        true
    }

    pub fn is_full(&self) -> bool {
        self.pivots().all(|p| p == 1)
    }

    pub fn leq(&self, other: &Lattice) -> bool {
        self.rows.iter().all(|row| other.contains(row))
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        let mut out = self.clone();
        for row in &other.rows {
            out.insert(row);
        }
        out.normalize();
        out
    }

    /// Intersection via the stacked lattice spanned by `(x, x)` for `x ∈ self`
    /// and `(y, 0)` for `y ∈ other`: its vectors with vanishing first half are
    /// exactly `(0, z)` with `z` in both lattices.
    pub fn intersect(&self, other: &Lattice) -> Lattice {
        let r = self.dim();
        let mut moduli: Vec<u64> = self.moduli.iter().map(|&m| m as u64).collect();
        moduli.extend_from_within(..);
        let gens = self
            .rows
            .iter()
            .map(|x| {
                let mut v = x.clone();
                v.extend_from_slice(x);
                v
            })
            .chain(other.rows.iter().map(|y| {
                let mut v = y.clone();
                v.extend(core::iter::repeat(0).take(r));
                v
            }));
        Lattice::generated(&moduli, gens).fiber(r)
    }

    /// Multiplies the lattice by `k` (the subgroup `k·H`).
    pub fn scaled(&self, k: i64) -> Lattice {
        let moduli: Vec<u64> = self.moduli.iter().map(|&m| m as u64).collect();
        let gens: Vec<Vec<i64>> = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&self.moduli)
                    .map(|(&x, &m)| ((x as i128 * k.rem_euclid(m) as i128) % m as i128) as i64)
                    .collect()
            })
            .collect();
        Lattice::generated(&moduli, gens)
    }

    /// Projection onto the first `split` coordinates.
    ///
    /// Rows with pivot at or after `split` vanish there, so the leading block
    /// of the first `split` rows is already the normal form of the image.
    pub fn head(&self, split: usize) -> Lattice {
        Lattice {
            moduli: self.moduli[..split].to_vec(),
            rows: self.rows[..split].iter().map(|r| r[..split].to_vec()).collect(),
        }
    }

    /// The fiber `{ y : (0, y) ∈ L }` over zero in the first `split` coordinates.
    pub fn fiber(&self, split: usize) -> Lattice {
        Lattice {
            moduli: self.moduli[split..].to_vec(),
            rows: self.rows[split..].iter().map(|r| r[split..].to_vec()).collect(),
        }
    }

    /// Lattice with coordinates reordered so that old coordinate `perm[i]`
    /// becomes new coordinate `i`.
    pub fn permuted(&self, perm: &[usize]) -> Lattice {
        let moduli: Vec<u64> = perm.iter().map(|&i| self.moduli[i] as u64).collect();
        Lattice::generated(
            &moduli,
            self.rows
                .iter()
                .map(|row| perm.iter().map(|&i| row[i]).collect::<Vec<_>>()),
        )
    }

    /// Swaps the blocks `[..split]` and `[split..]`.
    pub fn swap_blocks(&self, split: usize) -> Lattice {
        let r = self.dim();
        let perm: Vec<usize> = (split..r).chain(0..split).collect();
        self.permuted(&perm)
    }

    /// Writes `v ∈ L` as an integer combination of the HNF rows.
    pub fn coefficients(&self, v: &[i128]) -> Option<Vec<i128>> {
        let r = self.dim();
        let mut v = v.to_vec();
        let mut c = vec![0i128; r];
        for i in 0..r {
            let p = self.rows[i][i] as i128;
            if v[i] % p != 0 {
                return None;
            }
            c[i] = v[i] / p;
            for k in i..r {
                v[k] -= c[i] * self.rows[i][k] as i128;
            }
        }
        if v.iter().all(|&x| x == 0) {
            Some(c)
        } else {
            None
        }
    }
}

/// Smith normal form of a square nonsingular integer matrix `a`, tracking
/// the column transform: returns `(diag, v, v_inv)` with `u·a·v = diag(d)`
/// for some unimodular `u`, `d_1 | d_2 | …`, all `d_i > 0`.
pub fn smith_columns(a: &[Vec<i128>]) -> Result<(Vec<i128>, Vec<Vec<i128>>, Vec<Vec<i128>>)> {
    let n = a.len();
    let mut m: Vec<Vec<i128>> = a.to_vec();
    let mut v = identity(n);
    let mut vi = identity(n);

    // Column op helpers keep v = V and vi = V^{-1} in sync.
    fn col_axpy(m: &mut [Vec<i128>], v: &mut [Vec<i128>], vi: &mut [Vec<i128>], dst: usize, src: usize, k: i128) -> Result<()> {
        // col_dst += k * col_src ; V <- V E, V^{-1} <- E^{-1} V^{-1} (row_src -= k row_dst)
        for row in m.iter_mut().chain(v.iter_mut()) {
            row[dst] = checked_add(row[dst], checked_mul(k, row[src])?)?;
        }
        let n = vi.len();
        for j in 0..n {
            let x = checked_mul(k, vi[dst][j])?;
            vi[src][j] = checked_add(vi[src][j], -x)?;
        }
        Ok(())
    }
    fn col_swap(m: &mut [Vec<i128>], v: &mut [Vec<i128>], vi: &mut [Vec<i128>], a: usize, b: usize) {
        for row in m.iter_mut().chain(v.iter_mut()) {
            row.swap(a, b);
        }
        vi.swap(a, b);
    }
    fn col_neg(m: &mut [Vec<i128>], v: &mut [Vec<i128>], vi: &mut [Vec<i128>], a: usize) {
        for row in m.iter_mut().chain(v.iter_mut()) {
            row[a] = -row[a];
        }
        for x in vi[a].iter_mut() {
            *x = -*x;
        }
    }
    fn row_axpy(m: &mut [Vec<i128>], dst: usize, src: usize, k: i128) -> Result<()> {
        let n = m[0].len();
        for j in 0..n {
            m[dst][j] = checked_add(m[dst][j], checked_mul(k, m[src][j])?)?;
        }
        Ok(())
    }

    for t in 0..n {
        loop {
            // Smallest nonzero entry of the trailing block moves to (t, t).
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if m[i][j] != 0 && best.map_or(true, |(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let (bi, bj) = best.ok_or_else(|| Error::invalid("singular matrix in Smith form"))?;
            m.swap(t, bi);
            col_swap(&mut m, &mut v, &mut vi, t, bj);
            let piv = m[t][t];
            let mut clean = true;
            for i in t + 1..n {
                let q = m[i][t].div_euclid(piv);
                if q != 0 {
                    row_axpy(&mut m, i, t, -q)?;
                }
                if m[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let q = m[t][j].div_euclid(piv);
                if q != 0 {
                    col_axpy(&mut m, &mut v, &mut vi, j, t, -q)?;
                }
                if m[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: fold an offending row into row t and retry.
            let mut offender = None;
            'find: for i in t + 1..n {
                for j in t + 1..n {
                    if m[i][j] % piv != 0 {
                        offender = Some(i);
                        break 'find;
                    }
                }
            }
            match offender {
                Some(i) => row_axpy(&mut m, t, i, 1)?,
                None => break,
            }
        }
        if m[t][t] < 0 {
            col_neg(&mut m, &mut v, &mut vi, t);
        }
    }
    let diag = (0..n).map(|i| m[i][i]).collect();
    Ok((diag, v, vi))
}

fn identity(n: usize) -> Vec<Vec<i128>> {
    (0..n)
        .map(|i| {
            let mut r = vec![0i128; n];
            r[i] = 1;
            r
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations_and_full() {
        let l = Lattice::relations(&[2, 4]);
        assert_eq!(l.order(), 1);
        assert_eq!(l.index(), 8);
        let f = Lattice::full(&[2, 4]);
        assert_eq!(f.order(), 8);
        assert!(l.leq(&f));
    }

    #[test]
    fn generated_is_canonical() {
        let a = Lattice::generated(&[2, 4], [[1i64, 1]]);
        let b = Lattice::generated(&[2, 4], [[1i64, 3], [0, 2]]);
        assert_eq!(a, b);
        assert_eq!(a.order(), 4);
    }

    #[test]
    fn intersection_small() {
        // <(1,1)> ∩ <(0,1)> in Z/2 ⊕ Z/4 is <(0,2)>
        let a = Lattice::generated(&[2, 4], [[1i64, 1]]);
        let b = Lattice::generated(&[2, 4], [[0i64, 1]]);
        assert_eq!(a.intersect(&b), Lattice::generated(&[2, 4], [[0i64, 2]]));
    }

    #[test]
    fn smith_of_diag() {
        let (d, v, vi) = smith_columns(&[vec![4, 0], vec![0, 6]]).unwrap();
        assert_eq!(d, vec![2, 12]);
        // v * vi = I
        for i in 0..2 {
            for j in 0..2 {
                let s: i128 = (0..2).map(|k| v[i][k] * vi[k][j]).sum();
                assert_eq!(s, (i == j) as i128);
            }
        }
    }
}
