//! Univariate polynomials over `F_p`, coefficients lowest degree first.

use alloc::vec;
use alloc::vec::Vec;

use super::fp::{inv_mod, Matrix};

fn trim(mut f: Vec<u32>) -> Vec<u32> {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

/// Remainder of `a` modulo nonzero `b`.
pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let lead_inv = inv_mod(*b.last().expect("nonzero divisor"), p) as u64;
    let p64 = p as u64;
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let f = *r.last().unwrap() as u64 * lead_inv % p64;
        for (i, &c) in b.iter().enumerate() {
            let x = &mut r[shift + i];
            *x = ((*x as u64 + (p64 - f) * c as u64) % p64) as u32;
        }
        r = trim(r);
    }
    r
}

/// Minimal polynomial of a square matrix, monic.
pub fn minimal_polynomial(m: &Matrix) -> Vec<u32> {
    let p = m.p();
    let n = m.nrows();
    let mut powers = vec![Matrix::identity(p, n)];
    loop {
        let next = powers.last().unwrap().mul(m);
        let cols: Vec<Vec<u32>> = powers.iter().map(|x| x.entries().to_vec()).collect();
        let a = Matrix::from_columns(p, n * n, &cols);
        if let Some(c) = a.solve(next.entries()) {
            let mut f: Vec<u32> = c.iter().map(|&x| (p - x) % p).collect();
            f.push(1);
            return f;
        }
        powers.push(next);
    }
}

/// Irreducibility by trial division against every monic polynomial of
/// degree at most half the degree of `f`.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let f = trim(f.to_vec());
    let d = f.len().saturating_sub(1);
    if d == 0 {
        return false;
    }
    for deg in 1..=d / 2 {
        let count = (p as u64).pow(deg as u32);
        for mut idx in 0..count {
            let mut g = vec![0u32; deg + 1];
            g[deg] = 1;
            for c in g.iter_mut().take(deg) {
                *c = (idx % p as u64) as u32;
                idx /= p as u64;
            }
            if rem(&f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(&[1, 1, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1], 2));
        assert!(is_irreducible(&[1, 1, 0, 1], 2));
        assert!(is_irreducible(&[1, 0, 1], 3));
        assert!(is_irreducible(&[4, 1], 5));
    }

    #[test]
    fn minimal_polynomials() {
        let m = Matrix::from_rows(2, &[vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(minimal_polynomial(&m), vec![1, 1, 1]);
        assert_eq!(minimal_polynomial(&Matrix::identity(3, 3)), vec![2, 1]);
        let e11 = Matrix::from_rows(2, &[vec![1, 0], vec![0, 0]]).unwrap();
        assert_eq!(minimal_polynomial(&e11), vec![0, 1, 1]);
    }
}
