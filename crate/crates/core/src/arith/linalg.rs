//! Dense linear algebra over a runtime field, and integer row reduction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::field::{Elem, Field};

pub type Matrix = Vec<Vec<Elem>>;

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(k: &Field, m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !k.is_zero(&m[i][c])) else { continue };
        m.swap(r, p);
        let inv = k.inv(&m[r][c]).unwrap();
        for j in c..cols {
            m[r][j] = k.mul(&m[r][j], &inv);
        }
        for i in 0..rows {
            if i != r && !k.is_zero(&m[i][c]) {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = k.mul(&f, &m[r][j]);
                    m[i][j] = k.sub(&m[i][j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(k: &Field, m: &Matrix) -> usize {
    let mut a = m.clone();
    rref(k, &mut a).len()
}

/// Basis of `{x : m x = 0}`.
pub fn kernel(k: &Field, m: &Matrix, cols: usize) -> Vec<Vec<Elem>> {
    let mut a = m.clone();
    let piv = rref(k, &mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !piv.contains(c)).collect();
    let mut basis = Vec::new();
    for &f in &free {
        let mut v = vec![k.zero(); cols];
        v[f] = k.one();
        for (i, &p) in piv.iter().enumerate() {
            v[p] = k.neg(&a[i][f]);
        }
        basis.push(v);
    }
    basis
}

/// Solve `m x = b`; `None` when inconsistent.
pub fn solve(k: &Field, m: &Matrix, b: &[Elem]) -> Option<Vec<Elem>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let piv = rref(k, &mut a);
    if piv.contains(&cols) {
        return None;
    }
    let mut x = vec![k.zero(); cols];
    for (i, &p) in piv.iter().enumerate() {
        x[p] = a[i][cols].clone();
    }
    Some(x)
}

pub fn det(k: &Field, m: &Matrix) -> Elem {
    let n = m.len();
    let mut a = m.clone();
    let mut d = k.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !k.is_zero(&a[i][c])) else { return k.zero() };
        if p != c {
            a.swap(p, c);
            d = k.neg(&d);
        }
        d = k.mul(&d, &a[c][c]);
        let inv = k.inv(&a[c][c]).unwrap();
        for i in c + 1..n {
            if k.is_zero(&a[i][c]) {
                continue;
            }
            let f = k.mul(&a[i][c], &inv);
            for j in c..n {
                let t = k.mul(&f, &a[c][j]);
                a[i][j] = k.sub(&a[i][j], &t);
            }
        }
    }
    d
}

pub fn mat_vec(k: &Field, m: &Matrix, v: &[Elem]) -> Vec<Elem> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(k.zero(), |acc, (a, b)| k.add(&acc, &k.mul(a, b))))
        .collect()
}

pub fn transpose(m: &Matrix) -> Matrix {
    if m.is_empty() {
        return vec![];
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Hermite-style integer row reduction: a basis of the row lattice, in
/// echelon form with positive pivots. Zero rows are dropped.
pub fn integer_row_basis(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    if a.is_empty() {
        return a;
    }
    let cols = a[0].len();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        loop {
            // Euclid on column c among rows r..
            let nz: Vec<usize> = (r..a.len()).filter(|&i| !a[i][c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| a[i][c].abs()).unwrap();
            a.swap(r, p);
            let mut done = true;
            for i in r + 1..a.len() {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                for j in 0..cols {
                    let t = &q * &a[r][j];
                    a[i][j] -= t;
                }
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < a.len() && !a[r][c].is_zero() {
            if a[r][c].is_negative() {
                for j in 0..cols {
                    a[r][j] = -a[r][j].clone();
                }
            }
            r += 1;
        }
    }
    a.truncate(r);
    a.retain(|row| row.iter().any(|x| !x.is_zero()));
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_rank_one() {
        let k = Field::Rational;
        let m = vec![vec![k.from_i64(1), k.from_i64(2)], vec![k.from_i64(2), k.from_i64(4)]];
        let ker = kernel(&k, &m, 2);
        assert_eq!(ker.len(), 1);
        let img = mat_vec(&k, &m, &ker[0]);
        assert!(img.iter().all(|x| k.is_zero(x)));
    }

    #[test]
    fn det_and_solve() {
        let k = Field::Prime(7);
        let m = vec![vec![k.from_i64(2), k.from_i64(1)], vec![k.from_i64(1), k.from_i64(3)]];
        assert_eq!(det(&k, &m), k.from_i64(5));
        let x = solve(&k, &m, &[k.from_i64(1), k.from_i64(0)]).unwrap();
        assert_eq!(mat_vec(&k, &m, &x), vec![k.from_i64(1), k.from_i64(0)]);
    }

    #[test]
    fn integer_basis() {
        let b = integer_row_basis(&[vec![BigInt::from(4), BigInt::from(0)], vec![BigInt::from(6), BigInt::from(0)]]);
        assert_eq!(b, vec![vec![BigInt::from(2), BigInt::from(0)]]);
    }
}
