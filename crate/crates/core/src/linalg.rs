//! Exact linear algebra over the rationals by fraction-free (Bareiss)
//! elimination.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<BigRational>>;

/// Scales each row by the lcm of its denominators.
fn integer_rows(rows: &[Vec<BigRational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect()
}

/// Fraction-free row echelon form of the first `cols` columns. Returns the
/// pivot columns; rows are reordered in place.
fn bareiss(m: &mut [Vec<BigInt>], cols: usize) -> Vec<usize> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let width = m[r].len();
        for i in r + 1..rows {
            for j in c + 1..width {
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of a rational matrix.
pub fn rank(a: &[Vec<BigRational>]) -> usize {
    let cols = a.first().map_or(0, Vec::len);
    bareiss(&mut integer_rows(a), cols).len()
}

/// Pivot columns of the row echelon form, i.e. a maximal set of linearly
/// independent columns chosen greedily from the left.
pub fn pivot_columns(a: &[Vec<BigRational>]) -> Vec<usize> {
    let cols = a.first().map_or(0, Vec::len);
    bareiss(&mut integer_rows(a), cols)
}

/// Solves `A X = B` for square nonsingular `A`; `b` holds one column per
/// right-hand side.
pub fn solve_many(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Result<Matrix> {
    let n = a.len();
    if a.iter().any(|row| row.len() != n) || b.len() != n {
        return Err(Error::Precondition("matrix shapes do not match".into()));
    }
    let k = b.first().map_or(0, Vec::len);
    let aug: Vec<Vec<BigRational>> =
        a.iter().zip(b).map(|(ra, rb)| ra.iter().chain(rb).cloned().collect()).collect();
    let mut m = integer_rows(&aug);
    let pivots = bareiss(&mut m, n);
    if pivots.len() < n {
        return Err(Error::Singular(format!("rank {} of {n}", pivots.len())));
    }
    let mut x = vec_zero(n, k);
    for col in 0..k {
        for i in (0..n).rev() {
            let mut acc = BigRational::from_integer(m[i][n + col].clone());
            for j in i + 1..n {
                acc -= BigRational::from_integer(m[i][j].clone()) * &x[j][col];
            }
            x[i][col] = acc / BigRational::from_integer(m[i][i].clone());
        }
    }
    Ok(x)
}

pub fn solve(a: &[Vec<BigRational>], b: &[BigRational]) -> Result<Vec<BigRational>> {
    let cols: Vec<Vec<BigRational>> = b.iter().map(|x| alloc::vec![x.clone()]).collect();
    Ok(solve_many(a, &cols)?.into_iter().map(|mut r| r.remove(0)).collect())
}

pub fn inverse(a: &[Vec<BigRational>]) -> Result<Matrix> {
    solve_many(a, &identity(a.len()))
}

pub fn identity(n: usize) -> Matrix {
    let mut m = vec_zero(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigRational::one();
    }
    m
}

pub fn mat_vec(a: &[Vec<BigRational>], x: &[BigRational]) -> Vec<BigRational> {
    a.iter().map(|row| row.iter().zip(x).map(|(p, q)| p * q).sum()).collect()
}

fn vec_zero(r: usize, c: usize) -> Matrix {
    (0..r).map(|_| (0..c).map(|_| BigRational::zero()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn solves_small_system() {
        let a = vec![vec![q(2, 1), q(1, 3)], vec![q(1, 2), q(-1, 1)]];
        let x = vec![q(3, 7), q(-5, 2)];
        let b = mat_vec(&a, &x);
        assert_eq!(solve(&a, &b).unwrap(), x);
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_vec(&inv, &b), x);
    }

    #[test]
    fn detects_rank_deficiency() {
        let a = vec![vec![q(1, 1), q(2, 1), q(3, 1)], vec![q(2, 1), q(4, 1), q(6, 1)], vec![q(0, 1), q(1, 1), q(1, 1)]];
        assert_eq!(rank(&a), 2);
        assert_eq!(pivot_columns(&a), vec![0, 1]);
        assert!(matches!(solve(&a, &[q(1, 1), q(1, 1), q(1, 1)]), Err(Error::Singular(_))));
    }
}
