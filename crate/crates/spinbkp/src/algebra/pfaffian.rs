use super::ring::Ring;
use crate::error::{Error, Result};
use std::collections::HashMap;

/// Skew-symmetric matrix stored by its strict upper triangle.
#[derive(Clone, Debug)]
pub struct SkewMatrix<R: Ring> {
    dim: usize,
    upper: HashMap<(usize, usize), R>,
}

impl<R: Ring> SkewMatrix<R> {
    pub fn new(dim: usize) -> Self {
        SkewMatrix { dim, upper: HashMap::new() }
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> R) -> Self {
        let mut m = SkewMatrix::new(dim);
        for i in 0..dim {
            for j in i + 1..dim {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        assert!(i < j && j < self.dim);
        self.upper.insert((i, j), v);
    }

    pub fn get(&self, i: usize, j: usize) -> R {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => R::rzero(),
            Less => self.upper.get(&(i, j)).cloned().unwrap_or_else(R::rzero),
            Greater => self.upper.get(&(j, i)).map(|v| v.rneg()).unwrap_or_else(R::rzero),
        }
    }

    /// Dense copy, for determinants.
    pub fn to_dense(&self) -> Vec<Vec<R>> {
        (0..self.dim).map(|i| (0..self.dim).map(|j| self.get(i, j)).collect()).collect()
    }
}

/// Pfaffian by expansion along the first row.
pub fn pfaffian<R: Ring>(a: &SkewMatrix<R>) -> Result<R> {
    if a.dim % 2 == 1 {
        return Err(Error::OddDimension(a.dim));
    }
    let idx: Vec<usize> = (0..a.dim).collect();
    Ok(pf_rec(a, &idx))
}

fn pf_rec<R: Ring>(a: &SkewMatrix<R>, idx: &[usize]) -> R {
    if idx.is_empty() {
        return R::rone();
    }
    let i0 = idx[0];
    let mut acc = R::rzero();
    for k in 1..idx.len() {
        let e = a.get(i0, idx[k]);
        if e.ris_zero() {
            continue;
        }
        let rest: Vec<usize> = idx[1..].iter().copied().filter(|&x| x != idx[k]).collect();
        let term = e.rmul(&pf_rec(a, &rest));
        acc = if k % 2 == 1 { acc.radd(&term) } else { acc.rsub(&term) };
    }
    acc
}

/// Determinant by Laplace expansion along the first row, with minors memoized.
pub fn determinant<R: Ring>(m: &[Vec<R>]) -> R {
    let n = m.len();
    let mut memo: HashMap<u64, R> = HashMap::new();
    det_rec(m, 0, (1u64 << n) - 1, &mut memo)
}

fn det_rec<R: Ring>(m: &[Vec<R>], row: usize, cols: u64, memo: &mut HashMap<u64, R>) -> R {
    if cols == 0 {
        return R::rone();
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let mut acc = R::rzero();
    let mut sign = true;
    for c in 0..m.len() {
        if cols & (1 << c) == 0 {
            continue;
        }
        let e = &m[row][c];
        if !e.ris_zero() {
            let t = e.rmul(&det_rec(m, row + 1, cols & !(1 << c), memo));
            acc = if sign { acc.radd(&t) } else { acc.rsub(&t) };
        }
        sign = !sign;
    }
    memo.insert(cols, acc.clone());
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::mpoly::MPoly;
    use crate::algebra::rational::{rint, Rational};
    use proptest::prelude::*;

    #[test]
    fn small_cases() {
        let e: SkewMatrix<Rational> = SkewMatrix::new(0);
        assert_eq!(pfaffian(&e).unwrap(), rint(1));
        let mut m = SkewMatrix::new(2);
        m.set(0, 1, rint(7));
        assert_eq!(pfaffian(&m).unwrap(), rint(7));
        let odd: SkewMatrix<Rational> = SkewMatrix::new(3);
        assert_eq!(pfaffian(&odd).unwrap_err(), Error::OddDimension(3));
    }

    #[test]
    fn four_by_four_symbolic() {
        // entries a_ij = distinct variables
        let slot = |i: usize, j: usize| match (i, j) {
            (0, 1) => 0,
            (0, 2) => 1,
            (0, 3) => 2,
            (1, 2) => 3,
            (1, 3) => 4,
            _ => 5,
        };
        let m = SkewMatrix::from_fn(4, |i, j| MPoly::var(slot(i, j)));
        let expect = MPoly::var(0).mul(&MPoly::var(5)).sub(&MPoly::var(1).mul(&MPoly::var(4))).add(&MPoly::var(2).mul(&MPoly::var(3)));
        assert_eq!(pfaffian(&m).unwrap(), expect);
    }

    proptest! {
        #[test]
        fn pf_squared_is_det(half in 1usize..5, seed in proptest::collection::vec(-5i64..6, 28)) {
            let n = 2 * half;
            let mut k = 0;
            let mut m = SkewMatrix::new(n);
            for i in 0..n {
                for j in i + 1..n {
                    m.set(i, j, rint(seed[k % seed.len()] + (i as i64) - (j as i64 % 3)));
                    k += 1;
                }
            }
            let pf = pfaffian(&m).unwrap();
            let det = determinant(&m.to_dense());
            prop_assert_eq!(&pf * &pf, det);
        }
    }
}
