//! Dense matrices and Gaussian elimination over a finite field.

use std::ops::{Index, IndexMut};

pub trait Field {
    type Elt: Copy + Eq + std::fmt::Debug;
    fn zero(&self) -> Self::Elt;
    fn one(&self) -> Self::Elt;
    fn add(&self, a: Self::Elt, b: Self::Elt) -> Self::Elt;
    fn sub(&self, a: Self::Elt, b: Self::Elt) -> Self::Elt;
    fn mul(&self, a: Self::Elt, b: Self::Elt) -> Self::Elt;
    fn inv(&self, a: Self::Elt) -> Self::Elt;
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        Matrix { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn transpose(&self) -> Matrix<T> {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(field: &F, m: &mut Matrix<F::Elt>) -> Vec<usize> {
    let zero = field.zero();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols() {
        if r == m.rows() {
            break;
        }
        let Some(pr) = (r..m.rows()).find(|&i| m[(i, c)] != zero) else {
            continue;
        };
        m.swap_rows(r, pr);
        let inv = field.inv(m[(r, c)]);
        for j in c..m.cols() {
            m[(r, j)] = field.mul(m[(r, j)], inv);
        }
        for i in 0..m.rows() {
            if i == r {
                continue;
            }
            let factor = m[(i, c)];
            if factor == zero {
                continue;
            }
            for j in c..m.cols() {
                let v = field.mul(factor, m[(r, j)]);
                m[(i, j)] = field.sub(m[(i, j)], v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elt>) -> usize {
    let mut work = m.clone();
    rref(field, &mut work).len()
}

/// Basis of `{x : m x = 0}`, one vector per free column, each with a 1 in
/// its free column.
pub fn nullspace<F: Field>(field: &F, m: &Matrix<F::Elt>) -> Vec<Vec<F::Elt>> {
    let mut work = m.clone();
    let pivots = rref(field, &mut work);
    let n = m.cols();
    let mut is_pivot = vec![false; n];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); n];
        v[free] = field.one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = field.sub(field.zero(), work[(r, free)]);
        }
        basis.push(v);
    }
    basis
}

/// Canonical (reduced echelon) basis of the span of `vectors` in `F^n`.
pub fn span_basis<F: Field>(field: &F, vectors: &[Vec<F::Elt>], n: usize) -> Vec<Vec<F::Elt>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let mut m = Matrix::from_rows(vectors.to_vec(), n);
    let r = rref(field, &mut m).len();
    (0..r).map(|i| m.row(i).to_vec()).collect()
}

pub fn mat_vec<F: Field>(field: &F, m: &Matrix<F::Elt>, v: &[F::Elt]) -> Vec<F::Elt> {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .zip(v)
                .fold(field.zero(), |acc, (&a, &b)| field.add(acc, field.mul(a, b)))
        })
        .collect()
}

pub fn mat_mul<F: Field>(field: &F, a: &Matrix<F::Elt>, b: &Matrix<F::Elt>) -> Matrix<F::Elt> {
    assert_eq!(a.cols(), b.rows());
    Matrix::from_fn(a.rows(), b.cols(), |i, j| {
        (0..a.cols()).fold(field.zero(), |acc, k| field.add(acc, field.mul(a[(i, k)], b[(k, j)])))
    })
}

pub fn identity<F: Field>(field: &F, n: usize) -> Matrix<F::Elt> {
    Matrix::from_fn(n, n, |i, j| if i == j { field.one() } else { field.zero() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::PrimeField;

    #[test]
    fn nullspace_of_small_matrix() {
        let f = PrimeField::new(5).unwrap();
        let m = Matrix::from_rows(vec![vec![1, 2, 3], vec![2, 4, 0]], 3);
        let ns = nullspace(&f, &m);
        assert_eq!(ns.len(), 1);
        assert!(mat_vec(&f, &m, &ns[0]).iter().all(|&x| x == 0));
        assert_eq!(rank(&f, &m), 2);
    }

    #[test]
    fn span_basis_is_canonical() {
        let f = PrimeField::new(3).unwrap();
        let a = span_basis(&f, &[vec![1, 1, 0], vec![0, 1, 1]], 3);
        let b = span_basis(&f, &[vec![1, 2, 1], vec![2, 2, 0]], 3);
        assert_eq!(a, b);
    }
}
