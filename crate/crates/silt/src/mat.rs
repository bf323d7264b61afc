//! Dense exact linear algebra: rank, kernel, solve, inverse.
//!
//! Matrices are small (at most a few hundred rows) and live over a single
//! [`Field`]. Elimination uses deterministic pivoting: scanning columns left
//! to right, the first row with a nonzero entry becomes the pivot. This makes
//! every echelon form, kernel basis and solution reproducible across runs.

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Mat {
    pub field: Field,
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Mat {
        Mat { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        let mut m = Mat::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Build from rows, validating shape and field homogeneity.
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Mat> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in &rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch(format!(
                    "ragged rows: expected {c}, got {}",
                    row.len()
                )));
            }
            for x in row {
                if x.field() != field {
                    return Err(Error::FieldMismatch(field.to_string(), x.field().to_string()));
                }
                data.push(x.clone());
            }
        }
        Ok(Mat { field, rows: r, cols: c, data })
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Mat {
        let mut m = Mat::zero(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        debug_assert_eq!(v.field(), self.field);
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        assert_eq!(self.field, other.field);
        let mut out = Mat::zero(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc = acc.add(&a.mul(&v[j]));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.field, self.rows, self.cols, |i, j| self.get(i, j).add(other.get(i, j)))
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        Mat::from_fn(self.field, self.rows, self.cols, |i, j| self.get(i, j).mul(c))
    }

    pub fn neg(&self) -> Mat {
        Mat::from_fn(self.field, self.rows, self.cols, |i, j| self.get(i, j).neg())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        Mat::from_fn(self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn from_cols(field: Field, rows: usize, cols: &[Vec<Scalar>]) -> Mat {
        let mut m = Mat::zero(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for i in 0..rows {
                m.set(i, j, c[i].clone());
            }
        }
        m
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for j in 0..m.cols {
            if r == m.rows {
                break;
            }
            // first nonzero entry in column j at or below row r
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, j).is_zero()) else {
                continue;
            };
            if pr != r {
                for k in 0..m.cols {
                    let a = m.get(r, k).clone();
                    let b = m.get(pr, k).clone();
                    m.set(r, k, b);
                    m.set(pr, k, a);
                }
            }
            let inv = m.get(r, j).inv();
            for k in j..m.cols {
                let v = m.get(r, k).mul(&inv);
                m.set(r, k, v);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, j).is_zero() {
                    let f = m.get(i, j).clone();
                    for k in j..m.cols {
                        let v = m.get(i, k).sub(&f.mul(m.get(r, k)));
                        m.set(i, k, v);
                    }
                }
            }
            pivots.push(j);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, as column vectors in reduced form.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for j in 0..self.cols {
            if pivot_set.contains(&j) {
                continue;
            }
            let mut v = vec![self.field.zero(); self.cols];
            v[j] = self.field.one();
            for (pi, &pj) in pivots.iter().enumerate() {
                v[pj] = r.get(pi, j).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// A particular solution of `self * x = b`, if the system is consistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: {} rows vs rhs of length {}",
                self.rows,
                b.len()
            )));
        }
        let aug = self.hstack(&Mat::from_cols(self.field, self.rows, &[b.to_vec()]));
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return Ok(None); // pivot in the rhs column: inconsistent
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (pi, &pj) in pivots.iter().enumerate() {
            x[pj] = r.get(pi, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub fn is_invertible(&self) -> Result<bool> {
        if self.rows != self.cols {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        Ok(self.rank() == self.rows)
    }

    pub fn inverse(&self) -> Result<Option<Mat>> {
        if self.rows != self.cols {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let aug = self.hstack(&Mat::identity(self.field, n));
        let (r, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| i != p) {
            return Ok(None);
        }
        Ok(Some(Mat::from_fn(self.field, n, n, |i, j| r.get(i, n + j).clone())))
    }
}

/// Incremental Gaussian eliminator over a fixed ambient dimension.
///
/// Maintains echelonized rows; used for membership tests, basis extension
/// and deterministic quotient representatives.
#[derive(Clone, Debug)]
pub struct Eliminator {
    pub field: Field,
    pub dim: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Eliminator {
    pub fn new(field: Field, dim: usize) -> Eliminator {
        Eliminator { field, dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Pivot coordinates of the echelonized span, in increasing order.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce `v` against the current rows (does not insert).
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.dim);
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !w[p].is_zero() {
                let f = w[p].clone();
                for k in 0..self.dim {
                    if !row[k].is_zero() {
                        w[k] = w[k].sub(&f.mul(&row[k]));
                    }
                }
            }
        }
        w
    }

    /// Insert `v`; returns `true` if it enlarged the span.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].inv();
        let normalized: Vec<Scalar> = w.iter().map(|x| x.mul(&inv)).collect();
        // back-substitute to keep rows fully reduced
        for (row, &q) in self.rows.iter_mut().zip(&self.pivots) {
            debug_assert!(q != p);
            if !row[p].is_zero() {
                let f = row[p].clone();
                for k in 0..self.dim {
                    if !normalized[k].is_zero() {
                        row[k] = row[k].sub(&f.mul(&normalized[k]));
                    }
                }
            }
        }
        // keep rows ordered by pivot for determinism
        let at = self.pivots.iter().position(|&q| q > p).unwrap_or(self.pivots.len());
        self.rows.insert(at, normalized);
        self.pivots.insert(at, p);
        true
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn qmat(rows: Vec<Vec<i64>>) -> Mat {
        let f = Field::Q;
        Mat::from_rows(
            f,
            rows.into_iter()
                .map(|r| r.into_iter().map(|x| f.from_i64(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn random_mat(rng: &mut ChaCha8Rng, field: Field, rows: usize, cols: usize) -> Mat {
        Mat::from_fn(field, rows, cols, |_, _| field.from_i64(rng.gen_range(-4..=4)))
    }

    #[test]
    fn rank_identity_and_zero() {
        assert_eq!(Mat::identity(Field::Q, 2).rank(), 2);
        assert_eq!(Mat::zero(Field::Q, 3, 5).rank(), 0);
        assert_eq!(qmat(vec![vec![1, 2], vec![2, 4]]).rank(), 1);
    }

    #[test]
    fn kernel_basis_examples() {
        assert!(Mat::identity(Field::Q, 4).kernel_basis().is_empty());
        assert_eq!(Mat::zero(Field::Q, 2, 3).kernel_basis().len(), 3);
        let k = qmat(vec![vec![1, 1]]).kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0][0], k[0][1].neg()); // span{(1,-1)}
    }

    #[test]
    fn kernel_columns_annihilated_and_independent() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for field in [Field::Q, Field::Fp(101)] {
            for _ in 0..10 {
                let m = random_mat(&mut rng, field, 4, 6);
                let ker = m.kernel_basis();
                assert_eq!(m.rank() + ker.len(), m.cols);
                let mut elim = Eliminator::new(field, m.cols);
                for v in &ker {
                    assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
                    assert!(elim.insert(v), "kernel basis vectors must be independent");
                }
            }
        }
    }

    #[test]
    fn rank_equals_transpose_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let m = random_mat(&mut rng, Field::Q, 5, 7);
            assert_eq!(m.rank(), m.transpose().rank());
        }
    }

    #[test]
    fn solve_examples() {
        let f = Field::Q;
        let id = Mat::identity(f, 3);
        let b = vec![f.from_i64(3), f.from_i64(-1), f.from_i64(2)];
        assert_eq!(id.solve(&b).unwrap().unwrap(), b);

        let m = qmat(vec![vec![1, 1]]);
        let sol = m.solve(&[f.zero()]).unwrap().unwrap();
        assert!(m.mul_vec(&sol).iter().all(|x| x.is_zero()));

        let z = Mat::zero(f, 2, 2);
        assert!(z.solve(&[f.one(), f.zero()]).unwrap().is_none());

        assert!(m.solve(&[f.zero(), f.zero()]).is_err()); // dimension mismatch
    }

    #[test]
    fn solutions_translate_by_kernel() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let m = random_mat(&mut rng, Field::Q, 3, 5);
            let x0: Vec<Scalar> =
                (0..5).map(|_| Field::Q.from_i64(rng.gen_range(-3..=3))).collect();
            let b = m.mul_vec(&x0);
            let sol = m.solve(&b).unwrap().expect("consistent by construction");
            for k in m.kernel_basis() {
                let shifted: Vec<Scalar> =
                    sol.iter().zip(&k).map(|(a, b)| a.add(b)).collect();
                assert_eq!(m.mul_vec(&shifted), b);
            }
        }
    }

    #[test]
    fn invertibility() {
        assert!(Mat::identity(Field::Q, 3).is_invertible().unwrap());
        let nilpotent = qmat(vec![vec![0, 1], vec![0, 0]]);
        assert!(!nilpotent.is_invertible().unwrap());
        let swap = qmat(vec![vec![0, 1], vec![1, 0]]);
        assert!(swap.is_invertible().unwrap());
        assert!(qmat(vec![vec![1, 2, 3]]).is_invertible().is_err());

        let inv = swap.inverse().unwrap().unwrap();
        assert_eq!(swap.mul(&inv), Mat::identity(Field::Q, 2));
    }

    #[test]
    fn mixed_fields_rejected() {
        let bad = Mat::from_rows(
            Field::Q,
            vec![vec![Field::Q.one(), Field::Fp(5).one()]],
        );
        assert!(matches!(bad, Err(crate::error::Error::FieldMismatch(..))));
    }

    #[test]
    fn zero_sized_matrices() {
        let m = Mat::zero(Field::Q, 0, 3);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.kernel_basis().len(), 3);
        let n = Mat::zero(Field::Q, 3, 0);
        assert_eq!(n.kernel_basis().len(), 0);
        let rhs = vec![Field::Q.zero(), Field::Q.zero(), Field::Q.zero()];
        assert_eq!(n.solve(&rhs).unwrap(), Some(vec![]));
    }
}
