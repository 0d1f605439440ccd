//! Dense matrices over `F_p` and `Z/p^k`, canonical subspaces, and free
//! direct summands.
//!
//! Every elimination here pivots on units. Over a field that is ordinary
//! Gauss–Jordan; over `Z/p^k` the pivots found are exactly the pivots of the
//! residue matrix, because a row operation with a unit pivot reduces to the
//! same row operation mod `p`. That is enough for every matrix the rest of
//! the crate produces (summand bases, surjections onto free modules).

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::RingDescriptor;

/// Row-major dense matrix with canonical residue entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    ring: RingDescriptor,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}]{:?}", self.ring, self.to_rows())
    }
}

impl Matrix {
    pub fn zeros(ring: RingDescriptor, rows: usize, cols: usize) -> Self {
        Matrix {
            ring,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(ring: RingDescriptor, n: usize) -> Self {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, 1 % ring.modulus());
        }
        m
    }

    /// Builds a matrix from signed integer rows, reducing every entry.
    pub fn from_i64(ring: RingDescriptor, rows: &[Vec<i64>]) -> Result<Self> {
        let rows: Vec<Vec<u64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| ring.reduce(x)).collect())
            .collect();
        Matrix::from_rows(ring, &rows)
    }

    /// Builds a matrix from rows of residues; entries are reduced.
    pub fn from_rows(ring: RingDescriptor, rows: &[Vec<u64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            data.extend(r.iter().map(|&x| ring.reduce_u(x)));
        }
        Ok(Matrix {
            ring,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Like [`Matrix::from_rows`] but with an explicit column count, so that
    /// zero-row matrices keep their width.
    pub fn from_rows_with_cols(ring: RingDescriptor, rows: &[Vec<u64>], cols: usize) -> Result<Self> {
        if rows.is_empty() {
            return Ok(Matrix::zeros(ring, 0, cols));
        }
        let m = Matrix::from_rows(ring, rows)?;
        if m.cols != cols {
            return Err(Error::DimensionMismatch {
                expected: cols,
                got: m.cols,
            });
        }
        Ok(m)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(ring: RingDescriptor, cols: &[Vec<u64>], height: usize) -> Result<Self> {
        Ok(Matrix::from_rows_with_cols(ring, cols, height)?.transpose())
    }

    pub fn ring(&self) -> RingDescriptor {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.ring.ensure_same(&other.ring)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let r = self.ring;
        let mut out = Matrix::zeros(r, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = r.add(out.data[idx], r.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    /// `A v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[u64]) -> Result<Vec<u64>> {
        check_len(self.cols, v)?;
        Ok((0..self.rows).map(|i| dot(self.ring, self.row(i), v)).collect())
    }

    /// `vᵀ A` for a row vector `v`.
    pub fn vec_mul(&self, v: &[u64]) -> Result<Vec<u64>> {
        check_len(self.rows, v)?;
        let r = self.ring;
        let mut out = vec![0; self.cols];
        for (i, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = r.add(*o, r.mul(c, self.get(i, j)));
            }
        }
        Ok(out)
    }

    /// Entrywise reduction to the residue field.
    pub fn residue(&self) -> Matrix {
        let f = self.ring.residue_field();
        Matrix {
            ring: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| self.ring.residue(x)).collect(),
        }
    }

    /// Canonical lift of a residue-field matrix (same integer entries).
    pub fn lift_to(&self, target: RingDescriptor) -> Result<Matrix> {
        if target.p() != self.ring.p() {
            return Err(Error::RingMismatch {
                left: self.ring.to_string(),
                right: target.to_string(),
            });
        }
        Ok(Matrix {
            ring: target,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| target.reduce_u(x)).collect(),
        })
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        self.ring.ensure_same(&other.ring)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix {
            ring: self.ring,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        Ok(self.transpose().vstack(&other.transpose())?.transpose())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let rows: Vec<Vec<u64>> = idx.iter().map(|&i| self.row(i).to_vec()).collect();
        Matrix::from_rows_with_cols(self.ring, &rows, self.cols).expect("rows share width")
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Row-reduces in place using unit pivots only and returns the pivot
    /// columns. Over a field the result is the reduced row-echelon form.
    pub fn unit_row_reduce(&mut self) -> Vec<usize> {
        self.unit_row_reduce_cols(self.cols)
    }

    /// As [`Matrix::unit_row_reduce`] but only searches for pivots among the
    /// first `limit` columns.
    fn unit_row_reduce_cols(&mut self, limit: usize) -> Vec<usize> {
        let r = self.ring;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..limit {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&i| r.is_unit(self.get(i, col))) else {
                continue;
            };
            self.swap_rows(row, pr);
            let inv = r.inv(self.get(row, col)).expect("pivot is a unit");
            for j in 0..self.cols {
                let v = r.mul(self.get(row, j), inv);
                self.set(row, j, v);
            }
            for i in 0..self.rows {
                if i == row {
                    continue;
                }
                let factor = self.get(i, col);
                if factor == 0 {
                    continue;
                }
                for j in 0..self.cols {
                    let v = r.sub(self.get(i, j), r.mul(factor, self.get(row, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Rank of the residue matrix.
    pub fn residue_rank(&self) -> usize {
        self.residue().unit_row_reduce().len()
    }

    /// Exact determinant. Pivots on entries of minimal valuation, which keeps
    /// every row operation determinant-preserving over `Z/p^k`.
    pub fn determinant(&self) -> Result<u64> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let r = self.ring;
        let n = self.rows;
        let mut a = self.clone();
        let mut det = 1 % r.modulus();
        for col in 0..n {
            let pick = (col..n)
                .filter(|&i| a.get(i, col) != 0)
                .min_by_key(|&i| r.valuation(a.get(i, col)));
            let Some(pr) = pick else {
                return Ok(0);
            };
            if pr != col {
                a.swap_rows(pr, col);
                det = r.neg(det);
            }
            let pivot = a.get(col, col);
            let v = r.valuation(pivot);
            let pv = r.p().pow(v);
            let unit_part = pivot / pv;
            let unit_inv = r.inv(unit_part % r.modulus()).expect("unit part");
            det = r.mul(det, pivot);
            for i in col + 1..n {
                let e = a.get(i, col);
                if e == 0 {
                    continue;
                }
                // e = p^v * (e / p^v) exactly as integers since val(e) >= v.
                let factor = r.mul((e / pv) % r.modulus(), unit_inv);
                for j in col..n {
                    let x = r.sub(a.get(i, j), r.mul(factor, a.get(col, j)));
                    a.set(i, j, x);
                }
            }
        }
        Ok(det)
    }

    /// Lemma: a square matrix over `Z/p^k` is invertible iff its residue is.
    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.residue_rank() == self.rows
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NotInvertible);
        }
        let n = self.rows;
        let mut aug = self.hstack(&Matrix::identity(self.ring, n))?;
        let pivots = aug.unit_row_reduce_cols(n);
        if pivots.len() < n {
            return Err(Error::NotInvertible);
        }
        let mut inv = Matrix::zeros(self.ring, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j));
            }
        }
        Ok(inv)
    }

    /// Solves `A x = b` when `A` has full residue row rank. Free variables
    /// are set to zero.
    pub fn solve(&self, b: &[u64]) -> Result<Vec<u64>> {
        check_len(self.rows, b)?;
        let col = Matrix::from_columns(self.ring, &[b.to_vec()], self.rows)?;
        let mut aug = self.hstack(&col)?;
        let pivots = aug.unit_row_reduce_cols(self.cols);
        if pivots.len() < self.rows {
            return Err(Error::NotSurjective {
                rank: pivots.len(),
                target: self.rows,
            });
        }
        let mut x = vec![0; self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(i, self.cols);
        }
        Ok(x)
    }
}

fn check_len(expected: usize, v: &[u64]) -> Result<()> {
    if v.len() == expected {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected,
            got: v.len(),
        })
    }
}

pub fn dot(ring: RingDescriptor, a: &[u64], b: &[u64]) -> u64 {
    a.iter()
        .zip(b)
        .fold(0, |acc, (&x, &y)| ring.add(acc, ring.mul(x, y)))
}

pub fn add_vec(ring: RingDescriptor, a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(&x, &y)| ring.add(x, y)).collect()
}

pub fn sub_vec(ring: RingDescriptor, a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(&x, &y)| ring.sub(x, y)).collect()
}

pub fn scale_vec(ring: RingDescriptor, c: u64, v: &[u64]) -> Vec<u64> {
    v.iter().map(|&x| ring.mul(c, x)).collect()
}

/// `a + c·b`.
pub fn axpy(ring: RingDescriptor, a: &[u64], c: u64, b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(&x, &y)| ring.add(x, ring.mul(c, y))).collect()
}

pub fn residue_vec(ring: RingDescriptor, v: &[u64]) -> Vec<u64> {
    v.iter().map(|&x| ring.residue(x)).collect()
}

pub fn lift_vec(target: RingDescriptor, v: &[u64]) -> Vec<u64> {
    v.iter().map(|&x| target.reduce_u(x)).collect()
}

/// A vector is unimodular when its residue is nonzero.
pub fn is_unimodular(ring: RingDescriptor, v: &[u64]) -> bool {
    v.iter().any(|&x| ring.is_unit(x))
}

pub fn unit_vector(n: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// Lemma 3.1 as a predicate: invertibility is decided on the residue.
pub fn is_invertible_matrix(a: &Matrix) -> bool {
    a.is_invertible()
}

/// A subspace of `F_p^n` held by its reduced row-echelon basis, which is the
/// canonical representative (equal subspaces have equal bases).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Matrix,
}

impl Subspace {
    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn field(&self) -> RingDescriptor {
        self.basis.ring()
    }

    pub fn zero(field: RingDescriptor, ambient: usize) -> Subspace {
        Subspace {
            basis: Matrix::zeros(field, 0, ambient),
        }
    }

    pub fn full(field: RingDescriptor, ambient: usize) -> Subspace {
        Subspace {
            basis: Matrix::identity(field, ambient),
        }
    }

    /// Wraps rows already known to be in reduced row-echelon form.
    pub(crate) fn from_rref_unchecked(basis: Matrix) -> Subspace {
        Subspace { basis }
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        if v.len() != self.ambient_dim() {
            return false;
        }
        let f = self.field();
        let v: Vec<u64> = v.iter().map(|&x| f.reduce_u(x)).collect();
        let single = Matrix::from_rows(f, &[v]).expect("one row");
        self.sum(&echelonize(&single).expect("field")).map(|s| s.dim() == self.dim()).unwrap_or(false)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        self.sum(other).map(|s| s.dim() == self.dim()).unwrap_or(false)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::AmbientMismatch(self.ambient_dim(), other.ambient_dim()));
        }
        echelonize(&self.basis.vstack(&other.basis)?)
    }

    /// `A ∩ B` by the Zassenhaus construction: reduce `[A A; B 0]` and read
    /// the intersection off the rows whose left half vanishes.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        let n = self.ambient_dim();
        if n != other.ambient_dim() {
            return Err(Error::AmbientMismatch(n, other.ambient_dim()));
        }
        let top = self.basis.hstack(&self.basis)?;
        let bottom = other.basis.hstack(&Matrix::zeros(self.field(), other.dim(), n))?;
        let mut z = top.vstack(&bottom)?;
        let pivots = z.unit_row_reduce();
        let rows: Vec<Vec<u64>> = pivots
            .iter()
            .enumerate()
            .filter(|(_, &c)| c >= n)
            .map(|(i, _)| z.row(i)[n..].to_vec())
            .collect();
        echelonize(&Matrix::from_rows_with_cols(self.field(), &rows, n)?)
    }

    /// Vectors `x` with `B(x, s) = 0` for all `s` in the subspace, where `B`
    /// is given by the Gram matrix `g`.
    pub fn orthogonal(&self, g: &Matrix) -> Result<Subspace> {
        nullspace(&self.basis.mul(g)?)
    }
}

/// Canonical reduced row-echelon basis of the row span (field only).
pub fn echelonize(rows: &Matrix) -> Result<Subspace> {
    if !rows.ring().is_field() {
        return Err(Error::PreconditionViolated("echelonize works over F_p".into()));
    }
    let mut m = rows.clone();
    let rank = m.unit_row_reduce().len();
    let idx: Vec<usize> = (0..rank).collect();
    Ok(Subspace {
        basis: m.select_rows(&idx),
    })
}

/// Right kernel `{x : A x = 0}` over a field, as a canonical subspace.
pub fn nullspace(a: &Matrix) -> Result<Subspace> {
    let f = a.ring();
    if !f.is_field() {
        return Err(Error::PreconditionViolated("nullspace works over F_p".into()));
    }
    let mut m = a.clone();
    let pivots = m.unit_row_reduce();
    let n = a.cols();
    let mut rows = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0; n];
        v[free] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(m.get(i, free));
        }
        rows.push(v);
    }
    echelonize(&Matrix::from_rows_with_cols(f, &rows, n)?)
}

/// The span of rows `u_1, …, u_r` in `(Z/p^k)^n` whose residues are
/// linearly independent; such a span is a free direct summand of rank `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeSummand {
    basis: Matrix,
}

impl FreeSummand {
    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn ring(&self) -> RingDescriptor {
        self.basis.ring()
    }

    /// Image of the summand in the residue vector space.
    pub fn residue_subspace(&self) -> Subspace {
        echelonize(&self.basis.residue()).expect("residue is a field")
    }

    /// Lifted standard vectors completing the residue basis; together with
    /// the summand basis they form a basis of the ambient module.
    pub fn complement(&self) -> Matrix {
        let mut res = self.basis.residue();
        let pivots = res.unit_row_reduce();
        let n = self.ambient_rank();
        let rows: Vec<Vec<u64>> = (0..n)
            .filter(|c| !pivots.contains(c))
            .map(|c| unit_vector(n, c))
            .collect();
        Matrix::from_rows_with_cols(self.ring(), &rows, n).expect("unit rows")
    }

    /// Summand basis stacked over its complement; always invertible.
    pub fn completed_basis(&self) -> Matrix {
        self.basis.vstack(&self.complement()).expect("same width")
    }

    /// Coefficients of `v` in the summand basis, or `None` when `v` is not
    /// in the summand.
    pub fn coordinates(&self, v: &[u64]) -> Result<Option<Vec<u64>>> {
        let full = self.completed_basis();
        let inv = full.inverse()?;
        let coords = inv.vec_mul(v)?;
        let r = self.rank();
        if coords[r..].iter().any(|&x| x != 0) {
            return Ok(None);
        }
        Ok(Some(coords[..r].to_vec()))
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        matches!(self.coordinates(v), Ok(Some(_)))
    }
}

/// Certifies that the rows span a free direct summand by checking that
/// their residues are independent.
pub fn certify_free_summand(rows: &Matrix) -> Result<FreeSummand> {
    let rank = rows.residue_rank();
    if rank < rows.rows() {
        return Err(Error::NotASummand {
            rank,
            rows: rows.rows(),
        });
    }
    Ok(FreeSummand {
        basis: rows.clone(),
    })
}

/// Generator of the kernel of a surjection `A: R^(n+1) → R^n`. The result
/// is unimodular and spans the rank-one kernel summand.
pub fn kernel_generator(a: &Matrix) -> Result<Vec<u64>> {
    let n = a.rows();
    if a.cols() != n + 1 {
        return Err(Error::DimensionMismatch {
            expected: n + 1,
            got: a.cols(),
        });
    }
    let r = a.ring();
    let mut m = a.clone();
    let pivots = m.unit_row_reduce();
    if pivots.len() < n {
        return Err(Error::NotSurjective {
            rank: pivots.len(),
            target: n,
        });
    }
    let free = (0..=n).find(|c| !pivots.contains(c)).expect("one free column");
    let mut w = vec![0; n + 1];
    w[free] = 1;
    for (i, &pc) in pivots.iter().enumerate() {
        w[pc] = r.neg(m.get(i, free));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> RingDescriptor {
        RingDescriptor::prime_field(p).unwrap()
    }

    fn z(p: u64, k: u32) -> RingDescriptor {
        RingDescriptor::local(p, k).unwrap()
    }

    fn m(ring: RingDescriptor, rows: &[&[i64]]) -> Matrix {
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        Matrix::from_i64(ring, &rows).unwrap()
    }

    #[test]
    fn echelonize_examples() {
        let s = echelonize(&m(fp(3), &[&[2, 0], &[0, 1]])).unwrap();
        assert_eq!(s.basis().to_rows(), vec![vec![1, 0], vec![0, 1]]);
        let s = echelonize(&Matrix::zeros(fp(5), 3, 4)).unwrap();
        assert_eq!(s.dim(), 0);
        assert_eq!(s.ambient_dim(), 4);
        let s = echelonize(&m(fp(5), &[&[1, 2], &[2, 4]])).unwrap();
        assert_eq!(s.basis().to_rows(), vec![vec![1, 2]]);
    }

    #[test]
    fn intersect_coordinate_subspaces() {
        let f = fp(5);
        let a = echelonize(&m(f, &[&[1, 0, 0, 0], &[0, 1, 0, 0]])).unwrap();
        let b = echelonize(&m(f, &[&[0, 1, 0, 0], &[0, 0, 1, 0]])).unwrap();
        let c = a.intersect(&b).unwrap();
        assert_eq!(c.basis().to_rows(), vec![vec![0, 1, 0, 0]]);
        assert_eq!(a.intersect(&a).unwrap(), a);
        let other = Subspace::zero(f, 3);
        assert!(matches!(a.intersect(&other), Err(Error::AmbientMismatch(4, 3))));
    }

    #[test]
    fn invertibility_examples() {
        assert!(is_invertible_matrix(&m(z(3, 2), &[&[1, 3], &[0, 1]])));
        assert!(!is_invertible_matrix(&m(z(3, 2), &[&[3, 0], &[0, 1]])));
    }

    #[test]
    fn determinant_matches_leibniz_2x2_exhaustive() {
        let r = z(3, 2);
        for a in 0..9 {
            for b in 0..9 {
                for c in 0..9 {
                    for d in [0, 1, 3, 5, 8] {
                        let mat = m(r, &[&[a, b], &[c, d]]);
                        let expected = r.reduce(a * d - b * c);
                        assert_eq!(mat.determinant().unwrap(), expected, "{mat:?}");
                        let inv = mat.inverse();
                        assert_eq!(inv.is_ok(), r.is_unit(expected));
                        if let Ok(inv) = inv {
                            assert_eq!(mat.mul(&inv).unwrap(), Matrix::identity(r, 2));
                            assert_eq!(inv.residue(), mat.residue().inverse().unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn certify_examples() {
        let r = z(3, 2);
        let s = certify_free_summand(&m(r, &[&[1, 0, 0], &[0, 1, 3]])).unwrap();
        assert_eq!(s.rank(), 2);
        assert!(s.completed_basis().is_invertible());
        assert!(s.contains(&[2, 5, 6]));
        assert!(!s.contains(&[0, 0, 1]));
        assert!(matches!(
            certify_free_summand(&m(r, &[&[3, 0], &[0, 1]])),
            Err(Error::NotASummand { rank: 1, rows: 2 })
        ));
    }

    #[test]
    fn kernel_generator_examples() {
        let r = z(3, 2);
        let w = kernel_generator(&m(r, &[&[1, 0, 0], &[0, 1, 0]])).unwrap();
        assert_eq!(w, vec![0, 0, 1]);
        let a = m(r, &[&[1, 0, 2], &[0, 1, 5]]);
        let w = kernel_generator(&a).unwrap();
        assert_eq!(w, vec![7, 4, 1]);
        assert_eq!(a.mul_vec(&w).unwrap(), vec![0, 0]);
        assert!(matches!(
            kernel_generator(&m(r, &[&[1, 0, 0], &[3, 0, 0]])),
            Err(Error::NotSurjective { .. })
        ));
    }

    #[test]
    fn solve_full_row_rank() {
        let r = z(5, 2);
        let a = m(r, &[&[0, 1, 5, 2], &[1, 0, 0, 10]]);
        let x = a.solve(&[3, 7]).unwrap();
        assert_eq!(a.mul_vec(&x).unwrap(), vec![3, 7]);
    }

    #[test]
    fn nullspace_is_annihilated() {
        let f = fp(7);
        let a = m(f, &[&[1, 2, 3, 4], &[0, 1, 1, 1]]);
        let k = nullspace(&a).unwrap();
        assert_eq!(k.dim(), 2);
        for row in k.basis().to_rows() {
            assert_eq!(a.mul_vec(&row).unwrap(), vec![0, 0]);
        }
    }
}
