//! Quadratic spaces given by symmetric Gram matrices.
//!
//! Convention: `Q(v) = vᵀ G v` and `B(u, v) = uᵀ G v`, so `B(v, v) = Q(v)`.
//! The hyperbolic plane is `G = [[0, 1], [1, 0]]` with `Q(x e + y f) = 2xy`.
//! Subspaces and submodules are passed as row bases, so restriction to the
//! span of the rows of `S` has Gram `S G Sᵀ`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::ring::RingDescriptor;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramForm {
    gram: Matrix,
}

impl GramForm {
    pub fn new(gram: Matrix) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(GramForm { gram })
    }

    pub fn from_i64(ring: RingDescriptor, rows: &[Vec<i64>]) -> Result<Self> {
        GramForm::new(Matrix::from_i64(ring, rows)?)
    }

    /// `⟨a_1, …, a_n⟩`.
    pub fn diagonal(ring: RingDescriptor, entries: &[i64]) -> Self {
        let mut g = Matrix::zeros(ring, entries.len(), entries.len());
        for (i, &a) in entries.iter().enumerate() {
            g.set(i, i, ring.reduce(a));
        }
        GramForm { gram: g }
    }

    pub fn diagonal_residues(ring: RingDescriptor, entries: &[u64]) -> Self {
        let mut g = Matrix::zeros(ring, entries.len(), entries.len());
        for (i, &a) in entries.iter().enumerate() {
            g.set(i, i, ring.reduce_u(a));
        }
        GramForm { gram: g }
    }

    pub fn hyperbolic_plane(ring: RingDescriptor) -> Self {
        GramForm::hyperbolic(ring, 1)
    }

    /// `H ⊕ … ⊕ H` with `n` planes, in the basis `e_1, f_1, …, e_n, f_n`.
    pub fn hyperbolic(ring: RingDescriptor, planes: usize) -> Self {
        let mut g = Matrix::zeros(ring, 2 * planes, 2 * planes);
        for i in 0..planes {
            g.set(2 * i, 2 * i + 1, 1);
            g.set(2 * i + 1, 2 * i, 1);
        }
        GramForm { gram: g }
    }

    /// The split form of a given dimension: hyperbolic when even,
    /// hyperbolic plus `⟨1⟩` when odd. Maximal Witt index.
    pub fn split(ring: RingDescriptor, dim: usize) -> Self {
        let h = GramForm::hyperbolic(ring, dim / 2);
        if dim % 2 == 1 {
            h.direct_sum(&GramForm::diagonal(ring, &[1])).expect("same ring")
        } else {
            h
        }
    }

    pub fn ring(&self) -> RingDescriptor {
        self.gram.ring()
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn entry(&self, i: usize, j: usize) -> u64 {
        self.gram.get(i, j)
    }

    /// `G v`, the polar functional of `v`.
    pub fn polar(&self, v: &[u64]) -> Result<Vec<u64>> {
        self.gram.mul_vec(v)
    }

    pub fn eval_quad(&self, v: &[u64]) -> Result<u64> {
        self.eval_bilinear(v, v)
    }

    pub fn eval_bilinear(&self, u: &[u64], v: &[u64]) -> Result<u64> {
        if u.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: u.len(),
            });
        }
        let gv = self.gram.mul_vec(v)?;
        Ok(linalg::dot(self.ring(), u, &gv))
    }

    pub fn determinant(&self) -> u64 {
        self.gram.determinant().expect("gram is square")
    }

    /// Non-degenerate means the Gram determinant is a unit; over `Z/p^k`
    /// this is the same as the residue form being non-degenerate.
    pub fn is_nondegenerate(&self) -> bool {
        self.gram.is_invertible()
    }

    pub fn ensure_nondegenerate(&self) -> Result<()> {
        if self.is_nondegenerate() {
            Ok(())
        } else {
            Err(Error::Degenerate(format!("determinant {} is not a unit", self.determinant())))
        }
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| (0..n).all(|j| i == j || self.gram.get(i, j) == 0))
    }

    pub fn diagonal_entries(&self) -> Vec<u64> {
        (0..self.rank()).map(|i| self.gram.get(i, i)).collect()
    }

    /// Reduction of the form to the residue field.
    pub fn residue(&self) -> GramForm {
        GramForm {
            gram: self.gram.residue(),
        }
    }

    pub fn lift_to(&self, target: RingDescriptor) -> Result<GramForm> {
        Ok(GramForm {
            gram: self.gram.lift_to(target)?,
        })
    }

    /// Gram matrix of the restriction to the span of the rows of `basis`.
    pub fn restrict(&self, basis: &Matrix) -> Result<GramForm> {
        if basis.cols() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: basis.cols(),
            });
        }
        let g = basis.mul(&self.gram)?.mul(&basis.transpose())?;
        GramForm::new(g)
    }

    /// Block-diagonal orthogonal sum.
    pub fn direct_sum(&self, other: &GramForm) -> Result<GramForm> {
        self.ring().ensure_same(&other.ring())?;
        let (a, b) = (self.rank(), other.rank());
        let mut g = Matrix::zeros(self.ring(), a + b, a + b);
        for i in 0..a {
            for j in 0..a {
                g.set(i, j, self.gram.get(i, j));
            }
        }
        for i in 0..b {
            for j in 0..b {
                g.set(a + i, a + j, other.gram.get(i, j));
            }
        }
        Ok(GramForm { gram: g })
    }

    /// Kronecker product in row-major slot order: basis vector
    /// `(i, j)` sits at index `i * other.rank() + j`.
    pub fn tensor(&self, other: &GramForm) -> Result<GramForm> {
        self.ring().ensure_same(&other.ring())?;
        let r = self.ring();
        let (a, b) = (self.rank(), other.rank());
        let mut g = Matrix::zeros(r, a * b, a * b);
        for i1 in 0..a {
            for j1 in 0..a {
                let x = self.gram.get(i1, j1);
                if x == 0 {
                    continue;
                }
                for i2 in 0..b {
                    for j2 in 0..b {
                        g.set(i1 * b + i2, j1 * b + j2, r.mul(x, other.gram.get(i2, j2)));
                    }
                }
            }
        }
        Ok(GramForm { gram: g })
    }

    /// Orthogonal diagonalization: returns `(D, T)` with `Tᵀ G T = D`,
    /// `D` diagonal with unit entries. The columns of `T` are the new basis.
    pub fn diagonalize(&self) -> Result<(GramForm, Matrix)> {
        self.ensure_nondegenerate()?;
        let r = self.ring();
        let n = self.rank();
        // Remaining basis vectors, each orthogonal to every vector already chosen.
        let mut pending: Vec<Vec<u64>> = (0..n).map(|i| linalg::unit_vector(n, i)).collect();
        let mut chosen: Vec<Vec<u64>> = Vec::with_capacity(n);
        let mut diag = Vec::with_capacity(n);
        while !pending.is_empty() {
            let norms: Vec<u64> = pending
                .iter()
                .map(|v| self.eval_quad(v))
                .collect::<Result<_>>()?;
            let pivot = match norms.iter().position(|&q| r.is_unit(q)) {
                Some(i) => i,
                None => {
                    // No unit norm: some pairing is a unit, and char != 2
                    // turns it into a unit norm via u + v.
                    let (i, j) = (0..pending.len())
                        .flat_map(|i| (i + 1..pending.len()).map(move |j| (i, j)))
                        .find(|&(i, j)| {
                            r.is_unit(self.eval_bilinear(&pending[i], &pending[j]).unwrap_or(0))
                        })
                        .ok_or_else(|| {
                            Error::InvariantViolation("no unit pivot in non-degenerate form".into())
                        })?;
                    pending[i] = linalg::add_vec(r, &pending[i], &pending[j]);
                    i
                }
            };
            let u = pending.remove(pivot);
            let qu = self.eval_quad(&u)?;
            let qu_inv = r.inv(qu)?;
            let gu = self.polar(&u)?;
            for w in pending.iter_mut() {
                let c = r.mul(linalg::dot(r, &gu, w), qu_inv);
                *w = linalg::axpy(r, w, r.neg(c), &u);
            }
            chosen.push(u);
            diag.push(qu);
        }
        let t = Matrix::from_columns(r, &chosen, n)?;
        Ok((GramForm::diagonal_residues(r, &diag), t))
    }
}

/// `⟨⟨a_1, …, a_m⟩⟩`, the tensor product of the binary forms `⟨1, −a_i⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PfisterSpec {
    ring: RingDescriptor,
    slots: Vec<u64>,
}

impl PfisterSpec {
    pub fn new(ring: RingDescriptor, slots: &[u64]) -> Result<Self> {
        if slots.is_empty() {
            return Err(Error::OutOfRange("a Pfister form needs at least one slot".into()));
        }
        let slots: Vec<u64> = slots.iter().map(|&a| ring.reduce_u(a)).collect();
        if let Some((index, &value)) = slots.iter().enumerate().find(|(_, &a)| !ring.is_unit(a)) {
            return Err(Error::NonUnitSlot { index, value });
        }
        Ok(PfisterSpec { ring, slots })
    }

    pub fn from_i64(ring: RingDescriptor, slots: &[i64]) -> Result<Self> {
        let slots: Vec<u64> = slots.iter().map(|&a| ring.reduce(a)).collect();
        PfisterSpec::new(ring, &slots)
    }

    pub fn ring(&self) -> RingDescriptor {
        self.ring
    }

    pub fn slots(&self) -> &[u64] {
        &self.slots
    }

    pub fn folds(&self) -> usize {
        self.slots.len()
    }

    pub fn dim(&self) -> usize {
        1 << self.slots.len()
    }

    /// The same spec over another ring with the same `p` (canonical lift or
    /// residue of each slot).
    pub fn with_ring(&self, ring: RingDescriptor) -> Result<Self> {
        if ring.p() != self.ring.p() {
            return Err(Error::RingMismatch {
                left: self.ring.to_string(),
                right: ring.to_string(),
            });
        }
        PfisterSpec::new(ring, &self.slots)
    }

    /// Appends one more slot; `⟨⟨a_1, …, a_m, c⟩⟩ = ⟨1, −c⟩ ⊗ ⟨⟨a_1, …, a_m⟩⟩`.
    pub fn extended(&self, c: u64) -> Result<Self> {
        let mut slots = self.slots.clone();
        slots.push(c);
        PfisterSpec::new(self.ring, &slots)
    }

    /// Diagonal entries of the expansion. Index bit `i` selects the factor
    /// `−a_{i+1}`, so the first `2^(m−1)` entries are the expansion of the
    /// first `m − 1` slots and entry 0 is `1`.
    pub fn diagonal(&self) -> Vec<u64> {
        let r = self.ring;
        let mut diag = vec![1 % r.modulus()];
        for &a in &self.slots {
            let neg = r.neg(a);
            let upper: Vec<u64> = diag.iter().map(|&d| r.mul(d, neg)).collect();
            diag.extend(upper);
        }
        diag
    }

    pub fn expand(&self) -> GramForm {
        GramForm::diagonal_residues(self.ring, &self.diagonal())
    }
}

/// Expands a Pfister spec to its diagonal Gram form.
pub fn pfister_expand(spec: &PfisterSpec) -> GramForm {
    spec.expand()
}

/// JSON form descriptor: either an explicit Gram matrix or Pfister slots.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FormDescriptor {
    pub ring: RingDescriptor,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pfister: Option<Vec<i64>>,
}

impl FormDescriptor {
    pub fn from_form(form: &GramForm) -> Self {
        FormDescriptor {
            ring: form.ring(),
            gram: Some(
                form.gram()
                    .to_rows()
                    .into_iter()
                    .map(|r| r.into_iter().map(|x| x as i64).collect())
                    .collect(),
            ),
            pfister: None,
        }
    }

    pub fn to_form(&self) -> Result<GramForm> {
        match (&self.gram, &self.pfister) {
            (Some(g), None) => {
                let n = g.len();
                if g.iter().any(|r| r.len() != n) {
                    return Err(Error::Parse("gram must be square".into()));
                }
                GramForm::from_i64(self.ring, g)
            }
            (None, Some(slots)) => Ok(PfisterSpec::from_i64(self.ring, slots)?.expand()),
            _ => Err(Error::Parse("form descriptor needs exactly one of gram or pfister".into())),
        }
    }
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

    #[test]
    fn eval_examples() {
        let h = GramForm::hyperbolic_plane(fp(3));
        // Direct product: (1,1) [[0,1],[1,0]] (1,1)ᵀ = 2.
        assert_eq!(h.eval_quad(&[1, 1]).unwrap(), 2);
        assert_eq!(h.eval_quad(&[0, 0]).unwrap(), 0);
        let d = GramForm::diagonal(fp(5), &[1, -1]);
        assert_eq!(d.eval_quad(&[2, 2]).unwrap(), 0);
        assert!(matches!(d.eval_quad(&[1]), Err(Error::DimensionMismatch { .. })));
        assert_eq!(h.eval_bilinear(&[1, 0], &[0, 1]).unwrap(), 1);
        let id = GramForm::diagonal(fp(5), &[1, 1]);
        assert_eq!(id.eval_bilinear(&[1, 0], &[3, 4]).unwrap(), 3);
    }

    #[test]
    fn nondegeneracy_examples() {
        assert!(GramForm::diagonal(z(3, 2), &[1, -1]).is_nondegenerate());
        assert!(!GramForm::diagonal(z(3, 2), &[1, 3]).is_nondegenerate());
        let f = GramForm::diagonal(fp(7), &[2, 3, 5]);
        assert_eq!(f.determinant(), 30 % 7);
        assert!(f.is_nondegenerate());
    }

    #[test]
    fn rejects_asymmetric_gram() {
        assert_eq!(
            GramForm::from_i64(fp(5), &[vec![0, 1], vec![2, 0]]),
            Err(Error::NotSymmetric)
        );
    }

    #[test]
    fn diagonalize_hyperbolic_plane() {
        let h = GramForm::hyperbolic_plane(fp(5));
        let (d, t) = h.diagonalize().unwrap();
        assert!(d.is_diagonal());
        assert!(d.diagonal_entries().iter().all(|&x| x != 0));
        assert_eq!(t.transpose().mul(h.gram()).unwrap().mul(&t).unwrap(), *d.gram());
        // First pivot is u = (1,1) with Q(u) = 2.
        assert_eq!(d.diagonal_entries()[0], 2);
    }

    #[test]
    fn diagonalize_fixed_point() {
        let f = GramForm::diagonal(z(5, 2), &[1, 2, 3]);
        let (d, t) = f.diagonalize().unwrap();
        assert_eq!(d, f);
        assert_eq!(t, Matrix::identity(z(5, 2), 3));
        assert!(matches!(
            GramForm::diagonal(z(3, 2), &[1, 3]).diagonalize(),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn direct_sum_and_tensor() {
        let r = fp(3);
        let hh = GramForm::hyperbolic_plane(r).direct_sum(&GramForm::hyperbolic_plane(r)).unwrap();
        assert_eq!(hh, GramForm::hyperbolic(r, 2));
        let empty = GramForm::diagonal(r, &[]);
        assert_eq!(hh.direct_sum(&empty).unwrap(), hh);

        let f5 = fp(5);
        let b = GramForm::diagonal(f5, &[1, -2]);
        let t = b.tensor(&b).unwrap();
        assert_eq!(t, GramForm::diagonal(f5, &[1, 3, 3, 4]));
        let one = GramForm::diagonal(f5, &[1]);
        assert_eq!(one.tensor(&b).unwrap(), b);
        assert!(matches!(b.tensor(&GramForm::diagonal(fp(7), &[1])), Err(Error::RingMismatch { .. })));
    }

    #[test]
    fn tensor_is_multiplicative_on_pure_tensors() {
        let r = z(5, 2);
        let a = GramForm::from_i64(r, &[vec![1, 3], vec![3, 7]]).unwrap();
        let b = GramForm::from_i64(r, &[vec![2, 0, 1], vec![0, 4, 5], vec![1, 5, 9]]).unwrap();
        let t = a.tensor(&b).unwrap();
        let x = [4u64, 11];
        let y = [3u64, 1, 20];
        let xy: Vec<u64> = x.iter().flat_map(|&xi| y.iter().map(move |&yj| r.mul(xi, yj))).collect();
        let lhs = t.eval_quad(&xy).unwrap();
        let rhs = r.mul(a.eval_quad(&x).unwrap(), b.eval_quad(&y).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn pfister_examples() {
        let f5 = fp(5);
        assert_eq!(PfisterSpec::from_i64(f5, &[2]).unwrap().expand(), GramForm::diagonal(f5, &[1, 3]));
        let f7 = fp(7);
        let q = PfisterSpec::from_i64(f7, &[2, 3]).unwrap().expand();
        assert_eq!(q, GramForm::diagonal(f7, &[1, 5, 4, 6]));
        assert_eq!(q.eval_quad(&[1, 0, 0, 0]).unwrap(), 1);
        assert!(matches!(
            PfisterSpec::from_i64(z(3, 2), &[1, 6]),
            Err(Error::NonUnitSlot { index: 1, value: 6 })
        ));
    }

    #[test]
    fn pfister_extension_matches_tensor_on_the_left() {
        let r = z(7, 2);
        let spec = PfisterSpec::from_i64(r, &[3, 5, 10]).unwrap();
        let c = 12;
        let lhs = spec.extended(c).unwrap().expand();
        let rhs = GramForm::diagonal(r, &[1, -(c as i64)]).tensor(&spec.expand()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn restrict_examples() {
        let r = fp(3);
        let hh = GramForm::hyperbolic(r, 2);
        let iso = Matrix::from_i64(r, &[vec![1, 0, 0, 0]]).unwrap();
        assert_eq!(hh.restrict(&iso).unwrap().gram().to_rows(), vec![vec![0]]);
        let s = Matrix::from_i64(r, &[vec![1, 1, 0, 0], vec![0, 0, 1, 0]]).unwrap();
        assert_eq!(hh.restrict(&s).unwrap().gram().to_rows(), vec![vec![2, 0], vec![0, 0]]);
        assert_eq!(hh.restrict(&Matrix::identity(r, 4)).unwrap(), hh);
    }

    #[test]
    fn polarization_identity_exhaustive() {
        for p in [3u64, 5] {
            let r = fp(p);
            let forms = [
                GramForm::from_i64(r, &[vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]]).unwrap(),
                GramForm::split(r, 3),
            ];
            for q in &forms {
                let vecs: Vec<Vec<u64>> = (0..p.pow(3))
                    .map(|mut x| (0..3).map(|_| { let d = x % p; x /= p; d }).collect())
                    .collect();
                for u in &vecs {
                    for v in &vecs {
                        let s = linalg::add_vec(r, u, v);
                        let lhs = q.eval_bilinear(u, v).unwrap();
                        let diff = r.sub(r.sub(q.eval_quad(&s).unwrap(), q.eval_quad(u).unwrap()), q.eval_quad(v).unwrap());
                        assert_eq!(lhs, r.mul(diff, r.half()));
                    }
                }
            }
        }
    }

    #[test]
    fn form_descriptor_json() {
        let d: FormDescriptor =
            serde_json::from_str(r#"{"ring":{"kind":"zpk","p":3,"k":2},"pfister":[1]}"#).unwrap();
        assert_eq!(d.to_form().unwrap(), GramForm::diagonal(z(3, 2), &[1, -1]));
        let d: FormDescriptor =
            serde_json::from_str(r#"{"ring":{"kind":"fp","p":5},"gram":[[0,1],[1,0]]}"#).unwrap();
        assert_eq!(d.to_form().unwrap(), GramForm::hyperbolic_plane(fp(5)));
        let bad: FormDescriptor = serde_json::from_str(r#"{"ring":{"kind":"fp","p":5}}"#).unwrap();
        assert!(bad.to_form().is_err());
    }
}
