//! Orthogonal-group engine: reflections, isotropic vectors, hyperbolic
//! splitting and Witt decomposition over `F_p` and `Z/p^k`, Cartan–Dieudonné
//! factorization, and lifting of isometries and isotropic vectors from the
//! residue field.
//!
//! Isometries act on column vectors: `v ↦ A v`, preserving the form when
//! `Aᵀ G A = G`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::quadform::GramForm;

/// Exhaustive isotropic search is used below this many vectors.
const EXHAUSTIVE_LIMIT: u64 = 1_000_000;

/// An invertible matrix preserving a Gram form. Construction checks
/// `Aᵀ G A = G` exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isometry {
    matrix: Matrix,
    form: GramForm,
}

impl Isometry {
    pub fn new(matrix: Matrix, form: &GramForm) -> Result<Self> {
        form.ring().ensure_same(&matrix.ring())?;
        if matrix.rows() != form.rank() || !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                expected: form.rank(),
                got: matrix.rows(),
            });
        }
        let pulled = matrix.transpose().mul(form.gram())?.mul(&matrix)?;
        if &pulled != form.gram() {
            return Err(Error::NotAnIsometry);
        }
        Ok(Isometry {
            matrix,
            form: form.clone(),
        })
    }

    pub fn identity(form: &GramForm) -> Self {
        Isometry {
            matrix: Matrix::identity(form.ring(), form.rank()),
            form: form.clone(),
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn form(&self) -> &GramForm {
        &self.form
    }

    pub fn apply(&self, v: &[u64]) -> Result<Vec<u64>> {
        self.matrix.mul_vec(v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Isometry) -> Result<Isometry> {
        if self.form != other.form {
            return Err(Error::PreconditionViolated("isometries preserve different forms".into()));
        }
        Ok(Isometry {
            matrix: self.matrix.mul(&other.matrix)?,
            form: self.form.clone(),
        })
    }

    pub fn inverse(&self) -> Result<Isometry> {
        Ok(Isometry {
            matrix: self.matrix.inverse()?,
            form: self.form.clone(),
        })
    }

    /// Reduction to an isometry of the residue form.
    pub fn residue(&self) -> Isometry {
        Isometry {
            matrix: self.matrix.residue(),
            form: self.form.residue(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == Matrix::identity(self.matrix.ring(), self.matrix.rows())
    }
}

/// The reflection `r_u(v) = v − 2 B(u, v) Q(u)⁻¹ u`, defined when `Q(u)`
/// is a unit.
pub fn reflection(q: &GramForm, u: &[u64]) -> Result<Isometry> {
    let r = q.ring();
    let norm = q.eval_quad(u)?;
    if !r.is_unit(norm) {
        return Err(Error::NonUnitNorm(norm));
    }
    let s = r.mul(2, r.inv(norm)?);
    let gu = q.polar(u)?;
    let n = q.rank();
    let mut m = Matrix::identity(r, n);
    for i in 0..n {
        let ui = r.mul(s, u[i]);
        if ui == 0 {
            continue;
        }
        for j in 0..n {
            m.set(i, j, r.sub(m.get(i, j), r.mul(ui, gu[j])));
        }
    }
    Isometry::new(m, q)
}

/// Product `r_{u_1} ∘ ⋯ ∘ r_{u_t}`.
pub fn compose_reflections(q: &GramForm, vectors: &[Vec<u64>]) -> Result<Isometry> {
    let mut acc = Isometry::identity(q);
    for u in vectors {
        acc = acc.compose(&reflection(q, u)?)?;
    }
    Ok(acc)
}

fn vector_from_index(p: u64, n: usize, mut x: u64) -> Vec<u64> {
    (0..n)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

/// Nonzero `v` with `Q(v) = 0` over a prime field, or `None` when the form
/// is anisotropic (only possible in rank ≤ 2).
///
/// Small spaces are scanned exhaustively over projective representatives
/// (first nonzero coordinate equal to 1, coordinate 0 varying fastest), so
/// the answer is the first isotropic vector in that order. Larger spaces
/// are solved on a diagonal presentation.
pub fn find_isotropic_vector(q: &GramForm) -> Result<Option<Vec<u64>>> {
    let f = q.ring();
    if !f.is_field() {
        return Err(Error::PreconditionViolated("isotropic search runs over F_p".into()));
    }
    q.ensure_nondegenerate()?;
    let n = q.rank();
    if n == 0 {
        return Ok(None);
    }
    let total = f.p().checked_pow(n as u32).filter(|&t| t <= EXHAUSTIVE_LIMIT);
    if let Some(total) = total {
        for x in 1..total {
            let v = vector_from_index(f.p(), n, x);
            if v.iter().find(|&&c| c != 0) != Some(&1) {
                continue;
            }
            if q.eval_quad(&v)? == 0 {
                return Ok(Some(v));
            }
        }
        return Ok(None);
    }
    let (d, t) = q.diagonalize()?;
    let d = d.diagonal_entries();
    let local = match n {
        1 => None,
        2 => {
            // d0 x² + d1 = 0  ⇔  x² = −d1/d0.
            let target = f.div(f.neg(d[1]), d[0])?;
            f.sqrt_residue(target).map(|x| vec![x, 1])
        }
        _ => {
            // x = 1: look for y with −(d0 + d1 y²)/d2 a square.
            let mut found = None;
            for y in f.elements() {
                let lhs = f.add(d[0], f.mul(d[1], f.mul(y, y)));
                let target = f.div(f.neg(lhs), d[2])?;
                if let Some(z) = f.sqrt_residue(target) {
                    let mut v = vec![0; n];
                    v[0] = 1;
                    v[1] = y;
                    v[2] = z;
                    found = Some(v);
                    break;
                }
            }
            if found.is_none() {
                return Err(Error::InvariantViolation("rank ≥ 3 form found anisotropic".into()));
            }
            found
        }
    };
    Ok(match local {
        Some(c) => Some(t.mul_vec(&c)?),
        None => None,
    })
}

/// One hyperbolic plane split off a form, with a basis of its orthogonal
/// complement (rows).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperbolicSplit {
    pub e: Vec<u64>,
    pub f: Vec<u64>,
    pub complement: Matrix,
}

/// Splits `⟨e, f⟩ ≅ H` off `Q` with `e = v`. `v` must be isotropic and
/// unimodular; the complement restricted form is again non-degenerate.
pub fn split_hyperbolic(q: &GramForm, v: &[u64]) -> Result<HyperbolicSplit> {
    let r = q.ring();
    let n = q.rank();
    q.ensure_nondegenerate()?;
    if q.eval_quad(v)? != 0 {
        return Err(Error::NotIsotropic);
    }
    if !linalg::is_unimodular(r, v) {
        return Err(Error::NotUnimodular);
    }
    let gv = q.polar(v)?;
    let i = gv
        .iter()
        .position(|&x| r.is_unit(x))
        .ok_or_else(|| Error::InvariantViolation("no dual vector for unimodular v".into()))?;
    let w = linalg::unit_vector(n, i);
    let b_inv = r.inv(gv[i])?;
    // f = w/b − e · Q(w)/(2 b²)
    let coeff = r.mul(r.mul(q.eval_quad(&w)?, r.mul(b_inv, b_inv)), r.half());
    let f = linalg::axpy(r, &linalg::scale_vec(r, b_inv, &w), r.neg(coeff), v);
    let e = v.to_vec();

    let mut chosen: Vec<Vec<u64>> = Vec::with_capacity(n.saturating_sub(2));
    let mut residue_rows = Matrix::zeros(r.residue_field(), 0, n);
    for j in 0..n {
        let x = linalg::unit_vector(n, j);
        let bxf = q.eval_bilinear(&x, &f)?;
        let bxe = q.eval_bilinear(&x, &e)?;
        let proj = linalg::axpy(r, &linalg::axpy(r, &x, r.neg(bxf), &e), r.neg(bxe), &f);
        let candidate = residue_rows.vstack(&Matrix::from_rows(r.residue_field(), &[linalg::residue_vec(r, &proj)])?)?;
        if candidate.residue_rank() > residue_rows.rows() {
            residue_rows = candidate;
            chosen.push(proj);
        }
        if chosen.len() == n - 2 {
            break;
        }
    }
    if chosen.len() != n - 2 {
        return Err(Error::InvariantViolation("complement has the wrong rank".into()));
    }
    let complement = Matrix::from_rows_with_cols(r, &chosen, n)?;
    Ok(HyperbolicSplit { e, f, complement })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HyperbolicPair {
    pub e: Vec<u64>,
    pub f: Vec<u64>,
}

/// Pairs `(e_i, f_i)` with `Q(e_i) = Q(f_i) = 0`, `B(e_i, f_j) = δ_ij`,
/// `B(e_i, e_j) = B(f_i, f_j) = 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HyperbolicBasis {
    pub pairs: Vec<HyperbolicPair>,
}

impl HyperbolicBasis {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Checks all three defining identities exactly.
    pub fn verify(&self, q: &GramForm) -> bool {
        let one = 1 % q.ring().modulus();
        let b = |x: &[u64], y: &[u64]| q.eval_bilinear(x, y).ok();
        self.pairs.iter().enumerate().all(|(i, pi)| {
            self.pairs.iter().enumerate().all(|(j, pj)| {
                let delta = if i == j { one } else { 0 };
                b(&pi.e, &pj.e) == Some(0) && b(&pi.f, &pj.f) == Some(0) && b(&pi.e, &pj.f) == Some(delta)
            })
        })
    }

    /// Matrix with columns `e_1, …, e_n, f_1, …, f_n`.
    pub fn frame(&self, q: &GramForm) -> Result<Matrix> {
        let cols: Vec<Vec<u64>> = self
            .pairs
            .iter()
            .map(|p| p.e.clone())
            .chain(self.pairs.iter().map(|p| p.f.clone()))
            .collect();
        Matrix::from_columns(q.ring(), &cols, q.rank())
    }

    /// The `e` vectors as rows.
    pub fn e_rows(&self, q: &GramForm) -> Result<Matrix> {
        let rows: Vec<Vec<u64>> = self.pairs.iter().map(|p| p.e.clone()).collect();
        Matrix::from_rows_with_cols(q.ring(), &rows, q.rank())
    }
}

/// `Q ≅ H^index ⊥ anisotropic`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittDecomposition {
    pub index: usize,
    pub basis: HyperbolicBasis,
    pub anisotropic: GramForm,
    /// Rows spanning the anisotropic part, in ambient coordinates.
    pub anisotropic_basis: Matrix,
}

impl WittDecomposition {
    pub fn is_hyperbolic(&self) -> bool {
        self.anisotropic.rank() == 0
    }

    pub fn transcript(&self) -> WittTranscript {
        WittTranscript {
            index: self.index,
            hyperbolic: self.is_hyperbolic(),
            pairs: self.basis.pairs.clone(),
            anisotropic_gram: self.anisotropic.gram().to_rows(),
            anisotropic_basis: self.anisotropic_basis.to_rows(),
        }
    }
}

/// Replayable record of a Witt decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WittTranscript {
    pub index: usize,
    pub hyperbolic: bool,
    pub pairs: Vec<HyperbolicPair>,
    pub anisotropic_gram: Vec<Vec<u64>>,
    pub anisotropic_basis: Vec<Vec<u64>>,
}

fn decompose(q: &GramForm, hensel: bool) -> Result<WittDecomposition> {
    q.ensure_nondegenerate()?;
    let r = q.ring();
    let n = q.rank();
    let mut current = Matrix::identity(r, n);
    let mut pairs = Vec::new();
    loop {
        let sub = q.restrict(&current)?;
        if sub.rank() == 0 {
            break;
        }
        let Some(iso) = find_isotropic_vector(&sub.residue())? else {
            break;
        };
        let x = if hensel {
            hensel_lift_isotropic(&sub, &iso)?
        } else {
            iso
        };
        let split = split_hyperbolic(&sub, &x)?;
        pairs.push(HyperbolicPair {
            e: current.vec_mul(&split.e)?,
            f: current.vec_mul(&split.f)?,
        });
        current = split.complement.mul(&current)?;
    }
    let anisotropic = q.restrict(&current)?;
    if r.is_field() && anisotropic.rank() > 2 {
        return Err(Error::InvariantViolation("anisotropic part of rank ≥ 3 over F_p".into()));
    }
    Ok(WittDecomposition {
        index: pairs.len(),
        basis: HyperbolicBasis { pairs },
        anisotropic,
        anisotropic_basis: current,
    })
}

/// Witt decomposition over a prime field.
pub fn witt_decompose(q: &GramForm) -> Result<WittDecomposition> {
    if !q.ring().is_field() {
        return Err(Error::PreconditionViolated(
            "witt_decompose runs over F_p; use witt_decompose_local".into(),
        ));
    }
    decompose(q, false)
}

/// Witt decomposition over `Z/p^k`: each residue isotropic vector is Hensel
/// lifted before splitting, so the index equals the residue Witt index and
/// a residue-hyperbolic form gets an exact hyperbolic basis.
pub fn witt_decompose_local(q: &GramForm) -> Result<WittDecomposition> {
    decompose(q, true)
}

/// Lifts a residue isotropic vector to an exact isotropic vector over
/// `Z/p^k` by Newton steps `v ← v − Q(v) (2 B(v, d))⁻¹ d`.
pub fn hensel_lift_isotropic(q: &GramForm, residue: &[u64]) -> Result<Vec<u64>> {
    let r = q.ring();
    if residue.len() != q.rank() {
        return Err(Error::DimensionMismatch {
            expected: q.rank(),
            got: residue.len(),
        });
    }
    q.ensure_nondegenerate()?;
    let f = r.residue_field();
    let vbar: Vec<u64> = residue.iter().map(|&x| f.reduce_u(x)).collect();
    if vbar.iter().all(|&x| x == 0) {
        return Err(Error::NotUnimodular);
    }
    if q.residue().eval_quad(&vbar)? != 0 {
        return Err(Error::NotIsotropic);
    }
    let mut v = linalg::lift_vec(r, &vbar);
    // Precision doubles each step, so k steps is generous.
    for _ in 0..=r.k() {
        let val = q.eval_quad(&v)?;
        if val == 0 {
            return Ok(v);
        }
        let gv = q.polar(&v)?;
        let i = gv
            .iter()
            .position(|&x| r.is_unit(x))
            .ok_or_else(|| Error::InvariantViolation("vanishing gradient".into()))?;
        let t = r.mul(val, r.inv(r.mul(2, gv[i]))?);
        v[i] = r.sub(v[i], t);
    }
    Err(Error::InvariantViolation("Newton iteration did not converge".into()))
}

/// Writes an isometry of a form over `F_p` as `r_{u_1} ∘ ⋯ ∘ r_{u_t}` with
/// `t ≤ 2·rank`.
///
/// Walks an orthogonal basis `t_1, …, t_n` of unit norms; at step `i` the
/// running isometry fixes `t_1, …, t_{i−1}` and one reflection in `w − v`
/// (or two, in `w + v` then `v`, when `Q(w − v) = 0`) makes it fix `t_i`.
pub fn cartan_dieudonne(a: &Isometry) -> Result<Vec<Vec<u64>>> {
    let q = a.form();
    let f = q.ring();
    if !f.is_field() {
        return Err(Error::PreconditionViolated("Cartan–Dieudonné runs over F_p".into()));
    }
    let (_, t) = q.diagonalize()?;
    let mut current = a.clone();
    let mut factors = Vec::new();
    for i in 0..q.rank() {
        let v = t.column(i);
        let w = current.apply(&v)?;
        if w == v {
            continue;
        }
        let diff = linalg::sub_vec(f, &w, &v);
        if q.eval_quad(&diff)? != 0 {
            current = reflection(q, &diff)?.compose(&current)?;
            factors.push(diff);
        } else {
            let sum = linalg::add_vec(f, &w, &v);
            current = reflection(q, &sum)?.compose(&current)?;
            current = reflection(q, &v)?.compose(&current)?;
            factors.push(sum);
            factors.push(v);
        }
    }
    if !current.is_identity() {
        return Err(Error::InvariantViolation("Cartan–Dieudonné residual is not the identity".into()));
    }
    Ok(factors)
}

/// Lifts an isometry of the residue form to an isometry over `Z/p^k` by
/// lifting each reflection of a Cartan–Dieudonné factorization; the norm of
/// every lifted reflection vector is a unit because its residue is nonzero.
pub fn lift_isometry(residue: &Isometry, q: &GramForm) -> Result<Isometry> {
    if residue.form() != &q.residue() {
        return Err(Error::PreconditionViolated(
            "isometry does not preserve the residue form".into(),
        ));
    }
    let factors = cartan_dieudonne(residue)?;
    let lifted: Vec<Vec<u64>> = factors.iter().map(|u| linalg::lift_vec(q.ring(), u)).collect();
    let a = compose_reflections(q, &lifted)?;
    if a.matrix().residue() != *residue.matrix() {
        return Err(Error::InvariantViolation("lift does not reduce to the input".into()));
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadform::PfisterSpec;
    use crate::ring::RingDescriptor;

    fn fp(p: u64) -> RingDescriptor {
        RingDescriptor::prime_field(p).unwrap()
    }

    fn z(p: u64, k: u32) -> RingDescriptor {
        RingDescriptor::local(p, k).unwrap()
    }

    #[test]
    fn reflection_examples() {
        let q = GramForm::diagonal(fp(5), &[1, 1]);
        let r = reflection(&q, &[1, 0]).unwrap();
        // r(3,4) = (3,4) − 2·3/1·(1,0) = (−3, 4) = (2, 4).
        assert_eq!(r.apply(&[3, 4]).unwrap(), vec![2, 4]);
        assert_eq!(q.eval_quad(&[3, 4]).unwrap(), 0);
        assert_eq!(q.eval_quad(&[2, 4]).unwrap(), 0);
        assert_eq!(r.apply(&[1, 0]).unwrap(), vec![4, 0]);
        assert_eq!(r.apply(&[0, 3]).unwrap(), vec![0, 3]);
        assert!(r.compose(&r).unwrap().is_identity());
        let h = GramForm::hyperbolic_plane(z(3, 2));
        assert_eq!(reflection(&h, &[1, 0]), Err(Error::NonUnitNorm(0)));
        assert_eq!(reflection(&h, &[1, 3]), Err(Error::NonUnitNorm(6)));
    }

    #[test]
    fn isometry_rejects_non_isometries() {
        let q = GramForm::diagonal(fp(5), &[1, 2]);
        let m = Matrix::from_i64(fp(5), &[vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(Isometry::new(m, &q), Err(Error::NotAnIsometry));
    }

    #[test]
    fn isotropic_search_examples() {
        let h = GramForm::hyperbolic_plane(fp(3));
        assert_eq!(find_isotropic_vector(&h).unwrap(), Some(vec![1, 0]));
        // Exhaustive: x² + y² = 0 over F_3 only at 0.
        let d = GramForm::diagonal(fp(3), &[1, 1]);
        assert_eq!(find_isotropic_vector(&d).unwrap(), None);
        let d3 = GramForm::diagonal(fp(3), &[1, 1, 1]);
        assert_eq!(find_isotropic_vector(&d3).unwrap(), Some(vec![1, 1, 1]));
        assert!(find_isotropic_vector(&GramForm::diagonal(fp(3), &[1, 0])).is_err());
    }

    #[test]
    fn isotropic_search_large_fields() {
        let f = fp(1_000_003);
        for diag in [vec![1, 1, 1], vec![2, 5, 7, 11], vec![3, -3]] {
            let q = GramForm::diagonal(f, &diag);
            let v = find_isotropic_vector(&q).unwrap().unwrap();
            assert!(v.iter().any(|&x| x != 0));
            assert_eq!(q.eval_quad(&v).unwrap(), 0);
        }
        // 1_000_003 ≡ 3 mod 4, so −1 is a non-square and x² + y² is anisotropic.
        assert_eq!(find_isotropic_vector(&GramForm::diagonal(f, &[1, 1])).unwrap(), None);
    }

    #[test]
    fn split_examples() {
        let h = GramForm::hyperbolic_plane(fp(5));
        let s = split_hyperbolic(&h, &[1, 0]).unwrap();
        assert_eq!((s.e.clone(), s.f.clone()), (vec![1, 0], vec![0, 1]));
        assert_eq!(s.complement.rows(), 0);

        let d = GramForm::diagonal(fp(5), &[1, -1]);
        let s = split_hyperbolic(&d, &[1, 1]).unwrap();
        let basis = HyperbolicBasis {
            pairs: vec![HyperbolicPair { e: s.e, f: s.f }],
        };
        assert!(basis.verify(&d));

        let hh = GramForm::hyperbolic(fp(3), 2);
        let s = split_hyperbolic(&hh, &[1, 0, 0, 0]).unwrap();
        assert_eq!(hh.restrict(&s.complement).unwrap(), GramForm::hyperbolic_plane(fp(3)));
        assert_eq!(split_hyperbolic(&hh, &[1, 1, 0, 0]), Err(Error::NotIsotropic));
    }

    #[test]
    fn witt_examples() {
        let hh = GramForm::hyperbolic(fp(5), 2);
        let w = witt_decompose(&hh).unwrap();
        assert_eq!(w.index, 2);
        assert!(w.is_hyperbolic());
        assert!(w.basis.verify(&hh));

        let d = GramForm::diagonal(fp(3), &[1, 1]);
        let w = witt_decompose(&d).unwrap();
        assert_eq!((w.index, w.anisotropic.rank()), (0, 2));

        let p = PfisterSpec::from_i64(fp(7), &[1]).unwrap().expand();
        assert_eq!(witt_decompose(&p).unwrap().index, 1);
        assert!(witt_decompose(&GramForm::hyperbolic(z(3, 2), 1)).is_err());
    }

    #[test]
    fn witt_local_examples() {
        let p = PfisterSpec::from_i64(z(3, 2), &[1]).unwrap().expand();
        let w = witt_decompose_local(&p).unwrap();
        assert_eq!(w.index, 1);
        assert!(w.basis.verify(&p));
        let d = GramForm::diagonal(z(3, 2), &[1, 1]);
        assert_eq!(witt_decompose_local(&d).unwrap().index, 0);
    }

    #[test]
    fn hensel_examples() {
        let h = GramForm::hyperbolic_plane(z(3, 2));
        assert_eq!(hensel_lift_isotropic(&h, &[1, 0]).unwrap(), vec![1, 0]);
        let d = GramForm::diagonal(z(3, 2), &[1, 2]);
        let v = hensel_lift_isotropic(&d, &[1, 1]).unwrap();
        assert_eq!(v, vec![4, 1]);
        assert_eq!(16 + 2, 18);
        assert_eq!(d.eval_quad(&v).unwrap(), 0);
        assert_eq!(hensel_lift_isotropic(&d, &[1, 0]), Err(Error::NotIsotropic));
    }

    #[test]
    fn cartan_dieudonne_examples() {
        let q = GramForm::diagonal(fp(5), &[1, 2, 3]);
        assert!(cartan_dieudonne(&Isometry::identity(&q)).unwrap().is_empty());
        let r = reflection(&q, &[1, 1, 0]).unwrap();
        let us = cartan_dieudonne(&r).unwrap();
        assert!(!us.is_empty() && us.len() <= 6);
        assert_eq!(compose_reflections(&q, &us).unwrap(), r);
    }

    #[test]
    fn lift_isometry_examples() {
        let q = GramForm::diagonal(z(3, 2), &[1, 1]);
        let id = Isometry::identity(&q.residue());
        assert!(lift_isometry(&id, &q).unwrap().is_identity());
        let rbar = reflection(&q.residue(), &[1, 0]).unwrap();
        let a = lift_isometry(&rbar, &q).unwrap();
        assert_eq!(a.matrix().to_rows(), vec![vec![8, 0], vec![0, 1]]);
        assert_eq!(a.residue(), rbar);
    }
}
