//! Seeded random instance generators shared by the property suites, the
//! self-test and the examples.

use rand::Rng;

use crate::error::Result;
use crate::linalg::{self, certify_free_summand, echelonize, FreeSummand, Matrix, Subspace};
use crate::quadform::{GramForm, PfisterSpec};
use crate::ring::RingDescriptor;
use crate::witt::{self, Isometry};

pub fn element<R: Rng + ?Sized>(ring: RingDescriptor, rng: &mut R) -> u64 {
    rng.gen_range(0..ring.modulus())
}

pub fn unit<R: Rng + ?Sized>(ring: RingDescriptor, rng: &mut R) -> u64 {
    loop {
        let x = element(ring, rng);
        if ring.is_unit(x) {
            return x;
        }
    }
}

pub fn vector<R: Rng + ?Sized>(ring: RingDescriptor, n: usize, rng: &mut R) -> Vec<u64> {
    (0..n).map(|_| element(ring, rng)).collect()
}

pub fn matrix<R: Rng + ?Sized>(ring: RingDescriptor, rows: usize, cols: usize, rng: &mut R) -> Matrix {
    let data: Vec<Vec<u64>> = (0..rows).map(|_| vector(ring, cols, rng)).collect();
    Matrix::from_rows_with_cols(ring, &data, cols).expect("rectangular")
}

pub fn invertible_matrix<R: Rng + ?Sized>(ring: RingDescriptor, n: usize, rng: &mut R) -> Matrix {
    loop {
        let m = matrix(ring, n, n, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

pub fn symmetric_matrix<R: Rng + ?Sized>(ring: RingDescriptor, n: usize, rng: &mut R) -> Matrix {
    let mut m = Matrix::zeros(ring, n, n);
    for i in 0..n {
        for j in i..n {
            let x = element(ring, rng);
            m.set(i, j, x);
            m.set(j, i, x);
        }
    }
    m
}

pub fn nondegenerate_form<R: Rng + ?Sized>(ring: RingDescriptor, n: usize, rng: &mut R) -> GramForm {
    loop {
        let g = GramForm::new(symmetric_matrix(ring, n, rng)).expect("symmetric");
        if g.is_nondegenerate() {
            return g;
        }
    }
}

/// A form whose residue is hyperbolic of rank `2 * planes`: a random change
/// of basis of `H^planes` plus a random symmetric perturbation in `p·M`.
pub fn hyperbolic_residue_form<R: Rng + ?Sized>(ring: RingDescriptor, planes: usize, rng: &mut R) -> GramForm {
    let n = 2 * planes;
    let h = GramForm::hyperbolic(ring, planes);
    let p = invertible_matrix(ring, n, rng);
    let mut g = p.transpose().mul(h.gram()).and_then(|x| x.mul(&p)).expect("square");
    if !ring.is_field() {
        let s = symmetric_matrix(ring, n, rng);
        for i in 0..n {
            for j in 0..n {
                g.set(i, j, ring.add(g.get(i, j), ring.mul(ring.p(), s.get(i, j))));
            }
        }
    }
    GramForm::new(g).expect("symmetric")
}

/// A vector with unit norm.
pub fn anisotropic_vector<R: Rng + ?Sized>(q: &GramForm, rng: &mut R) -> Vec<u64> {
    loop {
        let u = vector(q.ring(), q.rank(), rng);
        if q.eval_quad(&u).map(|n| q.ring().is_unit(n)).unwrap_or(false) {
            return u;
        }
    }
}

/// Product of `count` random reflections.
pub fn isometry<R: Rng + ?Sized>(q: &GramForm, count: usize, rng: &mut R) -> Result<Isometry> {
    let mut acc = Isometry::identity(q);
    for _ in 0..count {
        let u = anisotropic_vector(q, rng);
        acc = acc.compose(&witt::reflection(q, &u)?)?;
    }
    Ok(acc)
}

/// A `dim`-dimensional subspace on which `q` (over `F_p`) restricts to a
/// non-degenerate form.
pub fn nondegenerate_subspace<R: Rng + ?Sized>(q: &GramForm, dim: usize, rng: &mut R) -> Subspace {
    loop {
        let rows = matrix(q.ring(), dim, q.rank(), rng);
        let s = echelonize(&rows).expect("field");
        if s.dim() == dim && q.restrict(s.basis()).map(|r| r.is_nondegenerate()).unwrap_or(false) {
            return s;
        }
    }
}

/// A free summand of the given rank on which `q` restricts non-degenerately.
pub fn nondegenerate_summand<R: Rng + ?Sized>(q: &GramForm, rank: usize, rng: &mut R) -> FreeSummand {
    loop {
        let rows = matrix(q.ring(), rank, q.rank(), rng);
        if let Ok(s) = certify_free_summand(&rows) {
            if q.restrict(s.basis()).map(|r| r.is_nondegenerate()).unwrap_or(false) {
                return s;
            }
        }
    }
}

pub fn pfister_spec<R: Rng + ?Sized>(ring: RingDescriptor, folds: usize, rng: &mut R) -> PfisterSpec {
    let slots: Vec<u64> = (0..folds).map(|_| unit(ring, rng)).collect();
    PfisterSpec::new(ring, &slots).expect("unit slots")
}

/// A random residue-field vector that is nonzero.
pub fn nonzero_vector<R: Rng + ?Sized>(ring: RingDescriptor, n: usize, rng: &mut R) -> Vec<u64> {
    loop {
        let v = vector(ring, n, rng);
        if linalg::is_unimodular(ring, &v) {
            return v;
        }
    }
}
