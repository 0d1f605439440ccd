//! Lagrangians meeting a given subspace in a line.
//!
//! Over the residue field: given a hyperbolic `Q` of rank `2n` and a
//! non-degenerate `P` of dimension `n + 1`, find a maximal totally
//! isotropic `W` with `dim(W ∩ P) = 1`. Over `Z/p^k`: transport such a `W̄`
//! to a free totally isotropic summand `W` by lifting an isometry, then
//! extract a unimodular isotropic generator of `W ∩ N`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::flagcount;
use crate::gen;
use crate::linalg::{self, certify_free_summand, echelonize, kernel_generator, FreeSummand, Matrix, Subspace};
use crate::quadform::GramForm;
use crate::witt::{self, HyperbolicBasis, HyperbolicPair, Isometry};

/// Random isometries tried per unit of `n` before enumerating.
const ATTEMPTS_PER_DIM: usize = 64;
/// Candidate-row budget for the enumeration fallback.
const ENUMERATION_BUDGET: u64 = 20_000_000;

/// A maximal totally isotropic summand `W` together with its meet with the
/// reference subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LagrangianResult {
    pub w: FreeSummand,
    pub meet_dim: usize,
    pub generator: Option<Vec<u64>>,
}

impl LagrangianResult {
    /// Canonical form of `W` over a field (or of its residue otherwise).
    pub fn residue_subspace(&self) -> Subspace {
        self.w.residue_subspace()
    }
}

/// Outcome of the three postcondition checks on a constructed `W` and `w`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Postconditions {
    /// All pairwise `B` values of `W`'s basis vanish exactly.
    pub totally_isotropic: bool,
    /// `W` has independent residue rows and meets `N̄` in a line.
    pub summand: bool,
    /// `w` is unimodular, isotropic and lies in `N`.
    pub generator: bool,
}

impl Postconditions {
    pub fn all(&self) -> bool {
        self.totally_isotropic && self.summand && self.generator
    }
}

/// Checks `result` against `Q` and `N` by direct evaluation.
pub fn check_postconditions(q: &GramForm, n_sum: &FreeSummand, result: &LagrangianResult) -> Result<Postconditions> {
    let r = q.ring();
    let basis = result.w.basis();
    let gram = q.restrict(basis)?;
    let totally_isotropic = gram.gram().is_zero() && basis.rows() * 2 == q.rank();
    let summand = certify_free_summand(basis).is_ok()
        && result.w.residue_subspace().intersect(&n_sum.residue_subspace())?.dim() == 1;
    let generator = match &result.generator {
        Some(w) => linalg::is_unimodular(r, w) && q.eval_quad(w)? == 0 && n_sum.contains(w),
        None => false,
    };
    Ok(Postconditions {
        totally_isotropic,
        summand,
        generator,
    })
}

/// Completes a basis of a Lagrangian `W` to a hyperbolic basis whose
/// `e`-vectors are `W`'s rows.
///
/// Solves `B(e_i, f'_j) = δ_ij`, then corrects `f_j = f'_j − ½ Σ_i B(f'_i, f'_j) e_i`
/// so the `f`-vectors are mutually orthogonal.
pub fn complete_hyperbolic_dual(q: &GramForm, w: &Matrix) -> Result<HyperbolicBasis> {
    let r = q.ring();
    let n2 = q.rank();
    q.ensure_nondegenerate()?;
    if n2 % 2 == 1 || w.rows() * 2 != n2 || w.cols() != n2 {
        return Err(Error::WrongDimension {
            expected: n2 / 2,
            got: w.rows(),
        });
    }
    if !q.restrict(w)?.gram().is_zero() {
        return Err(Error::NotIsotropic);
    }
    let n = w.rows();
    let eg = w.mul(q.gram())?;
    let mut duals = Vec::with_capacity(n);
    for j in 0..n {
        let mut delta = vec![0; n];
        delta[j] = 1 % r.modulus();
        duals.push(eg.solve(&delta)?);
    }
    let mut pairs = Vec::with_capacity(n);
    for j in 0..n {
        let mut f = duals[j].clone();
        for i in 0..n {
            let s = q.eval_bilinear(&duals[i], &duals[j])?;
            f = linalg::axpy(r, &f, r.neg(r.mul(s, r.half())), w.row(i));
        }
        pairs.push(HyperbolicPair {
            e: w.row(j).to_vec(),
            f,
        });
    }
    let basis = HyperbolicBasis { pairs };
    if !basis.verify(q) {
        return Err(Error::InvariantViolation("dual completion is not hyperbolic".into()));
    }
    Ok(basis)
}

fn standard_lagrangian(q: &GramForm) -> Result<HyperbolicBasis> {
    let wd = witt::witt_decompose_local(q)?;
    if !wd.is_hyperbolic() {
        return Err(Error::NotHyperbolic {
            index: wd.index,
            rank: q.rank(),
        });
    }
    Ok(wd.basis)
}

fn meeting_result(w_rows: &Matrix, p: &Subspace) -> Result<Option<LagrangianResult>> {
    let w = echelonize(w_rows)?;
    let meet = w.intersect(p)?;
    if meet.dim() != 1 {
        return Ok(None);
    }
    Ok(Some(LagrangianResult {
        w: certify_free_summand(w.basis())?,
        meet_dim: 1,
        generator: Some(meet.basis().row(0).to_vec()),
    }))
}

/// A Lagrangian `W` of a hyperbolic form over `F_p` with `dim(W ∩ P) = 1`.
///
/// Tries `64·n` random isometric images of a fixed Lagrangian, then falls
/// back to enumerating all Lagrangians. When enumeration finds none the
/// error carries the full stratification by `dim(W ∩ P)`.
pub fn find_meeting_lagrangian(q: &GramForm, p: &Subspace, seed: u64) -> Result<LagrangianResult> {
    let f = q.ring();
    if !f.is_field() {
        return Err(Error::PreconditionViolated("residue-field search needs F_p".into()));
    }
    let n2 = q.rank();
    if n2 == 0 || n2 % 2 == 1 {
        return Err(Error::PreconditionViolated(format!("rank {n2} is not a positive even number")));
    }
    let n = n2 / 2;
    if p.ambient_dim() != n2 || p.dim() != n + 1 {
        return Err(Error::WrongDimension {
            expected: n + 1,
            got: p.dim(),
        });
    }
    if !q.restrict(p.basis())?.is_nondegenerate() {
        return Err(Error::PreconditionViolated("Q restricted to P is degenerate".into()));
    }
    let standard = standard_lagrangian(q)?;
    let base = standard.e_rows(q)?;
    if let Some(found) = meeting_result(&base, p)? {
        return Ok(found);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_image = |rng: &mut ChaCha8Rng| -> Result<Option<LagrangianResult>> {
        let a = gen::isometry(q, 2 * n, rng)?;
        let rows = base.mul(&a.matrix().transpose())?;
        meeting_result(&rows, p)
    };
    for _ in 0..ATTEMPTS_PER_DIM * n {
        if let Some(found) = random_image(&mut rng)? {
            return Ok(found);
        }
    }
    let mut first = None;
    let mut strata: std::collections::BTreeMap<usize, u64> = Default::default();
    let mut failure = None;
    let enumerated = flagcount::for_each_isotropic_subspace(q, n, ENUMERATION_BUDGET, |w| match w.intersect(p) {
        Ok(meet) => {
            *strata.entry(meet.dim()).or_insert(0) += 1;
            if meet.dim() == 1 && first.is_none() {
                first = Some((w.clone(), meet.basis().row(0).to_vec()));
            }
        }
        Err(e) => failure = Some(e),
    });
    if let Some(e) = failure {
        return Err(e);
    }
    match enumerated {
        Ok(_) => match first {
            Some((w, g)) => Ok(LagrangianResult {
                w: certify_free_summand(w.basis())?,
                meet_dim: 1,
                generator: Some(g),
            }),
            None => Err(Error::Exhausted {
                strata: Some(strata.into_iter().collect()),
            }),
        },
        Err(Error::BudgetExceeded(_)) => {
            for _ in 0..16 * ATTEMPTS_PER_DIM * n {
                if let Some(found) = random_image(&mut rng)? {
                    return Ok(found);
                }
            }
            Err(Error::Exhausted { strata: None })
        }
        Err(e) => Err(e),
    }
}

/// Free totally isotropic summand `W` of rank `n` over `Z/p^k` with a
/// unimodular isotropic generator `w` of `W ∩ N`.
///
/// Steps: hyperbolic frame `F` of `Q` by Hensel-lifted Witt decomposition;
/// a residue Lagrangian `W̄` meeting `N̄` in a line; the residue isometry
/// `Ā = F₂ F̄⁻¹` sending `F̄` to a hyperbolic completion `F₂` of `W̄`; its
/// lift `A`; `W = A·span(e_1, …, e_n)`; finally the kernel of
/// `N → M/W ≅ R^n, x ↦ (B(x, w_j))_j`.
pub fn prop_mod_construct(q: &GramForm, n_sum: &FreeSummand, seed: u64) -> Result<LagrangianResult> {
    let r = q.ring();
    r.ensure_same(&n_sum.ring())?;
    let n2 = q.rank();
    if n2 == 0 || n2 % 2 == 1 {
        return Err(Error::PreconditionViolated(format!("rank {n2} is not a positive even number")));
    }
    let n = n2 / 2;
    if n_sum.rank() != n + 1 || n_sum.ambient_rank() != n2 {
        return Err(Error::WrongDimension {
            expected: n + 1,
            got: n_sum.rank(),
        });
    }
    if !q.restrict(n_sum.basis())?.is_nondegenerate() {
        return Err(Error::Degenerate("Q restricted to N".into()));
    }

    let frame_basis = standard_lagrangian(q)?;
    let frame = frame_basis.frame(q)?;

    let qbar = q.residue();
    let nbar = n_sum.residue_subspace();
    let wbar = find_meeting_lagrangian(&qbar, &nbar, seed)?;

    let completed = complete_hyperbolic_dual(&qbar, wbar.w.basis())?;
    let abar = completed.frame(&qbar)?.mul(&frame.residue().inverse()?)?;
    let abar = Isometry::new(abar, &qbar)?;
    let a = witt::lift_isometry(&abar, q)?;

    let moved = a.matrix().mul(&frame)?;
    let w_rows: Vec<Vec<u64>> = (0..n).map(|i| moved.column(i)).collect();
    let w_mat = Matrix::from_rows_with_cols(r, &w_rows, n2)?;
    let w = certify_free_summand(&w_mat)?;
    if echelonize(&w_mat.residue())? != wbar.residue_subspace() {
        return Err(Error::InvariantViolation("lifted W does not reduce to the residue choice".into()));
    }

    let mut pi = Matrix::zeros(r, n, n + 1);
    for (jj, wj) in w_rows.iter().enumerate() {
        for i in 0..n + 1 {
            pi.set(jj, i, q.eval_bilinear(wj, n_sum.basis().row(i))?);
        }
    }
    let lambda = kernel_generator(&pi)?;
    let generator = n_sum.basis().vec_mul(&lambda)?;

    let result = LagrangianResult {
        w,
        meet_dim: 1,
        generator: Some(generator),
    };
    let post = check_postconditions(q, n_sum, &result)?;
    if !post.all() {
        return Err(Error::InvariantViolation(format!("postconditions failed: {post:?}")));
    }
    Ok(result)
}
