//! Representing a unit `c` by a Pfister form over `Z/p^k`, and the group
//! law on represented units.
//!
//! The pipeline: `Q̃ = ⟨1, −c⟩ ⊗ Q`; if the residue of `Q̃` is not
//! hyperbolic, `c` is not represented (for Pfister forms over a field,
//! `⟨1, −c⟩ ⊗ Q` is hyperbolic exactly when `Q` represents `c`, and a
//! residue solution of `Q = c` has a unit gradient and lifts). Otherwise
//! `Q̃` is hyperbolic over `Z/p^k` by Hensel lifting, which here stands in
//! for descent from the fraction field. A unimodular isotropic `w` in the
//! span `N` of the first `2^m + 1` coordinates then solves
//! `Q(x) = c·t²`, and the deflation step turns it into `Q(x) = c`.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gen;
use crate::keygeom;
use crate::linalg::{self, certify_free_summand, Matrix};
use crate::quadform::{GramForm, PfisterSpec};
use crate::ring::RingDescriptor;
use crate::witt::{self, WittTranscript};

/// `Q = c` for a Pfister form `Q` and a unit `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentationProblem {
    spec: PfisterSpec,
    c: u64,
}

impl RepresentationProblem {
    pub fn new(spec: PfisterSpec, c: u64) -> Result<Self> {
        let r = spec.ring();
        let c = r.reduce_u(c);
        if !r.is_unit(c) {
            return Err(Error::NonUnitInverse(c));
        }
        Ok(RepresentationProblem { spec, c })
    }

    pub fn spec(&self) -> &PfisterSpec {
        &self.spec
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    pub fn ring(&self) -> RingDescriptor {
        self.spec.ring()
    }

    pub fn form(&self) -> GramForm {
        self.spec.expand()
    }

    /// Same spec and `c` over another ring with the same `p`.
    pub fn with_ring(&self, ring: RingDescriptor) -> Result<Self> {
        RepresentationProblem::new(self.spec.with_ring(ring)?, self.c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Solved,
    NoSolution,
    /// The residue geometry search gave up; never reported as `NoSolution`.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    pub stage: &'static str,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolutionCertificate {
    pub ring: RingDescriptor,
    pub slots: Vec<u64>,
    pub c: u64,
    pub verdict: Verdict,
    pub witness: Option<Vec<u64>>,
    /// Witt decomposition of the residue of `⟨1, −c⟩ ⊗ Q`.
    pub residue_transcript: Option<WittTranscript>,
    pub trace: Vec<TraceEntry>,
}

impl SolutionCertificate {
    /// Re-evaluates the witness; `true` for certificates without one.
    pub fn verify(&self) -> Result<bool> {
        let Some(w) = &self.witness else {
            return Ok(self.verdict != Verdict::Solved);
        };
        let q = PfisterSpec::new(self.ring, &self.slots)?.expand();
        Ok(self.verdict == Verdict::Solved && q.eval_quad(w)? == self.c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub seed: u64,
    /// Try `c = 1` and diagonal entries equal to `c` before the pipeline.
    pub fast_paths: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            seed: 0,
            fast_paths: true,
        }
    }
}

fn check_alphas(ring: RingDescriptor, alphas: &[u64]) -> Result<()> {
    if alphas.len() <= 2 {
        return Err(Error::PreconditionViolated(format!(
            "need more than two coefficients, got {}",
            alphas.len()
        )));
    }
    if let Some((index, &value)) = alphas.iter().enumerate().find(|(_, &a)| !ring.is_unit(a)) {
        return Err(Error::NonUnitSlot { index, value });
    }
    Ok(())
}

fn weighted_squares(ring: RingDescriptor, alphas: &[u64], v: &[u64]) -> u64 {
    alphas
        .iter()
        .zip(v)
        .fold(0, |acc, (&a, &x)| ring.add(acc, ring.mul(a, ring.mul(x, x))))
}

/// From `Σ_{i<n} α_i t_i² = −α_n` to the unimodular zero `(t, 1)` of
/// `Σ α_i T_i²`.
pub fn lemma_tech_forward(ring: RingDescriptor, alphas: &[u64], sol: &[u64]) -> Result<Vec<u64>> {
    check_alphas(ring, alphas)?;
    let n = alphas.len();
    if sol.len() != n - 1 {
        return Err(Error::DimensionMismatch {
            expected: n - 1,
            got: sol.len(),
        });
    }
    let sol: Vec<u64> = sol.iter().map(|&x| ring.reduce_u(x)).collect();
    if weighted_squares(ring, &alphas[..n - 1], &sol) != ring.neg(alphas[n - 1]) {
        return Err(Error::PreconditionViolated("input does not solve the reduced equation".into()));
    }
    let mut out = sol;
    out.push(1 % ring.modulus());
    Ok(out)
}

/// From a unimodular zero `v` of `Σ α_i T_i²` to a solution of
/// `Σ_{i<n} α_i T_i² = −α_n`.
///
/// When `v_n` is not a unit, reflects `v` in `u = x e_i + y e_j + e_n` with
/// `Q(u)` and `B(u, v)` units, which makes the last coordinate a unit. The
/// pair `(i, j)` is tried in a seeded order and `(x, y)` ranges over all of
/// `F_p²`.
pub fn lemma_tech_reduce(ring: RingDescriptor, alphas: &[u64], v: &[u64], seed: u64) -> Result<Vec<u64>> {
    check_alphas(ring, alphas)?;
    let n = alphas.len();
    if v.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: v.len() });
    }
    let v: Vec<u64> = v.iter().map(|&x| ring.reduce_u(x)).collect();
    if !linalg::is_unimodular(ring, &v) {
        return Err(Error::NotUnimodular);
    }
    if weighted_squares(ring, alphas, &v) != 0 {
        return Err(Error::PreconditionViolated("input is not a zero of the form".into()));
    }
    let last = n - 1;
    let deflate = |v: &[u64]| -> Result<Vec<u64>> {
        let inv = ring.inv(v[last])?;
        Ok(v[..last].iter().map(|&x| ring.mul(x, inv)).collect())
    };
    if ring.is_unit(v[last]) {
        return deflate(&v);
    }
    let q = GramForm::diagonal_residues(ring, alphas);
    let mut pairs: Vec<(usize, usize)> = (0..last)
        .filter(|&i| ring.is_unit(v[i]))
        .flat_map(|i| (0..last).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    pairs.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let p = ring.p();
    for (i, j) in pairs {
        for x in 0..p {
            for y in 0..p {
                let mut u = vec![0; n];
                u[i] = x;
                u[j] = y;
                u[last] = 1;
                let norm = q.eval_quad(&u)?;
                let pairing = q.eval_bilinear(&u, &v)?;
                if !ring.is_unit(norm) || !ring.is_unit(pairing) {
                    continue;
                }
                let moved = witt::reflection(&q, &u)?.apply(&v)?;
                if !ring.is_unit(moved[last]) {
                    return Err(Error::InvariantViolation("reflection left the last coordinate in the ideal".into()));
                }
                let out = deflate(&moved)?;
                if weighted_squares(ring, &alphas[..last], &out) != ring.neg(alphas[last]) {
                    return Err(Error::InvariantViolation("deflated vector fails the reduced equation".into()));
                }
                return Ok(out);
            }
        }
    }
    Err(Error::NoDeflection)
}

/// Solves with default options and the given seed.
pub fn solve_pfister(problem: &RepresentationProblem, seed: u64) -> Result<SolutionCertificate> {
    solve_pfister_with(problem, SolveOptions { seed, ..Default::default() })
}

pub fn solve_pfister_with(problem: &RepresentationProblem, opts: SolveOptions) -> Result<SolutionCertificate> {
    let r = problem.ring();
    let c = problem.c;
    let q = problem.form();
    let diag = problem.spec.diagonal();
    let dim = diag.len();
    let mut cert = SolutionCertificate {
        ring: r,
        slots: problem.spec.slots().to_vec(),
        c,
        verdict: Verdict::Inconclusive,
        witness: None,
        residue_transcript: None,
        trace: Vec::new(),
    };
    let log = |cert: &mut SolutionCertificate, stage: &'static str, detail: String| {
        cert.trace.push(TraceEntry { stage, detail });
    };

    if opts.fast_paths {
        if let Some(i) = diag.iter().position(|&d| d == c) {
            let w = linalg::unit_vector(dim, i);
            log(&mut cert, "fast-path", format!("diagonal entry {i} equals c"));
            return finish(cert, &q, w);
        }
    }

    let big = problem.spec.extended(c)?;
    let qt = big.expand();
    let residue = witt::witt_decompose(&qt.residue())?;
    let transcript = residue.transcript();
    log(
        &mut cert,
        "residue-witt",
        format!("index {} of rank {}", residue.index, qt.rank()),
    );
    cert.residue_transcript = Some(transcript);
    if !residue.is_hyperbolic() {
        cert.verdict = Verdict::NoSolution;
        log(&mut cert, "verdict", "residue of the extended form is not hyperbolic".into());
        return Ok(cert);
    }

    // N = span of the first 2^m + 1 coordinates: Q ⊥ ⟨−c⟩.
    let n_rows: Vec<Vec<u64>> = (0..=dim).map(|i| linalg::unit_vector(qt.rank(), i)).collect();
    let n_sum = certify_free_summand(&Matrix::from_rows_with_cols(r, &n_rows, qt.rank())?)?;
    let constructed = match keygeom::prop_mod_construct(&qt, &n_sum, opts.seed) {
        Ok(res) => res,
        Err(e @ Error::Exhausted { .. }) => {
            log(&mut cert, "meeting-lagrangian", e.to_string());
            return Ok(cert);
        }
        Err(e) => return Err(e),
    };
    let w = constructed
        .generator
        .ok_or_else(|| Error::InvariantViolation("construction returned no generator".into()))?;
    log(&mut cert, "isotropic-generator", format!("{w:?}"));

    let mut alphas = diag.clone();
    alphas.push(r.neg(c));
    match lemma_tech_reduce(r, &alphas, &w[..=dim], opts.seed) {
        Ok(x) => {
            log(&mut cert, "deflation", "last coordinate made a unit".into());
            finish(cert, &q, x)
        }
        Err(e @ Error::NoDeflection) => {
            log(&mut cert, "deflation", e.to_string());
            Ok(cert)
        }
        Err(e) => Err(e),
    }
}

fn finish(mut cert: SolutionCertificate, q: &GramForm, witness: Vec<u64>) -> Result<SolutionCertificate> {
    if q.eval_quad(&witness)? != cert.c {
        return Err(Error::InvariantViolation(format!(
            "witness {witness:?} does not evaluate to {}",
            cert.c
        )));
    }
    cert.verdict = Verdict::Solved;
    cert.witness = Some(witness);
    Ok(cert)
}

/// All `x` with `Q(x) = c`, searched exhaustively; the first one found in
/// lexicographic order of the base-`p^k` index.
pub fn exhaustive_witness(q: &GramForm, c: u64) -> Result<Option<Vec<u64>>> {
    let r = q.ring();
    let n = q.rank();
    let total = r
        .modulus()
        .checked_pow(n as u32)
        .filter(|&t| t <= 50_000_000)
        .ok_or_else(|| Error::BudgetExceeded(format!("{}^{} vectors", r.modulus(), n)))?;
    let diag = q.is_diagonal().then(|| q.diagonal_entries());
    let mut v = vec![0u64; n];
    for _ in 0..total {
        let val = match &diag {
            Some(d) => weighted_squares(r, d, &v),
            None => q.eval_quad(&v)?,
        };
        if val == r.reduce_u(c) {
            return Ok(Some(v));
        }
        for x in v.iter_mut() {
            *x += 1;
            if *x < r.modulus() {
                break;
            }
            *x = 0;
        }
    }
    Ok(None)
}

/// Units represented by `Q`, each with one witness, by exhaustive search.
pub fn value_set(q: &GramForm) -> Result<std::collections::BTreeMap<u64, Vec<u64>>> {
    let r = q.ring();
    let mut out = std::collections::BTreeMap::new();
    for c in r.elements().filter(|&c| r.is_unit(c)) {
        if let Some(w) = exhaustive_witness(q, c)? {
            out.insert(c, w);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GroupLawReport {
    pub trials: usize,
    pub checked: usize,
    pub inconclusive: usize,
    pub violations: Vec<String>,
}

impl GroupLawReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exhaustive check that the represented units form a subgroup: contains
/// 1, closed under products, and `c⁻¹·v` witnesses `c⁻¹` for every witness
/// `v` of `c`.
pub fn check_value_group_exhaustive(q: &GramForm) -> Result<GroupLawReport> {
    let r = q.ring();
    let values = value_set(q)?;
    let keys: BTreeSet<u64> = values.keys().copied().collect();
    let mut report = GroupLawReport {
        trials: keys.len(),
        checked: keys.len(),
        ..Default::default()
    };
    let one = 1 % r.modulus();
    if !keys.contains(&one) {
        report.violations.push("1 is not represented".into());
    }
    for (&c, v) in &values {
        let inv = r.inv(c)?;
        let w = linalg::scale_vec(r, inv, v);
        if q.eval_quad(&w)? != inv {
            report.violations.push(format!("Q(c⁻¹v) ≠ c⁻¹ for c = {c}, v = {v:?}"));
        }
        for &d in &keys {
            if !keys.contains(&r.mul(c, d)) {
                report.violations.push(format!("{c}·{d} is not represented"));
            }
        }
    }
    Ok(report)
}

/// Randomized group-law check through the solver: for random units
/// `c_1, c_2` that are represented, `c_1 c_2` must be represented and
/// `c_1⁻¹ v_1` must witness `c_1⁻¹`; `1` must be represented by `e_1`.
pub fn check_group_law(spec: &PfisterSpec, ring: RingDescriptor, trials: usize, seed: u64) -> Result<GroupLawReport> {
    let spec = spec.with_ring(ring)?;
    let q = spec.expand();
    let mut report = GroupLawReport {
        trials,
        ..Default::default()
    };
    if trials == 0 {
        return Ok(report);
    }
    let one = 1 % ring.modulus();
    if q.eval_quad(&linalg::unit_vector(q.rank(), 0))? != one {
        report.violations.push("Q(e_1) ≠ 1".into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..trials {
        let c1 = gen::unit(ring, &mut rng);
        let c2 = gen::unit(ring, &mut rng);
        let s = seed.wrapping_add(t as u64);
        let a = solve_pfister(&RepresentationProblem::new(spec.clone(), c1)?, s)?;
        let b = solve_pfister(&RepresentationProblem::new(spec.clone(), c2)?, s)?;
        if a.verdict == Verdict::Inconclusive || b.verdict == Verdict::Inconclusive {
            report.inconclusive += 1;
            continue;
        }
        if a.verdict != Verdict::Solved || b.verdict != Verdict::Solved {
            continue;
        }
        report.checked += 1;
        let prod = solve_pfister(&RepresentationProblem::new(spec.clone(), ring.mul(c1, c2))?, s)?;
        match prod.verdict {
            Verdict::Solved => {}
            Verdict::Inconclusive => report.inconclusive += 1,
            Verdict::NoSolution => report.violations.push(format!("{c1}·{c2} not represented over {ring}")),
        }
        let v1 = a.witness.as_deref().unwrap_or_default();
        let inv = ring.inv(c1)?;
        if q.eval_quad(&linalg::scale_vec(ring, inv, v1))? != inv {
            report.violations.push(format!("c⁻¹·v fails to witness c⁻¹ for c = {c1}"));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(p: u64, k: u32) -> RingDescriptor {
        RingDescriptor::local(p, k).unwrap()
    }

    #[test]
    fn forward_examples() {
        let r = z(3, 2);
        let alphas = [1, 1, r.reduce(-2)];
        assert_eq!(lemma_tech_forward(r, &alphas, &[1, 1]).unwrap(), vec![1, 1, 1]);
        assert!(lemma_tech_forward(r, &[1, r.reduce(-1)], &[1]).is_err());
        assert!(lemma_tech_forward(r, &alphas, &[1, 0]).is_err());
    }

    #[test]
    fn reduce_examples() {
        let r = z(3, 2);
        assert_eq!(lemma_tech_reduce(r, &[1, 1, r.reduce(-2)], &[1, 1, 1], 0).unwrap(), vec![1, 1]);
        let f = RingDescriptor::prime_field(3).unwrap();
        let out = lemma_tech_reduce(f, &[1, 1, 1], &[1, 1, 1], 0).unwrap();
        assert_eq!(out, vec![1, 1]);
        assert_eq!(weighted_squares(f, &[1, 1], &out), 2);

        let alphas = [1, r.reduce(-1), 1, r.reduce(-1)];
        let out = lemma_tech_reduce(r, &alphas, &[1, 1, 3, 3], 0).unwrap();
        assert_eq!(weighted_squares(r, &alphas[..3], &out), 1);
    }

    #[test]
    fn fast_path_for_one() {
        for p in [3, 5, 7] {
            let r = z(p, 2);
            let spec = PfisterSpec::from_i64(r, &[2, -1]).unwrap();
            let cert = solve_pfister(&RepresentationProblem::new(spec, 1).unwrap(), 0).unwrap();
            assert_eq!(cert.verdict, Verdict::Solved);
            assert_eq!(cert.witness, Some(vec![1, 0, 0, 0]));
        }
    }

    #[test]
    fn hyperbolic_plane_represents_two() {
        let r = z(3, 2);
        let spec = PfisterSpec::from_i64(r, &[1]).unwrap();
        let prob = RepresentationProblem::new(spec.clone(), 2).unwrap();
        let opts = SolveOptions { seed: 0, fast_paths: false };
        let cert = solve_pfister_with(&prob, opts).unwrap();
        assert_eq!(cert.verdict, Verdict::Solved);
        assert!(cert.verify().unwrap());
        assert!(exhaustive_witness(&spec.expand(), 2).unwrap().is_some());
    }

    #[test]
    fn sum_of_two_squares_matches_residue_search() {
        let r = z(3, 2);
        let spec = PfisterSpec::from_i64(r, &[-1]).unwrap();
        let prob = RepresentationProblem::new(spec.clone(), 2).unwrap();
        let cert = solve_pfister_with(&prob, SolveOptions { seed: 0, fast_paths: false }).unwrap();
        let f = RingDescriptor::prime_field(3).unwrap();
        let residue_has = exhaustive_witness(&spec.with_ring(f).unwrap().expand(), 2).unwrap().is_some();
        assert_eq!(cert.verdict == Verdict::Solved, residue_has);
        let t = cert.residue_transcript.unwrap();
        assert_eq!(t.hyperbolic, residue_has);
    }

    #[test]
    fn value_group_of_hyperbolic_plane() {
        let f = RingDescriptor::prime_field(5).unwrap();
        let q = PfisterSpec::from_i64(f, &[1]).unwrap().expand();
        let values = value_set(&q).unwrap();
        assert_eq!(values.keys().copied().collect::<Vec<_>>(), vec![1, 2, 3, 4]);
        assert!(check_value_group_exhaustive(&q).unwrap().is_clean());
    }

    #[test]
    fn empty_trials() {
        let r = z(5, 1);
        let spec = PfisterSpec::from_i64(r, &[2]).unwrap();
        let rep = check_group_law(&spec, r, 0, 0).unwrap();
        assert_eq!(rep, GroupLawReport::default());
    }
}
