//! The acceptance suite: eight criteria with fixed sizes, seeds and time
//! limits, shared by the `selftest` subcommand and the `acceptance` test.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::flagcount::{self, Family};
use crate::gen;
use crate::keygeom;
use crate::linalg;
use crate::quadform::{GramForm, PfisterSpec};
use crate::ring::RingDescriptor;
use crate::solver::{self, RepresentationProblem, SolveOptions, Verdict};
use crate::witt::{self, Isometry};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Budget {
    /// Reduced instance counts; finishes in well under a minute.
    Quick,
    /// The full acceptance sizes.
    Full,
}

impl FromStr for Budget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Budget::Quick),
            "full" => Ok(Budget::Full),
            other => Err(Error::Parse(format!("unknown budget `{other}`"))),
        }
    }
}

impl Budget {
    fn pick(self, quick: usize, full: usize) -> usize {
        match self {
            Budget::Quick => quick,
            Budget::Full => full,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub summary: String,
    pub details: Vec<String>,
    pub elapsed_ms: u128,
    pub limit_ms: u128,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} criterion {} ({}): {} [{:.1}s / {:.0}s]",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.summary,
            self.elapsed_ms as f64 / 1000.0,
            self.limit_ms as f64 / 1000.0
        )
    }
}

/// Failures collected by a criterion body before the verdict is formed.
#[derive(Default)]
struct Findings {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Findings {
    fn fail(&mut self, msg: impl Into<String>) {
        let msg = msg.into();
        if self.failures.len() < 50 {
            self.failures.push(msg);
        }
    }
}

pub const CRITERIA: [(u8, &str, u64); 8] = [
    (1, "dimension formulas", 120),
    (2, "stratification of lagrangians", 180),
    (3, "free isotropic summand construction", 240),
    (4, "solver agrees with exhaustive search", 180),
    (5, "solver verdict stable across k", 240),
    (6, "deflation round trip", 60),
    (7, "represented units form a group", 120),
    (8, "orthogonal group engine", 60),
];

/// Runs one criterion. `inject_failure` forces a violation, for checking
/// that failures propagate to the exit status.
pub fn run_criterion(id: u8, budget: Budget, inject_failure: bool) -> CriterionReport {
    let (_, name, limit) = CRITERIA
        .iter()
        .copied()
        .find(|c| c.0 == id)
        .unwrap_or((id, "unknown", 0));
    let start = Instant::now();
    let mut findings = Findings::default();
    let outcome = match id {
        1 => dimension_formulas(budget, &mut findings),
        2 => stratification(budget, &mut findings),
        3 => construction(budget, &mut findings),
        4 => solver_exhaustive(budget, &mut findings),
        5 => solver_hensel(budget, &mut findings),
        6 => deflation(budget, &mut findings),
        7 => group_law(budget, &mut findings),
        8 => orthogonal_engine(budget, &mut findings),
        _ => Err(Error::OutOfRange(format!("no criterion {id}"))),
    };
    if inject_failure {
        findings.fail("injected failure");
    }
    let elapsed = start.elapsed();
    let limit = Duration::from_secs(limit);
    let (passed, summary) = match outcome {
        Err(e) => (false, format!("error: {e}")),
        Ok(summary) => {
            let mut ok = findings.failures.is_empty();
            if elapsed > limit {
                ok = false;
                findings.failures.push(format!("runtime {:.1}s exceeds the limit", elapsed.as_secs_f64()));
            }
            (ok, summary)
        }
    };
    let mut details = findings.failures;
    details.extend(findings.notes);
    CriterionReport {
        id,
        name,
        passed,
        summary,
        details,
        elapsed_ms: elapsed.as_millis(),
        limit_ms: limit.as_millis(),
    }
}

pub fn run_all(budget: Budget, inject_failure: bool) -> Vec<CriterionReport> {
    CRITERIA
        .iter()
        .map(|&(id, _, _)| run_criterion(id, budget, inject_failure && id == 1))
        .collect()
}

fn fp(p: u64) -> Result<RingDescriptor> {
    RingDescriptor::prime_field(p)
}

const PRIMES: [u64; 3] = [3, 5, 7];

fn dimension_formulas(_budget: Budget, out: &mut Findings) -> Result<String> {
    let mut reports = 0;
    for n in 1..=6usize {
        for family in [Family::X, Family::XIso, Family::YIso] {
            for j in 1..=n {
                if flagcount::predicted_dimension(family, n, j).is_err() {
                    continue;
                }
                let rep = flagcount::census(family, n, j, &PRIMES, None)?;
                reports += 1;
                if !rep.degree_matches() {
                    out.fail(format!(
                        "{family} n={n} j={j}: counts {:?}, fitted {:?}, predicted {}",
                        rep.counts, rep.fitted_degree, rep.predicted_dim
                    ));
                }
                for (&q, &c) in &rep.counts {
                    if family == Family::X && c != flagcount::gaussian_chain_product(n, j, q) {
                        out.fail(format!("x n={n} j={j} q={q}: count {c} differs from the chain product"));
                    }
                    if family == Family::YIso {
                        let form = GramForm::split(fp(q)?, n);
                        let listed = flagcount::for_each_isotropic_subspace(&form, j, flagcount::DEFAULT_BUDGET, |_| {})?;
                        if listed != c {
                            out.fail(format!("y-iso n={n} j={j} q={q}: fiberwise {c} vs enumerated {listed}"));
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{reports} censuses over q in {{3,5,7}}"))
}

fn random_nondegenerate_plane(q: &GramForm, rng: &mut ChaCha8Rng) -> linalg::Subspace {
    gen::nondegenerate_subspace(q, q.rank() / 2 + 1, rng)
}

fn stratification(budget: Budget, out: &mut Findings) -> Result<String> {
    let per_prime = budget.pick(5, 25);
    let mut instances = 0;
    for &p in &PRIMES {
        let f = fp(p)?;
        let q = GramForm::hyperbolic(f, 3);
        let total = flagcount::count_isotropic_subspaces(&q, 3)?;
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002 ^ p);
        for _ in 0..per_prime {
            let plane = random_nondegenerate_plane(&q, &mut rng);
            let strata = flagcount::z_strata(&q, &plane)?;
            instances += 1;
            let count = |j: usize| strata.iter().find(|s| s.0 == j).map(|s| s.1).unwrap_or(0);
            let sum: u64 = strata.iter().map(|s| s.1).sum();
            let instance = format!("q={p} P={:?} strata={strata:?}", plane.basis().to_rows());
            if sum != total {
                out.fail(format!("strata sum {sum} ≠ {total}: {instance}"));
            }
            if count(1) == 0 {
                out.fail(format!("Z_1 empty: {instance}"));
            }
            if count(2) >= count(1) {
                out.fail(format!("|Z_2| ≥ |Z_1|: {instance}"));
            }
        }
    }
    Ok(format!("{instances} subspaces P, 2n = 6"))
}

fn construction(budget: Budget, out: &mut Findings) -> Result<String> {
    let per_cell = budget.pick(4, 50);
    let mut runs = 0;
    let mut exhausted_by_prime = Vec::new();
    for &p in &PRIMES {
        let mut exhausted = 0;
        for k in 1..=3u32 {
            let r = RingDescriptor::local(p, k)?;
            for n in [2usize, 3, 4] {
                let mut rng = ChaCha8Rng::seed_from_u64(((p * 10 + k as u64) * 10 + n as u64) ^ 0x5eed_0003);
                for i in 0..per_cell {
                    let q = gen::hyperbolic_residue_form(r, n, &mut rng);
                    let n_sum = gen::nondegenerate_summand(&q, n + 1, &mut rng);
                    runs += 1;
                    match keygeom::prop_mod_construct(&q, &n_sum, i as u64) {
                        Ok(res) => {
                            let post = keygeom::check_postconditions(&q, &n_sum, &res)?;
                            if !post.all() {
                                out.fail(format!("{r} 2n={} {post:?}: Q={:?}", 2 * n, q.gram().to_rows()));
                            }
                        }
                        Err(Error::Exhausted { strata }) => {
                            exhausted += 1;
                            out.notes.push(format!("exhausted {r} 2n={} strata={strata:?}", 2 * n));
                        }
                        Err(e) => out.fail(format!("{r} 2n={}: {e}: Q={:?}", 2 * n, q.gram().to_rows())),
                    }
                }
            }
        }
        if p != 3 && exhausted > 0 {
            out.fail(format!("{exhausted} exhausted runs at p={p}"));
        }
        exhausted_by_prime.push(format!("p={p}: {exhausted}"));
    }
    Ok(format!("{runs} constructions, exhausted {}", exhausted_by_prime.join(", ")))
}

fn no_fast_paths(seed: u64) -> SolveOptions {
    SolveOptions {
        seed,
        fast_paths: false,
    }
}

fn solver_exhaustive(budget: Budget, out: &mut Findings) -> Result<String> {
    let specs = budget.pick(4, 20);
    let mut cases = 0;
    for p in [3u64, 5] {
        let f = fp(p)?;
        for m in 1..=2usize {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004 ^ (p << 8) ^ m as u64);
            for s in 0..specs {
                let spec = gen::pfister_spec(f, m, &mut rng);
                let q = spec.expand();
                for c in 1..p {
                    let cert = solver::solve_pfister_with(&RepresentationProblem::new(spec.clone(), c)?, no_fast_paths(s as u64))?;
                    let oracle = solver::exhaustive_witness(&q, c)?.is_some();
                    cases += 1;
                    let agrees = match cert.verdict {
                        Verdict::Solved => oracle && cert.verify()?,
                        Verdict::NoSolution => !oracle,
                        Verdict::Inconclusive => false,
                    };
                    if !agrees {
                        out.fail(format!("F_{p} slots={:?} c={c}: {:?} vs exhaustive {oracle}", spec.slots(), cert.verdict));
                    }
                }
            }
        }
    }
    Ok(format!("{cases} (spec, c) pairs, fast paths off"))
}

fn solver_hensel(budget: Budget, out: &mut Findings) -> Result<String> {
    let per_cell = budget.pick(4, 30);
    let mut cases = 0;
    let mut inconclusive = 0;
    for &p in &PRIMES {
        for m in 1..=3usize {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005 ^ (p << 8) ^ m as u64);
            let top = RingDescriptor::local(p, 4)?;
            for s in 0..per_cell {
                let spec = gen::pfister_spec(top, m, &mut rng);
                let c = gen::unit(top, &mut rng);
                let mut verdicts = Vec::new();
                for k in 1..=4u32 {
                    let r = RingDescriptor::local(p, k)?;
                    let problem = RepresentationProblem::new(spec.with_ring(r)?, c)?;
                    let cert = solver::solve_pfister_with(&problem, no_fast_paths(s as u64))?;
                    if cert.verdict == Verdict::Solved && !cert.verify()? {
                        out.fail(format!("{r} slots={:?} c={c}: witness does not evaluate to c", spec.slots()));
                    }
                    if cert.verdict == Verdict::Inconclusive {
                        inconclusive += 1;
                    }
                    verdicts.push(cert.verdict);
                }
                cases += 1;
                if verdicts.windows(2).any(|w| w[0] != w[1]) {
                    out.fail(format!("p={p} slots={:?} c={c}: verdicts {verdicts:?}", spec.slots()));
                }
            }
        }
    }
    Ok(format!("{cases} (spec, c) pairs at k = 1..4, {inconclusive} inconclusive"))
}

/// A random diagonal equation with a known solution of the reduced form.
fn random_deflation_instance(r: RingDescriptor, n: usize, rng: &mut ChaCha8Rng) -> (Vec<u64>, Vec<u64>) {
    loop {
        let mut alphas: Vec<u64> = (0..n - 1).map(|_| gen::unit(r, rng)).collect();
        let sol = gen::vector(r, n - 1, rng);
        let s = alphas
            .iter()
            .zip(&sol)
            .fold(0, |acc, (&a, &x)| r.add(acc, r.mul(a, r.mul(x, x))));
        if r.is_unit(s) {
            alphas.push(r.neg(s));
            return (alphas, sol);
        }
    }
}

fn deflation(budget: Budget, out: &mut Findings) -> Result<String> {
    let instances = budget.pick(100, 500);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let mut reflected = 0;
    let mut no_deflection = Vec::new();
    for t in 0..instances {
        let p = PRIMES[rng.gen_range(0..3)];
        let k = rng.gen_range(1..=3u32);
        let n = rng.gen_range(3..=5usize);
        let r = RingDescriptor::local(p, k)?;
        let (alphas, sol) = random_deflation_instance(r, n, &mut rng);
        let v = solver::lemma_tech_forward(r, &alphas, &sol)?;
        let q = GramForm::diagonal_residues(r, &alphas);
        if q.eval_quad(&v)? != 0 || !linalg::is_unimodular(r, &v) {
            out.fail(format!("{r} α={alphas:?}: forward output {v:?} is not a unimodular zero"));
        }
        let check = |x: &[u64]| {
            x.iter()
                .zip(&alphas)
                .fold(0, |acc, (&xi, &a)| r.add(acc, r.mul(a, r.mul(xi, xi))))
                == r.neg(alphas[n - 1])
        };
        match solver::lemma_tech_reduce(r, &alphas, &v, t as u64) {
            Ok(back) if check(&back) => {}
            Ok(back) => out.fail(format!("{r} α={alphas:?}: reduce gave {back:?}")),
            Err(e) => out.fail(format!("{r} α={alphas:?} v={v:?}: {e}")),
        }
        // Move the zero by reflections until its last coordinate leaves the
        // units, to exercise the deflecting reflection.
        let mut w = v.clone();
        for _ in 0..64 {
            if !r.is_unit(w[n - 1]) {
                break;
            }
            let u = gen::anisotropic_vector(&q, &mut rng);
            w = witt::reflection(&q, &u)?.apply(&w)?;
        }
        if r.is_unit(w[n - 1]) {
            continue;
        }
        reflected += 1;
        match solver::lemma_tech_reduce(r, &alphas, &w, t as u64) {
            Ok(back) if check(&back) => {}
            Ok(back) => out.fail(format!("{r} α={alphas:?} v={w:?}: reduce gave {back:?}")),
            Err(Error::NoDeflection) if p == 3 => no_deflection.push(format!("{r} α={alphas:?} v={w:?}")),
            Err(e) => out.fail(format!("{r} α={alphas:?} v={w:?}: {e}")),
        }
    }
    let summary = format!(
        "{instances} round trips, {reflected} through the reflection step, {} NoDeflection at p = 3",
        no_deflection.len()
    );
    out.notes.extend(no_deflection);
    Ok(summary)
}

fn all_specs(f: RingDescriptor, m: usize) -> Vec<PfisterSpec> {
    let units: Vec<u64> = f.elements().filter(|&x| f.is_unit(x)).collect();
    let mut specs = vec![Vec::new()];
    for _ in 0..m {
        specs = specs
            .into_iter()
            .flat_map(|s: Vec<u64>| {
                units.iter().map(move |&a| {
                    let mut t = s.clone();
                    t.push(a);
                    t
                })
            })
            .collect();
    }
    specs.into_iter().filter_map(|s| PfisterSpec::new(f, &s).ok()).collect()
}

fn group_law(budget: Budget, out: &mut Findings) -> Result<String> {
    let mut forms = 0;
    for p in [3u64, 5, 7, 11] {
        let f = fp(p)?;
        for m in 1..=2 {
            for spec in all_specs(f, m) {
                let rep = solver::check_value_group_exhaustive(&spec.expand())?;
                forms += 1;
                for v in rep.violations {
                    out.fail(format!("F_{p} slots={:?}: {v}", spec.slots()));
                }
            }
        }
    }
    let trials = budget.pick(20, 100);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let mut checked = 0;
    let mut inconclusive = 0;
    for t in 0..trials {
        let p = PRIMES[rng.gen_range(0..3)];
        let r = RingDescriptor::local(p, rng.gen_range(2..=3))?;
        let spec = gen::pfister_spec(r, rng.gen_range(1..=2), &mut rng);
        let rep = solver::check_group_law(&spec, r, 1, t as u64)?;
        checked += rep.checked;
        inconclusive += rep.inconclusive;
        for v in rep.violations {
            out.fail(format!("{r} slots={:?}: {v}", spec.slots()));
        }
    }
    Ok(format!(
        "{forms} forms exhaustively; {checked}/{trials} randomized closure checks, {inconclusive} inconclusive"
    ))
}

fn orthogonal_engine(budget: Budget, out: &mut Findings) -> Result<String> {
    let total = budget.pick(200, 1000);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let mut kinds = [0usize; 4];
    for t in 0..total {
        let p = [3u64, 5, 7, 11][rng.gen_range(0..4)];
        let k = rng.gen_range(1..=3u32);
        let r = RingDescriptor::local(p, k)?;
        let rank = rng.gen_range(2..=5usize);
        let q = gen::nondegenerate_form(r, rank, &mut rng);
        let kind = t % 4;
        kinds[kind] += 1;
        match kind {
            0 => {
                let u = gen::anisotropic_vector(&q, &mut rng);
                let s = witt::reflection(&q, &u)?;
                if !s.compose(&s)?.is_identity() {
                    out.fail(format!("{r} reflection in {u:?} is not an involution"));
                }
            }
            1 => {
                let a = gen::isometry(&q, rng.gen_range(1..=2 * rank), &mut rng)?;
                if Isometry::new(a.matrix().clone(), &q).is_err() {
                    out.fail(format!("{r} product of reflections does not preserve the form"));
                }
            }
            2 => {
                let qbar = q.residue();
                let a = gen::isometry(&qbar, rng.gen_range(1..=2 * rank), &mut rng)?;
                let factors = witt::cartan_dieudonne(&a)?;
                let back = witt::compose_reflections(&qbar, &factors)?;
                if back != a || factors.len() > 2 * rank {
                    out.fail(format!("F_{p} rank {rank}: {} factors, recomposition equal: {}", factors.len(), back == a));
                }
            }
            _ => {
                let a = gen::isometry(&q.residue(), rng.gen_range(1..=2 * rank), &mut rng)?;
                let lifted = witt::lift_isometry(&a, &q)?;
                if lifted.residue() != a || Isometry::new(lifted.matrix().clone(), &q).is_err() {
                    out.fail(format!("{r} lift does not reduce to the residue isometry"));
                }
            }
        }
    }
    Ok(format!(
        "{total} checks: {} involutions, {} isometry products, {} factorizations, {} lifts",
        kinds[0], kinds[1], kinds[2], kinds[3]
    ))
}
