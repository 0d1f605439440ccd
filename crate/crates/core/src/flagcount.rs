//! Point counts of flag varieties over small prime fields.
//!
//! Families:
//! - `X`: chains `L_1 ⊂ ⋯ ⊂ L_j` in `F_q^n` with `dim L_i = i`;
//! - `X̊`: the same chains with every member totally isotropic for the
//!   split form of dimension `n`;
//! - `Y̊`: single totally isotropic `j`-dimensional subspaces;
//! - `Z`: maximal totally isotropic `W` in a split space of dimension `2m`,
//!   stratified by `dim(W ∩ P)` for a fixed non-degenerate `P` of
//!   dimension `m + 1`.
//!
//! Point counts are a heuristic shadow of dimension: each count is a
//! polynomial in `q` whose degree is the dimension of the variety over an
//! algebraically closed field. "Isotropic" here is what older literature
//! sometimes spells "isotopic".

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::quadform::GramForm;
use crate::ring::RingDescriptor;
use crate::witt;

/// Default number of candidate rows examined before an enumeration gives up.
pub const DEFAULT_BUDGET: u64 = 200_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    #[serde(rename = "x")]
    X,
    #[serde(rename = "x-iso")]
    XIso,
    #[serde(rename = "y-iso")]
    YIso,
    #[serde(rename = "z-strata")]
    ZStrata,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::X, Family::XIso, Family::YIso, Family::ZStrata];
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::X => "x",
            Family::XIso => "x-iso",
            Family::YIso => "y-iso",
            Family::ZStrata => "z-strata",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "x" => Ok(Family::X),
            "x-iso" | "x_iso" | "xiso" => Ok(Family::XIso),
            "y-iso" | "y_iso" | "yiso" => Ok(Family::YIso),
            "z-strata" | "z_strata" | "z" => Ok(Family::ZStrata),
            other => Err(Error::Parse(format!("unknown family `{other}`"))),
        }
    }
}

/// Closed-form dimension of the variety. `n` is the ambient dimension; for
/// `ZStrata` it must be even (`n = 2m`) and `j` indexes the stratum, giving
/// the upper bound `(m² − m)/2 − (j² − j)`.
pub fn predicted_dimension(family: Family, n: usize, j: usize) -> Result<u64> {
    let out = |msg: String| Err(Error::OutOfRange(msg));
    if j == 0 {
        return out("j must be at least 1".into());
    }
    let (n, j) = (n as u64, j as u64);
    match family {
        Family::X => {
            if j > n {
                return out(format!("flag length {j} exceeds dimension {n}"));
            }
            Ok(n * j - j * (j + 1) / 2)
        }
        Family::XIso => {
            if 2 * j > n {
                return out(format!("isotropic subspaces of dimension {j} need n ≥ {}", 2 * j));
            }
            Ok(n * j - j * (j + 1))
        }
        Family::YIso => {
            if 2 * j > n {
                return out(format!("isotropic subspaces of dimension {j} need n ≥ {}", 2 * j));
            }
            Ok(n * j - j * (j + 1) - j * (j - 1) / 2)
        }
        Family::ZStrata => {
            if n % 2 == 1 || n == 0 {
                return out(format!("strata need an even ambient dimension, got {n}"));
            }
            let m = n / 2;
            if j > m.div_ceil(2) {
                return out(format!("stratum {j} is empty for m = {m}"));
            }
            Ok((m * m - m) / 2 - (j * j - j))
        }
    }
}

/// `∏_{i<j} (q^{n−i} − 1)/(q − 1)`, the number of length-`j` flags in `F_q^n`.
pub fn gaussian_chain_product(n: usize, j: usize, q: u64) -> u64 {
    (0..j.min(n)).map(|i| (q.pow((n - i) as u32) - 1) / (q - 1)).product::<u64>() * u64::from(j <= n)
}

/// Gram matrix over `F_p` held as plain words for tight enumeration loops.
#[derive(Clone, Debug)]
struct FieldForm {
    p: u64,
    n: usize,
    g: Vec<u64>,
}

impl FieldForm {
    fn new(q: &GramForm) -> Result<Self> {
        let f = q.ring();
        if !f.is_field() {
            return Err(Error::PreconditionViolated("enumeration runs over F_p".into()));
        }
        let n = q.rank();
        let g = (0..n * n).map(|x| q.entry(x / n, x % n)).collect();
        Ok(FieldForm { p: f.p(), n, g })
    }

    fn polar(&self, v: &[u64]) -> Vec<u64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.g[i * self.n + j] * v[j]).sum::<u64>() % self.p)
            .collect()
    }

    fn dot(&self, a: &[u64], b: &[u64]) -> u64 {
        a.iter().zip(b).map(|(x, y)| x * y).sum::<u64>() % self.p
    }
}

/// Calls `visit` on every projective point of `F_p^n` (first nonzero
/// coordinate 1), in a fixed order.
fn for_each_projective_point(p: u64, n: usize, mut visit: impl FnMut(&[u64])) {
    let mut v = vec![0u64; n];
    for lead in 0..n {
        v.iter_mut().for_each(|x| *x = 0);
        v[lead] = 1;
        loop {
            visit(&v);
            let mut i = lead + 1;
            while i < n {
                v[i] += 1;
                if v[i] < p {
                    break;
                }
                v[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
    }
}

/// Number of isotropic lines of a form over `F_p`.
pub fn count_isotropic_lines(q: &GramForm) -> Result<u64> {
    let ff = FieldForm::new(q)?;
    let mut count = 0u64;
    for_each_projective_point(ff.p, ff.n, |v| {
        if ff.dot(v, &ff.polar(v)) == 0 {
            count += 1;
        }
    });
    Ok(count)
}

/// Enumerates totally isotropic `j`-dimensional subspaces, each exactly
/// once, as reduced row-echelon bases. Pivot patterns are visited in
/// lexicographic order and rows are filled by backtracking, so the order
/// is deterministic. Stops with `BudgetExceeded` after `budget` candidate
/// rows.
pub fn for_each_isotropic_subspace(
    q: &GramForm,
    j: usize,
    budget: u64,
    mut visit: impl FnMut(&Subspace),
) -> Result<u64> {
    q.ensure_nondegenerate()?;
    let ff = FieldForm::new(q)?;
    let n = ff.n;
    if j > n {
        return Ok(0);
    }
    let mut spent = 0u64;
    let mut emitted = 0u64;
    let mut pivots = Vec::with_capacity(j);
    let mut search = Search {
        ff: &ff,
        field: q.ring(),
        j,
        budget,
        spent: &mut spent,
        emitted: &mut emitted,
        rows: Vec::with_capacity(j),
        polars: Vec::with_capacity(j),
    };
    search.pivot_patterns(0, &mut pivots, &mut visit)?;
    Ok(emitted)
}

/// Collects the subspaces of [`for_each_isotropic_subspace`].
pub fn enumerate_isotropic_subspaces(q: &GramForm, j: usize) -> Result<Vec<Subspace>> {
    let mut out = Vec::new();
    for_each_isotropic_subspace(q, j, DEFAULT_BUDGET, |s| out.push(s.clone()))?;
    Ok(out)
}

struct Search<'a> {
    ff: &'a FieldForm,
    field: RingDescriptor,
    j: usize,
    budget: u64,
    spent: &'a mut u64,
    emitted: &'a mut u64,
    rows: Vec<Vec<u64>>,
    polars: Vec<Vec<u64>>,
}

impl Search<'_> {
    fn pivot_patterns(
        &mut self,
        start: usize,
        pivots: &mut Vec<usize>,
        visit: &mut impl FnMut(&Subspace),
    ) -> Result<()> {
        if pivots.len() == self.j {
            return self.fill_row(pivots, visit);
        }
        let remaining = self.j - pivots.len();
        for c in start..=self.ff.n - remaining {
            pivots.push(c);
            self.pivot_patterns(c + 1, pivots, visit)?;
            pivots.pop();
        }
        Ok(())
    }

    fn fill_row(&mut self, pivots: &[usize], visit: &mut impl FnMut(&Subspace)) -> Result<()> {
        let r = self.rows.len();
        if r == self.j {
            let basis = Matrix::from_rows_with_cols(self.field, &self.rows, self.ff.n)?;
            visit(&Subspace::from_rref_unchecked(basis));
            *self.emitted += 1;
            return Ok(());
        }
        let n = self.ff.n;
        let p = self.ff.p;
        let free: Vec<usize> = (pivots[r] + 1..n).filter(|c| !pivots.contains(c)).collect();
        let mut row = vec![0u64; n];
        row[pivots[r]] = 1;
        loop {
            *self.spent += 1;
            if *self.spent > self.budget {
                return Err(Error::BudgetExceeded(format!(
                    "more than {} candidate rows for isotropic {}-subspaces of F_{}^{}",
                    self.budget, self.j, p, n
                )));
            }
            let g = self.ff.polar(&row);
            if self.ff.dot(&row, &g) == 0 && self.polars.iter().all(|h| self.ff.dot(&row, h) == 0) {
                self.rows.push(row.clone());
                self.polars.push(g);
                let res = self.fill_row(pivots, visit);
                self.rows.pop();
                self.polars.pop();
                res?;
            }
            let mut i = 0;
            while i < free.len() {
                let c = free[i];
                row[c] += 1;
                if row[c] < p {
                    break;
                }
                row[c] = 0;
                i += 1;
            }
            if i == free.len() {
                return Ok(());
            }
        }
    }
}

/// Counts length-`j` chains by choosing one vector per step and dividing by
/// the number of ordered bases adapted to a flag. Exponential; intended for
/// cross-checking the fiberwise counts at the smallest sizes.
pub fn count_chains_exhaustive(q: Option<&GramForm>, n: usize, j: usize, p: u64) -> Result<u64> {
    let field = RingDescriptor::prime_field(p)?;
    let ff = q.map(FieldForm::new).transpose()?;
    let total = p.checked_pow(n as u32).ok_or_else(|| Error::BudgetExceeded("ambient too large".into()))?;
    let vectors: Vec<Vec<u64>> = (0..total)
        .map(|mut x| {
            (0..n)
                .map(|_| {
                    let d = x % p;
                    x /= p;
                    d
                })
                .collect()
        })
        .collect();
    fn rec(
        depth: usize,
        j: usize,
        field: RingDescriptor,
        vectors: &[Vec<u64>],
        ff: Option<&FieldForm>,
        chosen: &mut Vec<Vec<u64>>,
        n: usize,
    ) -> Result<u64> {
        if depth == j {
            return Ok(1);
        }
        let mut sum = 0;
        for v in vectors {
            if let Some(ff) = ff {
                let g = ff.polar(v);
                if ff.dot(v, &g) != 0 || chosen.iter().any(|c| ff.dot(c, &g) != 0) {
                    continue;
                }
            }
            let mut rows = chosen.clone();
            rows.push(v.clone());
            if Matrix::from_rows_with_cols(field, &rows, n)?.residue_rank() != depth + 1 {
                continue;
            }
            chosen.push(v.clone());
            sum += rec(depth + 1, j, field, vectors, ff, chosen, n)?;
            chosen.pop();
        }
        Ok(sum)
    }
    let ordered = rec(0, j, field, &vectors, ff.as_ref(), &mut Vec::new(), n)?;
    let adapted: u64 = (1..=j as u32).map(|i| p.pow(i) - p.pow(i - 1)).product();
    Ok(ordered / adapted)
}

fn count_x(n: usize, j: usize, p: u64) -> u64 {
    if j == 0 {
        return 1;
    }
    if j > n {
        return 0;
    }
    let mut lines = 0u64;
    for_each_projective_point(p, n, |_| lines += 1);
    lines * count_x(n - 1, j - 1, p)
}

/// `|X̊_j(Q)|` via the fibration over the first isotropic line: the fiber
/// is the isotropic flag variety of `L^⊥/L`, isometric to the complement of
/// any hyperbolic plane containing `L`.
pub fn count_isotropic_flags(q: &GramForm, j: usize) -> Result<u64> {
    if j == 0 {
        return Ok(1);
    }
    let lines = count_isotropic_lines(q)?;
    if lines == 0 {
        return Ok(0);
    }
    let v = witt::find_isotropic_vector(q)?
        .ok_or_else(|| Error::InvariantViolation("isotropic lines counted but none found".into()))?;
    let split = witt::split_hyperbolic(q, &v)?;
    let rest = q.restrict(&split.complement)?;
    Ok(lines * count_isotropic_flags(&rest, j - 1)?)
}

/// `|Y̊_j(Q)|` via the forgetful map from isotropic flags: each isotropic
/// `j`-subspace `L` carries exactly the complete flags of `L`.
pub fn count_isotropic_subspaces(q: &GramForm, j: usize) -> Result<u64> {
    let flags = count_isotropic_flags(q, j)?;
    let fiber = gaussian_chain_product(j, j, q.ring().p());
    if flags % fiber != 0 {
        return Err(Error::InvariantViolation(format!(
            "isotropic flag count {flags} is not divisible by the fiber size {fiber}"
        )));
    }
    Ok(flags / fiber)
}

/// Partition of the maximal totally isotropic subspaces of `Q` (split of
/// dimension `2m`) by `dim(W ∩ P)`, as `(stratum, count)` in increasing
/// stratum order, including empty strata from 1 to `⌊(m + 1)/2⌋`.
pub fn z_strata(q: &GramForm, p: &Subspace) -> Result<Vec<(usize, u64)>> {
    let n2 = q.rank();
    if n2 % 2 == 1 {
        return Err(Error::PreconditionViolated("ambient dimension must be even".into()));
    }
    let m = n2 / 2;
    if p.dim() != m + 1 || p.ambient_dim() != n2 {
        return Err(Error::WrongDimension {
            expected: m + 1,
            got: p.dim(),
        });
    }
    if !q.restrict(p.basis())?.is_nondegenerate() {
        return Err(Error::Degenerate("Q restricted to P".into()));
    }
    let mut strata: BTreeMap<usize, u64> = (1..=m.div_ceil(2)).map(|j| (j, 0)).collect();
    let mut failure = None;
    for_each_isotropic_subspace(q, m, DEFAULT_BUDGET, |w| match w.intersect(p) {
        Ok(meet) => *strata.entry(meet.dim()).or_insert(0) += 1,
        Err(e) => failure = Some(e),
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(strata.into_iter().collect())
}

/// Integer degree `d` with `q^d ≤ count < q^{d+1}` for every prime, taken
/// as the minimum of `⌊log_q count⌋`. For a count polynomial with
/// nonnegative coefficients and leading coefficient at least 1 this never
/// exceeds the true degree, and equals it once `q` exceeds the sum of the
/// lower coefficients. `None` with fewer than two primes or a zero count.
pub fn fit_degree(counts: &BTreeMap<u64, u64>) -> Option<u32> {
    if counts.len() < 2 || counts.values().any(|&c| c == 0) {
        return None;
    }
    counts.iter().map(|(&q, &c)| floor_log(q, c)).min()
}

fn floor_log(q: u64, c: u64) -> u32 {
    let mut d = 0;
    let mut acc: u128 = q as u128;
    while acc <= c as u128 {
        d += 1;
        acc *= q as u128;
    }
    d
}

/// Exact count of one family at one prime. `ZStrata` requires `P` and
/// returns `|Z_j|`; the other families use the split form of dimension `n`
/// unless a form is supplied.
pub fn count_flags(family: Family, n: usize, j: usize, p: u64, q: Option<&GramForm>, plane: Option<&Subspace>) -> Result<u64> {
    let field = RingDescriptor::prime_field(p)?;
    let default = GramForm::split(field, n);
    let form = q.unwrap_or(&default);
    if form.rank() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: form.rank(),
        });
    }
    match family {
        Family::X => Ok(count_x(n, j, p)),
        Family::XIso => count_isotropic_flags(form, j),
        Family::YIso => count_isotropic_subspaces(form, j),
        Family::ZStrata => {
            let plane = plane.ok_or_else(|| Error::PreconditionViolated("z-strata needs a subspace P".into()))?;
            Ok(z_strata(form, plane)?
                .into_iter()
                .find(|&(s, _)| s == j)
                .map(|(_, c)| c)
                .unwrap_or(0))
        }
    }
}

/// Counts for one `(family, n, j)` across several primes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub family: Family,
    pub n: usize,
    pub j: usize,
    pub counts: BTreeMap<u64, u64>,
    pub predicted_dim: u64,
    pub fitted_degree: Option<u32>,
}

impl CensusReport {
    pub const CSV_HEADER: &'static str = "family,n,j,q,count,predicted_dim,fitted_degree";

    pub fn degree_matches(&self) -> bool {
        self.fitted_degree == Some(self.predicted_dim as u32)
    }

    /// One CSV line per prime, without the header.
    pub fn csv_rows(&self) -> Vec<String> {
        let fitted = self
            .fitted_degree
            .map(|d| d.to_string())
            .unwrap_or_else(|| "insufficient".into());
        self.counts
            .iter()
            .map(|(q, c)| format!("{},{},{},{},{},{},{}", self.family, self.n, self.j, q, c, self.predicted_dim, fitted))
            .collect()
    }
}

/// Runs `f` on a dedicated pool of `threads` workers (`Some(0)` means
/// serial, `None` uses the global pool).
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        None => f(),
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
    }
}

/// Census of the split-form family at each prime. Primes are processed in
/// parallel and merged in input order.
pub fn census(family: Family, n: usize, j: usize, primes: &[u64], threads: Option<usize>) -> Result<CensusReport> {
    if family == Family::ZStrata {
        return Err(Error::PreconditionViolated(
            "z-strata depend on a choice of P; use z_strata or count_flags".into(),
        ));
    }
    let predicted_dim = predicted_dimension(family, n, j)?;
    let results: Vec<Result<(u64, u64)>> =
        with_threads(threads, || primes.par_iter().map(|&p| count_flags(family, n, j, p, None, None).map(|c| (p, c))).collect());
    let counts: BTreeMap<u64, u64> = results.into_iter().collect::<Result<_>>()?;
    let fitted_degree = fit_degree(&counts);
    Ok(CensusReport {
        family,
        n,
        j,
        counts,
        predicted_dim,
        fitted_degree,
    })
}
