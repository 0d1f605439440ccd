//! Command-line front end. Primary output (JSON or CSV) goes to stdout,
//! human-readable summaries to stderr.
//!
//! Exit codes: 0 success, 2 usage or input error, 3 no solution,
//! 4 inconclusive, 5 internal invariant violation.

use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flagcount::{self, CensusReport, Family};
use crate::gen;
use crate::keygeom::{self, Postconditions};
use crate::linalg::{certify_free_summand, Matrix};
use crate::quadform::{FormDescriptor, GramForm, PfisterSpec};
use crate::ring::RingDescriptor;
use crate::selftest::{self, Budget};
use crate::solver::{self, RepresentationProblem, SolveOptions, Verdict};
use crate::witt;

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_NO_SOLUTION: u8 = 3;
pub const EXIT_INCONCLUSIVE: u8 = 4;
pub const EXIT_INVARIANT: u8 = 5;

#[derive(Debug, Parser)]
#[command(name = "isoform", version, about = "Exact quadratic forms over F_p and Z/p^k")]
pub struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve Q = c for a Pfister form Q; prints a JSON certificate.
    Solve(SolveArgs),
    /// Witt decomposition of a form; prints index and hyperbolic basis.
    WittDecompose(FormArgs),
    /// Free totally isotropic summand W meeting N in a unimodular line.
    ConstructW(ConstructArgs),
    /// Point counts of flag varieties; prints CSV.
    Census(CensusArgs),
    /// Check that the represented units form a group.
    CheckGroup(CheckGroupArgs),
    /// Run the acceptance suite.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Pfister slots a_1,…,a_m (integers, reduced into the ring).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub pfister: Vec<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: i64,
    /// `fp:p` or `zpk:p,k`.
    #[arg(long)]
    pub ring: RingDescriptor,
    /// Skip the shortcuts and always run the full pipeline.
    #[arg(long)]
    pub no_fast_paths: bool,
}

#[derive(Debug, Args)]
pub struct FormArgs {
    /// JSON form descriptor, e.g. {"ring":{"kind":"fp","p":5},"gram":[[0,1],[1,0]]};
    /// `@path` reads a file and `-` reads stdin.
    #[arg(long, conflicts_with_all = ["gram", "pfister"])]
    pub form: Option<String>,
    #[arg(long)]
    pub ring: Option<RingDescriptor>,
    /// Gram matrix rows separated by `;`, entries by `,`.
    #[arg(long, allow_hyphen_values = true)]
    pub gram: Option<String>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub pfister: Option<Vec<i64>>,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    /// JSON {"form": descriptor, "n_basis": [[…]], "seed": n}; `@path` or `-`.
    #[arg(long, conflicts_with_all = ["ring", "gram", "n_basis"])]
    pub input: Option<String>,
    #[arg(long)]
    pub ring: Option<RingDescriptor>,
    #[arg(long, allow_hyphen_values = true)]
    pub gram: Option<String>,
    /// Rows of N separated by `;`.
    #[arg(long, allow_hyphen_values = true)]
    pub n_basis: Option<String>,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    #[arg(long)]
    pub family: Family,
    /// Ambient dimension.
    #[arg(long, alias = "dim2n", visible_alias = "dim2n")]
    pub n: usize,
    /// Flag length or subspace dimension; every stratum when omitted for z-strata.
    #[arg(long)]
    pub j: Option<usize>,
    #[arg(long, value_delimiter = ',', default_value = "3,5,7")]
    pub primes: Vec<u64>,
}

#[derive(Debug, Args)]
pub struct CheckGroupArgs {
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub pfister: Vec<i64>,
    #[arg(long)]
    pub ring: RingDescriptor,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Enumerate the whole value set instead of sampling (small rings only).
    #[arg(long)]
    pub exhaustive: bool,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    #[arg(long, default_value = "quick")]
    pub budget: Budget,
    /// Run one criterion only.
    #[arg(long)]
    pub only: Option<u8>,
    #[arg(long, hide = true)]
    pub inject_failure: bool,
}

impl clap::ValueEnum for Budget {
    fn value_variants<'a>() -> &'a [Self] {
        &[Budget::Quick, Budget::Full]
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(clap::builder::PossibleValue::new(match self {
            Budget::Quick => "quick",
            Budget::Full => "full",
        }))
    }
}

/// What a command produced, before it is mapped to an exit code.
pub struct Output {
    pub stdout: String,
    pub code: u8,
}

fn code_for(err: &Error) -> u8 {
    match err {
        Error::InvariantViolation(_) => EXIT_INVARIANT,
        Error::Exhausted { .. } | Error::NoDeflection | Error::BudgetExceeded(_) => EXIT_INCONCLUSIVE,
        _ => EXIT_USAGE,
    }
}

fn read_source(src: &str) -> Result<String> {
    let io = |e: std::io::Error| Error::Parse(e.to_string());
    if src == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else if let Some(path) = src.strip_prefix('@') {
        std::fs::read_to_string(path).map_err(io)
    } else {
        Ok(src.to_string())
    }
}

fn parse_rows(s: &str) -> Result<Vec<Vec<i64>>> {
    s.split(';')
        .filter(|r| !r.trim().is_empty())
        .map(|r| {
            r.split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|e| Error::Parse(format!("`{x}`: {e}"))))
                .collect()
        })
        .collect()
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v).map_err(|e| Error::Parse(e.to_string()))
}

fn form_from_args(a: &FormArgs) -> Result<GramForm> {
    if let Some(src) = &a.form {
        let d: FormDescriptor = serde_json::from_str(&read_source(src)?).map_err(|e| Error::Parse(e.to_string()))?;
        return d.to_form();
    }
    let ring = a.ring.ok_or_else(|| Error::Parse("--ring is required without --form".into()))?;
    let d = FormDescriptor {
        ring,
        gram: a.gram.as_deref().map(parse_rows).transpose()?,
        pfister: a.pfister.clone(),
    };
    d.to_form()
}

fn solve(args: &SolveArgs, seed: u64) -> Result<Output> {
    let spec = PfisterSpec::from_i64(args.ring, &args.pfister)?;
    let problem = RepresentationProblem::new(spec, args.ring.reduce(args.c))?;
    let opts = SolveOptions {
        seed,
        fast_paths: !args.no_fast_paths,
    };
    let cert = solver::solve_pfister_with(&problem, opts)?;
    eprintln!("verdict: {:?}", cert.verdict);
    let code = match cert.verdict {
        Verdict::Solved => EXIT_OK,
        Verdict::NoSolution => EXIT_NO_SOLUTION,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    };
    Ok(Output {
        stdout: to_json(&cert)?,
        code,
    })
}

fn witt_decompose(args: &FormArgs) -> Result<Output> {
    let q = form_from_args(args)?;
    let wd = if q.ring().is_field() {
        witt::witt_decompose(&q)?
    } else {
        witt::witt_decompose_local(&q)?
    };
    eprintln!("witt index {} of rank {}", wd.index, q.rank());
    Ok(Output {
        stdout: to_json(&wd.transcript())?,
        code: EXIT_OK,
    })
}

#[derive(Debug, Deserialize)]
struct ConstructInput {
    form: FormDescriptor,
    n_basis: Vec<Vec<i64>>,
    #[serde(default)]
    seed: Option<u64>,
}

#[derive(Debug, Serialize)]
struct ConstructOutput {
    ring: RingDescriptor,
    w_basis: Vec<Vec<u64>>,
    generator: Option<Vec<u64>>,
    meet_dim: usize,
    certificates: Postconditions,
}

fn construct_w(args: &ConstructArgs, seed: u64) -> Result<Output> {
    let input = match &args.input {
        Some(src) => serde_json::from_str::<ConstructInput>(&read_source(src)?).map_err(|e| Error::Parse(e.to_string()))?,
        None => ConstructInput {
            form: FormDescriptor {
                ring: args.ring.ok_or_else(|| Error::Parse("--ring is required without --input".into()))?,
                gram: Some(parse_rows(args.gram.as_deref().ok_or_else(|| Error::Parse("--gram is required".into()))?)?),
                pfister: None,
            },
            n_basis: parse_rows(args.n_basis.as_deref().ok_or_else(|| Error::Parse("--n-basis is required".into()))?)?,
            seed: None,
        },
    };
    let q = input.form.to_form()?;
    let n_sum = certify_free_summand(&Matrix::from_i64(q.ring(), &input.n_basis)?)?;
    let res = keygeom::prop_mod_construct(&q, &n_sum, input.seed.unwrap_or(seed))?;
    let certificates = keygeom::check_postconditions(&q, &n_sum, &res)?;
    eprintln!("W of rank {} meeting N in rank {}", res.w.rank(), res.meet_dim);
    let out = ConstructOutput {
        ring: q.ring(),
        w_basis: res.w.basis().to_rows(),
        generator: res.generator,
        meet_dim: res.meet_dim,
        certificates,
    };
    Ok(Output {
        stdout: to_json(&out)?,
        code: if certificates.all() { EXIT_OK } else { EXIT_INVARIANT },
    })
}

fn census(args: &CensusArgs, seed: u64, threads: Option<usize>) -> Result<Output> {
    let mut lines = vec![CensusReport::CSV_HEADER.to_string()];
    if args.family == Family::ZStrata {
        // Strata depend on P: one seeded random non-degenerate P per prime.
        let n = args.n;
        let strata_max = (n / 2).div_ceil(2);
        let wanted: Vec<usize> = match args.j {
            Some(j) => vec![j],
            None => (1..=strata_max).collect(),
        };
        let per_prime: Vec<Result<(u64, Vec<(usize, u64)>)>> = flagcount::with_threads(threads, || {
            use rayon::prelude::*;
            args.primes
                .par_iter()
                .map(|&p| {
                    let f = RingDescriptor::prime_field(p)?;
                    let q = GramForm::split(f, n);
                    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p);
                    let plane = gen::nondegenerate_subspace(&q, n / 2 + 1, &mut rng);
                    Ok((p, flagcount::z_strata(&q, &plane)?))
                })
                .collect()
        });
        let per_prime: Vec<(u64, Vec<(usize, u64)>)> = per_prime.into_iter().collect::<Result<_>>()?;
        for j in wanted {
            let predicted = flagcount::predicted_dimension(Family::ZStrata, n, j)?;
            let counts = per_prime
                .iter()
                .map(|(p, s)| (*p, s.iter().find(|x| x.0 == j).map(|x| x.1).unwrap_or(0)))
                .collect();
            let report = CensusReport {
                family: Family::ZStrata,
                n,
                j,
                fitted_degree: flagcount::fit_degree(&counts),
                counts,
                predicted_dim: predicted,
            };
            lines.extend(report.csv_rows());
        }
    } else {
        let j = args.j.ok_or_else(|| Error::Parse("--j is required for this family".into()))?;
        let report = flagcount::census(args.family, args.n, j, &args.primes, threads)?;
        let fitted = report.fitted_degree.map_or("insufficient".to_string(), |d| d.to_string());
        eprintln!(
            "{} n={} j={}: fitted degree {fitted}, predicted {}",
            report.family, report.n, report.j, report.predicted_dim
        );
        lines.extend(report.csv_rows());
    }
    Ok(Output {
        stdout: lines.join("\n"),
        code: EXIT_OK,
    })
}

fn check_group(args: &CheckGroupArgs, seed: u64) -> Result<Output> {
    let spec = PfisterSpec::from_i64(args.ring, &args.pfister)?;
    let report = if args.exhaustive {
        solver::check_value_group_exhaustive(&spec.expand())?
    } else {
        solver::check_group_law(&spec, args.ring, args.trials, seed)?
    };
    eprintln!(
        "{} checked, {} inconclusive, {} violations",
        report.checked,
        report.inconclusive,
        report.violations.len()
    );
    Ok(Output {
        stdout: to_json(&report)?,
        code: if report.is_clean() { EXIT_OK } else { EXIT_INVARIANT },
    })
}

fn selftest(args: &SelftestArgs) -> Result<Output> {
    let reports: Vec<_> = match args.only {
        Some(id) => vec![selftest::run_criterion(id, args.budget, args.inject_failure)],
        None => selftest::run_all(args.budget, args.inject_failure),
    };
    let mut lines = Vec::new();
    for r in &reports {
        lines.push(r.to_string());
        if !r.passed {
            lines.extend(r.details.iter().map(|d| format!("    {d}")));
        }
    }
    let ok = reports.iter().all(|r| r.passed);
    Ok(Output {
        stdout: lines.join("\n"),
        code: if ok { EXIT_OK } else { EXIT_INVARIANT },
    })
}

/// `ISOFORM_THREADS`: `0` runs serially, `n` caps the worker count.
pub fn threads_from_env() -> Option<usize> {
    std::env::var("ISOFORM_THREADS").ok().and_then(|s| s.trim().parse().ok())
}

/// Executes a parsed command.
pub fn dispatch(cli: &Cli) -> Output {
    let result = match &cli.command {
        Command::Solve(a) => solve(a, cli.seed),
        Command::WittDecompose(a) => witt_decompose(a),
        Command::ConstructW(a) => construct_w(a, cli.seed),
        Command::Census(a) => census(a, cli.seed, threads_from_env()),
        Command::CheckGroup(a) => check_group(a, cli.seed),
        Command::Selftest(a) => selftest(a),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        Output {
            stdout: String::new(),
            code: code_for(&e),
        }
    })
}

/// Parses the process arguments, runs the command and prints its output.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    let out = dispatch(&cli);
    if !out.stdout.is_empty() {
        // A closed pipe (e.g. `| head`) is not an error worth reporting.
        let mut stdout = std::io::stdout().lock();
        let _ = writeln!(stdout, "{}", out.stdout);
    }
    ExitCode::from(out.code)
}
