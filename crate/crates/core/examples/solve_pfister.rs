//! Representing a unit by a Pfister form over Z/p^k, with a certificate.

use isoform::error::Result;
use isoform::quadform::PfisterSpec;
use isoform::ring::RingDescriptor;
use isoform::solver::{self, RepresentationProblem, SolveOptions};

fn main() -> Result<()> {
    let r = RingDescriptor::local(3, 4)?;
    let spec = PfisterSpec::from_i64(r, &[-1, 2])?;
    for c in [2u64, 5, 7] {
        let problem = RepresentationProblem::new(spec.clone(), c)?;
        let cert = solver::solve_pfister_with(&problem, SolveOptions { seed: 0, fast_paths: false })?;
        println!("Q = {c} over {r}: {:?} witness {:?}", cert.verdict, cert.witness);
        for t in &cert.trace {
            println!("  {}: {}", t.stage, t.detail);
        }
    }
    Ok(())
}
