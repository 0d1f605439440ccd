//! A Lagrangian of a hyperbolic space meeting a non-degenerate subspace in a
//! line, and the stratification of all Lagrangians by that meet.

use isoform::error::Result;
use isoform::flagcount;
use isoform::gen;
use isoform::keygeom;
use isoform::quadform::GramForm;
use isoform::ring::RingDescriptor;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<()> {
    let f = RingDescriptor::prime_field(5)?;
    let q = GramForm::hyperbolic(f, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let p = gen::nondegenerate_subspace(&q, 4, &mut rng);
    println!("P = {:?}", p.basis().to_rows());
    let res = keygeom::find_meeting_lagrangian(&q, &p, 0)?;
    println!("W = {:?}", res.residue_subspace().basis().to_rows());
    println!("W ∩ P spanned by {:?}", res.generator);
    println!("strata by dim(W ∩ P): {:?}", flagcount::z_strata(&q, &p)?);
    Ok(())
}
