//! Over Z/p^k: a free totally isotropic summand W with a unimodular
//! isotropic generator of W ∩ N.

use isoform::error::Result;
use isoform::gen;
use isoform::keygeom;
use isoform::ring::RingDescriptor;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<()> {
    let r = RingDescriptor::local(5, 3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let q = gen::hyperbolic_residue_form(r, 3, &mut rng);
    let n_sum = gen::nondegenerate_summand(&q, 4, &mut rng);
    println!("Q = {:?}", q.gram().to_rows());
    println!("N = {:?}", n_sum.basis().to_rows());
    let res = keygeom::prop_mod_construct(&q, &n_sum, 0)?;
    println!("W = {:?}", res.w.basis().to_rows());
    let w = res.generator.clone().expect("generator");
    println!("w = {w:?}, Q(w) = {}", q.eval_quad(&w)?);
    println!("{:?}", keygeom::check_postconditions(&q, &n_sum, &res)?);
    Ok(())
}
