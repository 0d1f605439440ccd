//! Cartan–Dieudonné factorization and lifting an isometry from F_p to Z/p^k.

use isoform::error::Result;
use isoform::gen;
use isoform::quadform::GramForm;
use isoform::ring::RingDescriptor;
use isoform::witt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<()> {
    let r = RingDescriptor::local(7, 3)?;
    let q = GramForm::from_i64(r, &[vec![2, 7, 0], vec![7, 3, 1], vec![0, 1, 4]])?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let residue = gen::isometry(&q.residue(), 4, &mut rng)?;
    let factors = witt::cartan_dieudonne(&residue)?;
    println!("residue isometry {:?}", residue.matrix().to_rows());
    println!("{} reflections: {:?}", factors.len(), factors);
    let lifted = witt::lift_isometry(&residue, &q)?;
    println!("lift over {r}: {:?}", lifted.matrix().to_rows());
    println!("reduces back: {}", lifted.residue() == residue);
    Ok(())
}
