//! Lifting a residue isotropic vector to an exact one by Newton steps.

use isoform::error::Result;
use isoform::quadform::GramForm;
use isoform::ring::RingDescriptor;
use isoform::witt;

fn main() -> Result<()> {
    for k in 1..=6 {
        let r = RingDescriptor::local(3, k)?;
        let q = GramForm::diagonal(r, &[1, 2]);
        let v = witt::hensel_lift_isotropic(&q, &[1, 1])?;
        println!("{r}: x² + 2y² vanishes at {v:?}");
    }
    Ok(())
}
