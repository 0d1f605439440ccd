//! Gram forms, tensor products, Pfister expansions and diagonalization.

use isoform::error::Result;
use isoform::quadform::{GramForm, PfisterSpec};
use isoform::ring::RingDescriptor;

fn main() -> Result<()> {
    let f = RingDescriptor::prime_field(7)?;
    let spec = PfisterSpec::from_i64(f, &[2, 3])?;
    let q = spec.expand();
    println!("<<2,3>> over {f}: diag {:?}", q.diagonal_entries());

    let binary = GramForm::diagonal(f, &[1, -2]);
    let square = binary.tensor(&binary)?;
    println!("<1,-2> ⊗ <1,-2>: diag {:?}", square.diagonal_entries());

    let g = GramForm::from_i64(f, &[vec![0, 1, 2], vec![1, 0, 3], vec![2, 3, 1]])?;
    let (d, t) = g.diagonalize()?;
    println!("diagonalized {:?} with basis columns {:?}", d.diagonal_entries(), t.to_rows());
    println!("det {} nondegenerate {}", g.determinant(), g.is_nondegenerate());
    Ok(())
}
