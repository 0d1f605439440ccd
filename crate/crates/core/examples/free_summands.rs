//! Subspaces over F_p and free direct summands over Z/p^k.

use isoform::error::Result;
use isoform::linalg::{certify_free_summand, echelonize, kernel_generator, Matrix};
use isoform::ring::RingDescriptor;

fn main() -> Result<()> {
    let f = RingDescriptor::prime_field(5)?;
    let a = echelonize(&Matrix::from_i64(f, &[vec![1, 0, 1, 0], vec![0, 1, 0, 1]])?)?;
    let b = echelonize(&Matrix::from_i64(f, &[vec![1, 1, 1, 1], vec![0, 0, 1, 0]])?)?;
    let meet = a.intersect(&b)?;
    println!("dim A ∩ B = {}, basis {:?}", meet.dim(), meet.basis().to_rows());

    let r = RingDescriptor::local(3, 2)?;
    let rows = Matrix::from_i64(r, &[vec![1, 3, 0], vec![3, 1, 6]])?;
    let summand = certify_free_summand(&rows)?;
    println!("free summand of rank {} in rank {}", summand.rank(), summand.ambient_rank());
    println!("completed basis {:?}", summand.completed_basis().to_rows());

    let map = Matrix::from_i64(r, &[vec![1, 0, 2], vec![0, 1, 5]])?;
    println!("unimodular kernel generator {:?}", kernel_generator(&map)?);
    Ok(())
}
