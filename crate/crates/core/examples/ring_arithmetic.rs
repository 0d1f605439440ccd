//! Arithmetic in F_p and Z/p^k: units, inverses, residues, square roots.

use isoform::error::Result;
use isoform::ring::RingDescriptor;

fn main() -> Result<()> {
    let r: RingDescriptor = "zpk:3,3".parse()?;
    println!("ring {r}, modulus {}", r.modulus());
    for a in [1u64, 2, 3, 10, 18] {
        match r.inv(a) {
            Ok(b) => println!("{a} is a unit, inverse {b}, valuation {}", r.valuation(a)),
            Err(e) => println!("{a}: {e} (valuation {})", r.valuation(a)),
        }
    }
    let f = r.residue_field();
    println!("residue of 25 in {f}: {}", r.residue(25));
    let big = RingDescriptor::prime_field(1_000_003)?;
    let root = big.sqrt_residue(4).expect("4 is a square");
    println!("sqrt(4) in {big}: {root}");
    Ok(())
}
