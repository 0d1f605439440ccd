//! The units represented by a Pfister form form a group.

use isoform::error::Result;
use isoform::quadform::PfisterSpec;
use isoform::ring::RingDescriptor;
use isoform::solver;

fn main() -> Result<()> {
    let f = RingDescriptor::prime_field(11)?;
    let spec = PfisterSpec::from_i64(f, &[-1])?;
    let values = solver::value_set(&spec.expand())?;
    println!("values of x² + y² over {f}: {:?}", values.keys().collect::<Vec<_>>());
    println!("{:?}", solver::check_value_group_exhaustive(&spec.expand())?);

    let r = RingDescriptor::local(7, 2)?;
    let spec = PfisterSpec::from_i64(r, &[3, 5])?;
    let report = solver::check_group_law(&spec, r, 50, 0)?;
    println!("over {r}: {report:?}");
    Ok(())
}
