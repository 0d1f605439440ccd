//! Witt decomposition over a field and over Z/p^k.

use isoform::error::Result;
use isoform::quadform::GramForm;
use isoform::ring::RingDescriptor;
use isoform::witt;

fn main() -> Result<()> {
    let f = RingDescriptor::prime_field(3)?;
    let q = GramForm::diagonal(f, &[1, 1, 1, 1, 1]);
    let wd = witt::witt_decompose(&q)?;
    println!("<1,1,1,1,1> over {f}: index {}, anisotropic rank {}", wd.index, wd.anisotropic.rank());

    let r = RingDescriptor::local(5, 4)?;
    let q = GramForm::diagonal(r, &[1, 1, 2, 3]);
    let wd = witt::witt_decompose_local(&q)?;
    println!("over {r}: index {}", wd.index);
    for p in &wd.basis.pairs {
        println!("  e = {:?}, f = {:?}, Q(e) = {}", p.e, p.f, q.eval_quad(&p.e)?);
    }
    println!("{}", serde_json::to_string(&wd.transcript()).expect("serializable"));
    Ok(())
}
