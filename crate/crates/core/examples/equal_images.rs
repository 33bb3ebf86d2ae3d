//! Equal images and equal kernels, and the largest submodule with equal
//! images.

use modinv::invariants::{Config, Invariants};
use modinv::modrep::{parse_zoo_spec, zoo, Limits};

fn main() -> modinv::Result<()> {
    for name in ["regular:p=3,r=2", "mn:p=3,n=2", "mn:p=3,n=4", "vr1:p=3,r=2", "mr2:p=5"] {
        let m = zoo(&parse_zoo_spec(name)?, &Limits::default())?;
        let inv = Invariants::new(m, Config::default());
        let k = inv.generic_kernel()?;
        println!(
            "{name:<16} eip {} ekp {}  kernel dim {} codim {} deg¹ {} ({:?})",
            inv.eip_all()?,
            inv.ekp_all()?,
            k.dim,
            k.codim,
            inv.jdegree(1)?,
            k.confidence
        );
    }
    Ok(())
}
