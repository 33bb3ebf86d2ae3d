//! Jordan types at points, generically, and along a non-linear p-point.

use modinv::field::PrimeField;
use modinv::invariants::{generic_jordan_type, jordan_type_at, jordan_type_at_ppoint};
use modinv::modrep::{h_module, mr2_module, regular_module, PPoint};

fn main() -> modinv::Result<()> {
    let h = h_module(3)?;
    println!("H, p = 3: generic Jordan type {}", generic_jordan_type(&h)?);

    let m = mr2_module(5, 2)?;
    let k = PrimeField::new(5)?;
    println!("mr2, p = 5: generic {}", generic_jordan_type(&m)?);
    println!("            at (1:2) {}", jordan_type_at(&m, &k, &[1, 2])?);

    // x₁ + x₁x₂ is a p-point; the regular module pulls back to a free module
    let u = regular_module(3, 2)?;
    let pp = PPoint::new(3, 2, vec![(vec![1, 0], 1), (vec![1, 1], 1)])?;
    println!("regular, p = 3, along x₁ + x₁x₂: {}", jordan_type_at_ppoint(&u, &pp)?);
    Ok(())
}
