//! Gröbner bases, radical membership and projective emptiness certificates.

use modinv::field::PrimeField;
use modinv::groebner::{
    buchberger, contains_one, projective_zero_empty, radical_membership, Ideal, DEFAULT_PAIR_BUDGET,
};
use modinv::mpoly::MPoly;

fn main() -> modinv::Result<()> {
    let k = PrimeField::new(7)?;
    let x = MPoly::var(k, 3, 0);
    let y = MPoly::var(k, 3, 1);
    let z = MPoly::var(k, 3, 2);

    // x^2, y^2, z^2 have no common projective zero
    let i = Ideal::new(vec![x.pow(2), y.pow(2), z.pow(2)])?;
    let cert = projective_zero_empty(&i, DEFAULT_PAIR_BUDGET)?;
    println!("x², y², z²: empty = {} via {:?}", cert.empty, cert.route);
    println!("x ∈ √I: {}", radical_membership(&x, &i, DEFAULT_PAIR_BUDGET)?);

    // xy, xz, yz vanish at the three coordinate points
    let j = Ideal::new(vec![x.mul(&y), x.mul(&z), y.mul(&z)])?;
    let cert = projective_zero_empty(&j, DEFAULT_PAIR_BUDGET)?;
    println!("xy, xz, yz: empty = {}, witness {:?}", cert.empty, cert.witness);

    let g = buchberger(&j, DEFAULT_PAIR_BUDGET)?;
    println!("reduced basis ({} elements):", g.len());
    for f in g.polys() {
        println!("  {f}");
    }
    let unit = Ideal::new(vec![x.sub(&MPoly::one(k, 3)), x.clone()])?;
    println!("(x - 1, x) is the unit ideal: {}", contains_one(&unit, DEFAULT_PAIR_BUDGET)?);
    Ok(())
}
