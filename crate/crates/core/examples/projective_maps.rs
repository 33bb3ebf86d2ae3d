//! Morphisms between projective spaces given by tuples of forms: gcd
//! reduction, degrees, composition and restriction to a line.

use modinv::field::PrimeField;
use modinv::mpoly::MPoly;
use modinv::projmaps::{veronese, DefiningSystem};

fn main() -> modinv::Result<()> {
    let k = PrimeField::new(5)?;
    let s = MPoly::var(k, 2, 0);
    let t = MPoly::var(k, 2, 1);

    let nu2 = veronese(k, 2, 2)?;
    let nu3 = veronese(k, 3, 3)?;
    println!("deg ν₂ = {}, deg ν₃ on P² = {}", nu2.degree()?, nu3.degree()?);

    // (s³, s²t) has the common factor s²: the morphism is the identity
    let sys = DefiningSystem::new(vec![s.pow(3), s.pow(2).mul(&t)])?;
    let (reduced, h) = sys.reduce()?;
    println!("reduce (s³, s²t): ({}) with common factor {h}", render(&reduced));

    let composite = nu3.compose(&nu2)?;
    println!("deg(ν₃ ∘ ν₂) = {}", composite.degree()?);

    let restricted = nu3.line_restrict(&[1, 0, 0], &[0, 1, 1])?;
    println!("ν₃ on the line through (1:0:0), (0:1:1): degree {}", restricted.degree()?);
    Ok(())
}

fn render(s: &DefiningSystem) -> String {
    s.entries().iter().map(|f| f.to_string()).collect::<Vec<_>>().join(", ")
}
