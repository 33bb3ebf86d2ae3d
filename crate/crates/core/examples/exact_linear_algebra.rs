//! Rank, kernel and determinant over F_p and over an extension F_{p^e}.

use modinv::field::{ExtField, Field, PrimeField};
use modinv::linalg::{determinant, kernel_basis, rank, rref, Mat};

fn main() -> modinv::Result<()> {
    let k = PrimeField::new(5)?;
    let a = Mat::from_rows(&[vec![1, 2, 3], vec![2, 4, 1], vec![0, 1, 1]])?;
    let r = rref(&k, &a);
    println!("rank over F_5: {} (pivots {:?})", rank(&k, &a), r.pivots);
    println!("kernel basis rows: {:?}", kernel_basis(&k, &a).row_vecs());
    println!("det = {}", determinant(&k, &a)?);

    // x^2 + 1 has no root mod 3, so [[0, -1], [1, 0]] only diagonalizes over F_9
    let f9 = ExtField::new(3, 2)?;
    let rot = Mat::from_rows(&[vec![0, 2], vec![1, 0]])?.map(|v| f9.from_u32(v));
    let mut found = 0;
    for i in 0..9 {
        let lam = f9.element(i);
        let shifted = rot.sub(&f9, &Mat::identity(&f9, 2).scale(&f9, lam))?;
        if rank(&f9, &shifted) < 2 {
            found += 1;
            println!("eigenvalue over F_9: {lam:?}");
        }
    }
    assert_eq!(found, 2);
    Ok(())
}
