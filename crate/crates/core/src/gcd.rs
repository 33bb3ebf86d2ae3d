//! Greatest common divisors of multivariate polynomials.
//!
//! Homogeneous families are dehomogenized in the last variable, so the binary
//! case reduces to a univariate gcd. Everything else goes through a recursive
//! primitive PRS on the highest variable present.

use crate::error::{Error, Result};
use crate::mpoly::MPoly;
use crate::unipoly::UniPoly;

/// Monic (graded-lex) gcd of a family; zero entries are ignored.
pub fn poly_gcd(fs: &[MPoly]) -> Result<MPoly> {
    let nonzero: Vec<&MPoly> = fs.iter().filter(|f| !f.is_zero()).collect();
    let first = *nonzero.first().ok_or(Error::UndefinedGcd)?;
    let field = first.field();
    let nvars = first.nvars();
    if nonzero.iter().any(|f| f.field() != field || f.nvars() != nvars) {
        return Err(Error::Dimension("gcd of incompatible polynomials".into()));
    }
    let homogeneous = nonzero.iter().all(|f| f.is_homogeneous());
    let g = if homogeneous && nvars >= 2 {
        homogeneous_gcd(&nonzero)
    } else {
        let mut g = first.clone();
        for f in &nonzero[1..] {
            if g.is_constant() {
                break;
            }
            g = gcd_rec(&g, f);
        }
        g
    };
    Ok(g.monic())
}

/// gcd of two polynomials (either may be zero, not both).
pub fn gcd2(a: &MPoly, b: &MPoly) -> Result<MPoly> {
    poly_gcd(&[a.clone(), b.clone()])
}

fn homogeneous_gcd(fs: &[&MPoly]) -> MPoly {
    let nvars = fs[0].nvars();
    let v = nvars - 1;
    let val = fs.iter().map(|f| f.valuation_in(v)).min().unwrap();
    let mut g = fs[0].set_var(v, 1);
    for f in &fs[1..] {
        if g.is_constant() {
            break;
        }
        g = gcd_rec(&g, &f.set_var(v, 1));
    }
    let deg = g.total_degree().unwrap_or(0);
    let mut h = g.homogenize(v, deg);
    if val > 0 {
        let m = crate::mpoly::Mono::var(v).with_exp(v, val);
        h = h.mul_term(&m, 1);
    }
    h
}

fn top_var(f: &MPoly) -> Option<usize> {
    (0..f.nvars()).rev().find(|&v| f.degree_in(v) > 0)
}

/// gcd up to a nonzero scalar.
fn gcd_rec(a: &MPoly, b: &MPoly) -> MPoly {
    let field = a.field();
    let nv = a.nvars();
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one(field, nv);
    }
    let v = top_var(a).max(top_var(b)).unwrap();
    if (0..v).all(|w| a.degree_in(w) == 0 && b.degree_in(w) == 0) {
        return univariate_gcd(a, b, v);
    }
    let ca = content(a, v);
    let cb = content(b, v);
    let c = gcd_rec(&ca, &cb);
    let mut f = a.divexact(&ca).expect("content divides");
    let mut g = b.divexact(&cb).expect("content divides");
    if f.degree_in(v) < g.degree_in(v) {
        std::mem::swap(&mut f, &mut g);
    }
    let pp = loop {
        if g.degree_in(v) == 0 {
            // g is primitive of degree 0 in v, hence a unit
            break MPoly::one(field, nv);
        }
        let r = prem(&f, &g, v);
        if r.is_zero() {
            break g;
        }
        let r = primitive_part(&r, v);
        f = g;
        g = r;
    };
    c.mul(&pp)
}

fn univariate_gcd(a: &MPoly, b: &MPoly, v: usize) -> MPoly {
    let field = a.field();
    let to_uni = |f: &MPoly| {
        let mut c = vec![0u32; f.degree_in(v) as usize + 1];
        for (m, x) in f.terms() {
            c[m.exp(v) as usize] = *x;
        }
        UniPoly::from_coeffs(&field, c)
    };
    let g = to_uni(a).gcd(&field, &to_uni(b));
    MPoly::from_terms(
        field,
        a.nvars(),
        g.coeffs()
            .iter()
            .enumerate()
            .map(|(k, &c)| (crate::mpoly::Mono::one().with_exp(v, k as u16), c)),
    )
}

/// gcd of the coefficients of `f` viewed as a polynomial in `v`.
fn content(f: &MPoly, v: usize) -> MPoly {
    let cs = f.coeffs_in(v);
    let mut g = MPoly::zero(f.field(), f.nvars());
    for c in cs.iter().filter(|c| !c.is_zero()) {
        g = gcd_rec(&g, c);
        if g.is_constant() {
            return MPoly::one(f.field(), f.nvars());
        }
    }
    g
}

fn primitive_part(f: &MPoly, v: usize) -> MPoly {
    let c = content(f, v);
    f.divexact(&c).expect("content divides").monic()
}

/// Pseudo-remainder of `f` by `g` in the variable `v`.
fn prem(f: &MPoly, g: &MPoly, v: usize) -> MPoly {
    let dg = g.degree_in(v);
    let gc = g.coeffs_in(v);
    let lg = &gc[dg as usize];
    let mut r = f.clone();
    loop {
        if r.is_zero() {
            return r;
        }
        let dr = r.degree_in(v);
        if dr < dg {
            return r;
        }
        let lr = r.coeffs_in(v).swap_remove(dr as usize);
        let shift = crate::mpoly::Mono::var(v).with_exp(v, dr - dg);
        r = r.mul(lg).sub(&g.mul(&lr).mul_term(&shift, 1));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::mpoly::tests::arb_poly;
    use proptest::prelude::*;

    fn fp(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn monomial_gcd() {
        let f = fp(5);
        let a = MPoly::from_exp_terms(f, 2, &[(&[2, 1], 1)]);
        let b = MPoly::from_exp_terms(f, 2, &[(&[1, 2], 3)]);
        assert_eq!(
            poly_gcd(&[a, b]).unwrap(),
            MPoly::from_exp_terms(f, 2, &[(&[1, 1], 1)])
        );
    }

    #[test]
    fn veronese_tuple_is_reduced() {
        let f = fp(3);
        let a2 = MPoly::from_exp_terms(f, 2, &[(&[2, 0], 1)]);
        let ab = MPoly::from_exp_terms(f, 2, &[(&[1, 1], 2)]);
        let b2 = MPoly::from_exp_terms(f, 2, &[(&[0, 2], 1)]);
        assert!(poly_gcd(&[a2, ab, b2]).unwrap().is_constant());
    }

    #[test]
    fn all_zero_is_undefined() {
        let f = fp(3);
        assert_eq!(
            poly_gcd(&[MPoly::zero(f, 2), MPoly::zero(f, 2)]),
            Err(Error::UndefinedGcd)
        );
    }

    #[test]
    fn inhomogeneous_trivariate() {
        let f = fp(7);
        // (x + y*z + 1) * (x^2 - z), (x + y*z + 1) * (y + 3)
        let h = MPoly::from_exp_terms(f, 3, &[(&[1, 0, 0], 1), (&[0, 1, 1], 1), (&[0, 0, 0], 1)]);
        let g1 = MPoly::from_exp_terms(f, 3, &[(&[2, 0, 0], 1), (&[0, 0, 1], 6)]);
        let g2 = MPoly::from_exp_terms(f, 3, &[(&[0, 1, 0], 1), (&[0, 0, 0], 3)]);
        let g = poly_gcd(&[h.mul(&g1), h.mul(&g2)]).unwrap();
        assert_eq!(g, h.monic());
    }

    /// Binary forms split into linear factors over F_p, used as a factorization
    /// oracle: the gcd of two products of linear forms is the product over the
    /// shared factors with the smaller multiplicity.
    #[test]
    fn products_of_linear_forms_oracle() {
        use rand::{Rng, SeedableRng};
        let f = fp(5);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        // the six points of P^1(F_5) as linear forms a*s + b*t
        let lin: Vec<MPoly> = (0..6u32)
            .map(|k| {
                if k == 5 {
                    MPoly::from_exp_terms(f, 2, &[(&[0, 1], 1)])
                } else {
                    MPoly::from_exp_terms(f, 2, &[(&[1, 0], 1), (&[0, 1], k)])
                }
            })
            .collect();
        for _ in 0..60 {
            let ea: Vec<u32> = (0..6).map(|_| rng.gen_range(0..3)).collect();
            let eb: Vec<u32> = (0..6).map(|_| rng.gen_range(0..3)).collect();
            let prod = |e: &[u32]| {
                e.iter()
                    .zip(&lin)
                    .fold(MPoly::one(f, 2), |acc, (&k, l)| acc.mul(&l.pow(k)))
            };
            let emin: Vec<u32> = ea.iter().zip(&eb).map(|(a, b)| *a.min(b)).collect();
            let got = poly_gcd(&[prod(&ea), prod(&eb)]).unwrap();
            assert_eq!(got, prod(&emin).monic());
        }
    }

    fn homogeneous_part(g: &MPoly) -> MPoly {
        match g.total_degree() {
            None => g.clone(),
            Some(d) => MPoly::from_terms(
                g.field(),
                g.nvars(),
                g.terms().iter().copied().filter(|(m, _)| m.degree() == d),
            ),
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn gcd_scales_with_common_factor(
            (f, g, h) in (arb_poly(5, 3, 2, 3), arb_poly(5, 3, 2, 3), arb_poly(5, 3, 2, 3))
        ) {
            let (f, g, h) = (homogeneous_part(&f), homogeneous_part(&g), homogeneous_part(&h));
            prop_assume!(!h.is_zero() && !(f.is_zero() && g.is_zero()));
            let lhs = poly_gcd(&[h.mul(&f), h.mul(&g)]).unwrap();
            let rhs = h.mul(&poly_gcd(&[f.clone(), g.clone()]).unwrap()).monic();
            prop_assert_eq!(&lhs, &rhs);
            prop_assert!(lhs.is_homogeneous());
            prop_assert!(lhs.divides(&h.mul(&f)));
        }

        #[test]
        fn gcd_invariant_under_variable_permutation(
            (f, g, h) in (arb_poly(3, 3, 2, 3), arb_poly(3, 3, 2, 3), arb_poly(3, 3, 2, 3))
        ) {
            prop_assume!(!h.is_zero() && !f.is_zero());
            let a = h.mul(&f);
            let b = h.mul(&g);
            let perm = [2usize, 0, 1];
            let g1 = poly_gcd(&[a.clone(), b.clone()]).unwrap().permute_vars(&perm).monic();
            let g2 = poly_gcd(&[a.permute_vars(&perm), b.permute_vars(&perm)]).unwrap();
            prop_assert_eq!(g1, g2);
        }
    }
}
