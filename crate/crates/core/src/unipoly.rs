//! Dense univariate polynomials over a prime field.
//!
//! Used for the two-variable gcd fast path and for finding irreducible
//! moduli of extension fields.

use crate::field::{Field, PrimeField};

/// Coefficients from the constant term upward, without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<u32>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(f: &PrimeField, coeffs: Vec<u32>) -> Self {
        let mut coeffs: Vec<u32> = coeffs.into_iter().map(|c| c % f.p()).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn monomial(f: &PrimeField, c: u32, k: usize) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = c;
        Self::from_coeffs(f, v)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// Multiplicity of the root 0.
    pub fn low_order(&self) -> usize {
        self.coeffs.iter().take_while(|&&c| c == 0).count()
    }

    pub fn add(&self, f: &PrimeField, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                f.add(a, b)
            })
            .collect();
        Self::from_coeffs(f, v)
    }

    pub fn sub(&self, f: &PrimeField, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                f.sub(a, b)
            })
            .collect();
        Self::from_coeffs(f, v)
    }

    pub fn mul(&self, f: &PrimeField, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let p = f.p() as u64;
        let mut acc = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u64 * b as u64) % p;
            }
        }
        Self::from_coeffs(f, acc.into_iter().map(|c| c as u32).collect())
    }

    pub fn scale(&self, f: &PrimeField, c: u32) -> Self {
        Self::from_coeffs(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, f: &PrimeField, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let inv_lead = f.inv(divisor.lead()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![0u32; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k];
            if c == 0 {
                continue;
            }
            let q = f.mul(c, inv_lead);
            quot[k - dd] = q;
            for (i, &b) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + i] = f.sub(rem[k - dd + i], f.mul(q, b));
            }
        }
        rem.truncate(dd);
        (Self::from_coeffs(f, quot), Self::from_coeffs(f, rem))
    }

    pub fn rem(&self, f: &PrimeField, divisor: &Self) -> Self {
        self.div_rem(f, divisor).1
    }

    pub fn monic(&self, f: &PrimeField) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = f.inv(self.lead()).expect("nonzero");
        self.scale(f, inv)
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, f: &PrimeField, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(f, &b);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn eval(&self, f: &PrimeField, x: u32) -> u32 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `base^exp mod modulus`.
    pub fn pow_mod(&self, f: &PrimeField, mut exp: u64, modulus: &Self) -> Self {
        let mut result = Self::from_coeffs(f, vec![1]).rem(f, modulus);
        let mut base = self.rem(f, modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                result = result.mul(f, &base).rem(f, modulus);
            }
            base = base.mul(f, &base).rem(f, modulus);
            exp >>= 1;
        }
        result
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self, f: &PrimeField) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(n) => n,
        };
        let x = Self::monomial(f, 1, 1);
        let frob = |k: usize| -> Self {
            // x^(p^k) mod self
            let mut acc = x.clone();
            for _ in 0..k {
                acc = acc.pow_mod(f, f.p() as u64, self);
            }
            acc
        };
        if !frob(n).sub(f, &x).rem(f, self).is_zero() {
            return false;
        }
        for q in prime_divisors(n) {
            let g = frob(n / q).sub(f, &x).gcd(f, self);
            if g.degree() != Some(0) {
                return false;
            }
        }
        true
    }
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
