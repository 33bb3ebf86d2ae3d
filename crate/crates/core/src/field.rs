//! Prime fields F_p and small extensions F_{p^e}.
//!
//! Elements are plain values; the field object carries the modulus and
//! performs the arithmetic. Both fields implement [`Field`] so the dense
//! linear algebra can run over either.

use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::unipoly::UniPoly;

/// Largest characteristic accepted by [`PrimeField::new`].
pub const MAX_PRIME: u32 = 31;
/// Largest extension degree accepted by [`ExtField::new`].
pub const MAX_EXT_DEGREE: usize = 6;

pub trait Field: Clone + Send + Sync + fmt::Debug {
    type Elem: Copy + Eq + Hash + fmt::Debug + Send + Sync;

    fn characteristic(&self) -> u32;
    /// Number of elements.
    fn order(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    /// Image of an integer under the prime-field embedding.
    fn from_u32(&self, v: u32) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn inv(&self, a: Self::Elem) -> Option<Self::Elem>;
    /// The `index`-th element in a fixed enumeration of the field, `index < order()`.
    fn element(&self, index: u64) -> Self::Elem;

    fn is_zero(&self, a: Self::Elem) -> bool {
        a == self.zero()
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        self.element(rng.gen_range(0..self.order()))
    }

    fn pow(&self, a: Self::Elem, mut exp: u64) -> Self::Elem {
        let mut base = a;
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

pub fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// The field Z/pZ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Range(format!("{p} is not prime")));
        }
        if p > MAX_PRIME {
            return Err(Error::Range(format!("p = {p} exceeds the cap {MAX_PRIME}")));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn reduce_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn characteristic(&self) -> u32 {
        self.p
    }
    fn order(&self) -> u64 {
        self.p as u64
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_u32(&self, v: u32) -> u32 {
        v % self.p
    }
    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        a * b % self.p
    }
    #[inline]
    fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: u32) -> Option<u32> {
        if a % self.p == 0 {
            None
        } else {
            Some(self.pow(a, (self.p - 2) as u64))
        }
    }
    fn element(&self, index: u64) -> u32 {
        index as u32
    }
}

/// Element of an extension field: coefficients of a polynomial of degree < e
/// in the generator, constant term first.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExtFieldElem {
    coeffs: [u8; MAX_EXT_DEGREE],
}

impl ExtFieldElem {
    pub fn coeffs(&self) -> &[u8; MAX_EXT_DEGREE] {
        &self.coeffs
    }

    /// The value if the element lies in the prime subfield.
    pub fn as_prime(&self) -> Option<u32> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0] as u32)
        } else {
            None
        }
    }
}

impl fmt::Debug for ExtFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}a"),
                _ => format!("{c}a^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

/// F_{p^e} = F_p[a]/(m(a)) for the first monic irreducible m of degree e in
/// the enumeration order of coefficient vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtField {
    base: PrimeField,
    degree: usize,
    /// Monic modulus, constant term first, length `degree + 1`.
    modulus: Vec<u32>,
}

impl ExtField {
    pub fn new(p: u32, degree: usize) -> Result<Self> {
        let base = PrimeField::new(p)?;
        if degree == 0 || degree > MAX_EXT_DEGREE {
            return Err(Error::Range(format!(
                "extension degree {degree} outside 1..={MAX_EXT_DEGREE}"
            )));
        }
        let modulus = first_irreducible(&base, degree);
        Ok(ExtField {
            base,
            degree,
            modulus,
        })
    }

    pub fn base(&self) -> &PrimeField {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> ExtFieldElem {
        let mut out = [0u8; MAX_EXT_DEGREE];
        // reduce a possibly longer vector modulo the defining polynomial
        let mut v: Vec<u32> = coeffs.iter().map(|&c| c % self.base.p()).collect();
        self.reduce(&mut v);
        for (i, c) in v.iter().take(self.degree).enumerate() {
            out[i] = *c as u8;
        }
        ExtFieldElem { coeffs: out }
    }

    pub fn embed(&self, v: u32) -> ExtFieldElem {
        self.from_u32(v)
    }

    fn reduce(&self, v: &mut Vec<u32>) {
        let f = &self.base;
        let e = self.degree;
        while v.len() > e {
            let top = v.pop().unwrap();
            if top == 0 {
                continue;
            }
            let k = v.len() - e;
            for i in 0..e {
                v[k + i] = f.sub(v[k + i], f.mul(top, self.modulus[i]));
            }
        }
    }
}

fn first_irreducible(f: &PrimeField, degree: usize) -> Vec<u32> {
    let p = f.p() as u64;
    let count = p.pow(degree as u32);
    for idx in 0..count {
        let mut coeffs = Vec::with_capacity(degree + 1);
        let mut k = idx;
        for _ in 0..degree {
            coeffs.push((k % p) as u32);
            k /= p;
        }
        coeffs.push(1);
        if UniPoly::from_coeffs(f, coeffs.clone()).is_irreducible(f) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Field for ExtField {
    type Elem = ExtFieldElem;

    fn characteristic(&self) -> u32 {
        self.base.p()
    }
    fn order(&self) -> u64 {
        (self.base.p() as u64).pow(self.degree as u32)
    }
    fn zero(&self) -> ExtFieldElem {
        ExtFieldElem {
            coeffs: [0; MAX_EXT_DEGREE],
        }
    }
    fn one(&self) -> ExtFieldElem {
        self.from_u32(1)
    }
    fn from_u32(&self, v: u32) -> ExtFieldElem {
        let mut coeffs = [0u8; MAX_EXT_DEGREE];
        coeffs[0] = (v % self.base.p()) as u8;
        ExtFieldElem { coeffs }
    }
    fn add(&self, a: ExtFieldElem, b: ExtFieldElem) -> ExtFieldElem {
        let mut coeffs = [0u8; MAX_EXT_DEGREE];
        for i in 0..self.degree {
            coeffs[i] = self.base.add(a.coeffs[i] as u32, b.coeffs[i] as u32) as u8;
        }
        ExtFieldElem { coeffs }
    }
    fn sub(&self, a: ExtFieldElem, b: ExtFieldElem) -> ExtFieldElem {
        let mut coeffs = [0u8; MAX_EXT_DEGREE];
        for i in 0..self.degree {
            coeffs[i] = self.base.sub(a.coeffs[i] as u32, b.coeffs[i] as u32) as u8;
        }
        ExtFieldElem { coeffs }
    }
    fn mul(&self, a: ExtFieldElem, b: ExtFieldElem) -> ExtFieldElem {
        let e = self.degree;
        let p = self.base.p();
        let mut prod = [0u32; 2 * MAX_EXT_DEGREE];
        for i in 0..e {
            let ai = a.coeffs[i] as u32;
            if ai == 0 {
                continue;
            }
            for j in 0..e {
                prod[i + j] += ai * b.coeffs[j] as u32;
            }
        }
        for c in prod.iter_mut() {
            *c %= p;
        }
        for k in (e..2 * e - 1).rev() {
            let top = prod[k];
            if top == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..e {
                prod[k - e + i] = (prod[k - e + i] + (p - top) * self.modulus[i]) % p;
            }
        }
        let mut coeffs = [0u8; MAX_EXT_DEGREE];
        for i in 0..e {
            coeffs[i] = prod[i] as u8;
        }
        ExtFieldElem { coeffs }
    }
    fn neg(&self, a: ExtFieldElem) -> ExtFieldElem {
        self.sub(self.zero(), a)
    }
    fn inv(&self, a: ExtFieldElem) -> Option<ExtFieldElem> {
        if self.is_zero(a) {
            None
        } else {
            Some(self.pow(a, self.order() - 2))
        }
    }
    fn element(&self, index: u64) -> ExtFieldElem {
        let p = self.base.p() as u64;
        let mut coeffs = [0u8; MAX_EXT_DEGREE];
        let mut k = index;
        for c in coeffs.iter_mut().take(self.degree) {
            *c = (k % p) as u8;
            k /= p;
        }
        ExtFieldElem { coeffs }
    }
}

/// F_{p^e} with table arithmetic. Elements are encoded as the integer
/// whose base-p digits are the coefficients, the same enumeration as
/// [`ExtField::element`]; integers below p are the prime subfield.
#[derive(Clone)]
pub struct TableField {
    p: u32,
    degree: usize,
    q: u32,
    /// `exp[i] = g^i` for a primitive g, length 2(q-1).
    exp: Arc<Vec<u16>>,
    /// Discrete logarithm; entry 0 unused.
    log: Arc<Vec<u32>>,
    /// Sum table for q ≤ [`TableField::ADD_TABLE_MAX`].
    add: Option<Arc<Vec<u16>>>,
}

impl fmt::Debug for TableField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TableField(F_{}^{})", self.p, self.degree)
    }
}

impl TableField {
    pub const ADD_TABLE_MAX: u32 = 1024;

    /// Fails with a range error unless p^e fits in 16 bits.
    pub fn new(p: u32, degree: usize) -> Result<Self> {
        let ext = ExtField::new(p, degree)?;
        let q = ext.order();
        if q > u16::MAX as u64 {
            return Err(Error::Range(format!("table field of order {q} is too large")));
        }
        let q = q as u32;
        let index = |x: ExtFieldElem| -> u16 {
            x.coeffs()[..degree]
                .iter()
                .rev()
                .fold(0u32, |acc, &c| acc * p + c as u32) as u16
        };
        let mut exp = Vec::with_capacity(2 * (q as usize - 1));
        let mut log = vec![0u32; q as usize];
        for g in 1..q as u64 {
            let gen = ext.element(g);
            exp.clear();
            let mut x = ext.one();
            loop {
                exp.push(index(x));
                x = ext.mul(x, gen);
                if x == ext.one() {
                    break;
                }
            }
            if exp.len() == q as usize - 1 {
                break;
            }
        }
        for i in 0..(q - 1) as usize {
            log[exp[i] as usize] = i as u32;
        }
        let tail: Vec<u16> = exp.clone();
        exp.extend(tail);
        let mut field = TableField {
            p,
            degree,
            q,
            exp: Arc::new(exp),
            log: Arc::new(log),
            add: None,
        };
        if q <= Self::ADD_TABLE_MAX {
            let mut t = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = field.digit_add(a as u16, b as u16);
                }
            }
            field.add = Some(Arc::new(t));
        }
        Ok(field)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The value if the element lies in the prime subfield.
    pub fn as_prime(&self, x: u16) -> Option<u32> {
        ((x as u32) < self.p).then_some(x as u32)
    }

    fn digit_add(&self, mut a: u16, mut b: u16) -> u16 {
        let p = self.p as u16;
        let (mut out, mut place) = (0u32, 1u32);
        for _ in 0..self.degree {
            let d = (a % p + b % p) % p;
            out += d as u32 * place;
            place *= self.p;
            a /= p;
            b /= p;
        }
        out as u16
    }

    fn digit_neg(&self, mut a: u16) -> u16 {
        let p = self.p as u16;
        let (mut out, mut place) = (0u32, 1u32);
        for _ in 0..self.degree {
            let d = (p - a % p) % p;
            out += d as u32 * place;
            place *= self.p;
            a /= p;
        }
        out as u16
    }
}

impl Field for TableField {
    type Elem = u16;

    fn characteristic(&self) -> u32 {
        self.p
    }
    fn order(&self) -> u64 {
        self.q as u64
    }
    fn zero(&self) -> u16 {
        0
    }
    fn one(&self) -> u16 {
        1
    }
    fn from_u32(&self, v: u32) -> u16 {
        (v % self.p) as u16
    }
    fn add(&self, a: u16, b: u16) -> u16 {
        match &self.add {
            Some(t) => t[a as usize * self.q as usize + b as usize],
            None => self.digit_add(a, b),
        }
    }
    fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.digit_neg(b))
    }
    fn mul(&self, a: u16, b: u16) -> u16 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }
    fn neg(&self, a: u16) -> u16 {
        self.digit_neg(a)
    }
    fn inv(&self, a: u16) -> Option<u16> {
        if a == 0 {
            return None;
        }
        let l = self.log[a as usize];
        Some(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize])
    }
    fn element(&self, index: u64) -> u16 {
        index as u16
    }
}

/// A residue together with its modulus, for callers that want checked
/// arithmetic without holding a field object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElem {
    value: u32,
    p: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Inv,
    Neg,
}

impl FieldElem {
    pub fn new(value: u32, p: u32) -> Result<Self> {
        PrimeField::new(p)?;
        Ok(FieldElem { value: value % p, p })
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn field(&self) -> PrimeField {
        PrimeField { p: self.p }
    }

    fn check(&self, other: &Self) -> Result<PrimeField> {
        if self.p != other.p {
            return Err(Error::Modulus(self.p, other.p));
        }
        Ok(self.field())
    }

    pub fn add(self, other: Self) -> Result<Self> {
        let f = self.check(&other)?;
        Ok(FieldElem {
            value: f.add(self.value, other.value),
            p: self.p,
        })
    }

    pub fn mul(self, other: Self) -> Result<Self> {
        let f = self.check(&other)?;
        Ok(FieldElem {
            value: f.mul(self.value, other.value),
            p: self.p,
        })
    }

    pub fn neg(self) -> Self {
        FieldElem {
            value: self.field().neg(self.value),
            p: self.p,
        }
    }

    pub fn inv(self) -> Result<Self> {
        let value = self.field().inv(self.value).ok_or(Error::DivisionByZero)?;
        Ok(FieldElem { value, p: self.p })
    }
}

/// Applies `op` to `a` (and `b` for the binary operations).
pub fn field_arithmetic(a: FieldElem, b: FieldElem, op: FieldOp) -> Result<FieldElem> {
    match op {
        FieldOp::Add => a.add(b),
        FieldOp::Mul => a.mul(b),
        FieldOp::Inv => a.inv(),
        FieldOp::Neg => Ok(a.neg()),
    }
}
