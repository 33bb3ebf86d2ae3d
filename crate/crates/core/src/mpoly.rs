//! Sparse multivariate polynomials over F_p.
//!
//! Terms are kept sorted by descending graded-lexicographic order with
//! variable 0 largest, so the first term is the leading term.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};

/// Upper bound on the number of variables, including the one added by the
/// Rabinowitsch trick.
pub const MAX_VARS: usize = 12;

/// Exponent vector with cached total degree. The derived order is graded
/// lexicographic.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono {
    deg: u32,
    exps: [u16; MAX_VARS],
}

impl Mono {
    pub fn one() -> Self {
        Mono {
            deg: 0,
            exps: [0; MAX_VARS],
        }
    }

    pub fn from_exps(e: &[u16]) -> Self {
        assert!(e.len() <= MAX_VARS, "too many variables");
        let mut exps = [0u16; MAX_VARS];
        exps[..e.len()].copy_from_slice(e);
        Mono {
            deg: e.iter().map(|&x| x as u32).sum(),
            exps,
        }
    }

    pub fn var(i: usize) -> Self {
        Self::one().with_exp(i, 1)
    }

    pub fn exps(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn with_exp(&self, i: usize, e: u16) -> Self {
        let mut out = *self;
        out.deg = out.deg - out.exps[i] as u32 + e as u32;
        out.exps[i] = e;
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut exps = self.exps;
        for (a, b) in exps.iter_mut().zip(o.exps.iter()) {
            *a += *b;
        }
        Mono {
            deg: self.deg + o.deg,
            exps,
        }
    }

    pub fn divides(&self, o: &Self) -> bool {
        self.deg <= o.deg && self.exps.iter().zip(o.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `self / o` when `o` divides `self`.
    pub fn div(&self, o: &Self) -> Option<Self> {
        if !o.divides(self) {
            return None;
        }
        let mut exps = self.exps;
        for (a, b) in exps.iter_mut().zip(o.exps.iter()) {
            *a -= *b;
        }
        Some(Mono {
            deg: self.deg - o.deg,
            exps,
        })
    }

    pub fn lcm(&self, o: &Self) -> Self {
        let mut exps = self.exps;
        for (a, b) in exps.iter_mut().zip(o.exps.iter()) {
            *a = (*a).max(*b);
        }
        Mono {
            deg: exps.iter().map(|&x| x as u32).sum(),
            exps,
        }
    }

    pub fn is_coprime(&self, o: &Self) -> bool {
        self.exps
            .iter()
            .zip(o.exps.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Graded reverse lexicographic comparison.
    pub fn grevlex_cmp(&self, o: &Self) -> Ordering {
        self.deg.cmp(&o.deg).then_with(|| {
            for i in (0..MAX_VARS).rev() {
                if self.exps[i] != o.exps[i] {
                    return o.exps[i].cmp(&self.exps[i]);
                }
            }
            Ordering::Equal
        })
    }

    pub fn fmt_with(&self, nvars: usize, names: &dyn Fn(usize) -> String) -> String {
        let parts: Vec<String> = (0..nvars)
            .filter(|&i| self.exps[i] > 0)
            .map(|i| match self.exps[i] {
                1 => names(i),
                e => format!("{}^{}", names(i), e),
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e > 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

/// Result of [`MPoly::homogeneity`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Degree(u32),
    Inhomogeneous,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    field: PrimeField,
    nvars: usize,
    terms: Vec<(Mono, u32)>,
}

/// Operation selector for [`poly_arithmetic`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
    Eval(Vec<u32>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyValue {
    Poly(MPoly),
    Scalar(u32),
}

/// `f op g`, or `f(point)` for evaluation (where `g` is ignored).
pub fn poly_arithmetic(f: &MPoly, g: &MPoly, op: PolyOp) -> Result<PolyValue> {
    match op {
        PolyOp::Add => Ok(PolyValue::Poly(f.checked_add(g)?)),
        PolyOp::Mul => Ok(PolyValue::Poly(f.checked_mul(g)?)),
        PolyOp::Eval(pt) => Ok(PolyValue::Scalar(f.eval_fp(&pt)?)),
    }
}

impl MPoly {
    pub fn zero(field: PrimeField, nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "too many variables");
        MPoly {
            field,
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(field: PrimeField, nvars: usize, c: u32) -> Self {
        Self::monomial(field, nvars, Mono::one(), c)
    }

    pub fn one(field: PrimeField, nvars: usize) -> Self {
        Self::constant(field, nvars, 1)
    }

    pub fn var(field: PrimeField, nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        Self::monomial(field, nvars, Mono::var(i), 1)
    }

    pub fn monomial(field: PrimeField, nvars: usize, m: Mono, c: u32) -> Self {
        let mut out = Self::zero(field, nvars);
        let c = c % field.p();
        if c != 0 {
            out.terms.push((m, c));
        }
        out
    }

    /// Builds a polynomial from arbitrary terms; coefficients are reduced and
    /// repeated monomials combined.
    pub fn from_terms<I>(field: PrimeField, nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Mono, u32)>,
    {
        let mut v: Vec<(Mono, u32)> = terms.into_iter().collect();
        for (m, _) in &v {
            debug_assert!(m.exps[nvars..].iter().all(|&e| e == 0));
        }
        v.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut out = Self::zero(field, nvars);
        out.terms = combine_sorted(field, v);
        out
    }

    /// Convenience constructor from exponent slices.
    pub fn from_exp_terms(field: PrimeField, nvars: usize, terms: &[(&[u16], u32)]) -> Self {
        Self::from_terms(
            field,
            nvars,
            terms.iter().map(|(e, c)| {
                assert_eq!(e.len(), nvars);
                (Mono::from_exps(e), *c)
            }),
        )
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Mono, u32)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.deg == 0)
    }

    pub fn constant_value(&self) -> Option<u32> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(m, c)] if m.deg == 0 => Some(*c),
            _ => None,
        }
    }

    /// Leading term in graded-lexicographic order.
    pub fn lead(&self) -> Option<(Mono, u32)> {
        self.terms.first().copied()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.deg)
    }

    pub fn homogeneity(&self) -> Homogeneity {
        match self.terms.first() {
            None => Homogeneity::Zero,
            Some((m, _)) => {
                if self.terms.iter().all(|(n, _)| n.deg == m.deg) {
                    Homogeneity::Degree(m.deg)
                } else {
                    Homogeneity::Inhomogeneous
                }
            }
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneity() != Homogeneity::Inhomogeneous
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.exps[var]).max().unwrap_or(0)
    }

    /// Largest power of `var` dividing the polynomial (0 for the zero polynomial).
    pub fn valuation_in(&self, var: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.exps[var]).min().unwrap_or(0)
    }

    pub fn coeff(&self, m: &Mono) -> u32 {
        self.terms
            .binary_search_by(|(n, _)| m.cmp(n))
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    fn compatible(&self, o: &Self) -> Result<()> {
        if self.field != o.field {
            return Err(Error::Modulus(self.field.p(), o.field.p()));
        }
        if self.nvars != o.nvars {
            return Err(Error::Dimension(format!(
                "{} vs {} variables",
                self.nvars, o.nvars
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        self.compatible(o)?;
        Ok(self.add(o))
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        self.compatible(o)?;
        Ok(self.mul(o))
    }

    /// Sum; panics on incompatible operands (see [`MPoly::checked_add`]).
    pub fn add(&self, o: &Self) -> Self {
        self.lin_comb(1, o, 1)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.lin_comb(1, o, self.field.neg(1))
    }

    pub fn neg(&self) -> Self {
        self.scale(self.field.neg(1))
    }

    /// `a·self + b·o`.
    pub fn lin_comb(&self, a: u32, o: &Self, b: u32) -> Self {
        assert!(self.field == o.field && self.nvars == o.nvars);
        let f = self.field;
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let (x, y) = (&self.terms, &o.terms);
        while i < x.len() || j < y.len() {
            let ord = match (x.get(i), y.get(j)) {
                (Some(s), Some(t)) => t.0.cmp(&s.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    let c = f.mul(a, x[i].1);
                    if c != 0 {
                        out.push((x[i].0, c));
                    }
                    i += 1;
                }
                Ordering::Greater => {
                    let c = f.mul(b, y[j].1);
                    if c != 0 {
                        out.push((y[j].0, c));
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(f.mul(a, x[i].1), f.mul(b, y[j].1));
                    if c != 0 {
                        out.push((x[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        MPoly {
            field: f,
            nvars: self.nvars,
            terms: out,
        }
    }

    pub fn scale(&self, c: u32) -> Self {
        let c = c % self.field.p();
        if c == 0 {
            return Self::zero(self.field, self.nvars);
        }
        let f = self.field;
        MPoly {
            field: f,
            nvars: self.nvars,
            terms: self.terms.iter().map(|&(m, a)| (m, f.mul(a, c))).collect(),
        }
    }

    pub fn mul_term(&self, m: &Mono, c: u32) -> Self {
        let f = self.field;
        let c = c % f.p();
        if c == 0 {
            return Self::zero(f, self.nvars);
        }
        MPoly {
            field: f,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|&(n, a)| (n.mul(m), f.mul(a, c)))
                .collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert!(self.field == o.field && self.nvars == o.nvars);
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.field, self.nvars);
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms[0];
            return o.mul_term(&m, c);
        }
        if o.terms.len() == 1 {
            let (m, c) = o.terms[0];
            return self.mul_term(&m, c);
        }
        let f = self.field;
        let p = f.p() as u64;
        let nv = self.nvars;
        // Dense accumulation when the exponent box is small relative to the work.
        let mut dims = [0usize; MAX_VARS];
        let mut boxsize: usize = 1;
        for (v, d) in dims.iter_mut().enumerate().take(nv) {
            *d = (self.degree_in(v) + o.degree_in(v)) as usize + 1;
            boxsize = boxsize.saturating_mul(*d);
        }
        let work = self.terms.len() * o.terms.len();
        if boxsize <= (1 << 20) && boxsize <= 8 * work + 1024 {
            let mut acc = vec![0u64; boxsize];
            let index = |m: &Mono| -> usize {
                let mut idx = 0usize;
                for v in 0..nv {
                    idx = idx * dims[v] + m.exps[v] as usize;
                }
                idx
            };
            let mut touched = Vec::new();
            for &(ma, ca) in &self.terms {
                for &(mb, cb) in &o.terms {
                    let m = ma.mul(&mb);
                    let k = index(&m);
                    if acc[k] == 0 {
                        touched.push(m);
                    }
                    // keep the slot nonzero-marked even when the residue is 0
                    acc[k] = (acc[k] % p + ca as u64 * cb as u64) % p + p;
                }
            }
            let mut terms: Vec<(Mono, u32)> = touched
                .into_iter()
                .filter_map(|m| {
                    let c = (acc[index(&m)] % p) as u32;
                    (c != 0).then_some((m, c))
                })
                .collect();
            terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
            return MPoly {
                field: f,
                nvars: nv,
                terms,
            };
        }
        let mut v = Vec::with_capacity(work);
        for &(ma, ca) in &self.terms {
            for &(mb, cb) in &o.terms {
                v.push((ma.mul(&mb), f.mul(ca, cb)));
            }
        }
        v.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MPoly {
            field: f,
            nvars: nv,
            terms: combine_sorted(f, v),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.field, self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact quotient `self / g`.
    pub fn divexact(&self, g: &Self) -> Result<Self> {
        self.compatible(g)?;
        let (lm, lc) = g.lead().ok_or(Error::DivisionByZero)?;
        let f = self.field;
        let inv = f.inv(lc).expect("nonzero leading coefficient");
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.lead() {
            let qm = m.div(&lm).ok_or(Error::NotDivisible)?;
            let qc = f.mul(c, inv);
            quot.push((qm, qc));
            rem = rem.sub_scaled_shift(g, &qm, qc);
        }
        Ok(MPoly {
            field: f,
            nvars: self.nvars,
            terms: quot,
        })
    }

    /// Divisibility test by attempting exact division.
    pub fn divides(&self, f: &Self) -> bool {
        f.divexact(self).is_ok()
    }

    /// `self − c·m·g`.
    fn sub_scaled_shift(&self, g: &Self, m: &Mono, c: u32) -> Self {
        let shifted = g.mul_term(m, c);
        self.sub(&shifted)
    }

    /// Scale so the leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some((_, c)) => self.scale(self.field.inv(c).expect("nonzero")),
        }
    }

    pub fn eval_fp(&self, point: &[u32]) -> Result<u32> {
        if point.len() != self.nvars {
            return Err(Error::Dimension(format!(
                "point of length {} for {} variables",
                point.len(),
                self.nvars
            )));
        }
        Ok(self.eval(&self.field, point))
    }

    /// Evaluation at a point over any field of characteristic p.
    pub fn eval<F: Field>(&self, k: &F, point: &[F::Elem]) -> F::Elem {
        debug_assert_eq!(point.len(), self.nvars);
        if self.terms.is_empty() {
            return k.zero();
        }
        let powers: Vec<Vec<F::Elem>> = (0..self.nvars)
            .map(|v| {
                let d = self.degree_in(v) as usize;
                let mut row = Vec::with_capacity(d + 1);
                let mut acc = k.one();
                for _ in 0..=d {
                    row.push(acc);
                    acc = k.mul(acc, point[v]);
                }
                row
            })
            .collect();
        let mut total = k.zero();
        for (m, c) in &self.terms {
            let mut t = k.from_u32(*c);
            for v in 0..self.nvars {
                let e = m.exps[v] as usize;
                if e > 0 {
                    t = k.mul(t, powers[v][e]);
                }
            }
            total = k.add(total, t);
        }
        total
    }

    /// Substitutes `values[i]` for variable `i`; the result lives in the
    /// ring of the values.
    pub fn subs(&self, values: &[MPoly]) -> Result<Self> {
        if values.len() != self.nvars {
            return Err(Error::Dimension(format!(
                "{} substitutions for {} variables",
                values.len(),
                self.nvars
            )));
        }
        let (field, nv) = match values.first() {
            Some(v) => (v.field, v.nvars),
            None => return Ok(self.clone()),
        };
        if values.iter().any(|v| v.field != field || v.nvars != nv) {
            return Err(Error::Dimension("inconsistent substitution values".into()));
        }
        if field != self.field {
            return Err(Error::Modulus(self.field.p(), field.p()));
        }
        let mut cache: Vec<Vec<MPoly>> = values.iter().map(|v| vec![MPoly::one(field, nv), v.clone()]).collect();
        let mut out = MPoly::zero(field, nv);
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(field, nv, *c);
            for v in 0..self.nvars {
                let e = m.exps[v] as usize;
                if e == 0 {
                    continue;
                }
                while cache[v].len() <= e {
                    let next = cache[v].last().unwrap().mul(&values[v]);
                    cache[v].push(next);
                }
                t = t.mul(&cache[v][e]);
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// Sets variable `var` to the constant `c`, keeping the variable count.
    pub fn set_var(&self, var: usize, c: u32) -> Self {
        let f = self.field;
        let mut pw = vec![1u32];
        let d = self.degree_in(var) as usize;
        for i in 1..=d {
            pw.push(f.mul(pw[i - 1], c));
        }
        Self::from_terms(
            f,
            self.nvars,
            self.terms
                .iter()
                .map(|&(m, a)| (m.with_exp(var, 0), f.mul(a, pw[m.exps[var] as usize]))),
        )
    }

    /// Multiplies each term by a power of `var` so that every term has total
    /// degree `deg`.
    pub fn homogenize(&self, var: usize, deg: u32) -> Self {
        Self::from_terms(
            self.field,
            self.nvars,
            self.terms.iter().map(|&(m, a)| {
                debug_assert!(m.deg <= deg);
                (m.with_exp(var, m.exps[var] + (deg - m.deg) as u16), a)
            }),
        )
    }

    /// Drops variable `var`, which must not occur; higher variables shift down.
    pub fn remove_var(&self, var: usize) -> Self {
        assert_eq!(self.degree_in(var), 0, "variable still occurs");
        let terms = self.terms.iter().map(|&(m, c)| {
            let mut e = [0u16; MAX_VARS];
            let mut k = 0;
            for v in 0..self.nvars {
                if v != var {
                    e[k] = m.exps[v];
                    k += 1;
                }
            }
            (Mono::from_exps(&e[..self.nvars - 1]), c)
        });
        Self::from_terms(self.field, self.nvars - 1, terms)
    }

    /// Re-embeds into a ring with `nvars` variables (adding unused ones, or
    /// dropping trailing unused ones).
    pub fn with_nvars(&self, nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS);
        for v in nvars..self.nvars {
            assert_eq!(self.degree_in(v), 0, "variable still occurs");
        }
        MPoly {
            field: self.field,
            nvars,
            terms: self.terms.clone(),
        }
    }

    /// Permutes variables: variable `i` becomes variable `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.nvars);
        Self::from_terms(
            self.field,
            self.nvars,
            self.terms.iter().map(|&(m, c)| {
                let mut e = [0u16; MAX_VARS];
                for (i, &pi) in perm.iter().enumerate() {
                    e[pi] = m.exps[i];
                }
                (Mono::from_exps(&e[..self.nvars]), c)
            }),
        )
    }

    /// Coefficients with respect to `var`, indexed by its exponent; each
    /// coefficient has `var` removed (exponent zero).
    pub fn coeffs_in(&self, var: usize) -> Vec<MPoly> {
        let d = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Mono, u32)>> = vec![Vec::new(); d + 1];
        for &(m, c) in &self.terms {
            buckets[m.exps[var] as usize].push((m.with_exp(var, 0), c));
        }
        buckets
            .into_iter()
            .map(|mut b| {
                // removing one variable from a grlex-sorted list can break the order
                b.sort_unstable_by(|x, y| y.0.cmp(&x.0));
                MPoly {
                    field: self.field,
                    nvars: self.nvars,
                    terms: b,
                }
            })
            .collect()
    }

    /// Inverse of [`MPoly::coeffs_in`].
    pub fn from_coeffs_in(field: PrimeField, nvars: usize, var: usize, coeffs: &[MPoly]) -> Self {
        Self::from_terms(
            field,
            nvars,
            coeffs.iter().enumerate().flat_map(|(k, c)| {
                c.terms
                    .iter()
                    .map(move |&(m, a)| (m.with_exp(var, m.exps[var] + k as u16), a))
            }),
        )
    }

    pub fn fmt_with(&self, names: &dyn Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(m, c)| {
                if m.deg == 0 {
                    format!("{c}")
                } else if *c == 1 {
                    m.fmt_with(self.nvars, names)
                } else {
                    format!("{c}*{}", m.fmt_with(self.nvars, names))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn combine_sorted(f: PrimeField, v: Vec<(Mono, u32)>) -> Vec<(Mono, u32)> {
    let mut out: Vec<(Mono, u32)> = Vec::with_capacity(v.len());
    for (m, c) in v {
        let c = c % f.p();
        match out.last_mut() {
            Some(last) if last.0 == m => last.1 = f.add(last.1, c),
            _ => out.push((m, c)),
        }
    }
    out.retain(|t| t.1 != 0);
    out
}

/// Default variable names `t1, t2, …`.
pub fn chart_name(i: usize) -> String {
    format!("t{}", i + 1)
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(&chart_name))
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly[F{}]({})", self.field.p(), self)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fp(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let f = fp(5);
        let s = MPoly::var(f, 2, 0);
        let t = MPoly::var(f, 2, 1);
        let prod = s.add(&t).mul(&s.sub(&t));
        let expect = MPoly::from_exp_terms(f, 2, &[(&[2, 0], 1), (&[0, 2], 4)]);
        assert_eq!(prod, expect);
    }

    #[test]
    fn evaluation() {
        let f = fp(3);
        let g = MPoly::from_exp_terms(f, 2, &[(&[2, 1], 1)]);
        assert_eq!(
            poly_arithmetic(&g, &g, PolyOp::Eval(vec![2, 1])).unwrap(),
            PolyValue::Scalar(1)
        );
        assert!(g.eval_fp(&[1]).is_err());
    }

    #[test]
    fn additive_identity_and_mismatch() {
        let f = fp(7);
        let g = MPoly::from_exp_terms(f, 2, &[(&[1, 3], 4), (&[0, 0], 2)]);
        assert_eq!(g.add(&MPoly::zero(f, 2)), g);
        assert!(matches!(
            g.checked_add(&MPoly::zero(f, 3)),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn exact_division_examples() {
        let f = fp(5);
        let s2t = MPoly::from_exp_terms(f, 2, &[(&[2, 1], 1)]);
        let st = MPoly::from_exp_terms(f, 2, &[(&[1, 1], 1)]);
        assert_eq!(s2t.divexact(&st).unwrap(), MPoly::var(f, 2, 0));
        assert!(MPoly::zero(f, 2).divexact(&st).unwrap().is_zero());
        let sq = MPoly::from_exp_terms(f, 2, &[(&[2, 0], 1), (&[1, 1], 2), (&[0, 2], 1)]);
        let lin = MPoly::from_exp_terms(f, 2, &[(&[1, 0], 1), (&[0, 1], 1)]);
        assert_eq!(sq.divexact(&lin).unwrap(), lin);
        assert_eq!(st.divexact(&s2t), Err(Error::NotDivisible));
    }

    #[test]
    fn homogeneity_examples() {
        let f = fp(3);
        let a = MPoly::from_exp_terms(f, 2, &[(&[2, 0], 1), (&[1, 1], 1)]);
        let b = MPoly::from_exp_terms(f, 2, &[(&[2, 0], 1), (&[0, 1], 1)]);
        assert_eq!(a.homogeneity(), Homogeneity::Degree(2));
        assert_eq!(b.homogeneity(), Homogeneity::Inhomogeneous);
        assert_eq!(MPoly::zero(f, 2).homogeneity(), Homogeneity::Zero);
    }

    #[test]
    fn coefficient_split_roundtrip() {
        let f = fp(7);
        let g = MPoly::from_exp_terms(
            f,
            3,
            &[(&[2, 0, 1], 3), (&[0, 2, 1], 5), (&[1, 1, 0], 1), (&[0, 0, 3], 2)],
        );
        let cs = g.coeffs_in(2);
        assert_eq!(MPoly::from_coeffs_in(f, 3, 2, &cs), g);
    }

    pub(crate) fn arb_poly(p: u32, nvars: usize, maxdeg: u16, maxterms: usize) -> impl Strategy<Value = MPoly> {
        prop::collection::vec(
            (prop::collection::vec(0..=maxdeg, nvars), 1..p),
            0..=maxterms,
        )
        .prop_map(move |ts| {
            MPoly::from_terms(
                fp(p),
                nvars,
                ts.into_iter().map(|(e, c)| (Mono::from_exps(&e), c)),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn divexact_inverts_multiplication(
            (f, g) in (prop_oneof![Just(2u32), Just(3), Just(5), Just(7)], 1usize..=3)
                .prop_flat_map(|(p, r)| (arb_poly(p, r, 3, 5), arb_poly(p, r, 3, 4)))
        ) {
            prop_assume!(!g.is_zero());
            prop_assert_eq!(f.mul(&g).divexact(&g).unwrap(), f);
        }
    }

    proptest! {
        #[test]
        fn ring_laws(
            (a, b, c) in (arb_poly(5, 3, 3, 5), arb_poly(5, 3, 3, 5), arb_poly(5, 3, 3, 5))
        ) {
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            let pt = [2u32, 3, 4];
            let k = fp(5);
            prop_assert_eq!(
                a.mul(&b).eval(&k, &pt),
                k.mul(a.eval(&k, &pt), b.eval(&k, &pt))
            );
        }
    }
}
