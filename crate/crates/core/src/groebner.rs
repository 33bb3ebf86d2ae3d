//! Buchberger's algorithm in graded reverse lexicographic order, ideal and
//! radical membership, and emptiness of projective zero loci.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet};

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::mpoly::{Mono, MPoly, MAX_VARS};

/// Default cap on the number of S-pairs processed per basis computation.
pub const DEFAULT_PAIR_BUDGET: u64 = 200_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    gens: Vec<MPoly>,
}

impl Ideal {
    /// Zero generators are dropped; at least one nonzero generator is required.
    pub fn new(gens: Vec<MPoly>) -> Result<Self> {
        let gens: Vec<MPoly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        let first = gens
            .first()
            .ok_or_else(|| Error::Degenerate("ideal without nonzero generators".into()))?;
        let (field, nvars) = (first.field(), first.nvars());
        if gens.iter().any(|g| g.field() != field || g.nvars() != nvars) {
            return Err(Error::Dimension("generators from different rings".into()));
        }
        Ok(Ideal { gens })
    }

    pub fn gens(&self) -> &[MPoly] {
        &self.gens
    }

    pub fn nvars(&self) -> usize {
        self.gens[0].nvars()
    }

    pub fn field(&self) -> PrimeField {
        self.gens[0].field()
    }
}

/// Polynomial with terms sorted by descending grevlex order.
#[derive(Clone, Debug, PartialEq, Eq)]
struct GPoly {
    terms: Vec<(Mono, u32)>,
}

fn grevlex_desc(a: &Mono, b: &Mono) -> Ordering {
    b.grevlex_cmp(a)
}

impl GPoly {
    fn from_mpoly(f: &MPoly) -> Self {
        let mut terms = f.terms().to_vec();
        terms.sort_unstable_by(|a, b| grevlex_desc(&a.0, &b.0));
        GPoly { terms }
    }

    fn to_mpoly(&self, field: PrimeField, nvars: usize) -> MPoly {
        MPoly::from_terms(field, nvars, self.terms.iter().copied())
    }

    fn lm(&self) -> &Mono {
        &self.terms[0].0
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn make_monic(&mut self, k: &PrimeField) {
        if let Some(&(_, c)) = self.terms.first() {
            if c != 1 {
                let inv = k.inv(c).expect("nonzero");
                for t in &mut self.terms {
                    t.1 = k.mul(t.1, inv);
                }
            }
        }
    }

    /// `self[from..] − c·m·g`, merged in grevlex order.
    fn sub_mul(&self, from: usize, k: &PrimeField, g: &GPoly, m: &Mono, c: u32) -> GPoly {
        let x = &self.terms[from..];
        let y = &g.terms;
        let mut out = Vec::with_capacity(x.len() + y.len());
        let (mut i, mut j) = (0, 0);
        while i < x.len() || j < y.len() {
            let ym = y.get(j).map(|t| t.0.mul(m));
            let ord = match (x.get(i), ym.as_ref()) {
                (Some(s), Some(t)) => grevlex_desc(&s.0, t),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(x[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((ym.unwrap(), k.neg(k.mul(c, y[j].1))));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = k.sub(x[i].1, k.mul(c, y[j].1));
                    if v != 0 {
                        out.push((x[i].0, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        GPoly { terms: out }
    }
}

/// Full reduction of `f` by `basis` (all monic).
fn reduce(k: &PrimeField, f: &GPoly, basis: &[GPoly]) -> GPoly {
    let mut p = f.clone();
    let mut rem: Vec<(Mono, u32)> = Vec::new();
    let mut start = 0;
    while start < p.terms.len() {
        let (m, c) = p.terms[start];
        match basis.iter().find(|g| g.lm().divides(&m)) {
            Some(g) => {
                let q = m.div(g.lm()).unwrap();
                p = p.sub_mul(start, k, g, &q, c);
                start = 0;
            }
            None => {
                rem.push((m, c));
                start += 1;
            }
        }
    }
    GPoly { terms: rem }
}

/// Reduced Gröbner basis for grevlex, monic, sorted by ascending leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    field: PrimeField,
    nvars: usize,
    polys: Vec<GPoly>,
}

impl GroebnerBasis {
    pub fn polys(&self) -> Vec<MPoly> {
        self.polys
            .iter()
            .map(|g| g.to_mpoly(self.field, self.nvars))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].lm().degree() == 0
    }

    /// Leading monomials in grevlex.
    pub fn leading_monomials(&self) -> Vec<Mono> {
        self.polys.iter().map(|g| *g.lm()).collect()
    }

    /// True when for each variable some leading monomial is a pure power of
    /// it, i.e. the quotient ring is finite dimensional.
    pub fn has_pure_powers(&self) -> bool {
        (0..self.nvars).all(|v| {
            self.polys.iter().any(|g| {
                let m = g.lm();
                m.exp(v) as u32 == m.degree()
            })
        })
    }
}

#[derive(PartialEq, Eq)]
struct Pair {
    deg: u32,
    lcm: Mono,
    i: usize,
    j: usize,
}

impl Ord for Pair {
    fn cmp(&self, o: &Self) -> Ordering {
        // min-heap on (degree, grevlex lcm, indices)
        o.deg
            .cmp(&self.deg)
            .then_with(|| o.lcm.grevlex_cmp(&self.lcm))
            .then_with(|| (o.i, o.j).cmp(&(self.i, self.j)))
    }
}

impl PartialOrd for Pair {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Buchberger with the normal selection strategy, the coprime criterion and
/// the chain criterion. With `stop_at_unit`, returns as soon as a nonzero
/// constant appears.
fn buchberger_impl(ideal: &Ideal, budget: u64, stop_at_unit: bool) -> Result<GroebnerBasis> {
    let k = ideal.field();
    let nvars = ideal.nvars();
    let mut g: Vec<GPoly> = Vec::new();
    let mut alive: Vec<bool> = Vec::new();
    let mut heap = BinaryHeap::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let unit = |k: &PrimeField, nvars| GroebnerBasis {
        field: *k,
        nvars,
        polys: vec![GPoly {
            terms: vec![(Mono::one(), 1)],
        }],
    };

    let add = |h: GPoly,
                   g: &mut Vec<GPoly>,
                   alive: &mut Vec<bool>,
                   heap: &mut BinaryHeap<Pair>,
                   pending: &mut HashSet<(usize, usize)>| {
        let n = g.len();
        for i in 0..n {
            let lcm = g[i].lm().lcm(h.lm());
            heap.push(Pair {
                deg: lcm.degree(),
                lcm,
                i,
                j: n,
            });
            pending.insert((i, n));
        }
        // older elements whose leading monomial is a multiple of the new one
        // stay for pair bookkeeping but are skipped as reducers later
        g.push(h);
        alive.push(true);
    };

    let mut input: Vec<GPoly> = ideal.gens.iter().map(GPoly::from_mpoly).collect();
    input.sort_by(|a, b| a.lm().grevlex_cmp(b.lm()));
    for f in input {
        let mut h = reduce(&k, &f, &g);
        if h.is_zero() {
            continue;
        }
        h.make_monic(&k);
        if h.lm().degree() == 0 && stop_at_unit {
            return Ok(unit(&k, nvars));
        }
        add(h, &mut g, &mut alive, &mut heap, &mut pending);
    }

    let mut processed: u64 = 0;
    while let Some(Pair { lcm, i, j, .. }) = heap.pop() {
        pending.remove(&(i, j));
        let (li, lj) = (*g[i].lm(), *g[j].lm());
        if li.is_coprime(&lj) {
            continue;
        }
        // chain criterion
        let chain = (0..g.len()).any(|l| {
            l != i
                && l != j
                && g[l].lm().divides(&lcm)
                && !pending.contains(&(i.min(l), i.max(l)))
                && !pending.contains(&(j.min(l), j.max(l)))
        });
        if chain {
            continue;
        }
        processed += 1;
        if processed > budget {
            return Err(Error::Resource(format!(
                "S-pair budget of {budget} exhausted"
            )));
        }
        let s = spoly(&k, &g[i], &g[j], &lcm);
        let reducers: Vec<GPoly> = g
            .iter()
            .zip(&alive)
            .filter(|(_, &a)| a)
            .map(|(p, _)| p.clone())
            .collect();
        let mut h = reduce(&k, &s, &reducers);
        if h.is_zero() {
            continue;
        }
        h.make_monic(&k);
        if h.lm().degree() == 0 && stop_at_unit {
            return Ok(unit(&k, nvars));
        }
        for (idx, p) in g.iter().enumerate() {
            if h.lm().divides(p.lm()) {
                alive[idx] = false;
            }
        }
        add(h, &mut g, &mut alive, &mut heap, &mut pending);
    }

    // minimalize and interreduce
    let mut lead: Vec<GPoly> = Vec::new();
    let mut candidates: Vec<GPoly> = g;
    candidates.sort_by(|a, b| a.lm().grevlex_cmp(b.lm()));
    for p in candidates {
        if !lead.iter().any(|q| q.lm().divides(p.lm())) {
            lead.push(p);
        }
    }
    let mut out = Vec::with_capacity(lead.len());
    for idx in 0..lead.len() {
        let others: Vec<GPoly> = lead
            .iter()
            .enumerate()
            .filter(|&(o, _)| o != idx)
            .map(|(_, q)| q.clone())
            .collect();
        let head = GPoly {
            terms: vec![lead[idx].terms[0]],
        };
        let tail = GPoly {
            terms: lead[idx].terms[1..].to_vec(),
        };
        let mut r = reduce(&k, &tail, &others);
        let mut terms = head.terms;
        terms.append(&mut r.terms);
        out.push(GPoly { terms });
    }
    Ok(GroebnerBasis {
        field: k,
        nvars,
        polys: out,
    })
}

fn spoly(k: &PrimeField, a: &GPoly, b: &GPoly, lcm: &Mono) -> GPoly {
    let ma = lcm.div(a.lm()).unwrap();
    let mb = lcm.div(b.lm()).unwrap();
    let scaled = GPoly {
        terms: a.terms.iter().map(|&(m, c)| (m.mul(&ma), c)).collect(),
    };
    let mut s = scaled.sub_mul(0, k, b, &mb, 1);
    // leading terms cancel; drop any exact zero leftovers
    s.terms.retain(|t| t.1 != 0);
    s
}

pub fn buchberger(ideal: &Ideal, budget: u64) -> Result<GroebnerBasis> {
    buchberger_impl(ideal, budget, false)
}

/// Whether 1 lies in the ideal, stopping at the first constant.
pub fn contains_one(ideal: &Ideal, budget: u64) -> Result<bool> {
    Ok(buchberger_impl(ideal, budget, true)?.is_unit())
}

pub fn normal_form(f: &MPoly, g: &GroebnerBasis) -> Result<MPoly> {
    if f.nvars() != g.nvars || f.field() != g.field {
        return Err(Error::Dimension("polynomial and basis from different rings".into()));
    }
    let r = reduce(&g.field, &GPoly::from_mpoly(f), &g.polys);
    Ok(r.to_mpoly(g.field, g.nvars))
}

/// `f ∈ √I`, by checking `1 ∈ I + (1 − z·f)` with a fresh variable `z`.
pub fn radical_membership(f: &MPoly, ideal: &Ideal, budget: u64) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::Degenerate("zero polynomial".into()));
    }
    let nvars = ideal.nvars();
    if f.nvars() != nvars {
        return Err(Error::Dimension("polynomial and ideal from different rings".into()));
    }
    if nvars + 1 > MAX_VARS {
        return Err(Error::Unsupported(format!("more than {} variables", MAX_VARS - 1)));
    }
    let k = ideal.field();
    let mut gens: Vec<MPoly> = ideal.gens.iter().map(|g| g.with_nvars(nvars + 1)).collect();
    let z = MPoly::var(k, nvars + 1, nvars);
    gens.push(MPoly::one(k, nvars + 1).sub(&z.mul(&f.with_nvars(nvars + 1))));
    contains_one(&Ideal::new(gens)?, budget)
}

/// How [`projective_zero_empty`] reached its answer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EmptinessRoute {
    /// P^0: a nonzero form does not vanish at the single point.
    SinglePoint,
    /// Binary forms: common zero iff the gcd is nonconstant.
    Gcd,
    /// Affine chart t_r = 1 by Gröbner basis, then the hyperplane t_r = 0 recursively.
    Charts,
    /// Each variable tested for radical membership.
    Radical,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmptinessCertificate {
    pub empty: bool,
    pub route: EmptinessRoute,
    /// A common zero over F_p, when one exists there.
    pub witness: Option<Vec<u32>>,
}

/// Whether the homogeneous ideal has no zero in P^{r-1} over the algebraic closure.
pub fn projective_zero_empty(ideal: &Ideal, budget: u64) -> Result<EmptinessCertificate> {
    if ideal.gens.iter().any(|g| !g.is_homogeneous()) {
        return Err(Error::Degenerate("generators must be homogeneous".into()));
    }
    let r = ideal.nvars();
    let (empty, route) = match r {
        0 => return Err(Error::Degenerate("no variables".into())),
        1 => (true, EmptinessRoute::SinglePoint),
        2 => (
            crate::gcd::poly_gcd(&ideal.gens)?.is_constant(),
            EmptinessRoute::Gcd,
        ),
        _ => (charts_empty(&ideal.gens, budget)?, EmptinessRoute::Charts),
    };
    let witness = if empty { None } else { fp_witness(ideal) };
    Ok(EmptinessCertificate {
        empty,
        route,
        witness,
    })
}

/// Same question answered by radical membership of every variable.
pub fn projective_zero_empty_radical(ideal: &Ideal, budget: u64) -> Result<bool> {
    let k = ideal.field();
    let r = ideal.nvars();
    for v in 0..r {
        if !radical_membership(&MPoly::var(k, r, v), ideal, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn charts_empty(gens: &[MPoly], budget: u64) -> Result<bool> {
    let r = gens[0].nvars();
    let k = gens[0].field();
    let last = r - 1;
    if r == 1 {
        return Ok(gens.iter().any(|g| !g.is_zero()));
    }
    if r == 2 {
        let nz: Vec<MPoly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        if nz.is_empty() {
            return Ok(false);
        }
        return Ok(crate::gcd::poly_gcd(&nz)?.is_constant());
    }
    let affine: Vec<MPoly> = gens
        .iter()
        .map(|g| g.set_var(last, 1).remove_var(last))
        .filter(|g| !g.is_zero())
        .collect();
    if affine.is_empty() {
        return Ok(false);
    }
    if affine.iter().any(|g| g.is_constant()) {
        // a nonzero constant already
    } else if !contains_one(&Ideal::new(affine)?, budget)? {
        return Ok(false);
    }
    let _ = k;
    let hyper: Vec<MPoly> = gens
        .iter()
        .map(|g| g.set_var(last, 0).remove_var(last))
        .filter(|g| !g.is_zero())
        .collect();
    if hyper.is_empty() {
        return Ok(false);
    }
    charts_empty(&hyper, budget)
}

/// Search P^{r-1}(F_p) for a common zero, normalized with last nonzero coordinate 1.
fn fp_witness(ideal: &Ideal) -> Option<Vec<u32>> {
    let k = ideal.field();
    let r = ideal.nvars();
    projective_points(k.p(), r).find(|pt| ideal.gens.iter().all(|g| g.eval(&k, pt) == 0))
}

/// Points of P^{r-1}(F_p), each with first nonzero coordinate equal to 1.
pub fn projective_points(p: u32, r: usize) -> impl Iterator<Item = Vec<u32>> {
    (0..r).rev().flat_map(move |lead| {
        // coordinates before `lead` are 0, `lead` is 1, the rest are free
        let free = r - lead - 1;
        let count = (p as u64).pow(free as u32);
        (0..count).map(move |mut idx| {
            let mut v = vec![0u32; r];
            v[lead] = 1;
            for c in v.iter_mut().skip(lead + 1) {
                *c = (idx % p as u64) as u32;
                idx /= p as u64;
            }
            v
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{ExtField, Field};

    fn fp(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn poly(k: PrimeField, n: usize, t: &[(&[u16], u32)]) -> MPoly {
        MPoly::from_exp_terms(k, n, t)
    }

    #[test]
    fn basis_examples() {
        let k = fp(5);
        let x = poly(k, 2, &[(&[1, 0], 1)]);
        let y = poly(k, 2, &[(&[0, 1], 1)]);
        let gb = buchberger(&Ideal::new(vec![x.clone(), y.clone()]).unwrap(), 1000).unwrap();
        let mut got = gb.polys();
        got.sort_by(|a, b| a.lead().unwrap().0.cmp(&b.lead().unwrap().0));
        assert_eq!(got, vec![y.clone(), x.clone()]);
        let x2 = poly(k, 2, &[(&[2, 0], 1)]);
        let gb = buchberger(&Ideal::new(vec![x2.clone()]).unwrap(), 1000).unwrap();
        assert_eq!(gb.polys(), vec![x2.clone()]);
        let gb = buchberger(
            &Ideal::new(vec![poly(k, 2, &[(&[2, 0], 1), (&[0, 1], 4)]), y.clone()]).unwrap(),
            1000,
        )
        .unwrap();
        let mut got = gb.polys();
        got.sort_by(|a, b| a.lead().unwrap().0.cmp(&b.lead().unwrap().0));
        assert_eq!(got, vec![y, x2]);
    }

    #[test]
    fn normal_form_examples() {
        let k = fp(7);
        let x = poly(k, 2, &[(&[1, 0], 1)]);
        let y = poly(k, 2, &[(&[0, 1], 1)]);
        let gx = buchberger(&Ideal::new(vec![x.clone()]).unwrap(), 100).unwrap();
        assert!(normal_form(&poly(k, 2, &[(&[2, 0], 1)]), &gx).unwrap().is_zero());
        assert_eq!(normal_form(&y, &gx).unwrap(), y);
        // y − x² in grevlex has leading term x², so x²y ↦ y²; the substitution
        // oracle x² = y gives the same class as x⁴
        let g = buchberger(
            &Ideal::new(vec![poly(k, 2, &[(&[0, 1], 1), (&[2, 0], 6)])]).unwrap(),
            100,
        )
        .unwrap();
        let a = normal_form(&poly(k, 2, &[(&[2, 1], 1)]), &g).unwrap();
        let b = normal_form(&poly(k, 2, &[(&[4, 0], 1)]), &g).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn radical_examples() {
        let k = fp(3);
        let x = poly(k, 2, &[(&[1, 0], 1)]);
        let x2 = poly(k, 2, &[(&[2, 0], 1)]);
        let y = poly(k, 2, &[(&[0, 1], 1)]);
        assert!(radical_membership(&x, &Ideal::new(vec![x2]).unwrap(), 1000).unwrap());
        assert!(!radical_membership(&x, &Ideal::new(vec![y]).unwrap(), 1000).unwrap());
        let i = Ideal::new(vec![
            poly(k, 3, &[(&[1, 1, 0], 1)]),
            poly(k, 3, &[(&[1, 0, 1], 1)]),
            poly(k, 3, &[(&[0, 1, 1], 1)]),
        ])
        .unwrap();
        let t1 = poly(k, 3, &[(&[1, 0, 0], 1)]);
        assert!(!radical_membership(&t1, &i, 1000).unwrap());
        // point witness: (1:0:0) kills every generator but not t1
        assert!(i.gens().iter().all(|g| g.eval_fp(&[1, 0, 0]).unwrap() == 0));
    }

    #[test]
    fn projective_examples() {
        let k3 = fp(3);
        let i = Ideal::new(vec![poly(k3, 2, &[(&[2, 0], 1)]), poly(k3, 2, &[(&[0, 2], 1)])]).unwrap();
        assert!(projective_zero_empty(&i, 1000).unwrap().empty);
        let s = Ideal::new(vec![poly(k3, 2, &[(&[1, 0], 1)])]).unwrap();
        let c = projective_zero_empty(&s, 1000).unwrap();
        assert!(!c.empty);
        assert_eq!(c.witness, Some(vec![0, 1]));
        let k5 = fp(5);
        let q = Ideal::new(vec![poly(k5, 2, &[(&[2, 0], 1), (&[0, 2], 1)])]).unwrap();
        let c = projective_zero_empty(&q, 1000).unwrap();
        assert!(!c.empty);
        let w = c.witness.unwrap();
        assert_eq!(q.gens()[0].eval_fp(&w).unwrap(), 0);
        // (1:2) is one of the two F_5 zeros
        assert_eq!(q.gens()[0].eval_fp(&[1, 2]).unwrap(), 0);
    }

    #[test]
    fn reduced_basis_is_autoreduced() {
        let k = fp(7);
        let i = Ideal::new(vec![
            poly(k, 3, &[(&[2, 0, 0], 1), (&[0, 1, 1], 3), (&[0, 0, 2], 1)]),
            poly(k, 3, &[(&[1, 1, 0], 1), (&[0, 0, 2], 5)]),
            poly(k, 3, &[(&[0, 2, 0], 2), (&[1, 0, 1], 1)]),
        ])
        .unwrap();
        let gb = buchberger(&i, 10_000).unwrap();
        let lms = gb.leading_monomials();
        for (a, ma) in lms.iter().enumerate() {
            for (b, mb) in lms.iter().enumerate() {
                if a != b {
                    assert!(!ma.divides(mb));
                }
            }
        }
        for g in i.gens() {
            assert!(normal_form(g, &gb).unwrap().is_zero());
        }
        let polys = gb.polys();
        for a in 0..polys.len() {
            for b in a + 1..polys.len() {
                let ga = GPoly::from_mpoly(&polys[a]);
                let gb_ = GPoly::from_mpoly(&polys[b]);
                let lcm = ga.lm().lcm(gb_.lm());
                let s = spoly(&k, &ga, &gb_, &lcm);
                assert!(normal_form(&s.to_mpoly(k, 3), &gb).unwrap().is_zero());
            }
        }
        assert!(gb.has_pure_powers() || !projective_zero_empty(&i, 10_000).unwrap().empty);
    }

    #[test]
    fn tiny_budget_is_reported() {
        let k = fp(7);
        let i = Ideal::new(vec![
            poly(k, 3, &[(&[3, 0, 0], 1), (&[0, 1, 2], 3), (&[0, 0, 1], 1)]),
            poly(k, 3, &[(&[1, 2, 0], 1), (&[0, 0, 2], 5), (&[1, 0, 0], 1)]),
            poly(k, 3, &[(&[0, 3, 0], 2), (&[1, 0, 1], 1)]),
        ])
        .unwrap();
        assert!(matches!(buchberger(&i, 1), Err(Error::Resource(_))));
    }

    fn random_form(rng: &mut impl rand::Rng, k: PrimeField, r: usize, d: u16) -> MPoly {
        let monos: Vec<Vec<u16>> = all_exponents(r, d);
        MPoly::from_terms(
            k,
            r,
            monos
                .into_iter()
                .filter_map(|e| {
                    rng.gen_bool(0.4)
                        .then(|| (Mono::from_exps(&e), rng.gen_range(1..k.p())))
                }),
        )
    }

    fn all_exponents(r: usize, d: u16) -> Vec<Vec<u16>> {
        if r == 1 {
            return vec![vec![d]];
        }
        (0..=d)
            .flat_map(|a| {
                all_exponents(r - 1, d - a).into_iter().map(move |mut rest| {
                    rest.insert(0, a);
                    rest
                })
            })
            .collect()
    }

    fn ext_search_finds_zero(ideal: &Ideal, e: usize) -> bool {
        let k = ExtField::new(ideal.field().p(), e).unwrap();
        let r = ideal.nvars();
        let q = k.order();
        let total = q.pow(r as u32);
        (1..total).any(|mut idx| {
            let pt: Vec<_> = (0..r)
                .map(|_| {
                    let x = k.element(idx % q);
                    idx /= q;
                    x
                })
                .collect();
            ideal.gens().iter().all(|g| k.is_zero(g.eval(&k, &pt)))
        })
    }

    #[test]
    fn emptiness_agrees_with_point_search() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for &(p, r) in &[(2u32, 2usize), (3, 2), (2, 3), (3, 3), (5, 3)] {
            let k = fp(p);
            for _ in 0..12 {
                let gens: Vec<MPoly> = (0..r)
                    .map(|_| random_form(&mut rng, k, r, 2))
                    .filter(|g| !g.is_zero())
                    .collect();
                let Ok(ideal) = Ideal::new(gens) else { continue };
                let cert = projective_zero_empty(&ideal, 50_000).unwrap();
                let radical = projective_zero_empty_radical(&ideal, 50_000).unwrap();
                assert_eq!(cert.empty, radical);
                let e = if (p as u64).pow(2 * r as u32) <= 20_000 { 2 } else { 1 };
                let found = ext_search_finds_zero(&ideal, e);
                if cert.empty {
                    assert!(!found, "sampled zero contradicts emptiness");
                }
                if cert.witness.is_some() {
                    assert!(found);
                }
            }
        }
    }

    #[test]
    fn binary_forms_gcd_and_radical_routes_agree() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for trial in 0..50 {
            let p = [2u32, 3, 5, 7][trial % 4];
            let k = fp(p);
            let gens: Vec<MPoly> = (0..2)
                .map(|_| random_form(&mut rng, k, 2, 1 + (trial % 3) as u16))
                .filter(|g| !g.is_zero())
                .collect();
            let Ok(ideal) = Ideal::new(gens) else { continue };
            let gcd_route = projective_zero_empty(&ideal, 10_000).unwrap();
            assert_eq!(gcd_route.route, EmptinessRoute::Gcd);
            assert_eq!(
                gcd_route.empty,
                projective_zero_empty_radical(&ideal, 10_000).unwrap()
            );
        }
    }

    #[test]
    fn projective_point_count() {
        assert_eq!(projective_points(3, 3).count(), 13);
        assert_eq!(projective_points(5, 2).count(), 6);
        assert_eq!(projective_points(2, 1).collect::<Vec<_>>(), vec![vec![1]]);
    }
}
