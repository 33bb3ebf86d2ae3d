//! Minors of a block of `θ^j` as forms, and emptiness of its rank-drop locus.
//!
//! Minors are never expanded symbolically: a d×d minor is a form of degree
//! j·d, so it is recovered exactly by interpolation from its values on a grid
//! over an extension field with more than j·d elements.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Config;
use crate::error::{Error, Result};
use crate::field::{ExtField, ExtFieldElem, Field, PrimeField, TableField, MAX_EXT_DEGREE};
use crate::gcd::gcd2;
use crate::groebner::{contains_one, Ideal};
use crate::linalg::{
    binomial, certify_generic_rank, combinations, determinant, inverse, rank, rref, smallest_ext, Mat,
    ThetaPower,
};
use crate::mpoly::{Mono, MPoly};

type E = ExtFieldElem;

/// A row/column block of `θ^j`, restricted to the first `m` variables
/// (the others are set to zero).
#[derive(Clone, Copy)]
pub(crate) struct View<'a> {
    pub theta: &'a ThetaPower,
    pub rows: &'a [usize],
    pub cols: &'a [usize],
    pub m: usize,
}

impl<'a> View<'a> {
    pub fn full(theta: &'a ThetaPower, rows: &'a [usize], cols: &'a [usize]) -> Self {
        View {
            theta,
            rows,
            cols,
            m: theta.nvars(),
        }
    }

    fn p(&self) -> u32 {
        self.theta.field().p()
    }

    fn deg(&self) -> u32 {
        self.theta.j()
    }

    /// The block at `pt` (length `m`).
    pub fn eval<F: Field>(&self, k: &F, pt: &[F::Elem]) -> Mat<F::Elem> {
        let mut out = Mat::zeros(k, self.rows.len(), self.cols.len());
        'terms: for (mono, c) in self.theta.terms() {
            let mut w = k.one();
            for v in 0..self.theta.nvars() {
                let e = mono.exp(v);
                if e == 0 {
                    continue;
                }
                if v >= self.m {
                    continue 'terms;
                }
                w = k.mul(w, k.pow(pt[v], e as u64));
            }
            if k.is_zero(w) {
                continue;
            }
            for (a, &i) in self.rows.iter().enumerate() {
                for (b, &jj) in self.cols.iter().enumerate() {
                    let e = c.get(i, jj);
                    if e != 0 {
                        let cur = out.get(a, b);
                        out.set(a, b, k.add(cur, k.mul(w, k.from_u32(e))));
                    }
                }
            }
        }
        out
    }

    /// Generic rank in the active variables.
    pub fn generic_rank(&self, cfg: &Config) -> Result<usize> {
        Ok(certify_generic_rank(
            self.p(),
            self.m,
            self.deg(),
            (self.rows.len(), self.cols.len()),
            cfg.eval_budget,
            |k, pt| self.eval(k, pt),
        )?
        .rank)
    }
}

/// Row and column indices (local to the block) of a nonzero maximal minor of
/// `a`, with columns tried in `col_order` and rows in `row_order`.
pub(crate) fn pivot_minor(
    k: &ExtField,
    a: &Mat<E>,
    row_order: &[usize],
    col_order: &[usize],
) -> (Vec<usize>, Vec<usize>) {
    let permuted = a.select(row_order, col_order);
    let cols: Vec<usize> = rref(k, &permuted).pivots;
    let sub = permuted.select(&(0..row_order.len()).collect::<Vec<_>>(), &cols);
    let rows: Vec<usize> = rref(k, &sub.transpose()).pivots;
    let mut i: Vec<usize> = rows.iter().map(|&x| row_order[x]).collect();
    let mut j: Vec<usize> = cols.iter().map(|&x| col_order[x]).collect();
    i.sort_unstable();
    j.sort_unstable();
    (i, j)
}

/// Parity of the permutation listed by `seq` (distinct values).
fn odd_permutation(seq: &[usize]) -> bool {
    let mut odd = false;
    for a in 0..seq.len() {
        for b in a + 1..seq.len() {
            odd ^= seq[a] > seq[b];
        }
    }
    odd
}

/// Per row set: rows outside I0, the columns of E they meet, and the sign.
pub(crate) struct MinorPlan {
    i0: Vec<usize>,
    entries: Vec<(Vec<usize>, Vec<usize>, bool)>,
}

impl MinorPlan {
    fn new(i0: Vec<usize>, d: usize, nrows: usize, row_sets: &[&[usize]]) -> Self {
        let mut unit_col = vec![usize::MAX; nrows];
        for (t, &i) in i0.iter().enumerate() {
            unit_col[i] = t;
        }
        let entries = row_sets
            .iter()
            .map(|rows| {
                // rows of I in I0 first (their unit columns), then the rest
                let mut order = Vec::with_capacity(d);
                let mut cols_q = Vec::with_capacity(d);
                let mut covered = vec![false; d];
                for (pos, &i) in rows.iter().enumerate() {
                    if unit_col[i] != usize::MAX {
                        order.push(pos);
                        cols_q.push(unit_col[i]);
                        covered[unit_col[i]] = true;
                    }
                }
                let others: Vec<usize> =
                    (0..d).filter(|&pos| unit_col[rows[pos]] == usize::MAX).collect();
                let free_cols: Vec<usize> = (0..d).filter(|&t| !covered[t]).collect();
                order.extend(&others);
                cols_q.extend(&free_cols);
                let sub_rows = others.iter().map(|&pos| rows[pos]).collect();
                let negate = odd_permutation(&order) ^ odd_permutation(&cols_q);
                (sub_rows, free_cols, negate)
            })
            .collect();
        MinorPlan { i0, entries }
    }
}

/// Determinant of the s×s row-major matrix in `buf`, destroying it.
fn det_in_place<F: Field>(k: &F, buf: &mut [F::Elem], s: usize) -> F::Elem {
    let mut det = k.one();
    for c in 0..s {
        let Some(pr) = (c..s).find(|&r| !k.is_zero(buf[r * s + c])) else {
            return k.zero();
        };
        if pr != c {
            for t in 0..s {
                buf.swap(pr * s + t, c * s + t);
            }
            det = k.neg(det);
        }
        let piv = buf[c * s + c];
        det = k.mul(det, piv);
        let inv = k.inv(piv).expect("nonzero pivot");
        for r in c + 1..s {
            let f = k.mul(buf[r * s + c], inv);
            if k.is_zero(f) {
                continue;
            }
            for t in c + 1..s {
                buf[r * s + t] = k.sub(buf[r * s + t], k.mul(f, buf[c * s + t]));
            }
        }
    }
    det
}

/// `det a[I, :]` for each row set I of an R×d matrix.
///
/// With I0 a set of independent rows and E = a·a[I0]^{-1}, every minor is
/// det a[I0] times a minor of E, and the rows of E indexed by I0 are unit
/// vectors; only the rows of I outside I0 contribute a determinant. The
/// plan depends only on I0 and is reused while I0 stays the same.
pub(crate) fn maximal_minors<F: Field>(
    k: &F,
    a: &Mat<F::Elem>,
    row_sets: &[&[usize]],
    cache: &mut Option<MinorPlan>,
) -> Vec<F::Elem> {
    let d = a.cols();
    let i0 = rref(k, &a.transpose()).pivots;
    if i0.len() < d {
        return vec![k.zero(); row_sets.len()];
    }
    if cache.as_ref().map_or(true, |c| c.i0 != i0) {
        *cache = Some(MinorPlan::new(i0.clone(), d, a.rows(), row_sets));
    }
    let plan = cache.as_ref().expect("just set");
    let all_cols: Vec<usize> = (0..d).collect();
    let a0 = a.select(&i0, &all_cols);
    let d0 = determinant(k, &a0).expect("square");
    let e = a.mul(k, &inverse(k, &a0).expect("independent rows")).expect("shapes");
    let mut buf = Vec::with_capacity(d * d);
    plan.entries
        .iter()
        .map(|(sub_rows, free_cols, negate)| {
            let s = sub_rows.len();
            buf.clear();
            for &r in sub_rows {
                for &c in free_cols {
                    buf.push(e.get(r, c));
                }
            }
            let v = k.mul(d0, det_in_place(k, &mut buf, s));
            if *negate {
                k.neg(v)
            } else {
                v
            }
        })
        .collect()
}

/// Monomial coefficients of the polynomial of degree ≤ D taking `values` at
/// the distinct `nodes` (Newton divided differences).
fn interpolate_1d<F: Field>(k: &F, nodes: &[F::Elem], inv_diff: &[Vec<F::Elem>], values: &mut [F::Elem]) {
    let d = nodes.len() - 1;
    for s in 1..=d {
        for i in (s..=d).rev() {
            let num = k.sub(values[i], values[i - 1]);
            values[i] = k.mul(num, inv_diff[i][i - s]);
        }
    }
    // Horner expansion of the Newton form
    let mut poly = vec![k.zero(); d + 1];
    poly[0] = values[d];
    let mut len = 1;
    for i in (0..d).rev() {
        // poly := poly·(X − x_i) + c_i
        for t in (0..=len).rev() {
            let shifted = if t > 0 { poly[t - 1] } else { k.zero() };
            let here = if t < len { k.mul(poly[t], nodes[i]) } else { k.zero() };
            poly[t] = k.sub(shifted, here);
        }
        len += 1;
        poly[0] = k.add(poly[0], values[i]);
    }
    values.copy_from_slice(&poly);
}

/// Values held per grid point before interpolation.
const INTERPOLATION_CELLS: usize = 1 << 22;

/// The given d×d minors of the view as forms of degree `j·d` in its `m`
/// active variables. Each entry of `sets` is (rows, cols), local indices.
pub(crate) fn minor_forms(
    view: &View,
    sets: &[(Vec<usize>, Vec<usize>)],
    cfg: &Config,
) -> Result<Vec<MPoly>> {
    let fp = PrimeField::new(view.p())?;
    let m = view.m;
    if sets.is_empty() {
        return Ok(Vec::new());
    }
    let d = sets[0].0.len();
    let deg = view.deg() * d as u32;
    if m == 1 {
        let k = ExtField::new(view.p(), 1)?;
        let a = view.eval(&k, &[k.one()]);
        return sets
            .iter()
            .map(|s| {
                let c = determinant(&k, &a.select(&s.0, &s.1))?
                    .as_prime()
                    .expect("prime field");
                Ok(MPoly::monomial(fp, 1, Mono::from_exps(&[deg as u16]), c))
            })
            .collect();
    }
    let side = deg as u64 + 1;
    let e = smallest_ext(view.p(), side).ok_or_else(|| {
        Error::Resource(format!("no extension field with {side} elements"))
    })?;
    let k = TableField::new(view.p(), e)
        .map_err(|_| Error::Resource(format!("no table field with {side} elements")))?;
    let dims = m - 1;
    let npts = side
        .checked_pow(dims as u32)
        .filter(|&c| c <= cfg.eval_budget)
        .ok_or_else(|| {
            Error::Resource(format!(
                "interpolating minors of degree {deg} exceeds the evaluation budget"
            ))
        })? as usize;
    let side = side as usize;
    let nodes: Vec<u16> = (0..side as u64).map(|i| k.element(i)).collect();
    let inv_diff: Vec<Vec<u16>> = (0..side)
        .map(|i| {
            (0..i)
                .map(|l| k.inv(k.sub(nodes[i], nodes[l])).expect("distinct nodes"))
                .collect()
        })
        .collect();
    let point = |mut idx: usize| -> Vec<u16> {
        let mut pt = Vec::with_capacity(m);
        for _ in 0..dims {
            pt.push(nodes[idx % side]);
            idx /= side;
        }
        pt.push(k.one());
        pt
    };
    use rayon::prelude::*;
    let chunk = (INTERPOLATION_CELLS / npts).max(1);
    let mut out = Vec::with_capacity(sets.len());
    for part in sets.chunks(chunk) {
        // group by column set so each group shares one normalization
        let mut groups: Vec<(&[usize], Vec<usize>)> = Vec::new();
        for (s, (_, cols)) in part.iter().enumerate() {
            match groups.iter_mut().find(|g| g.0 == cols.as_slice()) {
                Some(g) => g.1.push(s),
                None => groups.push((cols.as_slice(), vec![s])),
            }
        }
        let all_rows: Vec<usize> = (0..view.rows.len()).collect();
        let group_rows: Vec<Vec<&[usize]>> = groups
            .iter()
            .map(|(_, members)| members.iter().map(|&s| part[s].0.as_slice()).collect())
            .collect();
        let per_point: Vec<Vec<u16>> = (0..npts)
            .into_par_iter()
            .map_init(
                || (0..groups.len()).map(|_| None).collect::<Vec<Option<MinorPlan>>>(),
                |plans, idx| {
                let a = view.eval(&k, &point(idx));
                let mut vals = vec![0u16; part.len()];
                for (g, (cols, members)) in groups.iter().enumerate() {
                    let sub = a.select(&all_rows, cols);
                    let minors = maximal_minors(&k, &sub, &group_rows[g], &mut plans[g]);
                    for (&s, v) in members.iter().zip(minors) {
                        vals[s] = v;
                    }
                }
                vals
            })
            .collect();
        let forms: Vec<Result<MPoly>> = (0..part.len())
            .into_par_iter()
            .map(|s| {
                let mut vals: Vec<u16> = per_point.iter().map(|v| v[s]).collect();
                let mut stride = 1;
                let mut fiber = vec![0u16; side];
                for _ in 0..dims {
                    for base in 0..npts {
                        if (base / stride) % side != 0 {
                            continue;
                        }
                        for (t, f) in fiber.iter_mut().enumerate() {
                            *f = vals[base + t * stride];
                        }
                        interpolate_1d(&k, &nodes, &inv_diff, &mut fiber);
                        for (t, f) in fiber.iter().enumerate() {
                            vals[base + t * stride] = *f;
                        }
                    }
                    stride *= side;
                }
                let mut terms = Vec::new();
                for (idx, &c) in vals.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let mut exps = vec![0u16; m];
                    let mut rest = idx;
                    let mut total = 0usize;
                    for x in exps.iter_mut().take(dims) {
                        *x = (rest % side) as u16;
                        total += *x as usize;
                        rest /= side;
                    }
                    if total > deg as usize {
                        return Err(Error::Internal("minor exceeds its degree".into()));
                    }
                    exps[dims] = (deg as usize - total) as u16;
                    let c = k.as_prime(c).ok_or_else(|| {
                        Error::Internal("interpolated minor has non-prime coefficient".into())
                    })?;
                    terms.push((Mono::from_exps(&exps), c));
                }
                Ok(MPoly::from_terms(fp, m, terms))
            })
            .collect();
        for f in forms {
            out.push(f?);
        }
    }
    Ok(out)
}

/// All points of P^{m-1}(F_q), first nonzero coordinate equal to 1, in the
/// same order as [`crate::groebner::projective_points`] for q = p.
pub(crate) fn projective_points_ext(k: &ExtField, m: usize) -> impl Iterator<Item = Vec<E>> + '_ {
    let q = k.order();
    (0..m).rev().flat_map(move |lead| {
        let free = m - lead - 1;
        let count = q.checked_pow(free as u32).unwrap_or(u64::MAX);
        (0..count).map(move |mut idx| {
            let mut v = vec![k.zero(); m];
            v[lead] = k.one();
            for c in v.iter_mut().skip(lead + 1) {
                *c = k.element(idx % q);
                idx /= q;
            }
            v
        })
    })
}

/// Number of points of P^{m-1}(F_q).
pub(crate) fn projective_count(q: u64, m: usize) -> u64 {
    (0..m as u32).fold(0u64, |acc, i| acc.saturating_add(q.saturating_pow(i)))
}

/// Whether the rank of the view stays ≥ `d` at every nonzero point over the
/// algebraic closure. `d` must be the generic rank of the full block.
///
/// Emptiness is only ever concluded from an actual minor system (1 in the
/// ideal, or a constant gcd); nonemptiness from a point of rank < d or from
/// the complete minor system. Anything else is a resource error.
pub(crate) fn locus_empty(base: View, d: usize, cfg: &Config) -> Result<bool> {
    if d == 0 {
        return Ok(true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x10c5);
    for m in (1..=base.m).rev() {
        let view = View { m, ..base };
        if m < base.m && view.generic_rank(cfg)? < d {
            return Ok(false);
        }
        match m {
            1 => {
                let k = ExtField::new(view.p(), 1)?;
                return Ok(rank(&k, &view.eval(&k, &[k.one()])) >= d);
            }
            2 => return binary_empty(&view, d, cfg, &mut rng),
            _ => {
                if !chart_empty(&view, d, cfg, &mut rng)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Sampling fields for pivot seeds: the prime field and one extension large
/// enough for random points to be generic in practice.
fn seed_field(p: u32) -> Result<ExtField> {
    ExtField::new(p, smallest_ext(p, 1000).unwrap_or(MAX_EXT_DEGREE))
}

struct MinorPool {
    sets: Vec<(Vec<usize>, Vec<usize>)>,
}

impl MinorPool {
    /// Adds the pivot minor of `a` under the given orders; `None` if `a` has rank < d.
    fn add_at(
        &mut self,
        k: &ExtField,
        a: &Mat<E>,
        d: usize,
        orders: (&[usize], &[usize]),
    ) -> Option<bool> {
        let (i, j) = pivot_minor(k, a, orders.0, orders.1);
        if i.len() < d {
            return None;
        }
        let key = (i, j);
        if self.sets.contains(&key) {
            return Some(false);
        }
        self.sets.push(key);
        Some(true)
    }
}

fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn shuffled(n: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut v = identity(n);
    v.shuffle(rng);
    v
}

/// Every maximal minor of rank d, under the minor budget.
fn all_minor_sets(view: &View, d: usize, cfg: &Config) -> Result<Vec<(Vec<usize>, Vec<usize>)>> {
    let (nr, nc) = (view.rows.len(), view.cols.len());
    let count = binomial(nr, d).saturating_mul(binomial(nc, d));
    if count > cfg.minor_budget {
        return Err(Error::Resource(format!(
            "{count} minors of size {d} exceed the minor budget"
        )));
    }
    let mut out = Vec::new();
    for i in combinations(nr, d) {
        for j in combinations(nc, d) {
            out.push((i.clone(), j));
        }
    }
    Ok(out)
}

/// P^1: common zeros of binary forms are the roots of their gcd.
fn binary_empty(view: &View, d: usize, cfg: &Config, rng: &mut impl Rng) -> Result<bool> {
    let p = view.p();
    let (nr, nc) = (view.rows.len(), view.cols.len());
    let mut pool = MinorPool { sets: Vec::new() };
    let kp = ExtField::new(p, 1)?;
    for pt in projective_points_ext(&kp, 2) {
        let a = view.eval(&kp, &pt);
        if pool.add_at(&kp, &a, d, (&identity(nr), &identity(nc))).is_none() {
            return Ok(false);
        }
    }
    let ks = seed_field(p)?;
    for _ in 0..3 {
        let pt = vec![ks.random(rng), ks.one()];
        let a = view.eval(&ks, &pt);
        let orders = (shuffled(nr, rng), shuffled(nc, rng));
        if pool.add_at(&ks, &a, d, (&orders.0, &orders.1)).is_none() {
            return Ok(false);
        }
    }
    let forms = minor_forms(view, &pool.sets, cfg)?;
    let mut g = forms[0].clone();
    for f in &forms[1..] {
        g = gcd2(&g, f)?;
    }
    let mut scanned = 0usize;
    for e in 1..=MAX_EXT_DEGREE {
        if g.is_constant() {
            return Ok(true);
        }
        if (p as u64).pow(e as u32) > cfg.point_budget {
            break;
        }
        let k = ExtField::new(p, e)?;
        let mut roots = Vec::new();
        if k.is_zero(g.eval(&k, &[k.one(), k.zero()])) {
            roots.push(vec![k.one(), k.zero()]);
        }
        for idx in 0..k.order() {
            let pt = vec![k.element(idx), k.one()];
            if k.is_zero(g.eval(&k, &pt)) {
                roots.push(pt);
            }
        }
        for pt in roots {
            if !k.is_zero(g.eval(&k, &pt)) {
                continue;
            }
            let a = view.eval(&k, &pt);
            let before = pool.sets.len();
            if pool.add_at(&k, &a, d, (&identity(nr), &identity(nc))).is_none() {
                return Ok(false);
            }
            if pool.sets.len() > before {
                let f = minor_forms(view, &pool.sets[before..], cfg)?;
                g = gcd2(&g, &f[0])?;
            }
        }
        scanned = e;
    }
    if g.is_constant() {
        return Ok(true);
    }
    // every remaining irreducible factor has degree > scanned
    if (g.total_degree().unwrap_or(0) as usize) <= scanned {
        return Err(Error::Internal("gcd kept a root it should have lost".into()));
    }
    let sets = all_minor_sets(view, d, cfg)?;
    for chunk in sets.chunks(256) {
        for f in minor_forms(view, chunk, cfg)? {
            g = gcd2(&g, &f)?;
            if g.is_constant() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn dehomogenize(f: &MPoly) -> MPoly {
    let last = f.nvars() - 1;
    f.set_var(last, 1).remove_var(last)
}

/// Affine chart t_m = 1 of P^{m-1}, m ≥ 3.
fn chart_empty(view: &View, d: usize, cfg: &Config, rng: &mut impl Rng) -> Result<bool> {
    let p = view.p();
    let m = view.m;
    let (nr, nc) = (view.rows.len(), view.cols.len());
    let mut pool = MinorPool { sets: Vec::new() };
    let ks = seed_field(p)?;
    let chart_point = |k: &ExtField, a: &[E]| -> Vec<E> {
        let mut pt = a.to_vec();
        pt.push(k.one());
        pt
    };
    for round in 0..4 {
        let a: Vec<E> = (0..m - 1).map(|_| ks.random(rng)).collect();
        let mat = view.eval(&ks, &chart_point(&ks, &a));
        let orders = if round == 0 {
            (identity(nr), identity(nc))
        } else {
            (shuffled(nr, rng), shuffled(nc, rng))
        };
        if pool.add_at(&ks, &mat, d, (&orders.0, &orders.1)).is_none() {
            // generic rank on the chart is below d: the chart is inside the locus
            return Ok(false);
        }
    }
    let mut polys: Vec<MPoly> = minor_forms(view, &pool.sets, cfg)?
        .iter()
        .map(dehomogenize)
        .collect();
    let max_rounds = 24;
    for _ in 0..max_rounds {
        if polys.iter().any(|f| f.is_constant() && !f.is_zero()) {
            return Ok(true);
        }
        let nz: Vec<MPoly> = polys.iter().filter(|f| !f.is_zero()).cloned().collect();
        if !nz.is_empty() && contains_one(&Ideal::new(nz.clone())?, cfg.groebner_budget)? {
            return Ok(true);
        }
        // look for common zeros over small fields and cut them out
        let before = pool.sets.len();
        'fields: for e in 1..=MAX_EXT_DEGREE {
            let k = ExtField::new(p, e)?;
            let count = match k.order().checked_pow((m - 1) as u32) {
                Some(c) if c <= cfg.point_budget => c,
                _ => break,
            };
            let q = k.order();
            for mut idx in 0..count {
                let a: Vec<E> = (0..m - 1)
                    .map(|_| {
                        let x = k.element(idx % q);
                        idx /= q;
                        x
                    })
                    .collect();
                if !nz.iter().all(|f| k.is_zero(f.eval(&k, &a))) {
                    continue;
                }
                let mat = view.eval(&k, &chart_point(&k, &a));
                if pool
                    .add_at(&k, &mat, d, (&identity(nr), &identity(nc)))
                    .is_none()
                {
                    return Ok(false);
                }
                if pool.sets.len() >= before + 8 {
                    break 'fields;
                }
            }
            if pool.sets.len() > before {
                break;
            }
        }
        if pool.sets.len() == before {
            // no small-field zeros: add a fresh random pivot minor
            for _ in 0..8 {
                let a: Vec<E> = (0..m - 1).map(|_| ks.random(rng)).collect();
                let mat = view.eval(&ks, &chart_point(&ks, &a));
                let orders = (shuffled(nr, rng), shuffled(nc, rng));
                if pool.add_at(&ks, &mat, d, (&orders.0, &orders.1)) == Some(true) {
                    break;
                }
            }
        }
        if pool.sets.len() == before {
            break;
        }
        polys.extend(
            minor_forms(view, &pool.sets[before..], cfg)?
                .iter()
                .map(dehomogenize),
        );
    }
    // the complete minor system decides
    let sets = all_minor_sets(view, d, cfg)?;
    let all: Vec<MPoly> = minor_forms(view, &sets, cfg)?
        .iter()
        .map(dehomogenize)
        .filter(|f| !f.is_zero())
        .collect();
    if all.is_empty() {
        return Ok(false);
    }
    contains_one(&Ideal::new(all)?, cfg.groebner_budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modrep::{mr2_module, regular_module};

    fn cfg() -> Config {
        Config::default()
    }

    #[test]
    fn interpolated_minors_match_symbolic_ones() {
        for (p, r, j) in [(3u32, 2usize, 1u32), (3, 2, 2), (3, 3, 1), (5, 2, 3)] {
            let u = regular_module(p, r).unwrap();
            let theta = u.theta(j).unwrap();
            let pm = theta.to_polymat();
            for b in theta.components() {
                let view = View::full(&theta, &b.rows, &b.cols);
                let d = b.rows.len().min(b.cols.len()).min(3);
                let sets: Vec<_> = combinations(b.rows.len(), d)
                    .take(3)
                    .flat_map(|i| combinations(b.cols.len(), d).take(3).map(move |jj| (i.clone(), jj)))
                    .collect();
                let forms = minor_forms(&view, &sets, &cfg()).unwrap();
                for (s, f) in sets.iter().zip(&forms) {
                    let rows: Vec<usize> = s.0.iter().map(|&x| b.rows[x]).collect();
                    let cols: Vec<usize> = s.1.iter().map(|&x| b.cols[x]).collect();
                    assert_eq!(&pm.minor(&rows, &cols).unwrap(), f);
                }
            }
        }
    }

    #[test]
    fn batched_minors_match_determinants() {
        use rand::SeedableRng;
        let k = ExtField::new(5, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (r, d) in [(5usize, 3usize), (6, 6), (7, 2), (4, 1)] {
            let a = Mat::from_fn(r, d, |_, _| k.random(&mut rng));
            let sets: Vec<Vec<usize>> = combinations(r, d).collect();
            let refs: Vec<&[usize]> = sets.iter().map(|s| s.as_slice()).collect();
            let got = maximal_minors(&k, &a, &refs, &mut None);
            let cols: Vec<usize> = (0..d).collect();
            for (s, g) in sets.iter().zip(got) {
                assert_eq!(determinant(&k, &a.select(s, &cols)).unwrap(), g);
            }
        }
    }

    #[test]
    fn one_dimensional_interpolation() {
        let k = ExtField::new(5, 1).unwrap();
        let nodes: Vec<E> = (0..4).map(|i| k.element(i)).collect();
        let inv: Vec<Vec<E>> = (0..4)
            .map(|i| (0..i).map(|l| k.inv(k.sub(nodes[i], nodes[l])).unwrap()).collect())
            .collect();
        // 2 + 3x + x^3
        let f = |x: E| k.add(k.add(k.from_u32(2), k.mul(k.from_u32(3), x)), k.pow(x, 3));
        let mut vals: Vec<E> = nodes.iter().map(|&x| f(x)).collect();
        interpolate_1d(&k, &nodes, &inv, &mut vals);
        let got: Vec<u32> = vals.iter().map(|c| c.as_prime().unwrap()).collect();
        assert_eq!(got, vec![2, 3, 0, 1]);
    }

    #[test]
    fn loci_of_small_examples() {
        let c = cfg();
        let u = regular_module(3, 2).unwrap();
        for j in 1..3 {
            let theta = u.theta(j).unwrap();
            for b in theta.components() {
                let view = View::full(&theta, &b.rows, &b.cols);
                let d = view.generic_rank(&c).unwrap();
                assert!(locus_empty(view, d, &c).unwrap());
            }
        }
        let m = mr2_module(5, 2).unwrap();
        let theta = m.theta(2).unwrap();
        let all: Vec<usize> = (0..4).collect();
        let view = View::full(&theta, &all, &all);
        assert_eq!(view.generic_rank(&c).unwrap(), 1);
        assert!(!locus_empty(view, 1, &c).unwrap());
    }

    #[test]
    fn three_variable_chart_route() {
        let c = cfg();
        let u = regular_module(3, 3).unwrap();
        let theta = u.theta(1).unwrap();
        for b in theta.components() {
            let view = View::full(&theta, &b.rows, &b.cols);
            let d = view.generic_rank(&c).unwrap();
            assert!(locus_empty(view, d, &c).unwrap());
        }
    }
}
