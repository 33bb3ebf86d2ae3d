use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Decision, Degree, Invariants};
use crate::error::{Error, Result};
use crate::field::{ExtField, Field, PrimeField};
use crate::linalg::{determinant, smallest_ext, Mat};
use crate::modrep::ModuleRep;

/// Largest dimension for which the degree shortcut runs on the dual.
const SHORTCUT_MAX_DIM: usize = 32;

type Row = Vec<(usize, u32)>;

/// `a - c·b` for sparse rows sorted by variable.
fn axpy(k: &PrimeField, a: &Row, c: u32, b: &Row) -> Row {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            out.push((b[j].0, k.neg(k.mul(c, b[j].1))));
            j += 1;
        } else {
            let v = k.sub(a[i].1, k.mul(c, b[j].1));
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Basis of `{P : B_i P = P A_i for all i}`, each P of shape dim(b) × dim(a).
///
/// Sparse elimination with the smallest variable as pivot; frames from the
/// zoo give equations with few terms, so fill-in stays small.
pub fn hom_space(a: &ModuleRep, b: &ModuleRep) -> Result<Vec<Mat<u32>>> {
    if a.p() != b.p() || a.r() != b.r() {
        return Err(Error::Compatibility(format!(
            "modules over (p={}, r={}) and (p={}, r={})",
            a.p(),
            a.r(),
            b.p(),
            b.r()
        )));
    }
    let k = *a.field();
    let (na, nb) = (a.dim(), b.dim());
    let var = |r: usize, c: usize| r * na + c;
    let mut pivots: HashMap<usize, Row> = HashMap::new();
    for (xa, xb) in a.gens().iter().zip(b.gens()) {
        let a_cols: Vec<Row> = (0..na)
            .map(|c| (0..na).filter_map(|q| Some((q, xa.get(q, c))).filter(|t| t.1 != 0)).collect())
            .collect();
        let b_rows: Vec<Row> = (0..nb)
            .map(|r| (0..nb).filter_map(|q| Some((q, xb.get(r, q))).filter(|t| t.1 != 0)).collect())
            .collect();
        for r in 0..nb {
            for c in 0..na {
                // (B P)_{rc} - (P A)_{rc}
                let mut terms: Vec<(usize, u32)> = b_rows[r]
                    .iter()
                    .map(|&(q, v)| (var(q, c), v))
                    .chain(a_cols[c].iter().map(|&(q, v)| (var(r, q), k.neg(v))))
                    .collect();
                terms.sort_unstable_by_key(|t| t.0);
                let mut eq: Row = Vec::with_capacity(terms.len());
                for (v, c) in terms {
                    match eq.last_mut() {
                        Some(last) if last.0 == v => last.1 = k.add(last.1, c),
                        _ => eq.push((v, c)),
                    }
                }
                eq.retain(|t| t.1 != 0);
                while let Some(&(lead, c)) = eq.first() {
                    match pivots.get(&lead) {
                        Some(prow) => eq = axpy(&k, &eq, c, prow),
                        None => break,
                    }
                }
                if let Some(&(lead, c)) = eq.first() {
                    let inv = k.inv(c).expect("nonzero");
                    for t in eq.iter_mut() {
                        t.1 = k.mul(t.1, inv);
                    }
                    pivots.insert(lead, eq);
                }
            }
        }
    }
    let nvars = na * nb;
    let free: Vec<usize> = (0..nvars).filter(|v| !pivots.contains_key(v)).collect();
    let mut order: Vec<usize> = pivots.keys().copied().collect();
    order.sort_unstable_by(|x, y| y.cmp(x));
    Ok(free
        .iter()
        .map(|&f| {
            let mut x = vec![0u32; nvars];
            x[f] = 1;
            for &v in &order {
                let row = &pivots[&v];
                let mut acc = 0u32;
                for &(u, c) in &row[1..] {
                    acc = k.add(acc, k.mul(c, x[u]));
                }
                x[v] = k.neg(acc);
            }
            Mat::from_vec(nb, na, x).expect("shape")
        })
        .collect())
}

impl Invariants {
    /// Whether the module is isomorphic to its dual.
    ///
    /// An invertible intertwiner over an extension field implies one over
    /// F_p, so "no" is decided by F_p enumeration or by the determinant of
    /// a generic intertwiner vanishing on a sufficient grid.
    pub fn self_dual(&self) -> Result<Decision> {
        let m = &self.module;
        let n = m.dim();
        if n == 0 {
            return Ok(Decision::Yes);
        }
        let dual = m.dual();
        if n <= SHORTCUT_MAX_DIM {
            let dual_inv = Invariants::new(dual.clone(), self.cfg.clone());
            for j in self.levels() {
                if let (Degree::Value(a), Degree::Value(b)) = (self.jdegree(j)?, dual_inv.jdegree(j)?)
                {
                    if a != b {
                        return Ok(Decision::No);
                    }
                }
            }
        }
        let h = hom_space(m, &dual)?;
        if h.is_empty() {
            return Ok(Decision::No);
        }
        let p = m.p();
        let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.seed ^ 0x5e1f);
        for e in 1..=3 {
            let ke = ExtField::new(p, e)?;
            for _ in 0..16 {
                let c: Vec<_> = h.iter().map(|_| ke.random(&mut rng)).collect();
                if !ke.is_zero(determinant(&ke, &combine(&ke, &h, &c))?) {
                    return Ok(Decision::Yes);
                }
            }
        }
        let dim_h = h.len() as u32;
        if let Some(total) = (p as u64).checked_pow(dim_h).filter(|&t| t <= self.cfg.selfdual_budget) {
            let k = *m.field();
            for mut idx in 1..total {
                let c: Vec<u32> = (0..h.len())
                    .map(|_| {
                        let v = (idx % p as u64) as u32;
                        idx /= p as u64;
                        v
                    })
                    .collect();
                if determinant(&k, &combine(&k, &h, &c))? != 0 {
                    return Ok(Decision::Yes);
                }
            }
            return Ok(Decision::No);
        }
        // det of the generic intertwiner is a form of degree n in dim_h
        // variables: zero on S^{dim_h - 1} × {1} with |S| > n means zero
        let side = n as u64 + 1;
        let grid = side.checked_pow(dim_h - 1).filter(|&g| g <= self.cfg.selfdual_budget);
        let (Some(grid), Some(e)) = (grid, smallest_ext(p, side)) else {
            return Ok(Decision::Undetermined);
        };
        let ke = ExtField::new(p, e)?;
        for mut idx in 0..grid {
            let mut c: Vec<_> = (0..dim_h - 1)
                .map(|_| {
                    let v = ke.element(idx % side);
                    idx /= side;
                    v
                })
                .collect();
            c.push(ke.one());
            if !ke.is_zero(determinant(&ke, &combine(&ke, &h, &c))?) {
                return Ok(Decision::Yes);
            }
        }
        Ok(Decision::No)
    }
}

fn combine<F: Field>(k: &F, basis: &[Mat<u32>], c: &[F::Elem]) -> Mat<F::Elem> {
    let (rows, cols) = (basis[0].rows(), basis[0].cols());
    let mut out = Mat::zeros(k, rows, cols);
    for (b, &ci) in basis.iter().zip(c) {
        if k.is_zero(ci) {
            continue;
        }
        for i in 0..rows {
            for j in 0..cols {
                let v = b.get(i, j);
                if v != 0 {
                    let cur = out.get(i, j);
                    out.set(i, j, k.add(cur, k.mul(ci, k.from_u32(v))));
                }
            }
        }
    }
    out
}
