use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{rank, rref, Mat, Subspace};
use crate::error::{Error, Result};
use crate::field::{ExtField, ExtFieldElem, Field, PrimeField};
use crate::mpoly::{Mono, MPoly};

/// Matrix with polynomial entries, all in the same ring F_p[t_1..t_r].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMat {
    field: PrimeField,
    nvars: usize,
    rows: usize,
    cols: usize,
    data: Vec<MPoly>,
}

/// A connected component of the bipartite row/column graph of nonzero
/// entries. Rank, minors and rank loci of a matrix split along its blocks.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Block {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl PolyMat {
    pub fn zeros(field: PrimeField, nvars: usize, rows: usize, cols: usize) -> Self {
        PolyMat {
            field,
            nvars,
            rows,
            cols,
            data: vec![MPoly::zero(field, nvars); rows * cols],
        }
    }

    pub fn from_fn(
        field: PrimeField,
        nvars: usize,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> MPoly,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                assert!(e.nvars() == nvars && e.field() == field);
                data.push(e);
            }
        }
        PolyMat {
            field,
            nvars,
            rows,
            cols,
            data,
        }
    }

    /// `Σ t_i·mats[i]`.
    pub fn from_linear(field: PrimeField, mats: &[Mat<u32>]) -> Result<Self> {
        let nvars = mats.len();
        let (rows, cols) = mats.first().map_or((0, 0), |m| (m.rows(), m.cols()));
        if mats.iter().any(|m| m.rows() != rows || m.cols() != cols) {
            return Err(Error::Dimension("generators of different shapes".into()));
        }
        Ok(Self::from_fn(field, nvars, rows, cols, |i, j| {
            MPoly::from_terms(
                field,
                nvars,
                mats.iter()
                    .enumerate()
                    .map(|(v, m)| (Mono::var(v), m.get(i, j))),
            )
        }))
    }

    /// Constant matrix.
    pub fn from_mat(field: PrimeField, nvars: usize, m: &Mat<u32>) -> Self {
        Self::from_fn(field, nvars, m.rows(), m.cols(), |i, j| {
            MPoly::constant(field, nvars, m.get(i, j))
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &MPoly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: MPoly) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[MPoly] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn map(&self, f: impl Fn(&MPoly) -> MPoly) -> Self {
        let data: Vec<MPoly> = self.data.iter().map(f).collect();
        let (field, nvars) = data
            .first()
            .map_or((self.field, self.nvars), |e| (e.field(), e.nvars()));
        PolyMat {
            field,
            nvars,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::Dimension("polynomial matrix product shape".into()));
        }
        let mut out = Self::zeros(self.field, self.nvars, self.rows, o.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(l, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        Ok(out)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(self.field, self.nvars, rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    /// True when every entry is zero or homogeneous of degree `deg`.
    pub fn is_homogeneous_of(&self, deg: u32) -> bool {
        self.data.iter().all(|e| {
            e.is_zero() || e.terms().iter().all(|(m, _)| m.degree() == deg)
        })
    }

    pub fn max_degree(&self) -> u32 {
        self.data
            .iter()
            .filter_map(|e| e.total_degree())
            .max()
            .unwrap_or(0)
    }

    /// Entrywise evaluation at a point over any field of characteristic p.
    pub fn specialize<F: Field>(&self, k: &F, point: &[F::Elem]) -> Result<Mat<F::Elem>> {
        if point.len() != self.nvars {
            return Err(Error::Dimension(format!(
                "point of length {} for {} variables",
                point.len(),
                self.nvars
            )));
        }
        Ok(Mat::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).eval(k, point)
        }))
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> Result<MPoly> {
        if self.rows != self.cols {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(MPoly::one(self.field, self.nvars));
        }
        let mut a = self.data.clone();
        let mut prev = MPoly::one(self.field, self.nvars);
        let mut negate = false;
        for c in 0..n {
            let pr = (c..n)
                .filter(|&i| !a[i * n + c].is_zero())
                .min_by_key(|&i| a[i * n + c].len());
            let Some(pr) = pr else {
                return Ok(MPoly::zero(self.field, self.nvars));
            };
            if pr != c {
                for j in 0..n {
                    a.swap(pr * n + j, c * n + j);
                }
                negate = !negate;
            }
            for i in c + 1..n {
                for j in c + 1..n {
                    let v = a[c * n + c]
                        .mul(&a[i * n + j])
                        .sub(&a[i * n + c].mul(&a[c * n + j]));
                    a[i * n + j] = v.divexact(&prev).expect("Bareiss division is exact");
                }
            }
            prev = a[c * n + c].clone();
        }
        let d = a[n * n - 1].clone();
        Ok(if negate { d.neg() } else { d })
    }

    /// Determinant of the (I, J) submatrix.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<MPoly> {
        check_index_sets(self.rows, self.cols, rows, cols)?;
        self.submatrix(rows, cols).det()
    }

    /// Rank over F_p(t_1..t_r) and the pivot columns of a fraction-free row
    /// echelon form, which form the lexicographically smallest generically
    /// independent column set.
    pub fn bareiss_echelon(&self) -> (usize, Vec<usize>) {
        let (m, n) = (self.rows, self.cols);
        let mut a = self.data.clone();
        let mut prev = MPoly::one(self.field, self.nvars);
        let mut r = 0;
        let mut pivots = Vec::new();
        for c in 0..n {
            if r == m {
                break;
            }
            let pr = (r..m)
                .filter(|&i| !a[i * n + c].is_zero())
                .min_by_key(|&i| a[i * n + c].len());
            let Some(pr) = pr else { continue };
            if pr != r {
                for j in 0..n {
                    a.swap(pr * n + j, r * n + j);
                }
            }
            for i in r + 1..m {
                for j in c + 1..n {
                    let v = a[r * n + c]
                        .mul(&a[i * n + j])
                        .sub(&a[i * n + c].mul(&a[r * n + j]));
                    a[i * n + j] = v.divexact(&prev).expect("Bareiss division is exact");
                }
                a[i * n + c] = MPoly::zero(self.field, self.nvars);
            }
            prev = a[r * n + c].clone();
            pivots.push(c);
            r += 1;
        }
        (r, pivots)
    }

    /// Rank over the rational function field F_p(t_1..t_r).
    pub fn generic_rank_of(&self) -> usize {
        self.bareiss_echelon().0
    }

    /// Connected components of the nonzero pattern, ordered by smallest row.
    pub fn components(&self) -> Vec<Block> {
        components_of(self.rows, self.cols, |i, j| !self.get(i, j).is_zero())
    }

    /// `(det m_(I,J))` for all row sets `I` of size `d`, in lexicographic order.
    pub fn pluecker_vector(&self, d: usize, chart: &[usize]) -> Result<Vec<MPoly>> {
        if chart.len() != d || d > self.cols {
            return Err(Error::Index(format!("chart of size {} for d = {d}", chart.len())));
        }
        combinations(self.rows, d)
            .map(|rows| self.minor(&rows, chart))
            .collect()
    }

    /// Substitutes the constant `c` for variable `var` in every entry.
    pub fn set_var(&self, var: usize, c: u32) -> Self {
        self.map(|e| e.set_var(var, c))
    }

    pub fn remove_var(&self, var: usize) -> Self {
        self.map(|e| e.remove_var(var))
    }

    pub fn subs(&self, values: &[MPoly]) -> Result<Self> {
        let data = self
            .data
            .iter()
            .map(|e| e.subs(values))
            .collect::<Result<Vec<_>>>()?;
        let (field, nvars) = values
            .first()
            .map_or((self.field, self.nvars), |v| (v.field(), v.nvars()));
        Ok(PolyMat {
            field,
            nvars,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }
}

pub(crate) fn check_index_sets(
    nrows: usize,
    ncols: usize,
    rows: &[usize],
    cols: &[usize],
) -> Result<()> {
    if rows.len() != cols.len() {
        return Err(Error::Index(format!(
            "row set of size {} with column set of size {}",
            rows.len(),
            cols.len()
        )));
    }
    if let Some(&i) = rows.iter().find(|&&i| i >= nrows) {
        return Err(Error::Index(format!("row {i} of {nrows}")));
    }
    if let Some(&j) = cols.iter().find(|&&j| j >= ncols) {
        return Err(Error::Index(format!("column {j} of {ncols}")));
    }
    Ok(())
}

/// Minor of a matrix over a field.
pub fn field_minor<F: Field>(
    k: &F,
    m: &Mat<F::Elem>,
    rows: &[usize],
    cols: &[usize],
) -> Result<F::Elem> {
    check_index_sets(m.rows(), m.cols(), rows, cols)?;
    super::determinant(k, &m.select(rows, cols))
}

pub(crate) fn components_of(
    nrows: usize,
    ncols: usize,
    nonzero: impl Fn(usize, usize) -> bool,
) -> Vec<Block> {
    // union-find over rows 0..nrows and columns nrows..nrows+ncols
    let mut parent: Vec<usize> = (0..nrows + ncols).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut row_used = vec![false; nrows];
    let mut col_used = vec![false; ncols];
    for i in 0..nrows {
        for j in 0..ncols {
            if nonzero(i, j) {
                row_used[i] = true;
                col_used[j] = true;
                let (a, b) = (find(&mut parent, i), find(&mut parent, nrows + j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut blocks: Vec<(usize, Block)> = Vec::new();
    let mut slot = std::collections::HashMap::new();
    for i in (0..nrows).filter(|&i| row_used[i]) {
        let root = find(&mut parent, i);
        let idx = *slot.entry(root).or_insert_with(|| {
            blocks.push((
                root,
                Block {
                    rows: Vec::new(),
                    cols: Vec::new(),
                },
            ));
            blocks.len() - 1
        });
        blocks[idx].1.rows.push(i);
    }
    for j in (0..ncols).filter(|&j| col_used[j]) {
        let root = find(&mut parent, nrows + j);
        let idx = slot[&root];
        blocks[idx].1.cols.push(j);
    }
    blocks.into_iter().map(|(_, b)| b).collect()
}

/// Lexicographic enumeration of the `d`-element subsets of `0..n`.
pub fn combinations(n: usize, d: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = if d <= n { Some((0..d).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let c = cur.as_mut().unwrap();
        let mut i = d;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if c[i] < n - d + i {
                c[i] += 1;
                for k in i + 1..d {
                    c[k] = c[k - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

/// Number of `d`-subsets of an `n`-set, saturating.
pub fn binomial(n: usize, d: usize) -> u64 {
    if d > n {
        return 0;
    }
    let d = d.min(n - d);
    let mut acc: u128 = 1;
    for i in 0..d {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// The j-th power of the generic operator `θ = Σ t_i X_i`, stored as its
/// coefficient matrices: `θ^j = Σ_a t^a C_a` over exponent vectors `|a| = j`.
#[derive(Clone, Debug)]
pub struct ThetaPower {
    field: PrimeField,
    nvars: usize,
    j: u32,
    n: usize,
    terms: Vec<(Mono, Mat<u32>)>,
}

impl ThetaPower {
    pub fn new(field: PrimeField, gens: &[Mat<u32>], j: u32) -> Result<Self> {
        let nvars = gens.len();
        let n = gens.first().map_or(0, |g| g.rows());
        if gens.iter().any(|g| g.rows() != n || g.cols() != n) {
            return Err(Error::Dimension("generators must be square of equal size".into()));
        }
        let mut terms: Vec<(Mono, Mat<u32>)> = vec![(Mono::one(), Mat::identity(&field, n))];
        for _ in 0..j {
            let mut next: std::collections::BTreeMap<Mono, Mat<u32>> = Default::default();
            for (m, c) in &terms {
                for (v, x) in gens.iter().enumerate() {
                    let prod = x.mul(&field, c)?;
                    if prod.is_zero(&field) {
                        continue;
                    }
                    let key = m.mul(&Mono::var(v));
                    match next.get_mut(&key) {
                        Some(acc) => *acc = acc.add(&field, &prod)?,
                        None => {
                            next.insert(key, prod);
                        }
                    }
                }
            }
            terms = next
                .into_iter()
                .rev()
                .filter(|(_, c)| !c.is_zero(&field))
                .collect();
        }
        Ok(ThetaPower {
            field,
            nvars,
            j,
            n,
            terms,
        })
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Nonzero coefficient matrices, by descending graded-lex monomial.
    pub fn terms(&self) -> &[(Mono, Mat<u32>)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_polymat(&self) -> PolyMat {
        PolyMat::from_fn(self.field, self.nvars, self.n, self.n, |i, j| {
            MPoly::from_terms(
                self.field,
                self.nvars,
                self.terms.iter().map(|(m, c)| (*m, c.get(i, j))),
            )
        })
    }

    /// `(Σ λ_i X_i)^j` through the coefficient expansion.
    pub fn eval<F: Field>(&self, k: &F, point: &[F::Elem]) -> Mat<F::Elem> {
        let mut out = Mat::zeros(k, self.n, self.n);
        for (m, c) in &self.terms {
            let mut w = k.one();
            for (v, &x) in point.iter().enumerate() {
                w = k.mul(w, k.pow(x, m.exp(v) as u64));
            }
            if k.is_zero(w) {
                continue;
            }
            for i in 0..self.n {
                for jj in 0..self.n {
                    let e = c.get(i, jj);
                    if e != 0 {
                        let cur = out.get(i, jj);
                        out.set(i, jj, k.add(cur, k.mul(w, k.from_u32(e))));
                    }
                }
            }
        }
        out
    }

    /// F_p-span of all coefficient vectors of all columns. Every
    /// specialization's column space lies inside it.
    pub fn coefficient_column_span(&self) -> Subspace {
        let mut vs = Vec::new();
        for (_, c) in &self.terms {
            for j in 0..self.n {
                let col = c.column(j);
                if col.iter().any(|&x| x != 0) {
                    vs.push(col);
                }
            }
        }
        if vs.is_empty() {
            return Subspace::zero(self.n);
        }
        Subspace::from_rows(&self.field, &Mat::from_rows(&vs).expect("equal lengths"))
    }

    /// Blocks of the union of the nonzero patterns of all coefficients.
    pub fn components(&self) -> Vec<Block> {
        components_of(self.n, self.n, |i, j| {
            self.terms.iter().any(|(_, c)| c.get(i, j) != 0)
        })
    }
}

/// `θ^j` as a polynomial matrix.
pub fn theta_power(field: PrimeField, gens: &[Mat<u32>], j: u32) -> Result<PolyMat> {
    Ok(ThetaPower::new(field, gens, j)?.to_polymat())
}

/// Outcome of [`certify_generic_rank`].
#[derive(Clone, Debug)]
pub struct RankCertificate {
    pub rank: usize,
    /// Extension field of the point attaining the rank.
    pub field: ExtField,
    pub point: Vec<ExtFieldElem>,
    /// Greedy column basis at that point.
    pub chart: Vec<usize>,
}

/// Exact generic rank of a matrix of homogeneous forms of degree `deg`
/// (entries of degree 0 allowed when `deg = 0`), given by an evaluator.
///
/// A nonzero (L+1)-minor is a form of degree at most (L+1)·deg, and its
/// dehomogenization cannot vanish on a grid S^{r-1} with |S| exceeding that
/// degree. So the maximum rank over such a grid equals the generic rank.
pub fn certify_generic_rank(
    p: u32,
    nvars: usize,
    deg: u32,
    shape: (usize, usize),
    max_points: u64,
    eval: impl Fn(&ExtField, &[ExtFieldElem]) -> Mat<ExtFieldElem>,
) -> Result<RankCertificate> {
    let upper = shape.0.min(shape.1);
    let mut best: Option<RankCertificate> = None;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ ((shape.0 as u64) << 20) ^ shape.1 as u64);
    // cheap random probes first
    let probe_field = ExtField::new(p, smallest_ext(p, 64).unwrap_or(crate::field::MAX_EXT_DEGREE))?;
    for _ in 0..3 {
        let pt: Vec<ExtFieldElem> = (0..nvars).map(|_| probe_field.random(&mut rng)).collect();
        consider(&probe_field, pt, &eval, &mut best);
        if best.as_ref().map_or(false, |b| b.rank == upper) {
            return Ok(best.unwrap());
        }
    }
    loop {
        let current = best.as_ref().map_or(0, |b| b.rank);
        if current == upper || nvars == 0 {
            return best.ok_or_else(|| Error::Internal("no evaluation".into()));
        }
        let bound = (current as u64 + 1) * deg as u64;
        if nvars == 1 {
            // a nonzero form in one variable is nonzero at 1
            let k = ExtField::new(p, 1)?;
            let pt = vec![k.one()];
            let before = current;
            consider(&k, pt, &eval, &mut best);
            if best.as_ref().unwrap().rank == before {
                return Ok(best.unwrap());
            }
            continue;
        }
        let e = smallest_ext(p, bound + 1).ok_or_else(|| {
            Error::Resource(format!("no extension field with more than {bound} elements"))
        })?;
        let k = ExtField::new(p, e)?;
        let side = bound + 1;
        let points = side
            .checked_pow((nvars - 1) as u32)
            .filter(|&c| c <= max_points)
            .ok_or_else(|| {
                Error::Resource(format!(
                    "grid of {side}^{} points exceeds the evaluation budget",
                    nvars - 1
                ))
            })?;
        let mut improved = false;
        for idx in 0..points {
            let mut rest = idx;
            let mut pt = Vec::with_capacity(nvars);
            for _ in 0..nvars - 1 {
                pt.push(k.element(rest % side));
                rest /= side;
            }
            pt.push(k.one());
            let before = best.as_ref().map_or(0, |b| b.rank);
            consider(&k, pt, &eval, &mut best);
            if best.as_ref().unwrap().rank > before {
                improved = true;
                break;
            }
        }
        if !improved {
            return Ok(best.unwrap());
        }
    }
}

fn consider(
    k: &ExtField,
    pt: Vec<ExtFieldElem>,
    eval: &impl Fn(&ExtField, &[ExtFieldElem]) -> Mat<ExtFieldElem>,
    best: &mut Option<RankCertificate>,
) {
    let m = eval(k, &pt);
    let r = rank(k, &m);
    if best.as_ref().map_or(true, |b| r > b.rank) {
        let chart = rref(k, &m).pivots;
        *best = Some(RankCertificate {
            rank: r,
            field: k.clone(),
            point: pt,
            chart,
        });
    }
}

/// Smallest e ≤ 6 with p^e ≥ size.
pub fn smallest_ext(p: u32, size: u64) -> Option<usize> {
    (1..=crate::field::MAX_EXT_DEGREE).find(|&e| (p as u64).pow(e as u32) >= size)
}

/// Gram matrix `(a_i · b_j)` of the echelon bases; its determinant is the
/// pairing of the corresponding wedge vectors.
pub fn pairing_check(k: &PrimeField, a: &Subspace, b: &Subspace) -> Result<Mat<u32>> {
    if a.ambient() != b.ambient() || a.dim() != b.dim() {
        return Err(Error::Dimension(format!(
            "pairing of a {}-dim subspace of k^{} with a {}-dim subspace of k^{}",
            a.dim(),
            a.ambient(),
            b.dim(),
            b.ambient()
        )));
    }
    let (av, bv) = (a.basis_vectors(), b.basis_vectors());
    Ok(Mat::from_fn(a.dim(), b.dim(), |i, j| {
        av[i]
            .iter()
            .zip(&bv[j])
            .fold(0, |acc, (&x, &y)| k.add(acc, k.mul(x, y)))
    }))
}
