//! Dense exact linear algebra over finite fields and over polynomial rings.

mod polymat;

pub use polymat::{
    binomial, certify_generic_rank, combinations, field_minor, pairing_check,
    smallest_ext, theta_power, Block, PolyMat, RankCertificate, ThetaPower,
};

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};

/// Row-major dense matrix. Arithmetic takes the field explicitly.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Copy> Mat<E> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<E>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Mat { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<E>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Mat {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn filled(rows: usize, cols: usize, v: E) -> Self {
        Mat {
            rows,
            cols,
            data: vec![v; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[E] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> E {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn map<G: Copy>(&self, f: impl Fn(E) -> G) -> Mat<G> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&e| f(e)).collect(),
        }
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Mat::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]))
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols && self.rows > 0 && other.rows > 0 {
            return Err(Error::Dimension("vstack column mismatch".into()));
        }
        let cols = if self.rows > 0 { self.cols } else { other.cols };
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Mat {
            rows: self.rows + other.rows,
            cols,
            data,
        })
    }

    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Dimension("hstack row mismatch".into()));
        }
        Ok(Mat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        }))
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &Self, zero: E) -> Self {
        Mat::from_fn(self.rows + other.rows, self.cols + other.cols, |i, j| {
            match (i < self.rows, j < self.cols) {
                (true, true) => self.get(i, j),
                (false, false) => other.get(i - self.rows, j - self.cols),
                _ => zero,
            }
        })
    }
}

impl<E: Copy + Eq> Mat<E> {
    pub fn zeros<F: Field<Elem = E>>(k: &F, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, k.zero())
    }

    pub fn identity<F: Field<Elem = E>>(k: &F, n: usize) -> Self {
        Mat::from_fn(n, n, |i, j| if i == j { k.one() } else { k.zero() })
    }

    /// Matrix unit with a one at (i, j).
    pub fn unit<F: Field<Elem = E>>(k: &F, n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(k, n, n);
        m.set(i, j, k.one());
        m
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, k: &F) -> bool {
        self.data.iter().all(|&e| e == k.zero())
    }

    pub fn mul<F: Field<Elem = E>>(&self, k: &F, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Self::zeros(k, self.rows, o.cols);
        let z = k.zero();
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == z {
                    continue;
                }
                let orow = o.row(l);
                let base = i * o.cols;
                for (j, &b) in orow.iter().enumerate() {
                    if b != z {
                        out.data[base + j] = k.add(out.data[base + j], k.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec<F: Field<Elem = E>>(&self, k: &F, v: &[E]) -> Vec<E> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(k.zero(), |acc, (&a, &b)| k.add(acc, k.mul(a, b)))
            })
            .collect()
    }

    pub fn add<F: Field<Elem = E>>(&self, k: &F, o: &Self) -> Result<Self> {
        self.zip_with(o, |a, b| k.add(a, b))
    }

    pub fn sub<F: Field<Elem = E>>(&self, k: &F, o: &Self) -> Result<Self> {
        self.zip_with(o, |a, b| k.sub(a, b))
    }

    fn zip_with(&self, o: &Self, f: impl Fn(E, E) -> E) -> Result<Self> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Dimension("shape mismatch".into()));
        }
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn scale<F: Field<Elem = E>>(&self, k: &F, c: E) -> Self {
        self.map(|a| k.mul(a, c))
    }

    pub fn neg<F: Field<Elem = E>>(&self, k: &F) -> Self {
        self.map(|a| k.neg(a))
    }

    pub fn pow<F: Field<Elem = E>>(&self, k: &F, e: u32) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::Dimension("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(k, self.rows);
        for _ in 0..e {
            acc = acc.mul(k, self)?;
        }
        Ok(acc)
    }
}

/// Echelon data from [`rref`].
#[derive(Clone, Debug)]
pub struct Rref<E> {
    pub matrix: Mat<E>,
    pub pivots: Vec<usize>,
}

/// Reduced row echelon form; the first `pivots.len()` rows are nonzero.
pub fn rref<F: Field>(k: &F, m: &Mat<F::Elem>) -> Rref<F::Elem> {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    let z = k.zero();
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(pr) = (r..a.rows).find(|&i| a.get(i, c) != z) else {
            continue;
        };
        a.swap_rows(pr, r);
        let inv = k.inv(a.get(r, c)).expect("nonzero pivot");
        for j in c..a.cols {
            let v = a.get(r, j);
            a.set(r, j, k.mul(v, inv));
        }
        for i in 0..a.rows {
            if i == r {
                continue;
            }
            let f = a.get(i, c);
            if f == z {
                continue;
            }
            for j in c..a.cols {
                let v = k.sub(a.get(i, j), k.mul(f, a.get(r, j)));
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { matrix: a, pivots }
}

/// Rank by forward elimination only.
pub fn rank<F: Field>(k: &F, m: &Mat<F::Elem>) -> usize {
    let mut a = m.clone();
    let z = k.zero();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(pr) = (r..a.rows).find(|&i| a.get(i, c) != z) else {
            continue;
        };
        a.swap_rows(pr, r);
        let inv = k.inv(a.get(r, c)).expect("nonzero pivot");
        for i in r + 1..a.rows {
            let f = a.get(i, c);
            if f == z {
                continue;
            }
            let f = k.mul(f, inv);
            for j in c..a.cols {
                let v = k.sub(a.get(i, j), k.mul(f, a.get(r, j)));
                a.set(i, j, v);
            }
        }
        r += 1;
    }
    r
}

/// Basis of the right kernel `{v : m v = 0}`, one vector per row.
pub fn kernel_basis<F: Field>(k: &F, m: &Mat<F::Elem>) -> Mat<F::Elem> {
    let Rref { matrix, pivots } = rref(k, m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    let mut out = Mat::zeros(k, free.len(), m.cols);
    for (row, &fc) in free.iter().enumerate() {
        out.set(row, fc, k.one());
        for (pi, &pc) in pivots.iter().enumerate() {
            out.set(row, pc, k.neg(matrix.get(pi, fc)));
        }
    }
    out
}

pub fn determinant<F: Field>(k: &F, m: &Mat<F::Elem>) -> Result<F::Elem> {
    if m.rows != m.cols {
        return Err(Error::Dimension("determinant of a non-square matrix".into()));
    }
    let mut a = m.clone();
    let z = k.zero();
    let mut det = k.one();
    for c in 0..a.cols {
        let Some(pr) = (c..a.rows).find(|&i| a.get(i, c) != z) else {
            return Ok(z);
        };
        if pr != c {
            a.swap_rows(pr, c);
            det = k.neg(det);
        }
        let piv = a.get(c, c);
        det = k.mul(det, piv);
        let inv = k.inv(piv).expect("nonzero pivot");
        for i in c + 1..a.rows {
            let f = a.get(i, c);
            if f == z {
                continue;
            }
            let f = k.mul(f, inv);
            for j in c..a.cols {
                let v = k.sub(a.get(i, j), k.mul(f, a.get(c, j)));
                a.set(i, j, v);
            }
        }
    }
    Ok(det)
}

pub fn inverse<F: Field>(k: &F, m: &Mat<F::Elem>) -> Result<Mat<F::Elem>> {
    if m.rows != m.cols {
        return Err(Error::Dimension("inverse of a non-square matrix".into()));
    }
    let n = m.rows;
    let aug = m.hstack(&Mat::identity(k, n))?;
    let Rref { matrix, pivots } = rref(k, &aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(Error::NotInvertible);
    }
    Ok(Mat::from_fn(n, n, |i, j| matrix.get(i, n + j)))
}

/// Subspace of F_p^n stored by its canonical reduced echelon basis; equal
/// subspaces compare equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Mat<u32>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Mat::filled(0, ambient, 0),
            pivots: Vec::new(),
        }
    }

    pub fn full(k: &PrimeField, ambient: usize) -> Self {
        Self::from_rows(k, &Mat::identity(k, ambient))
    }

    /// Span of the rows of `m`.
    pub fn from_rows(k: &PrimeField, m: &Mat<u32>) -> Self {
        let Rref { matrix, pivots } = rref(k, m);
        let d = pivots.len();
        Subspace {
            ambient: m.cols,
            basis: Mat::from_fn(d, m.cols, |i, j| matrix.get(i, j)),
            pivots,
        }
    }

    pub fn from_vectors(k: &PrimeField, ambient: usize, vs: &[Vec<u32>]) -> Result<Self> {
        if vs.iter().any(|v| v.len() != ambient) {
            return Err(Error::Dimension("vector length differs from ambient".into()));
        }
        if vs.is_empty() {
            return Ok(Self::zero(ambient));
        }
        Ok(Self::from_rows(k, &Mat::from_rows(vs)?))
    }

    /// Column space of `m`.
    pub fn column_space(k: &PrimeField, m: &Mat<u32>) -> Self {
        Self::from_rows(k, &m.transpose())
    }

    pub fn kernel_of(k: &PrimeField, m: &Mat<u32>) -> Self {
        let kb = kernel_basis(k, m);
        if kb.rows() == 0 {
            return Self::zero(m.cols);
        }
        Self::from_rows(k, &kb)
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &Mat<u32> {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> Vec<Vec<u32>> {
        self.basis.row_vecs()
    }

    /// Reduces `v` against the basis; the result is zero iff `v` lies in the space.
    pub fn reduce(&self, k: &PrimeField, v: &[u32]) -> Vec<u32> {
        let mut w = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let c = w[pc];
            if c != 0 {
                for (j, x) in w.iter_mut().enumerate() {
                    *x = k.sub(*x, k.mul(c, self.basis.get(i, j)));
                }
            }
        }
        w
    }

    pub fn contains(&self, k: &PrimeField, v: &[u32]) -> bool {
        self.reduce(k, v).iter().all(|&x| x == 0)
    }

    pub fn contains_space(&self, k: &PrimeField, o: &Subspace) -> bool {
        o.basis_vectors().iter().all(|v| self.contains(k, v))
    }

    pub fn sum(&self, k: &PrimeField, o: &Subspace) -> Result<Self> {
        if self.ambient != o.ambient {
            return Err(Error::Dimension("ambient mismatch".into()));
        }
        Ok(Self::from_rows(k, &self.basis.vstack(&o.basis)?))
    }

    /// Coordinates of a member vector in the echelon basis.
    pub fn coordinates(&self, v: &[u32]) -> Vec<u32> {
        self.pivots.iter().map(|&pc| v[pc]).collect()
    }

    /// Positions of the standard basis vectors that complete the echelon basis.
    pub fn complement_positions(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }
}

/// Rank, kernel and image of a matrix over F_p.
pub fn rref_rank_kernel_image(k: &PrimeField, m: &Mat<u32>) -> (usize, Subspace, Subspace) {
    let image = Subspace::column_space(k, m);
    let kernel = Subspace::kernel_of(k, m);
    (image.dim(), kernel, image)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ExtField;
    use proptest::prelude::*;

    fn fp(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn jordan_block(n: usize) -> Mat<u32> {
        Mat::from_fn(n, n, |i, j| u32::from(j == i + 1))
    }

    #[test]
    fn identity_and_zero() {
        let k = fp(3);
        let (r, ker, im) = rref_rank_kernel_image(&k, &Mat::identity(&k, 3));
        assert_eq!((r, ker.dim(), im.dim()), (3, 0, 3));
        let (r, ker, im) = rref_rank_kernel_image(&k, &Mat::zeros(&k, 2, 5));
        assert_eq!((r, ker.dim(), im.dim()), (0, 5, 0));
        assert_eq!(im, Subspace::zero(2));
    }

    #[test]
    fn nilpotent_block_ranks() {
        let k = fp(3);
        let j = jordan_block(3);
        let ranks: Vec<usize> = (1..=3).map(|e| rank(&k, &j.pow(&k, e).unwrap())).collect();
        assert_eq!(ranks, vec![2, 1, 0]);
    }

    #[test]
    fn inverse_roundtrip_and_singular() {
        let k = fp(7);
        let m = Mat::from_rows(&[vec![1, 2, 0], vec![0, 1, 4], vec![3, 0, 1]]).unwrap();
        let inv = inverse(&k, &m).unwrap();
        assert_eq!(m.mul(&k, &inv).unwrap(), Mat::identity(&k, 3));
        let s = Mat::from_rows(&[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(inverse(&k, &s), Err(Error::NotInvertible));
        assert_eq!(determinant(&k, &s).unwrap(), 0);
    }

    #[test]
    fn extension_field_rank() {
        let k = ExtField::new(3, 2).unwrap();
        let a = k.element(4);
        let m = Mat::from_rows(&[vec![k.one(), a], vec![a, k.mul(a, a)]]).unwrap();
        assert_eq!(rank(&k, &m), 1);
    }

    fn arb_mat(p: u32, rows: usize, cols: usize) -> impl Strategy<Value = Mat<u32>> {
        prop::collection::vec(0..p, rows * cols)
            .prop_map(move |d| Mat::from_vec(rows, cols, d).unwrap())
    }

    proptest! {
        #[test]
        fn rank_nullity((m, p) in (1usize..6, 1usize..7, prop_oneof![Just(2u32), Just(3), Just(5)])
            .prop_flat_map(|(r, c, p)| (arb_mat(p, r, c), Just(p))))
        {
            let k = fp(p);
            let (rk, ker, im) = rref_rank_kernel_image(&k, &m);
            prop_assert_eq!(rk + ker.dim(), m.cols());
            prop_assert_eq!(rk, rank(&k, &m.transpose()));
            for v in ker.basis_vectors() {
                prop_assert!(m.mul_vec(&k, &v).iter().all(|&x| x == 0));
            }
            for j in 0..m.cols() {
                prop_assert!(im.contains(&k, &m.column(j)));
            }
        }
    }
}
