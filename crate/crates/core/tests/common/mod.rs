//! Test-side oracles written without the library's linear algebra.
#![allow(dead_code)]

use modinv::linalg::Mat;
use modinv::modrep::{catalog, zoo, Limits, ModuleRep, PPoint};
use rand::Rng;

pub type Dense = Vec<Vec<u32>>;

pub fn dense(m: &Mat<u32>) -> Dense {
    m.row_vecs()
}

pub fn mat_mul(a: &Dense, b: &Dense, p: u32) -> Dense {
    let (n, m, l) = (a.len(), b.len(), b.first().map_or(0, |r| r.len()));
    let mut out = vec![vec![0u32; l]; n];
    for i in 0..n {
        for k in 0..m {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..l {
                out[i][j] = ((out[i][j] as u64 + a[i][k] as u64 * b[k][j] as u64) % p as u64) as u32;
            }
        }
    }
    out
}

fn inv_mod(a: u32, p: u32) -> u32 {
    (1..p).find(|&x| (a as u64 * x as u64) % p as u64 == 1).expect("unit")
}

/// Rank by plain Gaussian elimination mod p.
pub fn naive_rank(m: &Dense, p: u32) -> usize {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..rows).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, pr);
        let inv = inv_mod(a[rank][c], p);
        for r in 0..rows {
            if r != rank && a[r][c] != 0 {
                let f = (a[r][c] as u64 * inv as u64) % p as u64;
                for t in 0..cols {
                    let v = (a[r][t] as u64 + (p as u64 - f) * a[rank][t] as u64) % p as u64;
                    a[r][t] = v as u32;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Size of the kernel by enumerating every vector of F_p^n.
pub fn brute_kernel_size(m: &Dense, p: u32) -> u64 {
    let n = m.first().map_or(0, |r| r.len());
    let total = (p as u64).pow(n as u32);
    let mut count = 0;
    let mut v = vec![0u32; n];
    for mut idx in 0..total {
        for x in v.iter_mut() {
            *x = (idx % p as u64) as u32;
            idx /= p as u64;
        }
        if m.iter().all(|row| row.iter().zip(&v).map(|(&a, &b)| a as u64 * b as u64).sum::<u64>() % p as u64 == 0) {
            count += 1;
        }
    }
    count
}

/// Jordan block counts a_1..a_p of a nilpotent operator from the kernel
/// flag dim ker A^i; kernels are counted by brute force when small.
pub fn jordan_oracle(a: &Dense, p: u32) -> Vec<usize> {
    let n = a.len();
    let mut kernel_dims = vec![0usize];
    let mut pw: Dense = (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect();
    for _ in 1..=p {
        pw = mat_mul(&pw, a, p);
        let dim = if (p as u64).pow(n as u32) <= 20_000 {
            let size = brute_kernel_size(&pw, p);
            (0..=n).find(|&d| (p as u64).pow(d as u32) == size).expect("power of p")
        } else {
            n - naive_rank(&pw, p)
        };
        kernel_dims.push(dim);
    }
    assert_eq!(kernel_dims[p as usize], n, "not p-nilpotent");
    // blocks of size ≥ i: dim ker A^i − dim ker A^{i−1}
    let at_least: Vec<usize> = (1..=p as usize).map(|i| kernel_dims[i] - kernel_dims[i - 1]).collect();
    (0..p as usize)
        .map(|i| at_least[i] - at_least.get(i + 1).copied().unwrap_or(0))
        .collect()
}

/// Σ λ_i X_i with plain arithmetic.
pub fn operator(m: &ModuleRep, point: &[u32]) -> Dense {
    let p = m.p();
    let n = m.dim();
    let mut out = vec![vec![0u32; n]; n];
    for (x, &c) in m.gens().iter().zip(point) {
        for i in 0..n {
            for j in 0..n {
                out[i][j] = ((out[i][j] as u64 + c as u64 * x.get(i, j) as u64) % p as u64) as u32;
            }
        }
    }
    out
}

/// u(X_1, …, X_r) for a p-point given by its terms, with plain arithmetic.
pub fn pullback_oracle(m: &ModuleRep, terms: &[(Vec<u16>, u32)]) -> Dense {
    let p = m.p();
    let n = m.dim();
    let gens: Vec<Dense> = m.gens().iter().map(dense).collect();
    let mut out = vec![vec![0u32; n]; n];
    for (e, c) in terms {
        let mut t: Dense = (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect();
        for (g, &k) in gens.iter().zip(e) {
            for _ in 0..k {
                t = mat_mul(&t, g, p);
            }
        }
        for i in 0..n {
            for j in 0..n {
                out[i][j] = ((out[i][j] as u64 + *c as u64 * t[i][j] as u64) % p as u64) as u32;
            }
        }
    }
    out
}

pub fn random_ppoint<R: Rng>(rng: &mut R, p: u32, r: usize) -> (PPoint, Vec<(Vec<u16>, u32)>) {
    loop {
        let mut terms = Vec::new();
        for i in 0..r {
            let mut e = vec![0u16; r];
            e[i] = 1;
            terms.push((e, rng.gen_range(0..p)));
        }
        for _ in 0..rng.gen_range(0..3) {
            let e: Vec<u16> = (0..r).map(|_| rng.gen_range(0..p as u16)).collect();
            if e.iter().map(|&a| a as u32).sum::<u32>() >= 2 {
                terms.push((e, rng.gen_range(1..p)));
            }
        }
        if let Ok(u) = PPoint::new(p, r, terms.clone()) {
            return (u, terms);
        }
    }
}

/// The catalog at each prime, built with the default limits.
pub fn zoo_modules(primes: &[u32]) -> Vec<(String, ModuleRep)> {
    let mut out = Vec::new();
    for &p in primes {
        for spec in catalog(p).unwrap() {
            out.push((spec.to_string(), zoo(&spec, &Limits::default()).unwrap()));
        }
    }
    out
}

/// A random commuting frame of dimension n: polynomials without constant
/// term in one conjugated nilpotent matrix. `None` if it is not p-trivial.
pub fn random_commuting_frame<R: Rng>(rng: &mut R, p: u32, r: usize, n: usize) -> Option<ModuleRep> {
    let mut nil = vec![vec![0u32; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            nil[i][j] = rng.gen_range(0..p);
        }
    }
    // conjugate by a random unit upper times unit lower triangular matrix
    let mut up: Dense = (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect();
    let mut low = up.clone();
    for i in 0..n {
        for j in i + 1..n {
            up[i][j] = rng.gen_range(0..p);
            low[j][i] = rng.gen_range(0..p);
        }
    }
    let t = mat_mul(&up, &low, p);
    let t_inv = invert(&t, p);
    let conj = mat_mul(&mat_mul(&t, &nil, p), &t_inv, p);
    let mut powers = vec![conj.clone()];
    for _ in 1..n {
        let next = mat_mul(powers.last().unwrap(), &conj, p);
        powers.push(next);
    }
    let gens: Vec<Mat<u32>> = (0..r)
        .map(|_| {
            let mut x = vec![vec![0u32; n]; n];
            for pw in &powers {
                let c = rng.gen_range(0..p);
                for i in 0..n {
                    for j in 0..n {
                        x[i][j] = ((x[i][j] as u64 + c as u64 * pw[i][j] as u64) % p as u64) as u32;
                    }
                }
            }
            Mat::from_rows(&x).unwrap()
        })
        .collect();
    ModuleRep::new(p, gens).ok()
}

fn invert(a: &Dense, p: u32) -> Dense {
    let n = a.len();
    let mut m: Dense = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u32::from(i == j)));
            r
        })
        .collect();
    for c in 0..n {
        let pr = (c..n).find(|&r| m[r][c] != 0).expect("invertible");
        m.swap(c, pr);
        let inv = inv_mod(m[c][c], p);
        for t in 0..2 * n {
            m[c][t] = ((m[c][t] as u64 * inv as u64) % p as u64) as u32;
        }
        for r in 0..n {
            if r != c && m[r][c] != 0 {
                let f = m[r][c] as u64;
                for t in 0..2 * n {
                    m[r][t] = ((m[r][t] as u64 + (p as u64 - f) * m[c][t] as u64) % p as u64) as u32;
                }
            }
        }
    }
    m.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// Random invertible r×r matrix over F_p.
pub fn random_invertible<R: Rng>(rng: &mut R, p: u32, r: usize) -> Mat<u32> {
    loop {
        let rows: Dense = (0..r).map(|_| (0..r).map(|_| rng.gen_range(0..p)).collect()).collect();
        if naive_rank(&rows, p) == r {
            return Mat::from_rows(&rows).unwrap();
        }
    }
}
