//! Morphisms to projective space, represented by defining systems of forms.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::gcd::poly_gcd;
use crate::linalg::{rank, Mat};
use crate::mpoly::{Mono, MPoly};

/// A tuple `(f_0, …, f_m)` of forms of one common degree, not all zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefiningSystem {
    entries: Vec<MPoly>,
    degree: u32,
    reduced: bool,
}

impl DefiningSystem {
    pub fn new(entries: Vec<MPoly>) -> Result<Self> {
        let first = entries
            .iter()
            .find(|f| !f.is_zero())
            .ok_or(Error::UndefinedSystem)?;
        let (field, nvars) = (first.field(), first.nvars());
        if entries.iter().any(|f| f.field() != field || f.nvars() != nvars) {
            return Err(Error::Dimension("entries from different rings".into()));
        }
        let degree = first.total_degree().unwrap();
        for f in entries.iter().filter(|f| !f.is_zero()) {
            if !f.is_homogeneous() || f.total_degree() != Some(degree) {
                return Err(Error::Degenerate(format!(
                    "entry {f} is not a form of degree {degree}"
                )));
            }
        }
        let reduced = degree == 0 || poly_gcd(&entries)?.is_constant();
        Ok(DefiningSystem {
            entries,
            degree,
            reduced,
        })
    }

    pub fn entries(&self) -> &[MPoly] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Common degree of the entries, which is not the degree of the morphism
    /// unless the system is reduced.
    pub fn form_degree(&self) -> u32 {
        self.degree
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn nvars(&self) -> usize {
        self.first().nvars()
    }

    pub fn field(&self) -> PrimeField {
        self.first().field()
    }

    fn first(&self) -> &MPoly {
        self.entries.iter().find(|f| !f.is_zero()).unwrap()
    }

    /// Scales so that the first nonzero entry is monic.
    pub fn normalize(&self) -> Self {
        let f = self.first();
        let (_, c) = f.lead().unwrap();
        let inv = crate::field::Field::inv(&f.field(), c).unwrap();
        DefiningSystem {
            entries: self.entries.iter().map(|e| e.scale(inv)).collect(),
            ..self.clone()
        }
    }

    /// Divides out the gcd `h` of the entries; returns the normalized reduced
    /// system and the monic `h`.
    pub fn reduce(&self) -> Result<(Self, MPoly)> {
        let h = poly_gcd(&self.entries)?;
        let entries = self
            .entries
            .iter()
            .map(|f| f.divexact(&h))
            .collect::<Result<Vec<_>>>()?;
        let degree = self.degree - h.total_degree().unwrap();
        let out = DefiningSystem {
            entries,
            degree,
            reduced: true,
        };
        Ok((out.normalize(), h))
    }

    /// Degree of the morphism: the form degree of a reduced system.
    pub fn degree(&self) -> Result<u32> {
        if self.reduced {
            return Ok(self.degree);
        }
        Ok(self.reduce()?.0.degree)
    }

    /// `self ∘ inner`: substitutes the entries of `inner` for the variables.
    pub fn compose(&self, inner: &DefiningSystem) -> Result<Self> {
        if inner.len() != self.nvars() {
            return Err(Error::Dimension(format!(
                "outer system in {} variables composed with {} entries",
                self.nvars(),
                inner.len()
            )));
        }
        let entries = self
            .entries
            .iter()
            .map(|f| {
                if f.is_zero() {
                    Ok(MPoly::zero(inner.field(), inner.nvars()))
                } else {
                    f.subs(&inner.entries)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        if entries.iter().all(|f| f.is_zero()) {
            return Err(Error::UndefinedSystem);
        }
        DefiningSystem::new(entries)
    }

    /// Restriction to the line through `a` and `b`: `t_i = a_i u + b_i v`.
    pub fn line_restrict(&self, a: &[u32], b: &[u32]) -> Result<Self> {
        let r = self.nvars();
        if a.len() != r || b.len() != r {
            return Err(Error::Dimension(format!("points must have {r} coordinates")));
        }
        let k = self.field();
        let pts = Mat::from_rows(&[a.to_vec(), b.to_vec()])?;
        if rank(&k, &pts) < 2 {
            return Err(Error::Degenerate("points are projectively dependent".into()));
        }
        let line: Vec<MPoly> = (0..r)
            .map(|i| {
                MPoly::from_terms(
                    k,
                    2,
                    [(Mono::var(0), a[i] % k.p()), (Mono::var(1), b[i] % k.p())],
                )
            })
            .collect();
        let line = DefiningSystem {
            entries: line,
            degree: 1,
            reduced: true,
        };
        self.compose(&line)
    }

    /// Whether both systems define the same morphism on a common open set:
    /// equal reduced tuples up to a scalar.
    pub fn same_morphism(&self, other: &Self) -> Result<bool> {
        Ok(self.reduce()?.0 == other.reduce()?.0)
    }
}

/// The d-th Veronese map on P^{r-1}: all monomials of degree d, in
/// descending graded-lexicographic order.
pub fn veronese(field: PrimeField, nvars: usize, d: u32) -> Result<DefiningSystem> {
    if nvars == 0 {
        return Err(Error::Dimension("no variables".into()));
    }
    let mut monos = Vec::new();
    let mut e = vec![0u16; nvars];
    fn rec(v: usize, left: u32, e: &mut Vec<u16>, out: &mut Vec<Mono>) {
        if v + 1 == e.len() {
            e[v] = left as u16;
            out.push(Mono::from_exps(e));
            return;
        }
        for a in (0..=left).rev() {
            e[v] = a as u16;
            rec(v + 1, left - a, e, out);
        }
    }
    rec(0, d, &mut e, &mut monos);
    DefiningSystem::new(
        monos
            .into_iter()
            .map(|m| MPoly::monomial(field, nvars, m, 1))
            .collect(),
    )
}

/// Identity of P^{r-1}.
pub fn identity_system(field: PrimeField, nvars: usize) -> Result<DefiningSystem> {
    DefiningSystem::new((0..nvars).map(|i| MPoly::var(field, nvars, i)).collect())
}

/// The linear system given by the rows of `a`: `f_i = Σ_j a_ij t_j`.
pub fn linear_system(field: PrimeField, a: &Mat<u32>) -> Result<DefiningSystem> {
    let nvars = a.cols();
    DefiningSystem::new(
        (0..a.rows())
            .map(|i| {
                MPoly::from_terms(
                    field,
                    nvars,
                    (0..nvars).map(|j| (Mono::var(j), a.get(i, j))),
                )
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn fp(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn sys(k: PrimeField, n: usize, es: &[&[(&[u16], u32)]]) -> DefiningSystem {
        DefiningSystem::new(es.iter().map(|t| MPoly::from_exp_terms(k, n, t)).collect()).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let k = fp(5);
        let s = sys(k, 2, &[&[(&[2, 1], 1)], &[(&[1, 2], 1)]]);
        assert!(!s.is_reduced());
        let (red, h) = s.reduce().unwrap();
        assert_eq!(red, sys(k, 2, &[&[(&[1, 0], 1)], &[(&[0, 1], 1)]]));
        assert_eq!(h, MPoly::from_exp_terms(k, 2, &[(&[1, 1], 1)]));
        assert_eq!(s.degree().unwrap(), 1);

        let k3 = fp(3);
        let v = sys(k3, 2, &[&[(&[2, 0], 1)], &[(&[1, 1], 2)], &[(&[0, 2], 1)]]);
        let (red, h) = v.reduce().unwrap();
        assert_eq!(red, v);
        assert!(h.is_constant());

        let f = MPoly::from_exp_terms(k, 2, &[(&[1, 0], 1), (&[0, 1], 2)]);
        let s = DefiningSystem::new(vec![f.clone(), MPoly::zero(k, 2), f.clone()]).unwrap();
        let (red, h) = s.reduce().unwrap();
        assert_eq!(h, f);
        assert_eq!(
            red.entries(),
            &[MPoly::one(k, 2), MPoly::zero(k, 2), MPoly::one(k, 2)]
        );
        assert_eq!(red.degree().unwrap(), 0);
    }

    #[test]
    fn invalid_systems() {
        let k = fp(3);
        assert_eq!(
            DefiningSystem::new(vec![MPoly::zero(k, 2)]),
            Err(Error::UndefinedSystem)
        );
        let bad = vec![
            MPoly::from_exp_terms(k, 2, &[(&[1, 0], 1)]),
            MPoly::from_exp_terms(k, 2, &[(&[2, 0], 1)]),
        ];
        assert!(matches!(DefiningSystem::new(bad), Err(Error::Degenerate(_))));
    }

    #[test]
    fn degree_examples() {
        let k = fp(7);
        for d in 1..=4 {
            assert_eq!(veronese(k, 2, d).unwrap().degree().unwrap(), d);
            assert_eq!(veronese(k, 3, d).unwrap().degree().unwrap(), d);
        }
        let a = Mat::from_rows(&[vec![1, 2, 0], vec![0, 1, 3], vec![4, 0, 1]]).unwrap();
        assert_eq!(linear_system(k, &a).unwrap().degree().unwrap(), 1);
    }

    #[test]
    fn compose_examples() {
        let k = fp(5);
        let psi = sys(k, 2, &[&[(&[3, 0], 1)], &[(&[0, 3], 1)]]);
        let phi = sys(k, 2, &[&[(&[2, 0], 1)], &[(&[0, 2], 1)]]);
        let c = psi.compose(&phi).unwrap();
        assert_eq!(c, sys(k, 2, &[&[(&[6, 0], 1)], &[(&[0, 6], 1)]]));
        assert_eq!(c.degree().unwrap(), 6);
        let id = identity_system(k, 2).unwrap();
        assert_eq!(id.compose(&phi).unwrap(), phi);
        // ν_2 after the automorphism (s, t) ↦ (s + t, 2s + 3t), expanded by hand
        let lin = linear_system(k, &Mat::from_rows(&[vec![1, 1], vec![2, 3]]).unwrap()).unwrap();
        let got = veronese(k, 2, 2).unwrap().compose(&lin).unwrap();
        let want = sys(
            k,
            2,
            &[
                &[(&[2, 0], 1), (&[1, 1], 2), (&[0, 2], 1)],
                &[(&[2, 0], 2), (&[1, 1], 5), (&[0, 2], 3)],
                &[(&[2, 0], 4), (&[1, 1], 12), (&[0, 2], 9)],
            ],
        );
        assert_eq!(got, want);
        assert_eq!(got.degree().unwrap(), 2);
        assert!(matches!(psi.compose(&veronese(k, 2, 2).unwrap()), Err(Error::Dimension(_))));
    }

    #[test]
    fn line_restriction() {
        let k = fp(3);
        let id = identity_system(k, 3).unwrap();
        let l = id.line_restrict(&[1, 0, 0], &[0, 1, 0]).unwrap();
        assert_eq!(l, sys(k, 2, &[&[(&[1, 0], 1)], &[(&[0, 1], 1)], &[]]));
        let l = veronese(k, 3, 2)
            .unwrap()
            .line_restrict(&[1, 2, 0], &[0, 1, 1])
            .unwrap();
        assert_eq!(l.nvars(), 2);
        assert_eq!(l.degree().unwrap(), 2);
        let c = DefiningSystem::new(vec![MPoly::one(k, 3), MPoly::constant(k, 3, 2)]).unwrap();
        assert_eq!(c.line_restrict(&[1, 0, 0], &[0, 0, 1]).unwrap().degree().unwrap(), 0);
        assert!(matches!(
            id.line_restrict(&[1, 1, 0], &[2, 2, 0]),
            Err(Error::Degenerate(_))
        ));
    }

    fn random_form(rng: &mut impl Rng, k: PrimeField, n: usize, d: u32) -> MPoly {
        let v = veronese(k, n, d).unwrap();
        let mut f = MPoly::zero(k, n);
        for m in v.entries() {
            f = f.add(&m.scale(rng.gen_range(0..k.p())));
        }
        f
    }

    /// Binary system of degree `d` with gcd 1, i.e. a morphism on all of P^1.
    fn random_morphism(rng: &mut impl Rng, k: PrimeField, len: usize, d: u32) -> DefiningSystem {
        loop {
            let es: Vec<MPoly> = (0..len).map(|_| random_form(rng, k, 2, d)).collect();
            if let Ok(s) = DefiningSystem::new(es) {
                if s.is_reduced() && s.form_degree() == d {
                    return s;
                }
            }
        }
    }

    #[test]
    fn multiplying_through_keeps_degree() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let k = fp(7);
        for _ in 0..30 {
            let d = rng.gen_range(1..4);
            let s = random_morphism(&mut rng, k, 3, d);
            let h = loop {
                let d = rng.gen_range(1..3);
                let h = random_form(&mut rng, k, 2, d);
                if !h.is_zero() {
                    break h;
                }
            };
            let t = DefiningSystem::new(s.entries().iter().map(|f| f.mul(&h)).collect()).unwrap();
            assert_eq!(t.degree().unwrap(), s.degree().unwrap());
            assert!(t.same_morphism(&s).unwrap());
            let (r1, _) = t.reduce().unwrap();
            let (r2, h2) = r1.reduce().unwrap();
            assert_eq!(r1, r2);
            assert_eq!(h2.constant_value(), Some(1));
        }
    }

    #[test]
    fn composition_is_multiplicative() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for trial in 0..50 {
            let k = fp([3, 5, 7][trial % 3]);
            let (d1, d2) = (rng.gen_range(1..4), rng.gen_range(1..4));
            let outer = random_morphism(&mut rng, k, 2 + trial % 2, d1);
            let inner = random_morphism(&mut rng, k, 2, d2);
            let c = outer.compose(&inner).unwrap();
            assert_eq!(
                c.degree().unwrap(),
                outer.degree().unwrap() * inner.degree().unwrap()
            );
        }
    }
}
