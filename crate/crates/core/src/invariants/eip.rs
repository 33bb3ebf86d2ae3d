use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::locus::projective_points_ext;
use super::{Decision, Degree, Invariants};
use crate::error::{Error, Result};
use crate::field::{ExtField, Field, MAX_EXT_DEGREE};
use crate::linalg::{kernel_basis, Subspace};
use crate::modrep::Submodule;

/// Largest dimension for which the generic kernel is attempted.
pub const GENERIC_KERNEL_MAX_DIM: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KernelConfidence {
    /// Codimension equals deg¹.
    Verified,
    UnverifiedGreedy,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenericKernel {
    #[serde(skip)]
    pub submodule: Submodule,
    pub dim: usize,
    pub codim: usize,
    pub confidence: KernelConfidence,
}

impl Invariants {
    /// Equal images at level j: constant j-rank and the span of all
    /// coefficient columns of `θ^j` has dimension rk^j.
    pub fn eip(&self, j: u32) -> Result<Decision> {
        let c = self.constant_jrank_certify(j)?;
        if !c.is_constant() {
            return Ok(c.decision());
        }
        let level = self.level(j)?;
        let span = level.theta.coefficient_column_span();
        let eip = span.dim() == level.rank;
        if eip && self.module.r() >= 2 && level.rank > 0 {
            // images at two independent points must then coincide
            let k = *self.module.field();
            let im = |v: usize| {
                let mut pt = vec![0u32; self.module.r()];
                pt[v] = 1;
                let a = self.module.operator_at(&k, &pt)?.pow(&k, j)?;
                Ok::<_, Error>(Subspace::column_space(&k, &a))
            };
            if im(0)? != im(1)? {
                return Err(Error::Internal(format!("equal images fails at level {j}")));
            }
        }
        Ok(Decision::from_bool(eip))
    }

    /// Equal kernels at level j, i.e. equal images of the dual: the row
    /// span of the coefficients of `θ^j` has dimension rk^j.
    pub fn ekp(&self, j: u32) -> Result<Decision> {
        let c = self.constant_jrank_certify(j)?;
        if !c.is_constant() {
            return Ok(c.decision());
        }
        let level = self.level(j)?;
        let dual_theta = self.module.dual().theta(j)?;
        let ekp = dual_theta.coefficient_column_span().dim() == level.rank;
        let idx = j as usize - 1;
        if let Some(Ok(Degree::Value(deg))) = self.degrees[idx].get() {
            if (*deg == j * level.rank as u32) != ekp {
                return Err(Error::Internal(format!(
                    "equal kernels at level {j} disagrees with deg = {deg}"
                )));
            }
        }
        Ok(Decision::from_bool(ekp))
    }

    pub fn eip_all(&self) -> Result<Decision> {
        let mut v = Vec::new();
        for j in self.levels() {
            v.push(self.eip(j)?);
        }
        Ok(Decision::all(v))
    }

    pub fn ekp_all(&self) -> Result<Decision> {
        let mut v = Vec::new();
        for j in self.levels() {
            v.push(self.ekp(j)?);
        }
        Ok(Decision::all(v))
    }

    /// Whether the generic-kernel construction applies.
    pub fn generic_kernel_applies(&self) -> Result<bool> {
        let m = &self.module;
        Ok(m.r() == 2
            && m.is_commuting()
            && m.dim() <= GENERIC_KERNEL_MAX_DIM
            && self.constant_jrank_certify(1)?.is_constant())
    }

    /// Largest equal-images submodule, by greedy ascent from the sum of all
    /// point kernels.
    pub fn generic_kernel(&self) -> Result<GenericKernel> {
        if !self.generic_kernel_applies()? {
            return Err(Error::Unsupported(
                "generic kernel needs r = 2, a commuting frame, constant rank and dim ≤ 12".into(),
            ));
        }
        let m = &self.module;
        let k = *m.field();
        let n = m.dim();
        let p = m.p();
        // the kernel sum is Galois stable; its F_p form is spanned by the
        // coordinate vectors of kernel vectors over F_{p^e}
        let mut span = Subspace::zero(n);
        let mut prev: Option<usize> = None;
        for e in 1..=MAX_EXT_DEGREE {
            let ke = ExtField::new(p, e)?;
            if ke.order() + 1 > self.cfg.point_budget {
                return Err(Error::Resource("kernel sampling exceeds the point budget".into()));
            }
            let mut vs = Vec::new();
            for pt in projective_points_ext(&ke, 2) {
                let a = m.operator_at(&ke, &pt)?;
                let kb = kernel_basis(&ke, &a);
                for row in 0..kb.rows() {
                    for s in 0..e {
                        vs.push((0..n).map(|c| kb.get(row, c).coeffs()[s] as u32).collect::<Vec<u32>>());
                    }
                }
            }
            span = span.sum(&k, &Subspace::from_vectors(&k, n, &vs)?)?;
            if prev == Some(span.dim()) {
                break;
            }
            prev = Some(span.dim());
        }
        let mut kernel = m.submodule_span(&span.basis_vectors())?;
        if self.sub_eip(&kernel)? != Decision::Yes {
            return Err(Error::Internal("sum of point kernels lacks equal images".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.seed ^ 0x6e6b);
        'grow: loop {
            let comp = kernel.space().complement_positions();
            if comp.is_empty() {
                break;
            }
            let count = (p as u64).checked_pow(comp.len() as u32);
            let candidates: Vec<Vec<u32>> = match count {
                Some(c) if c <= self.cfg.point_budget => (1..c)
                    .map(|mut idx| {
                        let mut v = vec![0u32; n];
                        for &q in &comp {
                            v[q] = (idx % p as u64) as u32;
                            idx /= p as u64;
                        }
                        v
                    })
                    .collect(),
                _ => {
                    let mut c: Vec<Vec<u32>> = comp
                        .iter()
                        .map(|&q| {
                            let mut v = vec![0u32; n];
                            v[q] = 1;
                            v
                        })
                        .collect();
                    for _ in 0..256 {
                        let mut v = vec![0u32; n];
                        for &q in &comp {
                            v[q] = rng.gen_range(0..p);
                        }
                        c.push(v);
                    }
                    c
                }
            };
            for v in candidates {
                let mut gens = kernel.space().basis_vectors();
                gens.push(v);
                let bigger = m.submodule_span(&gens)?;
                if bigger.dim() > kernel.dim() && self.sub_eip(&bigger)? == Decision::Yes {
                    kernel = bigger;
                    continue 'grow;
                }
            }
            break;
        }
        let codim = n - kernel.dim();
        let confidence = match self.jdegree(1)? {
            Degree::Value(d) if d as usize == codim => KernelConfidence::Verified,
            _ => KernelConfidence::UnverifiedGreedy,
        };
        Ok(GenericKernel {
            dim: kernel.dim(),
            codim,
            submodule: kernel,
            confidence,
        })
    }

    fn sub_eip(&self, s: &Submodule) -> Result<Decision> {
        if s.dim() == 0 {
            return Ok(Decision::Yes);
        }
        let sub = Invariants::new(self.module.submodule(s)?, self.cfg.clone());
        sub.eip_all()
    }
}
