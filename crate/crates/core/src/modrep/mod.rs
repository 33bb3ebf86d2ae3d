//! Modules over p-trivial frames: r nilpotent matrices whose generic linear
//! combination has vanishing p-th power.

mod io;
mod zoo;

pub use io::{module_from_json, module_to_json, ModuleFile};
pub use zoo::{
    catalog, h_module, heisenberg3, lift_gens, m3xy_module, mn_module, monomial_basis,
    mr2_module, parse_zoo_spec, rad_submodule, regular_module, regular_module_with,
    soc_submodule_module, trivial_module, vr1_module, zoo, ZooSpec,
};

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::linalg::{inverse, Mat, Subspace, ThetaPower};
use crate::mpoly::chart_name;

/// Size caps for constructed and loaded modules.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest admissible `p^r` for regular modules.
    pub max_order: u64,
    pub max_dim: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: 3125,
            max_dim: 64,
        }
    }
}

impl Limits {
    pub fn check_dim(&self, n: usize) -> Result<()> {
        if n > self.max_dim {
            return Err(Error::Resource(format!(
                "dimension {n} exceeds the cap of {}",
                self.max_dim
            )));
        }
        Ok(())
    }
}

/// How a frame was shown to be p-trivial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrameRoute {
    /// Pairwise commuting generators with vanishing p-th powers.
    Commuting,
    /// Full expansion of θ^p.
    Expansion,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleRep {
    field: PrimeField,
    gens: Vec<Mat<u32>>,
    n: usize,
    commuting: bool,
}

/// Checks that `(Σ t_i X_i)^p = 0` identically.
pub fn validate_frame(field: &PrimeField, gens: &[Mat<u32>]) -> Result<FrameRoute> {
    let p = field.p();
    let names = |v: usize| chart_name(v);
    if commute_pairwise(field, gens) {
        for (i, x) in gens.iter().enumerate() {
            let xp = x.pow(field, p)?;
            if let Some((row, col)) = first_nonzero(&xp) {
                return Err(Error::InvalidFrame {
                    witness: format!("{}^{p}", names(i)),
                    row,
                    col,
                });
            }
        }
        return Ok(FrameRoute::Commuting);
    }
    let th = ThetaPower::new(*field, gens, p)?;
    if let Some((m, c)) = th.terms().first() {
        let (row, col) = first_nonzero(c).expect("stored coefficients are nonzero");
        return Err(Error::InvalidFrame {
            witness: m.fmt_with(gens.len(), &names),
            row,
            col,
        });
    }
    Ok(FrameRoute::Expansion)
}

fn first_nonzero(m: &Mat<u32>) -> Option<(usize, usize)> {
    let idx = m.data().iter().position(|&x| x != 0)?;
    Some((idx / m.cols(), idx % m.cols()))
}

fn commute_pairwise(k: &PrimeField, gens: &[Mat<u32>]) -> bool {
    (0..gens.len()).all(|i| {
        (i + 1..gens.len()).all(|j| {
            gens[i].mul(k, &gens[j]).unwrap() == gens[j].mul(k, &gens[i]).unwrap()
        })
    })
}

impl ModuleRep {
    /// Validated frame under the default [`Limits`].
    pub fn new(p: u32, gens: Vec<Mat<u32>>) -> Result<Self> {
        Self::with_limits(p, gens, &Limits::default())
    }

    pub fn with_limits(p: u32, gens: Vec<Mat<u32>>, limits: &Limits) -> Result<Self> {
        let field = PrimeField::new(p)?;
        if gens.is_empty() {
            return Err(Error::Dimension("a frame needs at least one generator".into()));
        }
        let n = gens[0].rows();
        if gens.iter().any(|g| g.rows() != n || g.cols() != n) {
            return Err(Error::Dimension("generators must be square of equal size".into()));
        }
        limits.check_dim(n)?;
        if let Some(&x) = gens.iter().flat_map(|g| g.data()).find(|&&x| x >= p) {
            return Err(Error::Range(format!("entry {x} is not a residue mod {p}")));
        }
        validate_frame(&field, &gens)?;
        Ok(Self::trusted(field, gens))
    }

    /// For frames that are p-trivial by construction.
    pub(crate) fn trusted(field: PrimeField, gens: Vec<Mat<u32>>) -> Self {
        let n = gens[0].rows();
        let commuting = commute_pairwise(&field, &gens);
        ModuleRep {
            field,
            gens,
            n,
            commuting,
        }
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    /// Number of generators.
    pub fn r(&self) -> usize {
        self.gens.len()
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[Mat<u32>] {
        &self.gens
    }

    pub fn is_commuting(&self) -> bool {
        self.commuting
    }

    pub fn validate(&self) -> Result<FrameRoute> {
        validate_frame(&self.field, &self.gens)
    }

    /// `θ^j` in coefficient form.
    pub fn theta(&self, j: u32) -> Result<ThetaPower> {
        ThetaPower::new(self.field, &self.gens, j)
    }

    /// `Σ λ_i X_i` over any field containing F_p.
    pub fn operator_at<F: Field>(&self, k: &F, point: &[F::Elem]) -> Result<Mat<F::Elem>> {
        if point.len() != self.r() {
            return Err(Error::Dimension(format!(
                "point of length {} for {} generators",
                point.len(),
                self.r()
            )));
        }
        let mut out = Mat::zeros(k, self.n, self.n);
        for (x, &l) in self.gens.iter().zip(point) {
            if k.is_zero(l) {
                continue;
            }
            let lifted = x.map(|e| k.from_u32(e));
            out = out.add(k, &lifted.scale(k, l))?;
        }
        Ok(out)
    }

    /// Generators replaced by negated transposes.
    pub fn dual(&self) -> Self {
        let k = self.field;
        Self::trusted(k, self.gens.iter().map(|x| x.transpose().neg(&k)).collect())
    }

    pub fn direct_sum(&self, o: &Self) -> Result<Self> {
        if self.p() != o.p() || self.r() != o.r() {
            return Err(Error::Compatibility(format!(
                "(p, r) = ({}, {}) vs ({}, {})",
                self.p(),
                self.r(),
                o.p(),
                o.r()
            )));
        }
        Ok(Self::trusted(
            self.field,
            self.gens
                .iter()
                .zip(&o.gens)
                .map(|(a, b)| a.block_diag(b, 0))
                .collect(),
        ))
    }

    /// New generators `Y_i = Σ_j g_ji X_j`.
    pub fn change_of_generators(&self, g: &Mat<u32>) -> Result<Self> {
        let k = self.field;
        let r = self.r();
        if g.rows() != r || g.cols() != r {
            return Err(Error::Dimension(format!("expected a {r}x{r} matrix")));
        }
        inverse(&k, g)?;
        let mut gens = Vec::with_capacity(r);
        for i in 0..r {
            let mut y = Mat::zeros(&k, self.n, self.n);
            for j in 0..r {
                let c = g.get(j, i) % k.p();
                if c != 0 {
                    y = y.add(&k, &self.gens[j].scale(&k, c))?;
                }
            }
            gens.push(y);
        }
        Ok(Self::trusted(k, gens))
    }

    /// Evaluates a p-point on the generators; needs a commuting frame.
    pub fn pullback_ppoint(&self, u: &PPoint) -> Result<Mat<u32>> {
        if !self.commuting {
            return Err(Error::Unsupported(
                "p-points need pairwise commuting generators".into(),
            ));
        }
        if u.nvars() != self.r() {
            return Err(Error::Dimension(format!(
                "p-point in {} variables for {} generators",
                u.nvars(),
                self.r()
            )));
        }
        let k = self.field;
        let mut out = Mat::zeros(&k, self.n, self.n);
        for (e, c) in &u.terms {
            let mut m = Mat::identity(&k, self.n);
            for (x, &a) in self.gens.iter().zip(e) {
                if a > 0 {
                    m = m.mul(&k, &x.pow(&k, a as u32)?)?;
                }
            }
            out = out.add(&k, &m.scale(&k, *c))?;
        }
        debug_assert!(out.pow(&k, k.p())?.is_zero(&k));
        Ok(out)
    }

    /// Whether the subspace is stable under every generator.
    pub fn is_submodule(&self, s: &Subspace) -> bool {
        let k = self.field;
        s.basis_vectors()
            .iter()
            .all(|v| self.gens.iter().all(|x| s.contains(&k, &x.mul_vec(&k, v))))
    }

    /// Smallest submodule containing the vectors.
    pub fn submodule_span(&self, vectors: &[Vec<u32>]) -> Result<Submodule> {
        let k = self.field;
        let mut space = Subspace::from_vectors(&k, self.n, vectors)?;
        let mut frontier = space.basis_vectors();
        while let Some(v) = frontier.pop() {
            for x in &self.gens {
                let w = x.mul_vec(&k, &v);
                if !space.contains(&k, &w) {
                    space = space.sum(&k, &Subspace::from_vectors(&k, self.n, &[w.clone()])?)?;
                    frontier.push(w);
                }
            }
        }
        assert!(self.is_submodule(&space));
        Ok(Submodule { space })
    }

    /// `Σ_i X_i · s`.
    pub fn radical_of(&self, s: &Subspace) -> Subspace {
        let k = self.field;
        let vs: Vec<Vec<u32>> = s
            .basis_vectors()
            .iter()
            .flat_map(|v| self.gens.iter().map(move |x| x.mul_vec(&k, v)))
            .collect();
        Subspace::from_vectors(&k, self.n, &vs).expect("lengths match")
    }

    /// `{v : X_i v ∈ s for all i}`.
    pub fn socle_over(&self, s: &Subspace) -> Subspace {
        let k = self.field;
        // kernel of v ↦ (X_i v mod s)_i, using the complement coordinates of s
        let comp = s.complement_positions();
        let mut rows = Vec::new();
        for x in &self.gens {
            let cols: Vec<Vec<u32>> = (0..self.n)
                .map(|c| {
                    let mut e = vec![0u32; self.n];
                    e[c] = 1;
                    let red = s.reduce(&k, &x.mul_vec(&k, &e));
                    comp.iter().map(|&q| red[q]).collect()
                })
                .collect();
            for q in 0..comp.len() {
                rows.push((0..self.n).map(|c| cols[c][q]).collect::<Vec<u32>>());
            }
        }
        if rows.is_empty() {
            return Subspace::full(&k, self.n);
        }
        Subspace::kernel_of(&k, &Mat::from_rows(&rows).expect("equal lengths"))
    }

    /// `Rad^s` for `s ≥ 0`.
    pub fn radical_power(&self, s: usize) -> Submodule {
        let mut space = Subspace::full(&self.field, self.n);
        for _ in 0..s {
            if space.dim() == 0 {
                break;
            }
            space = self.radical_of(&space);
        }
        Submodule { space }
    }

    /// `Soc_s` for `s ≥ 0`.
    pub fn socle_power(&self, s: usize) -> Submodule {
        let mut space = Subspace::zero(self.n);
        for _ in 0..s {
            if space.dim() == self.n {
                break;
            }
            space = self.socle_over(&space);
        }
        Submodule { space }
    }

    /// Smallest `L` with `Rad^L = 0`.
    pub fn loewy_length(&self) -> usize {
        self.series(SeriesKind::Radical).len() - 1
    }

    /// Radical series `M = Rad^0 ⊋ … ⊋ 0` or socle series `0 = Soc^0 ⊊ … ⊊ M`.
    pub fn series(&self, kind: SeriesKind) -> Vec<Submodule> {
        let mut out = Vec::new();
        match kind {
            SeriesKind::Radical => {
                let mut space = Subspace::full(&self.field, self.n);
                loop {
                    let done = space.dim() == 0;
                    out.push(Submodule {
                        space: space.clone(),
                    });
                    if done {
                        break;
                    }
                    space = self.radical_of(&space);
                }
            }
            SeriesKind::Socle => {
                let mut space = Subspace::zero(self.n);
                loop {
                    let done = space.dim() == self.n;
                    out.push(Submodule {
                        space: space.clone(),
                    });
                    if done {
                        break;
                    }
                    space = self.socle_over(&space);
                }
            }
        }
        out
    }

    /// `M / Rad^s(M)` for `1 ≤ s ≤ L`.
    pub fn rad_quotient(&self, s: usize) -> Result<Self> {
        self.check_layer(s)?;
        self.quotient(&self.radical_power(s))
    }

    /// `Soc_s(M)` for `1 ≤ s ≤ L`.
    pub fn socle_submodule(&self, s: usize) -> Result<Submodule> {
        self.check_layer(s)?;
        Ok(self.socle_power(s))
    }

    fn check_layer(&self, s: usize) -> Result<()> {
        let l = self.loewy_length();
        if s == 0 || s > l {
            return Err(Error::Range(format!("layer {s} outside 1..={l}")));
        }
        Ok(())
    }

    /// Induced action on a submodule, in its echelon basis.
    pub fn submodule(&self, s: &Submodule) -> Result<Self> {
        let k = self.field;
        let sp = &s.space;
        if sp.ambient() != self.n {
            return Err(Error::Dimension("submodule of a different space".into()));
        }
        if sp.dim() == 0 {
            return Err(Error::Degenerate("zero submodule".into()));
        }
        let basis = sp.basis_vectors();
        let gens = self
            .gens
            .iter()
            .map(|x| {
                let cols: Vec<Vec<u32>> = basis
                    .iter()
                    .map(|v| {
                        let w = x.mul_vec(&k, v);
                        debug_assert!(sp.contains(&k, &w));
                        sp.coordinates(&w)
                    })
                    .collect();
                Mat::from_fn(basis.len(), basis.len(), |i, j| cols[j][i])
            })
            .collect();
        Ok(Self::trusted(k, gens))
    }

    /// Induced action on `M / s`, in the basis of standard vectors off the
    /// echelon pivots of `s`.
    pub fn quotient(&self, s: &Submodule) -> Result<Self> {
        let k = self.field;
        let sp = &s.space;
        if sp.ambient() != self.n {
            return Err(Error::Dimension("submodule of a different space".into()));
        }
        let comp = sp.complement_positions();
        if comp.is_empty() {
            return Err(Error::Degenerate("quotient by the whole module".into()));
        }
        let gens = self
            .gens
            .iter()
            .map(|x| {
                let cols: Vec<Vec<u32>> = comp
                    .iter()
                    .map(|&c| {
                        let red = sp.reduce(&k, &x.column(c));
                        comp.iter().map(|&q| red[q]).collect()
                    })
                    .collect();
                Mat::from_fn(comp.len(), comp.len(), |i, j| cols[j][i])
            })
            .collect();
        Ok(Self::trusted(k, gens))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    Radical,
    Socle,
}

/// A subspace stable under all generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Submodule {
    space: Subspace,
}

impl Submodule {
    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

/// An element of `Rad ∖ Rad²` of the truncated polynomial algebra, as a
/// polynomial in the generators without constant term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PPoint {
    nvars: usize,
    terms: Vec<(Vec<u16>, u32)>,
}

impl PPoint {
    pub fn new(p: u32, nvars: usize, terms: Vec<(Vec<u16>, u32)>) -> Result<Self> {
        let mut acc: std::collections::BTreeMap<Vec<u16>, u32> = Default::default();
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::Dimension(format!("exponent vector of length {}", e.len())));
            }
            if e.iter().any(|&a| a as u32 >= p) {
                return Err(Error::Range(format!("exponent in {e:?} is not below {p}")));
            }
            *acc.entry(e).or_insert(0) += c % p;
        }
        let mut clean = Vec::new();
        for (e, c) in acc.into_iter().rev() {
            if c % p == 0 {
                continue;
            }
            if e.iter().all(|&a| a == 0) {
                return Err(Error::NotAPPoint);
            }
            clean.push((e, c % p));
        }
        if !clean.iter().any(|(e, _)| e.iter().map(|&a| a as u32).sum::<u32>() == 1) {
            return Err(Error::NotAPPoint);
        }
        Ok(PPoint {
            nvars,
            terms: clean,
        })
    }

    /// The linear p-point `Σ λ_i x_i`.
    pub fn linear(p: u32, point: &[u32]) -> Result<Self> {
        let r = point.len();
        Self::new(
            p,
            r,
            point
                .iter()
                .enumerate()
                .map(|(i, &c)| {
                    let mut e = vec![0u16; r];
                    e[i] = 1;
                    (e, c)
                })
                .collect(),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Vec<u16>, u32)] {
        &self.terms
    }
}
