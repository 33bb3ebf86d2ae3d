//! Rank, constancy, degree and Jordan-type invariants of a module over a
//! p-trivial frame, plus equal-images/kernels tests, generic kernels and
//! self-duality.
//!
//! `θ^j` is block diagonal after permuting rows and columns; ranks, minor
//! gcds and rank-drop loci are computed block by block and combined (ranks
//! and degrees add, a locus is empty iff every block's locus is empty).

mod eip;
mod hom;
pub(crate) mod locus;
mod report;

use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{ExtField, ExtFieldElem, Field};
use crate::groebner::DEFAULT_PAIR_BUDGET;
use crate::linalg::{
    binomial, certify_generic_rank, combinations, rank, rref, Mat, ThetaPower,
};
use crate::modrep::{ModuleRep, PPoint};
use crate::mpoly::MPoly;
use crate::projmaps::DefiningSystem;
use locus::{locus_empty, minor_forms, projective_count, projective_points_ext, View};

pub use eip::{GenericKernel, KernelConfidence};
pub use hom::hom_space;
pub use report::{InvariantReport, RankProfile};

/// Work limits. Exceeding any of them turns the affected field into
/// "undetermined"; nothing is guessed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    /// S-pairs per Gröbner basis.
    pub groebner_budget: u64,
    /// Witness search runs over F_{p^e}, e ≤ ext.
    pub ext: usize,
    /// Minors enumerated per block.
    pub minor_budget: u64,
    /// Grid points per rank certificate or interpolation.
    pub eval_budget: u64,
    /// Points per brute-force scan.
    pub point_budget: u64,
    /// Intertwiners enumerated when deciding self-duality.
    pub selfdual_budget: u64,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            groebner_budget: DEFAULT_PAIR_BUDGET,
            ext: 3,
            minor_budget: 20_000,
            eval_budget: 200_000,
            point_budget: 20_000,
            selfdual_budget: 100_000,
            seed: 0,
        }
    }
}

/// Three-valued answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Yes,
    No,
    Undetermined,
}

impl Decision {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Decision::Yes
        } else {
            Decision::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == Decision::Yes
    }

    /// Conjunction: any No wins, then any Undetermined.
    pub fn all(items: impl IntoIterator<Item = Decision>) -> Self {
        let mut out = Decision::Yes;
        for d in items {
            match d {
                Decision::No => return Decision::No,
                Decision::Undetermined => out = Decision::Undetermined,
                Decision::Yes => {}
            }
        }
        out
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::Yes => "yes",
            Decision::No => "no",
            Decision::Undetermined => "undet",
        })
    }
}

/// A point of P^{r-1} over F_{p^e}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub field: ExtField,
    pub point: Vec<ExtFieldElem>,
}

impl Witness {
    /// Coordinates when the point is F_p-rational.
    pub fn prime_coords(&self) -> Option<Vec<u32>> {
        self.point.iter().map(|c| c.as_prime()).collect()
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.point.iter().map(|c| format!("{c:?}")).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for Witness {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// How constancy was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CertRoute {
    /// Generic rank 0.
    Trivial,
    /// r = 1: P^0 is a single point.
    Point,
    /// r = 2: gcd of binary minors is constant.
    Gcd,
    /// r ≥ 3: 1 lies in the minor ideal on each affine chart.
    Groebner,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Constancy {
    Constant { route: CertRoute },
    /// Some nonzero point over the algebraic closure drops the rank. The
    /// witness is the first such point found over F_{p^e}, e ≤ ext.
    NonConstant { witness: Option<Witness> },
    Undetermined { reason: String },
}

impl Constancy {
    pub fn decision(&self) -> Decision {
        match self {
            Constancy::Constant { .. } => Decision::Yes,
            Constancy::NonConstant { .. } => Decision::No,
            Constancy::Undetermined { .. } => Decision::Undetermined,
        }
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, Constancy::Constant { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Degree {
    Value(u32),
    Undetermined { reason: String },
}

impl Degree {
    pub fn value(&self) -> Option<u32> {
        match self {
            Degree::Value(v) => Some(*v),
            Degree::Undetermined { .. } => None,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Value(v) => f.pad(&v.to_string()),
            Degree::Undetermined { .. } => f.pad("undet"),
        }
    }
}

/// Multiplicities a_1..a_p of Jordan blocks of sizes 1..p.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JordanType(pub Vec<usize>);

impl JordanType {
    /// From the ranks of powers 0..=p (rk^0 = n, rk^p = 0).
    pub fn from_ranks(ranks: &[usize]) -> Result<Self> {
        let p = ranks.len() - 1;
        (1..=p)
            .map(|i| {
                let up = ranks.get(i + 1).copied().unwrap_or(0);
                (ranks[i - 1] + up)
                    .checked_sub(2 * ranks[i])
                    .ok_or_else(|| Error::Internal("rank sequence is not concave".into()))
            })
            .collect::<Result<Vec<_>>>()
            .map(JordanType)
    }

    pub fn dim(&self) -> usize {
        self.0.iter().enumerate().map(|(i, a)| (i + 1) * a).sum()
    }

    /// `a1:a2:...:ap`.
    pub fn colon_form(&self) -> String {
        let v: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        v.join(":")
    }
}

impl fmt::Display for JordanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &a)| a > 0)
            .map(|(i, &a)| match a {
                1 => format!("[{}]", i + 1),
                _ => format!("{a}[{}]", i + 1),
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// One block of `θ^j` with its generic rank and two column charts (local
/// indices) at a point attaining that rank.
#[derive(Clone, Debug)]
pub(crate) struct BlockRank {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub rank: usize,
    pub chart: Vec<usize>,
    pub alt_chart: Vec<usize>,
}

#[derive(Debug)]
pub(crate) struct Level {
    pub theta: ThetaPower,
    pub blocks: Vec<BlockRank>,
    pub rank: usize,
}

impl Level {
    fn new(m: &ModuleRep, j: u32, cfg: &Config) -> Result<Self> {
        let theta = m.theta(j)?;
        let mut blocks = Vec::new();
        for b in theta.components() {
            let view = View::full(&theta, &b.rows, &b.cols);
            let cert = certify_generic_rank(
                m.p(),
                m.r(),
                j,
                (b.rows.len(), b.cols.len()),
                cfg.eval_budget,
                |k, pt| view.eval(k, pt),
            )?;
            let a = view.eval(&cert.field, &cert.point);
            let rev: Vec<usize> = (0..b.cols.len()).rev().collect();
            let rows_all: Vec<usize> = (0..b.rows.len()).collect();
            let mut alt: Vec<usize> = rref(&cert.field, &a.select(&rows_all, &rev))
                .pivots
                .iter()
                .map(|&c| rev[c])
                .collect();
            alt.sort_unstable();
            blocks.push(BlockRank {
                rows: b.rows,
                cols: b.cols,
                rank: cert.rank,
                chart: cert.chart,
                alt_chart: alt,
            });
        }
        let rank = blocks.iter().map(|b| b.rank).sum();
        Ok(Level {
            theta,
            blocks,
            rank,
        })
    }

    /// Rank of `θ^j` at a point, block by block.
    fn rank_at(&self, k: &ExtField, pt: &[ExtFieldElem]) -> usize {
        self.blocks
            .iter()
            .filter(|b| b.rank > 0)
            .map(|b| rank(k, &View::full(&self.theta, &b.rows, &b.cols).eval(k, pt)))
            .sum()
    }
}

/// Invariants of one module, computed lazily and cached per j.
pub struct Invariants {
    module: ModuleRep,
    cfg: Config,
    levels: Vec<OnceLock<std::result::Result<Level, Error>>>,
    constancy: Vec<OnceLock<Constancy>>,
    degrees: Vec<OnceLock<std::result::Result<Degree, Error>>>,
}

impl Invariants {
    pub fn new(module: ModuleRep, cfg: Config) -> Self {
        let top = module.p() as usize - 1;
        Invariants {
            module,
            cfg,
            levels: (0..top).map(|_| OnceLock::new()).collect(),
            constancy: (0..top).map(|_| OnceLock::new()).collect(),
            degrees: (0..top).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn module(&self) -> &ModuleRep {
        &self.module
    }

    pub fn config(&self) -> &Config {
        &self.cfg
    }

    /// Powers 1..=p−1.
    pub fn levels(&self) -> std::ops::RangeInclusive<u32> {
        1..=self.module.p() - 1
    }

    fn check_j(&self, j: u32) -> Result<usize> {
        if j == 0 || j >= self.module.p() {
            return Err(Error::Range(format!(
                "j = {j} outside 1..={}",
                self.module.p() - 1
            )));
        }
        Ok(j as usize - 1)
    }

    pub(crate) fn level(&self, j: u32) -> Result<&Level> {
        let idx = self.check_j(j)?;
        self.levels[idx]
            .get_or_init(|| Level::new(&self.module, j, &self.cfg))
            .as_ref()
            .map_err(|e| e.clone())
    }

    /// Rank of `(Σ λ_i X_i)^j` at a nonzero point.
    pub fn rank_at_point<F: Field>(&self, k: &F, j: u32, point: &[F::Elem]) -> Result<usize> {
        rank_at_point(&self.module, k, j, point)
    }

    /// rk^j, the rank of `θ^j` over the function field.
    pub fn generic_jrank(&self, j: u32) -> Result<usize> {
        Ok(self.level(j)?.rank)
    }

    /// rk^0..rk^p.
    pub fn rank_sequence(&self) -> Result<Vec<usize>> {
        let mut out = vec![self.module.dim()];
        for j in self.levels() {
            out.push(self.generic_jrank(j)?);
        }
        out.push(0);
        Ok(out)
    }

    pub fn constant_jrank_certify(&self, j: u32) -> Result<Constancy> {
        let idx = self.check_j(j)?;
        if let Some(c) = self.constancy[idx].get() {
            return Ok(c.clone());
        }
        let level = self.level(j)?;
        let c = match self.certify(level) {
            Ok(c) => c,
            Err(Error::Resource(reason)) => Constancy::Undetermined { reason },
            Err(e) => return Err(e),
        };
        if let Constancy::NonConstant {
            witness: Some(w), ..
        } = &c
        {
            // independent recheck through the operator power
            if rank_at_point(&self.module, &w.field, j, &w.point)? >= level.rank {
                return Err(Error::Internal(format!("witness {w} does not drop the rank")));
            }
        }
        Ok(self.constancy[idx].get_or_init(|| c).clone())
    }

    fn certify(&self, level: &Level) -> Result<Constancy> {
        let d = level.rank;
        if d == 0 {
            return Ok(Constancy::Constant {
                route: CertRoute::Trivial,
            });
        }
        let r = self.module.r();
        let p = self.module.p();
        if let Some(w) = self.witness_search(level, 1) {
            return Ok(Constancy::NonConstant { witness: Some(w) });
        }
        if r == 1 {
            return Ok(Constancy::Constant {
                route: CertRoute::Point,
            });
        }
        let _ = p;
        for b in level.blocks.iter().filter(|b| b.rank > 0) {
            let view = View::full(&level.theta, &b.rows, &b.cols);
            if !locus_empty(view, b.rank, &self.cfg)? {
                let witness = (2..=self.cfg.ext).find_map(|e| self.witness_search(level, e));
                return Ok(Constancy::NonConstant { witness });
            }
        }
        Ok(Constancy::Constant {
            route: if r == 2 {
                CertRoute::Gcd
            } else {
                CertRoute::Groebner
            },
        })
    }

    /// First point of P^{r-1}(F_{p^e}) where the rank drops, within the point budget.
    fn witness_search(&self, level: &Level, e: usize) -> Option<Witness> {
        let k = ExtField::new(self.module.p(), e).ok()?;
        let r = self.module.r();
        if projective_count(k.order(), r) > self.cfg.point_budget {
            return None;
        }
        let found = projective_points_ext(&k, r)
            // only points not defined over a proper subfield are new
            .filter(|pt| e == 1 || !defined_over_subfield(&k, pt))
            .find(|pt| level.rank_at(&k, pt) < level.rank);
        found.map(|point| Witness {
            field: k.clone(),
            point,
        })
    }

    /// Global chart (column indices of `θ^j`) at a point of maximal rank.
    pub fn chart(&self, j: u32) -> Result<Vec<usize>> {
        let level = self.level(j)?;
        let mut out: Vec<usize> = level
            .blocks
            .iter()
            .flat_map(|b| b.chart.iter().map(|&c| b.cols[c]))
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Per block with positive rank, the minor tuple `(det θ^j_{(I,J)})_I`
    /// over all row sets I of the block, for its chart J.
    pub fn chart_systems(&self, j: u32) -> Result<Vec<DefiningSystem>> {
        let level = self.level(j)?;
        level
            .blocks
            .iter()
            .filter(|b| b.rank > 0)
            .map(|b| {
                let entries = self.block_tuple(level, b, &b.chart)?;
                DefiningSystem::new(entries)
            })
            .collect()
    }

    fn block_tuple(&self, level: &Level, b: &BlockRank, chart: &[usize]) -> Result<Vec<MPoly>> {
        let count = binomial(b.rows.len(), b.rank);
        if count > self.cfg.minor_budget {
            return Err(Error::Resource(format!(
                "{count} minors of size {} exceed the minor budget",
                b.rank
            )));
        }
        let sets: Vec<(Vec<usize>, Vec<usize>)> = combinations(b.rows.len(), b.rank)
            .map(|i| (i, chart.to_vec()))
            .collect();
        minor_forms(&View::full(&level.theta, &b.rows, &b.cols), &sets, &self.cfg)
    }

    /// deg^j: the sum over blocks of j·d_b − deg gcd_I det θ^j_{(I,J_b)}.
    pub fn jdegree(&self, j: u32) -> Result<Degree> {
        let idx = self.check_j(j)?;
        self.degrees[idx]
            .get_or_init(|| match self.compute_degree(j) {
                Err(Error::Resource(reason)) => Ok(Degree::Undetermined { reason }),
                other => other,
            })
            .clone()
    }

    fn compute_degree(&self, j: u32) -> Result<Degree> {
        let level = self.level(j)?;
        let mut total = 0u32;
        for b in level.blocks.iter().filter(|b| b.rank > 0) {
            let sys = DefiningSystem::new(self.block_tuple(level, b, &b.chart)?)?;
            let (reduced, h) = sys.reduce()?;
            let drop = h.total_degree().unwrap_or(0);
            total += j * b.rank as u32 - drop;
            if b.alt_chart != b.chart {
                let alt = DefiningSystem::new(self.block_tuple(level, b, &b.alt_chart)?)?;
                let (alt_reduced, _) = alt.reduce()?;
                if alt_reduced != reduced {
                    return Err(Error::Internal(format!(
                        "charts {:?} and {:?} give different morphisms",
                        b.chart, b.alt_chart
                    )));
                }
            }
        }
        Ok(Degree::Value(total))
    }

    /// deg^j computed from the minor systems restricted to the line through
    /// the points `a` and `b` of F_p^r. Charts are chosen at a generic point
    /// of that line.
    pub fn restricted_degree(&self, j: u32, a: &[u32], b: &[u32]) -> Result<Degree> {
        let level = self.level(j)?;
        let p = self.module.p();
        let k = ExtField::new(p, crate::linalg::smallest_ext(p, 1000).unwrap_or(6))?;
        let mut total = 0u32;
        for blk in level.blocks.iter().filter(|b| b.rank > 0) {
            let view = View::full(&level.theta, &blk.rows, &blk.cols);
            let (s, t) = (k.element(k.order() / 3 + 1), k.element(k.order() / 2 + 2));
            let pt: Vec<ExtFieldElem> = a
                .iter()
                .zip(b)
                .map(|(&x, &y)| k.add(k.mul(s, k.from_u32(x)), k.mul(t, k.from_u32(y))))
                .collect();
            let m = view.eval(&k, &pt);
            let chart = rref(&k, &m).pivots;
            if chart.len() < blk.rank {
                return Err(Error::Degenerate("rank drops on the line".into()));
            }
            let sys = match self.block_tuple(level, blk, &chart) {
                Ok(t) => DefiningSystem::new(t)?,
                Err(Error::Resource(reason)) => return Ok(Degree::Undetermined { reason }),
                Err(e) => return Err(e),
            };
            total += sys.line_restrict(a, b)?.degree()?;
        }
        Ok(Degree::Value(total))
    }

    /// Jordan type of `(Σ λ_i X_i)` at a point.
    pub fn jordan_type_at<F: Field>(&self, k: &F, point: &[F::Elem]) -> Result<JordanType> {
        jordan_type_at(&self.module, k, point)
    }

    pub fn generic_jordan_type(&self) -> Result<JordanType> {
        JordanType::from_ranks(&self.rank_sequence()?)
    }

    /// Constant Jordan type: constant j-rank for every j.
    pub fn constant_jordan_type(&self) -> Result<Decision> {
        let mut out = Vec::new();
        for j in self.levels() {
            out.push(self.constant_jrank_certify(j)?.decision());
        }
        Ok(Decision::all(out))
    }
}

fn defined_over_subfield(k: &ExtField, pt: &[ExtFieldElem]) -> bool {
    // x lies in F_{p^f} for f | e, f < e, iff x^{p^f} = x
    let e = k.degree();
    let p = k.characteristic() as u64;
    (1..e)
        .filter(|f| e % f == 0)
        .any(|f| pt.iter().all(|&x| k.pow(x, p.pow(f as u32)) == x))
}

/// Rank of `(Σ λ_i X_i)^j` at a nonzero point.
pub fn rank_at_point<F: Field>(m: &ModuleRep, k: &F, j: u32, point: &[F::Elem]) -> Result<usize> {
    if point.iter().all(|&x| k.is_zero(x)) {
        return Err(Error::Degenerate("zero point".into()));
    }
    let a = m.operator_at(k, point)?;
    Ok(rank(k, &a.pow(k, j)?))
}

/// Jordan type of `(Σ λ_i X_i)` at a point (any frame).
pub fn jordan_type_at<F: Field>(m: &ModuleRep, k: &F, point: &[F::Elem]) -> Result<JordanType> {
    if point.iter().all(|&x| k.is_zero(x)) {
        return Err(Error::Degenerate("zero point".into()));
    }
    jordan_type_of(k, &m.operator_at(k, point)?, m.p())
}

/// Jordan type of the pullback along a p-point (commuting frames).
pub fn jordan_type_at_ppoint(m: &ModuleRep, u: &PPoint) -> Result<JordanType> {
    let k = *m.field();
    jordan_type_of(&k, &m.pullback_ppoint(u)?, m.p())
}

fn jordan_type_of<F: Field>(k: &F, a: &Mat<F::Elem>, p: u32) -> Result<JordanType> {
    let n = a.rows();
    let mut ranks = vec![n];
    let mut pw = Mat::identity(k, n);
    for _ in 1..=p {
        pw = pw.mul(k, a)?;
        ranks.push(rank(k, &pw));
    }
    if ranks[p as usize] != 0 {
        return Err(Error::Internal("operator is not p-nilpotent".into()));
    }
    JordanType::from_ranks(&ranks)
}

/// Entry points with default limits.
pub fn generic_jrank(m: &ModuleRep, j: u32) -> Result<usize> {
    Invariants::new(m.clone(), Config::default()).generic_jrank(j)
}

pub fn constant_jrank_certify(m: &ModuleRep, j: u32) -> Result<Constancy> {
    Invariants::new(m.clone(), Config::default()).constant_jrank_certify(j)
}

pub fn generic_jordan_type(m: &ModuleRep) -> Result<JordanType> {
    Invariants::new(m.clone(), Config::default()).generic_jordan_type()
}

pub fn jdegree(m: &ModuleRep, j: u32) -> Result<Degree> {
    Invariants::new(m.clone(), Config::default()).jdegree(j)
}

pub fn eip_test(m: &ModuleRep) -> Result<(Vec<Decision>, Decision)> {
    let inv = Invariants::new(m.clone(), Config::default());
    let per: Vec<Decision> = inv.levels().map(|j| inv.eip(j)).collect::<Result<_>>()?;
    let all = Decision::all(per.iter().copied());
    Ok((per, all))
}

pub fn ekp_test(m: &ModuleRep) -> Result<(Vec<Decision>, Decision)> {
    let inv = Invariants::new(m.clone(), Config::default());
    let per: Vec<Decision> = inv.levels().map(|j| inv.ekp(j)).collect::<Result<_>>()?;
    let all = Decision::all(per.iter().copied());
    Ok((per, all))
}

pub fn generic_kernel(m: &ModuleRep) -> Result<GenericKernel> {
    Invariants::new(m.clone(), Config::default()).generic_kernel()
}

pub fn self_dual_test(m: &ModuleRep) -> Result<Decision> {
    Invariants::new(m.clone(), Config::default()).self_dual()
}

pub fn report(m: &ModuleRep) -> Result<InvariantReport> {
    Invariants::new(m.clone(), Config::default()).report()
}
