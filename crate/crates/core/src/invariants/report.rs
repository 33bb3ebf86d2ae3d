use rayon::prelude::*;
use serde::Serialize;

use super::{Constancy, Decision, Degree, GenericKernel, Invariants, JordanType};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankProfile {
    /// rk^1..rk^{p-1}.
    pub ranks: Vec<usize>,
    pub constancy: Vec<Constancy>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub p: u32,
    pub r: usize,
    pub dim: usize,
    pub profile: RankProfile,
    /// deg^1..deg^{p-1}; for non-constant ranks this is the degree on the
    /// open set of maximal rank.
    pub degrees: Vec<Degree>,
    pub jordan_type: JordanType,
    pub constant_jordan_type: Decision,
    pub eip: Vec<Decision>,
    pub eip_all: Decision,
    pub ekp: Vec<Decision>,
    pub ekp_all: Decision,
    pub self_dual: Decision,
    pub generic_kernel: Option<GenericKernel>,
    /// Whether the self-duality parity constraints were applicable and checked.
    pub parity_checked: bool,
}

impl InvariantReport {
    /// Whether any field is undetermined.
    pub fn has_undetermined(&self) -> bool {
        self.profile
            .constancy
            .iter()
            .any(|c| matches!(c, Constancy::Undetermined { .. }))
            || self.degrees.iter().any(|d| d.value().is_none())
            || self.constant_jordan_type == Decision::Undetermined
            || self.eip_all == Decision::Undetermined
            || self.ekp_all == Decision::Undetermined
            || self.self_dual == Decision::Undetermined
    }
}

fn soft<T>(r: Result<T>, undet: impl FnOnce() -> T) -> Result<T> {
    match r {
        Err(Error::Resource(_)) => Ok(undet()),
        other => other,
    }
}

impl Invariants {
    /// All determinable invariants. Violated self-duality parity
    /// constraints are returned as internal errors.
    pub fn report(&self) -> Result<InvariantReport> {
        let m = &self.module;
        let levels: Vec<u32> = self.levels().collect();
        let per_j: Vec<(usize, Constancy, Degree)> = levels
            .par_iter()
            .map(|&j| {
                let rank = self.generic_jrank(j)?;
                let c = self.constant_jrank_certify(j)?;
                let d = self.jdegree(j)?;
                Ok((rank, c, d))
            })
            .collect::<Result<_>>()?;
        let ranks: Vec<usize> = per_j.iter().map(|t| t.0).collect();
        let constancy: Vec<Constancy> = per_j.iter().map(|t| t.1.clone()).collect();
        let degrees: Vec<Degree> = per_j.iter().map(|t| t.2.clone()).collect();
        let jordan_type = self.generic_jordan_type()?;
        let constant_jordan_type = Decision::all(constancy.iter().map(|c| c.decision()));
        let eip: Vec<Decision> = levels.iter().map(|&j| self.eip(j)).collect::<Result<_>>()?;
        let ekp: Vec<Decision> = levels.iter().map(|&j| self.ekp(j)).collect::<Result<_>>()?;
        let self_dual = soft(self.self_dual(), || Decision::Undetermined)?;
        let generic_kernel = if self.generic_kernel_applies()? {
            soft(self.generic_kernel().map(Some), || None)?
        } else {
            None
        };
        let report = InvariantReport {
            p: m.p(),
            r: m.r(),
            dim: m.dim(),
            profile: RankProfile { ranks, constancy },
            degrees,
            eip_all: Decision::all(eip.iter().copied()),
            ekp_all: Decision::all(ekp.iter().copied()),
            eip,
            ekp,
            jordan_type,
            constant_jordan_type,
            self_dual,
            generic_kernel,
            parity_checked: false,
        };
        report.check_parity()
    }
}

impl InvariantReport {
    /// Constraints forced by a non-degenerate invariant form.
    fn check_parity(mut self) -> Result<Self> {
        if self.self_dual != Decision::Yes || self.r < 2 {
            return Ok(self);
        }
        let mut violations = Vec::new();
        for (idx, c) in self.profile.constancy.iter().enumerate() {
            let j = idx as u32 + 1;
            if j % 2 == 0 || !c.is_constant() {
                continue;
            }
            let rk = self.profile.ranks[idx];
            if rk % 2 != 0 {
                violations.push(format!("rk^{j} = {rk} is odd"));
            }
            if let Some(deg) = self.degrees[idx].value() {
                if 2 * deg != j * rk as u32 {
                    violations.push(format!("2·deg^{j} = {} but j·rk^{j} = {}", 2 * deg, j * rk as u32));
                }
            }
        }
        if self.constant_jordan_type == Decision::Yes {
            for (i, &a) in self.jordan_type.0.iter().enumerate() {
                if (i + 1) % 2 == 0 && a % 2 != 0 {
                    violations.push(format!("a_{} = {a} is odd", i + 1));
                }
            }
        }
        if !violations.is_empty() {
            return Err(Error::Internal(format!(
                "self-dual parity violated: {}",
                violations.join("; ")
            )));
        }
        self.parity_checked = true;
        Ok(self)
    }
}
