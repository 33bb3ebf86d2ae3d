//! Named example modules over the truncated polynomial algebra
//! `k[x_1..x_r]/(x_i^p)` and a few non-commuting frames.
//!
//! Monomial bases are ordered by total degree, then by exponent vector in
//! descending lexicographic order: `1, x, y, x², xy, y², …` for r = 2.

use std::collections::HashMap;
use std::fmt;

use super::{Limits, ModuleRep};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::linalg::Mat;

/// Exponent vectors with entries below `p`, in basis order.
pub fn monomial_basis(p: u32, r: usize) -> Vec<Vec<u16>> {
    let mut all: Vec<Vec<u16>> = vec![vec![]];
    for _ in 0..r {
        all = all
            .into_iter()
            .flat_map(|e| {
                (0..p as u16).map(move |a| {
                    let mut e = e.clone();
                    e.push(a);
                    e
                })
            })
            .collect();
    }
    all.sort_by(|a, b| {
        let da: u32 = a.iter().map(|&x| x as u32).sum();
        let db: u32 = b.iter().map(|&x| x as u32).sum();
        da.cmp(&db).then_with(|| b.cmp(a))
    });
    all
}

pub fn regular_module(p: u32, r: usize) -> Result<ModuleRep> {
    regular_module_with(p, r, &Limits::default())
}

/// The regular module: `x_i` acts by multiplication on the monomial basis.
pub fn regular_module_with(p: u32, r: usize, limits: &Limits) -> Result<ModuleRep> {
    let k = PrimeField::new(p)?;
    if r == 0 {
        return Err(Error::Range("r must be at least 1".into()));
    }
    let order = (p as u64).checked_pow(r as u32).unwrap_or(u64::MAX);
    if order > limits.max_order {
        return Err(Error::Resource(format!(
            "p^r = {order} exceeds the cap of {}",
            limits.max_order
        )));
    }
    let n = order as usize;
    limits.check_dim(n)?;
    let basis = monomial_basis(p, r);
    let index: HashMap<&[u16], usize> = basis.iter().enumerate().map(|(i, e)| (&e[..], i)).collect();
    let gens = (0..r)
        .map(|v| {
            let mut x = Mat::zeros(&k, n, n);
            for (col, e) in basis.iter().enumerate() {
                if (e[v] as u32) + 1 < p {
                    let mut f = e.clone();
                    f[v] += 1;
                    x.set(index[&f[..]], col, 1);
                }
            }
            x
        })
        .collect();
    Ok(ModuleRep::trusted(k, gens))
}

/// `k^dim` with every generator acting by zero.
pub fn trivial_module(p: u32, r: usize, dim: usize) -> Result<ModuleRep> {
    let k = PrimeField::new(p)?;
    if r == 0 || dim == 0 {
        return Err(Error::Range("r and dim must be positive".into()));
    }
    Limits::default().check_dim(dim)?;
    Ok(ModuleRep::trusted(k, vec![Mat::zeros(&k, dim, dim); r]))
}

/// `Rad^s` of the regular module, as a module in its echelon basis.
pub fn rad_submodule(p: u32, r: usize, s: usize, limits: &Limits) -> Result<ModuleRep> {
    let u = regular_module_with(p, r, limits)?;
    let l = u.loewy_length();
    if s >= l {
        return Err(Error::Range(format!("radical layer {s} outside 0..{l}")));
    }
    u.submodule(&u.radical_power(s))
}

/// `Soc_s` of the regular module.
pub fn soc_submodule_module(p: u32, r: usize, s: usize, limits: &Limits) -> Result<ModuleRep> {
    let u = regular_module_with(p, r, limits)?;
    u.submodule(&u.socle_submodule(s)?)
}

/// `M_n = U / Rad^n` for the regular module U in two generators.
pub fn mn_module(p: u32, n: usize) -> Result<ModuleRep> {
    regular_module(p, 2)?.rad_quotient(n)
}

/// `V_{r+1}`: `x_i v_j = δ_ij v_{r+1}`.
pub fn vr1_module(p: u32, r: usize) -> Result<ModuleRep> {
    let k = PrimeField::new(p)?;
    if r == 0 {
        return Err(Error::Range("r must be at least 1".into()));
    }
    Ok(ModuleRep::trusted(
        k,
        (0..r).map(|i| Mat::unit(&k, r + 1, r, i)).collect(),
    ))
}

/// The submodule of the regular module generated by `Σ_i x^{τ − 2ε_i}`,
/// with `τ = (p−1, …, p−1)`; dimension r + 2.
pub fn mr2_module(p: u32, r: usize) -> Result<ModuleRep> {
    if p < 3 {
        return Err(Error::Range("needs p >= 3".into()));
    }
    let u = regular_module(p, r)?;
    let basis = monomial_basis(p, r);
    let mut v = vec![0u32; u.dim()];
    for i in 0..r {
        let e: Vec<u16> = (0..r)
            .map(|j| if i == j { p as u16 - 3 } else { p as u16 - 1 })
            .collect();
        v[basis.iter().position(|b| *b == e).unwrap()] = 1;
    }
    u.submodule(&u.submodule_span(&[v])?)
}

/// `X_1 = E_12, X_2 = E_23, X_3 = E_13` on k³.
pub fn heisenberg3(p: u32) -> Result<ModuleRep> {
    let k = PrimeField::new(p)?;
    ModuleRep::new(
        p,
        vec![
            Mat::unit(&k, 3, 0, 1),
            Mat::unit(&k, 3, 1, 2),
            Mat::unit(&k, 3, 0, 2),
        ],
    )
}

/// `Rad(U) / Soc(U)` for the regular module U in two generators.
pub fn h_module(p: u32) -> Result<ModuleRep> {
    if p < 3 {
        return Err(Error::Range("needs p >= 3".into()));
    }
    let u = regular_module(p, 2)?;
    let rad = u.submodule(&u.radical_power(1))?;
    let soc = rad.socle_power(1);
    rad.quotient(&soc)
}

/// `M_3 / k·xy`.
pub fn m3xy_module(p: u32) -> Result<ModuleRep> {
    if p < 3 {
        return Err(Error::Range("needs p >= 3".into()));
    }
    let m3 = mn_module(p, 3)?;
    // basis 1, x, y, x², xy, y²
    let xy = m3.submodule_span(&[vec![0, 0, 0, 0, 1, 0]])?;
    m3.quotient(&xy)
}

/// A zoo entry with its parameters, e.g. `regular:p=3,r=2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZooSpec {
    pub name: String,
    params: Vec<(&'static str, u32)>,
}

/// Parameter names and defaults; `None` marks a required parameter.
fn schema(name: &str) -> Option<&'static [(&'static str, Option<u32>)]> {
    Some(match name {
        "trivial" => &[("p", None), ("r", Some(2)), ("dim", Some(1))],
        "regular" => &[("p", None), ("r", Some(2))],
        "rad" => &[("p", None), ("r", Some(2)), ("s", Some(1))],
        "h" => &[("p", None)],
        "mn" => &[("p", None), ("n", Some(2))],
        "vr1" => &[("p", None), ("r", Some(2))],
        "soc" => &[("p", None), ("r", Some(2)), ("s", Some(2))],
        "mr2" => &[("p", None), ("r", Some(2))],
        "heisenberg3" => &[("p", None)],
        "m3xy" => &[("p", None)],
        _ => return None,
    })
}

impl ZooSpec {
    pub fn new(name: &str, given: &[(&str, u32)]) -> Result<Self> {
        let sch = schema(name).ok_or_else(|| Error::Catalog(name.to_string()))?;
        if let Some((key, _)) = given.iter().find(|(k, _)| !sch.iter().any(|(s, _)| s == k)) {
            return Err(Error::Parse(format!("unknown parameter {key} for {name}")));
        }
        let params = sch
            .iter()
            .map(|&(key, default)| {
                given
                    .iter()
                    .rev()
                    .find(|(k, _)| *k == key)
                    .map(|&(_, v)| v)
                    .or(default)
                    .map(|v| (key, v))
                    .ok_or_else(|| Error::Parse(format!("{name} needs parameter {key}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ZooSpec {
            name: name.to_string(),
            params,
        })
    }

    pub fn get(&self, key: &str) -> u32 {
        self.params.iter().find(|(k, _)| *k == key).map_or(0, |&(_, v)| v)
    }

    pub fn p(&self) -> u32 {
        self.get("p")
    }
}

impl fmt::Display for ZooSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.pad(&format!("{}:{}", self.name, ps.join(",")))
    }
}

/// Parses `name:key=val,key=val`.
pub fn parse_zoo_spec(s: &str) -> Result<ZooSpec> {
    let (name, rest) = s.split_once(':').unwrap_or((s, ""));
    let mut given = Vec::new();
    for part in rest.split(',').filter(|x| !x.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got {part}")))?;
        let v: u32 = v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("not a number: {v}")))?;
        given.push((k.trim(), v));
    }
    ZooSpec::new(name.trim(), &given)
}

/// Builds a zoo entry.
pub fn zoo(spec: &ZooSpec, limits: &Limits) -> Result<ModuleRep> {
    let p = spec.p();
    let g = |k: &str| spec.get(k) as usize;
    let m = match spec.name.as_str() {
        "trivial" => trivial_module(p, g("r"), g("dim"))?,
        "regular" => regular_module_with(p, g("r"), limits)?,
        "rad" => rad_submodule(p, g("r"), g("s"), limits)?,
        "h" => h_module(p)?,
        "mn" => mn_module(p, g("n"))?,
        "vr1" => vr1_module(p, g("r"))?,
        "soc" => soc_submodule_module(p, g("r"), g("s"), limits)?,
        "mr2" => mr2_module(p, g("r"))?,
        "heisenberg3" => heisenberg3(p)?,
        "m3xy" => m3xy_module(p)?,
        other => return Err(Error::Catalog(other.to_string())),
    };
    limits.check_dim(m.dim())?;
    Ok(m)
}

/// The example catalog for one prime, in fixed order. Entries that need
/// p ≥ 3 are left out for p = 2.
pub fn catalog(p: u32) -> Result<Vec<ZooSpec>> {
    PrimeField::new(p)?;
    let mut out = vec![
        ZooSpec::new("trivial", &[("p", p)])?,
        ZooSpec::new("regular", &[("p", p)])?,
        ZooSpec::new("rad", &[("p", p)])?,
    ];
    if p >= 3 {
        out.push(ZooSpec::new("h", &[("p", p)])?);
    }
    for n in 2..=2 * p - 2 {
        out.push(ZooSpec::new("mn", &[("p", p), ("n", n)])?);
    }
    out.push(ZooSpec::new("vr1", &[("p", p), ("r", 2)])?);
    out.push(ZooSpec::new("vr1", &[("p", p), ("r", 3)])?);
    out.push(ZooSpec::new("soc", &[("p", p)])?);
    if p >= 3 {
        out.push(ZooSpec::new("mr2", &[("p", p)])?);
        out.push(ZooSpec::new("heisenberg3", &[("p", p)])?);
        out.push(ZooSpec::new("m3xy", &[("p", p)])?);
    }
    Ok(out)
}

/// Lifts a frame's generators to a field extension, for tests and examples.
pub fn lift_gens<F: Field>(k: &F, m: &ModuleRep) -> Vec<Mat<F::Elem>> {
    m.gens().iter().map(|x| x.map(|e| k.from_u32(e))).collect()
}
