//! Command-line front end: module files, single invariants, full reports
//! and the zoo table.
//!
//! Exit codes: 0 success, 1 invalid input, 2 some field undetermined (the
//! output is still written). Rows appear in input order.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::invariants::{Config, Constancy, Decision, Degree, InvariantReport, Invariants};
use crate::modrep::{catalog, module_from_json, module_to_json, parse_zoo_spec, zoo, Limits, ModuleRep};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_UNDETERMINED: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "modinv", version, about = "Rank, degree and Jordan-type invariants of modules over p-trivial frames")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Report,
    Zoo,
    Validate,
    Degree,
    Rank,
    Jordan,
    Certify,
    Kernel,
    Selfdual,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full invariant report per input.
    Report(Common),
    /// Report for every catalog entry at the requested primes.
    Zoo(Common),
    /// Load and validate inputs; `--save` writes the canonical module file.
    Validate(Common),
    /// deg^j.
    Degree(Common),
    /// Generic j-rank.
    Rank(Common),
    /// Generic Jordan type and whether it is constant.
    Jordan(Common),
    /// Constant j-rank certificate or witness.
    Certify(Common),
    /// Generic kernel (r = 2, commuting frames).
    Kernel(Common),
    /// Self-duality.
    Selfdual(Common),
}

impl Command {
    fn split(self) -> (CommandKind, Common) {
        match self {
            Command::Report(c) => (CommandKind::Report, c),
            Command::Zoo(c) => (CommandKind::Zoo, c),
            Command::Validate(c) => (CommandKind::Validate, c),
            Command::Degree(c) => (CommandKind::Degree, c),
            Command::Rank(c) => (CommandKind::Rank, c),
            Command::Jordan(c) => (CommandKind::Jordan, c),
            Command::Certify(c) => (CommandKind::Certify, c),
            Command::Kernel(c) => (CommandKind::Kernel, c),
            Command::Selfdual(c) => (CommandKind::Selfdual, c),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Debug, Default, Args)]
pub struct Common {
    /// Zoo entry `name:key=val,key=val`; repeatable.
    #[arg(long = "zoo", value_name = "NAME:PARAMS")]
    pub zoo: Vec<String>,
    /// Module file; repeatable.
    #[arg(long = "in", value_name = "FILE")]
    pub inputs: Vec<PathBuf>,
    /// Restrict to one level j.
    #[arg(short = 'j', value_name = "N")]
    pub j: Option<u32>,
    /// Witness search runs over F_{p^e} for e up to this bound.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=3))]
    pub ext: u32,
    /// S-pairs per Gröbner basis.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; stdout when absent.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Primes for `zoo`, comma separated; an empty list selects nothing.
    #[arg(long, value_delimiter = ',', default_value = "3")]
    pub primes: Vec<String>,
    /// Dimension cap for constructed and loaded modules.
    #[arg(long, default_value_t = 64)]
    pub max_dim: usize,
    /// For `validate`: write the (single) input as a canonical module file.
    #[arg(long, value_name = "PATH")]
    pub save: Option<PathBuf>,
}

/// Everything a run needs, after argument parsing.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: CommandKind,
    pub inputs: Vec<Input>,
    pub j: Option<u32>,
    pub invariants: Config,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub limits: Limits,
    pub save: Option<PathBuf>,
    /// Minimum number of j columns in report CSV; widened to p − 1 for
    /// every loaded module.
    pub levels: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Zoo(String),
    File(PathBuf),
}

impl Input {
    /// Row label; commas in zoo parameters become semicolons so CSV needs
    /// no quoting.
    fn name(&self) -> String {
        match self {
            Input::Zoo(s) => parse_zoo_spec(s).map_or_else(|_| s.clone(), |z| z.to_string()).replace(',', ";"),
            Input::File(p) => p.file_stem().map_or_else(|| p.display().to_string(), |s| s.to_string_lossy().into_owned()),
        }
    }

    fn load(&self, limits: &Limits) -> Result<ModuleRep> {
        match self {
            Input::Zoo(s) => zoo(&parse_zoo_spec(s)?, limits),
            Input::File(p) => load_module_with(p, limits),
        }
    }
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self> {
        let (command, c) = cli.command.split();
        let limits = Limits {
            max_dim: c.max_dim,
            ..Limits::default()
        };
        let mut inputs = Vec::new();
        let mut levels = 0;
        if command == CommandKind::Zoo {
            for p in c.primes.iter().map(|s| s.trim()).filter(|s| !s.is_empty()) {
                let p: u32 = p.parse().map_err(|_| Error::Parse(format!("not a prime: {p}")))?;
                levels = levels.max(p - 1);
                inputs.extend(catalog(p)?.into_iter().map(|z| Input::Zoo(z.to_string())));
            }
        } else {
            for s in &c.zoo {
                levels = levels.max(parse_zoo_spec(s)?.p().saturating_sub(1));
                inputs.push(Input::Zoo(s.clone()));
            }
            inputs.extend(c.inputs.iter().cloned().map(Input::File));
            if inputs.is_empty() {
                return Err(Error::Parse("no input: pass --zoo or --in".into()));
            }
        }
        if c.save.is_some() && (command != CommandKind::Validate || inputs.len() != 1) {
            return Err(Error::Parse("--save needs `validate` with exactly one input".into()));
        }
        let mut invariants = Config {
            ext: c.ext as usize,
            ..Config::default()
        };
        if let Some(b) = c.budget {
            invariants.groebner_budget = b;
        }
        Ok(RunConfig {
            command,
            inputs,
            j: c.j,
            invariants,
            format: c.format,
            out: c.out,
            limits,
            save: c.save,
            levels,
        })
    }
}

pub fn load_module(path: &Path) -> Result<ModuleRep> {
    load_module_with(path, &Limits::default())
}

pub fn load_module_with(path: &Path, limits: &Limits) -> Result<ModuleRep> {
    module_from_json(&fs::read_to_string(path)?, limits)
}

/// Writes the canonical form: sorted keys, compact, trailing newline.
pub fn save_module(m: &ModuleRep, path: &Path) -> Result<()> {
    Ok(fs::write(path, module_to_json(m))?)
}

/// One output row: CSV cells and the JSON object.
struct Row {
    cells: Vec<String>,
    json: Value,
    undetermined: bool,
}

fn decision_cell(d: Decision) -> String {
    d.to_string()
}

fn degree_cell(d: &Degree) -> String {
    d.value().map_or_else(|| "undet".into(), |v| v.to_string())
}

fn constancy_cell(c: &Constancy) -> String {
    c.decision().to_string()
}

/// Report columns: name, p, r, dim, then rk/constant/deg per j up to
/// `levels`, then jordan_type, eip, ekp, self_dual, generic_kernel_dim.
fn report_header(levels: u32) -> Vec<String> {
    let mut h: Vec<String> = ["name", "p", "r", "dim"].map(String::from).to_vec();
    for j in 1..=levels {
        h.extend([format!("rk_{j}"), format!("constant_{j}"), format!("deg_{j}")]);
    }
    h.extend(["jordan_type", "eip", "ekp", "self_dual", "generic_kernel_dim"].map(String::from));
    h
}

fn report_row(name: &str, r: &InvariantReport, levels: u32) -> Row {
    let mut cells = vec![name.to_string(), r.p.to_string(), r.r.to_string(), r.dim.to_string()];
    for idx in 0..levels as usize {
        if idx < r.profile.ranks.len() {
            cells.push(r.profile.ranks[idx].to_string());
            cells.push(constancy_cell(&r.profile.constancy[idx]));
            cells.push(degree_cell(&r.degrees[idx]));
        } else {
            cells.extend(["-", "-", "-"].map(String::from));
        }
    }
    cells.push(r.jordan_type.colon_form());
    cells.push(decision_cell(r.eip_all));
    cells.push(decision_cell(r.ekp_all));
    cells.push(decision_cell(r.self_dual));
    cells.push(r.generic_kernel.as_ref().map_or_else(|| "-".into(), |g| g.dim.to_string()));
    let mut json = serde_json::to_value(r).expect("plain data");
    json["name"] = json!(name);
    json["jordan_type"] = json!(r.jordan_type.colon_form());
    Row {
        cells,
        json,
        undetermined: r.has_undetermined(),
    }
}

fn levels_for(inv: &Invariants, j: Option<u32>) -> Result<Vec<u32>> {
    match j {
        Some(j) => {
            if !inv.levels().contains(&j) {
                return Err(Error::Range(format!("j = {j} outside 1..={}", inv.module().p() - 1)));
            }
            Ok(vec![j])
        }
        None => Ok(inv.levels().collect()),
    }
}

fn header(cfg: &RunConfig, levels: u32) -> Vec<String> {
    let h: &[&str] = match cfg.command {
        CommandKind::Report | CommandKind::Zoo => return report_header(levels),
        CommandKind::Validate => &["name", "p", "r", "dim", "commuting"],
        CommandKind::Degree => &["name", "j", "deg"],
        CommandKind::Rank => &["name", "j", "rank"],
        CommandKind::Jordan => &["name", "jordan_type", "constant"],
        CommandKind::Certify => &["name", "j", "constant", "route", "witness"],
        CommandKind::Kernel => &["name", "dim", "codim", "confidence"],
        CommandKind::Selfdual => &["name", "self_dual"],
    };
    h.iter().map(|s| s.to_string()).collect()
}

fn rows_for(cfg: &RunConfig, name: String, m: ModuleRep, levels: u32) -> Result<Vec<Row>> {
    if cfg.command == CommandKind::Validate {
        if let Some(path) = &cfg.save {
            save_module(&m, path)?;
        }
        return Ok(vec![Row {
            cells: vec![
                name.clone(),
                m.p().to_string(),
                m.r().to_string(),
                m.dim().to_string(),
                m.is_commuting().to_string(),
            ],
            json: json!({"name": name, "p": m.p(), "r": m.r(), "dim": m.dim(), "commuting": m.is_commuting()}),
            undetermined: false,
        }]);
    }
    let inv = Invariants::new(m, cfg.invariants.clone());
    let single = |cells: Vec<String>, json: Value, undetermined: bool| Row {
        cells,
        json,
        undetermined,
    };
    Ok(match cfg.command {
        CommandKind::Report | CommandKind::Zoo => vec![report_row(&name, &inv.report()?, levels)],
        CommandKind::Degree => levels_for(&inv, cfg.j)?
            .into_iter()
            .map(|j| {
                let d = inv.jdegree(j)?;
                Ok(single(
                    vec![name.clone(), j.to_string(), degree_cell(&d)],
                    json!({"name": name, "j": j, "deg": d}),
                    d.value().is_none(),
                ))
            })
            .collect::<Result<_>>()?,
        CommandKind::Rank => levels_for(&inv, cfg.j)?
            .into_iter()
            .map(|j| {
                let rk = inv.generic_jrank(j)?;
                Ok(single(
                    vec![name.clone(), j.to_string(), rk.to_string()],
                    json!({"name": name, "j": j, "rank": rk}),
                    false,
                ))
            })
            .collect::<Result<_>>()?,
        CommandKind::Jordan => {
            let jt = inv.generic_jordan_type()?;
            let c = inv.constant_jordan_type()?;
            vec![single(
                vec![name.clone(), jt.colon_form(), decision_cell(c)],
                json!({"name": name, "jordan_type": jt.colon_form(), "constant": c}),
                c == Decision::Undetermined,
            )]
        }
        CommandKind::Certify => levels_for(&inv, cfg.j)?
            .into_iter()
            .map(|j| {
                let c = inv.constant_jrank_certify(j)?;
                let (route, witness) = match &c {
                    Constancy::Constant { route } => (format!("{route:?}").to_lowercase(), "-".to_string()),
                    Constancy::NonConstant { witness } => {
                        ("-".to_string(), witness.as_ref().map_or_else(|| "-".into(), |w| w.to_string()))
                    }
                    Constancy::Undetermined { .. } => ("-".to_string(), "-".to_string()),
                };
                let mut obj = serde_json::to_value(&c).expect("plain data");
                obj["name"] = json!(name);
                obj["j"] = json!(j);
                Ok(single(
                    vec![name.clone(), j.to_string(), constancy_cell(&c), route, witness.replace(',', ";")],
                    obj,
                    c.decision() == Decision::Undetermined,
                ))
            })
            .collect::<Result<_>>()?,
        CommandKind::Kernel => {
            let g = inv.generic_kernel()?;
            let conf = serde_json::to_value(g.confidence).expect("plain data");
            vec![single(
                vec![
                    name.clone(),
                    g.dim.to_string(),
                    g.codim.to_string(),
                    conf.as_str().unwrap_or_default().to_string(),
                ],
                json!({"name": name, "dim": g.dim, "codim": g.codim, "confidence": conf}),
                false,
            )]
        }
        CommandKind::Selfdual => {
            let d = inv.self_dual()?;
            vec![single(
                vec![name.clone(), decision_cell(d)],
                json!({"name": name, "self_dual": d}),
                d == Decision::Undetermined,
            )]
        }
        CommandKind::Validate => unreachable!("handled above"),
    })
}

fn render(cfg: &RunConfig, rows: &[Row], levels: u32) -> String {
    match cfg.format {
        Format::Csv => {
            let mut s = header(cfg, levels).join(",");
            s.push('\n');
            for r in rows {
                let _ = writeln!(s, "{}", r.cells.join(","));
            }
            s
        }
        Format::Json => {
            let v: Vec<&Value> = rows.iter().map(|r| &r.json).collect();
            let mut s = serde_json::to_string_pretty(&v).expect("plain data");
            s.push('\n');
            s
        }
    }
}

/// Output text and exit code. Invalid input anywhere fails the whole run.
pub fn execute(cfg: &RunConfig) -> Result<(String, i32)> {
    let modules: Vec<(String, ModuleRep)> = cfg
        .inputs
        .iter()
        .map(|i| Ok((i.name(), i.load(&cfg.limits)?)))
        .collect::<Result<_>>()?;
    let levels = modules.iter().map(|(_, m)| m.p() - 1).fold(cfg.levels, u32::max);
    let per_input: Vec<Vec<Row>> = modules
        .into_par_iter()
        .map(|(name, m)| rows_for(cfg, name, m, levels))
        .collect::<Result<_>>()?;
    let rows: Vec<Row> = per_input.into_iter().flatten().collect();
    let code = if rows.iter().any(|r| r.undetermined) {
        EXIT_UNDETERMINED
    } else {
        EXIT_OK
    };
    Ok((render(cfg, &rows, levels), code))
}

/// Parses `args`, runs and writes the output; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    let outcome = RunConfig::from_cli(cli).and_then(|cfg| {
        let (text, code) = execute(&cfg)?;
        match &cfg.out {
            Some(path) => fs::write(path, text)?,
            None => print!("{text}"),
        }
        Ok(code)
    });
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INVALID
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(args: &[&str]) -> RunConfig {
        let mut full = vec!["modinv"];
        full.extend(args);
        RunConfig::from_cli(Cli::try_parse_from(full).unwrap()).unwrap()
    }

    #[test]
    fn report_rows() {
        let (out, code) = execute(&cfg(&["report", "--zoo", "regular:p=3,r=2"])).unwrap();
        assert_eq!(code, EXIT_OK);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(
            lines[0],
            "name,p,r,dim,rk_1,constant_1,deg_1,rk_2,constant_2,deg_2,jordan_type,eip,ekp,self_dual,generic_kernel_dim"
        );
        assert_eq!(lines[1], "regular:p=3;r=2,3,2,9,6,yes,3,3,yes,3,0:0:3,no,no,yes,6");
        let (out, _) = execute(&cfg(&["report", "--zoo", "trivial:p=3,r=2,dim=4"])).unwrap();
        assert!(out.lines().nth(1).unwrap().contains(",0,yes,0,0,yes,0,4:0:0,"));
    }

    #[test]
    fn non_constant_rank_is_not_undetermined() {
        let (out, code) = execute(&cfg(&["report", "--zoo", "mr2:p=5"])).unwrap();
        assert_eq!(code, EXIT_OK);
        let row: Vec<&str> = out.lines().nth(1).unwrap().split(',').collect();
        assert_eq!((row[6], row[8]), ("1", "no"));
    }

    #[test]
    fn empty_zoo_selection_is_header_only() {
        let (out, code) = execute(&cfg(&["zoo", "--primes", ""])).unwrap();
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.lines().count(), 1);
    }

    #[test]
    fn argument_checks() {
        assert!(Cli::try_parse_from(["modinv", "report", "--ext", "4", "--zoo", "h:p=3"]).is_err());
        assert!(Cli::try_parse_from(["modinv", "report", "--budget", "0", "--zoo", "h:p=3"]).is_err());
        assert!(Cli::try_parse_from(["modinv", "report", "--format", "xml"]).is_err());
        let none = Cli::try_parse_from(["modinv", "degree"]).unwrap();
        assert!(RunConfig::from_cli(none).is_err());
        let bad_j = cfg(&["degree", "--zoo", "h:p=3", "-j", "3"]);
        assert!(matches!(execute(&bad_j), Err(Error::Range(_))));
    }

    #[test]
    fn certify_names_the_witness() {
        let (out, _) = execute(&cfg(&["certify", "--zoo", "mr2:p=5", "-j", "2"])).unwrap();
        assert_eq!(out.lines().nth(1).unwrap(), "mr2:p=5;r=2,2,no,-,(1;2)");
    }
}
