//! Certifying constant j-rank, or exhibiting a point where the rank drops.

use modinv::invariants::{Config, Constancy, Invariants};
use modinv::modrep::{parse_zoo_spec, zoo, Limits};

fn main() -> modinv::Result<()> {
    let limits = Limits {
        max_dim: 125,
        ..Limits::default()
    };
    for name in ["regular:p=3,r=2", "mr2:p=5", "regular:p=3,r=3", "heisenberg3:p=3", "m3xy:p=3"] {
        let m = zoo(&parse_zoo_spec(name)?, &limits)?;
        let inv = Invariants::new(m, Config::default());
        for j in inv.levels() {
            let verdict = match inv.constant_jrank_certify(j)? {
                Constancy::Constant { route } => format!("constant ({route:?})"),
                Constancy::NonConstant { witness: Some(w) } => format!("drops at {w}"),
                Constancy::NonConstant { witness: None } => "not constant".into(),
                Constancy::Undetermined { reason } => format!("undetermined: {reason}"),
            };
            println!("{name:<18} j={j}: rk {} {verdict}", inv.generic_jrank(j)?);
        }
    }
    Ok(())
}
