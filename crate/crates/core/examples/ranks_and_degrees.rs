//! Generic j-ranks and j-degrees, and the identity
//! deg^j(M) + deg^j(M*) = j·rk^j(M) for modules of constant j-rank.

use modinv::invariants::{Config, Invariants};
use modinv::modrep::{catalog, zoo, Limits};

fn main() -> modinv::Result<()> {
    for p in [3u32, 5] {
        for spec in catalog(p)? {
            let m = zoo(&spec, &Limits::default())?;
            let inv = Invariants::new(m.clone(), Config::default());
            let dual = Invariants::new(m.dual(), Config::default());
            let mut cells = Vec::new();
            for j in inv.levels() {
                let rk = inv.generic_jrank(j)?;
                let (d, dd) = (inv.jdegree(j)?, dual.jdegree(j)?);
                let mark = match (inv.constant_jrank_certify(j)?.is_constant(), d.value(), dd.value()) {
                    (true, Some(a), Some(b)) => {
                        assert_eq!(a + b, j * rk as u32, "{spec} j={j}");
                        "="
                    }
                    _ => " ",
                };
                cells.push(format!("j{j}: rk {rk:>2} deg {d:>2}+{dd:<2}{mark}"));
            }
            println!("{spec:<24} {}", cells.join(" | "));
        }
    }
    Ok(())
}
