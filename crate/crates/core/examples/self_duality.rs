//! Self-duality and the parity constraints it forces, via the full report.

use modinv::invariants::{hom_space, Config, Invariants};
use modinv::modrep::{parse_zoo_spec, zoo, Limits};

fn main() -> modinv::Result<()> {
    for name in ["regular:p=3,r=2", "h:p=3", "vr1:p=3,r=2", "mn:p=5,n=3", "regular:p=5,r=2"] {
        let m = zoo(&parse_zoo_spec(name)?, &Limits::default())?;
        let homs = hom_space(&m, &m.dual())?.len();
        let report = Invariants::new(m, Config::default()).report()?;
        println!(
            "{name:<16} dim Hom(M, M*) = {homs:<3} self-dual {:<5} parity checked {:<5} Jt {}",
            report.self_dual, report.parity_checked, report.jordan_type
        );
    }
    Ok(())
}
