//! Building catalog modules, walking their Loewy series and round-tripping
//! them through the module file format.

use modinv::modrep::{catalog, module_from_json, module_to_json, zoo, Limits, SeriesKind};

fn main() -> modinv::Result<()> {
    let limits = Limits::default();
    for spec in catalog(3)? {
        let m = zoo(&spec, &limits)?;
        let radical: Vec<usize> = m.series(SeriesKind::Radical).iter().map(|s| s.dim()).collect();
        println!(
            "{spec:<24} dim {:>2}  commuting {:<5}  radical series {radical:?}",
            m.dim(),
            m.is_commuting()
        );
    }

    let m = zoo(&modinv::modrep::parse_zoo_spec("mn:p=3,n=3")?, &limits)?;
    let text = module_to_json(&m);
    let back = module_from_json(&text, &limits)?;
    assert_eq!(module_to_json(&back), text);
    assert_eq!(m.dual().dual(), m);
    print!("M_3 on disk: {text}");
    Ok(())
}
