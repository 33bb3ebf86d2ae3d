//! Structural identities of ranks, degrees and Jordan types, checked on the
//! catalog and on random inputs against test-side oracles.

mod common;

use common::*;
use modinv::field::{ExtField, Field, PrimeField};
use modinv::invariants::{jordan_type_at, jordan_type_at_ppoint, Config, Decision, Degree, Invariants, JordanType};
use modinv::linalg::{rref, Subspace};
use modinv::modrep::{mn_module, parse_zoo_spec, regular_module, zoo, Limits, ModuleRep};
use modinv::projmaps::DefiningSystem;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn inv(m: &ModuleRep) -> Invariants {
    Invariants::new(m.clone(), Config::default())
}

fn module(name: &str) -> ModuleRep {
    zoo(&parse_zoo_spec(name).unwrap(), &Limits::default()).unwrap()
}

#[test]
fn degree_lies_between_zero_and_j_rank() {
    for (name, m) in zoo_modules(&[3, 5]) {
        let i = inv(&m);
        for j in i.levels() {
            let rk = i.generic_jrank(j).unwrap() as u32;
            let d = i.jdegree(j).unwrap().value().expect("zoo degrees are determined");
            assert!(d <= j * rk, "{name} j={j}: deg {d} > {}", j * rk);
        }
    }
}

#[test]
fn degrees_of_module_and_dual_add_to_j_rank() {
    let mut checked = 0;
    for (name, m) in zoo_modules(&[3, 5]) {
        let (a, b) = (inv(&m), inv(&m.dual()));
        for j in a.levels() {
            if !a.constant_jrank_certify(j).unwrap().is_constant() {
                continue;
            }
            let rk = a.generic_jrank(j).unwrap() as u32;
            let sum = a.jdegree(j).unwrap().value().unwrap() + b.jdegree(j).unwrap().value().unwrap();
            assert_eq!(sum, j * rk, "{name} j={j}");
            checked += 1;
        }
    }
    assert!(checked >= 40, "only {checked} constant levels");
}

#[test]
fn equal_images_and_kernels_match_extreme_degrees() {
    for (name, m) in zoo_modules(&[3, 5]) {
        let i = inv(&m);
        let degs: Vec<u32> = i.levels().map(|j| i.jdegree(j).unwrap().value().unwrap()).collect();
        if m.r() >= 2 && i.constant_jordan_type().unwrap() == Decision::Yes {
            let all_zero = degs.iter().all(|&d| d == 0);
            assert_eq!(i.eip_all().unwrap(), Decision::from_bool(all_zero), "{name}");
        }
        for j in i.levels() {
            if i.constant_jrank_certify(j).unwrap().is_constant() {
                let top = j * i.generic_jrank(j).unwrap() as u32;
                assert_eq!(i.ekp(j).unwrap(), Decision::from_bool(degs[j as usize - 1] == top), "{name} j={j}");
            }
        }
    }
}

#[test]
fn degrees_add_over_direct_sums() {
    let pairs = [
        ("regular:p=3", "mn:p=3,n=3"),
        ("h:p=3", "vr1:p=3,r=2"),
        ("mn:p=3,n=2", "mn:p=3,n=4"),
        ("rad:p=3", "trivial:p=3,dim=2"),
        ("mn:p=5,n=3", "mn:p=5,n=6"),
    ];
    for (x, y) in pairs {
        let (a, b) = (module(x), module(y));
        let s = inv(&a.direct_sum(&b).unwrap());
        let (ia, ib) = (inv(&a), inv(&b));
        for j in s.levels() {
            if !(ia.constant_jrank_certify(j).unwrap().is_constant() && ib.constant_jrank_certify(j).unwrap().is_constant()) {
                continue;
            }
            let want = ia.jdegree(j).unwrap().value().unwrap() + ib.jdegree(j).unwrap().value().unwrap();
            assert_eq!(s.jdegree(j).unwrap(), Degree::Value(want), "{x} ⊕ {y} j={j}");
        }
    }
}

#[test]
fn degree_survives_restriction_to_any_plane_of_generators() {
    for name in ["vr1:p=3,r=3", "regular:p=3,r=3", "soc:p=3,r=3,s=2", "vr1:p=5,r=3", "trivial:p=5,r=3,dim=2"] {
        let m = module(name);
        let i = inv(&m);
        let e = |v: usize| (0..3).map(|t| u32::from(t == v)).collect::<Vec<u32>>();
        for j in i.levels() {
            if !i.constant_jrank_certify(j).unwrap().is_constant() {
                continue;
            }
            let d = i.jdegree(j).unwrap();
            for (a, b) in [(0, 1), (0, 2), (1, 2)] {
                assert_eq!(i.restricted_degree(j, &e(a), &e(b)).unwrap(), d, "{name} j={j} plane {a}{b}");
            }
            // a skew plane spanned by (1,1,0) and (0,1,2)
            assert_eq!(i.restricted_degree(j, &[1, 1, 0], &[0, 1, 2]).unwrap(), d, "{name} j={j}");
        }
    }
}

#[test]
fn invariants_are_unchanged_by_a_change_of_generators() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for name in ["mn:p=3,n=3", "regular:p=3", "h:p=3", "mr2:p=5", "m3xy:p=3", "vr1:p=3,r=3"] {
        let m = module(name);
        let base = inv(&m);
        let profile: Vec<(usize, Decision, Degree)> = base
            .levels()
            .map(|j| {
                (
                    base.generic_jrank(j).unwrap(),
                    base.constant_jrank_certify(j).unwrap().decision(),
                    base.jdegree(j).unwrap(),
                )
            })
            .collect();
        for _ in 0..20 {
            let g = random_invertible(&mut rng, m.p(), m.r());
            let moved = inv(&m.change_of_generators(&g).unwrap());
            for j in moved.levels() {
                let got = (
                    moved.generic_jrank(j).unwrap(),
                    moved.constant_jrank_certify(j).unwrap().decision(),
                    moved.jdegree(j).unwrap(),
                );
                assert_eq!(got, profile[j as usize - 1], "{name} j={j} g={:?}", g.row_vecs());
            }
        }
    }
}

/// Reduced tuple of the full minor vector at a column set.
fn full_chart(m: &ModuleRep, j: u32, chart: &[usize]) -> Option<DefiningSystem> {
    let theta = m.theta(j).unwrap().to_polymat();
    let v = theta.pluecker_vector(chart.len(), chart).unwrap();
    if v.iter().all(|f| f.is_zero()) {
        return None;
    }
    Some(DefiningSystem::new(v).unwrap().reduce().unwrap().0)
}

#[test]
fn charts_agree_and_give_the_block_degree() {
    for (name, m) in zoo_modules(&[3]) {
        let i = inv(&m);
        for j in i.levels() {
            let rk = i.generic_jrank(j).unwrap();
            if rk == 0 || modinv::linalg::binomial(m.dim(), rk) > 400 {
                continue;
            }
            let chart = i.chart(j).unwrap();
            let main = full_chart(&m, j, &chart).unwrap();
            // the product of the block tuples is the full Plücker tuple
            assert_eq!(Degree::Value(main.form_degree()), i.jdegree(j).unwrap(), "{name} j={j}");
            let others: Vec<DefiningSystem> = modinv::linalg::combinations(m.dim(), rk)
                .filter(|c| *c != chart)
                .filter_map(|c| full_chart(&m, j, &c))
                .take(3)
                .collect();
            for o in others {
                assert!(main.same_morphism(&o).unwrap(), "{name} j={j}");
            }
        }
    }
}

#[test]
fn self_dual_modules_satisfy_the_parity_constraints() {
    for (name, m) in zoo_modules(&[3, 5]) {
        let r = inv(&m).report().unwrap_or_else(|e| panic!("{name}: {e}"));
        if r.self_dual == Decision::Yes && r.r >= 2 {
            assert!(r.parity_checked, "{name}");
            for (idx, c) in r.profile.constancy.iter().enumerate() {
                if idx % 2 == 0 && c.is_constant() {
                    assert_eq!(r.profile.ranks[idx] % 2, 0, "{name} j={}", idx + 1);
                }
            }
        }
    }
}

#[test]
fn jordan_types_match_the_kernel_flag_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (name, m) in zoo_modules(&[3, 5]) {
        let k = PrimeField::new(m.p()).unwrap();
        for pt in modinv::groebner::projective_points(m.p(), m.r()).take(12) {
            let got = jordan_type_at(&m, &k, &pt).unwrap();
            assert_eq!(got.0, jordan_oracle(&operator(&m, &pt), m.p()), "{name} at {pt:?}");
        }
        if m.is_commuting() {
            for _ in 0..50 {
                let (u, terms) = random_ppoint(&mut rng, m.p(), m.r());
                let got = jordan_type_at_ppoint(&m, &u).unwrap();
                assert_eq!(got.0, jordan_oracle(&pullback_oracle(&m, &terms), m.p()), "{name} at {terms:?}");
            }
        }
    }
}

#[test]
fn point_images_lie_in_the_radical() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (name, m) in zoo_modules(&[3, 5]) {
        let k = *m.field();
        let rad = m.radical_power(1);
        for _ in 0..20 {
            let pt: Vec<u32> = (0..m.r()).map(|_| rng.gen_range(0..m.p())).collect();
            let im = Subspace::column_space(&k, &m.operator_at(&k, &pt).unwrap());
            assert!(rad.space().contains_space(&k, &im), "{name} at {pt:?}");
        }
    }
}

#[test]
fn small_commuting_frames_of_constant_rank_are_trivial() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut frames = 0;
    let mut certified = 0;
    while frames < 500 {
        let p = [2u32, 3, 5][rng.gen_range(0..3)];
        let r = rng.gen_range(2..=4usize);
        let n = rng.gen_range(1..=r);
        let Some(m) = random_commuting_frame(&mut rng, p, r, n) else { continue };
        frames += 1;
        let i = inv(&m);
        if i.constant_jrank_certify(1).unwrap().is_constant() {
            certified += 1;
            assert_eq!(i.generic_jrank(1).unwrap(), 0, "{:?}", m.gens());
        }
    }
    assert!(certified > 0);
}

#[test]
fn regular_module_images_separate_points() {
    let m = regular_module(3, 2).unwrap();
    let k = ExtField::new(3, 3).unwrap();
    let mut images = Vec::new();
    for idx in 0..20 {
        let pt = [k.one(), k.element(idx)];
        let a = m.operator_at(&k, &pt).unwrap();
        let r = rref(&k, &a.transpose());
        let rows: Vec<usize> = (0..r.pivots.len()).collect();
        let cols: Vec<usize> = (0..a.rows()).collect();
        images.push(r.matrix.select(&rows, &cols));
    }
    for a in 0..images.len() {
        for b in a + 1..images.len() {
            assert_ne!(images[a], images[b], "points {a} and {b}");
        }
    }
}

#[test]
fn truncation_types_follow_from_ranks() {
    let m = mn_module(5, 4).unwrap();
    let jt = inv(&m).generic_jordan_type().unwrap();
    let ranks: Vec<usize> = std::iter::once(m.dim())
        .chain((1..=5).map(|j| if j < 5 { inv(&m).generic_jrank(j).unwrap() } else { 0 }))
        .collect();
    assert_eq!(jt, JordanType::from_ranks(&ranks).unwrap());
    assert_eq!(jt.dim(), m.dim());
}
