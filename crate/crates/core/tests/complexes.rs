use xcc_core::corpus::{em_surjections, fibration_corpus, small_groups};
use xcc_core::crossed_complex::{aut_crossed_module, em_morphism, exact_sequence, twisted_em, xi_zeta_split};
use xcc_core::finite_algebra::presets::*;
use xcc_core::{GModule, GroupHom};

#[test]
fn composites_of_fibrations_are_fibrations() {
    let mut checked = 0;
    for (_, p) in em_surjections(8) {
        let q = p.target.c1.vertex_group(0).0;
        for n in q.normal_subgroups() {
            let quot = q.quotient(&n);
            let second = em_morphism(&GroupHom::new(q.clone(), quot.group.clone(), quot.proj.clone()).unwrap());
            let composite = p.then(&second).unwrap();
            assert!(composite.is_fibration().holds);
            checked += 1;
        }
    }
    assert!(checked > 50);
}

#[test]
fn exact_sequences_of_the_fibration_corpus() {
    for (name, p) in fibration_corpus().unwrap() {
        let report = exact_sequence(&p, 0).unwrap();
        assert!(report.exact(), "{name}: {:?}", report.exactness);
        assert!(report.all_hold(), "{name}");
    }
}

#[test]
fn homology_of_eilenberg_mac_lane_complexes() {
    for q in [cyclic(2), cyclic(3), klein4()] {
        for a in [cyclic(2), cyclic(3), cyclic(4)] {
            let m = GModule::trivial_action(a.clone(), q.clone()).unwrap();
            for n in 2..=4 {
                let k = twisted_em(&q, &m, n).unwrap();
                for j in 2..=n {
                    let expected = if j == n { a.order() } else { 1 };
                    assert_eq!(k.homology(j, 0).unwrap().order(), expected);
                }
                assert_eq!(k.fundamental_group(0).order(), q.order());
            }
        }
    }
}

#[test]
fn xi_kills_homology_up_to_the_new_dimension() {
    for (_, k) in small_groups(8) {
        let split = xi_zeta_split(&aut_crossed_module(&k), 2).unwrap();
        for m in 2..=3 {
            assert_eq!(split.xi.homology(m, 0).unwrap().order(), 1);
        }
        assert_eq!(split.zeta.homology(3, 0).unwrap().order(), k.center_members().len());
    }
}
