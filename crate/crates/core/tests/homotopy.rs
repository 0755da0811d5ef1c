use proptest::prelude::*;
use xcc_core::corpus::small_groups;
use xcc_core::crossed_complex::{em_complex, twisted_em};
use xcc_core::finite_algebra::enumerate_homs;
use xcc_core::finite_algebra::presets::*;
use xcc_core::free_resolution::{check_morphism, induced_theta, standard_resolution, MorphismAssignment};
use xcc_core::hom_homotopy::{apply_homotopy, cohomology_group, enumerate_morphisms, homotopy_classes, is_homotopic};
use xcc_core::oracle::bar_cocycle_cohomology;
use xcc_core::{FiniteGroup, GModule, GroupHom};

fn modules_over(q: &FiniteGroup) -> Vec<GModule> {
    let mut out = Vec::new();
    for a in [cyclic(2), cyclic(3), cyclic(4), klein4()] {
        out.push(GModule::trivial_action(a.clone(), q.clone()).unwrap());
        for sign in enumerate_homs(q, &cyclic(2)) {
            if sign.image.contains(&1) {
                let flips: Vec<bool> = sign.image.iter().map(|&s| s == 1).collect();
                out.push(GModule::sign_action(a.clone(), q.clone(), &flips).unwrap());
            }
        }
    }
    out
}

#[test]
fn classes_into_eilenberg_mac_lane_complexes_are_homomorphisms() {
    for phi in [cyclic(2), cyclic(3), klein4()] {
        let f = standard_resolution(&phi, 3).unwrap();
        for (_, g) in small_groups(6) {
            let classes = homotopy_classes(&f, &em_complex(&g), None).unwrap();
            assert_eq!(classes.len(), enumerate_homs(&phi, &g).len());
        }
    }
}

#[test]
fn classes_over_theta_match_cohomology() {
    for (g, degrees) in [(cyclic(2), 2..=3), (cyclic(3), 2..=2)] {
        for a in modules_over(&g) {
            for n in degrees.clone() {
                let k = twisted_em(&g, &a, n).unwrap();
                let f = standard_resolution(&g, n + 1).unwrap();
                let theta = GroupHom::identity(&g);
                let id_theta: Vec<usize> = (0..g.order()).collect();
                let classes = homotopy_classes(&f, &k, Some(&id_theta)).unwrap();
                let h = cohomology_group(&f, &theta, &a, n).unwrap();
                assert_eq!(classes.len() as u128, h.order(), "|G| = {}, |A| = {}, n = {n}", g.order(), a.coeff.order());
                for class in &classes {
                    for m in class {
                        check_morphism(&f, &k, m).unwrap();
                        assert_eq!(induced_theta(&f, &k, m).unwrap(), id_theta);
                    }
                    let c = h.class_of(&class[0].values[n - 1]).unwrap();
                    assert!(class.iter().all(|m| h.class_of(&m.values[n - 1]).unwrap() == c));
                }
            }
        }
    }
}

#[test]
fn second_cohomology_matches_the_oracle() {
    let g = cyclic(2);
    let a = GModule::trivial_action(cyclic(2), g.clone()).unwrap();
    let f = standard_resolution(&g, 3).unwrap();
    let h = cohomology_group(&f, &GroupHom::identity(&g), &a, 2).unwrap();
    let oracle = bar_cocycle_cohomology(&g, &a, 2).unwrap();
    assert_eq!(h.invariant_factors, oracle.invariant_factors);
    let k = twisted_em(&g, &a, 2).unwrap();
    assert_eq!(enumerate_morphisms(&f, &k, Some(&[0, 1])).unwrap().len(), oracle.valid);
}

#[test]
fn distinct_classes_are_not_homotopic() {
    let g = cyclic(2);
    let a = GModule::trivial_action(cyclic(2), g.clone()).unwrap();
    let k = twisted_em(&g, &a, 2).unwrap();
    let f = standard_resolution(&g, 3).unwrap();
    let classes = homotopy_classes(&f, &k, None).unwrap();
    for (i, x) in classes.iter().enumerate() {
        for y in &classes[i + 1..] {
            if induced_theta(&f, &k, &x[0]).unwrap() == induced_theta(&f, &k, &y[0]).unwrap() {
                assert!(is_homotopic(&f, &k, &x[0], &y[0]).unwrap().is_none());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn shifting_by_a_coboundary_is_a_homotopy(which in 0usize..3, module in any::<usize>(), pick in any::<usize>(), h1 in prop::collection::vec(any::<usize>(), 16)) {
        let g = [cyclic(2), cyclic(3), klein4()][which].clone();
        let mods = modules_over(&g);
        let a = &mods[module % mods.len()];
        let k = twisted_em(&g, a, 2).unwrap();
        let f = standard_resolution(&g, 3).unwrap();
        let all = enumerate_morphisms(&f, &k, None).unwrap();
        let m: &MorphismAssignment = &all[pick % all.len()];
        let mut h: Vec<Vec<usize>> = (1..=3).map(|n| vec![0; f.basis_size(n)]).collect();
        h[0] = (0..g.order()).map(|x| h1[x] % a.coeff.order()).collect();
        let shifted = apply_homotopy(&f, &k, m, &h).unwrap();
        check_morphism(&f, &k, &shifted).unwrap();
        let witness = is_homotopic(&f, &k, m, &shifted).unwrap();
        prop_assert!(witness.is_some());
        prop_assert_eq!(apply_homotopy(&f, &k, m, &witness.unwrap().h).unwrap(), shifted);
    }
}
