use proptest::prelude::*;
use xcc_core::corpus::small_groups;
use xcc_core::crossed_complex::aut_crossed_module_with_data;
use xcc_core::finite_algebra::presets::*;
use xcc_core::finite_algebra::{automorphism_group, center, enumerate_homs, group_fingerprint, identify};
use xcc_core::FiniteGroup;

fn presets() -> Vec<FiniteGroup> {
    let mut v: Vec<FiniteGroup> = small_groups(8).into_iter().map(|(_, g)| g).collect();
    v.extend([alternating4(), dicyclic(3), symmetric(3).direct_product(&cyclic(2))]);
    v
}

#[test]
fn inner_automorphisms_times_center_is_the_group() {
    for k in presets() {
        let aut = automorphism_group(&k);
        assert_eq!(aut.inn_subgroup.len() * center(&k).embed.len(), k.order());
    }
}

#[test]
fn conjugation_is_a_crossed_module_boundary() {
    for (_, k) in small_groups(8) {
        let (c, aut) = aut_crossed_module_with_data(&k);
        c.validate().unwrap();
        assert_eq!(aut.chi.kernel_members(), center(&k).embed);
        assert!(aut.aut.is_normal(&aut.chi.image_members()));
    }
}

#[test]
fn homomorphisms_are_closed_under_automorphisms_of_the_target() {
    for (_, g) in small_groups(4) {
        for (_, q) in small_groups(6) {
            let homs: Vec<Vec<usize>> = enumerate_homs(&g, &q).into_iter().map(|h| h.image).collect();
            let aut = automorphism_group(&q);
            for h in homs.iter().take(6) {
                for a in &aut.maps {
                    let moved: Vec<usize> = h.iter().map(|&x| a[x]).collect();
                    assert!(homs.contains(&moved));
                }
            }
        }
    }
}

fn permutation_fixing_zero(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|rest| {
        let mut p = vec![0];
        p.extend(rest);
        p
    })
}

fn relabeled_group() -> impl Strategy<Value = (usize, Vec<usize>)> {
    (0usize..14).prop_flat_map(|i| (Just(i), permutation_fixing_zero(small_groups(8)[i].1.order())))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn fingerprints_survive_relabeling((which, perm) in relabeled_group()) {
        let (name, g) = small_groups(8).swap_remove(which);
        let h = g.relabel(&perm);
        prop_assert_eq!(group_fingerprint(&h), group_fingerprint(&g));
        prop_assert_eq!(identify(&h), name);
    }
}
