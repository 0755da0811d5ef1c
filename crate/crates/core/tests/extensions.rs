use std::collections::BTreeSet;

use proptest::prelude::*;
use xcc_core::corpus::small_groups;
use xcc_core::extensions::{
    canonical_factor_set, classify_extensions, equivalent_factor_sets, extension_from_factor_set, morphism_from_factor_set, obstruction_class,
    obstruction_from_lift, AbstractKernel, FactorSet,
};
use xcc_core::finite_algebra::presets::*;
use xcc_core::hom_homotopy::is_homotopic;
use xcc_core::oracle::{brute_force_factor_sets, find_factor_set};
use xcc_core::Error;

fn small_kernels(max_k: usize, max_g: usize) -> Vec<AbstractKernel> {
    let mut out = Vec::new();
    for (_, k) in small_groups(max_k) {
        for (_, g) in small_groups(max_g) {
            out.extend(AbstractKernel::all(&k, &g).unwrap());
        }
    }
    out
}

#[test]
fn classification_matches_the_oracle_partition() {
    let mut compared = 0;
    for kernel in small_kernels(4, 4) {
        let ours = classify_extensions(&kernel).unwrap();
        let oracle = match brute_force_factor_sets(&kernel.k, &kernel.g, &kernel.psi_reps()) {
            Ok(r) => r,
            Err(Error::SearchSpaceTooLarge { .. }) => continue,
            Err(e) => panic!("{e}"),
        };
        compared += 1;
        assert_eq!(ours.classes.len(), oracle.classes);
        let mine: BTreeSet<FactorSet> = ours.classes.iter().map(|c| c.factor_set.clone()).collect();
        let theirs: BTreeSet<FactorSet> = oracle
            .factor_sets
            .iter()
            .map(|o| canonical_factor_set(&kernel, &FactorSet::from_maps(&kernel, &o.phi, o.f.clone()).unwrap()).unwrap())
            .collect();
        assert_eq!(mine, theirs);
    }
    assert!(compared >= 20, "only {compared} kernels fit the oracle cap");
}

#[test]
fn obstruction_vanishes_exactly_when_a_factor_set_exists() {
    for kernel in small_kernels(6, 4) {
        let ob = obstruction_class(&kernel).unwrap();
        let found = find_factor_set(&kernel.k, &kernel.g, &kernel.psi_reps(), 1 << 26).unwrap();
        assert_eq!(ob.is_zero(), found.is_some());
    }
}

#[test]
fn classified_extensions_are_sound() {
    for kernel in small_kernels(4, 4) {
        let c = classify_extensions(&kernel).unwrap();
        assert_eq!(c.classes.is_empty(), !c.obstruction.is_zero());
        if c.classes.is_empty() {
            continue;
        }
        assert_eq!(c.classes.len() as u128, c.h2.order());
        for class in &c.classes {
            class.factor_set.validate(&kernel).unwrap();
            let e = &class.extension;
            assert_eq!(e.group.order(), kernel.k.order() * kernel.g.order());
            assert!(e.group.is_normal(&e.inclusion));
            for x in 0..kernel.g.order() {
                let a = kernel.aut.index_of(&e.conjugation_on_kernel(x)).unwrap();
                assert_eq!(kernel.aut.proj.apply(a), kernel.psi.apply(x));
            }
            for a in 0..e.group.order() {
                for b in 0..e.group.order() {
                    assert_eq!(e.projection[e.group.mul(a, b)], kernel.g.mul(e.projection[a], e.projection[b]));
                }
            }
        }
        // free and transitive: each row is a permutation, and row c sends class 0 to a distinct class
        let firsts: BTreeSet<usize> = c.torsor.iter().map(|row| row[0]).collect();
        assert_eq!(firsts.len(), c.classes.len());
        for row in &c.torsor {
            assert_eq!(row.iter().collect::<BTreeSet<_>>().len(), c.classes.len());
        }
    }
}

#[test]
fn twisted_product_of_the_c4_factor_set_is_cyclic() {
    let kernel = AbstractKernel::new(&cyclic(2), &cyclic(2), vec![0, 0]).unwrap();
    let fs = FactorSet { phi: vec![0, 0], f: vec![vec![0, 0], vec![0, 1]] };
    let e = extension_from_factor_set(&kernel, &fs).unwrap();
    assert!((0..4).any(|x| e.group.element_order(x) == 4));
}

fn kernel_strategy() -> impl Strategy<Value = AbstractKernel> {
    let kernels: Vec<AbstractKernel> = [(cyclic(4), cyclic(2)), (cyclic(2), cyclic(2)), (cyclic(3), cyclic(2)), (klein4(), cyclic(2)), (dihedral(4), cyclic(2)), (cyclic(2), klein4())]
        .iter()
        .flat_map(|(k, g)| AbstractKernel::all(k, g).unwrap())
        .collect();
    prop::sample::select(kernels)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn obstruction_is_independent_of_lifts(kernel in kernel_strategy(), choice in prop::collection::vec(any::<usize>(), 20)) {
        let base = obstruction_class(&kernel).unwrap();
        let n = kernel.g.order();
        let mut pick = choice.iter().cycle();
        let phi: Vec<usize> = (0..n).map(|x| { let c = kernel.phi_choices(x); c[pick.next().unwrap() % c.len()] }).collect();
        let f: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| { let c = kernel.f_choices(&phi, x, y); c[pick.next().unwrap() % c.len()] }).collect()).collect();
        prop_assert_eq!(obstruction_from_lift(&kernel, &phi, &f).unwrap().class, base.class);
    }

    #[test]
    fn equivalence_is_homotopy(kernel in kernel_strategy(), i in any::<usize>(), j in any::<usize>(), d in prop::collection::vec(any::<usize>(), 4)) {
        let c = classify_extensions(&kernel).unwrap();
        prop_assume!(!c.classes.is_empty());
        let res = kernel.resolution(3).unwrap();
        let a = &c.classes[i % c.classes.len()].factor_set;
        let mut d: Vec<usize> = d.iter().map(|x| x % kernel.k.order()).collect();
        d[0] = kernel.center.embed[d[0] % kernel.center.embed.len()];
        d.truncate(kernel.g.order());
        let b = c.classes[j % c.classes.len()].factor_set.transformed(&kernel, &d);
        b.validate(&kernel).unwrap();
        let equivalent = equivalent_factor_sets(&kernel, &kernel, a, &b).unwrap();
        if let Some(w) = &equivalent {
            prop_assert_eq!(&a.transformed(&kernel, w), &b);
        }
        let (ma, mb) = (morphism_from_factor_set(&kernel, a).unwrap(), morphism_from_factor_set(&kernel, &b).unwrap());
        prop_assert_eq!(equivalent.is_some(), is_homotopic(&res, &kernel.complex, &ma, &mb).unwrap().is_some());
        prop_assert_eq!(equivalent.is_some(), i % c.classes.len() == j % c.classes.len());
    }
}

#[test]
fn kernels_with_different_actions_do_not_compare() {
    let all = AbstractKernel::all(&cyclic(3), &cyclic(2)).unwrap();
    let fs = classify_extensions(&all[0]).unwrap().classes[0].factor_set.clone();
    let gs = classify_extensions(&all[1]).unwrap().classes[0].factor_set.clone();
    assert_eq!(equivalent_factor_sets(&all[0], &all[1], &fs, &gs), Err(Error::KernelMismatch));
}
