use proptest::prelude::*;
use xcc_core::corpus::{small_groups, trivial_fibration_corpus};
use xcc_core::extensions::AbstractKernel;
use xcc_core::finite_algebra::enumerate_homs;
use xcc_core::finite_algebra::presets::*;
use xcc_core::free_resolution::{
    boundary_composite_failure, check_morphism, cyclic_resolution, lift_through_trivial_fibration, standard_resolution, FreeCrsPresentation,
    MorphismAssignment,
};
use xcc_core::FiniteGroup;

/// `(φ, f)` with `φ` lifting `ψ` and `f` compatible, picked by `choice`; no cocycle condition.
fn compatible_pair(kernel: &AbstractKernel, f: &FreeCrsPresentation, choice: &[usize]) -> MorphismAssignment {
    let n = kernel.g.order();
    let mut pick = choice.iter().cycle();
    let phi: Vec<usize> = (0..n)
        .map(|x| {
            let c = kernel.phi_choices(x);
            c[pick.next().unwrap() % c.len()]
        })
        .collect();
    let mut m = MorphismAssignment::unset(f, vec![0]);
    m.values[0] = phi.clone();
    for x in 0..n {
        for y in 0..n {
            let c = kernel.f_choices(&phi, x, y);
            m.values[1][x * n + y] = c[pick.next().unwrap() % c.len()];
        }
    }
    m
}

fn kernels_over(g: &FiniteGroup) -> Vec<AbstractKernel> {
    let mut out = Vec::new();
    for k in [cyclic(2), cyclic(3), klein4(), symmetric(3)] {
        out.extend(AbstractKernel::all(&k, g).unwrap().into_iter().take(3));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn boundary_composites_vanish_by_evaluation(which in 0usize..14, choice in prop::collection::vec(any::<usize>(), 1..40)) {
        let g = small_groups(8).swap_remove(which).1;
        let f = standard_resolution(&g, 4).unwrap();
        for kernel in kernels_over(&g) {
            let m = compatible_pair(&kernel, &f, &choice);
            prop_assert_eq!(boundary_composite_failure(&f, &kernel.complex, &m).unwrap(), None);
        }
    }

    #[test]
    fn lifts_through_trivial_fibrations(which in any::<usize>(), phi_group in 0usize..4, hom in any::<usize>()) {
        let corpus = trivial_fibration_corpus().unwrap();
        let (name, p) = &corpus[which % corpus.len()];
        let source = [cyclic(2), cyclic(3), cyclic(4), klein4()][phi_group].clone();
        let f = standard_resolution(&source, 3).unwrap();
        let q = p.target.c1.vertex_group(0).0;
        let homs = enumerate_homs(&source, &q);
        let h = &homs[hom % homs.len()];
        let mut fmap = MorphismAssignment::unset(&f, vec![0]);
        fmap.values[0] = f.phi.iter().map(|&x| h.apply(x)).collect();
        for n in 2..=3 {
            fmap.values[n - 1].iter_mut().for_each(|v| *v = 0);
        }
        check_morphism(&f, &p.target, &fmap).unwrap();
        let g = lift_through_trivial_fibration(&f, &fmap, p).unwrap();
        check_morphism(&f, &p.source, &g).unwrap();
        prop_assert_eq!(&g.then(p), &fmap, "{}", name);
    }
}

#[test]
fn cyclic_resolutions_have_trivial_composites() {
    for m in 2..=6 {
        let f = cyclic_resolution(m, 5).unwrap();
        let g = cyclic(m);
        for kernel in kernels_over(&g) {
            let mut a = MorphismAssignment::unset(&f, vec![0]);
            let phi = kernel.phi_choices(1)[0];
            // x ↦ φ, a ↦ a preimage of φ^m under χ when one exists
            let aut = &kernel.aut.aut;
            let target = aut.pow(phi, m as i64);
            let Some(k) = (0..kernel.k.order()).find(|&k| kernel.aut.chi.apply(k) == target) else { continue };
            a.values[0] = vec![phi];
            a.values[1] = vec![k];
            assert_eq!(boundary_composite_failure(&f, &kernel.complex, &a).unwrap(), None);
        }
    }
}

#[test]
fn a_broken_fourth_boundary_is_detected() {
    let g = cyclic(2);
    let f = standard_resolution(&g, 4).unwrap();
    let kernel = AbstractKernel::all(&cyclic(2), &g).unwrap().remove(0);
    let mut detected = 0;
    for b in 0..f.basis_size(4) {
        let mut broken = f.clone();
        if broken.higher[0][b].0.pop().is_none() {
            continue;
        }
        let caught = (0..16usize).any(|seed| {
            let m = compatible_pair(&kernel, &f, &[seed, seed >> 1, seed >> 2, seed >> 3]);
            boundary_composite_failure(&broken, &kernel.complex, &m).unwrap() == Some((4, b))
        });
        detected += caught as usize;
    }
    assert!(detected >= 8, "only {detected} broken boundaries detected");
}
