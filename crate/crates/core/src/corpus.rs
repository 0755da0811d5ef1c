//! Built-in test corpora shared by the test suites, the acceptance target and the CLI.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::crossed_complex::{
    aut_crossed_module, coset_covering, em_complex, em_morphism, normal_subgroup_crossed_module, to_fundamental_group, twisted_em,
    xi_zeta_split, CrsMorphism,
};
use crate::error::Result;
use crate::finite_algebra::{catalogue, enumerate_homs, FiniteGroup, GModule, GroupHom};
use crate::finite_algebra::presets::{cyclic, klein4, symmetric};

/// One group per isomorphism class of order at most `max_order` (up to 8 this is complete).
pub fn small_groups(max_order: usize) -> Vec<(String, FiniteGroup)> {
    let mut out: Vec<(String, FiniteGroup)> = catalogue().into_iter().filter(|(_, g)| g.order() <= max_order).collect();
    out.sort_by(|a, b| (a.1.order(), &a.0).cmp(&(b.1.order(), &b.0)));
    out
}

/// Quotient maps `𝕂(G, 1) → 𝕂(G/N, 1)` for every normal subgroup of every group of order ≤ `max_order`.
pub fn em_surjections(max_order: usize) -> Vec<(String, CrsMorphism)> {
    let mut out = Vec::new();
    for (name, g) in small_groups(max_order) {
        for n in g.normal_subgroups() {
            let q = g.quotient(&n);
            let hom = GroupHom::new(g.clone(), q.group.clone(), q.proj.clone()).expect("quotient map");
            out.push((format!("K({name},1) -> K({name}/N,1), |N| = {}", n.len()), em_morphism(&hom)));
        }
    }
    out
}

/// `N → G` crossed modules mapped to `𝕂(G/N, 1)`; all are trivial fibrations.
pub fn normal_subgroup_quotients(max_order: usize) -> Result<Vec<(String, CrsMorphism)>> {
    let mut out = Vec::new();
    for (name, g) in small_groups(max_order) {
        for n in g.normal_subgroups() {
            let c = normal_subgroup_crossed_module(&g, &n)?;
            out.push((format!("({name} ⊵ N, |N| = {}) -> K(quotient,1)", n.len()), to_fundamental_group(&c)?));
        }
    }
    Ok(out)
}

/// Trivial fibrations used for the lifting tests.
pub fn trivial_fibration_corpus() -> Result<Vec<(String, CrsMorphism)>> {
    let mut out = normal_subgroup_quotients(8)?;
    out.push(("AUT(S3) -> K(Out S3,1)".into(), to_fundamental_group(&aut_crossed_module(&symmetric(3)))?));
    for (name, g) in small_groups(4) {
        out.push((format!("identity of K({name},1)"), CrsMorphism::identity(&em_complex(&g))));
    }
    Ok(out)
}

/// Fibrations whose exact sequences are checked.
pub fn fibration_corpus() -> Result<Vec<(String, CrsMorphism)>> {
    let mut out = Vec::new();
    let split = xi_zeta_split(&aut_crossed_module(&cyclic(3)), 2)?;
    out.push(("xi AUT(C3) -> zeta AUT(C3)".into(), split.p));
    out.extend(em_surjections(8));
    for (name, k) in [("C2", cyclic(2)), ("C3", cyclic(3)), ("C4", cyclic(4)), ("klein4", klein4()), ("S3", symmetric(3))] {
        out.push((format!("AUT({name}) -> K(Out {name},1)"), to_fundamental_group(&aut_crossed_module(&k))?));
    }
    out.extend(normal_subgroup_quotients(6)?);
    for (name, g) in small_groups(6) {
        for h in g.subgroups() {
            out.push((format!("coset covering of {name}, |H| = {}", h.len()), coset_covering(&g, &h)?));
        }
    }
    Ok(out)
}

/// Morphisms between complexes whose levels have order ≤ 8, fibrations or not.
pub fn morphism_corpus() -> Result<Vec<(String, CrsMorphism)>> {
    let mut out = trivial_fibration_corpus()?;
    for k in [cyclic(3), cyclic(4)] {
        let split = xi_zeta_split(&aut_crossed_module(&k), 2)?;
        out.push((format!("xi -> zeta for AUT(C{})", k.order()), split.p));
        out.push((format!("AUT(C{}) -> xi", k.order()), split.j));
    }
    let groups = small_groups(4);
    for (a, g) in &groups {
        for (b, q) in &groups {
            for hom in enumerate_homs(g, q) {
                out.push((format!("K({a},1) -> K({b},1) by {:?}", hom.image), em_morphism(&hom)));
            }
        }
    }
    for k in [cyclic(2), cyclic(4), klein4()] {
        let aut = aut_crossed_module(&k);
        out.push((format!("AUT of order {} -> K(Out,1)", k.order()), to_fundamental_group(&aut)?));
        out.push((format!("zero AUT of order {} -> AUT", k.order()), CrsMorphism::zero(&aut, &aut, 0)?));
    }
    let c2 = cyclic(2);
    for n in 2..=3 {
        let a = GModule::trivial_action(cyclic(2), c2.clone())?;
        let k = twisted_em(&c2, &a, n)?;
        out.push((format!("K(C2,1;C2,{n}) -> K(C2,1)"), to_fundamental_group(&k)?));
        out.push((format!("K(C2,1) -> K(C2,1;C2,{n})"), CrsMorphism::zero(&em_complex(&c2), &k, 0)?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fourteen_groups_up_to_order_eight() {
        assert_eq!(small_groups(8).len(), 14);
    }

    #[test]
    fn corpora_build() {
        assert!(fibration_corpus().unwrap().iter().all(|(_, p)| p.is_fibration().holds));
        assert!(trivial_fibration_corpus().unwrap().iter().all(|(_, p)| p.is_trivial_fibration().holds));
        let all = morphism_corpus().unwrap();
        assert!(all.iter().any(|(_, p)| !p.is_fibration().holds));
    }
}
