use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::group::{enumerate_hom_images, FiniteGroup, GroupHom, Subgroup};

/// The automorphism data of `K`: `Aut(K)`, the conjugation map `χ: K → Aut(K)`,
/// `Inn(K)` and `Out(K) = Aut(K)/Inn(K)`.
///
/// Automorphisms act on the right, `k^α = α(k)`, and `α·β` applies `α`
/// first. `χ(k)` is `x ↦ k⁻¹ x k`, so that `χ` is a homomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutData {
    pub base: FiniteGroup,
    pub aut: FiniteGroup,
    /// `maps[a]` is the image array of automorphism `a`; sorted lexicographically.
    pub maps: Vec<Vec<usize>>,
    pub chi: GroupHom,
    pub inn_subgroup: Vec<usize>,
    pub out: FiniteGroup,
    pub proj: GroupHom,
    /// Minimal-index coset representative in `aut` for each element of `out`.
    pub out_reps: Vec<usize>,
}

impl AutData {
    pub fn apply(&self, a: usize, k: usize) -> usize {
        self.maps[a][k]
    }

    pub fn index_of(&self, map: &[usize]) -> Option<usize> {
        self.maps.binary_search_by(|m| m.as_slice().cmp(map)).ok()
    }

    /// Automorphisms in the outer class `q`.
    pub fn coset(&self, q: usize) -> Vec<usize> {
        (0..self.aut.order()).filter(|&a| self.proj.image[a] == q).collect()
    }
}

pub fn automorphism_group(k: &FiniteGroup) -> AutData {
    let maps: Vec<Vec<usize>> = enumerate_hom_images(k, k)
        .into_iter()
        .filter(|m| {
            let mut seen = vec![false; m.len()];
            m.iter().all(|&x| !core::mem::replace(&mut seen[x], true))
        })
        .collect();
    if k.order() <= 8 {
        assert_eq!(maps, automorphisms_exhaustive(k), "generator backtracking disagrees with full enumeration");
    }
    let index: BTreeMap<&[usize], usize> = maps.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
    let n = maps.len();
    let mut table = Vec::with_capacity(n * n);
    for a in &maps {
        for b in &maps {
            let comp: Vec<usize> = a.iter().map(|&x| b[x]).collect();
            table.push(index[comp.as_slice()]);
        }
    }
    let aut = FiniteGroup::from_flat(n, table).expect("automorphisms form a group");
    let chi_image: Vec<usize> = (0..k.order())
        .map(|c| {
            let m: Vec<usize> = (0..k.order()).map(|x| k.conj(x, c)).collect();
            index[m.as_slice()]
        })
        .collect();
    let chi = GroupHom { dom: k.clone(), cod: aut.clone(), image: chi_image };
    let inn_subgroup = chi.image_members();
    let q = aut.quotient(&inn_subgroup);
    let proj = GroupHom { dom: aut.clone(), cod: q.group.clone(), image: q.proj };
    AutData { base: k.clone(), aut, maps, chi, inn_subgroup, out: q.group, proj, out_reps: q.reps }
}

/// All automorphisms by enumerating every bijection fixing 0.
pub fn automorphisms_exhaustive(k: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = k.order();
    let mut out = Vec::new();
    let mut cur = vec![0usize];
    let mut used = vec![false; n];
    used[0] = true;
    fn rec(k: &FiniteGroup, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let n = k.order();
        if cur.len() == n {
            if (0..n).all(|a| (0..n).all(|b| cur[k.mul(a, b)] == k.mul(cur[a], cur[b]))) {
                out.push(cur.clone());
            }
            return;
        }
        for x in 1..n {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                rec(k, cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    rec(k, &mut cur, &mut used, &mut out);
    out
}

pub fn center(k: &FiniteGroup) -> Subgroup {
    k.subgroup(&k.center_members())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_algebra::presets::*;

    #[test]
    fn aut_orders() {
        let c4 = automorphism_group(&cyclic(4));
        assert_eq!((c4.aut.order(), c4.out.order()), (2, 2));
        assert_eq!(c4.inn_subgroup, vec![0]);
        assert_eq!(automorphism_group(&klein4()).aut.order(), 6);
        assert_eq!(automorphism_group(&FiniteGroup::trivial()).aut.order(), 1);
        assert_eq!(automorphism_group(&quaternion8()).aut.order(), 24);
        assert_eq!(automorphism_group(&dihedral(4)).out.order(), 2);
    }

    #[test]
    fn identity_automorphism_is_index_zero() {
        let a = automorphism_group(&symmetric(3));
        assert_eq!(a.maps[0], (0..6).collect::<Vec<_>>());
        assert_eq!(a.aut.order(), 6);
        assert_eq!(a.out.order(), 1);
    }

    #[test]
    fn centers() {
        assert_eq!(center(&symmetric(3)).group.order(), 1);
        assert_eq!(center(&cyclic(4)).group.order(), 4);
        assert_eq!(center(&quaternion8()).group.order(), 2);
    }

    #[test]
    fn inner_times_center_is_order() {
        for g in [cyclic(6), symmetric(3), dihedral(4), quaternion8(), klein4(), symmetric(4), alternating4()] {
            let a = automorphism_group(&g);
            assert_eq!(a.inn_subgroup.len() * center(&g).group.order(), g.order());
            assert_eq!(a.chi.kernel_members(), g.center_members());
            assert!(a.aut.is_normal(&a.inn_subgroup));
        }
    }
}
