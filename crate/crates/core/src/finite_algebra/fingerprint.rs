use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::group::FiniteGroup;
use super::presets::*;
use crate::oracle::exhaustive_isomorphism;

/// Isomorphism invariants used to pre-filter identification.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fingerprint {
    pub order: usize,
    pub abelian: bool,
    pub element_orders: Vec<usize>,
    pub center_order: usize,
    pub derived_order: usize,
}

pub fn group_fingerprint(g: &FiniteGroup) -> Fingerprint {
    let mut element_orders: Vec<usize> = (0..g.order()).map(|a| g.element_order(a)).collect();
    element_orders.sort_unstable();
    Fingerprint {
        order: g.order(),
        abelian: g.is_abelian(),
        element_orders,
        center_order: g.center_members().len(),
        derived_order: g.derived_subgroup_members().len(),
    }
}

/// Groups searched by [`identify`], in priority order.
pub fn catalogue() -> Vec<(String, FiniteGroup)> {
    let mut out: Vec<(String, FiniteGroup)> = Vec::new();
    out.push(("C1".into(), FiniteGroup::trivial()));
    out.push(("klein4".into(), klein4()));
    out.push(("S3".into(), symmetric(3)));
    out.push(("D4".into(), dihedral(4)));
    out.push(("Q8".into(), quaternion8()));
    out.push(("S3xC2".into(), symmetric(3).direct_product(&cyclic(2))));
    out.push(("A4".into(), alternating4()));
    out.push(("Q12".into(), dicyclic(3)));
    out.push(("S4".into(), symmetric(4)));
    out.push(("Q16".into(), dicyclic(4)));
    out.push(("Q20".into(), dicyclic(5)));
    out.push(("Q24".into(), dicyclic(6)));
    for n in 2..=24 {
        out.push((format!("C{n}"), cyclic(n)));
    }
    for n in 5..=12 {
        out.push((format!("D{n}"), dihedral(n)));
    }
    let products: [(&str, FiniteGroup, FiniteGroup); 16] = [
        ("C4xC2", cyclic(4), cyclic(2)),
        ("C2xC2xC2", klein4(), cyclic(2)),
        ("C3xC3", cyclic(3), cyclic(3)),
        ("C6xC2", cyclic(6), cyclic(2)),
        ("C8xC2", cyclic(8), cyclic(2)),
        ("C4xC4", cyclic(4), cyclic(4)),
        ("C4xC2xC2", cyclic(4), klein4()),
        ("C2xC2xC2xC2", klein4(), klein4()),
        ("D4xC2", dihedral(4), cyclic(2)),
        ("Q8xC2", quaternion8(), cyclic(2)),
        ("C6xC3", cyclic(6), cyclic(3)),
        ("S3xC3", symmetric(3), cyclic(3)),
        ("C10xC2", cyclic(10), cyclic(2)),
        ("C12xC2", cyclic(12), cyclic(2)),
        ("S3xC4", symmetric(3), cyclic(4)),
        ("A4xC2", alternating4(), cyclic(2)),
    ];
    for (name, a, b) in products {
        out.push((name.to_string(), a.direct_product(&b)));
    }
    out.push(("D4xC3".into(), dihedral(4).direct_product(&cyclic(3))));
    out.push(("Q8xC3".into(), quaternion8().direct_product(&cyclic(3))));
    out.push(("S3xC2xC2".into(), symmetric(3).direct_product(&klein4())));
    out.push(("C6xC2xC2".into(), cyclic(6).direct_product(&klein4())));
    out.push(("Q12xC2".into(), dicyclic(3).direct_product(&cyclic(2))));
    out
}

/// Canonical name of `g`, or `"unknown"`.
///
/// Candidates are filtered by fingerprint and confirmed by exhaustive
/// isomorphism search (orders up to 24).
pub fn identify(g: &FiniteGroup) -> String {
    if g.order() > 24 {
        return "unknown".into();
    }
    let fp = group_fingerprint(g);
    for (name, h) in catalogue() {
        if h.order() != g.order() || group_fingerprint(&h) != fp {
            continue;
        }
        if let Ok(Some(_)) = exhaustive_isomorphism(g, &h) {
            return name;
        }
    }
    "unknown".into()
}
