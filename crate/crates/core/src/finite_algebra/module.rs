use alloc::vec::Vec;

use super::group::FiniteGroup;
use crate::error::{Error, Result};

/// A finite abelian group `A` with a right action of `Q` by automorphisms.
///
/// `action[q][a]` is `a^q`; `a^{q·r} = (a^q)^r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GModule {
    pub coeff: FiniteGroup,
    pub actor: FiniteGroup,
    pub action: Vec<Vec<usize>>,
}

impl GModule {
    pub fn new(coeff: FiniteGroup, actor: FiniteGroup, action: Vec<Vec<usize>>) -> Result<Self> {
        let n = coeff.order();
        for a in 0..n {
            for b in 0..a {
                if coeff.mul(a, b) != coeff.mul(b, a) {
                    return Err(Error::NotAbelian { a, b });
                }
            }
        }
        if action.len() != actor.order() {
            return Err(Error::Malformed("action must list one map per actor element".into()));
        }
        for (q, map) in action.iter().enumerate() {
            if map.len() != n || map.iter().any(|&x| x >= n) {
                return Err(Error::ActionNotAutomorphism { element: q });
            }
            let mut seen = alloc::vec![false; n];
            for &x in map {
                if core::mem::replace(&mut seen[x], true) {
                    return Err(Error::ActionNotAutomorphism { element: q });
                }
            }
            for a in 0..n {
                for b in 0..n {
                    if map[coeff.mul(a, b)] != coeff.mul(map[a], map[b]) {
                        return Err(Error::ActionNotAutomorphism { element: q });
                    }
                }
            }
        }
        for p in 0..actor.order() {
            for q in 0..actor.order() {
                let pq = actor.mul(p, q);
                if (0..n).any(|a| action[pq][a] != action[q][action[p][a]]) {
                    return Err(Error::ActionNotHomomorphism { a: p, b: q });
                }
            }
        }
        Ok(Self { coeff, actor, action })
    }

    pub fn trivial_action(coeff: FiniteGroup, actor: FiniteGroup) -> Result<Self> {
        let id: Vec<usize> = (0..coeff.order()).collect();
        let action = alloc::vec![id; actor.order()];
        Self::new(coeff, actor, action)
    }

    /// Elements outside `kernel` act by inversion.
    pub fn sign_action(coeff: FiniteGroup, actor: FiniteGroup, sign: &[bool]) -> Result<Self> {
        let action = (0..actor.order())
            .map(|q| (0..coeff.order()).map(|a| if sign[q] { coeff.inv(a) } else { a }).collect())
            .collect();
        Self::new(coeff, actor, action)
    }

    #[inline]
    pub fn act(&self, a: usize, q: usize) -> usize {
        self.action[q][a]
    }

    /// Pulls the action back along a homomorphism `image: G → Q`.
    pub fn pullback(&self, dom: &FiniteGroup, image: &[usize]) -> GModule {
        GModule {
            coeff: self.coeff.clone(),
            actor: dom.clone(),
            action: image.iter().map(|&q| self.action[q].clone()).collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.action.iter().all(|m| m.iter().enumerate().all(|(i, &x)| i == x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_algebra::presets::*;

    #[test]
    fn trivial_action_is_valid() {
        assert!(GModule::trivial_action(klein4(), symmetric(3)).is_ok());
    }

    #[test]
    fn inversion_on_c4() {
        let m = GModule::sign_action(cyclic(4), cyclic(2), &[false, true]).unwrap();
        assert_eq!(m.act(1, 1), 3);
    }

    #[test]
    fn non_bijective_action_rejected() {
        let action = alloc::vec![alloc::vec![0, 1, 2, 3], alloc::vec![0, 0, 0, 0]];
        assert_eq!(
            GModule::new(cyclic(4), cyclic(2), action),
            Err(Error::ActionNotAutomorphism { element: 1 })
        );
    }

    #[test]
    fn nonabelian_coefficients_rejected() {
        assert!(matches!(GModule::trivial_action(symmetric(3), cyclic(2)), Err(Error::NotAbelian { .. })));
    }

    #[test]
    fn action_must_be_homomorphism() {
        // C3 acting on C3 with the generator acting by inversion is not a homomorphism
        let action = alloc::vec![alloc::vec![0, 1, 2], alloc::vec![0, 2, 1], alloc::vec![0, 2, 1]];
        assert!(matches!(GModule::new(cyclic(3), cyclic(3), action), Err(Error::ActionNotHomomorphism { .. })));
    }
}
