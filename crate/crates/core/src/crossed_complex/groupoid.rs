use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::finite_algebra::FiniteGroup;

const UNDEF: usize = usize::MAX;

/// A finite groupoid. Arrow `i < objects` is the identity of object `i`;
/// `a·b` means `a` then `b` and is defined when `target(a) = source(b)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroupoid {
    objects: usize,
    ends: Vec<(usize, usize)>,
    table: Vec<usize>,
    inverse: Vec<usize>,
}

impl FiniteGroupoid {
    /// `table[a][b]` is the composite `a·b`, or `None` when `a`, `b` are not composable.
    pub fn new(objects: usize, ends: Vec<(usize, usize)>, table: &[Vec<Option<usize>>]) -> Result<Self> {
        let n = ends.len();
        if objects == 0 || n < objects || table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::Malformed("groupoid tables have inconsistent sizes".into()));
        }
        if ends.iter().any(|&(s, t)| s >= objects || t >= objects) {
            return Err(Error::Malformed("arrow endpoint out of range".into()));
        }
        for x in 0..objects {
            if ends[x] != (x, x) {
                return Err(Error::Malformed(format!("arrow {x} must be the identity of object {x}")));
            }
        }
        let mut flat = vec![UNDEF; n * n];
        for a in 0..n {
            for b in 0..n {
                let composable = ends[a].1 == ends[b].0;
                match (table[a][b], composable) {
                    (Some(c), true) if c < n && ends[c] == (ends[a].0, ends[b].1) => flat[a * n + b] = c,
                    (None, false) => {}
                    _ => return Err(Error::Malformed(format!("bad composite entry at ({a}, {b})"))),
                }
            }
        }
        Self::from_flat(objects, ends, flat)
    }

    fn from_flat(objects: usize, ends: Vec<(usize, usize)>, table: Vec<usize>) -> Result<Self> {
        let n = ends.len();
        for a in 0..n {
            let (s, t) = ends[a];
            if table[s * n + a] != a || table[a * n + t] != a {
                return Err(Error::NoIdentityAtZero { element: a });
            }
        }
        let mut inverse = vec![UNDEF; n];
        for a in 0..n {
            let (s, t) = ends[a];
            inverse[a] = (0..n)
                .find(|&b| ends[b] == (t, s) && table[a * n + b] == s)
                .ok_or(Error::MissingInverse { element: a })?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                if ab == UNDEF {
                    continue;
                }
                for c in 0..n {
                    let bc = table[b * n + c];
                    if bc == UNDEF {
                        continue;
                    }
                    if table[ab * n + c] != table[a * n + bc] {
                        return Err(Error::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(Self { objects, ends, table, inverse })
    }

    /// The one-object groupoid of a group; arrow index = group index.
    pub fn from_group(g: &FiniteGroup) -> Self {
        let n = g.order();
        let table = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| g.mul(a, b)).collect();
        Self { objects: 1, ends: vec![(0, 0); n], table, inverse: g.inverses().to_vec() }
    }

    /// The action groupoid of a right action of `g` on `points` (`act[p][h] = p^h`).
    /// Arrow `(p, h): p → p^h` has index `p` when `h = 0` and
    /// `points + (h - 1)·points + p` otherwise.
    pub fn action_groupoid(g: &FiniteGroup, points: usize, act: &[Vec<usize>]) -> Result<Self> {
        let n = g.order();
        for p in 0..points {
            if act[p][0] != p {
                return Err(Error::ActionNotAutomorphism { element: 0 });
            }
            for a in 0..n {
                for b in 0..n {
                    if act[act[p][a]][b] != act[p][g.mul(a, b)] {
                        return Err(Error::ActionNotHomomorphism { a, b });
                    }
                }
            }
        }
        let index = |p: usize, h: usize| if h == 0 { p } else { points + (h - 1) * points + p };
        let total = points * n;
        let mut ends = vec![(0, 0); total];
        let mut label = vec![(0, 0); total];
        for p in 0..points {
            for h in 0..n {
                ends[index(p, h)] = (p, act[p][h]);
                label[index(p, h)] = (p, h);
            }
        }
        let mut table = vec![UNDEF; total * total];
        for a in 0..total {
            for b in 0..total {
                let ((p, h), (q, k)) = (label[a], label[b]);
                if act[p][h] == q {
                    table[a * total + b] = index(p, g.mul(h, k));
                }
            }
        }
        Self::from_flat(points, ends, table)
    }

    pub fn objects(&self) -> usize {
        self.objects
    }

    pub fn arrows(&self) -> usize {
        self.ends.len()
    }

    pub fn source(&self, a: usize) -> usize {
        self.ends[a].0
    }

    pub fn target(&self, a: usize) -> usize {
        self.ends[a].1
    }

    pub fn ends(&self, a: usize) -> (usize, usize) {
        self.ends[a]
    }

    /// `a·b`, or `None` if not composable.
    pub fn compose(&self, a: usize, b: usize) -> Option<usize> {
        let c = self.table[a * self.arrows() + b];
        (c != UNDEF).then_some(c)
    }

    /// `a·b` for arrows known to be composable.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.compose(a, b).expect("arrows are not composable")
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn is_reduced(&self) -> bool {
        self.objects == 1
    }

    /// Arrows with the given source, identity first.
    pub fn star(&self, x: usize) -> Vec<usize> {
        (0..self.arrows()).filter(|&a| self.ends[a].0 == x).collect()
    }

    pub fn hom_set(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.arrows()).filter(|&a| self.ends[a] == (x, y)).collect()
    }

    /// The vertex group at `x` together with the arrow index of each element
    /// (element 0 is the identity arrow of `x`).
    pub fn vertex_group(&self, x: usize) -> (FiniteGroup, Vec<usize>) {
        let loops = self.hom_set(x, x);
        let pos: BTreeMap<usize, usize> = loops.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let m = loops.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &loops {
            for &b in &loops {
                table.push(pos[&self.mul(a, b)]);
            }
        }
        let rows: Vec<Vec<usize>> = table.chunks(m).map(|r| r.to_vec()).collect();
        (FiniteGroup::from_table(&rows).expect("vertex group"), loops)
    }

    /// Component index of every object; components are numbered by least object.
    pub fn components(&self) -> Vec<usize> {
        let mut comp = vec![UNDEF; self.objects];
        let mut next = 0;
        for x in 0..self.objects {
            if comp[x] != UNDEF {
                continue;
            }
            for a in self.star(x) {
                comp[self.target(a)] = next;
            }
            next += 1;
        }
        comp
    }

    pub fn component_count(&self) -> usize {
        self.components().iter().max().map_or(0, |m| m + 1)
    }

    /// The full subgroupoid on `objects` restricted to arrows satisfying `keep`,
    /// reindexed (identities first, then the remaining arrows in ambient order).
    /// Returns the subgroupoid and the ambient index of each of its arrows.
    pub fn restrict(&self, objects: &[usize], keep: impl Fn(usize) -> bool) -> Result<(FiniteGroupoid, Vec<usize>)> {
        let obj_pos: BTreeMap<usize, usize> = objects.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut arrows: Vec<usize> = objects.to_vec();
        for a in self.objects..self.arrows() {
            let (s, t) = self.ends[a];
            if obj_pos.contains_key(&s) && obj_pos.contains_key(&t) && keep(a) {
                arrows.push(a);
            }
        }
        let pos: BTreeMap<usize, usize> = arrows.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let n = arrows.len();
        let ends: Vec<(usize, usize)> = arrows.iter().map(|&a| (obj_pos[&self.source(a)], obj_pos[&self.target(a)])).collect();
        let mut table = vec![UNDEF; n * n];
        for (i, &a) in arrows.iter().enumerate() {
            for (j, &b) in arrows.iter().enumerate() {
                if let Some(c) = self.compose(a, b) {
                    table[i * n + j] = *pos.get(&c).ok_or_else(|| Error::Malformed("arrow set not closed".into()))?;
                }
            }
        }
        Ok((Self::from_flat(objects.len(), ends, table)?, arrows))
    }

    /// Composition table with `None` for non-composable pairs.
    pub fn table_rows(&self) -> Vec<Vec<Option<usize>>> {
        let n = self.arrows();
        (0..n).map(|a| (0..n).map(|b| self.compose(a, b)).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_algebra::presets::*;

    #[test]
    fn group_as_groupoid() {
        let g = FiniteGroupoid::from_group(&symmetric(3));
        assert!(g.is_reduced());
        let (v, arrows) = g.vertex_group(0);
        assert_eq!(v, symmetric(3));
        assert_eq!(arrows, (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn coset_action_groupoid() {
        // C4 acting on C4/C2 = two points by translation
        let g = cyclic(4);
        let act: Vec<Vec<usize>> = (0..2).map(|p| (0..4).map(|h| (p + h) % 2).collect()).collect();
        let gd = FiniteGroupoid::action_groupoid(&g, 2, &act).unwrap();
        assert_eq!(gd.arrows(), 8);
        assert_eq!(gd.component_count(), 1);
        let (v, _) = gd.vertex_group(1);
        assert_eq!(v.order(), 2);
        let rebuilt = FiniteGroupoid::new(2, (0..8).map(|a| gd.ends(a)).collect(), &gd.table_rows()).unwrap();
        assert_eq!(rebuilt, gd);
    }

    #[test]
    fn disconnected_action() {
        let g = cyclic(2);
        let act = vec![vec![0, 0], vec![1, 1]];
        let gd = FiniteGroupoid::action_groupoid(&g, 2, &act).unwrap();
        assert_eq!(gd.components(), vec![0, 1]);
        assert_eq!(gd.vertex_group(0).0.order(), 2);
    }

    #[test]
    fn rejects_bad_identity_layout() {
        let table = vec![vec![Some(1), Some(0)], vec![Some(0), Some(1)]];
        assert!(FiniteGroupoid::new(1, vec![(0, 0), (0, 0)], &table).is_err());
    }
}
