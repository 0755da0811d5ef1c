use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A finite group given by its full multiplication table.
///
/// Elements are the indices `0..order`; index 0 is always the identity.
/// Products are read left to right: `mul(a, b)` is `a·b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a square table and builds the group.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Malformed("empty table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Malformed(format!("row {i} has length {}, expected {n}", row.len())));
            }
            for &x in row {
                if x >= n {
                    return Err(Error::Malformed(format!("entry {x} in row {i} is out of range")));
                }
            }
            table.extend_from_slice(row);
        }
        Self::from_flat(n, table)
    }

    pub(crate) fn from_flat(n: usize, table: Vec<usize>) -> Result<Self> {
        for i in 0..n {
            if table[i] != i || table[i * n] != i {
                return Err(Error::NoIdentityAtZero { element: i });
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for i in 0..n {
            match (0..n).find(|&j| table[i * n + j] == 0 && table[j * n + i] == 0) {
                Some(j) => inverse[i] = j,
                None => return Err(Error::MissingInverse { element: i }),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c]] {
                        return Err(Error::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(Self { order: n, table, inverse })
    }

    /// Builds a group from concrete elements and a multiplication closure.
    ///
    /// The identity is moved to index 0; the returned vector lists the
    /// elements in their final index order.
    pub fn from_operation<T, F>(elements: Vec<T>, identity: &T, mul: F) -> (Self, Vec<T>)
    where
        T: Ord + Clone,
        F: Fn(&T, &T) -> T,
    {
        let mut elements = elements;
        let pos = elements
            .iter()
            .position(|e| e == identity)
            .expect("identity must be among the elements");
        elements.swap(0, pos);
        let index: BTreeMap<T, usize> = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let n = elements.len();
        let mut table = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                table.push(index[&mul(a, b)]);
            }
        }
        let group = Self::from_flat(n, table).expect("closure does not define a group");
        (group, elements)
    }

    /// Closes a set of generating elements under `mul` and builds the group.
    pub fn generated_by<T, F>(generators: &[T], identity: T, mul: F) -> (Self, Vec<T>)
    where
        T: Ord + Clone,
        F: Fn(&T, &T) -> T,
    {
        let mut seen = BTreeSet::new();
        seen.insert(identity.clone());
        let mut queue = VecDeque::from([identity.clone()]);
        while let Some(x) = queue.pop_front() {
            for g in generators {
                let y = mul(&x, g);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        Self::from_operation(seen.into_iter().collect(), &identity, mul)
    }

    pub fn trivial() -> Self {
        Self { order: 1, table: vec![0], inverse: vec![0] }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// Right conjugation `y⁻¹ x y`.
    #[inline]
    pub fn conj(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inv(y), x), y)
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut acc = 0;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverse
    }

    /// Exponent: least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        (0..self.order).map(|a| self.element_order(a)).fold(1, lcm)
    }

    /// Membership mask of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut mask = vec![false; self.order];
        mask[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !mask[y] {
                    mask[y] = true;
                    queue.push_back(y);
                }
            }
        }
        mask
    }

    /// A small generating set chosen greedily (largest element order first).
    pub fn generators(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = (1..self.order).collect();
        by_order.sort_by_key(|&a| (core::cmp::Reverse(self.element_order(a)), a));
        let mut gens = Vec::new();
        let mut mask = self.closure(&gens);
        for a in by_order {
            if !mask[a] {
                gens.push(a);
                mask = self.closure(&gens);
            }
        }
        gens
    }

    pub fn center_members(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
            .collect()
    }

    pub fn derived_subgroup_members(&self) -> Vec<usize> {
        let mut comms = BTreeSet::new();
        for a in 0..self.order {
            for b in 0..self.order {
                comms.insert(self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b)));
            }
        }
        let gens: Vec<usize> = comms.into_iter().collect();
        mask_members(&self.closure(&gens))
    }

    pub fn is_subgroup(&self, members: &[usize]) -> bool {
        let set: BTreeSet<usize> = members.iter().copied().collect();
        set.contains(&0) && set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, self.inv(b)))))
    }

    pub fn is_normal(&self, members: &[usize]) -> bool {
        let set: BTreeSet<usize> = members.iter().copied().collect();
        self.is_subgroup(members) && set.iter().all(|&a| (0..self.order).all(|g| set.contains(&self.conj(a, g))))
    }

    /// Restricts the table to a subgroup (members must contain 0 and be closed).
    pub fn subgroup(&self, members: &[usize]) -> Subgroup {
        let mut embed: Vec<usize> = members.to_vec();
        embed.sort_unstable();
        embed.dedup();
        debug_assert!(self.is_subgroup(&embed));
        let pos: BTreeMap<usize, usize> = embed.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let n = embed.len();
        let mut table = Vec::with_capacity(n * n);
        for &a in &embed {
            for &b in &embed {
                table.push(pos[&self.mul(a, b)]);
            }
        }
        let group = Self::from_flat(n, table).expect("subgroup of a valid group");
        Subgroup { group, embed }
    }

    /// Quotient by a normal subgroup; coset representatives are minimal indices.
    pub fn quotient(&self, normal: &[usize]) -> Quotient {
        debug_assert!(self.is_normal(normal));
        let mut proj = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in 0..self.order {
            if proj[g] == usize::MAX {
                let idx = reps.len();
                reps.push(g);
                for &n in normal {
                    proj[self.mul(n, g)] = idx;
                }
            }
        }
        let m = reps.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &reps {
            for &b in &reps {
                table.push(proj[self.mul(a, b)]);
            }
        }
        let group = Self::from_flat(m, table).expect("quotient of a valid group");
        Quotient { group, proj, reps }
    }

    /// All subgroups, as sorted member lists, in a deterministic order.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let trivial = vec![0usize];
        found.insert(trivial.clone());
        let mut queue = VecDeque::from([trivial]);
        while let Some(h) = queue.pop_front() {
            for g in 0..self.order {
                if h.binary_search(&g).is_ok() {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(g);
                let k = mask_members(&self.closure(&gens));
                if found.insert(k.clone()) {
                    queue.push_back(k);
                }
            }
        }
        let mut all: Vec<Vec<usize>> = found.into_iter().collect();
        all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        all
    }

    pub fn normal_subgroups(&self) -> Vec<Vec<usize>> {
        self.subgroups().into_iter().filter(|h| self.is_normal(h)).collect()
    }

    /// Direct product; the pair `(a, b)` has index `a * |other| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let m = other.order;
        let n = self.order * m;
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let (a1, b1) = (x / m, x % m);
                let (a2, b2) = (y / m, y % m);
                table.push(self.mul(a1, a2) * m + other.mul(b1, b2));
            }
        }
        Self::from_flat(n, table).expect("product of valid groups")
    }

    /// Relabels elements by a permutation fixing 0: new index `perm[i]` for old `i`.
    pub fn relabel(&self, perm: &[usize]) -> FiniteGroup {
        let n = self.order;
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[perm[a] * n + perm[b]] = perm[self.mul(a, b)];
            }
        }
        Self::from_flat(n, table).expect("relabeling of a valid group")
    }
}

/// A subgroup together with its embedding into the ambient group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub group: FiniteGroup,
    /// `embed[i]` is the ambient index of subgroup element `i` (sorted ascending).
    pub embed: Vec<usize>,
}

impl Subgroup {
    pub fn position(&self, ambient: usize) -> Option<usize> {
        self.embed.binary_search(&ambient).ok()
    }
}

/// A quotient group with projection and minimal coset representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub group: FiniteGroup,
    pub proj: Vec<usize>,
    pub reps: Vec<usize>,
}

/// A homomorphism between finite groups.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupHom {
    pub dom: FiniteGroup,
    pub cod: FiniteGroup,
    pub image: Vec<usize>,
}

impl GroupHom {
    pub fn new(dom: FiniteGroup, cod: FiniteGroup, image: Vec<usize>) -> Result<Self> {
        if image.len() != dom.order() || image.iter().any(|&x| x >= cod.order()) {
            return Err(Error::Malformed("image array does not match domain/codomain".into()));
        }
        for a in 0..dom.order() {
            for b in 0..dom.order() {
                if image[dom.mul(a, b)] != cod.mul(image[a], image[b]) {
                    return Err(Error::NotAHomomorphism { a, b });
                }
            }
        }
        Ok(Self { dom, cod, image })
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        Self { dom: g.clone(), cod: g.clone(), image: (0..g.order()).collect() }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &GroupHom) -> GroupHom {
        GroupHom {
            dom: self.dom.clone(),
            cod: other.cod.clone(),
            image: self.image.iter().map(|&x| other.image[x]).collect(),
        }
    }

    pub fn kernel_members(&self) -> Vec<usize> {
        (0..self.dom.order()).filter(|&x| self.image[x] == 0).collect()
    }

    pub fn image_members(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.image.iter().copied().collect();
        set.into_iter().collect()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel_members().len() == 1
    }

    pub fn is_surjective(&self) -> bool {
        self.image_members().len() == self.cod.order()
    }
}

/// All homomorphisms `g → q`, sorted by image array.
pub fn enumerate_homs(g: &FiniteGroup, q: &FiniteGroup) -> Vec<GroupHom> {
    enumerate_hom_images(g, q)
        .into_iter()
        .map(|image| GroupHom { dom: g.clone(), cod: q.clone(), image })
        .collect()
}

/// Image arrays of all homomorphisms, found by backtracking over images of a
/// generating set, sorted lexicographically.
pub fn enumerate_hom_images(g: &FiniteGroup, q: &FiniteGroup) -> Vec<Vec<usize>> {
    let gens = g.generators();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            let ord = g.element_order(s);
            (0..q.order()).filter(|&t| ord.is_multiple_of(q.element_order(t))).collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    fn rec(
        g: &FiniteGroup,
        q: &FiniteGroup,
        gens: &[usize],
        candidates: &[Vec<usize>],
        depth: usize,
        choice: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if depth == gens.len() {
            if let Some(image) = extend_from_generators(g, q, gens, choice) {
                out.push(image);
            }
            return;
        }
        for &t in &candidates[depth] {
            choice[depth] = t;
            // prune: the partial assignment must already be consistent
            if extend_partial(g, q, &gens[..=depth], &choice[..=depth]) {
                rec(g, q, gens, candidates, depth + 1, choice, out);
            }
        }
    }
    rec(g, q, &gens, &candidates, 0, &mut choice, &mut out);
    out.sort();
    out.dedup();
    out
}

fn extend_partial(g: &FiniteGroup, q: &FiniteGroup, gens: &[usize], imgs: &[usize]) -> bool {
    let mut map = vec![usize::MAX; g.order()];
    map[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (&s, &t) in gens.iter().zip(imgs) {
            let y = g.mul(x, s);
            let v = q.mul(map[x], t);
            if map[y] == usize::MAX {
                map[y] = v;
                queue.push_back(y);
            } else if map[y] != v {
                return false;
            }
        }
    }
    true
}

fn extend_from_generators(g: &FiniteGroup, q: &FiniteGroup, gens: &[usize], imgs: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; g.order()];
    map[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (&s, &t) in gens.iter().zip(imgs) {
            let y = g.mul(x, s);
            let v = q.mul(map[x], t);
            if map[y] == usize::MAX {
                map[y] = v;
                queue.push_back(y);
            } else if map[y] != v {
                return None;
            }
        }
    }
    for a in 0..g.order() {
        for b in 0..g.order() {
            if map[g.mul(a, b)] != q.mul(map[a], map[b]) {
                return None;
            }
        }
    }
    Some(map)
}

pub(crate) fn mask_members(mask: &[bool]) -> Vec<usize> {
    mask.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i).collect()
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn klein() -> FiniteGroup {
        FiniteGroup::from_table(&[vec![0, 1, 2, 3], vec![1, 0, 3, 2], vec![2, 3, 0, 1], vec![3, 2, 1, 0]]).unwrap()
    }

    #[test]
    fn order_one_group() {
        let g = FiniteGroup::from_table(&[vec![0]]).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn missing_inverse_detected() {
        let err = FiniteGroup::from_table(&[vec![0, 1], vec![1, 1]]).unwrap_err();
        assert_eq!(err, Error::MissingInverse { element: 1 });
    }

    #[test]
    fn identity_must_be_zero() {
        let err = FiniteGroup::from_table(&[vec![1, 0], vec![0, 1]]).unwrap_err();
        assert!(matches!(err, Error::NoIdentityAtZero { .. }));
    }

    #[test]
    fn non_associative_table_names_triple() {
        // a Latin square with identity 0 that is not associative (order 5 loop)
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table(&rows), Err(Error::NotAssociative { .. })));
    }

    #[test]
    fn klein_four_is_abelian() {
        let g = klein();
        assert_eq!(g.order(), 4);
        assert!(g.is_abelian());
        assert_eq!(g.exponent(), 2);
    }

    #[test]
    fn quotient_and_subgroups() {
        let g = klein();
        let q = g.quotient(&[0, 1]);
        assert_eq!(q.group.order(), 2);
        assert_eq!(q.reps, vec![0, 2]);
        assert_eq!(g.subgroups().len(), 5);
    }

    #[test]
    fn hom_counts() {
        let c2 = FiniteGroup::from_table(&[vec![0, 1], vec![1, 0]]).unwrap();
        let c3 = FiniteGroup::from_table(&[vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]).unwrap();
        assert_eq!(enumerate_homs(&c2, &c2).len(), 2);
        assert_eq!(enumerate_homs(&c2, &c3).len(), 1);
        assert_eq!(enumerate_homs(&klein(), &c2).len(), 4);
    }
}
