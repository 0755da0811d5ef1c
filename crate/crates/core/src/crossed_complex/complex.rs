use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::groupoid::FiniteGroupoid;
use crate::error::{Axiom, Error, Result};
use crate::finite_algebra::{automorphism_group, AutData, FiniteGroup, GModule};

/// Largest supported dimension.
pub const MAX_DIM: usize = 5;

/// One level `C_n`, `n ≥ 2`, of a crossed complex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Level {
    /// `C_n(x)` per object.
    pub groups: Vec<FiniteGroup>,
    /// `boundary[x][c]`: an element of `C_{n-1}(x)`, or a loop arrow at `x` when `n = 2`.
    pub boundary: Vec<Vec<usize>>,
    /// `action[a]` maps `C_n(source a)` to `C_n(target a)`: `c ↦ c^a`.
    pub action: Vec<Vec<usize>>,
}

impl Level {
    pub fn trivial(c1: &FiniteGroupoid, loops_are_arrows: bool) -> Level {
        let objects = c1.objects();
        Level {
            groups: vec![FiniteGroup::trivial(); objects],
            boundary: (0..objects).map(|x| vec![if loops_are_arrows { x } else { 0 }]).collect(),
            action: vec![vec![0]; c1.arrows()],
        }
    }
}

/// A finite crossed complex of dimension at most [`MAX_DIM`].
/// Actions are right actions; `levels[i]` is dimension `i + 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CrossedComplex {
    pub c1: FiniteGroupoid,
    pub levels: Vec<Level>,
}

/// A subquotient `Z / B` of some ambient set of elements, with the
/// projection recorded for each member of `Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subquotient {
    pub group: FiniteGroup,
    /// Ambient indices of `Z`, ascending; the identity comes first.
    pub members: Vec<usize>,
    /// Class of each member of `Z`.
    pub class: Vec<usize>,
    /// Least ambient representative of each class.
    pub reps: Vec<usize>,
}

impl Subquotient {
    pub fn class_of(&self, ambient: usize) -> Option<usize> {
        self.members.binary_search(&ambient).ok().map(|i| self.class[i])
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Builds `Z / B` where `z` and `b ⊆ z` are given as ambient indices and
    /// `mul` is the ambient multiplication on `z`.
    pub(crate) fn build(z: &[usize], b: &[usize], mul: impl Fn(usize, usize) -> usize) -> Subquotient {
        let mut members = z.to_vec();
        members.sort_unstable();
        let pos = |x: usize| members.binary_search(&x).expect("closed under multiplication");
        let m = members.len();
        let rows: Vec<Vec<usize>> = (0..m).map(|i| (0..m).map(|j| pos(mul(members[i], members[j]))).collect()).collect();
        let zg = FiniteGroup::from_table(&rows).expect("subgroup table");
        let normal: Vec<usize> = b.iter().map(|&x| pos(x)).collect();
        let q = zg.quotient(&normal);
        Subquotient { group: q.group, class: q.proj, reps: q.reps.iter().map(|&i| members[i]).collect(), members }
    }
}

fn axiom(axiom: Axiom, witness: String) -> Error {
    Error::Axiom { axiom, witness }
}

impl CrossedComplex {
    pub fn new(c1: FiniteGroupoid, levels: Vec<Level>) -> Result<Self> {
        let c = CrossedComplex { c1, levels };
        c.validate()?;
        Ok(c)
    }

    pub fn dim(&self) -> usize {
        self.levels.len() + 1
    }

    pub fn objects(&self) -> usize {
        self.c1.objects()
    }

    pub fn is_reduced(&self) -> bool {
        self.c1.is_reduced()
    }

    /// Level `n ≥ 2`.
    pub fn level(&self, n: usize) -> &Level {
        &self.levels[n - 2]
    }

    pub fn group(&self, n: usize, x: usize) -> &FiniteGroup {
        &self.levels[n - 2].groups[x]
    }

    pub fn boundary(&self, n: usize, x: usize, c: usize) -> usize {
        self.levels[n - 2].boundary[x][c]
    }

    pub fn act(&self, n: usize, c: usize, arrow: usize) -> usize {
        self.levels[n - 2].action[arrow][c]
    }

    /// Size of the dimension-`n` group at `x`; the vertex group for `n = 1`.
    pub fn size(&self, n: usize, x: usize) -> usize {
        if n == 1 {
            self.c1.hom_set(x, x).len()
        } else if n <= self.dim() {
            self.group(n, x).order()
        } else {
            1
        }
    }

    /// Appends trivial levels up to dimension `dim`.
    pub fn pad_to(mut self, dim: usize) -> Self {
        while self.dim() < dim {
            let level = Level::trivial(&self.c1, self.levels.is_empty());
            self.levels.push(level);
        }
        self
    }

    /// Drops trivial top levels.
    pub fn trimmed(mut self) -> Self {
        while let Some(top) = self.levels.last() {
            if top.groups.iter().all(|g| g.order() == 1) {
                self.levels.pop();
            } else {
                break;
            }
        }
        self
    }

    /// Checks every axiom, reporting the first violation found.
    pub fn validate(&self) -> Result<()> {
        let c1 = &self.c1;
        let objects = c1.objects();
        if self.dim() > MAX_DIM {
            return Err(axiom(Axiom::Shape, format!("dimension {} exceeds {MAX_DIM}", self.dim())));
        }
        for n in 2..=self.dim() {
            let level = self.level(n);
            if level.groups.len() != objects || level.boundary.len() != objects || level.action.len() != c1.arrows() {
                return Err(axiom(Axiom::Shape, format!("level {n} tables do not match the objects and arrows")));
            }
            for x in 0..objects {
                let g = &level.groups[x];
                if level.boundary[x].len() != g.order() {
                    return Err(axiom(Axiom::Shape, format!("boundary at level {n}, object {x} has the wrong length")));
                }
                for c in 0..g.order() {
                    let d = level.boundary[x][c];
                    let ok = if n == 2 { d < c1.arrows() && c1.ends(d) == (x, x) } else { d < self.group(n - 1, x).order() };
                    if !ok {
                        return Err(axiom(Axiom::Shape, format!("boundary of {c} at level {n}, object {x} is out of range")));
                    }
                }
                for a in 0..g.order() {
                    for b in 0..g.order() {
                        let lhs = level.boundary[x][g.mul(a, b)];
                        let (da, db) = (level.boundary[x][a], level.boundary[x][b]);
                        let rhs = if n == 2 { c1.mul(da, db) } else { self.group(n - 1, x).mul(da, db) };
                        if lhs != rhs {
                            return Err(axiom(Axiom::Shape, format!("boundary at level {n}, object {x} is not a homomorphism at ({a}, {b})")));
                        }
                    }
                }
            }
            self.validate_action(n)?;
        }
        for n in 3..=self.dim() {
            for x in 0..objects {
                for c in 0..self.group(n, x).order() {
                    let dd = self.boundary(n - 1, x, self.boundary(n, x, c));
                    let trivial = if n == 3 { dd == x } else { dd == 0 };
                    if !trivial {
                        return Err(axiom(Axiom::BoundaryComposite, format!("δ{}δ{n} of element {c} at object {x} is nontrivial", n - 1)));
                    }
                }
            }
        }
        if self.dim() >= 2 {
            for x in 0..objects {
                let g = self.group(2, x);
                for c in 0..g.order() {
                    for d in 0..g.order() {
                        let lhs = self.act(2, c, self.boundary(2, x, d));
                        if lhs != g.conj(c, d) {
                            return Err(axiom(Axiom::CM2, format!("c = {c}, c' = {d} at object {x}")));
                        }
                    }
                }
            }
            for a in 0..c1.arrows() {
                let (s, _) = c1.ends(a);
                for c in 0..self.group(2, s).order() {
                    let lhs = self.boundary(2, c1.target(a), self.act(2, c, a));
                    let rhs = c1.mul(c1.mul(c1.inv(a), self.boundary(2, s, c)), a);
                    if lhs != rhs {
                        return Err(axiom(Axiom::CM1, format!("c = {c}, x = {a}")));
                    }
                }
            }
        }
        for n in 3..=self.dim() {
            for x in 0..objects {
                let g = self.group(n, x);
                if let Some((a, b)) = non_commuting(g) {
                    return Err(axiom(Axiom::NonAbelianHigh, format!("level {n}, object {x}: ({a}, {b})")));
                }
                for d in 0..self.group(2, x).order() {
                    let arrow = self.boundary(2, x, d);
                    if let Some(c) = (0..g.order()).find(|&c| self.act(n, c, arrow) != c) {
                        return Err(axiom(Axiom::PeifferActionHigh, format!("level {n}, object {x}: δ₂({d}) moves {c}")));
                    }
                }
            }
            for a in 0..c1.arrows() {
                let (s, t) = c1.ends(a);
                for c in 0..self.group(n, s).order() {
                    let lhs = self.boundary(n, t, self.act(n, c, a));
                    let rhs = self.act(n - 1, self.boundary(n, s, c), a);
                    if lhs != rhs {
                        return Err(axiom(Axiom::Equivariance, format!("level {n}: c = {c}, x = {a}")));
                    }
                }
            }
        }
        Ok(())
    }

    fn validate_action(&self, n: usize) -> Result<()> {
        let c1 = &self.c1;
        let level = self.level(n);
        for a in 0..c1.arrows() {
            let (s, t) = c1.ends(a);
            let (gs, gt) = (&level.groups[s], &level.groups[t]);
            let map = &level.action[a];
            if map.len() != gs.order() || map.iter().any(|&v| v >= gt.order()) || gs.order() != gt.order() {
                return Err(axiom(Axiom::Shape, format!("action of arrow {a} at level {n} has the wrong shape")));
            }
            let mut seen = vec![false; gt.order()];
            if map.iter().any(|&v| core::mem::replace(&mut seen[v], true)) {
                return Err(axiom(Axiom::Action, format!("arrow {a} does not act bijectively at level {n}")));
            }
            for p in 0..gs.order() {
                for q in 0..gs.order() {
                    if map[gs.mul(p, q)] != gt.mul(map[p], map[q]) {
                        return Err(axiom(Axiom::Action, format!("arrow {a} does not act by a homomorphism at level {n}")));
                    }
                }
            }
        }
        for x in 0..c1.objects() {
            if level.action[x].iter().enumerate().any(|(i, &v)| i != v) {
                return Err(axiom(Axiom::Action, format!("identity at object {x} acts nontrivially at level {n}")));
            }
        }
        for a in 0..c1.arrows() {
            for b in 0..c1.arrows() {
                if let Some(ab) = c1.compose(a, b) {
                    let s = c1.source(a);
                    if (0..level.groups[s].order()).any(|c| level.action[ab][c] != level.action[b][level.action[a][c]]) {
                        return Err(axiom(Axiom::Action, format!("(c^{a})^{b} differs from c^({a}·{b}) at level {n}")));
                    }
                }
            }
        }
        Ok(())
    }

    /// `π₁(C, x) = C₁(x) / δ₂C₂(x)`; members are loop arrows at `x`.
    pub fn fundamental_group(&self, x: usize) -> Subquotient {
        let loops = self.c1.hom_set(x, x);
        let image: Vec<usize> = if self.dim() >= 2 {
            let mut v: Vec<usize> = self.level(2).boundary[x].clone();
            v.sort_unstable();
            v.dedup();
            v
        } else {
            vec![x]
        };
        Subquotient::build(&loops, &image, |a, b| self.c1.mul(a, b))
    }

    /// `H_n(C, x) = Ker δ_n / Im δ_{n+1}` for `2 ≤ n ≤ dim`.
    pub fn homology(&self, n: usize, x: usize) -> Result<Subquotient> {
        if n < 2 || n > self.dim() {
            return Err(Error::DimensionOutOfRange(n));
        }
        let g = self.group(n, x);
        let zero = if n == 2 { x } else { 0 };
        let cycles: Vec<usize> = (0..g.order()).filter(|&c| self.boundary(n, x, c) == zero).collect();
        let mut bounds: Vec<usize> = if n < self.dim() { self.level(n + 1).boundary[x].clone() } else { vec![0] };
        bounds.sort_unstable();
        bounds.dedup();
        Ok(Subquotient::build(&cycles, &bounds, |a, b| g.mul(a, b)))
    }

    /// Component of every object.
    pub fn components(&self) -> Vec<usize> {
        self.c1.components()
    }

    /// `H_i = 0` at every object for `2 ≤ i < n`.
    pub fn is_aspherical_below(&self, n: usize) -> Result<()> {
        for i in 2..n.min(self.dim() + 1) {
            for x in 0..self.objects() {
                if self.homology(i, x)?.order() != 1 {
                    return Err(Error::NotAspherical(i));
                }
            }
        }
        Ok(())
    }

    /// `H_i = 0` at every object for all `2 ≤ i ≤ dim`.
    pub fn is_aspherical(&self) -> bool {
        self.is_aspherical_below(self.dim() + 1).is_ok()
    }
}

fn non_commuting(g: &FiniteGroup) -> Option<(usize, usize)> {
    for a in 0..g.order() {
        for b in 0..a {
            if g.mul(a, b) != g.mul(b, a) {
                return Some((a, b));
            }
        }
    }
    None
}

/// `𝕂(G, 1)`: `G` in dimension 1, nothing above.
pub fn em_complex(g: &FiniteGroup) -> CrossedComplex {
    CrossedComplex { c1: FiniteGroupoid::from_group(g), levels: Vec::new() }
}

/// `𝕂(Q, 1; A, n)`: `Q` in dimension 1, `A` in dimension `n`, trivial boundaries.
pub fn twisted_em(q: &FiniteGroup, a: &GModule, n: usize) -> Result<CrossedComplex> {
    if !(2..=MAX_DIM).contains(&n) {
        return Err(Error::BadDimension(n));
    }
    if a.actor != *q {
        return Err(Error::Malformed("module must be over the dimension-1 group".into()));
    }
    let c = em_complex(q).pad_to(n - 1);
    let c1 = c.c1.clone();
    let mut levels = c.levels;
    levels.push(Level {
        groups: vec![a.coeff.clone()],
        boundary: vec![vec![0; a.coeff.order()]],
        action: a.action.clone(),
    });
    CrossedComplex::new(c1, levels)
}

/// A reduced crossed module `δ: M → P` with `action[p][m] = m^p`.
pub fn crossed_module(m: &FiniteGroup, p: &FiniteGroup, boundary: Vec<usize>, action: Vec<Vec<usize>>) -> Result<CrossedComplex> {
    CrossedComplex::new(
        FiniteGroupoid::from_group(p),
        vec![Level { groups: vec![m.clone()], boundary: vec![boundary], action }],
    )
}

/// `AUT(K) = (K →χ Aut K)` with the evaluation action.
pub fn aut_crossed_module(k: &FiniteGroup) -> CrossedComplex {
    aut_crossed_module_with_data(k).0
}

pub fn aut_crossed_module_with_data(k: &FiniteGroup) -> (CrossedComplex, AutData) {
    let data = automorphism_group(k);
    let c = crossed_module(k, &data.aut, data.chi.image.clone(), data.maps.clone()).expect("AUT(K) satisfies the crossed module axioms");
    (c, data)
}

/// The inclusion crossed module `N → G` of a normal subgroup with the conjugation action.
pub fn normal_subgroup_crossed_module(g: &FiniteGroup, normal: &[usize]) -> Result<CrossedComplex> {
    if !g.is_normal(normal) {
        return Err(Error::Malformed("subgroup is not normal".into()));
    }
    let sub = g.subgroup(normal);
    let action = (0..g.order())
        .map(|x| (0..sub.group.order()).map(|i| sub.position(g.conj(sub.embed[i], x)).unwrap()).collect())
        .collect();
    crossed_module(&sub.group, g, sub.embed.clone(), action)
}

/// Product of reduced complexes; element `(a, b)` has index `a·|D| + b`.
pub fn product(c: &CrossedComplex, d: &CrossedComplex) -> Result<CrossedComplex> {
    if !c.is_reduced() || !d.is_reduced() {
        return Err(Error::Malformed("products are supported for reduced complexes".into()));
    }
    let dim = c.dim().max(d.dim());
    let (c, d) = (c.clone().pad_to(dim), d.clone().pad_to(dim));
    let (g1, _) = c.c1.vertex_group(0);
    let (h1, _) = d.c1.vertex_group(0);
    let p1 = g1.direct_product(&h1);
    let hn = h1.order();
    let mut levels = Vec::new();
    for n in 2..=dim {
        let (gc, gd) = (c.group(n, 0), d.group(n, 0));
        let m = gd.order();
        let group = gc.direct_product(gd);
        let below = if n == 2 { hn } else { d.group(n - 1, 0).order() };
        let boundary = (0..group.order()).map(|e| c.boundary(n, 0, e / m) * below + d.boundary(n, 0, e % m)).collect();
        let action = (0..p1.order())
            .map(|arrow| (0..group.order()).map(|e| c.act(n, e / m, arrow / hn) * m + d.act(n, e % m, arrow % hn)).collect())
            .collect();
        levels.push(Level { groups: vec![group], boundary: vec![boundary], action });
    }
    CrossedComplex::new(FiniteGroupoid::from_group(&p1), levels)
}
