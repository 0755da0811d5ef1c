use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::complex::{em_complex, twisted_em, CrossedComplex, Level, Subquotient};
use super::groupoid::FiniteGroupoid;
use crate::error::{Error, Result};
use crate::finite_algebra::{FiniteGroup, GModule, GroupHom};

/// A morphism of crossed complexes. Both ends are padded to a common dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrsMorphism {
    pub source: CrossedComplex,
    pub target: CrossedComplex,
    pub objects: Vec<usize>,
    pub arrows: Vec<usize>,
    /// `levels[n - 2][x][c]` is the image of `c ∈ source C_n(x)` in `target C_n(objects[x])`.
    pub levels: Vec<Vec<Vec<usize>>>,
}

/// Outcome of a fibration test with a description of the first failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<String>,
}

impl Verdict {
    fn yes() -> Self {
        Verdict { holds: true, witness: None }
    }

    fn no(witness: String) -> Self {
        Verdict { holds: false, witness: Some(witness) }
    }
}

impl CrsMorphism {
    pub fn new(
        source: CrossedComplex,
        target: CrossedComplex,
        objects: Vec<usize>,
        arrows: Vec<usize>,
        levels: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let dim = source.dim().max(target.dim());
        let (source, target) = (source.pad_to(dim), target.pad_to(dim));
        let mut levels = levels;
        for n in levels.len() + 2..=dim {
            levels.push((0..source.objects()).map(|x| vec![0; source.group(n, x).order()]).collect());
        }
        let m = CrsMorphism { source, target, objects, arrows, levels };
        m.validate()?;
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.source.dim()
    }

    pub fn map(&self, n: usize, x: usize, c: usize) -> usize {
        self.levels[n - 2][x][c]
    }

    fn validate(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        let bad = |msg: String| Err(Error::InvalidMorphism(msg));
        if self.objects.len() != s.objects() || self.objects.iter().any(|&y| y >= t.objects()) {
            return bad("object map has the wrong shape".into());
        }
        if self.arrows.len() != s.c1.arrows() || self.arrows.iter().any(|&b| b >= t.c1.arrows()) {
            return bad("arrow map has the wrong shape".into());
        }
        for a in 0..s.c1.arrows() {
            let (u, v) = s.c1.ends(a);
            if t.c1.ends(self.arrows[a]) != (self.objects[u], self.objects[v]) {
                return bad(format!("arrow {a} is not sent between the images of its ends"));
            }
            for b in 0..s.c1.arrows() {
                if let Some(ab) = s.c1.compose(a, b) {
                    if self.arrows[ab] != t.c1.mul(self.arrows[a], self.arrows[b]) {
                        return bad(format!("arrow map is not functorial at ({a}, {b})"));
                    }
                }
            }
        }
        for x in 0..s.objects() {
            if self.arrows[x] != self.objects[x] {
                return bad(format!("identity of object {x} is not preserved"));
            }
        }
        for n in 2..=self.dim() {
            for x in 0..s.objects() {
                let (g, h) = (s.group(n, x), t.group(n, self.objects[x]));
                let map = &self.levels[n - 2][x];
                if map.len() != g.order() || map.iter().any(|&v| v >= h.order()) {
                    return bad(format!("level {n} map at object {x} has the wrong shape"));
                }
                for a in 0..g.order() {
                    for b in 0..g.order() {
                        if map[g.mul(a, b)] != h.mul(map[a], map[b]) {
                            return bad(format!("level {n} map at object {x} is not a homomorphism"));
                        }
                    }
                    let lower = if n == 2 { self.arrows[s.boundary(2, x, a)] } else { self.map(n - 1, x, s.boundary(n, x, a)) };
                    if lower != t.boundary(n, self.objects[x], map[a]) {
                        return bad(format!("level {n} map does not commute with the boundary at element {a}"));
                    }
                }
            }
            for arrow in 0..s.c1.arrows() {
                let src = s.c1.source(arrow);
                for c in 0..s.group(n, src).order() {
                    let lhs = self.map(n, s.c1.target(arrow), s.act(n, c, arrow));
                    let rhs = t.act(n, self.map(n, src, c), self.arrows[arrow]);
                    if lhs != rhs {
                        return bad(format!("level {n} map does not preserve the action of arrow {arrow}"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn identity(c: &CrossedComplex) -> CrsMorphism {
        let levels = (2..=c.dim()).map(|n| (0..c.objects()).map(|x| (0..c.group(n, x).order()).collect()).collect()).collect();
        CrsMorphism {
            source: c.clone(),
            target: c.clone(),
            objects: (0..c.objects()).collect(),
            arrows: (0..c.c1.arrows()).collect(),
            levels,
        }
    }

    /// The morphism sending everything to the identity at object `y`.
    pub fn zero(source: &CrossedComplex, target: &CrossedComplex, y: usize) -> Result<CrsMorphism> {
        CrsMorphism::new(source.clone(), target.clone(), vec![y; source.objects()], vec![y; source.c1.arrows()], Vec::new())
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &CrsMorphism) -> Result<CrsMorphism> {
        if self.target != other.source {
            return Err(Error::InvalidMorphism("composable morphisms must share the middle complex".into()));
        }
        let levels = (2..=self.dim())
            .map(|n| (0..self.source.objects()).map(|x| self.levels[n - 2][x].iter().map(|&c| other.map(n, self.objects[x], c)).collect()).collect())
            .collect();
        CrsMorphism::new(
            self.source.clone(),
            other.target.clone(),
            self.objects.iter().map(|&y| other.objects[y]).collect(),
            self.arrows.iter().map(|&b| other.arrows[b]).collect(),
            levels,
        )
    }

    /// Induced map `π₁(source, x) → π₁(target, px)` as a class table.
    pub fn on_pi1(&self, x: usize) -> (Subquotient, Subquotient, Vec<usize>) {
        let (qs, qt) = (self.source.fundamental_group(x), self.target.fundamental_group(self.objects[x]));
        let map = qs.reps.iter().map(|&r| qt.class_of(self.arrows[r]).unwrap()).collect();
        (qs, qt, map)
    }

    /// Induced map `H_n(source, x) → H_n(target, px)`.
    pub fn on_homology(&self, n: usize, x: usize) -> Result<(Subquotient, Subquotient, Vec<usize>)> {
        let (hs, ht) = (self.source.homology(n, x)?, self.target.homology(n, self.objects[x])?);
        let map = hs.reps.iter().map(|&r| ht.class_of(self.map(n, x, r)).unwrap()).collect();
        Ok((hs, ht, map))
    }

    /// Induced map on components.
    pub fn on_pi0(&self) -> Vec<usize> {
        let (cs, ct) = (self.source.components(), self.target.components());
        let mut out = vec![usize::MAX; cs.iter().max().map_or(0, |m| m + 1)];
        for x in 0..self.source.objects() {
            out[cs[x]] = ct[self.objects[x]];
        }
        out
    }

    /// Star surjectivity at level 1 and per-object surjectivity above.
    pub fn is_fibration(&self) -> Verdict {
        let (s, t) = (&self.source, &self.target);
        for x in 0..s.objects() {
            let images: BTreeSet<usize> = s.c1.star(x).into_iter().map(|a| self.arrows[a]).collect();
            if let Some(b) = t.c1.star(self.objects[x]).into_iter().find(|b| !images.contains(b)) {
                return Verdict::no(format!("star at object {x}: arrow {b} of the target has no lift"));
            }
        }
        for n in 2..=self.dim() {
            for x in 0..s.objects() {
                let images: BTreeSet<usize> = self.levels[n - 2][x].iter().copied().collect();
                if images.len() != t.group(n, self.objects[x]).order() {
                    return Verdict::no(format!("level {n} at object {x} is not surjective"));
                }
            }
        }
        Verdict::yes()
    }

    /// Fibration that is also a weak equivalence.
    pub fn is_trivial_fibration(&self) -> Verdict {
        let fib = self.is_fibration();
        if !fib.holds {
            return fib;
        }
        let pi0 = self.on_pi0();
        let distinct: BTreeSet<usize> = pi0.iter().copied().collect();
        if distinct.len() != pi0.len() || distinct.len() != self.target.c1.component_count() {
            return Verdict::no("not a bijection on components".into());
        }
        for x in 0..self.source.objects() {
            let (qs, qt, map) = self.on_pi1(x);
            if !is_bijection(&map, qs.order(), qt.order()) {
                return Verdict::no(format!("fundamental group at object {x} is not mapped isomorphically"));
            }
            for n in 2..=self.dim() {
                let (hs, ht, map) = self.on_homology(n, x).expect("dimension in range");
                if !is_bijection(&map, hs.order(), ht.order()) {
                    return Verdict::no(format!("H_{n} at object {x} is not mapped isomorphically"));
                }
            }
        }
        Verdict::yes()
    }
}

fn is_bijection(map: &[usize], from: usize, to: usize) -> bool {
    from == to && map.iter().copied().collect::<BTreeSet<usize>>().len() == to
}

/// The morphism `𝕂(G, 1) → 𝕂(Q, 1)` of a group homomorphism.
pub fn em_morphism(hom: &GroupHom) -> CrsMorphism {
    CrsMorphism::new(em_complex(&hom.dom), em_complex(&hom.cod), vec![0], hom.image.clone(), Vec::new()).expect("homomorphisms induce morphisms")
}

/// The canonical `C → 𝕂(π₁C, 1)` of a reduced complex.
pub fn to_fundamental_group(c: &CrossedComplex) -> Result<CrsMorphism> {
    if !c.is_reduced() {
        return Err(Error::Malformed("the canonical map is built for reduced complexes".into()));
    }
    let q = c.fundamental_group(0);
    CrsMorphism::new(c.clone(), em_complex(&q.group), vec![0], (0..c.c1.arrows()).map(|a| q.class_of(a).unwrap()).collect(), Vec::new())
}

/// The output of [`xi_zeta_split`].
#[derive(Clone, Debug)]
pub struct XiZeta {
    pub xi: CrossedComplex,
    pub zeta: CrossedComplex,
    pub j: CrsMorphism,
    pub p: CrsMorphism,
    /// `A = Ker δ_n` as ambient indices of `C_n`.
    pub kernel: Vec<usize>,
    pub module: GModule,
}

/// Adjoins `A = Ker δ_n` in dimension `n + 1` (`ξC`) and maps onto
/// `ζC = 𝕂(π₁C, 1; A, n + 1)`. `p` is the quotient in dimension 1,
/// trivial in dimensions `2..=n` and the identity on `A`.
pub fn xi_zeta_split(c: &CrossedComplex, n: usize) -> Result<XiZeta> {
    if !c.is_reduced() {
        return Err(Error::DimensionMismatch("ξ/ζ split needs a reduced complex".into()));
    }
    if n < 2 || n + 1 > super::complex::MAX_DIM {
        return Err(Error::DimensionMismatch(format!("n = {n} is outside 2..={}", super::complex::MAX_DIM - 1)));
    }
    let c = c.clone().trimmed().pad_to(n);
    if c.dim() > n {
        return Err(Error::DimensionMismatch(format!("complex has nontrivial levels above dimension {n}")));
    }
    c.is_aspherical_below(n)?;
    let cn = c.group(n, 0);
    let kernel: Vec<usize> = (0..cn.order()).filter(|&e| c.boundary(n, 0, e) == 0).collect();
    let sub = cn.subgroup(&kernel);
    let q = c.fundamental_group(0);
    let pi1 = q.group.clone();
    // action of π₁ on A through any representative arrow
    let module_action: Vec<Vec<usize>> = q
        .reps
        .iter()
        .map(|&arrow| (0..sub.group.order()).map(|i| sub.position(c.act(n, sub.embed[i], arrow)).unwrap()).collect())
        .collect();
    let module = GModule::new(sub.group.clone(), pi1.clone(), module_action)?;
    let xi_top = Level {
        groups: vec![sub.group.clone()],
        boundary: vec![sub.embed.clone()],
        action: (0..c.c1.arrows())
            .map(|arrow| (0..sub.group.order()).map(|i| sub.position(c.act(n, sub.embed[i], arrow)).unwrap()).collect())
            .collect(),
    };
    let mut xi_levels = c.levels.clone();
    xi_levels.push(xi_top);
    let xi = CrossedComplex::new(c.c1.clone(), xi_levels)?;
    let zeta = twisted_em(&pi1, &module, n + 1)?;
    let id_levels: Vec<Vec<Vec<usize>>> = (2..=n).map(|m| vec![(0..c.group(m, 0).order()).collect()]).collect();
    let j = CrsMorphism::new(c.clone(), xi.clone(), vec![0], (0..c.c1.arrows()).collect(), id_levels)?;
    let mut p_levels: Vec<Vec<Vec<usize>>> = (2..=n).map(|m| vec![vec![0; c.group(m, 0).order()]]).collect();
    p_levels.push(vec![(0..sub.group.order()).collect()]);
    let p = CrsMorphism::new(xi.clone(), zeta.clone(), vec![0], (0..c.c1.arrows()).map(|a| q.class_of(a).unwrap()).collect(), p_levels)?;
    Ok(XiZeta { xi, zeta, j, p, kernel, module })
}

/// The covering `G ⋉ (G/H) → 𝕂(G, 1)` of the coset action of a subgroup.
pub fn coset_covering(g: &FiniteGroup, subgroup: &[usize]) -> Result<CrsMorphism> {
    if !g.is_subgroup(subgroup) {
        return Err(Error::Malformed("not a subgroup".into()));
    }
    // right cosets Hx, numbered by least element
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if coset_of[x] == usize::MAX {
            for &h in subgroup {
                coset_of[g.mul(h, x)] = reps.len();
            }
            reps.push(x);
        }
    }
    let act: Vec<Vec<usize>> = reps.iter().map(|&r| (0..g.order()).map(|h| coset_of[g.mul(r, h)]).collect()).collect();
    let groupoid = FiniteGroupoid::action_groupoid(g, reps.len(), &act)?;
    let points = reps.len();
    let arrows = (0..groupoid.arrows()).map(|a| if a < points { 0 } else { (a - points) / points + 1 }).collect();
    let source = CrossedComplex::new(groupoid, Vec::new())?;
    CrsMorphism::new(source, em_complex(g), vec![0; points], arrows, Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossed_complex::complex::aut_crossed_module;
    use crate::finite_algebra::presets::*;
    use crate::finite_algebra::{enumerate_homs, identify};

    #[test]
    fn identity_is_trivial_fibration() {
        let c = aut_crossed_module(&symmetric(3));
        let id = CrsMorphism::identity(&c);
        assert!(id.is_fibration().holds);
        assert!(id.is_trivial_fibration().holds);
    }

    #[test]
    fn inclusion_of_trivial_group_is_not_fibration() {
        let hom = GroupHom::new(FiniteGroup::trivial(), cyclic(2), vec![0]).unwrap();
        let v = em_morphism(&hom).is_fibration();
        assert!(!v.holds);
        assert!(v.witness.unwrap().contains("star"));
    }

    #[test]
    fn canonical_map_to_fundamental_group() {
        let c = aut_crossed_module(&cyclic(3));
        let p = to_fundamental_group(&c).unwrap();
        assert!(p.is_fibration().holds);
        assert!(!p.is_trivial_fibration().holds);
        let s3 = aut_crossed_module(&symmetric(3));
        assert!(to_fundamental_group(&s3).unwrap().is_trivial_fibration().holds);
    }

    #[test]
    fn xi_zeta_of_aut_c3() {
        let split = xi_zeta_split(&aut_crossed_module(&cyclic(3)), 2).unwrap();
        assert_eq!(identify(&split.zeta.fundamental_group(0).group), "C2");
        assert_eq!(identify(&split.zeta.homology(3, 0).unwrap().group), "C3");
        assert_eq!(split.xi.homology(2, 0).unwrap().order(), 1);
        assert_eq!(split.xi.homology(3, 0).unwrap().order(), 1);
        assert!(split.p.is_fibration().holds);
        let v = split.p.is_trivial_fibration();
        assert!(!v.holds);
        assert!(v.witness.unwrap().contains("H_3"));
        let s3 = xi_zeta_split(&aut_crossed_module(&symmetric(3)), 2).unwrap();
        assert_eq!(s3.module.coeff.order(), 1);
        assert!(s3.p.is_fibration().holds);
    }

    #[test]
    fn composition_of_fibrations() {
        let d4 = dihedral(4);
        let c2 = cyclic(2);
        let onto: Vec<GroupHom> = enumerate_homs(&d4, &c2).into_iter().filter(|h| h.is_surjective()).collect();
        let first = em_morphism(&GroupHom::identity(&d4));
        for h in onto {
            let second = em_morphism(&h);
            let comp = first.then(&second).unwrap();
            assert!(comp.is_fibration().holds);
        }
    }

    #[test]
    fn coset_covering_is_fibration() {
        let s3 = symmetric(3);
        let h = s3.subgroups().into_iter().find(|s| s.len() == 2).unwrap();
        let p = coset_covering(&s3, &h).unwrap();
        assert_eq!(p.source.objects(), 3);
        assert!(p.is_fibration().holds);
        assert!(!p.is_trivial_fibration().holds);
    }
}
