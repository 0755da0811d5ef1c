use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use super::cohomology::{cohomology_group, CochainComplex};
use super::zmod::{Echelon, Solver};
use crate::crossed_complex::CrossedComplex;
use crate::error::{Error, Result};
use crate::finite_algebra::{enumerate_homs, FiniteGroup, GModule, GroupHom};
use crate::free_resolution::{
    check_morphism, eval_boundary, eval_word, induced_theta, target_boundary, FormalWord, FreeCrsPresentation, MorphismAssignment,
};
use crate::oracle::SEARCH_CAP;

/// A homotopy `m ≃ m'`: `h[k - 1][b] = H_k(b) ∈ C_{k+1}` for `k = 1..=depth`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyAssignment {
    pub base: MorphismAssignment,
    pub h: Vec<Vec<usize>>,
    pub target: MorphismAssignment,
}

fn level_size(c: &CrossedComplex, n: usize) -> usize {
    if n == 1 {
        c.c1.arrows()
    } else if n <= c.dim() {
        c.group(n, 0).order()
    } else {
        1
    }
}

fn gmul(c: &CrossedComplex, n: usize, a: usize, b: usize) -> usize {
    if n <= c.dim() {
        c.group(n, 0).mul(a, b)
    } else {
        0
    }
}

fn ginv(c: &CrossedComplex, n: usize, a: usize) -> usize {
    if n <= c.dim() {
        c.group(n, 0).inv(a)
    } else {
        0
    }
}

fn gact(c: &CrossedComplex, n: usize, a: usize, arrow: usize) -> usize {
    if n <= c.dim() {
        c.act(n, a, arrow)
    } else {
        0
    }
}

fn require_reduced(f: &FreeCrsPresentation, c: &CrossedComplex) -> Result<()> {
    if f.objects != 1 || !c.is_reduced() {
        return Err(Error::Malformed("pointed morphisms and homotopies are computed between reduced complexes".into()));
    }
    Ok(())
}

/// `H₁` extended to words: `H(uv) = H(u)^{m₁(v)} · H(v)`.
fn derivation_on_word(c: &CrossedComplex, m: &MorphismAssignment, h1: &[usize], w: &FormalWord) -> Result<usize> {
    let mut acc = 0;
    for &(x, e) in &w.0 {
        let a = m.value(1, x)?;
        if e > 0 {
            acc = gmul(c, 2, gact(c, 2, acc, a), h1[x]);
        } else {
            let ai = c.c1.inv(a);
            acc = gmul(c, 2, gact(c, 2, acc, ai), ginv(c, 2, gact(c, 2, h1[x], ai)));
        }
    }
    Ok(acc)
}

/// `H_{n-1}` applied to the formal boundary of a dimension-`n` generator, `n ≥ 3`.
fn homotopy_on_boundary(f: &FreeCrsPresentation, c: &CrossedComplex, m: &MorphismAssignment, h: &[Vec<usize>], n: usize, b: usize) -> Result<usize> {
    let mut acc = 0;
    if n == 3 {
        for (w, x, e) in &f.delta3[b].0 {
            let arrow = eval_word(f, c, m, w, 0)?;
            let v = gact(c, 3, h[1][*x], arrow);
            acc = gmul(c, 3, acc, if *e > 0 { v } else { ginv(c, 3, v) });
        }
    } else {
        for &(phi, x, k) in &f.module_boundary(n, b).0 {
            let arrow = eval_word(f, c, m, &f.phi_section[phi], 0)?;
            let v = gact(c, n, h[n - 2][x], arrow);
            let v = if k < 0 { ginv(c, n, v) } else { v };
            for _ in 0..k.unsigned_abs() {
                acc = gmul(c, n, acc, v);
            }
        }
    }
    Ok(acc)
}

/// The far end of a homotopy:
/// `m'₁ = m₁ · δ₂H₁`, `m'₂ = m₂ · H₁(δ₂) · δ₃H₂`, `m'_n = m_n + H_{n-1}(δ_n) + δ_{n+1}H_n`.
pub fn apply_homotopy(f: &FreeCrsPresentation, c: &CrossedComplex, m: &MorphismAssignment, h: &[Vec<usize>]) -> Result<MorphismAssignment> {
    require_reduced(f, c)?;
    let depth = f.depth();
    if h.len() != depth || (1..=depth).any(|k| h[k - 1].len() != f.basis_size(k)) {
        return Err(Error::Malformed("homotopy data must give one value per basis element".into()));
    }
    let mut out = m.clone();
    for k in 1..=depth {
        for b in 0..f.basis_size(k) {
            let up = target_boundary(c, k + 1, 0, h[k - 1][b]);
            out.values[k - 1][b] = match k {
                1 => c.c1.mul(m.value(1, b)?, up),
                2 => {
                    let mid = derivation_on_word(c, m, &h[0], &f.delta2[b])?;
                    gmul(c, 2, gmul(c, 2, m.value(2, b)?, mid), up)
                }
                _ => {
                    let mid = homotopy_on_boundary(f, c, m, h, k, b)?;
                    gmul(c, k, gmul(c, k, m.value(k, b)?, mid), up)
                }
            };
        }
    }
    Ok(out)
}

/// `(n, Q, A)` when `C = 𝕂(Q, 1; A, n)`: reduced, all boundaries trivial and
/// exactly one nontrivial level `n ≥ 2`.
pub fn coefficient_data(c: &CrossedComplex) -> Option<(usize, FiniteGroup, GModule)> {
    if !c.is_reduced() {
        return None;
    }
    let nontrivial: Vec<usize> = (2..=c.dim()).filter(|&n| c.group(n, 0).order() > 1).collect();
    let &[n] = nontrivial.as_slice() else {
        return None;
    };
    let trivial_boundary = (0..c.group(n, 0).order()).all(|v| target_boundary(c, n, 0, v) == 0);
    if !trivial_boundary {
        return None;
    }
    let (q, _) = c.c1.vertex_group(0);
    let action = (0..q.order()).map(|a| (0..c.group(n, 0).order()).map(|v| c.act(n, v, a)).collect()).collect();
    let module = GModule::new(c.group(n, 0).clone(), q.clone(), action).ok()?;
    Some((n, q, module))
}

fn theta_hom(f: &FreeCrsPresentation, c: &CrossedComplex, m: &MorphismAssignment) -> Result<GroupHom> {
    let image = f.phi_section.iter().map(|w| eval_word(f, c, m, w, 0)).collect::<Result<Vec<_>>>()?;
    GroupHom::new(f.phi_group.clone(), c.c1.vertex_group(0).0, image)
}

/// Searches for a homotopy from `m` to `m'`.
pub fn is_homotopic(f: &FreeCrsPresentation, c: &CrossedComplex, m: &MorphismAssignment, m2: &MorphismAssignment) -> Result<Option<HomotopyAssignment>> {
    require_reduced(f, c)?;
    check_morphism(f, c, m)?;
    check_morphism(f, c, m2)?;
    if induced_theta(f, c, m)? != induced_theta(f, c, m2)? {
        return Err(Error::IncompatibleTheta);
    }
    let depth = f.depth();
    let zero_h = || (1..=depth).map(|k| vec![0usize; f.basis_size(k)]).collect::<Vec<_>>();
    if let Some((n, _, module)) = coefficient_data(c) {
        if m.values[0] != m2.values[0] {
            return Ok(None);
        }
        if n > depth {
            return Ok((m == m2).then(|| HomotopyAssignment { base: m.clone(), h: zero_h(), target: m2.clone() }));
        }
        let theta = theta_hom(f, c, m)?;
        let complex = CochainComplex::new(f, &theta, &module)?;
        let r = complex.rank();
        let width = f.basis_size(n) * r;
        let rel = Echelon::from_generators(width, complex.modulus(), complex.relations(f.basis_size(n)));
        let cols = complex.coboundary_columns(f, n);
        let diff: Vec<i64> = complex.to_vector(&m2.values[n - 1]).iter().zip(complex.to_vector(&m.values[n - 1])).map(|(a, b)| a - b).collect();
        // level n + 1 and above are trivial, so only H_{n-1} can move m_n
        let Some(sol) = Solver::new(&cols, &rel).solve(&diff) else {
            return Ok(None);
        };
        let mut h = zero_h();
        h[n - 2] = complex.to_values(&sol, f.basis_size(n - 1));
        let target = apply_homotopy(f, c, m, &h)?;
        debug_assert_eq!(&target, m2);
        return Ok((&target == m2).then(|| HomotopyAssignment { base: m.clone(), h, target }));
    }
    let mut search = HomotopySearch { f, c, m, goal: m2, h: zero_h(), nodes: 0 };
    Ok(search.run(1)?.then(|| HomotopyAssignment { base: m.clone(), h: search.h.clone(), target: m2.clone() }))
}

struct HomotopySearch<'a> {
    f: &'a FreeCrsPresentation,
    c: &'a CrossedComplex,
    m: &'a MorphismAssignment,
    goal: &'a MorphismAssignment,
    h: Vec<Vec<usize>>,
    nodes: u128,
}

impl HomotopySearch<'_> {
    /// Choices of `H_k(b)` matching the goal in dimension `k`, given `H_{<k}`.
    fn candidates(&self, k: usize, b: usize) -> Result<Vec<usize>> {
        let (f, c, m) = (self.f, self.c, self.m);
        let goal = self.goal.value(k, b)?;
        let needed = match k {
            1 => c.c1.mul(c.c1.inv(m.value(1, b)?), goal),
            2 => {
                let mid = derivation_on_word(c, m, &self.h[0], &f.delta2[b])?;
                gmul(c, 2, ginv(c, 2, gmul(c, 2, m.value(2, b)?, mid)), goal)
            }
            _ => {
                let mid = homotopy_on_boundary(f, c, m, &self.h, k, b)?;
                gmul(c, k, ginv(c, k, gmul(c, k, m.value(k, b)?, mid)), goal)
            }
        };
        Ok((0..level_size(c, k + 1)).filter(|&v| target_boundary(c, k + 1, 0, v) == needed).collect())
    }

    fn run(&mut self, k: usize) -> Result<bool> {
        if k > self.f.depth() {
            return Ok(true);
        }
        let lists = (0..self.f.basis_size(k)).map(|b| self.candidates(k, b)).collect::<Result<Vec<_>>>()?;
        if lists.iter().any(|l| l.is_empty()) {
            return Ok(false);
        }
        let mut pick = vec![0usize; lists.len()];
        loop {
            self.nodes += 1;
            if self.nodes > SEARCH_CAP {
                return Err(Error::SearchSpaceTooLarge { size: self.nodes, cap: SEARCH_CAP });
            }
            self.h[k - 1] = pick.iter().zip(&lists).map(|(&i, l)| l[i]).collect();
            if self.run(k + 1)? {
                return Ok(true);
            }
            // odometer over the candidate lists
            let mut i = 0;
            loop {
                if i == pick.len() {
                    return Ok(false);
                }
                pick[i] += 1;
                if pick[i] < lists[i].len() {
                    break;
                }
                pick[i] = 0;
                i += 1;
            }
        }
    }
}

/// Every morphism `F → C` (optionally only those inducing `θ` on `π₁`), sorted.
pub fn enumerate_morphisms(f: &FreeCrsPresentation, c: &CrossedComplex, theta: Option<&[usize]>) -> Result<Vec<MorphismAssignment>> {
    require_reduced(f, c)?;
    if let Some((n, q, module)) = coefficient_data(c) {
        if (2..=3).contains(&n) && f.depth() > n {
            return enumerate_coefficient_morphisms(f, c, theta, n, &q, &module);
        }
    }
    let mut e = Enumerator::new(f, c, theta);
    let mut m = MorphismAssignment::unset(f, vec![0]);
    e.slot(&mut m, 0)?;
    e.found.sort();
    Ok(e.found)
}

fn enumerate_coefficient_morphisms(
    f: &FreeCrsPresentation,
    c: &CrossedComplex,
    theta: Option<&[usize]>,
    n: usize,
    q: &FiniteGroup,
    module: &GModule,
) -> Result<Vec<MorphismAssignment>> {
    let mut out = Vec::new();
    for hom in enumerate_homs(&f.phi_group, q) {
        let mut base = MorphismAssignment::unset(f, vec![0]);
        base.values[0] = f.phi.iter().map(|&p| hom.apply(p)).collect();
        for k in 2..=f.depth() {
            base.values[k - 1].iter_mut().for_each(|v| *v = 0);
        }
        if let Some(t) = theta {
            if induced_theta(f, c, &base)? != t {
                continue;
            }
        }
        for cocycle in cohomology_group(f, &hom, module, n)?.cocycles()? {
            let mut m = base.clone();
            m.values[n - 1] = cocycle;
            debug_assert!(check_morphism(f, c, &m).is_ok());
            out.push(m);
        }
    }
    out.sort();
    Ok(out)
}

struct Enumerator<'a> {
    f: &'a FreeCrsPresentation,
    c: &'a CrossedComplex,
    theta: Option<&'a [usize]>,
    /// Slots `(n, b)` in assignment order.
    slots: Vec<(usize, usize)>,
    /// Boundary checks to run once slot `i` is filled: `(n, b)` of dimension `n`.
    checks: Vec<Vec<(usize, usize)>>,
    /// `images[n]`: the image of `δ_n` in `C_{n-1}`.
    images: BTreeMap<usize, BTreeSet<usize>>,
    /// `preimages[n][v]`: elements of `C_n` with boundary `v`.
    preimages: BTreeMap<usize, BTreeMap<usize, Vec<usize>>>,
    found: Vec<MorphismAssignment>,
    nodes: u128,
}

impl<'a> Enumerator<'a> {
    fn new(f: &'a FreeCrsPresentation, c: &'a CrossedComplex, theta: Option<&'a [usize]>) -> Self {
        let depth = f.depth();
        let slots: Vec<(usize, usize)> = (1..=depth).flat_map(|n| (0..f.basis_size(n)).map(move |b| (n, b))).collect();
        let slot_of: BTreeMap<(usize, usize), usize> = slots.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut checks = vec![Vec::new(); slots.len()];
        for n in 2..=depth {
            for b in 0..f.basis_size(n) {
                // the boundary of a generator of dimension n only involves dimensions n - 1 and 1
                let mut last = None::<usize>;
                let mut note = |s: (usize, usize)| {
                    let i = slot_of[&s];
                    last = Some(last.map_or(i, |l: usize| l.max(i)));
                };
                match n {
                    2 => f.delta2[b].0.iter().for_each(|&(x, _)| note((1, x))),
                    3 => f.delta3[b].0.iter().for_each(|(w, x, _)| {
                        w.0.iter().for_each(|&(y, _)| note((1, y)));
                        note((2, *x));
                    }),
                    _ => f.module_boundary(n, b).0.iter().for_each(|&(phi, x, _)| {
                        f.phi_section[phi].0.iter().for_each(|&(y, _)| note((1, y)));
                        note((n - 1, x));
                    }),
                }
                // a generator whose boundary is trivial is checked as soon as its own slot is reached
                let at = last.unwrap_or(slot_of[&(n, b)].saturating_sub(1)).min(slot_of[&(n, b)] - 1);
                checks[at].push((n, b));
            }
        }
        let mut images = BTreeMap::new();
        let mut preimages = BTreeMap::new();
        for n in 2..=depth {
            let mut pre: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for v in 0..level_size(c, n) {
                pre.entry(target_boundary(c, n, 0, v)).or_default().push(v);
            }
            images.insert(n, pre.keys().copied().collect());
            preimages.insert(n, pre);
        }
        Enumerator { f, c, theta, slots, checks, images, preimages, found: Vec::new(), nodes: 0 }
    }

    fn slot(&mut self, m: &mut MorphismAssignment, i: usize) -> Result<()> {
        if i == self.slots.len() {
            if check_morphism(self.f, self.c, m).is_ok() {
                self.found.push(m.clone());
            }
            return Ok(());
        }
        let (n, b) = self.slots[i];
        let candidates: Vec<usize> = if n == 1 {
            (0..self.c.c1.arrows()).collect()
        } else {
            let want = eval_boundary(self.f, self.c, m, n, b)?;
            self.preimages[&n].get(&want).cloned().unwrap_or_default()
        };
        for v in candidates {
            self.nodes += 1;
            if self.nodes > SEARCH_CAP {
                return Err(Error::SearchSpaceTooLarge { size: self.nodes, cap: SEARCH_CAP });
            }
            m.values[n - 1][b] = v;
            let mut ok = true;
            for &(k, bk) in &self.checks[i] {
                if !self.images[&k].contains(&eval_boundary(self.f, self.c, m, k, bk)?) {
                    ok = false;
                    break;
                }
            }
            if ok && n == 1 && i + 1 < self.slots.len() && self.slots[i + 1].0 != 1 || ok && n == 1 && i + 1 == self.slots.len() {
                if let Some(t) = self.theta {
                    ok = induced_theta(self.f, self.c, m)? == t;
                }
            }
            if ok {
                self.slot(m, i + 1)?;
            }
        }
        m.values[n - 1][b] = crate::free_resolution::UNSET;
        Ok(())
    }
}

/// Homotopy classes of morphisms `F → C`; each class is sorted and the
/// classes are ordered by their least member.
pub fn homotopy_classes(f: &FreeCrsPresentation, c: &CrossedComplex, theta: Option<&[usize]>) -> Result<Vec<Vec<MorphismAssignment>>> {
    let all = enumerate_morphisms(f, c, theta)?;
    let mut classes: Vec<Vec<MorphismAssignment>> = Vec::new();
    let mut thetas: Vec<Vec<usize>> = Vec::new();
    'next: for m in all {
        let t = induced_theta(f, c, &m)?;
        for (class, ct) in classes.iter_mut().zip(&thetas) {
            if *ct == t && is_homotopic(f, c, &class[0], &m)?.is_some() {
                class.push(m);
                continue 'next;
            }
        }
        classes.push(vec![m]);
        thetas.push(t);
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossed_complex::{aut_crossed_module, em_complex, twisted_em};
    use crate::finite_algebra::presets::*;
    use crate::free_resolution::standard_resolution;

    #[test]
    fn morphisms_into_em_are_homomorphisms() {
        let g = cyclic(2);
        let f = standard_resolution(&g, 2).unwrap();
        assert_eq!(enumerate_morphisms(&f, &em_complex(&g), None).unwrap().len(), 2);
        let f3 = standard_resolution(&g, 3).unwrap();
        let classes = homotopy_classes(&f3, &em_complex(&g), None).unwrap();
        assert_eq!(classes.len(), 2);
        assert!(classes.iter().all(|c| c.len() == 1));
        let point = em_complex(&FiniteGroup::trivial());
        assert_eq!(enumerate_morphisms(&f3, &point, None).unwrap().len(), 1);
        assert_eq!(homotopy_classes(&f3, &point, None).unwrap().len(), 1);
    }

    #[test]
    fn coefficient_morphisms_are_cocycles() {
        let g = cyclic(2);
        let a = GModule::trivial_action(cyclic(2), g.clone()).unwrap();
        let k = twisted_em(&g, &a, 2).unwrap();
        let f = standard_resolution(&g, 3).unwrap();
        let id = [0usize, 1];
        let fast = enumerate_morphisms(&f, &k, Some(&id)).unwrap();
        assert_eq!(fast.len(), 4);
        let mut slow = Enumerator::new(&f, &k, Some(&id));
        slow.slot(&mut MorphismAssignment::unset(&f, vec![0]), 0).unwrap();
        slow.found.sort();
        assert_eq!(slow.found, fast);
        let classes = homotopy_classes(&f, &k, Some(&id)).unwrap();
        assert_eq!(classes.len(), 2);
    }

    #[test]
    fn zero_homotopy_and_shifted_cocycles() {
        let g = cyclic(3);
        let a = GModule::trivial_action(cyclic(3), g.clone()).unwrap();
        let k = twisted_em(&g, &a, 2).unwrap();
        let f = standard_resolution(&g, 3).unwrap();
        let ms = enumerate_morphisms(&f, &k, None).unwrap();
        let m = &ms[ms.len() / 2];
        assert!(is_homotopic(&f, &k, m, m).unwrap().is_some());
        let mut h: Vec<Vec<usize>> = (1..=3).map(|n| vec![0; f.basis_size(n)]).collect();
        h[0] = vec![2, 1, 0];
        let shifted = apply_homotopy(&f, &k, m, &h).unwrap();
        check_morphism(&f, &k, &shifted).unwrap();
        let w = is_homotopic(&f, &k, m, &shifted).unwrap().unwrap();
        assert_eq!(apply_homotopy(&f, &k, m, &w.h).unwrap(), shifted);
    }

    #[test]
    fn different_theta_is_an_error() {
        let g = cyclic(2);
        let f = standard_resolution(&g, 2).unwrap();
        let ms = enumerate_morphisms(&f, &em_complex(&g), None).unwrap();
        assert_eq!(is_homotopic(&f, &em_complex(&g), &ms[0], &ms[1]), Err(Error::IncompatibleTheta));
    }

    #[test]
    fn generic_search_agrees_with_apply() {
        // homotopies into AUT(C4) move factor sets within their class
        let g = cyclic(2);
        let aut = aut_crossed_module(&cyclic(4));
        let f = standard_resolution(&g, 3).unwrap();
        let ms = enumerate_morphisms(&f, &aut, None).unwrap();
        assert!(!ms.is_empty());
        for m in ms.iter().take(8) {
            for h1 in 0..4 {
                let mut h: Vec<Vec<usize>> = (1..=3).map(|n| vec![0; f.basis_size(n)]).collect();
                h[0] = vec![h1, (h1 + 1) % 4];
                let m2 = apply_homotopy(&f, &aut, m, &h).unwrap();
                check_morphism(&f, &aut, &m2).unwrap();
                let w = is_homotopic(&f, &aut, m, &m2).unwrap().expect("a homotopy exists");
                assert_eq!(apply_homotopy(&f, &aut, m, &w.h).unwrap(), m2);
            }
        }
    }
}
