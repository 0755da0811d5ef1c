use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::finite_algebra::presets::cyclic;
use crate::finite_algebra::FiniteGroup;

/// Deepest presentation the constructors produce.
pub const MAX_DEPTH: usize = 5;

/// A word in the dimension-1 basis: `(generator, ±1)` letters, read left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormalWord(pub Vec<(usize, i8)>);

impl FormalWord {
    pub fn empty() -> Self {
        FormalWord(Vec::new())
    }

    pub fn letter(g: usize) -> Self {
        FormalWord(vec![(g, 1)])
    }

    pub fn inverse(&self) -> Self {
        FormalWord(self.0.iter().rev().map(|&(g, e)| (g, -e)).collect())
    }

    pub fn concat(&self, other: &FormalWord) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        FormalWord(v)
    }

    /// Free reduction.
    pub fn reduced(&self) -> Self {
        let mut out: Vec<(usize, i8)> = Vec::with_capacity(self.0.len());
        for &(g, e) in &self.0 {
            match out.last() {
                Some(&(h, f)) if h == g && f == -e => {
                    out.pop();
                }
                _ => out.push((g, e)),
            }
        }
        FormalWord(out)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A product `∏ (b^w)^ε` in the free crossed module on the dimension-2 basis.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FormalCrossedElement(pub Vec<(FormalWord, usize, i8)>);

impl FormalCrossedElement {
    /// `(self)^w`: conjugates every factor by `w`.
    pub fn act(&self, w: &FormalWord) -> Self {
        FormalCrossedElement(self.0.iter().map(|(u, b, e)| (u.concat(w), *b, *e)).collect())
    }

    pub fn inverse(&self) -> Self {
        FormalCrossedElement(self.0.iter().rev().map(|(u, b, e)| (u.clone(), *b, -e)).collect())
    }
}

/// A sum `Σ coeff · (b · φ)` in a free `ZΦ`-module, `φ ∈ Φ` acting on the right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FormalModuleSum(pub Vec<(usize, usize, i64)>);

impl FormalModuleSum {
    /// Merges equal `(φ, b)` terms and drops zero coefficients; sorted by `(b, φ)`.
    pub fn normalized(&self) -> Self {
        let mut acc: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for &(phi, b, c) in &self.0 {
            *acc.entry((b, phi)).or_insert(0) += c;
        }
        FormalModuleSum(acc.into_iter().filter(|&(_, c)| c != 0).map(|((b, phi), c)| (phi, b, c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.normalized().0.is_empty()
    }
}

/// A free crossed complex given by bases and formal boundaries.
///
/// Dimension-2 and higher generators live at object 0; only dimension 1
/// may connect distinct objects. `phi` maps the dimension-1 basis to `Φ`
/// and `phi_section[q]` is a word mapping to `q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeCrsPresentation {
    pub name: String,
    pub objects: usize,
    /// Endpoints of each dimension-1 generator.
    pub ends: Vec<(usize, usize)>,
    /// `basis[n - 1]` is the number of generators in dimension `n`.
    pub basis: Vec<usize>,
    pub phi_group: FiniteGroup,
    pub phi: Vec<usize>,
    pub phi_section: Vec<FormalWord>,
    pub delta2: Vec<FormalWord>,
    pub delta3: Vec<FormalCrossedElement>,
    /// `higher[n - 4]` holds the boundaries of dimension-`n` generators.
    pub higher: Vec<Vec<FormalModuleSum>>,
}

impl FreeCrsPresentation {
    pub fn depth(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_size(&self, n: usize) -> usize {
        if n == 0 {
            self.objects
        } else {
            self.basis.get(n - 1).copied().unwrap_or(0)
        }
    }

    /// Boundary of a dimension-`n` generator, `n ≥ 4`.
    pub fn module_boundary(&self, n: usize, b: usize) -> &FormalModuleSum {
        &self.higher[n - 4][b]
    }

    /// Image of a word in `Φ`.
    pub fn phi_of_word(&self, w: &FormalWord) -> usize {
        let g = &self.phi_group;
        w.0.iter().fold(0, |acc, &(x, e)| g.mul(acc, if e > 0 { self.phi[x] } else { g.inv(self.phi[x]) }))
    }

    /// `δ₂` of a crossed element as a (reduced) word.
    pub fn boundary_of_crossed(&self, c: &FormalCrossedElement) -> FormalWord {
        let mut out = FormalWord::empty();
        for (w, b, e) in &c.0 {
            let d = if *e > 0 { self.delta2[*b].clone() } else { self.delta2[*b].inverse() };
            out = out.concat(&w.inverse()).concat(&d).concat(w);
        }
        out.reduced()
    }

    /// Image of a crossed element in the abelianization, a free `ZΦ`-module on the dimension-2 basis.
    pub fn abelianize(&self, c: &FormalCrossedElement) -> FormalModuleSum {
        FormalModuleSum(c.0.iter().map(|(w, b, e)| (self.phi_of_word(w), *b, *e as i64)).collect()).normalized()
    }

    /// Applies `δ_n` (`n ≥ 3`) to a module sum of dimension-`n` generators,
    /// landing in the abelianized dimension-`(n-1)` module.
    pub fn boundary_of_module(&self, n: usize, s: &FormalModuleSum) -> FormalModuleSum {
        let g = &self.phi_group;
        let mut terms = Vec::new();
        for &(phi, b, c) in &s.0 {
            let inner = if n == 3 { self.abelianize(&self.delta3[b]) } else { self.module_boundary(n, b).clone() };
            for (psi, b2, c2) in inner.0 {
                terms.push((g.mul(psi, phi), b2, c * c2));
            }
        }
        FormalModuleSum(terms).normalized()
    }

    /// Structural checks: table sizes, `φ` kills `δ₂`, `δ₂δ₃ = 1` by free
    /// reduction and `δ_{n-1}δ_n = 0` in the abelianized modules.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Malformed(m));
        let depth = self.depth();
        if depth > MAX_DEPTH {
            return bad(format!("depth {depth} exceeds {MAX_DEPTH}"));
        }
        if self.ends.len() != self.basis_size(1) || self.phi.len() != self.basis_size(1) {
            return bad("dimension-1 tables do not match the basis".into());
        }
        if self.phi_section.len() != self.phi_group.order() {
            return bad("φ section must list one word per element of Φ".into());
        }
        for (q, w) in self.phi_section.iter().enumerate() {
            if self.phi_of_word(w) != q {
                return bad(format!("section word for {q} maps elsewhere"));
            }
        }
        if self.delta2.len() != self.basis_size(2) || self.delta3.len() != self.basis_size(3) {
            return bad("boundary tables do not match the basis".into());
        }
        for n in 4..=depth {
            if self.higher.get(n - 4).map(|v| v.len()) != Some(self.basis_size(n)) {
                return bad(format!("dimension-{n} boundaries do not match the basis"));
            }
        }
        let gen_ok = |w: &FormalWord| w.0.iter().all(|&(x, e)| x < self.basis_size(1) && (e == 1 || e == -1));
        for (b, w) in self.delta2.iter().enumerate() {
            if !gen_ok(w) {
                return bad(format!("δ₂ of generator {b} uses unknown letters"));
            }
            if !self.is_closed_loop(w) {
                return bad(format!("δ₂ of generator {b} is not a loop at object 0"));
            }
            if self.phi_of_word(w) != 0 {
                return bad(format!("φ does not kill δ₂ of generator {b}"));
            }
        }
        for (b, c) in self.delta3.iter().enumerate() {
            if c.0.iter().any(|(w, x, e)| !gen_ok(w) || *x >= self.basis_size(2) || (*e != 1 && *e != -1)) {
                return bad(format!("δ₃ of generator {b} uses unknown generators"));
            }
            if !self.boundary_of_crossed(c).is_empty() {
                return bad(format!("δ₂δ₃ of generator {b} does not reduce to the empty word"));
            }
        }
        for n in 4..=depth {
            for (b, s) in self.higher[n - 4].iter().enumerate() {
                if s.0.iter().any(|&(phi, x, _)| phi >= self.phi_group.order() || x >= self.basis_size(n - 1)) {
                    return bad(format!("δ{n} of generator {b} uses unknown generators"));
                }
                if !self.boundary_of_module(n - 1, s).is_zero() {
                    return bad(format!("δ{}δ{n} of generator {b} is nonzero", n - 1));
                }
            }
        }
        Ok(())
    }

    fn is_closed_loop(&self, w: &FormalWord) -> bool {
        let mut at = 0;
        for &(x, e) in &w.0 {
            let (s, t) = self.ends[x];
            let (from, to) = if e > 0 { (s, t) } else { (t, s) };
            if from != at {
                return false;
            }
            at = to;
        }
        at == 0
    }
}

/// Index of a tuple `(g_1, …, g_n)` in the standard basis: `Σ g_i |G|^{n-i}`.
pub fn tuple_index(order: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &g| acc * order + g)
}

/// The tuple with the given index.
pub fn tuple_of(order: usize, n: usize, mut index: usize) -> Vec<usize> {
    let mut t = vec![0; n];
    for i in (0..n).rev() {
        t[i] = index % order;
        index /= order;
    }
    t
}

/// The standard free crossed resolution of `G`, unnormalized, up to depth `n ≤ 4`.
///
/// * `δ₂[g,h] = [g][h][gh]⁻¹`
/// * `δ₃[g,h,k] = [h,k]^{[g]⁻¹} · [g,hk] · [gh,k]⁻¹ · [g,h]⁻¹`
/// * `δ₄[g,h,k,l] = [h,k,l]·g⁻¹ − [gh,k,l] + [g,hk,l] − [g,h,kl] + [g,h,k]`
pub fn standard_resolution(g: &FiniteGroup, depth: usize) -> Result<FreeCrsPresentation> {
    if depth == 0 || depth > 4 {
        return Err(Error::BadDimension(depth));
    }
    let o = g.order();
    let idx = |t: &[usize]| tuple_index(o, t);
    let basis: Vec<usize> = (1..=depth).map(|n| o.pow(n as u32)).collect();
    let letter = FormalWord::letter;
    let delta2 = if depth >= 2 {
        (0..o * o)
            .map(|i| {
                let (a, b) = (i / o, i % o);
                FormalWord(vec![(a, 1), (b, 1), (g.mul(a, b), -1)])
            })
            .collect()
    } else {
        Vec::new()
    };
    let delta3 = if depth >= 3 {
        (0..o * o * o)
            .map(|i| {
                let t = tuple_of(o, 3, i);
                let (a, b, c) = (t[0], t[1], t[2]);
                FormalCrossedElement(vec![
                    (letter(a).inverse(), idx(&[b, c]), 1),
                    (FormalWord::empty(), idx(&[a, g.mul(b, c)]), 1),
                    (FormalWord::empty(), idx(&[g.mul(a, b), c]), -1),
                    (FormalWord::empty(), idx(&[a, b]), -1),
                ])
            })
            .collect()
    } else {
        Vec::new()
    };
    let mut higher = Vec::new();
    if depth >= 4 {
        higher.push(
            (0..o.pow(4))
                .map(|i| {
                    let t = tuple_of(o, 4, i);
                    let (a, b, c, d) = (t[0], t[1], t[2], t[3]);
                    FormalModuleSum(vec![
                        (g.inv(a), idx(&[b, c, d]), 1),
                        (0, idx(&[g.mul(a, b), c, d]), -1),
                        (0, idx(&[a, g.mul(b, c), d]), 1),
                        (0, idx(&[a, b, g.mul(c, d)]), -1),
                        (0, idx(&[a, b, c]), 1),
                    ])
                    .normalized()
                })
                .collect(),
        );
    }
    Ok(FreeCrsPresentation {
        name: format!("standard resolution of a group of order {o}"),
        objects: 1,
        ends: vec![(0, 0); o],
        basis,
        phi_group: g.clone(),
        phi: (0..o).collect(),
        phi_section: (0..o).map(letter).collect(),
        delta2,
        delta3,
        higher,
    })
}

/// The periodic resolution of `C_m` with one generator per dimension:
/// `δ₂a = x^m`, `δ₃b = a^x · a⁻¹`, `δ₄c = Σ_{i<m} b·t^i`, `δ₅d = c·t − c`.
pub fn cyclic_resolution(m: usize, depth: usize) -> Result<FreeCrsPresentation> {
    if m < 2 {
        return Err(Error::Malformed("cyclic resolutions need m ≥ 2".into()));
    }
    if depth == 0 || depth > MAX_DEPTH {
        return Err(Error::BadDimension(depth));
    }
    let mut higher = Vec::new();
    if depth >= 4 {
        higher.push(vec![FormalModuleSum((0..m).map(|i| (i, 0, 1)).collect())]);
    }
    if depth >= 5 {
        higher.push(vec![FormalModuleSum(vec![(1, 0, 1), (0, 0, -1)])]);
    }
    Ok(FreeCrsPresentation {
        name: format!("periodic resolution of C{m}"),
        objects: 1,
        ends: vec![(0, 0)],
        basis: vec![1; depth],
        phi_group: cyclic(m),
        phi: vec![1],
        phi_section: (0..m).map(|i| FormalWord(vec![(0, 1); i])).collect(),
        delta2: if depth >= 2 { vec![FormalWord(vec![(0, 1); m])] } else { Vec::new() },
        delta3: if depth >= 3 {
            vec![FormalCrossedElement(vec![(FormalWord::letter(0), 0, 1), (FormalWord::empty(), 0, -1)])]
        } else {
            Vec::new()
        },
        higher,
    })
}

/// The disc `ℂ(n)`, its boundary sphere `𝕊(n−1)`, and the inclusion as a
/// map of generator indices per dimension (the sphere's generators keep
/// their indices; the disc has one extra top generator).
#[derive(Clone, Debug)]
pub struct DiscSphere {
    pub disc: FreeCrsPresentation,
    pub sphere: FreeCrsPresentation,
    pub n: usize,
}

pub fn disc_sphere(n: usize) -> Result<DiscSphere> {
    if n > MAX_DEPTH {
        return Err(Error::BadDimension(n));
    }
    let trivial = FiniteGroup::trivial();
    let blank = |objects: usize, depth: usize| FreeCrsPresentation {
        name: String::new(),
        objects,
        ends: Vec::new(),
        basis: vec![0; depth],
        phi_group: trivial.clone(),
        phi: Vec::new(),
        phi_section: vec![FormalWord::empty()],
        delta2: Vec::new(),
        delta3: Vec::new(),
        higher: (4..=depth).map(|_| Vec::new()).collect(),
    };
    let (mut disc, mut sphere) = match n {
        0 => (blank(1, 0), blank(0, 0)),
        1 => {
            let mut d = blank(2, 1);
            d.basis[0] = 1;
            d.ends = vec![(0, 1)];
            d.phi = vec![0];
            (d, blank(2, 0))
        }
        _ => {
            let mut d = blank(1, n);
            d.basis[n - 2] = 1;
            d.basis[n - 1] = 1;
            match n {
                2 => {
                    d.ends = vec![(0, 0)];
                    d.phi = vec![0];
                    d.delta2 = vec![FormalWord::letter(0)];
                }
                3 => {
                    d.delta2 = vec![FormalWord::empty()];
                    d.delta3 = vec![FormalCrossedElement(vec![(FormalWord::empty(), 0, 1)])];
                }
                _ => {
                    if n == 4 {
                        d.delta3 = vec![FormalCrossedElement::default()];
                    } else {
                        d.higher[n - 5] = vec![FormalModuleSum::default()];
                    }
                    d.higher[n - 4] = vec![FormalModuleSum(vec![(0, 0, 1)])];
                }
            }
            let mut s = d.clone();
            s.basis.pop();
            match n {
                2 => s.delta2.clear(),
                3 => s.delta3.clear(),
                _ => {
                    s.higher.pop();
                }
            }
            (d, s)
        }
    };
    disc.name = format!("disc of dimension {n}");
    sphere.name = format!("sphere of dimension {}", n as i64 - 1);
    Ok(DiscSphere { disc, sphere, n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_algebra::presets::*;

    #[test]
    fn standard_basis_sizes() {
        let f = standard_resolution(&cyclic(2), 4).unwrap();
        assert_eq!(f.basis, vec![2, 4, 8, 16]);
        f.validate().unwrap();
    }

    #[test]
    fn standard_resolutions_validate_for_small_groups() {
        for g in [cyclic(3), klein4(), symmetric(3), quaternion8(), dihedral(4)] {
            standard_resolution(&g, 4).unwrap().validate().unwrap();
        }
    }

    #[test]
    fn wrong_delta3_is_caught() {
        let mut f = standard_resolution(&symmetric(3), 3).unwrap();
        f.delta3[7].0[0].0 = FormalWord::letter(1);
        assert!(f.validate().is_err());
    }

    #[test]
    fn cyclic_resolutions_validate() {
        for m in 2..=6 {
            let f = cyclic_resolution(m, 5).unwrap();
            assert_eq!(f.basis, vec![1; 5]);
            f.validate().unwrap();
        }
    }

    #[test]
    fn discs_and_spheres() {
        for n in 0..=5 {
            let ds = disc_sphere(n).unwrap();
            ds.disc.validate().unwrap();
            ds.sphere.validate().unwrap();
            let total = |p: &FreeCrsPresentation| p.basis.iter().sum::<usize>();
            if n >= 1 {
                assert_eq!(total(&ds.disc), total(&ds.sphere) + 1);
            }
        }
        let interval = disc_sphere(1).unwrap().disc;
        assert_eq!((interval.objects, interval.ends.clone()), (2, vec![(0, 1)]));
        assert_eq!(disc_sphere(0).unwrap().disc.objects, 1);
    }

    #[test]
    fn tuple_indexing_roundtrip() {
        for i in 0..27 {
            assert_eq!(tuple_index(3, &tuple_of(3, 3, i)), i);
        }
    }
}
