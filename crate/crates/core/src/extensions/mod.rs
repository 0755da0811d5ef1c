//! Nonabelian extensions of `K` by `G`: factor sets as morphisms
//! `F^st(G) → AUT(K)`, obstruction classes in `H³` and the classification of
//! extensions as a torsor over `H²` with coefficients in `Z(K)`.
//!
//! A factor set `(φ, f)` describes the group on `K × G` with
//! `(k, g)(k', h) = (k · φ(g)⁻¹(k') · f(g, h), gh)`, a section satisfying
//! `s(g) s(h) = f(g, h) s(gh)` and `s(g)⁻¹ k s(g) = φ(g)(k)`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::crossed_complex::{aut_crossed_module_with_data, xi_zeta_split, CrossedComplex, XiZeta};
use crate::error::{Error, Result};
use crate::finite_algebra::{enumerate_homs, identify, AutData, FiniteGroup, GroupHom, Subgroup};
use crate::free_resolution::{check_morphism, eval_crossed, standard_resolution, tuple_index, FreeCrsPresentation, MorphismAssignment};
use crate::hom_homotopy::{cohomology_group, CohomologyClass, CohomologyGroup};
use crate::oracle::SEARCH_CAP;

/// An abstract kernel `ψ: G → Out(K)` with the derived data used throughout.
#[derive(Clone, Debug)]
pub struct AbstractKernel {
    pub k: FiniteGroup,
    pub g: FiniteGroup,
    /// `G → Out(K)`, with `Out(K)` indexed as in `aut.out`.
    pub psi: GroupHom,
    pub aut: AutData,
    /// `AUT(K)`; arrows are indices into `aut.aut`, level 2 is `K`.
    pub complex: CrossedComplex,
    /// `ξ AUT(K) → ζ AUT(K)` with `Z(K) = Ker χ` adjoined in dimension 3.
    pub split: XiZeta,
    pub center: Subgroup,
    /// `ψ` read in `π₁ AUT(K)`, the acting group of `split.module`.
    pub theta: GroupHom,
}

impl AbstractKernel {
    /// `psi[g]` is an element of `Out(K)` as indexed by `automorphism_group(k).out`.
    pub fn new(k: &FiniteGroup, g: &FiniteGroup, psi: Vec<usize>) -> Result<Self> {
        let (complex, aut) = aut_crossed_module_with_data(k);
        let psi = GroupHom::new(g.clone(), aut.out.clone(), psi)?;
        let split = xi_zeta_split(&complex, 2)?;
        let center = k.subgroup(&split.kernel);
        for &a in &aut.inn_subgroup {
            if let Some(&z) = center.embed.iter().find(|&&z| aut.apply(a, z) != z) {
                return Err(Error::Malformed(format!("inner automorphism {a} moves the central element {z}")));
            }
        }
        let pi1 = complex.fundamental_group(0);
        let image = (0..g.order()).map(|x| pi1.class_of(aut.out_reps[psi.apply(x)]).expect("automorphisms are loops")).collect();
        let theta = GroupHom::new(g.clone(), split.module.actor.clone(), image)?;
        Ok(AbstractKernel { k: k.clone(), g: g.clone(), psi, aut, complex, split, center, theta })
    }

    /// Every abstract kernel with the given `K` and `G`, in the order of `enumerate_homs`.
    pub fn all(k: &FiniteGroup, g: &FiniteGroup) -> Result<Vec<Self>> {
        let out = aut_crossed_module_with_data(k).1.out;
        enumerate_homs(g, &out).into_iter().map(|h| Self::new(k, g, h.image)).collect()
    }

    /// One automorphism per element of `G` lifting `ψ`, as image arrays (oracle input).
    pub fn psi_reps(&self) -> Vec<Vec<usize>> {
        (0..self.g.order()).map(|x| self.aut.maps[self.aut.out_reps[self.psi.apply(x)]].clone()).collect()
    }

    /// Choices of `φ(g)`: the identity for `g = e`, else the coset `ψ(g)`.
    pub fn phi_choices(&self, x: usize) -> Vec<usize> {
        if x == 0 {
            vec![0]
        } else {
            self.aut.coset(self.psi.apply(x))
        }
    }

    /// Elements `c` with `χ(c) = φ(g) φ(h) φ(gh)⁻¹`, a coset of `Z(K)`.
    pub fn f_choices(&self, phi: &[usize], x: usize, y: usize) -> Vec<usize> {
        let a = &self.aut.aut;
        let target = a.mul(a.mul(phi[x], phi[y]), a.inv(phi[self.g.mul(x, y)]));
        (0..self.k.order()).filter(|&c| self.aut.chi.apply(c) == target).collect()
    }

    /// The standard resolution used for factor sets and obstructions.
    pub fn resolution(&self, depth: usize) -> Result<FreeCrsPresentation> {
        standard_resolution(&self.g, depth)
    }

    fn same_as(&self, other: &AbstractKernel) -> bool {
        self.k == other.k && self.g == other.g && self.psi.image == other.psi.image
    }

    fn central(&self, z: usize) -> usize {
        self.center.embed[z]
    }

    fn check_search(&self, size: u128) -> Result<()> {
        if size > SEARCH_CAP {
            return Err(Error::SearchSpaceTooLarge { size, cap: SEARCH_CAP });
        }
        Ok(())
    }
}

/// Schreier data: `phi[g]` indexes `Aut(K)`, `f[g][h] ∈ K`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FactorSet {
    pub phi: Vec<usize>,
    pub f: Vec<Vec<usize>>,
}

impl FactorSet {
    /// Checks shape, `φ(e) = id`, `φ` lifting `ψ`, compatibility
    /// `χ(f(g,h)) = φ(g)φ(h)φ(gh)⁻¹` and the cocycle identity
    /// `φ(a)⁻¹(f(b,c)) · f(a,bc) = f(a,b) · f(ab,c)`.
    pub fn validate(&self, kernel: &AbstractKernel) -> Result<()> {
        let (k, g, aut) = (&kernel.k, &kernel.g, &kernel.aut);
        let bad = |m: String| Err(Error::InvalidFactorSet(m));
        let n = g.order();
        if self.phi.len() != n || self.f.len() != n || self.f.iter().any(|r| r.len() != n) {
            return bad(format!("expected {n} automorphisms and a {n}×{n} table"));
        }
        if self.phi.iter().any(|&a| a >= aut.aut.order()) || self.f.iter().flatten().any(|&c| c >= k.order()) {
            return bad("index out of range".into());
        }
        if self.phi[0] != 0 {
            return bad("φ(e) is not the identity automorphism".into());
        }
        for x in 0..n {
            if aut.proj.apply(self.phi[x]) != kernel.psi.apply(x) {
                return bad(format!("φ({x}) does not lie over ψ({x})"));
            }
        }
        let a = &aut.aut;
        for x in 0..n {
            for y in 0..n {
                let target = a.mul(a.mul(self.phi[x], self.phi[y]), a.inv(self.phi[g.mul(x, y)]));
                if aut.chi.apply(self.f[x][y]) != target {
                    return bad(format!("compatibility fails at ({x}, {y})"));
                }
            }
        }
        for x in 0..n {
            let inv = a.inv(self.phi[x]);
            for y in 0..n {
                for z in 0..n {
                    let lhs = k.mul(aut.apply(inv, self.f[y][z]), self.f[x][g.mul(y, z)]);
                    let rhs = k.mul(self.f[x][y], self.f[g.mul(x, y)][z]);
                    if lhs != rhs {
                        return bad(format!("cocycle identity fails at ({x}, {y}, {z})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Builds a factor set from automorphisms given as image arrays.
    pub fn from_maps(kernel: &AbstractKernel, phi: &[Vec<usize>], f: Vec<Vec<usize>>) -> Result<Self> {
        let phi = phi
            .iter()
            .map(|m| kernel.aut.index_of(m).ok_or_else(|| Error::InvalidFactorSet("φ contains a map that is not an automorphism".into())))
            .collect::<Result<Vec<_>>>()?;
        let fs = FactorSet { phi, f };
        fs.validate(kernel)?;
        Ok(fs)
    }

    /// `φ` as image arrays.
    pub fn phi_maps(&self, kernel: &AbstractKernel) -> Vec<Vec<usize>> {
        self.phi.iter().map(|&a| kernel.aut.maps[a].clone()).collect()
    }

    /// The split factor set `φ = ψ-representatives` when these form a homomorphism.
    pub fn semidirect(kernel: &AbstractKernel, phi: Vec<usize>) -> Result<Self> {
        let n = kernel.g.order();
        let fs = FactorSet { phi, f: vec![vec![0; n]; n] };
        fs.validate(kernel)?;
        Ok(fs)
    }

    /// `f · z` for a 2-cochain `z` with values in `Z(K)` (indices into `kernel.center`).
    fn shifted(&self, kernel: &AbstractKernel, z: &[usize]) -> FactorSet {
        let n = kernel.g.order();
        let f = (0..n).map(|x| (0..n).map(|y| kernel.k.mul(self.f[x][y], kernel.central(z[tuple_index(n, &[x, y])]))).collect()).collect();
        FactorSet { phi: self.phi.clone(), f }
    }

    /// The equivalent factor set for the section `s'(g) = d(g) s(g)`:
    /// `φ'(g) = φ(g)·χ(d(g))` and
    /// `f'(g,h) = f(g,h) · φ(gh)⁻¹(φ(h)(d(g)) · d(h) · d(gh)⁻¹)`.
    pub fn transformed(&self, kernel: &AbstractKernel, d: &[usize]) -> FactorSet {
        let (k, g, aut) = (&kernel.k, &kernel.g, &kernel.aut);
        let n = g.order();
        let phi = (0..n).map(|x| aut.aut.mul(self.phi[x], aut.chi.apply(d[x]))).collect();
        let f = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        let xy = g.mul(x, y);
                        let inner = k.mul(k.mul(aut.apply(self.phi[y], d[x]), d[y]), k.inv(d[xy]));
                        k.mul(self.f[x][y], aut.apply(aut.aut.inv(self.phi[xy]), inner))
                    })
                    .collect()
            })
            .collect();
        FactorSet { phi, f }
    }

    /// The least equivalent factor set with `f(e, g) = f(g, e) = 1`, if any.
    pub fn normalized(&self, kernel: &AbstractKernel) -> Result<Option<FactorSet>> {
        let n = kernel.g.order();
        let mut best: Option<FactorSet> = None;
        for_each_section(kernel, |d| {
            let t = self.transformed(kernel, d);
            if (0..n).all(|x| t.f[0][x] == 0 && t.f[x][0] == 0) && best.as_ref().is_none_or(|b| t < *b) {
                best = Some(t);
            }
        })?;
        Ok(best)
    }
}

/// Visits every `d: G → K` with `d(e) ∈ Z(K)`, so that `φ(e) = id` is preserved.
fn for_each_section(kernel: &AbstractKernel, mut visit: impl FnMut(&[usize])) -> Result<()> {
    let n = kernel.g.order();
    let choices: Vec<Vec<usize>> = (0..n).map(|x| if x == 0 { kernel.center.embed.clone() } else { (0..kernel.k.order()).collect() }).collect();
    kernel.check_search(choices.iter().map(|c| c.len() as u128).product())?;
    for_each_choice(&choices, &mut visit);
    Ok(())
}

fn for_each_choice(choices: &[Vec<usize>], visit: &mut impl FnMut(&[usize])) {
    if choices.iter().any(|c| c.is_empty()) {
        return;
    }
    let mut pick = vec![0usize; choices.len()];
    let mut current: Vec<usize> = choices.iter().map(|c| c[0]).collect();
    loop {
        visit(&current);
        let mut i = 0;
        loop {
            if i == choices.len() {
                return;
            }
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                current[i] = choices[i][pick[i]];
                break;
            }
            pick[i] = 0;
            current[i] = choices[i][0];
            i += 1;
        }
    }
}

/// `φ(g) = m₁([g])`, `f(g,h) = m₂([g,h])` for a morphism `F^st(G) → AUT(K)`.
pub fn factor_set_from_morphism(kernel: &AbstractKernel, m: &MorphismAssignment) -> Result<FactorSet> {
    let n = kernel.g.order();
    if m.values.len() < 2 || m.values[0].len() != n || m.values[1].len() != n * n {
        return Err(Error::InvalidFactorSet("the morphism is not defined on the standard resolution of G".into()));
    }
    let f = (0..n).map(|x| (0..n).map(|y| m.values[1][tuple_index(n, &[x, y])]).collect()).collect();
    let fs = FactorSet { phi: m.values[0].clone(), f };
    fs.validate(kernel)?;
    Ok(fs)
}

/// The morphism `F^st(G)_{≤3} → AUT(K)` of a factor set; dimension 3 maps trivially.
pub fn morphism_from_factor_set(kernel: &AbstractKernel, fs: &FactorSet) -> Result<MorphismAssignment> {
    fs.validate(kernel)?;
    let n = kernel.g.order();
    let f = kernel.resolution(3)?;
    let mut m = MorphismAssignment::unset(&f, vec![0]);
    m.values[0] = fs.phi.clone();
    m.values[1] = fs.f.iter().flatten().copied().collect();
    m.values[2] = vec![0; n * n * n];
    check_morphism(&f, &kernel.complex, &m)?;
    Ok(m)
}

/// An extension `K → E → G` realizing a factor set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    pub group: FiniteGroup,
    /// `(k, g)` pair of each element of `E`.
    pub elements: Vec<(usize, usize)>,
    /// `i: K → E`.
    pub inclusion: Vec<usize>,
    /// `p: E → G`.
    pub projection: Vec<usize>,
}

/// The twisted product on `K × G` (see the module documentation).
pub fn extension_from_factor_set(kernel: &AbstractKernel, fs: &FactorSet) -> Result<Extension> {
    fs.validate(kernel)?;
    let (k, g, aut) = (&kernel.k, &kernel.g, &kernel.aut);
    let elements: Vec<(usize, usize)> = (0..k.order()).flat_map(|a| (0..g.order()).map(move |x| (a, x))).collect();
    let mul = |&(a, x): &(usize, usize), &(b, y): &(usize, usize)| (k.mul(k.mul(a, aut.apply(aut.aut.inv(fs.phi[x]), b)), fs.f[x][y]), g.mul(x, y));
    let identity = (k.inv(fs.f[0][0]), 0);
    let (group, elements) = FiniteGroup::from_operation(elements, &identity, mul);
    let position = |p: &(usize, usize)| elements.binary_search(p).ok().or_else(|| elements.iter().position(|q| q == p)).unwrap();
    let inclusion = (0..k.order()).map(|a| position(&(k.mul(a, k.inv(fs.f[0][0])), 0))).collect();
    let projection = elements.iter().map(|&(_, x)| x).collect();
    Ok(Extension { group, elements, inclusion, projection })
}

impl Extension {
    /// Element `s(g) = (1, g)` of the section.
    pub fn section(&self, x: usize) -> usize {
        self.elements.iter().position(|&p| p == (0, x)).expect("section element")
    }

    /// The automorphism of `K` induced by conjugation `k ↦ s(g)⁻¹ k s(g)`, as an image array.
    pub fn conjugation_on_kernel(&self, x: usize) -> Vec<usize> {
        let s = self.section(x);
        let e = &self.group;
        self.inclusion
            .iter()
            .map(|&ik| {
                let c = e.conj(ik, s);
                self.inclusion.iter().position(|&j| j == c).expect("i(K) is normal")
            })
            .collect()
    }
}

/// A `d` with `fs.transformed(d) = fs2`, searched over the cosets forced by `φ`.
pub fn equivalent_factor_sets(kernel: &AbstractKernel, other: &AbstractKernel, fs: &FactorSet, fs2: &FactorSet) -> Result<Option<Vec<usize>>> {
    if !kernel.same_as(other) {
        return Err(Error::KernelMismatch);
    }
    fs.validate(kernel)?;
    fs2.validate(kernel)?;
    let a = &kernel.aut.aut;
    // φ'(g) = φ(g)·χ(d(g)) pins d(g) to a coset of Z(K)
    let choices: Vec<Vec<usize>> = (0..kernel.g.order())
        .map(|x| {
            let want = a.mul(a.inv(fs.phi[x]), fs2.phi[x]);
            (0..kernel.k.order()).filter(|&c| kernel.aut.chi.apply(c) == want).collect()
        })
        .collect();
    kernel.check_search(choices.iter().map(|c| c.len() as u128).product())?;
    let mut found = None;
    for_each_choice(&choices, &mut |d: &[usize]| {
        if found.is_none() && fs.transformed(kernel, d) == *fs2 {
            found = Some(d.to_vec());
        }
    });
    Ok(found)
}

/// Least factor set equivalent to `fs`.
pub fn canonical_factor_set(kernel: &AbstractKernel, fs: &FactorSet) -> Result<FactorSet> {
    let mut best = fs.clone();
    for_each_section(kernel, |d| {
        let t = fs.transformed(kernel, d);
        if t < best {
            best = t;
        }
    })?;
    Ok(best)
}

/// The obstruction of an abstract kernel together with the lift it was read from.
#[derive(Clone, Debug)]
pub struct Obstruction {
    pub h3: CohomologyGroup,
    pub class: CohomologyClass,
    /// Values in `Z(K)` (indices into `kernel.center`) on the degree-3 basis.
    pub cocycle: Vec<usize>,
    pub phi: Vec<usize>,
    pub f: Vec<Vec<usize>>,
}

impl Obstruction {
    pub fn is_zero(&self) -> bool {
        self.class.is_zero()
    }
}

/// The obstruction from the default lift: least coset representatives for `φ`
/// and least compatible `f`.
pub fn obstruction_class(kernel: &AbstractKernel) -> Result<Obstruction> {
    let phi: Vec<usize> = (0..kernel.g.order()).map(|x| kernel.phi_choices(x)[0]).collect();
    let n = kernel.g.order();
    let f: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| kernel.f_choices(&phi, x, y)[0]).collect()).collect();
    obstruction_from_lift(kernel, &phi, &f)
}

/// Lifts `θ` to `F^st(G)_{≤4} → ξ AUT(K)` using `(φ, f)`, pushes it to
/// `ζ AUT(K) = 𝕂(Out K, 1; Z(K), 3)` and reads the class of the resulting 3-cocycle.
pub fn obstruction_from_lift(kernel: &AbstractKernel, phi: &[usize], f: &[Vec<usize>]) -> Result<Obstruction> {
    let n = kernel.g.order();
    for x in 0..n {
        if !kernel.phi_choices(x).contains(&phi[x]) {
            return Err(Error::InvalidFactorSet(format!("φ({x}) does not lift ψ({x})")));
        }
        for y in 0..n {
            if !kernel.f_choices(phi, x, y).contains(&f[x][y]) {
                return Err(Error::InvalidFactorSet(format!("compatibility fails at ({x}, {y})")));
            }
        }
    }
    let res = kernel.resolution(4)?;
    let split = &kernel.split;
    let mut m = MorphismAssignment::unset(&res, vec![0]);
    m.values[0] = phi.to_vec();
    m.values[1] = f.iter().flatten().copied().collect();
    for b in 0..res.basis_size(3) {
        // the failure of the cocycle identity lies in Ker δ₂ = Z(K)
        let v = eval_crossed(&res, &split.xi, &m, &res.delta3[b])?;
        m.values[2][b] = kernel.center.position(v).ok_or_else(|| Error::InvalidMorphism("obstruction value is not central".into()))?;
    }
    m.values[3] = vec![0; res.basis_size(4)];
    check_morphism(&res, &split.xi, &m)?;
    let pushed = m.then(&split.p);
    check_morphism(&res, &split.zeta, &pushed)?;
    let h3 = cohomology_group(&res, &kernel.theta, &split.module, 3)?;
    let cocycle = pushed.values[2].clone();
    let class = h3.class_of(&cocycle)?;
    Ok(Obstruction { h3, class, cocycle, phi: phi.to_vec(), f: f.to_vec() })
}

/// One equivalence class of extensions.
#[derive(Clone, Debug)]
pub struct ExtensionClass {
    pub factor_set: FactorSet,
    pub extension: Extension,
    pub name: String,
    /// The class `c ∈ H²` with `seed · c` in this class.
    pub offset: CohomologyClass,
}

#[derive(Clone, Debug)]
pub struct ExtensionClassification {
    pub kernel: AbstractKernel,
    pub obstruction: Obstruction,
    pub h2: CohomologyGroup,
    /// Sorted by canonical factor set.
    pub classes: Vec<ExtensionClass>,
    /// `torsor[c][i]`: the class reached from class `i` by `h2.elements()[c]`.
    pub torsor: Vec<Vec<usize>>,
}

/// Classifies extensions realizing the kernel. Empty when the obstruction is nonzero.
pub fn classify_extensions(kernel: &AbstractKernel) -> Result<ExtensionClassification> {
    let obstruction = obstruction_class(kernel)?;
    let res = kernel.resolution(3)?;
    let h2 = cohomology_group(&res, &kernel.theta, &kernel.split.module, 2)?;
    let mut classification = ExtensionClassification { kernel: kernel.clone(), obstruction, h2, classes: Vec::new(), torsor: Vec::new() };
    if !classification.obstruction.is_zero() {
        return Ok(classification);
    }
    let ob = &classification.obstruction;
    // correct f by a central 2-cochain h with m₃ + D₃h = 0
    let zero = vec![0usize; ob.cocycle.len()];
    let h = ob.h3.coboundary_witness(&ob.cocycle, &zero)?.ok_or_else(|| Error::InvalidMorphism("zero obstruction without a witness".into()))?;
    let seed = FactorSet { phi: ob.phi.clone(), f: ob.f.clone() }.shifted(kernel, &h);
    seed.validate(kernel)?;
    let h2 = &classification.h2;
    let elements = h2.elements();
    let mut classes: Vec<ExtensionClass> = Vec::new();
    for c in &elements {
        let fs = torsor_act(kernel, h2, c, &seed)?;
        if classes.iter().any(|e| e.factor_set == fs) {
            return Err(Error::InvalidFactorSet("the torsor action is not free".into()));
        }
        let extension = extension_from_factor_set(kernel, &fs)?;
        let name = identify(&extension.group);
        classes.push(ExtensionClass { factor_set: fs, extension, name, offset: c.clone() });
    }
    classes.sort_by(|a, b| a.factor_set.cmp(&b.factor_set));
    let mut torsor = Vec::with_capacity(elements.len());
    for c in &elements {
        let row = classes
            .iter()
            .map(|cls| {
                let moved = torsor_act(kernel, h2, c, &cls.factor_set)?;
                classes.iter().position(|o| o.factor_set == moved).ok_or_else(|| Error::InvalidFactorSet("the torsor action leaves the class list".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        torsor.push(row);
    }
    classification.classes = classes;
    classification.torsor = torsor;
    Ok(classification)
}

/// Multiplies `f` pointwise by a representative of `c` and re-canonicalizes.
pub fn torsor_act(kernel: &AbstractKernel, h2: &CohomologyGroup, c: &CohomologyClass, fs: &FactorSet) -> Result<FactorSet> {
    if h2.degree != 2 || h2.theta != kernel.theta.image || h2.module != kernel.split.module {
        return Err(Error::AmbientMismatch);
    }
    let z = h2.representative(c)?;
    let moved = fs.shifted(kernel, &z);
    moved.validate(kernel)?;
    canonical_factor_set(kernel, &moved)
}
