use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::hash::{Hash, Hasher};

use super::zmod::{Echelon, LatticeQuotient, Solver};
use crate::error::{Error, Result};
use crate::finite_algebra::{FiniteGroup, GModule, GroupHom};
use crate::free_resolution::FreeCrsPresentation;
use crate::oracle::SEARCH_CAP;

/// FNV-1a, used to tag classes with the group they belong to.
pub(crate) struct Fnv(u64);

impl Fnv {
    pub(crate) fn new() -> Self {
        Fnv(0xcbf2_9ce4_8422_2325)
    }
}

impl Hasher for Fnv {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 ^= b as u64;
            self.0 = self.0.wrapping_mul(0x0100_0000_01b3);
        }
    }
}

/// A finite abelian group written as `⊕ Z/d_j` with `d_1 | d_2 | …`.
#[derive(Clone, Debug)]
pub struct CyclicCoords {
    pub exponent: i64,
    pub orders: Vec<i64>,
    /// Coordinates of every element.
    pub coords: Vec<Vec<i64>>,
    /// The element with coordinates `unit_j`.
    pub generators: Vec<usize>,
    lookup: BTreeMap<Vec<i64>, usize>,
}

impl CyclicCoords {
    pub fn new(a: &FiniteGroup) -> Result<Self> {
        if !a.is_abelian() {
            let (x, y) = (0..a.order())
                .flat_map(|x| (0..a.order()).map(move |y| (x, y)))
                .find(|&(x, y)| a.mul(x, y) != a.mul(y, x))
                .unwrap();
            return Err(Error::NotAbelian { a: x, b: y });
        }
        let n = a.order();
        let e = a.exponent() as i64;
        let unit = |i: usize| {
            let mut v = vec![0i64; n];
            v[i] += 1;
            v
        };
        let s = Echelon::from_generators(n, e, (0..n).map(unit));
        let mut rel = vec![unit(0)];
        for x in 0..n {
            for y in 0..n {
                let mut v = unit(x);
                v[y] += 1;
                v[a.mul(x, y)] -= 1;
                rel.push(v);
            }
        }
        let q = LatticeQuotient::new(s, Echelon::from_generators(n, e, rel));
        let orders = q.invariant_factors();
        let coords: Vec<Vec<i64>> = (0..n).map(|x| q.class_of(&unit(x))).collect();
        let lookup: BTreeMap<Vec<i64>, usize> = coords.iter().cloned().zip(0..).collect();
        debug_assert_eq!(lookup.len(), n);
        let generators = (0..orders.len())
            .map(|j| {
                let mut v = vec![0i64; orders.len()];
                v[j] = 1;
                lookup[&v]
            })
            .collect();
        Ok(CyclicCoords { exponent: e, orders, coords, generators, lookup })
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    /// The element with the given coordinates (reduced modulo the orders).
    pub fn element(&self, coords: &[i64]) -> usize {
        let key: Vec<i64> = coords.iter().zip(&self.orders).map(|(x, d)| x.rem_euclid(*d)).collect();
        self.lookup[&key]
    }

    /// `act[q][j]`: coordinates of `generator_j^q`.
    pub fn action_matrices(&self, a: &GModule) -> Vec<Vec<Vec<i64>>> {
        (0..a.actor.order()).map(|q| self.generators.iter().map(|&g| self.coords[a.act(g, q)].clone()).collect()).collect()
    }
}

/// A cohomology class, tagged with the group it lives in.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CohomologyClass {
    /// Coordinates against the invariant factors.
    pub coords: Vec<i64>,
    ambient: u64,
}

impl CohomologyClass {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }
}

/// Linear data of the cochain complex `Hom_Φ(F, A)` twisted by `θ`.
#[derive(Clone, Debug)]
pub(crate) struct CochainComplex {
    pub(crate) coords: CyclicCoords,
    act: Vec<Vec<Vec<i64>>>,
    /// `θ(φ)` for every element of `Φ`.
    theta: Vec<usize>,
    actor: FiniteGroup,
}

impl CochainComplex {
    pub(crate) fn new(f: &FreeCrsPresentation, theta: &GroupHom, a: &GModule) -> Result<Self> {
        if theta.dom != f.phi_group {
            return Err(Error::Malformed("θ must be defined on the group the resolution resolves".into()));
        }
        if theta.cod != a.actor {
            return Err(Error::Malformed("the module must be acted on by the codomain of θ".into()));
        }
        let coords = CyclicCoords::new(&a.coeff)?;
        let act = coords.action_matrices(a);
        Ok(CochainComplex { coords, act, theta: theta.image.clone(), actor: a.actor.clone() })
    }

    pub(crate) fn rank(&self) -> usize {
        self.coords.rank()
    }

    pub(crate) fn modulus(&self) -> i64 {
        self.coords.exponent
    }

    /// `R_k`: the relations `d_j · unit_{b,j}`.
    pub(crate) fn relations(&self, basis: usize) -> Vec<Vec<i64>> {
        let r = self.rank();
        let mut out = Vec::with_capacity(basis * r);
        for b in 0..basis {
            for (j, &d) in self.coords.orders.iter().enumerate() {
                let mut v = vec![0; basis * r];
                v[b * r + j] = d;
                out.push(v);
            }
        }
        out
    }

    fn theta_of_word(&self, f: &FreeCrsPresentation, w: &crate::free_resolution::FormalWord) -> usize {
        self.theta[f.phi_of_word(w)]
    }

    fn add_block(&self, m: &mut [Vec<i64>], row_b: usize, col_b: usize, q: usize, sign: i64) {
        let r = self.rank();
        for j in 0..r {
            for jp in 0..r {
                let x = self.act[q][j][jp];
                if x != 0 {
                    m[row_b * r + jp][col_b * r + j] += sign * x;
                }
            }
        }
    }

    /// `D_k : C^{k-1} → C^k`, rows indexed by `(b', j')`, columns by `(b, j)`.
    pub(crate) fn coboundary(&self, f: &FreeCrsPresentation, k: usize) -> Vec<Vec<i64>> {
        let r = self.rank();
        let (rows, cols) = (f.basis_size(k) * r, f.basis_size(k - 1) * r);
        let mut m = vec![vec![0i64; cols]; rows];
        let g = &self.actor;
        for b in 0..f.basis_size(k) {
            match k {
                2 => {
                    // twisted derivation: H(uv) = H(u)^{θφ(v)} + H(v)
                    let w = &f.delta2[b];
                    let mut suffix = 0;
                    for &(x, e) in w.0.iter().rev() {
                        let tx = self.theta[f.phi[x]];
                        if e > 0 {
                            self.add_block(&mut m, b, x, suffix, 1);
                            suffix = g.mul(tx, suffix);
                        } else {
                            let q = g.mul(g.inv(tx), suffix);
                            self.add_block(&mut m, b, x, q, -1);
                            suffix = q;
                        }
                    }
                }
                3 => {
                    for (w, x, e) in &f.delta3[b].0 {
                        self.add_block(&mut m, b, *x, self.theta_of_word(f, w), *e as i64);
                    }
                }
                _ => {
                    for &(phi, x, c) in &f.module_boundary(k, b).0 {
                        self.add_block(&mut m, b, x, self.theta[phi], c);
                    }
                }
            }
        }
        let e = self.modulus();
        for row in m.iter_mut() {
            for x in row.iter_mut() {
                *x = x.rem_euclid(e);
            }
        }
        m
    }

    /// Cocycles of degree `n`: `{x : D_{n+1} x ∈ R_{n+1}}`.
    pub(crate) fn cocycles(&self, f: &FreeCrsPresentation, n: usize) -> Echelon {
        let r = self.rank();
        let e = self.modulus();
        let d = self.coboundary(f, n + 1);
        let width = f.basis_size(n) * r;
        let constraints = d.into_iter().enumerate().map(|(i, row)| {
            let scale = e / self.coords.orders[i % r];
            row.into_iter().map(|x| x * scale).collect::<Vec<i64>>()
        });
        let mut z = Echelon::annihilator(width, e, constraints);
        for rel in self.relations(f.basis_size(n)) {
            z.insert(rel);
        }
        z
    }

    pub(crate) fn coboundary_columns(&self, f: &FreeCrsPresentation, n: usize) -> Vec<Vec<i64>> {
        let d = self.coboundary(f, n);
        let cols = f.basis_size(n - 1) * self.rank();
        (0..cols).map(|c| d.iter().map(|row| row[c]).collect()).collect()
    }

    pub(crate) fn to_vector(&self, values: &[usize]) -> Vec<i64> {
        values.iter().flat_map(|&a| self.coords.coords[a].iter().copied()).collect()
    }

    pub(crate) fn to_values(&self, v: &[i64], basis: usize) -> Vec<usize> {
        let r = self.rank();
        if r == 0 {
            return vec![0; basis];
        }
        v.chunks(r).map(|c| self.coords.element(c)).collect()
    }
}

/// `H^n_{θφ}(F, A)` for `n ∈ {2, 3}`.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    pub degree: usize,
    /// `θ` as the image of each element of `Φ`.
    pub theta: Vec<usize>,
    pub module: GModule,
    pub basis_size: usize,
    lower_basis_size: usize,
    pub invariant_factors: Vec<usize>,
    /// A canonical cocycle for each cyclic generator of the group.
    pub representatives: Vec<Vec<usize>>,
    complex: CochainComplex,
    quotient: LatticeQuotient,
    boundary_columns: Vec<Vec<i64>>,
    key: u64,
}

/// Computes `H^n_{θφ}(F, A) = Z^n / B^n` by Smith normal form over `Z/exp(A)`.
pub fn cohomology_group(f: &FreeCrsPresentation, theta: &GroupHom, a: &GModule, n: usize) -> Result<CohomologyGroup> {
    if !(2..=3).contains(&n) {
        return Err(Error::BadDimension(n));
    }
    if f.depth() < n + 1 {
        return Err(Error::DepthTooShallow { depth: f.depth(), degree: n });
    }
    let complex = CochainComplex::new(f, theta, a)?;
    let e = complex.modulus();
    let width = f.basis_size(n) * complex.rank();
    let z = complex.cocycles(f, n);
    let boundary_columns = complex.coboundary_columns(f, n);
    let b = Echelon::from_generators(width, e, boundary_columns.iter().cloned().chain(complex.relations(f.basis_size(n))));
    if !z.contains_lattice(&b) {
        return Err(Error::Malformed(format!("coboundaries of degree {n} are not cocycles; the presentation is not a complex")));
    }
    let quotient = LatticeQuotient::new(z, b);
    let invariant_factors: Vec<usize> = quotient.invariant_factors().iter().map(|&d| d as usize).collect();
    let representatives = (0..invariant_factors.len())
        .map(|j| {
            let mut class = vec![0; invariant_factors.len()];
            class[j] = 1;
            complex.to_values(&quotient.element(&class), f.basis_size(n))
        })
        .collect();
    let mut h = Fnv::new();
    (n, f, &theta.image, a).hash(&mut h);
    Ok(CohomologyGroup {
        degree: n,
        theta: theta.image.clone(),
        module: a.clone(),
        basis_size: f.basis_size(n),
        lower_basis_size: f.basis_size(n - 1),
        invariant_factors,
        representatives,
        complex,
        quotient,
        boundary_columns,
        key: h.finish(),
    })
}

impl CohomologyGroup {
    pub fn order(&self) -> u128 {
        self.invariant_factors.iter().map(|&d| d as u128).product()
    }

    fn vector(&self, values: &[usize]) -> Result<Vec<i64>> {
        if values.len() != self.basis_size || values.iter().any(|&x| x >= self.module.coeff.order()) {
            return Err(Error::Malformed(format!("a cochain needs {} values in the coefficient group", self.basis_size)));
        }
        Ok(self.complex.to_vector(values))
    }

    pub fn is_cocycle(&self, values: &[usize]) -> bool {
        self.vector(values).is_ok_and(|v| self.quotient.s.contains(&v))
    }

    pub fn class_of(&self, values: &[usize]) -> Result<CohomologyClass> {
        let v = self.vector(values)?;
        if !self.quotient.s.contains(&v) {
            return Err(Error::InvalidMorphism("the cochain is not a cocycle".into()));
        }
        Ok(CohomologyClass { coords: self.quotient.class_of(&v), ambient: self.key })
    }

    /// The canonical cocycle of a class: least in the fixed `(basis, coordinate)` order.
    pub fn representative(&self, class: &CohomologyClass) -> Result<Vec<usize>> {
        self.check(class)?;
        Ok(self.complex.to_values(&self.quotient.element(&class.coords), self.basis_size))
    }

    fn check(&self, class: &CohomologyClass) -> Result<()> {
        if class.ambient != self.key || class.coords.len() != self.invariant_factors.len() {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    pub fn zero(&self) -> CohomologyClass {
        CohomologyClass { coords: vec![0; self.invariant_factors.len()], ambient: self.key }
    }

    pub fn add(&self, a: &CohomologyClass, b: &CohomologyClass) -> Result<CohomologyClass> {
        self.check(a)?;
        self.check(b)?;
        let coords = a.coords.iter().zip(&b.coords).zip(&self.invariant_factors).map(|((x, y), &d)| (x + y) % d as i64).collect();
        Ok(CohomologyClass { coords, ambient: self.key })
    }

    pub fn negate(&self, a: &CohomologyClass) -> Result<CohomologyClass> {
        self.check(a)?;
        let coords = a.coords.iter().zip(&self.invariant_factors).map(|(x, &d)| (-x).rem_euclid(d as i64)).collect();
        Ok(CohomologyClass { coords, ambient: self.key })
    }

    /// Every class, in mixed-radix order.
    pub fn elements(&self) -> Vec<CohomologyClass> {
        let mut out = vec![Vec::new()];
        for &d in &self.invariant_factors {
            out = out.into_iter().flat_map(|v| (0..d as i64).map(move |x| [v.clone(), vec![x]].concat())).collect();
        }
        out.into_iter().map(|coords| CohomologyClass { coords, ambient: self.key }).collect()
    }

    /// Adds values pointwise in the coefficient group.
    pub fn add_cochains(&self, x: &[usize], y: &[usize]) -> Vec<usize> {
        x.iter().zip(y).map(|(&a, &b)| self.module.coeff.mul(a, b)).collect()
    }

    /// `D_n h` for a cochain `h` of degree `n - 1`.
    pub fn coboundary_of(&self, h: &[usize]) -> Vec<usize> {
        let hv = self.complex.to_vector(h);
        let e = self.complex.modulus();
        let width = self.basis_size * self.complex.rank();
        let v: Vec<i64> = (0..width).map(|i| self.boundary_columns.iter().zip(&hv).map(|(col, x)| col[i] * x).sum::<i64>().rem_euclid(e)).collect();
        self.complex.to_values(&v, self.basis_size)
    }

    /// Some `h` of degree `n - 1` with `y = x + D_n h`, if the cocycles are cohomologous.
    pub fn coboundary_witness(&self, x: &[usize], y: &[usize]) -> Result<Option<Vec<usize>>> {
        let (xv, yv) = (self.vector(x)?, self.vector(y)?);
        let diff: Vec<i64> = yv.iter().zip(&xv).map(|(a, b)| a - b).collect();
        let width = self.basis_size * self.complex.rank();
        let rel = Echelon::from_generators(width, self.complex.modulus(), self.complex.relations(self.basis_size));
        let solver = Solver::new(&self.boundary_columns, &rel);
        Ok(solver.solve(&diff).map(|h| self.complex.to_values(&h, self.lower_basis_size)))
    }

    /// All cocycles as value lists, in canonical order; errors past the search cap.
    pub fn cocycles(&self) -> Result<Vec<Vec<usize>>> {
        let width = self.basis_size * self.complex.rank();
        let rel = Echelon::from_generators(width, self.complex.modulus(), self.complex.relations(self.basis_size));
        let q = LatticeQuotient::new(self.quotient.s.clone(), rel);
        if q.order() > SEARCH_CAP {
            return Err(Error::SearchSpaceTooLarge { size: q.order(), cap: SEARCH_CAP });
        }
        let mut out = vec![Vec::new()];
        for d in q.invariant_factors() {
            out = out.into_iter().flat_map(|v| (0..d).map(move |x| [v.clone(), vec![x]].concat())).collect();
        }
        let mut cocycles: Vec<Vec<usize>> = out.iter().map(|c| self.complex.to_values(&q.element(c), self.basis_size)).collect();
        cocycles.sort();
        Ok(cocycles)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_algebra::presets::*;
    use crate::free_resolution::{cyclic_resolution, standard_resolution};
    use crate::oracle::bar_cocycle_cohomology;

    fn trivial(coeff: FiniteGroup, actor: &FiniteGroup) -> GModule {
        GModule::trivial_action(coeff, actor.clone()).unwrap()
    }

    #[test]
    fn coordinates_of_small_groups() {
        assert_eq!(CyclicCoords::new(&klein4()).unwrap().orders, vec![2, 2]);
        assert_eq!(CyclicCoords::new(&cyclic(6)).unwrap().orders, vec![6]);
        assert_eq!(CyclicCoords::new(&cyclic(2).direct_product(&cyclic(4))).unwrap().orders, vec![2, 4]);
        assert!(CyclicCoords::new(&FiniteGroup::trivial()).unwrap().orders.is_empty());
        assert!(CyclicCoords::new(&symmetric(3)).is_err());
    }

    #[test]
    fn c2_with_trivial_c2_coefficients() {
        let g = cyclic(2);
        let a = trivial(cyclic(2), &g);
        let id = GroupHom::identity(&g);
        let f = standard_resolution(&g, 4).unwrap();
        for n in [2, 3] {
            let h = cohomology_group(&f, &id, &a, n).unwrap();
            assert_eq!(h.invariant_factors, vec![2]);
            let x = h.elements()[1].clone();
            assert!(h.add(&x, &x).unwrap().is_zero());
            assert_eq!(h.class_of(&h.representative(&x).unwrap()).unwrap(), x);
        }
        let h2 = cohomology_group(&f, &id, &a, 2).unwrap();
        assert_eq!(h2.cocycles().unwrap().len(), 4);
    }

    #[test]
    fn inversion_on_c3_kills_h2() {
        let g = cyclic(2);
        let a = GModule::sign_action(cyclic(3), g.clone(), &[false, true]).unwrap();
        let f = standard_resolution(&g, 3).unwrap();
        assert_eq!(cohomology_group(&f, &GroupHom::identity(&g), &a, 2).unwrap().order(), 1);
    }

    #[test]
    fn depth_is_checked() {
        let g = cyclic(2);
        let f = standard_resolution(&g, 3).unwrap();
        let a = trivial(cyclic(2), &g);
        assert_eq!(
            cohomology_group(&f, &GroupHom::identity(&g), &a, 3).unwrap_err(),
            Error::DepthTooShallow { depth: 3, degree: 3 }
        );
    }

    #[test]
    fn classes_from_other_groups_are_rejected() {
        let g = cyclic(2);
        let f = standard_resolution(&g, 4).unwrap();
        let a = trivial(cyclic(2), &g);
        let h2 = cohomology_group(&f, &GroupHom::identity(&g), &a, 2).unwrap();
        let h3 = cohomology_group(&f, &GroupHom::identity(&g), &a, 3).unwrap();
        assert_eq!(h2.add(&h2.zero(), &h3.zero()), Err(Error::AmbientMismatch));
    }

    #[test]
    fn coboundaries_agree_with_group_cohomology() {
        // D_2 d = classical δd' with d'(g) = g·d(g) for the left action g·a = a^{g⁻¹}
        let g = symmetric(3);
        let sign: Vec<bool> = (0..6).map(|x| g.element_order(x) == 2).collect();
        let a = GModule::sign_action(cyclic(3), g.clone(), &sign).unwrap();
        let f = standard_resolution(&g, 3).unwrap();
        let h = cohomology_group(&f, &GroupHom::identity(&g), &a, 2).unwrap();
        let d: Vec<usize> = (0..6).map(|x| (x * 7 + 1) % 3).collect();
        let left = |x: usize, v: usize| a.act(v, g.inv(x));
        let dp: Vec<usize> = (0..6).map(|x| left(x, d[x])).collect();
        let m = &a.coeff;
        let classical: Vec<usize> = (0..36)
            .map(|i| {
                let (x, y) = (i / 6, i % 6);
                m.mul(m.mul(dp[x], left(x, dp[y])), m.inv(dp[g.mul(x, y)]))
            })
            .collect();
        assert_eq!(h.coboundary_of(&d), classical);
        let z = h.representative(&h.zero()).unwrap();
        assert_eq!(h.coboundary_witness(&z, &classical).unwrap().map(|w| h.coboundary_of(&w)), Some(classical.clone()));
    }

    #[test]
    fn agrees_with_the_bar_oracle() {
        let cases = [
            (cyclic(2), cyclic(2), vec![false, false]),
            (cyclic(2), cyclic(4), vec![false, true]),
            (cyclic(3), cyclic(3), vec![false, false, false]),
            (cyclic(2), klein4(), vec![false, false]),
        ];
        for (g, coeff, sign) in cases {
            let a = GModule::sign_action(coeff, g.clone(), &sign).unwrap();
            let f = standard_resolution(&g, 4).unwrap();
            for n in [2, 3] {
                let ours = cohomology_group(&f, &GroupHom::identity(&g), &a, n).unwrap();
                let oracle = bar_cocycle_cohomology(&g, &a, n).unwrap();
                assert_eq!(ours.invariant_factors, oracle.invariant_factors, "order {} degree {n}", g.order());
            }
        }
    }

    #[test]
    fn cyclic_and_standard_resolutions_agree() {
        for m in 2..=6 {
            let g = cyclic(m);
            let fc = cyclic_resolution(m, 4).unwrap();
            let fs = standard_resolution(&g, 4).unwrap();
            for coeff in [cyclic(2), cyclic(3), cyclic(4), klein4()] {
                let a = trivial(coeff, &g);
                for n in [2, 3] {
                    let id = GroupHom::identity(&g);
                    let x = cohomology_group(&fc, &id, &a, n).unwrap();
                    let y = cohomology_group(&fs, &id, &a, n).unwrap();
                    assert_eq!(x.invariant_factors, y.invariant_factors, "C{m} degree {n}");
                }
            }
        }
    }
}
