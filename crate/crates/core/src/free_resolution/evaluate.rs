use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::formal::{FormalCrossedElement, FormalModuleSum, FormalWord, FreeCrsPresentation};
use crate::crossed_complex::{CrossedComplex, CrsMorphism};
use crate::error::{Error, Result};

/// Marks a basis element that has not been assigned yet.
pub const UNSET: usize = usize::MAX;

/// Values of a morphism from a free crossed complex on its basis.
///
/// `values[n - 1][b]` is an arrow of the target for `n = 1` and an element
/// of `C_n(objects[0])` for `n ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MorphismAssignment {
    pub objects: Vec<usize>,
    pub values: Vec<Vec<usize>>,
}

impl MorphismAssignment {
    /// An assignment with every basis value unset.
    pub fn unset(f: &FreeCrsPresentation, objects: Vec<usize>) -> Self {
        MorphismAssignment { objects, values: f.basis.iter().map(|&k| vec![UNSET; k]).collect() }
    }

    pub fn value(&self, n: usize, b: usize) -> Result<usize> {
        match self.values.get(n - 1).and_then(|v| v.get(b)) {
            Some(&v) if v != UNSET => Ok(v),
            _ => Err(Error::MissingBasisValue { dim: n, index: b }),
        }
    }

    /// Post-composition with a morphism of crossed complexes.
    pub fn then(&self, p: &CrsMorphism) -> MorphismAssignment {
        let x = self.objects.first().copied().unwrap_or(0);
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, vals)| {
                let n = i + 1;
                vals.iter()
                    .map(|&v| match v {
                        UNSET => UNSET,
                        v if n == 1 => p.arrows[v],
                        v if n <= p.dim() => p.map(n, x, v),
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        MorphismAssignment { objects: self.objects.iter().map(|&y| p.objects[y]).collect(), values }
    }
}

fn base_object(m: &MorphismAssignment) -> usize {
    m.objects.first().copied().unwrap_or(0)
}

/// Size of `C_n(y)`, treating levels above the dimension as trivial.
pub(crate) fn level_order(c: &CrossedComplex, n: usize, y: usize) -> usize {
    if n <= c.dim() {
        c.group(n, y).order()
    } else {
        1
    }
}

/// Image of a word, starting at F-object `start`.
pub fn eval_word(_f: &FreeCrsPresentation, c: &CrossedComplex, m: &MorphismAssignment, w: &FormalWord, start: usize) -> Result<usize> {
    let mut acc = m.objects[start];
    for &(x, e) in &w.0 {
        let a = m.value(1, x)?;
        let a = if e > 0 { a } else { c.c1.inv(a) };
        acc = c.c1.compose(acc, a).ok_or_else(|| Error::InvalidMorphism(format!("word through generator {x} is not composable")))?;
    }
    Ok(acc)
}

/// Image of a crossed element in `C₂(objects[0])`.
pub fn eval_crossed(f: &FreeCrsPresentation, c: &CrossedComplex, m: &MorphismAssignment, e: &FormalCrossedElement) -> Result<usize> {
    let y = base_object(m);
    if c.dim() < 2 {
        for (w, b, _) in &e.0 {
            eval_word(f, c, m, w, 0)?;
            m.value(2, *b)?;
        }
        return Ok(0);
    }
    let g = c.group(2, y);
    let mut acc = 0;
    for (w, b, sign) in &e.0 {
        let arrow = eval_word(f, c, m, w, 0)?;
        let v = m.value(2, *b)?;
        let v = if *sign > 0 { v } else { g.inv(v) };
        acc = g.mul(acc, c.act(2, v, arrow));
    }
    Ok(acc)
}

/// Image of a module sum of dimension-`n` generators in `C_n(objects[0])`.
pub fn eval_module(f: &FreeCrsPresentation, c: &CrossedComplex, m: &MorphismAssignment, n: usize, s: &FormalModuleSum) -> Result<usize> {
    let y = base_object(m);
    if c.dim() < n {
        for &(_, b, _) in &s.0 {
            m.value(n, b)?;
        }
        return Ok(0);
    }
    let g = c.group(n, y);
    let mut acc = 0;
    for &(phi, b, k) in &s.0 {
        let arrow = eval_word(f, c, m, &f.phi_section[phi], 0)?;
        let v = c.act(n, m.value(n, b)?, arrow);
        acc = g.mul(acc, g.pow(v, k));
    }
    Ok(acc)
}

/// Image of `δ_n b` under the assignment: an arrow for `n = 2`, else an element of `C_{n-1}`.
pub fn eval_boundary(f: &FreeCrsPresentation, c: &CrossedComplex, m: &MorphismAssignment, n: usize, b: usize) -> Result<usize> {
    match n {
        2 => eval_word(f, c, m, &f.delta2[b], 0),
        3 => eval_crossed(f, c, m, &f.delta3[b]),
        _ => eval_module(f, c, m, n - 1, f.module_boundary(n, b)),
    }
}

/// `δ_n` in the target applied to `v ∈ C_n(y)`, with trivial levels above the dimension.
pub fn target_boundary(c: &CrossedComplex, n: usize, y: usize, v: usize) -> usize {
    if n <= c.dim() {
        c.boundary(n, y, v)
    } else if n == 2 {
        y
    } else {
        0
    }
}

/// Checks that an assignment extends to a morphism of crossed complexes.
pub fn check_morphism(f: &FreeCrsPresentation, c: &CrossedComplex, m: &MorphismAssignment) -> Result<()> {
    let bad = |msg: alloc::string::String| Err(Error::InvalidMorphism(msg));
    if m.objects.len() != f.objects || m.objects.iter().any(|&y| y >= c.objects()) {
        return bad("object assignment has the wrong shape".into());
    }
    if m.values.len() < f.depth() {
        let n = m.values.len() + 1;
        return Err(Error::MissingBasisValue { dim: n, index: 0 });
    }
    let y = base_object(m);
    for n in 1..=f.depth() {
        for b in 0..f.basis_size(n) {
            let v = m.value(n, b)?;
            if n == 1 {
                let (s, t) = f.ends[b];
                if v >= c.c1.arrows() || c.c1.ends(v) != (m.objects[s], m.objects[t]) {
                    return bad(format!("dimension-1 generator {b} is not sent between the images of its ends"));
                }
                continue;
            }
            if v >= level_order(c, n, y) {
                return bad(format!("value of dimension-{n} generator {b} is out of range"));
            }
            if eval_boundary(f, c, m, n, b)? != target_boundary(c, n, y, v) {
                return bad(format!("boundary of dimension-{n} generator {b} is not preserved"));
            }
        }
    }
    Ok(())
}

/// Evaluates `δ₂δ₃` and `δ₃δ₄` on every basis element using only the
/// dimension 1 and 2 values of `m`, which must satisfy `δ₂ m₂ = m₁ δ₂`.
///
/// Returns the first `(n, b)` whose composite is nontrivial.
pub fn boundary_composite_failure(f: &FreeCrsPresentation, c: &CrossedComplex, m: &MorphismAssignment) -> Result<Option<(usize, usize)>> {
    let y = base_object(m);
    for b in 0..f.basis_size(2) {
        if eval_word(f, c, m, &f.delta2[b], 0)? != target_boundary(c, 2, y, m.value(2, b)?) {
            return Err(Error::InvalidMorphism(format!("dimension-2 generator {b} is not sent compatibly")));
        }
    }
    if f.depth() >= 3 {
        for b in 0..f.basis_size(3) {
            if eval_word(f, c, m, &f.boundary_of_crossed(&f.delta3[b]), 0)? != y {
                return Ok(Some((3, b)));
            }
        }
    }
    if f.depth() >= 4 && c.dim() >= 2 {
        let g = c.group(2, y);
        for b in 0..f.basis_size(4) {
            let mut acc = 0;
            for &(phi, x, k) in &f.module_boundary(4, b).0 {
                let arrow = eval_word(f, c, m, &f.phi_section[phi], 0)?;
                let v = c.act(2, eval_crossed(f, c, m, &f.delta3[x])?, arrow);
                acc = g.mul(acc, g.pow(v, k));
            }
            if acc != 0 {
                return Ok(Some((4, b)));
            }
        }
    }
    Ok(None)
}

/// Class in `π₁(C, objects[0])` of the image of each element of `Φ`.
pub fn induced_theta(f: &FreeCrsPresentation, c: &CrossedComplex, m: &MorphismAssignment) -> Result<Vec<usize>> {
    let pi1 = c.fundamental_group(base_object(m));
    f.phi_section
        .iter()
        .map(|w| eval_word(f, c, m, w, 0).map(|a| pi1.class_of(a).expect("loops lie in the fundamental group")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossed_complex::{aut_crossed_module, em_complex};
    use crate::finite_algebra::presets::*;
    use crate::free_resolution::formal::{cyclic_resolution, standard_resolution};

    fn homomorphism_assignment(f: &FreeCrsPresentation, image: Vec<usize>) -> MorphismAssignment {
        let mut m = MorphismAssignment::unset(f, vec![0]);
        m.values[0] = image;
        for n in 2..=f.depth() {
            m.values[n - 1].iter_mut().for_each(|v| *v = 0);
        }
        m
    }

    #[test]
    fn homomorphisms_give_morphisms_into_em() {
        let g = cyclic(4);
        let f = standard_resolution(&g, 3).unwrap();
        let k = em_complex(&g);
        let m = homomorphism_assignment(&f, (0..4).map(|i| (2 * i) % 4).collect());
        check_morphism(&f, &k, &m).unwrap();
        let bad = homomorphism_assignment(&f, vec![0, 1, 1, 1]);
        assert!(matches!(check_morphism(&f, &k, &bad), Err(Error::InvalidMorphism(_))));
        assert_eq!(induced_theta(&f, &k, &m).unwrap(), vec![0, 2, 0, 2]);
    }

    #[test]
    fn missing_values_are_reported() {
        let f = cyclic_resolution(2, 3).unwrap();
        let k = em_complex(&cyclic(2));
        let mut m = MorphismAssignment::unset(&f, vec![0]);
        m.values[0][0] = 1;
        assert_eq!(check_morphism(&f, &k, &m), Err(Error::MissingBasisValue { dim: 2, index: 0 }));
    }

    #[test]
    fn cyclic_resolution_into_aut() {
        // x ↦ inversion on C3, a ↦ 0, b ↦ 0 is a morphism into AUT(C3)
        let f = cyclic_resolution(2, 3).unwrap();
        let aut = aut_crossed_module(&cyclic(3));
        let inversion = (1..aut.c1.arrows()).find(|&a| aut.c1.mul(a, a) == 0).unwrap();
        let mut m = homomorphism_assignment(&f, vec![inversion]);
        check_morphism(&f, &aut, &m).unwrap();
        m.values[1][0] = 1;
        assert!(check_morphism(&f, &aut, &m).is_err());
    }
}
