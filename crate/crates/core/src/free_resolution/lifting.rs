use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::evaluate::{check_morphism, eval_boundary, level_order, target_boundary, MorphismAssignment};
use super::formal::{disc_sphere, FreeCrsPresentation, MAX_DEPTH};
use crate::crossed_complex::{CrossedComplex, CrsMorphism};
use crate::error::{Error, Result};

/// Image of `v ∈ E_n(x)` under `p`, with trivial levels above the dimension.
fn push(p: &CrsMorphism, n: usize, x: usize, v: usize) -> usize {
    match n {
        1 => p.arrows[v],
        _ if n <= p.dim() => p.map(n, x, v),
        _ => 0,
    }
}

fn mul(c: &CrossedComplex, n: usize, y: usize, a: usize, b: usize) -> usize {
    match n {
        1 => c.c1.mul(a, b),
        _ if n <= c.dim() => c.group(n, y).mul(a, b),
        _ => 0,
    }
}

fn inv(c: &CrossedComplex, n: usize, y: usize, a: usize) -> usize {
    match n {
        1 => c.c1.inv(a),
        _ if n <= c.dim() => c.group(n, y).inv(a),
        _ => 0,
    }
}

/// Lifts `f: F → B` through a trivial fibration `p: E → B`, one basis
/// element at a time, so that `p ∘ g = f`.
pub fn lift_through_trivial_fibration(f: &FreeCrsPresentation, fmap: &MorphismAssignment, p: &CrsMorphism) -> Result<MorphismAssignment> {
    let verdict = p.is_trivial_fibration();
    if !verdict.holds {
        return Err(Error::NotTrivialFibration(verdict.witness.unwrap_or_default()));
    }
    let (e, b) = (&p.source, &p.target);
    check_morphism(f, b, fmap)?;
    let stuck = |what: &str| Error::NotTrivialFibration(format!("no lift found for {what}"));

    let mut objects = Vec::with_capacity(f.objects);
    for a in 0..f.objects {
        let x = (0..e.objects()).find(|&x| p.objects[x] == fmap.objects[a]).ok_or_else(|| stuck("an object"))?;
        objects.push(x);
    }
    let mut g = MorphismAssignment::unset(f, objects);
    let x0 = g.objects.first().copied().unwrap_or(0);

    // Dimension 1: an arrow e with the right ends, corrected by a loop e₁
    // and a boundary δe₂ so that p(e₁ · δe₂ · e) = f(x).
    for x in 0..f.basis_size(1) {
        let (s, t) = f.ends[x];
        let (gs, gt) = (g.objects[s], g.objects[t]);
        let arrow = *e.c1.hom_set(gs, gt).first().ok_or_else(|| stuck("an arrow"))?;
        let fx = fmap.value(1, x)?;
        let ell = b.c1.mul(fx, b.c1.inv(p.arrows[arrow]));
        let fs = fmap.objects[s];
        let mut found = None;
        'search: for e1 in e.c1.hom_set(gs, gs) {
            for b2 in 0..level_order(b, 2, fs) {
                if b.c1.mul(p.arrows[e1], target_boundary(b, 2, fs, b2)) == ell {
                    found = Some((e1, b2));
                    break 'search;
                }
            }
        }
        let (e1, b2) = found.ok_or_else(|| stuck("a dimension-1 loop"))?;
        let e2 = (0..level_order(e, 2, gs)).find(|&v| push(p, 2, gs, v) == b2).ok_or_else(|| stuck("a dimension-2 element"))?;
        let value = e.c1.mul(e.c1.mul(e1, target_boundary(e, 2, gs, e2)), arrow);
        debug_assert_eq!(p.arrows[value], fx);
        g.values[0][x] = value;
    }

    // Dimension n ≥ 2: lift f(b) to eₙ, then correct by z ∈ ker p with δz = g(δb) · (δeₙ)⁻¹.
    for n in 2..=f.depth() {
        for bi in 0..f.basis_size(n) {
            let fb = fmap.value(n, bi)?;
            let en = (0..level_order(e, n, x0)).find(|&v| push(p, n, x0, v) == fb).ok_or_else(|| stuck("a level element"))?;
            let w = mul(e, n - 1, x0, eval_boundary(f, e, &g, n, bi)?, inv(e, n - 1, x0, target_boundary(e, n, x0, en)));
            let z = (0..level_order(e, n, x0))
                .find(|&z| push(p, n, x0, z) == 0 && target_boundary(e, n, x0, z) == w)
                .ok_or_else(|| stuck("a boundary correction"))?;
            g.values[n - 1][bi] = mul(e, n, x0, z, en);
        }
    }
    check_morphism(f, e, &g)?;
    Ok(g)
}

/// A commutative square from the sphere `𝕊(n−1) → E` and the disc `ℂ(n) → B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Square {
    pub n: usize,
    pub sphere: MorphismAssignment,
    pub disc: MorphismAssignment,
}

/// Outcome of a lifting-property check against `𝕊(n−1) → ℂ(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RlpReport {
    pub n: usize,
    pub squares: usize,
    pub holds: bool,
    /// First square without a diagonal filler.
    pub witness: Option<Square>,
}

/// Checks the right lifting property of `p` against the inclusion
/// `𝕊(n−1) → ℂ(n)` by enumerating every commutative square.
pub fn rlp_check(p: &CrsMorphism, n: usize) -> Result<RlpReport> {
    if n > MAX_DEPTH {
        return Err(Error::BadDimension(n));
    }
    let ds = disc_sphere(n)?;
    let (e, b) = (&p.source, &p.target);
    let mut squares = Vec::new();
    let mut lifts = Vec::new();
    let top = |lower: Vec<Vec<usize>>, v: usize| {
        let mut values = lower;
        values.push(vec![v]);
        values
    };
    match n {
        0 => {
            for y in 0..b.objects() {
                let sphere = MorphismAssignment { objects: Vec::new(), values: Vec::new() };
                let disc = MorphismAssignment { objects: vec![y], values: Vec::new() };
                squares.push(Square { n, sphere, disc });
                lifts.push((0..e.objects()).any(|x| p.objects[x] == y));
            }
        }
        1 => {
            for x0 in 0..e.objects() {
                for x1 in 0..e.objects() {
                    for beta in b.c1.hom_set(p.objects[x0], p.objects[x1]) {
                        let sphere = MorphismAssignment { objects: vec![x0, x1], values: Vec::new() };
                        let disc = MorphismAssignment { objects: vec![p.objects[x0], p.objects[x1]], values: vec![vec![beta]] };
                        squares.push(Square { n, sphere, disc });
                        lifts.push(e.c1.hom_set(x0, x1).into_iter().any(|a| p.arrows[a] == beta));
                    }
                }
            }
        }
        _ => {
            for x in 0..e.objects() {
                let y = p.objects[x];
                let cycles: Vec<usize> = if n == 2 {
                    e.c1.hom_set(x, x)
                } else {
                    (0..level_order(e, n - 1, x)).filter(|&z| target_boundary(e, n - 1, x, z) == 0).collect()
                };
                for z in cycles {
                    let pz = push(p, n - 1, x, z);
                    let mut lower = vec![Vec::new(); n - 2];
                    lower.push(vec![z]);
                    let mut lower_b = vec![Vec::new(); n - 2];
                    lower_b.push(vec![pz]);
                    for bv in (0..level_order(b, n, y)).filter(|&v| target_boundary(b, n, y, v) == pz) {
                        let sphere = MorphismAssignment { objects: vec![x], values: lower.clone() };
                        let disc = MorphismAssignment { objects: vec![y], values: top(lower_b.clone(), bv) };
                        squares.push(Square { n, sphere, disc });
                        lifts.push((0..level_order(e, n, x)).any(|v| push(p, n, x, v) == bv && target_boundary(e, n, x, v) == z));
                    }
                }
            }
        }
    }
    debug_assert!(squares.iter().all(|s| check_morphism(&ds.sphere, e, &s.sphere).is_ok() && check_morphism(&ds.disc, b, &s.disc).is_ok()));
    let failed = lifts.iter().position(|&ok| !ok);
    Ok(RlpReport { n, squares: squares.len(), holds: failed.is_none(), witness: failed.map(|i| squares.swap_remove(i)) })
}

/// Checks the lifting property in every dimension `0..=up_to`.
pub fn rlp_profile(p: &CrsMorphism, up_to: usize) -> Result<Vec<RlpReport>> {
    (0..=up_to).map(|n| rlp_check(p, n)).collect()
}
