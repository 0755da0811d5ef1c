//! The fibre of a fibration and its long exact sequence.
//!
//! Conventions for the bottom of the sequence: arrows compose left to right,
//! `∂₁(α)` is the fibre component reached by lifting `α` from the base
//! object, and `π₁(B, px)` acts on `π₀(F)` the same way from any object of
//! the fibre. Property (a) is checked as "`∂₁α = ∂₁β` iff `αβ⁻¹` lies in the
//! image of `p₁`", (b) and (c) with the base object `y = px`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::complex::{CrossedComplex, Level, Subquotient};
use super::groupoid::FiniteGroupoid;
use super::morphism::CrsMorphism;
use crate::error::{Error, Result};
use crate::finite_algebra::identify;

/// `p⁻¹(px)` with its inclusion into the total complex.
#[derive(Clone, Debug)]
pub struct Fibre {
    pub complex: CrossedComplex,
    pub inclusion: CrsMorphism,
    /// Index of the base object inside the fibre.
    pub base: usize,
}

pub fn fibre_subcomplex(p: &CrsMorphism, x: usize) -> Result<Fibre> {
    let verdict = p.is_fibration();
    if !verdict.holds {
        return Err(Error::NotAFibration(verdict.witness.unwrap_or_default()));
    }
    let e = &p.source;
    let y = p.objects[x];
    let objects: Vec<usize> = (0..e.objects()).filter(|&u| p.objects[u] == y).collect();
    let (c1, arrows) = e.c1.restrict(&objects, |a| p.arrows[a] == y)?;
    let arrow_pos = |a: usize| arrows.iter().position(|&b| b == a);
    let mut levels: Vec<Level> = Vec::new();
    let mut embeds: Vec<Vec<Vec<usize>>> = Vec::new();
    for n in 2..=e.dim() {
        let subs: Vec<_> = objects
            .iter()
            .map(|&u| {
                let kernel: Vec<usize> = (0..e.group(n, u).order()).filter(|&c| p.map(n, u, c) == 0).collect();
                e.group(n, u).subgroup(&kernel)
            })
            .collect();
        let boundary = objects
            .iter()
            .enumerate()
            .map(|(i, &u)| {
                subs[i]
                    .embed
                    .iter()
                    .map(|&c| {
                        let d = e.boundary(n, u, c);
                        if n == 2 {
                            arrow_pos(d).expect("boundary of a fibre element is a fibre loop")
                        } else {
                            embeds[n - 3][i].binary_search(&d).expect("boundary stays in the fibre")
                        }
                    })
                    .collect()
            })
            .collect();
        let action = arrows
            .iter()
            .enumerate()
            .map(|(fa, &a)| {
                let (s, t) = c1.ends(fa);
                subs[s].embed.iter().map(|&c| subs[t].position(e.act(n, c, a)).expect("action preserves the fibre")).collect()
            })
            .collect();
        embeds.push(subs.iter().map(|s| s.embed.clone()).collect());
        levels.push(Level { groups: subs.into_iter().map(|s| s.group).collect(), boundary, action });
    }
    let complex = CrossedComplex::new(c1, levels)?;
    let inclusion = CrsMorphism::new(complex.clone(), e.clone(), objects.clone(), arrows, embeds)?;
    let base = objects.iter().position(|&u| u == x).unwrap();
    Ok(Fibre { complex, inclusion, base })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TermKind {
    Group,
    PointedSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub label: String,
    pub kind: TermKind,
    pub size: usize,
    /// Isomorphism type for groups (`"unknown"` if not catalogued).
    pub name: Option<String>,
}

/// A map between consecutive terms; element 0 is the identity or base point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeqMap {
    pub label: String,
    pub image: Vec<usize>,
    /// Independent of the choices of representatives and lifts.
    pub well_defined: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exactness {
    pub at: String,
    pub exact: bool,
}

#[derive(Clone, Debug)]
pub struct ExactSequenceReport {
    pub base: usize,
    pub base_image: usize,
    pub fibre: Fibre,
    /// From the top homology of the fibre down to `π₀(B)`.
    pub terms: Vec<Term>,
    /// `maps[i]` goes from `terms[i]` to `terms[i + 1]`.
    pub maps: Vec<SeqMap>,
    pub exactness: Vec<Exactness>,
    /// `action_i[g][a]` is `a^g` for `g ∈ π₁(E, x)`, `a ∈ π₁(F, x)`.
    pub action_i: Vec<Vec<usize>>,
    pub action_i_well_defined: bool,
    pub i1_cm1: bool,
    pub i1_cm2: bool,
    /// `action_ii[α][u]` for `α ∈ π₁(B, px)`, `u ∈ π₀(F)`.
    pub action_ii: Vec<Vec<usize>>,
    pub action_ii_well_defined: bool,
    pub boundary_is_orbit: bool,
    pub property_a: bool,
    pub property_b: bool,
    pub property_c: bool,
}

impl ExactSequenceReport {
    pub fn exact(&self) -> bool {
        self.exactness.iter().all(|e| e.exact) && self.maps.iter().all(|m| m.well_defined)
    }

    /// Every verdict in the report holds.
    pub fn all_hold(&self) -> bool {
        self.exact()
            && self.action_i_well_defined
            && self.i1_cm1
            && self.i1_cm2
            && self.action_ii_well_defined
            && self.boundary_is_orbit
            && self.property_a
            && self.property_b
            && self.property_c
    }
}

fn group_term(label: String, q: &Subquotient) -> Term {
    Term { label, kind: TermKind::Group, size: q.order(), name: Some(identify(&q.group)) }
}

/// Components renumbered so that the component of `base` is 0.
fn pointed_components(g: &FiniteGroupoid, base: usize) -> (usize, Vec<usize>) {
    let comps = g.components();
    let count = g.component_count();
    let b = comps[base];
    let renumber = |c: usize| if c == b { 0 } else if c < b { c + 1 } else { c };
    (count, comps.into_iter().map(renumber).collect())
}

/// Collects the image of each class from all member choices, noting disagreement.
fn class_map(classes: usize, samples: impl Iterator<Item = (usize, usize)>) -> (Vec<usize>, bool) {
    let mut out = vec![usize::MAX; classes];
    let mut ok = true;
    for (class, value) in samples {
        if out[class] == usize::MAX {
            out[class] = value;
        } else if out[class] != value {
            ok = false;
        }
    }
    if out.contains(&usize::MAX) {
        ok = false;
        out.iter_mut().filter(|v| **v == usize::MAX).for_each(|v| *v = 0);
    }
    (out, ok)
}

fn exact_at(incoming: &[usize], outgoing: &[usize]) -> bool {
    let image: BTreeSet<usize> = incoming.iter().copied().collect();
    let kernel: BTreeSet<usize> = (0..outgoing.len()).filter(|&b| outgoing[b] == 0).collect();
    image == kernel
}

/// Computes every term and map of the exact sequence of `p` at `x`, and
/// checks exactness together with the extra structure at the bottom end.
pub fn exact_sequence(p: &CrsMorphism, x: usize) -> Result<ExactSequenceReport> {
    let fibre = fibre_subcomplex(p, x)?;
    let (e, b) = (&p.source, &p.target);
    let f = &fibre.complex;
    let inc = &fibre.inclusion;
    let (xf, y) = (fibre.base, p.objects[x]);
    let dim = e.dim();
    let mut terms = Vec::new();
    let mut maps = Vec::new();

    for n in (2..=dim).rev() {
        let (hf, he, hb) = (f.homology(n, xf)?, e.homology(n, x)?, b.homology(n, y)?);
        terms.push(group_term(format!("H_{n}(F)"), &hf));
        terms.push(group_term(format!("H_{n}(E)"), &he));
        terms.push(group_term(format!("H_{n}(B)"), &hb));
        let i_n = hf.reps.iter().map(|&r| he.class_of(inc.map(n, xf, r)).unwrap()).collect();
        maps.push(SeqMap { label: format!("i_{n}"), image: i_n, well_defined: true });
        let (_, _, p_n) = p.on_homology(n, x)?;
        maps.push(SeqMap { label: format!("p_{n}"), image: p_n, well_defined: true });
        // connecting map: lift a cycle and take its boundary
        let lifts = |bb: usize| (0..e.group(n, x).order()).filter(move |&c| p.map(n, x, c) == bb);
        let (image, ok) = if n >= 3 {
            let target = f.homology(n - 1, xf)?;
            let emb = &inc.levels[n - 3][xf];
            class_map(
                hb.order(),
                hb.members.iter().zip(&hb.class).flat_map(|(&bb, &cls)| {
                    lifts(bb).map(move |c| (cls, e.boundary(n, x, c)))
                }).map(|(cls, d)| (cls, emb.binary_search(&d).ok().and_then(|i| target.class_of(i)).unwrap_or(usize::MAX))),
            )
        } else {
            let target = f.fundamental_group(xf);
            class_map(
                hb.order(),
                hb.members.iter().zip(&hb.class).flat_map(|(&bb, &cls)| {
                    lifts(bb).map(move |c| (cls, e.boundary(2, x, c)))
                }).map(|(cls, d)| (cls, inc.arrows.iter().position(|&a| a == d).and_then(|i| target.class_of(i)).unwrap_or(usize::MAX))),
            )
        };
        maps.push(SeqMap { label: format!("∂_{n}"), image, well_defined: ok });
    }

    let (pf, pe, pb) = (f.fundamental_group(xf), e.fundamental_group(x), b.fundamental_group(y));
    terms.push(group_term("π₁(F)".into(), &pf));
    terms.push(group_term("π₁(E)".into(), &pe));
    terms.push(group_term("π₁(B)".into(), &pb));
    let i1: Vec<usize> = pf.reps.iter().map(|&r| pe.class_of(inc.arrows[r]).unwrap()).collect();
    maps.push(SeqMap { label: "i_1".into(), image: i1.clone(), well_defined: true });
    let (_, _, p1) = p.on_pi1(x);
    maps.push(SeqMap { label: "p_1".into(), image: p1.clone(), well_defined: true });

    let (nf, comp_f) = pointed_components(&f.c1, xf);
    let (ne, comp_e) = pointed_components(&e.c1, x);
    let (nb, comp_b) = pointed_components(&b.c1, y);
    let fibre_object = |u: usize| inc.objects.iter().position(|&v| v == u);

    // action of π₁(B, y) on π₀(F) by lifting loops from fibre objects
    let mut samples = Vec::new();
    for (&loop_b, &alpha) in pb.members.iter().zip(&pb.class) {
        for u in 0..f.objects() {
            let amb = inc.objects[u];
            for a in e.c1.star(amb) {
                if p.arrows[a] == loop_b {
                    let t = fibre_object(e.c1.target(a)).expect("lift ends in the fibre");
                    samples.push((alpha * nf + comp_f[u], comp_f[t]));
                }
            }
        }
    }
    let (flat, action_ii_well_defined) = class_map(pb.order() * nf, samples.into_iter());
    let action_ii: Vec<Vec<usize>> = flat.chunks(nf).map(|r| r.to_vec()).collect();

    let mut samples = Vec::new();
    for (&loop_b, &alpha) in pb.members.iter().zip(&pb.class) {
        for a in e.c1.star(x) {
            if p.arrows[a] == loop_b {
                samples.push((alpha, comp_f[fibre_object(e.c1.target(a)).unwrap()]));
            }
        }
    }
    let (d1, d1_ok) = class_map(pb.order(), samples.into_iter());
    maps.push(SeqMap { label: "∂_1".into(), image: d1.clone(), well_defined: d1_ok });

    let mut i_star = vec![0; nf];
    for u in 0..f.objects() {
        i_star[comp_f[u]] = comp_e[inc.objects[u]];
    }
    let mut p_star = vec![0; ne];
    for u in 0..e.objects() {
        p_star[comp_e[u]] = comp_b[p.objects[u]];
    }
    maps.push(SeqMap { label: "i_*".into(), image: i_star.clone(), well_defined: true });
    maps.push(SeqMap { label: "p_*".into(), image: p_star.clone(), well_defined: true });
    for (label, size) in [("π₀(F)", nf), ("π₀(E)", ne), ("π₀(B)", nb)] {
        terms.push(Term { label: label.into(), kind: TermKind::PointedSet, size, name: None });
    }

    let mut exactness = Vec::new();
    let top_kernel_trivial = maps[0].image.iter().filter(|&&v| v == 0).count() == 1;
    exactness.push(Exactness { at: terms[0].label.clone(), exact: top_kernel_trivial });
    for i in 1..terms.len() - 1 {
        exactness.push(Exactness { at: terms[i].label.clone(), exact: exact_at(&maps[i - 1].image, &maps[i].image) });
    }

    // crossed module structure on i₁ via conjugation
    let mut samples = Vec::new();
    let fibre_arrow = |a: usize| inc.arrows.iter().position(|&v| v == a);
    for (&g, &gc) in pe.members.iter().zip(&pe.class) {
        for (&a, &ac) in pf.members.iter().zip(&pf.class) {
            let conj = e.c1.mul(e.c1.mul(e.c1.inv(g), inc.arrows[a]), g);
            let value = fibre_arrow(conj).and_then(|fa| pf.class_of(fa)).unwrap_or(usize::MAX);
            samples.push((gc * pf.order() + ac, value));
        }
    }
    let (flat, action_i_well_defined) = class_map(pe.order() * pf.order(), samples.into_iter());
    let action_i: Vec<Vec<usize>> = flat.chunks(pf.order().max(1)).map(|r| r.to_vec()).collect();
    let (ge, gf) = (&pe.group, &pf.group);
    let i1_cm1 = (0..pe.order()).all(|g| (0..pf.order()).all(|a| i1[action_i[g][a]] == ge.conj(i1[a], g)));
    let i1_cm2 = (0..pf.order()).all(|a| (0..pf.order()).all(|c| action_i[i1[c]][a] == gf.conj(a, c)));

    let boundary_is_orbit = (0..pb.order()).all(|alpha| d1[alpha] == action_ii[alpha][0]);
    let im_p1: BTreeSet<usize> = p1.iter().copied().collect();
    let gb = &pb.group;
    let property_a = (0..pb.order())
        .all(|a| (0..pb.order()).all(|c| (d1[a] == d1[c]) == im_p1.contains(&gb.mul(a, gb.inv(c)))));
    let property_b = (0..nf).all(|u| {
        (0..nf).all(|v| (i_star[u] == i_star[v]) == (0..pb.order()).any(|alpha| action_ii[alpha][u] == v))
    });
    let image_i: BTreeSet<usize> = i_star.iter().copied().collect();
    let fibre_of_base: BTreeSet<usize> = (0..ne).filter(|&c| p_star[c] == 0).collect();
    let property_c = image_i == fibre_of_base;

    Ok(ExactSequenceReport {
        base: x,
        base_image: y,
        fibre,
        terms,
        maps,
        exactness,
        action_i,
        action_i_well_defined,
        i1_cm1,
        i1_cm2,
        action_ii,
        action_ii_well_defined,
        boundary_is_orbit,
        property_a,
        property_b,
        property_c,
    })
}
