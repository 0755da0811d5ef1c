//! Brute-force reference computations used only to cross-check the main
//! pipeline. Nothing here calls into the resolution, cohomology or extension
//! code; the only shared type is [`FiniteGroup`] (and [`GModule`] as plain data).

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::finite_algebra::{FiniteGroup, GModule};

/// Default cap on raw search-space sizes.
pub const SEARCH_CAP: u128 = 10_000_000;

/// A factor set as seen by the oracle: automorphisms as image arrays.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct OracleFactorSet {
    pub phi: Vec<Vec<usize>>,
    pub f: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleReport {
    pub instance: String,
    /// Number of raw candidates the search ranged over.
    pub candidates: u128,
    /// Number of candidates passing the defining identities.
    pub valid: usize,
    /// Number of equivalence classes (or the order of the cohomology group).
    pub classes: usize,
    pub invariant_factors: Vec<usize>,
    pub factor_sets: Vec<OracleFactorSet>,
    /// One canonical representative per class, as flat value arrays.
    pub representatives: Vec<Vec<usize>>,
    /// `true` when the normalized bar complex was used.
    pub normalized: bool,
    /// Filled in by callers that can measure time.
    pub runtime_ms: Option<u128>,
}

// ---------------------------------------------------------------- isomorphism

/// Searches for an isomorphism `e → e2` by backtracking over images of a
/// generating set. Returns the image array of a witness.
pub fn exhaustive_isomorphism(e: &FiniteGroup, e2: &FiniteGroup) -> Result<Option<Vec<usize>>> {
    if e.order() != e2.order() {
        return Err(Error::OrderMismatch(e.order(), e2.order()));
    }
    let gens = e.generators();
    let mut imgs = vec![0usize; gens.len()];
    fn extend(e: &FiniteGroup, e2: &FiniteGroup, gens: &[usize], imgs: &[usize]) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; e.order()];
        map[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (&s, &t) in gens.iter().zip(imgs) {
                let y = e.mul(x, s);
                let v = e2.mul(map[x], t);
                if map[y] == usize::MAX {
                    map[y] = v;
                    queue.push_back(y);
                } else if map[y] != v {
                    return None;
                }
            }
        }
        Some(map)
    }
    fn rec(e: &FiniteGroup, e2: &FiniteGroup, gens: &[usize], depth: usize, imgs: &mut Vec<usize>) -> Option<Vec<usize>> {
        if depth == gens.len() {
            let map = extend(e, e2, gens, imgs)?;
            let mut seen = vec![false; e.order()];
            for &x in &map {
                if core::mem::replace(&mut seen[x], true) {
                    return None;
                }
            }
            let n = e.order();
            let ok = (0..n).all(|a| (0..n).all(|b| map[e.mul(a, b)] == e2.mul(map[a], map[b])));
            return ok.then_some(map);
        }
        let ord = e.element_order(gens[depth]);
        for t in 0..e2.order() {
            if e2.element_order(t) != ord {
                continue;
            }
            imgs[depth] = t;
            if extend(e, e2, &gens[..=depth], &imgs[..=depth]).is_some() {
                if let Some(m) = rec(e, e2, gens, depth + 1, imgs) {
                    return Some(m);
                }
            }
        }
        None
    }
    Ok(rec(e, e2, &gens, 0, &mut imgs))
}

// ---------------------------------------------------------------- cohomology

/// `H^n(G, A)` by enumerating bar cochains. `A` carries a right action of
/// `G`; the classical left action is `g·a = a^{g⁻¹}`.
///
/// The unnormalized complex is used when `|A|^{|G|^n}` fits the cap, the
/// normalized one (cochains vanishing when an argument is the identity)
/// when only `|A|^{(|G|-1)^n}` does.
pub fn bar_cocycle_cohomology(g: &FiniteGroup, a: &GModule, n: usize) -> Result<OracleReport> {
    if !(2..=3).contains(&n) {
        return Err(Error::BadDimension(n));
    }
    if a.actor.order() != g.order() {
        return Err(Error::Malformed("module must be over the given group".into()));
    }
    let order_a = a.coeff.order() as u128;
    let full = pow_u128(order_a, (g.order() as u32).pow(n as u32));
    let normalized = if full <= SEARCH_CAP {
        false
    } else {
        let reduced = pow_u128(order_a, ((g.order() - 1) as u32).pow(n as u32));
        if reduced > SEARCH_CAP {
            return Err(Error::SearchSpaceTooLarge { size: full, cap: SEARCH_CAP });
        }
        true
    };
    let gn = g.order();
    let add = |x: usize, y: usize| a.coeff.mul(x, y);
    let neg = |x: usize| a.coeff.inv(x);
    let left = |q: usize, x: usize| a.act(x, g.inv(q));

    // tuples of G^k in lexicographic order; a cochain is a value per tuple
    let tuples = |k: usize| -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for _ in 0..k {
            out = out.into_iter().flat_map(|t| (0..gn).map(move |x| {
                let mut t = t.clone();
                t.push(x);
                t
            })).collect();
        }
        out
    };
    let index = |t: &[usize]| t.iter().fold(0usize, |acc, &x| acc * gn + x);
    let free_positions = |k: usize| -> Vec<usize> {
        tuples(k)
            .iter()
            .filter(|t| !normalized || t.iter().all(|&x| x != 0))
            .map(|t| index(t))
            .collect()
    };

    // coboundary of a (k)-cochain, k = n-1, as a cochain on G^n
    let coboundary = |c: &[usize], k: usize| -> Vec<usize> {
        let mut out = vec![0usize; gn.pow((k + 1) as u32)];
        for t in tuples(k + 1) {
            // Σ_{i=0}^{k+1} (-1)^i d_i
            let mut acc = left(t[0], c[index(&t[1..])]);
            for i in 1..=k {
                let mut merged: Vec<usize> = t[..i - 1].to_vec();
                merged.push(g.mul(t[i - 1], t[i]));
                merged.extend_from_slice(&t[i + 1..]);
                let v = c[index(&merged)];
                acc = if i % 2 == 1 { add(acc, neg(v)) } else { add(acc, v) };
            }
            let last = c[index(&t[..k])];
            acc = if (k + 1) % 2 == 1 { add(acc, neg(last)) } else { add(acc, last) };
            out[index(&t)] = acc;
        }
        out
    };

    // enumerate cochains on the free positions
    let enumerate = |k: usize, f: &mut dyn FnMut(&[usize])| {
        let positions = free_positions(k);
        let mut c = vec![0usize; gn.pow(k as u32)];
        let mut digits = vec![0usize; positions.len()];
        loop {
            for (p, &d) in positions.iter().zip(&digits) {
                c[*p] = d;
            }
            f(&c);
            let mut i = 0;
            loop {
                if i == digits.len() {
                    return;
                }
                digits[i] += 1;
                if digits[i] == a.coeff.order() {
                    digits[i] = 0;
                    i += 1;
                } else {
                    break;
                }
            }
        }
    };

    let mut cocycles: Vec<Vec<usize>> = Vec::new();
    enumerate(n, &mut |c: &[usize]| {
        if coboundary(c, n).iter().all(|&v| v == 0) {
            cocycles.push(c.to_vec());
        }
    });
    let mut boundaries: BTreeSet<Vec<usize>> = BTreeSet::new();
    enumerate(n - 1, &mut |c: &[usize]| {
        boundaries.insert(coboundary(c, n - 1));
    });
    let candidates = if normalized {
        pow_u128(order_a, ((gn - 1) as u32).pow(n as u32))
    } else {
        full
    };

    // quotient Z/B: classes keyed by their least element
    let add_vec = |x: &[usize], y: &[usize]| -> Vec<usize> { x.iter().zip(y).map(|(&p, &q)| add(p, q)).collect() };
    let mut class_of: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    let mut reps: BTreeSet<Vec<usize>> = BTreeSet::new();
    for z in &cocycles {
        if class_of.contains_key(z) {
            continue;
        }
        let coset: Vec<Vec<usize>> = boundaries.iter().map(|b| add_vec(z, b)).collect();
        let rep = coset.iter().min().unwrap().clone();
        for c in coset {
            class_of.insert(c, rep.clone());
        }
        reps.insert(rep);
    }
    let order = reps.len();
    // torsion counts |H[d]| determine the invariant factors
    let zero = vec![0usize; cocycles.first().map_or(0, |c| c.len())];
    let torsion = |d: usize| -> usize {
        reps.iter()
            .filter(|r| {
                let mut acc = zero.clone();
                for _ in 0..d {
                    acc = add_vec(&acc, r);
                }
                boundaries.contains(&acc)
            })
            .count()
    };
    let invariant_factors = invariant_factors_from_torsion(order, torsion);
    Ok(OracleReport {
        instance: format!("H^{n}(G of order {}, A of order {})", g.order(), a.coeff.order()),
        candidates,
        valid: cocycles.len(),
        classes: order,
        invariant_factors,
        representatives: reps.into_iter().collect(),
        normalized,
        ..Default::default()
    })
}

/// Invariant factors of an abelian group of the given order from the sizes
/// of its `d`-torsion subgroups.
fn invariant_factors_from_torsion(order: usize, torsion: impl Fn(usize) -> usize) -> Vec<usize> {
    let mut primes = Vec::new();
    let mut m = order;
    let mut p = 2;
    while m > 1 {
        if m.is_multiple_of(p) {
            primes.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    // cyclic p-power factors, largest first, per prime
    let mut factors_by_prime: Vec<Vec<usize>> = Vec::new();
    for &p in &primes {
        let mut logs = vec![0u32];
        let mut pk = p;
        loop {
            let t = torsion(pk);
            let l = t.ilog(p);
            if l == *logs.last().unwrap() {
                break;
            }
            logs.push(l);
            pk *= p;
        }
        // number of factors of order ≥ p^k is logs[k] - logs[k-1]
        let mut powers = Vec::new();
        let kmax = logs.len() - 1;
        for k in 1..=kmax {
            let at_least_k = logs[k] - logs[k - 1];
            let at_least_next = if k < kmax { logs[k + 1] - logs[k] } else { 0 };
            for _ in 0..(at_least_k - at_least_next) {
                powers.push(p.pow(k as u32));
            }
        }
        powers.sort_unstable_by(|a, b| b.cmp(a));
        factors_by_prime.push(powers);
    }
    let count = factors_by_prime.iter().map(|v| v.len()).max().unwrap_or(0);
    let mut out: Vec<usize> = (0..count)
        .map(|i| factors_by_prime.iter().map(|v| v.get(i).copied().unwrap_or(1)).product())
        .collect();
    out.sort_unstable();
    out
}

// ---------------------------------------------------------------- factor sets

struct KernelData {
    conj: Vec<Vec<usize>>,
    center: Vec<usize>,
    inner: Vec<Vec<usize>>,
}

fn kernel_data(k: &FiniteGroup) -> KernelData {
    let n = k.order();
    let conj: Vec<Vec<usize>> = (0..n).map(|c| (0..n).map(|x| k.mul(k.mul(k.inv(c), x), c)).collect()).collect();
    let center = (0..n).filter(|&c| (0..n).all(|x| k.mul(c, x) == k.mul(x, c))).collect();
    let inner: BTreeSet<Vec<usize>> = conj.iter().cloned().collect();
    KernelData { conj, center, inner: inner.into_iter().collect() }
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().map(|&x| b[x]).collect()
}

fn invert(a: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x] = i;
    }
    out
}

/// Candidate lifts per element of `G`: `φ(e) = id`, otherwise the coset of
/// the given representative modulo inner automorphisms.
fn phi_candidates(kd: &KernelData, g: &FiniteGroup, psi_reps: &[Vec<usize>]) -> Vec<Vec<Vec<usize>>> {
    (0..g.order())
        .map(|x| {
            if x == 0 {
                vec![(0..psi_reps[0].len()).collect()]
            } else {
                let mut c: Vec<Vec<usize>> = kd.inner.iter().map(|i| compose(i, &psi_reps[x])).collect();
                c.sort();
                c.dedup();
                c
            }
        })
        .collect()
}

/// Elements `c ∈ K` whose conjugation equals `target`.
fn conj_preimage(kd: &KernelData, target: &[usize]) -> Vec<usize> {
    (0..kd.conj.len()).filter(|&c| kd.conj[c] == target).collect()
}

fn cocycle_holds(k: &FiniteGroup, g: &FiniteGroup, phi: &[Vec<usize>], f: &[Vec<usize>], a: usize, b: usize, c: usize) -> bool {
    // f(b,c)^{φ(a)⁻¹} · f(a,bc) = f(a,b) · f(ab,c)
    let inv_a = invert(&phi[a]);
    let lhs = k.mul(inv_a[f[b][c]], f[a][g.mul(b, c)]);
    let rhs = k.mul(f[a][b], f[g.mul(a, b)][c]);
    lhs == rhs
}

/// All normalized-φ factor sets for the abstract kernel given by one
/// automorphism representative per element of `G`, partitioned into
/// equivalence classes by exhaustive search over `d ∈ K^G`.
pub fn brute_force_factor_sets(k: &FiniteGroup, g: &FiniteGroup, psi_reps: &[Vec<usize>]) -> Result<OracleReport> {
    let kd = kernel_data(k);
    let gn = g.order();
    let size = pow_u128(kd.center.len() as u128, (gn * gn) as u32) * pow_u128(kd.inner.len() as u128, gn as u32);
    if size > SEARCH_CAP {
        return Err(Error::SearchSpaceTooLarge { size, cap: SEARCH_CAP });
    }
    let phis = phi_candidates(&kd, g, psi_reps);
    let mut valid: Vec<OracleFactorSet> = Vec::new();
    let mut phi = vec![Vec::new(); gn];
    let mut candidates = 0u128;
    for_each_choice(&phis, &mut phi, 0, &mut |phi: &[Vec<usize>]| {
        // forced cosets for f
        let mut cosets: Vec<Vec<usize>> = Vec::with_capacity(gn * gn);
        for a in 0..gn {
            for b in 0..gn {
                let target = compose(&compose(&phi[a], &phi[b]), &invert(&phi[g.mul(a, b)]));
                let pre = conj_preimage(&kd, &target);
                if pre.is_empty() {
                    return;
                }
                cosets.push(pre);
            }
        }
        let mut flat = vec![0usize; gn * gn];
        for_each_choice(&cosets, &mut flat, 0, &mut |flat: &[usize]| {
            candidates += 1;
            let f: Vec<Vec<usize>> = flat.chunks(gn).map(|r| r.to_vec()).collect();
            let ok = (0..gn).all(|a| (0..gn).all(|b| (0..gn).all(|c| cocycle_holds(k, g, phi, &f, a, b, c))));
            if ok {
                valid.push(OracleFactorSet { phi: phi.to_vec(), f });
            }
        });
    });
    valid.sort();
    let position: BTreeMap<&OracleFactorSet, usize> = valid.iter().enumerate().map(|(i, fs)| (fs, i)).collect();
    let mut parent: Vec<usize> = (0..valid.len()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    let kn = k.order();
    let mut d = vec![0usize; gn];
    let d_choices: Vec<Vec<usize>> = (0..gn).map(|x| if x == 0 { kd.center.clone() } else { (0..kn).collect() }).collect();
    let mut moves: Vec<Vec<usize>> = Vec::new();
    for_each_choice(&d_choices, &mut d, 0, &mut |d: &[usize]| moves.push(d.to_vec()));
    for i in 0..valid.len() {
        for d in &moves {
            let moved = transform(k, g, &kd, &valid[i], d);
            let j = *position.get(&moved).expect("equivalent factor set must be valid");
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut reps: BTreeSet<usize> = BTreeSet::new();
    for i in 0..valid.len() {
        reps.insert(find(&mut parent, i));
    }
    let factor_sets: Vec<OracleFactorSet> = reps.iter().map(|&i| valid[i].clone()).collect();
    let representatives = factor_sets.iter().map(flatten).collect();
    Ok(OracleReport {
        instance: format!("factor sets for |K| = {}, |G| = {}", k.order(), g.order()),
        candidates,
        valid: valid.len(),
        classes: reps.len(),
        factor_sets,
        representatives,
        ..Default::default()
    })
}

/// Oracle equivalence move by `d: G → K` (section `s'(g) = s(g)·d(g)`).
fn transform(k: &FiniteGroup, g: &FiniteGroup, kd: &KernelData, fs: &OracleFactorSet, d: &[usize]) -> OracleFactorSet {
    let gn = g.order();
    let phi: Vec<Vec<usize>> = (0..gn).map(|x| compose(&fs.phi[x], &kd.conj[d[x]])).collect();
    let f = (0..gn)
        .map(|a| {
            (0..gn)
                .map(|b| {
                    let ab = g.mul(a, b);
                    let inner = k.mul(k.mul(fs.phi[b][d[a]], d[b]), k.inv(d[ab]));
                    k.mul(fs.f[a][b], invert(&fs.phi[ab])[inner])
                })
                .collect()
        })
        .collect();
    OracleFactorSet { phi, f }
}

fn flatten(fs: &OracleFactorSet) -> Vec<usize> {
    fs.phi.iter().flatten().chain(fs.f.iter().flatten()).copied().collect()
}

/// Existence search for one factor set, pruning on the cocycle identity as
/// soon as all entries it mentions are fixed. `node_cap` bounds the search.
pub fn find_factor_set(k: &FiniteGroup, g: &FiniteGroup, psi_reps: &[Vec<usize>], node_cap: u128) -> Result<Option<OracleFactorSet>> {
    let kd = kernel_data(k);
    let gn = g.order();
    let phis = phi_candidates(&kd, g, psi_reps);
    let mut phi_choice = vec![0usize; gn];
    let mut nodes = 0u128;
    // iterate φ choices
    loop {
        let phi: Vec<Vec<usize>> = (0..gn).map(|x| phis[x][phi_choice[x]].clone()).collect();
        let mut cosets: Vec<Vec<usize>> = Vec::with_capacity(gn * gn);
        let mut feasible = true;
        for a in 0..gn {
            for b in 0..gn {
                let target = compose(&compose(&phi[a], &phi[b]), &invert(&phi[g.mul(a, b)]));
                let pre = conj_preimage(&kd, &target);
                if pre.is_empty() {
                    feasible = false;
                }
                cosets.push(pre);
            }
        }
        if feasible {
            // identities (a,b,c) become checkable once the last of their four
            // entries (in flat order) has been assigned
            let mut checks: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); gn * gn];
            for a in 0..gn {
                for b in 0..gn {
                    for c in 0..gn {
                        let last = [b * gn + c, a * gn + g.mul(b, c), a * gn + b, g.mul(a, b) * gn + c].into_iter().max().unwrap();
                        checks[last].push((a, b, c));
                    }
                }
            }
            let mut f = vec![vec![usize::MAX; gn]; gn];
            if let Some(found) = search_f(k, g, &phi, &cosets, &checks, 0, &mut f, &mut nodes, node_cap)? {
                return Ok(Some(OracleFactorSet { phi, f: found }));
            }
        }
        let mut i = 0;
        loop {
            if i == gn {
                return Ok(None);
            }
            phi_choice[i] += 1;
            if phi_choice[i] == phis[i].len() {
                phi_choice[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn search_f(
    k: &FiniteGroup,
    g: &FiniteGroup,
    phi: &[Vec<usize>],
    cosets: &[Vec<usize>],
    checks: &[Vec<(usize, usize, usize)>],
    pos: usize,
    f: &mut Vec<Vec<usize>>,
    nodes: &mut u128,
    cap: u128,
) -> Result<Option<Vec<Vec<usize>>>> {
    let gn = g.order();
    if pos == gn * gn {
        return Ok(Some(f.clone()));
    }
    for &c in &cosets[pos] {
        *nodes += 1;
        if *nodes > cap {
            return Err(Error::SearchSpaceTooLarge { size: *nodes, cap });
        }
        f[pos / gn][pos % gn] = c;
        if checks[pos].iter().all(|&(a, b, cc)| cocycle_holds(k, g, phi, f, a, b, cc)) {
            if let Some(found) = search_f(k, g, phi, cosets, checks, pos + 1, f, nodes, cap)? {
                return Ok(Some(found));
            }
        }
    }
    f[pos / gn][pos % gn] = usize::MAX;
    Ok(None)
}

fn for_each_choice<T: Clone>(choices: &[Vec<T>], cur: &mut Vec<T>, depth: usize, f: &mut dyn FnMut(&[T])) {
    if depth == choices.len() {
        f(cur);
        return;
    }
    for c in &choices[depth] {
        cur[depth] = c.clone();
        for_each_choice(choices, cur, depth + 1, f);
    }
}

fn pow_u128(base: u128, exp: u32) -> u128 {
    base.saturating_pow(exp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_algebra::presets::*;

    fn identity_reps(k: &FiniteGroup, g: &FiniteGroup) -> Vec<Vec<usize>> {
        vec![(0..k.order()).collect(); g.order()]
    }

    #[test]
    fn isomorphism_basics() {
        assert!(exhaustive_isomorphism(&cyclic(4), &cyclic(4)).unwrap().is_some());
        assert!(exhaustive_isomorphism(&cyclic(4), &klein4()).unwrap().is_none());
        assert!(exhaustive_isomorphism(&dihedral(4), &quaternion8()).unwrap().is_none());
        assert_eq!(exhaustive_isomorphism(&cyclic(4), &cyclic(3)), Err(Error::OrderMismatch(4, 3)));
    }

    #[test]
    fn bar_cohomology_small_cases() {
        let c2 = cyclic(2);
        let triv = GModule::trivial_action(c2.clone(), c2.clone()).unwrap();
        let h2 = bar_cocycle_cohomology(&c2, &triv, 2).unwrap();
        assert_eq!((h2.candidates, h2.classes), (16, 2));
        assert_eq!(h2.invariant_factors, vec![2]);
        let h3 = bar_cocycle_cohomology(&c2, &triv, 3).unwrap();
        assert_eq!((h3.candidates, h3.classes), (256, 2));
        let inv = GModule::sign_action(cyclic(3), c2.clone(), &[false, true]).unwrap();
        let h = bar_cocycle_cohomology(&c2, &inv, 2).unwrap();
        assert_eq!((h.candidates, h.classes), (81, 1));
    }

    #[test]
    fn torsion_to_invariant_factors() {
        // Z/2 × Z/4: |H[2]| = 4, |H[4]| = 8
        let t = |d: usize| match d {
            2 => 4,
            4 => 8,
            _ => 8,
        };
        assert_eq!(invariant_factors_from_torsion(8, t), vec![2, 4]);
    }

    #[test]
    fn factor_set_oracle_counts() {
        let c2 = cyclic(2);
        let r = brute_force_factor_sets(&c2, &c2, &identity_reps(&c2, &c2)).unwrap();
        assert_eq!((r.candidates, r.classes), (16, 2));
        // C3 by C2 with inversion
        let c3 = cyclic(3);
        let reps = vec![vec![0, 1, 2], vec![0, 2, 1]];
        let r = brute_force_factor_sets(&c3, &c2, &reps).unwrap();
        assert_eq!((r.candidates, r.classes), (81, 1));
        // C4 by C2 with inversion
        let c4 = cyclic(4);
        let reps = vec![vec![0, 1, 2, 3], vec![0, 3, 2, 1]];
        let r = brute_force_factor_sets(&c4, &c2, &reps).unwrap();
        assert_eq!(r.candidates, 256);
        assert_eq!(r.classes, 2);
    }

    #[test]
    fn existence_search_finds_split_data() {
        let q8 = quaternion8();
        let c2 = cyclic(2);
        let found = find_factor_set(&q8, &c2, &identity_reps(&q8, &c2), SEARCH_CAP).unwrap();
        assert!(found.is_some());
    }
}
