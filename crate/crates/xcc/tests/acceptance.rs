//! One PASS/FAIL line per acceptance criterion. Runs without the libtest harness
//! so the lines show up in plain `cargo test` output.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use xcc_core::corpus::{fibration_corpus, morphism_corpus, small_groups, trivial_fibration_corpus};
use xcc_core::crossed_complex::{aut_crossed_module, exact_sequence};
use xcc_core::extensions::{
    canonical_factor_set, classify_extensions, obstruction_class, obstruction_from_lift, AbstractKernel, ExtensionClassification, FactorSet,
};
use xcc_core::finite_algebra::presets::*;
use xcc_core::finite_algebra::{automorphism_group, enumerate_homs};
use xcc_core::free_resolution::{
    boundary_composite_failure, check_morphism, cyclic_resolution, lift_through_trivial_fibration, rlp_check, standard_resolution, MorphismAssignment,
};
use xcc_core::hom_homotopy::cohomology_group;
use xcc_core::oracle::{bar_cocycle_cohomology, brute_force_factor_sets, find_factor_set, OracleReport};
use xcc_core::{FiniteGroup, GModule, GroupHom};

const LIMIT_C1: Duration = Duration::from_secs(1);
const LIMIT_C2: Duration = Duration::from_secs(1);
const LIMIT_C3: Duration = Duration::from_secs(5);
const LIMIT_C5: Duration = Duration::from_secs(60);
const LIMIT_C11: Duration = Duration::from_secs(600);
const ORACLE_CANDIDATES_C3: u128 = 1024;
const LIFT_INSTANCES: u64 = 100;
const LIFT_RECHOICES: usize = 20;
const FACTOR_SEARCH_NODES: u128 = 1 << 26;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.2?}, limit {limit:?}"))?;
    Ok(t)
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Extension names, sorted.
fn names(c: &ExtensionClassification) -> Vec<&str> {
    let mut out: Vec<&str> = c.classes.iter().map(|e| e.name.as_str()).collect();
    out.sort();
    out
}

fn oracle_partition(c: &ExtensionClassification) -> Result<OracleReport, String> {
    let kernel = &c.kernel;
    let report = brute_force_factor_sets(&kernel.k, &kernel.g, &kernel.psi_reps()).map_err(err)?;
    let mine: BTreeSet<FactorSet> = c.classes.iter().map(|e| e.factor_set.clone()).collect();
    let theirs = report
        .factor_sets
        .iter()
        .map(|o| canonical_factor_set(kernel, &FactorSet::from_maps(kernel, &o.phi, o.f.clone())?))
        .collect::<Result<BTreeSet<_>, _>>()
        .map_err(err)?;
    ensure(report.classes == c.classes.len() && mine == theirs, || {
        format!("oracle has {} classes, classification {}", report.classes, c.classes.len())
    })?;
    Ok(report)
}

/// Every module structure on `a` over `q`, one per homomorphism `q → Aut(a)`.
fn all_modules(a: &FiniteGroup, q: &FiniteGroup) -> Vec<GModule> {
    let aut = automorphism_group(a);
    enumerate_homs(q, &aut.aut)
        .into_iter()
        .map(|h| GModule::new(a.clone(), q.clone(), h.image.iter().map(|&x| aut.maps[x].clone()).collect()).unwrap())
        .collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let kernels = AbstractKernel::all(&cyclic(2), &cyclic(2)).map_err(err)?;
    ensure(kernels.len() == 1, || format!("{} abstract kernels", kernels.len()))?;
    let c = classify_extensions(&kernels[0]).map_err(err)?;
    ensure(names(&c) == ["C4", "klein4"], || format!("classes {:?}", names(&c)))?;
    oracle_partition(&c)?;
    let t = within(start, LIMIT_C1)?;
    Ok(format!("classes C4, klein4; oracle partition identical; {t:.2?}"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let kernel = AbstractKernel::all(&cyclic(3), &cyclic(2))
        .map_err(err)?
        .into_iter()
        .find(|k| k.psi.image.iter().any(|&x| x != 0))
        .ok_or("no nontrivial outer action")?;
    let c = classify_extensions(&kernel).map_err(err)?;
    ensure(c.obstruction.is_zero(), || "obstruction nonzero".into())?;
    ensure(names(&c) == ["S3"], || format!("classes {:?}", names(&c)))?;
    let t = within(start, LIMIT_C2)?;
    Ok(format!("obstruction 0; one class S3; {t:.2?}"))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let kernel = AbstractKernel::all(&cyclic(4), &cyclic(2))
        .map_err(err)?
        .into_iter()
        .find(|k| k.psi.image.iter().any(|&x| x != 0))
        .ok_or("no inversion kernel")?;
    let c = classify_extensions(&kernel).map_err(err)?;
    ensure(c.h2.invariant_factors == [2], || format!("H² factors {:?}", c.h2.invariant_factors))?;
    ensure(names(&c) == ["D4", "Q8"], || format!("classes {:?}", names(&c)))?;
    let n = c.classes.len();
    ensure(c.torsor.len() == n, || "torsor rows do not match H²".into())?;
    for i in 0..n {
        let orbit: BTreeSet<usize> = c.torsor.iter().map(|row| row[i]).collect();
        ensure(orbit.len() == n, || format!("action on class {i} is not free and transitive"))?;
    }
    ensure(c.torsor[1] == [1, 0], || format!("nonzero element acts as {:?}", c.torsor[1]))?;
    let report = oracle_partition(&c)?;
    ensure(report.candidates <= ORACLE_CANDIDATES_C3, || format!("{} oracle candidates", report.candidates))?;
    let t = within(start, LIMIT_C3)?;
    Ok(format!("H² ≅ Z/2; D4 ↔ Q8 exchanged; oracle agrees over {} candidates; {t:.2?}", report.candidates))
}

fn criterion_4() -> Outcome {
    let kernels = AbstractKernel::all(&symmetric(3), &cyclic(2)).map_err(err)?;
    for kernel in &kernels {
        let c = classify_extensions(kernel).map_err(err)?;
        ensure(c.obstruction.h3.invariant_factors.is_empty(), || "H³ nontrivial".into())?;
        ensure(names(&c) == ["S3xC2"], || format!("classes {:?}", names(&c)))?;
    }
    Ok(format!("{} kernel(s), obstruction group 0, one class S3xC2 each", kernels.len()))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for g in [cyclic(2), cyclic(3)] {
        let f = standard_resolution(&g, 4).map_err(err)?;
        let id = GroupHom::identity(&g);
        for a in [cyclic(2), cyclic(3), cyclic(4)] {
            for module in all_modules(&a, &g) {
                for n in 2..=3 {
                    let ours = cohomology_group(&f, &id, &module, n).map_err(err)?;
                    let oracle = bar_cocycle_cohomology(&g, &module, n).map_err(err)?;
                    ensure(ours.invariant_factors == oracle.invariant_factors, || {
                        format!("H^{n}(C{}, C{}) {:?} vs oracle {:?}", g.order(), a.order(), ours.invariant_factors, oracle.invariant_factors)
                    })?;
                    if g.order() == 2 && a.order() == 2 {
                        ensure(ours.invariant_factors == [2], || format!("H^{n}(C2, C2) = {:?}", ours.invariant_factors))?;
                    }
                    checked += 1;
                }
            }
        }
    }
    let t = within(start, LIMIT_C5)?;
    Ok(format!("{checked} (G, A, action, n) cases agree with bar cocycles; {t:.2?}"))
}

fn criterion_6() -> Outcome {
    let mut checked = 0;
    for m in 2..=6 {
        let g = cyclic(m);
        let standard = standard_resolution(&g, 4).map_err(err)?;
        let periodic = cyclic_resolution(m, 4).map_err(err)?;
        let id = GroupHom::identity(&g);
        for a in [FiniteGroup::trivial(), cyclic(2), cyclic(3), cyclic(4), klein4()] {
            for module in all_modules(&a, &g) {
                for n in 2..=3 {
                    let s = cohomology_group(&standard, &id, &module, n).map_err(err)?.invariant_factors;
                    let p = cohomology_group(&periodic, &id, &module, n).map_err(err)?.invariant_factors;
                    ensure(s == p, || format!("C{m}, |A| = {}, n = {n}: standard {s:?}, cyclic {p:?}", a.order()))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} cases over C2..C6 agree"))
}

fn criterion_7() -> Outcome {
    let corpus = trivial_fibration_corpus().map_err(err)?;
    let sources = [cyclic(2), cyclic(3), cyclic(4), klein4(), symmetric(3)];
    for seed in 0..LIFT_INSTANCES {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (name, p) = &corpus[rng.gen_range(0..corpus.len())];
        let source = &sources[rng.gen_range(0..sources.len())];
        let f = standard_resolution(source, 3).map_err(err)?;
        let q = p.target.c1.vertex_group(0).0;
        let homs = enumerate_homs(source, &q);
        let h = &homs[rng.gen_range(0..homs.len())];
        let mut fmap = MorphismAssignment::unset(&f, vec![0]);
        fmap.values[0] = f.phi.iter().map(|&x| h.apply(x)).collect();
        for n in 2..=3 {
            fmap.values[n - 1].iter_mut().for_each(|v| *v = 0);
        }
        check_morphism(&f, &p.target, &fmap).map_err(err)?;
        let g = lift_through_trivial_fibration(&f, &fmap, p).map_err(|e| format!("seed {seed}, {name}: {e}"))?;
        check_morphism(&f, &p.source, &g).map_err(|e| format!("seed {seed}, {name}: lift is not a morphism: {e}"))?;
        ensure(g.then(p) == fmap, || format!("seed {seed}, {name}: p∘g ≠ f"))?;
    }
    Ok(format!("{LIFT_INSTANCES} seeded instances lifted exactly over {} fibrations", corpus.len()))
}

fn criterion_8() -> Outcome {
    let corpus = morphism_corpus().map_err(err)?;
    let mut trivial = 0;
    for (name, p) in &corpus {
        let verdict = p.is_trivial_fibration().holds;
        let mut rlp = true;
        for n in 0..=p.dim() + 1 {
            rlp &= rlp_check(p, n).map_err(err)?.holds;
        }
        ensure(verdict == rlp, || format!("{name}: trivial fibration {verdict}, lifting property {rlp}"))?;
        trivial += verdict as usize;
    }
    Ok(format!("{} morphisms, {trivial} trivial fibrations, zero disagreements", corpus.len()))
}

fn criterion_9() -> Outcome {
    let corpus = fibration_corpus().map_err(err)?;
    ensure(corpus.iter().any(|(name, _)| name.starts_with("xi AUT(C3)")), || "corpus lacks the ξ → ζ fibration".into())?;
    let mut positions = 0;
    for (name, p) in &corpus {
        for base in 0..p.target.objects() {
            let r = exact_sequence(p, base).map_err(err)?;
            ensure(r.all_hold(), || format!("{name} at base {base}: {r:?}"))?;
            positions += r.exactness.len();
        }
    }
    Ok(format!("{} fibrations, exact at all {positions} positions, i₁ CM1/CM2 and (a)–(c) hold", corpus.len()))
}

fn compatible_pair(kernel: &AbstractKernel, depth: usize, rng: &mut ChaCha8Rng) -> Result<(Vec<usize>, Vec<Vec<usize>>, MorphismAssignment), String> {
    let n = kernel.g.order();
    let f = standard_resolution(&kernel.g, depth).map_err(err)?;
    let phi: Vec<usize> = (0..n)
        .map(|x| {
            let c = kernel.phi_choices(x);
            c[rng.gen_range(0..c.len())]
        })
        .collect();
    let fs: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    let c = kernel.f_choices(&phi, x, y);
                    c[rng.gen_range(0..c.len())]
                })
                .collect()
        })
        .collect();
    let mut m = MorphismAssignment::unset(&f, vec![0]);
    m.values[0] = phi.clone();
    m.values[1] = fs.iter().flatten().copied().collect();
    Ok((phi, fs, m))
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let groups = small_groups(8);
    for (name, g) in &groups {
        let f = standard_resolution(g, 4).map_err(err)?;
        f.validate().map_err(|e| format!("{name}: {e}"))?;
        for k in [cyclic(2), cyclic(3), symmetric(3)] {
            for kernel in AbstractKernel::all(&k, g).map_err(err)? {
                let (_, _, m) = compatible_pair(&kernel, 4, &mut rng)?;
                let fail = boundary_composite_failure(&f, &kernel.complex, &m).map_err(err)?;
                ensure(fail.is_none(), || format!("{name}: δδ nontrivial at {fail:?}"))?;
            }
        }
    }
    let mut presets: Vec<FiniteGroup> = (1..=12).map(cyclic).chain((3..=6).map(dihedral)).chain((2..=4).map(symmetric)).collect();
    presets.extend([FiniteGroup::trivial(), klein4(), quaternion8(), alternating4(), dicyclic(3), dicyclic(4)]);
    for k in &presets {
        aut_crossed_module(k).validate().map_err(|e| format!("AUT of a group of order {}: {e}", k.order()))?;
    }
    let mut kernels = 0;
    for (_, k) in small_groups(6) {
        for (_, g) in small_groups(4) {
            for kernel in AbstractKernel::all(&k, &g).map_err(err)? {
                let base = obstruction_class(&kernel).map_err(err)?;
                for _ in 0..LIFT_RECHOICES {
                    let (phi, fs, _) = compatible_pair(&kernel, 3, &mut rng)?;
                    let again = obstruction_from_lift(&kernel, &phi, &fs).map_err(err)?;
                    ensure(again.class == base.class, || format!("kernel ψ = {:?}: obstruction depends on the lift", kernel.psi.image))?;
                }
                kernels += 1;
            }
        }
    }
    Ok(format!(
        "δδ trivial for {} groups at depth 4; CM1/CM2 for {} AUT complexes; obstruction stable over {LIFT_RECHOICES} lifts for {kernels} kernels",
        groups.len(),
        presets.len()
    ))
}

fn criterion_11() -> Outcome {
    let start = Instant::now();
    let mut kernels = Vec::new();
    for (kname, k) in small_groups(8) {
        for (gname, g) in small_groups(4) {
            for kernel in AbstractKernel::all(&k, &g).map_err(err)? {
                kernels.push((format!("{kname} by {gname}, ψ = {:?}", kernel.psi.image), kernel));
            }
        }
    }
    let results: Vec<(String, bool, bool)> = kernels
        .par_iter()
        .map(|(label, kernel)| {
            let ob = obstruction_class(kernel).map_err(err)?;
            let found = find_factor_set(&kernel.k, &kernel.g, &kernel.psi_reps(), FACTOR_SEARCH_NODES).map_err(err)?;
            Ok((label.clone(), ob.is_zero(), found.is_some()))
        })
        .collect::<Result<_, String>>()?;
    let bad: Vec<&String> = results.iter().filter(|(_, z, f)| z != f).map(|(l, _, _)| l).collect();
    ensure(bad.is_empty(), || format!("obstruction and oracle disagree on {bad:?}"))?;
    let nonzero: Vec<&String> = results.iter().filter(|(_, z, _)| !z).map(|(l, _, _)| l).collect();
    let t = within(start, LIMIT_C11)?;
    Ok(format!("{} kernels agree; nonvanishing: {nonzero:?}; {t:.2?}", results.len()))
}

fn main() {
    if let Ok(n) = std::env::var("XCC_THREADS").map(|s| s.parse::<usize>().unwrap_or(0)) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("extensions of C2 by C2", criterion_1),
        ("extensions of C3 by C2, nontrivial action", criterion_2),
        ("extensions of C4 by C2, inversion", criterion_3),
        ("trivial-center rigidity, S3 by C2", criterion_4),
        ("cohomology against bar cocycles", criterion_5),
        ("resolution independence", criterion_6),
        ("lifting through trivial fibrations", criterion_7),
        ("trivial fibration ⟺ lifting property", criterion_8),
        ("exact sequence of a fibration", criterion_9),
        ("structural invariants", criterion_10),
        ("obstruction sweep", criterion_11),
    ];
    let mut failed = 0;
    for (i, (label, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {label}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {label}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
