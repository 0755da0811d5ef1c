//! Subcommand implementations. Each returns a JSON value and a text rendering.

use std::collections::BTreeSet;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use xcc_core::crossed_complex::{exact_sequence, CrsMorphism, TermKind};
use xcc_core::extensions::{canonical_factor_set, classify_extensions, obstruction_class, AbstractKernel, ExtensionClassification, FactorSet};
use xcc_core::finite_algebra::presets::cyclic;
use xcc_core::finite_algebra::{enumerate_homs, identify};
use xcc_core::free_resolution::{
    cyclic_resolution, lift_through_trivial_fibration, rlp_profile, standard_resolution, FormalCrossedElement, FormalModuleSum, FormalWord,
    FreeCrsPresentation,
};
use xcc_core::hom_homotopy::{cohomology_group, enumerate_morphisms, CohomologyGroup};
use xcc_core::oracle::{bar_cocycle_cohomology, brute_force_factor_sets, exhaustive_isomorphism, find_factor_set, OracleReport};
use xcc_core::{Error, FiniteGroup, GModule, GroupHom};

use crate::error::CliError;
use crate::formats::{read_json, resolve_group, FactorSetJson, HomJson, ModuleJson};
use crate::specs::{resolve_complex, resolve_morphism};

/// Node budget for the pruned factor-set search used in oracle checks.
pub const FACTOR_SEARCH_NODES: u128 = 1 << 26;

pub struct Output {
    pub json: Value,
    pub text: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Style {
    Standard,
    Cyclic,
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// `Z/2 ⊕ Z/4`, or `0` for the trivial group.
pub fn render_factors(factors: &[usize]) -> String {
    if factors.is_empty() {
        "0".into()
    } else {
        factors.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" ⊕ ")
    }
}

pub fn check_complex(spec: &str) -> Result<Output, CliError> {
    let c = resolve_complex(spec, "complex")?;
    let pi1: Vec<Value> = c
        .components()
        .into_iter()
        .map(|x| {
            let q = c.fundamental_group(x);
            json!({"object": x, "order": q.order(), "name": identify(&q.group)})
        })
        .collect();
    let homology = (2..=c.dim())
        .map(|n| c.homology(n, 0).map(|h| json!({"n": n, "order": h.order(), "name": identify(&h.group)})))
        .collect::<Result<Vec<_>, _>>()?;
    let mut text = format!("valid crossed complex: dimension {}, {} object(s), aspherical: {}\n", c.dim(), c.objects(), yes_no(c.is_aspherical()));
    for p in &pi1 {
        text += &format!("  π₁ at object {}: order {} ({})\n", p["object"], p["order"], p["name"].as_str().unwrap_or(""));
    }
    for h in &homology {
        text += &format!("  H_{} at object 0: order {}\n", h["n"], h["order"]);
    }
    let json = json!({
        "valid": true,
        "dim": c.dim(),
        "objects": c.objects(),
        "reduced": c.is_reduced(),
        "aspherical": c.is_aspherical(),
        "pi1": pi1,
        "homology": homology,
    });
    Ok(Output { json, text })
}

pub fn check_fibration(spec: &str, rlp: bool) -> Result<Output, CliError> {
    let p = resolve_morphism(spec, "morphism")?;
    let fib = p.is_fibration();
    let triv = p.is_trivial_fibration();
    let mut text = format!("fibration: {}, trivial: {}\n", yes_no(fib.holds), yes_no(triv.holds));
    for w in [&fib.witness, &triv.witness].into_iter().flatten() {
        text += &format!("  {w}\n");
    }
    let mut json = json!({
        "fibration": fib.holds,
        "fibration_witness": fib.witness,
        "trivial": triv.holds,
        "trivial_witness": triv.witness,
    });
    if rlp {
        let profile = rlp_profile(&p, p.dim() + 1)?;
        let holds: Vec<bool> = profile.iter().map(|r| r.holds).collect();
        text += &format!("lifting against sphere → disc, n = 0..={}: {}\n", p.dim() + 1, holds.iter().map(|&h| yes_no(h)).collect::<Vec<_>>().join(" "));
        json["rlp"] = json!(profile.iter().map(|r| json!({"n": r.n, "squares": r.squares, "holds": r.holds})).collect::<Vec<_>>());
    }
    Ok(Output { json, text })
}

pub fn exactseq(spec: &str, base: usize) -> Result<Output, CliError> {
    let p = resolve_morphism(spec, "morphism")?;
    let r = exact_sequence(&p, base)?;
    let mut text = String::new();
    for (i, t) in r.terms.iter().enumerate() {
        let kind = match t.kind {
            TermKind::Group => "group",
            TermKind::PointedSet => "pointed set",
        };
        text += &format!("{:<14} {:>4}  {kind}{}\n", t.label, t.size, t.name.as_ref().map(|n| format!(" {n}")).unwrap_or_default());
        if let Some(m) = r.maps.get(i) {
            text += &format!("    ↓ {}{}\n", m.label, if m.well_defined { "" } else { " (not well defined)" });
        }
    }
    for e in &r.exactness {
        text += &format!("exact at {}: {}\n", e.at, yes_no(e.exact));
    }
    text += &format!(
        "i₁ crossed module: {}, action of π₁(B) on π₀(F): {}, properties a/b/c: {}/{}/{}\n",
        yes_no(r.i1_cm1 && r.i1_cm2),
        yes_no(r.action_ii_well_defined && r.boundary_is_orbit),
        yes_no(r.property_a),
        yes_no(r.property_b),
        yes_no(r.property_c)
    );
    let json = json!({
        "base": r.base,
        "base_image": r.base_image,
        "terms": r.terms.iter().map(|t| json!({
            "label": t.label,
            "kind": match t.kind { TermKind::Group => "group", TermKind::PointedSet => "pointed_set" },
            "size": t.size,
            "name": t.name,
        })).collect::<Vec<_>>(),
        "maps": r.maps.iter().map(|m| json!({"label": m.label, "image": m.image, "well_defined": m.well_defined})).collect::<Vec<_>>(),
        "exactness": r.exactness.iter().map(|e| json!({"at": e.at, "exact": e.exact})).collect::<Vec<_>>(),
        "i1_cm1": r.i1_cm1,
        "i1_cm2": r.i1_cm2,
        "action_i": r.action_i,
        "action_ii": r.action_ii,
        "boundary_is_orbit": r.boundary_is_orbit,
        "property_a": r.property_a,
        "property_b": r.property_b,
        "property_c": r.property_c,
        "all_hold": r.all_hold(),
    });
    if !r.all_hold() {
        return Err(CliError::Domain(Error::InvalidMorphism(format!("exact sequence check failed:\n{text}"))));
    }
    Ok(Output { json, text })
}

fn subscript(n: usize) -> String {
    n.to_string().chars().map(|c| char::from_u32(0x2080 + c.to_digit(10).unwrap()).unwrap()).collect()
}

fn word_json(w: &FormalWord) -> Value {
    json!(w.0.iter().map(|&(g, e)| json!([g, e])).collect::<Vec<_>>())
}

fn crossed_json(c: &FormalCrossedElement) -> Value {
    json!(c.0.iter().map(|(w, g, e)| json!([word_json(w), g, e])).collect::<Vec<_>>())
}

fn module_json(s: &FormalModuleSum) -> Value {
    json!(s.0.iter().map(|&(p, g, c)| json!([p, g, c])).collect::<Vec<_>>())
}

fn presentation(group: &str, depth: usize, style: Style) -> Result<(String, FiniteGroup, FreeCrsPresentation), CliError> {
    let (name, g) = resolve_group(group, "--group")?;
    let f = match style {
        Style::Standard => standard_resolution(&g, depth)?,
        Style::Cyclic => {
            if g.order() < 2 || g != cyclic(g.order()) {
                return Err(CliError::Usage(format!("--resolution cyclic: `{group}` is not a cyclic preset of order at least 2")));
            }
            cyclic_resolution(g.order(), depth)?
        }
    };
    Ok((name, g, f))
}

pub fn resolution(group: &str, depth: usize, style: Style) -> Result<Output, CliError> {
    let (name, _, f) = presentation(group, depth, style)?;
    let higher: Vec<Value> = f.higher.iter().map(|level| json!(level.iter().map(module_json).collect::<Vec<_>>())).collect();
    let json = json!({
        "name": f.name,
        "group": name,
        "depth": f.depth(),
        "basis": f.basis,
        "phi": f.phi,
        "delta2": f.delta2.iter().map(word_json).collect::<Vec<_>>(),
        "delta3": f.delta3.iter().map(crossed_json).collect::<Vec<_>>(),
        "higher": higher,
    });
    let mut text = format!("{}\nbasis sizes by dimension: {:?}\n", f.name, f.basis);
    let show = |label: &str, items: Vec<String>| {
        let mut s = String::new();
        for (i, item) in items.iter().enumerate().take(4) {
            s += &format!("  {label}({i}) = {item}\n");
        }
        if items.len() > 4 {
            s += &format!("  … {} more\n", items.len() - 4);
        }
        s
    };
    text += &show("δ₂", f.delta2.iter().map(|w| word_json(w).to_string()).collect());
    text += &show("δ₃", f.delta3.iter().map(|c| crossed_json(c).to_string()).collect());
    for (i, level) in f.higher.iter().enumerate() {
        text += &show(&format!("δ{}", subscript(i + 4)), level.iter().map(|s| module_json(s).to_string()).collect());
    }
    Ok(Output { json, text })
}

/// Sign action through the first nontrivial homomorphism `Q → C₂`.
fn inversion_module(coeff: &FiniteGroup, q: &FiniteGroup) -> Result<GModule, CliError> {
    let sign = enumerate_homs(q, &cyclic(2))
        .into_iter()
        .find(|h| h.image.contains(&1))
        .ok_or_else(|| CliError::Usage("--action inversion: the acting group has no index-2 subgroup".into()))?;
    let flips: Vec<bool> = sign.image.iter().map(|&s| s == 1).collect();
    Ok(GModule::sign_action(coeff.clone(), q.clone(), &flips)?)
}

pub struct CohomologyArgs<'a> {
    pub group: &'a str,
    pub coeff: &'a str,
    pub action: &'a str,
    pub theta: &'a str,
    pub dim: usize,
    pub style: Style,
    pub verify: bool,
}

pub fn cohomology(args: &CohomologyArgs) -> Result<Output, CliError> {
    let (_, g, f) = presentation(args.group, args.dim + 1, args.style)?;
    let theta = if args.theta == "id" {
        GroupHom::identity(&g)
    } else {
        let hom = read_json::<HomJson>(Path::new(args.theta), "--theta")?.to_hom()?;
        if hom.dom != g {
            return Err(CliError::Usage("--theta: the domain must be the --group".into()));
        }
        hom
    };
    let q = theta.cod.clone();
    let (_, coeff) = resolve_group(args.coeff, "--coeff")?;
    let module = match args.action {
        "trivial" => GModule::trivial_action(coeff, q)?,
        "inversion" => inversion_module(&coeff, &q)?,
        path => {
            let m = read_json::<ModuleJson>(Path::new(path), "--action")?.to_module()?;
            if m.actor != q || m.coeff != coeff {
                return Err(CliError::Usage("--action: the module must be over the codomain of --theta with coefficients --coeff".into()));
            }
            m
        }
    };
    let h = cohomology_group(&f, &theta, &module, args.dim)?;
    let mut json = cohomology_json(&h);
    let mut text = format!("{}\n", render_factors(&h.invariant_factors));
    if args.verify {
        let oracle = bar_cocycle_cohomology(&g, &module.pullback(&g, &theta.image), args.dim)?;
        let agrees = oracle.invariant_factors == h.invariant_factors;
        json["oracle"] = json!({"invariant_factors": oracle.invariant_factors, "cocycles": oracle.valid, "agrees": agrees});
        if !agrees {
            return Err(CliError::Disagreement(format!(
                "cohomology {} but bar-cocycle oracle {}",
                render_factors(&h.invariant_factors),
                render_factors(&oracle.invariant_factors)
            )));
        }
        text += "oracle: agrees\n";
    }
    Ok(Output { json, text })
}

fn cohomology_json(h: &CohomologyGroup) -> Value {
    json!({
        "degree": h.degree,
        "invariant_factors": h.invariant_factors,
        "order": h.order().to_string().parse::<u64>().unwrap_or(u64::MAX),
        "representatives": h.representatives,
    })
}

fn select_kernels(kernel: &str, quotient: &str, outer: Option<usize>) -> Result<(String, String, Vec<(usize, AbstractKernel)>), CliError> {
    let (kname, k) = resolve_group(kernel, "--kernel")?;
    let (gname, g) = resolve_group(quotient, "--quotient")?;
    let all: Vec<(usize, AbstractKernel)> = AbstractKernel::all(&k, &g)?.into_iter().enumerate().collect();
    let count = all.len();
    let chosen = match outer {
        None => all,
        Some(i) => vec![all
            .into_iter()
            .nth(i)
            .ok_or_else(|| CliError::Usage(format!("--outer: there are {count} homomorphisms G → Out(K); {i} is out of range")))?],
    };
    Ok((kname, gname, chosen))
}

fn kernel_json(index: usize, kernel: &AbstractKernel) -> Value {
    json!({
        "outer": index,
        "psi": kernel.psi.image,
        "out_order": kernel.aut.out.order(),
        "center_order": kernel.center.embed.len(),
    })
}

fn classification_json(index: usize, c: &ExtensionClassification) -> Value {
    json!({
        "kernel": kernel_json(index, &c.kernel),
        "obstruction": {
            "zero": c.obstruction.is_zero(),
            "class": c.obstruction.class.coords,
            "h3_invariant_factors": c.obstruction.h3.invariant_factors,
        },
        "h2": {"invariant_factors": c.h2.invariant_factors, "order": c.h2.order() as u64},
        "classes": c.classes.iter().map(|e| json!({
            "factor_set": FactorSetJson::from(&e.factor_set),
            "extension": e.name,
            "order": e.extension.group.order(),
            "offset": e.offset.coords,
        })).collect::<Vec<_>>(),
        "class_count": c.classes.len(),
        "class_count_source": "H2 torsor",
        "torsor": c.torsor,
    })
}

/// Compares a classification with the oracle: the partition when enumeration fits
/// the cap, otherwise existence only.
fn oracle_check(c: &ExtensionClassification) -> Result<Value, CliError> {
    let kernel = &c.kernel;
    match brute_force_factor_sets(&kernel.k, &kernel.g, &kernel.psi_reps()) {
        Ok(report) => {
            let mine: BTreeSet<FactorSet> = c.classes.iter().map(|e| e.factor_set.clone()).collect();
            let theirs = report
                .factor_sets
                .iter()
                .map(|o| canonical_factor_set(kernel, &FactorSet::from_maps(kernel, &o.phi, o.f.clone())?))
                .collect::<Result<BTreeSet<_>, _>>()?;
            let agrees = mine == theirs && report.classes == c.classes.len();
            Ok(json!({"mode": "partition", "classes": report.classes, "valid_factor_sets": report.valid, "agrees": agrees}))
        }
        Err(Error::SearchSpaceTooLarge { .. }) => {
            let found = find_factor_set(&kernel.k, &kernel.g, &kernel.psi_reps(), FACTOR_SEARCH_NODES)?;
            Ok(json!({"mode": "existence", "exists": found.is_some(), "agrees": found.is_some() == !c.classes.is_empty()}))
        }
        Err(e) => Err(e.into()),
    }
}

pub fn extensions_classify(kernel: &str, quotient: &str, outer: Option<usize>, verify: bool) -> Result<Output, CliError> {
    let (kname, gname, kernels) = select_kernels(kernel, quotient, outer)?;
    let results: Vec<(usize, ExtensionClassification, Option<Value>)> = kernels
        .par_iter()
        .map(|(i, k)| {
            let c = classify_extensions(k)?;
            let oracle = if verify { Some(oracle_check(&c)?) } else { None };
            Ok((*i, c, oracle))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let mut text = format!("extensions of {kname} by {gname}: {} abstract kernel(s)\n", results.len());
    let mut reports = Vec::new();
    let mut disagreements = Vec::new();
    for (i, c, oracle) in &results {
        let names: Vec<&str> = c.classes.iter().map(|e| e.name.as_str()).collect();
        text += &format!("kernel {i}: ψ = {:?}\n", c.kernel.psi.image);
        if c.obstruction.is_zero() {
            text += &format!("  obstruction: 0 in H³ ≅ {}\n", render_factors(&c.obstruction.h3.invariant_factors));
        } else {
            text += &format!("  obstruction: nonzero, class {:?} in H³ ≅ {}\n", c.obstruction.class.coords, render_factors(&c.obstruction.h3.invariant_factors));
        }
        text += &format!("  H² ≅ {}\n  {} class(es): {}\n", render_factors(&c.h2.invariant_factors), c.classes.len(), names.join(", "));
        let mut report = classification_json(*i, c);
        if let Some(o) = oracle {
            text += &format!("  oracle ({}): {}\n", o["mode"].as_str().unwrap_or(""), if o["agrees"] == true { "agrees" } else { "DISAGREES" });
            if o["agrees"] != true {
                disagreements.push(*i);
            }
            report["oracle"] = o.clone();
        }
        reports.push(report);
    }
    if !disagreements.is_empty() {
        return Err(CliError::Disagreement(format!("oracle disagrees on kernel(s) {disagreements:?}\n{text}")));
    }
    let json = json!({"kernel": kname, "quotient": gname, "kernels": reports});
    Ok(Output { json, text })
}

pub fn obstruction(kernel: &str, quotient: &str, outer: usize, verify: bool) -> Result<Output, CliError> {
    let (kname, gname, kernels) = select_kernels(kernel, quotient, Some(outer))?;
    let (i, k) = &kernels[0];
    let ob = obstruction_class(k)?;
    let mut json = json!({
        "kernel": kname,
        "quotient": gname,
        "abstract_kernel": kernel_json(*i, k),
        "zero": ob.is_zero(),
        "class": ob.class.coords,
        "h3_invariant_factors": ob.h3.invariant_factors,
        "cocycle": ob.cocycle,
    });
    let mut text = format!(
        "obstruction of kernel {i} (ψ = {:?}): {} in H³ ≅ {}\n",
        k.psi.image,
        if ob.is_zero() { "0".to_string() } else { format!("{:?}", ob.class.coords) },
        render_factors(&ob.h3.invariant_factors)
    );
    if verify {
        let found = find_factor_set(&k.k, &k.g, &k.psi_reps(), FACTOR_SEARCH_NODES)?;
        let agrees = found.is_some() == ob.is_zero();
        json["oracle"] = json!({"factor_set_exists": found.is_some(), "agrees": agrees});
        if !agrees {
            return Err(CliError::Disagreement(format!("obstruction zero: {}, oracle found a factor set: {}", ob.is_zero(), found.is_some())));
        }
        text += "oracle: agrees\n";
    }
    Ok(Output { json, text })
}

fn oracle_json(r: &OracleReport) -> Value {
    json!({
        "instance": r.instance,
        "candidates": r.candidates.to_string(),
        "valid": r.valid,
        "classes": r.classes,
        "invariant_factors": r.invariant_factors,
        "representatives": r.representatives,
        "normalized": r.normalized,
    })
}

pub fn oracle_factor_sets(kernel: &str, quotient: &str, outer: usize) -> Result<Output, CliError> {
    let (_, _, kernels) = select_kernels(kernel, quotient, Some(outer))?;
    let k = &kernels[0].1;
    let r = brute_force_factor_sets(&k.k, &k.g, &k.psi_reps())?;
    let text = format!("{}: {} candidates, {} valid, {} classes\n", r.instance, r.candidates, r.valid, r.classes);
    Ok(Output { json: oracle_json(&r), text })
}

pub fn oracle_cohomology(group: &str, coeff: &str, action: &str, dim: usize) -> Result<Output, CliError> {
    let (_, g) = resolve_group(group, "--group")?;
    let (_, a) = resolve_group(coeff, "--coeff")?;
    let module = match action {
        "trivial" => GModule::trivial_action(a, g.clone())?,
        "inversion" => inversion_module(&a, &g)?,
        path => read_json::<ModuleJson>(Path::new(path), "--action")?.to_module()?,
    };
    let r = bar_cocycle_cohomology(&g, &module, dim)?;
    let text = format!("{} ({} cocycles)\n", render_factors(&r.invariant_factors), r.valid);
    Ok(Output { json: oracle_json(&r), text })
}

pub fn oracle_isomorphism(left: &str, right: &str) -> Result<Output, CliError> {
    let (_, a) = resolve_group(left, "--left")?;
    let (_, b) = resolve_group(right, "--right")?;
    let iso = match exhaustive_isomorphism(&a, &b) {
        Ok(w) => w,
        Err(Error::OrderMismatch(..)) => None,
        Err(e) => return Err(e.into()),
    };
    let text = format!("isomorphic: {}\n", yes_no(iso.is_some()));
    Ok(Output { json: json!({"isomorphic": iso.is_some(), "witness": iso}), text })
}

pub fn lift(fibration: &str, group: &str, depth: usize, seed: Option<u64>) -> Result<Output, CliError> {
    let seed = seed.unwrap_or_else(|| rand::thread_rng().gen());
    let p: CrsMorphism = resolve_morphism(fibration, "--fibration")?;
    let (_, g) = resolve_group(group, "--group")?;
    let f = standard_resolution(&g, depth)?;
    let maps = enumerate_morphisms(&f, &p.target, None)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fmap = &maps[rng.gen_range(0..maps.len())];
    let lifted = lift_through_trivial_fibration(&f, fmap, &p)?;
    let verified = &lifted.then(&p) == fmap;
    if !verified {
        return Err(CliError::Domain(Error::InvalidMorphism("the lift does not recover the given morphism".into())));
    }
    let text = format!(
        "seed: {seed}\nmorphism {} of {} into the base\nlift found; p ∘ g = f on every basis element: {}\n",
        maps.iter().position(|m| m == fmap).unwrap(),
        maps.len(),
        yes_no(verified)
    );
    let json = json!({"seed": seed, "morphism": fmap.values, "lift": lifted.values, "verified": verified});
    Ok(Output { json, text })
}
