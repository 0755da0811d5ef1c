//! Named complexes and morphisms accepted wherever a file is expected.
//!
//! Complexes: `em:<group>` for 𝕂(G,1), `aut:<group>` for AUT(K), `xi:<group>` and
//! `zeta:<group>` for the two ends of the split of AUT(K).
//! Morphisms: `identity:<complex>`, `pi1:<complex>` (the canonical map to
//! 𝕂(π₁,1)), `xi-zeta:<group>`, `quotient:<group>:<normal subgroup index>` for
//! 𝕂(G,1) → 𝕂(G/N,1), and `normal:<group>:<normal subgroup index>` for the
//! crossed module N → G mapped to 𝕂(G/N,1).

use std::path::Path;

use xcc_core::crossed_complex::{aut_crossed_module, em_complex, em_morphism, normal_subgroup_crossed_module, to_fundamental_group, xi_zeta_split, CrossedComplex, CrsMorphism};
use xcc_core::GroupHom;

use crate::error::CliError;
use crate::formats::{read_json, resolve_group, ComplexJson, MorphismJson};

pub fn resolve_complex(spec: &str, flag: &str) -> Result<CrossedComplex, CliError> {
    if let Some((kind, rest)) = spec.split_once(':') {
        let group = || resolve_group(rest, flag).map(|(_, g)| g);
        match kind {
            "em" => return Ok(em_complex(&group()?)),
            "aut" => return Ok(aut_crossed_module(&group()?)),
            "xi" => return Ok(xi_zeta_split(&aut_crossed_module(&group()?), 2)?.xi),
            "zeta" => return Ok(xi_zeta_split(&aut_crossed_module(&group()?), 2)?.zeta),
            _ => {}
        }
    }
    let path = Path::new(spec);
    if path.exists() {
        return read_json::<ComplexJson>(path, flag)?.to_complex();
    }
    Err(CliError::Usage(format!("{flag}: `{spec}` is neither a named complex nor a readable file")))
}

pub fn resolve_morphism(spec: &str, flag: &str) -> Result<CrsMorphism, CliError> {
    if let Some((kind, rest)) = spec.split_once(':') {
        match kind {
            "identity" => return Ok(CrsMorphism::identity(&resolve_complex(rest, flag)?)),
            "pi1" => return Ok(to_fundamental_group(&resolve_complex(rest, flag)?)?),
            "xi-zeta" => return Ok(xi_zeta_split(&aut_crossed_module(&resolve_group(rest, flag)?.1), 2)?.p),
            "quotient" | "normal" => {
                let (g, index) = rest.rsplit_once(':').ok_or_else(|| CliError::Usage(format!("{flag}: expected quotient:<group>:<index>")))?;
                let g = resolve_group(g, flag)?.1;
                let normals = g.normal_subgroups();
                let i: usize = index.parse().map_err(|_| CliError::Usage(format!("{flag}: `{index}` is not an index")))?;
                let n = normals
                    .get(i)
                    .ok_or_else(|| CliError::Usage(format!("{flag}: the group has {} normal subgroups", normals.len())))?;
                if kind == "normal" {
                    return Ok(to_fundamental_group(&normal_subgroup_crossed_module(&g, n)?)?);
                }
                let q = g.quotient(n);
                return Ok(em_morphism(&GroupHom::new(g.clone(), q.group, q.proj)?));
            }
            _ => {}
        }
    }
    let path = Path::new(spec);
    if path.exists() {
        return read_json::<MorphismJson>(path, flag)?.to_morphism();
    }
    Err(CliError::Usage(format!("{flag}: `{spec}` is neither a named morphism nor a readable file")))
}
