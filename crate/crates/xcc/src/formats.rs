//! JSON file formats.
//!
//! * group: `{"name": str, "order": n, "table": [[int; n]; n]}`, identity at index 0.
//! * homomorphism: `{"dom": group, "cod": group, "image": [int]}`.
//! * module: `{"coeff": group, "actor": group, "action": [[int]]}` with `action[q][a] = a^q`.
//! * groupoid: `{"objects": n, "ends": [[s, t]], "table": [[int | null]]}`.
//! * complex: `{"objects": [..], "dim": N, "levels": [{"n": 1, "groupoid": ..}, {"n": 2, "groups": [..], "boundary": [[..]], "action": [[..]]}, ..]}`.
//! * morphism: `{"source": complex, "target": complex, "objects": [..], "arrows": [..], "levels": [[[..]]]}`.
//! * factor set: `{"phi": [aut index per g], "f": [[k index per (g, h)]]}`.

use std::path::Path;

use serde::{Deserialize, Serialize};
use xcc_core::crossed_complex::{CrossedComplex, CrsMorphism, FiniteGroupoid, Level};
use xcc_core::extensions::FactorSet;
use xcc_core::finite_algebra::{catalogue, Preset};
use xcc_core::{FiniteGroup, GModule, GroupHom};

use crate::error::CliError;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupJson {
    #[serde(default)]
    pub name: String,
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

impl GroupJson {
    pub fn from_group(name: &str, g: &FiniteGroup) -> Self {
        GroupJson { name: name.to_string(), order: g.order(), table: g.table_rows() }
    }

    pub fn to_group(&self) -> Result<FiniteGroup, CliError> {
        if self.table.len() != self.order {
            return Err(CliError::Domain(xcc_core::Error::Malformed(format!("order {} but {} table rows", self.order, self.table.len()))));
        }
        Ok(FiniteGroup::from_table(&self.table)?)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct HomJson {
    pub dom: GroupJson,
    pub cod: GroupJson,
    pub image: Vec<usize>,
}

impl HomJson {
    pub fn to_hom(&self) -> Result<GroupHom, CliError> {
        Ok(GroupHom::new(self.dom.to_group()?, self.cod.to_group()?, self.image.clone())?)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ModuleJson {
    pub coeff: GroupJson,
    pub actor: GroupJson,
    pub action: Vec<Vec<usize>>,
}

impl ModuleJson {
    pub fn to_module(&self) -> Result<GModule, CliError> {
        Ok(GModule::new(self.coeff.to_group()?, self.actor.to_group()?, self.action.clone())?)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupoidJson {
    pub objects: usize,
    pub ends: Vec<(usize, usize)>,
    pub table: Vec<Vec<Option<usize>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct LevelJson {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub groupoid: Option<GroupoidJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub groups: Vec<GroupJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub boundary: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub action: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ComplexJson {
    pub objects: Vec<serde_json::Value>,
    pub dim: usize,
    pub levels: Vec<LevelJson>,
}

impl ComplexJson {
    pub fn from_complex(c: &CrossedComplex) -> Self {
        let g = &c.c1;
        let mut levels = vec![LevelJson {
            n: 1,
            groupoid: Some(GroupoidJson { objects: g.objects(), ends: (0..g.arrows()).map(|a| g.ends(a)).collect(), table: g.table_rows() }),
            groups: Vec::new(),
            boundary: Vec::new(),
            action: Vec::new(),
        }];
        for n in 2..=c.dim() {
            let l = c.level(n);
            levels.push(LevelJson {
                n,
                groupoid: None,
                groups: l.groups.iter().map(|g| GroupJson::from_group("", g)).collect(),
                boundary: l.boundary.clone(),
                action: l.action.clone(),
            });
        }
        ComplexJson { objects: (0..g.objects()).map(serde_json::Value::from).collect(), dim: c.dim(), levels }
    }

    pub fn to_complex(&self) -> Result<CrossedComplex, CliError> {
        let malformed = |m: String| CliError::Domain(xcc_core::Error::Malformed(m));
        let mut levels: Vec<&LevelJson> = self.levels.iter().collect();
        levels.sort_by_key(|l| l.n);
        let first = levels.first().filter(|l| l.n == 1).ok_or_else(|| malformed("missing level 1".into()))?;
        let gd = first.groupoid.as_ref().ok_or_else(|| malformed("level 1 needs a groupoid".into()))?;
        if gd.objects != self.objects.len() {
            return Err(malformed(format!("{} objects listed but the groupoid has {}", self.objects.len(), gd.objects)));
        }
        let c1 = FiniteGroupoid::new(gd.objects, gd.ends.clone(), &gd.table)?;
        let mut out = Vec::new();
        for (i, l) in levels[1..].iter().enumerate() {
            if l.n != i + 2 {
                return Err(malformed(format!("levels must be consecutive; found n = {}", l.n)));
            }
            let groups = l.groups.iter().map(GroupJson::to_group).collect::<Result<Vec<_>, _>>()?;
            out.push(Level { groups, boundary: l.boundary.clone(), action: l.action.clone() });
        }
        if out.len() + 1 != self.dim {
            return Err(malformed(format!("dim is {} but {} levels were given", self.dim, out.len() + 1)));
        }
        Ok(CrossedComplex::new(c1, out)?)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MorphismJson {
    pub source: ComplexJson,
    pub target: ComplexJson,
    pub objects: Vec<usize>,
    pub arrows: Vec<usize>,
    #[serde(default)]
    pub levels: Vec<Vec<Vec<usize>>>,
}

impl MorphismJson {
    pub fn from_morphism(p: &CrsMorphism) -> Self {
        MorphismJson {
            source: ComplexJson::from_complex(&p.source),
            target: ComplexJson::from_complex(&p.target),
            objects: p.objects.clone(),
            arrows: p.arrows.clone(),
            levels: p.levels.clone(),
        }
    }

    pub fn to_morphism(&self) -> Result<CrsMorphism, CliError> {
        Ok(CrsMorphism::new(self.source.to_complex()?, self.target.to_complex()?, self.objects.clone(), self.arrows.clone(), self.levels.clone())?)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FactorSetJson {
    pub phi: Vec<usize>,
    pub f: Vec<Vec<usize>>,
}

impl From<&FactorSet> for FactorSetJson {
    fn from(fs: &FactorSet) -> Self {
        FactorSetJson { phi: fs.phi.clone(), f: fs.f.clone() }
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path, flag: &str) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{flag}: cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{flag}: {} is not valid JSON for this input: {e}", path.display())))
}

/// A group from a preset name, a catalogue name (`S3xC2`, `A4`, ...) or a JSON file, in that order.
pub fn resolve_group(spec: &str, flag: &str) -> Result<(String, FiniteGroup), CliError> {
    if let Ok(p) = Preset::parse(spec) {
        return p.build().map(|g| (spec.to_string(), g)).map_err(|e| CliError::Usage(format!("{flag}: {e}")));
    }
    if let Some((name, g)) = catalogue().into_iter().find(|(name, _)| name.eq_ignore_ascii_case(spec)) {
        return Ok((name, g));
    }
    let path = Path::new(spec);
    if path.exists() {
        let json: GroupJson = read_json(path, flag)?;
        let name = if json.name.is_empty() { spec.to_string() } else { json.name.clone() };
        return Ok((name, json.to_group()?));
    }
    Err(CliError::Usage(format!("{flag}: `{spec}` is neither a preset nor a readable file")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use xcc_core::crossed_complex::{aut_crossed_module, xi_zeta_split};
    use xcc_core::finite_algebra::presets::*;

    #[test]
    fn complexes_round_trip() {
        let split = xi_zeta_split(&aut_crossed_module(&cyclic(3)), 2).unwrap();
        for c in [&split.xi, &split.zeta] {
            let json = serde_json::to_string(&ComplexJson::from_complex(c)).unwrap();
            let back: ComplexJson = serde_json::from_str(&json).unwrap();
            assert_eq!(&back.to_complex().unwrap(), c);
        }
        let m = MorphismJson::from_morphism(&split.p);
        assert_eq!(m.to_morphism().unwrap(), split.p);
    }

    #[test]
    fn groups_resolve_presets_first() {
        assert_eq!(resolve_group("cyclic4", "--group").unwrap().1, cyclic(4));
        assert_eq!(resolve_group("S3xC2", "--group").unwrap().1.order(), 12);
        assert!(matches!(resolve_group("nonsense", "--group"), Err(CliError::Usage(m)) if m.contains("--group")));
    }
}
