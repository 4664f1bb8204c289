//! The JSON group-datum document read by `validate`, `--datum`, and written by `presets show --json`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::coxeter::AffineCoxeterDatum;
use crate::datum::GroupDatum;
use crate::error::{Error, Result};
use crate::presets::Preset;
use crate::quiver::DiagramAutomorphism;
use crate::torus::{to_signed, TorusDatum};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDatumDocument {
    pub name: String,
    pub p: u64,
    pub reflections: Vec<String>,
    /// Coxeter matrix, `0` standing for infinity.
    pub coxeter: Vec<Vec<u32>>,
    pub zk_orders: Vec<u64>,
    /// Row `i` of `actions[s]` is the image of generator `i` under `s`.
    pub actions: BTreeMap<String, Vec<Vec<i64>>>,
    pub subgroups: BTreeMap<String, Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub automorphisms: Vec<AutomorphismDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomorphismDocument {
    pub perm: BTreeMap<String, String>,
    pub torus_map: Vec<Vec<i64>>,
}

impl GroupDatumDocument {
    /// Syntax and shape only; invariants are checked by [`GroupDatumDocument::build`].
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn from_datum(datum: &GroupDatum, automorphisms: &[DiagramAutomorphism]) -> Self {
        let cox = datum.coxeter();
        let torus = datum.torus();
        let table = |rows: &[Vec<u64>]| rows.iter().map(|r| to_signed(r)).collect::<Vec<_>>();
        let mut actions = BTreeMap::new();
        let mut subgroups = BTreeMap::new();
        for s in cox.reflections() {
            let label = cox.label(s).to_string();
            actions.insert(label.clone(), table(torus.action(s).expect("in range")));
            subgroups.insert(label, table(torus.subgroup(s).expect("in range")));
        }
        let automorphisms = automorphisms
            .iter()
            .map(|g| AutomorphismDocument {
                perm: cox
                    .reflections()
                    .map(|s| (cox.label(s).to_string(), cox.label(g.perm()[s.index()]).to_string()))
                    .collect(),
                torus_map: table(g.torus_map()),
            })
            .collect();
        GroupDatumDocument {
            name: datum.name().to_string(),
            p: datum.p(),
            reflections: cox.labels().to_vec(),
            coxeter: cox.codes(),
            zk_orders: torus.orders().to_vec(),
            actions,
            subgroups,
            automorphisms,
        }
    }

    pub fn from_preset(preset: &Preset) -> Self {
        Self::from_datum(&preset.datum, &preset.automorphisms)
    }

    /// Runs every datum invariant. Automorphisms are inverted by enumerating up to `bound` elements.
    pub fn build(&self, bound: u64) -> Result<(GroupDatum, Vec<DiagramAutomorphism>)> {
        let cox = AffineCoxeterDatum::from_codes(self.reflections.clone(), &self.coxeter)?;
        let per_label = |field: &str, map: &BTreeMap<String, Vec<Vec<i64>>>| -> Result<Vec<Vec<Vec<i64>>>> {
            if let Some(extra) = map.keys().find(|k| !self.reflections.contains(k)) {
                return Err(Error::UnknownReflection(format!("{extra} (in `{field}`)")));
            }
            self.reflections
                .iter()
                .map(|l| map.get(l).cloned().ok_or_else(|| Error::Torus(format!("`{field}` has no entry for {l}"))))
                .collect()
        };
        let actions = per_label("actions", &self.actions)?;
        let subgroups = per_label("subgroups", &self.subgroups)?;
        let torus = TorusDatum::new(self.p, self.zk_orders.clone(), actions, subgroups, &self.reflections)?;
        let datum = GroupDatum::new(self.name.clone(), cox, torus)?;
        let automorphisms = self
            .automorphisms
            .iter()
            .map(|a| {
                let perm = self
                    .reflections
                    .iter()
                    .map(|l| {
                        let image =
                            a.perm.get(l).ok_or_else(|| Error::Automorphism(format!("perm has no image for {l}")))?;
                        datum.reflection(image)
                    })
                    .collect::<Result<Vec<_>>>()?;
                if a.perm.len() != self.reflections.len() {
                    return Err(Error::Automorphism("perm names unknown reflections".into()));
                }
                DiagramAutomorphism::new(&datum, perm, a.torus_map.clone(), bound)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((datum, automorphisms))
    }
}
