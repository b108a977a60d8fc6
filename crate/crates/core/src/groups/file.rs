//! JSON group definitions: element labels, multiplication table and irrep
//! matrices. Built-in groups export to the same format.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{FiniteGroup, Irrep};
use crate::error::GroupError;
use crate::exact_arith::{FieldScalar, Rational};
use crate::polyalg::Matrix;

/// Matrix entry: the four-component field form, or a bare rational/integer.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntryJson {
    Field(FieldScalar),
    Rational(String),
    Int(i64),
}

impl EntryJson {
    fn value(&self) -> Result<FieldScalar, GroupError> {
        match self {
            EntryJson::Field(f) => Ok(f.clone()),
            EntryJson::Int(n) => Ok(FieldScalar::from_int(*n)),
            EntryJson::Rational(s) => s
                .parse::<Rational>()
                .map(FieldScalar::from)
                .map_err(|e| GroupError::InvalidGroup(e.to_string())),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IrrepJson {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partners: Option<Vec<String>>,
    /// One square matrix (list of rows) per element, in element order.
    pub matrices: Vec<Vec<Vec<EntryJson>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupFile {
    pub name: String,
    pub elements: Vec<String>,
    pub multiplication: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classes: Option<Vec<String>>,
    pub irreps: Vec<IrrepJson>,
}

impl GroupFile {
    pub fn from_json(text: &str) -> Result<Self, GroupError> {
        serde_json::from_str(text).map_err(|e| GroupError::InvalidGroup(format!("malformed group file: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("group files serialize")
    }

    pub fn build(&self) -> Result<Arc<FiniteGroup>, GroupError> {
        let mut irreps = Vec::new();
        for ir in &self.irreps {
            let mut mats = Vec::with_capacity(ir.matrices.len());
            for m in &ir.matrices {
                let d = m.len();
                if d == 0 || m.iter().any(|r| r.len() != d) {
                    return Err(GroupError::InvalidGroup(format!(
                        "irrep {} has a non-square matrix",
                        ir.label
                    )));
                }
                let rows = m
                    .iter()
                    .map(|r| r.iter().map(EntryJson::value).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                mats.push(Matrix::from_rows(rows));
            }
            let mut irrep = Irrep::new(ir.label.clone(), mats);
            if let Some(p) = &ir.partners {
                if p.len() != irrep.dim {
                    return Err(GroupError::InvalidGroup(format!(
                        "irrep {} lists {} partner names for dimension {}",
                        ir.label,
                        p.len(),
                        irrep.dim
                    )));
                }
                irrep.partner_names = p.clone();
            }
            irreps.push(irrep);
        }
        FiniteGroup::new(
            self.name.clone(),
            self.elements.clone(),
            self.multiplication.clone(),
            irreps,
            self.classes.clone(),
        )
        .map(Arc::new)
    }

    pub fn export(group: &FiniteGroup) -> Self {
        GroupFile {
            name: group.name().to_string(),
            elements: group.labels().to_vec(),
            multiplication: group.table().to_vec(),
            classes: Some(group.classes().iter().map(|c| c.name.clone()).collect()),
            irreps: group
                .irreps()
                .iter()
                .map(|ir| IrrepJson {
                    label: ir.label().to_string(),
                    partners: Some(ir.partner_names().to_vec()),
                    matrices: ir
                        .matrices()
                        .iter()
                        .map(|m| {
                            m.to_rows()
                                .into_iter()
                                .map(|r| r.into_iter().map(EntryJson::Field).collect())
                                .collect()
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{c_i, td};

    #[test]
    fn builtins_round_trip() {
        for g in [c_i(), td()] {
            let text = GroupFile::export(&g).to_json();
            let back = GroupFile::from_json(&text).unwrap().build().unwrap();
            assert_eq!(back.labels(), g.labels());
            assert_eq!(back.character_table(), g.character_table());
            assert_eq!(back.irreps(), g.irreps());
        }
    }

    #[test]
    fn plain_entries_and_errors() {
        let text = r#"{"name":"C2","elements":["e","r"],"multiplication":[[0,1],[1,0]],
            "irreps":[{"label":"A","matrices":[[[1]],[["1"]]]},{"label":"B","matrices":[[[1]],[[-1]]]}]}"#;
        let g = GroupFile::from_json(text).unwrap().build().unwrap();
        assert_eq!(g.order(), 2);
        assert!(GroupFile::from_json("{ not json").is_err());
        let broken = text.replace("[[-1]]", "[[2]]");
        assert!(GroupFile::from_json(&broken).unwrap().build().is_err());
    }
}
