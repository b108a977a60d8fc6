use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{CovariantTuple, IntegrityBasis};
use crate::error::BasisError;
use crate::groups::{FiniteGroup, RepSum};
use crate::polyalg::{MultiPoly, PolyJson};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumeratorJson {
    pub degree: u32,
    pub partners: Vec<PolyJson>,
}

/// On-disk integrity basis. Polynomials are exponent/coefficient lists over
/// `variables`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisFile {
    pub group: String,
    pub initial_rep: String,
    pub final_irrep: String,
    pub variables: Vec<String>,
    pub denominators: Vec<PolyJson>,
    pub numerators: Vec<NumeratorJson>,
}

impl BasisFile {
    pub fn from_json(text: &str) -> Result<Self, BasisError> {
        serde_json::from_str(text).map_err(|e| BasisError::Malformed(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("basis files serialize");
        s.push('\n');
        s
    }

    /// Rebuilds the basis over `group`, which must be the group it was
    /// computed for.
    pub fn load(&self, group: &Arc<FiniteGroup>) -> Result<IntegrityBasis, BasisError> {
        if group.name() != self.group {
            return Err(BasisError::Malformed(format!(
                "basis is for group {}, not {}",
                self.group,
                group.name()
            )));
        }
        let labels: Vec<&str> = self.initial_rep.split(',').map(str::trim).collect();
        let rep = RepSum::with_names(group, &labels, self.variables.iter().cloned())?;
        let gamma = group.irrep_index(&self.final_irrep)?;
        let read = |p: &PolyJson| MultiPoly::from_json(rep.vars(), p);
        let denominators = self.denominators.iter().map(read).collect::<Result<Vec<_>, _>>()?;
        let mut numerators = Vec::with_capacity(self.numerators.len());
        for n in &self.numerators {
            let partners = n.partners.iter().map(read).collect::<Result<Vec<_>, _>>()?;
            if partners.len() != group.irrep(gamma).dim() {
                return Err(BasisError::Malformed(format!(
                    "numerator of degree {} has {} partners",
                    n.degree,
                    partners.len()
                )));
            }
            let t = CovariantTuple::new(gamma, partners)?;
            if t.degree != n.degree {
                return Err(BasisError::Malformed(format!(
                    "numerator listed at degree {} has degree {}",
                    n.degree, t.degree
                )));
            }
            numerators.push(t);
        }
        Ok(IntegrityBasis::new(rep, gamma, denominators, numerators))
    }
}

impl IntegrityBasis {
    pub fn to_file(&self) -> BasisFile {
        BasisFile {
            group: self.group().name().to_string(),
            initial_rep: self.rep().spec_string(),
            final_irrep: self.final_label().to_string(),
            variables: self.rep().vars().names().to_vec(),
            denominators: self.denominators().iter().map(MultiPoly::to_json).collect(),
            numerators: self
                .numerators()
                .iter()
                .map(|g| NumeratorJson {
                    degree: g.degree,
                    partners: g.partners.iter().map(MultiPoly::to_json).collect(),
                })
                .collect(),
        }
    }

    /// One polynomial per line: denominators `f_j`, then numerators
    /// `g_k,partner` in degree order.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let g = self.group();
        let _ = writeln!(
            s,
            "# group {}; initial {}; final {}",
            g.name(),
            self.rep().spec_string(),
            self.final_label()
        );
        let _ = writeln!(s, "# variables {}", self.rep().vars().names().join(" "));
        for (j, f) in self.denominators().iter().enumerate() {
            let _ = writeln!(s, "f{} [{}] = {}", j + 1, f.degree().unwrap_or(0), f);
        }
        let partners = g.irrep(self.final_irrep()).partner_names();
        for (k, t) in self.numerators().iter().enumerate() {
            for (p, poly) in t.partners.iter().enumerate() {
                let _ = writeln!(s, "g{},{} [{}] = {}", k + 1, partners[p], t.degree, poly);
            }
        }
        s
    }
}
