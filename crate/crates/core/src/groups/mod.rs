//! Finite groups given by a multiplication table and explicit real
//! orthogonal irrep matrices, reducible representations as graded direct
//! sums, and Clebsch–Gordan coupling tensors.
//!
//! Characters are real throughout (all irreps are orthogonal over a real
//! field), so complex conjugation is the identity and is never applied.

mod builtin;
mod cg;
mod file;
mod rep;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::GroupError;
use crate::exact_arith::FieldScalar;
use crate::polyalg::Matrix;

pub use builtin::{c_i, td};
pub use cg::CGTensor;
pub use file::GroupFile;
pub use rep::{RepSum, Slice};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjClass {
    pub name: String,
    pub members: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Irrep {
    label: String,
    dim: usize,
    partner_names: Vec<String>,
    matrices: Vec<Matrix>,
}

impl Irrep {
    pub fn new(label: impl Into<String>, matrices: Vec<Matrix>) -> Self {
        let dim = matrices.first().map_or(0, Matrix::nrows);
        Irrep {
            label: label.into(),
            dim,
            partner_names: default_partner_names(dim),
            matrices,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, g: usize) -> &Matrix {
        &self.matrices[g]
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn partner_names(&self) -> &[String] {
        &self.partner_names
    }

    /// Accepts a partner name (`x`, `b`, …) or a 1-based index.
    pub fn partner_index(&self, name: &str) -> Option<usize> {
        if let Some(i) = self.partner_names.iter().position(|p| p == name) {
            return Some(i);
        }
        match name.parse::<usize>() {
            Ok(i) if (1..=self.dim).contains(&i) => Some(i - 1),
            _ => None,
        }
    }
}

pub(crate) fn default_partner_names(dim: usize) -> Vec<String> {
    match dim {
        2 => vec!["a".into(), "b".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        _ => (1..=dim).map(|i| i.to_string()).collect(),
    }
}

/// A validated finite group with a complete set of real irreps.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: String,
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    classes: Vec<ConjClass>,
    class_of: Vec<usize>,
    irreps: Vec<Irrep>,
    characters: Vec<Vec<FieldScalar>>,
    generators: Vec<usize>,
}

impl FiniteGroup {
    /// Validates the table (group axioms), every irrep (homomorphism,
    /// orthogonality), the character relations and completeness
    /// `Σ dim² = |G|`. Conjugacy classes are derived from the table;
    /// `class_names`, if given, must list one name per class in order of
    /// each class's smallest element.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        table: Vec<Vec<usize>>,
        irreps: Vec<Irrep>,
        class_names: Option<Vec<String>>,
    ) -> Result<Self, GroupError> {
        let bad = |m: String| Err(GroupError::InvalidGroup(m));
        let n = labels.len();
        if n == 0 {
            return bad("empty group".into());
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return bad(format!("duplicate element label `{l}`"));
            }
        }
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return bad("multiplication table must be |G|×|G| with entries < |G|".into());
        }
        let Some(identity) = (0..n).find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
        else {
            return bad("no identity element".into());
        };
        let mut inverses = Vec::with_capacity(n);
        for g in 0..n {
            match (0..n).find(|&h| table[g][h] == identity && table[h][g] == identity) {
                Some(h) => inverses.push(h),
                None => return bad(format!("element `{}` has no inverse", labels[g])),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return bad("multiplication is not associative".into());
                    }
                }
            }
        }

        let mut class_of = vec![usize::MAX; n];
        let mut members: Vec<Vec<usize>> = Vec::new();
        for g in 0..n {
            if class_of[g] != usize::MAX {
                continue;
            }
            let mut cls: Vec<usize> = (0..n).map(|h| table[table[h][g]][inverses[h]]).collect();
            cls.sort_unstable();
            cls.dedup();
            for &c in &cls {
                class_of[c] = members.len();
            }
            members.push(cls);
        }
        let names = match class_names {
            Some(ns) if ns.len() == members.len() => ns,
            Some(ns) => {
                return bad(format!(
                    "{} class names given for {} conjugacy classes",
                    ns.len(),
                    members.len()
                ))
            }
            None => (1..=members.len()).map(|i| format!("K{i}")).collect(),
        };
        let classes: Vec<ConjClass> = names
            .into_iter()
            .zip(members)
            .map(|(name, members)| ConjClass { name, members })
            .collect();

        for ir in &irreps {
            if ir.matrices.len() != n {
                return bad(format!("irrep {} needs one matrix per element", ir.label));
            }
            if ir.matrices.iter().any(|m| m.nrows() != ir.dim || m.ncols() != ir.dim) {
                return bad(format!("irrep {} has inconsistent matrix sizes", ir.label));
            }
            if ir.matrices[identity] != Matrix::identity(ir.dim) {
                return bad(format!("irrep {} does not map the identity to 1", ir.label));
            }
            if !ir.matrices.iter().all(Matrix::is_orthogonal) {
                return bad(format!("irrep {} is not orthogonal", ir.label));
            }
            for g in 0..n {
                for h in 0..n {
                    if ir.matrices[g].mul(&ir.matrices[h]) != ir.matrices[table[g][h]] {
                        return bad(format!("irrep {} is not a homomorphism", ir.label));
                    }
                }
            }
        }
        let characters: Vec<Vec<FieldScalar>> = irreps
            .iter()
            .map(|ir| classes.iter().map(|c| ir.matrices[c.members[0]].trace()).collect())
            .collect();
        let order = FieldScalar::from_int(n as i64);
        for a in 0..irreps.len() {
            for b in 0..irreps.len() {
                let mut s = FieldScalar::zero();
                for (k, c) in classes.iter().enumerate() {
                    let t = &characters[a][k] * &characters[b][k];
                    s += &t.scale(&(c.members.len() as i64).into());
                }
                let expect = if a == b { order.clone() } else { FieldScalar::zero() };
                if s != expect {
                    return bad(format!(
                        "characters of {} and {} violate orthogonality (reducible or equivalent irreps)",
                        irreps[a].label, irreps[b].label
                    ));
                }
            }
        }
        if irreps.iter().map(|i| i.dim * i.dim).sum::<usize>() != n {
            return bad("irreps are incomplete: Σ dim² ≠ |G|".into());
        }
        if !irreps
            .first()
            .is_some_and(|ir| ir.dim == 1 && ir.matrices.iter().all(|m| m.get(0, 0).is_one()))
        {
            return bad("the first irrep must be the trivial one".into());
        }
        for (i, ir) in irreps.iter().enumerate() {
            if irreps[..i].iter().any(|o| o.label == ir.label) {
                return bad(format!("duplicate irrep label `{}`", ir.label));
            }
        }

        let generators = greedy_generators(&table, identity);
        Ok(FiniteGroup {
            name: name.into(),
            labels,
            table,
            identity,
            inverses,
            classes,
            class_of,
            irreps,
            characters,
            generators,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn element_index(&self, label: &str) -> Result<usize, GroupError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| GroupError::UnknownElement(label.to_string()))
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverses[g]
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != self.identity {
            x = self.table[x][g];
            k += 1;
        }
        k
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn irreps(&self) -> &[Irrep] {
        &self.irreps
    }

    pub fn irrep(&self, idx: usize) -> &Irrep {
        &self.irreps[idx]
    }

    pub fn irrep_index(&self, label: &str) -> Result<usize, GroupError> {
        self.irreps
            .iter()
            .position(|i| i.label == label)
            .ok_or_else(|| GroupError::UnknownIrrep(label.to_string()))
    }

    pub fn irrep_labels(&self) -> Vec<String> {
        self.irreps.iter().map(|i| i.label.clone()).collect()
    }

    /// Index 0 is always the trivial irrep.
    pub fn trivial_irrep(&self) -> usize {
        0
    }

    /// Rows follow `irreps()`, columns follow `classes()`.
    pub fn character_table(&self) -> &[Vec<FieldScalar>] {
        &self.characters
    }

    pub fn character(&self, irrep: usize, g: usize) -> &FieldScalar {
        &self.characters[irrep][self.class_of[g]]
    }

    /// A small generating set chosen greedily in element order.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// `(1/|G|) Σ_g χ_α(g) χ_β(g) χ_Γ(g)`.
    pub fn product_multiplicity(&self, alpha: usize, beta: usize, gamma: usize) -> usize {
        let mut s = FieldScalar::zero();
        for (k, c) in self.classes.iter().enumerate() {
            let t = &(&self.characters[alpha][k] * &self.characters[beta][k]) * &self.characters[gamma][k];
            s += &t.scale(&(c.members.len() as i64).into());
        }
        let m = s.scale(&crate::exact_arith::Rational::frac(1, self.order() as i64));
        m.as_rational()
            .and_then(|r| r.to_integer())
            .and_then(|v| usize::try_from(v).ok())
            .expect("multiplicity of a validated group is a non-negative integer")
    }

    pub fn product_multiplicity_by_label(
        &self,
        alpha: &str,
        beta: &str,
        gamma: &str,
    ) -> Result<usize, GroupError> {
        Ok(self.product_multiplicity(
            self.irrep_index(alpha)?,
            self.irrep_index(beta)?,
            self.irrep_index(gamma)?,
        ))
    }

    /// Transfer operator `P_{κλ} = (d/|G|) Σ_g D_Γ(g)_{κλ} ρ(g)` for a
    /// representation `ρ` given element-wise.
    pub fn transfer_operator(&self, gamma: usize, kappa: usize, lambda: usize, rho: &[Matrix]) -> Matrix {
        let ir = &self.irreps[gamma];
        let n = rho[0].nrows();
        let mut acc = Matrix::zeros(n, n);
        for (g, m) in rho.iter().enumerate() {
            let c = ir.matrices[g].get(kappa, lambda);
            if !c.is_zero() {
                acc = acc.add(&m.scale(c));
            }
        }
        acc.scale(&FieldScalar::frac(ir.dim as i64, self.order() as i64))
    }

    /// Class sizes keyed by class index, as used by the Molien sum.
    pub fn class_sizes(&self) -> BTreeMap<usize, usize> {
        self.classes
            .iter()
            .enumerate()
            .map(|(i, c)| (i, c.members.len()))
            .collect()
    }
}

fn greedy_generators(table: &[Vec<usize>], identity: usize) -> Vec<usize> {
    let n = table.len();
    let mut inside = vec![false; n];
    inside[identity] = true;
    let mut gens = Vec::new();
    for g in 0..n {
        if inside[g] {
            continue;
        }
        gens.push(g);
        // Closure of the current subgroup under right multiplication by generators.
        let mut frontier: Vec<usize> = (0..n).filter(|&x| inside[x]).collect();
        while let Some(x) = frontier.pop() {
            for &s in &gens {
                let y = table[x][s];
                if !inside[y] {
                    inside[y] = true;
                    frontier.push(y);
                }
            }
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn td_shape() {
        let g = td();
        assert_eq!(g.order(), 24);
        let names: Vec<&str> = g.classes().iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, ["E", "C3", "C2", "S4", "sd"]);
        let sizes: Vec<usize> = g.classes().iter().map(|c| c.members.len()).collect();
        assert_eq!(sizes, [1, 8, 3, 6, 6]);
        assert_eq!(g.irrep_labels(), ["A1", "A2", "E", "F1", "F2"]);
        let dims: usize = g.irreps().iter().map(|i| i.dim() * i.dim()).sum();
        assert_eq!(dims, 24);
        assert!(g.generators().len() <= 3);
    }

    #[test]
    fn td_character_table() {
        let g = td();
        let expect: [[i64; 5]; 5] = [
            [1, 1, 1, 1, 1],
            [1, 1, 1, -1, -1],
            [2, -1, 2, 0, 0],
            [3, 0, -1, 1, -1],
            [3, 0, -1, -1, 1],
        ];
        for (row, exp) in g.character_table().iter().zip(expect) {
            let got: Vec<FieldScalar> = row.clone();
            let exp: Vec<FieldScalar> = exp.iter().map(|&x| x.into()).collect();
            assert_eq!(got, exp);
        }
    }

    #[test]
    fn product_table_entries() {
        let g = td();
        assert_eq!(g.product_multiplicity_by_label("F2", "F1", "E").unwrap(), 1);
        assert_eq!(g.product_multiplicity_by_label("A1", "A2", "A1").unwrap(), 0);
        assert_eq!(g.product_multiplicity_by_label("F2", "F2", "A2").unwrap(), 0);
        assert_eq!(g.product_multiplicity_by_label("F1", "F2", "A2").unwrap(), 1);
        assert_eq!(
            g.product_multiplicity_by_label("F2", "G", "A1"),
            Err(GroupError::UnknownIrrep("G".into()))
        );
        let ci = c_i();
        assert_eq!(ci.product_multiplicity_by_label("A2", "A2", "A1").unwrap(), 1);
    }

    #[test]
    fn rejects_non_group_tables() {
        let labels = vec!["e".to_string(), "a".to_string()];
        let one = Matrix::identity(1);
        let triv = Irrep::new("A", vec![one.clone(), one.clone()]);
        let err = FiniteGroup::new("bad", labels.clone(), vec![vec![0, 1], vec![1, 1]], vec![triv.clone()], None);
        assert!(matches!(err, Err(GroupError::InvalidGroup(_))));
        let err = FiniteGroup::new("incomplete", labels, vec![vec![0, 1], vec![1, 0]], vec![triv], None);
        assert!(matches!(err, Err(GroupError::InvalidGroup(_))));
    }
}
