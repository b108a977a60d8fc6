use std::collections::HashMap;
use std::ops::Range;
use std::sync::{Arc, RwLock};

use smallvec::SmallVec;

use super::FiniteGroup;
use crate::error::GroupError;
use crate::exact_arith::FieldScalar;
use crate::polyalg::{Exponents, Grading, Matrix, Monomial, MultiPoly, VarTable};

type LocalExps = SmallVec<[u16; 4]>;
type LocalImage = Arc<Vec<(LocalExps, FieldScalar)>>;

/// Images of slice-local monomials under each group element, filled lazily.
#[derive(Debug, Default)]
struct ActionCache {
    per_element: Vec<RwLock<HashMap<(usize, LocalExps), LocalImage>>>,
}

/// One irreducible block of a direct sum; its grading variable is `t_{k+1}`
/// for slice `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slice {
    pub irrep: usize,
    pub offset: usize,
    pub dim: usize,
}

impl Slice {
    pub fn vars(&self) -> Range<usize> {
        self.offset..self.offset + self.dim
    }
}

/// Reducible representation `Γ₁ ⊕ … ⊕ Γ_μ` over a variable table whose
/// consecutive slices carry the summands.
#[derive(Clone, Debug)]
pub struct RepSum {
    group: Arc<FiniteGroup>,
    vars: Arc<VarTable>,
    slices: Vec<Slice>,
    matrices: Vec<Matrix>,
    cache: Arc<ActionCache>,
}

impl RepSum {
    /// Default coordinate names: `x1, x2, …` when every summand is
    /// one-dimensional, otherwise `S{k}` with partner suffixes
    /// (`S2a, S2b`, `S3x, S3y, S3z`).
    pub fn new(group: &Arc<FiniteGroup>, labels: &[&str]) -> Result<Self, GroupError> {
        let idx: Vec<usize> = labels
            .iter()
            .map(|l| group.irrep_index(l))
            .collect::<Result<_, _>>()?;
        let all_one = idx.iter().all(|&i| group.irrep(i).dim() == 1);
        let mut names = Vec::new();
        let mut n = 0;
        for (k, &i) in idx.iter().enumerate() {
            let ir = group.irrep(i);
            if all_one {
                n += 1;
                names.push(format!("x{n}"));
            } else if ir.dim() == 1 {
                names.push(format!("S{}", k + 1));
            } else {
                for p in ir.partner_names() {
                    let sep = if p.chars().all(|c| c.is_ascii_digit()) { "_" } else { "" };
                    names.push(format!("S{}{sep}{p}", k + 1));
                }
            }
        }
        Self::with_names(group, labels, names)
    }

    pub fn with_names<S: Into<String>>(
        group: &Arc<FiniteGroup>,
        labels: &[&str],
        names: impl IntoIterator<Item = S>,
    ) -> Result<Self, GroupError> {
        let vars = VarTable::new(names)?.into_shared();
        let mut slices = Vec::new();
        let mut offset = 0;
        for l in labels {
            let irrep = group.irrep_index(l)?;
            let dim = group.irrep(irrep).dim();
            slices.push(Slice { irrep, offset, dim });
            offset += dim;
        }
        if offset != vars.len() {
            return Err(GroupError::InvalidGroup(format!(
                "{} coordinate names for a representation of dimension {offset}",
                vars.len()
            )));
        }
        let matrices = (0..group.order())
            .map(|g| {
                let blocks: Vec<Matrix> = slices
                    .iter()
                    .map(|s| group.irrep(s.irrep).matrix(g).clone())
                    .collect();
                Matrix::block_diag(&blocks)
            })
            .collect();
        let cache = Arc::new(ActionCache {
            per_element: (0..group.order()).map(|_| RwLock::default()).collect(),
        });
        Ok(RepSum {
            group: Arc::clone(group),
            vars,
            slices,
            matrices,
            cache,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn slices(&self) -> &[Slice] {
        &self.slices
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn labels(&self) -> Vec<String> {
        self.slices
            .iter()
            .map(|s| self.group.irrep(s.irrep).label().to_string())
            .collect()
    }

    /// Comma-separated irrep labels, e.g. `A1,E,F2,F2`.
    pub fn spec_string(&self) -> String {
        self.labels().join(",")
    }

    pub fn grading(&self) -> Grading {
        let sizes: Vec<usize> = self.slices.iter().map(|s| s.dim).collect();
        Grading::from_sizes(&sizes)
    }

    /// Block-diagonal matrix of element `g`.
    pub fn rep_matrix(&self, g: usize) -> &Matrix {
        &self.matrices[g]
    }

    pub fn rep_matrix_by_label(&self, label: &str) -> Result<&Matrix, GroupError> {
        Ok(&self.matrices[self.group.element_index(label)?])
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    /// `g·p`, the substitution of the representation matrix of `g`. Equal to
    /// `p.substitute_linear(rep_matrix(g))`; computed slice by slice with
    /// memoized images of slice-local monomials.
    pub fn act(&self, g: usize, p: &MultiPoly) -> MultiPoly {
        assert_eq!(p.vars().len(), self.dim(), "polynomial lives over this representation's variables");
        let mut out: HashMap<Monomial, FieldScalar> = HashMap::new();
        for (m, c) in p.terms() {
            let mut partial: Vec<(Exponents, FieldScalar)> =
                vec![(SmallVec::from_elem(0, self.dim()), c.clone())];
            for (si, s) in self.slices.iter().enumerate() {
                let local: LocalExps = SmallVec::from_slice(&m.exponents()[s.vars()]);
                if local.iter().all(|&e| e == 0) {
                    continue;
                }
                let img = self.local_image(g, si, local);
                let mut next = Vec::with_capacity(partial.len() * img.len());
                for (e, x) in &partial {
                    for (le, y) in img.iter() {
                        let mut e2 = e.clone();
                        e2[s.vars()].copy_from_slice(le);
                        next.push((e2, x * y));
                    }
                }
                partial = next;
            }
            for (e, x) in partial {
                let slot = out.entry(Monomial::from_exponents(&e)).or_default();
                *slot += &x;
            }
        }
        MultiPoly::from_terms(p.vars(), out.into_iter().filter(|(_, c)| !c.is_zero()))
    }

    fn local_image(&self, g: usize, slice: usize, local: LocalExps) -> LocalImage {
        let key = (slice, local);
        if let Some(img) = self.cache.per_element[g].read().expect("cache lock").get(&key) {
            return Arc::clone(img);
        }
        let s = &self.slices[slice];
        let m = self.group.irrep(s.irrep).matrix(g);
        let lv = VarTable::new((0..s.dim).map(|i| format!("u{i}")))
            .expect("distinct")
            .into_shared();
        let mono = MultiPoly::monomial(&lv, Monomial::from_exponents(&key.1), FieldScalar::one());
        let img = mono.substitute_linear(m).expect("slice-sized matrix");
        let img: LocalImage = Arc::new(
            img.terms()
                .map(|(e, c)| (SmallVec::from_slice(e.exponents()), c.clone()))
                .collect(),
        );
        self.cache.per_element[g]
            .write()
            .expect("cache lock")
            .insert(key, Arc::clone(&img));
        img
    }

    /// `P_{κλ} p = (d/|G|) Σ_g D_Γ(g)_{κλ} g·p`.
    pub fn transfer(&self, gamma: usize, kappa: usize, lambda: usize, p: &MultiPoly) -> MultiPoly {
        let ir = self.group.irrep(gamma);
        let mut acc = MultiPoly::zero(p.vars());
        for g in 0..self.group.order() {
            let c = ir.matrix(g).get(kappa, lambda);
            if c.is_zero() {
                continue;
            }
            acc = &acc + &self.act(g, p).scale(c);
        }
        acc.scale(&FieldScalar::frac(ir.dim() as i64, self.group.order() as i64))
    }

    /// Whether `g·φ_j = Σ_i D_Γ(g)_{ij} φ_i` holds for every generator.
    pub fn is_covariant(&self, gamma: usize, partners: &[MultiPoly]) -> bool {
        let ir = self.group.irrep(gamma);
        if partners.len() != ir.dim() {
            return false;
        }
        self.group.generators().iter().all(|&g| {
            let d = ir.matrix(g);
            partners.iter().enumerate().all(|(j, pj)| {
                let lhs = self.act(g, pj);
                let mut rhs = MultiPoly::zero(pj.vars());
                for (i, pi) in partners.iter().enumerate() {
                    let c = d.get(i, j);
                    if !c.is_zero() {
                        rhs = &rhs + &pi.scale(c);
                    }
                }
                lhs == rhs
            })
        })
    }
}
