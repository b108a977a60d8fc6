//! Integrity bases: denominator invariants `f_j` and numerator covariants
//! `g_k` such that every covariant of a given type is uniquely
//! `Σ_k g_k·h_k(f₁,…,f_D)`. Bases for direct sums are built by coupling the
//! numerators of the summands with Clebsch–Gordan tensors, filtered by
//! independence in `P/(f)P` and checked against Molien counts.

mod build;
mod hironaka;
mod io;
pub mod quotient;
mod tables;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::BasisError;
use crate::groups::{FiniteGroup, RepSum};
use crate::polyalg::MultiPoly;

pub use build::{
    build_family, build_full_basis, couple_numerators, elementary_basis, elementary_basis_projected,
    elementary_family_in, reduce_candidates, BuildOptions,
};
pub use hironaka::{
    denominators_independent, enumerate_hironaka, hironaka_decompose, hironaka_terms, jacobian_rank,
    module_decompose, oracle_dimension, reconstruct, HironakaTerm,
};
pub use io::{BasisFile, NumeratorJson};

/// `Γ`-covariant tuple: `g·φ_j = Σ_i D_Γ(g)_{ij} φ_i` for every element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CovariantTuple {
    pub irrep: usize,
    pub degree: u32,
    pub partners: Vec<MultiPoly>,
}

impl CovariantTuple {
    /// Tuple of homogeneous partners sharing one degree. Zero partners are
    /// allowed only alongside a nonzero one.
    pub fn new(irrep: usize, partners: Vec<MultiPoly>) -> Result<Self, BasisError> {
        let not_cov = |partner| BasisError::NotCovariant {
            irrep: irrep.to_string(),
            partner,
        };
        let mut degree = None;
        for (i, p) in partners.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            if !p.is_homogeneous() || degree.is_some_and(|d| Some(d) != p.degree()) {
                return Err(not_cov(i));
            }
            degree = p.degree();
        }
        let degree = degree.ok_or_else(|| not_cov(0))?;
        Ok(CovariantTuple {
            irrep,
            degree,
            partners,
        })
    }

    pub fn is_equivariant(&self, rep: &RepSum) -> bool {
        rep.is_covariant(self.irrep, &self.partners)
    }

    /// The degree-0 invariant `1`.
    pub fn is_unit(&self) -> bool {
        self.degree == 0 && self.partners.len() == 1 && self.partners[0].terms().all(|(_, c)| c.is_one())
    }
}

/// Integrity basis of the `Γ`-covariants built from a representation.
#[derive(Clone, Debug)]
pub struct IntegrityBasis {
    rep: RepSum,
    final_irrep: usize,
    denominators: Vec<MultiPoly>,
    numerators: Vec<CovariantTuple>,
}

impl IntegrityBasis {
    pub fn new(
        rep: RepSum,
        final_irrep: usize,
        denominators: Vec<MultiPoly>,
        numerators: Vec<CovariantTuple>,
    ) -> Self {
        IntegrityBasis {
            rep,
            final_irrep,
            denominators,
            numerators,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.rep.group()
    }

    pub fn rep(&self) -> &RepSum {
        &self.rep
    }

    pub fn final_irrep(&self) -> usize {
        self.final_irrep
    }

    pub fn final_label(&self) -> &str {
        self.group().irrep(self.final_irrep).label()
    }

    pub fn denominators(&self) -> &[MultiPoly] {
        &self.denominators
    }

    pub fn numerators(&self) -> &[CovariantTuple] {
        &self.numerators
    }

    pub fn denominator_degrees(&self) -> Vec<u32> {
        self.denominators.iter().map(|f| f.degree().unwrap_or(0)).collect()
    }

    /// Numerator counts indexed by degree, up to the highest degree used.
    pub fn numerator_counts(&self) -> Vec<usize> {
        let top = self.numerators.iter().map(|g| g.degree).max();
        let mut out = vec![0; top.map_or(0, |d| d as usize + 1)];
        for g in &self.numerators {
            out[g.degree as usize] += 1;
        }
        out
    }

    /// Partner `i` of every numerator, in basis order.
    pub fn numerator_polys(&self, partner: usize) -> Vec<MultiPoly> {
        self.numerators.iter().map(|g| g.partners[partner].clone()).collect()
    }
}

/// Integrity bases for every final irrep over the same denominators.
#[derive(Clone, Debug)]
pub struct BasisFamily {
    rep: RepSum,
    /// `(slice, polynomial)` in construction order.
    denominators: Vec<(usize, MultiPoly)>,
    numerators: Vec<Vec<CovariantTuple>>,
}

impl BasisFamily {
    pub fn rep(&self) -> &RepSum {
        &self.rep
    }

    /// Denominators ordered by degree, then slice, then construction order.
    pub fn denominators(&self) -> Vec<MultiPoly> {
        let mut keyed: Vec<(u32, usize, usize, &MultiPoly)> = self
            .denominators
            .iter()
            .enumerate()
            .map(|(i, (s, f))| (f.degree().unwrap_or(0), *s, i, f))
            .collect();
        keyed.sort_by_key(|k| (k.0, k.1, k.2));
        keyed.into_iter().map(|k| k.3.clone()).collect()
    }

    pub fn numerators(&self, irrep: usize) -> &[CovariantTuple] {
        &self.numerators[irrep]
    }

    /// The same family with numerators of the other irreps dropped.
    pub fn restricted(&self, keep: &[usize]) -> BasisFamily {
        let mut out = self.clone();
        for (i, n) in out.numerators.iter_mut().enumerate() {
            if !keep.contains(&i) {
                n.clear();
            }
        }
        out
    }

    pub fn basis(&self, irrep: usize) -> IntegrityBasis {
        IntegrityBasis::new(
            self.rep.clone(),
            irrep,
            self.denominators(),
            self.numerators[irrep].clone(),
        )
    }

    /// Total numerator count per final irrep.
    pub fn totals(&self) -> BTreeMap<String, usize> {
        let g = self.rep.group();
        self.numerators
            .iter()
            .enumerate()
            .map(|(i, n)| (g.irrep(i).label().to_string(), n.len()))
            .collect()
    }
}
