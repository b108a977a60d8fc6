use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::IntegrityBasis;
use crate::error::BasisError;
use crate::exact_arith::{FieldScalar, Rational};
use crate::groups::RepSum;
use crate::polyalg::{bareiss_rank_profile, monomials_of_degree, poly_vec, Echelon, MultiPoly};

/// `f₁^{j₁}⋯f_D^{j_D}·g_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HironakaTerm {
    pub exponents: Vec<u32>,
    pub numerator: usize,
    pub degree: u32,
    pub poly: MultiPoly,
}

/// Exponent vectors `j` with `Σ j_i·deg_i = target`, increasing lexicographically.
fn compositions(degs: &[u32], target: u32) -> Vec<Vec<u32>> {
    fn rec(degs: &[u32], pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos == degs.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for j in 0..=left / degs[pos] {
            cur[pos] = j;
            rec(degs, pos + 1, left - j * degs[pos], cur, out);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    if degs.is_empty() {
        if target == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(degs, 0, target, &mut vec![0; degs.len()], &mut out);
    out
}

struct PowerCache<'a> {
    dens: &'a [MultiPoly],
    memo: HashMap<Vec<u32>, MultiPoly>,
}

impl PowerCache<'_> {
    fn get(&mut self, j: &[u32]) -> MultiPoly {
        if let Some(p) = self.memo.get(j) {
            return p.clone();
        }
        let p = match j.iter().rposition(|&e| e > 0) {
            None => MultiPoly::one(self.dens[0].vars()),
            Some(i) => {
                let mut prev = j.to_vec();
                prev[i] -= 1;
                let base = self.get(&prev);
                base.poly_mul(&self.dens[i]).expect("shared variable table")
            }
        };
        self.memo.insert(j.to_vec(), p.clone());
        p
    }
}

/// Every product `f^j·g_k` with degree in `degrees`, sorted by (degree,
/// numerator index, exponent vector). `numerators` are homogeneous.
pub fn hironaka_terms(
    denominators: &[MultiPoly],
    numerators: &[MultiPoly],
    degrees: std::ops::RangeInclusive<u32>,
) -> Vec<HironakaTerm> {
    let degs: Vec<u32> = denominators.iter().map(|f| f.degree().unwrap_or(0)).collect();
    let mut keys = Vec::new();
    for n in degrees {
        for (k, g) in numerators.iter().enumerate() {
            let Some(dg) = g.degree() else { continue };
            if dg > n {
                continue;
            }
            for j in compositions(&degs, n - dg) {
                keys.push((n, k, j));
            }
        }
    }
    if denominators.is_empty() {
        return keys
            .into_iter()
            .map(|(n, k, j)| HironakaTerm {
                exponents: j,
                numerator: k,
                degree: n,
                poly: numerators[k].clone(),
            })
            .collect();
    }
    let mut cache = PowerCache {
        dens: denominators,
        memo: HashMap::new(),
    };
    let powers: Vec<MultiPoly> = keys.iter().map(|(_, _, j)| cache.get(j)).collect();
    keys.into_par_iter()
        .zip(powers.into_par_iter())
        .map(|((n, k, j), f)| HironakaTerm {
            exponents: j,
            numerator: k,
            degree: n,
            poly: f.poly_mul(&numerators[k]).expect("shared variable table"),
        })
        .collect()
}

/// Hironaka products of partner `partner` up to total degree `d_max`.
pub fn enumerate_hironaka(basis: &IntegrityBasis, partner: usize, d_max: u32) -> Vec<HironakaTerm> {
    hironaka_terms(basis.denominators(), &basis.numerator_polys(partner), 0..=d_max)
}

/// `Σ coeff·term`.
pub fn reconstruct(terms: &[(HironakaTerm, FieldScalar)]) -> Option<MultiPoly> {
    let first = terms.first()?;
    let mut acc = MultiPoly::zero(first.0.poly.vars());
    for (t, c) in terms {
        acc = &acc + &t.poly.scale(c);
    }
    Some(acc)
}

fn homogeneous_parts(p: &MultiPoly) -> Vec<(u32, MultiPoly)> {
    let mut parts: std::collections::BTreeMap<u32, MultiPoly> = std::collections::BTreeMap::new();
    for (m, c) in p.terms() {
        parts
            .entry(m.degree())
            .or_insert_with(|| MultiPoly::zero(p.vars()))
            .add_term(m.clone(), c);
    }
    parts.into_iter().collect()
}

/// Expresses `p` over the products `f^j·g_k`, degree by degree, if it lies
/// in the module they span. Coefficients are unique when the products at
/// each degree are independent.
pub fn module_decompose(
    p: &MultiPoly,
    denominators: &[MultiPoly],
    numerators: &[MultiPoly],
) -> Option<Vec<(HironakaTerm, FieldScalar)>> {
    let mut out = Vec::new();
    for (n, part) in homogeneous_parts(p) {
        let terms = hironaka_terms(denominators, numerators, n..=n);
        let mut ech = Echelon::with_tracking();
        for (i, t) in terms.iter().enumerate() {
            ech.insert_tracked(poly_vec(&t.poly), i);
        }
        let (residue, combo) = ech.reduce_tracked(poly_vec(&part));
        if !residue.is_empty() {
            return None;
        }
        out.extend(combo.into_iter().map(|(i, c)| (terms[i].clone(), c)));
    }
    Some(out)
}

/// Unique Hironaka decomposition of a `(Γ, partner)` covariant.
pub fn hironaka_decompose(
    p: &MultiPoly,
    basis: &IntegrityBasis,
    partner: usize,
) -> Result<Vec<(HironakaTerm, FieldScalar)>, BasisError> {
    let gamma = basis.final_irrep();
    if basis.rep().transfer(gamma, partner, partner, p) != *p {
        return Err(BasisError::NotCovariant {
            irrep: basis.final_label().to_string(),
            partner,
        });
    }
    let nums = basis.numerator_polys(partner);
    let mut out = Vec::new();
    for (n, part) in homogeneous_parts(p) {
        let dec = module_decompose(&part, basis.denominators(), &nums).ok_or(BasisError::NotInModule { degree: n })?;
        out.extend(dec);
    }
    Ok(out)
}

/// `dim` of the degree-`degree` `(Γ, partner)` covariants, as the rank of
/// the projector `P_{ii}` on all monomials. Monomials of different
/// multidegree have images in different multidegrees, so blocks are
/// eliminated separately.
pub fn oracle_dimension(rep: &RepSum, gamma: usize, partner: usize, degree: u32) -> usize {
    let grading = rep.grading();
    let mut blocks: std::collections::BTreeMap<Vec<u32>, Vec<crate::polyalg::Monomial>> = Default::default();
    for m in monomials_of_degree(rep.dim(), degree) {
        blocks.entry(grading.key(&m)).or_default().push(m);
    }
    blocks
        .into_par_iter()
        .map(|(_, ms)| {
            let mut ech = Echelon::new();
            for m in ms {
                let p = MultiPoly::monomial(rep.vars(), m, FieldScalar::one());
                let img = rep.transfer(gamma, partner, partner, &p);
                if !img.is_zero() {
                    ech.insert(poly_vec(&img));
                }
            }
            ech.rank()
        })
        .sum()
}

/// Rank of the Jacobian `∂f_i/∂x_v` at `point`.
pub fn jacobian_rank(denominators: &[MultiPoly], point: &[Rational]) -> usize {
    let Some(first) = denominators.first() else { return 0 };
    let nvars = first.vars().len();
    let rows: Vec<Vec<FieldScalar>> = denominators
        .iter()
        .map(|f| {
            (0..nvars)
                .map(|v| f.derivative(v).evaluate_rational(point).expect("point has one entry per variable"))
                .collect()
        })
        .collect();
    bareiss_rank_profile(&rows).0
}

/// Algebraic-independence witness: full Jacobian rank at a seeded random
/// rational point. `false` may be a vanishing accident, never a false proof.
pub fn denominators_independent(denominators: &[MultiPoly], seed: u64) -> bool {
    let Some(first) = denominators.first() else { return true };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let point: Vec<Rational> = (0..first.vars().len())
        .map(|_| Rational::frac(rng.gen_range(-50..=50), rng.gen_range(1..=13)))
        .collect();
    jacobian_rank(denominators, &point) == denominators.len()
}
