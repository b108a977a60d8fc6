use serde::{Deserialize, Serialize};

use super::FiniteGroup;
use crate::error::GroupError;
use crate::exact_arith::FieldScalar;
use crate::polyalg::{bareiss_rank_profile, Matrix};

/// Coupling `C[a][b][κ]` of partner `a` of Γ_α and partner `b` of Γ_β into
/// partner `κ` of Γ, satisfying `(D_α ⊗ D_β)(g)·C = C·D_Γ(g)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CGTensor {
    pub alpha: usize,
    pub beta: usize,
    pub gamma: usize,
    pub index: usize,
    dims: [usize; 3],
    coeffs: Vec<FieldScalar>,
    /// False when the Frobenius norm had no square root in the field and
    /// the tensor was scaled to a unit leading coefficient instead.
    pub unit_norm: bool,
}

impl CGTensor {
    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn get(&self, a: usize, b: usize, kappa: usize) -> &FieldScalar {
        let [_, db, dg] = self.dims;
        &self.coeffs[(a * db + b) * dg + kappa]
    }

    pub fn set(&mut self, a: usize, b: usize, kappa: usize, v: FieldScalar) {
        let [_, db, dg] = self.dims;
        self.coeffs[(a * db + b) * dg + kappa] = v;
    }

    /// `(d_α·d_β) × d_Γ` matrix with row index `a·d_β + b`.
    pub fn as_matrix(&self) -> Matrix {
        let [da, db, dg] = self.dims;
        let mut m = Matrix::zeros(da * db, dg);
        for r in 0..da * db {
            for k in 0..dg {
                m.set(r, k, self.coeffs[r * dg + k].clone());
            }
        }
        m
    }

    pub fn frobenius_norm_sq(&self) -> FieldScalar {
        let mut s = FieldScalar::zero();
        for c in &self.coeffs {
            s += &(c * c);
        }
        s
    }

    /// Equivariance identity on every generator of `group`.
    pub fn is_equivariant(&self, group: &FiniteGroup) -> bool {
        let c = self.as_matrix();
        group.generators().iter().all(|&g| {
            let d = group
                .irrep(self.alpha)
                .matrix(g)
                .kron(group.irrep(self.beta).matrix(g));
            d.mul(&c) == c.mul(group.irrep(self.gamma).matrix(g))
        })
    }

    /// Sum over all entries of `C[a][b][κ]·other[a][b][κ]`.
    pub fn inner(&self, other: &CGTensor) -> FieldScalar {
        let mut s = FieldScalar::zero();
        for (x, y) in self.coeffs.iter().zip(&other.coeffs) {
            s += &(x * y);
        }
        s
    }
}

fn dot(u: &[FieldScalar], v: &[FieldScalar]) -> FieldScalar {
    let mut s = FieldScalar::zero();
    for (a, b) in u.iter().zip(v) {
        if !a.is_zero() && !b.is_zero() {
            s += &(a * b);
        }
    }
    s
}

impl FiniteGroup {
    /// One tensor per copy of Γ in Γ_α ⊗ Γ_β, built with transfer operators
    /// on the product space. Copies are mutually orthogonal; each tensor has
    /// its first nonzero coefficient positive and unit Frobenius norm.
    pub fn cg_tensor(&self, alpha: usize, beta: usize, gamma: usize) -> Result<Vec<CGTensor>, GroupError> {
        let mult = self.product_multiplicity(alpha, beta, gamma);
        if mult == 0 {
            return Err(GroupError::ZeroMultiplicity);
        }
        let (ia, ib, ig) = (self.irrep(alpha), self.irrep(beta), self.irrep(gamma));
        let (da, db, dg) = (ia.dim(), ib.dim(), ig.dim());
        let prod: Vec<Matrix> = (0..self.order())
            .map(|g| ia.matrix(g).kron(ib.matrix(g)))
            .collect();
        let p00 = self.transfer_operator(gamma, 0, 0, &prod);
        let (rank, cols) = bareiss_rank_profile(&p00.to_rows());
        assert_eq!(rank, mult, "transfer image dimension equals the multiplicity");
        let image: Vec<Vec<FieldScalar>> = cols
            .iter()
            .map(|&c| (0..da * db).map(|r| p00.get(r, c).clone()).collect())
            .collect();
        // Gram–Schmidt without square roots.
        let mut ortho: Vec<Vec<FieldScalar>> = Vec::new();
        for v in image {
            let mut w = v.clone();
            for u in &ortho {
                let f = &dot(&v, u) * &dot(u, u).inverse().expect("nonzero vector");
                for (wi, ui) in w.iter_mut().zip(u) {
                    *wi -= &(&f * ui);
                }
            }
            ortho.push(w);
        }
        let transfers: Vec<Matrix> = (0..dg)
            .map(|k| self.transfer_operator(gamma, k, 0, &prod))
            .collect();
        let mut out = Vec::with_capacity(mult);
        for (index, v) in ortho.into_iter().enumerate() {
            let partners: Vec<Vec<FieldScalar>> = transfers.iter().map(|t| t.mul_vec(&v)).collect();
            let mut coeffs = vec![FieldScalar::zero(); da * db * dg];
            for (k, w) in partners.iter().enumerate() {
                for (r, x) in w.iter().enumerate() {
                    coeffs[r * dg + k] = x.clone();
                }
            }
            let mut t = CGTensor {
                alpha,
                beta,
                gamma,
                index,
                dims: [da, db, dg],
                coeffs,
                unit_norm: true,
            };
            let lead = t
                .coeffs
                .iter()
                .find(|c| !c.is_zero())
                .cloned()
                .expect("nonzero tensor");
            let scale = match t.frobenius_norm_sq().sqrt_exact() {
                Some(n) => {
                    let s = n.inverse().expect("nonzero norm");
                    if lead.signum() < 0 {
                        -s
                    } else {
                        s
                    }
                }
                None => {
                    t.unit_norm = false;
                    lead.inverse().expect("nonzero lead")
                }
            };
            for c in t.coeffs.iter_mut() {
                *c = &*c * &scale;
            }
            out.push(t);
        }
        Ok(out)
    }

    pub fn cg_tensor_by_label(&self, alpha: &str, beta: &str, gamma: &str) -> Result<Vec<CGTensor>, GroupError> {
        self.cg_tensor(
            self.irrep_index(alpha)?,
            self.irrep_index(beta)?,
            self.irrep_index(gamma)?,
        )
    }
}

#[cfg(test)]
mod tests {
    use crate::error::GroupError;
    use crate::exact_arith::{FieldScalar, Rational};
    use crate::groups::{c_i, td};

    #[test]
    fn one_dimensional_coupling_is_one() {
        let g = c_i();
        let t = g.cg_tensor_by_label("A2", "A2", "A1").unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].get(0, 0, 0), &FieldScalar::one());
        assert_eq!(g.cg_tensor_by_label("A1", "A2", "A1"), Err(GroupError::ZeroMultiplicity));
    }

    #[test]
    fn f2_f2_to_a1_is_the_dot_product() {
        let g = td();
        let t = &g.cg_tensor_by_label("F2", "F2", "A1").unwrap()[0];
        let s = FieldScalar::surd(Rational::frac(1, 3), 3);
        for a in 0..3 {
            for b in 0..3 {
                let expect = if a == b { s.clone() } else { FieldScalar::zero() };
                assert_eq!(t.get(a, b, 0), &expect);
            }
        }
        assert!(t.unit_norm);
    }

    #[test]
    fn f2_f2_to_f2_pairs_the_other_two_partners() {
        let g = td();
        let t = &g.cg_tensor_by_label("F2", "F2", "F2").unwrap()[0];
        // Partner z couples only x⊗y and y⊗x.
        for a in 0..3 {
            for b in 0..3 {
                let nz = !t.get(a, b, 2).is_zero();
                assert_eq!(nz, (a, b) == (0, 1) || (a, b) == (1, 0));
            }
        }
        assert_eq!(t.get(0, 1, 2), t.get(1, 0, 2));
    }

    #[test]
    fn all_td_tensors_are_equivariant_and_normalized() {
        let g = td();
        for a in 0..5 {
            for b in 0..5 {
                for c in 0..5 {
                    if g.product_multiplicity(a, b, c) == 0 {
                        continue;
                    }
                    for t in g.cg_tensor(a, b, c).unwrap() {
                        assert!(t.is_equivariant(&g));
                        assert!(t.unit_norm, "{a} {b} {c}");
                        assert_eq!(t.frobenius_norm_sq(), FieldScalar::one());
                    }
                }
            }
        }
    }
}
