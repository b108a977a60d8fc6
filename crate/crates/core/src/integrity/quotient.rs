//! Normal forms in `P/(f₁,…,f_D)P` when every denominator lives in a single
//! slice. The quotient is then the tensor product of the slice quotients, so
//! a normal form is a sparse vector over tuples of per-slice standard
//! monomials. For a free module over `k[f]`, a set of covariants extends to
//! numerators exactly when their images here are independent.

use std::collections::HashMap;
use std::ops::Range;

use smallvec::SmallVec;

use crate::error::BasisError;
use crate::exact_arith::FieldScalar;
use crate::groups::RepSum;
use crate::polyalg::{monomials_of_degree, Echelon, Monomial, MultiPoly, SparseVec};

pub type NfKey = SmallVec<[u16; 8]>;
pub type NormalForm = SparseVec<NfKey>;

type LocalExps = SmallVec<[u16; 4]>;

#[derive(Debug)]
struct SliceQuotient {
    range: Range<usize>,
    /// Highest degree with a nonzero quotient piece, `Σ(deg f − 1)`.
    top: u32,
    nf: HashMap<LocalExps, Vec<(u16, FieldScalar)>>,
    standard_count: usize,
}

impl SliceQuotient {
    fn new(rep_slice: usize, range: Range<usize>, dens: &[MultiPoly]) -> Result<Self, BasisError> {
        let d = range.len();
        let not_params = || BasisError::NotParameters { slice: rep_slice };
        if dens.len() != d {
            return Err(not_params());
        }
        let local: Vec<Vec<(LocalExps, FieldScalar)>> = dens
            .iter()
            .map(|f| {
                f.terms()
                    .map(|(m, c)| (SmallVec::from_slice(&m.exponents()[range.clone()]), c.clone()))
                    .collect()
            })
            .collect();
        let mut degs = Vec::with_capacity(d);
        for f in dens {
            match f.degree() {
                Some(k) if k > 0 && f.is_homogeneous() => degs.push(k),
                _ => return Err(not_params()),
            }
        }
        let top: u32 = degs.iter().map(|k| k - 1).sum();
        let mut nf = HashMap::new();
        let mut next_index: u16 = 0;
        for n in 0..=top + 1 {
            let mut ideal: Echelon<Monomial> = Echelon::new();
            for (f, &k) in local.iter().zip(&degs) {
                if k > n {
                    continue;
                }
                for m in monomials_of_degree(d, n - k) {
                    let row: SparseVec<Monomial> = f
                        .iter()
                        .map(|(e, c)| {
                            let mut x: LocalExps = e.clone();
                            for (xi, mi) in x.iter_mut().zip(m.exponents()) {
                                *xi += mi;
                            }
                            (Monomial::from_exponents(&x), c.clone())
                        })
                        .collect();
                    ideal.insert(row);
                }
            }
            let all = monomials_of_degree(d, n);
            let pivots: std::collections::BTreeSet<&Monomial> = ideal.pivots().collect();
            let mut index: HashMap<Monomial, u16> = HashMap::new();
            for m in all.iter().rev().filter(|m| !pivots.contains(m)) {
                index.insert(m.clone(), next_index);
                next_index += 1;
            }
            if n == top + 1 {
                // A system of parameters leaves nothing above the socle degree.
                if !index.is_empty() {
                    return Err(not_params());
                }
                break;
            }
            for m in all {
                let r = ideal.reduce(SparseVec::from([(m.clone(), FieldScalar::one())]));
                let v: Vec<(u16, FieldScalar)> = r.into_iter().map(|(k, c)| (index[&k], c)).collect();
                nf.insert(SmallVec::from_slice(m.exponents()), v);
            }
        }
        Ok(SliceQuotient {
            range,
            top,
            nf,
            standard_count: next_index as usize,
        })
    }
}

/// Quotient by a set of per-slice denominators of a [`RepSum`].
#[derive(Debug)]
pub struct QuotientContext {
    nvars: usize,
    slices: Vec<SliceQuotient>,
    /// Variables outside every quotient slice must not occur.
    covered: Vec<bool>,
    var_slice: Vec<usize>,
}

/// The representation slice whose variables carry all of `p`, if any.
pub fn slice_of(rep: &RepSum, p: &MultiPoly) -> Option<usize> {
    let used: Vec<usize> = (0..rep.dim())
        .filter(|&v| p.terms().any(|(m, _)| m.exponents()[v] > 0))
        .collect();
    rep.slices()
        .iter()
        .position(|s| used.iter().all(|v| s.vars().contains(v)) && !used.is_empty())
}

impl QuotientContext {
    pub fn new(rep: &RepSum, denominators: &[MultiPoly]) -> Result<Self, BasisError> {
        let mut by_slice: Vec<Vec<MultiPoly>> = vec![Vec::new(); rep.slices().len()];
        for f in denominators {
            let s = slice_of(rep, f).ok_or(BasisError::NotParameters { slice: 0 })?;
            by_slice[s].push(f.clone());
        }
        let mut slices = Vec::new();
        let mut covered = vec![false; rep.dim()];
        let mut var_slice = vec![0; rep.dim()];
        for (i, s) in rep.slices().iter().enumerate() {
            for v in s.vars() {
                var_slice[v] = i;
            }
        }
        for (i, dens) in by_slice.iter().enumerate() {
            if dens.is_empty() {
                continue;
            }
            let r = rep.slices()[i].vars();
            for v in r.clone() {
                covered[v] = true;
            }
            slices.push(SliceQuotient::new(i, r, dens)?);
        }
        Ok(QuotientContext {
            nvars: rep.dim(),
            slices,
            covered,
            var_slice,
        })
    }

    /// Dimension of the whole quotient, `∏ deg f_j` for a system of parameters.
    pub fn dimension(&self) -> usize {
        self.slices.iter().map(|s| s.standard_count).product()
    }

    pub fn normal_form(&self, p: &MultiPoly) -> Result<NormalForm, BasisError> {
        assert_eq!(p.vars().len(), self.nvars, "polynomial over the context's variables");
        let mut out = NormalForm::new();
        for (m, c) in p.terms() {
            let e = m.exponents();
            if let Some(v) = (0..self.nvars).find(|&v| e[v] > 0 && !self.covered[v]) {
                return Err(BasisError::NotParameters {
                    slice: self.var_slice[v],
                });
            }
            let mut partial: Vec<(NfKey, FieldScalar)> =
                vec![(SmallVec::from_elem(0, self.slices.len()), c.clone())];
            for (si, s) in self.slices.iter().enumerate() {
                let local: LocalExps = SmallVec::from_slice(&e[s.range.clone()]);
                let deg: u32 = local.iter().map(|&x| x as u32).sum();
                if deg > s.top {
                    partial.clear();
                    break;
                }
                let img = &s.nf[&local];
                let mut next = Vec::with_capacity(partial.len() * img.len());
                for (k, x) in &partial {
                    for (idx, y) in img {
                        let mut k2 = k.clone();
                        k2[si] = *idx;
                        next.push((k2, x * y));
                    }
                }
                partial = next;
            }
            for (k, x) in partial {
                add_into(&mut out, k, &x);
            }
        }
        Ok(out)
    }
}

fn add_into(v: &mut NormalForm, k: NfKey, x: &FieldScalar) {
    if x.is_zero() {
        return;
    }
    match v.get_mut(&k) {
        Some(e) => {
            *e += x;
            if e.is_zero() {
                v.remove(&k);
            }
        }
        None => {
            v.insert(k, x.clone());
        }
    }
}

/// Normal form of `a·b` from those of `a` and `b`, for factors supported on
/// disjoint slices (index 0 is the standard monomial `1` of every slice).
pub fn nf_product(a: &NormalForm, b: &NormalForm) -> NormalForm {
    let mut out = NormalForm::new();
    for (ka, xa) in a {
        for (kb, xb) in b {
            debug_assert!(ka.iter().zip(kb).all(|(p, q)| *p == 0 || *q == 0));
            let k: NfKey = ka.iter().zip(kb).map(|(p, q)| p + q).collect();
            add_into(&mut out, k, &(xa * xb));
        }
    }
    out
}

pub fn nf_axpy(acc: &mut NormalForm, c: &FieldScalar, v: &NormalForm) {
    for (k, x) in v {
        add_into(acc, k.clone(), &(c * x));
    }
}
