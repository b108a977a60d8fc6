use std::collections::HashMap;
use std::sync::Arc;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::quotient::{nf_axpy, nf_product, NormalForm, QuotientContext};
use super::tables::{self, LOCAL_NAMES};
use super::{BasisFamily, CovariantTuple, IntegrityBasis};
use crate::error::BasisError;
use crate::exact_arith::FieldScalar;
use crate::groups::{c_i, td, CGTensor, FiniteGroup, RepSum};
use crate::molien::{couple, elementary_family, molien_over, GenFun};
use crate::polyalg::{monomials_of_degree, Echelon, MultiPoly, VarTable};

#[derive(Clone, Debug, Default)]
pub struct BuildOptions {
    /// Perturbs one entry of one coupling tensor used by the first coupling
    /// step, chosen by this seed. For exercising the verification suite.
    pub cg_fault: Option<u64>,
}

fn is_builtin(group: &FiniteGroup) -> bool {
    let reference = match group.name() {
        "Td" => td(),
        "Ci" => c_i(),
        _ => return false,
    };
    group.labels() == reference.labels() && group.irreps() == reference.irreps()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Source {
    Tables,
    Projection,
}

fn label(group: &FiniteGroup, irrep: usize) -> String {
    group.irrep(irrep).label().to_string()
}

fn to_counts(n: &[num_bigint::BigInt]) -> Vec<usize> {
    n.iter().map(|c| c.to_usize().expect("numerator counts are nonnegative")).collect()
}

/// Tuple `(P_{κ0} p)_κ`, covariant whenever its first partner is nonzero.
fn projected_tuple(rep: &RepSum, gamma: usize, p: &MultiPoly) -> Option<CovariantTuple> {
    let first = rep.transfer(gamma, 0, 0, p);
    if first.is_zero() {
        return None;
    }
    let d = rep.group().irrep(gamma).dim();
    let mut partners = vec![first];
    partners.extend((1..d).map(|k| rep.transfer(gamma, k, 0, p)));
    CovariantTuple::new(gamma, partners).ok()
}

/// Elementary integrity bases of slice `slice` of `rep` for every final
/// irrep, with polynomials over the full variable table.
pub fn elementary_family_in(rep: &RepSum, slice: usize) -> Result<BasisFamily, BasisError> {
    elementary_in(rep, slice, Source::Tables)
}

fn elementary_in(rep: &RepSum, slice: usize, source: Source) -> Result<BasisFamily, BasisError> {
    let group = rep.group();
    let s = rep.slices()[slice].clone();
    let initial = label(group, s.irrep);
    let table = is_builtin(group)
        .then(|| tables::lookup(group.name(), &initial))
        .flatten()
        .ok_or_else(|| BasisError::UnknownPair {
            group: group.name().to_string(),
            initial: initial.clone(),
            final_irrep: "*".to_string(),
        })?;
    let local = VarTable::new(LOCAL_NAMES[..s.dim].iter().copied())?.into_shared();
    let map: Vec<usize> = s.vars().collect();
    let read = |text: &str| -> Result<MultiPoly, BasisError> {
        Ok(MultiPoly::parse(&local, text)?.embed(rep.vars(), &map)?)
    };
    let denominators: Vec<MultiPoly> = table.denominators.iter().map(|t| read(t)).collect::<Result<_, _>>()?;
    let degrees: Vec<u32> = denominators.iter().map(|f| f.degree().unwrap_or(0)).collect();
    let ctx = QuotientContext::new(rep, &denominators)?;

    let mut numerators = Vec::with_capacity(group.irreps().len());
    for gamma in 0..group.irreps().len() {
        let targets = to_counts(&molien_over(group, gamma, &[s.irrep])?.canonicalize(&degrees)?);
        let mut cands = Vec::new();
        if source == Source::Tables {
            for (lab, partners) in table.numerators.iter().filter(|(l, _)| *l == group.irrep(gamma).label()) {
                let polys: Vec<MultiPoly> = partners.iter().map(|t| read(t)).collect::<Result<_, _>>()?;
                let tuple = CovariantTuple::new(gamma, polys)?;
                if !tuple.is_equivariant(rep) {
                    return Err(BasisError::NotCovariant {
                        irrep: lab.to_string(),
                        partner: 0,
                    });
                }
                cands.push(tuple);
            }
        }
        // Degrees the table does not cover fall back to projected monomials.
        for (n, &want) in targets.iter().enumerate() {
            let have = cands.iter().filter(|c| c.degree as usize == n).count();
            if have >= want {
                continue;
            }
            for m in monomials_of_degree(s.dim, n as u32) {
                let p = MultiPoly::monomial(&local, m, FieldScalar::one()).embed(rep.vars(), &map)?;
                if let Some(t) = projected_tuple(rep, gamma, &p) {
                    cands.push(t);
                }
            }
        }
        let nfs = cands
            .iter()
            .map(|c| ctx.normal_form(&c.partners[0]))
            .collect::<Result<Vec<_>, _>>()?;
        numerators.push(select(cands, nfs, &[], &targets)?);
    }
    Ok(BasisFamily {
        rep: rep.clone(),
        denominators: denominators.into_iter().map(|f| (slice, f)).collect(),
        numerators,
    })
}

fn elementary_rep(group: &Arc<FiniteGroup>, initial: &str) -> Result<RepSum, BasisError> {
    let dim = group.irrep(group.irrep_index(initial)?).dim();
    if dim > LOCAL_NAMES.len() {
        return Err(BasisError::UnknownPair {
            group: group.name().to_string(),
            initial: initial.to_string(),
            final_irrep: "*".to_string(),
        });
    }
    Ok(RepSum::with_names(group, &[initial], LOCAL_NAMES[..dim].iter().copied())?)
}

/// Tabulated elementary basis over the variables `α, β, γ`.
pub fn elementary_basis(
    group: &Arc<FiniteGroup>,
    initial: &str,
    final_irrep: &str,
) -> Result<IntegrityBasis, BasisError> {
    elementary_with(group, initial, final_irrep, Source::Tables)
}

/// Same denominators, numerators found by projecting monomials only.
pub fn elementary_basis_projected(
    group: &Arc<FiniteGroup>,
    initial: &str,
    final_irrep: &str,
) -> Result<IntegrityBasis, BasisError> {
    elementary_with(group, initial, final_irrep, Source::Projection)
}

fn elementary_with(
    group: &Arc<FiniteGroup>,
    initial: &str,
    final_irrep: &str,
    source: Source,
) -> Result<IntegrityBasis, BasisError> {
    let gamma = group.irrep_index(final_irrep)?;
    let rep = elementary_rep(group, initial)?;
    let fam = elementary_in(&rep, 0, source).map_err(|e| match e {
        BasisError::UnknownPair { group, initial, .. } => BasisError::UnknownPair {
            group,
            initial,
            final_irrep: final_irrep.to_string(),
        },
        other => other,
    })?;
    Ok(fam.basis(gamma))
}

/// First-independent-wins selection by degree. `forced` tuples are accepted
/// unconditionally ahead of the candidates.
fn select(
    cands: Vec<CovariantTuple>,
    nfs: Vec<NormalForm>,
    forced: &[(CovariantTuple, NormalForm)],
    targets: &[usize],
) -> Result<Vec<CovariantTuple>, BasisError> {
    let mut order: Vec<usize> = (0..cands.len()).collect();
    order.sort_by_key(|&i| cands[i].degree);
    let mut echelon: Echelon<super::quotient::NfKey> = Echelon::new();
    let mut counts: HashMap<u32, usize> = HashMap::new();
    let mut accepted: Vec<CovariantTuple> = Vec::new();
    for (t, nf) in forced {
        echelon.insert(nf.clone());
        *counts.entry(t.degree).or_default() += 1;
        accepted.push(t.clone());
    }
    let mut slots: Vec<Option<CovariantTuple>> = cands.into_iter().map(Some).collect();
    let mut nfs: Vec<Option<NormalForm>> = nfs.into_iter().map(Some).collect();
    for i in order {
        let deg = slots[i].as_ref().expect("visited once").degree;
        let want = targets.get(deg as usize).copied().unwrap_or(0);
        let have = counts.entry(deg).or_default();
        // Once a degree is full every further candidate is dependent.
        if *have >= want {
            continue;
        }
        if echelon.insert(nfs[i].take().expect("visited once")) {
            *have += 1;
            accepted.push(slots[i].take().expect("visited once"));
        }
    }
    accepted.sort_by_key(|t| t.degree);
    let top = targets.len().max(counts.keys().map(|&d| d as usize + 1).max().unwrap_or(0));
    for n in 0..top {
        let found = counts.get(&(n as u32)).copied().unwrap_or(0);
        let expected = targets.get(n).copied().unwrap_or(0);
        if found != expected {
            return Err(BasisError::CountMismatch {
                degree: n as u32,
                found,
                expected,
            });
        }
    }
    Ok(accepted)
}

/// Keeps, degree by degree, the candidates whose images in `P/(f)P` are
/// independent of those already kept; `accepted` numerators are kept first.
/// For a complete set of lower-degree numerators this is exactly
/// independence modulo the submodule generated so far. Counts per degree
/// must equal `targets`.
pub fn reduce_candidates(
    rep: &RepSum,
    denominators: &[MultiPoly],
    accepted: &[CovariantTuple],
    candidates: Vec<CovariantTuple>,
    targets: &[usize],
) -> Result<Vec<CovariantTuple>, BasisError> {
    let ctx = QuotientContext::new(rep, denominators)?;
    let forced = accepted
        .iter()
        .map(|t| Ok((t.clone(), ctx.normal_form(&t.partners[0])?)))
        .collect::<Result<Vec<_>, BasisError>>()?;
    let nfs = candidates
        .par_iter()
        .map(|c| ctx.normal_form(&c.partners[0]))
        .collect::<Result<Vec<_>, _>>()?;
    select(candidates, nfs, &forced, targets)
}

/// Coupling tensors, computed once per irrep triple and checked for
/// equivariance; optionally with one seeded perturbation.
struct CgCache<'a> {
    group: &'a FiniteGroup,
    map: HashMap<(usize, usize, usize), Vec<CGTensor>>,
    fault: Option<(usize, usize, usize, usize, usize, usize, usize)>,
}

impl<'a> CgCache<'a> {
    fn new(group: &'a FiniteGroup) -> Self {
        CgCache {
            group,
            map: HashMap::new(),
            fault: None,
        }
    }

    fn plan_fault(&mut self, seed: u64, left: &BasisFamily, right: &BasisFamily) {
        let g = self.group;
        let n = g.irreps().len();
        let mut eligible = Vec::new();
        for a in (0..n).filter(|&a| !left.numerators[a].is_empty()) {
            for b in (0..n).filter(|&b| !right.numerators[b].is_empty()) {
                for c in 0..n {
                    let dims = g.irrep(a).dim() * g.irrep(b).dim() * g.irrep(c).dim();
                    if dims > 1 && g.product_multiplicity(a, b, c) > 0 {
                        eligible.push((a, b, c));
                    }
                }
            }
        }
        if eligible.is_empty() {
            return;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = eligible[rng.gen_range(0..eligible.len())];
        let mult = rng.gen_range(0..g.product_multiplicity(a, b, c));
        let (da, db, dc) = (g.irrep(a).dim(), g.irrep(b).dim(), g.irrep(c).dim());
        self.fault = Some((a, b, c, mult, rng.gen_range(0..da), rng.gen_range(0..db), rng.gen_range(0..dc)));
    }

    fn get(&mut self, a: usize, b: usize, c: usize) -> Result<&[CGTensor], BasisError> {
        if !self.map.contains_key(&(a, b, c)) {
            let mut ts = self.group.cg_tensor(a, b, c)?;
            if let Some((fa, fb, fc, m, i, j, k)) = self.fault {
                if (fa, fb, fc) == (a, b, c) {
                    let v = ts[m].get(i, j, k) + &FieldScalar::one();
                    ts[m].set(i, j, k, v);
                }
            }
            if let Some(bad) = ts.iter().find(|t| !t.is_equivariant(self.group)) {
                return Err(BasisError::NotCovariant {
                    irrep: label(self.group, c),
                    partner: bad.index,
                });
            }
            self.map.insert((a, b, c), ts);
        }
        Ok(&self.map[&(a, b, c)])
    }
}

struct Coupled {
    tuple: CovariantTuple,
    nf: Option<NormalForm>,
}

fn couple_inner(
    cg: &mut CgCache<'_>,
    left: &BasisFamily,
    right: &BasisFamily,
    gamma: usize,
    nfs: Option<(&[Vec<Vec<NormalForm>>], &[Vec<Vec<NormalForm>>])>,
) -> Result<Vec<Coupled>, BasisError> {
    let g = cg.group;
    let n = g.irreps().len();
    // Construction order: left index, right index, multiplicity index, with
    // indices running over each family irrep by irrep.
    let mut jobs = Vec::new();
    let mut li = 0usize;
    for a in 0..n {
        for (ia, _) in left.numerators[a].iter().enumerate() {
            let mut ri = 0usize;
            for b in 0..n {
                let m = g.product_multiplicity(a, b, gamma);
                for (ib, _) in right.numerators[b].iter().enumerate() {
                    for k in 0..m {
                        jobs.push((li, ri, k, a, ia, b, ib));
                    }
                    ri += 1;
                }
            }
            li += 1;
        }
    }
    let mut tensors: HashMap<(usize, usize), Vec<CGTensor>> = HashMap::new();
    for &(_, _, _, a, _, b, _) in &jobs {
        if let std::collections::hash_map::Entry::Vacant(e) = tensors.entry((a, b)) {
            e.insert(cg.get(a, b, gamma)?.to_vec());
        }
    }
    let dg = g.irrep(gamma).dim();
    let mut out: Vec<(u32, usize, Coupled)> = jobs
        .par_iter()
        .enumerate()
        .map(|(pos, &(_, _, k, a, ia, b, ib))| {
            let phi = &left.numerators[a][ia];
            let psi = &right.numerators[b][ib];
            let nf_of = |side: &[Vec<Vec<NormalForm>>], irrep: usize, idx: usize, p: usize| side[irrep][idx][p].clone();
            if phi.is_unit() || psi.is_unit() {
                let (keep, side, irrep, idx) = if phi.is_unit() { (psi, 1, b, ib) } else { (phi, 0, a, ia) };
                let nf = nfs.map(|(l, r)| if side == 0 { nf_of(l, irrep, idx, 0) } else { nf_of(r, irrep, idx, 0) });
                let tuple = CovariantTuple {
                    irrep: gamma,
                    degree: keep.degree,
                    partners: keep.partners.clone(),
                };
                return (tuple.degree, pos, Coupled { tuple, nf });
            }
            let t = &tensors[&(a, b)][k];
            let vars = phi.partners[0].vars();
            let mut partners = vec![MultiPoly::zero(vars); dg];
            let mut nf = nfs.map(|_| NormalForm::new());
            for (x, fx) in phi.partners.iter().enumerate() {
                for (y, fy) in psi.partners.iter().enumerate() {
                    if (0..dg).all(|kappa| t.get(x, y, kappa).is_zero()) {
                        continue;
                    }
                    let prod = fx.poly_mul(fy).expect("shared variable table");
                    for (kappa, part) in partners.iter_mut().enumerate() {
                        let c = t.get(x, y, kappa);
                        if !c.is_zero() {
                            *part = &*part + &prod.scale(c);
                        }
                    }
                    if let (Some(acc), Some((l, r))) = (nf.as_mut(), nfs) {
                        let c = t.get(x, y, 0);
                        if !c.is_zero() {
                            let p = nf_product(&l[a][ia][x], &r[b][ib][y]);
                            nf_axpy(acc, c, &p);
                        }
                    }
                }
            }
            let tuple = CovariantTuple {
                irrep: gamma,
                degree: phi.degree + psi.degree,
                partners,
            };
            (tuple.degree, pos, Coupled { tuple, nf })
        })
        .collect();
    out.sort_by_key(|(d, pos, _)| (*d, *pos));
    Ok(out.into_iter().map(|(_, _, c)| c).collect())
}

/// All Clebsch–Gordan products of `left` and `right` numerators that can
/// carry `gamma`, degree-sorted; ties keep (left, right, multiplicity) order.
/// A product with the invariant `1` is the other tuple unchanged.
pub fn couple_numerators(
    left: &BasisFamily,
    right: &BasisFamily,
    gamma: usize,
) -> Result<Vec<CovariantTuple>, BasisError> {
    let mut cg = CgCache::new(left.rep.group());
    Ok(couple_inner(&mut cg, left, right, gamma, None)?
        .into_iter()
        .map(|c| c.tuple)
        .collect())
}

fn all_normal_forms(ctx: &QuotientContext, fam: &BasisFamily) -> Result<Vec<Vec<Vec<NormalForm>>>, BasisError> {
    fam.numerators
        .iter()
        .map(|ts| {
            ts.par_iter()
                .map(|t| t.partners.iter().map(|p| ctx.normal_form(p)).collect())
                .collect()
        })
        .collect()
}

/// Integrity bases for every final irrep, coupling the slices right to
/// left: `acc = elem(last)`, then `acc = couple(elem(k), acc)`.
pub fn build_family(rep: &RepSum, opts: &BuildOptions) -> Result<BasisFamily, BasisError> {
    let group = rep.group();
    let slices = rep.slices();
    let Some(last) = slices.len().checked_sub(1) else {
        return Err(BasisError::Malformed("empty representation".into()));
    };
    let nirr = group.irreps().len();
    let mut acc = elementary_family_in(rep, last)?;
    let mut acc_gf = elementary_family(group, slices[last].irrep)?;
    let mut cg = CgCache::new(group);
    for k in (0..last).rev() {
        let left = elementary_family_in(rep, k)?;
        let left_gf = elementary_family(group, slices[k].irrep)?;
        if let (Some(seed), true) = (opts.cg_fault, k + 1 == last) {
            cg.plan_fault(seed, &left, &acc);
        }
        let gfs: Vec<GenFun> = (0..nirr).map(|g| couple(group, g, &left_gf, &acc_gf)).collect();
        let mut denominators = left.denominators.clone();
        denominators.extend(acc.denominators.iter().cloned());
        let degrees: Vec<u32> = denominators.iter().map(|(_, f)| f.degree().unwrap_or(0)).collect();
        let plain: Vec<MultiPoly> = denominators.iter().map(|(_, f)| f.clone()).collect();
        let ctx = QuotientContext::new(rep, &plain)?;
        let lnf = all_normal_forms(&ctx, &left)?;
        let rnf = all_normal_forms(&ctx, &acc)?;
        let mut numerators = Vec::with_capacity(nirr);
        for gamma in 0..nirr {
            let targets = to_counts(&gfs[gamma].canonicalize(&degrees)?);
            let coupled = couple_inner(&mut cg, &left, &acc, gamma, Some((&lnf, &rnf)))?;
            let (cands, nfs): (Vec<_>, Vec<_>) = coupled
                .into_iter()
                .map(|c| (c.tuple, c.nf.expect("normal forms requested")))
                .unzip();
            numerators.push(select(cands, nfs, &[], &targets)?);
        }
        acc = BasisFamily {
            rep: rep.clone(),
            denominators,
            numerators,
        };
        acc_gf = gfs;
    }
    Ok(acc)
}

/// Integrity basis of the `gamma`-covariants of `rep`.
pub fn build_full_basis(rep: &RepSum, gamma: usize) -> Result<IntegrityBasis, BasisError> {
    Ok(build_family(rep, &BuildOptions::default())?.basis(gamma))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projection_matches_table_counts() {
        let g = td();
        for init in ["A1", "A2", "E", "F1", "F2"] {
            for fin in ["A1", "A2", "E", "F1", "F2"] {
                let a = elementary_basis(&g, init, fin).unwrap();
                let b = elementary_basis_projected(&g, init, fin).unwrap();
                assert_eq!(a.numerator_counts(), b.numerator_counts(), "{init}->{fin}");
            }
        }
    }

    #[test]
    fn unit_coupling_is_identity() {
        let g = c_i();
        let r = RepSum::new(&g, &["A1", "A2"]).unwrap();
        let left = elementary_family_in(&r, 0).unwrap();
        let right = elementary_family_in(&r, 1).unwrap();
        let a2 = g.irrep_index("A2").unwrap();
        let out = couple_numerators(&left, &right, a2).unwrap();
        assert_eq!(out, right.numerators(a2).to_vec());
    }
}
