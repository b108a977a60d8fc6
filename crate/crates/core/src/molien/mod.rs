//! Multivariate generating functions `N(t₁,…,t_μ) / ∏(1 − t_i^d)` with
//! integer numerators: the Molien–Burnside sum, recursive coupling over
//! direct sums, Taylor coefficients and canonical numerators.

pub mod ipoly;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::error::GenFunError;
use crate::exact_arith::{FieldScalar, Rational};
use crate::groups::{FiniteGroup, RepSum};
use crate::polyalg::Matrix;
use ipoly::IPoly;

/// Rational function in `nvars` grading variables. The denominator is kept
/// factored as a multiset of `(variable, degree)` pairs, each standing for
/// `1 − t_var^degree`.
#[derive(Clone, Debug)]
pub struct GenFun {
    nvars: usize,
    numer: IPoly,
    denom: BTreeMap<(usize, u32), u32>,
}

impl PartialEq for GenFun {
    /// Equality as rational functions (cross-multiplication after removing
    /// common factors).
    fn eq(&self, other: &Self) -> bool {
        if self.nvars != other.nvars {
            return false;
        }
        let mut lhs = self.numer.clone();
        let mut rhs = other.numer.clone();
        let keys: std::collections::BTreeSet<(usize, u32)> =
            self.denom.keys().chain(other.denom.keys()).copied().collect();
        for k in keys {
            let a = self.denom.get(&k).copied().unwrap_or(0);
            let b = other.denom.get(&k).copied().unwrap_or(0);
            for _ in 0..b.saturating_sub(a) {
                lhs = ipoly::mul_one_minus(&lhs, k.0, k.1);
            }
            for _ in 0..a.saturating_sub(b) {
                rhs = ipoly::mul_one_minus(&rhs, k.0, k.1);
            }
        }
        lhs == rhs
    }
}

impl Eq for GenFun {}

impl GenFun {
    pub fn zero(nvars: usize) -> Self {
        GenFun {
            nvars,
            numer: IPoly::new(),
            denom: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        GenFun {
            nvars,
            numer: ipoly::one(nvars),
            denom: BTreeMap::new(),
        }
    }

    /// `numerator / ∏ (1 − t_var^deg)` over the listed factors.
    pub fn new(nvars: usize, numer: IPoly, factors: &[(usize, u32)]) -> Self {
        let mut g = GenFun {
            nvars,
            numer,
            denom: BTreeMap::new(),
        };
        g.numer.retain(|k, c| {
            assert_eq!(k.len(), nvars, "exponent vector length");
            !c.is_zero()
        });
        for &f in factors {
            assert!(f.0 < nvars && f.1 > 0, "invalid denominator factor");
            *g.denom.entry(f).or_default() += 1;
        }
        g
    }

    /// Univariate `Σ c_k t^k / ∏ (1 − t^d)`.
    pub fn univariate(numer: &[i64], degrees: &[u32]) -> Self {
        let n = numer
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| (vec![k as u32], BigInt::from(c)))
            .collect();
        let f: Vec<(usize, u32)> = degrees.iter().map(|&d| (0, d)).collect();
        Self::new(1, n, &f)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn numerator(&self) -> &IPoly {
        &self.numer
    }

    /// Factors with repetition, sorted by (variable, degree).
    pub fn denominator(&self) -> Vec<(usize, u32)> {
        self.denom
            .iter()
            .flat_map(|(&f, &m)| std::iter::repeat_n(f, m as usize))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_empty()
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut out = self.clone();
        if c == 0 {
            out.numer.clear();
            out.denom.clear();
            return out;
        }
        for v in out.numer.values_mut() {
            *v *= c;
        }
        out
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, GenFunError> {
        if self.nvars != other.nvars {
            return Err(GenFunError::VariableMismatch(self.nvars, other.nvars));
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let mut denom = self.denom.clone();
        for (&k, &m) in &other.denom {
            let e = denom.entry(k).or_default();
            *e = (*e).max(m);
        }
        let lift = |g: &GenFun| {
            let mut n = g.numer.clone();
            for (&k, &m) in &denom {
                let have = g.denom.get(&k).copied().unwrap_or(0);
                for _ in have..m {
                    n = ipoly::mul_one_minus(&n, k.0, k.1);
                }
            }
            n
        };
        let mut numer = lift(self);
        ipoly::add_into(&mut numer, &lift(other), &BigInt::one());
        Ok(GenFun {
            nvars: self.nvars,
            numer,
            denom,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, GenFunError> {
        if self.nvars != other.nvars {
            return Err(GenFunError::VariableMismatch(self.nvars, other.nvars));
        }
        let mut denom = self.denom.clone();
        for (&k, &m) in &other.denom {
            *denom.entry(k).or_default() += m;
        }
        Ok(GenFun {
            nvars: self.nvars,
            numer: ipoly::mul(&self.numer, &other.numer),
            denom,
        })
    }

    /// Product over disjoint variable sets: `self(t₁..t_m)·other(t_{m+1}..)`.
    pub fn tensor(&self, other: &Self) -> Self {
        let m = self.nvars;
        let mut denom = self.denom.clone();
        for (&(v, d), &mult) in &other.denom {
            *denom.entry((v + m, d)).or_default() += mult;
        }
        GenFun {
            nvars: m + other.nvars,
            numer: ipoly::tensor(&self.numer, &other.numer),
            denom,
        }
    }

    /// Divides by `1 − t` in a new, last grading variable.
    pub fn append_trivial_factor(&self) -> Self {
        let mut numer = IPoly::new();
        for (k, c) in &self.numer {
            let mut k = k.clone();
            k.push(0);
            numer.insert(k, c.clone());
        }
        let mut denom = self.denom.clone();
        *denom.entry((self.nvars, 1)).or_default() += 1;
        GenFun {
            nvars: self.nvars + 1,
            numer,
            denom,
        }
    }

    /// All grading variables set to a single `t`.
    pub fn specialize(&self) -> Self {
        let n = ipoly::specialize(&self.numer);
        let numer = n
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (vec![k as u32], c))
            .collect();
        let mut denom = BTreeMap::new();
        for (&(_, d), &m) in &self.denom {
            *denom.entry((0, d)).or_default() += m;
        }
        GenFun {
            nvars: 1,
            numer,
            denom,
        }
    }

    /// Coefficients `c₀..c_order` of the series in a single variable `t`.
    pub fn taylor(&self, order: usize) -> Vec<BigInt> {
        let uni = self.specialize();
        let mut s = vec![BigInt::zero(); order + 1];
        for (k, c) in &uni.numer {
            let k = k[0] as usize;
            if k <= order {
                s[k] += c;
            }
        }
        for (&(_, d), &m) in &uni.denom {
            let d = d as usize;
            for _ in 0..m {
                for k in d..=order {
                    let prev = s[k - d].clone();
                    s[k] += prev;
                }
            }
        }
        s
    }

    /// Numerator over `∏_{d ∈ targets} (1 − t^d)` after setting every
    /// grading variable to `t`, as coefficients `[n₀, n₁, …]`.
    pub fn canonicalize(&self, target_degrees: &[u32]) -> Result<Vec<BigInt>, GenFunError> {
        let uni = self.specialize();
        let mut n = uni.numer.clone();
        for &d in target_degrees {
            n = ipoly::mul_one_minus(&n, 0, d);
        }
        for (&(_, d), &m) in &uni.denom {
            for _ in 0..m {
                n = ipoly::div_one_minus(&n, 0, d).ok_or(GenFunError::NotPolynomial)?;
            }
        }
        Ok(ipoly::specialize(&n))
    }

    /// Multivariate numerator over the given factors, keeping the grading.
    pub fn canonicalize_multi(&self, targets: &[(usize, u32)]) -> Result<GenFun, GenFunError> {
        let mut n = self.numer.clone();
        for &(v, d) in targets {
            if v >= self.nvars {
                return Err(GenFunError::VariableMismatch(v + 1, self.nvars));
            }
            n = ipoly::mul_one_minus(&n, v, d);
        }
        for (&(v, d), &m) in &self.denom {
            for _ in 0..m {
                n = ipoly::div_one_minus(&n, v, d).ok_or(GenFunError::NotPolynomial)?;
            }
        }
        Ok(GenFun::new(self.nvars, n, targets))
    }

    pub fn to_json(&self) -> Value {
        let mut numer = Map::new();
        for (k, c) in &self.numer {
            let key = k.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
            let val = match c.to_i64() {
                Some(v) => json!(v),
                None => json!(c.to_string()),
            };
            numer.insert(key, val);
        }
        let denom: Vec<Value> = self.denominator().into_iter().map(|(v, d)| json!([v, d])).collect();
        json!({ "nvars": self.nvars, "numerator": numer, "denominator": denom })
    }
}

fn var_name(nvars: usize, v: usize) -> String {
    if nvars == 1 {
        "t".to_string()
    } else {
        format!("t{}", v + 1)
    }
}

fn fmt_monomial(nvars: usize, k: &[u32]) -> String {
    let parts: Vec<String> = k
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| {
            let n = var_name(nvars, v);
            if e == 1 {
                n
            } else {
                format!("{n}^{e}")
            }
        })
        .collect();
    parts.join("*")
}

fn fmt_numerator(nvars: usize, terms: &[(Vec<u32>, BigInt)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (k, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let mono = fmt_monomial(nvars, k);
        if mono.is_empty() {
            s.push_str(&a.to_string());
        } else if a.is_one() {
            s.push_str(&mono);
        } else if nvars == 1 {
            s.push_str(&format!("{a}{mono}"));
        } else {
            s.push_str(&format!("{a}*{mono}"));
        }
    }
    s
}

fn fmt_denominator(nvars: usize, factors: &BTreeMap<(usize, u32), u32>) -> String {
    let mut by_deg: Vec<(&(usize, u32), &u32)> = factors.iter().collect();
    by_deg.sort_by_key(|((v, d), _)| (*d, *v));
    by_deg
        .into_iter()
        .map(|(&(v, d), &m)| {
            let base = if d == 1 {
                format!("(1-{})", var_name(nvars, v))
            } else {
                format!("(1-{}^{d})", var_name(nvars, v))
            };
            if m == 1 {
                base
            } else {
                format!("{base}^{m}")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Display for GenFun {
    /// `(numerator)/((1-t^2)^3 (1-t^3))`, numerator terms by increasing degree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(Vec<u32>, BigInt)> = self.numer.iter().map(|(k, c)| (k.clone(), c.clone())).collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        let num = fmt_numerator(self.nvars, &terms);
        if self.denom.is_empty() {
            return f.write_str(&num);
        }
        write!(f, "({num})/({})", fmt_denominator(self.nvars, &self.denom))
    }
}

/// Univariate `(Σ n_k t^k)/∏(1 − t^d)` in the same text style.
pub fn format_univariate(numer: &[BigInt], degrees: &[u32]) -> String {
    let mut counts: BTreeMap<(usize, u32), u32> = BTreeMap::new();
    for &d in degrees {
        *counts.entry((0, d)).or_default() += 1;
    }
    let terms: Vec<(Vec<u32>, BigInt)> = numer
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (vec![k as u32], c.clone()))
        .collect();
    let num = fmt_numerator(1, &terms);
    if counts.is_empty() {
        num
    } else {
        format!("({num})/({})", fmt_denominator(1, &counts))
    }
}

fn matrix_order(m: &Matrix) -> u32 {
    let id = Matrix::identity(m.nrows());
    let mut x = m.clone();
    let mut k = 1;
    while x != id {
        x = x.mul(m);
        k += 1;
    }
    k
}

/// Exponent of the image of an irrep: lcm of its matrix orders.
pub fn irrep_exponent(group: &FiniteGroup, irrep: usize) -> u32 {
    group
        .classes()
        .iter()
        .map(|c| matrix_order(group.irrep(irrep).matrix(c.members[0])))
        .fold(1, |a, b| a.lcm(&b))
}

/// Exact quotient of univariate polynomials over the field (ascending
/// coefficients); `None` on a nonzero remainder.
fn poly_div_exact(num: &[FieldScalar], den: &[FieldScalar]) -> Option<Vec<FieldScalar>> {
    let mut r: Vec<FieldScalar> = num.to_vec();
    let dl = den.len() - 1;
    let lead_inv = den[dl].inverse().ok()?;
    if r.len() < den.len() {
        return r.iter().all(FieldScalar::is_zero).then(Vec::new);
    }
    let mut q = vec![FieldScalar::zero(); r.len() - dl];
    for i in (0..q.len()).rev() {
        let c = &r[i + dl] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            r[i + j] -= &(&c * dj);
        }
        q[i] = c;
    }
    r.iter().all(FieldScalar::is_zero).then_some(q)
}

/// Molien–Burnside sum `(1/|G|) Σ_g χ_Γ(g) / ∏_i det(1 − t_i M_i(g))`, one
/// grading variable per slice of `rep`. Each slice's denominator is
/// `(1 − t_i^e)^{d_i}` with `e` the exponent of the slice's irrep image.
pub fn molien_direct(group: &FiniteGroup, gamma: usize, rep: &RepSum) -> Result<GenFun, GenFunError> {
    let irreps: Vec<usize> = rep.slices().iter().map(|s| s.irrep).collect();
    molien_over(group, gamma, &irreps)
}

/// [`molien_direct`] for the direct sum of the listed irreps.
pub fn molien_over(group: &FiniteGroup, gamma: usize, slices: &[usize]) -> Result<GenFun, GenFunError> {
    let nvars = slices.len();
    let exps: Vec<u32> = slices.iter().map(|&s| irrep_exponent(group, s)).collect();
    // Per class: ∏_i Q_i(t_i), with Q_i = (1 − t^e)^d / det(1 − t M_i(g)).
    let per_class: Vec<BTreeMap<Vec<u32>, FieldScalar>> = group
        .classes()
        .par_iter()
        .map(|cls| {
            let g = cls.members[0];
            let mut acc: BTreeMap<Vec<u32>, FieldScalar> = BTreeMap::from([(vec![0; nvars], FieldScalar::one())]);
            for (i, &s) in slices.iter().enumerate() {
                let m = group.irrep(s).matrix(g);
                let dim = group.irrep(s).dim();
                let det = m.det_one_minus_t();
                let e = exps[i] as usize;
                // (1 − t^e)^d, ascending coefficients.
                let mut full = vec![FieldScalar::one()];
                for _ in 0..dim {
                    let mut next = vec![FieldScalar::zero(); full.len() + e];
                    for (k, c) in full.iter().enumerate() {
                        next[k] += c;
                        next[k + e] -= c;
                    }
                    full = next;
                }
                let q = poly_div_exact(&full, &det).expect("det(1 − tM) divides (1 − t^e)^d");
                let mut next = BTreeMap::new();
                for (k, c) in &acc {
                    for (j, qj) in q.iter().enumerate() {
                        if qj.is_zero() {
                            continue;
                        }
                        let mut key = k.clone();
                        key[i] += j as u32;
                        let v: &mut FieldScalar = next.entry(key).or_default();
                        *v += &(c * qj);
                    }
                }
                acc = next;
            }
            let weight = group
                .character(gamma, g)
                .scale(&Rational::from_int(cls.members.len() as i64));
            acc.into_iter()
                .map(|(k, c)| (k, &c * &weight))
                .filter(|(_, c)| !c.is_zero())
                .collect()
        })
        .collect();
    let mut total: BTreeMap<Vec<u32>, FieldScalar> = BTreeMap::new();
    for part in per_class {
        for (k, c) in part {
            *total.entry(k).or_default() += &c;
        }
    }
    let inv_order = Rational::frac(1, group.order() as i64);
    let mut numer = IPoly::new();
    for (k, c) in total {
        let c = c.scale(&inv_order);
        if c.is_zero() {
            continue;
        }
        let n = c
            .as_rational()
            .and_then(Rational::to_integer)
            .ok_or(GenFunError::NonIntegral)?;
        numer.insert(k, n);
    }
    let factors: Vec<(usize, u32)> = slices
        .iter()
        .enumerate()
        .flat_map(|(i, &s)| std::iter::repeat_n((i, exps[i]), group.irrep(s).dim()))
        .collect();
    Ok(GenFun::new(nvars, numer, &factors))
}

/// `Σ_{α,β} c^Γ_{αβ} M_left(α)·M_right(β)` with the right factor's grading
/// variables placed after the left factor's. Maps are indexed by irrep.
pub fn couple(group: &FiniteGroup, gamma: usize, left: &[GenFun], right: &[GenFun]) -> GenFun {
    let nl = left.first().map_or(0, GenFun::nvars);
    let nr = right.first().map_or(0, GenFun::nvars);
    let mut acc = GenFun::zero(nl + nr);
    for (a, l) in left.iter().enumerate() {
        for (b, r) in right.iter().enumerate() {
            let c = group.product_multiplicity(a, b, gamma);
            if c == 0 || l.is_zero() || r.is_zero() {
                continue;
            }
            let term = l.tensor(r).scale(c as i64);
            acc = acc.try_add(&term).expect("same number of variables");
        }
    }
    acc
}

/// Denominator degrees of the integrity basis for one irreducible slice.
/// Tabulated for the built-in groups; otherwise `d` copies of the exponent.
pub fn slice_denominator_degrees(group: &FiniteGroup, irrep: usize) -> Vec<u32> {
    let label = group.irrep(irrep).label();
    let known: Option<&[u32]> = match (group.name(), label) {
        ("Td", "A1") | ("Ci", "A1") => Some(&[1]),
        ("Td", "A2") | ("Ci", "A2") => Some(&[2]),
        ("Td", "E") => Some(&[2, 3]),
        ("Td", "F1") => Some(&[2, 4, 6]),
        ("Td", "F2") => Some(&[2, 3, 4]),
        _ => None,
    };
    let generic = || vec![irrep_exponent(group, irrep); group.irrep(irrep).dim()];
    match known {
        Some(d) => {
            // Guard against a user group that merely shares a name.
            let probe = molien_over(group, group.trivial_irrep(), &[irrep])
                .ok()
                .and_then(|m| m.canonicalize(d).ok());
            match probe {
                Some(n) if n.iter().all(|c| !c.is_negative()) => d.to_vec(),
                _ => generic(),
            }
        }
        None => generic(),
    }
}

/// Elementary generating functions `M(Γ; irrep; t)` for every final Γ,
/// rewritten over the slice's integrity-basis denominators.
pub fn elementary_family(group: &FiniteGroup, irrep: usize) -> Result<Vec<GenFun>, GenFunError> {
    let degrees = slice_denominator_degrees(group, irrep);
    let targets: Vec<(usize, u32)> = degrees.iter().map(|&d| (0, d)).collect();
    (0..group.irreps().len())
        .map(|g| molien_over(group, g, &[irrep])?.canonicalize_multi(&targets))
        .collect()
}

/// Recursive construction over the slices of `rep`, right to left:
/// `acc = elem(last)`, then `acc = couple(elem(k), acc)`. Returns one
/// generating function per final irrep.
pub fn molien_recursive(group: &FiniteGroup, rep: &RepSum) -> Result<Vec<GenFun>, GenFunError> {
    let slices = rep.slices();
    let nirr = group.irreps().len();
    let Some(last) = slices.last() else {
        let mut fam = vec![GenFun::zero(0); nirr];
        fam[group.trivial_irrep()] = GenFun::one(0);
        return Ok(fam);
    };
    let mut cache: BTreeMap<usize, Vec<GenFun>> = BTreeMap::new();
    let mut elem = |i: usize| -> Result<Vec<GenFun>, GenFunError> {
        if let Some(f) = cache.get(&i) {
            return Ok(f.clone());
        }
        let f = elementary_family(group, i)?;
        cache.insert(i, f.clone());
        Ok(f)
    };
    let mut acc = elem(last.irrep)?;
    for s in slices[..slices.len() - 1].iter().rev() {
        let left = elem(s.irrep)?;
        acc = (0..nirr).map(|g| couple(group, g, &left, &acc)).collect();
    }
    Ok(acc)
}
