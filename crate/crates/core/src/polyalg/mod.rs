//! Sparse multivariate polynomials over ℚ(√2, √3) in named coordinates, and
//! the exact linear algebra used to decide rank, span and membership on
//! graded polynomial spaces.

mod linalg;
mod matrix;
mod parse;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::PolyError;
use crate::exact_arith::{FieldScalar, Rational};

pub use linalg::{
    bareiss_rank_profile, in_span, poly_vec, rank_and_basis, rank_and_basis_graded, Echelon, Grading,
    SparseVec,
};
pub use matrix::Matrix;

/// Ordered, duplicate-free list of coordinate names.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VarTable {
    names: Vec<String>,
}

impl VarTable {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, PolyError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(PolyError::DuplicateVariable(n.clone()));
            }
        }
        Ok(VarTable { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn into_shared(self) -> Arc<VarTable> {
        Arc::new(self)
    }
}

pub type Exponents = SmallVec<[u16; 10]>;

/// Exponent vector, ordered graded-lexicographically: lower total degree
/// first, then lexicographic with the first variable most significant.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Exponents);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[idx] = 1;
        m
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Sparse polynomial: monomial → nonzero coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Arc<VarTable>,
    terms: BTreeMap<Monomial, FieldScalar>,
}

impl MultiPoly {
    pub fn zero(vars: &Arc<VarTable>) -> Self {
        MultiPoly {
            vars: Arc::clone(vars),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<VarTable>, c: FieldScalar) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn one(vars: &Arc<VarTable>) -> Self {
        Self::constant(vars, FieldScalar::one())
    }

    pub fn var(vars: &Arc<VarTable>, idx: usize) -> Self {
        Self::monomial(vars, Monomial::var(vars.len(), idx), FieldScalar::one())
    }

    pub fn var_named(vars: &Arc<VarTable>, name: &str) -> Result<Self, PolyError> {
        let idx = vars
            .index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(Self::var(vars, idx))
    }

    pub fn monomial(vars: &Arc<VarTable>, m: Monomial, c: FieldScalar) -> Self {
        debug_assert_eq!(m.nvars(), vars.len());
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, summing repeats.
    pub fn from_terms(
        vars: &Arc<VarTable>,
        terms: impl IntoIterator<Item = (Monomial, FieldScalar)>,
    ) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    /// Parses an expression such as `(-3*a^2*b + b^3)/2` or `sqrt(3)*(x^2 - y^2)/sqrt(6)`.
    pub fn parse(vars: &Arc<VarTable>, text: &str) -> Result<Self, PolyError> {
        parse::parse_poly(vars, text)
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldScalar)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> FieldScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &FieldScalar)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: &FieldScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn same_vars(&self, other: &Self) -> Result<(), PolyError> {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars {
            Ok(())
        } else {
            Err(PolyError::VarTableMismatch)
        }
    }

    /// `None` for the zero polynomial, otherwise the maximal total degree.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Monomial::degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    /// Exact product; fails when the variable tables differ.
    pub fn poly_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_vars(other)?;
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc: HashMap<Monomial, FieldScalar> =
            HashMap::with_capacity(small.terms.len() * large.terms.len());
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                let c = ca * cb;
                acc.entry(ma.mul(mb))
                    .and_modify(|e| *e += &c)
                    .or_insert(c);
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(MultiPoly {
            vars: Arc::clone(&self.vars),
            terms,
        })
    }

    pub fn scale(&self, c: &FieldScalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        if c.is_one() {
            return self.clone();
        }
        MultiPoly {
            vars: Arc::clone(&self.vars),
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), x * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplies by a monomial (shifting exponents).
    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        MultiPoly {
            vars: Arc::clone(&self.vars),
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    /// Composes with a linear change of variables: each `x_k` is replaced by
    /// `Σ_l L[l][k]·x_l`. With this convention `p ↦ p∘L` is a left action,
    /// `substitute(p, L₁L₂) = substitute(substitute(p, L₂), L₁)`.
    pub fn substitute_linear(&self, l: &Matrix) -> Result<Self, PolyError> {
        let n = self.vars.len();
        if l.nrows() != n || l.ncols() != n {
            return Err(PolyError::DimensionMismatch {
                expected: n,
                got: l.nrows().max(l.ncols()),
            });
        }
        let images: Vec<MultiPoly> = (0..n)
            .map(|k| {
                let mut img = Self::zero(&self.vars);
                for row in 0..n {
                    let c = l.get(row, k);
                    if !c.is_zero() {
                        img.add_term(Monomial::var(n, row), c);
                    }
                }
                img
            })
            .collect();
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|p| vec![Self::one(&self.vars), p.clone()])
            .collect();
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let mut term = Self::constant(&self.vars, c.clone());
            for (k, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                while powers[k].len() <= e {
                    let next = &powers[k][powers[k].len() - 1] * &images[k];
                    powers[k].push(next);
                }
                term = &term * &powers[k][e];
            }
            for (tm, tc) in term.terms {
                out.add_term(tm, &tc);
            }
        }
        Ok(out)
    }

    /// Evaluates at a point with coordinates in the field.
    pub fn evaluate(&self, point: &[FieldScalar]) -> Result<FieldScalar, PolyError> {
        if point.len() != self.vars.len() {
            return Err(PolyError::DimensionMismatch {
                expected: self.vars.len(),
                got: point.len(),
            });
        }
        let mut total = FieldScalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t = &t * &x.pow(e as u32);
                }
            }
            total += &t;
        }
        Ok(total)
    }

    /// Evaluates at a rational point (used for Jacobian witnesses).
    pub fn evaluate_rational(&self, point: &[Rational]) -> Result<FieldScalar, PolyError> {
        let pt: Vec<FieldScalar> = point.iter().cloned().map(FieldScalar::from).collect();
        self.evaluate(&pt)
    }

    /// Partial derivative with respect to variable `idx`.
    pub fn derivative(&self, idx: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.exponents()[idx];
            if e == 0 {
                continue;
            }
            let mut exps: Exponents = SmallVec::from_slice(m.exponents());
            exps[idx] -= 1;
            out.add_term(Monomial(exps), &c.scale(&Rational::from_int(e as i64)));
        }
        out
    }

    /// Re-expresses the polynomial over another table; variable `i` of `self`
    /// becomes variable `map[i]` of `target`.
    pub fn embed(&self, target: &Arc<VarTable>, map: &[usize]) -> Result<Self, PolyError> {
        if map.len() != self.vars.len() {
            return Err(PolyError::DimensionMismatch {
                expected: self.vars.len(),
                got: map.len(),
            });
        }
        let n = target.len();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut exps: Exponents = SmallVec::from_elem(0, n);
            for (i, &e) in m.exponents().iter().enumerate() {
                exps[map[i]] += e;
            }
            out.add_term(Monomial(exps), c);
        }
        Ok(out)
    }

    /// Degree vector with respect to a partition of the variables, if the
    /// polynomial is homogeneous for that grading.
    pub fn multidegree(&self, grading: &Grading) -> Option<Vec<u32>> {
        let mut it = self.terms.keys().map(|m| grading.key(m));
        let first = it.next()?;
        it.all(|k| k == first).then_some(first)
    }

    /// Divides every coefficient by the leading one; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inverse().expect("leading coefficient is nonzero")),
        }
    }
}

impl<'a> std::ops::Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    /// Panics on mismatched variable tables; see [`MultiPoly::try_add`].
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_add(rhs).expect("variable table mismatch")
    }
}

impl<'a> std::ops::Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_sub(rhs).expect("variable table mismatch")
    }
}

impl<'a> std::ops::Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.poly_mul(rhs).expect("variable table mismatch")
    }
}

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&FieldScalar::from_int(-1))
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, vars: &VarTable, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (name, &e) in vars.names().iter().zip(m.exponents()) {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if e == 1 {
            f.write_str(name)?;
        } else {
            write!(f, "{name}^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for MultiPoly {
    /// Terms in decreasing graded-lex order, `coeff * S2a^2*S3x` joined by ` + `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let compound = c.components().iter().filter(|r| !r.is_zero()).count() > 1;
            if m.degree() == 0 {
                write!(f, "{c}")?;
                continue;
            }
            if compound {
                write!(f, "({c}) * ")?;
            } else {
                write!(f, "{c} * ")?;
            }
            write_monomial(f, &self.vars, m)?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

/// JSON form: a list of `[exponents, coefficient]` pairs in increasing
/// graded-lex order; the variable table is carried by the enclosing document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson(pub Vec<(Vec<u16>, FieldScalar)>);

impl MultiPoly {
    pub fn to_json(&self) -> PolyJson {
        PolyJson(
            self.terms
                .iter()
                .map(|(m, c)| (m.exponents().to_vec(), c.clone()))
                .collect(),
        )
    }

    pub fn from_json(vars: &Arc<VarTable>, json: &PolyJson) -> Result<Self, PolyError> {
        let mut p = Self::zero(vars);
        for (exps, c) in &json.0 {
            if exps.len() != vars.len() {
                return Err(PolyError::DimensionMismatch {
                    expected: vars.len(),
                    got: exps.len(),
                });
            }
            p.add_term(Monomial::from_exponents(exps), c);
        }
        Ok(p)
    }
}

/// All monomials of exact total degree `degree`, in decreasing graded-lex
/// order (`x1^d` first). There are `C(degree + n − 1, n − 1)` of them.
pub fn monomial_basis(vars: &Arc<VarTable>, degree: u32) -> Vec<MultiPoly> {
    monomials_of_degree(vars.len(), degree)
        .into_iter()
        .map(|m| MultiPoly::monomial(vars, m, FieldScalar::one()))
        .collect()
}

/// Exponent vectors of exact total degree, decreasing graded-lex order.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur: Exponents = SmallVec::from_elem(0, nvars);
    fn rec(pos: usize, left: u32, cur: &mut Exponents, out: &mut Vec<Monomial>) {
        let n = cur.len();
        if n == 0 {
            if left == 0 {
                out.push(Monomial(cur.clone()));
            }
            return;
        }
        if pos == n - 1 {
            cur[pos] = left as u16;
            out.push(Monomial(cur.clone()));
            cur[pos] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e as u16;
            rec(pos + 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    rec(0, degree, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz() -> Arc<VarTable> {
        VarTable::new(["x1", "x2", "x3"]).unwrap().into_shared()
    }

    #[test]
    fn var_table_rejects_duplicates() {
        assert_eq!(
            VarTable::new(["a", "b", "a"]),
            Err(PolyError::DuplicateVariable("a".into()))
        );
    }

    #[test]
    fn mul_examples() {
        let v = xyz();
        let x1 = MultiPoly::var(&v, 0);
        assert_eq!(&x1 * &x1, MultiPoly::parse(&v, "x1^2").unwrap());
        let a = MultiPoly::parse(&v, "x2^2*x3^2").unwrap();
        let b = MultiPoly::var(&v, 2);
        let p = &a * &b;
        assert_eq!(p, MultiPoly::parse(&v, "x2^2*x3^3").unwrap());
        assert_eq!(p.degree(), Some(5));
        let other = VarTable::new(["y"]).unwrap().into_shared();
        assert_eq!(
            x1.poly_mul(&MultiPoly::var(&other, 0)),
            Err(PolyError::VarTableMismatch)
        );
    }

    #[test]
    fn f6_is_a_cubic_monomial() {
        let v = VarTable::new(["S3x", "S3y", "S3z"]).unwrap().into_shared();
        let f6 = &(&MultiPoly::var(&v, 0) * &MultiPoly::var(&v, 1)) * &MultiPoly::var(&v, 2);
        assert_eq!(f6.num_terms(), 1);
        assert_eq!(f6.degree(), Some(3));
        assert!(f6.is_homogeneous());
    }

    #[test]
    fn substitute_examples() {
        let v = VarTable::new(["x"]).unwrap().into_shared();
        let x = MultiPoly::var(&v, 0);
        let inv = Matrix::diagonal(&[FieldScalar::from_int(-1)]);
        assert_eq!(x.substitute_linear(&inv).unwrap(), -&x);
        let x2 = &x * &x;
        assert_eq!(x2.substitute_linear(&inv).unwrap(), x2);
        let w = xyz();
        let p = MultiPoly::parse(&w, "x1^3 - 2*x2*x3 + sqrt(2)").unwrap();
        assert_eq!(p.substitute_linear(&Matrix::identity(3)).unwrap(), p);
        assert!(matches!(
            p.substitute_linear(&Matrix::identity(2)),
            Err(PolyError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn substitution_is_a_left_action() {
        let w = xyz();
        let p = MultiPoly::parse(&w, "x1^2*x2 + 3*x3^3 - x1*x2*x3").unwrap();
        let l1 = Matrix::from_rows(vec![
            vec![0.into(), 1.into(), 0.into()],
            vec![0.into(), 0.into(), (-1).into()],
            vec![1.into(), 0.into(), 0.into()],
        ]);
        let l2 = Matrix::from_rows(vec![
            vec![1.into(), 2.into(), 0.into()],
            vec![0.into(), 1.into(), 0.into()],
            vec![0.into(), FieldScalar::sqrt2(), 1.into()],
        ]);
        let lhs = p.substitute_linear(&l1.mul(&l2)).unwrap();
        let rhs = p
            .substitute_linear(&l2)
            .unwrap()
            .substitute_linear(&l1)
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn monomial_basis_counts() {
        let v = xyz();
        let b2 = monomial_basis(&v, 2);
        assert_eq!(b2.len(), 6);
        assert_eq!(b2[0], MultiPoly::parse(&v, "x1^2").unwrap());
        assert_eq!(b2[5], MultiPoly::parse(&v, "x3^2").unwrap());
        assert_eq!(monomial_basis(&v, 0), vec![MultiPoly::one(&v)]);
        let nine = VarTable::new((1..=9).map(|i| format!("q{i}"))).unwrap().into_shared();
        assert_eq!(monomial_basis(&nine, 3).len(), 165);
    }

    #[test]
    fn derivative_and_evaluate() {
        let v = xyz();
        let p = MultiPoly::parse(&v, "x1^3*x2 + 2*x3").unwrap();
        assert_eq!(p.derivative(0), MultiPoly::parse(&v, "3*x1^2*x2").unwrap());
        let val = p
            .evaluate_rational(&[Rational::from_int(2), Rational::frac(1, 2), Rational::from_int(-1)])
            .unwrap();
        assert_eq!(val, FieldScalar::from_int(2));
    }

    #[test]
    fn display_and_json() {
        let v = xyz();
        let p = MultiPoly::parse(&v, "(1+sqrt(2))*x1^2*x3 - 1/2*x2 + 3").unwrap();
        assert_eq!(p.to_string(), "(1 + sqrt(2)) * x1^2*x3 + -1/2 * x2 + 3");
        let back = MultiPoly::from_json(&v, &p.to_json()).unwrap();
        assert_eq!(back, p);
    }
}
