//! Elements of the biquadratic field ℚ(√2, √3).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Rational;
use crate::error::ArithError;

/// `a + b√2 + c√3 + d√6` with rational `a..d`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FieldScalar {
    c: [Rational; 4],
}

/// Products of the basis `{1, √2, √3, √6}`: `e_i·e_j = factor·e_k`.
const BASIS_PRODUCT: [[(usize, i64); 4]; 4] = [
    [(0, 1), (1, 1), (2, 1), (3, 1)],
    [(1, 1), (0, 2), (3, 1), (2, 2)],
    [(2, 1), (3, 1), (0, 3), (1, 3)],
    [(3, 1), (2, 2), (1, 3), (0, 6)],
];

impl FieldScalar {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        FieldScalar { c: [a, b, c, d] }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_int(n))
    }

    pub fn from_rational(r: Rational) -> Self {
        FieldScalar {
            c: [r, Rational::zero(), Rational::zero(), Rational::zero()],
        }
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::from_rational(Rational::frac(n, d))
    }

    /// `r·√k` for `k ∈ {1, 2, 3, 6}`.
    pub fn surd(r: Rational, k: u32) -> Self {
        let mut out = Self::zero();
        let idx = match k {
            1 => 0,
            2 => 1,
            3 => 2,
            6 => 3,
            _ => panic!("√{k} is not a basis element of ℚ(√2,√3)"),
        };
        out.c[idx] = r;
        out
    }

    pub fn sqrt2() -> Self {
        Self::surd(Rational::one(), 2)
    }

    pub fn sqrt3() -> Self {
        Self::surd(Rational::one(), 3)
    }

    pub fn sqrt6() -> Self {
        Self::surd(Rational::one(), 6)
    }

    pub fn components(&self) -> &[Rational; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Rational::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.c[1..].iter().all(Rational::is_zero)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.c[0])
    }

    pub fn scale(&self, r: &Rational) -> Self {
        FieldScalar {
            c: [&self.c[0] * r, &self.c[1] * r, &self.c[2] * r, &self.c[3] * r],
        }
    }

    /// Multiplicative inverse, obtained by solving `x·y = 1` as a 4×4 rational system.
    pub fn inverse(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        // Column j of the multiplication-by-x matrix is x·e_j.
        let mut m: Vec<Vec<Rational>> = vec![vec![Rational::zero(); 5]; 4];
        for j in 0..4 {
            for i in 0..4 {
                if self.c[i].is_zero() {
                    continue;
                }
                let (k, f) = BASIS_PRODUCT[i][j];
                m[k][j] = &m[k][j] + &(&self.c[i] * &Rational::from_int(f));
            }
        }
        m[0][4] = Rational::one();
        for col in 0..4 {
            let piv = (col..4)
                .find(|&r| !m[r][col].is_zero())
                .ok_or(ArithError::DivisionByZero)?;
            m.swap(col, piv);
            let inv = m[col][col].recip()?;
            for v in m[col].iter_mut() {
                *v = &*v * &inv;
            }
            for r in 0..4 {
                if r == col || m[r][col].is_zero() {
                    continue;
                }
                let f = m[r][col].clone();
                for k in col..5 {
                    let t = &m[col][k] * &f;
                    m[r][k] = &m[r][k] - &t;
                }
            }
        }
        Ok(FieldScalar {
            c: [
                m[0][4].clone(),
                m[1][4].clone(),
                m[2][4].clone(),
                m[3][4].clone(),
            ],
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ArithError> {
        Ok(self * &other.inverse()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact sign of the real number represented.
    pub fn signum(&self) -> i32 {
        // value = u + v√3 with u = a + b√2, v = c + d√2.
        let su = sign_q2(&self.c[0], &self.c[1]);
        let sv = sign_q2(&self.c[2], &self.c[3]);
        if sv == 0 {
            return su;
        }
        if su == 0 || su == sv {
            return if su == 0 { sv } else { su };
        }
        // Opposite signs: compare u² against 3v² inside ℚ(√2).
        let (u2a, u2b) = square_q2(&self.c[0], &self.c[1]);
        let (v2a, v2b) = square_q2(&self.c[2], &self.c[3]);
        let three = Rational::from_int(3);
        let da = &u2a - &(&v2a * &three);
        let db = &u2b - &(&v2b * &three);
        let s = sign_q2(&da, &db);
        if s == 0 {
            0
        } else if s > 0 {
            su
        } else {
            sv
        }
    }

    /// Non-negative square root when it exists inside ℚ(√2, √3).
    pub fn sqrt_exact(&self) -> Option<Self> {
        if self.signum() < 0 {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let u = Q2(self.c[0].clone(), self.c[1].clone());
        let v = Q2(self.c[2].clone(), self.c[3].clone());
        let mut roots: Vec<(Q2, Q2)> = Vec::new();
        if v.is_zero() {
            if let Some(r) = u.sqrt() {
                roots.push((r, Q2::zero()));
            }
            if let Some(s) = u.scale(&Rational::frac(1, 3)).sqrt() {
                roots.push((Q2::zero(), s));
            }
        } else {
            // (r + s√3)² = u + v√3  ⇒  r² = (u ± √(u² − 3v²)) / 2, s = v / 2r.
            let disc = u.mul(&u).sub(&v.mul(&v).scale(&Rational::from_int(3)));
            if let Some(w) = disc.sqrt() {
                for cand in [u.add(&w), u.sub(&w)] {
                    let r2 = cand.scale(&Rational::frac(1, 2));
                    if let Some(r) = r2.sqrt() {
                        if r.is_zero() {
                            continue;
                        }
                        let s = v.mul(&r.scale(&Rational::from_int(2)).inverse());
                        roots.push((r, s));
                    }
                }
            }
        }
        roots.into_iter().find_map(|(r, s)| {
            let root = FieldScalar {
                c: [r.0, r.1, s.0, s.1],
            };
            let root = if root.signum() < 0 { -root } else { root };
            (&root * &root == *self).then_some(root)
        })
    }

    pub fn to_f64(&self) -> f64 {
        let s = [1.0, 2f64.sqrt(), 3f64.sqrt(), 6f64.sqrt()];
        self.c.iter().zip(s).map(|(r, k)| r.to_f64() * k).sum()
    }
}

fn square_q2(a: &Rational, b: &Rational) -> (Rational, Rational) {
    // (a + b√2)² = a² + 2b² + 2ab√2
    let two = Rational::from_int(2);
    (
        &(a * a) + &(&(b * b) * &two),
        &(a * b) * &two,
    )
}

fn sign_q2(a: &Rational, b: &Rational) -> i32 {
    let (sa, sb) = (a.signum(), b.signum());
    if sb == 0 {
        return sa;
    }
    if sa == 0 || sa == sb {
        return if sa == 0 { sb } else { sa };
    }
    let cmp = (a * a).cmp(&(&(b * b) * &Rational::from_int(2)));
    match cmp {
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => sa,
        std::cmp::Ordering::Less => sb,
    }
}

/// `a + b√2`, only used by the square-root routine.
#[derive(Clone)]
struct Q2(Rational, Rational);

impl Q2 {
    fn zero() -> Self {
        Q2(Rational::zero(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero() && self.1.is_zero()
    }
    fn add(&self, o: &Q2) -> Q2 {
        Q2(&self.0 + &o.0, &self.1 + &o.1)
    }
    fn sub(&self, o: &Q2) -> Q2 {
        Q2(&self.0 - &o.0, &self.1 - &o.1)
    }
    fn scale(&self, r: &Rational) -> Q2 {
        Q2(&self.0 * r, &self.1 * r)
    }
    fn mul(&self, o: &Q2) -> Q2 {
        let two = Rational::from_int(2);
        Q2(
            &(&self.0 * &o.0) + &(&(&self.1 * &o.1) * &two),
            &(&self.0 * &o.1) + &(&self.1 * &o.0),
        )
    }
    fn inverse(&self) -> Q2 {
        // 1/(a + b√2) = (a − b√2)/(a² − 2b²)
        let n = &(&self.0 * &self.0) - &(&(&self.1 * &self.1) * &Rational::from_int(2));
        let inv = n.recip().expect("inverse of zero in ℚ(√2)");
        Q2(&self.0 * &inv, &(-&self.1) * &inv)
    }
    fn sqrt(&self) -> Option<Q2> {
        if self.1.is_zero() {
            if let Some(r) = self.0.sqrt_exact() {
                return Some(Q2(r, Rational::zero()));
            }
            return (&self.0 * &Rational::frac(1, 2))
                .sqrt_exact()
                .map(|s| Q2(Rational::zero(), s));
        }
        // (r + s√2)² = p + q√2  ⇒  r² = (p ± √(p² − 2q²)) / 2, s = q / 2r.
        let (p, q) = (&self.0, &self.1);
        let disc = &(p * p) - &(&(q * q) * &Rational::from_int(2));
        let w = disc.sqrt_exact()?;
        for cand in [p + &w, p - &w] {
            let r2 = &cand * &Rational::frac(1, 2);
            if let Some(r) = r2.sqrt_exact() {
                if r.is_zero() {
                    continue;
                }
                let s = q / &(&r * &Rational::from_int(2));
                return Some(Q2(r, s));
            }
        }
        None
    }
}

impl<'a> Add<&'a FieldScalar> for &'a FieldScalar {
    type Output = FieldScalar;
    fn add(self, rhs: &FieldScalar) -> FieldScalar {
        FieldScalar {
            c: [
                &self.c[0] + &rhs.c[0],
                &self.c[1] + &rhs.c[1],
                &self.c[2] + &rhs.c[2],
                &self.c[3] + &rhs.c[3],
            ],
        }
    }
}

impl<'a> Sub<&'a FieldScalar> for &'a FieldScalar {
    type Output = FieldScalar;
    fn sub(self, rhs: &FieldScalar) -> FieldScalar {
        FieldScalar {
            c: [
                &self.c[0] - &rhs.c[0],
                &self.c[1] - &rhs.c[1],
                &self.c[2] - &rhs.c[2],
                &self.c[3] - &rhs.c[3],
            ],
        }
    }
}

impl<'a> Mul<&'a FieldScalar> for &'a FieldScalar {
    type Output = FieldScalar;
    fn mul(self, rhs: &FieldScalar) -> FieldScalar {
        let mut out = FieldScalar::zero();
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.c.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let (k, f) = BASIS_PRODUCT[i][j];
                let mut t = x * y;
                if f != 1 {
                    t = &t * &Rational::from_int(f);
                }
                out.c[k] = &out.c[k] + &t;
            }
        }
        out
    }
}

impl<'a> Div<&'a FieldScalar> for &'a FieldScalar {
    type Output = FieldScalar;
    /// Panics on division by zero; use [`FieldScalar::checked_div`] otherwise.
    fn div(self, rhs: &FieldScalar) -> FieldScalar {
        self.checked_div(rhs).expect("division by zero in ℚ(√2,√3)")
    }
}

impl Neg for &FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        FieldScalar {
            c: [-&self.c[0], -&self.c[1], -&self.c[2], -&self.c[3]],
        }
    }
}

impl Neg for FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldScalar> for FieldScalar {
            type Output = FieldScalar;
            fn $m(self, rhs: FieldScalar) -> FieldScalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&FieldScalar> for FieldScalar {
    fn add_assign(&mut self, rhs: &FieldScalar) {
        for (a, b) in self.c.iter_mut().zip(&rhs.c) {
            if !b.is_zero() {
                *a = &*a + b;
            }
        }
    }
}

impl SubAssign<&FieldScalar> for FieldScalar {
    fn sub_assign(&mut self, rhs: &FieldScalar) {
        for (a, b) in self.c.iter_mut().zip(&rhs.c) {
            if !b.is_zero() {
                *a = &*a - b;
            }
        }
    }
}

impl From<Rational> for FieldScalar {
    fn from(r: Rational) -> Self {
        FieldScalar::from_rational(r)
    }
}

impl From<i64> for FieldScalar {
    fn from(n: i64) -> Self {
        FieldScalar::from_int(n)
    }
}

impl fmt::Display for FieldScalar {
    /// `a + b*sqrt(2) + c*sqrt(3) + d*sqrt(6)`, omitting zero components.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const SURD: [&str; 4] = ["", "sqrt(2)", "sqrt(3)", "sqrt(6)"];
        let mut first = true;
        for (r, s) in self.c.iter().zip(SURD) {
            if r.is_zero() {
                continue;
            }
            let neg = r.signum() < 0;
            let mag = r.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            if s.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(s)?;
            } else {
                write!(f, "{mag}*{s}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl Serialize for FieldScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let parts: [String; 4] = [
            self.c[0].to_string(),
            self.c[1].to_string(),
            self.c[2].to_string(),
            self.c[3].to_string(),
        ];
        parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let parts: [String; 4] = Deserialize::deserialize(d)?;
        let mut c: [Rational; 4] = Default::default();
        for (slot, p) in c.iter_mut().zip(parts.iter()) {
            *slot = p.parse().map_err(D::Error::custom)?;
        }
        Ok(FieldScalar { c })
    }
}
