//! Integer polynomials in grading variables, keyed by exponent vector.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub type IPoly = BTreeMap<Vec<u32>, BigInt>;

pub fn one(nvars: usize) -> IPoly {
    IPoly::from([(vec![0; nvars], BigInt::one())])
}

pub fn add_into(acc: &mut IPoly, p: &IPoly, scale: &BigInt) {
    if scale.is_zero() {
        return;
    }
    for (k, c) in p {
        let v = acc.entry(k.clone()).or_default();
        *v += c * scale;
        if v.is_zero() {
            acc.remove(k);
        }
    }
}

pub fn mul(a: &IPoly, b: &IPoly) -> IPoly {
    let mut out = IPoly::new();
    for (ka, ca) in a {
        for (kb, cb) in b {
            let k: Vec<u32> = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
            let v = out.entry(k).or_default();
            *v += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Concatenates variables: `a(t₁..t_m)·b(t_{m+1}..)`.
pub fn tensor(a: &IPoly, b: &IPoly) -> IPoly {
    let mut out = IPoly::new();
    for (ka, ca) in a {
        for (kb, cb) in b {
            let mut k = ka.clone();
            k.extend_from_slice(kb);
            out.insert(k, ca * cb);
        }
    }
    out
}

/// Multiplies by `(1 − t_var^d)`.
pub fn mul_one_minus(p: &IPoly, var: usize, d: u32) -> IPoly {
    let mut out = p.clone();
    for (k, c) in p {
        let mut k2 = k.clone();
        k2[var] += d;
        let v = out.entry(k2.clone()).or_default();
        *v -= c;
        if v.is_zero() {
            out.remove(&k2);
        }
    }
    out
}

/// Exact quotient by `(1 − t_var^d)`, if it exists.
pub fn div_one_minus(p: &IPoly, var: usize, d: u32) -> Option<IPoly> {
    // Along t_var the quotient satisfies q_k = p_k + q_{k−d}; everything
    // else is a passive coefficient index. Process keys in increasing t_var.
    let mut by_rest: BTreeMap<Vec<u32>, BTreeMap<u32, BigInt>> = BTreeMap::new();
    for (k, c) in p {
        let mut rest = k.clone();
        let e = rest[var];
        rest[var] = 0;
        by_rest.entry(rest).or_default().insert(e, c.clone());
    }
    let mut out = IPoly::new();
    for (rest, series) in by_rest {
        let top = *series.keys().next_back().expect("nonempty");
        if top < d {
            return None;
        }
        let qtop = top - d;
        let mut q: Vec<BigInt> = vec![BigInt::zero(); qtop as usize + 1];
        for k in 0..=qtop {
            let mut v = series.get(&k).cloned().unwrap_or_default();
            if k >= d {
                v += &q[(k - d) as usize];
            }
            q[k as usize] = v;
        }
        // Remainder check: p − q·(1 − t^d) must vanish.
        for k in qtop + 1..=top {
            let mut v = series.get(&k).cloned().unwrap_or_default();
            if k >= d && k - d <= qtop {
                v += &q[(k - d) as usize];
            }
            if !v.is_zero() {
                return None;
            }
        }
        for (k, c) in q.into_iter().enumerate() {
            if !c.is_zero() {
                let mut key = rest.clone();
                key[var] = k as u32;
                out.insert(key, c);
            }
        }
    }
    Some(out)
}

/// Substitutes `t_i := t` for every variable.
pub fn specialize(p: &IPoly) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = Vec::new();
    for (k, c) in p {
        let d: usize = k.iter().map(|&e| e as usize).sum();
        if out.len() <= d {
            out.resize(d + 1, BigInt::zero());
        }
        out[d] += c;
    }
    while out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}
