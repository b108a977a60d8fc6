//! Exact elimination over ℚ(√2, √3): a fraction-free dense rank profile and
//! an incremental sparse echelon form keyed by any ordered column type.

use std::collections::BTreeMap;
use std::ops::Bound;

use rayon::prelude::*;

use super::{Monomial, MultiPoly};
use crate::exact_arith::FieldScalar;

/// Partition of the variables into slices; a monomial's key is its degree
/// in each slice. The total-degree grading has a single slice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    slice_of: Vec<usize>,
    nslices: usize,
}

impl Grading {
    pub fn total(nvars: usize) -> Self {
        Grading {
            slice_of: vec![0; nvars],
            nslices: 1,
        }
    }

    /// Contiguous slices of the given sizes.
    pub fn from_sizes(sizes: &[usize]) -> Self {
        let slice_of = sizes
            .iter()
            .enumerate()
            .flat_map(|(s, &n)| std::iter::repeat_n(s, n))
            .collect();
        Grading {
            slice_of,
            nslices: sizes.len(),
        }
    }

    pub fn nslices(&self) -> usize {
        self.nslices
    }

    pub fn slice_of(&self, var: usize) -> usize {
        self.slice_of[var]
    }

    pub fn key(&self, m: &Monomial) -> Vec<u32> {
        let mut k = vec![0u32; self.nslices];
        for (v, &e) in m.exponents().iter().enumerate() {
            k[self.slice_of[v]] += e as u32;
        }
        k
    }
}

/// Rank profile of a dense matrix by fraction-free (Bareiss) elimination.
/// Returns the rank and the pivot columns, which index the
/// lexicographically-first maximal independent set of columns.
pub fn bareiss_rank_profile(rows: &[Vec<FieldScalar>]) -> (usize, Vec<usize>) {
    let nrows = rows.len();
    if nrows == 0 {
        return (0, Vec::new());
    }
    let ncols = rows[0].len();
    let mut a: Vec<Vec<FieldScalar>> = rows.to_vec();
    let mut prev = FieldScalar::one();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let prev_inv = prev.inverse().expect("previous pivot is nonzero");
        let (top, bottom) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let piv = &pivot_row[c];
        bottom.par_iter_mut().for_each(|row| {
            let lead = row[c].clone();
            for j in c + 1..ncols {
                // a_ij ← (a_rc·a_ij − a_ic·a_rj) / prev; exact division.
                let mut x = piv * &row[j];
                if !lead.is_zero() && !pivot_row[j].is_zero() {
                    x -= &(&lead * &pivot_row[j]);
                }
                row[j] = &x * &prev_inv;
            }
            row[c] = FieldScalar::zero();
        });
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    (r, pivots)
}

/// Rank and the lexicographically-first maximal independent subset of
/// `polys`. Polynomials are split into graded blocks (total degree) which are
/// eliminated independently; an inhomogeneous input puts everything in one
/// block.
pub fn rank_and_basis(polys: &[MultiPoly]) -> (usize, Vec<usize>) {
    let nvars = polys.first().map_or(0, |p| p.vars().len());
    rank_and_basis_graded(polys, &Grading::total(nvars))
}

pub fn rank_and_basis_graded(polys: &[MultiPoly], grading: &Grading) -> (usize, Vec<usize>) {
    let mut blocks: BTreeMap<Option<Vec<u32>>, Vec<usize>> = BTreeMap::new();
    let keys: Vec<Option<Vec<u32>>> = polys.iter().map(|p| p.multidegree(grading)).collect();
    let homogeneous = polys
        .iter()
        .zip(&keys)
        .all(|(p, k)| p.is_zero() || k.is_some());
    for (i, (p, k)) in polys.iter().zip(keys).enumerate() {
        if p.is_zero() {
            continue;
        }
        let key = if homogeneous { k } else { None };
        blocks.entry(key).or_default().push(i);
    }
    let blocks: Vec<Vec<usize>> = blocks.into_values().collect();
    let picked: Vec<Vec<usize>> = blocks
        .par_iter()
        .map(|idx| {
            let mut cols: BTreeMap<&Monomial, usize> = BTreeMap::new();
            for &i in idx {
                for (m, _) in polys[i].terms() {
                    let n = cols.len();
                    cols.entry(m).or_insert(n);
                }
            }
            // Rows are monomials, columns are the block's polynomials.
            let mut dense = vec![vec![FieldScalar::zero(); idx.len()]; cols.len()];
            for (j, &i) in idx.iter().enumerate() {
                for (m, c) in polys[i].terms() {
                    dense[cols[m]][j] = c.clone();
                }
            }
            let (_, piv) = bareiss_rank_profile(&dense);
            piv.into_iter().map(|j| idx[j]).collect()
        })
        .collect();
    let mut subset: Vec<usize> = picked.into_iter().flatten().collect();
    subset.sort_unstable();
    (subset.len(), subset)
}

/// Coordinates of `p` in `basis` if it lies in the span. When the basis is
/// dependent, dependent members get coordinate zero.
pub fn in_span(p: &MultiPoly, basis: &[MultiPoly]) -> Option<Vec<FieldScalar>> {
    let mut ech = Echelon::with_tracking();
    for (i, b) in basis.iter().enumerate() {
        ech.insert_tracked(poly_vec(b), i);
    }
    let (residue, combo) = ech.reduce_tracked(poly_vec(p));
    if !residue.is_empty() {
        return None;
    }
    let mut coords = vec![FieldScalar::zero(); basis.len()];
    for (i, c) in combo {
        coords[i] = c;
    }
    Some(coords)
}

pub type SparseVec<K> = BTreeMap<K, FieldScalar>;

pub fn poly_vec(p: &MultiPoly) -> SparseVec<Monomial> {
    p.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

#[derive(Clone, Debug)]
struct Row<K> {
    entries: SparseVec<K>,
    combo: Option<SparseVec<usize>>,
}

/// Incremental row-echelon form. Each stored row is monic at its pivot (its
/// smallest column) and has zeros at all columns before the pivot. Optional
/// tracking records every row as a combination of the inserted vectors.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    rows: BTreeMap<K, Row<K>>,
    tracking: bool,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Self::new()
    }
}

fn axpy<K: Ord + Clone>(v: &mut SparseVec<K>, c: &FieldScalar, w: &SparseVec<K>) {
    for (k, x) in w {
        let d = c * x;
        match v.get_mut(k) {
            Some(e) => {
                *e += &d;
                if e.is_zero() {
                    v.remove(k);
                }
            }
            None => {
                v.insert(k.clone(), d);
            }
        }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Echelon {
            rows: BTreeMap::new(),
            tracking: false,
        }
    }

    pub fn with_tracking() -> Self {
        Echelon {
            rows: BTreeMap::new(),
            tracking: true,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    fn reduce_inner(&self, mut v: SparseVec<K>, mut combo: Option<&mut SparseVec<usize>>) -> SparseVec<K> {
        let mut cursor: Option<K> = None;
        loop {
            let next = match &cursor {
                None => v.keys().next().cloned(),
                Some(c) => v
                    .range((Bound::Excluded(c), Bound::Unbounded))
                    .next()
                    .map(|(k, _)| k.clone()),
            };
            let Some(k) = next else { break };
            if let Some(row) = self.rows.get(&k) {
                let c = v.remove(&k).expect("key present");
                let neg = -&c;
                for (kk, x) in row.entries.range((Bound::Excluded(&k), Bound::Unbounded)) {
                    let d = &neg * x;
                    match v.get_mut(kk) {
                        Some(e) => {
                            *e += &d;
                            if e.is_zero() {
                                v.remove(kk);
                            }
                        }
                        None => {
                            v.insert(kk.clone(), d);
                        }
                    }
                }
                if let (Some(acc), Some(rc)) = (combo.as_deref_mut(), &row.combo) {
                    axpy(acc, &c, rc);
                }
            }
            cursor = Some(k);
        }
        v
    }

    /// Residue of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: SparseVec<K>) -> SparseVec<K> {
        self.reduce_inner(v, None)
    }

    /// Residue and coefficients with `v = Σ coeff_i·input_i + residue`.
    pub fn reduce_tracked(&self, v: SparseVec<K>) -> (SparseVec<K>, SparseVec<usize>) {
        let mut combo = SparseVec::new();
        let r = self.reduce_inner(v, Some(&mut combo));
        (r, combo)
    }

    pub fn contains(&self, v: SparseVec<K>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v`; returns whether it was independent of the stored rows.
    pub fn insert(&mut self, v: SparseVec<K>) -> bool {
        let r = self.reduce(v);
        self.push_residue(r, None)
    }

    /// Like [`Echelon::insert`], recording `v` as input number `id`.
    pub fn insert_tracked(&mut self, v: SparseVec<K>, id: usize) -> bool {
        let (r, mut combo) = self.reduce_tracked(v);
        // r = v − Σ combo·inputs
        for c in combo.values_mut() {
            *c = -&*c;
        }
        combo.insert(id, FieldScalar::one());
        self.push_residue(r, Some(combo))
    }

    fn push_residue(&mut self, mut r: SparseVec<K>, mut combo: Option<SparseVec<usize>>) -> bool {
        let Some((pivot, lead)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        if !lead.is_one() {
            let inv = lead.inverse().expect("leading entry is nonzero");
            for x in r.values_mut() {
                *x = &*x * &inv;
            }
            if let Some(c) = combo.as_mut() {
                for x in c.values_mut() {
                    *x = &*x * &inv;
                }
            }
        }
        if !self.tracking {
            combo = None;
        }
        self.rows.insert(pivot, Row { entries: r, combo });
        true
    }
}
