use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exact_arith::{FieldScalar, Rational};

/// Dense row-major matrix over ℚ(√2, √3).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldScalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![FieldScalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, FieldScalar::one());
        }
        m
    }

    pub fn diagonal(d: &[FieldScalar]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<FieldScalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| FieldScalar::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldScalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldScalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<FieldScalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[FieldScalar]) -> Vec<FieldScalar> {
        assert_eq!(self.cols, v.len(), "matrix shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = FieldScalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn trace(&self) -> FieldScalar {
        let mut t = FieldScalar::zero();
        for i in 0..self.rows.min(self.cols) {
            t += self.get(i, i);
        }
        t
    }

    pub fn scale(&self, c: &FieldScalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(FieldScalar::is_zero)
    }

    /// Kronecker product; row index of the result is `i·other.rows + k`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn block_diag(blocks: &[Matrix]) -> Matrix {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Determinant by Gaussian elimination over the field.
    pub fn det(&self) -> FieldScalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.to_rows();
        let mut det = FieldScalar::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return FieldScalar::zero();
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            let piv = a[col][col].clone();
            det = &det * &piv;
            let inv = piv.inverse().expect("pivot is nonzero");
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] * &inv;
                for c in col..n {
                    let d = &f * &a[col][c];
                    a[r][c] -= &d;
                }
            }
        }
        det
    }

    /// Coefficients `[c₀, c₁, …, c_n]` of `det(1 − t·M)` (Faddeev–LeVerrier).
    pub fn det_one_minus_t(&self) -> Vec<FieldScalar> {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        // Characteristic polynomial det(λ − M) = Σ a_k λ^{n−k}, a₀ = 1;
        // det(1 − tM) = Σ a_k t^k.
        let mut coeffs = vec![FieldScalar::one()];
        let mut mk = Matrix::zeros(n, n);
        for k in 1..=n {
            let ak_prev = &coeffs[k - 1];
            mk = self.mul(&mk.add(&Matrix::identity(n).scale(ak_prev)));
            let ak = -mk.trace().scale(&Rational::frac(1, k as i64));
            coeffs.push(ak);
        }
        coeffs
    }

    /// `MᵀM = 1`.
    pub fn is_orthogonal(&self) -> bool {
        self.is_square() && self.transpose().mul(self) == Matrix::identity(self.rows)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_and_char_poly() {
        let m = Matrix::from_int_rows(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        assert_eq!(m.det(), FieldScalar::one());
        // det(1 − tP) for a 3-cycle is 1 − t³.
        let c = m.det_one_minus_t();
        assert_eq!(
            c,
            vec![
                FieldScalar::one(),
                FieldScalar::zero(),
                FieldScalar::zero(),
                FieldScalar::from_int(-1)
            ]
        );
        let inv = Matrix::diagonal(&[FieldScalar::from_int(-1), FieldScalar::from_int(-1)]);
        assert_eq!(
            inv.det_one_minus_t(),
            vec![1.into(), 2.into(), 1.into()]
        );
    }

    #[test]
    fn kron_and_blocks() {
        let a = Matrix::from_int_rows(&[&[1, 2], &[3, 4]]);
        let i = Matrix::identity(2);
        let k = a.kron(&i);
        assert_eq!(k.get(2, 0), &FieldScalar::from_int(3));
        assert_eq!(k.get(3, 1), &FieldScalar::from_int(3));
        assert_eq!(k.trace(), FieldScalar::from_int(10));
        let b = Matrix::block_diag(&[a.clone(), Matrix::identity(1)]);
        assert_eq!(b.det(), FieldScalar::from_int(-2));
    }

    #[test]
    fn rotation_with_surds_is_orthogonal() {
        let h = FieldScalar::frac(1, 2);
        let s = FieldScalar::surd(Rational::frac(1, 2), 3);
        let r = Matrix::from_rows(vec![vec![-&h, -&s], vec![s.clone(), -&h]]);
        assert!(r.is_orthogonal());
        assert_eq!(r.mul(&r).mul(&r), Matrix::identity(2));
    }
}
