//! Built-in groups: the inversion group C_i and the tetrahedral group Td.

use std::sync::{Arc, OnceLock};

use super::{FiniteGroup, Irrep};
use crate::exact_arith::FieldScalar;
use crate::polyalg::{Matrix, MultiPoly, VarTable};

/// `C_i = {E, I}` with irreps A1 (trivial) and A2 (sign under inversion).
pub fn c_i() -> Arc<FiniteGroup> {
    static CELL: OnceLock<Arc<FiniteGroup>> = OnceLock::new();
    CELL.get_or_init(|| {
        let one = Matrix::identity(1);
        let minus = Matrix::diagonal(&[FieldScalar::from_int(-1)]);
        let irreps = vec![
            Irrep::new("A1", vec![one.clone(), one.clone()]),
            Irrep::new("A2", vec![one, minus]),
        ];
        let g = FiniteGroup::new(
            "Ci",
            vec!["E".into(), "I".into()],
            vec![vec![0, 1], vec![1, 0]],
            irreps,
            Some(vec!["E".into(), "I".into()]),
        )
        .expect("built-in C_i is valid");
        Arc::new(g)
    })
    .clone()
}

/// Signed 3×3 permutation matrices with an even number of `−1` entries,
/// i.e. the action of Td on `(x, y, z)` through the F2 irrep.
fn td_f2_matrices() -> Vec<[[i64; 3]; 3]> {
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut out = Vec::new();
    for p in PERMS {
        for signs in 0..8u32 {
            if signs.count_ones() % 2 == 1 {
                continue;
            }
            let mut m = [[0i64; 3]; 3];
            for (r, &c) in p.iter().enumerate() {
                m[r][c] = if signs >> r & 1 == 1 { -1 } else { 1 };
            }
            out.push(m);
        }
    }
    out
}

fn mat3(m: &[[i64; 3]; 3]) -> Matrix {
    Matrix::from_int_rows(&[&m[0], &m[1], &m[2]])
}

fn det3(m: &[[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn mat_order(m: &[[i64; 3]; 3]) -> usize {
    let id = mat3(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
    let a = mat3(m);
    let mut x = a.clone();
    let mut k = 1;
    while x != id {
        x = x.mul(&a);
        k += 1;
    }
    k
}

/// E matrices as the action on the quadratic pair
/// `e_a = (x² + y² − 2z²)/√6`, `e_b = (y² − x²)/√2`.
fn e_matrix(f2: &Matrix) -> Matrix {
    let v = VarTable::new(["x", "y", "z"]).expect("distinct").into_shared();
    let ea = MultiPoly::parse(&v, "(x^2 + y^2 - 2*z^2)/sqrt(6)").expect("valid");
    let eb = MultiPoly::parse(&v, "(y^2 - x^2)/sqrt(2)").expect("valid");
    let basis = [ea, eb];
    let mut m = Matrix::zeros(2, 2);
    for (j, e) in basis.iter().enumerate() {
        let img = e.substitute_linear(f2).expect("3×3 action");
        let coords = crate::polyalg::in_span(&img, &basis).expect("E pair is invariant under Td");
        for (i, c) in coords.into_iter().enumerate() {
            m.set(i, j, c);
        }
    }
    m
}

/// Td (≅ S₄), elements ordered by class (E, C3, C2, S4, σd) and then by
/// their F2 matrix. Irreps A1, A2 = det, E, F1 = det·F2, F2.
pub fn td() -> Arc<FiniteGroup> {
    static CELL: OnceLock<Arc<FiniteGroup>> = OnceLock::new();
    CELL.get_or_init(|| Arc::new(build_td())).clone()
}

fn build_td() -> FiniteGroup {
    let class_rank = |m: &[[i64; 3]; 3]| -> usize {
        match (mat_order(m), det3(m)) {
            (1, _) => 0,
            (3, _) => 1,
            (2, 1) => 2,
            (4, _) => 3,
            _ => 4,
        }
    };
    let mut mats = td_f2_matrices();
    mats.sort_by_key(|m| (class_rank(m), std::cmp::Reverse(*m)));
    const CLASS: [&str; 5] = ["E", "C3", "C2", "S4", "sd"];
    let mut counters = [0usize; 5];
    let labels: Vec<String> = mats
        .iter()
        .map(|m| {
            let c = class_rank(m);
            counters[c] += 1;
            if c == 0 {
                "E".to_string()
            } else {
                format!("{}_{}", CLASS[c], counters[c])
            }
        })
        .collect();
    let f2: Vec<Matrix> = mats.iter().map(mat3).collect();
    let table: Vec<Vec<usize>> = f2
        .iter()
        .map(|a| {
            f2.iter()
                .map(|b| {
                    let ab = a.mul(b);
                    f2.iter().position(|m| *m == ab).expect("closed under products")
                })
                .collect()
        })
        .collect();
    let dets: Vec<FieldScalar> = mats.iter().map(|m| FieldScalar::from_int(det3(m))).collect();
    let a1 = Irrep::new("A1", vec![Matrix::identity(1); 24]);
    let a2 = Irrep::new("A2", dets.iter().map(|d| Matrix::diagonal(std::slice::from_ref(d))).collect());
    let e = Irrep::new("E", f2.iter().map(e_matrix).collect());
    let f1 = Irrep::new("F1", f2.iter().zip(&dets).map(|(m, d)| m.scale(d)).collect());
    let f2 = Irrep::new("F2", f2);
    FiniteGroup::new(
        "Td",
        labels,
        table,
        vec![a1, a2, e, f1, f2],
        Some(CLASS.iter().map(|s| s.to_string()).collect()),
    )
    .expect("built-in Td is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn td_labels_follow_classes() {
        let g = td();
        assert_eq!(g.labels()[0], "E");
        assert_eq!(g.labels()[1], "C3_1");
        assert_eq!(g.labels()[23], "sd_6");
        for (k, c) in g.classes().iter().enumerate() {
            for &m in &c.members {
                assert!(g.labels()[m].starts_with(["E", "C3", "C2", "S4", "sd"][k]));
            }
        }
    }

    #[test]
    fn det_twist_relates_e_to_itself() {
        // det·E(g) = J E(g) J⁻¹ with J a quarter turn.
        let g = td();
        let e = g.irrep(2);
        let a2 = g.irrep(1);
        let j = Matrix::from_int_rows(&[&[0, -1], &[1, 0]]);
        let jinv = j.transpose();
        for x in 0..24 {
            let lhs = e.matrix(x).scale(a2.matrix(x).get(0, 0));
            assert_eq!(lhs, j.mul(e.matrix(x)).mul(&jinv));
        }
    }
}
