use covforge_core::groups::{c_i, td, RepSum};
use covforge_core::molien::{couple, elementary_family, molien_direct, molien_recursive, GenFun};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

fn ints(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|c| c.to_i64().unwrap()).collect()
}

#[test]
fn ci_taylor_prefixes() {
    let g = c_i();
    let r = RepSum::new(&g, &["A2", "A2", "A2"]).unwrap();
    assert_eq!(ints(&molien_direct(&g, 0, &r).unwrap().taylor(4)), [1, 0, 6, 0, 15]);
    assert_eq!(ints(&molien_direct(&g, 1, &r).unwrap().taylor(5)), [0, 3, 0, 10, 0, 21]);
    assert_eq!(
        ints(&molien_direct(&g, 0, &r).unwrap().canonicalize(&[2, 2, 2]).unwrap()),
        [1, 0, 3]
    );
}

#[test]
fn ci_recursive_coupling_keeps_grading() {
    let g = c_i();
    let r = RepSum::new(&g, &["A2", "A2", "A2"]).unwrap();
    let fam = molien_recursive(&g, &r).unwrap();
    // (1 + t1t2 + t1t3 + t2t3)/∏(1 − t_i²) and (t1 + t2 + t3 + t1t2t3)/∏(1 − t_i²)
    let num = |terms: &[[u32; 3]]| {
        terms
            .iter()
            .map(|k| (k.to_vec(), BigInt::from(1)))
            .collect()
    };
    let den = [(0, 2), (1, 2), (2, 2)];
    let a1 = GenFun::new(3, num(&[[0, 0, 0], [1, 1, 0], [1, 0, 1], [0, 1, 1]]), &den);
    let a2 = GenFun::new(3, num(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]), &den);
    assert_eq!(fam[0], a1);
    assert_eq!(fam[1], a2);
    assert_eq!(fam[0], molien_direct(&g, 0, &r).unwrap());
    assert_eq!(fam[1], molien_direct(&g, 1, &r).unwrap());
}

#[test]
fn td_f2_pair_term_for_e() {
    let g = td();
    let f2 = elementary_family(&g, 4).unwrap();
    let e = g.irrep_index("E").unwrap();
    let f1 = g.irrep_index("F1").unwrap();
    let only_f2 = |i: usize| {
        let mut m: Vec<GenFun> = vec![GenFun::zero(1); 5];
        m[i] = f2[i].clone();
        m
    };
    let term = couple(&g, e, &only_f2(4), &only_f2(f1));
    let mut num = std::collections::BTreeMap::new();
    for a in 1..=3u32 {
        for b in 3..=5u32 {
            num.insert(vec![a, b], BigInt::from(1));
        }
    }
    let den = [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)];
    assert_eq!(term, GenFun::new(2, num, &den));
}

#[test]
fn td_eight_dim_f2_numerator() {
    let g = td();
    let r8 = RepSum::new(&g, &["E", "F2", "F2"]).unwrap();
    let rec = molien_recursive(&g, &r8).unwrap();
    let n = rec[4].canonicalize(&[2, 2, 2, 3, 3, 3, 4, 4]).unwrap();
    assert_eq!(
        ints(&n),
        [0, 2, 5, 12, 23, 41, 60, 71, 71, 60, 45, 27, 12, 3]
    );
    assert_eq!(rec[4], molien_direct(&g, 4, &r8).unwrap());
    let nine = rec[4].append_trivial_factor();
    let r9 = RepSum::new(&g, &["A1", "E", "F2", "F2"]).unwrap();
    assert_eq!(nine.specialize(), molien_direct(&g, 4, &r9).unwrap().specialize());
    assert_eq!(ints(&nine.taylor(4)), [0, 2, 7, 25, 69]);
}

#[test]
fn td_nine_dim_all_targets() {
    let g = td();
    let r9 = RepSum::new(&g, &["A1", "E", "F2", "F2"]).unwrap();
    let rec = molien_recursive(&g, &r9).unwrap();
    let degrees = [1, 2, 2, 2, 3, 3, 3, 4, 4];
    let dims: [[i64; 16]; 5] = [
        [1, 1, 5, 13, 33, 72, 162, 319, 620, 1132, 1998, 3384, 5587, 8912, 13912, 21185],
        [0, 0, 0, 4, 12, 39, 101, 226, 470, 918, 1680, 2946, 4973, 8098, 12818, 19771],
        [0, 1, 5, 14, 45, 111, 257, 545, 1090, 2040, 3678, 6330, 10545, 17010, 26730, 40935],
        [0, 0, 3, 15, 51, 141, 342, 752, 1528, 2920, 5298, 9210, 15418, 24998, 39388, 60536],
        [0, 2, 7, 25, 69, 177, 400, 848, 1672, 3140, 5610, 9654, 16022, 25822, 40472, 61960],
    ];
    let totals = [144, 144, 288, 432, 432];
    for gamma in 0..5 {
        assert_eq!(rec[gamma], molien_direct(&g, gamma, &r9).unwrap());
        assert_eq!(ints(&rec[gamma].taylor(15)), dims[gamma]);
        let n = rec[gamma].canonicalize(&degrees).unwrap();
        let total: i64 = ints(&n).iter().sum();
        assert_eq!(total, totals[gamma]);
    }
}
