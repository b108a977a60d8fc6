use std::sync::Arc;

use covforge_core::exact_arith::FieldScalar;
use covforge_core::groups::{c_i, td, RepSum};
use covforge_core::integrity::{
    build_full_basis, couple_numerators, elementary_basis, elementary_basis_projected,
    elementary_family_in, enumerate_hironaka, hironaka_decompose, module_decompose,
    oracle_dimension, reduce_candidates, BasisFile, CovariantTuple, IntegrityBasis,
};
use covforge_core::polyalg::{in_span, MultiPoly, VarTable};
use covforge_core::error::BasisError;

fn polys(vars: &Arc<VarTable>, src: &[&str]) -> Vec<MultiPoly> {
    src.iter().map(|s| MultiPoly::parse(vars, s).unwrap()).collect()
}

/// Same span, degree by degree.
fn same_graded_span(a: &[MultiPoly], b: &[MultiPoly]) -> bool {
    a.len() == b.len()
        && a.iter().all(|p| {
            let peers: Vec<MultiPoly> = b.iter().filter(|q| q.degree() == p.degree()).cloned().collect();
            in_span(p, &peers).is_some()
        })
}

#[test]
fn ci_bases_match_tabulated_spans() {
    let g = c_i();
    let r = RepSum::new(&g, &["A2", "A2", "A2"]).unwrap();
    let v = r.vars();
    let a1 = build_full_basis(&r, 0).unwrap();
    let a2 = build_full_basis(&r, 1).unwrap();
    let dens = polys(v, &["x1^2", "x2^2", "x3^2"]);
    for b in [&a1, &a2] {
        assert!(same_graded_span(b.denominators(), &dens));
        for (f, d) in b.denominators().iter().zip(&dens) {
            assert_eq!(f.monic(), *d);
        }
    }
    assert!(same_graded_span(&a1.numerator_polys(0), &polys(v, &["1", "x1*x2", "x1*x3", "x2*x3"])));
    assert!(same_graded_span(&a2.numerator_polys(0), &polys(v, &["x1", "x2", "x3", "x1*x2*x3"])));
}

#[test]
fn elementary_examples() {
    let g = td();
    let b = elementary_basis(&g, "E", "A2").unwrap();
    assert_eq!(b.numerator_counts(), [0, 0, 0, 1]);
    let want = MultiPoly::parse(b.rep().vars(), "(-3*α^2*β + β^3)/2").unwrap();
    assert!(in_span(&want, &b.numerator_polys(0)).is_some());

    let b = elementary_basis(&g, "F1", "A1").unwrap();
    let degrees: Vec<u32> = b.numerators().iter().map(|t| t.degree).collect();
    assert_eq!(degrees, [0, 9]);
    let want = MultiPoly::parse(b.rep().vars(), "α*β*γ*(α^2-β^2)*(β^2-γ^2)*(γ^2-α^2)").unwrap();
    assert!(in_span(&want, &b.numerator_polys(0)[1..]).is_some());

    let b = elementary_basis(&c_i(), "A2", "A2").unwrap();
    assert_eq!(b.denominators(), polys(b.rep().vars(), &["α^2"]));
    assert_eq!(b.numerator_polys(0), polys(b.rep().vars(), &["α"]));

    let f1 = elementary_basis(&g, "F1", "F1").unwrap();
    let degrees: Vec<u32> = f1.numerators().iter().map(|t| t.degree).collect();
    assert_eq!(degrees, [1, 3, 4, 5, 6, 8]);
}

#[test]
fn unknown_pair_for_foreign_groups() {
    let text = r#"{"name":"C2","elements":["e","r"],"multiplication":[[0,1],[1,0]],
        "irreps":[{"label":"A","matrices":[[[1]],[[1]]]},{"label":"B","matrices":[[[1]],[[-1]]]}]}"#;
    let g = covforge_core::groups::GroupFile::from_json(text).unwrap().build().unwrap();
    assert!(matches!(
        elementary_basis(&g, "B", "A"),
        Err(BasisError::UnknownPair { .. })
    ));
}

/// Tabulated numerators and those found by projection generate the same
/// module: each lies in the module span of the other.
#[test]
fn tabulated_and_projected_bases_agree() {
    let g = td();
    for init in ["A1", "A2", "E", "F1", "F2"] {
        for fin in ["A1", "A2", "E", "F1", "F2"] {
            let t = elementary_basis(&g, init, fin).unwrap();
            let p = elementary_basis_projected(&g, init, fin).unwrap();
            assert_eq!(t.denominators(), p.denominators());
            for (x, y) in [(&t, &p), (&p, &t)] {
                for g0 in x.numerator_polys(0) {
                    assert!(
                        module_decompose(&g0, y.denominators(), &y.numerator_polys(0)).is_some(),
                        "{init}->{fin}: {g0}"
                    );
                }
            }
        }
    }
}

fn f1_rep() -> RepSum {
    RepSum::with_names(&td(), &["F1"], ["α", "β", "γ"]).unwrap()
}

fn tuple(r: &RepSum, irrep: &str, src: [&str; 3]) -> CovariantTuple {
    let gamma = r.group().irrep_index(irrep).unwrap();
    let t = CovariantTuple::new(gamma, polys(r.vars(), &src)).unwrap();
    assert!(t.is_equivariant(r));
    t
}

fn coefficient_on(
    dec: &[(covforge_core::integrity::HironakaTerm, FieldScalar)],
    exps: &[u32],
    numerator: usize,
) -> FieldScalar {
    dec.iter()
        .find(|(t, _)| t.exponents == exps && t.numerator == numerator)
        .map_or(FieldScalar::zero(), |(_, c)| c.clone())
}

#[test]
fn degree_eight_f1_candidate_is_reducible() {
    let r = f1_rep();
    let dens = polys(r.vars(), &["α^2+β^2+γ^2", "α^4+β^4+γ^4", "α^6+β^6+γ^6"]);
    let e1 = tuple(&r, "F1", ["α", "β", "γ"]);
    let e3 = tuple(&r, "F1", ["α^3", "β^3", "γ^3"]);
    let e4 = tuple(&r, "F1", ["(β^2-γ^2)*β*γ", "(γ^2-α^2)*γ*α", "(α^2-β^2)*α*β"]);
    let e5 = tuple(&r, "F1", ["α^5", "β^5", "γ^5"]);
    let e6 = tuple(&r, "F1", ["(β^4-γ^4)*β*γ", "(γ^4-α^4)*γ*α", "(α^4-β^4)*α*β"]);
    let wrong = tuple(&r, "F1", ["(β^6-γ^6)*β*γ", "(γ^6-α^6)*γ*α", "(α^6-β^6)*α*β"]);
    let right = tuple(
        &r,
        "F1",
        ["α*β*γ*(β^4-γ^4)*α", "α*β*γ*(γ^4-α^4)*β", "α*β*γ*(α^4-β^4)*γ"],
    );
    for i in 0..3 {
        let nums: Vec<MultiPoly> = [&e1, &e3, &e4, &e5, &e6].iter().map(|t| t.partners[i].clone()).collect();
        let dec = module_decompose(&wrong.partners[i], &dens, &nums).expect("reducible");
        assert_eq!(dec.len(), 3);
        assert_eq!(coefficient_on(&dec, &[1, 0, 0], 4), FieldScalar::one());
        assert_eq!(coefficient_on(&dec, &[2, 0, 0], 2), FieldScalar::frac(-1, 2));
        assert_eq!(coefficient_on(&dec, &[0, 1, 0], 2), FieldScalar::frac(1, 2));
    }
    let targets = [0, 1, 0, 1, 1, 1, 1, 0, 1];
    let cands = vec![e1.clone(), e3, e4, e5, e6, wrong.clone(), right.clone()];
    let kept = reduce_candidates(&r, &dens, &[], cands.clone(), &targets).unwrap();
    assert!(!kept.contains(&wrong));
    assert!(kept.contains(&right));
    let without: Vec<CovariantTuple> = cands.into_iter().filter(|t| *t != right).collect();
    assert_eq!(
        reduce_candidates(&r, &dens, &[], without, &targets),
        Err(BasisError::CountMismatch {
            degree: 8,
            found: 0,
            expected: 1
        })
    );
    // Scaling a candidate changes nothing.
    let scaled = CovariantTuple {
        partners: e1.partners.iter().map(|p| p.scale(&FieldScalar::sqrt6())).collect(),
        ..e1
    };
    let kept2 = reduce_candidates(&r, &dens, &[scaled], kept[1..].to_vec(), &targets).unwrap();
    assert_eq!(kept2.len(), kept.len());
}

#[test]
fn degree_seven_f2_candidate_is_reducible() {
    let r = f1_rep();
    let dens = polys(r.vars(), &["α^2+β^2+γ^2", "α^4+β^4+γ^4", "α^6+β^6+γ^6"]);
    let e2 = tuple(&r, "F2", ["β*γ", "γ*α", "α*β"]);
    let e3 = tuple(&r, "F2", ["(β^2-γ^2)*α", "(γ^2-α^2)*β", "(α^2-β^2)*γ"]);
    let e4 = tuple(&r, "F2", ["α*β*γ*α", "α*β*γ*β", "α*β*γ*γ"]);
    let e5 = tuple(&r, "F2", ["(β^4-γ^4)*α", "(γ^4-α^4)*β", "(α^4-β^4)*γ"]);
    let e6 = tuple(&r, "F2", ["α*β*γ*α^3", "α*β*γ*β^3", "α*β*γ*γ^3"]);
    let wrong = tuple(&r, "F2", ["(β^6-γ^6)*α", "(γ^6-α^6)*β", "(α^6-β^6)*γ"]);
    let right = tuple(
        &r,
        "F2",
        ["α*β*γ*(β^2-γ^2)*β*γ", "α*β*γ*(γ^2-α^2)*α*γ", "α*β*γ*(α^2-β^2)*α*β"],
    );
    for i in 0..3 {
        let nums: Vec<MultiPoly> = [&e2, &e3, &e4, &e5, &e6].iter().map(|t| t.partners[i].clone()).collect();
        let dec = module_decompose(&wrong.partners[i], &dens, &nums).expect("reducible");
        assert_eq!(dec.len(), 3);
        assert_eq!(coefficient_on(&dec, &[1, 0, 0], 3), FieldScalar::one());
        assert_eq!(coefficient_on(&dec, &[2, 0, 0], 1), FieldScalar::frac(-1, 2));
        assert_eq!(coefficient_on(&dec, &[0, 1, 0], 1), FieldScalar::frac(1, 2));
    }
    let targets = [0, 0, 1, 1, 1, 1, 1, 1];
    let kept = reduce_candidates(&r, &dens, &[], vec![e2, e3, e4, e5, e6, wrong.clone(), right.clone()], &targets).unwrap();
    assert!(!kept.contains(&wrong));
    assert!(kept.contains(&right));
}

#[test]
fn f2_f1_pair_for_e() {
    let g = td();
    let r = RepSum::new(&g, &["F2", "F2"]).unwrap();
    let (f1, f2, e) = (
        g.irrep_index("F1").unwrap(),
        g.irrep_index("F2").unwrap(),
        g.irrep_index("E").unwrap(),
    );
    let left = elementary_family_in(&r, 0).unwrap().restricted(&[f2]);
    let right = elementary_family_in(&r, 1).unwrap().restricted(&[f1]);
    let out = couple_numerators(&left, &right, e).unwrap();
    let mut degrees: Vec<u32> = out.iter().map(|t| t.degree).collect();
    degrees.sort();
    assert_eq!(degrees, [4, 5, 5, 6, 6, 6, 7, 7, 8]);
    assert!(out.iter().all(|t| t.is_equivariant(&r)));
}

#[test]
fn ci_coupling_example() {
    let g = c_i();
    let r = RepSum::new(&g, &["A2", "A2"]).unwrap();
    let a2 = g.irrep_index("A2").unwrap();
    let left = elementary_family_in(&r, 0).unwrap().restricted(&[a2]);
    let right = elementary_family_in(&r, 1).unwrap().restricted(&[a2]);
    let out = couple_numerators(&left, &right, 0).unwrap();
    assert_eq!(out.len(), 1);
    let want = MultiPoly::parse(r.vars(), "x1*x2").unwrap();
    assert_eq!(out[0].partners[0].monic(), want);
}

#[test]
fn oracle_examples() {
    let ci = c_i();
    let r = RepSum::new(&ci, &["A2", "A2", "A2"]).unwrap();
    assert_eq!(oracle_dimension(&r, 1, 0, 5), 21);
    assert_eq!(oracle_dimension(&r, 0, 0, 0), 1);
    assert_eq!(oracle_dimension(&r, 1, 0, 0), 0);
    let g = td();
    let r9 = RepSum::new(&g, &["A1", "E", "F2", "F2"]).unwrap();
    assert_eq!(oracle_dimension(&r9, 0, 0, 2), 5);
}

#[test]
fn hironaka_enumeration_counts() {
    let g = td();
    let r9 = RepSum::new(&g, &["A1", "E", "F2", "F2"]).unwrap();
    let f2 = build_full_basis(&r9, 4).unwrap();
    let terms = enumerate_hironaka(&f2, 0, 4);
    assert_eq!(terms.len(), 103);
    let per: Vec<usize> = (0..=4).map(|n| terms.iter().filter(|t| t.degree == n).count()).collect();
    assert_eq!(per, [0, 2, 7, 25, 69]);
    assert!(terms.windows(2).all(|w| (w[0].degree, w[0].numerator, &w[0].exponents)
        < (w[1].degree, w[1].numerator, &w[1].exponents)));

    let ci = c_i();
    let r = RepSum::new(&ci, &["A2", "A2", "A2"]).unwrap();
    let a2 = build_full_basis(&r, 1).unwrap();
    let terms = enumerate_hironaka(&a2, 0, 5);
    let per: Vec<usize> = (0..=5).map(|n| terms.iter().filter(|t| t.degree == n).count()).collect();
    assert_eq!(per, [0, 3, 0, 10, 0, 21]);
    let a1 = build_full_basis(&r, 0).unwrap();
    let terms = enumerate_hironaka(&a1, 0, 0);
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0].poly, MultiPoly::one(r.vars()));
}

#[test]
fn ci_decomposition_example() {
    let ci = c_i();
    let r = RepSum::new(&ci, &["A2", "A2", "A2"]).unwrap();
    let a2 = build_full_basis(&r, 1).unwrap();
    let p = MultiPoly::parse(r.vars(), "x2^2*x3^3").unwrap();
    let dec = hironaka_decompose(&p, &a2, 0).unwrap();
    assert_eq!(dec.len(), 1);
    let (t, c) = &dec[0];
    assert_eq!(t.exponents, [0, 1, 1]);
    assert_eq!(a2.numerators()[t.numerator].partners[0], MultiPoly::parse(r.vars(), "x3").unwrap());
    assert_eq!(*c, FieldScalar::one());
    let q = MultiPoly::parse(r.vars(), "x1*x2").unwrap();
    assert!(matches!(hironaka_decompose(&q, &a2, 0), Err(BasisError::NotCovariant { .. })));
    for (k, g) in a2.numerators().iter().enumerate() {
        let dec = hironaka_decompose(&g.partners[0], &a2, 0).unwrap();
        assert_eq!(dec.len(), 1);
        assert_eq!(dec[0].0.numerator, k);
        assert!(dec[0].0.exponents.iter().all(|&e| e == 0));
        assert_eq!(dec[0].1, FieldScalar::one());
    }
}

#[test]
fn basis_file_round_trip() {
    let g = td();
    let r = RepSum::new(&g, &["E", "F2"]).unwrap();
    let b = build_full_basis(&r, 3).unwrap();
    let text = b.to_file().to_json();
    let back: IntegrityBasis = BasisFile::from_json(&text).unwrap().load(&g).unwrap();
    assert_eq!(back.denominators(), b.denominators());
    assert_eq!(back.numerators(), b.numerators());
    assert_eq!(back.to_file().to_json(), text);
    assert!(b.to_text().lines().count() > b.numerators().len());
    assert!(BasisFile::from_json("{}").is_err());
    assert!(BasisFile::from_json(&text).unwrap().load(&c_i()).is_err());
}
