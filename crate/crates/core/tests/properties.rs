use std::sync::Arc;

use covforge_core::exact_arith::{FieldScalar, Rational};
use covforge_core::groups::{c_i, td, FiniteGroup, RepSum};
use covforge_core::integrity::{
    build_family, denominators_independent, enumerate_hironaka, hironaka_decompose, reconstruct, BuildOptions,
};
use covforge_core::molien::{molien_direct, GenFun};
use covforge_core::polyalg::{in_span, rank_and_basis, Matrix, Monomial, MultiPoly, VarTable};
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = FieldScalar> {
    prop::array::uniform4((-9i64..=9, 1i64..=5)).prop_map(|c| {
        let r = |i: usize| Rational::frac(c[i].0, c[i].1);
        FieldScalar::new(r(0), r(1), r(2), r(3))
    })
}

fn vars3() -> Arc<VarTable> {
    VarTable::new(["x", "y", "z"]).unwrap().into_shared()
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::array::uniform3(0u16..3), -4i64..=4), 1..6).prop_map(|terms| {
        let v = vars3();
        MultiPoly::from_terms(
            &v,
            terms
                .into_iter()
                .map(|(e, c)| (Monomial::from_exponents(&e), FieldScalar::from_int(c))),
        )
    })
}

fn int_matrix() -> impl Strategy<Value = Matrix> {
    prop::array::uniform9(-2i64..=2).prop_map(|a| {
        Matrix::from_int_rows(&[&a[0..3], &a[3..6], &a[6..9]])
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn rank_is_invariant_under_scaling_and_order(ps in prop::collection::vec(poly(), 1..6), k in scalar()) {
        prop_assume!(!k.is_zero());
        let r = rank_and_basis(&ps).0;
        let mut scaled: Vec<MultiPoly> = ps.iter().map(|p| p.scale(&k)).collect();
        scaled.reverse();
        prop_assert_eq!(rank_and_basis(&scaled).0, r);
    }

    #[test]
    fn span_membership_reconstructs(ps in prop::collection::vec(poly(), 1..5), cs in prop::collection::vec(-5i64..=5, 5)) {
        let v = vars3();
        let mut target = MultiPoly::zero(&v);
        for (p, &c) in ps.iter().zip(&cs) {
            target = &target + &p.scale(&FieldScalar::from_int(c));
        }
        let coeffs = in_span(&target, &ps).expect("combination lies in the span");
        let mut back = MultiPoly::zero(&v);
        for (p, c) in ps.iter().zip(&coeffs) {
            back = &back + &p.scale(c);
        }
        prop_assert_eq!(back, target);
    }

    #[test]
    fn substitution_is_a_ring_map_and_composes(p in poly(), q in poly(), a in int_matrix(), b in int_matrix()) {
        let pq = &p * &q;
        prop_assert_eq!(pq.substitute_linear(&a).unwrap(), &p.substitute_linear(&a).unwrap() * &q.substitute_linear(&a).unwrap());
        prop_assert_eq!(
            p.substitute_linear(&a).unwrap().substitute_linear(&b).unwrap(),
            p.substitute_linear(&b.mul(&a)).unwrap()
        );
    }

    #[test]
    fn hilbert_series_completeness(labels in prop::collection::vec(prop::sample::select(vec!["A1", "A2", "E", "F1", "F2"]), 1..4)) {
        let g = td();
        let r = RepSum::new(&g, &labels).unwrap();
        let mut total = GenFun::zero(1);
        for gamma in 0..g.irreps().len() {
            let m = molien_direct(&g, gamma, &r).unwrap().specialize();
            total = total.try_add(&m.scale(g.irrep(gamma).dim() as i64)).unwrap();
        }
        let free = GenFun::univariate(&[1], &vec![1; r.dim()]);
        prop_assert_eq!(total, free);
    }
}

fn all_groups() -> Vec<Arc<FiniteGroup>> {
    vec![c_i(), td()]
}

#[test]
fn character_orthogonality() {
    for g in all_groups() {
        let n = g.irreps().len();
        for i in 0..n {
            for j in 0..n {
                let mut s = FieldScalar::zero();
                for x in 0..g.order() {
                    s += &(g.character(i, x) * g.character(j, x));
                }
                let want = if i == j { g.order() as i64 } else { 0 };
                assert_eq!(s, FieldScalar::from_int(want), "{} {i} {j}", g.name());
            }
        }
    }
}

#[test]
fn irreps_are_homomorphisms() {
    for g in all_groups() {
        for ir in g.irreps() {
            for a in 0..g.order() {
                for b in 0..g.order() {
                    assert_eq!(ir.matrix(a).mul(ir.matrix(b)), *ir.matrix(g.mul(a, b)));
                }
            }
        }
    }
}

#[test]
fn cg_tensors_intertwine_on_every_element() {
    for g in all_groups() {
        let n = g.irreps().len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let mult = g.product_multiplicity(a, b, c);
                    if mult == 0 {
                        assert!(g.cg_tensor(a, b, c).is_err());
                        continue;
                    }
                    let ts = g.cg_tensor(a, b, c).unwrap();
                    assert_eq!(ts.len(), mult);
                    for (i, s) in ts.iter().enumerate() {
                        for t in &ts[..i] {
                            assert!(s.inner(t).is_zero());
                        }
                    }
                    for t in &ts {
                        let m = t.as_matrix();
                        for x in 0..g.order() {
                            let lhs = g.irrep(a).matrix(x).kron(g.irrep(b).matrix(x)).mul(&m);
                            assert_eq!(lhs, m.mul(g.irrep(c).matrix(x)));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn td_denominators_are_independent_invariants() {
    let g = td();
    let r = RepSum::new(&g, &["A1", "E", "F2", "F2"]).unwrap();
    let fam = build_family(&r, &BuildOptions::default()).unwrap();
    let dens = fam.denominators();
    assert_eq!(dens.len(), 9);
    for f in &dens {
        for x in 0..g.order() {
            assert_eq!(r.act(x, f), *f);
        }
    }
    assert!(denominators_independent(&dens, 7));
    assert!(denominators_independent(&dens, 8));
}

#[test]
fn td_numerators_are_equivariant() {
    let g = td();
    let r = RepSum::new(&g, &["A1", "E", "F2", "F2"]).unwrap();
    let fam = build_family(&r, &BuildOptions::default()).unwrap();
    for gamma in 0..g.irreps().len() {
        for t in fam.numerators(gamma) {
            assert!(t.partners.iter().all(|p| p.is_homogeneous() && p.degree() == Some(t.degree)));
            assert!(t.is_equivariant(&r), "Γ={gamma} degree {}", t.degree);
        }
    }
}

#[test]
fn decomposition_round_trip() {
    use rand::{Rng, SeedableRng};
    let g = td();
    let r = RepSum::new(&g, &["A1", "E", "F2", "F2"]).unwrap();
    let b = build_family(&r, &BuildOptions::default()).unwrap().basis(4);
    let terms = enumerate_hironaka(&b, 0, 5);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..50 {
        let mut picked: Vec<usize> = (0..20).map(|_| rng.gen_range(0..terms.len())).collect();
        picked.sort();
        picked.dedup();
        let combo: Vec<_> = picked
            .iter()
            .map(|&i| {
                let c = loop {
                    let c = rng.gen_range(-9i64..=9);
                    if c != 0 {
                        break c;
                    }
                };
                (terms[i].clone(), FieldScalar::from_int(c))
            })
            .collect();
        let p = reconstruct(&combo).unwrap();
        let mut dec = hironaka_decompose(&p, &b, 0).unwrap();
        dec.sort_by(|x, y| (x.0.degree, x.0.numerator, &x.0.exponents).cmp(&(y.0.degree, y.0.numerator, &y.0.exponents)));
        assert_eq!(dec, combo);
        assert_eq!(reconstruct(&dec).unwrap(), p);
    }
}
