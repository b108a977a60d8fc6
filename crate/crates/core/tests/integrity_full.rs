use std::time::Instant;

use covforge_core::groups::{td, RepSum};
use covforge_core::integrity::{build_family, BuildOptions};

#[test]
fn td_nine_dim_counts() {
    let g = td();
    let r = RepSum::new(&g, &["A1", "E", "F2", "F2"]).unwrap();
    let t = Instant::now();
    let fam = build_family(&r, &BuildOptions::default()).unwrap();
    eprintln!("built in {:?}", t.elapsed());
    let profiles: [&[usize]; 5] = [
        &[1, 0, 1, 5, 9, 12, 18, 21, 24, 26, 15, 8, 4],
        &[0, 0, 0, 4, 8, 15, 26, 24, 21, 18, 12, 9, 5, 1, 0, 1],
        &[0, 1, 4, 6, 16, 28, 39, 50, 50, 39, 28, 16, 6, 4, 1],
        &[0, 0, 3, 12, 27, 45, 60, 71, 71, 60, 41, 23, 12, 5, 2],
        &[0, 2, 5, 12, 23, 41, 60, 71, 71, 60, 45, 27, 12, 3],
    ];
    for (gamma, want) in profiles.iter().enumerate() {
        let b = fam.basis(gamma);
        assert_eq!(b.numerator_counts(), *want);
        assert_eq!(b.denominator_degrees(), [1, 2, 2, 2, 3, 3, 3, 4, 4]);
    }
}

#[test]
fn three_way_agreement() {
    use covforge_core::integrity::{enumerate_hironaka, oracle_dimension};
    use covforge_core::molien::molien_direct;
    use covforge_core::polyalg::rank_and_basis;
    let g = td();
    let r = RepSum::new(&g, &["A1", "E", "F2", "F2"]).unwrap();
    let fam = build_family(&r, &BuildOptions::default()).unwrap();
    for gamma in 0..5 {
        let t = Instant::now();
        let taylor = molien_direct(&g, gamma, &r).unwrap().taylor(6);
        let terms = enumerate_hironaka(&fam.basis(gamma), 0, 6);
        for n in 0..=6u32 {
            let slice: Vec<_> = terms.iter().filter(|t| t.degree == n).map(|t| t.poly.clone()).collect();
            let span = rank_and_basis(&slice).0;
            let oracle = oracle_dimension(&r, gamma, 0, n);
            assert_eq!((oracle, span), (usize::try_from(taylor[n as usize].clone()).unwrap(), slice.len()), "Γ={gamma} n={n}");
        }
        eprintln!("Γ={gamma} {:?}", t.elapsed());
    }
}
