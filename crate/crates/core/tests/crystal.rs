mod common;

use klr_core::crystal::{check_axioms, verify, CrystalGraph, Elementary, Suite, TensorCrystal, TensorRule};
use klr_core::{CartanDatum, DominantWeight, RootVector};
use proptest::prelude::*;

fn data() -> Vec<(&'static str, CartanDatum)> {
    vec![
        ("A1", CartanDatum::a1()),
        ("A2", CartanDatum::a2()),
        ("B2", CartanDatum::b2()),
        ("G2", CartanDatum::g2()),
    ]
}

#[test]
fn oracle_dimensions() {
    let total = |d: &CartanDatum, l: &[u32]| -> u64 { common::freudenthal(d, &DominantWeight(l.to_vec())).values().sum() };
    assert_eq!(total(&CartanDatum::a2(), &[1, 1]), 8);
    assert_eq!(total(&CartanDatum::a2(), &[2, 0]), 6);
    assert_eq!(total(&CartanDatum::b2(), &[1, 0]), 4);
    assert_eq!(total(&CartanDatum::b2(), &[0, 1]), 5);
    assert_eq!(total(&CartanDatum::g2(), &[1, 0]), 7);
    assert_eq!(total(&CartanDatum::g2(), &[0, 1]), 14);
    assert_eq!(common::positive_roots(&CartanDatum::g2()).len(), 6);
}

#[test]
fn binf_multiplicities_match_kostant() {
    for (name, d) in data() {
        let depth = if name == "G2" { 4 } else { 5 };
        let g = CrystalGraph::binf(&d, depth).unwrap();
        let roots = common::positive_roots(&d);
        let mult = g.weight_multiplicities();
        for nu in common::contents(d.rank(), depth) {
            let expect = common::kostant(&roots, &nu.iter().map(|&x| x as i64).collect::<Vec<_>>());
            let got = mult.get(&RootVector(nu.clone())).copied().unwrap_or(0) as u64;
            assert_eq!(got, expect, "{name} ν={nu:?}");
        }
    }
}

#[test]
fn affine_binf_multiplicities_match_kostant() {
    let d = CartanDatum::affine_a1();
    let g = CrystalGraph::binf(&d, 6).unwrap();
    let roots = common::affine_a1_roots(6);
    for nu in common::contents(2, 6) {
        let expect = common::kostant(&roots, &[nu[0] as i64, nu[1] as i64]);
        assert_eq!(g.multiplicity(&RootVector(nu.clone())) as u64, expect, "ν={nu:?}");
    }
}

#[test]
fn blambda_matches_freudenthal() {
    let cases: Vec<(CartanDatum, Vec<u32>)> = vec![
        (CartanDatum::a1(), vec![4]),
        (CartanDatum::a2(), vec![2, 1]),
        (CartanDatum::a2(), vec![0, 3]),
        (CartanDatum::b2(), vec![1, 1]),
        (CartanDatum::b2(), vec![0, 2]),
        (CartanDatum::g2(), vec![1, 0]),
        (CartanDatum::g2(), vec![0, 1]),
    ];
    for (d, l) in cases {
        let lam = DominantWeight(l.clone());
        let g = CrystalGraph::blambda(&d, &lam, 40).unwrap();
        assert!(g.complete);
        let expect: Vec<(RootVector, u64)> = common::freudenthal(&d, &lam).into_iter().collect();
        let got: Vec<(RootVector, u64)> = g.weight_multiplicities().into_iter().map(|(k, v)| (k, v as u64)).collect();
        assert_eq!(got, expect, "Λ={l:?}");
    }
}

#[test]
fn all_suites_pass_on_b2_and_g2() {
    for d in [CartanDatum::b2(), CartanDatum::g2()] {
        let g = CrystalGraph::binf(&d, 4).unwrap();
        for suite in [Suite::C, Suite::KS, Suite::PSI, Suite::JUMP, Suite::EPSJUMP] {
            let r = verify(&g, suite).unwrap();
            assert!(r.passed(), "{r}");
        }
        let g = CrystalGraph::blambda(&d, &DominantWeight(vec![1, 1]), 40).unwrap();
        for suite in Suite::ALL {
            let r = verify(&g, suite).unwrap();
            assert!(r.passed(), "{r}");
        }
    }
}

#[test]
fn corrupted_rule_is_caught_on_b2() {
    let d = CartanDatum::b2();
    let g = CrystalGraph::generate(&d, klr_core::crystal::GraphKind::BInf, 3, TensorRule::corrupted());
    let caught = match g {
        Err(_) => true,
        Ok(g) => !verify(&g, Suite::C).unwrap().passed(),
    };
    assert!(caught);
}

fn elementary(rank: usize) -> impl Strategy<Value = Elementary> {
    prop_oneof![
        (0..rank, -3i64..=3).prop_map(|(i, n)| Elementary::B { i, n }),
        proptest::collection::vec(0u32..3, rank).prop_map(|l| Elementary::T(DominantWeight(l))),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tensor_products_of_elementary_crystals_are_crystals(
        seed in proptest::collection::vec(elementary(2), 1..4),
        which in 0usize..3,
    ) {
        let d = [CartanDatum::a2(), CartanDatum::b2(), CartanDatum::affine_a1()][which].clone();
        let c = TensorCrystal::new(d, TensorRule::standard());
        let nodes = c.closure(&[seed], 3);
        let r = check_axioms(&c, &nodes);
        prop_assert!(r.passed(), "{}", r);
    }

    #[test]
    fn binf_weight_is_path_length(path in proptest::collection::vec(0usize..2, 0..7)) {
        let d = CartanDatum::b2();
        let model = klr_core::crystal::StringModel::reference(&d);
        let coords = model.replay(&path).unwrap();
        let nu = model.nu(&coords);
        let mut expect = vec![0u32; 2];
        for &i in &path {
            expect[i] += 1;
        }
        prop_assert_eq!(nu, RootVector(expect));
        prop_assert_eq!(model.replay(&model.path_to(&coords).unwrap()).unwrap(), coords);
    }
}
