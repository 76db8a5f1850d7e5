use std::collections::BTreeSet;

use brauer_tft::brauer::{compose, enumerate_loop_free, BrauerMorphism};
use brauer_tft::qsemiring::laws::{check_matrix_projection, check_semiring_laws};
use brauer_tft::qsemiring::{minimal_shell, rationalize, BoolSeries, DiagramElement, MatrixShells, RationalForm};
use brauer_tft::rep::{int, rep, DualityStructure, RepMatrix};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const N: usize = 64;

fn exps(s: &BoolSeries) -> BTreeSet<usize> {
    s.exponents().collect()
}

fn series(trunc: usize) -> impl Strategy<Value = BoolSeries> {
    proptest::collection::btree_set(0..trunc, 0..6).prop_map(move |e| BoolSeries::from_exponents(e, trunc))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, ..ProptestConfig::default() })]

    #[test]
    fn series_sum_is_set_union(a in series(N), b in series(N)) {
        let union: BTreeSet<usize> = exps(&a).union(&exps(&b)).copied().collect();
        prop_assert_eq!(exps(&a.add(&b)), union);
        prop_assert_eq!(a.add(&a), a.clone());
        prop_assert!(a.le(&a.add(&b)) && b.le(&a.add(&b)));
    }

    #[test]
    fn series_product_is_truncated_sumset(a in series(N), b in series(N)) {
        let sumset: BTreeSet<usize> =
            exps(&a).iter().flat_map(|x| exps(&b).into_iter().map(move |y| x + y)).filter(|e| *e < N).collect();
        prop_assert_eq!(exps(&a.mul(&b)), sumset);
    }

    #[test]
    fn series_semiring_laws(a in series(N), b in series(N), c in series(N)) {
        prop_assert_eq!(a.mul(&b.mul(&c)), a.mul(&b).mul(&c));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&BoolSeries::one(N)), a.clone());
        prop_assert!(a.mul(&BoolSeries::zero(N)).is_zero());
        prop_assert_eq!(BoolSeries::big_sum([&a, &b, &a, &c], N), BoolSeries::big_sum([&a, &b, &c], N));
    }

    #[test]
    fn series_text_round_trips(a in series(N)) {
        prop_assert_eq!(a.to_string().parse::<BoolSeries>().unwrap(), a);
    }

    #[test]
    fn rational_forms_are_recovered(r in 0..20usize, beta in any::<bool>(), s in 0..10usize) {
        let form = RationalForm { r, beta, s };
        let expanded = form.expand(N);
        // Independent expansion: q^r / (1 - q^2) plus, if beta, q^(r + 2s + 1) / (1 - q^2).
        let mut direct: BTreeSet<usize> = (r..N).step_by(2).collect();
        if beta {
            direct.extend((r + 2 * s + 1..N).step_by(2));
        }
        prop_assert_eq!(exps(&expanded), direct);
        let found = rationalize(&expanded).unwrap();
        prop_assert_eq!(found.expand(N), expanded);
        let canonical = RationalForm { s: if beta { s } else { 0 }, ..form };
        prop_assert_eq!(found, canonical);
    }
}

#[test]
fn rationalize_examples() {
    assert_eq!(rationalize(&BoolSeries::geom2(N)), Some(RationalForm { r: 0, beta: false, s: 0 }));
    let odd_tail = BoolSeries::from_exponents(3..N, N);
    assert_eq!(rationalize(&odd_tail), Some(RationalForm { r: 3, beta: true, s: 0 }));
    assert_eq!(rationalize(&BoolSeries::from_exponents([0, 3], N)), None);
    assert_eq!(rationalize(&BoolSeries::zero(N)), None);
}

#[test]
fn semiring_law_suite() {
    let report = check_semiring_laws(&mut ChaCha8Rng::seed_from_u64(1), 200, 16);
    assert!(report.all_hold(), "{report:#?}");
    assert_eq!(report.laws.len(), 26);
    assert!(report.laws.iter().all(|l| l.passed > 0));
}

#[test]
fn matrix_projection_two_routes() {
    let shells = MatrixShells::new(DualityStructure::example());
    let (checked, failure) = check_matrix_projection(&shells, 4, 16).unwrap();
    assert!(failure.is_none(), "{failure:?}");
    assert!(checked > 0);
}

#[test]
fn shell_of_the_2_2_hom_set() {
    let d = DualityStructure::example();
    let gens: BTreeSet<RepMatrix> = enumerate_loop_free(2, 2).iter().map(|f| rep(&d, f).unwrap()).collect();
    let shell = minimal_shell(&gens, &int(2)).unwrap();
    assert_eq!(shell.len(), 3);
    let ie = compose(&BrauerMorphism::i1(), &BrauerMorphism::e1()).unwrap();
    for f in [BrauerMorphism::identity(2), BrauerMorphism::b11(), ie] {
        assert!(shell.contains(&rep(&d, &f).unwrap()));
    }
}

#[test]
fn cap_after_cup_is_a_loop() {
    let e = DiagramElement::from_morphism(&BrauerMorphism::e1(), N);
    let i = DiagramElement::from_morphism(&BrauerMorphism::i1(), N);
    let loop_ = i.compose(&e);
    assert_eq!(loop_.len(), 1);
    assert_eq!(loop_.get(0, 0, &BrauerMorphism::identity(0)), Some(&BoolSeries::qpow(1, N)));
}

#[test]
fn morphisms_have_unique_shell_form() {
    for f in enumerate_loop_free(2, 2) {
        for k in 0..4 {
            let x = DiagramElement::from_morphism(&f.with_loops(k), N);
            assert_eq!(x.len(), 1);
            assert_eq!(x.get(2, 2, &f), Some(&BoolSeries::qpow(k, N)));
        }
    }
}

#[test]
fn element_json_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..20 {
        let x = brauer_tft::qsemiring::laws::random_element(&mut rng, 3, 16);
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(serde_json::from_str::<DiagramElement>(&json).unwrap(), x);
    }
}
