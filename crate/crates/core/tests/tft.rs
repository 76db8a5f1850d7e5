use std::collections::{BTreeMap, BTreeSet};

use brauer_tft::brauer::{compose, enumerate_loop_free, tensor, BrauerMorphism};
use brauer_tft::funmod::{FunMap, Monoidal};
use brauer_tft::qsemiring::{BoolSeries, DiagramElement};
use brauer_tft::tft::random::{random_cobordism, random_disjoint_pair, random_gluable_pair, EnsembleParams};
use brauer_tft::tft::{
    aggregate, disjoint_union, glue, saturate_double_loops, state_sum, verify_disjoint, verify_gluing,
    verify_rationality, DiscreteCobordism, Field, State,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const N: usize = 64;

/// The state sum evaluated from the definition: for every boundary pair,
/// the set of `(loop-free part, loop count)` over matching fields.
fn naive_state(w: &DiscreteCobordism) -> BTreeMap<(String, String), BTreeSet<(BrauerMorphism, usize)>> {
    let mut out: BTreeMap<_, BTreeSet<_>> = BTreeMap::new();
    for f in w.fields() {
        let (core, k) = f.morphism.strip_loops();
        out.entry((f.key_in.clone(), f.key_out.clone())).or_default().insert((core, k));
    }
    out
}

fn naive_matches(z: &State, w: &DiscreteCobordism) -> bool {
    let sr = Monoidal { trunc: N };
    let naive = naive_state(w);
    let support: BTreeSet<(String, String)> = z.support().map(|(i, _)| (i[0].clone(), i[1].clone())).collect();
    if support != naive.keys().cloned().collect() {
        return false;
    }
    naive.iter().all(|((a, b), terms)| {
        let v = z.get(&sr, &[a.clone(), b.clone()]);
        let mut by_key: BTreeMap<&BrauerMorphism, Vec<usize>> = BTreeMap::new();
        for (core, k) in terms {
            by_key.entry(core).or_default().push(*k);
        }
        v.len() == by_key.len()
            && by_key.iter().all(|(core, ks)| {
                v.get(core.dom(), core.cod(), core) == Some(&BoolSeries::from_exponents(ks.iter().copied(), N))
            })
    })
}

#[test]
fn state_sum_matches_definition_on_random_ensembles() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let w = random_cobordism(&mut rng, "w", &EnsembleParams::default());
        assert!(naive_matches(&state_sum(&w, N), &w), "{w}");
    }
}

#[test]
fn gluing_law_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..60 {
        let (w1, w2) = random_gluable_pair(&mut rng, &EnsembleParams::default());
        let check = verify_gluing(&w1, &w2, N).unwrap();
        assert!(check.holds, "{check:?}");
    }
}

#[test]
fn glued_fields_are_all_composable_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (w1, w2) = random_gluable_pair(&mut rng, &EnsembleParams::default());
    let glued = glue(&w1, &w2).unwrap();
    let mut expected = Vec::new();
    for f in w1.fields() {
        for g in w2.fields().iter().filter(|g| g.key_in == f.key_out) {
            expected.push(Field {
                key_in: f.key_in.clone(),
                key_out: g.key_out.clone(),
                morphism: compose(&g.morphism, &f.morphism).unwrap(),
            });
        }
    }
    assert_eq!(glued.fields(), expected.as_slice());
}

/// A cobordism from the given incoming keys to fresh keys `z0, z1` of the
/// same parity, with random fields.
fn extend(rng: &mut ChaCha8Rng, ins: &BTreeMap<String, usize>, fields: usize) -> DiscreteCobordism {
    let parity = ins.values().next().unwrap() % 2;
    let outs: Vec<(String, usize)> = (0..2).map(|i| (format!("z{i}"), parity + 2 * i)).collect();
    let ins: Vec<(&String, &usize)> = ins.iter().collect();
    let fs = (0..fields)
        .map(|_| {
            let (a, m) = ins.choose(rng).unwrap();
            let (b, n) = outs.choose(rng).unwrap();
            let morphism = enumerate_loop_free(**m, *n).choose(rng).unwrap().with_loops(rng.gen_range(0..=2));
            Field { key_in: (*a).clone(), key_out: b.clone(), morphism }
        })
        .collect();
    DiscreteCobordism::new(ins.into_iter().map(|(k, o)| (k.clone(), *o)), outs, fs).unwrap()
}

#[test]
fn gluing_is_associative_on_chains() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let params = EnsembleParams { max_fields: 8, ..EnsembleParams::default() };
    for _ in 0..10 {
        let (w1, w2) = random_gluable_pair(&mut rng, &params);
        let w3 = extend(&mut rng, w2.out_keys(), 8);
        let left = glue(&glue(&w1, &w2).unwrap(), &w3).unwrap();
        let right = glue(&w1, &glue(&w2, &w3).unwrap()).unwrap();
        let as_set = |w: &DiscreteCobordism| w.fields().iter().cloned().collect::<BTreeSet<_>>();
        assert_eq!(as_set(&left), as_set(&right));
        assert_eq!(state_sum(&left, N), state_sum(&right, N));
    }
}

#[test]
fn gluing_with_duplicated_fields() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let (w1, w2) = random_gluable_pair(&mut rng, &EnsembleParams::default());
    let doubled: Vec<Field> = w1.fields().iter().chain(w1.fields()).cloned().collect();
    let w1d = w1.clone().with_fields(doubled).unwrap();
    assert_eq!(state_sum(&w1d, N), state_sum(&w1, N));
    assert!(verify_gluing(&w1d, &w2, N).unwrap().holds);
}

#[test]
fn cap_then_cup_creates_a_loop() {
    let key = |k: &str, o| [(k.to_string(), o)];
    let f = |a: &str, b: &str, m| Field { key_in: a.into(), key_out: b.into(), morphism: m };
    let w1 = DiscreteCobordism::new(key("f", 0), key("u", 2), vec![f("f", "u", BrauerMorphism::i1())]).unwrap();
    let w2 = DiscreteCobordism::new(key("u", 2), key("h", 0), vec![f("u", "h", BrauerMorphism::e1())]).unwrap();
    let glued = glue(&w1, &w2).unwrap();
    assert_eq!(glued.fields()[0].morphism, BrauerMorphism::loop_());
    let z = state_sum(&glued, N);
    let v = z.get(&Monoidal { trunc: N }, &["f".into(), "h".into()]);
    assert_eq!(v.get(0, 0, &BrauerMorphism::identity(0)), Some(&BoolSeries::qpow(1, N)));
    assert!(verify_gluing(&w1, &w2, N).unwrap().holds);
}

#[test]
fn disjoint_union_law_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let params = EnsembleParams { max_fields: 20, ..EnsembleParams::default() };
    for _ in 0..40 {
        let (w, v) = random_disjoint_pair(&mut rng, &params);
        let check = verify_disjoint(&w, &v, N).unwrap();
        assert!(check.holds, "{check:?}");
    }
}

#[test]
fn disjoint_union_fields_are_tensored_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    let params = EnsembleParams { max_fields: 5, ..EnsembleParams::default() };
    let (w, v) = random_disjoint_pair(&mut rng, &params);
    let u = disjoint_union(&w, &v).unwrap();
    assert_eq!(u.fields().len(), w.fields().len() * v.fields().len());
    assert_eq!(u.in_keys().len(), w.in_keys().len() * v.in_keys().len());
    for (i, f) in u.fields().iter().enumerate() {
        let (a, b) = (&w.fields()[i / v.fields().len()], &v.fields()[i % v.fields().len()]);
        assert_eq!(f.key_in, format!("{}|{}", a.key_in, b.key_in));
        assert_eq!(f.morphism, tensor(&a.morphism, &b.morphism));
    }
}

#[test]
fn relabeling_conjugates_the_state_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..20 {
        let w = random_cobordism(&mut rng, "w", &EnsembleParams::default());
        let rename = |keys: &BTreeMap<String, usize>, tag: &str| -> BTreeMap<String, String> {
            let names: Vec<&String> = keys.keys().collect();
            names.iter().enumerate().map(|(i, k)| ((*k).clone(), format!("{tag}{}", names.len() - i))).collect()
        };
        let (in_map, out_map) = (rename(w.in_keys(), "x"), rename(w.out_keys(), "y"));
        let relabeled = w.relabel(&in_map, &out_map).unwrap();
        let (z, zr) = (state_sum(&w, N), state_sum(&relabeled, N));
        let sr = Monoidal { trunc: N };
        for index in z.indices() {
            let moved = vec![in_map[&index[0]].clone(), out_map[&index[1]].clone()];
            assert_eq!(z.get(&sr, &index), zr.get(&sr, &moved));
        }
        let inverse = |m: &BTreeMap<String, String>| m.iter().map(|(a, b)| (b.clone(), a.clone())).collect();
        let back = relabeled.relabel(&inverse(&in_map), &inverse(&out_map)).unwrap();
        assert_eq!(state_sum(&back, N), z);
    }
}

#[test]
fn saturated_random_ensembles_are_rational() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    for _ in 0..20 {
        let w = random_cobordism(&mut rng, "w", &EnsembleParams::default());
        let report = verify_rationality(&w, 20, N);
        assert!(report.holds, "{report:?}");
    }
}

#[test]
fn saturation_values_match_expansion() {
    let phi = BrauerMorphism::b11();
    let key = |k: &str| [(k.to_string(), 2)];
    let fields = [0, 1, 3]
        .into_iter()
        .map(|k| Field { key_in: "f".into(), key_out: "g".into(), morphism: phi.with_loops(k) })
        .collect();
    let w = DiscreteCobordism::new(key("f"), key("g"), fields).unwrap();
    let z = state_sum(&saturate_double_loops(&w, 20), N);
    let v: DiagramElement = z.get(&Monoidal { trunc: N }, &["f".into(), "g".into()]);
    let expected = BoolSeries::from_exponents((0..=40).step_by(2).chain((1..=43).step_by(2)), N);
    assert_eq!(v.get(2, 2, &phi), Some(&expected));
}

#[test]
fn scenario_text_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..20 {
        let w = random_cobordism(&mut rng, "w", &EnsembleParams::default());
        let parsed: DiscreteCobordism = w.to_string().parse().unwrap();
        assert_eq!(parsed, w);
    }
    let (w, v) = random_disjoint_pair(&mut rng, &EnsembleParams { max_fields: 4, ..Default::default() });
    let u = disjoint_union(&w, &v).unwrap();
    assert_eq!(u.to_string().parse::<DiscreteCobordism>().unwrap(), u);
}

#[test]
fn aggregate_sums_scenarios() {
    let id = BrauerMorphism::identity(2);
    let key = |k: &str| [(k.to_string(), 2)];
    let sc = |out: &str, m: BrauerMorphism| {
        let f = Field { key_in: "s".into(), key_out: out.into(), morphism: m };
        (out.to_string(), DiscreteCobordism::new(key("s"), key(out), vec![f]).unwrap())
    };
    let family = [sc("a", id.clone()), sc("b", id.with_loops(2)), sc("c", BrauerMorphism::b11())];
    let agg = aggregate("s", &family, N).unwrap();
    assert_eq!(agg.get(2, 2, &id), Some(&BoolSeries::from_exponents([0, 2], N)));
    assert_eq!(agg.len(), 2);
    let direct = family.iter().fold(DiagramElement::zero(N), |acc, (out, w)| {
        acc.add(&FunMap::get(&state_sum(w, N), &Monoidal { trunc: N }, &["s".into(), out.clone()]))
    });
    assert_eq!(agg, direct);
}
