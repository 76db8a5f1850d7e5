//! Seeded random ensembles for the law checks.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{DiscreteCobordism, Field};
use crate::brauer::enumerate_loop_free;

/// Bounds on a random ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnsembleParams {
    pub max_keys: usize,
    pub max_fields: usize,
    /// Largest object; all objects share one parity so every key pair
    /// admits morphisms, and `m + n <= 2 · max_object`.
    pub max_object: usize,
    pub max_loops: usize,
}

impl Default for EnsembleParams {
    fn default() -> Self {
        Self { max_keys: 5, max_fields: 40, max_object: 3, max_loops: 2 }
    }
}

fn random_keys<R: Rng + ?Sized>(rng: &mut R, prefix: &str, max_count: usize, objects: &[usize]) -> Vec<(String, usize)> {
    (0..rng.gen_range(1..=max_count)).map(|i| (format!("{prefix}{i}"), *objects.choose(rng).expect("nonempty"))).collect()
}

fn random_fields<R: Rng + ?Sized>(
    rng: &mut R,
    ins: &[(String, usize)],
    outs: &[(String, usize)],
    params: &EnsembleParams,
) -> Vec<Field> {
    (0..rng.gen_range(0..=params.max_fields))
        .map(|_| {
            let (a, m) = ins.choose(rng).expect("nonempty");
            let (b, n) = outs.choose(rng).expect("nonempty");
            let f = enumerate_loop_free(*m, *n).choose(rng).expect("parities agree").clone();
            Field { key_in: a.clone(), key_out: b.clone(), morphism: f.with_loops(rng.gen_range(0..=params.max_loops)) }
        })
        .collect()
}

fn parity_objects<R: Rng + ?Sized>(rng: &mut R, max_object: usize) -> Vec<usize> {
    let parity = rng.gen_range(0..2);
    (0..=max_object).filter(|o| o % 2 == parity).collect()
}

/// A random cobordism whose keys are named `{prefix}i0, ...` and `{prefix}o0, ...`.
pub fn random_cobordism<R: Rng + ?Sized>(rng: &mut R, prefix: &str, params: &EnsembleParams) -> DiscreteCobordism {
    let objects = parity_objects(rng, params.max_object);
    let ins = random_keys(rng, &format!("{prefix}i"), params.max_keys, &objects);
    let outs = random_keys(rng, &format!("{prefix}o"), params.max_keys, &objects);
    let fields = random_fields(rng, &ins, &outs, params);
    DiscreteCobordism::new(ins, outs, fields).expect("valid by construction")
}

/// Two random cobordisms sharing the interface keys `u0, u1, ...`.
pub fn random_gluable_pair<R: Rng + ?Sized>(rng: &mut R, params: &EnsembleParams) -> (DiscreteCobordism, DiscreteCobordism) {
    let objects = parity_objects(rng, params.max_object);
    let ins = random_keys(rng, "a", params.max_keys, &objects);
    let mid = random_keys(rng, "u", params.max_keys, &objects);
    let outs = random_keys(rng, "c", params.max_keys, &objects);
    let f1 = random_fields(rng, &ins, &mid, params);
    let f2 = random_fields(rng, &mid, &outs, params);
    (
        DiscreteCobordism::new(ins, mid.clone(), f1).expect("valid by construction"),
        DiscreteCobordism::new(mid, outs, f2).expect("valid by construction"),
    )
}

/// Two random cobordisms with disjoint key names.
pub fn random_disjoint_pair<R: Rng + ?Sized>(rng: &mut R, params: &EnsembleParams) -> (DiscreteCobordism, DiscreteCobordism) {
    (random_cobordism(rng, "l", params), random_cobordism(rng, "r", params))
}
