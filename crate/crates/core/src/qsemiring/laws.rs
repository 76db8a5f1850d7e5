//! Randomized checks of the semiring laws, and the diagram/matrix
//! two-route check of the composition product.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use super::element::{DiagramElement, MatrixKeyError, MatrixShells, QElement};
use super::series::BoolSeries;
use crate::brauer::{enumerate_loop_free, BrauerMorphism};

/// A random element with 1 to 3 slots over objects `0..=max_object`, at
/// most 2 keys per slot and coefficients with 1 to 3 exponents below 6.
pub fn random_element<R: Rng + ?Sized>(rng: &mut R, max_object: usize, trunc: usize) -> DiagramElement {
    let mut out = QElement::zero(trunc);
    for _ in 0..rng.gen_range(1..=3) {
        let m = rng.gen_range(0..=max_object);
        let parity: Vec<usize> = (0..=max_object).filter(|n| (m + n) % 2 == 0).collect();
        let n = *parity.choose(rng).expect("some object has matching parity");
        let homs = enumerate_loop_free(m, n);
        for _ in 0..rng.gen_range(1..=2) {
            let key = homs.choose(rng).expect("hom-sets of even size are nonempty").clone();
            out.accumulate(m, n, key, &random_series(rng, trunc));
        }
    }
    out
}

fn random_series<R: Rng + ?Sized>(rng: &mut R, trunc: usize) -> BoolSeries {
    let count = rng.gen_range(1..=3);
    BoolSeries::from_exponents((0..count).map(|_| rng.gen_range(0..6)), trunc)
}

/// Pass counts per law, with the first failing instance of each.
#[derive(Debug, Clone, Default, Serialize)]
pub struct LawReport {
    pub trials: usize,
    pub laws: Vec<LawResult>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LawResult {
    pub semiring: &'static str,
    pub law: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub first_failure: Option<String>,
}

impl LawReport {
    pub fn all_hold(&self) -> bool {
        self.laws.iter().all(|l| l.failed == 0)
    }

    fn record(&mut self, semiring: &'static str, law: &'static str, ok: bool, witness: impl FnOnce() -> String) {
        let idx = match self.laws.iter().position(|l| l.semiring == semiring && l.law == law) {
            Some(i) => i,
            None => {
                self.laws.push(LawResult { semiring, law, passed: 0, failed: 0, first_failure: None });
                self.laws.len() - 1
            }
        };
        let entry = &mut self.laws[idx];
        if ok {
            entry.passed += 1;
        } else {
            entry.failed += 1;
            entry.first_failure.get_or_insert_with(witness);
        }
    }
}

type Product = fn(&DiagramElement, &DiagramElement) -> DiagramElement;

/// Runs every law on `trials` random triples for both products.
pub fn check_semiring_laws<R: Rng + ?Sized>(rng: &mut R, trials: usize, trunc: usize) -> LawReport {
    let mut report = LawReport { trials, laws: Vec::new() };
    let products: [(&'static str, Product); 2] =
        [("composition", DiagramElement::compose), ("monoidal", DiagramElement::monoidal)];
    for _ in 0..trials {
        let (x, y, z) = (random_element(rng, 3, trunc), random_element(rng, 3, trunc), random_element(rng, 3, trunc));
        let witness = || format!("x = {x:?}\ny = {y:?}\nz = {z:?}");
        for (name, mul) in products {
            let unit = if name == "composition" {
                DiagramElement::unit_c(0..=3, trunc)
            } else {
                DiagramElement::unit_m(trunc)
            };
            check_triple(&mut report, name, mul, &unit, (&x, &y, &z), trunc, &witness);
        }
    }
    report
}

fn check_triple(
    report: &mut LawReport,
    name: &'static str,
    mul: Product,
    unit: &DiagramElement,
    (x, y, z): (&DiagramElement, &DiagramElement, &DiagramElement),
    trunc: usize,
    witness: &dyn Fn() -> String,
) {
    let zero = DiagramElement::zero(trunc);
    let mut check = |law, ok| report.record(name, law, ok, witness);

    check("additive associativity", x.add(y).add(z) == x.add(&y.add(z)));
    check("additive commutativity", x.add(y) == y.add(x));
    check("additive idempotence", x.add(x) == *x);
    check("additive zero", x.add(&zero) == *x);
    check("multiplicative associativity", mul(&mul(x, y), z) == mul(x, &mul(y, z)));
    check("left unit", mul(unit, x) == *x);
    check("right unit", mul(x, unit) == *x);
    check("left distributivity", mul(x, &y.add(z)) == mul(x, y).add(&mul(x, z)));
    check("right distributivity", mul(&x.add(y), z) == mul(x, z).add(&mul(y, z)));
    check("zero absorption", mul(x, &zero).is_zero() && mul(&zero, x).is_zero());

    let family = [x.clone(), y.clone(), x.clone(), z.clone(), y.clone()];
    let set = [x.clone(), y.clone(), z.clone()];
    let sum = DiagramElement::big_sum(&family, trunc);
    check("set-dependent summation", sum == DiagramElement::big_sum(&set, trunc));
    // an upper bound, and least: each of its exponents is forced by a member,
    // so it lies below every other upper bound
    let upper = family.iter().all(|f| f.le(&sum));
    let least = sum.entries().all(|(m, n, key, s)| {
        s.exponents()
            .all(|e| family.iter().any(|f| f.get(m, n, key).is_some_and(|b| b.contains(e))))
    });
    check("sum is supremum", upper && least);
    let termwise: Vec<DiagramElement> = family.iter().map(|f| mul(f, y)).collect();
    check(
        "distributivity over sums",
        mul(&sum, y) == DiagramElement::big_sum(&termwise, trunc),
    );
}

/// Composes every pair `φ: [a] -> [b]`, `ψ: [b] -> [c]` with `a + b` and
/// `b + c` at most `max_size` twice: in diagram keys followed by
/// projection, and after projecting each factor. Returns the number of
/// pairs and the first disagreement.
pub fn check_matrix_projection(
    shells: &MatrixShells,
    max_size: usize,
    trunc: usize,
) -> Result<(usize, Option<(BrauerMorphism, BrauerMorphism)>), MatrixKeyError> {
    let mut checked = 0;
    for a in 0..=max_size {
        for b in 0..=max_size - a {
            for c in 0..=max_size - b {
                if (a + b) % 2 == 1 || (b + c) % 2 == 1 {
                    continue;
                }
                for phi in enumerate_loop_free(a, b) {
                    for psi in enumerate_loop_free(b, c) {
                        let x = DiagramElement::from_morphism(&phi, trunc);
                        let y = DiagramElement::from_morphism(&psi, trunc);
                        let route_a = x.compose(&y).to_matrix_keys(shells)?;
                        let route_b = x.to_matrix_keys(shells)?.compose_in(shells, &y.to_matrix_keys(shells)?)?;
                        checked += 1;
                        if route_a != route_b {
                            return Ok((checked, Some((phi, psi))));
                        }
                    }
                }
            }
        }
    }
    Ok((checked, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brauer::double_factorial;
    use crate::rep::DualityStructure;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn laws_hold_on_a_small_run() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let report = check_semiring_laws(&mut rng, 40, 16);
        assert!(report.all_hold(), "{report:#?}");
        assert_eq!(report.laws.len(), 26);
        assert!(report.laws.iter().all(|l| l.passed == 40));
    }

    #[test]
    fn projection_commutes_with_composition() {
        let shells = MatrixShells::new(DualityStructure::example());
        let (checked, failure) = check_matrix_projection(&shells, 4, 32).unwrap();
        assert_eq!(failure, None);
        let mut expected = 0;
        for a in 0..=4i64 {
            for b in 0..=4 - a {
                for c in 0..=4 - b {
                    if (a + b) % 2 == 0 && (b + c) % 2 == 0 {
                        expected += double_factorial(a + b - 1) * double_factorial(b + c - 1);
                    }
                }
            }
        }
        assert_eq!(checked as u64, expected);
    }

    #[test]
    fn random_elements_are_nonzero_and_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let x = random_element(&mut rng, 3, 16);
            assert!(!x.is_zero());
            assert!(x.objects().iter().all(|&o| o <= 3));
        }
    }
}
