//! Functions on finite product index sets with values in an idempotent
//! semiring, the tensor isomorphism `Fun(A) ⊗ Fun(B) ≅ Fun(A × B)` and the
//! contraction product.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use rand::Rng;

use crate::brauer::BrauerMorphism;
use crate::qsemiring::laws::random_element;
use crate::qsemiring::{BoolSeries, DiagramElement};

/// An idempotent semiring given by a context value, so that zero and one
/// may depend on configuration such as the truncation degree.
pub trait Semiring {
    type Value: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Value;
    fn one(&self) -> Self::Value;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;

    fn is_zero(&self, a: &Self::Value) -> bool {
        *a == self.zero()
    }

    fn sum<'a>(&self, values: impl IntoIterator<Item = &'a Self::Value>) -> Self::Value
    where
        Self::Value: 'a,
    {
        values.into_iter().fold(self.zero(), |acc, v| self.add(&acc, v))
    }
}

/// `Q` with the composition product. The unit is the finite composition
/// unit on objects `0..=max_object`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Composition {
    pub trunc: usize,
    pub max_object: usize,
}

impl Semiring for Composition {
    type Value = DiagramElement;

    fn zero(&self) -> DiagramElement {
        DiagramElement::zero(self.trunc)
    }

    fn one(&self) -> DiagramElement {
        DiagramElement::unit_c(0..=self.max_object, self.trunc)
    }

    fn add(&self, a: &DiagramElement, b: &DiagramElement) -> DiagramElement {
        a.add(b)
    }

    fn mul(&self, a: &DiagramElement, b: &DiagramElement) -> DiagramElement {
        a.compose(b)
    }

    fn is_zero(&self, a: &DiagramElement) -> bool {
        a.is_zero()
    }
}

/// `Q` with the monoidal product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Monoidal {
    pub trunc: usize,
}

impl Semiring for Monoidal {
    type Value = DiagramElement;

    fn zero(&self) -> DiagramElement {
        DiagramElement::zero(self.trunc)
    }

    fn one(&self) -> DiagramElement {
        DiagramElement::unit_m(self.trunc)
    }

    fn add(&self, a: &DiagramElement, b: &DiagramElement) -> DiagramElement {
        a.add(b)
    }

    fn mul(&self, a: &DiagramElement, b: &DiagramElement) -> DiagramElement {
        a.monoidal(b)
    }

    fn is_zero(&self, a: &DiagramElement) -> bool {
        a.is_zero()
    }
}

/// Truncated Boolean power series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Series {
    pub trunc: usize,
}

impl Semiring for Series {
    type Value = BoolSeries;

    fn zero(&self) -> BoolSeries {
        BoolSeries::zero(self.trunc)
    }

    fn one(&self) -> BoolSeries {
        BoolSeries::one(self.trunc)
    }

    fn add(&self, a: &BoolSeries, b: &BoolSeries) -> BoolSeries {
        a.add(b)
    }

    fn mul(&self, a: &BoolSeries, b: &BoolSeries) -> BoolSeries {
        a.mul(b)
    }

    fn is_zero(&self, a: &BoolSeries) -> bool {
        a.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunError {
    #[error("index set {factor} repeats the key {key:?}")]
    DuplicateKey { factor: usize, key: String },
    #[error("index {0:?} is not in the declared product")]
    UnknownIndex(Vec<String>),
    #[error("middle index sets differ: {left:?} vs {right:?}")]
    MiddleMismatch { left: Vec<String>, right: Vec<String> },
    #[error("{0}")]
    Arity(String),
}

/// A total function on `A₁ × ... × A_k`; entries not stored are zero.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FunMap<V> {
    factors: Vec<Vec<String>>,
    values: BTreeMap<Vec<String>, V>,
}

impl<V: Clone + PartialEq + fmt::Debug> FunMap<V> {
    /// The zero map on the product of `factors`. Arity 0 is allowed and
    /// gives a one-point index set.
    pub fn new(factors: Vec<Vec<String>>) -> Result<Self, FunError> {
        for (i, f) in factors.iter().enumerate() {
            let mut seen = BTreeSet::new();
            if let Some(dup) = f.iter().find(|k| !seen.insert(*k)) {
                return Err(FunError::DuplicateKey { factor: i, key: dup.clone() });
            }
        }
        Ok(Self { factors, values: BTreeMap::new() })
    }

    /// A one-factor map.
    pub fn on(keys: impl IntoIterator<Item = impl Into<String>>) -> Result<Self, FunError> {
        Self::new(vec![keys.into_iter().map(Into::into).collect()])
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[Vec<String>] {
        &self.factors
    }

    pub fn contains_index(&self, index: &[String]) -> bool {
        index.len() == self.factors.len() && index.iter().zip(&self.factors).all(|(k, f)| f.contains(k))
    }

    /// All indices of the product, in declaration order.
    pub fn indices(&self) -> Vec<Vec<String>> {
        self.factors.iter().fold(vec![Vec::new()], |acc, factor| {
            acc.iter()
                .flat_map(|prefix| {
                    factor.iter().map(move |k| {
                        let mut v = prefix.clone();
                        v.push(k.clone());
                        v
                    })
                })
                .collect()
        })
    }

    /// Stored (nonzero) entries in index order.
    pub fn support(&self) -> impl Iterator<Item = (&Vec<String>, &V)> + '_ {
        self.values.iter()
    }

    pub fn get<S: Semiring<Value = V>>(&self, sr: &S, index: &[String]) -> V {
        self.values.get(index).cloned().unwrap_or_else(|| sr.zero())
    }

    pub fn set<S: Semiring<Value = V>>(&mut self, sr: &S, index: Vec<String>, value: V) -> Result<(), FunError> {
        if !self.contains_index(&index) {
            return Err(FunError::UnknownIndex(index));
        }
        if sr.is_zero(&value) {
            self.values.remove(&index);
        } else {
            self.values.insert(index, value);
        }
        Ok(())
    }

    /// `χ_index · value`.
    pub fn characteristic<S: Semiring<Value = V>>(
        sr: &S,
        factors: Vec<Vec<String>>,
        index: Vec<String>,
        value: V,
    ) -> Result<Self, FunError> {
        let mut f = Self::new(factors)?;
        f.set(sr, index, value)?;
        Ok(f)
    }

    /// Equality as total functions, reading absent entries as zero.
    pub fn same_as<S: Semiring<Value = V>>(&self, sr: &S, other: &FunMap<V>) -> bool {
        self.factors == other.factors
            && self.indices().iter().all(|i| self.get(sr, i) == other.get(sr, i))
    }

    pub fn add<S: Semiring<Value = V>>(&self, sr: &S, other: &FunMap<V>) -> Result<FunMap<V>, FunError> {
        if self.factors != other.factors {
            return Err(FunError::Arity("cannot add maps on different index sets".into()));
        }
        let mut out = self.clone();
        for (i, v) in &other.values {
            let sum = sr.add(&out.get(sr, i), v);
            out.set(sr, i.clone(), sum)?;
        }
        Ok(out)
    }

    /// `i ↦ s · f(i)`.
    pub fn scale_left<S: Semiring<Value = V>>(&self, sr: &S, s: &V) -> FunMap<V> {
        self.map_values(sr, |v| sr.mul(s, v))
    }

    /// `i ↦ f(i) · s`.
    pub fn scale_right<S: Semiring<Value = V>>(&self, sr: &S, s: &V) -> FunMap<V> {
        self.map_values(sr, |v| sr.mul(v, s))
    }

    fn map_values<S: Semiring<Value = V>>(&self, sr: &S, f: impl Fn(&V) -> V) -> FunMap<V> {
        let mut out = FunMap { factors: self.factors.clone(), values: BTreeMap::new() };
        for (i, v) in &self.values {
            let w = f(v);
            if !sr.is_zero(&w) {
                out.values.insert(i.clone(), w);
            }
        }
        out
    }

    /// Reorders factors: factor `j` of the result is factor `perm[j]` of `self`.
    pub fn permute_factors(&self, perm: &[usize]) -> Result<FunMap<V>, FunError> {
        let k = self.arity();
        let mut sorted = perm.to_vec();
        sorted.sort_unstable();
        if sorted != (0..k).collect::<Vec<_>>() {
            return Err(FunError::Arity(format!("{perm:?} is not a permutation of 0..{k}")));
        }
        let factors = perm.iter().map(|&p| self.factors[p].clone()).collect();
        let values = self
            .values
            .iter()
            .map(|(i, v)| (perm.iter().map(|&p| i[p].clone()).collect(), v.clone()))
            .collect();
        Ok(FunMap { factors, values })
    }

    /// `(a, b) ↦ f(a) · g(b)` on the concatenated product.
    pub fn tensor_alpha<S: Semiring<Value = V>>(sr: &S, f: &FunMap<V>, g: &FunMap<V>) -> FunMap<V> {
        let factors = f.factors.iter().chain(&g.factors).cloned().collect();
        let mut out = FunMap { factors, values: BTreeMap::new() };
        for (a, x) in &f.values {
            for (b, y) in &g.values {
                let v = sr.mul(x, y);
                if !sr.is_zero(&v) {
                    out.values.insert(a.iter().chain(b).cloned().collect(), v);
                }
            }
        }
        out
    }

    /// Writes a map on `A × B` (the first `split` factors form `A`) as a
    /// sum of elementary tensors `(χ_a · h(a, b)) ⊗ χ_b`.
    pub fn tensor_beta<S: Semiring<Value = V>>(&self, sr: &S, split: usize) -> Result<Vec<(FunMap<V>, FunMap<V>)>, FunError> {
        if split > self.arity() {
            return Err(FunError::Arity(format!("split {split} exceeds arity {}", self.arity())));
        }
        let (fa, fb) = self.factors.split_at(split);
        self.values
            .iter()
            .map(|(i, v)| {
                let (a, b) = i.split_at(split);
                Ok((
                    FunMap::characteristic(sr, fa.to_vec(), a.to_vec(), v.clone())?,
                    FunMap::characteristic(sr, fb.to_vec(), b.to_vec(), sr.one())?,
                ))
            })
            .collect()
    }

    /// Decomposes with [`tensor_beta`](Self::tensor_beta), reassembles with
    /// [`tensor_alpha`](Self::tensor_alpha) and compares with `self`.
    pub fn tensor_beta_roundtrip<S: Semiring<Value = V>>(&self, sr: &S, split: usize) -> Result<bool, FunError> {
        let mut acc = FunMap::new(self.factors.clone())?;
        for (x, y) in self.tensor_beta(sr, split)? {
            acc = acc.add(sr, &FunMap::tensor_alpha(sr, &x, &y))?;
        }
        Ok(acc.same_as(sr, self))
    }

    /// `⟨f, g⟩(a, c) = Σ_b f(a, b) · g(b, c)`, contracting the last factor
    /// of `f` with the first factor of `g`.
    pub fn contract<S: Semiring<Value = V>>(sr: &S, f: &FunMap<V>, g: &FunMap<V>) -> Result<FunMap<V>, FunError> {
        let (Some(left), Some(right)) = (f.factors.last(), g.factors.first()) else {
            return Err(FunError::Arity("contraction needs a factor on each side".into()));
        };
        if left != right {
            return Err(FunError::MiddleMismatch { left: left.clone(), right: right.clone() });
        }
        let factors: Vec<Vec<String>> =
            f.factors[..f.arity() - 1].iter().chain(&g.factors[1..]).cloned().collect();
        let mut by_middle: BTreeMap<&String, Vec<(&[String], &V)>> = BTreeMap::new();
        for (i, v) in &g.values {
            by_middle.entry(&i[0]).or_default().push((&i[1..], v));
        }
        let mut out = FunMap { factors, values: BTreeMap::new() };
        let mut acc: BTreeMap<Vec<String>, V> = BTreeMap::new();
        for (i, x) in &f.values {
            let (a, b) = i.split_at(i.len() - 1);
            for (c, y) in by_middle.get(&b[0]).into_iter().flatten() {
                let index: Vec<String> = a.iter().chain(c.iter()).cloned().collect();
                let term = sr.mul(x, y);
                let entry = acc.entry(index).or_insert_with(|| sr.zero());
                *entry = sr.add(entry, &term);
            }
        }
        for (i, v) in acc {
            if !sr.is_zero(&v) {
                out.values.insert(i, v);
            }
        }
        Ok(out)
    }

    /// Sums all values of the map.
    pub fn total<S: Semiring<Value = V>>(&self, sr: &S) -> V {
        sr.sum(self.values.values())
    }
}

impl<V: fmt::Display> fmt::Display for FunMap<V> {
    /// Index declaration block, then one `index -> value` block per entry.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, factor) in self.factors.iter().enumerate() {
            writeln!(f, "factor {}: {}", i + 1, factor.join(" "))?;
        }
        for (index, v) in &self.values {
            let value = v.to_string().replace('\n', "\n    ");
            writeln!(f, "({}) ->\n    {value}", index.join(","))?;
        }
        Ok(())
    }
}

/// Counts from [`check_tensor_iso`], with the first failing instance.
#[derive(Debug, Clone, Default, Serialize)]
pub struct TensorIsoReport {
    pub maps: usize,
    pub roundtrip_failures: usize,
    pub triples: usize,
    pub associativity_failures: usize,
    pub middle_linearity_failures: usize,
    pub first_failure: Option<String>,
}

impl TensorIsoReport {
    pub fn holds(&self) -> bool {
        self.roundtrip_failures == 0 && self.associativity_failures == 0 && self.middle_linearity_failures == 0
    }

    fn fail(&mut self, witness: impl FnOnce() -> String) {
        self.first_failure.get_or_insert_with(witness);
    }
}

/// The value pool `{0, x, y}` used for the exhaustive round trips.
pub fn tensor_iso_pool(trunc: usize) -> [DiagramElement; 3] {
    let q = |f: &BrauerMorphism| DiagramElement::from_morphism(f, trunc);
    let x = q(&BrauerMorphism::b11().with_loops(1)).add(&q(&BrauerMorphism::identity(1)));
    let y = q(&BrauerMorphism::i1()).add(&q(&BrauerMorphism::e1().with_loops(2)));
    [DiagramElement::zero(trunc), x, y]
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

fn random_map<R: Rng + ?Sized>(rng: &mut R, factors: Vec<Vec<String>>, trunc: usize) -> FunMap<DiagramElement> {
    let sr = Monoidal { trunc };
    let mut f = FunMap::new(factors).expect("distinct names");
    for index in f.indices() {
        if rng.gen_bool(0.6) {
            f.set(&sr, index, random_element(rng, 2, trunc)).expect("declared index");
        }
    }
    f
}

/// Round-trips `α ∘ β` on every map `A × B → {0, x, y}` with `|A|, |B| <= 3`
/// under both products, then checks associativity and middle-linearity of
/// the contraction on `triples` random triples over 3-element sets.
pub fn check_tensor_iso<R: Rng + ?Sized>(rng: &mut R, triples: usize, trunc: usize) -> TensorIsoReport {
    let mono = Monoidal { trunc };
    let comp = Composition { trunc, max_object: 2 };
    let pool = tensor_iso_pool(trunc);
    let mut report = TensorIsoReport { triples, ..Default::default() };
    for a in 0..=3 {
        for b in 0..=3 {
            let factors = vec![names("a", a), names("b", b)];
            let cells = FunMap::<DiagramElement>::new(factors.clone()).expect("distinct names").indices();
            for code in 0..3usize.pow((a * b) as u32) {
                let mut h = FunMap::new(factors.clone()).expect("distinct names");
                let mut c = code;
                for index in &cells {
                    h.set(&mono, index.clone(), pool[c % 3].clone()).expect("declared index");
                    c /= 3;
                }
                report.maps += 1;
                let ok = h.tensor_beta_roundtrip(&mono, 1) == Ok(true) && h.tensor_beta_roundtrip(&comp, 1) == Ok(true);
                if !ok {
                    report.roundtrip_failures += 1;
                    report.fail(|| format!("round trip of\n{h}"));
                }
            }
        }
    }
    let set = |p: &str| names(p, 3);
    for _ in 0..triples {
        let f = random_map(rng, vec![set("a"), set("b")], trunc);
        let g = random_map(rng, vec![set("b"), set("c")], trunc);
        let h = random_map(rng, vec![set("c"), set("d")], trunc);
        let contract = |x: &FunMap<DiagramElement>, y: &FunMap<DiagramElement>| {
            FunMap::contract(&comp, x, y).expect("middles agree")
        };
        let left = contract(&contract(&f, &g), &h);
        let right = contract(&f, &contract(&g, &h));
        if !left.same_as(&comp, &right) {
            report.associativity_failures += 1;
            report.fail(|| format!("associativity on\n{f}\n{g}\n{h}"));
        }
        let s = random_element(rng, 2, trunc);
        if !contract(&f.scale_right(&comp, &s), &g).same_as(&comp, &contract(&f, &g.scale_left(&comp, &s))) {
            report.middle_linearity_failures += 1;
            report.fail(|| format!("middle-linearity with s = {s} on\n{f}\n{g}"));
        }
    }
    report
}
