use std::collections::{BTreeMap, HashMap};
use std::convert::Infallible;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use super::series::BoolSeries;
use super::shell::{minimal_shell, shell_decompose, ShellError};
use crate::brauer::{compose, enumerate_loop_free, tensor, BrauerMorphism};
use crate::rep::{int, rep, DualityStructure, RepError, RepMatrix};

/// Keys of a profinite completion together with their products. Every
/// product is reduced to `λ^k ⊗ key` and reported as `(k, key)`.
pub trait KeyAlgebra {
    type Key: Clone + Ord + fmt::Debug + KeyLabel;
    type Error: std::error::Error;

    fn dom(&self, key: &Self::Key) -> usize;
    fn cod(&self, key: &Self::Key) -> usize;
    /// `second ∘ first`.
    fn compose(&self, second: &Self::Key, first: &Self::Key) -> Result<(usize, Self::Key), Self::Error>;
    fn tensor(&self, left: &Self::Key, right: &Self::Key) -> Result<(usize, Self::Key), Self::Error>;
    fn identity(&self, n: usize) -> Result<Self::Key, Self::Error>;
}

/// Single-line label of a key, used in text and structured output.
pub trait KeyLabel {
    fn label(&self) -> String;
}

impl KeyLabel for BrauerMorphism {
    fn label(&self) -> String {
        self.to_string()
    }
}

impl KeyLabel for RepMatrix {
    /// Rows separated by `;`, e.g. `[1 0;0 1]`.
    fn label(&self) -> String {
        let rows: Vec<String> = self.matrix().to_string().lines().map(str::to_string).collect();
        format!("[{}]", rows.join(";"))
    }
}

/// Loop-free Brauer morphisms as keys.
#[derive(Debug, Clone, Copy, Default)]
pub struct Diagrams;

impl KeyAlgebra for Diagrams {
    type Key = BrauerMorphism;
    type Error = Infallible;

    fn dom(&self, key: &BrauerMorphism) -> usize {
        key.dom()
    }

    fn cod(&self, key: &BrauerMorphism) -> usize {
        key.cod()
    }

    fn compose(&self, second: &BrauerMorphism, first: &BrauerMorphism) -> Result<(usize, BrauerMorphism), Infallible> {
        let c = compose(second, first).expect("slots were matched on the middle object");
        let (core, k) = c.strip_loops();
        Ok((k, core))
    }

    fn tensor(&self, left: &BrauerMorphism, right: &BrauerMorphism) -> Result<(usize, BrauerMorphism), Infallible> {
        let (core, k) = tensor(left, right).strip_loops();
        Ok((k, core))
    }

    fn identity(&self, n: usize) -> Result<BrauerMorphism, Infallible> {
        Ok(BrauerMorphism::identity(n))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixKeyError {
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Shell(#[from] ShellError),
    #[error("matrix is not a power of the trace times a shell element")]
    NotInShell,
}

/// Shell elements of `Y(OP_{m,n})` as keys, with `λ̂ = d`.
///
/// Shells are computed on first use per `(m, n)` and cached.
#[derive(Debug)]
pub struct MatrixShells {
    duality: DualityStructure,
    cache: Mutex<HashMap<(usize, usize), Arc<Vec<RepMatrix>>>>,
}

impl MatrixShells {
    pub fn new(duality: DualityStructure) -> Self {
        Self { duality, cache: Mutex::new(HashMap::new()) }
    }

    pub fn duality(&self) -> &DualityStructure {
        &self.duality
    }

    pub fn shell(&self, m: usize, n: usize) -> Result<Arc<Vec<RepMatrix>>, MatrixKeyError> {
        if let Some(s) = self.cache.lock().expect("shell cache poisoned").get(&(m, n)) {
            return Ok(Arc::clone(s));
        }
        let images = enumerate_loop_free(m, n)
            .iter()
            .map(|f| rep(&self.duality, f))
            .collect::<Result<Vec<_>, _>>()?;
        let scale = int(self.duality.dim() as i64);
        let shell = Arc::new(minimal_shell(&images, &scale)?.into_iter().collect::<Vec<_>>());
        self.cache.lock().expect("shell cache poisoned").insert((m, n), Arc::clone(&shell));
        Ok(shell)
    }

    /// Writes `y = d^k · s` with `s` a shell element.
    pub fn reduce(&self, y: &RepMatrix) -> Result<(usize, RepMatrix), MatrixKeyError> {
        let shell = self.shell(y.dom(), y.cod())?;
        let scale = int(self.duality.dim() as i64);
        shell_decompose(y, shell.iter(), &scale)
            .map(|(k, s)| (k, s.clone()))
            .ok_or(MatrixKeyError::NotInShell)
    }

    /// `Y(f)` in shell coordinates.
    pub fn key_of(&self, f: &BrauerMorphism) -> Result<(usize, RepMatrix), MatrixKeyError> {
        self.reduce(&rep(&self.duality, f)?)
    }
}

impl KeyAlgebra for MatrixShells {
    type Key = RepMatrix;
    type Error = MatrixKeyError;

    fn dom(&self, key: &RepMatrix) -> usize {
        key.dom()
    }

    fn cod(&self, key: &RepMatrix) -> usize {
        key.cod()
    }

    fn compose(&self, second: &RepMatrix, first: &RepMatrix) -> Result<(usize, RepMatrix), MatrixKeyError> {
        self.reduce(&second.compose(first)?)
    }

    fn tensor(&self, left: &RepMatrix, right: &RepMatrix) -> Result<(usize, RepMatrix), MatrixKeyError> {
        self.reduce(&left.tensor(right)?)
    }

    fn identity(&self, n: usize) -> Result<RepMatrix, MatrixKeyError> {
        Ok(self.reduce(&RepMatrix::identity(n, self.duality.dim())?)?.1)
    }
}

type Slot<K> = BTreeMap<K, BoolSeries>;

/// An element of the completion with finite support: slot `(m, n)` maps
/// keys of `Hom(m, n)` to their coefficient series. Zero series and empty
/// slots are never stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QElement<K> {
    trunc: usize,
    slots: BTreeMap<(usize, usize), Slot<K>>,
}

pub type DiagramElement = QElement<BrauerMorphism>;
pub type MatrixElement = QElement<RepMatrix>;

fn never<T>(r: Result<T, Infallible>) -> T {
    match r {
        Ok(v) => v,
        Err(e) => match e {},
    }
}

impl<K: Clone + Ord> QElement<K> {
    pub fn zero(trunc: usize) -> Self {
        Self { trunc, slots: BTreeMap::new() }
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.slots.is_empty()
    }

    /// Adds `series` to the coefficient of `key` in slot `(m, n)`.
    pub fn accumulate(&mut self, m: usize, n: usize, key: K, series: &BoolSeries) {
        if series.trunc() < self.trunc {
            self.retruncate(series.trunc());
        }
        let series = series.truncate(self.trunc);
        if series.is_zero() {
            return;
        }
        let slot = self.slots.entry((m, n)).or_default();
        match slot.get_mut(&key) {
            Some(existing) => *existing = existing.add(&series),
            None => {
                slot.insert(key, series);
            }
        }
    }

    fn retruncate(&mut self, trunc: usize) {
        self.trunc = trunc;
        for slot in self.slots.values_mut() {
            for s in slot.values_mut() {
                *s = s.truncate(trunc);
            }
            slot.retain(|_, s| !s.is_zero());
        }
        self.slots.retain(|_, slot| !slot.is_empty());
    }

    pub fn get(&self, m: usize, n: usize, key: &K) -> Option<&BoolSeries> {
        self.slots.get(&(m, n)).and_then(|s| s.get(key))
    }

    pub fn slot(&self, m: usize, n: usize) -> Option<&BTreeMap<K, BoolSeries>> {
        self.slots.get(&(m, n))
    }

    /// `(m, n, key, series)` in slot then key order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &K, &BoolSeries)> + '_ {
        self.slots
            .iter()
            .flat_map(|(&(m, n), slot)| slot.iter().map(move |(k, s)| (m, n, k, s)))
    }

    pub fn len(&self) -> usize {
        self.slots.values().map(BTreeMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn add(&self, other: &QElement<K>) -> QElement<K> {
        let mut out = self.clone();
        if other.trunc < out.trunc {
            out.retruncate(other.trunc);
        }
        for (m, n, k, s) in other.entries() {
            out.accumulate(m, n, k.clone(), s);
        }
        out
    }

    /// Sum of a finite family; the empty sum is zero.
    pub fn big_sum<'a>(family: impl IntoIterator<Item = &'a QElement<K>>, trunc: usize) -> QElement<K>
    where
        K: 'a,
    {
        family.into_iter().fold(QElement::zero(trunc), |acc, x| acc.add(x))
    }

    /// `self <= other` in the idempotent order.
    pub fn le(&self, other: &QElement<K>) -> bool {
        self.add(other) == other.truncated(self.trunc.min(other.trunc))
    }

    pub fn truncated(&self, trunc: usize) -> QElement<K> {
        let mut out = self.clone();
        if trunc < out.trunc {
            out.retruncate(trunc);
        }
        out
    }

    /// Multiplies every coefficient by `q^k`.
    pub fn shift(&self, k: usize) -> QElement<K> {
        let mut out = QElement::zero(self.trunc);
        for (m, n, key, s) in self.entries() {
            out.accumulate(m, n, key.clone(), &s.shift(k));
        }
        out
    }

    /// The composition product: `self` is applied first, so a key `φ` of
    /// slot `(m, p)` meets a key `ψ` of `other`'s slot `(p, n)` in `ψ ∘ φ`.
    pub fn compose_in<A: KeyAlgebra<Key = K>>(&self, alg: &A, other: &QElement<K>) -> Result<QElement<K>, A::Error> {
        let trunc = self.trunc.min(other.trunc);
        let mut out = QElement::zero(trunc);
        for (&(m, p), left) in &self.slots {
            for (&(_, n), right) in other.slots.range((p, 0)..=(p, usize::MAX)) {
                for (phi, b) in left {
                    for (psi, c) in right {
                        let (k, key) = alg.compose(psi, phi)?;
                        out.accumulate(m, n, key, &b.mul(c).shift(k));
                    }
                }
            }
        }
        Ok(out)
    }

    /// The monoidal product: slots `(m, n)` and `(r, s)` meet in
    /// `(m + r, n + s)` with keys tensored.
    pub fn monoidal_in<A: KeyAlgebra<Key = K>>(&self, alg: &A, other: &QElement<K>) -> Result<QElement<K>, A::Error> {
        let trunc = self.trunc.min(other.trunc);
        let mut out = QElement::zero(trunc);
        for (&(m, n), left) in &self.slots {
            for (&(r, s), right) in &other.slots {
                for (phi, b) in left {
                    for (psi, c) in right {
                        let (k, key) = alg.tensor(phi, psi)?;
                        out.accumulate(m + r, n + s, key, &b.mul(c).shift(k));
                    }
                }
            }
        }
        Ok(out)
    }

    /// The composition unit restricted to the given objects: `1_{[n]} ↦ 1`
    /// in each slot `(n, n)`.
    pub fn unit_c_in<A: KeyAlgebra<Key = K>>(
        alg: &A,
        objects: impl IntoIterator<Item = usize>,
        trunc: usize,
    ) -> Result<QElement<K>, A::Error> {
        let mut out = QElement::zero(trunc);
        for n in objects {
            out.accumulate(n, n, alg.identity(n)?, &BoolSeries::one(trunc));
        }
        Ok(out)
    }

    /// The monoidal unit `1_{[0]} ↦ 1`.
    pub fn unit_m_in<A: KeyAlgebra<Key = K>>(alg: &A, trunc: usize) -> Result<QElement<K>, A::Error> {
        Self::unit_c_in(alg, [0], trunc)
    }

    /// Objects occurring as a domain or codomain of a nonzero slot.
    pub fn objects(&self) -> std::collections::BTreeSet<usize> {
        self.slots.keys().flat_map(|&(m, n)| [m, n]).collect()
    }
}

impl QElement<BrauerMorphism> {
    /// `λ^k ⊗ φ₀ ↦ q^k` at key `φ₀`.
    pub fn from_morphism(f: &BrauerMorphism, trunc: usize) -> Self {
        let (core, k) = f.strip_loops();
        let mut out = QElement::zero(trunc);
        out.accumulate(f.dom(), f.cod(), core, &BoolSeries::qpow(k, trunc));
        out
    }

    pub fn compose(&self, other: &Self) -> Self {
        never(self.compose_in(&Diagrams, other))
    }

    pub fn monoidal(&self, other: &Self) -> Self {
        never(self.monoidal_in(&Diagrams, other))
    }

    pub fn unit_c(objects: impl IntoIterator<Item = usize>, trunc: usize) -> Self {
        never(Self::unit_c_in(&Diagrams, objects, trunc))
    }

    pub fn unit_m(trunc: usize) -> Self {
        never(Self::unit_m_in(&Diagrams, trunc))
    }

    /// Replaces each key by its image in shell coordinates; colliding
    /// keys merge by addition.
    pub fn to_matrix_keys(&self, shells: &MatrixShells) -> Result<MatrixElement, MatrixKeyError> {
        let mut out = QElement::zero(self.trunc);
        for (m, n, f, s) in self.entries() {
            let (k, key) = shells.key_of(f)?;
            out.accumulate(m, n, key, &s.shift(k));
        }
        Ok(out)
    }
}

impl<K: Clone + Ord + KeyLabel> fmt::Display for QElement<K> {
    /// One line per entry: `m n key series`; `0` for the zero element.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 (N={})", self.trunc);
        }
        for (i, (m, n, k, s)) in self.entries().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{m} {n} {} {s}", k.label())?;
        }
        Ok(())
    }
}

struct SlotsView<'a, K>(&'a BTreeMap<(usize, usize), Slot<K>>);

impl<K: KeyLabel> Serialize for SlotsView<'_, K> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for ((m, n), slot) in self.0 {
            let inner: BTreeMap<String, Vec<usize>> =
                slot.iter().map(|(k, s)| (k.label(), s.exponents().collect())).collect();
            map.serialize_entry(&format!("{m},{n}"), &inner)?;
        }
        map.end()
    }
}

impl<K: Clone + Ord + KeyLabel> Serialize for QElement<K> {
    /// `{"trunc": N, "slots": {"m,n": {"key": [exponents]}}}`.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("trunc", &self.trunc)?;
        map.serialize_entry("slots", &SlotsView(&self.slots))?;
        map.end()
    }
}

#[derive(Deserialize)]
struct ElementRecord {
    trunc: usize,
    slots: BTreeMap<String, BTreeMap<String, Vec<usize>>>,
}

impl<'de> Deserialize<'de> for QElement<BrauerMorphism> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let rec = ElementRecord::deserialize(deserializer)?;
        let mut out = QElement::zero(rec.trunc);
        for (slot, entries) in rec.slots {
            let (m, n) = slot
                .split_once(',')
                .and_then(|(m, n)| Some((m.trim().parse().ok()?, n.trim().parse().ok()?)))
                .ok_or_else(|| D::Error::custom(format!("bad slot {slot:?}")))?;
            for (key, exps) in entries {
                let f: BrauerMorphism = key.parse().map_err(D::Error::custom)?;
                if (f.dom(), f.cod()) != (m, n) || f.loops() != 0 {
                    return Err(D::Error::custom(format!("key {key} does not belong to slot {m},{n}")));
                }
                if let Some(e) = exps.iter().find(|&&e| e >= rec.trunc) {
                    return Err(D::Error::custom(format!("exponent {e} not below {}", rec.trunc)));
                }
                out.accumulate(m, n, f, &BoolSeries::from_exponents(exps, rec.trunc));
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const N: usize = 16;

    fn q(f: &BrauerMorphism) -> DiagramElement {
        QElement::from_morphism(f, N)
    }

    #[test]
    fn from_morphism_strips_loops() {
        let x = q(&BrauerMorphism::identity(2));
        assert_eq!(x.get(2, 2, &BrauerMorphism::identity(2)), Some(&BoolSeries::one(N)));
        let y = q(&tensor(&BrauerMorphism::loop_(), &BrauerMorphism::b11()));
        assert_eq!(y.get(2, 2, &BrauerMorphism::b11()), Some(&BoolSeries::qpow(1, N)));
        assert_eq!(y.len(), 1);
        let z = q(&BrauerMorphism::loops_only(3));
        assert_eq!(z.get(0, 0, &BrauerMorphism::identity(0)), Some(&BoolSeries::qpow(3, N)));
    }

    #[test]
    fn addition_merges_keys() {
        let a = BrauerMorphism::b11();
        let x = q(&a.with_loops(1));
        let y = q(&a);
        let s = x.add(&y);
        assert_eq!(s.get(2, 2, &a), Some(&BoolSeries::from_exponents([0, 1], N)));
        assert_eq!(x.add(&x), x);
    }

    #[test]
    fn cup_then_cap_is_a_loop() {
        // i₁ first, then e₁: the product is e₁ ∘ i₁ = λ
        let x = q(&BrauerMorphism::i1()).compose(&q(&BrauerMorphism::e1()));
        assert_eq!(x, q(&BrauerMorphism::loop_()));
        assert_eq!(x.get(0, 0, &BrauerMorphism::identity(0)), Some(&BoolSeries::qpow(1, N)));
        // e₁ first, then i₁: the endomorphism i ∘ e of [2]
        let y = q(&BrauerMorphism::e1()).compose(&q(&BrauerMorphism::i1()));
        let ie = compose(&BrauerMorphism::i1(), &BrauerMorphism::e1()).unwrap();
        assert_eq!(y, q(&ie));
    }

    #[test]
    fn composition_unit() {
        let x = q(&BrauerMorphism::i1()).add(&q(&BrauerMorphism::b11().with_loops(2)));
        let unit = DiagramElement::unit_c(x.objects(), N);
        assert_eq!(unit.compose(&x), x);
        assert_eq!(x.compose(&unit), x);
    }

    #[test]
    fn monoidal_unit_and_order() {
        let (i, e) = (q(&BrauerMorphism::i1()), q(&BrauerMorphism::e1()));
        let unit = DiagramElement::unit_m(N);
        assert_eq!(unit.monoidal(&i), i);
        assert_eq!(i.monoidal(&unit), i);
        // cap and cup slide past each other, so these two agree
        assert_eq!(i.monoidal(&e), e.monoidal(&i));
        let one = q(&BrauerMorphism::identity(1));
        assert_ne!(i.monoidal(&one), one.monoidal(&i));
    }

    #[test]
    fn zero_absorbs() {
        let x = q(&BrauerMorphism::b11());
        let zero = DiagramElement::zero(N);
        assert!(x.compose(&zero).is_zero());
        assert!(zero.monoidal(&x).is_zero());
    }

    #[test]
    fn mixed_truncation_takes_the_smaller() {
        let x = QElement::from_morphism(&BrauerMorphism::loops_only(10), 16);
        let y = QElement::from_morphism(&BrauerMorphism::identity(0), 8);
        let s = x.add(&y);
        assert_eq!(s.trunc(), 8);
        assert_eq!(s, y);
    }

    #[test]
    fn matrix_keys_on_op22_are_bijective() {
        let shells = MatrixShells::new(DualityStructure::example());
        let all: Vec<_> = enumerate_loop_free(2, 2);
        let x = DiagramElement::big_sum(all.iter().map(q).collect::<Vec<_>>().iter(), N);
        let y = x.to_matrix_keys(&shells).unwrap();
        assert_eq!(y.len(), 3);
        assert_eq!(shells.shell(2, 2).unwrap().len(), 3);
        let single = q(&BrauerMorphism::b11().with_loops(1)).to_matrix_keys(&shells).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(single.entries().next().unwrap().3, &BoolSeries::qpow(1, N));
    }

    #[test]
    fn text_and_json() {
        let x = q(&BrauerMorphism::i1()).add(&q(&BrauerMorphism::loop_()));
        assert_eq!(x.to_string(), "0 0 0;0;0; 16:1\n0 2 0;2;0;(O1-O2) 16:0");
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"{"trunc":16,"slots":{"0,0":{"0;0;0;":[1]},"0,2":{"0;2;0;(O1-O2)":[0]}}}"#);
        assert_eq!(serde_json::from_str::<DiagramElement>(&json).unwrap(), x);
        assert!(serde_json::from_str::<DiagramElement>(r#"{"trunc":16,"slots":{"0,2":{"0;0;0;":[1]}}}"#).is_err());
    }
}
