//! Discrete cobordisms: boundary-condition keys on each side and a
//! multiset of fields, each carrying a Brauer morphism. State sums,
//! gluing, disjoint unions, loop saturation and the aggregate invariant.

mod exotic;
pub mod random;
mod rationality;
mod scenario;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::brauer::{compose, tensor, BrauerMorphism};
use crate::funmod::{Composition, FunError, FunMap, Monoidal};
use crate::qsemiring::DiagramElement;

pub use exotic::{aggregate, equation_has_solution, exotic_demo, ExoticReport, ShellCoordinate};
pub use rationality::{saturate_double_loops, verify_rationality, RationalityEntry, RationalityReport};
pub use scenario::ParseScenarioError;

/// `Z_W`: a function on `in_keys × out_keys` with values in `Q`.
pub type State = FunMap<DiagramElement>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TftError {
    #[error("invalid key {0:?}: keys must be nonempty without whitespace or '#'")]
    BadKey(String),
    #[error("key {0:?} is declared twice on the same side")]
    DuplicateKey(String),
    #[error("field uses undeclared key {0:?}")]
    UnknownKey(String),
    #[error("field {key_in} -> {key_out} carries {morphism}, expected [{m}] -> [{n}]")]
    FieldShape { key_in: String, key_out: String, morphism: String, m: usize, n: usize },
    #[error("cannot glue: outgoing keys {left:?} differ from incoming keys {right:?}")]
    InterfaceMismatch { left: BTreeMap<String, usize>, right: BTreeMap<String, usize> },
    #[error("cannot form disjoint union: key {0:?} occurs on both sides")]
    OverlappingKeys(String),
    #[error("cannot form disjoint union: key {0:?} contains the pair separator '|'")]
    CompoundKey(String),
    #[error(transparent)]
    Fun(#[from] FunError),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Field {
    pub key_in: String,
    pub key_out: String,
    pub morphism: BrauerMorphism,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiscreteCobordism {
    in_keys: BTreeMap<String, usize>,
    out_keys: BTreeMap<String, usize>,
    fields: Vec<Field>,
}

fn check_key(key: &str) -> Result<(), TftError> {
    if key.is_empty() || key.contains(|c: char| c.is_whitespace() || c == '#') {
        return Err(TftError::BadKey(key.to_string()));
    }
    Ok(())
}

fn key_map(keys: impl IntoIterator<Item = (String, usize)>) -> Result<BTreeMap<String, usize>, TftError> {
    let mut out = BTreeMap::new();
    for (k, obj) in keys {
        check_key(&k)?;
        if out.insert(k.clone(), obj).is_some() {
            return Err(TftError::DuplicateKey(k));
        }
    }
    Ok(out)
}

impl DiscreteCobordism {
    pub fn new(
        in_keys: impl IntoIterator<Item = (String, usize)>,
        out_keys: impl IntoIterator<Item = (String, usize)>,
        fields: Vec<Field>,
    ) -> Result<Self, TftError> {
        let w = Self { in_keys: key_map(in_keys)?, out_keys: key_map(out_keys)?, fields: Vec::new() };
        w.with_fields(fields)
    }

    /// Replaces the fields, validating each against its keys.
    pub fn with_fields(mut self, fields: Vec<Field>) -> Result<Self, TftError> {
        for f in &fields {
            let m = *self.in_keys.get(&f.key_in).ok_or_else(|| TftError::UnknownKey(f.key_in.clone()))?;
            let n = *self.out_keys.get(&f.key_out).ok_or_else(|| TftError::UnknownKey(f.key_out.clone()))?;
            if (f.morphism.dom(), f.morphism.cod()) != (m, n) {
                return Err(TftError::FieldShape {
                    key_in: f.key_in.clone(),
                    key_out: f.key_out.clone(),
                    morphism: f.morphism.to_string(),
                    m,
                    n,
                });
            }
        }
        self.fields = fields;
        Ok(self)
    }

    /// One key `nil` with object `[0]` on each side and the single field
    /// `1_[0]`; its state sum is the monoidal unit.
    pub fn empty() -> Self {
        let nil = || [("nil".to_string(), 0)];
        let field = Field { key_in: "nil".into(), key_out: "nil".into(), morphism: BrauerMorphism::identity(0) };
        Self::new(nil(), nil(), vec![field]).expect("valid by construction")
    }

    pub fn in_keys(&self) -> &BTreeMap<String, usize> {
        &self.in_keys
    }

    pub fn out_keys(&self) -> &BTreeMap<String, usize> {
        &self.out_keys
    }

    pub fn fields(&self) -> &[Field] {
        &self.fields
    }

    pub fn max_loops(&self) -> usize {
        self.fields.iter().map(|f| f.morphism.loops()).max().unwrap_or(0)
    }

    fn factors(&self) -> Vec<Vec<String>> {
        vec![self.in_keys.keys().cloned().collect(), self.out_keys.keys().cloned().collect()]
    }

    /// Renames keys through the given bijections; unnamed keys are kept.
    pub fn relabel(&self, in_map: &BTreeMap<String, String>, out_map: &BTreeMap<String, String>) -> Result<Self, TftError> {
        let rename = |m: &BTreeMap<String, String>, k: &String| m.get(k).cloned().unwrap_or_else(|| k.clone());
        let fields = self
            .fields
            .iter()
            .map(|f| Field {
                key_in: rename(in_map, &f.key_in),
                key_out: rename(out_map, &f.key_out),
                morphism: f.morphism.clone(),
            })
            .collect();
        Self::new(
            self.in_keys.iter().map(|(k, &o)| (rename(in_map, k), o)),
            self.out_keys.iter().map(|(k, &o)| (rename(out_map, k), o)),
            fields,
        )
    }
}

/// `Z_W(f, g)`: the sum over fields on `(f, g)` of `λ^k ⊗ φ₀ ↦ q^k` at `φ₀`.
pub fn state_sum(w: &DiscreteCobordism, trunc: usize) -> State {
    let sr = Monoidal { trunc };
    let mut acc: BTreeMap<(String, String), DiagramElement> = BTreeMap::new();
    for f in &w.fields {
        let term = DiagramElement::from_morphism(&f.morphism, trunc);
        let slot = acc.entry((f.key_in.clone(), f.key_out.clone())).or_insert_with(|| DiagramElement::zero(trunc));
        *slot = slot.add(&term);
    }
    let mut z = FunMap::new(w.factors()).expect("keys are unique");
    for ((a, b), v) in acc {
        z.set(&sr, vec![a, b], v).expect("fields are validated against the keys");
    }
    z
}

/// Fields `(f, h, ψ ∘ φ)` for `(f, u, φ)` in `w1` and `(u, h, ψ)` in `w2`.
pub fn glue(w1: &DiscreteCobordism, w2: &DiscreteCobordism) -> Result<DiscreteCobordism, TftError> {
    if w1.out_keys != w2.in_keys {
        return Err(TftError::InterfaceMismatch { left: w1.out_keys.clone(), right: w2.in_keys.clone() });
    }
    let mut by_key: BTreeMap<&str, Vec<&Field>> = BTreeMap::new();
    for g in &w2.fields {
        by_key.entry(&g.key_in).or_default().push(g);
    }
    let mut fields = Vec::new();
    for f in &w1.fields {
        for g in by_key.get(f.key_out.as_str()).into_iter().flatten() {
            let morphism = compose(&g.morphism, &f.morphism).expect("interface objects agree");
            fields.push(Field { key_in: f.key_in.clone(), key_out: g.key_out.clone(), morphism });
        }
    }
    DiscreteCobordism::new(w1.in_keys.clone(), w2.out_keys.clone(), fields)
}

/// `⟨Z_{W1}, Z_{W2}⟩`, contracting over the shared interface keys.
pub fn contract_states(z1: &State, z2: &State, trunc: usize) -> Result<State, TftError> {
    Ok(FunMap::contract(&Composition { trunc, max_object: 0 }, z1, z2)?)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LawCheck {
    pub law: &'static str,
    pub holds: bool,
    pub entries_compared: usize,
    pub fields: usize,
    pub mismatch: Option<String>,
}

fn compare(law: &'static str, lhs: &State, rhs: &State, fields: usize, trunc: usize) -> LawCheck {
    let sr = Monoidal { trunc };
    let indices = lhs.indices();
    let mismatch = if lhs.factors() != rhs.factors() {
        Some(format!("index sets differ: {:?} vs {:?}", lhs.factors(), rhs.factors()))
    } else {
        indices.iter().find(|i| lhs.get(&sr, i) != rhs.get(&sr, i)).map(|i| {
            format!("at ({}): {} vs {}", i.join(","), lhs.get(&sr, i), rhs.get(&sr, i))
        })
    };
    LawCheck { law, holds: mismatch.is_none(), entries_compared: indices.len(), fields, mismatch }
}

/// Compares `Z` of the glued cobordism with the contraction of the parts.
pub fn verify_gluing(w1: &DiscreteCobordism, w2: &DiscreteCobordism, trunc: usize) -> Result<LawCheck, TftError> {
    let glued = glue(w1, w2)?;
    let lhs = state_sum(&glued, trunc);
    let rhs = contract_states(&state_sum(w1, trunc), &state_sum(w2, trunc), trunc)?;
    Ok(compare("gluing", &lhs, &rhs, glued.fields.len(), trunc))
}

fn pair_key(a: &str, b: &str) -> String {
    format!("{a}|{b}")
}

/// Keys `a|b` with objects added, fields all pairs with tensored morphisms.
pub fn disjoint_union(w: &DiscreteCobordism, v: &DiscreteCobordism) -> Result<DiscreteCobordism, TftError> {
    let left: BTreeSet<&String> = w.in_keys.keys().chain(w.out_keys.keys()).collect();
    let all = || left.iter().copied().chain(v.in_keys.keys()).chain(v.out_keys.keys());
    if let Some(k) = all().find(|k| k.contains('|')) {
        return Err(TftError::CompoundKey(k.clone()));
    }
    if let Some(k) = v.in_keys.keys().chain(v.out_keys.keys()).find(|k| left.contains(k)) {
        return Err(TftError::OverlappingKeys(k.clone()));
    }
    let pairs = |a: &BTreeMap<String, usize>, b: &BTreeMap<String, usize>| -> Vec<(String, usize)> {
        a.iter().flat_map(|(ka, oa)| b.iter().map(move |(kb, ob)| (pair_key(ka, kb), oa + ob))).collect()
    };
    let fields = w
        .fields
        .iter()
        .flat_map(|f| {
            v.fields.iter().map(move |g| Field {
                key_in: pair_key(&f.key_in, &g.key_in),
                key_out: pair_key(&f.key_out, &g.key_out),
                morphism: tensor(&f.morphism, &g.morphism),
            })
        })
        .collect();
    DiscreteCobordism::new(pairs(&w.in_keys, &v.in_keys), pairs(&w.out_keys, &v.out_keys), fields)
}

/// `ρ`: regroups a state on `(f|f', g|g')` as a state on `(f, g, f', g')`.
pub fn regroup(z: &State, w: &DiscreteCobordism, v: &DiscreteCobordism, trunc: usize) -> Result<State, TftError> {
    let sr = Monoidal { trunc };
    let mut factors = w.factors();
    factors.extend(v.factors());
    let mut out = FunMap::new(factors)?;
    for (index, value) in z.support() {
        let split = |k: &String| -> Result<(String, String), TftError> {
            k.split_once('|')
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .ok_or_else(|| TftError::UnknownKey(k.clone()))
        };
        let ((f, f2), (g, g2)) = (split(&index[0])?, split(&index[1])?);
        out.set(&sr, vec![f, g, f2, g2], value.clone())?;
    }
    Ok(out)
}

/// Compares `ρ(Z_{W ⊔ V})` with `Z_W ⊗_m Z_V`.
pub fn verify_disjoint(w: &DiscreteCobordism, v: &DiscreteCobordism, trunc: usize) -> Result<LawCheck, TftError> {
    let union = disjoint_union(w, v)?;
    let lhs = regroup(&state_sum(&union, trunc), w, v, trunc)?;
    let rhs = FunMap::tensor_alpha(&Monoidal { trunc }, &state_sum(w, trunc), &state_sum(v, trunc));
    Ok(compare("disjoint union", &lhs, &rhs, union.fields.len(), trunc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsemiring::BoolSeries;

    const N: usize = 16;

    fn field(a: &str, b: &str, m: BrauerMorphism) -> Field {
        Field { key_in: a.into(), key_out: b.into(), morphism: m }
    }

    fn keys(ks: &[(&str, usize)]) -> Vec<(String, usize)> {
        ks.iter().map(|(k, o)| (k.to_string(), *o)).collect()
    }

    fn cylinder(a: &str, b: &str, fields: Vec<BrauerMorphism>) -> DiscreteCobordism {
        let fs = fields.into_iter().map(|m| field(a, b, m)).collect();
        DiscreteCobordism::new(keys(&[(a, 2)]), keys(&[(b, 2)]), fs).unwrap()
    }

    fn at(z: &State, a: &str, b: &str) -> DiagramElement {
        z.get(&Monoidal { trunc: N }, &[a.to_string(), b.to_string()])
    }

    #[test]
    fn cylinder_state() {
        let w = cylinder("f", "g", vec![BrauerMorphism::identity(2)]);
        let z = state_sum(&w, N);
        assert_eq!(at(&z, "f", "g"), DiagramElement::from_morphism(&BrauerMorphism::identity(2), N));
    }

    #[test]
    fn empty_ensemble_and_loop_field() {
        let w = cylinder("f", "g", vec![]);
        assert_eq!(state_sum(&w, N).support().count(), 0);
        let looped = tensor(&BrauerMorphism::loop_(), &BrauerMorphism::identity(2));
        let z = state_sum(&cylinder("f", "g", vec![looped]), N);
        assert_eq!(at(&z, "f", "g").get(2, 2, &BrauerMorphism::identity(2)), Some(&BoolSeries::qpow(1, N)));
    }

    #[test]
    fn duplicates_contribute_once() {
        let b = BrauerMorphism::b11();
        let once = state_sum(&cylinder("f", "g", vec![b.clone()]), N);
        let thrice = state_sum(&cylinder("f", "g", vec![b.clone(), b.clone(), b]), N);
        assert_eq!(once, thrice);
    }

    #[test]
    fn field_validation() {
        let bad = DiscreteCobordism::new(keys(&[("f", 2)]), keys(&[("g", 0)]), vec![field("f", "g", BrauerMorphism::b11())]);
        assert!(matches!(bad, Err(TftError::FieldShape { .. })));
        let unknown = DiscreteCobordism::new(keys(&[("f", 2)]), keys(&[("g", 2)]), vec![field("x", "g", BrauerMorphism::b11())]);
        assert_eq!(unknown, Err(TftError::UnknownKey("x".into())));
        assert_eq!(DiscreteCobordism::new(keys(&[("a b", 0)]), vec![], vec![]), Err(TftError::BadKey("a b".into())));
        assert_eq!(
            DiscreteCobordism::new(keys(&[("a", 0), ("a", 2)]), vec![], vec![]),
            Err(TftError::DuplicateKey("a".into()))
        );
    }

    #[test]
    fn glue_cylinders() {
        let w1 = cylinder("f", "u", vec![BrauerMorphism::identity(2)]);
        let w2 = cylinder("u", "h", vec![BrauerMorphism::identity(2)]);
        let g = glue(&w1, &w2).unwrap();
        assert_eq!(g.fields(), &[field("f", "h", BrauerMorphism::identity(2))]);
        assert!(verify_gluing(&w1, &w2, N).unwrap().holds);
        let w3 = cylinder("v", "h", vec![]);
        assert!(matches!(glue(&w1, &w3), Err(TftError::InterfaceMismatch { .. })));
    }

    #[test]
    fn glue_cap_and_cup_makes_loops() {
        let w1 = DiscreteCobordism::new(keys(&[("f", 0)]), keys(&[("u", 2)]), vec![field("f", "u", BrauerMorphism::i1())])
            .unwrap();
        let w2 = DiscreteCobordism::new(keys(&[("u", 2)]), keys(&[("h", 0)]), vec![field("u", "h", BrauerMorphism::e1())])
            .unwrap();
        let g = glue(&w1, &w2).unwrap();
        assert_eq!(g.fields()[0].morphism, BrauerMorphism::loop_());
        let check = verify_gluing(&w1, &w2, N).unwrap();
        assert!(check.holds, "{check:?}");
    }

    #[test]
    fn glue_is_associative() {
        let ie = compose(&BrauerMorphism::i1(), &BrauerMorphism::e1()).unwrap();
        let w1 = cylinder("a", "b", vec![BrauerMorphism::identity(2), ie.clone()]);
        let w2 = cylinder("b", "c", vec![BrauerMorphism::b11(), ie.clone()]);
        let w3 = cylinder("c", "d", vec![ie, BrauerMorphism::b11().with_loops(1)]);
        let left = glue(&glue(&w1, &w2).unwrap(), &w3).unwrap();
        let right = glue(&w1, &glue(&w2, &w3).unwrap()).unwrap();
        let set = |w: &DiscreteCobordism| w.fields().iter().cloned().collect::<BTreeSet<_>>();
        assert_eq!(set(&left), set(&right));
    }

    #[test]
    fn union_with_empty() {
        let w = cylinder("f", "g", vec![BrauerMorphism::identity(2), BrauerMorphism::b11().with_loops(2)]);
        let check = verify_disjoint(&w, &DiscreteCobordism::empty(), N).unwrap();
        assert!(check.holds, "{check:?}");
        let u = disjoint_union(&w, &DiscreteCobordism::empty()).unwrap();
        let z = state_sum(&u, N);
        assert_eq!(at(&z, "f|nil", "g|nil"), at(&state_sum(&w, N), "f", "g"));
    }

    #[test]
    fn union_of_cylinders() {
        let w = cylinder("f", "g", vec![BrauerMorphism::identity(2)]);
        let v = cylinder("f2", "g2", vec![BrauerMorphism::b11()]);
        let u = disjoint_union(&w, &v).unwrap();
        let z = state_sum(&u, N);
        let expected = tensor(&BrauerMorphism::identity(2), &BrauerMorphism::b11());
        assert_eq!(at(&z, "f|f2", "g|g2"), DiagramElement::from_morphism(&expected, N));
        assert!(verify_disjoint(&w, &v, N).unwrap().holds);
        assert_eq!(disjoint_union(&w, &w), Err(TftError::OverlappingKeys("f".into())));
        assert_eq!(disjoint_union(&u, &cylinder("x", "y", vec![])), Err(TftError::CompoundKey("f|f2".into())));
    }

    #[test]
    fn relabeling_conjugates_state() {
        let w = cylinder("f", "g", vec![BrauerMorphism::b11()]);
        let rename = |a: &str, b: &str| [(a.to_string(), b.to_string())].into_iter().collect::<BTreeMap<_, _>>();
        let r = w.relabel(&rename("f", "x"), &rename("g", "y")).unwrap();
        assert_eq!(at(&state_sum(&r, N), "x", "y"), at(&state_sum(&w, N), "f", "g"));
    }
}
