use std::collections::BTreeSet;

use serde::Serialize;

use super::{state_sum, DiscreteCobordism, Field};
use crate::brauer::{tensor, BrauerMorphism};
use crate::qsemiring::{rationalize, BoolSeries, RationalForm};

/// Closes the field set under `F ↦ F ⊗ λ²`, `depth` times. Repeated fields
/// are dropped, which leaves the state sum unchanged.
pub fn saturate_double_loops(w: &DiscreteCobordism, depth: usize) -> DiscreteCobordism {
    let lambda2 = BrauerMorphism::loops_only(2);
    let mut seen: BTreeSet<Field> = BTreeSet::new();
    let mut fields = Vec::new();
    for f in w.fields() {
        let mut m = f.morphism.clone();
        for _ in 0..=depth {
            let g = Field { key_in: f.key_in.clone(), key_out: f.key_out.clone(), morphism: m.clone() };
            if seen.insert(g.clone()) {
                fields.push(g);
            }
            m = tensor(&m, &lambda2);
        }
    }
    w.clone().with_fields(fields).expect("loops do not change shapes")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RationalityEntry {
    pub key_in: String,
    pub key_out: String,
    pub key: String,
    pub series: String,
    pub form: Option<RationalForm>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RationalityReport {
    pub depth: usize,
    pub trunc: usize,
    /// Exponents below this bound are exact after saturation.
    pub window: usize,
    pub entries: Vec<RationalityEntry>,
    pub holds: bool,
    pub note: Option<String>,
}

/// Saturates `w` to `depth`, then matches every coefficient of the state
/// sum against `q^r (1 + β q^(2s+1)) / (1 - q²)`.
///
/// A field with `k` loops contributes `q^k, q^(k+2), ..., q^(k+2·depth)`, so
/// the saturated series agrees with its rational limit on exponents below
/// `2·depth + 2`; the comparison is made in that window (capped by `N`).
/// Odd loop counts are closed by the same insertion, which fills the odd
/// progression of the numerator.
pub fn verify_rationality(w: &DiscreteCobordism, depth: usize, trunc: usize) -> RationalityReport {
    let window = trunc.min(2 * depth + 2);
    let needed = 2 * depth + w.max_loops() + 2;
    let mut note = (needed > trunc).then(|| {
        format!("precondition fails: 2·depth + max loops + 2 = {needed} exceeds the truncation degree {trunc}")
    });
    let z = state_sum(&saturate_double_loops(w, depth), trunc);
    let mut entries = Vec::new();
    for (index, value) in z.support() {
        for (_, _, key, series) in value.entries() {
            let windowed: BoolSeries = series.truncate(window);
            entries.push(RationalityEntry {
                key_in: index[0].clone(),
                key_out: index[1].clone(),
                key: key.to_string(),
                series: windowed.to_string(),
                form: rationalize(&windowed),
            });
        }
    }
    let holds = note.is_none() && entries.iter().all(|e| e.form.is_some());
    if note.is_none() && !holds {
        note = Some(format!(
            "some series is not rational in the window of {window} exponents; saturation depth {depth} may be too small"
        ));
    }
    RationalityReport { depth, trunc, window, entries, holds, note }
}
