use serde::Serialize;

use super::{state_sum, DiscreteCobordism, Field, TftError};
use crate::brauer::{compose, BrauerMorphism};
use crate::funmod::Monoidal;
use crate::qsemiring::{BoolSeries, DiagramElement, MatrixKeyError, MatrixShells};
use crate::rep::DualityStructure;

/// `Σ_W Z_W(in_key, out_key)` over scenarios `(out_key, W)`.
pub fn aggregate(in_key: &str, scenarios: &[(String, DiscreteCobordism)], trunc: usize) -> Result<DiagramElement, TftError> {
    let sr = Monoidal { trunc };
    let mut acc = DiagramElement::zero(trunc);
    for (out_key, w) in scenarios {
        if !w.in_keys().contains_key(in_key) {
            return Err(TftError::UnknownKey(in_key.to_string()));
        }
        if !w.out_keys().contains_key(out_key) {
            return Err(TftError::UnknownKey(out_key.clone()));
        }
        acc = acc.add(&state_sum(w, trunc).get(&sr, &[in_key.to_string(), out_key.clone()]));
    }
    Ok(acc)
}

/// Whether `1 + a = q · a'` has a solution with `a, a'` ranging over all of
/// `B[[q]] / (q^trunc)`, by exhaustive search.
pub fn equation_has_solution(trunc: usize) -> bool {
    assert!(trunc <= 12, "exhaustive search is limited to trunc <= 12");
    let all = |bits: u32| BoolSeries::from_exponents((0..trunc).filter(|e| bits >> e & 1 == 1), trunc);
    let q = BoolSeries::qpow(1, trunc);
    let one = BoolSeries::one(trunc);
    let lhs: Vec<BoolSeries> = (0..1u32 << trunc).map(|a| one.add(&all(a))).collect();
    let rhs: std::collections::HashSet<BoolSeries> = (0..1u32 << trunc).map(|a| q.mul(&all(a))).collect();
    lhs.iter().any(|l| rhs.contains(l))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShellCoordinate {
    pub name: &'static str,
    pub series: BoolSeries,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExoticReport {
    pub trunc: usize,
    pub standard: Vec<ShellCoordinate>,
    pub exotic: Vec<ShellCoordinate>,
    pub standard_has_constant: bool,
    pub exotic_multiple_of_q: bool,
    /// Exhaustive check of `1 + a = q · a'` at truncation 8.
    pub equation_unsolvable: bool,
    pub distinct: bool,
}

impl ExoticReport {
    pub fn verdict(&self) -> &'static str {
        if self.distinct {
            "distinct"
        } else {
            "not separated"
        }
    }

    pub fn holds(&self) -> bool {
        self.standard_has_constant && self.exotic_multiple_of_q && self.equation_unsolvable && self.distinct
    }
}

fn scenario(out_key: &str, fields: Vec<BrauerMorphism>) -> (String, DiscreteCobordism) {
    let fs = fields
        .into_iter()
        .map(|m| Field { key_in: "fS".into(), key_out: out_key.into(), morphism: m })
        .collect();
    let w = DiscreteCobordism::new([("fS".to_string(), 2)], [(out_key.to_string(), 2)], fs).expect("endomorphisms of [2]");
    (out_key.to_string(), w)
}

/// Aggregates of a standard ensemble (containing the cylinder field `1_[2]`)
/// and an exotic one (every field carries a loop), in the shell coordinates
/// `{1_{V⊗V}, swap, i∘e}` of the example structure.
pub fn exotic_demo(trunc: usize) -> Result<ExoticReport, MatrixKeyError> {
    let id = BrauerMorphism::identity(2);
    let b = BrauerMorphism::b11();
    let ie = compose(&BrauerMorphism::i1(), &BrauerMorphism::e1()).expect("[2] -> [0] -> [2]");
    let standard = [
        scenario("g1", vec![id.clone(), b.with_loops(2), ie.with_loops(1)]),
        scenario("g2", vec![b.with_loops(1), id.with_loops(3)]),
    ];
    let exotic = [
        scenario("g1", vec![id.with_loops(1), b.with_loops(1), ie.with_loops(2)]),
        scenario("g2", vec![b.with_loops(3), id.with_loops(2)]),
    ];
    let shells = MatrixShells::new(DualityStructure::example());
    let coords = |scenarios: &[(String, DiscreteCobordism)]| -> Result<Vec<ShellCoordinate>, MatrixKeyError> {
        let agg = aggregate("fS", scenarios, trunc).expect("scenarios declare their keys");
        let projected = agg.to_matrix_keys(&shells)?;
        [("1_{V⊗V}", &id), ("swap", &b), ("i∘e", &ie)]
            .into_iter()
            .map(|(name, f)| {
                let (k, key) = shells.key_of(f)?;
                debug_assert_eq!(k, 0);
                let series = projected.get(2, 2, &key).cloned().unwrap_or_else(|| BoolSeries::zero(trunc));
                Ok(ShellCoordinate { name, series })
            })
            .collect()
    };
    let (std_coords, exo_coords) = (coords(&standard)?, coords(&exotic)?);
    let standard_has_constant = std_coords[0].series.contains(0);
    let exotic_multiple_of_q = exo_coords.iter().all(|c| !c.series.contains(0));
    Ok(ExoticReport {
        trunc,
        distinct: std_coords != exo_coords,
        standard: std_coords,
        exotic: exo_coords,
        standard_has_constant,
        exotic_multiple_of_q,
        equation_unsolvable: !equation_has_solution(8),
    })
}
