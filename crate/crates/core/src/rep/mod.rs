//! Representations of the Brauer category by exact rational matrices.
//!
//! A morphism `[m] -> [n]` maps to a `d^n x d^m` matrix. Basis vectors of
//! `V^{⊗k}` are ordered lexicographically with the leftmost factor most
//! significant, so the tensor product of maps is the Kronecker product.

mod duality;
pub mod matrix;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::brauer::{decompose_to_word, enumerate_loop_free, relations, BrauerMorphism, Generator, GeneratorWord};

pub use duality::{random_duality, DualityError, DualityStructure};
pub use matrix::{int, rat, Matrix, Rational};

/// Largest allowed side length `d^m` or `d^n`.
pub const MAX_SIDE: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("matrix side {d}^{k} exceeds the limit of {MAX_SIDE}")]
    SizeLimit { d: usize, k: usize },
    #[error("cannot combine matrices: {0}")]
    Shape(String),
}

/// `Y(φ)` together with its source, target and dimension.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RepMatrix {
    m: usize,
    n: usize,
    d: usize,
    matrix: Matrix,
}

fn side(d: usize, k: usize) -> Result<usize, RepError> {
    u32::try_from(k)
        .ok()
        .and_then(|k32| d.checked_pow(k32))
        .filter(|&s| s <= MAX_SIDE)
        .ok_or(RepError::SizeLimit { d, k })
}

impl RepMatrix {
    pub fn new(m: usize, n: usize, d: usize, matrix: Matrix) -> Result<Self, RepError> {
        let (rows, cols) = (side(d, n)?, side(d, m)?);
        if matrix.rows() != rows || matrix.cols() != cols {
            return Err(RepError::Shape(format!(
                "{}x{} matrix for [{m}] -> [{n}] at d = {d}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(Self { m, n, d, matrix })
    }

    pub fn identity(k: usize, d: usize) -> Result<Self, RepError> {
        Ok(Self { m: k, n: k, d, matrix: Matrix::identity(side(d, k)?) })
    }

    pub fn dom(&self) -> usize {
        self.m
    }

    pub fn cod(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    /// `self ∘ first`, i.e. the product `self · first`.
    pub fn compose(&self, first: &RepMatrix) -> Result<RepMatrix, RepError> {
        if self.d != first.d || self.m != first.n {
            return Err(RepError::Shape(format!(
                "cannot compose [{}] -> [{}] after [{}] -> [{}]",
                self.m, self.n, first.m, first.n
            )));
        }
        Ok(RepMatrix { m: first.m, n: self.n, d: self.d, matrix: self.matrix.mul(&first.matrix) })
    }

    pub fn tensor(&self, other: &RepMatrix) -> Result<RepMatrix, RepError> {
        if self.d != other.d {
            return Err(RepError::Shape(format!("dimensions {} and {} differ", self.d, other.d)));
        }
        let (m, n) = (self.m + other.m, self.n + other.n);
        side(self.d, m)?;
        side(self.d, n)?;
        Ok(RepMatrix { m, n, d: self.d, matrix: self.matrix.kron(&other.matrix) })
    }

    pub fn scale(&self, s: &Rational) -> RepMatrix {
        RepMatrix { matrix: self.matrix.scale(s), ..self.clone() }
    }

    fn header(&self) -> String {
        format!(
            "matrix m={} n={} d={} rows={} cols={}",
            self.m,
            self.n,
            self.d,
            self.matrix.rows(),
            self.matrix.cols()
        )
    }
}

impl fmt::Display for RepMatrix {
    /// Header line, then one line of exact entries per row.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.header())?;
        if self.matrix.rows() > 0 && self.matrix.cols() > 0 {
            write!(f, "\n{}", self.matrix)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct RepRecord {
    m: usize,
    n: usize,
    d: usize,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

impl Serialize for RepMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RepRecord {
            m: self.m,
            n: self.n,
            d: self.d,
            rows: self.matrix.rows(),
            cols: self.matrix.cols(),
            entries: self
                .matrix
                .to_dense()
                .into_iter()
                .map(|row| row.into_iter().map(|v| v.to_string()).collect())
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RepMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let rec = RepRecord::deserialize(deserializer)?;
        let rows = rec
            .entries
            .iter()
            .map(|row| row.iter().map(|s| s.parse::<Rational>().map_err(D::Error::custom)).collect())
            .collect::<Result<Vec<Vec<Rational>>, _>>()?;
        if rows.len() != rec.rows || rows.iter().any(|r| r.len() != rec.cols) {
            return Err(D::Error::custom("entry table does not match rows/cols"));
        }
        let matrix = if rec.rows == 0 { Matrix::zeros(0, rec.cols) } else { Matrix::from_rows(&rows) };
        RepMatrix::new(rec.m, rec.n, rec.d, matrix).map_err(D::Error::custom)
    }
}

fn generator_matrix(duality: &DualityStructure, g: Generator) -> Matrix {
    let d = duality.dim();
    match g {
        Generator::Unit => Matrix::from_triplets(
            d * d,
            1,
            duality.mat_unit().entries().map(|(a, b, v)| (a * d + b, 0, v.clone())),
        ),
        Generator::Counit => Matrix::from_triplets(
            1,
            d * d,
            duality.mat_counit().entries().map(|(a, b, v)| (0, a * d + b, v.clone())),
        ),
        Generator::Braid => swap_matrix(d),
    }
}

/// The flip `v_a ⊗ v_b -> v_b ⊗ v_a` on `V ⊗ V`.
pub fn swap_matrix(d: usize) -> Matrix {
    Matrix::from_triplets(
        d * d,
        d * d,
        (0..d).flat_map(|a| (0..d).map(move |b| (b * d + a, a * d + b, Rational::one()))),
    )
}

/// Evaluates a generator word directly in matrices: `i`, `e` and `b` go to
/// their matrices, composition to products and tensor to Kronecker products.
pub fn rep_word(duality: &DualityStructure, word: &GeneratorWord) -> Result<Matrix, RepError> {
    let d = duality.dim();
    word.fold(
        &|g| Ok::<_, RepError>(generator_matrix(duality, g)),
        &|k| Ok(Matrix::identity(side(d, k)?)),
        &|second: Matrix, first: Matrix| {
            if second.cols() != first.rows() {
                return Err(RepError::Shape(format!("{}x{} after {}x{}", second.rows(), second.cols(), first.rows(), first.cols())));
            }
            Ok(second.mul(&first))
        },
        &|left: Matrix, right: Matrix| {
            if left.rows().saturating_mul(right.rows()) > MAX_SIDE || left.cols().saturating_mul(right.cols()) > MAX_SIDE {
                return Err(RepError::Shape(format!("Kronecker product exceeds {MAX_SIDE}")));
            }
            Ok(left.kron(&right))
        },
    )
}

/// `Y(f)` through [`rep_word`] on the normal-form word of the loop-free
/// part. Each loop scales by `d`.
pub fn rep(duality: &DualityStructure, f: &BrauerMorphism) -> Result<RepMatrix, RepError> {
    let d = duality.dim();
    let (rows, cols) = (side(d, f.cod())?, side(d, f.dom())?);
    let (core, loops) = f.strip_loops();
    let matrix = rep_word(duality, &decompose_to_word(&core))?;
    debug_assert_eq!((matrix.rows(), matrix.cols()), (rows, cols));
    let scale = num_traits::pow(int(d as i64), loops);
    Ok(RepMatrix { m: f.dom(), n: f.cod(), d, matrix: matrix.scale(&scale) })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationImage {
    pub name: &'static str,
    pub holds: bool,
}

/// Both sides of every defining relation, evaluated as matrix words.
pub fn verify_relation_images(duality: &DualityStructure) -> Result<Vec<RelationImage>, RepError> {
    relations()
        .into_iter()
        .map(|r| Ok(RelationImage { name: r.name, holds: rep_word(duality, &r.lhs)? == rep_word(duality, &r.rhs)? }))
        .collect()
}

/// `Y(f)` by contracting indices directly from the pairing, entry by entry.
pub fn rep_direct(duality: &DualityStructure, f: &BrauerMorphism) -> Result<RepMatrix, RepError> {
    let d = duality.dim();
    let (m, n) = (f.dom(), f.cod());
    let (rows, cols) = (side(d, n)?, side(d, m)?);
    let loop_factor = num_traits::pow(int(d as i64), f.loops());
    // digit of point `p` (0-based, inputs first) in the given multi-indices
    let digit = |p: usize, row: usize, col: usize| -> usize {
        let (idx, len, pos) = if p < m { (col, m, p) } else { (row, n, p - m) };
        (idx / d.pow((len - 1 - pos) as u32)) % d
    };
    let mut entries = Vec::new();
    for row in 0..rows {
        for col in 0..cols {
            let mut value = loop_factor.clone();
            for (p, q) in f.index_pairs() {
                let (a, b) = (digit(p, row, col), digit(q, row, col));
                let factor = match (p < m, q < m) {
                    (true, true) => duality.mat_counit().get(a, b),
                    (false, false) => duality.mat_unit().get(a, b),
                    _ => {
                        if a == b {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    }
                };
                if factor.is_zero() {
                    value = Rational::zero();
                    break;
                }
                value *= factor;
            }
            if !value.is_zero() {
                entries.push((row, col, value));
            }
        }
    }
    Ok(RepMatrix { m, n, d, matrix: Matrix::from_triplets(rows, cols, entries) })
}

/// Outcome of an exhaustive loop-faithfulness check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopFaithfulReport {
    pub checked: usize,
    /// Two morphisms with equal images and different loop counts.
    pub counterexample: Option<(BrauerMorphism, BrauerMorphism)>,
}

impl LoopFaithfulReport {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks that `Y(φ) = Y(ψ)` forces equal loop counts over every morphism
/// with `m + n <= max_size` and at most `max_loops` loops.
pub fn check_loop_faithful(
    duality: &DualityStructure,
    max_size: usize,
    max_loops: usize,
) -> Result<LoopFaithfulReport, RepError> {
    let d = int(duality.dim() as i64);
    let mut checked = 0;
    for size in (0..=max_size).step_by(2) {
        for m in 0..=size {
            let mut seen: HashMap<Matrix, BrauerMorphism> = HashMap::new();
            for phi in enumerate_loop_free(m, size - m) {
                let base = rep(duality, &phi)?.into_matrix();
                let mut scale = Rational::one();
                for k in 0..=max_loops {
                    let image = base.scale(&scale);
                    let f = phi.with_loops(k);
                    checked += 1;
                    match seen.get(&image) {
                        Some(g) if g.loops() != k => {
                            return Ok(LoopFaithfulReport { checked, counterexample: Some((g.clone(), f)) });
                        }
                        Some(_) => {}
                        None => {
                            seen.insert(image, f);
                        }
                    }
                    scale *= &d;
                }
            }
        }
    }
    Ok(LoopFaithfulReport { checked, counterexample: None })
}

/// The first loop-free morphism with `m + n <= max_size` whose image is the
/// zero matrix, if any.
pub fn find_zero_image(duality: &DualityStructure, max_size: usize) -> Result<Option<BrauerMorphism>, RepError> {
    for size in (0..=max_size).step_by(2) {
        for m in 0..=size {
            for phi in enumerate_loop_free(m, size - m) {
                if rep(duality, &phi)?.matrix().is_zero() {
                    return Ok(Some(phi));
                }
            }
        }
    }
    Ok(None)
}

/// Groups the loop-free morphisms of `Hom(m, n)` by their image.
pub fn image_classes(duality: &DualityStructure, m: usize, n: usize) -> Result<BTreeMap<Matrix, Vec<BrauerMorphism>>, RepError> {
    let mut classes: BTreeMap<Matrix, Vec<BrauerMorphism>> = BTreeMap::new();
    for phi in enumerate_loop_free(m, n) {
        classes.entry(rep(duality, &phi)?.into_matrix()).or_default().push(phi);
    }
    Ok(classes)
}
