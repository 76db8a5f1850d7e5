//! The Brauer category as data.
//!
//! A morphism `[m] -> [n]` is a perfect matching on the `m + n` boundary
//! points together with a count of closed components (loops). Boundary
//! points live in a single 0-based index space: inputs occupy `0..m`,
//! outputs occupy `m..m + n`. The matching is stored as a partner array,
//! which is a canonical form, so structural equality, ordering and hashing
//! coincide with equality of morphisms.

mod encoding;
mod enumerate;
mod word;

pub use encoding::ParseMorphismError;
pub use enumerate::{double_factorial, enumerate_loop_free, enumerate_with_loops};
pub use word::{decompose_to_word, evaluate_word, relations, verify_relations, Generator, GeneratorWord, Relation, RelationCheck, RelationReport};

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BrauerError {
    #[error("object mismatch: codomain [{codomain}] does not match domain [{domain}]")]
    ObjectMismatch { codomain: usize, domain: usize },
    #[error("no morphism [{m}] -> [{n}]: m + n is odd")]
    OddBoundary { m: usize, n: usize },
    #[error("invalid pairing: {0}")]
    InvalidPairing(String),
    #[error("unit and counit require n >= 1")]
    EmptyUnit,
    #[error("not an isomorphism")]
    NotIsomorphism,
}

/// A boundary point, 1-based as printed in the text encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    In(usize),
    Out(usize),
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::In(i) => write!(f, "I{i}"),
            Point::Out(j) => write!(f, "O{j}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BrauerMorphism {
    m: usize,
    n: usize,
    partner: Vec<usize>,
    loops: usize,
}

impl BrauerMorphism {
    /// Builds a morphism from a partner array over the index space `0..m + n`.
    pub fn from_partner(m: usize, n: usize, partner: Vec<usize>, loops: usize) -> Result<Self, BrauerError> {
        let size = m + n;
        if size % 2 == 1 {
            return Err(BrauerError::OddBoundary { m, n });
        }
        if partner.len() != size {
            return Err(BrauerError::InvalidPairing(format!(
                "expected {size} entries, found {}",
                partner.len()
            )));
        }
        for (i, &j) in partner.iter().enumerate() {
            if j >= size {
                return Err(BrauerError::InvalidPairing(format!("index {j} out of range")));
            }
            if j == i {
                return Err(BrauerError::InvalidPairing(format!("point {i} matched to itself")));
            }
            if partner[j] != i {
                return Err(BrauerError::InvalidPairing(format!("pairing is not an involution at {i}")));
            }
        }
        Ok(Self { m, n, partner, loops })
    }

    /// Builds a morphism from a list of boundary point pairs.
    pub fn from_pairs(m: usize, n: usize, pairs: &[(Point, Point)], loops: usize) -> Result<Self, BrauerError> {
        const UNSET: usize = usize::MAX;
        let mut partner = vec![UNSET; m + n];
        for &(a, b) in pairs {
            let (i, j) = (Self::index_of(m, n, a)?, Self::index_of(m, n, b)?);
            if i == j {
                return Err(BrauerError::InvalidPairing(format!("{a} matched to itself")));
            }
            if partner[i] != UNSET || partner[j] != UNSET {
                return Err(BrauerError::InvalidPairing(format!("point used twice in ({a}-{b})")));
            }
            partner[i] = j;
            partner[j] = i;
        }
        if let Some(i) = partner.iter().position(|&p| p == UNSET) {
            if (m + n) % 2 == 1 {
                return Err(BrauerError::OddBoundary { m, n });
            }
            return Err(BrauerError::InvalidPairing(format!(
                "point {} is unmatched",
                Self::point_of(m, i)
            )));
        }
        Self::from_partner(m, n, partner, loops)
    }

    fn index_of(m: usize, n: usize, p: Point) -> Result<usize, BrauerError> {
        match p {
            Point::In(i) if (1..=m).contains(&i) => Ok(i - 1),
            Point::Out(j) if (1..=n).contains(&j) => Ok(m + j - 1),
            _ => Err(BrauerError::InvalidPairing(format!("{p} is not a boundary point of [{m}] -> [{n}]"))),
        }
    }

    fn point_of(m: usize, index: usize) -> Point {
        if index < m {
            Point::In(index + 1)
        } else {
            Point::Out(index - m + 1)
        }
    }

    pub fn identity(n: usize) -> Self {
        let partner = (0..2 * n).map(|i| if i < n { i + n } else { i - n }).collect();
        Self { m: n, n, partner, loops: 0 }
    }

    /// The braiding `b_{m,n}: [m + n] -> [n + m]`.
    pub fn braiding(m: usize, n: usize) -> Self {
        let size = m + n;
        let mut partner = vec![0; 2 * size];
        for i in 0..m {
            // In(i) -> Out(n + i)
            let out = size + n + i;
            partner[i] = out;
            partner[out] = i;
        }
        for i in 0..n {
            // In(m + i) -> Out(i)
            let (inp, out) = (m + i, size + i);
            partner[inp] = out;
            partner[out] = inp;
        }
        Self { m: size, n: size, partner, loops: 0 }
    }

    /// The unit `i_n: [0] -> [2n]`, nested caps `Out(k) <-> Out(2n + 1 - k)`.
    pub fn unit(n: usize) -> Result<Self, BrauerError> {
        if n == 0 {
            return Err(BrauerError::EmptyUnit);
        }
        let size = 2 * n;
        let partner = (0..size).map(|k| size - 1 - k).collect();
        Ok(Self { m: 0, n: size, partner, loops: 0 })
    }

    /// The counit `e_n: [2n] -> [0]`, nested cups `In(k) <-> In(2n + 1 - k)`.
    pub fn counit(n: usize) -> Result<Self, BrauerError> {
        if n == 0 {
            return Err(BrauerError::EmptyUnit);
        }
        let size = 2 * n;
        let partner = (0..size).map(|k| size - 1 - k).collect();
        Ok(Self { m: size, n: 0, partner, loops: 0 })
    }

    /// The closed loop `λ: [0] -> [0]`.
    pub fn loop_() -> Self {
        Self::loops_only(1)
    }

    /// `λ^{⊗k}`.
    pub fn loops_only(k: usize) -> Self {
        Self { m: 0, n: 0, partner: Vec::new(), loops: k }
    }

    pub fn i1() -> Self {
        Self::unit(1).expect("n = 1")
    }

    pub fn e1() -> Self {
        Self::counit(1).expect("n = 1")
    }

    pub fn b11() -> Self {
        Self::braiding(1, 1)
    }

    pub fn dom(&self) -> usize {
        self.m
    }

    pub fn cod(&self) -> usize {
        self.n
    }

    pub fn loops(&self) -> usize {
        self.loops
    }

    pub fn partner(&self) -> &[usize] {
        &self.partner
    }

    /// The pairs `(i, j)` with `i < j`, in increasing order of `i`.
    pub fn index_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.partner.iter().enumerate().filter(|&(i, &j)| i < j).map(|(i, &j)| (i, j))
    }

    /// The pairs as boundary points, canonical order.
    pub fn pairs(&self) -> Vec<(Point, Point)> {
        self.index_pairs()
            .map(|(i, j)| (Self::point_of(self.m, i), Self::point_of(self.m, j)))
            .collect()
    }

    /// Where the boundary point `p` is connected to.
    pub fn partner_of(&self, p: Point) -> Option<Point> {
        let i = Self::index_of(self.m, self.n, p).ok()?;
        Some(Self::point_of(self.m, self.partner[i]))
    }

    pub fn with_loops(&self, loops: usize) -> Self {
        Self { loops, ..self.clone() }
    }

    /// `g ∘ f` where `self = g`.
    pub fn compose(&self, f: &BrauerMorphism) -> Result<BrauerMorphism, BrauerError> {
        compose(self, f)
    }

    pub fn tensor(&self, other: &BrauerMorphism) -> BrauerMorphism {
        tensor(self, other)
    }

    /// Splits off the closed components: `self = λ^{⊗k} ⊗ loop_free`.
    pub fn strip_loops(&self) -> (BrauerMorphism, usize) {
        (self.with_loops(0), self.loops)
    }

    pub fn is_loop_free(&self) -> bool {
        self.loops == 0
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.m)
    }

    /// True iff there are no loops and every strand runs from an input to an output.
    pub fn is_isomorphism(&self) -> bool {
        self.loops == 0 && self.m == self.n && (0..self.m).all(|i| self.partner[i] >= self.m)
    }

    /// The bijection `[m] -> [m]` of an isomorphism, 0-based: input `i` goes to output `perm[i]`.
    pub fn as_permutation(&self) -> Result<Vec<usize>, BrauerError> {
        if !self.is_isomorphism() {
            return Err(BrauerError::NotIsomorphism);
        }
        Ok((0..self.m).map(|i| self.partner[i] - self.m).collect())
    }

    /// The isomorphism sending input `i` to output `perm[i]`.
    pub fn from_permutation(perm: &[usize]) -> Result<Self, BrauerError> {
        let m = perm.len();
        let mut partner = vec![0; 2 * m];
        for (i, &j) in perm.iter().enumerate() {
            if j >= m {
                return Err(BrauerError::InvalidPairing(format!("permutation value {j} out of range")));
            }
            partner[i] = m + j;
            partner[m + j] = i;
        }
        Self::from_partner(m, m, partner, 0)
    }

    pub(crate) fn raw(m: usize, n: usize, partner: Vec<usize>, loops: usize) -> Self {
        debug_assert_eq!(partner.len(), m + n);
        Self { m, n, partner, loops }
    }
}

/// Composition `g ∘ f` for `f: [m] -> [n]`, `g: [n] -> [p]`.
///
/// The overlay graph has degree at most two at every point, so maximal
/// paths are traced directly. Paths starting at an outer boundary point end
/// at another outer point; whatever remains of the middle points forms
/// closed cycles, each of which becomes one loop.
pub fn compose(g: &BrauerMorphism, f: &BrauerMorphism) -> Result<BrauerMorphism, BrauerError> {
    if f.n != g.m {
        return Err(BrauerError::ObjectMismatch { codomain: f.n, domain: g.m });
    }
    let (m, mid, p) = (f.m, f.n, g.n);
    // Outer points in the result index space: f inputs 0..m, g outputs m..m + p.
    #[derive(Clone, Copy)]
    enum Side {
        F(usize),
        G(usize),
    }
    let mut visited_mid = vec![false; mid];
    let mut partner = vec![usize::MAX; m + p];

    // Follow a strand entering f (resp. g) at the given local index until it exits.
    let trace = |start: Side, visited_mid: &mut Vec<bool>| -> usize {
        let mut at = start;
        loop {
            match at {
                Side::F(i) => {
                    let j = f.partner[i];
                    if j < m {
                        return j;
                    }
                    let k = j - m;
                    visited_mid[k] = true;
                    // enter g at input k
                    at = Side::G(k);
                }
                Side::G(i) => {
                    let j = g.partner[i];
                    if j >= mid {
                        return m + (j - mid);
                    }
                    visited_mid[j] = true;
                    // enter f at output j
                    at = Side::F(m + j);
                }
            }
        }
    };

    for i in 0..m {
        if partner[i] == usize::MAX {
            let end = trace(Side::F(i), &mut visited_mid);
            partner[i] = end;
            partner[end] = i;
        }
    }
    for k in 0..p {
        let i = m + k;
        if partner[i] == usize::MAX {
            let end = trace(Side::G(mid + k), &mut visited_mid);
            partner[i] = end;
            partner[end] = i;
        }
    }

    let mut cycles = 0;
    for start in 0..mid {
        if visited_mid[start] {
            continue;
        }
        cycles += 1;
        // A cycle alternates f-arcs and g-arcs between middle points.
        let mut k = start;
        loop {
            visited_mid[k] = true;
            let via_f = f.partner[m + k] - m;
            visited_mid[via_f] = true;
            let via_g = g.partner[via_f];
            if via_g == start {
                break;
            }
            k = via_g;
        }
    }

    Ok(BrauerMorphism::raw(m, p, partner, f.loops + g.loops + cycles))
}

/// Stacking `f ⊗ f'`: inputs and outputs of `f'` are shifted past those of `f`.
pub fn tensor(f: &BrauerMorphism, h: &BrauerMorphism) -> BrauerMorphism {
    let (m, n, m2, n2) = (f.m, f.n, h.m, h.n);
    let dom = m + m2;
    let remap_f = |i: usize| if i < m { i } else { dom + (i - m) };
    let remap_h = |i: usize| if i < m2 { m + i } else { dom + n + (i - m2) };
    let mut partner = vec![0; dom + n + n2];
    for (i, &j) in f.partner.iter().enumerate() {
        partner[remap_f(i)] = remap_f(j);
    }
    for (i, &j) in h.partner.iter().enumerate() {
        partner[remap_h(i)] = remap_h(j);
    }
    BrauerMorphism::raw(dom, n + n2, partner, f.loops + h.loops)
}
