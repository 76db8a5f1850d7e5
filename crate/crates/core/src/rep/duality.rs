use num_traits::Zero;
use rand::Rng;
use thiserror::Error;

use super::matrix::{int, rat, Matrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualityError {
    #[error("unit matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension must be at least 2, got {0}")]
    TooSmall(usize),
    #[error("unit matrix is not symmetric")]
    NotSymmetric,
    #[error("unit matrix is singular")]
    Singular,
    #[error("duality file: {0}")]
    Parse(String),
}

/// A symmetric copairing `Mat(i)` with its inverse `Mat(e)` as the pairing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DualityStructure {
    dim: usize,
    mat_unit: Matrix,
    mat_counit: Matrix,
}

impl DualityStructure {
    /// Validates `mat_unit` and derives the counit as its exact inverse.
    pub fn new(mat_unit: Matrix) -> Result<Self, DualityError> {
        let (rows, cols) = (mat_unit.rows(), mat_unit.cols());
        if rows != cols {
            return Err(DualityError::NotSquare { rows, cols });
        }
        if rows < 2 {
            return Err(DualityError::TooSmall(rows));
        }
        if !mat_unit.is_symmetric() {
            return Err(DualityError::NotSymmetric);
        }
        let mat_counit = mat_unit.inverse().ok_or(DualityError::Singular)?;
        Ok(Self { dim: rows, mat_unit, mat_counit })
    }

    /// The structure on `R^2` with `i(1) = e11 + e12 + e21`.
    pub fn example() -> Self {
        Self::new(Matrix::from_i64(&[&[1, 1], &[1, 0]])).expect("example structure is valid")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mat_unit(&self) -> &Matrix {
        &self.mat_unit
    }

    pub fn mat_counit(&self) -> &Matrix {
        &self.mat_counit
    }

    /// `e ∘ i` as a number; equals the dimension.
    pub fn trace(&self) -> Rational {
        let mut t = Rational::zero();
        for (j, k, v) in self.mat_unit.entries() {
            t += v * self.mat_counit.get(j, k);
        }
        t
    }

    /// Parses the duality file format: first line `d`, then `d` rows of `d`
    /// exact fractions giving the unit matrix.
    pub fn parse(text: &str) -> Result<Self, DualityError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let d: usize = lines
            .next()
            .ok_or_else(|| DualityError::Parse("empty file".into()))?
            .parse()
            .map_err(|_| DualityError::Parse("first line must be the dimension".into()))?;
        let mut rows = Vec::with_capacity(d);
        for r in 0..d {
            let line = lines
                .next()
                .ok_or_else(|| DualityError::Parse(format!("missing row {}", r + 1)))?;
            let row = line
                .split_whitespace()
                .map(|tok| tok.parse::<Rational>().map_err(|_| DualityError::Parse(format!("bad entry {tok:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            if row.len() != d {
                return Err(DualityError::Parse(format!("row {} has {} entries, expected {d}", r + 1, row.len())));
            }
            rows.push(row);
        }
        if lines.next().is_some() {
            return Err(DualityError::Parse("trailing content after the matrix".into()));
        }
        Self::new(Matrix::from_rows(&rows))
    }

    pub fn to_file_text(&self) -> String {
        format!("{}\n{}\n", self.dim, self.mat_unit)
    }
}

/// A random symmetric invertible unit matrix with small fractional entries.
pub fn random_duality<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> DualityStructure {
    loop {
        let mut rows = vec![vec![int(0); dim]; dim];
        for i in 0..dim {
            for j in i..dim {
                let v = rat(rng.gen_range(-3..=3), rng.gen_range(1..=3));
                rows[i][j] = v.clone();
                rows[j][i] = v;
            }
        }
        if let Ok(d) = DualityStructure::new(Matrix::from_rows(&rows)) {
            return d;
        }
    }
}
