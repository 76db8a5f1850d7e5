use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rep::{Matrix, Rational, RepMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShellError {
    #[error("scale must not be 0, 1 or -1, got {0}")]
    DegenerateScale(Rational),
    #[error("generators must be nonzero")]
    ZeroGenerator,
}

/// The scalar `c` with `y = c · z`, if any.
fn ratio(y: &Matrix, z: &Matrix) -> Option<Rational> {
    if y.rows() != z.rows() || y.cols() != z.cols() {
        return None;
    }
    let (i, j, zv) = z.entries().next()?;
    let c = y.get(i, j) / zv;
    (!c.is_zero() && *y == z.scale(&c)).then_some(c)
}

/// The exponent `k >= 0` with `c = scale^k`, if any.
fn power_of(c: &Rational, scale: &Rational) -> Option<usize> {
    let growing = scale.abs() > Rational::one();
    let mut p = Rational::one();
    for k in 0.. {
        if p == *c {
            return Some(k);
        }
        let past = if growing { p.abs() > c.abs() } else { p.abs() < c.abs() };
        if past {
            return None;
        }
        p *= scale;
    }
    unreachable!()
}

fn check_scale(scale: &Rational) -> Result<(), ShellError> {
    if scale.is_zero() || scale.abs() == Rational::one() {
        return Err(ShellError::DegenerateScale(scale.clone()));
    }
    Ok(())
}

/// Writes `y = scale^k · s` for some `s` in `shell`.
pub fn shell_decompose<'a>(
    y: &RepMatrix,
    shell: impl IntoIterator<Item = &'a RepMatrix>,
    scale: &Rational,
) -> Option<(usize, &'a RepMatrix)> {
    shell.into_iter().find_map(|s| {
        let c = ratio(y.matrix(), s.matrix())?;
        power_of(&c, scale).map(|k| (k, s))
    })
}

/// Drops every generator of the form `scale^k · z` with `k > 0` and `z`
/// another generator.
pub fn minimal_shell<'a>(
    generators: impl IntoIterator<Item = &'a RepMatrix>,
    scale: &Rational,
) -> Result<BTreeSet<RepMatrix>, ShellError> {
    check_scale(scale)?;
    let gens: BTreeSet<&RepMatrix> = generators.into_iter().collect();
    if gens.iter().any(|g| g.matrix().is_zero()) {
        return Err(ShellError::ZeroGenerator);
    }
    let reducible = |y: &RepMatrix| {
        gens.iter().any(|z| {
            ratio(y.matrix(), z.matrix()).and_then(|c| power_of(&c, scale)).is_some_and(|k| k > 0)
        })
    };
    Ok(gens.iter().filter(|y| !reducible(y)).map(|y| (*y).clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brauer::enumerate_loop_free;
    use crate::rep::{int, rat, rep, DualityStructure};

    fn y(rows: &[&[i64]]) -> RepMatrix {
        let m = Matrix::from_i64(rows);
        RepMatrix::new(2, 0, 2, m).unwrap()
    }

    #[test]
    fn one_step() {
        let a = y(&[&[0, 1, 1, -1]]);
        let shell = minimal_shell([&a, &a.scale(&int(2))], &int(2)).unwrap();
        assert_eq!(shell.into_iter().collect::<Vec<_>>(), vec![a]);
    }

    #[test]
    fn chains_collapse() {
        let a = y(&[&[0, 1, 1, -1]]);
        let b = y(&[&[1, 0, 0, 1]]);
        let gens = [a.clone(), a.scale(&int(2)), a.scale(&int(4)), b.clone()];
        let shell = minimal_shell(&gens, &int(2)).unwrap();
        assert_eq!(shell, [a.clone(), b].into_iter().collect());
        // a negative multiple is not a power of the scale
        let neg = a.scale(&int(-2));
        assert_eq!(minimal_shell([&a, &neg], &int(2)).unwrap().len(), 2);
        assert_eq!(minimal_shell([&a, &neg], &int(-2)).unwrap().len(), 1);
    }

    #[test]
    fn fractional_scale() {
        let a = y(&[&[0, 1, 1, -1]]);
        let gens = [a.clone(), a.scale(&rat(1, 4))];
        let shell = minimal_shell(&gens, &rat(1, 2)).unwrap();
        assert_eq!(shell.into_iter().collect::<Vec<_>>(), vec![a]);
    }

    #[test]
    fn degenerate_scales() {
        let a = y(&[&[0, 1, 1, -1]]);
        for s in [int(0), int(1), int(-1)] {
            assert!(matches!(minimal_shell([&a], &s), Err(ShellError::DegenerateScale(_))));
        }
        let zero = y(&[&[0, 0, 0, 0]]);
        assert_eq!(minimal_shell([&zero], &int(2)), Err(ShellError::ZeroGenerator));
    }

    #[test]
    fn op22_shell_has_three_elements() {
        let d = DualityStructure::example();
        let images: Vec<RepMatrix> = enumerate_loop_free(2, 2).iter().map(|f| rep(&d, f).unwrap()).collect();
        let mut gens = images.clone();
        gens.extend(images.iter().map(|m| m.scale(&int(2))));
        let shell = minimal_shell(&gens, &int(2)).unwrap();
        assert_eq!(shell.len(), 3);
        assert_eq!(shell, images.iter().cloned().collect());
    }

    #[test]
    fn decompose_finds_power() {
        let a = y(&[&[0, 1, 1, -1]]);
        let shell = [a.clone()];
        assert_eq!(shell_decompose(&a.scale(&int(8)), &shell, &int(2)), Some((3, &a)));
        assert_eq!(shell_decompose(&a, &shell, &int(2)), Some((0, &a)));
        assert_eq!(shell_decompose(&a.scale(&int(3)), &shell, &int(2)), None);
    }
}
