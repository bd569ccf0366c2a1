//! Fraction-free (Bareiss) elimination over the scalar field.
//!
//! Each elimination step divides exactly by the previous pivot, so entries
//! stay minors of the input matrix; divisions by pivots happen only during
//! back substitution.

use thiserror::Error;

use crate::error::AlgebraError;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is singular")]
    Singular,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Elements admitting elimination: ring operations plus inversion of the
/// elements that [`Elim::pivot_cost`] accepts.
pub trait Elim: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn pivot_cost(&self) -> Option<f64>;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn try_inv(&self) -> Result<Self, AlgebraError>;
}

impl<S: Scalar> Elim for S {
    fn zero() -> Self {
        <S as Scalar>::zero()
    }
    fn one() -> Self {
        <S as Scalar>::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn pivot_cost(&self) -> Option<f64> {
        Scalar::pivot_cost(self)
    }
    fn add(&self, o: &Self) -> Self {
        self.clone() + o.clone()
    }
    fn sub(&self, o: &Self) -> Self {
        self.clone() - o.clone()
    }
    fn mul(&self, o: &Self) -> Self {
        self.clone() * o.clone()
    }
    fn try_inv(&self) -> Result<Self, AlgebraError> {
        Scalar::try_inv(self)
    }
}

fn choose_pivot<T: Elim>(a: &[Vec<T>], k: usize) -> Option<usize> {
    (k..a.len())
        .filter_map(|r| a[r][k].pivot_cost().map(|c| (r, c)))
        .min_by(|x, y| x.1.partial_cmp(&y.1).unwrap_or(std::cmp::Ordering::Equal))
        .map(|(r, _)| r)
}

/// Forward Bareiss elimination on `n` pivot columns of an augmented matrix.
/// Returns the sign of the row permutation, or `None` if singular.
fn bareiss_forward<T: Elim>(a: &mut [Vec<T>], n: usize) -> Result<Option<i32>, AlgebraError> {
    let mut sign = 1;
    let mut prev_inv = T::one();
    for k in 0..n {
        let Some(r) = choose_pivot(a, k) else {
            return Ok(None);
        };
        if r != k {
            a.swap(r, k);
            sign = -sign;
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pkk = &pivot_row[k];
        for row in bottom.iter_mut() {
            let f = row[k].clone();
            for j in k + 1..row.len() {
                let t = pkk.mul(&row[j]);
                let t = if f.is_zero() || pivot_row[j].is_zero() { t } else { t.sub(&f.mul(&pivot_row[j])) };
                row[j] = t.mul(&prev_inv);
            }
            row[k] = T::zero();
        }
        prev_inv = pkk.try_inv()?;
    }
    Ok(Some(sign))
}

/// Solves `m · x = rhs`.
pub fn solve<T: Elim>(m: &[Vec<T>], rhs: &[T]) -> Result<Vec<T>, LinalgError> {
    let cols: Vec<Vec<T>> = vec![rhs.to_vec()];
    Ok(solve_many(m, &cols)?.pop().expect("one column"))
}

/// Solves `m · X = B` for each right-hand column of `B`.
pub fn solve_many<T: Elim>(m: &[Vec<T>], rhs_cols: &[Vec<T>]) -> Result<Vec<Vec<T>>, LinalgError> {
    let n = m.len();
    let mut a: Vec<Vec<T>> = (0..n)
        .map(|i| {
            let mut row = m[i].clone();
            row.extend(rhs_cols.iter().map(|c| c[i].clone()));
            row
        })
        .collect();
    if bareiss_forward(&mut a, n)?.is_none() {
        return Err(LinalgError::Singular);
    }
    let mut out = Vec::with_capacity(rhs_cols.len());
    for c in 0..rhs_cols.len() {
        let mut x: Vec<T> = vec![T::zero(); n];
        for i in (0..n).rev() {
            let mut acc = a[i][n + c].clone();
            for j in i + 1..n {
                if !a[i][j].is_zero() && !x[j].is_zero() {
                    acc = acc.sub(&a[i][j].mul(&x[j]));
                }
            }
            x[i] = acc.mul(&a[i][i].try_inv()?);
        }
        out.push(x);
    }
    Ok(out)
}

/// Matrix inverse.
pub fn inverse<T: Elim>(m: &[Vec<T>]) -> Result<Vec<Vec<T>>, LinalgError> {
    let n = m.len();
    let id: Vec<Vec<T>> = (0..n).map(|c| (0..n).map(|r| if r == c { T::one() } else { T::zero() }).collect()).collect();
    let cols = solve_many(m, &id)?;
    Ok((0..n).map(|r| (0..n).map(|c| cols[c][r].clone()).collect()).collect())
}

/// Determinant; zero exactly when no full set of pivots exists.
pub fn determinant<T: Elim>(m: &[Vec<T>]) -> Result<T, AlgebraError> {
    let n = m.len();
    if n == 0 {
        return Ok(T::one());
    }
    let mut a = m.to_vec();
    match bareiss_forward(&mut a, n)? {
        None => Ok(T::zero()),
        Some(sign) => {
            let d = a[n - 1][n - 1].clone();
            Ok(if sign < 0 { T::zero().sub(&d) } else { d })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, ExtScalar};

    fn s(t: &str) -> ExtScalar {
        ExtScalar::from_polynomial(parse_polynomial(t).unwrap())
    }

    #[test]
    fn symbolic_solve_and_inverse() {
        let m = vec![vec![s("x"), s("1"), s("0")], vec![s("y"), s("x"), s("1")], vec![s("0"), s("i"), s("x*y")]];
        let rhs = vec![s("1"), s("x + y"), s("2")];
        let x = solve(&m, &rhs).unwrap();
        for i in 0..3 {
            let mut acc = s("0");
            for j in 0..3 {
                acc = acc + m[i][j].clone() * x[j].clone();
            }
            assert!((acc - rhs[i].clone()).is_zero());
        }
        let inv = inverse(&m).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = s("0");
                for k in 0..3 {
                    acc = acc + m[i][k].clone() * inv[k][j].clone();
                }
                assert_eq!(acc.is_one(), i == j);
            }
        }
    }

    #[test]
    fn determinant_and_singularity() {
        let m = vec![vec![s("x"), s("y")], vec![s("y"), s("x")]];
        assert_eq!(determinant(&m).unwrap(), s("x^2 - y^2"));
        let sing = vec![vec![s("x"), s("y")], vec![s("2*x"), s("2*y")]];
        assert!(determinant(&sing).unwrap().is_zero());
        assert_eq!(solve(&sing, &[s("1"), s("0")]).unwrap_err(), LinalgError::Singular);
    }
}
