//! Fraction-free (Bareiss) elimination over the integers.
//!
//! Rational rows are first scaled by the lcm of their denominators, so every
//! intermediate entry stays an integer and the exact divisions of the Bareiss
//! update never round.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{AlgebraError, Rational};

/// Row-scaled integer copy of `m`, together with the scale applied to each row.
fn integer_rows(m: &[Vec<Rational>]) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let mut rows = Vec::with_capacity(m.len());
    let mut scales = Vec::with_capacity(m.len());
    for row in m {
        let l = row.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        rows.push(row.iter().map(|r| r.numer() * (&l / r.denom())).collect());
        scales.push(l);
    }
    (rows, scales)
}

/// In-place Bareiss reduction to row echelon form. Returns the pivot columns
/// and the sign of the row permutation. Only the first `ncols` columns are
/// used for pivoting.
fn bareiss(a: &mut [Vec<BigInt>], ncols: usize) -> (Vec<usize>, i32) {
    let nrows = a.len();
    let width = a.first().map_or(0, |r| r.len());
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut sign = 1;
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            sign = -sign;
        }
        for i in r + 1..nrows {
            for j in c + 1..width {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    (pivots, sign)
}

fn check_square(m: &[Vec<Rational>]) -> Result<usize, AlgebraError> {
    let n = m.len();
    if let Some(row) = m.iter().find(|r| r.len() != n) {
        return Err(AlgebraError::Arity {
            expected: n,
            got: row.len(),
        });
    }
    Ok(n)
}

pub fn matrix_rank(m: &[Vec<Rational>]) -> usize {
    let ncols = m.first().map_or(0, |r| r.len());
    let (mut a, _) = integer_rows(m);
    bareiss(&mut a, ncols).0.len()
}

pub fn determinant(m: &[Vec<Rational>]) -> Result<Rational, AlgebraError> {
    let n = check_square(m)?;
    if n == 0 {
        return Ok(Rational::one());
    }
    let (mut a, scales) = integer_rows(m);
    let (pivots, sign) = bareiss(&mut a, n);
    if pivots.len() < n {
        return Ok(Rational::zero());
    }
    let scale = scales.iter().fold(BigInt::one(), |acc, s| acc * s);
    let det = Rational::new(a[n - 1][n - 1].clone(), scale);
    Ok(if sign < 0 { -det } else { det })
}

/// Solves `m x = rhs` exactly. A singular `m` yields
/// [`AlgebraError::Singular`] carrying the rank.
pub fn solve_linear_exact(m: &[Vec<Rational>], rhs: &[Rational]) -> Result<Vec<Rational>, AlgebraError> {
    let n = check_square(m)?;
    if rhs.len() != n {
        return Err(AlgebraError::Arity {
            expected: n,
            got: rhs.len(),
        });
    }
    let aug: Vec<Vec<Rational>> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| row.iter().cloned().chain(std::iter::once(b.clone())).collect())
        .collect();
    let (mut a, _) = integer_rows(&aug);
    let (pivots, _) = bareiss(&mut a, n);
    if pivots.len() < n {
        return Err(AlgebraError::Singular {
            rank: pivots.len(),
            size: n,
        });
    }
    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rational::from_integer(a[i][n].clone());
        for j in i + 1..n {
            acc -= Rational::from_integer(a[i][j].clone()) * &x[j];
        }
        x[i] = acc / Rational::from_integer(a[i][i].clone());
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| rat(v, 1)).collect()).collect()
    }

    #[test]
    fn small_systems() {
        let id = m(&[&[1, 0], &[0, 1]]);
        assert_eq!(
            solve_linear_exact(&id, &[rat(2, 1), rat(3, 1)]).unwrap(),
            vec![rat(2, 1), rat(3, 1)]
        );
        let a = m(&[&[1, 1], &[1, -1]]);
        assert_eq!(
            solve_linear_exact(&a, &[rat(2, 1), rat(0, 1)]).unwrap(),
            vec![rat(1, 1), rat(1, 1)]
        );
    }

    #[test]
    fn singular_reports_rank() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let e = solve_linear_exact(&a, &[rat(1, 1), rat(2, 1), rat(0, 1)]).unwrap_err();
        assert_eq!(e, AlgebraError::Singular { rank: 2, size: 3 });
        assert_eq!(determinant(&a).unwrap(), rat(0, 1));
        assert_eq!(matrix_rank(&a), 2);
    }

    #[test]
    fn determinant_with_fractions_and_swaps() {
        let a = vec![vec![rat(0, 1), rat(1, 2)], vec![rat(3, 1), rat(1, 3)]];
        assert_eq!(determinant(&a).unwrap(), rat(-3, 2));
    }
}
