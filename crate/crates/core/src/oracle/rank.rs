//! Exact Jacobian ranks for functional-independence counts.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::points::RadialPoint;
use crate::error::Result;
use crate::phase::{PhaseExpr, Var};

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(rank, pivot);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                m[r][c] = v / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Clear denominators row by row.
fn integer_rows(rows: Vec<Vec<BigRational>>) -> Vec<Vec<BigInt>> {
    rows.into_iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            row.iter().map(|v| (v * BigRational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect()
}

/// Exact rank of `d(integrals)/d(x, p)` at one point.
pub fn independence_rank(integrals: &[PhaseExpr], point: &RadialPoint) -> Result<usize> {
    let eval = point.to_eval();
    let n = point.n();
    let mut rows = Vec::with_capacity(integrals.len());
    for f in integrals {
        let mut row = Vec::with_capacity(2 * n);
        for var in (1..=n).map(Var::X).chain((1..=n).map(Var::P)) {
            let v = f.diff(var)?.eval(&eval)?;
            if !v.im.is_zero() {
                return Err(crate::error::Error::Config("classical integrals must be real".into()));
            }
            row.push(v.re);
        }
        rows.push(row);
    }
    Ok(bareiss_rank(integer_rows(rows)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub expected: usize,
    /// Maximum rank over the points.
    pub observed: usize,
    pub per_point: Vec<usize>,
    pub conclusive: bool,
}

/// Maximum rank over several points, compared with the expected count.
pub fn max_rank(integrals: &[PhaseExpr], points: &[RadialPoint], expected: usize) -> Result<RankReport> {
    let per_point = points.iter().map(|p| independence_rank(integrals, p)).collect::<Result<Vec<_>>>()?;
    let observed = per_point.iter().copied().max().unwrap_or(0);
    Ok(RankReport { expected, observed, per_point, conclusive: observed >= expected })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    #[test]
    fn bareiss_small_cases() {
        assert_eq!(bareiss_rank(mat(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(bareiss_rank(mat(&[&[0, 1, 0], &[1, 0, 0], &[1, 1, 0]])), 2);
        assert_eq!(bareiss_rank(mat(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]])), 3);
        assert_eq!(bareiss_rank(mat(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(bareiss_rank(Vec::new()), 0);
    }
}
