//! Integer phase-space points with an integer radius.

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::phase::EvalPoint;
use crate::scalar::ParamValues;

const MAX_ATTEMPTS: usize = 2_000_000;
/// Values `V(r), V'(r), ...` drawn for the generic potential.
const TOWER_VALUES: usize = 4;

/// A point with nonzero integer coordinates and `r^2 = sum x_i^2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RadialPoint {
    pub x: Vec<i64>,
    pub p: Vec<i64>,
    pub r: i64,
    pub hbar: i64,
    pub omega: i64,
    pub mu: i64,
    pub a: Vec<i64>,
    /// Sampled values of the radial potential and its derivatives at `r`.
    pub v: Vec<i64>,
}

impl RadialPoint {
    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn is_valid(&self) -> bool {
        self.r > 0 && self.x.iter().all(|&v| v != 0) && self.x.iter().map(|v| v * v).sum::<i64>() == self.r * self.r
    }

    pub fn params(&self) -> ParamValues {
        ParamValues { hbar: int(self.hbar), omega: int(self.omega), mu: int(self.mu), a: self.a.iter().map(|&v| int(v)).collect() }
    }

    /// The exact evaluation point used by [`crate::PhaseExpr::eval`].
    pub fn to_eval(&self) -> EvalPoint {
        EvalPoint {
            x: self.x.iter().map(|&v| int(v)).collect(),
            p: self.p.iter().map(|&v| int(v)).collect(),
            r: int(self.r),
            v: self.v.iter().map(|&v| int(v)).collect(),
            params: self.params(),
        }
    }

    /// The same point with every momentum set to zero.
    pub fn at_rest(&self) -> RadialPoint {
        RadialPoint { p: vec![0; self.n()], ..self.clone() }
    }
}

pub(crate) fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Rejection-sample `count` radial points in `[-bound, bound]^n`.
pub fn sample_radial_points(n: usize, count: usize, seed: u64, bound: i64) -> Result<Vec<RadialPoint>> {
    if bound < 3 {
        return Err(Error::Config(format!("coordinate bound must be at least 3, got {bound}")));
    }
    if n == 0 {
        return Err(Error::Dimension("n must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count {
        let x: Vec<i64> = (0..n)
            .map(|_| {
                let v = rng.gen_range(1..=bound);
                if rng.gen_bool(0.5) {
                    -v
                } else {
                    v
                }
            })
            .collect();
        attempts += 1;
        let sq: i64 = x.iter().map(|v| v * v).sum();
        let r = sq.sqrt();
        if r * r != sq {
            if attempts >= MAX_ATTEMPTS {
                return Err(Error::SamplingExhausted { attempts });
            }
            continue;
        }
        let p = (0..n).map(|_| rng.gen_range(-9..=9)).collect();
        let mut small = || rng.gen_range(1..=9);
        out.push(RadialPoint {
            x,
            p,
            r,
            hbar: small(),
            omega: small(),
            mu: small(),
            a: (0..n).map(|_| small()).collect(),
            v: (0..TOWER_VALUES).map(|_| small()).collect(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_are_radial_and_seeded() {
        for n in 3..=5 {
            let pts = sample_radial_points(n, 10, 11, 9).unwrap();
            assert!(pts.iter().all(RadialPoint::is_valid));
            assert_eq!(pts, sample_radial_points(n, 10, 11, 9).unwrap());
        }
    }

    #[test]
    fn small_bound_is_rejected() {
        assert!(sample_radial_points(3, 1, 0, 2).is_err());
    }

    #[test]
    fn known_radial_points() {
        let make = |x: Vec<i64>, r| RadialPoint { p: vec![0; x.len()], a: vec![1; x.len()], x, r, hbar: 1, omega: 1, mu: 1, v: vec![] };
        assert!(make(vec![1, 2, 2], 3).is_valid());
        assert!(make(vec![1, 2, 4, 10], 11).is_valid());
        assert!(make(vec![1, 1, 3, 5, 8], 10).is_valid());
        assert!(!make(vec![1, 2, 3], 4).is_valid());
    }
}
