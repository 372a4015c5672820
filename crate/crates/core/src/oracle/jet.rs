//! Second-order Taylor jets at a point: an evaluator for classical
//! expressions that shares no code with the symbolic kernel.
//!
//! A jet stores the value, gradient and Hessian of a function of `(x, p)`
//! at a fixed radial point. Each Poisson bracket consumes one order, and
//! the `valid` field tracks how many orders are still exact, so a value is
//! only trusted while `valid >= 0`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::points::{int, RadialPoint};
use crate::algebra::{Algebra, LieAlgebra};
use crate::error::{Error, Result};
use crate::monomial::Space;
use crate::scalar::{ParamScalar, Rational};

/// Orders carried by every non-constant jet.
const ORDER: i32 = 2;
const EXACT: i32 = i32::MAX;

#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    c0: BigRational,
    c1: Vec<BigRational>,
    /// Upper triangle of the quadratic part: `c2[tri(a, b)]` for `a <= b`
    /// multiplies `z_a z_b`.
    c2: Vec<BigRational>,
    valid: i32,
}

fn tri(a: usize, b: usize) -> usize {
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    b * (b + 1) / 2 + a
}

fn q(v: i64) -> BigRational {
    int(v)
}

fn ratio(r: Rational) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

impl Jet {
    fn constant(nv: usize, c: BigRational) -> Jet {
        Jet { c0: c, c1: vec![BigRational::zero(); nv], c2: vec![BigRational::zero(); nv * (nv + 1) / 2], valid: EXACT }
    }

    /// `c + z_a` for a phase-space variable.
    fn variable(nv: usize, c: BigRational, a: usize) -> Jet {
        let mut j = Jet::constant(nv, c);
        j.c1[a] = BigRational::one();
        j.valid = ORDER;
        j
    }

    fn nv(&self) -> usize {
        self.c1.len()
    }

    /// Value at the expansion point; `None` once no order is exact.
    pub fn value(&self) -> Option<&BigRational> {
        (self.valid >= 0).then_some(&self.c0)
    }

    pub fn valid_order(&self) -> i32 {
        self.valid.min(ORDER)
    }

    fn add(&self, o: &Jet) -> Jet {
        Jet {
            c0: &self.c0 + &o.c0,
            c1: self.c1.iter().zip(&o.c1).map(|(a, b)| a + b).collect(),
            c2: self.c2.iter().zip(&o.c2).map(|(a, b)| a + b).collect(),
            valid: self.valid.min(o.valid),
        }
    }

    fn scale(&self, k: &BigRational) -> Jet {
        Jet {
            c0: &self.c0 * k,
            c1: self.c1.iter().map(|a| a * k).collect(),
            c2: self.c2.iter().map(|a| a * k).collect(),
            valid: self.valid,
        }
    }

    fn mul(&self, o: &Jet) -> Jet {
        let nv = self.nv();
        let valid = self.valid.min(o.valid);
        let mut out = Jet::constant(nv, &self.c0 * &o.c0);
        out.valid = valid;
        if valid < 1 {
            return out;
        }
        for a in 0..nv {
            out.c1[a] = &self.c0 * &o.c1[a] + &self.c1[a] * &o.c0;
        }
        if valid < 2 {
            return out;
        }
        for (k, slot) in out.c2.iter_mut().enumerate() {
            *slot = &self.c0 * &o.c2[k] + &self.c2[k] * &o.c0;
        }
        for a in 0..nv {
            if self.c1[a].is_zero() {
                continue;
            }
            for b in 0..nv {
                if !o.c1[b].is_zero() {
                    out.c2[tri(a, b)] += &self.c1[a] * &o.c1[b];
                }
            }
        }
        out
    }

    fn deriv(&self, a: usize) -> Jet {
        let nv = self.nv();
        let mut out = Jet::constant(nv, self.c1[a].clone());
        for b in 0..nv {
            let c = &self.c2[tri(a, b)];
            out.c1[b] = if a == b { c * q(2) } else { c.clone() };
        }
        out.valid = if self.valid == EXACT { EXACT } else { self.valid - 1 };
        out
    }
}

/// Generalised binomial series `(1 + u)^alpha` to second order, for `u(0) = 0`.
fn binomial_series(u: &Jet, alpha: &BigRational) -> Jet {
    let nv = u.nv();
    let one = Jet::constant(nv, BigRational::one());
    let second = alpha * (alpha - BigRational::one()) / q(2);
    one.add(&u.scale(alpha)).add(&u.mul(u).scale(&second))
}

/// Classical algebra of jets at one radial point.
#[derive(Clone, Debug)]
pub struct JetAlgebra {
    space: Space,
    point: RadialPoint,
}

impl JetAlgebra {
    pub fn new(space: Space, point: RadialPoint) -> Result<JetAlgebra> {
        if !point.is_valid() || point.n() != space.n() {
            return Err(Error::InvalidPoint(format!("{point:?} is not a radial point in {} dimensions", space.n())));
        }
        Ok(JetAlgebra { space, point })
    }

    pub fn point(&self) -> &RadialPoint {
        &self.point
    }

    fn nv(&self) -> usize {
        2 * self.space.n()
    }

    /// `u` with `r = r0 sqrt(1 + u)`.
    fn radial_u(&self) -> Jet {
        let nv = self.nv();
        let r0sq = q(self.point.r * self.point.r);
        let mut sq = Jet::constant(nv, BigRational::zero());
        for (i, &x0) in self.point.x.iter().enumerate() {
            let xi = Jet::variable(nv, q(x0), i);
            sq = sq.add(&xi.mul(&xi));
        }
        let mut u = sq.scale(&r0sq.recip());
        u.c0 = BigRational::zero();
        u
    }
}

impl Algebra for JetAlgebra {
    type Elem = Jet;

    fn space(&self) -> Space {
        self.space
    }

    fn constant(&self, c: &ParamScalar) -> Jet {
        let v = c.eval(&self.point.params());
        assert!(v.im.is_zero(), "classical constants are real, got {c:?}");
        Jet::constant(self.nv(), v.re)
    }

    fn x_pow(&self, i: usize, e: i32) -> Jet {
        let x0 = q(self.point.x[i - 1]);
        let pw = |k: i32| crate::scalar::pow_rat(&x0, k);
        let mut j = Jet::constant(self.nv(), pw(e));
        if e != 0 {
            j.valid = ORDER;
            j.c1[i - 1] = q(e as i64) * pw(e - 1);
            j.c2[tri(i - 1, i - 1)] = q((e as i64) * (e as i64 - 1)) / q(2) * pw(e - 2);
        }
        j
    }

    fn momentum(&self, i: usize) -> Jet {
        Jet::variable(self.nv(), q(self.point.p[i - 1]), self.space.n() + i - 1)
    }

    fn r_pow(&self, e: i32) -> Jet {
        let r0 = q(self.point.r);
        let alpha = BigRational::new(BigInt::from(e), BigInt::from(2));
        binomial_series(&self.radial_u(), &alpha).scale(&crate::scalar::pow_rat(&r0, e))
    }

    fn potential(&self) -> Result<Jet> {
        let v = |k: usize| q(self.point.v.get(k).copied().unwrap_or(0));
        let mut delta = self.r_pow(1);
        delta.c0 = BigRational::zero();
        let nv = self.nv();
        Ok(Jet::constant(nv, v(0)).add(&delta.scale(&v(1))).add(&delta.mul(&delta).scale(&(v(2) / q(2)))))
    }

    fn add(&self, a: &Jet, b: &Jet) -> Jet {
        a.add(b)
    }

    fn neg(&self, a: &Jet) -> Jet {
        a.scale(&-BigRational::one())
    }

    fn scale(&self, a: &Jet, k: Rational) -> Jet {
        a.scale(&ratio(k))
    }

    fn mul(&self, a: &Jet, b: &Jet) -> Result<Jet> {
        Ok(a.mul(b))
    }
}

impl LieAlgebra for JetAlgebra {
    const QUANTUM: bool = false;

    fn lie(&self, f: &Jet, g: &Jet) -> Result<Jet> {
        let n = self.space.n();
        let mut acc = Jet::constant(self.nv(), BigRational::zero());
        for i in 0..n {
            let t1 = f.deriv(i).mul(&g.deriv(n + i));
            let t2 = f.deriv(n + i).mul(&g.deriv(i));
            acc = acc.add(&t1).add(&t2.scale(&-BigRational::one()));
        }
        if acc.valid < 0 {
            return Err(Error::Config("jet order exhausted: bracket nesting exceeds the expansion order".into()));
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase::{PhaseExpr, Var};

    fn point() -> RadialPoint {
        RadialPoint { x: vec![1, 2, 2], p: vec![3, -1, 2], r: 3, hbar: 1, omega: 2, mu: 3, a: vec![1, 2, 3], v: vec![2, 5, 7, 1] }
    }

    #[test]
    fn radial_derivative_matches_kernel() {
        let space = Space::new(3, 2).unwrap();
        let alg = JetAlgebra::new(space, point()).unwrap();
        // {r, p_1} = x_1 / r
        let br = alg.lie(&alg.r_pow(1), &alg.momentum(1)).unwrap();
        assert_eq!(br.value().unwrap(), &BigRational::new(1.into(), 3.into()));
        let sym = PhaseExpr::r_pow(space, -3).try_mul(&PhaseExpr::x(space, 2).unwrap()).unwrap();
        let d = sym.diff(Var::X(2)).unwrap().eval(&point().to_eval()).unwrap();
        let jet = alg.r_pow(-3).mul(&alg.x_pow(2, 1));
        assert_eq!(jet.deriv(1).value().unwrap(), &d.re);
    }

    #[test]
    fn potential_chain_rule() {
        let space = Space::new(3, 2).unwrap();
        let alg = JetAlgebra::new(space, point()).unwrap();
        // d V / d x_1 = V'(r) x_1 / r
        let v = alg.potential().unwrap();
        assert_eq!(v.deriv(0).value().unwrap(), &(q(5) * q(1) / q(3)));
    }

    #[test]
    fn orders_are_consumed() {
        let space = Space::new(3, 2).unwrap();
        let alg = JetAlgebra::new(space, point()).unwrap();
        let a = alg.lie(&alg.momentum(1), &alg.x_pow(1, 2)).unwrap();
        let b = alg.lie(&a, &alg.momentum(1)).unwrap();
        assert_eq!(b.valid_order(), 0);
        assert!(alg.lie(&b, &alg.momentum(2)).is_err());
    }
}
