//! Commutative ring of classical observables.
//!
//! Elements are Laurent polynomials in `x_1..x_n`, polynomials in
//! `p_1..p_n`, extended by the radius `r` (with `r^2 = sum x_i^2`) and the
//! radial-potential tower `V^(0)..V^(K)`, where
//! `dV^(k)/dx_i = V^(k+1) x_i / r`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, Space};
use crate::poly::{accumulate, Acc, Poly};
use crate::scalar::{big, gaussian_to_gi, pow_rat, GaussianRational, Gi, Param, ParamScalar, ParamValues, Rational};

/// Differentiation variable, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X(usize),
    P(usize),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PhaseExpr {
    space: Space,
    poly: Arc<Poly>,
}

/// Exact assignment of every symbol, used by [`PhaseExpr::eval`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalPoint {
    pub x: Vec<BigRational>,
    pub p: Vec<BigRational>,
    pub r: BigRational,
    /// Values of `V^(0)..V^(K)`; missing entries read as zero.
    pub v: Vec<BigRational>,
    pub params: ParamValues,
}

impl EvalPoint {
    pub(crate) fn validate(&self, n: usize) -> Result<()> {
        if self.x.len() != n || self.p.len() != n {
            return Err(Error::InvalidPoint(format!("expected {n} coordinates and momenta")));
        }
        if let Some(i) = self.x.iter().position(|v| v.is_zero()) {
            return Err(Error::InvalidPoint(format!("coordinate x{} is zero", i + 1)));
        }
        let norm: BigRational = self.x.iter().map(|v| v * v).sum();
        if self.r <= BigRational::zero() || &self.r * &self.r != norm {
            return Err(Error::InvalidPoint(format!("r = {} but sum of squares is {}", self.r, norm)));
        }
        Ok(())
    }
}

pub(crate) fn constant_poly(space: Space, c: &ParamScalar) -> Poly {
    let mut acc = Acc::default();
    let mut den: i128 = 1;
    let parts: Vec<(Monomial, Gi, i128)> = c
        .terms()
        .map(|(pm, g)| {
            let (num, d) = gaussian_to_gi(g).expect("constant does not fit the exact coefficient range");
            (Monomial { s: *pm, ..Monomial::ONE }, num, d)
        })
        .collect();
    for (_, _, d) in &parts {
        den = num_integer::lcm(den, *d);
    }
    for (m, num, d) in parts {
        accumulate(&mut acc, m, num.scale(den / d));
    }
    Poly::from_acc(acc, den, space)
}

impl PhaseExpr {
    pub(crate) fn from_poly(space: Space, poly: Poly) -> PhaseExpr {
        PhaseExpr { space, poly: Arc::new(poly) }
    }

    pub(crate) fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn zero(space: Space) -> PhaseExpr {
        Self::from_poly(space, Poly::zero())
    }

    pub fn one(space: Space) -> PhaseExpr {
        Self::int(space, 1)
    }

    pub fn int(space: Space, k: i64) -> PhaseExpr {
        Self::from_poly(space, Poly::monomial(Monomial::ONE, Gi::int(k as i128), 1, space))
    }

    pub fn constant(space: Space, c: &ParamScalar) -> PhaseExpr {
        Self::from_poly(space, constant_poly(space, c))
    }

    pub fn param(space: Space, p: Param) -> Result<PhaseExpr> {
        if let Param::A(i) = p {
            space.check_index(i)?;
        }
        Ok(Self::from_poly(space, Poly::monomial(Monomial::ONE.with_param(p, 1), Gi::ONE, 1, space)))
    }

    pub fn x(space: Space, i: usize) -> Result<PhaseExpr> {
        Self::x_pow(space, i, 1)
    }

    pub fn x_pow(space: Space, i: usize, e: i32) -> Result<PhaseExpr> {
        let i = space.check_index(i)?;
        Ok(Self::from_poly(space, Poly::monomial(Monomial::ONE.with_x(i, e), Gi::ONE, 1, space)))
    }

    pub fn p(space: Space, i: usize) -> Result<PhaseExpr> {
        Self::p_pow(space, i, 1)
    }

    pub fn p_pow(space: Space, i: usize, e: u32) -> Result<PhaseExpr> {
        let i = space.check_index(i)?;
        Ok(Self::from_poly(space, Poly::monomial(Monomial::ONE.with_p(i, e), Gi::ONE, 1, space)))
    }

    pub fn r(space: Space) -> PhaseExpr {
        Self::r_pow(space, 1)
    }

    pub fn r_pow(space: Space, e: i32) -> PhaseExpr {
        Self::from_poly(space, Poly::monomial(Monomial::ONE.with_r(e), Gi::ONE, 1, space))
    }

    /// The `k`-th derivative symbol `V^(k)` of the radial potential.
    pub fn v(space: Space, k: usize) -> Result<PhaseExpr> {
        if k > space.tower() {
            return Err(Error::TowerExhausted { needed: k, depth: space.tower() });
        }
        Ok(Self::from_poly(space, Poly::monomial(Monomial::ONE.with_v(k, 1), Gi::ONE, 1, space)))
    }

    /// Build from explicit terms; monomials must fit the ring.
    pub fn from_terms(space: Space, terms: impl IntoIterator<Item = (Monomial, GaussianRational)>) -> Result<PhaseExpr> {
        let mut out = Poly::zero();
        for (m, c) in terms {
            if !m.fits(space) {
                return Err(Error::Dimension(format!("monomial {m:?} does not fit {space:?}")));
            }
            let (num, den) = gaussian_to_gi(&c).ok_or_else(|| Error::Config("coefficient too large".into()))?;
            out = out.add(&Poly::monomial(m, num, den, space));
        }
        Ok(Self::from_poly(space, out))
    }

    /// Terms in canonical order with their exact coefficients.
    pub fn terms(&self) -> Vec<(Monomial, GaussianRational)> {
        self.poly.terms.iter().map(|(m, c)| (*m, c.to_gaussian(self.poly.den))).collect()
    }

    pub fn len(&self) -> usize {
        self.poly.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poly.is_empty()
    }

    /// Coefficient of `m` in the stored representation.
    pub fn coefficient(&self, m: &Monomial) -> GaussianRational {
        match self.poly.terms.binary_search_by(|(k, _)| k.cmp(m)) {
            Ok(ix) => self.poly.terms[ix].1.to_gaussian(self.poly.den),
            Err(_) => GaussianRational::zero(),
        }
    }

    pub fn try_add(&self, o: &PhaseExpr) -> Result<PhaseExpr> {
        self.space.check(o.space)?;
        Ok(Self::from_poly(self.space, self.poly.add(&o.poly)))
    }

    pub fn try_sub(&self, o: &PhaseExpr) -> Result<PhaseExpr> {
        self.space.check(o.space)?;
        Ok(Self::from_poly(self.space, self.poly.add(&o.poly.neg())))
    }

    pub fn try_mul(&self, o: &PhaseExpr) -> Result<PhaseExpr> {
        self.space.check(o.space)?;
        let mut acc = Acc::default();
        mul_into(&mut acc, &self.poly.terms, &o.poly.terms, Gi::ONE);
        Ok(Self::from_poly(self.space, Poly::from_acc(acc, self.poly.den * o.poly.den, self.space)))
    }

    pub fn scale(&self, q: Rational) -> PhaseExpr {
        Self::from_poly(self.space, self.poly.scale(*q.numer() as i128, *q.denom() as i128))
    }

    pub fn scale_int(&self, k: i64) -> PhaseExpr {
        Self::from_poly(self.space, self.poly.scale(k as i128, 1))
    }

    pub fn mul_scalar(&self, c: &ParamScalar) -> PhaseExpr {
        self.try_mul(&Self::constant(self.space, c)).expect("same space")
    }

    pub fn pow(&self, e: u32) -> PhaseExpr {
        let mut acc = Self::one(self.space);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact partial derivative.
    pub fn diff(&self, var: Var) -> Result<PhaseExpr> {
        let terms = diff_terms(self.space, &self.poly.terms, var)?;
        let mut acc = Acc::default();
        for (m, c) in terms {
            accumulate(&mut acc, m, c);
        }
        Ok(Self::from_poly(self.space, Poly::from_acc(acc, self.poly.den, self.space)))
    }

    /// Canonical Poisson bracket `sum_i (df/dx_i dg/dp_i - df/dp_i dg/dx_i)`.
    pub fn poisson(&self, g: &PhaseExpr) -> Result<PhaseExpr> {
        self.space.check(g.space)?;
        let mut acc = Acc::default();
        for i in 1..=self.space.n() {
            let fp = diff_terms(self.space, &self.poly.terms, Var::P(i))?;
            let gp = diff_terms(self.space, &g.poly.terms, Var::P(i))?;
            if fp.is_empty() && gp.is_empty() {
                continue;
            }
            if !gp.is_empty() {
                let fx = diff_terms(self.space, &self.poly.terms, Var::X(i))?;
                mul_into(&mut acc, &fx, &gp, Gi::ONE);
            }
            if !fp.is_empty() {
                let gx = diff_terms(self.space, &g.poly.terms, Var::X(i))?;
                mul_into(&mut acc, &fp, &gx, Gi::int(-1));
            }
        }
        Ok(Self::from_poly(self.space, Poly::from_acc(acc, self.poly.den * g.poly.den, self.space)))
    }

    /// Zero test in the quotient ring by `r^2 - sum x_i^2`.
    pub fn is_zero(&self) -> bool {
        self.poly.is_zero_mod_radial(self.space)
    }

    /// Semantic equality (difference is zero in the quotient ring).
    pub fn equivalent(&self, o: &PhaseExpr) -> Result<bool> {
        Ok(self.try_sub(o)?.is_zero())
    }

    /// Set the given parameters to zero.
    pub fn without_params(&self, params: &[Param]) -> PhaseExpr {
        let slots: Vec<usize> = params.iter().map(|p| p.slot()).collect();
        Self::from_poly(
            self.space,
            self.poly.remap(self.space, |m, c| if slots.iter().any(|&s| m.s[s] != 0) { None } else { Some((*m, c)) }),
        )
    }

    /// Exact value at a point satisfying `r^2 = sum x_i^2`.
    pub fn eval(&self, point: &EvalPoint) -> Result<GaussianRational> {
        point.validate(self.space.n())?;
        let den = BigRational::from_integer(big(self.poly.den));
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.poly.terms {
            acc = acc.add(&c.to_gaussian(1).scale(&eval_monomial(m, point, self.space)?));
        }
        Ok(acc.scale(&den.recip()))
    }

    /// Maximal total momentum degree.
    pub fn momentum_degree(&self) -> u32 {
        self.poly.terms.iter().map(|(m, _)| m.p.iter().map(|&e| e as u32).sum::<u32>()).max().unwrap_or(0)
    }
}

pub(crate) fn eval_monomial(m: &Monomial, point: &EvalPoint, space: Space) -> Result<BigRational> {
    let mut v = BigRational::one();
    for i in 0..space.n() {
        if m.x[i] != 0 {
            v *= pow_rat(&point.x[i], m.x[i] as i32);
        }
        if m.p[i] != 0 {
            v *= pow_rat(&point.p[i], m.p[i] as i32);
        }
    }
    if m.r != 0 {
        v *= pow_rat(&point.r, m.r as i32);
    }
    for (k, e) in m.v.iter().enumerate() {
        if *e != 0 {
            let val = point.v.get(k).cloned().unwrap_or_else(BigRational::zero);
            v *= pow_rat(&val, *e as i32);
        }
    }
    for (slot, e) in m.s.iter().enumerate() {
        if *e != 0 {
            v *= pow_rat(&point.params.get(Param::from_slot(slot)), *e as i32);
        }
    }
    Ok(v)
}

/// Raw derivative terms over the input's denominator (not canonicalised).
pub(crate) fn diff_terms(space: Space, terms: &[(Monomial, Gi)], var: Var) -> Result<Vec<(Monomial, Gi)>> {
    let mut out = Vec::with_capacity(terms.len() * 2);
    match var {
        Var::P(i) => {
            let i = space.check_index(i)?;
            for (m, c) in terms {
                let e = m.p[i];
                if e != 0 {
                    let mut m2 = *m;
                    m2.p[i] = e - 1;
                    out.push((m2, c.scale(e as i128)));
                }
            }
        }
        Var::X(i) => {
            let i = space.check_index(i)?;
            for (m, c) in terms {
                diff_position(space, m, *c, i, &mut out)?;
            }
        }
    }
    Ok(out)
}

/// Push the terms of `d(c m)/dx_i` (0-based `i`), chain rule included.
#[inline]
pub(crate) fn diff_position(space: Space, m: &Monomial, c: Gi, i: usize, out: &mut Vec<(Monomial, Gi)>) -> Result<()> {
    let e = m.x[i];
    if e != 0 {
        let mut m2 = *m;
        m2.x[i] = e - 1;
        out.push((m2, c.scale(e as i128)));
    }
    if m.r != 0 {
        let mut m2 = *m;
        m2.x[i] = m2.x[i].checked_add(1).expect("x exponent overflow");
        m2.r -= 2;
        out.push((m2, c.scale(m.r as i128)));
    }
    for k in 0..=space.tower() {
        let e = m.v[k];
        if e == 0 {
            continue;
        }
        if k == space.tower() {
            return Err(Error::TowerExhausted { needed: k + 1, depth: space.tower() });
        }
        let mut m2 = *m;
        m2.v[k] -= 1;
        m2.v[k + 1] += 1;
        m2.x[i] = m2.x[i].checked_add(1).expect("x exponent overflow");
        m2.r -= 1;
        out.push((m2, c.scale(e as i128)));
    }
    Ok(())
}

pub(crate) fn mul_into(acc: &mut Acc, a: &[(Monomial, Gi)], b: &[(Monomial, Gi)], sign: Gi) {
    acc.reserve(a.len().min(4096) * b.len().min(64));
    for (ma, ca) in a {
        let ca = ca.mul(sign);
        for (mb, cb) in b {
            accumulate(acc, ma.mul(mb), ca.mul(*cb));
        }
    }
}

impl fmt::Display for PhaseExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_poly(&self.poly, self.space, crate::text::Layout::Phase))
    }
}

impl fmt::Debug for PhaseExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PhaseExpr({self})")
    }
}

impl PhaseExpr {
    /// Parse the textual format produced by `Display`.
    pub fn parse(space: Space, s: &str) -> Result<PhaseExpr> {
        Self::from_terms(space, crate::text::parse_terms(s, space)?)
    }
}

impl Add for &PhaseExpr {
    type Output = PhaseExpr;
    fn add(self, o: &PhaseExpr) -> PhaseExpr {
        self.try_add(o).expect("ring mismatch in addition")
    }
}

impl Sub for &PhaseExpr {
    type Output = PhaseExpr;
    fn sub(self, o: &PhaseExpr) -> PhaseExpr {
        self.try_sub(o).expect("ring mismatch in subtraction")
    }
}

impl Mul for &PhaseExpr {
    type Output = PhaseExpr;
    fn mul(self, o: &PhaseExpr) -> PhaseExpr {
        self.try_mul(o).expect("ring mismatch in multiplication")
    }
}

impl Neg for &PhaseExpr {
    type Output = PhaseExpr;
    fn neg(self) -> PhaseExpr {
        PhaseExpr::from_poly(self.space, self.poly.neg())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn s3() -> Space {
        Space::new(3, 2).unwrap()
    }

    fn rat(k: i64) -> BigRational {
        BigRational::from_i64(k).unwrap()
    }

    fn sum_sq(space: Space) -> PhaseExpr {
        (1..=space.n()).fold(PhaseExpr::zero(space), |acc, i| &acc + &PhaseExpr::x_pow(space, i, 2).unwrap())
    }

    #[test]
    fn add_cancels_and_reduces_r() {
        let s = s3();
        let x1 = PhaseExpr::x(s, 1).unwrap();
        assert!((&x1 + &(-&x1)).is_empty());
        let r3 = PhaseExpr::r_pow(s, 3);
        let expect = &PhaseExpr::r(s) * &sum_sq(s);
        assert_eq!(&r3 + &PhaseExpr::zero(s), expect);
        let a1 = PhaseExpr::param(s, Param::A(1)).unwrap().scale(Rational::new(1, 4));
        let a2 = PhaseExpr::param(s, Param::A(2)).unwrap().scale(Rational::new(1, 4));
        let sum = &a1 + &a2;
        let both = (&PhaseExpr::param(s, Param::A(1)).unwrap() + &PhaseExpr::param(s, Param::A(2)).unwrap())
            .scale(Rational::new(1, 4));
        assert_eq!(sum, both);
    }

    #[test]
    fn mul_examples() {
        let s = s3();
        assert_eq!(&PhaseExpr::r(s) * &PhaseExpr::r(s), sum_sq(s));
        assert_eq!(&PhaseExpr::r(s) * &PhaseExpr::r_pow(s, -1), PhaseExpr::one(s));
        let x1m2 = PhaseExpr::x_pow(s, 1, -2).unwrap();
        assert_eq!(&x1m2 * &PhaseExpr::x_pow(s, 1, 2).unwrap(), PhaseExpr::one(s));
    }

    #[test]
    fn diff_examples() {
        let s = s3();
        let d = PhaseExpr::r(s).diff(Var::X(1)).unwrap();
        assert_eq!(d, &PhaseExpr::x(s, 1).unwrap() * &PhaseExpr::r_pow(s, -1));
        let d = PhaseExpr::x_pow(s, 1, -2).unwrap().diff(Var::X(1)).unwrap();
        assert_eq!(d, PhaseExpr::x_pow(s, 1, -3).unwrap().scale_int(-2));
        let d = PhaseExpr::v(s, 0).unwrap().diff(Var::X(2)).unwrap();
        let expect = &(&PhaseExpr::v(s, 1).unwrap() * &PhaseExpr::x(s, 2).unwrap()) * &PhaseExpr::r_pow(s, -1);
        assert_eq!(d, expect);
    }

    #[test]
    fn tower_exhaustion_is_an_error() {
        let s = Space::new(3, 1).unwrap();
        let v1 = PhaseExpr::v(s, 1).unwrap();
        assert_eq!(v1.diff(Var::X(1)), Err(Error::TowerExhausted { needed: 2, depth: 1 }));
        assert!(PhaseExpr::v(s, 2).is_err());
    }

    #[test]
    fn poisson_examples() {
        let s = s3();
        let x1 = PhaseExpr::x(s, 1).unwrap();
        let p1 = PhaseExpr::p(s, 1).unwrap();
        assert_eq!(x1.poisson(&p1).unwrap(), PhaseExpr::one(s));
        // {x1^2/2, (p1^2 + a1 x1^-2)/2} = x1 p1
        let jm = PhaseExpr::x_pow(s, 1, 2).unwrap().scale(Rational::new(1, 2));
        let a1 = PhaseExpr::param(s, Param::A(1)).unwrap();
        let jp = (&PhaseExpr::p_pow(s, 1, 2).unwrap() + &(&a1 * &PhaseExpr::x_pow(s, 1, -2).unwrap()))
            .scale(Rational::new(1, 2));
        assert_eq!(jm.poisson(&jp).unwrap(), &x1 * &p1);
        let pr = PhaseExpr::r(s).poisson(&p1).unwrap();
        assert_eq!(pr, &x1 * &PhaseExpr::r_pow(s, -1));
    }

    #[test]
    fn zero_test_examples() {
        let s = s3();
        let e = &(&sum_sq(s) * &PhaseExpr::r_pow(s, -2)) - &PhaseExpr::one(s);
        assert!(!e.is_empty());
        assert!(e.is_zero());
        let x = |i, k| PhaseExpr::x_pow(s, i, k).unwrap();
        let rhs = [PhaseExpr::r(s), x(1, -1), &x(1, 2) * &x(2, -2), &x(2, 2) * &x(1, -2), x(1, 2), PhaseExpr::r_pow(s, -2)]
            .iter()
            .fold(PhaseExpr::one(s), |acc, f| &acc * f);
        let lhs = &x(1, 1) * &PhaseExpr::r_pow(s, -1);
        assert!((&lhs - &rhs).is_zero());
        assert!(!(&PhaseExpr::r_pow(s, -1) - &x(1, -1)).is_zero());
    }

    #[test]
    fn eval_examples() {
        let s = s3();
        let point = EvalPoint {
            x: vec![rat(1), rat(2), rat(2)],
            p: vec![rat(1), rat(0), rat(0)],
            r: rat(3),
            v: vec![],
            params: ParamValues { hbar: rat(1), omega: rat(1), mu: rat(1), a: vec![rat(0); 3] },
        };
        assert_eq!(PhaseExpr::r(s).eval(&point).unwrap(), GaussianRational::from_int(3));
        assert_eq!(PhaseExpr::zero(s).eval(&point).unwrap(), GaussianRational::zero());
        let mut bad = point.clone();
        bad.r = rat(4);
        assert!(PhaseExpr::r(s).eval(&bad).is_err());
        bad.r = rat(3);
        bad.x[0] = rat(0);
        assert!(PhaseExpr::r(s).eval(&bad).is_err());
    }
}
