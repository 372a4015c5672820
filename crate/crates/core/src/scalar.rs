//! Exact coefficients.
//!
//! Two coefficient representations live here. [`GaussianRational`] and
//! [`ParamScalar`] are the public, arbitrary-precision types used for
//! constants, evaluation and printing. [`Gi`] is the Gaussian integer used
//! inside expression storage, where every expression carries one common
//! positive denominator.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::monomial::{MAX_N, N_PARAMS};

/// Small exact rational used for scalar factors in builders.
pub type Rational = Ratio<i64>;

/// Formal parameters appearing in the coefficient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Param {
    Hbar,
    Omega,
    Mu,
    /// Coupling `a_i` of the non-central term, 1-based.
    A(usize),
}

impl Param {
    pub(crate) fn slot(self) -> usize {
        match self {
            Param::Hbar => 0,
            Param::Omega => 1,
            Param::Mu => 2,
            Param::A(i) => {
                assert!((1..=MAX_N).contains(&i), "parameter a{i} out of range");
                2 + i
            }
        }
    }

    pub(crate) fn from_slot(slot: usize) -> Param {
        match slot {
            0 => Param::Hbar,
            1 => Param::Omega,
            2 => Param::Mu,
            s => Param::A(s - 2),
        }
    }

    pub fn name(self) -> String {
        match self {
            Param::Hbar => "hbar".into(),
            Param::Omega => "omega".into(),
            Param::Mu => "mu".into(),
            Param::A(i) => format!("a{i}"),
        }
    }
}

/// Exponent vector over the formal parameters.
pub type ParamMonomial = [u8; N_PARAMS];

/// `a + b i` with `a, b` arbitrary-precision rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussianRational { re, im: BigRational::zero() }
    }

    pub fn from_int(k: i64) -> Self {
        Self::real(BigRational::from_integer(k.into()))
    }

    pub fn i() -> Self {
        GaussianRational { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn zero() -> Self {
        Self::default_zero()
    }

    fn default_zero() -> Self {
        GaussianRational { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        GaussianRational { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn sub(&self, o: &Self) -> Self {
        GaussianRational { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return Self::real(&self.re * &o.re);
        }
        GaussianRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn neg(&self) -> Self {
        GaussianRational { re: -&self.re, im: -&self.im }
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -&self.im }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        GaussianRational { re: &self.re * q, im: &self.im * q }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(GaussianRational { re: &self.re / &norm, im: -&self.im / &norm })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den = self.re.denom().lcm(self.im.denom());
        let a = (&self.re * BigRational::from_integer(den.clone())).to_integer();
        let b = (&self.im * BigRational::from_integer(den.clone())).to_integer();
        f.write_str(&crate::text::format_gaussian(&a, &b, &den))
    }
}

/// Exact coefficient: a finite sum of Gaussian-rational multiples of
/// parameter monomials.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ParamScalar {
    terms: BTreeMap<ParamMonomial, GaussianRational>,
}

impl ParamScalar {
    pub fn zero() -> Self {
        ParamScalar::default()
    }

    pub fn from_gaussian(c: GaussianRational) -> Self {
        let mut s = ParamScalar::default();
        s.push([0; N_PARAMS], c);
        s
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_gaussian(GaussianRational::from_int(k))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_gaussian(GaussianRational::real(BigRational::new(num.into(), den.into())))
    }

    pub fn i() -> Self {
        Self::from_gaussian(GaussianRational::i())
    }

    pub fn param(p: Param) -> Self {
        Self::param_pow(p, 1)
    }

    pub fn param_pow(p: Param, e: u8) -> Self {
        let mut m = [0u8; N_PARAMS];
        m[p.slot()] = e;
        let mut s = ParamScalar::default();
        s.push(m, GaussianRational::one());
        s
    }

    fn push(&mut self, m: ParamMonomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(GaussianRational::zero);
        *entry = entry.add(&c);
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ParamMonomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.push(*m, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        ParamScalar { terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = ParamScalar::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let mut m = *ma;
                for (e, f) in m.iter_mut().zip(mb) {
                    *e = e.checked_add(*f).expect("parameter exponent overflow");
                }
                out.push(m, ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let mut out = ParamScalar::default();
        for (m, c) in &self.terms {
            out.push(*m, c.scale(q));
        }
        out
    }

    /// Value with every parameter specialised.
    pub fn eval(&self, values: &ParamValues) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (slot, e) in m.iter().enumerate() {
                if *e > 0 {
                    let v = values.get(Param::from_slot(slot));
                    t = t.scale(&pow_rat(&v, *e as i32));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }
}

/// Numerical values for the formal parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamValues {
    pub hbar: BigRational,
    pub omega: BigRational,
    pub mu: BigRational,
    pub a: Vec<BigRational>,
}

impl ParamValues {
    pub fn get(&self, p: Param) -> BigRational {
        match p {
            Param::Hbar => self.hbar.clone(),
            Param::Omega => self.omega.clone(),
            Param::Mu => self.mu.clone(),
            Param::A(i) => self.a.get(i - 1).cloned().unwrap_or_else(BigRational::zero),
        }
    }
}

pub(crate) fn pow_rat(v: &BigRational, e: i32) -> BigRational {
    let mut acc = BigRational::one();
    let base = if e < 0 { v.recip() } else { v.clone() };
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

pub(crate) fn big(k: i128) -> BigInt {
    BigInt::from(k)
}

#[inline]
pub(crate) fn ck(v: Option<i128>) -> i128 {
    match v {
        Some(v) => v,
        None => panic!("exact coefficient overflowed the 128-bit range"),
    }
}

/// Gaussian integer with checked 128-bit components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub(crate) struct Gi {
    pub re: i128,
    pub im: i128,
}

impl Gi {
    pub const ONE: Gi = Gi { re: 1, im: 0 };

    #[inline]
    pub fn int(k: i128) -> Gi {
        Gi { re: k, im: 0 }
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    #[inline]
    pub fn add(self, o: Gi) -> Gi {
        Gi { re: ck(self.re.checked_add(o.re)), im: ck(self.im.checked_add(o.im)) }
    }

    #[inline]
    pub fn neg(self) -> Gi {
        Gi { re: -self.re, im: -self.im }
    }

    #[inline]
    pub fn conj(self) -> Gi {
        Gi { re: self.re, im: -self.im }
    }

    #[inline]
    pub fn scale(self, k: i128) -> Gi {
        Gi { re: ck(self.re.checked_mul(k)), im: ck(self.im.checked_mul(k)) }
    }

    #[inline]
    pub fn mul(self, o: Gi) -> Gi {
        if self.im == 0 && o.im == 0 {
            return Gi { re: ck(self.re.checked_mul(o.re)), im: 0 };
        }
        if self.im == 0 {
            return o.scale(self.re);
        }
        if o.im == 0 {
            return self.scale(o.re);
        }
        let rr = ck(self.re.checked_mul(o.re));
        let ii = ck(self.im.checked_mul(o.im));
        let ri = ck(self.re.checked_mul(o.im));
        let ir = ck(self.im.checked_mul(o.re));
        Gi { re: ck(rr.checked_sub(ii)), im: ck(ri.checked_add(ir)) }
    }

    /// `(-i)^k`.
    #[inline]
    pub fn minus_i_pow(k: u32) -> Gi {
        match k % 4 {
            0 => Gi { re: 1, im: 0 },
            1 => Gi { re: 0, im: -1 },
            2 => Gi { re: -1, im: 0 },
            _ => Gi { re: 0, im: 1 },
        }
    }

    /// Multiply by `-i`.
    #[inline]
    pub fn times_minus_i(self) -> Gi {
        Gi { re: self.im, im: -self.re }
    }

    pub fn content_gcd(self, g: i128) -> i128 {
        g.gcd(&self.re).gcd(&self.im)
    }

    pub fn div_exact(self, k: i128) -> Gi {
        debug_assert!(self.re % k == 0 && self.im % k == 0);
        Gi { re: self.re / k, im: self.im / k }
    }

    pub fn to_gaussian(self, den: i128) -> GaussianRational {
        GaussianRational {
            re: BigRational::new(big(self.re), big(den)),
            im: BigRational::new(big(self.im), big(den)),
        }
    }
}

/// Convert an arbitrary-precision Gaussian rational to `(numerator, denominator)`
/// with a common positive denominator, failing when it does not fit.
pub(crate) fn gaussian_to_gi(c: &GaussianRational) -> Option<(Gi, i128)> {
    let den = c.re.denom().lcm(c.im.denom());
    let a = (&c.re * BigRational::from_integer(den.clone())).to_integer();
    let b = (&c.im * BigRational::from_integer(den.clone())).to_integer();
    let den = den.abs();
    Some((Gi { re: a.to_i128()?, im: b.to_i128()? }, den.to_i128()?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_arithmetic() {
        let i = GaussianRational::i();
        assert_eq!(i.mul(&i), GaussianRational::from_int(-1));
        let z = GaussianRational::new(BigRational::new(1.into(), 2.into()), BigRational::from_integer(3.into()));
        let inv = z.inv().unwrap();
        assert_eq!(z.mul(&inv), GaussianRational::one());
        assert!(GaussianRational::zero().inv().is_none());
    }

    #[test]
    fn param_scalar_combines_like_terms() {
        let a1 = ParamScalar::param(Param::A(1)).scale(&BigRational::new(1.into(), 4.into()));
        let a2 = ParamScalar::param(Param::A(2)).scale(&BigRational::new(1.into(), 4.into()));
        let s = a1.add(&a2);
        assert_eq!(s.terms().count(), 2);
        assert!(s.sub(&a1).sub(&a2).is_zero());
    }

    #[test]
    fn gi_units() {
        assert_eq!(Gi::minus_i_pow(2), Gi::int(-1));
        assert_eq!(Gi::minus_i_pow(1).mul(Gi::minus_i_pow(3)), Gi::ONE);
        assert_eq!(Gi::int(3).times_minus_i(), Gi { re: 0, im: -3 });
    }

    #[test]
    #[should_panic(expected = "overflowed")]
    fn gi_overflow_panics() {
        let big = Gi::int(i128::MAX / 2);
        let _ = big.scale(4);
    }
}
