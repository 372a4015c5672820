//! Noncommutative ring of quantum observables in normal order.
//!
//! A [`WeylExpr`] is a sum of words `c * f(x, r, V) * p^alpha` with every
//! position factor written to the left of the momenta, where `p_j` acts as
//! `-i hbar d/dx_j`. Products are brought back to normal order with the
//! multi-index Leibniz rule
//! `p^a g = sum_{c <= a} binom(a, c) (-i hbar)^|c| (d^c g) p^(a - c)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, Space, MAX_N};
use crate::phase::{constant_poly, diff_position, PhaseExpr};
use crate::poly::{accumulate, Acc, Poly};
use crate::scalar::{ck, gaussian_to_gi, GaussianRational, Gi, Param, ParamScalar, Rational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeylExpr {
    space: Space,
    poly: Arc<Poly>,
}

type DerivKey = (Monomial, [u8; MAX_N]);
type Derivs = FxHashMap<DerivKey, Arc<Vec<(Monomial, Gi)>>>;

const BINOM: [[i128; 16]; 16] = {
    let mut t = [[0i128; 16]; 16];
    let mut n = 0;
    while n < 16 {
        t[n][0] = 1;
        let mut k = 1;
        while k <= n {
            t[n][k] = t[n - 1][k - 1] + if k < n { t[n - 1][k] } else { 0 };
            k += 1;
        }
        n += 1;
    }
    t
};

fn binom(n: u8, k: u8) -> i128 {
    if (n as usize) < 16 {
        BINOM[n as usize][k as usize]
    } else {
        (0..k as i128).fold(1, |acc, j| acc * (n as i128 - j) / (j + 1))
    }
}

/// `d^gamma` of a pure position monomial, as integer-weighted terms.
fn position_derivative(space: Space, cache: &mut Derivs, g: Monomial, gamma: [u8; MAX_N]) -> Result<Arc<Vec<(Monomial, Gi)>>> {
    if let Some(v) = cache.get(&(g, gamma)) {
        return Ok(v.clone());
    }
    let result = match gamma.iter().position(|&e| e != 0) {
        None => Arc::new(vec![(g, Gi::ONE)]),
        Some(i) => {
            let mut lower = gamma;
            lower[i] -= 1;
            let prev = position_derivative(space, cache, g, lower)?;
            let mut raw = Vec::new();
            for (m, c) in prev.iter() {
                diff_position(space, m, *c, i, &mut raw)?;
            }
            let mut acc = Acc::default();
            for (m, c) in raw {
                accumulate(&mut acc, m, c);
            }
            let mut terms: Vec<(Monomial, Gi)> = acc.into_iter().collect();
            terms.sort_unstable_by_key(|t| t.0);
            Arc::new(terms)
        }
    };
    cache.insert((g, gamma), result.clone());
    Ok(result)
}

/// Enumerate all `gamma <= alpha` componentwise.
fn sub_multi_indices(alpha: &[u8; MAX_N], n: usize) -> Vec<[u8; MAX_N]> {
    let mut out = vec![[0u8; MAX_N]];
    for i in 0..n {
        if alpha[i] == 0 {
            continue;
        }
        let mut next = Vec::with_capacity(out.len() * (alpha[i] as usize + 1));
        for g in &out {
            for k in 0..=alpha[i] {
                let mut h = *g;
                h[i] = k;
                next.push(h);
            }
        }
        out = next;
    }
    out
}

impl WeylExpr {
    pub(crate) fn from_poly(space: Space, poly: Poly) -> WeylExpr {
        WeylExpr { space, poly: Arc::new(poly) }
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn zero(space: Space) -> WeylExpr {
        Self::from_poly(space, Poly::zero())
    }

    pub fn one(space: Space) -> WeylExpr {
        Self::int(space, 1)
    }

    pub fn int(space: Space, k: i64) -> WeylExpr {
        Self::from_poly(space, Poly::monomial(Monomial::ONE, Gi::int(k as i128), 1, space))
    }

    pub fn constant(space: Space, c: &ParamScalar) -> WeylExpr {
        Self::from_poly(space, constant_poly(space, c))
    }

    pub fn param(space: Space, p: Param) -> Result<WeylExpr> {
        Ok(Self::from_phase(&PhaseExpr::param(space, p)?))
    }

    pub fn x(space: Space, i: usize) -> Result<WeylExpr> {
        Self::x_pow(space, i, 1)
    }

    pub fn x_pow(space: Space, i: usize, e: i32) -> Result<WeylExpr> {
        Ok(Self::from_phase(&PhaseExpr::x_pow(space, i, e)?))
    }

    pub fn p(space: Space, i: usize) -> Result<WeylExpr> {
        Self::p_pow(space, i, 1)
    }

    pub fn p_pow(space: Space, i: usize, e: u32) -> Result<WeylExpr> {
        Ok(Self::from_phase(&PhaseExpr::p_pow(space, i, e)?))
    }

    pub fn r(space: Space) -> WeylExpr {
        Self::r_pow(space, 1)
    }

    pub fn r_pow(space: Space, e: i32) -> WeylExpr {
        Self::from_phase(&PhaseExpr::r_pow(space, e))
    }

    pub fn v(space: Space, k: usize) -> Result<WeylExpr> {
        Ok(Self::from_phase(&PhaseExpr::v(space, k)?))
    }

    /// Reinterpret a commutative monomial sum as normal-ordered words
    /// (positions to the left of momenta).
    pub fn from_phase(e: &PhaseExpr) -> WeylExpr {
        Self::from_poly(e.space(), e.poly().clone())
    }

    pub fn from_terms(space: Space, terms: impl IntoIterator<Item = (Monomial, GaussianRational)>) -> Result<WeylExpr> {
        Ok(Self::from_phase(&PhaseExpr::from_terms(space, terms)?))
    }

    pub fn parse(space: Space, s: &str) -> Result<WeylExpr> {
        Self::from_terms(space, crate::text::parse_terms(s, space)?)
    }

    pub fn terms(&self) -> Vec<(Monomial, GaussianRational)> {
        self.poly.terms.iter().map(|(m, c)| (*m, c.to_gaussian(self.poly.den))).collect()
    }

    pub fn len(&self) -> usize {
        self.poly.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poly.is_empty()
    }

    pub fn try_add(&self, o: &WeylExpr) -> Result<WeylExpr> {
        self.space.check(o.space)?;
        Ok(Self::from_poly(self.space, self.poly.add(&o.poly)))
    }

    pub fn try_sub(&self, o: &WeylExpr) -> Result<WeylExpr> {
        self.space.check(o.space)?;
        Ok(Self::from_poly(self.space, self.poly.add(&o.poly.neg())))
    }

    pub fn scale(&self, q: Rational) -> WeylExpr {
        Self::from_poly(self.space, self.poly.scale(*q.numer() as i128, *q.denom() as i128))
    }

    pub fn scale_int(&self, k: i64) -> WeylExpr {
        Self::from_poly(self.space, self.poly.scale(k as i128, 1))
    }

    /// Multiply by a central scalar (parameters and Gaussian rationals).
    pub fn mul_scalar(&self, c: &ParamScalar) -> WeylExpr {
        let k = PhaseExpr::constant(self.space, c);
        Self::from_phase(&PhaseExpr::from_poly(self.space, self.poly.as_ref().clone()).try_mul(&k).expect("same space"))
    }

    /// Normal-ordered product `self * o`.
    pub fn wmul(&self, o: &WeylExpr) -> Result<WeylExpr> {
        self.space.check(o.space)?;
        let space = self.space;
        let n = space.n();
        let mut acc = Acc::default();
        let mut cache = Derivs::default();
        let mut gammas: FxHashMap<[u8; MAX_N], Vec<[u8; MAX_N]>> = FxHashMap::default();
        for (ma, ca) in &self.poly.terms {
            let alpha = ma.momentum();
            let left = Monomial { p: [0; MAX_N], ..*ma };
            let subs = gammas.entry(alpha).or_insert_with(|| sub_multi_indices(&alpha, n)).clone();
            for (mb, cb) in &o.poly.terms {
                let g = mb.position();
                let tail = Monomial { p: mb.p, s: mb.s, ..Monomial::ONE };
                let cab = ca.mul(*cb);
                for gamma in &subs {
                    let order: u32 = gamma.iter().map(|&e| e as u32).sum();
                    let deriv = position_derivative(space, &mut cache, g, *gamma)?;
                    if deriv.is_empty() {
                        continue;
                    }
                    let mut weight: i128 = 1;
                    let mut rest = Monomial { s: tail.s, ..Monomial::ONE };
                    rest.s[Param::Hbar.slot()] = rest.s[Param::Hbar.slot()].checked_add(order as u8).expect("hbar exponent overflow");
                    for i in 0..n {
                        weight = ck(weight.checked_mul(binom(alpha[i], gamma[i])));
                        rest.p[i] = alpha[i] - gamma[i] + tail.p[i];
                    }
                    let unit = Gi::minus_i_pow(order).scale(weight).mul(cab);
                    let prefix = left.mul(&rest);
                    for (dm, dc) in deriv.iter() {
                        accumulate(&mut acc, prefix.mul(dm), unit.mul(*dc));
                    }
                }
            }
        }
        let den = ck(self.poly.den.checked_mul(o.poly.den));
        Ok(Self::from_poly(space, Poly::from_acc(acc, den, space)))
    }

    pub fn commutator(&self, o: &WeylExpr) -> Result<WeylExpr> {
        self.wmul(o)?.try_sub(&o.wmul(self)?)
    }

    pub fn anticommutator(&self, o: &WeylExpr) -> Result<WeylExpr> {
        self.wmul(o)?.try_add(&o.wmul(self)?)
    }

    /// Sum of the six orderings of `a b c`.
    pub fn symmetrize3(a: &WeylExpr, b: &WeylExpr, c: &WeylExpr) -> Result<WeylExpr> {
        let t1 = a.wmul(&b.anticommutator(c)?)?;
        let t2 = b.wmul(&a.anticommutator(c)?)?;
        let t3 = c.wmul(&a.anticommutator(b)?)?;
        t1.try_add(&t2)?.try_add(&t3)
    }

    pub fn pow(&self, e: u32) -> Result<WeylExpr> {
        let mut acc = Self::one(self.space);
        for _ in 0..e {
            acc = acc.wmul(self)?;
        }
        Ok(acc)
    }

    /// Set `hbar = 0` and read each word as a commutative monomial.
    pub fn classical_limit(&self) -> PhaseExpr {
        let slot = Param::Hbar.slot();
        PhaseExpr::from_poly(
            self.space,
            self.poly.remap(self.space, |m, c| if m.s[slot] == 0 { Some((*m, c)) } else { None }),
        )
    }

    /// Formal adjoint: conjugate coefficients and reverse every word.
    pub fn adjoint(&self) -> Result<WeylExpr> {
        let mut out = Poly::zero();
        for (m, c) in &self.poly.terms {
            let moment = Monomial { p: m.p, ..Monomial::ONE };
            let pos = Monomial { p: [0; MAX_N], ..*m };
            let left = Self::from_poly(self.space, Poly { terms: vec![(moment, Gi::ONE)], den: 1 });
            let right = Self::from_poly(self.space, Poly { terms: vec![(pos, c.conj())], den: self.poly.den });
            out = out.add(&left.wmul(&right)?.poly);
        }
        Ok(Self::from_poly(self.space, out))
    }

    pub fn is_hermitian(&self) -> Result<bool> {
        Ok(self.adjoint()?.try_sub(self)?.wis_zero())
    }

    /// Zero test modulo `r^2 = sum x_i^2`; normal order makes words canonical.
    pub fn wis_zero(&self) -> bool {
        self.poly.is_zero_mod_radial(self.space)
    }

    /// Divide by `i hbar`; fails unless the `hbar`-free part vanishes
    /// modulo the radial relation.
    pub fn div_ihbar(&self) -> Result<WeylExpr> {
        let slot = Param::Hbar.slot();
        if self.poly.terms.iter().any(|(m, _)| m.s[slot] == 0) {
            let free = self.poly.remap(self.space, |m, c| if m.s[slot] == 0 { Some((*m, c)) } else { None });
            if !free.is_zero_mod_radial(self.space) {
                return Err(Error::NotDivisibleByIHbar);
            }
        }
        let poly = self.poly.remap(self.space, |m, c| {
            (m.s[slot] > 0).then(|| {
                let mut m2 = *m;
                m2.s[slot] -= 1;
                (m2, c.times_minus_i())
            })
        });
        Ok(Self::from_poly(self.space, poly))
    }

    /// Multiply by `i hbar`.
    pub fn mul_ihbar(&self) -> WeylExpr {
        let slot = Param::Hbar.slot();
        let terms = self
            .poly
            .terms
            .iter()
            .map(|(m, c)| {
                let mut m2 = *m;
                m2.s[slot] += 1;
                (m2, c.times_minus_i().neg())
            })
            .collect();
        Self::from_poly(self.space, Poly { terms, den: self.poly.den })
    }

    /// Set the given parameters to zero.
    pub fn without_params(&self, params: &[Param]) -> WeylExpr {
        Self::from_phase(&PhaseExpr::from_poly(self.space, self.poly.as_ref().clone()).without_params(params))
    }

    /// Exact coefficient conversion helper for callers holding big rationals.
    pub fn constant_gaussian(space: Space, c: &GaussianRational) -> Result<WeylExpr> {
        let (num, den) = gaussian_to_gi(c).ok_or_else(|| Error::Config("coefficient too large".into()))?;
        Ok(Self::from_poly(space, Poly::monomial(Monomial::ONE, num, den, space)))
    }
}

impl fmt::Display for WeylExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::format_poly(&self.poly, self.space, crate::text::Layout::Weyl))
    }
}

impl fmt::Debug for WeylExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylExpr({self})")
    }
}

impl Add for &WeylExpr {
    type Output = WeylExpr;
    fn add(self, o: &WeylExpr) -> WeylExpr {
        self.try_add(o).expect("ring mismatch in addition")
    }
}

impl Sub for &WeylExpr {
    type Output = WeylExpr;
    fn sub(self, o: &WeylExpr) -> WeylExpr {
        self.try_sub(o).expect("ring mismatch in subtraction")
    }
}

impl Mul for &WeylExpr {
    type Output = WeylExpr;
    fn mul(self, o: &WeylExpr) -> WeylExpr {
        self.wmul(o).expect("normal-ordered product failed")
    }
}

impl Neg for &WeylExpr {
    type Output = WeylExpr;
    fn neg(self) -> WeylExpr {
        WeylExpr::from_poly(self.space, self.poly.neg())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s() -> Space {
        Space::new(3, 2).unwrap()
    }

    fn w(text: &str) -> WeylExpr {
        WeylExpr::parse(s(), text).unwrap()
    }

    #[test]
    fn canonical_commutation() {
        assert_eq!(&w("p1") * &w("x1"), w("x1 * p1 + -i * hbar"));
        assert_eq!(&w("x1") * &w("p1^2"), w("x1 * p1^2"));
        assert_eq!(w("x1").commutator(&w("p2")).unwrap(), WeylExpr::zero(s()));
        assert_eq!(w("x1").anticommutator(&w("p1")).unwrap(), w("2 * x1 * p1 + -i * hbar"));
    }

    #[test]
    fn momentum_past_inverse_radius() {
        assert_eq!(&w("p1") * &w("r^-1"), w("r^-1 * p1 + i * hbar * x1 * r^-3"));
    }

    #[test]
    fn symmetrizer_examples() {
        let one = WeylExpr::one(s());
        assert_eq!(WeylExpr::symmetrize3(&one, &one, &one).unwrap(), WeylExpr::int(s(), 6));
        let (a, b) = (w("x1"), w("p1"));
        let got = WeylExpr::symmetrize3(&a, &b, &one).unwrap();
        let orderings = [[&a, &b, &one], [&a, &one, &b], [&b, &a, &one], [&b, &one, &a], [&one, &a, &b], [&one, &b, &a]];
        let explicit = orderings.iter().fold(WeylExpr::zero(s()), |acc, [u, v, t]| &acc + &(&(*u * *v) * *t));
        assert_eq!(got, explicit);
        assert_eq!(got, w("6 * x1 * p1 + -3*i * hbar"));
    }

    #[test]
    fn one_dimensional_sl2() {
        let jm = w("1/2 * x1^2");
        let jp = w("1/2 * p1^2 + 1/2 * a1 * x1^-2");
        let j3 = w("1/2 * x1 * p1 + -i/4 * hbar");
        assert_eq!(jm.commutator(&jp).unwrap(), j3.scale_int(2).mul_ihbar());
        assert!(j3.is_hermitian().unwrap());
        assert!(!w("x1 * p1").is_hermitian().unwrap());
    }

    #[test]
    fn limit_and_ihbar() {
        let c = w("p1").commutator(&w("x1^3")).unwrap();
        assert_eq!(c.div_ihbar().unwrap(), w("-3 * x1^2"));
        assert_eq!(w("x1").div_ihbar(), Err(Error::NotDivisibleByIHbar));
        let a = w("x1").anticommutator(&w("p1")).unwrap();
        assert_eq!(a.classical_limit(), PhaseExpr::parse(s(), "2 * x1 * p1").unwrap());
        assert!(!w("i * hbar").wis_zero());
        assert!(w("x1^2 * r^-2 + x2^2 * r^-2 + x3^2 * r^-2 + -1").wis_zero());
    }
}
