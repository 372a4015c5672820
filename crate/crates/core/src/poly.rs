//! Sparse term storage shared by [`crate::PhaseExpr`] and [`crate::WeylExpr`].
//!
//! Terms are kept sorted by monomial with nonzero Gaussian-integer
//! numerators over one positive common denominator. The denominator and the
//! numerators are coprime, and no stored monomial has an `r` exponent above
//! one: `r^2` is always rewritten as `x_1^2 + ... + x_n^2`.

use std::cmp::Ordering;

use num_integer::Integer;
use rustc_hash::FxHashMap;

use crate::monomial::{Monomial, Space, MAX_N};
use crate::scalar::{ck, Gi};

pub(crate) type Acc = FxHashMap<Monomial, Gi>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Poly {
    pub terms: Vec<(Monomial, Gi)>,
    pub den: i128,
}

impl Default for Poly {
    fn default() -> Self {
        Poly::zero()
    }
}

#[inline]
pub(crate) fn accumulate(acc: &mut Acc, m: Monomial, c: Gi) {
    if c.is_zero() {
        return;
    }
    match acc.entry(m) {
        std::collections::hash_map::Entry::Occupied(mut e) => {
            let v = e.get().add(c);
            if v.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = v;
            }
        }
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

/// Exponent vectors and multinomial coefficients of `(x_1^2 + ... + x_n^2)^q`.
pub(crate) fn sum_of_squares_power(n: usize, q: u32) -> Vec<([i8; MAX_N], i128)> {
    let mut out: Vec<([i8; MAX_N], i128)> = vec![([0; MAX_N], 1)];
    for _ in 0..q {
        let mut next: FxHashMap<[i8; MAX_N], i128> = FxHashMap::default();
        for (e, c) in &out {
            for i in 0..n {
                let mut f = *e;
                f[i] += 2;
                *next.entry(f).or_insert(0) += *c;
            }
        }
        out = next.into_iter().collect();
    }
    out.sort();
    out
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new(), den: 1 }
    }

    pub fn monomial(m: Monomial, c: Gi, den: i128, space: Space) -> Poly {
        let mut acc = Acc::default();
        accumulate(&mut acc, m, c);
        Poly::from_acc(acc, den, space)
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Canonicalise an accumulator: reduce `r`, sort, drop zeros and
    /// cancel the common content against `den`.
    pub fn from_acc(mut acc: Acc, den: i128, space: Space) -> Poly {
        assert!(den != 0, "zero denominator");
        if acc.keys().any(|m| m.r >= 2) {
            acc = reduce_radial(acc, space);
        }
        let mut terms: Vec<(Monomial, Gi)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|t| t.0);
        let mut p = Poly { terms, den };
        p.normalize_content();
        p
    }

    pub fn normalize_content(&mut self) {
        if self.den < 0 {
            self.den = -self.den;
            for t in &mut self.terms {
                t.1 = t.1.neg();
            }
        }
        if self.terms.is_empty() {
            self.den = 1;
            return;
        }
        let mut g = self.den;
        for (_, c) in &self.terms {
            if g == 1 {
                return;
            }
            g = c.content_gcd(g);
        }
        if g > 1 {
            self.den /= g;
            for t in &mut self.terms {
                t.1 = t.1.div_exact(g);
            }
        }
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(), den: self.den }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        if self.is_empty() {
            return o.clone();
        }
        if o.is_empty() {
            return self.clone();
        }
        let g = self.den.gcd(&o.den);
        let fa = o.den / g;
        let fb = self.den / g;
        let den = ck(self.den.checked_mul(fa));
        let mut terms = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < o.terms.len() {
            let (ma, ca) = self.terms[i];
            let (mb, cb) = o.terms[j];
            match ma.cmp(&mb) {
                Ordering::Less => {
                    terms.push((ma, ca.scale(fa)));
                    i += 1;
                }
                Ordering::Greater => {
                    terms.push((mb, cb.scale(fb)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ca.scale(fa).add(cb.scale(fb));
                    if !c.is_zero() {
                        terms.push((ma, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend(self.terms[i..].iter().map(|(m, c)| (*m, c.scale(fa))));
        terms.extend(o.terms[j..].iter().map(|(m, c)| (*m, c.scale(fb))));
        let mut p = Poly { terms, den };
        p.normalize_content();
        p
    }

    /// Multiply by `num / den` (integers).
    pub fn scale(&self, num: i128, den: i128) -> Poly {
        assert!(den != 0, "zero denominator");
        if num == 0 || self.is_empty() {
            return Poly::zero();
        }
        let mut p = Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, c.scale(num))).collect(),
            den: ck(self.den.checked_mul(den)),
        };
        p.normalize_content();
        p
    }

    /// Apply a monomial map that may merge terms, then canonicalise.
    pub fn remap(&self, space: Space, f: impl Fn(&Monomial, Gi) -> Option<(Monomial, Gi)>) -> Poly {
        let mut acc = Acc::default();
        for (m, c) in &self.terms {
            if let Some((m2, c2)) = f(m, *c) {
                accumulate(&mut acc, m2, c2);
            }
        }
        Poly::from_acc(acc, self.den, space)
    }

    pub fn min_r(&self) -> i32 {
        self.terms.iter().map(|(m, _)| m.r as i32).min().unwrap_or(0)
    }

    /// Decide whether the polynomial vanishes in the quotient by
    /// `r^2 = sum x_i^2`. Storage is canonical for nonnegative `r`
    /// exponents, so negative even powers are cleared globally first.
    pub fn is_zero_mod_radial(&self, space: Space) -> bool {
        if self.is_empty() {
            return true;
        }
        let min_r = self.min_r();
        if min_r >= 0 {
            return false;
        }
        let shift = (-min_r + 1) / 2 * 2;
        let lifted = self.remap(space, |m, c| {
            let mut m2 = *m;
            m2.r = i8::try_from(m.r as i32 + shift).expect("r exponent out of range");
            Some((m2, c))
        });
        lifted.is_empty()
    }
}

fn reduce_radial(acc: Acc, space: Space) -> Acc {
    let n = space.n();
    let mut out = Acc::with_capacity_and_hasher(acc.len(), Default::default());
    let mut expansions: FxHashMap<u32, Vec<([i8; MAX_N], i128)>> = FxHashMap::default();
    for (m, c) in acc {
        if m.r < 2 {
            accumulate(&mut out, m, c);
            continue;
        }
        let q = (m.r / 2) as u32;
        let exps = expansions.entry(q).or_insert_with(|| sum_of_squares_power(n, q));
        for (e, k) in exps.iter() {
            let mut m2 = m;
            m2.r = m.r % 2;
            for (x, d) in m2.x.iter_mut().zip(e).take(n) {
                *x = x.checked_add(*d).expect("x exponent overflow");
            }
            accumulate(&mut out, m2, c.scale(*k));
        }
    }
    out
}
