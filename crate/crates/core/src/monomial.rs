//! Packed monomials shared by the classical and quantum rings.
//!
//! A monomial is `params · x^ex · p^ep · r^er · V^ev`. In the quantum ring
//! the same key denotes the normal-ordered word with every position factor
//! to the left of the momenta.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Param;

/// Largest supported configuration-space dimension.
pub const MAX_N: usize = 8;
/// Number of radial-potential derivative slots `V^(0)..V^(MAX_V-1)`.
pub const MAX_V: usize = 4;
/// `hbar, omega, mu, a_1..a_MAX_N`.
pub const N_PARAMS: usize = 3 + MAX_N;

/// Dimension `n` and potential-tower depth `K` of a ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Space {
    n: u8,
    k: u8,
}

impl Space {
    /// `n` coordinates and radial-potential symbols `V^(0)..V^(k)`.
    pub fn new(n: usize, k: usize) -> Result<Space> {
        if !(2..=MAX_N).contains(&n) {
            return Err(Error::Dimension(format!("n = {n} outside 2..={MAX_N}")));
        }
        if k >= MAX_V {
            return Err(Error::Dimension(format!("potential tower depth {k} exceeds {}", MAX_V - 1)));
        }
        Ok(Space { n: n as u8, k: k as u8 })
    }

    pub fn n(self) -> usize {
        self.n as usize
    }

    /// Highest available derivative index of the radial potential.
    pub fn tower(self) -> usize {
        self.k as usize
    }

    pub(crate) fn check(self, other: Space) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SpaceMismatch { left: self, right: other })
        }
    }

    pub(crate) fn check_index(self, i: usize) -> Result<usize> {
        if (1..=self.n()).contains(&i) {
            Ok(i - 1)
        } else {
            Err(Error::IndexOutOfRange { index: i, n: self.n() })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    pub(crate) x: [i8; MAX_N],
    pub(crate) p: [u8; MAX_N],
    pub(crate) r: i8,
    pub(crate) v: [u8; MAX_V],
    pub(crate) s: [u8; N_PARAMS],
}

#[inline]
fn add_i8(a: i8, b: i8) -> i8 {
    match a.checked_add(b) {
        Some(v) => v,
        None => panic!("monomial exponent overflow"),
    }
}

#[inline]
fn add_u8(a: u8, b: u8) -> u8 {
    match a.checked_add(b) {
        Some(v) => v,
        None => panic!("monomial exponent overflow"),
    }
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        x: [0; MAX_N],
        p: [0; MAX_N],
        r: 0,
        v: [0; MAX_V],
        s: [0; N_PARAMS],
    };

    pub fn x_exp(&self, i: usize) -> i32 {
        self.x[i - 1] as i32
    }

    pub fn p_exp(&self, i: usize) -> u32 {
        self.p[i - 1] as u32
    }

    pub fn r_exp(&self) -> i32 {
        self.r as i32
    }

    pub fn v_exp(&self, k: usize) -> u32 {
        self.v[k] as u32
    }

    pub fn param_exp(&self, p: Param) -> u32 {
        self.s[p.slot()] as u32
    }

    pub(crate) fn with_x(mut self, i: usize, e: i32) -> Monomial {
        self.x[i] = i8::try_from(e).expect("x exponent out of range");
        self
    }

    pub(crate) fn with_p(mut self, i: usize, e: u32) -> Monomial {
        self.p[i] = u8::try_from(e).expect("p exponent out of range");
        self
    }

    pub(crate) fn with_r(mut self, e: i32) -> Monomial {
        self.r = i8::try_from(e).expect("r exponent out of range");
        self
    }

    pub(crate) fn with_v(mut self, k: usize, e: u32) -> Monomial {
        self.v[k] = u8::try_from(e).expect("V exponent out of range");
        self
    }

    pub(crate) fn with_param(mut self, p: Param, e: u32) -> Monomial {
        self.s[p.slot()] = u8::try_from(e).expect("parameter exponent out of range");
        self
    }

    #[inline]
    pub(crate) fn mul(&self, o: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..MAX_N {
            m.x[i] = add_i8(m.x[i], o.x[i]);
            m.p[i] = add_u8(m.p[i], o.p[i]);
        }
        m.r = add_i8(m.r, o.r);
        for k in 0..MAX_V {
            m.v[k] = add_u8(m.v[k], o.v[k]);
        }
        for k in 0..N_PARAMS {
            m.s[k] = add_u8(m.s[k], o.s[k]);
        }
        m
    }

    /// Position part: `x`, `r` and `V` exponents only.
    #[inline]
    pub(crate) fn position(&self) -> Monomial {
        Monomial { x: self.x, r: self.r, v: self.v, ..Monomial::ONE }
    }

    #[inline]
    pub(crate) fn momentum(&self) -> [u8; MAX_N] {
        self.p
    }

    pub(crate) fn fits(&self, space: Space) -> bool {
        let n = space.n();
        (n..MAX_N).all(|i| self.x[i] == 0 && self.p[i] == 0 && self.s[3 + i] == 0)
            && (space.tower() + 1..MAX_V).all(|k| self.v[k] == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn space_bounds() {
        assert!(Space::new(1, 2).is_err());
        assert!(Space::new(MAX_N + 1, 2).is_err());
        assert!(Space::new(3, MAX_V).is_err());
        let s = Space::new(3, 2).unwrap();
        assert_eq!((s.n(), s.tower()), (3, 2));
        assert!(s.check_index(0).is_err());
        assert_eq!(s.check_index(3).unwrap(), 2);
    }

    #[test]
    fn monomial_product_adds_exponents() {
        let a = Monomial::ONE.with_x(0, -2).with_r(1).with_param(Param::Hbar, 1);
        let b = Monomial::ONE.with_x(0, 2).with_p(1, 3).with_r(-1);
        let c = a.mul(&b);
        assert_eq!(c.x_exp(1), 0);
        assert_eq!(c.p_exp(2), 3);
        assert_eq!(c.r_exp(), 0);
        assert_eq!(c.param_exp(Param::Hbar), 1);
        assert_eq!(c.position(), Monomial::ONE);
    }

    #[test]
    fn ordering_is_lexicographic_in_x_first() {
        let a = Monomial::ONE.with_x(0, 1);
        let b = Monomial::ONE.with_p(0, 5);
        assert!(b < a);
    }
}
