//! Abstract interface over the rings the generators are built in.
//!
//! Generator formulas and relation builders are written once against these
//! traits and run both on the symbolic kernel ([`PhaseAlgebra`],
//! [`WeylAlgebra`]) and on the independent evaluators in [`crate::oracle`].

use crate::error::Result;
use crate::monomial::Space;
use crate::phase::PhaseExpr;
use crate::scalar::{Param, ParamScalar, Rational};
use crate::weyl::WeylExpr;

pub trait Algebra: Send + Sync {
    type Elem: Clone + Send + Sync;

    fn space(&self) -> Space;
    fn constant(&self, c: &ParamScalar) -> Self::Elem;
    /// Multiplication by `x_i^e` (1-based `i`, Laurent exponent).
    fn x_pow(&self, i: usize, e: i32) -> Self::Elem;
    fn momentum(&self, i: usize) -> Self::Elem;
    fn r_pow(&self, e: i32) -> Self::Elem;
    /// The radial potential `V(r)` of the generic model.
    fn potential(&self) -> Result<Self::Elem>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, q: Rational) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;

    fn zero(&self) -> Self::Elem {
        self.constant(&ParamScalar::zero())
    }

    fn int(&self, k: i64) -> Self::Elem {
        self.constant(&ParamScalar::from_int(k))
    }

    fn param(&self, p: Param) -> Self::Elem {
        self.constant(&ParamScalar::param(p))
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.zero(), |acc, e| self.add(&acc, e))
    }

    fn product(&self, items: &[&Self::Elem]) -> Result<Self::Elem> {
        let mut acc = match items.first() {
            Some(e) => (*e).clone(),
            None => return Ok(self.int(1)),
        };
        for e in &items[1..] {
            acc = self.mul(&acc, e)?;
        }
        Ok(acc)
    }

    fn scale_int(&self, a: &Self::Elem, k: i64) -> Self::Elem {
        self.scale(a, Rational::from_integer(k))
    }
}

/// Commutative algebra with a Poisson bracket.
pub trait ClassicalAlgebra: Algebra {
    fn bracket(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
}

/// Associative operator algebra over the formal parameter `hbar`.
pub trait QuantumAlgebra: Algebra {
    /// Divide by `i hbar`; fails unless the element is divisible.
    fn div_ihbar(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn mul_ihbar(&self, a: &Self::Elem) -> Self::Elem;

    fn commutator(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.sub(&self.mul(a, b)?, &self.mul(b, a)?))
    }

    fn anticommutator(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.add(&self.mul(a, b)?, &self.mul(b, a)?))
    }

    /// Sum of the six orderings of `a b c`.
    fn symmetrize3(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Result<Self::Elem> {
        let t1 = self.mul(a, &self.anticommutator(b, c)?)?;
        let t2 = self.mul(b, &self.anticommutator(a, c)?)?;
        let t3 = self.mul(c, &self.anticommutator(a, b)?)?;
        Ok(self.add(&self.add(&t1, &t2), &t3))
    }
}

/// The bracket that realises the Lie structure in each frame: the Poisson
/// bracket classically and `[a, b] / (i hbar)` for operators.
pub trait LieAlgebra: Algebra {
    const QUANTUM: bool;
    fn lie(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
}

/// The symbolic classical kernel.
#[derive(Clone, Copy, Debug)]
pub struct PhaseAlgebra {
    pub space: Space,
}

impl Algebra for PhaseAlgebra {
    type Elem = PhaseExpr;

    fn space(&self) -> Space {
        self.space
    }
    fn constant(&self, c: &ParamScalar) -> PhaseExpr {
        PhaseExpr::constant(self.space, c)
    }
    fn x_pow(&self, i: usize, e: i32) -> PhaseExpr {
        PhaseExpr::x_pow(self.space, i, e).expect("validated index")
    }
    fn momentum(&self, i: usize) -> PhaseExpr {
        PhaseExpr::p(self.space, i).expect("validated index")
    }
    fn r_pow(&self, e: i32) -> PhaseExpr {
        PhaseExpr::r_pow(self.space, e)
    }
    fn potential(&self) -> Result<PhaseExpr> {
        PhaseExpr::v(self.space, 0)
    }
    fn add(&self, a: &PhaseExpr, b: &PhaseExpr) -> PhaseExpr {
        a + b
    }
    fn neg(&self, a: &PhaseExpr) -> PhaseExpr {
        -a
    }
    fn scale(&self, a: &PhaseExpr, q: Rational) -> PhaseExpr {
        a.scale(q)
    }
    fn mul(&self, a: &PhaseExpr, b: &PhaseExpr) -> Result<PhaseExpr> {
        a.try_mul(b)
    }
}

impl ClassicalAlgebra for PhaseAlgebra {
    fn bracket(&self, a: &PhaseExpr, b: &PhaseExpr) -> Result<PhaseExpr> {
        a.poisson(b)
    }
}

impl LieAlgebra for PhaseAlgebra {
    const QUANTUM: bool = false;
    fn lie(&self, a: &PhaseExpr, b: &PhaseExpr) -> Result<PhaseExpr> {
        a.poisson(b)
    }
}

/// The symbolic normal-ordered operator kernel.
#[derive(Clone, Copy, Debug)]
pub struct WeylAlgebra {
    pub space: Space,
}

impl Algebra for WeylAlgebra {
    type Elem = WeylExpr;

    fn space(&self) -> Space {
        self.space
    }
    fn constant(&self, c: &ParamScalar) -> WeylExpr {
        WeylExpr::constant(self.space, c)
    }
    fn x_pow(&self, i: usize, e: i32) -> WeylExpr {
        WeylExpr::x_pow(self.space, i, e).expect("validated index")
    }
    fn momentum(&self, i: usize) -> WeylExpr {
        WeylExpr::p(self.space, i).expect("validated index")
    }
    fn r_pow(&self, e: i32) -> WeylExpr {
        WeylExpr::r_pow(self.space, e)
    }
    fn potential(&self) -> Result<WeylExpr> {
        WeylExpr::v(self.space, 0)
    }
    fn add(&self, a: &WeylExpr, b: &WeylExpr) -> WeylExpr {
        a + b
    }
    fn neg(&self, a: &WeylExpr) -> WeylExpr {
        -a
    }
    fn scale(&self, a: &WeylExpr, q: Rational) -> WeylExpr {
        a.scale(q)
    }
    fn mul(&self, a: &WeylExpr, b: &WeylExpr) -> Result<WeylExpr> {
        a.wmul(b)
    }
}

impl QuantumAlgebra for WeylAlgebra {
    fn div_ihbar(&self, a: &WeylExpr) -> Result<WeylExpr> {
        a.div_ihbar()
    }
    fn mul_ihbar(&self, a: &WeylExpr) -> WeylExpr {
        a.mul_ihbar()
    }
    fn symmetrize3(&self, a: &WeylExpr, b: &WeylExpr, c: &WeylExpr) -> Result<WeylExpr> {
        WeylExpr::symmetrize3(a, b, c)
    }
}

impl LieAlgebra for WeylAlgebra {
    const QUANTUM: bool = true;
    fn lie(&self, a: &WeylExpr, b: &WeylExpr) -> Result<WeylExpr> {
        a.commutator(b)?.div_ihbar()
    }
}
