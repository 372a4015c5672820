//! Operators as lazy trees applied to test functions.
//!
//! `p_j` acts as `-i hbar d/dx_j` on functions `psi = x^gamma r^s`, so an
//! operator identity is checked extensionally, without the normal-ordering
//! product of the Weyl kernel.

use std::sync::Arc;

use rustc_hash::FxHashMap;
use serde::Serialize;

use super::points::RadialPoint;
use crate::algebra::{Algebra, LieAlgebra};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, Space};
use crate::phase::{EvalPoint, PhaseExpr, Var};
use crate::scalar::{GaussianRational, Param, ParamScalar, Rational};
use crate::weyl::WeylExpr;

#[derive(Debug)]
pub enum Op {
    /// Multiplication by a function of the coordinates.
    Func(PhaseExpr),
    Mom(usize),
    Sum(Vec<OpRef>),
    Scale(Rational, OpRef),
    /// `a` applied after `b`.
    Compose(OpRef, OpRef),
    DivIHbar(OpRef),
}

pub type OpRef = Arc<Op>;

/// A test function `x^gamma r^s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TestFunction {
    pub gamma: Vec<i32>,
    pub s: i32,
}

impl TestFunction {
    pub fn to_expr(&self, space: Space) -> Result<PhaseExpr> {
        let mut acc = PhaseExpr::r_pow(space, self.s);
        for (i, &g) in self.gamma.iter().enumerate() {
            if g != 0 {
                acc = acc.try_mul(&PhaseExpr::x_pow(space, i + 1, g)?)?;
            }
        }
        Ok(acc)
    }

    /// Every `gamma in {0, 1, 2}^n` with `s` in `s_range`.
    pub fn grid(n: usize, s_range: std::ops::RangeInclusive<i32>) -> Vec<TestFunction> {
        let mut out = Vec::new();
        for s in s_range {
            for code in 0..3usize.pow(n as u32) {
                let gamma = (0..n).map(|i| ((code / 3usize.pow(i as u32)) % 3) as i32).collect();
                out.push(TestFunction { gamma, s });
            }
        }
        out
    }
}

/// Operator algebra whose elements are [`Op`] trees.
#[derive(Clone, Copy, Debug)]
pub struct OpAlgebra {
    pub space: Space,
}

impl Algebra for OpAlgebra {
    type Elem = OpRef;

    fn space(&self) -> Space {
        self.space
    }
    fn constant(&self, c: &ParamScalar) -> OpRef {
        Arc::new(Op::Func(PhaseExpr::constant(self.space, c)))
    }
    fn x_pow(&self, i: usize, e: i32) -> OpRef {
        Arc::new(Op::Func(PhaseExpr::x_pow(self.space, i, e).expect("validated index")))
    }
    fn momentum(&self, i: usize) -> OpRef {
        Arc::new(Op::Mom(i))
    }
    fn r_pow(&self, e: i32) -> OpRef {
        Arc::new(Op::Func(PhaseExpr::r_pow(self.space, e)))
    }
    fn potential(&self) -> Result<OpRef> {
        Ok(Arc::new(Op::Func(PhaseExpr::v(self.space, 0)?)))
    }
    fn add(&self, a: &OpRef, b: &OpRef) -> OpRef {
        if let (Op::Func(f), Op::Func(g)) = (a.as_ref(), b.as_ref()) {
            return Arc::new(Op::Func(f + g));
        }
        Arc::new(Op::Sum(vec![a.clone(), b.clone()]))
    }
    fn neg(&self, a: &OpRef) -> OpRef {
        self.scale(a, Rational::from_integer(-1))
    }
    fn scale(&self, a: &OpRef, q: Rational) -> OpRef {
        match a.as_ref() {
            Op::Func(f) => Arc::new(Op::Func(f.scale(q))),
            _ => Arc::new(Op::Scale(q, a.clone())),
        }
    }
    fn mul(&self, a: &OpRef, b: &OpRef) -> Result<OpRef> {
        // Functions commute with each other, so their product is pointwise.
        if let (Op::Func(f), Op::Func(g)) = (a.as_ref(), b.as_ref()) {
            return Ok(Arc::new(Op::Func(f.try_mul(g)?)));
        }
        Ok(Arc::new(Op::Compose(a.clone(), b.clone())))
    }
}

impl LieAlgebra for OpAlgebra {
    const QUANTUM: bool = true;

    fn lie(&self, a: &OpRef, b: &OpRef) -> Result<OpRef> {
        let ab = self.mul(a, b)?;
        let ba = self.mul(b, a)?;
        Ok(Arc::new(Op::DivIHbar(self.sub(&ab, &ba))))
    }
}

fn minus_i_hbar(space: Space) -> PhaseExpr {
    let c = ParamScalar::i().neg().mul(&ParamScalar::param(Param::Hbar));
    PhaseExpr::constant(space, &c)
}

/// Applies operators to functions, with results memoised per input.
pub struct Applier<'a> {
    space: Space,
    /// Points at which the `hbar`-free part of a division must vanish.
    points: &'a [EvalPoint],
    memo: FxHashMap<(usize, PhaseExpr), PhaseExpr>,
}

impl<'a> Applier<'a> {
    pub fn new(space: Space, points: &'a [EvalPoint]) -> Self {
        Applier { space, points, memo: FxHashMap::default() }
    }

    pub fn apply(&mut self, op: &OpRef, psi: &PhaseExpr) -> Result<PhaseExpr> {
        let key = (Arc::as_ptr(op) as usize, psi.clone());
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let out = match op.as_ref() {
            Op::Func(f) => f.try_mul(psi)?,
            Op::Mom(j) => psi.diff(Var::X(*j))?.try_mul(&minus_i_hbar(self.space))?,
            Op::Sum(items) => {
                let mut acc = PhaseExpr::zero(self.space);
                for item in items {
                    acc = acc.try_add(&self.apply(item, psi)?)?;
                }
                acc
            }
            Op::Scale(q, a) => self.apply(a, psi)?.scale(*q),
            Op::Compose(a, b) => {
                let inner = self.apply(b, psi)?;
                self.apply(a, &inner)?
            }
            Op::DivIHbar(a) => {
                let v = self.apply(a, psi)?;
                self.div_ihbar(&v)?
            }
        };
        self.memo.insert(key, out.clone());
        Ok(out)
    }

    /// Divide by `i hbar`. The `hbar`-free part must vanish; that is checked
    /// numerically at every point rather than symbolically.
    fn div_ihbar(&self, v: &PhaseExpr) -> Result<PhaseExpr> {
        let (free, rest): (Vec<_>, Vec<_>) = v.terms().into_iter().partition(|(m, _)| m.param_exp(Param::Hbar) == 0);
        if !free.is_empty() {
            let free = PhaseExpr::from_terms(self.space, free)?;
            for pt in self.points {
                if !free.eval(pt)?.is_zero() {
                    return Err(Error::NotDivisibleByIHbar);
                }
            }
        }
        let minus_i = GaussianRational::i().neg();
        let slot = Param::Hbar.slot();
        let lowered = rest.into_iter().map(|(m, c)| {
            let mut m2: Monomial = m;
            m2.s[slot] -= 1;
            (m2, c.mul(&minus_i))
        });
        PhaseExpr::from_terms(self.space, lowered)
    }
}

/// Apply a normal-ordered operator directly: every word `f(x) p^alpha`
/// acts as `f(x) (-i hbar)^|alpha| d^alpha`.
pub fn apply_weyl(op: &WeylExpr, psi: &PhaseExpr) -> Result<PhaseExpr> {
    let space = op.space();
    let mut acc = PhaseExpr::zero(space);
    for (m, c) in op.terms() {
        let mut d = psi.clone();
        let mut order = 0;
        for i in 1..=space.n() {
            for _ in 0..m.p_exp(i) {
                d = d.diff(Var::X(i))?;
                order += 1;
            }
        }
        let position = Monomial { p: [0; crate::monomial::MAX_N], ..m };
        let factor = PhaseExpr::from_terms(space, [(position, c.mul(&GaussianRational::i().neg().pow(order)))])?;
        let hbar = PhaseExpr::param(space, Param::Hbar)?.pow(order);
        acc = acc.try_add(&d.try_mul(&factor)?.try_mul(&hbar)?)?;
    }
    Ok(acc)
}

/// Whether `a psi = b psi` at every point for every test function; returns
/// the first counterexample.
pub fn operator_apply_check(
    a: &WeylExpr,
    b: &WeylExpr,
    testfns: &[TestFunction],
    points: &[RadialPoint],
) -> Result<Option<(TestFunction, RadialPoint)>> {
    let space = a.space();
    space.check(b.space())?;
    for tf in testfns {
        let psi = tf.to_expr(space)?;
        let diff = apply_weyl(a, &psi)?.try_sub(&apply_weyl(b, &psi)?)?;
        for pt in points {
            if !diff.eval(&pt.to_eval())?.is_zero() {
                return Ok(Some((tf.clone(), pt.clone())));
            }
        }
    }
    Ok(None)
}
